"""The set-theoretic Yang-Baxter map r(x, y) = (lambda_x(y), rho_y(x))
induced by a semi-brace, with braid-relation and property checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import SemiBrace
from .tables import MalformedTableError


@dataclass(frozen=True)
class SolutionMap:
    """A total map r on pairs: r[x, y] = (r[x, y, 0], r[x, y, 1])."""

    n: int
    r: np.ndarray  # shape (n, n, 2)

    @classmethod
    def of(cls, r) -> "SolutionMap":
        arr = np.asarray(r, dtype=np.int64)
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 2:
            raise MalformedTableError("solution map must have shape (n, n, 2)")
        n = arr.shape[0]
        if n == 0 or arr.min() < 0 or arr.max() >= n:
            raise MalformedTableError("solution entries out of range")
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        return cls(n=n, r=arr)

    def apply(self, x: int, y: int) -> tuple[int, int]:
        return int(self.r[x, y, 0]), int(self.r[x, y, 1])

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "SolutionMap":
        if not isinstance(obj, dict) or not {"n", "r"} <= set(obj):
            raise MalformedTableError("solution JSON needs keys n and r")
        s = cls.of(obj["r"])
        if s.n != obj["n"]:
            raise MalformedTableError("solution size mismatch")
        return s


def solution_from(b: SemiBrace) -> SolutionMap:
    """r(x, y) = (lambda_x(y), rho_y(x)) from the verified tables."""
    n = b.n
    lam = b.lam
    inv = b.circ.inverse
    t = b.add.table[inv]  # t[x, y] = x' + y
    rho = b.circ.table[inv[t], np.arange(n)[None, :]]  # (x' + y)' o y
    return SolutionMap.of(np.stack([lam, rho], axis=-1))


def check_braid(s: SolutionMap) -> tuple[bool, Optional[tuple[int, int, int]]]:
    """(r x id)(id x r)(r x id) = (id x r)(r x id)(id x r) on all triples;
    returns the first failing (x, y, z) lexicographically, if any."""
    n = s.n
    a = s.r[:, :, 0]
    bb = s.r[:, :, 1]
    z_idx = np.arange(n)[None, None, :]
    x_idx = np.arange(n)[:, None, None]

    a_xy = a[:, :, None]
    b_xy = bb[:, :, None]
    a_bz = a[b_xy, z_idx]
    lhs1 = a[a_xy, a_bz]
    lhs2 = bb[a_xy, a_bz]
    lhs3 = bb[b_xy, z_idx]

    a_yz = a[None, :, :]
    b_yz = bb[None, :, :]
    rhs1 = a[x_idx, a_yz]
    b_x_ayz = bb[x_idx, a_yz]
    rhs2 = a[b_x_ayz, b_yz]
    rhs3 = bb[b_x_ayz, b_yz]

    bad = (lhs1 != rhs1) | (lhs2 != rhs2) | (lhs3 != rhs3)
    if bad.any():
        x, y, z = (int(i) for i in np.argwhere(bad)[0])
        return False, (x, y, z)
    return True, None


@dataclass(frozen=True)
class SolutionProperties:
    left_nondegenerate: bool
    nondegenerate: bool
    bijective: bool
    involutive: bool

    def to_json(self) -> dict:
        return {
            "left_nondegenerate": self.left_nondegenerate,
            "nondegenerate": self.nondegenerate,
            "bijective": self.bijective,
            "involutive": self.involutive,
        }


def check_properties(s: SolutionMap) -> SolutionProperties:
    n = s.n
    a = s.r[:, :, 0]
    bb = s.r[:, :, 1]
    left = all(np.unique(a[x]).size == n for x in range(n))
    right = all(np.unique(bb[:, y]).size == n for y in range(n))
    pairs = a.astype(np.int64) * n + bb
    bij = np.unique(pairs).size == n * n
    inv = bool(
        np.array_equal(a[a, bb], np.arange(n)[:, None].repeat(n, axis=1))
        and np.array_equal(bb[a, bb], np.tile(np.arange(n), (n, 1)))
    )
    return SolutionProperties(
        left_nondegenerate=left, nondegenerate=left and right, bijective=bij, involutive=inv
    )
