"""The dot product a.b = lambda_a(a') + a o b + lambda_b(b'), the derived
chains, per-element nil orbits, and the socle of a skew brace.

Right chain: B(1) = B, B(n+1) = B(n).B + E.
Left chain:  B1 = B,   B{n+1} = B.Bn + E.
A semi-brace is right (left) nilpotent when some chain member equals E.
Chains are driven to the first repeat; the successor map is deterministic,
so a repeat proves the chain cycles without reaching E.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .core import InternalInvariantError, SemiBrace, decompose


class NotASkewBraceError(ValueError):
    """The socle is only defined here for skew braces (|E| = 1)."""


@dataclass(frozen=True)
class SeriesReport:
    kind: str  # "right" or "left"
    chain: tuple[tuple[int, ...], ...]
    verdict: str
    nil_orders: tuple[Optional[int], ...]

    @property
    def nilpotent(self) -> bool:
        return self.verdict.startswith("nilpotent")

    @property
    def nilpotency_index(self) -> Optional[int]:
        return int(self.verdict.rsplit(" ", 1)[1]) if self.nilpotent else None

    @property
    def is_nil(self) -> bool:
        return all(o is not None for o in self.nil_orders)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "chain": [list(c) for c in self.chain],
            "verdict": self.verdict,
            "nil_orders": list(self.nil_orders),
        }


def dot(b: SemiBrace, x: int, y: int) -> int:
    """x.y = lambda_x(x') + x o y + lambda_y(y'); always lands in G."""
    t = b.add_of(b.lam_of(x, b.inv(x)), b.circ_of(x, y))
    out = b.add_of(t, b.lam_of(y, b.inv(y)))
    if out not in set(b.g_elements):
        raise InternalInvariantError("dot product escaped G")
    return out


def dot_table(b: SemiBrace) -> np.ndarray:
    """All dot products at once; asserts the image lies in G."""
    n = b.n
    add = b.add.table
    t1 = b.lam[np.arange(n), b.circ.inverse]  # t1[x] = lambda_x(x')
    d = add[add[t1[:, None], b.circ.table], t1[None, :]]
    if not set(np.unique(d).tolist()) <= set(b.g_elements):
        raise InternalInvariantError("dot product escaped G")
    return d


def set_dot_plus_E(b: SemiBrace, xs: Iterable[int], ys: Iterable[int]) -> tuple[int, ...]:
    """(X.Y) + E: the additive subgroup of (G,+) generated by the dots,
    summed elementwise with the idempotents."""
    d = dot_table(b)
    xs = sorted(set(int(x) for x in xs))
    ys = sorted(set(int(y) for y in ys))
    seeds = set(int(v) for v in np.unique(d[np.ix_(xs, ys)]))
    add = b.add.table
    members = {0} | seeds
    frontier = list(members)
    while frontier:
        nxt = []
        cur = list(members)
        for x in frontier:
            for y in cur:
                for z in (int(add[x, y]), int(add[y, x])):
                    if z not in members:
                        members.add(z)
                        nxt.append(z)
        frontier = nxt
    out = {int(add[g, e]) for g in members for e in b.e_elements}
    return tuple(sorted(out))


def _nil_orders(b: SemiBrace, side: str) -> tuple[Optional[int], ...]:
    d = dot_table(b)
    orders: list[Optional[int]] = []
    for x in range(b.n):
        cur = x
        seen = {cur}
        order = None
        for step in range(1, b.n + 2):
            if cur == 0:
                order = step
                break
            cur = int(d[cur, x]) if side == "right" else int(d[x, cur])
            if cur in seen:
                break
            seen.add(cur)
        orders.append(order)
    return tuple(orders)


def _series(b: SemiBrace, side: str) -> SeriesReport:
    e_set = tuple(sorted(b.e_elements))
    whole = tuple(range(b.n))
    chain = [whole]
    seen = {whole}
    verdict = "cycles without reaching E"
    while True:
        current = chain[-1]
        nxt = (
            set_dot_plus_E(b, current, whole)
            if side == "right"
            else set_dot_plus_E(b, whole, current)
        )
        if nxt == e_set:
            chain.append(nxt)
            verdict = f"nilpotent at {len(chain)}"
            break
        if nxt in seen:
            break
        chain.append(nxt)
        seen.add(nxt)
    return SeriesReport(
        kind=side, chain=tuple(chain), verdict=verdict, nil_orders=_nil_orders(b, side)
    )


def right_series(b: SemiBrace) -> SeriesReport:
    return _series(b, "right")


def left_series(b: SemiBrace) -> SeriesReport:
    return _series(b, "left")


def is_right_nil(b: SemiBrace) -> tuple[bool, tuple[Optional[int], ...]]:
    orders = _nil_orders(b, "right")
    return all(o is not None for o in orders), orders


def is_left_nil(b: SemiBrace) -> tuple[bool, tuple[Optional[int], ...]]:
    orders = _nil_orders(b, "left")
    return all(o is not None for o in orders), orders


def socle(b: SemiBrace) -> tuple[tuple[int, ...], int]:
    """{a : lambda_a = id and a + x = x + a for all x} with its index in B.

    Only for skew braces; for abelian addition this is the kernel of lambda."""
    if len(b.e_elements) != 1:
        raise NotASkewBraceError("socle requires a skew brace (a single idempotent)")
    n = b.n
    ident = np.arange(n)
    add = b.add.table
    elems = tuple(
        a for a in range(n)
        if np.array_equal(b.lam[a], ident) and np.array_equal(add[a], add[:, a])
    )
    if n % len(elems) != 0:
        raise InternalInvariantError("socle size does not divide the order")
    return elems, n // len(elems)


@dataclass(frozen=True)
class Rnilp1Report:
    """Both sides of the right-nilpotency criterion for decomposable semi-braces,
    computed independently: the chain verdict versus (alpha trivial and the
    skew brace part right nilpotent)."""

    series_side: bool
    structural_side: bool

    @property
    def agree(self) -> bool:
        return self.series_side == self.structural_side


def check_rnilp1(b: SemiBrace) -> Rnilp1Report:
    data = decompose(b)
    if data is None:
        raise ValueError("not decomposable: the skew part is not the kernel of lambda on E")
    series_side = right_series(b).nilpotent
    structural_side = data.alpha.is_trivial() and right_series(data.brace).nilpotent
    return Rnilp1Report(series_side=series_side, structural_side=structural_side)
