"""Finite groups and permutations as dense index tables.

Everything lives on the carrier {0, ..., n-1}: a binary operation is an n x n
integer table, a permutation is an image array. Groups are canonicalized so
that the identity sits at index 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np


class MalformedTableError(ValueError):
    """Table is not square or has an entry outside 0..n-1."""


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class CayleyTable:
    """An n x n operation table over the carrier 0..n-1."""

    n: int
    table: np.ndarray

    @classmethod
    def of(cls, rows) -> "CayleyTable":
        arr = np.asarray(rows)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise MalformedTableError(f"table must be square and nonempty, got shape {arr.shape}")
        if not np.issubdtype(arr.dtype, np.integer):
            raise MalformedTableError("table entries must be integers")
        n = arr.shape[0]
        if arr.min() < 0 or arr.max() >= n:
            bad = np.argwhere((arr < 0) | (arr >= n))[0]
            raise MalformedTableError(f"entry out of range 0..{n - 1} at {tuple(int(i) for i in bad)}")
        return cls(n=n, table=_freeze(arr.copy()))

    def apply(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def relabel(self, perm: np.ndarray) -> "CayleyTable":
        """Transport the operation along x -> perm[x]."""
        perm = np.asarray(perm, dtype=np.int64)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(self.n)
        new = perm[self.table[np.ix_(inv, inv)]]
        return CayleyTable(n=self.n, table=_freeze(new))

    def key(self) -> bytes:
        return self.table.tobytes()

    def to_json(self) -> dict:
        return {"n": self.n, "table": self.table.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "CayleyTable":
        if not isinstance(obj, dict) or "n" not in obj or "table" not in obj:
            raise MalformedTableError("expected object with keys 'n' and 'table'")
        t = cls.of(obj["table"])
        if t.n != obj["n"]:
            raise MalformedTableError(f"declared n={obj['n']} but table has n={t.n}")
        return t


@dataclass(frozen=True)
class Permutation:
    """A bijection of 0..n-1 stored as its image array."""

    images: np.ndarray

    @classmethod
    def of(cls, images) -> "Permutation":
        arr = np.asarray(images, dtype=np.int64)
        n = arr.shape[0]
        if arr.ndim != 1 or not np.array_equal(np.sort(arr), np.arange(n)):
            raise MalformedTableError("not a permutation")
        return cls(images=_freeze(arr.copy()))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(images=_freeze(np.arange(n)))

    @property
    def n(self) -> int:
        return self.images.shape[0]

    def apply(self, x: int) -> int:
        return int(self.images[x])

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self * other)(x) = self(other(x))."""
        return Permutation(images=_freeze(self.images[other.images]))

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.n)
        return Permutation(images=_freeze(inv))

    def order(self) -> int:
        k, cur, ident = 1, self.images, np.arange(self.n)
        while not np.array_equal(cur, ident):
            cur = self.images[cur]
            k += 1
        return k

    def cycle_type(self) -> tuple:
        seen = np.zeros(self.n, dtype=bool)
        lengths = []
        for start in range(self.n):
            if seen[start]:
                continue
            ln, x = 0, start
            while not seen[x]:
                seen[x] = True
                x = int(self.images[x])
                ln += 1
            lengths.append(ln)
        return tuple(sorted(lengths))

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.n)))

    def key(self) -> bytes:
        return self.images.tobytes()


@dataclass(frozen=True)
class GroupReport:
    is_group: bool
    identity: Optional[int]
    inverses: Optional[np.ndarray]
    failure: Optional[tuple]  # (kind, witness tuple)


def check_group(t: CayleyTable) -> GroupReport:
    """Decide whether the table is a group; on failure the report names the
    first violated instance (identity candidate, missing inverse element, or
    associativity triple, in that order)."""
    tab = t.table
    n = t.n
    ident = None
    for e in range(n):
        if np.array_equal(tab[e], np.arange(n)) and np.array_equal(tab[:, e], np.arange(n)):
            ident = e
            break
    if ident is None:
        # witness: first (x, e) showing the best left-identity candidate fails on the right
        for e in range(n):
            if np.array_equal(tab[e], np.arange(n)):
                bad = int(np.argmax(tab[:, e] != np.arange(n)))
                return GroupReport(False, None, None, ("no-identity", (bad, e)))
        return GroupReport(False, None, None, ("no-identity", ()))
    inv = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        hits = np.flatnonzero(tab[a] == ident)
        if hits.size == 0 or tab[int(hits[0]), a] != ident:
            return GroupReport(False, ident, None, ("no-inverse", (a,)))
        inv[a] = int(hits[0])
    left = tab[tab, :]  # left[a,b,c] = tab[tab[a,b], c]
    right = tab[:, tab]  # right[a,b,c] = tab[a, tab[b,c]]
    diff = left != right
    if diff.any():
        a, b, c = (int(i) for i in np.argwhere(diff)[0])
        return GroupReport(False, ident, None, ("not-associative", (a, b, c)))
    return GroupReport(True, ident, _freeze(inv), None)


def check_left_cancellative_semigroup(t: CayleyTable) -> tuple[bool, Optional[tuple]]:
    """Associativity plus left cancellation; the witness is the first bad
    triple (a, b, c), meaning a+(b+c) != (a+b)+c or a+b = a+c with b != c."""
    tab = t.table
    left = tab[tab, :]
    right = tab[:, tab]
    diff = left != right
    if diff.any():
        a, b, c = (int(i) for i in np.argwhere(diff)[0])
        return False, ("not-associative", (a, b, c))
    for a in range(t.n):
        row = tab[a]
        if np.unique(row).size != t.n:
            order = np.argsort(row, kind="stable")
            dup = np.flatnonzero(row[order[1:]] == row[order[:-1]])[0]
            b, c = sorted((int(order[dup]), int(order[dup + 1])))
            return False, ("not-left-cancellative", (a, b, c))
    return True, None


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its Cayley table; identity is index 0."""

    op: CayleyTable
    identity: int
    inverse: np.ndarray

    @classmethod
    def from_table(cls, t: CayleyTable) -> "FiniteGroup":
        """Validate and canonicalize: the identity is relabeled to index 0."""
        report = check_group(t)
        if not report.is_group:
            raise MalformedTableError(f"not a group: {report.failure}")
        if report.identity != 0:
            perm = np.arange(t.n)
            perm[[0, report.identity]] = perm[[report.identity, 0]]
            t = t.relabel(perm)
            report = check_group(t)
        return cls(op=t, identity=0, inverse=report.inverses)

    @property
    def n(self) -> int:
        return self.op.n

    @property
    def table(self) -> np.ndarray:
        return self.op.table

    def mul(self, a: int, b: int) -> int:
        return int(self.op.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conjugate(self, a: int, by: int) -> int:
        """by o a o by^-1."""
        return self.mul(self.mul(by, a), self.inv(by))

    def power(self, a: int, k: int) -> int:
        x = 0
        if k < 0:
            a, k = self.inv(a), -k
        for _ in range(k):
            x = self.mul(x, a)
        return x

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def element_orders(self) -> np.ndarray:
        return np.array([self.element_order(a) for a in range(self.n)], dtype=np.int64)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def center(self) -> tuple[int, ...]:
        mask = (self.table == self.table.T).all(axis=1)
        return tuple(int(i) for i in np.flatnonzero(mask))

    def closure(self, seed: Iterable[int]) -> tuple[int, ...]:
        """Subgroup generated by the seed, as a sorted tuple."""
        members = {0}
        frontier = [0]
        for s in seed:
            if s not in members:
                members.add(int(s))
                frontier.append(int(s))
        while frontier:
            nxt = []
            cur = sorted(members)
            for x in frontier:
                for y in cur:
                    for z in (self.mul(x, y), self.mul(y, x)):
                        if z not in members:
                            members.add(z)
                            nxt.append(z)
            frontier = nxt
        return tuple(sorted(members))

    def derived_subgroup(self) -> tuple[int, ...]:
        comms = {
            self.mul(self.mul(a, b), self.inv(self.mul(b, a)))
            for a in range(self.n)
            for b in range(self.n)
        }
        return self.closure(comms)

    def generating_sequence(self) -> list[int]:
        """Greedy generating sequence, highest element order first."""
        orders = self.element_orders()
        ranked = sorted(range(self.n), key=lambda a: (-int(orders[a]), a))
        gens: list[int] = []
        have = {0}
        for a in ranked:
            if a not in have:
                gens.append(a)
                have = set(self.closure(gens))
                if len(have) == self.n:
                    break
        return gens

    def relabel(self, perm: np.ndarray) -> "FiniteGroup":
        return FiniteGroup.from_table(self.op.relabel(perm))

    def key(self) -> bytes:
        return self.op.key()


@dataclass(frozen=True)
class GroupHom:
    """A verified homomorphism between finite groups, as an image array."""

    source: FiniteGroup
    target: FiniteGroup
    images: np.ndarray

    @classmethod
    def of(cls, source: FiniteGroup, target: FiniteGroup, images) -> "GroupHom":
        arr = np.asarray(images, dtype=np.int64)
        if arr.shape != (source.n,) or arr.min() < 0 or arr.max() >= target.n:
            raise MalformedTableError("hom image array has wrong shape or range")
        if not np.array_equal(arr[source.table], target.table[arr[:, None], arr[None, :]]):
            raise MalformedTableError("not a homomorphism")
        return cls(source=source, target=target, images=_freeze(arr.copy()))

    def apply(self, a: int) -> int:
        return int(self.images[a])

    def is_trivial(self) -> bool:
        return bool((self.images == 0).all())


@dataclass(frozen=True)
class Subgroup:
    elements: tuple[int, ...]
    normal: bool


@dataclass(frozen=True)
class PermGroup:
    """A group of permutations: abstract Cayley table plus the realization."""

    group: FiniteGroup
    perms: tuple[Permutation, ...]

    def index_of(self, perm: Permutation) -> int:
        for i, p in enumerate(self.perms):
            if p.key() == perm.key():
                return i
        raise KeyError("permutation not in group")


# ---------------------------------------------------------------------------
# hom / iso search


def _close_partial_map(src: FiniteGroup, assignments: list[tuple[int, int]], tgt_table: np.ndarray):
    """Extend f(0)=0, f(g_i)=h_i multiplicatively over <g_1..g_k>.

    Returns (mapped indices in BFS order, image array with -1 for unassigned),
    or None on conflict. Extension is forced: f(x o g) = f(x) o f(g).
    """
    f = np.full(src.n, -1, dtype=np.int64)
    f[0] = 0
    order = [0]
    gens = []
    for g, h in assignments:
        if f[g] == -1:
            f[g] = h
            order.append(g)
        elif f[g] != h:
            return None
        gens.append(g)
    i = 0
    while i < len(order):
        x = order[i]
        for g in gens:
            y = src.mul(x, g)
            fy = int(tgt_table[f[x], f[g]])
            if f[y] == -1:
                f[y] = fy
                order.append(y)
            elif f[y] != fy:
                return None
        i += 1
    return order, f


def _search_morphisms(
    src: FiniteGroup,
    tgt: FiniteGroup,
    candidate_pools: Sequence[Sequence[int]],
    gens: Sequence[int],
    bijective: bool,
    limit: Optional[int],
    extra_check: Optional[Callable[[np.ndarray], bool]] = None,
) -> list[np.ndarray]:
    """Backtracking over generator images; every complete map is verified on
    the full table before being accepted."""
    results: list[np.ndarray] = []
    tgt_table = tgt.table

    def rec(i: int, assignments: list[tuple[int, int]]):
        if limit is not None and len(results) >= limit:
            return
        if i == len(gens):
            closed = _close_partial_map(src, assignments, tgt_table)
            if closed is None:
                return
            _, f = closed
            if (f == -1).any():
                return  # generators failed to generate; caller bug
            if bijective and np.unique(f).size != src.n:
                return
            if not np.array_equal(f[src.table], tgt_table[f[:, None], f[None, :]]):
                return
            if extra_check is not None and not extra_check(f):
                return
            results.append(f)
            return
        for h in candidate_pools[i]:
            trial = assignments + [(gens[i], int(h))]
            if _close_partial_map(src, trial, tgt_table) is None:
                continue
            rec(i + 1, trial)

    rec(0, [])
    return results


def homomorphisms(src: FiniteGroup, tgt: FiniteGroup) -> list[GroupHom]:
    """All homomorphisms src -> tgt, in lexicographic order of image arrays."""
    gens = src.generating_sequence()
    if not gens:
        return [GroupHom.of(src, tgt, np.zeros(src.n, dtype=np.int64))]
    tgt_orders = tgt.element_orders()
    pools = []
    for g in gens:
        og = src.element_order(g)
        pools.append([h for h in range(tgt.n) if og % int(tgt_orders[h]) == 0])
    found = _search_morphisms(src, tgt, pools, gens, bijective=False, limit=None)
    found.sort(key=lambda f: tuple(f))
    return [GroupHom.of(src, tgt, f) for f in found]


def isomorphisms(src: FiniteGroup, tgt: FiniteGroup, limit: Optional[int] = None) -> list[Permutation]:
    """Group isomorphisms src -> tgt (all of them, or up to `limit`)."""
    if src.n != tgt.n:
        return []
    src_orders = src.element_orders()
    tgt_orders = tgt.element_orders()
    if sorted(src_orders.tolist()) != sorted(tgt_orders.tolist()):
        return []
    src_center = set(src.center())
    tgt_center = set(tgt.center())
    if len(src_center) != len(tgt_center):
        return []
    gens = src.generating_sequence()
    if not gens:
        return [Permutation.identity(1)]
    pools = []
    for g in gens:
        og = int(src_orders[g])
        gc = g in src_center
        pools.append(
            [h for h in range(tgt.n) if int(tgt_orders[h]) == og and ((h in tgt_center) == gc)]
        )
    found = _search_morphisms(src, tgt, pools, gens, bijective=True, limit=limit)
    found.sort(key=lambda f: tuple(f))
    return [Permutation.of(f) for f in found]


def automorphisms(g: FiniteGroup) -> list[Permutation]:
    """All automorphisms, sorted lexicographically by image array."""
    return isomorphisms(g, g)


def automorphism_group(g: FiniteGroup) -> PermGroup:
    """The automorphism group as a FiniteGroup over the sorted automorphism list."""
    return perm_group(automorphisms(g))


def perm_group(perms: Sequence[Permutation]) -> PermGroup:
    """Cayley table of a list of permutations closed under composition.

    The identity is moved to index 0; the rest keep their given order."""
    perms = list(perms)
    idx = {p.key(): i for i, p in enumerate(perms)}
    ident = Permutation.identity(perms[0].n)
    if ident.key() not in idx:
        raise MalformedTableError("permutation set lacks the identity")
    i0 = idx[ident.key()]
    if i0 != 0:
        perms[0], perms[i0] = perms[i0], perms[0]
        idx = {p.key(): i for i, p in enumerate(perms)}
    m = len(perms)
    table = np.zeros((m, m), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            k = idx.get(p.compose(q).key())
            if k is None:
                raise MalformedTableError("permutation set not closed under composition")
            table[i, j] = k
    grp = FiniteGroup.from_table(CayleyTable.of(table))
    return PermGroup(group=grp, perms=tuple(perms))


def subgroups(g: FiniteGroup) -> list[Subgroup]:
    """All subgroups with normality flags, sorted by (size, elements)."""
    found = {(0,): None}
    frontier = [(0,)]
    while frontier:
        nxt = []
        for h in frontier:
            hset = set(h)
            for x in range(1, g.n):
                if x in hset:
                    continue
                k = g.closure(list(h) + [x])
                if k not in found:
                    found[k] = None
                    nxt.append(k)
        frontier = nxt
    out = []
    for elems in sorted(found, key=lambda e: (len(e), e)):
        eset = set(elems)
        normal = all(g.conjugate(a, b) in eset for a in elems for b in range(g.n))
        out.append(Subgroup(elements=elems, normal=normal))
    return out


def is_normal_subset(g: FiniteGroup, elements: Iterable[int]) -> bool:
    eset = set(int(x) for x in elements)
    return all(g.conjugate(a, b) in eset for a in eset for b in range(g.n))


# ---------------------------------------------------------------------------
# constructions


def group_from_op(n: int, op: Callable[[int, int], int]) -> FiniteGroup:
    table = np.fromfunction(np.vectorize(op, otypes=[np.int64]), (n, n), dtype=np.int64)
    return FiniteGroup.from_table(CayleyTable.of(table))


def cyclic_group(n: int) -> FiniteGroup:
    a = np.arange(n)
    return FiniteGroup.from_table(CayleyTable.of((a[:, None] + a[None, :]) % n))


def semidirect_group(h: FiniteGroup, k: FiniteGroup, action: Sequence[Permutation]) -> FiniteGroup:
    """H x| K with K acting on H: (a, x)(b, y) = (a o action[x](b), x o y).

    Pair (a, x) gets index a * |K| + x. The action must be a homomorphism
    from K into Aut(H); this is validated.
    """
    if len(action) != k.n:
        raise MalformedTableError("action must assign one automorphism per element of K")
    for x in range(k.n):
        img = action[x].images
        if not np.array_equal(img[h.table], h.table[img[:, None], img[None, :]]):
            raise MalformedTableError(f"action[{x}] is not an automorphism of H")
    for x in range(k.n):
        for y in range(k.n):
            if action[k.mul(x, y)].key() != action[x].compose(action[y]).key():
                raise MalformedTableError("action is not a homomorphism of K into Aut(H)")
    nh, nk = h.n, k.n
    n = nh * nk
    a, x = np.divmod(np.arange(n), nk)
    acted = np.stack([action[int(xx)].images for xx in range(nk)])  # acted[x, b]
    bb, yy = a[None, :], x[None, :]
    first = h.table[a[:, None], acted[x[:, None], bb]]
    second = k.table[x[:, None], yy]
    return FiniteGroup.from_table(CayleyTable.of(first * nk + second))


def direct_product(h: FiniteGroup, k: FiniteGroup) -> FiniteGroup:
    ident = Permutation.identity(h.n)
    return semidirect_group(h, k, [ident] * k.n)


def dicyclic_group(m: int) -> FiniteGroup:
    """Order 4m: <a, b | a^(2m) = 1, b^2 = a^m, b a b^-1 = a^-1>."""
    if m < 1:
        raise MalformedTableError("dicyclic index must be >= 1")

    def op(i_and_j: int, k_and_l: int) -> int:
        i, j = divmod(i_and_j, 2)
        kk, ll = divmod(k_and_l, 2)
        sign = -1 if j else 1
        first = (i + sign * kk + m * j * ll) % (2 * m)
        return first * 2 + (j + ll) % 2

    return group_from_op(4 * m, op)
