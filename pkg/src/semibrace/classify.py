"""Isomorphism testing, invariant fingerprints, and two independent
enumerators for finite left cancellative left semi-braces.

The generic enumerator walks every lambda representation of every circle
group of order n and keeps the table pairs that satisfy the axioms.  The
structural enumerator builds semidirect products of a skew brace part and a
trivial part, in both directions, over the shapes n = pq and n = 2p^2 where
those products exhaust the classification.  Both produce censuses of
pairwise non-isomorphic representatives that can be checked against each
other and against the explicit families.
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .construct import (
    EXPECTED_E_SIZE,
    FamilyId,
    ParameterError,
    PQ_THEOREMS,
    TWO_P2_THEOREMS,
    applicable_items,
    brace_p2,
    family,
    is_prime,
    semidirect,
    trivial_semibrace,
    trivial_skewbrace,
)
from .core import (
    InternalInvariantError,
    SemiBrace,
    brace_automorphism_group,
    is_ideal,
    kernel_lambda_on_E,
    semibrace_from_json,
    skew_part,
    verify,
)
from .nilpotency import is_right_nil
from .tables import (
    CayleyTable,
    FiniteGroup,
    MalformedTableError,
    Permutation,
    _search_morphisms,
    automorphism_group,
    cyclic_group,
    dicyclic_group,
    homomorphisms,
    isomorphisms,
    semidirect_group,
)

GENERIC_BOUND = 10
UNPRUNED_BOUND = 6

ALL_TAGS = PQ_THEOREMS + TWO_P2_THEOREMS + ("2p2",)


# ---------------------------------------------------------------------------
# group catalog


_CLASSICAL_GROUP_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2,
    11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 16: 14, 17: 1, 18: 5, 19: 1,
    20: 5, 25: 2, 27: 5, 50: 5,
}

SUPPORTED_GROUP_ORDERS = frozenset(_CLASSICAL_GROUP_COUNTS)


def group_profile(g: FiniteGroup) -> tuple:
    """Cheap invariants; equal profiles are necessary for group isomorphism."""
    orders = tuple(int(x) for x in sorted(g.element_orders().tolist()))
    return (g.n, orders, g.is_abelian(), len(g.center()), len(g.derived_subgroup()))


def group_isomorphic(g1: FiniteGroup, g2: FiniteGroup) -> bool:
    if group_profile(g1) != group_profile(g2):
        return False
    return bool(isomorphisms(g1, g2, limit=1))


@lru_cache(maxsize=None)
def small_groups(n: int) -> tuple[FiniteGroup, ...]:
    """All groups of order n up to isomorphism, for the supported orders.

    Candidates come from cyclic, dicyclic, and split extensions H x| K over
    every proper factorization; duplicates are removed with group_isomorphic
    and the final count is asserted against the classical census.
    """
    if n not in _CLASSICAL_GROUP_COUNTS:
        raise ParameterError(f"order {n} is outside the supported group catalog")
    candidates: list[FiniteGroup] = [cyclic_group(n)]
    if n % 4 == 0:
        candidates.append(dicyclic_group(n // 4))
    for h in range(2, n):
        if n % h != 0:
            continue
        k = n // h
        if k < 2:
            continue
        for hg in small_groups(h):
            aut = automorphism_group(hg)
            for kg in small_groups(k):
                for hom in homomorphisms(kg, aut.group):
                    action = [aut.perms[hom.apply(c)] for c in range(k)]
                    candidates.append(semidirect_group(hg, kg, action))
    kept: list[FiniteGroup] = []
    for cand in candidates:
        if not any(group_isomorphic(cand, have) for have in kept):
            kept.append(cand)
    kept.sort(key=lambda g: g.key())
    if len(kept) != _CLASSICAL_GROUP_COUNTS[n]:
        raise InternalInvariantError(
            f"group catalog for order {n}: built {len(kept)}, "
            f"expected {_CLASSICAL_GROUP_COUNTS[n]}"
        )
    return tuple(kept)


def skew_braces(m: int) -> list[SemiBrace]:
    """All skew left braces of order m up to isomorphism, for m equal to 1,
    a prime, or an odd prime square."""
    if m == 1:
        return [trivial_skewbrace(cyclic_group(1))]
    if is_prime(m):
        return [trivial_skewbrace(cyclic_group(m))]
    r = math.isqrt(m)
    if r * r == m and is_prime(r) and r % 2 == 1:
        return [brace_p2(which, r) for which in ("G1", "G2", "G3", "G4")]
    raise ParameterError(f"no skew brace catalog for order {m}")


# ---------------------------------------------------------------------------
# fingerprints


def _deep_list(x):
    if isinstance(x, tuple):
        return [_deep_list(v) for v in x]
    return x


def _deep_tuple(x):
    if isinstance(x, list):
        return tuple(_deep_tuple(v) for v in x)
    return x


def _element_signatures(b: SemiBrace) -> list[tuple]:
    """Per-element invariants preserved by any semi-brace isomorphism."""
    orders = b.circ.element_orders()
    sigs = []
    for x in range(b.n):
        sigs.append(
            (
                int(orders[x]),
                bool(b.is_idempotent(x)),
                int(b.lam[x, 0]) == 0,
                Permutation.of(b.lam[x]).cycle_type(),
            )
        )
    return sigs


@dataclass(frozen=True)
class Fingerprint:
    """Isomorphism invariants of a semi-brace; equality is necessary (not
    sufficient) for isomorphism, so unequal fingerprints prune the search."""

    n: int
    e_size: int
    circ_profile: tuple
    g_circ_profile: tuple
    g_add_profile: tuple
    nil_orders: tuple
    e_ideal: bool
    kernel_is_g: bool
    lambda_profile: tuple

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "e_size": self.e_size,
            "circ_profile": _deep_list(self.circ_profile),
            "g_circ_profile": _deep_list(self.g_circ_profile),
            "g_add_profile": _deep_list(self.g_add_profile),
            "nil_orders": _deep_list(self.nil_orders),
            "e_ideal": self.e_ideal,
            "kernel_is_g": self.kernel_is_g,
            "lambda_profile": _deep_list(self.lambda_profile),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Fingerprint":
        if not isinstance(obj, dict):
            raise MalformedTableError("fingerprint JSON must be an object")
        try:
            return cls(
                n=int(obj["n"]),
                e_size=int(obj["e_size"]),
                circ_profile=_deep_tuple(obj["circ_profile"]),
                g_circ_profile=_deep_tuple(obj["g_circ_profile"]),
                g_add_profile=_deep_tuple(obj["g_add_profile"]),
                nil_orders=_deep_tuple(obj["nil_orders"]),
                e_ideal=bool(obj["e_ideal"]),
                kernel_is_g=bool(obj["kernel_is_g"]),
                lambda_profile=_deep_tuple(obj["lambda_profile"]),
            )
        except KeyError as err:
            raise MalformedTableError(f"fingerprint JSON lacks {err}") from err


_FP_CACHE: dict[bytes, Fingerprint] = {}


def fingerprint(b: SemiBrace) -> Fingerprint:
    key = b.key()
    hit = _FP_CACHE.get(key)
    if hit is not None:
        return hit
    gp = skew_part(b)
    g_add = FiniteGroup.from_table(CayleyTable.of(gp.semibrace.add.table))
    nil = tuple(sorted(0 if k is None else int(k) for k in is_right_nil(b)[1]))
    fp = Fingerprint(
        n=b.n,
        e_size=len(b.e_elements),
        circ_profile=group_profile(b.circ),
        g_circ_profile=group_profile(gp.semibrace.circ),
        g_add_profile=group_profile(g_add),
        nil_orders=nil,
        e_ideal=is_ideal(b, b.e_elements).is_ideal,
        kernel_is_g=set(kernel_lambda_on_E(b)) == set(b.g_elements),
        lambda_profile=tuple(sorted(_element_signatures(b))),
    )
    _FP_CACHE[key] = fp
    return fp


# ---------------------------------------------------------------------------
# isomorphism testing


def _iso_search(
    b1: SemiBrace,
    b2: SemiBrace,
    sigs1: Optional[list] = None,
    sigs2: Optional[list] = None,
) -> Optional[Permutation]:
    """Backtracking over circle-group generator images, with per-element
    invariant pools; assumes size and fingerprint checks already passed."""
    if sigs1 is None:
        sigs1 = _element_signatures(b1)
    if sigs2 is None:
        sigs2 = _element_signatures(b2)
    gens = b1.circ.generating_sequence()
    if not gens:
        return Permutation.identity(1)
    pools = [[y for y in range(b2.n) if sigs2[y] == sigs1[g]] for g in gens]
    if any(not pool for pool in pools):
        return None
    add1 = b1.add.table
    add2 = b2.add.table

    def keeps_add(f: np.ndarray) -> bool:
        return bool(np.array_equal(f[add1], add2[f[:, None], f[None, :]]))

    found = _search_morphisms(
        b1.circ, b2.circ, pools, gens, bijective=True, limit=1, extra_check=keeps_add
    )
    if not found:
        return None
    return Permutation.of(found[0])


def isomorphic(b1: SemiBrace, b2: SemiBrace) -> Optional[Permutation]:
    """A bijection f with f(x + y) = f(x) + f(y) and f(x o y) = f(x) o f(y),
    or None. Equal tables short-circuit to the identity witness."""
    if b1.n != b2.n:
        return None
    if b1.key() == b2.key():
        return Permutation.identity(b1.n)
    if fingerprint(b1) != fingerprint(b2):
        return None
    return _iso_search(b1, b2)


# ---------------------------------------------------------------------------
# census entries and deduplication


@dataclass(frozen=True)
class CensusEntry:
    semibrace: SemiBrace
    fingerprint: Fingerprint
    provenance: str

    def to_json(self) -> dict:
        return {
            "semibrace": self.semibrace.to_json(),
            "fingerprint": self.fingerprint.to_json(),
            "provenance": self.provenance,
        }


def census_to_json(entries: Sequence[CensusEntry]) -> list:
    return [entry.to_json() for entry in entries]


def census_from_json(obj) -> list[CensusEntry]:
    """Rebuild a census from JSON; every entry is re-verified from scratch
    and its stored fingerprint compared against a recomputed one."""
    if not isinstance(obj, list):
        raise MalformedTableError("census JSON must be a list")
    out = []
    for item in obj:
        if not isinstance(item, dict) or not {
            "semibrace",
            "fingerprint",
            "provenance",
        } <= set(item):
            raise MalformedTableError(
                "census entry needs semibrace, fingerprint, and provenance"
            )
        b = semibrace_from_json(item["semibrace"])
        fp = Fingerprint.from_json(item["fingerprint"])
        if fp != fingerprint(b):
            raise MalformedTableError("census fingerprint does not match its tables")
        out.append(CensusEntry(semibrace=b, fingerprint=fp, provenance=str(item["provenance"])))
    return out


class _Dedup:
    """Merge candidates into isomorphism classes.  The representative kept
    for a class is the lexicographically least (add, circ) pair seen."""

    def __init__(self, keep_e_size: Callable[[int], bool]):
        self.keep_e_size = keep_e_size
        self.classes: list[dict] = []
        self.buckets: dict[Fingerprint, list[int]] = {}

    def add(self, b: SemiBrace, provenance: str) -> None:
        if not self.keep_e_size(len(b.e_elements)):
            return
        fp = fingerprint(b)
        sigs = _element_signatures(b)
        key = (b.add.key(), b.circ.op.key())
        for idx in self.buckets.get(fp, []):
            cls = self.classes[idx]
            if key == cls["key"] or _iso_search(b, cls["sb"], sigs, cls["sigs"]) is not None:
                if key < cls["key"]:
                    cls.update(sb=b, key=key, sigs=sigs, prov=provenance)
                return
        self.buckets.setdefault(fp, []).append(len(self.classes))
        self.classes.append({"sb": b, "fp": fp, "sigs": sigs, "key": key, "prov": provenance})

    def entries(self) -> list[CensusEntry]:
        out = [
            CensusEntry(semibrace=c["sb"], fingerprint=c["fp"], provenance=c["prov"])
            for c in self.classes
        ]
        out.sort(key=lambda e: (e.fingerprint.e_size, e.semibrace.key()))
        return out


# ---------------------------------------------------------------------------
# filters


def _sylow_sizes(n: int) -> frozenset[int]:
    sizes = set()
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            power = 1
            while m % d == 0:
                power *= d
                m //= d
            sizes.add(power)
        d += 1
    if m > 1:
        sizes.add(m)
    return frozenset(sizes)


def _e_size_predicate(n: int, emin: int, esylow: bool) -> Callable[[int], bool]:
    sylow = _sylow_sizes(n)
    if esylow:
        return lambda e: e >= emin and e in sylow
    return lambda e: e >= emin


# ---------------------------------------------------------------------------
# permutation pools for the generic enumerator


@lru_cache(maxsize=None)
def _all_perms(n: int) -> np.ndarray:
    """All permutations of range(n), lexicographic, shape (n!, n), int8."""
    if n == 1:
        out = np.zeros((1, 1), dtype=np.int8)
        out.setflags(write=False)
        return out
    sub = _all_perms(n - 1)
    blocks = []
    for first in range(n):
        rest = (sub + (sub >= first)).astype(np.int8)
        head = np.full((sub.shape[0], 1), first, dtype=np.int8)
        blocks.append(np.hstack([head, rest]))
    out = np.ascontiguousarray(np.vstack(blocks))
    out.setflags(write=False)
    return out


def _compose_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Rowwise composition of permutations: out[i] = a[i] applied after b[i]."""
    return np.take_along_axis(a, b, axis=1)


def _row_powers(p: np.ndarray, k: int) -> np.ndarray:
    """Rowwise k-th power; powers of one permutation commute, so the order
    of accumulation does not matter."""
    out = np.tile(np.arange(p.shape[1], dtype=p.dtype), (p.shape[0], 1))
    base = p
    while k:
        if k & 1:
            out = _compose_rows(out, base)
        base = _compose_rows(base, base)
        k >>= 1
    return out


def _order_divides_pool(n: int, k: int) -> np.ndarray:
    """Permutations of range(n) whose order divides k."""
    perms = _all_perms(n)
    ident = np.arange(n, dtype=perms.dtype)
    mask = (_row_powers(perms, k) == ident[None, :]).all(axis=1)
    return np.ascontiguousarray(perms[mask])


def _bfs_tree(circ: FiniteGroup, gens: Sequence[int]) -> list[tuple[int, int, int]]:
    """(element, parent, generator index) triples in BFS order from the
    identity, where element = parent o gens[generator index]."""
    seen = {0}
    tree = []
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for gi, g in enumerate(gens):
                y = circ.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    tree.append((y, x, gi))
                    nxt.append(y)
        frontier = nxt
    if len(seen) != circ.n:
        raise InternalInvariantError("generating sequence fails to generate")
    return tree


def _word_table(circ: FiniteGroup, gens: Sequence[int]) -> dict[int, tuple[int, ...]]:
    """A product word over `gens` (as generator indices) for each element of
    the subgroup they generate."""
    words: dict[int, tuple[int, ...]] = {0: ()}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for gi, g in enumerate(gens):
                y = circ.mul(x, g)
                if y not in words:
                    words[y] = words[x] + (gi,)
                    nxt.append(y)
        frontier = nxt
    return words


def _eval_word(assigned: Sequence[np.ndarray], word: tuple[int, ...], n: int) -> np.ndarray:
    """Image of a product word under candidate generator images, rowwise."""
    rows = assigned[0].shape[0] if assigned else 1
    out = np.tile(np.arange(n, dtype=np.int8), (rows, 1))
    for gi in word:
        out = _compose_rows(out, assigned[gi])
    return out


def _generator_image_sets(
    circ: FiniteGroup, gens: list[int], pruned: bool, chunk: int = 512
) -> list[np.ndarray]:
    """Candidate image tuples for the generators, one (C, n) array per
    generator.  The tuples form a superset of the generator images of every
    homomorphism from (B, o) into Sym(n): the pruned path keeps only tuples
    consistent with element orders and with power/conjugation relations that
    land in the prefix subgroup, all of which any homomorphism satisfies."""
    n = circ.n
    if pruned:
        pools = [_order_divides_pool(n, circ.element_order(g)) for g in gens]
    else:
        pools = [_all_perms(n) for _ in gens]
    assigned = [pools[0]]
    for j in range(1, len(gens)):
        pool = pools[j]
        m = pool.shape[0]
        count = assigned[0].shape[0]
        if not pruned:
            assigned = [np.repeat(arr, m, axis=0) for arr in assigned]
            assigned.append(np.tile(pool, (count, 1)))
            continue
        prefix_gens = [gens[i] for i in range(j)]
        prefix_set = set(circ.closure(prefix_gens))
        words = _word_table(circ, prefix_gens)
        relations = []
        power = gens[j]
        t = 1
        while power not in prefix_set:
            power = circ.mul(power, gens[j])
            t += 1
        if t < circ.element_order(gens[j]):
            relations.append(("power", t, words[power]))
        for i in range(j):
            conj = circ.mul(circ.mul(gens[j], gens[i]), circ.inv(gens[j]))
            if conj in prefix_set:
                relations.append(("conj", i, words[conj]))
        pow_cache: dict[int, np.ndarray] = {}
        kept_prev = []
        kept_pool = []
        marange = np.arange(m)
        for start in range(0, count, chunk):
            rows = slice(start, min(start + chunk, count))
            part = [arr[rows] for arr in assigned]
            size = part[0].shape[0]
            mask = np.ones((size, m), dtype=bool)
            for rel in relations:
                target = _eval_word(part, rel[2], n)
                if rel[0] == "power":
                    t = rel[1]
                    if t not in pow_cache:
                        pow_cache[t] = _row_powers(pool, t)
                    mask &= (pow_cache[t][None, :, :] == target[:, None, :]).all(axis=2)
                else:
                    li = part[rel[1]]
                    # sigma o lam(g_i) o sigma^-1 = lam(conj), restated without
                    # inverses: sigma[li[y]] == target[sigma[y]] for all y.
                    lhs = pool[marange[None, :, None], li[:, None, :]]
                    rhs = target[np.arange(size)[:, None, None], pool[None, :, :]]
                    mask &= (lhs == rhs).all(axis=2)
            prev_idx, pool_idx = np.nonzero(mask)
            kept_prev.append(prev_idx + start)
            kept_pool.append(pool_idx)
        prev = np.concatenate(kept_prev)
        chosen = np.concatenate(kept_pool)
        assigned = [arr[prev] for arr in assigned]
        assigned.append(pool[chosen])
    return assigned


def _survivor_tables(
    circ: FiniteGroup,
    emin: int,
    esylow: bool,
    pruned: bool,
    chunk: int = 8192,
) -> list[np.ndarray]:
    """Addition tables of every valid semi-brace over this circle group whose
    idempotent count passes the filter.

    Exhaustiveness: the addition of any semi-brace with this circle group is
    a + b = a o lam(a^-)(b) for its lambda map, which is a homomorphism into
    Sym(n) and hence determined by generator images; all such image tuples
    are covered.  Soundness: each candidate table must pass associativity
    and the compatibility law here, and full verification afterwards."""
    n = circ.n
    keep = _e_size_predicate(n, emin, esylow)
    if n == 1:
        return [np.zeros((1, 1), dtype=np.int64)] if keep(1) else []
    gens = circ.generating_sequence()
    assigned = _generator_image_sets(circ, gens, pruned)
    count = assigned[0].shape[0]
    tree = _bfs_tree(circ, gens)
    tab8 = circ.table.astype(np.int8)
    tab16 = circ.table.astype(np.int16)
    inv = circ.inverse
    ident8 = np.arange(n, dtype=np.int8)
    arange_n = np.arange(n)
    sylow = _sylow_sizes(n)
    out: list[np.ndarray] = []
    for start in range(0, count, chunk):
        rows = slice(start, min(start + chunk, count))
        part = [arr[rows] for arr in assigned]
        size = part[0].shape[0]
        lam = np.empty((size, n, n), dtype=np.int8)
        lam[:, 0] = ident8
        for y, x, gi in tree:
            lam[:, y] = np.take_along_axis(lam[:, x], part[gi], axis=1)
        add = tab8[arange_n[None, :, None], lam[:, inv, :]]
        esize = (add[:, arange_n, arange_n] == ident8[None, :]).sum(axis=1)
        emask = esize >= emin
        if esylow:
            emask &= np.isin(esize, list(sylow))
        if not emask.any():
            continue
        add = add[emask]
        lam = lam[emask]
        size = add.shape[0]
        # associativity: add[add[x, y], z] == add[x, add[y, z]]
        flat = add.reshape(size, n * n)
        bidx = np.arange(size)[:, None, None, None]
        a16 = add.astype(np.int16)
        z16 = np.arange(n, dtype=np.int16)
        left = flat[bidx, a16[:, :, :, None] * n + z16[None, None, None, :]]
        right = flat[bidx, z16[None, :, None, None] * n + a16[:, None, :, :]]
        ok = (left == right).reshape(size, -1).all(axis=1)
        if not ok.any():
            continue
        add = add[ok]
        lam = lam[ok]
        size = add.shape[0]
        # compatibility: a o (b + c) == (a o b) + lam_a(c)
        flat = add.reshape(size, n * n)
        bidx = np.arange(size)[:, None, None, None]
        lhs = tab8[arange_n[None, :, None, None], add[:, None, :, :]]
        rhs = flat[bidx, tab16[None, :, :, None] * n + lam[:, :, None, :]]
        ok = (lhs == rhs).reshape(size, -1).all(axis=1)
        for idx in np.nonzero(ok)[0]:
            out.append(add[idx].astype(np.int64))
    return out


def _generic_worker(args) -> list[np.ndarray]:
    circ, emin, esylow, pruned = args
    return _survivor_tables(circ, emin, esylow, pruned)


def enumerate_generic(
    n: int,
    emin: int = 1,
    esylow: bool = False,
    pruned: bool = True,
    jobs: int = 1,
    cache_dir: Optional[Union[str, Path]] = None,
) -> list[CensusEntry]:
    """Complete census of semi-braces of order n (up to isomorphism) whose
    idempotent count passes the filter, by exhausting lambda representations
    over every group of order n."""
    if n < 1 or emin < 1 or jobs < 1:
        raise ParameterError("n, emin, and jobs must be positive")
    if n > GENERIC_BOUND:
        raise ParameterError(f"generic enumeration is bounded at n <= {GENERIC_BOUND}")
    if not pruned and n > UNPRUNED_BOUND:
        raise ParameterError(f"the unpruned sweep is bounded at n <= {UNPRUNED_BOUND}")
    key = _cache_key("generic", n, emin, esylow, pruned=pruned)
    cached = _cache_load(cache_dir, key)
    if cached is not None:
        return cached
    groups = small_groups(n)
    tasks = [(g, emin, esylow, pruned) for g in groups]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_generic_worker, tasks))
    else:
        results = [_generic_worker(task) for task in tasks]
    dedup = _Dedup(_e_size_predicate(n, emin, esylow))
    for gi, (group, tables) in enumerate(zip(groups, results)):
        for table in tables:
            dedup.add(verify(table, group.table), f"generic:n={n}:group{gi}")
    entries = dedup.entries()
    _cache_store(cache_dir, key, entries)
    return entries


# ---------------------------------------------------------------------------
# structural enumerator


def _pq_shape(n: int) -> Optional[tuple[int, int]]:
    for q in range(2, n):
        if n % q == 0 and is_prime(q):
            p = n // q
            if p >= q and is_prime(p):
                return (p, q)
    return None


def _2p2_shape(n: int) -> Optional[int]:
    if n % 2 != 0:
        return None
    m = n // 2
    r = math.isqrt(m)
    if r * r == m and is_prime(r) and r % 2 == 1:
        return r
    return None


def enumerate_structural(
    n: int,
    emin: int = 2,
    esylow: bool = False,
    jobs: int = 1,
    cache_dir: Optional[Union[str, Path]] = None,
) -> list[CensusEntry]:
    """Census by structure: full-trivial semi-braces plus semidirect products
    of a skew brace part and a trivial part, in both directions, over every
    action homomorphism.  Supported shapes are n = pq with |E| > 1 and
    n = 2p^2 (odd prime p) with |E| a Sylow size; those are the shapes where
    every semi-brace decomposes this way."""
    del jobs  # accepted for interface symmetry; the sweep is cheap
    if esylow:
        if _2p2_shape(n) is None:
            raise ParameterError(
                "the Sylow filter needs n = 2p^2 with p an odd prime"
            )
        e_sizes = sorted(s for s in _sylow_sizes(n) if s >= max(emin, 2))
    else:
        if _pq_shape(n) is None:
            raise ParameterError("structural enumeration needs n = pq with p, q prime")
        if emin < 2:
            raise ParameterError("structural enumeration covers |E| > 1 only")
        e_sizes = sorted(d for d in range(2, n + 1) if n % d == 0 and d >= emin)
    key = _cache_key("structural", n, emin, esylow)
    cached = _cache_load(cache_dir, key)
    if cached is not None:
        return cached
    allowed = set(e_sizes)
    dedup = _Dedup(lambda e: e in allowed)
    for e in e_sizes:
        if e == n:
            for k, egroup in enumerate(small_groups(n)):
                dedup.add(trivial_semibrace(egroup), f"structural:n={n}:trivial:group{k}")
            continue
        g_size = n // e
        for bi, gbrace in enumerate(skew_braces(g_size)):
            gaut = brace_automorphism_group(gbrace)
            for ei, egroup in enumerate(small_groups(e)):
                etriv = trivial_semibrace(egroup)
                for hi, hom in enumerate(homomorphisms(egroup, gaut.group)):
                    alpha = [gaut.perms[hom.apply(c)] for c in range(e)]
                    dedup.add(
                        semidirect(gbrace, etriv, alpha),
                        f"structural:n={n}:e{e}:G{bi}xE{ei}:hom{hi}",
                    )
                eaut = automorphism_group(egroup)
                for hi, hom in enumerate(homomorphisms(gbrace.circ, eaut.group)):
                    alpha = [eaut.perms[hom.apply(c)] for c in range(g_size)]
                    dedup.add(
                        semidirect(etriv, gbrace, alpha),
                        f"structural:n={n}:e{e}:E{ei}xG{bi}:hom{hi}",
                    )
    entries = dedup.entries()
    _cache_store(cache_dir, key, entries)
    return entries


# ---------------------------------------------------------------------------
# classification verification


def _is_cyclic_profile(profile: tuple) -> bool:
    size, orders = profile[0], profile[1]
    return bool(orders) and orders[-1] == size


@dataclass
class ClassificationReport:
    theorem: str
    p: int
    q: Optional[int]
    n: int
    family_labels: list[str]
    census_count: int
    generic_checked: bool
    matching: list[tuple[str, int]]
    problems: list[str]

    @property
    def ok(self) -> bool:
        return not self.problems

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "p": self.p,
            "q": self.q,
            "n": self.n,
            "family_labels": list(self.family_labels),
            "family_count": len(self.family_labels),
            "census_count": self.census_count,
            "generic_checked": self.generic_checked,
            "matching": [[label, idx] for label, idx in self.matching],
            "problems": list(self.problems),
            "ok": self.ok,
        }


def _match_census(
    fams: list[tuple[str, SemiBrace]],
    census: list[CensusEntry],
    label: str,
    problems: list[str],
) -> list[tuple[str, int]]:
    """Require a bijection families <-> census classes via isomorphic."""
    matching = []
    hit_by: dict[int, str] = {}
    for name, b in fams:
        hits = [
            k
            for k, entry in enumerate(census)
            if isomorphic(b, entry.semibrace) is not None
        ]
        if len(hits) != 1:
            problems.append(f"{name} matches {len(hits)} classes in the {label} census")
            continue
        k = hits[0]
        if k in hit_by:
            problems.append(
                f"{label} census class {k} matched by both {hit_by[k]} and {name}"
            )
        hit_by[k] = name
        matching.append((name, k))
    if len(hit_by) != len(census):
        problems.append(
            f"{label} census has {len(census)} classes, families matched {len(hit_by)}"
        )
    return matching


def verify_classification(
    theorem: str,
    p: int,
    q: Optional[int] = None,
    jobs: int = 1,
    cache_dir: Optional[Union[str, Path]] = None,
) -> ClassificationReport:
    """Build the families for a classification statement, check pairwise
    non-isomorphism and the stated idempotent sizes, and require a bijection
    with the structural census (and the generic one when n is small)."""
    if theorem == "2p2":
        fids: list[FamilyId] = []
        for tag in TWO_P2_THEOREMS:
            fids.extend(applicable_items(tag, p))
        n = 2 * p * p
    elif theorem in TWO_P2_THEOREMS:
        fids = applicable_items(theorem, p)
        n = 2 * p * p
    elif theorem in PQ_THEOREMS:
        if q is None:
            raise ParameterError("pq classification checks need q")
        fids = applicable_items(theorem, p, q)
        n = p * q
    else:
        raise ParameterError(f"unknown classification tag: {theorem}")

    fams = []
    problems: list[str] = []
    for fid in fids:
        b = family(fid)
        name = f"{fid.theorem}[{fid.item}]"
        want_e = EXPECTED_E_SIZE[fid.theorem](fid.item, fid.p, fid.q)
        if len(b.e_elements) != want_e:
            problems.append(f"{name} has |E| = {len(b.e_elements)}, stated {want_e}")
        if len(b.e_elements) * len(b.g_elements) != n:
            problems.append(f"{name} breaks |B| = |G| * |E|")
        fams.append((name, b))
    for i in range(len(fams)):
        for j in range(i + 1, len(fams)):
            if isomorphic(fams[i][1], fams[j][1]) is not None:
                problems.append(f"{fams[i][0]} and {fams[j][0]} are isomorphic")

    if theorem in PQ_THEOREMS:
        census = enumerate_structural(n, emin=2, cache_dir=cache_dir)
    else:
        census = enumerate_structural(n, esylow=True, cache_dir=cache_dir)
        if theorem == "2p2-E2-cyclic":
            census = [
                e
                for e in census
                if e.fingerprint.e_size == 2 and _is_cyclic_profile(e.fingerprint.g_circ_profile)
            ]
        elif theorem == "2p2-E2-noncyclic":
            census = [
                e
                for e in census
                if e.fingerprint.e_size == 2
                and not _is_cyclic_profile(e.fingerprint.g_circ_profile)
            ]
        elif theorem == "2p2-Ep2":
            census = [e for e in census if e.fingerprint.e_size == p * p]
    matching = _match_census(fams, census, "structural", problems)

    generic_checked = False
    if theorem in PQ_THEOREMS and n <= GENERIC_BOUND:
        gen = enumerate_generic(n, emin=2, jobs=jobs, cache_dir=cache_dir)
        _match_census(fams, gen, "generic", problems)
        generic_checked = True

    return ClassificationReport(
        theorem=theorem,
        p=p,
        q=q,
        n=n,
        family_labels=[name for name, _ in fams],
        census_count=len(census),
        generic_checked=generic_checked,
        matching=matching,
        problems=problems,
    )


# ---------------------------------------------------------------------------
# census cache


@lru_cache(maxsize=1)
def _code_version() -> str:
    digest = hashlib.sha256()
    here = Path(__file__).resolve().parent
    for path in sorted(here.glob("*.py")):
        digest.update(path.name.encode())
        digest.update(path.read_bytes())
    return digest.hexdigest()[:16]


def _cache_key(
    enumerator: str, n: int, emin: int, esylow: bool, pruned: Optional[bool] = None
) -> str:
    parts = [enumerator, f"n{n}", f"emin{emin}", f"esylow{int(esylow)}"]
    if pruned is not None:
        parts.append(f"pruned{int(pruned)}")
    parts.append(_code_version())
    return "-".join(parts) + ".json"


def _cache_load(cache_dir, key: str) -> Optional[list[CensusEntry]]:
    if cache_dir is None:
        return None
    path = Path(cache_dir) / key
    if not path.is_file():
        return None
    try:
        return census_from_json(json.loads(path.read_text()))
    except (ValueError, KeyError, TypeError, OSError):
        return None  # treat a stale or corrupt cache file as a miss


def _cache_store(cache_dir, key: str, entries: list[CensusEntry]) -> None:
    if cache_dir is None:
        return
    root = Path(cache_dir)
    root.mkdir(parents=True, exist_ok=True)
    tmp = root / (key + ".tmp")
    tmp.write_text(json.dumps(census_to_json(entries), sort_keys=True))
    tmp.replace(root / key)
