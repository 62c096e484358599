"""Left cancellative left semi-braces and their structure maps.

A semi-brace here is a pair of tables on 0..n-1: a left cancellative
semigroup `add` and a group `circ` (identity 0) satisfying the
compatibility law

    a o (b + c) = a o b + a o (a' + c)

with a' the circle inverse of a. Derived objects: the lambda action
lambda_a(b) = a o (a' + b), the idempotent part E = {e : e + e = e}, and
the skew brace part G = B + 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .tables import (
    CayleyTable,
    FiniteGroup,
    GroupHom,
    MalformedTableError,
    PermGroup,
    Permutation,
    automorphisms,
    check_group,
    check_left_cancellative_semigroup,
    is_normal_subset,
    perm_group,
)


class SemiBraceAxiomError(ValueError):
    """A table pair failed verification; carries a machine-readable diagnostic."""

    def __init__(self, axiom: str, witness: tuple = ()):
        self.axiom = axiom
        self.witness = tuple(int(x) for x in witness)
        super().__init__(f"{axiom} at {self.witness}")

    def diagnostic(self) -> dict:
        return {"axiom": self.axiom, "witness": list(self.witness)}


class InternalInvariantError(RuntimeError):
    """A proven consequence of the axioms failed; verify() let something bad through."""


@dataclass(frozen=True)
class SemiBrace:
    """A verified left cancellative left semi-brace."""

    add: CayleyTable
    circ: FiniteGroup
    lam: np.ndarray  # lam[a] = image array of lambda_a
    e_elements: tuple[int, ...]
    g_elements: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.add.n

    def add_of(self, a: int, b: int) -> int:
        return int(self.add.table[a, b])

    def circ_of(self, a: int, b: int) -> int:
        return int(self.circ.table[a, b])

    def inv(self, a: int) -> int:
        return self.circ.inv(a)

    def lam_of(self, a: int, b: int) -> int:
        return int(self.lam[a, b])

    def is_idempotent(self, a: int) -> bool:
        return self.add_of(a, a) == a

    def key(self) -> bytes:
        return self.add.key() + self.circ.op.key()

    def relabel(self, perm) -> "SemiBrace":
        perm = np.asarray(perm, dtype=np.int64)
        if perm[0] != 0:
            raise MalformedTableError("relabeling must keep the identity at 0")
        return verify(self.add.relabel(perm).table, self.circ.op.relabel(perm).table)

    def to_json(self) -> dict:
        return {"n": self.n, "add": self.add.table.tolist(), "circ": self.circ.table.tolist()}


def verify(add_rows, circ_rows) -> SemiBrace:
    """Check the axioms and return the verified structure.

    Raises SemiBraceAxiomError with a distinct axiom tag and a minimal witness
    otherwise. If the circle identity is not at index 0, both tables are
    relabeled by the transposition moving it there before anything else.
    """
    try:
        add_t = CayleyTable.of(add_rows)
        circ_t = CayleyTable.of(circ_rows)
    except MalformedTableError as exc:
        raise SemiBraceAxiomError("malformed-table") from exc
    if add_t.n != circ_t.n:
        raise SemiBraceAxiomError("malformed-table", (add_t.n, circ_t.n))

    report = check_group(circ_t)
    if not report.is_group:
        kind, wit = report.failure
        raise SemiBraceAxiomError("circle-not-a-group", wit)
    if report.identity != 0:
        swap = np.arange(circ_t.n)
        swap[[0, report.identity]] = swap[[report.identity, 0]]
        add_t = add_t.relabel(swap)
        circ_t = circ_t.relabel(swap)
    circ = FiniteGroup.from_table(circ_t)

    ok, witness = check_left_cancellative_semigroup(add_t)
    if not ok:
        kind, wit = witness
        raise SemiBraceAxiomError(f"add-{kind}", wit)

    n = add_t.n
    add = add_t.table
    tab = circ.table
    inv = circ.inverse
    lam = tab[np.arange(n)[:, None], add[inv]]  # lam[a,b] = a o (a' + b)
    lhs = tab[:, add]  # lhs[a,b,c] = a o (b + c)
    rhs = add[tab[:, :, None], lam[:, None, :]]
    diff = lhs != rhs
    if diff.any():
        a, b, c = (int(i) for i in np.argwhere(diff)[0])
        raise SemiBraceAxiomError("compatibility", (a, b, c))

    if add[0, 0] != 0:
        raise SemiBraceAxiomError("zero-not-idempotent", (0,))

    if not np.array_equal(add[0], np.arange(n)):
        raise InternalInvariantError("0 is not a left identity for +")
    e_elements = tuple(int(i) for i in np.flatnonzero(np.diagonal(add) == np.arange(n)))
    g_elements = tuple(int(i) for i in np.unique(add[:, 0]))
    return SemiBrace(
        add=add_t, circ=circ, lam=_frozen(lam), e_elements=e_elements, g_elements=g_elements
    )


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


def semibrace_from_json(obj) -> SemiBrace:
    if not isinstance(obj, dict) or not {"n", "add", "circ"} <= set(obj):
        raise SemiBraceAxiomError("malformed-table")
    b = verify(obj["add"], obj["circ"])
    if b.n != obj["n"]:
        raise SemiBraceAxiomError("malformed-table", (obj["n"], b.n))
    return b


# ---------------------------------------------------------------------------
# parts


def _induced_table(table: np.ndarray, elements: Sequence[int]) -> np.ndarray:
    """Restrict a global table to a subset, relabeled to 0..k-1.

    The subset must be closed; raises InternalInvariantError otherwise."""
    elements = list(elements)
    pos = {e: i for i, e in enumerate(elements)}
    sub = table[np.ix_(elements, elements)]
    out = np.zeros_like(sub)
    for i in range(len(elements)):
        for j in range(len(elements)):
            v = int(sub[i, j])
            if v not in pos:
                raise InternalInvariantError("subset not closed under the operation")
            out[i, j] = pos[v]
    return out


@dataclass(frozen=True)
class EPart:
    """The additive idempotents with their circle group structure."""

    elements: tuple[int, ...]
    group: FiniteGroup  # (E, o) relabeled to 0..|E|-1 following `elements`


@dataclass(frozen=True)
class GPart:
    """The skew brace part G = B + 0 with its induced tables."""

    elements: tuple[int, ...]
    semibrace: SemiBrace  # induced (+, o) on G, relabeled following `elements`


def idempotents(b: SemiBrace) -> EPart:
    """E = {e : e + e = e}; asserts E is a circle subgroup and (E, +) is right-zero."""
    elems = b.e_elements
    eset = set(elems)
    for e in elems:
        for f in elems:
            if b.circ_of(e, f) not in eset or b.add_of(e, f) != f:
                raise InternalInvariantError("idempotents are not a right-zero circle subgroup")
        if b.inv(e) not in eset:
            raise InternalInvariantError("idempotents not closed under circle inverse")
    group = FiniteGroup.from_table(CayleyTable.of(_induced_table(b.circ.table, elems)))
    return EPart(elements=elems, group=group)


def skew_part(b: SemiBrace) -> GPart:
    """G = B + 0; asserts (G, +) is a group, the skew brace law holds on G,
    and |B| = |G| * |E|."""
    elems = b.g_elements
    add_g = _induced_table(b.add.table, elems)
    circ_g = _induced_table(b.circ.table, elems)
    rep = check_group(CayleyTable.of(add_g))
    if not rep.is_group or rep.identity != 0:
        raise InternalInvariantError("(G, +) is not a group with identity 0")
    neg = rep.inverses
    k = len(elems)
    circ_grp = FiniteGroup.from_table(CayleyTable.of(circ_g))
    # skew brace law: a o (b + c) = a o b - a + a o c
    lhs = circ_g[:, add_g]
    mid = add_g[circ_g[:, :, None], neg[:, None, None]]  # (a o b) - a
    rhs = add_g[mid, circ_g[:, None, :]]
    if not np.array_equal(lhs, rhs):
        raise InternalInvariantError("skew brace law fails on G")
    if k * len(b.e_elements) != b.n:
        raise InternalInvariantError("|B| != |G| * |E|")
    return GPart(elements=elems, semibrace=verify(add_g, circ_g))


@dataclass(frozen=True)
class LambdaMap:
    """The lambda action of (B, o) by additive automorphisms."""

    owner: SemiBrace
    perms: tuple[Permutation, ...]

    def apply(self, a: int, x: int) -> int:
        return int(self.owner.lam[a, x])


def lambda_map(b: SemiBrace) -> LambdaMap:
    """lambda_a(x) = a o (a' + x); validates the action laws."""
    lam = b.lam
    n = b.n
    add = b.add.table
    for a in range(n):
        if np.unique(lam[a]).size != n:
            raise InternalInvariantError("lambda_a is not a bijection")
    # additive automorphism: lambda_a(x + y) = lambda_a(x) + lambda_a(y)
    for a in range(n):
        la = lam[a]
        if not np.array_equal(la[add], add[la[:, None], la[None, :]]):
            raise InternalInvariantError("lambda_a does not preserve +")
    # homomorphism from (B, o): lambda_(a o b) = lambda_a . lambda_b
    tab = b.circ.table
    for a in range(n):
        for c in range(n):
            if not np.array_equal(lam[tab[a, c]], lam[a][lam[c]]):
                raise InternalInvariantError("lambda is not a circle homomorphism")
    eset = set(b.e_elements)
    gset = set(b.g_elements)
    for a in range(n):
        if {int(lam[a, e]) for e in eset} != eset:
            raise InternalInvariantError("lambda_a does not preserve E")
        if (int(lam[a, 0]) == 0) != (a in gset):
            raise InternalInvariantError("lambda_a fixes 0 exactly on G")
    return LambdaMap(owner=b, perms=tuple(Permutation.of(lam[a]) for a in range(n)))


def rho(b: SemiBrace, y: int, x: int) -> int:
    """rho_y(x) = (x' + y)' o y."""
    t = b.add_of(b.inv(x), y)
    return b.circ_of(b.inv(t), y)


def factorize(b: SemiBrace, x: int) -> tuple[int, int]:
    """The unique pair (g, e) in G x E with x = g o e."""
    g = b.add_of(x, 0)
    cands = [e for e in b.e_elements if b.add_of(g, e) == x]
    if len(cands) != 1:
        raise InternalInvariantError("additive decomposition not unique")
    e = b.lam_of(b.inv(g), cands[0])
    if b.circ_of(g, e) != x:
        raise InternalInvariantError("multiplicative factorization failed")
    return g, e


def additive_decomposition(b: SemiBrace, x: int) -> tuple[int, int]:
    """The unique pair (g, e) in G x E with x = g + e."""
    g = b.add_of(x, 0)
    cands = [e for e in b.e_elements if b.add_of(g, e) == x]
    if len(cands) != 1:
        raise InternalInvariantError("additive decomposition not unique")
    return g, cands[0]


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class IdealReport:
    elements: tuple[int, ...]
    normal_in_circ: bool
    intersection_normal_in_g: bool
    rho_closed: bool
    lambda_closed: bool
    witness: Optional[tuple]

    @property
    def is_ideal(self) -> bool:
        return (
            self.normal_in_circ
            and self.intersection_normal_in_g
            and self.rho_closed
            and self.lambda_closed
        )


def is_ideal(b: SemiBrace, elements) -> IdealReport:
    """The four ideal conditions, each reported separately with a witness for
    the first failure:

    1. I is a normal subgroup of (B, o);
    2. I n G is a normal subgroup of (G, +);
    3. (n' + x)' o x lies in I for every x in B, n in I n G;
    4. lambda_g(e) lies in I for every g in G, e in I n E.
    """
    ideal = tuple(sorted(int(x) for x in elements))
    iset = set(ideal)
    witness = None

    sub_ok = 0 in iset and all(
        b.circ_of(x, y) in iset and b.inv(x) in iset for x in iset for y in iset
    )
    normal1 = sub_ok and is_normal_subset(b.circ, iset)
    if not normal1 and witness is None:
        witness = ("normal-in-circ",)

    gset = set(b.g_elements)
    ig = sorted(iset & gset)
    gadd = _induced_table(b.add.table, b.g_elements)
    gpos = {e: i for i, e in enumerate(b.g_elements)}
    grep = check_group(CayleyTable.of(gadd))
    if not grep.is_group:
        raise InternalInvariantError("(G, +) is not a group")
    neg = grep.inverses  # additive inverses inside G, local labels
    igl = [gpos[x] for x in ig]
    igset = set(igl)
    normal2 = 0 in igset and all(int(gadd[x, y]) in igset for x in igl for y in igl)
    if normal2:
        for gl in range(len(b.g_elements)):
            for x in igl:
                conj = int(gadd[int(gadd[gl, x]), int(neg[gl])])
                if conj not in igset:
                    normal2 = False
                    if witness is None:
                        witness = ("intersection-normal-in-g", b.g_elements[gl], b.g_elements[x])
                    break
            if not normal2:
                break
    elif witness is None:
        witness = ("intersection-normal-in-g",)

    rho_ok = True
    for nn in ig:
        for x in range(b.n):
            t = b.add_of(b.inv(nn), x)
            if b.circ_of(b.inv(t), x) not in iset:
                rho_ok = False
                if witness is None:
                    witness = ("rho-closed", nn, x)
                break
        if not rho_ok:
            break

    lam_ok = True
    ie = sorted(iset & set(b.e_elements))
    for g in b.g_elements:
        for e in ie:
            if b.lam_of(g, e) not in iset:
                lam_ok = False
                if witness is None:
                    witness = ("lambda-closed", g, e)
                break
        if not lam_ok:
            break

    return IdealReport(
        elements=ideal,
        normal_in_circ=normal1,
        intersection_normal_in_g=normal2,
        rho_closed=rho_ok,
        lambda_closed=lam_ok,
        witness=witness,
    )


def kernel_lambda_on_E(b: SemiBrace) -> tuple[int, ...]:
    """{x : lambda_x fixes E pointwise}; always a subset of G (asserted)."""
    elems = tuple(
        x for x in range(b.n) if all(b.lam_of(x, e) == e for e in b.e_elements)
    )
    if not set(elems) <= set(b.g_elements):
        raise InternalInvariantError("kernel of lambda on E escapes G")
    return elems


# ---------------------------------------------------------------------------
# semidirect products and decompositions


def semidirect_tables(
    add1: np.ndarray, circ1: np.ndarray, add2: np.ndarray, circ2: np.ndarray, alpha: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Raw product tables of B1 x| B2 with B2 acting on B1 through alpha.

    alpha[c] is the image array of the automorphism attached to c in B2.
    Pair (x1, x2) gets index x1 * n2 + x2.

        (x1, x2) + (y1, y2) = (x1 + y1, x2 + y2)
        (x1, x2) o (y1, y2) = (x1 o alpha[x2](y1), x2 o y2)
    """
    n1, n2 = add1.shape[0], add2.shape[0]
    idx1, idx2 = np.divmod(np.arange(n1 * n2), n2)
    a, x = idx1[:, None], idx2[:, None]
    bb, yy = idx1[None, :], idx2[None, :]
    add = add1[a, bb] * n2 + add2[x, yy]
    circ = circ1[a, alpha[x, bb]] * n2 + circ2[x, yy]
    return add, circ


@dataclass(frozen=True)
class SemidirectData:
    """A semidirect product presentation of a semi-brace.

    direction "skew-by-trivial": product = G x| E, alpha: (E, o) -> Aut(G)
    by brace automorphisms (conjugation by idempotents).
    direction "trivial-by-skew": product = E x| G, alpha: (G, o) -> Aut(E, o)
    (conjugation by skew part elements; available when E is an ideal).
    """

    direction: str
    brace: SemiBrace  # the skew brace factor G, relabeled
    trivial_group: FiniteGroup  # the circle group of the trivial factor E
    alpha: GroupHom  # into the automorphism group below
    aut: PermGroup  # automorphisms of the acted-on factor
    witness: Permutation  # isomorphism from the original B onto `product`
    product: SemiBrace


def brace_automorphism_group(b: SemiBrace) -> PermGroup:
    """Bijections preserving both operations, as a permutation group."""
    keep = [p for p in automorphisms(b.circ) if _preserves(p.images, b.add.table)]
    return perm_group(keep)


def _preserves(f: np.ndarray, table: np.ndarray) -> bool:
    return bool(np.array_equal(f[table], table[f[:, None], f[None, :]]))


def _check_iso(src: SemiBrace, dst: SemiBrace, f: np.ndarray) -> bool:
    return _preserves_pair(f, src.add.table, dst.add.table) and _preserves_pair(
        f, src.circ.table, dst.circ.table
    )


def _preserves_pair(f: np.ndarray, src_t: np.ndarray, dst_t: np.ndarray) -> bool:
    return bool(np.array_equal(f[src_t], dst_t[f[:, None], f[None, :]]))


def decompose(b: SemiBrace) -> Optional[SemidirectData]:
    """Present B as (skew brace G) x| (trivial E) when G is the kernel of the
    lambda action on E; returns None otherwise.

    The action is alpha_e(g) = e o g o e', a brace automorphism of G; the
    witness maps x = g + e to the pair (g, e).
    """
    if set(kernel_lambda_on_E(b)) != set(b.g_elements):
        return None
    gp = skew_part(b)
    ep = idempotents(b)
    gpos = {e: i for i, e in enumerate(gp.elements)}
    epos = {e: i for i, e in enumerate(ep.elements)}
    k = len(gp.elements)
    m = len(ep.elements)

    aut = brace_automorphism_group(gp.semibrace)
    alpha_perms = []
    images = []
    for e in ep.elements:
        img = np.zeros(k, dtype=np.int64)
        for g in gp.elements:
            conj = b.circ_of(b.circ_of(e, g), b.inv(e))
            if conj not in gpos:
                raise InternalInvariantError("conjugation by an idempotent escapes G")
            img[gpos[g]] = gpos[conj]
        p = Permutation.of(img)
        alpha_perms.append(p)
        images.append(aut.index_of(p))
    hom = GroupHom.of(ep.group, aut.group, images)

    alpha_arr = np.stack([p.images for p in alpha_perms])
    tadd = np.tile(np.arange(m), (m, 1))  # trivial factor: a + b = b
    padd, pcirc = semidirect_tables(
        gp.semibrace.add.table, gp.semibrace.circ.table, tadd, ep.group.table, alpha_arr
    )
    product = verify(padd, pcirc)

    f = np.zeros(b.n, dtype=np.int64)
    for x in range(b.n):
        g, e = additive_decomposition(b, x)
        f[x] = gpos[g] * m + epos[e]
    if np.unique(f).size != b.n or not _check_iso(b, product, f):
        raise InternalInvariantError("semidirect witness is not an isomorphism")
    return SemidirectData(
        direction="skew-by-trivial",
        brace=gp.semibrace,
        trivial_group=ep.group,
        alpha=hom,
        aut=aut,
        witness=Permutation.of(f),
        product=product,
    )


def decompose_E_ideal(b: SemiBrace) -> Optional[SemidirectData]:
    """Present B as (trivial E) x| (skew brace G) when E is an ideal, i.e.
    normal in (B, o); returns None otherwise.

    The action is alpha_g(e) = g o e o g'; the witness maps x = e o g to
    the pair (e, g).
    """
    if not is_normal_subset(b.circ, b.e_elements):
        return None
    gp = skew_part(b)
    ep = idempotents(b)
    gpos = {e: i for i, e in enumerate(gp.elements)}
    epos = {e: i for i, e in enumerate(ep.elements)}
    k = len(gp.elements)
    m = len(ep.elements)

    aut = perm_group(automorphisms(ep.group))
    alpha_perms = []
    images = []
    eset = set(ep.elements)
    for g in gp.elements:
        img = np.zeros(m, dtype=np.int64)
        for e in ep.elements:
            conj = b.circ_of(b.circ_of(g, e), b.inv(g))
            if conj not in eset:
                raise InternalInvariantError("conjugation by a skew element escapes E")
            img[epos[e]] = epos[conj]
        p = Permutation.of(img)
        alpha_perms.append(p)
        images.append(aut.index_of(p))
    hom = GroupHom.of(gp.semibrace.circ, aut.group, images)

    alpha_arr = np.stack([p.images for p in alpha_perms])
    tadd = np.tile(np.arange(m), (m, 1))
    padd, pcirc = semidirect_tables(
        tadd, ep.group.table, gp.semibrace.add.table, gp.semibrace.circ.table, alpha_arr
    )
    product = verify(padd, pcirc)

    f = np.full(b.n, -1, dtype=np.int64)
    gset = set(gp.elements)
    for x in range(b.n):
        hits = []
        for e in ep.elements:
            g = b.circ_of(b.inv(e), x)
            if g in gset:
                hits.append((e, g))
        if len(hits) != 1:
            raise InternalInvariantError("multiplicative E o G decomposition not unique")
        e, g = hits[0]
        f[x] = epos[e] * k + gpos[g]
    if np.unique(f).size != b.n or not _check_iso(b, product, f):
        raise InternalInvariantError("semidirect witness is not an isomorphism")
    return SemidirectData(
        direction="trivial-by-skew",
        brace=gp.semibrace,
        trivial_group=ep.group,
        alpha=hom,
        aut=aut,
        witness=Permutation.of(f),
        product=product,
    )
