"""Semi-brace verification, parts, ideals, and semidirect decompositions."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semibrace.core import (
    InternalInvariantError,
    SemiBraceAxiomError,
    additive_decomposition,
    brace_automorphism_group,
    decompose,
    decompose_E_ideal,
    factorize,
    idempotents,
    is_ideal,
    kernel_lambda_on_E,
    lambda_map,
    rho,
    semibrace_from_json,
    semidirect_tables,
    skew_part,
    verify,
)
from semibrace.tables import cyclic_group, dicyclic_group


def trivial_semibrace_tables(group):
    """add[a, b] = b alongside the group's own multiplication."""
    n = group.n
    add = np.tile(np.arange(n), (n, 1))
    return add, group.table


def trivial_brace_tables(group):
    """add = circ = the group's table."""
    return group.table.copy(), group.table.copy()


def pair_tables(p, q, u, kernel_side):
    """Hand-built size p*q examples on Z/p x Z/q, u a unit mod p.

    kernel_side=True: index (g, e) -> g*q + e,
        (g1,e1)+(g2,e2) = (g1+g2, e2),  (g1,e1)o(g2,e2) = (g1+u^e1*g2, e1+e2).
    kernel_side=False: index (e, g) -> e*q ... -> e*|G|+g with |G|=q,
        (e1,g1)+(e2,g2) = (e2, g1+g2),  (e1,g1)o(e2,g2) = (e1+u^g1*e2, g1+g2).
    """
    n = p * q
    add = np.zeros((n, n), dtype=int)
    circ = np.zeros((n, n), dtype=int)
    if kernel_side:
        for g1 in range(p):
            for e1 in range(q):
                for g2 in range(p):
                    for e2 in range(q):
                        i, j = g1 * q + e1, g2 * q + e2
                        add[i, j] = ((g1 + g2) % p) * q + e2
                        circ[i, j] = ((g1 + pow(u, e1, p) * g2) % p) * q + (e1 + e2) % q
    else:
        for e1 in range(p):
            for g1 in range(q):
                for e2 in range(p):
                    for g2 in range(q):
                        i, j = e1 * q + g1, e2 * q + g2
                        add[i, j] = e2 * q + (g1 + g2) % q
                        circ[i, j] = ((e1 + pow(u, g1, p) * e2) % p) * q + (g1 + g2) % q
    return add, circ


@pytest.fixture(scope="module")
def kernel_example():
    """|B|=6, G = Z/3 is the kernel of lambda on E, E = Z/2 not an ideal."""
    add, circ = pair_tables(3, 2, 2, kernel_side=True)
    return verify(add, circ)


@pytest.fixture(scope="module")
def e_ideal_example():
    """|B|=6, E = Z/3 is an ideal, G = Z/2 is not the kernel."""
    add, circ = pair_tables(3, 2, 2, kernel_side=False)
    return verify(add, circ)


def sample_pool():
    pool = [
        verify(*trivial_semibrace_tables(cyclic_group(5))),
        verify(*trivial_semibrace_tables(dicyclic_group(2))),
        verify(*trivial_brace_tables(cyclic_group(6))),
        verify(*trivial_brace_tables(dicyclic_group(2))),
        verify(*pair_tables(3, 2, 2, kernel_side=True)),
        verify(*pair_tables(3, 2, 2, kernel_side=False)),
        verify(*pair_tables(5, 2, 4, kernel_side=True)),
    ]
    return pool


POOL = sample_pool()


# ---------------------------------------------------------------------------
# verification and diagnostics


def test_trivial_semibrace_verifies():
    b = verify(*trivial_semibrace_tables(cyclic_group(4)))
    assert b.e_elements == (0, 1, 2, 3)
    assert b.g_elements == (0,)
    # lambda_a is left translation by a when every element is idempotent
    assert np.array_equal(b.lam, b.circ.table)


def test_trivial_brace_verifies():
    b = verify(*trivial_brace_tables(cyclic_group(4)))
    assert b.e_elements == (0,)
    assert b.g_elements == (0, 1, 2, 3)
    assert np.array_equal(b.lam, np.tile(np.arange(4), (4, 1)))


def test_identity_relabeled_to_zero():
    # shift Z/3 so its identity sits at index 1, in both tables
    g = cyclic_group(3)
    perm = np.array([1, 0, 2])
    shifted = g.op.relabel(perm).table
    b = verify(shifted, shifted)
    assert b.circ_of(0, 2) == 2 and b.circ_of(0, 0) == 0


def test_circle_not_a_group_diagnostic():
    n = 3
    right_zero = np.tile(np.arange(n), (n, 1))
    add = right_zero.copy()
    with pytest.raises(SemiBraceAxiomError) as exc:
        verify(add, right_zero)
    assert exc.value.axiom == "circle-not-a-group"


def test_add_not_associative_diagnostic():
    circ = cyclic_group(3).table
    add = np.array([[0, 1, 2], [2, 0, 1], [1, 2, 0]])  # rows injective, not associative
    with pytest.raises(SemiBraceAxiomError) as exc:
        verify(add, circ)
    assert exc.value.axiom in ("add-not-associative", "add-not-left-cancellative")


def test_add_not_left_cancellative_diagnostic():
    circ = cyclic_group(2).table
    add = np.zeros((2, 2), dtype=int)  # constant: associative, not cancellative
    with pytest.raises(SemiBraceAxiomError) as exc:
        verify(add, circ)
    assert exc.value.axiom == "add-not-left-cancellative"
    assert exc.value.witness == (0, 0, 1)


def test_compatibility_diagnostic():
    add = np.array([[1, 0], [0, 1]])  # a + b = a + b + 1 mod 2
    circ = np.array([[0, 1], [1, 0]])
    with pytest.raises(SemiBraceAxiomError) as exc:
        verify(add, circ)
    assert exc.value.axiom == "compatibility"
    assert exc.value.witness == (0, 0, 0)


def test_malformed_table_diagnostic():
    with pytest.raises(SemiBraceAxiomError) as exc:
        verify([[0, 1]], [[0, 1], [1, 0]])
    assert exc.value.axiom == "malformed-table"
    with pytest.raises(SemiBraceAxiomError):
        verify([[0, 5], [1, 0]], [[0, 1], [1, 0]])


def test_json_round_trip(kernel_example):
    again = semibrace_from_json(kernel_example.to_json())
    assert again.key() == kernel_example.key()
    with pytest.raises(SemiBraceAxiomError):
        semibrace_from_json({"n": 2, "add": [[0, 1], [0, 1]]})


# ---------------------------------------------------------------------------
# parts and factorization


def test_kernel_example_parts(kernel_example):
    b = kernel_example
    assert b.e_elements == (0, 1)
    assert b.g_elements == (0, 2, 4)
    ep = idempotents(b)
    assert ep.group.n == 2
    gp = skew_part(b)
    # the skew part here is the trivial brace on Z/3
    assert np.array_equal(gp.semibrace.add.table, gp.semibrace.circ.table)
    assert sorted(gp.semibrace.circ.element_orders().tolist()) == [1, 3, 3]


def test_factorize_frozen_oracle(kernel_example):
    # worked out by hand: element 5 = (2,1) has g = (2,0) -> 4, e = (0,1) -> 1
    assert factorize(kernel_example, 5) == (4, 1)
    assert additive_decomposition(kernel_example, 5) == (4, 1)


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_factorize_properties(data):
    b = data.draw(st.sampled_from(POOL))
    x = data.draw(st.integers(min_value=0, max_value=b.n - 1))
    g, e = factorize(b, x)
    assert g in set(b.g_elements) and e in set(b.e_elements)
    assert b.circ_of(g, e) == x
    g2, e2 = additive_decomposition(b, x)
    assert b.add_of(g2, e2) == x and g2 == g


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_recovered_addition(data):
    b = data.draw(st.sampled_from(POOL))
    x = data.draw(st.integers(min_value=0, max_value=b.n - 1))
    y = data.draw(st.integers(min_value=0, max_value=b.n - 1))
    # a + b = a o lambda_{a'}(b)
    assert b.add_of(x, y) == b.circ_of(x, b.lam_of(b.inv(x), y))


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_lambda_rho_product_identity(data):
    b = data.draw(st.sampled_from(POOL))
    x = data.draw(st.integers(min_value=0, max_value=b.n - 1))
    y = data.draw(st.integers(min_value=0, max_value=b.n - 1))
    # x o y = lambda_x(y) o rho_y(x)
    assert b.circ_of(x, y) == b.circ_of(b.lam_of(x, y), rho(b, y, x))


@pytest.mark.parametrize("b", POOL, ids=lambda b: f"n{b.n}e{len(b.e_elements)}")
def test_lambda_map_validates(b):
    lm = lambda_map(b)
    assert len(lm.perms) == b.n
    assert lm.perms[0].is_identity()


def test_sizes_multiply():
    for b in POOL:
        assert len(b.e_elements) * len(b.g_elements) == b.n


# ---------------------------------------------------------------------------
# ideals and kernels


def test_zero_and_whole_are_ideals():
    for b in POOL:
        assert is_ideal(b, [0]).is_ideal
        assert is_ideal(b, range(b.n)).is_ideal


def test_kernel_example_E_not_ideal(kernel_example):
    rep = is_ideal(kernel_example, kernel_example.e_elements)
    assert not rep.is_ideal
    assert not rep.normal_in_circ
    assert rep.witness[0] == "normal-in-circ"


def test_e_ideal_example_E_is_ideal(e_ideal_example):
    rep = is_ideal(e_ideal_example, e_ideal_example.e_elements)
    assert rep.is_ideal


def test_kernel_membership(kernel_example, e_ideal_example):
    assert kernel_lambda_on_E(kernel_example) == kernel_example.g_elements
    assert kernel_lambda_on_E(e_ideal_example) == (0,)


# ---------------------------------------------------------------------------
# semidirect decompositions


def test_decompose_kernel_example(kernel_example):
    data = decompose(kernel_example)
    assert data is not None
    assert data.direction == "skew-by-trivial"
    assert data.brace.n == 3 and data.trivial_group.n == 2
    assert not data.alpha.is_trivial()
    # the other route must be unavailable: E is not an ideal here
    assert decompose_E_ideal(kernel_example) is None


def test_decompose_e_ideal_example(e_ideal_example):
    data = decompose_E_ideal(e_ideal_example)
    assert data is not None
    assert data.direction == "trivial-by-skew"
    assert data.brace.n == 2 and data.trivial_group.n == 3
    assert not data.alpha.is_trivial()
    # built so that the witness is literally the identity relabeling
    assert data.witness.is_identity()
    assert np.array_equal(data.product.add.table, e_ideal_example.add.table)
    assert decompose(e_ideal_example) is None


def test_trivial_brace_decomposes_both_ways():
    b = verify(*trivial_brace_tables(dicyclic_group(2)))
    both = decompose(b), decompose_E_ideal(b)
    for data in both:
        assert data is not None
        assert data.trivial_group.n == 1
        assert data.alpha.is_trivial()


def test_trivial_semibrace_decomposes_as_e_ideal():
    b = verify(*trivial_semibrace_tables(cyclic_group(6)))
    data = decompose_E_ideal(b)
    assert data is not None and data.brace.n == 1
    data2 = decompose(b)
    assert data2 is not None and data2.alpha.is_trivial()


def test_abelian_circle_gives_direct_product(kernel_example):
    # abelian circle group forces conjugation actions to be trivial
    add, circ = pair_tables(3, 2, 1, kernel_side=True)  # u = 1: direct product
    b = verify(add, circ)
    assert b.circ.is_abelian()
    data = decompose(b)
    assert data is not None and data.alpha.is_trivial()


def test_semidirect_tables_shape():
    g = cyclic_group(2)
    add1, circ1 = trivial_brace_tables(g)
    add2, circ2 = trivial_semibrace_tables(g)
    alpha = np.tile(np.arange(2), (2, 1))
    add, circ = semidirect_tables(add1, circ1, add2, circ2, alpha)
    b = verify(add, circ)
    assert b.n == 4
    assert len(b.e_elements) == 2 and len(b.g_elements) == 2


def test_brace_automorphism_group_trivial_brace():
    # for the trivial brace, both-table automorphisms = group automorphisms
    b = verify(*trivial_brace_tables(cyclic_group(5)))
    assert b and brace_automorphism_group(b).group.n == 4


def test_brace_automorphism_group_kernel_example(kernel_example):
    pg = brace_automorphism_group(kernel_example)
    for p in pg.perms:
        f = p.images
        assert np.array_equal(f[kernel_example.add.table], kernel_example.add.table[f[:, None], f[None, :]])


def test_relabel_preserves_structure(kernel_example):
    perm = np.array([0, 2, 1, 4, 3, 5])
    again = kernel_example.relabel(perm)
    assert len(again.e_elements) == 2
    assert len(again.g_elements) == 3
    with pytest.raises(Exception):
        kernel_example.relabel(np.array([1, 0, 2, 3, 4, 5]))
