"""Yang-Baxter solutions induced by semi-braces."""

import numpy as np
import pytest

from semibrace.construct import (
    FamilyId,
    applicable_items,
    family,
    left_nilpotent_example,
    trivial_semibrace,
    trivial_skewbrace,
)
from semibrace.tables import MalformedTableError, cyclic_group, semidirect_group, Permutation
from semibrace.ybe import SolutionMap, check_braid, check_properties, solution_from


def s3_group():
    act = [Permutation.of([0, 1, 2]), Permutation.of([0, 2, 1])]
    return semidirect_group(cyclic_group(3), cyclic_group(2), act)


def test_abelian_trivial_brace_gives_flip():
    b = trivial_skewbrace(cyclic_group(5))
    s = solution_from(b)
    for x in range(5):
        for y in range(5):
            assert s.apply(x, y) == (y, x)
    props = check_properties(s)
    assert props.involutive and props.nondegenerate and props.bijective


def test_nonabelian_trivial_brace_gives_conjugation():
    g = s3_group()
    b = trivial_skewbrace(g)
    s = solution_from(b)
    for x in range(6):
        for y in range(6):
            assert s.apply(x, y) == (y, g.conjugate(x, g.inv(y)))
    assert check_braid(s) == (True, None)
    props = check_properties(s)
    assert props.bijective and props.nondegenerate and not props.involutive


def test_trivial_semibrace_solution():
    b = trivial_semibrace(cyclic_group(4))
    s = solution_from(b)
    for x in range(4):
        for y in range(4):
            assert s.apply(x, y) == (b.circ_of(x, y), 0)
    assert check_braid(s) == (True, None)
    props = check_properties(s)
    assert props.left_nondegenerate
    assert not props.nondegenerate and not props.bijective and not props.involutive


def test_braid_failure_detected_with_witness():
    # r(x, y) = (x + 1 mod 3, y): first components of the two braid sides
    # come out as x + 2 and x + 1, so every triple fails, (0, 0, 0) first.
    n = 3
    shift = np.stack(
        [(np.arange(n)[:, None] + 1) % n + np.zeros((1, n), dtype=int),
         np.zeros((n, 1), dtype=int) + np.arange(n)[None, :]],
        axis=-1,
    )
    ok, witness = check_braid(SolutionMap.of(shift))
    assert not ok and witness == (0, 0, 0)


def _braid_by_loops(s):
    n = s.n
    for x in range(n):
        for y in range(n):
            for z in range(n):
                u, v = s.apply(x, y)
                w1, z1 = s.apply(v, z)
                lhs = (*s.apply(u, w1), z1)
                w2, z2 = s.apply(y, z)
                u2, v2 = s.apply(x, w2)
                rhs = (u2, *s.apply(v2, z2))
                if lhs != rhs:
                    return False, (x, y, z)
    return True, None


def test_braid_checker_matches_literal_loops():
    rng = np.random.default_rng(7)
    found_bad = False
    for _ in range(20):
        n = 4
        s = SolutionMap.of(rng.integers(0, n, size=(n, n, 2)))
        got = check_braid(s)
        assert got == _braid_by_loops(s)
        found_bad = found_bad or not got[0]
    assert found_bad


def test_family_solutions_satisfy_braid():
    pool = []
    for p, q in ((3, 2), (5, 2)):
        for fid in applicable_items("pq-congruent", p, q):
            pool.append(family(fid))
    for fid in applicable_items("pq-noncongruent", 3, 3):
        pool.append(family(fid))
    for theorem in ("2p2-E2-cyclic", "2p2-E2-noncyclic", "2p2-Ep2"):
        for fid in applicable_items(theorem, 3):
            pool.append(family(fid))
    pool.append(left_nilpotent_example(3))
    for b in pool:
        s = solution_from(b)
        ok, witness = check_braid(s)
        assert ok, (b.n, witness)
        assert check_properties(s).left_nondegenerate


def test_solution_json_round_trip():
    s = solution_from(trivial_semibrace(cyclic_group(3)))
    again = SolutionMap.from_json(s.to_json())
    assert np.array_equal(again.r, s.r)
    with pytest.raises(MalformedTableError):
        SolutionMap.of(np.zeros((2, 2, 3), dtype=int))
    with pytest.raises(MalformedTableError):
        SolutionMap.from_json({"n": 5, "r": s.r.tolist()})
