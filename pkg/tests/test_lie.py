from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import corrupt, minimal_fixtures, random_nilpotent_lie
from rhtkit.lie import (GradedLieAlgebra, LieError, cce_dual, cce_roundtrip, check_jacobi, check_lcs_grading,
                        free_nilpotent_lie, homotopy_lie_algebra, hurewicz, lcs, lie_from_quadratic,
                        prop6_check, pronilpotent_stage, witt_number)
from rhtkit.models import free_group_stage, heisenberg, s1_wedge_s3, sphere
from rhtkit.sullivan import SullivanAlgebra, quadratic_part, validate


def heisenberg_lie():
    return GradedLieAlgebra([("x1", 0), ("x2", 0), ("x3", 0)], {(0, 1): {2: 1}})


def test_abelian_from_zero_differential():
    L = homotopy_lie_algebra(SullivanAlgebra.from_terms([("a", 1), ("b", 2)]))
    assert L.is_abelian()
    assert L.degrees == [0, 1]


def test_heisenberg_bracket():
    L = homotopy_lie_algebra(heisenberg())
    assert L.bracket_basis(0, 1) == (0, 0, 1)
    assert L.bracket_basis(1, 0) == (0, 0, -1)
    assert L.bracket_basis(0, 2) == (0, 0, 0)


def test_s2_bracket():
    L = homotopy_lie_algebra(sphere(2))
    assert L.degrees == [1, 2]
    # [a, a] = 2 b with the pairing convention used throughout
    assert L.bracket_basis(0, 0) == (0, 2)


def test_jacobi_negative_control():
    L = GradedLieAlgebra([("a", 0), ("b", 0), ("c", 0)], {(0, 1): {2: 1}, (0, 2): {0: 1}}, check=False)
    rep = check_jacobi(L)
    assert not rep.ok
    with pytest.raises(LieError):
        GradedLieAlgebra([("a", 0), ("b", 0), ("c", 0)], {(0, 1): {2: 1}, (0, 2): {0: 1}})


@pytest.mark.parametrize("name", sorted(minimal_fixtures()))
def test_jacobi_on_fixtures(name):
    assert check_jacobi(homotopy_lie_algebra(minimal_fixtures()[name])).ok


def test_corrupted_quadratic_part_breaks_jacobi():
    rng = random.Random(7)
    fixtures = [f for f in minimal_fixtures().values()]
    count = 0
    for alg in fixtures * 5:
        d1 = corrupt(alg, rng)
        if d1 is None:
            continue
        L = lie_from_quadratic(alg.space, d1, check=False)
        assert not check_jacobi(L).ok
        count += 1
    assert count >= 10


def test_lcs_examples():
    assert lcs(GradedLieAlgebra([("a", 0), ("b", 0)])).term(2).dim == 0
    ch = lcs(heisenberg_lie())
    assert ch.term(2).dim == 1 and ch.term(3).dim == 0
    assert lcs(free_nilpotent_lie([0, 0], 4)).quotient_dims()[:4] == [2, 1, 2, 3]


@pytest.mark.parametrize("n,expected", [(1, 2), (2, 1), (3, 2), (4, 3), (5, 6), (6, 9)])
def test_witt_numbers(n, expected):
    assert witt_number(2, n) == expected


def test_witt_against_free_lie():
    L = free_nilpotent_lie([0, 0, 0], 4)
    assert lcs(L).quotient_dims()[:4] == [witt_number(3, n) for n in range(1, 5)]


@pytest.mark.parametrize("name", sorted(minimal_fixtures()))
def test_lcs_grading(name):
    assert check_lcs_grading(homotopy_lie_algebra(minimal_fixtures()[name])) is None


def test_filtration_matches_lcs_quotients():
    abelian = SullivanAlgebra.from_terms([("a", 1), ("b", 3)])
    r = prop6_check(abelian, 0)
    assert r.ok and r.dim_vn == r.dim_quotient == 2
    r = prop6_check(heisenberg(), 0)
    assert r.ok and (r.dim_vn, r.dim_quotient) == (2, 2)
    r = prop6_check(heisenberg(), 1)
    assert r.ok and (r.dim_vn, r.dim_quotient) == (3, 3)
    alg = free_group_stage(2, 6)
    assert [prop6_check(alg, n).dim_vn for n in range(4)] == [2, 3, 5, 8]
    assert all(prop6_check(alg, n).ok for n in range(6))


def test_filtration_matches_lcs_s1_wedge_s3():
    alg = s1_wedge_s3(6)
    assert all(prop6_check(alg, n).ok for n in range(8))


def test_hurewicz_examples():
    z = SullivanAlgebra.from_terms([("a", 1), ("b", 3)])
    h = hurewicz(z)
    assert h.matrix.tolist() == [[1, 0], [0, 1]]
    h = hurewicz(sphere(2))
    assert h.matrix.tolist() == [[1], [0]]
    h = hurewicz(heisenberg())
    assert h.matrix.tolist() == [[1, 0], [0, 1], [0, 0]]
    assert h.vanishes_on_L2


@pytest.mark.parametrize("name", sorted(minimal_fixtures()))
def test_hurewicz_vanishes_on_commutators(name):
    assert hurewicz(minimal_fixtures()[name]).vanishes_on_L2


def test_cce_examples():
    assert cce_dual(GradedLieAlgebra([("a", 0), ("b", 1)])).d.is_zero()
    alg = cce_dual(heisenberg_lie())
    assert alg.space.degrees() == [1, 1, 1]
    h = heisenberg()
    assert alg.d.on_generator(2).terms == h.d.on_generator(2).terms
    assert cce_roundtrip(heisenberg_lie()).ok
    with pytest.raises(LieError):
        cce_dual(GradedLieAlgebra([("a", 0), ("b", 0)], {(0, 1): {1: 1}}))


def test_pronilpotent_stages():
    assert pronilpotent_stage([0, 0], 2).d.is_zero()
    s3 = pronilpotent_stage([0, 0], 3)
    assert len(s3.space) == 3 and len(s3.d.on_generator(2).terms) == 1
    s4 = pronilpotent_stage([0, 0], 4)
    assert len(s4.space) == 5
    assert s3.space.names == s4.space.names[:3]


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_random_roundtrip(seed):
    E = random_nilpotent_lie(random.Random(seed))
    assert check_jacobi(E).ok
    assert cce_roundtrip(E).ok
    assert validate(cce_dual(E)).ok


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_random_dual_is_quadratic_and_graded(seed):
    alg = cce_dual(random_nilpotent_lie(random.Random(seed)))
    assert quadratic_part(alg).values == alg.d.values
    assert check_lcs_grading(homotopy_lie_algebra(alg)) is None
