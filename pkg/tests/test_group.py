from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rhtkit.group import (SeriesElement, ULTruncation, exp_series, group_commutator, group_element,
                          group_identity, group_inverse, group_lcs, group_mul, group_pow, lazard_check,
                          nth_root, pi_of_morphism, series_action, whitehead)
from rhtkit.lie import GradedLieAlgebra, free_nilpotent_lie, homotopy_lie_algebra
from rhtkit.models import heisenberg, s1_wedge_s3, sphere
from rhtkit.ratlin import RatMatrix, rank
from rhtkit.sullivan import SullivanAlgebra, SullivanMorphism, quadratic_algebra

F = Fraction
FREE5 = ULTruncation(free_nilpotent_lie([0, 0], 5), 6)
HEIS = ULTruncation(homotopy_lie_algebra(heisenberg()), 3)


def mixed_algebra():
    # degree-0 part is Heisenberg, and x_a acts on the degree-1 part; dw has a cubic term
    return SullivanAlgebra.from_terms(
        [("a", 1), ("b", 1), ("c", 1), ("u", 2), ("w", 2)],
        {"c": [(1, ("a", "b"))], "w": [(1, ("a", "u")), (1, ("a", "b", "c"))]})


def rand_vec(rng, n):
    return tuple(F(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n))


# 3x3 unitriangular oracle ----------------------------------------------------------

def heis_matrix(x):
    a, b, c = x
    return RatMatrix([[0, a, c], [0, 0, b], [0, 0, 0]])


def mexp(N):
    return RatMatrix.identity(3) + N + (N @ N).scale(F(1, 2))


def mlog(U):
    N = U - RatMatrix.identity(3)
    return N - (N @ N).scale(F(1, 2))


def from_heis_matrix(N):
    return (N[0, 1], N[1, 2], N[0, 2])


# UL examples ---------------------------------------------------------------------

def test_abelian_truncation():
    ul = ULTruncation(GradedLieAlgebra([("a", 0), ("b", 0)]), 3)
    assert ul.pbw_basis() == [(), (0,), (1,), (0, 0), (0, 1), (1, 1)]
    assert ul.mul({(1,): 1}, {(0,): 1}) == {(0, 1): 1}


def test_heisenberg_straightening():
    ul = HEIS
    assert ul.P == RatMatrix.identity(3)
    assert ul.straighten((1, 0)) == {(0, 1): 1, (2,): -1}


def test_sphere3_enveloping_algebra():
    L = homotopy_lie_algebra(sphere(3))
    ul = ULTruncation(L, 4)
    assert L.is_abelian() and L.degrees == [2]
    assert ul.pbw_basis() == [(), (0,), (0, 0), (0, 0, 0)]


def test_commutator_is_bracket():
    L = homotopy_lie_algebra(sphere(2))
    ul = ULTruncation(L, 4)
    a = ul.from_lie((1, 0))
    assert ul.to_lie(ul.commutator(a, 1, a, 1)) == L.bracket((1, 0), (1, 0))


# exp / log ---------------------------------------------------------------------

def test_exp_examples():
    assert HEIS.exp((0, 0, 0)) == {(): 1}
    assert HEIS.exp((1, 0, 0)) == {(): 1, (0,): 1, (0, 0): F(1, 2)}


@settings(max_examples=100)
@given(st.integers(0, 10 ** 6))
def test_log_exp_inverse(seed):
    rng = random.Random(seed)
    x = rand_vec(rng, FREE5.lie.dim)
    assert FREE5.log(FREE5.exp(x)) == x


def test_log_rejects_non_unit():
    with pytest.raises(ValueError):
        HEIS.log({(): F(2)})


# group law -----------------------------------------------------------------------

def test_identity_and_inverse():
    rng = random.Random(0)
    g = group_element(FREE5, rand_vec(rng, FREE5.lie.dim))
    e = group_identity(FREE5)
    assert group_mul(g, e) == g == group_mul(e, g)
    assert group_mul(g, group_inverse(g)) == e


@pytest.mark.parametrize("seed", range(10))
def test_heisenberg_product_matches_matrices(seed):
    rng = random.Random(seed)
    x, y = rand_vec(rng, 3), rand_vec(rng, 3)
    L = HEIS.lie
    prod = group_mul(group_element(HEIS, x), group_element(HEIS, y)).log_coords
    half = tuple(c / 2 for c in L.bracket(x, y))
    assert prod == tuple(a + b + h for a, b, h in zip(x, y, half))
    oracle = from_heis_matrix(mlog(mexp(heis_matrix(x)) @ mexp(heis_matrix(y))))
    assert prod == oracle


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_associativity(seed):
    rng = random.Random(seed)
    a, b, c = (group_element(FREE5, rand_vec(rng, FREE5.lie.dim)) for _ in range(3))
    assert group_mul(group_mul(a, b), c) == group_mul(a, group_mul(b, c))


@pytest.mark.parametrize("p", [1, 2, 3, 5])
def test_roots(p):
    rng = random.Random(p)
    for _ in range(5):
        g = group_element(FREE5, rand_vec(rng, FREE5.lie.dim))
        r = nth_root(g, p)
        assert group_pow(r, p) == g
    with pytest.raises(ValueError):
        nth_root(g, 0)


def test_root_uniqueness_by_perturbation():
    rng = random.Random(11)
    g = group_element(FREE5, rand_vec(rng, FREE5.lie.dim))
    r = nth_root(g, 3)
    for k in range(FREE5.lie.dim):
        bumped = tuple(c + (1 if i == k else 0) for i, c in enumerate(r.log_coords))
        assert group_pow(group_element(FREE5, bumped), 3) != g


def test_heisenberg_center_root():
    g = group_element(HEIS, (0, 0, 1))
    assert nth_root(g, 2).log_coords == (0, 0, F(1, 2))


# Whitehead products -----------------------------------------------------------------

def test_whitehead_abelian():
    ul = ULTruncation(GradedLieAlgebra([("a", 0), ("b", 1)]), 3)
    assert whitehead(ul, (1, 0), (0, 1)).value == (0, 0)
    assert whitehead(ul, (1, 0), (1, 0)).value == (0, 0)


def test_whitehead_s2():
    ul = ULTruncation(homotopy_lie_algebra(sphere(2)), 4)
    w = whitehead(ul, (1, 0), (1, 0))
    assert w.case == 1 and w.value == (0, -2)


def test_whitehead_heisenberg_matches_matrix_commutator():
    w = whitehead(HEIS, (1, 0, 0), (0, 1, 0))
    X, Y = mexp(heis_matrix((1, 0, 0))), mexp(heis_matrix((0, 1, 0)))
    Xi, Yi = mexp(heis_matrix((-1, 0, 0))), mexp(heis_matrix((0, -1, 0)))
    assert w.case == 3
    assert w.value == from_heis_matrix(mlog(X @ Y @ Xi @ Yi)) == (0, 0, 1)


def test_whitehead_case1_symmetry():
    L = homotopy_lie_algebra(mixed_algebra())
    ul = ULTruncation(L, 5)
    pos = [i for i, d in enumerate(L.degrees) if d >= 1]
    for i in pos:
        for j in pos:
            x, y = L.unit(i), L.unit(j)
            dx, dy = L.degrees[i], L.degrees[j]
            s = -(-1) ** (dx + dy + dx * dy)
            assert whitehead(ul, y, x).value == tuple(s * c for c in whitehead(ul, x, y).value)


def test_whitehead_case2_is_conjugation():
    L = homotopy_lie_algebra(mixed_algebra())
    ul = ULTruncation(L, 6)
    x = tuple(F(1) if d == 0 and i == 0 else F(0) for i, d in enumerate(L.degrees))
    for j, d in enumerate(L.degrees):
        if d < 1:
            continue
        y = L.unit(j)
        w = whitehead(ul, x, y)
        assert w.case == 2
        conj = ul.mul(ul.mul(ul.exp(x), ul.from_lie(y)), ul.exp(tuple(-c for c in x)))
        assert w.value == tuple(a - b for a, b in zip(ul.to_lie(conj), y))
    assert any(whitehead(ul, x, L.unit(j)).value != L.zero() for j, d in enumerate(L.degrees) if d >= 1)


def test_whitehead_reverse_mixed_case_unimplemented():
    L = homotopy_lie_algebra(mixed_algebra())
    ul = ULTruncation(L, 4)
    j = L.degrees.index(1)
    with pytest.raises(NotImplementedError):
        whitehead(ul, L.unit(j), L.unit(0))


def test_whitehead_case3_leading_term():
    ul = ULTruncation(free_nilpotent_lie([0, 0], 2), 3)
    rng = random.Random(5)
    for _ in range(5):
        x, y = rand_vec(rng, 3), rand_vec(rng, 3)
        assert whitehead(ul, x, y).value == ul.lie.bracket(x, y)


@pytest.mark.parametrize("alg", [mixed_algebra(), heisenberg(), sphere(2)])
def test_results_depend_only_on_quadratic_part(alg):
    L, Lq = homotopy_lie_algebra(alg), homotopy_lie_algebra(quadratic_algebra(alg))
    assert L.same_structure(Lq)
    ul, ulq = ULTruncation(L, 5), ULTruncation(Lq, 5)
    for i in range(L.dim):
        for j in range(L.dim):
            try:
                a = whitehead(ul, L.unit(i), L.unit(j)).value
            except NotImplementedError:
                continue
            assert a == whitehead(ulq, Lq.unit(i), Lq.unit(j)).value
    zero = [i for i, d in enumerate(L.degrees) if d == 0]
    if len(zero) >= 2:
        x, y = L.unit(zero[0]), L.unit(zero[1])
        assert group_mul(group_element(ul, x), group_element(ul, y)).log_coords == \
            group_mul(group_element(ulq, x), group_element(ulq, y)).log_coords


# group lower central series -----------------------------------------------------------

def test_group_lcs_examples():
    ab = ULTruncation(GradedLieAlgebra([("a", 0), ("b", 0)]), 3)
    assert group_lcs(ab, 2).terms[1].dim == 0
    G = group_lcs(HEIS)
    assert list(G.terms[1].basis) == [(0, 0, 1)] and G.terms[2].dim == 0
    assert lazard_check(HEIS).ok
    ul4 = ULTruncation(free_nilpotent_lie([0, 0], 4), 5)
    assert group_lcs(ul4).quotient_dims()[:4] == [2, 1, 2, 3]
    assert lazard_check(ul4).ok


def test_group_commutator_in_lcs():
    G = group_lcs(FREE5)
    rng = random.Random(2)
    g = group_element(FREE5, rand_vec(rng, FREE5.lie.dim))
    h = group_element(FREE5, rand_vec(rng, FREE5.lie.dim))
    assert group_commutator(g, h).log_coords in G.terms[1]


# series action ----------------------------------------------------------------------

def test_series_examples():
    g = SeriesElement.of([1, 2, 3], 6)
    assert series_action(0, g) == g
    out = series_action(1, SeriesElement.of([1], 10))
    assert list(out.coeffs) == [F(1, __import__("math").factorial(n)) for n in range(11)]


@given(st.fractions(-3, 3, max_denominator=4), st.fractions(-3, 3, max_denominator=4),
       st.lists(st.integers(-5, 5), min_size=1, max_size=6))
def test_series_group_action(a, b, coeffs):
    g = SeriesElement.of(coeffs, 8)
    assert series_action(a + b, g) == series_action(a, series_action(b, g))
    h = SeriesElement.of(list(reversed(coeffs)), 8)
    assert series_action(a, g + h.scale(3)) == series_action(a, g) + series_action(a, h).scale(3)


def test_series_from_group_element():
    alg = s1_wedge_s3(3)
    L = homotopy_lie_algebra(alg)
    ul = ULTruncation(L, 3)
    alpha = group_element(ul, tuple(F(2) if d == 0 else F(0) for d in L.degrees))
    assert series_action(alpha, SeriesElement.of([1], 5)) == exp_series(2, 5)


# homotopy of morphisms -----------------------------------------------------------------

def test_pi_of_identity():
    h = heisenberg()
    phi = SullivanMorphism(h, h, {n: h.gen(n) for n in h.names})
    assert pi_of_morphism(phi) == RatMatrix.identity(3)


def test_pi_of_inclusion_is_surjective():
    alg = s1_wedge_s3(3)
    sub_ids = [alg.space.index(n) for n in ("v", "y0", "y1")]
    sub = alg.generator_subset_algebra(sub_ids)
    phi = SullivanMorphism(sub, alg, {n: alg.gen(n) for n in sub.names})
    M = pi_of_morphism(phi)
    assert M.shape == (3, 5) and rank(M) == 3


def test_pi_of_automorphism_is_invertible():
    h = heisenberg()
    phi = SullivanMorphism(h, h, {"v1": h.gen("v2"), "v2": -h.gen("v1"), "v3": h.gen("v3")})
    assert rank(pi_of_morphism(phi)) == 3
