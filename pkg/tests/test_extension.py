from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest

from rhtkit.extension import (ExtensionError, LambdaExtension, acyclic_closure, dual_exponential_action,
                              holonomy_residual_ok, eq16_check, holonomy, make_extension, split_extension,
                              ul_dual_check)
from rhtkit.gca import Element, GradedSpace, apply_derivation, monomial_basis
from rhtkit.group import SeriesElement, series_action
from rhtkit.lie import homotopy_lie_algebra
from rhtkit.models import heisenberg, s1_wedge_s3, sphere
from rhtkit.sullivan import SullivanAlgebra, cohomology


def d_of(ext, name):
    return ext.d.on_generator(ext.space.index(name))


def terms_by_name(e):
    sp = e.space
    return {tuple(sp.generators[g].name for g in m): c for m, c in e.terms.items()}


def test_trivial_and_product_extensions():
    base = SullivanAlgebra.from_terms([("v", 1)])
    ext = make_extension(base, [])
    assert len(ext.space) == 1
    prod = make_extension(base, [("z", 1)])
    assert prod.is_product() and prod.dbar.is_zero()
    hol = holonomy(prod)
    assert all(th.is_zero() for th in hol.theta.values())
    assert eq16_check(prod).ok


def test_s1_wedge_s3_as_extension():
    ext = split_extension(s1_wedge_s3(4), ["v"])
    assert ext.dbar.is_zero()
    hol = holonomy(ext)
    th = hol.theta[0]
    # dy_n = y_{n-1} v = -v y_{n-1}
    for n in range(1, 5):
        assert terms_by_name(th.on_generator(n)) == {(f"y{n - 1}",): -1}
    # thetabar = -theta acts on H^3 = <y_0..y_4> as the downshift y_n -> y_{n-1}
    M = hol.action_matrix(0, 3)
    assert M.tolist() == [[0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1], [0] * 5]


def test_dual_exponential_matches_series_action():
    N = 10
    ext = split_extension(s1_wedge_s3(N), ["v"])
    hol = holonomy(ext)
    for c in (Fraction(1), Fraction(-2, 3)):
        E = dual_exponential_action(hol, 0, 3, c)
        g = [Fraction(1)] + [Fraction(0)] * N
        image = E @ tuple(g)
        assert list(image) == list(series_action(c, SeriesElement.of([1], N)).coeffs)
    assert list(E @ tuple([1] + [0] * N))[:3] == [1, Fraction(-2, 3), Fraction(4, 18)]
    assert [Fraction(1, factorial(n)) for n in range(3)] == [1, 1, Fraction(1, 2)]


def test_heisenberg_holonomy():
    ext = split_extension(heisenberg(), ["v1"])
    hol = holonomy(ext)
    assert terms_by_name(hol.theta[0].on_generator(ext.fiber.index("v3"))) == {("v2",): 1}
    assert holonomy_residual_ok(ext, hol, 3)


def test_staging_failure():
    base = SullivanAlgebra.from_terms([("v", 1)])
    # dz = w, dw = z would need equal degrees; a loop through the fiber is enough
    with pytest.raises((ExtensionError, ValueError)):
        make_extension(base, [("z", 1), ("w", 1)], {"z": [(1, ("w", "z"))], "w": [(1, ("z", "w"))]})


def test_closure_of_circle():
    c = acyclic_closure(sphere(1), 6)
    ext = c.extension
    assert ext.fiber.degrees() == [0]
    assert terms_by_name(d_of(ext, "u_x")) == {("x",): 1}


def test_closure_of_s2():
    c = acyclic_closure(sphere(2), 8)
    ext = c.extension
    assert ext.fiber.degrees() == [1, 2]
    assert terms_by_name(d_of(ext, "u_x")) == {("x",): 1}
    dy = terms_by_name(d_of(ext, "u_y"))
    assert dy[("y",)] == 1 and len(dy) == 2
    for k in range(1, 9):
        assert cohomology(ext.total, k).dimension == 0


def test_closure_of_odd_sphere():
    c = acyclic_closure(sphere(3), 8)
    ext = c.extension
    assert ext.fiber.degrees() == [2]
    assert terms_by_name(d_of(ext, "u_x")) == {("x",): 1}


@pytest.mark.parametrize("base", [sphere(1), sphere(2), sphere(3), heisenberg()], ids=["s1", "s2", "s3", "heis"])
def test_closure_quotient_differential_vanishes(base):
    ext = acyclic_closure(base, 4).extension
    assert ext.dbar.is_zero()
    assert holonomy_residual_ok(ext, holonomy(ext, 3), 2, 3)


@pytest.fixture(scope="module")
def heis_closure():
    ext = acyclic_closure(heisenberg(), 4).extension
    return ext, holonomy(ext, 4)


def test_closure_holonomy_locally_nilpotent(heis_closure):
    ext, hol = heis_closure
    for th in hol.theta.values():
        for m in monomial_basis(ext.fiber, 0, 3):
            e = Element(ext.fiber, 0, {m: 1})
            for _ in range(8):
                e = apply_derivation(th, e)
            assert e.is_zero()


def test_holonomy_is_a_representation(heis_closure):
    ext, hol = heis_closure
    L = homotopy_lie_algebra(heisenberg())
    # all of wedge U sits in degree 0 here
    A, B, C = (hol.lie_action(L, L.unit(i), 0) for i in range(3))
    assert A @ B - B @ A == C
    assert not C.is_zero()
    assert len(hol.cohomology(1)[0]) == 0


@pytest.mark.parametrize("base,N", [(sphere(1), 8), (sphere(3), 8), (sphere(2), 8)], ids=["s1", "s3", "s2"])
def test_ul_duality(base, N):
    rep = ul_dual_check(base, N, N + 1)
    assert rep.ok
    counts = [row[1] for row in rep.per_degree]
    if base.space.degrees() == [2, 3]:
        assert counts == [1] * (N + 1)
    if base.space.degrees() == [3]:
        assert counts == [1 if k % 2 == 0 else 0 for k in range(N + 1)]


def test_right_adjoint_identity_fixtures():
    for ext in (split_extension(heisenberg(), ["v1", "v2"]), split_extension(heisenberg(), ["v1"]),
                split_extension(s1_wedge_s3(6), ["v"])):
        rep = eq16_check(ext)
        assert rep.ok and rep.pairs_checked > 0


def test_right_adjoint_needs_minimal_total():
    base = SullivanAlgebra.from_terms([("v", 3)])
    ext = make_extension(base, [("u", 2)], {"u": [(1, ("v",))]})
    with pytest.raises(ExtensionError):
        eq16_check(ext)


def test_fiber_names_must_not_clash():
    base = SullivanAlgebra.from_terms([("v", 1)])
    with pytest.raises((ExtensionError, ValueError)):
        LambdaExtension.from_terms(base, [("v", 1)])
    assert GradedSpace([("a", 1)]).names == ["a"]
