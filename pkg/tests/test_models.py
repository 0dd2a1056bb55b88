from __future__ import annotations

import pytest

from rhtkit.models import (CdgaError, CdgaMorphism, CdgaPresentation, builtin, free_group_stage, heisenberg,
                           minimal_model, s1_wedge_s3, sphere, verify_quasi_iso, wedge_spheres)
from rhtkit.sullivan import SullivanAlgebra, cohomology, cohomology_dims, is_minimal, validate


def degree_counts(alg):
    out = {}
    for d in alg.space.degrees():
        out[d] = out.get(d, 0) + 1
    return out


def test_trivial_model():
    M, wit = minimal_model(CdgaPresentation.trivial(), 6)
    assert len(M.space) == 0 and wit.ok


def test_s2_model():
    M, wit = minimal_model(CdgaPresentation.sphere_cohomology(2), 12)
    assert degree_counts(M) == {2: 1, 3: 1}
    assert wit.ok and wit.verified_to == 12
    assert cohomology_dims(M, 8) == [1, 0, 1, 0, 0, 0, 0, 0, 0]
    assert is_minimal(M)


def test_cp2_model():
    M, wit = minimal_model(CdgaPresentation.truncated_polynomial(2, 3), 12)
    assert degree_counts(M) == {2: 1, 5: 1}
    assert wit.ok
    y = M.space.ids_of_degree(5)[0]
    x = M.space.ids_of_degree(2)[0]
    img = M.d.on_generator(y)
    assert list(img.terms) == [(x, x, x)]


def test_formal_idempotence():
    # the model of H(S^4) has generators in degrees 4 and 7
    M, wit = minimal_model(CdgaPresentation.sphere_cohomology(4), 12)
    assert degree_counts(M) == degree_counts(sphere(4)) == {4: 1, 7: 1}
    assert wit.ok


def test_dropping_relation_breaks_quasi_iso():
    A = CdgaPresentation.sphere_cohomology(2)
    wrong = SullivanAlgebra.from_terms([("x", 2), ("y", 3)])
    phi = CdgaMorphism(wrong, A, {0: A.basis_vec(1)})
    wit = verify_quasi_iso(phi, 6)
    assert not wit.ok
    assert wit.first_failure() == 3


def test_model_of_s2_is_iso_to_builtin():
    A = CdgaPresentation.sphere_cohomology(2)
    phi = CdgaMorphism(sphere(2), A, {0: A.basis_vec(1)})
    assert verify_quasi_iso(phi, 10).ok


def test_rejects_non_simply_connected():
    with pytest.raises(CdgaError):
        minimal_model(CdgaPresentation.sphere_cohomology(1), 6)


def test_presentation_checks():
    with pytest.raises(CdgaError):
        # e*e = 1 breaks degrees
        CdgaPresentation([("1", 0), ("e", 2)], {(1, 1): {0: 1}})
    with pytest.raises(CdgaError):
        # odd element with nonzero square is not graded commutative
        CdgaPresentation([("1", 0), ("a", 1), ("b", 2)], {(1, 1): {2: 1}})


def test_wedge_spheres_low_degrees():
    alg = wedge_spheres(2, 2, 6)
    counts = degree_counts(alg)
    assert counts[2] == 2 and counts[3] == 3
    A = CdgaPresentation.wedge_of_spheres_cohomology(2, 2)
    assert [cohomology(alg, n).dimension for n in range(6)] == [A.cohomology_dim(n) for n in range(6)]


@pytest.mark.parametrize("fam,params", [("sphere", (2,)), ("sphere", (3,)), ("s1_wedge_s3", (2,)),
                                        ("heisenberg", ()), ("wedge_spheres", (2, 2, 5)),
                                        ("free_group_stage", (2, 3))])
def test_builtins_valid_minimal(fam, params):
    alg = builtin(fam, *params)
    assert validate(alg).ok
    assert is_minimal(alg)


def test_builtin_examples():
    assert len(sphere(3).space) == 1 and sphere(3).d.is_zero()
    assert len(s1_wedge_s3(2).space) == 4
    assert cohomology(heisenberg(), 1).dimension == 2
    assert len(free_group_stage(2, 3).space) == 3
    with pytest.raises(KeyError):
        builtin("torus", 2)
