"""Shared fixtures and random generators for the test suite."""
from __future__ import annotations

import random
from fractions import Fraction

from rhtkit.gca import Derivation, Element, monomial_basis
from rhtkit.lie import lie_from_matrices
from rhtkit.models import free_group_stage, heisenberg, s1_wedge_s3, sphere
from rhtkit.ratlin import RatMatrix
from rhtkit.sullivan import SullivanAlgebra


def random_nilpotent_lie(rng: random.Random, max_dim: int = 6):
    """Graded Lie algebra spanned by strictly upper-triangular graded matrices.

    The underlying vector space has a non-increasing grading; a degree-p matrix
    only has entries at (i, j), i < j, with g_i - g_j = p.
    """
    while True:
        n = rng.randint(3, 5)
        grading = sorted((rng.randint(0, 3) for _ in range(n)), reverse=True)
        mats = []
        for _ in range(rng.randint(2, 3)):
            p = rng.choice([0, 1, 2])
            rows = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    if grading[i] - grading[j] == p and rng.random() < 0.6:
                        rows[i][j] = rng.randint(-2, 2)
            m = RatMatrix(rows, n)
            if not m.is_zero():
                mats.append((m, p))
        if not mats:
            continue
        L = lie_from_matrices(mats, max_dim=max_dim)
        if L is not None and L.dim >= 2 and L.structure_constants():
            return L


def minimal_fixtures() -> dict[str, SullivanAlgebra]:
    cp3 = SullivanAlgebra.from_terms([("x", 2), ("y", 7)], {"y": [(1, ("x", "x", "x", "x"))]})
    # quadratic plus cubic terms: db = x^3 + a c
    mixed = SullivanAlgebra.from_terms([("x", 2), ("a", 3), ("c", 3), ("b", 5)],
                                       {"b": [(1, ("x", "x", "x")), (1, ("a", "c"))]})
    return {
        "sphere2": sphere(2),
        "sphere3": sphere(3),
        "heisenberg": heisenberg(),
        "s1_wedge_s3": s1_wedge_s3(4),
        "free_2_3": free_group_stage(2, 3),
        "free_2_4": free_group_stage(2, 4),
        "cp3": cp3,
        "mixed": mixed,
    }


def corrupt(alg: SullivanAlgebra, rng: random.Random, tries: int = 200):
    """Perturb the quadratic part by a random degree-correct quadratic term
    until ``d1^2 != 0``; returns the corrupted derivation or None."""
    sp = alg.space
    for _ in range(tries):
        k = rng.randrange(len(sp))
        quad = [m for m in monomial_basis(sp, sp.degree(k) + 1) if len(m) == 2]
        if not quad:
            continue
        m = rng.choice(quad)
        c = Fraction(rng.choice([-2, -1, 1, 2]))
        vals = {i: alg.d.on_generator(i) for i in range(len(sp))}
        vals[k] = vals[k] + Element(sp, sp.degree(k) + 1, {m: c})
        d1 = Derivation(sp, 1, {i: v.wedge_component(2) for i, v in vals.items()})
        if any(d1(d1.on_generator(i)).terms for i in range(len(sp))):
            return d1
    return None
