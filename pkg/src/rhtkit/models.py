"""Minimal Sullivan models of finite-dimensional cdgas, and builtin algebras.

A :class:`CdgaPresentation` is a finite-dimensional cdga given by a basis,
a multiplication table and a differential, all in basis coordinates.
:func:`minimal_model` builds a minimal Sullivan algebra with a
quasi-isomorphism into it, one degree at a time, for simply connected input.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .gca import Derivation, Element, GradedSpace
from .ratlin import RatMatrix, Subspace, kernel, quotient_basis, solve
from .sullivan import SullivanAlgebra, cohomology

Vec = tuple  # coordinates in a CdgaPresentation basis


class CdgaError(ValueError):
    pass


class CdgaPresentation:
    """Finite-dimensional cdga ``A`` in basis coordinates.

    ``mult`` maps ordered index pairs to coordinate dicts ``{k: coeff}``;
    pairs involving the unit may be omitted.  ``diff`` maps basis indices to
    coordinate dicts; missing entries mean ``d = 0``.
    """

    def __init__(self, basis: Sequence[tuple[str, int]], mult: Mapping[tuple[int, int], Mapping[int, object]],
                 diff: Mapping[int, Mapping[int, object]] | None = None, unit: int = 0, check: bool = True):
        self.names = [str(b[0]) for b in basis]
        self.degrees = [int(b[1]) for b in basis]
        self.unit = unit
        n = len(self.names)
        if not 0 <= unit < n or self.degrees[unit] != 0:
            raise CdgaError("the unit must be a degree-0 basis element")
        self._mult: dict[tuple[int, int], Vec] = {}
        for (i, j), coords in mult.items():
            self._mult[(i, j)] = self._vec(coords)
        self._diff: dict[int, Vec] = {i: self._vec(c) for i, c in (diff or {}).items()}
        for i, v in self._diff.items():
            self._check_homogeneous(v, self.degrees[i] + 1, f"d({self.names[i]})")
        for (i, j), v in self._mult.items():
            self._check_homogeneous(v, self.degrees[i] + self.degrees[j], f"{self.names[i]}*{self.names[j]}")
        if check:
            self.validate()

    def _vec(self, coords: Mapping[int, object]) -> Vec:
        v = [Fraction(0)] * len(self.names)
        for k, c in coords.items():
            v[k] += Fraction(c)
        return tuple(v)

    def _check_homogeneous(self, v: Vec, deg: int, what: str) -> None:
        for k, c in enumerate(v):
            if c and self.degrees[k] != deg:
                raise CdgaError(f"{what} is not homogeneous of degree {deg}")

    # constructors -------------------------------------------------------
    @classmethod
    def trivial(cls) -> "CdgaPresentation":
        return cls([("1", 0)], {})

    @classmethod
    def truncated_polynomial(cls, degree: int, height: int, name: str = "c") -> "CdgaPresentation":
        """``Q[c]/(c^height)`` with ``c`` of even degree ``degree``, d = 0."""
        if degree % 2 or degree <= 0:
            raise CdgaError("truncated polynomial generator must have positive even degree")
        basis = [("1", 0)] + [(f"{name}^{k}" if k > 1 else name, k * degree) for k in range(1, height)]
        mult = {}
        for i in range(1, height):
            for j in range(1, height):
                if i + j < height:
                    mult[(i, j)] = {i + j: 1}
        return cls(basis, mult)

    @classmethod
    def sphere_cohomology(cls, n: int, name: str = "e") -> "CdgaPresentation":
        return cls([("1", 0), (name, n)], {})

    @classmethod
    def wedge_of_spheres_cohomology(cls, n: int, k: int) -> "CdgaPresentation":
        """``H(S^n v ... v S^n)``: unit plus k classes of degree n, all products zero."""
        return cls([("1", 0)] + [(f"e{i + 1}", n) for i in range(k)], {})

    # algebra ------------------------------------------------------------
    def __len__(self) -> int:
        return len(self.names)

    def basis_of_degree(self, n: int) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == n]

    def max_degree(self) -> int:
        return max(self.degrees)

    def zero(self) -> Vec:
        return tuple([Fraction(0)] * len(self.names))

    def unit_vec(self) -> Vec:
        return self._vec({self.unit: 1})

    def basis_vec(self, i: int) -> Vec:
        return self._vec({i: 1})

    def product_of_basis(self, i: int, j: int) -> Vec:
        if i == self.unit:
            return self.basis_vec(j)
        if j == self.unit:
            return self.basis_vec(i)
        return self._mult.get((i, j), self.zero())

    def mul(self, a: Vec, b: Vec) -> Vec:
        out = [Fraction(0)] * len(self.names)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                for k, c in enumerate(self.product_of_basis(i, j)):
                    if c:
                        out[k] += x * y * c
        return tuple(out)

    def d(self, a: Vec) -> Vec:
        out = [Fraction(0)] * len(self.names)
        for i, x in enumerate(a):
            if x and i in self._diff:
                for k, c in enumerate(self._diff[i]):
                    if c:
                        out[k] += x * c
        return tuple(out)

    def degree_of(self, a: Vec) -> int | None:
        degs = {self.degrees[i] for i, x in enumerate(a) if x}
        if len(degs) > 1:
            raise CdgaError("inhomogeneous element")
        return degs.pop() if degs else None

    def format(self, a: Vec) -> str:
        parts = []
        for i, x in enumerate(a):
            if x:
                parts.append(f"{x}*{self.names[i]}" if x != 1 else self.names[i])
        return " + ".join(parts) or "0"

    # checks -------------------------------------------------------------
    def validate(self) -> None:
        n = len(self.names)
        idx = range(n)
        for i in idx:
            for j in idx:
                ab = self.product_of_basis(i, j)
                ba = self.product_of_basis(j, i)
                sign = -1 if self.degrees[i] * self.degrees[j] % 2 else 1
                if ab != tuple(sign * c for c in ba):
                    raise CdgaError(f"not graded commutative on ({self.names[i]}, {self.names[j]})")
        for i in idx:
            for j in idx:
                ij = self.product_of_basis(i, j)
                for k in idx:
                    if self.mul(ij, self.basis_vec(k)) != self.mul(self.basis_vec(i), self.product_of_basis(j, k)):
                        raise CdgaError(
                            f"not associative on ({self.names[i]}, {self.names[j]}, {self.names[k]})")
        if any(self.d(self.d(self.basis_vec(i))) != self.zero() for i in idx):
            raise CdgaError("d^2 != 0")
        for i in idx:
            for j in idx:
                a, b = self.basis_vec(i), self.basis_vec(j)
                sign = -1 if self.degrees[i] % 2 else 1
                lhs = self.d(self.mul(a, b))
                rhs = [x + sign * y for x, y in zip(self.mul(self.d(a), b), self.mul(a, self.d(b)))]
                if lhs != tuple(rhs):
                    raise CdgaError(f"d is not a derivation on ({self.names[i]}, {self.names[j]})")
        if self.cohomology_dim(0) != 1:
            raise CdgaError("H^0 must be one-dimensional")

    # cohomology ---------------------------------------------------------
    def d_matrix(self, n: int) -> RatMatrix:
        """Matrix of d: A^n -> A^{n+1} in the basis restricted to those degrees."""
        src = self.basis_of_degree(n)
        tgt = self.basis_of_degree(n + 1)
        cols = [[self._diff.get(i, self.zero())[k] for k in tgt] for i in src]
        return RatMatrix.from_columns(cols, len(tgt)) if src else RatMatrix.zeros(len(tgt), 0)

    def cohomology(self, n: int) -> tuple[list[Vec], list[Vec]]:
        """Cocycle representatives of a basis of H^n and a spanning set of boundaries (full coordinates)."""
        src = self.basis_of_degree(n)
        z = kernel(self.d_matrix(n)) if src else Subspace.zero(0)
        prev = self.d_matrix(n - 1) if n >= 1 else RatMatrix.zeros(len(src), 0)
        b = Subspace(len(src), [prev.column(j) for j in range(prev.ncols)])
        reps = quotient_basis(z, b)

        def full(v):
            out = [Fraction(0)] * len(self.names)
            for k, c in zip(src, v):
                out[k] = c
            return tuple(out)

        return [full(r) for r in reps], [full(v) for v in b.basis]

    def cohomology_dim(self, n: int) -> int:
        return len(self.cohomology(n)[0])


class CdgaMorphism:
    """A cdga map from a Sullivan algebra into a :class:`CdgaPresentation`."""

    def __init__(self, source: SullivanAlgebra, target: CdgaPresentation, values: Mapping[int, Vec], check: bool = True):
        self.source = source
        self.target = target
        self.values = {i: tuple(Fraction(c) for c in v) for i, v in values.items()}
        for i, v in self.values.items():
            deg = target.degree_of(v)
            if deg is not None and deg != source.space.degree(i):
                raise CdgaError(f"value on {source.space.generators[i].name} has the wrong degree")
        if check:
            for i in range(len(source.space)):
                lhs = self(source.d.on_generator(i))
                rhs = target.d(self.values.get(i, target.zero()))
                if lhs != rhs:
                    raise CdgaError(f"morphism does not commute with d on {source.space.generators[i].name}")

    def __call__(self, e: Element) -> Vec:
        A = self.target
        out = A.zero()
        for m, c in e.terms.items():
            term = A.unit_vec()
            for g in m:
                term = A.mul(term, self.values.get(g, A.zero()))
            out = tuple(x + c * y for x, y in zip(out, term))
        return out


@dataclass
class QuasiIsoWitness:
    morphism: CdgaMorphism
    verified_to: int
    per_degree: list[tuple[int, int, int, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(row[3] for row in self.per_degree)

    def first_failure(self) -> int | None:
        return next((row[0] for row in self.per_degree if not row[3]), None)


def _induced_rank(phi: CdgaMorphism, n: int) -> tuple[int, int, int]:
    src = cohomology(phi.source, n)
    reps, bounds = phi.target.cohomology(n)
    images = [phi(r) for r in src.representatives]
    # rank of the composite H^n(source) -> A^n -> A^n / boundaries
    ambient = len(phi.target)
    b = Subspace(ambient, bounds)
    with_images = Subspace(ambient, list(bounds) + images)
    return src.dimension, len(reps), with_images.dim - b.dim


def verify_quasi_iso(phi: CdgaMorphism, N: int) -> QuasiIsoWitness:
    """Compare H^n(source) and H^n(target) through the induced map for n <= N."""
    rows = []
    for n in range(N + 1):
        ds, dt, r = _induced_rank(phi, n)
        rows.append((n, ds, dt, ds == dt == r))
    return QuasiIsoWitness(phi, N, rows)


def minimal_model(A: CdgaPresentation, N: int) -> tuple[SullivanAlgebra, QuasiIsoWitness]:
    """Minimal Sullivan model of a simply connected ``A``, complete through degree N.

    At degree n: first add closed generators mapping onto a complement of the
    image of H^n, then add degree-n generators killing the kernel of H^{n+1}.
    New generators are named ``v<degree>_<counter>``.
    """
    if A.cohomology_dim(0) != 1:
        raise CdgaError("H^0(A) must be one-dimensional")
    if A.cohomology_dim(1) != 0:
        raise CdgaError("only simply connected algebras are supported (H^1(A) != 0)")
    gens: list[tuple[str, int]] = []
    dvals: dict[int, list] = {}   # generator -> list of (monomial in current ids, coeff)
    phi_vals: dict[int, Vec] = {}
    counters: dict[int, int] = {}

    def current() -> tuple[SullivanAlgebra, CdgaMorphism]:
        space = GradedSpace(gens)
        vals = {i: Element(space, space.degree(i) + 1, dict(t)) for i, t in dvals.items()}
        alg = SullivanAlgebra(space, Derivation(space, 1, vals), check=False)
        return alg, CdgaMorphism(alg, A, phi_vals, check=False)

    def new_name(deg: int) -> str:
        counters[deg] = counters.get(deg, 0) + 1
        return f"v{deg}_{counters[deg]}"

    for n in range(2, N + 1):
        alg, phi = current()
        # (a) hit the cokernel of H^n(phi)
        src = cohomology(alg, n)
        reps_A, bounds_A = A.cohomology(n)
        acc = Subspace(len(A), list(bounds_A) + [phi(r) for r in src.representatives])
        for r in reps_A:
            if r not in acc:
                gens.append((new_name(n), n))
                phi_vals[len(gens) - 1] = r
                acc = acc + Subspace(len(A), [r])
        # (b) kill the kernel of H^{n+1}(phi)
        alg, phi = current()
        top = cohomology(alg, n + 1)
        dA = A.d_matrix(n)
        src_n = A.basis_of_degree(n)
        tgt_n1 = A.basis_of_degree(n + 1)
        # kernel of span(reps) -> A^{n+1}/dA^n
        cols = [[phi(r)[k] for k in tgt_n1] for r in top.representatives]
        cols += [[-x for x in dA.column(j)] for j in range(dA.ncols)]
        if cols:
            K = kernel(RatMatrix.from_columns(cols, len(tgt_n1)))
            m = len(top.representatives)
            coeff_space = Subspace(m, [k[:m] for k in K.basis])
            for kv in coeff_space.basis:
                z = Element.zero(alg.space, n + 1)
                for c, r in zip(kv, top.representatives):
                    if c:
                        z = z + r.scale(c)
                target = [phi(z)[k] for k in tgt_n1]
                b = solve(dA, target)
                if b is None:
                    raise CdgaError("internal fault: kernel class is not exact in A")
                gens.append((new_name(n), n))
                g = len(gens) - 1
                dvals[g] = list(z.terms.items())
                full = [Fraction(0)] * len(A)
                for k, c in zip(src_n, b):
                    full[k] = c
                phi_vals[g] = tuple(full)
    space = GradedSpace(gens)
    vals = {i: Element(space, space.degree(i) + 1, dict(t)) for i, t in dvals.items()}
    alg = SullivanAlgebra(space, Derivation(space, 1, vals), cutoff=N + 1, name="minimal_model")
    phi = CdgaMorphism(alg, A, phi_vals)
    return alg, verify_quasi_iso(phi, N)


# builtin families ------------------------------------------------------

def sphere(n: int) -> SullivanAlgebra:
    if n < 1:
        raise ValueError("sphere dimension must be >= 1")
    if n % 2:
        return SullivanAlgebra.from_terms([("x", n)], name=f"sphere({n})")
    return SullivanAlgebra.from_terms([("x", n), ("y", 2 * n - 1)], {"y": [(1, ("x", "x"))]}, name=f"sphere({n})")


def s1_wedge_s3(N: int) -> SullivanAlgebra:
    """Stage N of the model of S^1 v S^3: v in degree 1, y_0..y_N in degree 3, dy_n = y_{n-1} v."""
    if N < 0:
        raise ValueError("N must be >= 0")
    gens = [("v", 1)] + [(f"y{k}", 3) for k in range(N + 1)]
    diffs = {f"y{k}": [(1, (f"y{k - 1}", "v"))] for k in range(1, N + 1)}
    return SullivanAlgebra.from_terms(gens, diffs, name=f"s1_wedge_s3({N})")


def heisenberg() -> SullivanAlgebra:
    return SullivanAlgebra.from_terms([("v1", 1), ("v2", 1), ("v3", 1)], {"v3": [(1, ("v1", "v2"))]},
                                      name="heisenberg")


def wedge_spheres(n: int, k: int, N: int) -> SullivanAlgebra:
    """Minimal model, complete through degree N, of a wedge of k copies of S^n (n >= 2)."""
    if n < 2:
        raise ValueError("wedge_spheres needs n >= 2 (simply connected)")
    alg, wit = minimal_model(CdgaPresentation.wedge_of_spheres_cohomology(n, k), N)
    if not wit.ok:
        raise CdgaError("internal fault: model is not a quasi-isomorphism")
    alg.name = f"wedge_spheres({n},{k},{N})"
    return alg


def free_group_stage(g: int, c: int) -> SullivanAlgebra:
    """Quadratic algebra dual to the free Lie algebra on g degree-0 generators modulo its c-th LCS term."""
    from .lie import cce_dual, free_nilpotent_lie

    alg = cce_dual(free_nilpotent_lie([0] * g, c - 1))
    alg.name = f"free_group_stage({g},{c})"
    return alg


BUILTINS = {
    "sphere": (sphere, 1),
    "s1_wedge_s3": (s1_wedge_s3, 1),
    "heisenberg": (heisenberg, 0),
    "wedge_spheres": (wedge_spheres, 3),
    "free_group_stage": (free_group_stage, 2),
}


def builtin(family: str, *params: int) -> SullivanAlgebra:
    try:
        fn, arity = BUILTINS[family]
    except KeyError:
        raise KeyError(f"unknown builtin family {family!r}; known: {', '.join(sorted(BUILTINS))}") from None
    if len(params) != arity:
        raise ValueError(f"{family} takes {arity} parameter(s), got {len(params)}")
    return fn(*params)
