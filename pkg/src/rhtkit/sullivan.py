"""Lambda-algebras and Sullivan algebras (free cdgas with a filtered differential).

An algebra is a :class:`GradedSpace` of generators plus a degree +1
:class:`Derivation`.  Construction validates eagerly: ``d**2 == 0`` on every
generator and the ascending filtration ``V(0) = ker d``,
``V(n+1) = d^{-1}(wedge V(n))`` has to exhaust the generators.

Truncation: ``cutoff=None`` means the generator list is the whole algebra.
Otherwise ``cutoff`` is the largest total degree through which the
presentation is known to be complete, and degree-sensitive queries refuse to
answer above ``cutoff - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .gca import (
    Derivation,
    Element,
    GradedSpace,
    Monomial,
    apply_derivation,
    linear_map_matrix,
    monomial_basis,
    substitute,
)
from .ratlin import RatMatrix, Subspace, kernel, quotient_basis, solve


class SullivanError(ValueError):
    """Raised when a presentation is not a valid Lambda/Sullivan algebra."""

    def __init__(self, message: str, witness: str | None = None):
        super().__init__(message)
        self.witness = witness


class TruncationError(ValueError):
    """A query needs generators beyond the algebra's cutoff."""


@dataclass(frozen=True)
class Filtration:
    """A chain of subspaces of a coordinate space, in the order computed."""

    terms: tuple[Subspace, ...]
    ascending: bool
    labels: tuple[str, ...] = ()

    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, n: int) -> Subspace:
        return self.terms[n]

    def stable(self) -> Subspace:
        return self.terms[-1]

    def term(self, n: int) -> Subspace:
        """The n-th term, continuing with the stable value past the end."""
        return self.terms[min(n, len(self.terms) - 1)]


@dataclass
class ValidationReport:
    ok: bool
    message: str = ""
    witness: str | None = None
    filtration: Filtration | None = None


@dataclass
class CohomologyReport:
    degree: int
    dimension: int
    representatives: list[Element] = field(default_factory=list)


@dataclass(frozen=True)
class StableSubspace:
    generator_subset: frozenset
    closed: bool = True

    def names(self, space: GradedSpace) -> list[str]:
        return [space.generators[i].name for i in sorted(self.generator_subset)]


def _square_zero_witness(space: GradedSpace, d: Derivation) -> str | None:
    for i in range(len(space)):
        dd = apply_derivation(d, d.on_generator(i))
        if dd.terms:
            return space.generators[i].name
    return None


def preimage_of_subalgebra(space: GradedSpace, d: Derivation, sub: Subspace) -> Subspace:
    """``{v in V : d v in wedge(sub)}`` for a homogeneous subspace ``sub`` of V.

    When ``sub`` is not spanned by generators, V is re-coordinatised by the
    echelon basis of ``sub`` plus complementary unit vectors and ``d v`` is
    rewritten in the new variables.
    """
    n = len(space)
    coordinate = all(sum(1 for a in b if a) == 1 for b in sub.basis)
    vectors: list[list[Fraction]] = []
    if coordinate:
        inside = set(sub.pivots)
        for deg in sorted(set(space.degrees())):
            ids = space.ids_of_degree(deg)
            bad_rows: dict[Monomial, dict[int, Fraction]] = {}
            for col, g in enumerate(ids):
                for m, c in d.on_generator(g).terms.items():
                    if any(f not in inside for f in m):
                        bad_rows.setdefault(m, {})[col] = c
            mat = RatMatrix([[row.get(c, Fraction(0)) for c in range(len(ids))] for row in bad_rows.values()],
                            len(ids))
            for k in kernel(mat).basis:
                v = [Fraction(0)] * n
                for col, g in enumerate(ids):
                    v[g] = k[col]
                vectors.append(v)
        return Subspace(n, vectors)

    comp = sub.complement_coordinates()
    new_gens = []
    for r, b in enumerate(sub.basis):
        deg = space.degree(sub.pivots[r])
        new_gens.append((f"_s{r}", deg))
    for k in comp:
        new_gens.append((f"_c{k}", space.degree(k)))
    new_space = GradedSpace(new_gens)
    n_s = sub.dim
    comp_pos = {k: n_s + t for t, k in enumerate(comp)}
    images: dict[int, Element] = {}
    for k in comp:
        images[k] = Element.gen(new_space, comp_pos[k])
    for r, (p, b) in enumerate(zip(sub.pivots, sub.basis)):
        e = Element.gen(new_space, r)
        for k in comp:
            if b[k]:
                e = e - Element.gen(new_space, comp_pos[k]).scale(b[k])
        images[p] = e
    for deg in sorted(set(space.degrees())):
        ids = space.ids_of_degree(deg)
        bad_rows = {}
        for col, g in enumerate(ids):
            img = substitute(d.on_generator(g), images, new_space)
            for m, c in img.terms.items():
                if any(f >= n_s for f in m):
                    bad_rows.setdefault(m, {})[col] = c
        mat = RatMatrix([[row.get(c, Fraction(0)) for c in range(len(ids))] for row in bad_rows.values()],
                        len(ids))
        for k in kernel(mat).basis:
            v = [Fraction(0)] * n
            for col, g in enumerate(ids):
                v[g] = k[col]
            vectors.append(v)
    return Subspace(n, vectors)


def ascending_preimage_filtration(space: GradedSpace, d: Derivation,
                                  start: Subspace | None = None) -> tuple[list[Subspace], bool]:
    """Iterate ``S -> d^{-1}(wedge S)`` from ``start`` (default: zero) to a fixed point.

    Returns the chain and whether it reached all of V.
    """
    n = len(space)
    current = start if start is not None else Subspace.zero(n)
    chain: list[Subspace] = []
    while True:
        nxt = preimage_of_subalgebra(space, d, current)
        if start is not None:
            nxt = nxt + start
        chain.append(nxt)
        if nxt == current or (chain and len(chain) > 1 and nxt == chain[-2]):
            break
        current = nxt
    # the final repeat is dropped so the chain is strictly increasing
    while len(chain) > 1 and chain[-1] == chain[-2]:
        chain.pop()
    return chain, chain[-1].dim == n


class LambdaAlgebra:
    """A free cdga ``(wedge V, d)`` satisfying the Sullivan condition."""

    min_generator_degree = 0

    def __init__(self, space: GradedSpace, d: Derivation | Mapping[int | str, Element] | None = None,
                 cutoff: int | None = None, name: str = "", check: bool = True):
        if not isinstance(d, Derivation):
            d = Derivation(space, 1, d or {})
        if d.space != space:
            raise SullivanError("differential is defined on a different generator space")
        if d.shift != 1:
            raise SullivanError(f"differential must have degree +1, got {d.shift}")
        for g in space:
            if g.degree < self.min_generator_degree:
                raise SullivanError(
                    f"generator {g.name} has degree {g.degree} < {self.min_generator_degree}", g.name)
        self.space = space
        self.d = d
        self.cutoff = cutoff
        self.name = name
        self._dmat: dict = {}
        self._filtration: Filtration | None = None
        if check:
            report = validate(self)
            if not report.ok:
                raise SullivanError(report.message, report.witness)

    # helpers -------------------------------------------------------------
    @classmethod
    def from_terms(cls, generators: Sequence[tuple[str, int]],
                   differentials: Mapping[str, Iterable[tuple]] | None = None, **kw):
        """Build from ``{name: [(coeff, (factor names...)), ...]}`` differentials."""
        space = GradedSpace(generators)
        vals = {}
        for name, terms in (differentials or {}).items():
            i = space.index(name)
            e = Element.zero(space, space.degree(i) + 1)
            for coeff, factors in terms:
                e = e + Element.monomial(space, [space.index(f) for f in factors], Fraction(coeff))
            vals[i] = e
        return cls(space, Derivation(space, 1, vals), **kw)

    def gen(self, name: str | int) -> Element:
        return Element.gen(self.space, name)

    def one(self) -> Element:
        return Element.one(self.space)

    @property
    def names(self) -> list[str]:
        return self.space.names

    def __len__(self) -> int:
        return len(self.space)

    def __repr__(self) -> str:
        lines = [f"{type(self).__name__}({self.name or ''}; cutoff={self.cutoff})"]
        for i, g in enumerate(self.space):
            lines.append(f"  d {g.name} = {self.d.on_generator(i)}   [deg {g.degree}]")
        return "\n".join(lines)

    def max_reliable_degree(self) -> int | None:
        return None if self.cutoff is None else self.cutoff - 1

    def check_degree(self, n: int) -> None:
        top = self.max_reliable_degree()
        if top is not None and n > top:
            raise TruncationError(
                f"degree {n} exceeds the reliable range (cutoff {self.cutoff} allows degrees <= {top})")

    def d_matrix(self, n: int, max_length: int | None = None) -> tuple[RatMatrix, list[Monomial], list[Monomial]]:
        """Matrix of d: (wedge V)^n -> (wedge V)^{n+1} with both monomial bases."""
        key = (n, max_length)
        hit = self._dmat.get(key)
        if hit is None:
            src = monomial_basis(self.space, n, max_length)
            tgt = monomial_basis(self.space, n + 1, None if max_length is None else max_length + 1)
            if max_length is not None:
                extra = set()
                for m in src:
                    extra.update(self.d._on_monomial(m).terms)
                tgt = tgt + sorted(extra.difference(tgt), key=lambda m: (len(m), m))
            mat, _ = linear_map_matrix(self.d, self.space, n, src, tgt)
            hit = (mat, src, tgt)
            self._dmat[key] = hit
        return hit

    def generator_subset_algebra(self, subset: Iterable[int], name: str = "") -> "LambdaAlgebra":
        """The sub-algebra on a d-stable set of generators."""
        subset = sorted(set(subset))
        sub_space = GradedSpace([self.space.generators[i] for i in subset])
        pos = {g: k for k, g in enumerate(subset)}
        vals = {}
        for g in subset:
            v = self.d.on_generator(g)
            terms = {}
            for m, c in v.terms.items():
                if any(f not in pos for f in m):
                    raise SullivanError("generator subset is not closed under d", self.space.generators[g].name)
                terms[tuple(pos[f] for f in m)] = c
            vals[pos[g]] = Element(sub_space, v.degree, terms)
        return type(self)(sub_space, Derivation(sub_space, 1, vals), cutoff=self.cutoff, name=name)


class SullivanAlgebra(LambdaAlgebra):
    """A Lambda-algebra with all generators in degree >= 1."""

    min_generator_degree = 1


def validate(alg: LambdaAlgebra) -> ValidationReport:
    """Check degree, ``d**2 = 0`` and the Sullivan condition; never raises."""
    if alg.d.shift != 1:
        return ValidationReport(False, f"differential has degree {alg.d.shift}, expected +1")
    w = _square_zero_witness(alg.space, alg.d)
    if w is not None:
        return ValidationReport(False, f"d^2 != 0 on generator {w}", w)
    chain, exhausted = ascending_preimage_filtration(alg.space, alg.d)
    filt = Filtration(tuple(chain), True, tuple(alg.space.names))
    if not exhausted:
        missing = [alg.space.generators[i].name for i in range(len(alg.space))
                   if not chain[-1].coordinates([int(i == j) for j in range(len(alg.space))])]
        w = missing[0] if missing else None
        return ValidationReport(False, f"Sullivan condition fails: {w} lies in no V(n)", w, filt)
    alg._filtration = filt
    return ValidationReport(True, "ok", None, filt)


def sullivan_filtration(alg: LambdaAlgebra) -> Filtration:
    """The ascending chain ``V(0) <= V(1) <= ...`` ending at V."""
    if alg._filtration is None:
        report = validate(alg)
        if not report.ok:
            raise SullivanError(report.message, report.witness)
    return alg._filtration


def is_minimal(alg: LambdaAlgebra) -> bool:
    return all(len(m) >= 2 for i in range(len(alg.space)) for m in alg.d.on_generator(i).terms)


def quadratic_part(alg: LambdaAlgebra) -> Derivation:
    """The derivation keeping only the wedge-degree-2 part of d on generators."""
    if not is_minimal(alg):
        raise SullivanError("quadratic part requires a minimal algebra")
    d1 = alg.d.restricted(lambda m: len(m) == 2)
    w = _square_zero_witness(alg.space, d1)
    if w is not None:
        raise SullivanError(f"internal inconsistency: d1^2 != 0 on {w}", w)
    return d1


def quadratic_algebra(alg: LambdaAlgebra) -> LambdaAlgebra:
    """``(wedge V, d1)`` as an algebra of the same type."""
    return type(alg)(alg.space, quadratic_part(alg), cutoff=alg.cutoff, name=(alg.name + "_quadratic").strip("_"))


def cohomology(alg: LambdaAlgebra, n: int, max_length: int | None = None) -> CohomologyReport:
    """Dimension and cocycle representatives of H^n."""
    if n < 0:
        return CohomologyReport(n, 0, [])
    alg.check_degree(n)
    d_n, src, _ = alg.d_matrix(n, max_length)
    z = kernel(d_n)
    if n >= 1:
        d_prev, _, tgt_prev = alg.d_matrix(n - 1, None if max_length is None else max_length - 1)
        idx = {m: i for i, m in enumerate(src)}
        cols = []
        for j in range(d_prev.ncols):
            v = [Fraction(0)] * len(src)
            for i, m in enumerate(tgt_prev):
                c = d_prev[i, j]
                if c:
                    if m not in idx:
                        raise TruncationError("boundary leaves the truncated basis")
                    v[idx[m]] = c
            cols.append(v)
        b = Subspace(len(src), cols)
    else:
        b = Subspace.zero(len(src))
    reps = quotient_basis(z, b)
    elems = [Element(alg.space, n, {m: c for m, c in zip(src, r) if c}) for r in reps]
    return CohomologyReport(n, len(reps), elems)


def cohomology_dims(alg: LambdaAlgebra, top: int) -> list[int]:
    return [cohomology(alg, n).dimension for n in range(top + 1)]


def minimal_stable_subspace(alg: LambdaAlgebra, seed: Iterable[int | str]) -> StableSubspace:
    """Smallest generator set containing ``seed`` whose span is preserved by d."""
    todo = [alg.space.index(s) if isinstance(s, str) else s for s in seed]
    for s in todo:
        if not 0 <= s < len(alg.space):
            raise KeyError(f"unknown generator id {s}")
    found: set[int] = set()
    while todo:
        g = todo.pop()
        if g in found:
            continue
        found.add(g)
        todo.extend(alg.d.on_generator(g).generators_used() - found)
    top = alg.max_reliable_degree()
    closed = top is None or all(alg.space.degree(g) <= top for g in found)
    return StableSubspace(frozenset(found), closed)


def vn_filtration_bracketed(alg: LambdaAlgebra) -> Filtration:
    """The filtration ``V_0 = ker d1``, ``V_{n+1} = d1^{-1}(wedge^2 V_n)``."""
    d1 = quadratic_part(alg)
    chain, exhausted = ascending_preimage_filtration(alg.space, d1)
    if not exhausted:
        raise SullivanError("quadratic differential does not satisfy the Sullivan condition")
    return Filtration(tuple(chain), True, tuple(alg.space.names))


class SullivanMorphism:
    """A cdga morphism ``wedge V -> wedge W`` given on generators."""

    def __init__(self, source: LambdaAlgebra, target: LambdaAlgebra,
                 values: Mapping[int | str, Element], check: bool = True):
        self.source = source
        self.target = target
        vals: dict[int, Element] = {}
        for g, e in values.items():
            i = source.space.index(g) if isinstance(g, str) else g
            if e.space != target.space:
                raise ValueError("morphism value lives outside the target algebra")
            if e.terms and e.degree != source.space.degree(i):
                raise ValueError(f"morphism does not preserve the degree of {source.space.generators[i].name}")
            vals[i] = e
        self.values = vals
        if check:
            bad = self.commutation_witness()
            if bad is not None:
                raise SullivanError(f"morphism does not commute with d on {bad}", bad)

    def __call__(self, e: Element) -> Element:
        return substitute(e, self.values, self.target.space)

    def commutation_witness(self) -> str | None:
        for i in range(len(self.source.space)):
            lhs = self(self.source.d.on_generator(i))
            img = self.values.get(i, Element.zero(self.target.space, self.source.space.degree(i)))
            rhs = apply_derivation(self.target.d, img)
            if lhs != rhs:
                return self.source.space.generators[i].name
        return None

    def linear_part(self) -> RatMatrix:
        """Matrix of the linear part V -> W (columns indexed by source generators)."""
        rows = len(self.target.space)
        cols = []
        for i in range(len(self.source.space)):
            v = [Fraction(0)] * rows
            img = self.values.get(i)
            if img is not None:
                for m, c in img.terms.items():
                    if len(m) == 1:
                        v[m[0]] = c
            cols.append(v)
        return RatMatrix.from_columns(cols, rows)

    def cohomology_map(self, n: int) -> RatMatrix:
        """Matrix of H^n(phi) against the cohomology bases chosen by :func:`cohomology`."""
        src = cohomology(self.source, n)
        tgt = cohomology(self.target, n)
        d_prev, _, tgt_basis = self.target.d_matrix(n - 1) if n >= 1 else (None, [], [])
        basis = monomial_basis(self.target.space, n)
        idx = {m: i for i, m in enumerate(basis)}

        def vec(e: Element):
            v = [Fraction(0)] * len(basis)
            for m, c in e.terms.items():
                v[idx[m]] = c
            return v

        boundaries = [d_prev.column(j) for j in range(d_prev.ncols)] if d_prev is not None else []
        cols = [vec(r) for r in tgt.representatives] + boundaries
        system = RatMatrix.from_columns(cols, len(basis)) if cols else RatMatrix.zeros(len(basis), 0)
        out = []
        for r in src.representatives:
            x = solve(system, vec(self(r)))
            if x is None:
                raise SullivanError("image of a cocycle is not a cocycle")
            out.append(x[: tgt.dimension])
        return RatMatrix.from_columns(out, tgt.dimension) if out else RatMatrix.zeros(tgt.dimension, 0)
