"""Lambda-extensions ``wedge V -> wedge V (x) wedge Z`` and their holonomy.

The total algebra puts base generators first, then fiber generators.  The
v-linear part of ``d`` on fiber generators defines derivations ``theta_i`` of
``wedge Z``:

    d(1 (x) Phi) = 1 (x) dbar Phi + sum_i v_i (x) theta_i Phi + (terms with >= 2 base factors)

and the holonomy action of the dual basis element ``x_i`` on ``H(wedge Z)``
is ``thetabar(x_i) = -H(theta_i)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .gca import Derivation, Element, GradedSpace, Monomial, apply_derivation, monomial_basis, normalize
from .group import ULTruncation
from .lie import GradedLieAlgebra, homotopy_lie_algebra
from .ratlin import RatMatrix, Subspace, rank, solve, sparse_kernel, sparse_rref
from .sullivan import (
    LambdaAlgebra,
    SullivanAlgebra,
    SullivanError,
    ascending_preimage_filtration,
    cohomology,
    is_minimal,
)

F0 = Fraction(0)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


class ExtensionError(ValueError):
    pass


class LambdaExtension:
    """``wedge V (x) wedge Z`` over a Lambda-algebra base."""

    def __init__(self, base: LambdaAlgebra, fiber: GradedSpace,
                 fiber_d: Mapping[int | str, Element], cutoff: int | None = None):
        self.base = base
        self.fiber = fiber
        nb = len(base.space)
        self.nb = nb
        try:
            self.space = base.space.concat(fiber)
        except ValueError as exc:
            raise ExtensionError(f"fiber names clash with base names: {exc}") from None
        vals: dict[int, Element] = {}
        for i in range(nb):
            vals[i] = _embed_prefix(base.d.on_generator(i), self.space)
        for g, e in fiber_d.items():
            j = fiber.index(g) if isinstance(g, str) else g
            if e.space != self.space:
                raise ExtensionError("fiber differentials must live in the total algebra")
            if e.terms and e.degree != fiber.degree(j) + 1:
                raise ExtensionError(f"d({fiber.generators[j].name}) has the wrong degree")
            vals[nb + j] = e
        self.d = Derivation(self.space, 1, vals)
        self.cutoff = cutoff if cutoff is not None else base.cutoff
        try:
            self.total = LambdaAlgebra(self.space, self.d, cutoff=self.cutoff, name="total")
        except SullivanError as exc:
            raise ExtensionError(f"total algebra is invalid: {exc}") from exc
        # staging of Z relative to V
        start = Subspace.coordinate(len(self.space), range(nb))
        chain, exhausted = ascending_preimage_filtration(self.space, self.d, start)
        if not exhausted:
            raise ExtensionError("fiber generators admit no staging (not a Lambda-extension)")
        self.staging = chain
        # quotient differential: drop every term with a base factor
        dbar = {}
        for j in range(len(fiber)):
            e = self.d.on_generator(nb + j)
            terms = {tuple(g - nb for g in m): c for m, c in e.terms.items() if all(g >= nb for g in m)}
            dbar[j] = Element(fiber, e.degree, terms)
        self.dbar = Derivation(fiber, 1, dbar)
        self.fiber_algebra = LambdaAlgebra(fiber, self.dbar, cutoff=self.cutoff, name="fiber")

    @classmethod
    def from_terms(cls, base: LambdaAlgebra, fiber_gens: Sequence[tuple[str, int]],
                   differentials: Mapping[str, Iterable[tuple]] | None = None, **kw) -> "LambdaExtension":
        fiber = GradedSpace(fiber_gens)
        space = base.space.concat(fiber)
        vals = {}
        for name, terms in (differentials or {}).items():
            j = fiber.index(name)
            e = Element.zero(space, fiber.degree(j) + 1)
            for coeff, factors in terms:
                e = e + Element.monomial(space, [space.index(f) for f in factors], Fraction(coeff))
            vals[j] = e
        return cls(base, fiber, vals, **kw)

    def fiber_element(self, e: Element) -> Element:
        """Image of a fiber-algebra element in the total algebra."""
        return _embed_shift(e, self.space, self.nb)

    def is_product(self) -> bool:
        return all(all(g >= self.nb for g in m) for j in range(len(self.fiber))
                   for m in self.d.on_generator(self.nb + j).terms)


def _embed_prefix(e: Element, target: GradedSpace) -> Element:
    return Element(target, e.degree, dict(e.terms))


def _embed_shift(e: Element, target: GradedSpace, offset: int) -> Element:
    return Element(target, e.degree, {tuple(g + offset for g in m): c for m, c in e.terms.items()})


def make_extension(base: LambdaAlgebra, fiber_gens: Sequence[tuple[str, int]],
                   differentials: Mapping[str, Iterable[tuple]] | None = None, **kw) -> LambdaExtension:
    return LambdaExtension.from_terms(base, fiber_gens, differentials, **kw)


def split_extension(alg: LambdaAlgebra, base_names: Iterable[str]) -> LambdaExtension:
    """View ``alg`` as an extension of the sub-algebra on ``base_names`` (which must be d-stable)."""
    base_ids = sorted(alg.space.index(n) for n in base_names)
    base = alg.generator_subset_algebra(base_ids, name="base")
    fiber_ids = [i for i in range(len(alg.space)) if i not in set(base_ids)]
    fiber = GradedSpace([alg.space.generators[i] for i in fiber_ids])
    space = base.space.concat(fiber)
    new_id = {old: k for k, old in enumerate(base_ids + fiber_ids)}
    vals = {}
    for j, old in enumerate(fiber_ids):
        e = alg.d.on_generator(old)
        out: dict = {}
        for m, c in e.terms.items():
            s, mm = normalize(space, [new_id[g] for g in m])
            if s:
                out[mm] = out.get(mm, F0) + s * c
        vals[j] = Element(space, e.degree, out)
    return LambdaExtension(base, fiber, vals, cutoff=alg.cutoff)


# holonomy --------------------------------------------------------------------

class HolonomyError(ValueError):
    pass


@dataclass
class HolonomyData:
    extension: LambdaExtension
    theta: dict[int, Derivation]
    max_length: int | None = None
    _coh: dict = field(default_factory=dict, repr=False)

    def thetabar_chain(self, i: int) -> Derivation:
        """``-theta_i`` as a derivation of wedge Z (the chain-level action of x_i)."""
        th = self.theta[i]
        return Derivation(th.space, th.shift, {g: -v for g, v in th.values.items()})

    def cohomology(self, k: int):
        """``(reps, boundaries, basis)`` of ``H^k(wedge Z, dbar)`` in monomial coordinates."""
        hit = self._coh.get(k)
        if hit is None:
            hit = _fiber_cohomology(self.extension.fiber_algebra, k, self.max_length)
            self._coh[k] = hit
        return hit

    def action_matrix(self, i: int, k: int) -> RatMatrix:
        """Matrix of ``thetabar(x_i)`` from ``H^k`` to ``H^{k + 1 - |v_i|}`` in the chosen bases."""
        th = self.thetabar_chain(i)
        src_reps, _, _ = self.cohomology(k)
        k2 = k + th.shift
        cols = []
        for r in src_reps:
            cols.append(self.express(apply_derivation(th, r), k2))
        tgt_dim = len(self.cohomology(k2)[0]) if k2 >= 0 else 0
        return RatMatrix.from_columns(cols, tgt_dim) if cols else RatMatrix.zeros(tgt_dim, 0)

    def express(self, cocycle: Element, k: int) -> tuple:
        """Coordinates of the class of a cocycle against the chosen basis of ``H^k``."""
        if k < 0:
            return ()
        reps, bounds, basis = self.cohomology(k)
        idx = {m: t for t, m in enumerate(basis)}
        missing = [m for m in cocycle.terms if m not in idx]
        if missing:
            raise HolonomyError("cocycle leaves the truncated fiber basis; raise max_length")
        vec = [F0] * len(basis)
        for m, c in cocycle.terms.items():
            vec[idx[m]] = c
        cols = [[r.coefficient(m) for m in basis] for r in reps] + list(bounds)
        M = RatMatrix.from_columns(cols, len(basis)) if cols else RatMatrix.zeros(len(basis), 0)
        x = solve(M, vec)
        if x is None:
            raise HolonomyError("theta does not map cocycles to cocycles")
        return tuple(x[: len(reps)])

    def lie_action(self, L: GradedLieAlgebra, x: Sequence, k: int) -> RatMatrix:
        """Matrix of ``thetabar(x)`` on ``H^k`` for a homogeneous element x of L_V."""
        deg = L.degree_of(x)
        k2 = k - (deg or 0)
        tgt_dim = len(self.cohomology(k2)[0]) if k2 >= 0 else 0
        src_dim = len(self.cohomology(k)[0])
        out = RatMatrix.zeros(tgt_dim, src_dim)
        for i, c in enumerate(x):
            if c:
                out = out + self.action_matrix(i, k).scale(c)
        return out


def _fiber_cohomology(alg: LambdaAlgebra, k: int, max_length: int | None):
    if k < 0:
        return [], [], []
    has_zero = any(d == 0 for d in alg.space.degrees())
    ml = max_length if has_zero else None
    rep = cohomology(alg, k, ml)
    basis = monomial_basis(alg.space, k, ml)
    d_prev_basis = monomial_basis(alg.space, k - 1, None if ml is None else ml) if k >= 1 else []
    bounds = []
    idx = {m: t for t, m in enumerate(basis)}
    for m in d_prev_basis:
        img = alg.d._on_monomial(m)
        if all(mm in idx for mm in img.terms):
            v = [F0] * len(basis)
            for mm, c in img.terms.items():
                v[idx[mm]] = c
            if any(v):
                bounds.append(tuple(v))
    return rep.representatives, bounds, basis


def holonomy(ext: LambdaExtension, max_length: int | None = None) -> HolonomyData:
    """Read off the derivations ``theta_i`` and check they commute with dbar."""
    nb = ext.nb
    fiber = ext.fiber
    vals: dict[int, dict[int, dict]] = {i: {} for i in range(nb)}
    for j in range(len(fiber)):
        for m, c in ext.d.on_generator(nb + j).terms.items():
            base_pos = [p for p, g in enumerate(m) if g < nb]
            if len(base_pos) != 1:
                continue
            p = base_pos[0]
            v = m[p]
            rest = m[:p] + m[p + 1:]
            prefix_deg = sum(ext.space.degree(g) for g in m[:p])
            s = _sign(ext.space.degree(v) * prefix_deg)
            fm = tuple(g - nb for g in rest)
            slot = vals[v].setdefault(j, {})
            slot[fm] = slot.get(fm, F0) + s * c
    theta = {}
    for i in range(nb):
        shift = 1 - ext.space.degree(i)
        gv = {j: Element(fiber, fiber.degree(j) + shift, t) for j, t in vals[i].items()}
        theta[i] = Derivation(fiber, shift, gv)
    # theta_i dbar + (-1)^{|v_i|} dbar theta_i = 0 on generators
    for i, th in theta.items():
        s = _sign(ext.space.degree(i))
        for j in range(len(fiber)):
            a = apply_derivation(th, ext.dbar.on_generator(j))
            b = apply_derivation(ext.dbar, th.on_generator(j))
            if a + b.scale(s):
                raise HolonomyError(
                    f"theta_{ext.space.generators[i].name} does not commute with dbar on "
                    f"{fiber.generators[j].name}; it induces no map on cohomology")
    return HolonomyData(ext, theta, max_length)


def holonomy_residual_ok(ext: LambdaExtension, hol: HolonomyData, max_degree: int, max_length: int | None = None) -> bool:
    """Check that ``d Phi - dbar Phi - sum v_i theta_i Phi`` has >= 2 base factors
    for every fiber monomial Phi up to ``max_degree``."""
    nb = ext.nb
    has_zero = any(d == 0 for d in ext.fiber.degrees())
    ml = max_length if has_zero else None
    for k in range(max_degree + 1):
        for m in monomial_basis(ext.fiber, k, ml):
            phi = Element(ext.fiber, k, {m: 1})
            total = apply_derivation(ext.d, ext.fiber_element(phi))
            total = total - ext.fiber_element(apply_derivation(ext.dbar, phi))
            for i, th in hol.theta.items():
                total = total - Element.gen(ext.space, i) * ext.fiber_element(apply_derivation(th, phi))
            for mm in total.terms:
                if sum(1 for g in mm if g < nb) < 2:
                    return False
    return True


def dual_exponential_action(hol: HolonomyData, i: int, k: int, c) -> RatMatrix:
    """Transpose of ``exp(c thetabar(x_i))`` on ``H^k`` for a degree-0 ``x_i``.

    Acting on functionals ``f`` by ``f -> f o exp(c thetabar(x_i))``.
    """
    D = hol.action_matrix(i, k)
    if D.nrows != D.ncols:
        raise HolonomyError("exponential action needs a degree-0 Lie element")
    n = D.nrows
    c = Fraction(c)
    out = RatMatrix.identity(n)
    term = RatMatrix.identity(n)
    for p in range(1, n + 2):
        term = (term @ D).scale(c / p)
        if term.is_zero():
            break
        out = out + term
    else:
        raise HolonomyError("action is not nilpotent")
    return out.T


# acyclic closures --------------------------------------------------------------

@dataclass
class AcyclicClosure:
    extension: LambdaExtension
    verified_to: int
    u_of: dict[int, int]

    @property
    def fiber(self) -> GradedSpace:
        return self.extension.fiber


def _staging_order(base: LambdaAlgebra) -> list[int]:
    stage: dict[int, int] = {}
    visiting: set[int] = set()

    def st(g: int) -> int:
        if g in stage:
            return stage[g]
        if g in visiting:
            raise ExtensionError("base differential has a cycle; not a Sullivan algebra")
        visiting.add(g)
        used = base.d.on_generator(g).generators_used()
        stage[g] = 0 if not used else 1 + max(st(h) for h in used)
        visiting.discard(g)
        return stage[g]

    ids = list(range(len(base.space)))
    for g in ids:
        st(g)
    return sorted(ids, key=lambda g: (stage[g], base.space.degree(g), g))


def _mixed_basis(space: GradedSpace, nb: int, degree: int, fiber_ids: Sequence[int], max_u: int) -> list[Monomial]:
    """Monomials with >= 1 base factor and 1..max_u factors from ``fiber_ids``."""
    allowed = list(range(nb)) + list(fiber_ids)
    fset = set(fiber_ids)
    out = []
    for m in monomial_basis(space, degree, _length_bound(space, degree, fiber_ids, max_u), allowed=allowed):
        nu = sum(1 for g in m if g in fset)
        if 1 <= nu <= max_u and len(m) - nu >= 1:
            out.append(m)
    return out


def _length_bound(space: GradedSpace, degree: int, fiber_ids: Sequence[int], max_u: int) -> int | None:
    if any(space.degree(g) == 0 for g in fiber_ids):
        return degree + max_u  # base generators have degree >= 1
    return None


def acyclic_closure(base: LambdaAlgebra, N: int, max_u_length: int = 8, slack: int = 3) -> AcyclicClosure:
    """Acyclic closure of a Sullivan algebra, checked acyclic in degrees 1..N.

    Generators are treated in staging order; ``du = v - Phi`` where
    ``Phi`` in wedge^+V (x) wedge^+U solves ``d Phi = d v``.
    """
    if any(d < 1 for d in base.space.degrees()):
        raise ExtensionError("acyclic closures are built over Sullivan algebras (degrees >= 1)")
    if base.cutoff is not None and N > base.cutoff - 2:
        raise ExtensionError(f"base cutoff {base.cutoff} only supports verification through degree {base.cutoff - 2}")
    order = _staging_order(base)
    nb = len(base.space)
    fiber_gens = [(f"u_{base.space.generators[v].name}", base.space.degree(v) - 1) for v in order]
    fiber = GradedSpace(fiber_gens)
    space = base.space.concat(fiber)
    dvals: dict[int, Element] = {i: _embed_prefix(base.d.on_generator(i), space) for i in range(nb)}
    processed: list[int] = []
    u_of = {}
    for j, v in enumerate(order):
        uid = nb + j
        deg = space.degree(v)
        partial = Derivation(space, 1, dvals)
        target = apply_derivation(partial, Element.gen(space, v))
        phi = None
        if not target.terms:
            phi = Element.zero(space, deg)
        else:
            for max_u in range(1, max_u_length + 1):
                basis = _mixed_basis(space, nb, deg, processed, max_u)
                if not basis:
                    continue
                images = [apply_derivation(partial, Element(space, deg, {m: 1})) for m in basis]
                rows = sorted({mm for img in images for mm in img.terms} | set(target.terms))
                M = RatMatrix.from_columns([[img.coefficient(m) for m in rows] for img in images], len(rows))
                x = solve(M, [target.coefficient(m) for m in rows])
                if x is not None:
                    phi = Element(space, deg, {m: c for m, c in zip(basis, x) if c})
                    break
        if phi is None:
            raise ExtensionError(f"could not solve for the correction of u_{space.generators[v].name}")
        dvals[uid] = Element.gen(space, v) - phi
        processed.append(uid)
        u_of[v] = j
    ext = LambdaExtension(base, fiber, {j: dvals[nb + j] for j in range(len(fiber))}, cutoff=base.cutoff)
    if ext.fiber_algebra.d.values:
        raise ExtensionError("internal fault: quotient differential on wedge U is not zero")
    _verify_acyclic(ext.total, N, max_u_length, slack)
    return AcyclicClosure(ext, N, u_of)


def _verify_acyclic(total: LambdaAlgebra, N: int, max_len: int, slack: int) -> None:
    has_zero = any(d == 0 for d in total.space.degrees())
    for k in range(1, N + 1):
        if not has_zero:
            h = cohomology(total, k)
            if h.dimension:
                raise ExtensionError(f"total algebra has cohomology in degree {k}")
            continue
        src = monomial_basis(total.space, k, max_len)
        row_of: dict = {}
        rows: list[dict] = []
        for j, m in enumerate(src):
            for mm, c in total.d._on_monomial(m).terms.items():
                t = row_of.setdefault(mm, len(row_of))
                if t == len(rows):
                    rows.append({})
                rows[t][j] = c
        cocycles = [{src[j]: c for j, c in v.items()} for v in sparse_kernel(rows, len(src))]
        if not cocycles:
            continue
        col_of: dict = {}
        bounds = []
        for m in monomial_basis(total.space, k - 1, max_len + slack):
            img = total.d._on_monomial(m)
            if img.terms:
                bounds.append({col_of.setdefault(mm, len(col_of)): c for mm, c in img.terms.items()})
        zs = [{col_of.setdefault(mm, len(col_of)): c for mm, c in z.items()} for z in cocycles]
        r_b = len(sparse_rref(bounds)[1])
        if len(sparse_rref(bounds + zs)[1]) != r_b:
            raise ExtensionError(f"total algebra has cohomology in degree {k} (within the length window)")


# acyclic closure duality -------------------------------------------------------

@dataclass
class UlDualReport:
    per_degree: list[tuple[int, int, int, bool]]   # (k, #PBW words, dim (wedge U)^k, pairing nonsingular)

    @property
    def ok(self) -> bool:
        return all(a == b and ns for _, a, b, ns in self.per_degree)


def ul_dual_check(base: SullivanAlgebra, N: int, W: int) -> UlDualReport:
    """Compare PBW words of ``UL/I^W`` with monomials of ``wedge U`` degree by degree.

    The pairing sends a PBW word ``a`` and a monomial ``m`` to
    ``(-1)^{|a|} eps(a . m)`` where words act on ``wedge U`` through the
    holonomy derivations.
    """
    closure = acyclic_closure(base, N)
    ext = closure.extension
    hol = holonomy(ext)
    L = homotopy_lie_algebra(base)
    ul = ULTruncation(L, W)
    U = ext.fiber
    # thetabar of each adapted basis element as a derivation of wedge U
    chains = [hol.thetabar_chain(i) for i in range(L.dim)]
    adapted = []
    for a in range(L.dim):
        col = ul.P.column(a)
        vals: dict[int, Element] = {}
        shift = None
        for i, c in enumerate(col):
            if c:
                shift = chains[i].shift
                for g, e in chains[i].values.items():
                    vals[g] = vals.get(g, Element.zero(U, e.degree)) + e.scale(c)
        adapted.append(Derivation(U, shift if shift is not None else 0, vals))
    rows_out = []
    for k in range(N + 1):
        words = ul.pbw_basis(k)
        monos = [m for m in monomial_basis(U, k, W - 1 if any(d == 0 for d in U.degrees()) else None) if len(m) < W]
        ns = False
        if len(words) == len(monos):
            P = []
            for w in words:
                row = []
                for m in monos:
                    e = Element(U, k, {m: 1})
                    for a in reversed(w):
                        e = apply_derivation(adapted[a], e)
                        if not e.terms:
                            break
                    row.append(_sign(k) * e.coefficient(()))
                P.append(row)
            ns = rank(RatMatrix(P, len(monos))) == len(monos) if monos else True
        rows_out.append((k, len(words), len(monos), ns))
    return UlDualReport(rows_out)


# the right adjoint identity ---------------------------------------------------------

@dataclass
class RightAdjointReport:
    ok: bool
    pairs_checked: int
    functionals: int
    witness: tuple | None = None


def eq16_check(ext: LambdaExtension, samples: int = 200, seed: int = 0) -> RightAdjointReport:
    """Check ``<xi Phi, s(ad_R(x) y)> = (-1)^{|x|} <xi(thetabar(x) Phi), s y>``.

    x runs over the base part of the total homotopy Lie algebra, y over the
    fiber part and Phi over cohomology representatives of the fiber in the
    degrees of fiber generators.  ``ad_R(x) y = [y, x]``.
    """
    if not is_minimal(ext.total):
        raise ExtensionError("the identity is stated for a minimal total algebra")
    nb = ext.nb
    L = homotopy_lie_algebra(ext.total)
    hol = holonomy(ext)
    nz = len(ext.fiber)
    pairs = [(i, nb + j) for i in range(nb) for j in range(nz)]
    if len(pairs) > samples:
        rng = random.Random(seed)
        pairs = sorted(rng.sample(pairs, samples))
    degrees = sorted(set(ext.fiber.degrees()))
    phis: list[tuple[int, Element]] = []
    for k in degrees:
        for r in hol.cohomology(k)[0]:
            phis.append((k, r))

    def xi_pair(phi: Element, y: Sequence) -> Fraction:
        # linear part of phi paired with the fiber coordinates of y
        return sum((phi.coefficient((j,)) * y[nb + j] for j in range(nz)), F0)

    for x, y in pairs:
        xv, yv = L.unit(x), L.unit(y)
        dx = L.degrees[x]
        adr = L.bracket(yv, xv)
        th = hol.thetabar_chain(x)
        for k, phi in phis:
            lhs = xi_pair(phi, adr)
            rhs = _sign(dx) * xi_pair(apply_derivation(th, phi), yv)
            if lhs != rhs:
                return RightAdjointReport(False, len(pairs), len(phis),
                                  (L.names[x], L.names[y], str(phi), lhs, rhs))
    return RightAdjointReport(True, len(pairs), len(phis))
