"""Graded Lie algebras: homotopy Lie algebras of minimal algebras and back.

Sign conventions
----------------
The basis element ``x_i`` of the homotopy Lie algebra is dual to generator
``v_i`` and has degree ``|v_i| - 1``.  A quadratic monomial is evaluated on
two suspended elements by the Koszul-signed shuffle

    <v w, z1, z2> = (-1)^{|w||z1|} <v,z1><w,z2> + (-1)^{|v||w| + |v||z1|} <w,z1><v,z2>

so ``<x^2, s a, s a> = 2`` for even ``x``.  The bracket is then

    coefficient of x_k in [x_a, x_b] = (-1)^{|x_b| + 1} <d1 v_k, s x_a, s x_b>.

With these choices graded antisymmetry and Jacobi follow from ``d1**2 = 0``,
and :func:`cce_dual` is an exact inverse of :func:`homotopy_lie_algebra`.
Each basis element of a homotopy Lie algebra carries the name of the
generator it is dual to.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .gca import Derivation, Element, GradedSpace, Monomial
from .ratlin import RatMatrix, Subspace, as_vector, quotient_basis, rank, solve
from .sullivan import (
    LambdaAlgebra,
    SullivanAlgebra,
    SullivanError,
    cohomology,
    is_minimal,
    quadratic_part,
    vn_filtration_bracketed,
)

F0 = Fraction(0)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


class LieError(ValueError):
    pass


class GradedLieAlgebra:
    """Finite-dimensional graded Lie algebra with rational structure constants.

    ``brackets`` maps ordered index pairs ``(i, j)`` to ``{k: coeff}``.  When
    only one of ``(i, j)``, ``(j, i)`` is given the other is filled in by graded
    antisymmetry.
    """

    def __init__(self, basis: Sequence[tuple[str, int]], brackets: Mapping[tuple[int, int], Mapping[int, object]] | None = None,
                 check: bool = True, fill_antisymmetric: bool = True):
        self.names = [str(b[0]) for b in basis]
        self.degrees = [int(b[1]) for b in basis]
        if any(d < 0 for d in self.degrees):
            raise LieError("Lie algebra degrees must be >= 0")
        if len(set(self.names)) != len(self.names):
            raise LieError("basis names must be unique")
        self._index = {n: i for i, n in enumerate(self.names)}
        n = len(self.names)
        table: dict[tuple[int, int], tuple] = {}
        for (i, j), coords in (brackets or {}).items():
            v = [F0] * n
            for k, c in coords.items():
                v[k] += Fraction(c)
            table[(i, j)] = tuple(v)
        if fill_antisymmetric:
            for (i, j), v in list(table.items()):
                if (j, i) not in table:
                    s = -_sign(self.degrees[i] * self.degrees[j])
                    table[(j, i)] = tuple(s * c for c in v)
        self._table = {k: v for k, v in table.items() if any(v)}
        for (i, j), v in self._table.items():
            for k, c in enumerate(v):
                if c and self.degrees[k] != self.degrees[i] + self.degrees[j]:
                    raise LieError(f"[{self.names[i]},{self.names[j]}] has a term of the wrong degree")
        if check:
            bad = check_jacobi(self)
            if not bad.ok:
                raise LieError(bad.message)

    def __len__(self) -> int:
        return len(self.names)

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown Lie basis element {name!r}") from None

    def zero(self) -> tuple:
        return tuple([F0] * self.dim)

    def unit(self, i: int) -> tuple:
        v = [F0] * self.dim
        v[i] = Fraction(1)
        return tuple(v)

    def bracket_basis(self, i: int, j: int) -> tuple:
        return self._table.get((i, j)) or self.zero()

    def structure_constants(self) -> dict[tuple[int, int], tuple]:
        return dict(self._table)

    def bracket(self, x, y):
        """Bracket of coordinate vectors (or :class:`LieElement`)."""
        if isinstance(x, LieElement):
            return LieElement(self, self.bracket(x.coords, y.coords))
        out = [F0] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                v = self._table.get((i, j))
                if v:
                    ab = a * b
                    for k, c in enumerate(v):
                        if c:
                            out[k] += ab * c
        return tuple(out)

    def degree_of(self, x) -> int | None:
        degs = {self.degrees[i] for i, c in enumerate(x) if c}
        if len(degs) > 1:
            raise LieError("inhomogeneous Lie element")
        return degs.pop() if degs else None

    def ad_matrix(self, x) -> RatMatrix:
        """Matrix of ``y -> [x, y]`` (columns indexed by basis elements)."""
        return RatMatrix.from_columns([self.bracket(x, self.unit(j)) for j in range(self.dim)], self.dim)

    def element(self, coords: Mapping[str | int, object]) -> "LieElement":
        v = [F0] * self.dim
        for k, c in coords.items():
            v[self.index(k) if isinstance(k, str) else k] += Fraction(c)
        return LieElement(self, tuple(v))

    def is_abelian(self) -> bool:
        return not self._table

    def format(self, x) -> str:
        parts = []
        for i, c in enumerate(x):
            if c:
                if not parts:
                    parts.append(("-" if c < 0 else "") + (self.names[i] if abs(c) == 1 else f"{abs(c)}*{self.names[i]}"))
                else:
                    body = self.names[i] if abs(c) == 1 else f"{abs(c)}*{self.names[i]}"
                    parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts) or "0"

    def same_structure(self, other: "GradedLieAlgebra") -> bool:
        return self.degrees == other.degrees and self._table == other._table

    def __repr__(self) -> str:
        return f"GradedLieAlgebra(dim={self.dim}, degrees={self.degrees})"


@dataclass(frozen=True)
class LieElement:
    lie: GradedLieAlgebra
    coords: tuple

    @property
    def degree(self) -> int | None:
        return self.lie.degree_of(self.coords)

    def __add__(self, other: "LieElement") -> "LieElement":
        return LieElement(self.lie, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LieElement") -> "LieElement":
        return LieElement(self.lie, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LieElement":
        return LieElement(self.lie, tuple(-a for a in self.coords))

    def scale(self, c) -> "LieElement":
        c = Fraction(c)
        return LieElement(self.lie, tuple(c * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self) -> str:
        return self.lie.format(self.coords)


@dataclass
class JacobiReport:
    ok: bool
    message: str = "ok"
    witness: tuple | None = None


def check_jacobi(L: GradedLieAlgebra) -> JacobiReport:
    """Exhaustive graded antisymmetry and Jacobi check on basis elements."""
    n = L.dim
    deg = L.degrees
    for i in range(n):
        for j in range(n):
            lhs = L.bracket_basis(i, j)
            rhs = L.bracket_basis(j, i)
            s = -_sign(deg[i] * deg[j])
            if lhs != tuple(s * c for c in rhs):
                return JacobiReport(False, f"antisymmetry fails on ({L.names[i]}, {L.names[j]})", (i, j))
    for i in range(n):
        for j in range(n):
            bij = L.bracket_basis(i, j)
            for k in range(n):
                # [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
                lhs = L.bracket(L.unit(i), L.bracket_basis(j, k))
                a = L.bracket(bij, L.unit(k))
                b = L.bracket(L.unit(j), L.bracket_basis(i, k))
                s = _sign(deg[i] * deg[j])
                if any(l != x + s * y for l, x, y in zip(lhs, a, b)):
                    return JacobiReport(False, f"Jacobi fails on ({L.names[i]}, {L.names[j]}, {L.names[k]})",
                                        (i, j, k))
    return JacobiReport(True)


# homotopy Lie algebra and its inverse ------------------------------------

def _pairing_first_term(space: GradedSpace, p: int, q: int, a: int) -> int:
    # coefficient of <v_p,sx_a><v_q,sx_b> in <v_p v_q, sx_a, sx_b>
    return _sign(space.degree(q) * space.degree(a))


def quadratic_pairing(space: GradedSpace, m: Monomial, a: int, b: int) -> int:
    """``<v_p v_q, s x_a, s x_b>`` for a quadratic monomial ``m = (p, q)``."""
    p, q = m
    dp, dq, da = space.degree(p), space.degree(q), space.degree(a)
    out = 0
    if p == a and q == b:
        out += _sign(dq * da)
    if q == a and p == b:
        out += _sign(dp * dq + dp * da)
    return out


def lie_from_quadratic(space: GradedSpace, d1: Derivation, check: bool = True) -> GradedLieAlgebra:
    """Bracket dual to a quadratic derivation; ``check=False`` skips the Jacobi check."""
    if any(space.degree(i) < 1 for i in range(len(space))):
        raise LieError("homotopy Lie algebras need generators of degree >= 1")
    basis = [(g.name, g.degree - 1) for g in space]
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for k in range(len(space)):
        for m, c in d1.on_generator(k).terms.items():
            if len(m) != 2:
                raise LieError("derivation is not quadratic")
            p, q = m
            for a, b in {(p, q), (q, p)}:
                val = quadratic_pairing(space, m, a, b)
                if val:
                    coeff = _sign(space.degree(b)) * val * c  # (-1)^{|x_b|+1}
                    slot = table.setdefault((a, b), {})
                    slot[k] = slot.get(k, F0) + coeff
    return GradedLieAlgebra(basis, table, check=check, fill_antisymmetric=False)


def homotopy_lie_algebra(alg: LambdaAlgebra) -> GradedLieAlgebra:
    if not is_minimal(alg):
        raise LieError("homotopy Lie algebra requires a minimal algebra")
    return lie_from_quadratic(alg.space, quadratic_part(alg))


def is_nilpotent(L: GradedLieAlgebra) -> bool:
    chain = lcs(L)
    return chain.terms[-1].dim == 0


def cce_dual(E: GradedLieAlgebra, name: str = "") -> SullivanAlgebra:
    """The quadratic Sullivan algebra whose homotopy Lie algebra is ``E``.

    Generator ``v_i`` (same name as the basis element) has degree ``|x_i| + 1``.
    """
    if not is_nilpotent(E):
        raise LieError("CCE dual needs a nilpotent Lie algebra (the Sullivan condition would fail)")
    space = GradedSpace([(n, d + 1) for n, d in zip(E.names, E.degrees)])
    vals: dict[int, dict] = {}
    for i in range(E.dim):
        for j in range(E.dim):
            if space.key(i) > space.key(j):
                continue
            if i == j and space.is_odd(i):
                continue
            e = 2 if i == j else _sign(space.degree(i) * space.degree(j))
            br = E.bracket_basis(i, j)
            for k, c in enumerate(br):
                if c:
                    coeff = _sign(E.degrees[j] + 1) * c / e
                    slot = vals.setdefault(k, {})
                    m = (i, j)
                    slot[m] = slot.get(m, F0) + coeff
    d = Derivation(space, 1, {k: Element(space, space.degree(k) + 1, t) for k, t in vals.items()})
    try:
        return SullivanAlgebra(space, d, name=name)
    except SullivanError as exc:
        raise LieError(f"CCE dual is not a Sullivan algebra: {exc}") from exc


@dataclass
class RoundtripReport:
    ok: bool
    mismatch: tuple | None = None
    message: str = "ok"


def cce_roundtrip(E: GradedLieAlgebra) -> RoundtripReport:
    back = homotopy_lie_algebra(cce_dual(E))
    if back.degrees != E.degrees:
        return RoundtripReport(False, None, "degrees differ")
    for i in range(E.dim):
        for j in range(E.dim):
            a, b = E.bracket_basis(i, j), back.bracket_basis(i, j)
            if a != b:
                return RoundtripReport(False, (i, j), f"[{E.names[i]},{E.names[j]}]: {E.format(a)} != {E.format(b)}")
    return RoundtripReport(True)


# lower central series ----------------------------------------------------

@dataclass
class LcsChain:
    """Descending chain ``L^1 >= L^2 >= ...``; ``terms[r - 1]`` is ``L^r``."""

    lie: GradedLieAlgebra
    terms: list[Subspace] = field(default_factory=list)

    def term(self, r: int) -> Subspace:
        if r < 1:
            raise ValueError("LCS terms are indexed from 1")
        if r <= len(self.terms):
            return self.terms[r - 1]
        last = self.terms[-1]
        if last.dim == 0 or (len(self.terms) > 1 and self.terms[-2] == last):
            return last
        raise IndexError(f"L^{r} was not computed")

    def quotient_dims(self) -> list[int]:
        """``dim L^r / L^{r+1}`` for the computed range."""
        return [self.terms[r].dim - self.terms[r + 1].dim for r in range(len(self.terms) - 1)]


def bracket_span(L: GradedLieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    return Subspace(L.dim, [L.bracket(a, b) for a in A.basis for b in B.basis])


def lcs(L: GradedLieAlgebra, r: int | None = None) -> LcsChain:
    """Terms ``L^1 .. L^r``; with ``r=None`` until the chain stabilizes."""
    full = Subspace.full(L.dim)
    terms = [full]
    while r is None or len(terms) < r:
        nxt = bracket_span(L, full, terms[-1])
        if r is None and nxt == terms[-1]:
            break
        terms.append(nxt)
        if r is None and nxt.dim == 0:
            break
    return LcsChain(L, terms)


def check_lcs_grading(L: GradedLieAlgebra, chain: LcsChain | None = None) -> tuple[int, int] | None:
    """First ``(r, s)`` with ``[L^r, L^s]`` not inside ``L^{r+s}``, or None."""
    chain = chain or lcs(L)
    n = len(chain.terms)
    for r in range(1, n + 1):
        for s in range(1, n + 1):
            try:
                target = chain.term(r + s)
            except IndexError:
                continue
            if not target.contains_subspace(bracket_span(L, chain.term(r), chain.term(s))):
                return (r, s)
    return None


def ideal_closure(L: GradedLieAlgebra, vectors: Iterable) -> Subspace:
    """Smallest ideal containing ``vectors``."""
    I = Subspace(L.dim, list(vectors))
    while True:
        nxt = I + Subspace(L.dim, [L.bracket(L.unit(i), b) for i in range(L.dim) for b in I.basis])
        if nxt == I:
            return I
        I = nxt


def quotient_lie(L: GradedLieAlgebra, ideal: Subspace, check: bool = True) -> tuple[GradedLieAlgebra, list[tuple]]:
    """``L / ideal`` on representatives chosen among the basis vectors of L.

    Returns the quotient and the chosen representatives.
    """
    reps = quotient_basis(Subspace.full(L.dim), ideal)
    idx = [next(i for i, c in enumerate(r) if c) for r in reps]
    cols = [list(r) for r in reps] + [list(b) for b in ideal.basis]
    M = RatMatrix.from_columns(cols, L.dim)
    m = len(reps)
    table = {}
    for a in range(m):
        for b in range(m):
            br = L.bracket(reps[a], reps[b])
            if any(br):
                x = solve(M, br)
                coords = {k: x[k] for k in range(m) if x[k]}
                if coords:
                    table[(a, b)] = coords
    Q = GradedLieAlgebra([(L.names[i], L.degrees[i]) for i in idx], table, check=check, fill_antisymmetric=False)
    return Q, reps


def lcs_quotient(L: GradedLieAlgebra, r: int) -> GradedLieAlgebra:
    """``L / L^r``."""
    return quotient_lie(L, lcs(L, r).term(r))[0]


# free nilpotent Lie algebras ------------------------------------------------

class _Tensor:
    """Non-commutative polynomials on graded letters, used to realise free Lie algebras."""

    def __init__(self, degrees: Sequence[int]):
        self.degrees = list(degrees)

    def word_degree(self, w: tuple) -> int:
        return sum(self.degrees[a] for a in w)

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for w1, c1 in x.items():
            for w2, c2 in y.items():
                w = w1 + w2
                out[w] = out.get(w, F0) + c1 * c2
        return {w: c for w, c in out.items() if c}

    def commutator(self, x: dict, dx: int, y: dict, dy: int) -> dict:
        s = _sign(dx * dy)
        out = dict(self.mul(x, y))
        for w, c in self.mul(y, x).items():
            out[w] = out.get(w, F0) - s * c
        return {w: c for w, c in out.items() if c}


def free_nilpotent_lie(degrees: Sequence[int], c: int, names: Sequence[str] | None = None) -> GradedLieAlgebra:
    """Free graded Lie algebra on generators of the given degrees, modulo brackets of length > c.

    Basis: the generators ``x1..xg`` then, for each length l >= 2, a greedy
    choice of independent right-normed brackets named ``c<l>_<k>``.
    """
    if c < 1:
        raise ValueError("class must be >= 1")
    g = len(degrees)
    names = list(names) if names else [f"x{i + 1}" for i in range(g)]
    T = _Tensor(degrees)
    elems: list[dict] = [{(i,): Fraction(1)} for i in range(g)]
    degs: list[int] = list(degrees)
    lengths: list[int] = [1] * g
    basis_names = list(names)
    by_length: dict[int, list[int]] = {1: list(range(g))}
    for length in range(2, c + 1):
        chosen: list[int] = []
        words: dict[tuple, int] = {}
        vecs: list[dict] = []
        for i in range(g):
            for j in by_length[length - 1]:
                e = T.commutator(elems[i], degs[i], elems[j], degs[j])
                if not e:
                    continue
                for w in e:
                    words.setdefault(w, len(words))
                cand = vecs + [e]
                mat_rows = [[v.get(w, F0) for w in words] for v in cand]
                sub = Subspace(len(words), mat_rows)
                if sub.dim > len(vecs):
                    vecs.append(e)
                    elems.append(e)
                    degs.append(degs[i] + degs[j])
                    lengths.append(length)
                    chosen.append(len(elems) - 1)
                    basis_names.append(f"c{length}_{len(chosen)}")
        by_length[length] = chosen
    # structure constants by solving in each length
    n = len(elems)
    solvers: dict[int, tuple[list, RatMatrix]] = {}
    for length, ids in by_length.items():
        words = sorted({w for k in ids for w in elems[k]})
        M = RatMatrix.from_columns([[elems[k].get(w, F0) for w in words] for k in ids], len(words)) \
            if ids else RatMatrix.zeros(0, 0)
        solvers[length] = (words, M)
    table = {}
    for a in range(n):
        for b in range(n):
            length = lengths[a] + lengths[b]
            if length > c:
                continue
            e = T.commutator(elems[a], degs[a], elems[b], degs[b])
            if not e:
                continue
            words, M = solvers[length]
            ids = by_length[length]
            if any(w not in set(words) for w in e):
                raise LieError("internal fault: bracket outside the chosen span")
            x = solve(M, [e.get(w, F0) for w in words])
            if x is None:
                raise LieError("internal fault: bracket outside the chosen span")
            table[(a, b)] = {ids[t]: x[t] for t in range(len(ids)) if x[t]}
    L = GradedLieAlgebra(list(zip(basis_names, degs)), table, check=False, fill_antisymmetric=False)
    L.word_length = lengths
    return L


def witt_number(k: int, n: int) -> int:
    """Dimension of the length-n part of the free Lie algebra on k degree-0 generators."""
    def mobius(m: int) -> int:
        res, p = 1, 2
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if m > 1 else res

    total = sum(mobius(d) * k ** (n // d) for d in range(1, n + 1) if n % d == 0)
    return total // n


def pronilpotent_stage(degrees: Sequence[int], n: int,
                       relations: Iterable[Callable[[GradedLieAlgebra], Iterable]] | Iterable = ()) -> SullivanAlgebra:
    """CCE dual of ``E / E^n`` where E is free on ``degrees`` modulo ``relations``.

    ``relations`` are coordinate vectors in the free class-(n-1) algebra, or
    callables producing them from that algebra.
    """
    if n < 2:
        raise ValueError("stage index must be >= 2")
    F = free_nilpotent_lie(degrees, n - 1)
    vecs = []
    for r in relations:
        v = r(F) if callable(r) else r
        if isinstance(v, LieElement):
            v = v.coords
        vecs.append(as_vector(v))
    if vecs:
        Q, _ = quotient_lie(F, ideal_closure(F, vecs))
    else:
        Q = F
    return cce_dual(Q, name=f"stage{n}")


def lie_from_matrices(matrices: Sequence[tuple[RatMatrix, int]], max_dim: int | None = None,
                      names: Sequence[str] | None = None) -> GradedLieAlgebra | None:
    """Graded Lie algebra spanned by homogeneous matrices under the supercommutator.

    ``matrices`` are ``(matrix, degree)`` pairs.  Returns None when the
    closure exceeds ``max_dim``.
    """
    basis: list[tuple[RatMatrix, int]] = []
    spans: dict[int, Subspace] = {}

    def flat(m: RatMatrix) -> list:
        return [a for r in m.rows for a in r]

    def add(m: RatMatrix, d: int) -> bool:
        if m.is_zero():
            return False
        size = m.nrows * m.ncols
        cur = spans.get(d, Subspace.zero(size))
        nxt = cur + Subspace(size, [flat(m)])
        if nxt.dim == cur.dim:
            return False
        spans[d] = nxt
        basis.append((m, d))
        return True

    for m, d in matrices:
        add(m, d)
    i = 0
    while i < len(basis):
        for j in range(i + 1):
            (a, da), (b, db) = basis[i], basis[j]
            comm = a @ b - (b @ a).scale(_sign(da * db))
            add(comm, da + db)
            if max_dim is not None and len(basis) > max_dim:
                return None
        i += 1
    # structure constants
    n = len(basis)
    size = basis[0][0].nrows * basis[0][0].ncols if basis else 0
    M = RatMatrix.from_columns([flat(m) for m, _ in basis], size) if basis else None
    table = {}
    for a in range(n):
        for b in range(n):
            (x, dx), (y, dy) = basis[a], basis[b]
            comm = x @ y - (y @ x).scale(_sign(dx * dy))
            if comm.is_zero():
                continue
            coords = solve(M, flat(comm))
            if coords is None:
                raise LieError("internal fault: commutator outside the closure")
            table[(a, b)] = {k: c for k, c in enumerate(coords) if c}
    names = list(names) if names else [f"e{i + 1}" for i in range(n)]
    return GradedLieAlgebra(list(zip(names, [d for _, d in basis])), table, fill_antisymmetric=False)


# filtration comparison and Hurewicz ----------------------------------------

@dataclass
class Prop6Report:
    n: int
    dim_vn: int
    dim_quotient: int
    annihilates: bool
    nonsingular: bool

    @property
    def ok(self) -> bool:
        return self.dim_vn == self.dim_quotient and self.annihilates and self.nonsingular


def _dual_pair(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b) if x and y), F0)


def prop6_check(alg: SullivanAlgebra, n: int) -> Prop6Report:
    """Compare ``V_n`` with ``L / L^{n+2}`` under the dual pairing of V and L.

    Checks equal dimensions, that ``V_n`` annihilates ``L^{n+2}``, and that the
    induced pairing ``V_n x L/L^{n+2}`` is nonsingular.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    filt = vn_filtration_bracketed(alg)
    Vn = filt.term(n)
    L = homotopy_lie_algebra(alg)
    chain = lcs(L, n + 2)
    Ln = chain.term(n + 2)
    reps = quotient_basis(Subspace.full(L.dim), Ln)
    annihilates = all(_dual_pair(v, l) == 0 for v in Vn.basis for l in Ln.basis)
    nonsingular = False
    if Vn.dim == len(reps):
        P = RatMatrix([[_dual_pair(v, r) for r in reps] for v in Vn.basis], len(reps))
        nonsingular = rank(P) == len(reps)
    return Prop6Report(n, Vn.dim, L.dim - Ln.dim, annihilates, nonsingular)


@dataclass
class HurewiczMap:
    """Rows: L basis.  Columns: cohomology classes ``(degree, index)``."""

    lie: GradedLieAlgebra
    columns: list[tuple[int, int]]
    representatives: list[Element]
    matrix: RatMatrix
    vanishes_on_L2: bool


def hurewicz(alg: SullivanAlgebra) -> HurewiczMap:
    """Pairing of each ``s x_k`` with the cohomology classes: the coefficient of
    ``v_k`` in the linear part of a cocycle representative."""
    L = homotopy_lie_algebra(alg)
    top = max(alg.space.degrees(), default=0)
    columns, reps = [], []
    for deg in range(1, top + 1):
        h = cohomology(alg, deg)
        for i, r in enumerate(h.representatives):
            columns.append((deg, i))
            reps.append(r)
    rows = []
    for k in range(L.dim):
        rows.append([r.coefficient((k,)) for r in reps])
    M = RatMatrix(rows, len(reps))
    L2 = lcs(L, 2).term(2)
    vanish = all(_dual_pair(l, M.column(c)) == 0 for l in L2.basis for c in range(M.ncols))
    return HurewiczMap(L, columns, reps, M, vanish)
