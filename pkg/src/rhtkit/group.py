"""Truncated enveloping algebras, exp/log and the nilpotent group law.

``ULTruncation`` models ``UL / I^W`` on a PBW basis.  The Lie basis is first
replaced by one adapted to the lower central series: each basis element gets
the weight r of the LCS layer ``L^r / L^{r+1}`` it represents, and PBW words of
total weight >= W are dropped.  Since ``[L^r, L^s]`` lies in ``L^{r+s}``,
straightening never lowers weight, so the truncation is an algebra.

Group elements live in log coordinates: a :class:`GroupElement` is a
degree-0 Lie element, and the product is ``log(exp x exp y)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .lie import GradedLieAlgebra, LieElement, LieError, check_jacobi, lcs
from .ratlin import RatMatrix, Subspace, inverse, quotient_basis
from .sullivan import SullivanMorphism

F0 = Fraction(0)
F1 = Fraction(1)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


class TruncationError(ValueError):
    """The requested computation does not terminate inside the truncation."""


class ULTruncation:
    """PBW model of ``UL / I^W`` with LCS weights.

    Elements are dicts ``{word: coeff}`` where a word is a non-decreasing
    tuple of adapted-basis indices (odd elements at most once).
    """

    def __init__(self, lie: GradedLieAlgebra, word_cutoff: int, check: bool = True):
        if word_cutoff < 1:
            raise ValueError("word cutoff must be >= 1")
        if check:
            rep = check_jacobi(lie)
            if not rep.ok:
                raise LieError(rep.message)
        self.lie = lie
        self.word_cutoff = word_cutoff
        chain = lcs(lie)
        cols: list[tuple] = []
        weights: list[int] = []
        for r in range(len(chain.terms)):
            upper = chain.terms[r]
            lower = chain.terms[r + 1] if r + 1 < len(chain.terms) else Subspace.zero(lie.dim)
            if r + 1 == len(chain.terms) and upper.dim:
                # not nilpotent: the stable tail keeps the last weight
                lower = Subspace.zero(lie.dim)
            for v in quotient_basis(upper, lower):
                cols.append(v)
                weights.append(r + 1)
        self.nilpotent = chain.terms[-1].dim == 0
        self.P = RatMatrix.from_columns(cols, lie.dim)   # adapted -> original coordinates
        self.P_inv = inverse(self.P) if lie.dim else self.P
        self.weights = weights
        self.degrees = [lie.degree_of(c) for c in cols]
        n = lie.dim
        self._br: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
        for a in range(n):
            for b in range(n):
                v = lie.bracket(cols[a], cols[b])
                if any(v):
                    y = self.P_inv @ v
                    self._br[(a, b)] = [(k, c) for k, c in enumerate(y) if c]
        self._memo: dict[tuple, dict] = {}
        self._basis_cache: dict[int | None, list[tuple]] = {}

    # conversions ------------------------------------------------------------
    def to_adapted(self, x: Sequence) -> tuple:
        return self.P_inv @ x

    def to_original(self, y: Sequence) -> tuple:
        return self.P @ y

    def weight(self, word: tuple) -> int:
        return sum(self.weights[a] for a in word)

    def word_degree(self, word: tuple) -> int:
        return sum(self.degrees[a] for a in word)

    # PBW basis --------------------------------------------------------------
    def pbw_basis(self, degree: int | None = None) -> list[tuple]:
        """PBW words of weight < W (of the given total degree, if any)."""
        hit = self._basis_cache.get(degree)
        if hit is not None:
            return hit
        out: list[tuple] = []
        n = self.lie.dim
        W = self.word_cutoff

        def rec(start: int, acc: list[int], wt: int):
            if degree is None or self.word_degree(tuple(acc)) == degree:
                out.append(tuple(acc))
            for a in range(start, n):
                if wt + self.weights[a] >= W:
                    continue
                if degree is not None and self.word_degree(tuple(acc)) + self.degrees[a] > degree:
                    continue
                odd = self.degrees[a] % 2 == 1
                rec(a + 1 if odd else a, acc + [a], wt + self.weights[a])

        rec(0, [], 0)
        out.sort(key=lambda w: (len(w), w))
        self._basis_cache[degree] = out
        return out

    # multiplication -----------------------------------------------------------
    def straighten(self, word: tuple) -> dict:
        """Rewrite an arbitrary word as a combination of PBW words."""
        if self.weight(word) >= self.word_cutoff:
            return {}
        hit = self._memo.get(word)
        if hit is not None:
            return hit
        out: dict = {}
        for p in range(len(word) - 1):
            a, b = word[p], word[p + 1]
            if a > b:
                s = _sign(self.degrees[a] * self.degrees[b])
                _acc(out, self.straighten(word[:p] + (b, a) + word[p + 2:]), s)
                for k, c in self._br.get((a, b), ()):
                    _acc(out, self.straighten(word[:p] + (k,) + word[p + 2:]), c)
                break
            if a == b and self.degrees[a] % 2:
                for k, c in self._br.get((a, a), ()):
                    _acc(out, self.straighten(word[:p] + (k,) + word[p + 2:]), c / 2)
                break
        else:
            out = {word: F1}
        self._memo[word] = out
        return out

    def mul(self, x: dict, y: dict) -> dict:
        W = self.word_cutoff
        out: dict = {}
        for w1, c1 in x.items():
            wt1 = self.weight(w1)
            for w2, c2 in y.items():
                if wt1 + self.weight(w2) >= W:
                    continue
                _acc(out, self.straighten(w1 + w2), c1 * c2)
        return out

    def one(self) -> dict:
        return {(): F1}

    def from_lie(self, x: Sequence) -> dict:
        """Embed a Lie element given in original coordinates."""
        y = self.to_adapted(x)
        return {(k,): c for k, c in enumerate(y) if c}

    def to_lie(self, u: dict) -> tuple:
        """Original Lie coordinates of an element of word length exactly 1."""
        y = [F0] * self.lie.dim
        for w, c in u.items():
            if len(w) != 1:
                raise ValueError("element is not primitive (has words of length != 1)")
            y[w[0]] = c
        return self.to_original(y)

    def commutator(self, x: dict, dx: int, y: dict, dy: int) -> dict:
        out = dict(self.mul(x, y))
        _acc(out, self.mul(y, x), -_sign(dx * dy))
        return {w: c for w, c in out.items() if c}

    # exp / log ----------------------------------------------------------------
    def exp(self, x: Sequence) -> dict:
        """``sum x^n / n!`` for a degree-0 Lie element (original coordinates)."""
        if self.lie.degree_of(x) not in (0, None):
            raise ValueError("exp is defined on degree-0 elements")
        u = self.from_lie(x)
        out = self.one()
        power = self.one()
        for n in range(1, self.word_cutoff):
            power = self.mul(power, u)
            if not power:
                break
            _acc(out, power, Fraction(1, factorial(n)))
        return out

    def log(self, u: dict) -> tuple:
        """Inverse of :meth:`exp`; the input must be a group-like unit."""
        if u.get((), F0) != 1:
            raise ValueError("log needs a unit with constant term 1")
        z = {w: c for w, c in u.items() if w}
        out: dict = {}
        power = self.one()
        for n in range(1, self.word_cutoff):
            power = self.mul(power, z)
            if not power:
                break
            _acc(out, power, Fraction(_sign(n + 1), n))
        out = {w: c for w, c in out.items() if c}
        try:
            return self.to_lie(out)
        except ValueError:
            raise ValueError("log of this unit is not a Lie element (input is not group-like)") from None


def _acc(out: dict, terms: dict, scale) -> None:
    for w, c in terms.items():
        v = out.get(w, F0) + scale * c
        if v:
            out[w] = v
        else:
            out.pop(w, None)


# groups in log coordinates ------------------------------------------------------

@dataclass(frozen=True)
class GroupElement:
    """Element of the nilpotent group, stored as a degree-0 Lie element."""

    context: ULTruncation = field(compare=False)
    log_coords: tuple

    def lie_element(self) -> LieElement:
        return LieElement(self.context.lie, self.log_coords)

    def __repr__(self) -> str:
        return f"exp({self.context.lie.format(self.log_coords)})"


def group_element(ul: ULTruncation, x: Sequence | LieElement) -> GroupElement:
    coords = tuple(Fraction(c) for c in (x.coords if isinstance(x, LieElement) else x))
    if ul.lie.degree_of(coords) not in (0, None):
        raise ValueError("group elements are degree-0 Lie elements")
    return GroupElement(ul, coords)


def _same(g: GroupElement, h: GroupElement) -> ULTruncation:
    if g.context is not h.context:
        raise ValueError("group elements come from different truncations")
    return g.context


def group_mul(g: GroupElement, h: GroupElement) -> GroupElement:
    ul = _same(g, h)
    return GroupElement(ul, ul.log(ul.mul(ul.exp(g.log_coords), ul.exp(h.log_coords))))


def group_identity(ul: ULTruncation) -> GroupElement:
    return GroupElement(ul, ul.lie.zero())


def group_inverse(g: GroupElement) -> GroupElement:
    return GroupElement(g.context, tuple(-c for c in g.log_coords))


def group_pow(g: GroupElement, p: int) -> GroupElement:
    """``g^p`` by repeated multiplication (p >= 0)."""
    out = group_identity(g.context)
    for _ in range(p):
        out = group_mul(out, g)
    return out


def nth_root(g: GroupElement, p: int) -> GroupElement:
    if p <= 0:
        raise ValueError("root index must be a positive integer")
    return GroupElement(g.context, tuple(c / p for c in g.log_coords))


def group_commutator(g: GroupElement, h: GroupElement) -> GroupElement:
    """``g h g^-1 h^-1``."""
    return group_mul(group_mul(g, h), group_mul(group_inverse(g), group_inverse(h)))


# Whitehead products ----------------------------------------------------------------

def adjoint_exp(L: GradedLieAlgebra, x: Sequence, y: Sequence) -> tuple:
    """``exp(ad x)(y)`` for degree-0 ``x``; fails unless ad x is nilpotent on y."""
    out = list(y)
    term = tuple(y)
    for n in range(1, L.dim + 2):
        term = tuple(c / n for c in L.bracket(x, term))
        if not any(term):
            return tuple(out)
        out = [a + b for a, b in zip(out, term)]
    raise TruncationError("ad x is not nilpotent on y")


@dataclass
class WhiteheadResult:
    case: int
    value: tuple   # desuspended result in original Lie coordinates


def whitehead(ul: ULTruncation, x: Sequence, y: Sequence) -> WhiteheadResult:
    """Whitehead product of ``s x`` and ``s y`` computed in the Lie algebra.

    case 1: both degrees >= 1, value ``(-1)^{|x|} [x, y]``;
    case 2: ``|x| = 0``, ``|y| >= 1``, value ``exp(ad x) y - y``;
    case 3: both degree 0, value ``log`` of the group commutator.
    """
    L = ul.lie
    dx, dy = L.degree_of(x), L.degree_of(y)
    dx = 0 if dx is None else dx
    dy = 0 if dy is None else dy
    if dx >= 1 and dy >= 1:
        return WhiteheadResult(1, tuple(_sign(dx) * c for c in L.bracket(x, y)))
    if dx == 0 and dy >= 1:
        ad = adjoint_exp(L, x, y)
        return WhiteheadResult(2, tuple(a - b for a, b in zip(ad, y)))
    if dx == 0 and dy == 0:
        if not ul.nilpotent:
            raise TruncationError("group commutator needs a nilpotent Lie algebra")
        g = group_commutator(group_element(ul, x), group_element(ul, y))
        return WhiteheadResult(3, g.log_coords)
    raise NotImplementedError("Whitehead product with |x| >= 1 and |y| = 0 is not implemented")


# group lower central series ---------------------------------------------------------

@dataclass
class GroupLcs:
    """``G^r`` as subspaces of log coordinates (``terms[r - 1]``)."""

    terms: list[Subspace]

    def quotient_dims(self) -> list[int]:
        return [self.terms[i].dim - self.terms[i + 1].dim for i in range(len(self.terms) - 1)]


@dataclass
class LazardReport:
    ok: bool
    checked: int
    witness: tuple | None = None


def _degree_zero(L: GradedLieAlgebra) -> Subspace:
    return Subspace.coordinate(L.dim, [i for i, d in enumerate(L.degrees) if d == 0])


def group_lcs(ul: ULTruncation, r: int | None = None) -> GroupLcs:
    """``G^k = exp(L^k intersected with L_0)`` for k = 1..r (default: until trivial)."""
    L = ul.lie
    chain = lcs(L)
    L0 = _degree_zero(L)
    top = len(chain.terms) + 1 if r is None else r
    terms = []
    for k in range(1, top + 1):
        try:
            Lk = chain.term(k)
        except IndexError:
            Lk = Subspace.zero(L.dim)
        terms.append(Lk.intersect(L0))
    return GroupLcs(terms)


def lazard_check(ul: ULTruncation) -> LazardReport:
    """Commutators of representatives of ``G^r/G^{r+1}`` and ``G^s/G^{s+1}``
    lie in ``G^{r+s}`` and agree with the Lie bracket modulo ``G^{r+s+1}``."""
    L = ul.lie
    G = group_lcs(ul)
    zero = Subspace.zero(L.dim)

    def T(k: int) -> Subspace:
        return G.terms[k - 1] if k <= len(G.terms) else zero

    checked = 0
    for r in range(1, len(G.terms) + 1):
        for s in range(1, len(G.terms) + 1):
            for a in quotient_basis(T(r), T(r + 1)):
                for b in quotient_basis(T(s), T(s + 1)):
                    comm = group_commutator(group_element(ul, a), group_element(ul, b)).log_coords
                    diff = tuple(x - y for x, y in zip(comm, L.bracket(a, b)))
                    checked += 1
                    if comm not in T(r + s) or diff not in T(r + s + 1):
                        return LazardReport(False, checked, (r, s, a, b))
    return LazardReport(True, checked)


# the S^1 v S^3 series action ---------------------------------------------------------

@dataclass(frozen=True)
class SeriesElement:
    """Truncated power series ``sum coeffs[n] t^n``, n <= N."""

    coeffs: tuple

    @classmethod
    def of(cls, coeffs: Iterable, N: int | None = None) -> "SeriesElement":
        c = [Fraction(x) for x in coeffs]
        if N is not None:
            c = (c + [F0] * (N + 1))[: N + 1]
        return cls(tuple(c))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "SeriesElement") -> "SeriesElement":
        N = min(self.order, other.order)
        return SeriesElement(tuple(sum((self.coeffs[i] * other.coeffs[n - i] for i in range(n + 1)), F0)
                                   for n in range(N + 1)))

    def __add__(self, other: "SeriesElement") -> "SeriesElement":
        return SeriesElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "SeriesElement":
        c = Fraction(c)
        return SeriesElement(tuple(c * a for a in self.coeffs))


def exp_series(c, N: int) -> SeriesElement:
    c = Fraction(c)
    return SeriesElement(tuple(c ** n / factorial(n) for n in range(N + 1)))


def series_action(alpha: GroupElement | Fraction | int, g: SeriesElement) -> SeriesElement:
    """``exp(t c) * g(t)`` where c is the coordinate of ``log alpha`` on the degree-0 generator."""
    if isinstance(alpha, GroupElement):
        L = alpha.context.lie
        zero_deg = [i for i, d in enumerate(L.degrees) if d == 0]
        if len(zero_deg) != 1:
            raise ValueError("series action needs a Lie algebra with a single degree-0 basis element")
        c = alpha.log_coords[zero_deg[0]]
    else:
        c = Fraction(alpha)
    return exp_series(c, g.order) * g


# induced maps on homotopy -----------------------------------------------------------

def pi_of_morphism(phi: SullivanMorphism) -> RatMatrix:
    """Map ``L_W -> L_V`` induced by ``phi: wedge V -> wedge W``: the transpose of
    its linear part (rows: V generators, columns: W generators)."""
    return phi.linear_part().T
