"""Free graded-commutative algebras over Q.

Monomials are tuples of generator indices kept in canonical order: factors are
sorted by ``(degree, index)``.  Odd generators square to zero, so they appear at
most once; even generators (degree 0 included) are polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .ratlin import RatMatrix

Monomial = tuple  # tuple[int, ...]
UNIT: Monomial = ()


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int


class GradedSpace:
    """An ordered list of named, graded generators."""

    def __init__(self, generators: Iterable[Generator | tuple[str, int]]):
        gens = []
        for g in generators:
            if not isinstance(g, Generator):
                g = Generator(str(g[0]), int(g[1]))
            if g.degree < 0:
                raise ValueError(f"generator {g.name!r} has negative degree {g.degree}")
            gens.append(g)
        self.generators: tuple[Generator, ...] = tuple(gens)
        self._index = {g.name: i for i, g in enumerate(self.generators)}
        if len(self._index) != len(self.generators):
            raise ValueError("generator names must be unique")
        self._keys = tuple((g.degree, i) for i, g in enumerate(self.generators))

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedSpace) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self) -> str:
        return "GradedSpace(" + ", ".join(f"{g.name}:{g.degree}" for g in self.generators) + ")"

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def degree(self, i: int) -> int:
        return self.generators[i].degree

    def is_odd(self, i: int) -> bool:
        return self.generators[i].degree % 2 == 1

    def key(self, i: int) -> tuple[int, int]:
        return self._keys[i]

    def degrees(self) -> list[int]:
        return [g.degree for g in self.generators]

    def ids_of_degree(self, n: int) -> list[int]:
        return [i for i, g in enumerate(self.generators) if g.degree == n]

    def concat(self, other: "GradedSpace") -> "GradedSpace":
        return GradedSpace(self.generators + other.generators)

    def monomial_degree(self, m: Monomial) -> int:
        return sum(self.generators[i].degree for i in m)

    def monomial_str(self, m: Monomial) -> str:
        if not m:
            return "1"
        parts = []
        i = 0
        while i < len(m):
            j = i
            while j < len(m) and m[j] == m[i]:
                j += 1
            name = self.generators[m[i]].name
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)


def normalize(space: GradedSpace, word: Sequence[int]) -> tuple[int, Monomial]:
    """Sort a word of generators into canonical order.

    Returns ``(sign, monomial)``; ``sign`` is 0 when an odd generator repeats.
    Swapping adjacent odd factors costs a sign, any other swap is free.
    """
    n = len(space)
    for g in word:
        if not 0 <= g < n:
            raise KeyError(f"unknown generator id {g}")
    odd = [g for g in word if space.is_odd(g)]
    if len(set(odd)) != len(odd):
        return 0, UNIT
    inversions = 0
    for a in range(len(odd)):
        ka = space.key(odd[a])
        for b in range(a + 1, len(odd)):
            if ka > space.key(odd[b]):
                inversions += 1
    mono = tuple(sorted(word, key=space.key))
    return (-1 if inversions % 2 else 1), mono


def _merge(space: GradedSpace, m1: Monomial, m2: Monomial) -> tuple[int, Monomial]:
    if not m1:
        return 1, m2
    if not m2:
        return 1, m1
    return normalize(space, m1 + m2)


class Element:
    """Homogeneous element of the free graded-commutative algebra on ``space``."""

    __slots__ = ("space", "degree", "terms")

    def __init__(self, space: GradedSpace, degree: int, terms: Mapping[Monomial, Fraction] | None = None):
        self.space = space
        self.degree = degree
        clean = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(m)] = c
        for m in clean:
            if space.monomial_degree(m) != degree:
                raise ValueError(
                    f"monomial {space.monomial_str(m)} has degree {space.monomial_degree(m)}, expected {degree}")
        self.terms: dict[Monomial, Fraction] = clean

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, space: GradedSpace, degree: int) -> "Element":
        return cls(space, degree)

    @classmethod
    def one(cls, space: GradedSpace) -> "Element":
        return cls(space, 0, {UNIT: Fraction(1)})

    @classmethod
    def gen(cls, space: GradedSpace, g: int | str) -> "Element":
        i = space.index(g) if isinstance(g, str) else g
        return cls(space, space.degree(i), {(i,): Fraction(1)})

    @classmethod
    def monomial(cls, space: GradedSpace, word: Sequence[int], coeff=1) -> "Element":
        sign, m = normalize(space, word)
        deg = sum(space.degree(i) for i in word)
        return cls(space, deg, {m: Fraction(coeff) * sign} if sign else {})

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Element") -> None:
        if other.space is not self.space and other.space != self.space:
            raise ValueError("elements live in different algebras")
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        deg = self.degree if self.terms or not other.terms else other.degree
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Element(self.space, deg, out)

    def __neg__(self) -> "Element":
        return Element(self.space, self.degree, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c) -> "Element":
        c = Fraction(c)
        return Element(self.space, self.degree, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        if self.space != other.space:
            return False
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # structure ----------------------------------------------------------
    def wedge_component(self, p: int) -> "Element":
        return Element(self.space, self.degree, {m: c for m, c in self.terms.items() if len(m) == p})

    def min_wedge_degree(self) -> int | None:
        return min((len(m) for m in self.terms), default=None)

    def generators_used(self) -> set[int]:
        return {g for m in self.terms for g in m}

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _basis_key(self.space, t[0]))

    def __repr__(self) -> str:
        return format_element(self)


def _basis_key(space: GradedSpace, m: Monomial):
    return (len(m), tuple(space.key(i) for i in m))


def format_element(e: Element) -> str:
    if not e.terms:
        return "0"
    out = []
    for m, c in e.sorted_terms():
        mono = e.space.monomial_str(m)
        mag = abs(c)
        if mono == "1":
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append((" + " if c > 0 else " - ") + body)
    return "".join(out)


def multiply(a: Element, b: Element) -> Element:
    if a.space != b.space:
        raise ValueError("elements live in different algebras")
    space = a.space
    out: dict[Monomial, Fraction] = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            sign, m = _merge(space, m1, m2)
            if sign:
                out[m] = out.get(m, 0) + sign * c1 * c2
    return Element(space, a.degree + b.degree, out)


def monomial_basis(space: GradedSpace, degree: int, max_length: int | None = None,
                   allowed: Iterable[int] | None = None, min_length: int = 0) -> list[Monomial]:
    """All canonical monomials of total degree ``degree``, in graded-lex order.

    Degree-0 generators make every degree infinite-dimensional, so a
    ``max_length`` is then mandatory.
    """
    if degree < 0:
        return []
    ids = sorted(range(len(space)) if allowed is None else set(allowed), key=space.key)
    if max_length is None and any(space.degree(i) == 0 for i in ids):
        raise ValueError("max_length is required when degree-0 generators are present")
    out: list[Monomial] = []

    def rec(pos: int, remaining: int, acc: list[int]):
        if pos == len(ids) or space.degree(ids[pos]) > remaining:
            if remaining == 0 and len(acc) >= min_length:
                out.append(tuple(acc))
            return
        g = ids[pos]
        d = space.degree(g)
        if space.is_odd(g):
            cap = 1
        elif d:
            cap = remaining // d
        else:
            cap = max_length - len(acc)
        if max_length is not None:
            cap = min(cap, max_length - len(acc))
        for k in range(cap + 1):
            rec(pos + 1, remaining - k * d, acc + [g] * k)

    rec(0, degree, [])
    out.sort(key=lambda m: _basis_key(space, m))
    return out


def coordinates(e: Element, basis: Sequence[Monomial], index: Mapping[Monomial, int] | None = None) -> tuple:
    """Coordinate vector of ``e`` against a monomial basis."""
    index = index or {m: i for i, m in enumerate(basis)}
    vec = [Fraction(0)] * len(basis)
    for m, c in e.terms.items():
        try:
            vec[index[m]] = c
        except KeyError:
            raise ValueError(f"monomial {e.space.monomial_str(m)} is outside the given basis") from None
    return tuple(vec)


def from_coordinates(space: GradedSpace, degree: int, basis: Sequence[Monomial], vec: Iterable) -> Element:
    return Element(space, degree, {m: c for m, c in zip(basis, vec) if c})


class Derivation:
    """A derivation of degree ``shift``, given by its values on generators.

    Generators missing from ``values`` are sent to zero.
    """

    def __init__(self, space: GradedSpace, shift: int, values: Mapping[int | str, Element] | None = None):
        self.space = space
        self.shift = shift
        vals: dict[int, Element] = {}
        for g, e in (values or {}).items():
            i = space.index(g) if isinstance(g, str) else g
            if not 0 <= i < len(space):
                raise KeyError(f"unknown generator id {i}")
            if e.space != space:
                raise ValueError("derivation value lives in a different algebra")
            if e.terms and e.degree != space.degree(i) + shift:
                raise ValueError(
                    f"value on {space.generators[i].name} has degree {e.degree}, "
                    f"expected {space.degree(i) + shift}")
            if e.terms:
                vals[i] = e
        self.values = vals
        self._cache: dict[Monomial, Element] = {}

    def on_generator(self, i: int) -> Element:
        v = self.values.get(i)
        if v is None:
            return Element.zero(self.space, self.space.degree(i) + self.shift)
        return v

    def __call__(self, e: Element) -> Element:
        return apply_derivation(self, e)

    def _on_monomial(self, m: Monomial) -> Element:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        space = self.space
        deg = space.monomial_degree(m) + self.shift
        out = Element.zero(space, deg)
        prefix_deg = 0
        for p, g in enumerate(m):
            val = self.values.get(g)
            if val is not None:
                sign = -1 if (self.shift * prefix_deg) % 2 else 1
                left = Element(space, prefix_deg, {m[:p]: Fraction(sign)})
                rest = m[p + 1:]
                right = Element(space, space.monomial_degree(rest), {rest: Fraction(1)})
                out = out + multiply(multiply(left, val), right)
            prefix_deg += space.degree(g)
        self._cache[m] = out
        return out

    def is_zero(self) -> bool:
        return not self.values

    def restricted(self, keep: Callable[[Monomial], bool]) -> "Derivation":
        """Derivation whose generator values keep only the monomials accepted by ``keep``."""
        vals = {g: Element(self.space, v.degree, {m: c for m, c in v.terms.items() if keep(m)})
                for g, v in self.values.items()}
        return Derivation(self.space, self.shift, vals)

    def compose_on_generators(self, other: "Derivation") -> dict[int, Element]:
        """Values of ``self o other`` on generators."""
        return {i: apply_derivation(self, other.on_generator(i)) for i in range(len(self.space))}

    def __repr__(self) -> str:
        body = ", ".join(f"{self.space.generators[g].name} -> {v}" for g, v in sorted(self.values.items()))
        return f"Derivation(shift={self.shift}; {body})"


def apply_derivation(theta: Derivation, e: Element) -> Element:
    if e.space != theta.space:
        raise ValueError("element lives outside the derivation's algebra")
    out = Element.zero(theta.space, e.degree + theta.shift)
    for m, c in e.terms.items():
        out = out + theta._on_monomial(m).scale(c)
    return out


def linear_map_matrix(fn: Callable[[Element], Element], space: GradedSpace, degree: int,
                      src_basis: Sequence[Monomial], tgt_basis: Sequence[Monomial] | None = None,
                      ) -> tuple[RatMatrix, list[Monomial]]:
    """Matrix of a linear map on monomials.  Without ``tgt_basis`` the target
    basis is collected from the images."""
    images = [fn(Element(space, degree, {m: Fraction(1)})) for m in src_basis]
    if tgt_basis is None:
        seen = {mm for img in images for mm in img.terms}
        tgt_basis = sorted(seen, key=lambda mm: _basis_key(space, mm))
    idx = {m: i for i, m in enumerate(tgt_basis)}
    cols = [coordinates(img, tgt_basis, idx) for img in images]
    return RatMatrix.from_columns(cols, len(tgt_basis)), list(tgt_basis)


def matrix_of_derivation(theta: Derivation, degree: int, max_length: int | None = None) -> RatMatrix:
    """Matrix of ``theta`` from the degree-n monomial basis to degree n + shift.

    With ``max_length`` the source is cut to short monomials and the target
    basis is the short monomials plus whatever longer ones the images reach.
    """
    space = theta.space
    src = monomial_basis(space, degree, max_length)
    tgt = monomial_basis(space, degree + theta.shift, max_length)
    if max_length is not None:
        extra = set()
        for m in src:
            extra.update(theta._on_monomial(m).terms)
        extra.difference_update(tgt)
        tgt = tgt + sorted(extra, key=lambda mm: _basis_key(space, mm))
    mat, _ = linear_map_matrix(theta, space, degree, src, tgt)
    return mat


def substitute(e: Element, images: Mapping[int, Element], target: GradedSpace) -> Element:
    """Apply the algebra morphism determined by generator ``images`` to ``e``."""
    out = Element.zero(target, e.degree)
    for m, c in e.terms.items():
        term = Element.one(target)
        for g in m:
            img = images.get(g)
            if img is None:
                img = Element.zero(target, e.space.degree(g))
            term = multiply(term, img)
            if not term.terms:
                break
        out = out + term.scale(c)
    return out


def embed(e: Element, target: GradedSpace, id_map: Mapping[int, int]) -> Element:
    """Rename generators of ``e`` into ``target`` (an injective relabelling)."""
    out: dict[Monomial, Fraction] = {}
    for m, c in e.terms.items():
        sign, mm = normalize(target, [id_map[g] for g in m])
        if sign:
            out[mm] = out.get(mm, 0) + sign * c
    return Element(target, e.degree, out)
