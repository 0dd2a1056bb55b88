"""Exact linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries and never falls
back to floating point.  Matrices are dense row lists (row reduction works on
sparse rows internally); subspaces are kept
in reduced row-echelon form so that two subspaces are equal exactly when their
stored bases are equal.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]
F0 = Fraction(0)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def as_vector(values: Iterable) -> Vector:
    return tuple(_frac(v) for v in values)


class RatMatrix:
    """Immutable dense matrix with rational entries.

    The shape is stored explicitly so that 0 x n and n x 0 matrices behave.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(as_vector(r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        self.nrows = len(data)
        self.ncols = ncols
        self.rows = data

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        z = Fraction(0)
        return cls([[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "RatMatrix":
        cols = [as_vector(c) for c in columns]
        return cls([[c[i] for c in cols] for i in range(nrows)], len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix([self.column(j) for j in range(self.ncols)], self.nrows)

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = [other.column(j) for j in range(other.ncols)]
            return RatMatrix(
                [[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols]
                 for r in self.rows],
                other.ncols,
            )
        vec = as_vector(other)
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(r, vec) if a and b), Fraction(0)) for r in self.rows)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "RatMatrix":
        c = _frac(c)
        return RatMatrix([[c * a for a in r] for r in self.rows], self.ncols)

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(a) for a in r) for r in self.rows)
        return f"RatMatrix({self.nrows}x{self.ncols}: [{body}])"

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]


def sparse_rref(rows: Iterable[dict], ncols: int | None = None) -> tuple[list[dict], list[int]]:
    """Row reduction of ``{column: value}`` rows; returns the nonzero reduced rows and pivots."""
    sparse = [{j: _frac(a) for j, a in r.items() if a} for r in rows]
    cols = range(ncols) if ncols is not None else sorted({j for r in sparse for j in r})
    pivots: list[int] = []
    r = 0
    nrows = len(sparse)
    for c in cols:
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if c in sparse[i]), None)
        if p is None:
            continue
        sparse[r], sparse[p] = sparse[p], sparse[r]
        inv = 1 / sparse[r][c]
        if inv != 1:
            sparse[r] = {j: a * inv for j, a in sparse[r].items()}
        piv_row = sparse[r]
        for i in range(nrows):
            if i != r:
                row = sparse[i]
                f = row.get(c)
                if f:
                    for j, b in piv_row.items():
                        v = row.get(j, 0) - f * b
                        if v:
                            row[j] = v
                        else:
                            row.pop(j, None)
        pivots.append(c)
        r += 1
    return sparse[:r], pivots


def sparse_kernel(rows: Iterable[dict], ncols: int) -> list[dict]:
    """Basis of the null space of a sparse matrix, one ``{column: value}`` dict per vector."""
    reduced, pivots = sparse_rref(rows, ncols)
    pivot_set = set(pivots)
    out = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = {free: Fraction(1)}
        for row, p in zip(reduced, pivots):
            c = row.get(free)
            if c:
                v[p] = -c
        out.append(v)
    return out


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    reduced, pivots = sparse_rref(({j: a for j, a in enumerate(r) if a} for r in rows), ncols)
    dense = []
    for row in reduced:
        d = [F0] * ncols
        for j, a in row.items():
            d[j] = a
        dense.append(d)
    dense.extend([F0] * ncols for _ in range(len(rows) - len(reduced)))
    return dense, pivots


def rref(m: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row-echelon form and the ascending list of pivot columns."""
    rows, pivots = _rref_rows([list(r) for r in m.rows], m.ncols)
    return RatMatrix(rows, m.ncols), pivots


def rank(m: RatMatrix) -> int:
    return len(rref(m)[1])


class Subspace:
    """Subspace of Q^n stored by its reduced row-echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Iterable] = ()):
        vecs = [list(as_vector(v)) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        rows, pivots = _rref_rows(vecs, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis: tuple[Vector, ...] = tuple(tuple(r) for r in rows[: len(pivots)])
        self.pivots: tuple[int, ...] = tuple(pivots)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, RatMatrix.identity(n).rows)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        return cls(n, [[int(i == j) for i in range(n)] for j in sorted(set(indices))])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def coordinates(self, v: Iterable) -> Vector | None:
        """Coefficients of ``v`` against the echelon basis, or None if ``v`` is outside."""
        v = as_vector(v)
        coeffs = tuple(v[p] for p in self.pivots)
        recon = [Fraction(0)] * self.ambient_dim
        for c, b in zip(coeffs, self.basis):
            if c:
                for j, bj in enumerate(b):
                    if bj:
                        recon[j] += c * bj
        return coeffs if tuple(recon) == v else None

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(b in self for b in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if not self.basis or not other.basis:
            return Subspace(self.ambient_dim)
        # a.u = b.w  <=>  [A^T | -B^T] (a, b) = 0
        n = self.ambient_dim
        cols = list(self.basis) + [tuple(-x for x in b) for b in other.basis]
        m = RatMatrix.from_columns(cols, n)
        ker = kernel(m)
        out = []
        for k in ker.basis:
            a = k[: self.dim]
            out.append([sum((c * b[j] for c, b in zip(a, self.basis)), Fraction(0)) for j in range(n)])
        return Subspace(n, out)

    def matrix(self) -> RatMatrix:
        return RatMatrix(self.basis, self.ambient_dim)

    def complement_coordinates(self) -> list[int]:
        """Coordinate indices whose unit vectors complete the basis."""
        piv = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in piv]


def kernel(m: RatMatrix) -> Subspace:
    """Null space of ``m`` as a canonical subspace of Q^cols."""
    r, pivots = rref(m)
    free = [j for j in range(m.ncols) if j not in set(pivots)]
    vecs = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row_idx, p in enumerate(pivots):
            v[p] = -r.rows[row_idx][f]
        vecs.append(v)
    return Subspace(m.ncols, vecs)


def image(m: RatMatrix) -> Subspace:
    """Column space of ``m`` as a subspace of Q^rows."""
    return Subspace(m.nrows, [m.column(j) for j in range(m.ncols)])


def solve(m: RatMatrix, b: Iterable) -> Vector | None:
    """A solution of ``m x = b`` (free variables set to zero), or None.

    Having no solution is an ordinary outcome, not an error.
    """
    b = as_vector(b)
    if len(b) != m.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.nrows}")
    aug = [list(r) + [bi] for r, bi in zip(m.rows, b)]
    rows, pivots = _rref_rows(aug, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [Fraction(0)] * m.ncols
    for i, p in enumerate(pivots):
        x[p] = rows[i][m.ncols]
    return tuple(x)


def inverse(m: RatMatrix) -> RatMatrix:
    if m.nrows != m.ncols:
        raise ValueError("only square matrices are invertible")
    n = m.nrows
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows)]
    rows, pivots = _rref_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return RatMatrix([r[n:] for r in rows], n)


def quotient_basis(big: Subspace, small: Subspace) -> list[Vector]:
    """Representatives in ``big`` whose classes form a basis of big/small.

    Candidates are taken from the echelon basis of ``big`` in order, so when
    ``small`` is spanned by some of those vectors the remaining ones come back
    unchanged.
    """
    if not big.contains_subspace(small):
        raise ValueError("quotient_basis: small subspace is not contained in big")
    reps: list[Vector] = []
    acc = small
    for b in big.basis:
        if b not in acc:
            reps.append(b)
            acc = acc + Subspace(big.ambient_dim, [b])
        if acc.dim == big.dim:
            break
    return reps
