"""Exact linear algebra over the Gaussian rationals Q(i).

Rationals are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  :class:`GaussianRational` pairs two of them.

Rank and determinant use fraction-free (Bareiss) elimination on Gaussian
integers: each row is scaled by the lcm of its denominators first, which
does not change the rank.  Inverse and kernel use plain Gauss-Jordan over
the field, which is fine at the sizes this toolkit handles.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Sequence

from .errors import SingularMatrixError

__all__ = [
    "GaussianRational",
    "ExactMatrix",
    "as_gq",
    "rank",
    "determinant",
    "inverse",
    "kernel_basis",
]


class GaussianRational:
    """An element re + im*i of Q(i) with exact equality."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("cannot combine GaussianRational with an imaginary part")
            self.re, self.im = re.re, re.im
            return
        if not isinstance(re, (int, Rational)) or not isinstance(im, (int, Rational)):
            raise TypeError(f"exact rational parts required, got {re!r}, {im!r}")
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if not self.im and not o.im:
            return GaussianRational._raw(self.re * o.re, Fraction(0))
        return GaussianRational._raw(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if not o:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def reciprocal(self) -> "GaussianRational":
        nrm = self.norm()
        if not nrm:
            raise ZeroDivisionError("reciprocal of zero")
        return GaussianRational._raw(self.re / nrm, -self.im / nrm)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        """|z|^2, an exact rational."""
        return self.re * self.re + self.im * self.im

    # comparisons / conversions ---------------------------------------------
    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        if not self.im:
            return f"GQ({self.re})"
        return f"GQ({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Rational)):
        return GaussianRational._raw(Fraction(x), Fraction(0))
    return NotImplemented


def as_gq(x) -> GaussianRational:
    """Coerce an int, Fraction or GaussianRational; floats are refused."""
    if type(x) is GaussianRational:
        return x
    out = _coerce(x)
    if out is NotImplemented:
        raise TypeError(f"not an exact number: {x!r}")
    return out


_ZERO = GaussianRational()
_ONE = GaussianRational(1)


class ExactMatrix:
    """Immutable dense matrix of Gaussian rationals.

    The shape is stored explicitly so that 0-row matrices keep a column
    count (an empty B matrix has shape (0, m)).
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(as_gq(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged matrix")
            if ncols is not None and ncols != width:
                raise ValueError(f"declared {ncols} columns, rows have {width}")
        else:
            width = 0 if ncols is None else ncols
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", width)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, size: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(size)] for i in range(size)], ncols=size)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[GaussianRational, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self.rows), ncols=self.nrows) if self.nrows else ExactMatrix.zeros(self.ncols, 0)

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [other.column(j) for j in range(other.ncols)]
        out = []
        for row in self.rows:
            out.append([sum((a * b for a, b in zip(row, col)), _ZERO) for col in cols])
        return ExactMatrix(out, ncols=other.ncols)

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.ncols:
            raise ValueError("column counts differ")
        return ExactMatrix(self.rows + other.rows, ncols=self.ncols)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row counts differ")
        return ExactMatrix(
            (a + b for a, b in zip(self.rows, other.rows)), ncols=self.ncols + other.ncols
        )

    def select_columns(self, cols: Sequence[int]) -> "ExactMatrix":
        """Columns by 0-based index, in the given order."""
        return ExactMatrix(([r[j] for j in cols] for r in self.rows), ncols=len(cols))

    def select_rows(self, idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix((self.rows[i] for i in idx), ncols=self.ncols)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"ExactMatrix({self.nrows}x{self.ncols}: [{body}])"

    def rank(self) -> int:
        return rank(self)

    def det(self) -> GaussianRational:
        return determinant(self)

    def inverse(self) -> "ExactMatrix":
        return inverse(self)

    def kernel_basis(self) -> list[tuple[GaussianRational, ...]]:
        return kernel_basis(self)


# -- Gaussian-integer Bareiss ---------------------------------------------------

def _integral_rows(M: ExactMatrix) -> tuple[list[list[tuple[int, int]]], Fraction]:
    """Scale every row to Gaussian integers.

    Returns the scaled rows (entries as (re, im) int pairs) and the product of
    the scale factors, needed to recover the determinant.
    """
    out = []
    scale = Fraction(1)
    for row in M.rows:
        d = 1
        for x in row:
            d = lcm(d, x.re.denominator, x.im.denominator)
        out.append([
            (x.re.numerator * (d // x.re.denominator), x.im.numerator * (d // x.im.denominator))
            for x in row
        ])
        scale *= d
    return out, scale


def _bareiss(a: list[list[tuple[int, int]]], ncols: int) -> tuple[int, tuple[int, int], int]:
    """In-place fraction-free elimination.

    Returns (rank, last pivot, number of row swaps).  For a square matrix of
    full rank the last pivot is the determinant up to the swap sign.
    """
    nrows = len(a)
    prev_re, prev_im = 1, 0
    r = 0
    swaps = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and a[p][c] == (0, 0):
            p += 1
        if p == nrows:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            swaps += 1
        pr, pi = a[r][c]
        prow = a[r]
        den = prev_re * prev_re + prev_im * prev_im
        for i in range(r + 1, nrows):
            row = a[i]
            fr, fi = row[c]
            for j in range(c + 1, ncols):
                xr, xi = row[j]
                yr, yi = prow[j]
                # piv * x - f * y
                nr = pr * xr - pi * xi - (fr * yr - fi * yi)
                ni = pr * xi + pi * xr - (fr * yi + fi * yr)
                if prev_im == 0:
                    if prev_re != 1:
                        nr //= prev_re
                        ni //= prev_re
                else:
                    # multiply by conj(prev) / |prev|^2; division is exact
                    nr, ni = (nr * prev_re + ni * prev_im) // den, (ni * prev_re - nr * prev_im) // den
                row[j] = (nr, ni)
            row[c] = (0, 0)
        prev_re, prev_im = pr, pi
        r += 1
    return r, (prev_re, prev_im), swaps


def rank(M: ExactMatrix) -> int:
    """Exact rank of ``M``."""
    if M.nrows == 0 or M.ncols == 0:
        return 0
    a, _ = _integral_rows(M)
    r, _, _ = _bareiss(a, M.ncols)
    return r


def determinant(M: ExactMatrix) -> GaussianRational:
    if M.nrows != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    if M.nrows == 0:
        return _ONE
    a, scale = _integral_rows(M)
    r, (pr, pi), swaps = _bareiss(a, M.ncols)
    if r < M.nrows:
        return _ZERO
    sign = -1 if swaps % 2 else 1
    return GaussianRational(Fraction(sign * pr) / scale, Fraction(sign * pi) / scale)


# -- Gauss-Jordan over Q(i) -------------------------------------------------------

def _rref(rows: list[list[GaussianRational]], ncols: int) -> list[int]:
    """Reduced row echelon form in place; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].reciprocal()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def inverse(M: ExactMatrix) -> ExactMatrix:
    """Exact inverse; raises :class:`SingularMatrixError` when rank < size."""
    if M.nrows != M.ncols:
        raise ValueError("inverse of a non-square matrix")
    size = M.nrows
    work = [list(row) + [_ONE if i == j else _ZERO for j in range(size)] for i, row in enumerate(M.rows)]
    pivots = _rref(work, size)
    if len(pivots) < size:
        raise SingularMatrixError(f"matrix has rank {len(pivots)} < {size}")
    return ExactMatrix((row[size:] for row in work), ncols=size)


def kernel_basis(M: ExactMatrix) -> list[tuple[GaussianRational, ...]]:
    """Basis of the right kernel, one vector per free column."""
    n = M.ncols
    work = [list(row) for row in M.rows]
    pivots = _rref(work, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [_ZERO] * n
        v[f] = _ONE
        for i, pc in enumerate(pivots):
            v[pc] = -work[i][f]
        basis.append(tuple(v))
    return basis
