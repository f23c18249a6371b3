"""Exact scalars and dense matrices over the Gaussian rationals.

Every entry is a complex number whose real and imaginary parts are
arbitrary-precision `fractions.Fraction` values, so all arithmetic in this
module is exact: no rounding, no tolerances, and equality is decidable.
All values are immutable; operations return new objects and can be shared
freely across threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatchError

_ZERO = Fraction(0)
_ONE = Fraction(1)

ScalarLike = Union[int, Fraction, "GaussianRational"]


def _gr(re: Fraction, im: Fraction) -> "GaussianRational":
    # Internal fast constructor; callers guarantee both parts are Fractions.
    s = object.__new__(GaussianRational)
    s.re = re
    s.im = im
    return s


class GaussianRational:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction = 0, im: int | Fraction = 0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def __add__(self, other: ScalarLike) -> "GaussianRational":
        other = as_scalar(other)
        if self.im or other.im:
            return _gr(self.re + other.re, self.im + other.im)
        return _gr(self.re + other.re, _ZERO)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "GaussianRational":
        other = as_scalar(other)
        if self.im or other.im:
            return _gr(self.re - other.re, self.im - other.im)
        return _gr(self.re - other.re, _ZERO)

    def __rsub__(self, other: ScalarLike) -> "GaussianRational":
        return as_scalar(other) - self

    def __neg__(self) -> "GaussianRational":
        return _gr(-self.re, -self.im)

    def __mul__(self, other: ScalarLike) -> "GaussianRational":
        other = as_scalar(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if b or d:
            return _gr(a * c - b * d, a * d + b * c)
        return _gr(a * c, _ZERO)

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "GaussianRational":
        other = as_scalar(other)
        if not (other.re or other.im):
            raise ZeroDivisionError("division by exact zero")
        if not other.im:
            c = other.re
            return _gr(self.re / c, self.im / c)
        den = other.abs_sq()
        a, b, c, d = self.re, self.im, other.re, other.im
        return _gr((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other: ScalarLike) -> "GaussianRational":
        return as_scalar(other) / self

    def conjugate(self) -> "GaussianRational":
        if self.im:
            return _gr(self.re, -self.im)
        return self

    def abs_sq(self) -> Fraction:
        """|z|^2 = re^2 + im^2, exact."""
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        # Real values hash like their Fraction so x == Fraction(p, q)
        # implies equal hashes.
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self) -> str:
        return f"GaussianRational({str(self)!r})"

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


ZERO = _gr(_ZERO, _ZERO)
ONE = _gr(_ONE, _ZERO)
I_UNIT = _gr(_ZERO, _ONE)


def as_scalar(value: ScalarLike) -> GaussianRational:
    """Coerce an int, Fraction or GaussianRational to a GaussianRational."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, Fraction):
        return _gr(value, _ZERO)
    if isinstance(value, int):
        return _gr(Fraction(value), _ZERO)
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact scalar")


class Matrix:
    """Immutable dense matrix of GaussianRational entries, row-major.

    Zero row or column counts are allowed; they arise naturally in the
    rank-0 full-rank factorization (an n x 0 times 0 x n product is the
    n x n zero matrix).
    """

    __slots__ = ("rows", "cols", "_entries", "_all_real", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable[ScalarLike]):
        if rows < 0 or cols < 0:
            raise DimensionMismatchError(f"negative dimensions {rows}x{cols}")
        data = tuple(as_scalar(e) for e in entries)
        if len(data) != rows * cols:
            raise DimensionMismatchError(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(data)}"
            )
        self.rows = rows
        self.cols = cols
        self._entries = data
        self._all_real = all(e.is_real for e in data)
        self._hash = None

    @staticmethod
    def _make(rows: int, cols: int, entries: tuple, all_real: bool) -> "Matrix":
        m = object.__new__(Matrix)
        m.rows = rows
        m.cols = cols
        m._entries = entries
        m._all_real = all_real
        m._hash = None
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]]) -> "Matrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatchError("ragged rows")
            flat.extend(r)
        return cls(nrows, ncols, flat)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [ZERO] * (rows * cols))

    def __getitem__(self, key: tuple[int, int]) -> GaussianRational:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index ({i}, {j}) out of range for {self.shape_str()}")
        return self._entries[i * self.cols + j]

    def row_list(self, i: int) -> list[GaussianRational]:
        return list(self._entries[i * self.cols : (i + 1) * self.cols])

    def to_lists(self) -> list[list[GaussianRational]]:
        return [self.row_list(i) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_real(self) -> bool:
        return self._all_real

    def shape_str(self) -> str:
        return f"{self.rows}x{self.cols}"

    def _require_same_shape(self, other: "Matrix", op: str) -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatchError(
                f"cannot {op} {self.shape_str()} and {other.shape_str()} matrices"
            )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._require_same_shape(other, "add")
        entries = tuple(a + b for a, b in zip(self._entries, other._entries))
        return Matrix._make(self.rows, self.cols, entries, self._all_real and other._all_real)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._require_same_shape(other, "subtract")
        entries = tuple(a - b for a, b in zip(self._entries, other._entries))
        return Matrix._make(self.rows, self.cols, entries, self._all_real and other._all_real)

    def __neg__(self) -> "Matrix":
        return Matrix._make(
            self.rows, self.cols, tuple(-e for e in self._entries), self._all_real
        )

    def scale(self, factor: ScalarLike) -> "Matrix":
        f = as_scalar(factor)
        return Matrix._make(
            self.rows,
            self.cols,
            tuple(f * e for e in self._entries),
            self._all_real and f.is_real,
        )

    def __mul__(self, factor: ScalarLike) -> "Matrix":
        return self.scale(factor)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.shape_str()} by {other.shape_str()}"
            )
        n, k, m = self.rows, self.cols, other.cols
        if n == 0 or m == 0 or k == 0:
            return Matrix.zeros(n, m)
        if self._all_real and other._all_real:
            # Hot path: plain Fraction arithmetic, wrapped once at the end.
            a = [e.re for e in self._entries]
            b = [e.re for e in other._entries]
            out = []
            for i in range(n):
                base = i * k
                for j in range(m):
                    acc = a[base] * b[j]
                    for t in range(1, k):
                        acc += a[base + t] * b[t * m + j]
                    out.append(_gr(acc, _ZERO))
            return Matrix._make(n, m, tuple(out), True)
        ae = self._entries
        be = other._entries
        out = []
        for i in range(n):
            base = i * k
            for j in range(m):
                acc = ae[base] * be[j]
                for t in range(1, k):
                    acc = acc + ae[base + t] * be[t * m + j]
                out.append(acc)
        return Matrix._make(n, m, tuple(out), False)

    def conjugate_transpose(self) -> "Matrix":
        """The adjoint a*: conjugate of every entry, transposed."""
        out = []
        for j in range(self.cols):
            for i in range(self.rows):
                out.append(self._entries[i * self.cols + j].conjugate())
        return Matrix._make(self.cols, self.rows, tuple(out), self._all_real)

    @property
    def H(self) -> "Matrix":
        return self.conjugate_transpose()

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionMismatchError(
                f"cannot hstack {self.shape_str()} and {other.shape_str()}"
            )
        out = []
        for i in range(self.rows):
            out.extend(self._entries[i * self.cols : (i + 1) * self.cols])
            out.extend(other._entries[i * other.cols : (i + 1) * other.cols])
        return Matrix._make(
            self.rows, self.cols + other.cols, tuple(out), self._all_real and other._all_real
        )

    def column(self, j: int) -> "Matrix":
        """The j-th column as a rows x 1 matrix."""
        return Matrix._make(
            self.rows,
            1,
            tuple(self._entries[i * self.cols + j] for i in range(self.rows)),
            self._all_real,
        )

    def select_columns(self, indices: Sequence[int]) -> "Matrix":
        out = []
        for i in range(self.rows):
            base = i * self.cols
            out.extend(self._entries[base + j] for j in indices)
        return Matrix._make(self.rows, len(indices), tuple(out), self._all_real)

    def is_zero(self) -> bool:
        return not any(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self._entries == other._entries
        )

    def __hash__(self) -> int:
        # Entry hashes reduce the Fractions modulo a prime, which is not
        # free; matrices are immutable, so compute once.
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._entries))
        return self._hash

    def __str__(self) -> str:
        rows = ["[" + ", ".join(str(e) for e in self.row_list(i)) + "]" for i in range(self.rows)]
        return "[" + ", ".join(rows) + "]"

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols} {self})"
