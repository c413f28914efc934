"""Exact dense linear algebra over the Gaussian rationals Q(i).

Every entry is a :class:`GaussianRational` whose real and imaginary parts are
:class:`fractions.Fraction` values, so nothing is ever rounded.  Matrices are
small (at most 16x16 for two or four qubits) and stored densely as tuples.

>>> z = GaussianRational(1, 2)
>>> z * z.conjugate()
GaussianRational('5')
>>> tensor(identity(2), identity(2)) == identity(4)
True
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

__all__ = [
    "Rational",
    "GaussianRational",
    "Matrix",
    "Vec",
    "DimensionError",
    "NonIntegerSpectrumError",
    "format_rational",
    "parse_rational",
    "add",
    "mul",
    "scale",
    "dagger",
    "identity",
    "zeros",
    "diag",
    "apply",
    "tensor",
    "commutes",
    "rank",
    "kernel_dimension",
    "integer_spectrum",
    "is_hermitian",
    "is_involution",
    "is_idempotent",
    "matrix_equal",
]

Rational = Fraction

Scalar = Union["GaussianRational", int, Fraction]


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


class NonIntegerSpectrumError(ValueError):
    """The candidate integers do not account for the whole spectrum."""


def format_rational(q: Fraction) -> str:
    """Serialize a rational as ``"num/den"`` (denominator always written)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    num, sep, den = text.strip().partition("/")
    if not sep:
        return Fraction(int(num))
    return Fraction(int(num), int(den))


_R = r"\d+(?:/\d+)?"
_GR_IMAG = re.compile(rf"^(?P<sign>[+-]?)(?P<im>{_R})?i$")
_GR_FULL = re.compile(rf"^(?P<re>[+-]?{_R})(?:(?P<sign>[+-])(?P<im>{_R})?i)?$")


def _as_fraction(value) -> Fraction:
    if isinstance(value, bool):
        raise TypeError("booleans are not rational numbers")
    if isinstance(value, (int, Fraction)) or isinstance(value, _RationalABC):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


_ZERO_Q = Fraction(0)


class GaussianRational:
    """Complex number ``re + im*i`` with exact rational parts.

    Instances are immutable and hashable; ints and Fractions are accepted
    wherever a GaussianRational is expected.  Floats are rejected.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "_re", _as_fraction(re))
        object.__setattr__(self, "_im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _new(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        # trusted internal path: both parts are already Fractions
        z = object.__new__(cls)
        object.__setattr__(z, "_re", re)
        object.__setattr__(z, "_im", im)
        return z

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(value)

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Inverse of ``str``: accepts ``"1/2"``, ``"-i"``, ``"1/2-3/4i"`` ..."""
        text = text.replace(" ", "")
        m = _GR_IMAG.match(text)
        re_part = Fraction(0)
        if m is None:
            m = _GR_FULL.match(text)
            if m is None:
                raise ValueError(f"not a Gaussian rational: {text!r}")
            re_part = parse_rational(m.group("re"))
        im_part = Fraction(0)
        if m.group("sign") is not None:
            im_part = parse_rational(m.group("im")) if m.group("im") else Fraction(1)
            if m.group("sign") == "-":
                im_part = -im_part
        return cls(re_part, im_part)

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    def conjugate(self) -> "GaussianRational":
        if not self._im:
            return self
        return GaussianRational._new(self._re, -self._im)

    def norm(self) -> Fraction:
        """Squared modulus ``re**2 + im**2``."""
        return self._re * self._re + self._im * self._im

    def is_zero(self) -> bool:
        return self._re == 0 and self._im == 0

    def is_real(self) -> bool:
        return self._im == 0

    def to_ints(self) -> list[int]:
        """Four-integer form ``[re_num, re_den, im_num, im_den]``."""
        return [self._re.numerator, self._re.denominator, self._im.numerator, self._im.denominator]

    @classmethod
    def from_ints(cls, parts: Sequence[int]) -> "GaussianRational":
        re_num, re_den, im_num, im_den = parts
        return cls(Fraction(re_num, re_den), Fraction(im_num, im_den))

    def __add__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational._new(self._re + other._re, self._im + other._im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._new(-self._re, -self._im)

    def __sub__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational._new(self._re - other._re, self._im - other._im)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self._re, self._im, other._re, other._im
        if not b and not d:
            return GaussianRational._new(a * c, _ZERO_Q)
        return GaussianRational._new(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational._new(self._re / n, -self._im / n)

    def __truediv__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __eq__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self._re == other._re and self._im == other._im

    def __hash__(self):
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        def fmt(q: Fraction) -> str:
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

        if self._im == 0:
            return fmt(self._re)
        sign = "-" if self._im < 0 else "+"
        mag = abs(self._im)
        im_text = "" if mag == 1 else fmt(mag)
        if self._re == 0:
            return f"{'-' if sign == '-' else ''}{im_text}i"
        return f"{fmt(self._re)}{sign}{im_text}i"

    def __repr__(self):
        return f"GaussianRational({str(self)!r})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


class Vec:
    """Column vector of Gaussian rationals (not necessarily normalized)."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable):
        entries = tuple(GaussianRational.coerce(e) for e in entries)
        if not entries:
            raise DimensionError("a vector needs at least one entry")
        object.__setattr__(self, "_entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Vec is immutable")

    @property
    def dim(self) -> int:
        return len(self._entries)

    @property
    def entries(self) -> tuple[GaussianRational, ...]:
        return self._entries

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __getitem__(self, i):
        return self._entries[i]

    def __eq__(self, other):
        if not isinstance(other, Vec):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(self._entries)

    def __add__(self, other: "Vec") -> "Vec":
        if self.dim != other.dim:
            raise DimensionError(f"cannot add vectors of length {self.dim} and {other.dim}")
        return Vec(a + b for a, b in zip(self._entries, other._entries))

    def __sub__(self, other: "Vec") -> "Vec":
        if self.dim != other.dim:
            raise DimensionError(f"cannot subtract vectors of length {self.dim} and {other.dim}")
        return Vec(a - b for a, b in zip(self._entries, other._entries))

    def scale(self, c: Scalar) -> "Vec":
        c = GaussianRational.coerce(c)
        return Vec(c * e for e in self._entries)

    def __rmul__(self, c):
        return self.scale(c)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self._entries)

    def __repr__(self):
        return f"Vec([{', '.join(str(e) for e in self._entries)}])"


class Matrix:
    """Square matrix of Gaussian rationals, row-major and immutable.

    ``a @ b`` is the matrix product, ``a @ v`` applies ``a`` to a :class:`Vec`,
    and ``c * a`` scales by a scalar.
    """

    __slots__ = ("_rows", "_dim")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(GaussianRational.coerce(e) for e in row) for row in rows)
        d = len(rows)
        if d == 0:
            raise DimensionError("a matrix needs at least one row")
        for r in rows:
            if len(r) != d:
                raise DimensionError(f"matrix must be square; got a row of length {len(r)} in a {d}-row matrix")
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "_dim", d)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def rows(self) -> tuple[tuple[GaussianRational, ...], ...]:
        return self._rows

    def __getitem__(self, idx: tuple[int, int]) -> GaussianRational:
        i, j = idx
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return add(self, scale(-1, other))

    def __neg__(self):
        return scale(-1, self)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return mul(self, other)
        if isinstance(other, Vec):
            return apply(self, other)
        return NotImplemented

    def __rmul__(self, c):
        try:
            return scale(c, self)
        except TypeError:
            return NotImplemented

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        try:
            return scale(c, self)
        except TypeError:
            return NotImplemented

    def __truediv__(self, c):
        return scale(GaussianRational.coerce(c).inverse(), self)

    def trace(self) -> GaussianRational:
        total = ZERO
        for i in range(self._dim):
            total = total + self._rows[i][i]
        return total

    def dagger(self) -> "Matrix":
        return dagger(self)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self._rows)
        return f"Matrix([{body}])"


def _check_same_dim(a: Matrix, b: Matrix, op: str) -> None:
    if a.dim != b.dim:
        raise DimensionError(f"{op}: dimension mismatch ({a.dim} vs {b.dim})")


def identity(d: int) -> Matrix:
    if d < 1:
        raise DimensionError("dimension must be positive")
    return Matrix([[ONE if i == j else ZERO for j in range(d)] for i in range(d)])


def zeros(d: int) -> Matrix:
    if d < 1:
        raise DimensionError("dimension must be positive")
    return Matrix([[ZERO] * d for _ in range(d)])


def diag(entries: Sequence) -> Matrix:
    d = len(entries)
    return Matrix([[entries[i] if i == j else 0 for j in range(d)] for i in range(d)])


def add(a: Matrix, b: Matrix) -> Matrix:
    _check_same_dim(a, b, "add")
    return Matrix([[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a.rows, b.rows)])


def mul(a: Matrix, b: Matrix) -> Matrix:
    _check_same_dim(a, b, "mul")
    d = a.dim
    cols = [[b.rows[k][j] for k in range(d)] for j in range(d)]
    out = []
    for row in a.rows:
        out_row = []
        for col in cols:
            acc = ZERO
            for x, y in zip(row, col):
                if x.is_zero() or y.is_zero():
                    continue
                acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return Matrix(out)


def scale(c: Scalar, a: Matrix) -> Matrix:
    c = GaussianRational.coerce(c)
    return Matrix([[c * x for x in row] for row in a.rows])


def dagger(a: Matrix) -> Matrix:
    d = a.dim
    return Matrix([[a.rows[j][i].conjugate() for j in range(d)] for i in range(d)])


def apply(a: Matrix, v: Vec) -> Vec:
    if a.dim != v.dim:
        raise DimensionError(f"apply: {a.dim}x{a.dim} matrix on a length-{v.dim} vector")
    out = []
    for row in a.rows:
        acc = ZERO
        for x, y in zip(row, v.entries):
            acc = acc + x * y
        out.append(acc)
    return Vec(out)


def tensor(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    da, db = a.dim, b.dim
    out = [[ZERO] * (da * db) for _ in range(da * db)]
    for i in range(da):
        for j in range(da):
            aij = a.rows[i][j]
            if aij.is_zero():
                continue
            for k in range(db):
                for l in range(db):
                    out[i * db + k][j * db + l] = aij * b.rows[k][l]
    return Matrix(out)


def commutes(a: Matrix, b: Matrix) -> bool:
    _check_same_dim(a, b, "commutes")
    return mul(a, b) == mul(b, a)


def rank(a: Matrix) -> int:
    """Rank by fraction-exact Gaussian elimination over Q(i)."""
    m = [list(row) for row in a.rows]
    n = a.dim
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, n) if not m[i][col].is_zero()), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][col].inverse()
        for i in range(r + 1, n):
            f = m[i][col]
            if f.is_zero():
                continue
            f = f * inv
            m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == n:
            break
    return r


def kernel_dimension(a: Matrix) -> int:
    return a.dim - rank(a)


def integer_spectrum(a: Matrix, candidates: Iterable[int]) -> tuple[tuple[int, int], ...]:
    """Integer eigenvalues of a Hermitian matrix with their multiplicities.

    Each candidate ``k`` gets multiplicity ``kernel_dimension(a - k*I)``; only
    positive multiplicities are returned, in increasing order of ``k``.  The
    multiplicities must add up to ``a.dim``, otherwise some eigenvalue lies
    outside ``candidates`` (or is not an integer) and
    :class:`NonIntegerSpectrumError` is raised.
    """
    if not is_hermitian(a):
        raise ValueError("integer_spectrum needs a Hermitian matrix")
    eye = identity(a.dim)
    found = []
    total = 0
    for k in sorted(set(int(c) for c in candidates)):
        mult = kernel_dimension(a - scale(k, eye))
        if mult:
            found.append((k, mult))
            total += mult
    if total != a.dim:
        raise NonIntegerSpectrumError(
            f"candidate integers account for {total} of {a.dim} eigenvalues"
        )
    return tuple(found)


def matrix_equal(a: Matrix, b: Matrix) -> bool:
    return a.dim == b.dim and a == b


def is_hermitian(a: Matrix) -> bool:
    return a == dagger(a)


def is_involution(a: Matrix) -> bool:
    return mul(a, a) == identity(a.dim)


def is_idempotent(a: Matrix) -> bool:
    return mul(a, a) == a
