"""Exact scalars and matrices over the Gaussian rationals Q(i).

Everything symbolic in the package runs on these types: no floats are ever
involved in a trace value or a classification decision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import ShapeMismatch

__all__ = ["GaussianRational", "QMatrix", "HaarPoly", "as_fraction", "gq"]


def as_fraction(x) -> Fraction:
    """Coerce ``x`` to a Fraction, refusing floats.

    Strings of the form ``"p/q"`` or ``"p"`` are accepted.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not weights")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if any(c in s for c in ".eE"):
            raise TypeError(f"decimal literal {x!r} rejected; write it as p/q")
        return Fraction(s)
    raise TypeError(f"expected an exact rational, got {type(x).__name__} {x!r}")


class GaussianRational:
    """An exact complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("float complex values are not exact")
        return GaussianRational(x, 0)

    def __add__(self, other):
        o = _gq_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _gq_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _gq_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _gq_or_none(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return GaussianRational(self.re * o.re, 0)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _gq_or_none(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational((self.re * o.re + self.im * o.im) / d,
                                (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = _gq_or_none(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __abs__(self):
        return math.hypot(self.re, self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _gq_or_none(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _gq_or_none(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return GaussianRational(x, 0)
    return None


def gq(x) -> GaussianRational:
    """Parse ``x`` into a GaussianRational (accepts ``"a/b"``, ints, Fractions)."""
    if isinstance(x, str) and "i" in x:
        return _parse_complex(x)
    return GaussianRational.coerce(x if not isinstance(x, str) else as_fraction(x))


def _parse_complex(s: str) -> GaussianRational:
    s = s.replace(" ", "")
    if s.endswith("i"):
        body = s[:-1]
        # split at the last sign that is not the leading one
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-":
                re_part, im_part = body[:k], body[k:]
                break
        else:
            re_part, im_part = "0", body
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        return GaussianRational(as_fraction(re_part), as_fraction(im_part))
    raise ValueError(f"cannot parse complex literal {s!r}")


def _int_array(rows) -> np.ndarray:
    a = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for r, row in enumerate(rows):
        for c, v in enumerate(row):
            a[r, c] = v
    return a


class QMatrix:
    """Square matrix over Q(i), stored as integer numerators over one denominator.

    The representation is canonical (denominator positive, overall gcd 1, imag
    part ``None`` when zero), so equality and hashing are structural.
    """

    __slots__ = ("re", "im", "den", "_key")

    def __init__(self, re: np.ndarray, im: np.ndarray | None, den: int, *, _normalized=False):
        if not _normalized:
            re, im, den = _normalize(re, im, den)
        self.re = re
        self.im = im
        self.den = den
        self._key = None

    # -- constructors --------------------------------------------------
    @classmethod
    def from_entries(cls, rows) -> "QMatrix":
        """Build from nested sequences of exact scalars (ints, Fractions, strings,
        GaussianRationals)."""
        vals = [[gq(v) if not isinstance(v, GaussianRational) else v for v in row] for row in rows]
        n = len(vals)
        if n == 0 or any(len(row) != n for row in vals):
            raise ShapeMismatch("QMatrix must be square and nonempty")
        den = 1
        for row in vals:
            for v in row:
                den = math.lcm(den, v.re.denominator, v.im.denominator)
        re = _int_array([[int(v.re * den) for v in row] for row in vals])
        has_im = any(v.im for row in vals for v in row)
        im = _int_array([[int(v.im * den) for v in row] for row in vals]) if has_im else None
        return cls(re, im, den)

    @classmethod
    def zeros(cls, n: int) -> "QMatrix":
        return cls(_int_array([[0] * n for _ in range(n)]), None, 1, _normalized=True)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(_int_array([[int(r == c) for c in range(n)] for r in range(n)]), None, 1,
                   _normalized=True)

    @classmethod
    def unit(cls, n: int, a: int, b: int) -> "QMatrix":
        """Matrix unit e_ab (0-based row a, column b)."""
        rows = [[0] * n for _ in range(n)]
        rows[a][b] = 1
        return cls(_int_array(rows), None, 1, _normalized=True)

    @classmethod
    def diagonal(cls, values) -> "QMatrix":
        n = len(values)
        rows = [[0] * n for _ in range(n)]
        for k, v in enumerate(values):
            rows[k][k] = v
        return cls.from_entries(rows)

    @classmethod
    def cyclic_shift(cls, n: int) -> "QMatrix":
        """Permutation unitary with ones on the superdiagonal and at (n-1, 0)."""
        rows = [[0] * n for _ in range(n)]
        for r in range(n - 1):
            rows[r][r + 1] = 1
        rows[n - 1][0] = 1
        return cls(_int_array(rows), None, 1, _normalized=True)

    # -- basic protocol -------------------------------------------------
    @property
    def n(self) -> int:
        return self.re.shape[0]

    def key(self):
        if self._key is None:
            im = None if self.im is None else tuple(self.im.flat)
            self._key = (self.n, self.den, tuple(self.re.flat), im)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def entry(self, r: int, c: int) -> GaussianRational:
        im = 0 if self.im is None else self.im[r, c]
        return GaussianRational(Fraction(self.re[r, c], self.den), Fraction(im, self.den))

    def to_rows(self) -> list[list[GaussianRational]]:
        return [[self.entry(r, c) for c in range(self.n)] for r in range(self.n)]

    def to_numpy(self) -> np.ndarray:
        out = self.re.astype(float)
        if self.im is not None:
            out = out + 1j * self.im.astype(float)
        return out / self.den

    def is_zero(self) -> bool:
        return not self.re.any() and (self.im is None or not self.im.any())

    def __repr__(self):
        return f"QMatrix({[[str(v) for v in row] for row in self.to_rows()]})"

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "QMatrix"):
        if self.n != other.n:
            raise ShapeMismatch(f"matrix sizes {self.n} and {other.n} differ")

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._check(other)
        d = math.lcm(self.den, other.den)
        a, b = d // self.den, d // other.den
        re = self.re * a + other.re * b
        im = _add_opt(_scale_opt(self.im, a), _scale_opt(other.im, b))
        return QMatrix(re, im, d)

    def __neg__(self) -> "QMatrix":
        return QMatrix(-self.re, None if self.im is None else -self.im, self.den, _normalized=True)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + (-other)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        self._check(other)
        re = self.re.dot(other.re)
        im = None
        if self.im is not None and other.im is not None:
            re = re - self.im.dot(other.im)
        if self.im is not None:
            im = self.im.dot(other.re)
        if other.im is not None:
            t = self.re.dot(other.im)
            im = t if im is None else im + t
        return QMatrix(re, im, self.den * other.den)

    def scale(self, c) -> "QMatrix":
        c = GaussianRational.coerce(c)
        if not c:
            return QMatrix.zeros(self.n)
        d = math.lcm(c.re.denominator, c.im.denominator)
        cr, ci = int(c.re * d), int(c.im * d)
        re = self.re * cr
        im = None
        if self.im is not None:
            if ci:
                re = re - self.im * ci
            im = self.im * cr
        if ci:
            t = self.re * ci
            im = t if im is None else im + t
        return QMatrix(re, im, self.den * d)

    def add_identity(self, c) -> "QMatrix":
        """Return ``self + c * 1``."""
        return self + QMatrix.identity(self.n).scale(c)

    def trace(self) -> GaussianRational:
        """Unnormalized trace."""
        re = sum(self.re[k, k] for k in range(self.n))
        im = 0 if self.im is None else sum(self.im[k, k] for k in range(self.n))
        return GaussianRational(Fraction(re, self.den), Fraction(im, self.den))

    def normalized_trace(self) -> GaussianRational:
        t = self.trace()
        return GaussianRational(t.re / self.n, t.im / self.n)

    def adjoint(self) -> "QMatrix":
        return QMatrix(self.re.T.copy(), None if self.im is None else -self.im.T,
                       self.den, _normalized=True)

    def power(self, k: int) -> "QMatrix":
        if k < 0:
            raise ValueError("negative powers need an explicit inverse")
        out = QMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out


def _scale_opt(a, s):
    return None if a is None else a * s


def _add_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a + b


def _normalize(re: np.ndarray, im, den: int):
    if den <= 0:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        re, den = -re, -den
        im = None if im is None else -im
    if im is not None and not im.any():
        im = None
    vals = [int(v) for v in re.flat]
    if im is not None:
        vals.extend(int(v) for v in im.flat)
    g = math.gcd(den, *vals)
    if g > 1:
        re = re // g
        if im is not None:
            im = im // g
        den //= g
    return re, im, den


class HaarPoly:
    """Laurent polynomial ``sum_k c_k u^k`` in a Haar unitary ``u``.

    The trace of such an element is its constant coefficient.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        items = {}
        for k, c in dict(coeffs or {}).items():
            c = GaussianRational.coerce(c) if not isinstance(c, str) else gq(c)
            if c:
                items[int(k)] = c
        self.coeffs = tuple(sorted(items.items()))

    @classmethod
    def monomial(cls, k: int, c=1) -> "HaarPoly":
        return cls({k: c})

    @classmethod
    def constant(cls, c) -> "HaarPoly":
        return cls({0: c})

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, HaarPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "HaarPoly({" + ", ".join(f"{k}: {c}" for k, c in self.coeffs) + "})"

    def __add__(self, other: "HaarPoly") -> "HaarPoly":
        d = self.as_dict()
        for k, c in other.coeffs:
            d[k] = d.get(k, GaussianRational()) + c
        return HaarPoly(d)

    def __neg__(self):
        return HaarPoly({k: -c for k, c in self.coeffs})

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other: "HaarPoly") -> "HaarPoly":
        d: dict[int, GaussianRational] = {}
        for k1, c1 in self.coeffs:
            for k2, c2 in other.coeffs:
                d[k1 + k2] = d.get(k1 + k2, GaussianRational()) + c1 * c2
        return HaarPoly(d)

    def scale(self, c) -> "HaarPoly":
        c = GaussianRational.coerce(c)
        return HaarPoly({k: v * c for k, v in self.coeffs})

    def add_identity(self, c) -> "HaarPoly":
        return self + HaarPoly.constant(c)

    def trace(self) -> GaussianRational:
        for k, c in self.coeffs:
            if k == 0:
                return c
        return GaussianRational()

    normalized_trace = trace

    def adjoint(self) -> "HaarPoly":
        return HaarPoly({-k: c.conjugate() for k, c in self.coeffs})

    def is_zero(self) -> bool:
        return not self.coeffs

    def power(self, k: int) -> "HaarPoly":
        if k < 0:
            raise ValueError("negative powers need an explicit inverse")
        out = HaarPoly.constant(1)
        for _ in range(k):
            out = out @ self
        return out
