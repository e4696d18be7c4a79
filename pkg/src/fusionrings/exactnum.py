"""Exact arithmetic for quadratic-field computations.

Values live in Q or in a single real quadratic field Q(sqrt(d)); d == 1
encodes a plain rational.  Everything here is pure and immutable, and no
floating point enters any decision path.  Integer polynomials are plain
tuples of coefficients in ascending degree order with a nonzero leading
coefficient.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

Rational = Fraction

# Largest matrix dimension char_poly accepts.
MAX_RANK = 8

# Default certified width for interval fallbacks.
DEFAULT_WIDTH = Fraction(1, 10**12)


class MixedRadicand(ValueError):
    """Two irrational values from distinct quadratic fields were combined."""


class DivisionByZero(ZeroDivisionError):
    """Division by an exact zero."""


class RankTooLarge(ValueError):
    """Matrix dimension exceeds MAX_RANK."""


class ComplexRoot(ValueError):
    """A quadratic factor has complex roots where real ones were required."""


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n >= 0 as s*s*d with d squarefree; returns (s, d)."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 1
    s, d, m, f = 1, 1, n, 2
    while f * f <= m:
        if m % f == 0:
            e = 0
            while m % f == 0:
                m //= f
                e += 1
            s *= f ** (e // 2)
            if e % 2:
                d *= f
        f += 1 if f == 2 else 2
    return s, d * m


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def _fraction_str(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class QuadNum:
    """An exact element a + b*sqrt(d) of Q(sqrt(d)).

    d is a squarefree integer >= 1; d == 1 encodes a plain rational and
    then b == 0.  Construction canonicalizes (the radicand is reduced to
    its squarefree part and absorbed when it collapses to 1), so equality
    is structural equality of (a, b, d).
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 1):
        a, b = Fraction(a), Fraction(b)
        d = int(d)
        if d < 1:
            raise ValueError(f"radicand must be >= 1, got {d}")
        s, d = squarefree_decompose(d)
        b *= s
        if d == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            d = 1
        self.a, self.b, self.d = a, b, d

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    @staticmethod
    def sqrt_int(n: int) -> "QuadNum":
        """Exact square root of a nonnegative integer."""
        return QuadNum(0, 1, n) if n > 0 else QuadNum(0)

    def _coerce(self, other):
        if isinstance(other, QuadNum):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNum(other)
        return None

    def _join(self, other: "QuadNum") -> int:
        if self.d == other.d or other.d == 1:
            return self.d
        if self.d == 1:
            return other.d
        raise MixedRadicand(f"cannot combine sqrt({self.d}) with sqrt({other.d})")

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._join(o)
        return QuadNum(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadNum(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._join(o)
        return QuadNum(self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadNum":
        if self.a == 0 and self.b == 0:
            raise DivisionByZero("inverse of zero")
        # conjugate over norm; the norm is nonzero because sqrt(d) is irrational
        n = self.a * self.a - self.b * self.b * self.d
        return QuadNum(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        self._join(o)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = QuadNum(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "QuadNum":
        return QuadNum(self.a, -self.b, self.d)

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        lhs, rhs = a * a, b * b * self.d
        if lhs == rhs:
            raise ArithmeticError("squarefree radicand produced a rational sqrt")
        if a > 0:
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.d == o.d

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def _diff_sign(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QuadNum with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._diff_sign(other) < 0

    def __le__(self, other):
        return self._diff_sign(other) <= 0

    def __gt__(self, other):
        return self._diff_sign(other) > 0

    def __ge__(self, other):
        return self._diff_sign(other) >= 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        # display convenience only; never used in decisions
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def bracket(self, digits: int = 30) -> tuple[Fraction, Fraction]:
        """Rational enclosure [lo, hi]; sqrt(d) is bracketed to 10**-digits."""
        if self.b == 0:
            return self.a, self.a
        q = 10**digits
        r_lo = Fraction(math.isqrt(self.d * q * q), q)
        r_hi = r_lo + Fraction(1, q)
        if self.b > 0:
            return self.a + self.b * r_lo, self.a + self.b * r_hi
        return self.a + self.b * r_hi, self.a + self.b * r_lo

    def __str__(self):
        if self.b == 0:
            return _fraction_str(self.a)
        sign = "+" if self.b > 0 else "-"
        return f"{_fraction_str(self.a)}{sign}{_fraction_str(abs(self.b))}*sqrt({self.d})"

    def __repr__(self):
        return f"QuadNum({self})"


def quad_cmp(x, y) -> int:
    """Exact total order on a shared quadratic field: -1, 0 or 1."""
    if not isinstance(x, QuadNum):
        x = QuadNum(x)
    return x._diff_sign(y)


class RealInterval:
    """Certified rational enclosure [lo, hi] of a real value.

    Used only as a fallback when a value has no degree <= 2 expression.
    When the defining squarefree polynomial is attached the enclosure can
    be tightened on demand by sign bisection.
    """

    __slots__ = ("lo", "hi", "_poly")

    def __init__(self, lo, hi, poly=None):
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("interval endpoints out of order")
        self.lo, self.hi, self._poly = lo, hi, poly

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def refined(self, width) -> "RealInterval":
        if self._poly is None or self.width <= width:
            return self
        lo, hi = self.lo, self.hi
        s_lo = _fpoly_sign(self._poly, lo)
        while hi - lo > width:
            mid = (lo + hi) / 2
            s_mid = _fpoly_sign(self._poly, mid)
            if s_mid == 0:
                lo = hi = mid
                break
            if s_mid == s_lo:
                lo = mid
            else:
                hi = mid
        return RealInterval(lo, hi, self._poly)

    @staticmethod
    def _endpoints(value) -> tuple[Fraction, Fraction]:
        if isinstance(value, RealInterval):
            return value.lo, value.hi
        if isinstance(value, QuadNum):
            return value.bracket()
        f = Fraction(value)
        return f, f

    def __add__(self, other):
        lo, hi = self._endpoints(other)
        return RealInterval(self.lo + lo, self.hi + hi)

    __radd__ = __add__

    def __neg__(self):
        return RealInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        lo, hi = self._endpoints(other)
        return RealInterval(self.lo - hi, self.hi - lo)

    def __mul__(self, other):
        lo, hi = self._endpoints(other)
        products = [self.lo * lo, self.lo * hi, self.hi * lo, self.hi * hi]
        return RealInterval(min(products), max(products))

    __rmul__ = __mul__

    def __float__(self):
        return float(self.lo + self.hi) / 2

    def __str__(self):
        return f"~[{_fraction_str(self.lo)},{_fraction_str(self.hi)}]"

    def __repr__(self):
        return f"RealInterval({self})"


def real_compare(x, y, max_digits: int = 4096) -> int:
    """Order two real values (QuadNum, RealInterval, int or Fraction).

    Works across distinct quadratic fields by refining rational
    enclosures; distinct algebraic values always separate.
    """
    if isinstance(x, QuadNum) and isinstance(y, (QuadNum, int, Fraction)):
        try:
            return quad_cmp(x, y)
        except MixedRadicand:
            pass
    if isinstance(y, QuadNum) and isinstance(x, (int, Fraction)):
        return -quad_cmp(y, x)
    if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
        return (x > y) - (x < y)
    digits = 30
    xi = x if isinstance(x, RealInterval) else None
    yi = y if isinstance(y, RealInterval) else None
    while digits <= max_digits:
        xlo, xhi = (xi.lo, xi.hi) if xi is not None else x.bracket(digits)
        ylo, yhi = (yi.lo, yi.hi) if yi is not None else y.bracket(digits)
        if xhi < ylo:
            return -1
        if ylo == yhi and xlo == xhi and xlo == ylo:
            return 0
        if yhi < xlo:
            return 1
        digits *= 2
        width = Fraction(1, 10**digits)
        if xi is not None:
            xi = xi.refined(width)
        if yi is not None:
            yi = yi.refined(width)
    raise ArithmeticError("could not separate values; are they equal?")


def real_max(values):
    """Largest of a nonempty collection of real values."""
    values = list(values)
    best = values[0]
    for v in values[1:]:
        if real_compare(v, best) > 0:
            best = v
    return best


def real_sort_key(value):
    """Sort key for mixed exact/interval reals (descending via reverse=True)."""
    import functools

    return functools.cmp_to_key(real_compare)(value)


# ---------------------------------------------------------------------------
# integer polynomials: tuples of coefficients, ascending degree


def poly_normalize(p) -> tuple:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_degree(p) -> int:
    return len(p) - 1


def poly_eval(p, x):
    out = 0
    for c in reversed(p):
        out = out * x + c
    return out


def poly_mul(p, q) -> tuple:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_normalize(out)


def poly_monic_div(p, q):
    """Exact division of integer polynomials by a monic q; None if inexact."""
    p = list(p)
    n, m = len(p) - 1, len(q) - 1
    if m > n:
        return None
    quot = [0] * (n - m + 1)
    for k in range(n - m, -1, -1):
        c = p[k + m]
        quot[k] = c
        for i, qc in enumerate(q):
            p[k + i] -= c * qc
    if any(p[:m]):
        return None
    return tuple(quot)


def poly_str(p, var: str = "t") -> str:
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(f"{c:+d}")
        else:
            mag = "" if abs(c) == 1 else str(abs(c))
            power = var if i == 1 else f"{var}^{i}"
            terms.append(("+" if c > 0 else "-") + mag + power)
    if not terms:
        return "0"
    s = "".join(terms)
    return s[1:] if s.startswith("+") else s


def char_poly(matrix) -> tuple:
    """Monic characteristic polynomial det(tI - M) of a small integer matrix.

    Computed with the Faddeev-LeVerrier recurrence in exact integer
    arithmetic; each division below is known to be exact.
    """
    rows = [[int(v) for v in row] for row in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    if n > MAX_RANK:
        raise RankTooLarge(f"dimension {n} exceeds supported bound {MAX_RANK}")
    if n == 0:
        return (1,)
    coeffs = [1]  # descending: t^n + c1 t^(n-1) + ... + cn
    ak = [row[:] for row in rows]
    for k in range(1, n + 1):
        tr = sum(ak[i][i] for i in range(n))
        if tr % k:
            raise ArithmeticError("Faddeev-LeVerrier trace was not divisible")
        ck = -(tr // k)
        coeffs.append(ck)
        if k == n:
            break
        for i in range(n):
            ak[i][i] += ck
        ak = [
            [sum(rows[i][m] * ak[m][j] for m in range(n)) for j in range(n)]
            for i in range(n)
        ]
    return tuple(reversed(coeffs))


def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    f = 1
    while f * f <= n:
        if n % f == 0:
            small.append(f)
            if f != n // f:
                large.append(n // f)
        f += 1
    return small + large[::-1]


def factor_small(p) -> tuple[list[tuple], tuple | None]:
    """Split a monic integer polynomial into irreducible factors of degree <= 2.

    Returns (factors, remainder): the product of the factors times the
    remainder (None when fully split) reproduces the input exactly.  The
    remainder has no rational root and no integer quadratic factor within
    the root-derived coefficient bounds, so any remainder has degree >= 3.
    """
    p = poly_normalize(tuple(int(c) for c in p))
    if p[-1] != 1:
        raise ValueError("polynomial must be monic")
    factors: list[tuple] = []
    work = list(p)
    while len(work) > 1 and work[0] == 0:
        factors.append((0, 1))
        work = work[1:]
    if len(work) > 1:
        bound = 1 + max(abs(c) for c in work[:-1])
        # rational roots of a monic integer polynomial are integers
        for r in range(-bound, bound + 1):
            if r == 0:
                continue
            while len(work) > 1 and poly_eval(work, r) == 0:
                q = poly_monic_div(work, (-r, 1))
                factors.append((-r, 1))
                work = list(q)
        if len(work) > 2:
            p0 = work[0]
            for c in sorted(d * s for d in _divisors(p0) for s in (1, -1)):
                if abs(c) > bound * bound:
                    continue
                for b in range(-2 * bound, 2 * bound + 1):
                    if _is_square(b * b - 4 * c):
                        continue  # reducible quadratics were consumed above
                    p1, pm1 = poly_eval(work, 1), poly_eval(work, -1)
                    v1, vm1 = 1 + b + c, 1 - b + c
                    if v1 == 0 or vm1 == 0 or p1 % v1 or pm1 % vm1:
                        continue
                    while True:
                        q = poly_monic_div(work, (c, b, 1))
                        if q is None:
                            break
                        factors.append((c, b, 1))
                        work = list(q)
                    if len(work) <= 2:
                        break
                if len(work) <= 2:
                    break
    if len(work) in (2, 3):
        # any leftover of degree <= 2 is irreducible at this point
        factors.append(tuple(work))
        work = [1]
    remainder = tuple(work) if len(work) > 1 else None
    factors.sort(key=lambda f: (len(f), f))
    return factors, remainder


def roots_as_quadnum(factors, on_complex: str = "raise") -> list:
    """Exact roots of degree <= 2 monic integer factors, largest first.

    A quadratic radicand is reduced to a squarefree part times a square.
    Complex conjugate pairs abort with ComplexRoot unless on_complex is
    "skip".
    """
    roots = []
    for f in factors:
        if len(f) == 2:
            roots.append(QuadNum(-f[0]))
        elif len(f) == 3:
            c, b, _ = f
            disc = b * b - 4 * c
            if disc < 0:
                if on_complex == "skip":
                    continue
                raise ComplexRoot(f"factor {poly_str(f)} has complex roots")
            s, d = squarefree_decompose(disc)
            roots.append(QuadNum(Fraction(-b, 2), Fraction(s, 2), d))
            roots.append(QuadNum(Fraction(-b, 2), Fraction(-s, 2), d))
        else:
            raise ValueError(f"factor degree {len(f) - 1} not supported")
    roots.sort(key=real_sort_key, reverse=True)
    return roots


# ---------------------------------------------------------------------------
# real-root isolation for the interval fallback (degree >= 3 remainders)


def _fpoly(p):
    return tuple(Fraction(c) for c in p)


def _fpoly_normalize(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


def _fpoly_divmod(a, b):
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    q = [Fraction(0)] * max(len(a) - db, 1)
    while len(a) - 1 >= db and any(a):
        k = len(a) - 1 - db
        c = a[-1] / lead
        q[k] = c
        for i, bc in enumerate(b):
            a[k + i] -= c * bc
        a.pop()
    return _fpoly_normalize(q), _fpoly_normalize(a or [Fraction(0)])


def _fpoly_gcd(a, b):
    a, b = _fpoly_normalize(a), _fpoly_normalize(b)
    while len(b) > 1 or b[0] != 0:
        _, r = _fpoly_divmod(a, b)
        a, b = b, r
    return _fpoly_normalize(tuple(c / a[-1] for c in a))


def _fpoly_derivative(p):
    if len(p) <= 1:
        return (Fraction(0),)
    return _fpoly_normalize(tuple(i * p[i] for i in range(1, len(p))))


def _fpoly_sign(p, x) -> int:
    v = poly_eval(p, Fraction(x))
    return (v > 0) - (v < 0)


def _sturm_chain(p):
    chain = [p, _fpoly_derivative(p)]
    while poly_degree(chain[-1]) > 0:
        _, r = _fpoly_divmod(chain[-2], chain[-1])
        if len(r) == 1 and r[0] == 0:
            break
        chain.append(tuple(-c for c in r))
    return chain


def _variations(chain, x) -> int:
    signs = [s for s in (_fpoly_sign(q, x) for q in chain) if s != 0]
    return sum(1 for a, b in itertools.pairwise(signs) if a != b)


def _squarefree_parts(p):
    """Decompose p into [(squarefree factor, multiplicity), ...]."""
    parts = []
    cur = _fpoly_normalize(p)
    mult = 1
    while poly_degree(cur) >= 1:
        g = _fpoly_gcd(cur, _fpoly_derivative(cur))
        sf, _ = _fpoly_divmod(cur, g)
        # roots of multiplicity > mult appear in both sf and g
        exact, _ = _fpoly_divmod(sf, _fpoly_gcd(sf, g))
        if poly_degree(exact) >= 1:
            parts.append((exact, mult))
        cur = g
        mult += 1
    return parts


def isolate_real_roots(p, width=DEFAULT_WIDTH) -> list[tuple[RealInterval, int]]:
    """Certified enclosures for the real roots of an integer polynomial.

    Returns (interval, multiplicity) pairs in descending root order.  Each
    interval is bisected down to the requested width using Sturm counts.
    """
    fp = _fpoly(poly_normalize(p))
    out: list[tuple[RealInterval, int]] = []
    for part, mult in _squarefree_parts(fp):
        chain = _sturm_chain(part)
        bound = Fraction(1) + max(abs(c) for c in part[:-1]) / abs(part[-1]) if len(part) > 1 else Fraction(1)
        lo, hi = -bound - 1, bound + 1
        stack = [(lo, hi)]
        while stack:
            a, b = stack.pop()
            count = _variations(chain, a) - _variations(chain, b)
            if count == 0:
                continue
            if count == 1:
                ra, rb = a, b
                s_a = _fpoly_sign(part, ra)
                while rb - ra > width:
                    mid = (ra + rb) / 2
                    s_mid = _fpoly_sign(part, mid)
                    if s_mid == 0:
                        ra = rb = mid
                        break
                    if s_mid == s_a:
                        ra = mid
                    else:
                        rb = mid
                out.append((RealInterval(ra, rb, part), mult))
                continue
            mid = (a + b) / 2
            while _fpoly_sign(part, mid) == 0:
                mid += (b - a) / 64
            stack.append((a, mid))
            stack.append((mid, b))
    out.sort(key=lambda pair: pair[0].lo, reverse=True)
    return out
