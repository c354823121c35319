"""Exact scalar domains.

The ground field is Q, represented by gmpy2.mpq (always gcd-reduced, positive
denominator). Algebraic points and Puiseux coefficients live in quotient rings
Q[a]/(m) built by iterated extension. Moduli are kept squarefree but are NOT
factored: when an element turns out to be a zero divisor the ring raises
ZeroDivisorSplit carrying the two cofactor moduli, and the caller re-runs the
computation in each factor (dynamic evaluation). This gives exact arithmetic
over algebraic numbers without any polynomial factorization.
"""

import gmpy2

from . import polyring as pr

mpq = gmpy2.mpq
_MPQ_TYPE = type(mpq())
RAT_TYPES = (int, _MPQ_TYPE)


def rat(n, d=None):
    """Exact rational from ints, mpq, Fraction, or anything with
    numerator/denominator attributes."""
    if d is not None:
        return mpq(n, d)
    if isinstance(n, RAT_TYPES):
        return mpq(n)
    try:
        return mpq(n)
    except TypeError:
        return mpq(int(n.numerator), int(n.denominator))


class RationalField:
    """Ring-protocol wrapper for Q."""

    name = "QQ"

    def zero(self):
        return mpq(0)

    def one(self):
        return mpq(1)

    def coerce(self, v):
        return rat(v)

    def invert(self, a):
        if not a:
            raise ZeroDivisionError("inverting 0 in QQ")
        return 1 / mpq(a)

    def exact_div(self, a, b):
        return mpq(a) / b

    def is_zero(self, a):
        return not a

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def rational_sqrt(v):
    """Exact square root of a nonnegative rational, or None."""
    num, den = v.numerator, v.denominator
    if num >= 0 and gmpy2.is_square(num) and gmpy2.is_square(den):
        return rat(gmpy2.isqrt(num), gmpy2.isqrt(den))
    return None


class ZeroDivisorSplit(ArithmeticError):
    """A division hit a zero divisor; the modulus splits into two factors.

    factors holds the two monic cofactor moduli (ascending coefficient lists
    over the base ring). Re-run the failed computation over each factor.
    """

    def __init__(self, ring, g1, g2):
        super().__init__(f"zero divisor in {ring!r}; modulus splits "
                         f"into degrees {len(g1) - 1} and {len(g2) - 1}")
        self.ring = ring
        self.factors = (g1, g2)


class QRElement:
    """Element of a QuotientRing, stored as a reduced coefficient tuple."""

    __slots__ = ("ring", "c")

    def __init__(self, ring, c):
        self.ring = ring
        self.c = tuple(c)

    def _co(self, other):
        if isinstance(other, QRElement) and other.ring is self.ring:
            return other
        return self.ring.coerce(other)

    def __add__(self, other):
        o = self._co(other)
        return QRElement(self.ring, pr.padd(self.c, o.c, self.ring.base))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        return QRElement(self.ring, pr.psub(self.c, o.c, self.ring.base))

    def __rsub__(self, other):
        return self._co(other) - self

    def __neg__(self):
        return QRElement(self.ring, pr.pneg(self.c))

    def __mul__(self, other):
        o = self._co(other)
        return QRElement(self.ring, self.ring._mulmod(self.c, o.c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._co(other).inverse()

    def __rtruediv__(self, other):
        return self._co(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        return self.ring.invert(self)

    def __eq__(self, other):
        try:
            o = self._co(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash((id(self.ring), self.c))

    def __bool__(self):
        return bool(self.c)

    def __repr__(self):
        g = self.ring.gen_name
        if not self.c:
            return "0"
        parts = []
        for i, v in enumerate(self.c):
            if not v:
                continue
            if i == 0:
                parts.append(repr(v))
            elif i == 1:
                parts.append(f"{v}*{g}")
            else:
                parts.append(f"{v}*{g}^{i}")
        return " + ".join(parts)


class QuotientRing:
    """base[a]/(modulus) with a monic modulus over an arbitrary base field
    (which may itself be a QuotientRing). Division is by extended gcd;
    zero divisors raise ZeroDivisorSplit for dynamic-evaluation callers."""

    def __init__(self, base, modulus, name="a"):
        self.base = base
        self.gen_name = name
        m = pr.pstrip(list(modulus))
        if len(m) < 2:
            raise ValueError("modulus must have positive degree")
        lc = m[-1]
        if lc != base.one():
            inv = base.invert(lc)
            m = [ci * inv for ci in m]
        self.modulus = tuple(m)
        self.degree = len(m) - 1
        d = self.degree
        # reduction rows: a^(d+k) mod modulus, k = 0..d-2
        rows = []
        cur = [-ci for ci in m[:-1]]  # a^d
        for _ in range(max(d - 1, 0)):
            rows.append(tuple(cur))
            top = cur[-1]
            cur = [base.zero()] + cur[:-1]
            if top:
                head = [-ci * top for ci in m[:-1]]
                cur = [u + v for u, v in zip(cur, head + [base.zero()] * (d - len(head)))]
        self._red = rows

    # ---- ring protocol

    def zero(self):
        return QRElement(self, ())

    def one(self):
        return QRElement(self, (self.base.one(),))

    def gen(self):
        if self.degree == 1:
            # a = -m0 in the base: degenerate but legal
            return QRElement(self, tuple(pr.pstrip([-self.modulus[0]])))
        return QRElement(self, (self.base.zero(), self.base.one()))

    def from_base(self, v):
        v = self.base.coerce(v)
        return QRElement(self, (v,) if v else ())

    def coerce(self, v):
        if isinstance(v, QRElement):
            if v.ring is self:
                return v
            if v.ring is self.base or (isinstance(self.base, QuotientRing)
                                       and v.ring is self.base):
                return self.from_base(v)
            raise TypeError(f"cannot coerce element of {v.ring!r} into {self!r}")
        return self.from_base(v)

    def from_coeffs(self, coeffs):
        c = [self.base.coerce(v) for v in coeffs]
        if len(c) >= len(self.modulus):
            _, c = pr.pdivmod(c, list(self.modulus), self.base)
        return QRElement(self, tuple(pr.pstrip(c)))

    def invert(self, a):
        if not a.c:
            raise ZeroDivisionError(f"inverting 0 in {self!r}")
        g, s, _ = pr.pxgcd(list(a.c), list(self.modulus), self.base)
        if len(g) == 1:
            inv = self.base.invert(g[0])
            return self.from_coeffs([ci * inv for ci in s])
        g2, r = pr.pdivmod(list(self.modulus), g, self.base)
        assert not pr.pstrip(r), "modulus not divisible by its own gcd factor"
        raise ZeroDivisorSplit(self, tuple(g), tuple(pr.pmonic(g2, self.base)))

    def exact_div(self, a, b):
        return a * self.invert(b)

    def is_zero(self, a):
        return not a.c

    # ---- internals

    def _mulmod(self, a, b):
        if not a or not b:
            return ()
        base = self.base
        zero = base.zero()
        conv = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    conv[i + j] = conv[i + j] + ai * bj
        d = self.degree
        out = conv[:d] + [zero] * max(0, d - len(conv))
        for k, c in enumerate(conv[d:]):
            if c:
                row = self._red[k]
                for i, ri in enumerate(row):
                    if ri:
                        out[i] = out[i] + c * ri
        return tuple(pr.pstrip(out))

    def __repr__(self):
        return f"{self.base!r}[{self.gen_name}]/(deg {self.degree})"
