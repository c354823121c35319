"""Rational functions in one variable over a coefficient field.

Fractions are lazily reduced: build() divides out monomial common factors
and catches the two exact-divisibility cases, but never runs a full gcd,
whose remainder sequences blow up badly over algebraic extension towers.
Equality therefore goes through cross-multiplication rather than literal
comparison of coefficient lists.
"""

from . import polyring as pr
from .laurent import LaurentPoly
from .scalars import ZeroDivisorSplit


class RationalFunctionField:
    def __init__(self, coeff_field, var="t"):
        self.coeff_field = coeff_field
        self.var = var
        self.name = f"{getattr(coeff_field, 'name', repr(coeff_field))}({var})"

    def build(self, num, den):
        K = self.coeff_field
        num = pr.pstrip(list(num))
        den = pr.pstrip(list(den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return RationalFunction(self, [], [K.one()])
        if sum(1 for c in den if c) == 1:
            # monomial denominator: the only common factor is the trailing
            # power of the variable, no gcd needed
            v = next(i for i, c in enumerate(num) if c)
            shift = min(v, len(den) - 1)
            num, den = num[shift:], den[shift:]
        else:
            try:
                q, r = pr.pdivmod(num, den, K)
                if not pr.pstrip(r):
                    num, den = q, [K.one()]
                else:
                    q, r = pr.pdivmod(den, num, K)
                    if not pr.pstrip(r):
                        num, den = [K.one()], q
            except (ZeroDivisionError, ZeroDivisorSplit):
                pass  # probe declined; the unreduced fraction is still exact
        try:
            inv = K.invert(den[-1])
        except (ZeroDivisionError, ZeroDivisorSplit):
            return RationalFunction(self, num, den)
        den = [c * inv for c in den]
        num = [c * inv for c in num]
        return RationalFunction(self, num, den)

    def zero(self):
        return RationalFunction(self, [], [self.coeff_field.one()])

    def one(self):
        one = self.coeff_field.one()
        return RationalFunction(self, [one], [one])

    def gen(self):
        K = self.coeff_field
        return RationalFunction(self, [K.zero(), K.one()], [K.one()])

    def coerce(self, v):
        if isinstance(v, RationalFunction):
            if v.field is self:
                return v
            if v.field.coeff_field is self.coeff_field:
                return RationalFunction(self, v.num, v.den)
            raise TypeError("rational function over a different field")
        if isinstance(v, LaurentPoly):
            return self.from_laurent(v)
        K = self.coeff_field
        return self.build([K.coerce(v)], [K.one()])

    def from_laurent(self, f):
        lo, dense = f.as_dense()
        K = self.coeff_field
        if lo >= 0:
            return self.build([K.zero()] * lo + dense, [K.one()])
        return self.build(dense, [K.zero()] * (-lo) + [K.one()])

    def invert(self, v):
        return self.coerce(v).inverse()

    def exact_div(self, a, b):
        return self.coerce(a) / self.coerce(b)

    def is_zero(self, v):
        return not self.coerce(v)

    def __repr__(self):
        return self.name


class RationalFunction:
    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den):
        self.field = field
        self.num = num
        self.den = den

    def _co(self, other):
        return self.field.coerce(other)

    def __add__(self, other):
        o = self._co(other)
        K = self.field.coeff_field
        n = pr.padd(pr.pmul(self.num, o.den, K), pr.pmul(o.num, self.den, K), K)
        return self.field.build(n, pr.pmul(self.den, o.den, K))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __neg__(self):
        return RationalFunction(self.field, pr.pneg(self.num), self.den)

    def __mul__(self, other):
        o = self._co(other)
        K = self.field.coeff_field
        return self.field.build(pr.pmul(self.num, o.num, K),
                                pr.pmul(self.den, o.den, K))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._co(other).inverse()

    def __rtruediv__(self, other):
        return self._co(other) * self.inverse()

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverting the zero rational function")
        return self.field.build(self.den, self.num)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            o = self._co(other)
        except (TypeError, ValueError):
            return NotImplemented
        K = self.field.coeff_field
        diff = pr.padd(pr.pmul(self.num, o.den, K),
                       pr.pneg(pr.pmul(o.num, self.den, K)), K)
        return not pr.pstrip(diff)

    # representatives are not canonical, so there is no consistent hash
    __hash__ = None

    def __bool__(self):
        return bool(self.num)

    def is_laurent(self):
        """True when this representative has a pure-power denominator.

        A False answer does not preclude the value being a Laurent
        polynomial; as_laurent settles that by exact division.
        """
        return sum(1 for c in self.den if c) == 1

    def as_laurent(self, ring=None):
        """Convert to a LaurentPoly; the denominator must divide exactly."""
        K = self.field.coeff_field
        if self.is_laurent():
            k = len(self.den) - 1
            inv = K.invert(self.den[k])
            return LaurentPoly({i - k: v * inv
                                for i, v in enumerate(self.num) if v}, K)
        num = LaurentPoly({i: v for i, v in enumerate(self.num) if v}, K)
        den = LaurentPoly({i: v for i, v in enumerate(self.den) if v}, K)
        return num.exact_div(den)

    def __repr__(self):
        return f"({self.num})/({self.den})"
