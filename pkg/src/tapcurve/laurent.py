"""Laurent polynomials in one variable t over an arbitrary coefficient ring.

Stored as a sparse map {exponent: coefficient} with no zero coefficients.
The coefficient ring object travels with the polynomial so generic code can
build constants of the right type.

One exception to the no-zeros rule: coefficients that vanish only to a
finite precision (truncated series with a `prec` tag) are retained, since
dropping them would silently promote "zero as far as computed" to "exactly
zero" and later arithmetic would overstate its own precision.
"""

from . import polyring as pr


class LaurentPoly:
    __slots__ = ("c", "ring")

    def __init__(self, coeffs, ring):
        self.ring = ring
        self.c = {e: v for e, v in coeffs.items()
                  if v or getattr(v, "prec", None) is not None}

    # ---- constructors

    @classmethod
    def zero(cls, ring):
        return cls({}, ring)

    @classmethod
    def one(cls, ring):
        return cls({0: ring.one()}, ring)

    @classmethod
    def monomial(cls, coeff, exp, ring):
        return cls({exp: coeff}, ring)

    @classmethod
    def from_scalar(cls, v, ring):
        return cls({0: ring.coerce(v)}, ring)

    @classmethod
    def ring_over(cls, coeff_ring):
        return LaurentRing(coeff_ring)

    # ---- structure

    @property
    def min_exp(self):
        return min(self.c) if self.c else None

    @property
    def max_exp(self):
        return max(self.c) if self.c else None

    @property
    def span(self):
        if not self.c:
            raise ValueError("span of the zero polynomial")
        return max(self.c) - min(self.c)

    def coeff(self, e):
        return self.c.get(e, self.ring.zero())

    def items(self):
        return self.c.items()

    def shift(self, k):
        return LaurentPoly({e + k: v for e, v in self.c.items()}, self.ring)

    def reverse(self):
        """Substitute t -> 1/t."""
        return LaurentPoly({-e: v for e, v in self.c.items()}, self.ring)

    def map_coeffs(self, fn, ring):
        return LaurentPoly({e: fn(v) for e, v in self.c.items()}, ring)

    def as_dense(self):
        """(offset, ascending coefficient list) with list[0] the t^offset term."""
        if not self.c:
            return 0, []
        lo, hi = min(self.c), max(self.c)
        zero = self.ring.zero()
        dense = [zero] * (hi - lo + 1)
        for e, v in self.c.items():
            dense[e - lo] = v
        return lo, dense

    @classmethod
    def from_dense(cls, offset, dense, ring):
        return cls({offset + i: v for i, v in enumerate(dense) if v}, ring)

    # ---- arithmetic

    def _co(self, other):
        if isinstance(other, LaurentPoly):
            return other
        return LaurentPoly({0: self.ring.coerce(other)}, self.ring)

    def __add__(self, other):
        o = self._co(other)
        out = dict(self.c)
        for e, v in o.c.items():
            w = out.get(e)
            out[e] = v if w is None else w + v
        return LaurentPoly(out, self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self.c.items()}, self.ring)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            out = {}
            for e1, v1 in self.c.items():
                for e2, v2 in other.c.items():
                    e = e1 + e2
                    w = out.get(e)
                    p = v1 * v2
                    out[e] = p if w is None else w + p
            return LaurentPoly(out, self.ring)
        s = self.ring.coerce(other)
        return LaurentPoly({e: v * s for e, v in self.c.items()}, self.ring)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        result = LaurentPoly.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scalar_div(self, s):
        inv = self.ring.invert(self.ring.coerce(s))
        return LaurentPoly({e: v * inv for e, v in self.c.items()}, self.ring)

    def exact_div(self, other):
        """Exact Laurent division; raises ArithmeticError on nonzero remainder."""
        if not isinstance(other, LaurentPoly):
            return self.scalar_div(other)
        if not other.c:
            raise ZeroDivisionError("Laurent division by zero")
        if not self.c:
            return LaurentPoly.zero(self.ring)
        lo_n, num = self.as_dense()
        lo_d, den = other.as_dense()
        q, r = pr.pdivmod(num, den, self.ring)
        if pr.pstrip(r):
            raise ArithmeticError("inexact Laurent division")
        return LaurentPoly.from_dense(lo_n - lo_d, q, self.ring)

    def __truediv__(self, other):
        if isinstance(other, LaurentPoly):
            return self.exact_div(other)
        return self.scalar_div(other)

    def __call__(self, x):
        """Evaluate at a scalar x (invertible if negative exponents occur)."""
        if not self.c:
            return self.ring.zero() * x if hasattr(self.ring, "zero") else 0 * x
        acc = None
        xinv = None
        for e, v in self.c.items():
            if e >= 0:
                term = v * x ** e if e else v
            else:
                if xinv is None:
                    xinv = _inv_val(x)
                term = v * xinv ** (-e)
            acc = term if acc is None else acc + term
        return acc

    # ---- comparison / display

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.c == other.c
        try:
            return self.c == self._co(other).c
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __bool__(self):
        return bool(self.c)

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c):
            v = self.c[e]
            if e == 0:
                parts.append(f"{v}")
            elif e == 1:
                parts.append(f"({v})*t")
            else:
                parts.append(f"({v})*t^{e}")
        return " + ".join(parts)


def _inv_val(x):
    try:
        return x.inverse()
    except AttributeError:
        return 1 / x


class LaurentRing:
    """Ring-protocol wrapper so matrices can hold LaurentPoly entries."""

    def __init__(self, coeff_ring):
        self.coeff_ring = coeff_ring
        self.name = "Laurent(%s)" % getattr(coeff_ring, "name", repr(coeff_ring))

    def zero(self):
        return LaurentPoly.zero(self.coeff_ring)

    def one(self):
        return LaurentPoly.one(self.coeff_ring)

    def coerce(self, v):
        if isinstance(v, LaurentPoly):
            return v
        return LaurentPoly.from_scalar(v, self.coeff_ring)

    def invert(self, v):
        v = self.coerce(v)
        if len(v.c) != 1:
            raise ZeroDivisionError("only monomials are units in a Laurent ring")
        e, coeff = next(iter(v.c.items()))
        return LaurentPoly({-e: self.coeff_ring.invert(coeff)}, self.coeff_ring)

    def exact_div(self, a, b):
        return self.coerce(a).exact_div(self.coerce(b))

    def is_zero(self, v):
        return not self.coerce(v)

    def __repr__(self):
        return self.name
