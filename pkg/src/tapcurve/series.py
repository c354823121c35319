"""Truncated Laurent series in one local parameter.

Elements of `SeriesRing(base, prec)` are finite Laurent tails
sum c_k s^k with coefficients in an exact base ring.  Each series carries
its own absolute precision: `prec = None` means the element is an exact
Laurent polynomial, `prec = N` means coefficients are known for every
exponent below N and unknown from N on.  Arithmetic propagates precision
pessimistically, so a computed coefficient is always trustworthy.

The ring-level `prec` is the relative budget used whenever an exact
element is fed into an operation with an infinite expansion (inversion,
square roots): the result keeps that many terms past its leading one.

`is_zero` deserves a warning: a series whose known coefficients all
vanish is reported as zero even though a nonzero tail could hide beyond
the precision horizon.  Callers that need certainty re-run the
computation at a higher truncation order; `valuation` is the honest
variant and raises `PrecisionError` instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq


class PrecisionError(ArithmeticError):
    """A quantity is not determined at the current truncation order."""

    def __init__(self, message, order=None):
        super().__init__(message)
        self.order = order


def _min_prec(p1, p2):
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    return min(p1, p2)


class TruncatedSeries:
    __slots__ = ("ring", "c", "prec")

    def __init__(self, ring, coeffs, prec):
        self.ring = ring
        if prec is not None:
            coeffs = {k: v for k, v in coeffs.items() if k < prec and v}
        else:
            coeffs = {k: v for k, v in coeffs.items() if v}
        self.c = coeffs
        self.prec = prec

    # -- structure ---------------------------------------------------------

    def valuation(self):
        """Exponent of the first nonzero term.

        Returns None for the exact zero series.  Raises PrecisionError when
        every known coefficient vanishes but the tail is uncertain.
        """
        if self.c:
            return min(self.c)
        if self.prec is None:
            return None
        raise PrecisionError(
            f"valuation undetermined at order {self.prec}, "
            "increase truncation", order=self.prec)

    def coefficient(self, k):
        return self.c.get(k, self.ring.base_zero)

    def leading(self):
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("zero series has no leading term")
        return v, self.c[v]

    def truncate(self, prec):
        return TruncatedSeries(self.ring, self.c, _min_prec(self.prec, prec))

    def shift(self, k):
        """Multiply by s**k."""
        prec = None if self.prec is None else self.prec + k
        return TruncatedSeries(
            self.ring, {e + k: v for e, v in self.c.items()}, prec)

    def map_coefficients(self, fn, new_ring):
        return TruncatedSeries(
            new_ring, {e: fn(v) for e, v in self.c.items()}, self.prec)

    def _vmin(self):
        # lower bound for the valuation, usable even when uncertain
        if self.c:
            return min(self.c)
        return self.prec  # None for exact zero: treated as +infinity

    # -- arithmetic --------------------------------------------------------

    def _co(self, other):
        if isinstance(other, TruncatedSeries):
            if other.ring is not self.ring:
                raise TypeError("series from different rings")
            return other
        return self.ring.coerce(other)

    def __add__(self, other):
        other = self._co(other)
        c = dict(self.c)
        for e, v in other.c.items():
            c[e] = c.get(e, self.ring.base_zero) + v
        return TruncatedSeries(self.ring, c, _min_prec(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(
            self.ring, {e: -v for e, v in self.c.items()}, self.prec)

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) + (-self)

    def __mul__(self, other):
        other = self._co(other)
        if (not self.c and self.prec is None) or \
                (not other.c and other.prec is None):
            return TruncatedSeries(self.ring, {}, None)
        v1, v2 = self._vmin(), other._vmin()
        prec = _min_prec(
            None if self.prec is None else self.prec + v2,
            None if other.prec is None else other.prec + v1)
        c = {}
        for e1, a in self.c.items():
            for e2, b in other.c.items():
                e = e1 + e2
                if prec is not None and e >= prec:
                    continue
                p = a * b
                if e in c:
                    c[e] = c[e] + p
                else:
                    c[e] = p
        return TruncatedSeries(self.ring, c, prec)

    __rmul__ = __mul__

    def inverse(self):
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("series is zero")
        lead_inv = self.ring.base.invert(self.c[v])
        if len(self.c) == 1 and self.prec is None:
            return TruncatedSeries(self.ring, {-v: lead_inv}, None)
        # u = 1 + h with h of positive valuation; invert by Newton doubling
        rel = self.ring.prec if self.prec is None else self.prec - v
        u = self.shift(-v) * lead_inv
        u = u.truncate(rel)
        one = self.ring.one()
        w = one
        known = 1
        while known < rel:
            known = min(2 * known, rel)
            # w is correct mod s^(known/2); the Newton step makes the zero
            # completion correct mod s^known, so re-tag before multiplying
            # or the precision tracker would pin every later step down
            wk = TruncatedSeries(self.ring, w.c, known)
            w = wk * (2 * one - u * wk)
        return (w * lead_inv).shift(-v).truncate(rel - v)

    def __truediv__(self, other):
        return self * self._co(other).inverse()

    def __rtruediv__(self, other):
        return self._co(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparisons -------------------------------------------------------

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        try:
            other = self._co(other)
        except (TypeError, ValueError):
            return NotImplemented
        prec = _min_prec(self.prec, other.prec)
        for e in set(self.c) | set(other.c):
            if prec is not None and e >= prec:
                continue
            if self.coefficient(e) != other.coefficient(e):
                return False
        return True

    def __ne__(self, other):
        out = self.__eq__(other)
        return out if out is NotImplemented else not out

    def __repr__(self):
        if not self.c and self.prec is None:
            return "0"
        bits = [f"({v})*s^{e}" for e, v in sorted(self.c.items())]
        if self.prec is not None:
            bits.append(f"O(s^{self.prec})")
        return " + ".join(bits) if bits else "0"


@dataclass(eq=False)
class SeriesRing:
    """Ring protocol wrapper so series plug into the generic linear algebra.

    `prec` is the relative truncation budget: how many terms past the
    leading one survive operations with infinite expansions.
    """

    base: object
    prec: int

    def __post_init__(self):
        self.base_zero = self.base.zero()
        self.name = f"{getattr(self.base, 'name', self.base)}[[s]]/O(s^{self.prec})"

    def zero(self):
        return TruncatedSeries(self, {}, None)

    def one(self):
        return TruncatedSeries(self, {0: self.base.one()}, None)

    def gen(self):
        return TruncatedSeries(self, {1: self.base.one()}, None)

    def monomial(self, coeff, exp):
        return TruncatedSeries(self, {exp: self.base.coerce(coeff)}, None)

    def from_terms(self, terms, prec):
        return TruncatedSeries(
            self, {e: self.base.coerce(v) for e, v in terms.items()}, prec)

    def coerce(self, v):
        if isinstance(v, TruncatedSeries):
            if v.ring is self:
                return v
            raise TypeError("series from a different ring")
        return TruncatedSeries(self, {0: self.base.coerce(v)}, None)

    def invert(self, a):
        return self.coerce(a).inverse()

    def exact_div(self, a, b):
        return self.coerce(a) * self.coerce(b).inverse()

    def is_zero(self, a):
        # zero to the known precision; see the module docstring caveat
        return not self.coerce(a)

    def __repr__(self):
        return self.name


def series_sqrt(a, lead_sqrt):
    """Square root of a series whose valuation is even.

    `lead_sqrt` must square to the leading coefficient; choosing it is the
    caller's job since it may require a base-ring extension.
    """
    v, lead = a.leading()
    if v % 2:
        raise ValueError("series of odd valuation has no square root here")
    ring = a.ring
    r0 = ring.base.coerce(lead_sqrt)
    if r0 * r0 != lead:
        raise ValueError("lead_sqrt does not square to the leading coefficient")
    rel = ring.prec if a.prec is None else a.prec - v
    half = ring.base.invert(ring.base.coerce(2))
    u = (a.shift(-v) * ring.base.invert(lead)).truncate(rel)
    r = ring.one()
    known = 1
    while known < rel:
        known = min(2 * known, rel)
        rk = TruncatedSeries(ring, r.c, known)  # same re-tag as in inverse
        r = (rk + u * rk.inverse()) * half
    return (r * r0).shift(v // 2).truncate(v // 2 + rel)


@dataclass(eq=False)
class PuiseuxSeries:
    """Rational-exponent view of one branch coordinate.

    Exponents are rationals with denominator dividing the ramification
    index e, strictly increasing, all below the truncation order; the
    truncation is None for exactly known (terminating) series.
    """

    e: int
    terms: tuple
    truncation: object

    def __post_init__(self):
        last = None
        for k, v in self.terms:
            if not v:
                raise ValueError("zero coefficient stored in Puiseux series")
            if (k * self.e).denominator != 1:
                raise ValueError(
                    f"exponent {k} has denominator not dividing e={self.e}")
            if last is not None and k <= last:
                raise ValueError("exponents must increase strictly")
            if self.truncation is not None and k >= self.truncation:
                raise ValueError("term at or beyond the truncation order")
            last = k

    @classmethod
    def from_truncated(cls, series, e):
        """View a TruncatedSeries in s as a Puiseux series in s^(1/e)."""
        terms = tuple((mpq(k, e), series.c[k]) for k in sorted(series.c))
        trunc = None if series.prec is None else mpq(series.prec, e)
        return cls(e, terms, trunc)

    @property
    def valuation(self):
        return self.terms[0][0] if self.terms else None

    def __repr__(self):
        if not self.terms:
            body = "0"
        else:
            body = " + ".join(f"{v}*s^({k})" for k, v in self.terms[:6])
            if len(self.terms) > 6:
                body += " + ..."
        tail = "" if self.truncation is None else f" + O(s^{self.truncation})"
        return body + tail
