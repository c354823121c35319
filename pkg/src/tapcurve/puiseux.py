"""Newton-Puiseux expansion of plane curve germs.

`expand_at_origin(H, ring, order)` enumerates the solutions y(s) of
H(u, y) = 0 passing through (0, 0), parametrized as

    u = unit * s^e,    y = y(s)  with  y(0) = 0,

over exact coefficient rings.  Ramification is absorbed into the
parameter by Duval's trick: for an edge of slope p/e the substitution
u = T0^b s^e, y = T0^a s^p (1 + y1) with a*e - b*p = 1 needs no root of
T0, so algebraic extensions appear only when a characteristic polynomial
has no root in the current ring.  Extensions are never factored beyond
squarefree parts; a reducible one represents a packet of conjugate
branches and is only refined when some inversion actually hits a zero
divisor, which surfaces as `ZeroDivisorSplit`.  Splits of an extension
created here are handled here; splits of the caller's ring propagate.

Terminating expansions are detected exactly (the y = 0 root after a
shift divides out) and returned with infinite precision; everything else
is truncated at the requested order.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd

from .polyring import pdeg, pyun
from .scalars import QuotientRing, ZeroDivisorSplit
from .series import SeriesRing, TruncatedSeries

_MAX_DEPTH = 24


def _identity(v):
    return v


class BiPoly:
    """Polynomial in (u, y) keyed by (u exponent, y exponent)."""

    __slots__ = ("ring", "c")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.c = {k: v for k, v in coeffs.items() if v}

    def support(self):
        return set(self.c)

    def y_valuation(self):
        return min(j for _, j in self.c)

    def div_y(self, k):
        return BiPoly(self.ring,
                      {(i, j - k): v for (i, j), v in self.c.items()})

    def columns(self, sring):
        """Coefficients of powers of y as exact series in u, plus the
        columns of the y-derivative."""
        jmax = max(j for _, j in self.c)
        cols = [{} for _ in range(jmax + 1)]
        for (i, j), v in self.c.items():
            cols[j][i] = v
        cs = [TruncatedSeries(sring, d, None) for d in cols]
        ds = [(j + 1) * cs[j + 1] for j in range(jmax)]
        return cs, ds or [sring.zero()]

    def __repr__(self):
        return " + ".join(f"({v})*u^{i}*y^{j}"
                          for (i, j), v in sorted(self.c.items())) or "0"


def lower_edges(support):
    """Descending edges of the lower Newton polygon.

    `support` is an iterable of (u exponent, y exponent) pairs.  Returns
    [(p, e, j_lo, i_lo), ...] ordered by increasing y exponent, where the
    edge drops from (j_lo, i_lo) with reduced slope p/e, so it carries
    the solutions with y of valuation p/e in u.
    """
    best = {}
    for i, j in support:
        if j not in best or i < best[j]:
            best[j] = i
    pts = sorted(best.items())
    hull = []
    for j, i in pts:
        while len(hull) >= 2:
            (j1, i1), (j2, i2) = hull[-2], hull[-1]
            if (j2 - j1) * (i - i1) - (i2 - i1) * (j - j1) <= 0:
                hull.pop()
            else:
                break
        hull.append((j, i))
    edges = []
    for (j1, i1), (j2, i2) in zip(hull, hull[1:]):
        if i2 < i1:
            g = gcd(i1 - i2, j2 - j1)
            edges.append(((i1 - i2) // g, (j2 - j1) // g, j1, i1))
    return edges


@dataclass(eq=False)
class PuiseuxSolution:
    """One branch (or packet of conjugate branches) through the origin.

    `ring` may be a tower of quotient rings over the ring the expansion
    was called with; `lift` embeds the original coefficients into it.
    The parametrization is u = u_unit * s^e, y = the stored series.
    """

    ring: object
    lift: object
    e: int
    u_unit: object
    y: TruncatedSeries

    @property
    def exact(self):
        return self.y.prec is None


def _duval(p, e):
    # a*e - b*p = 1 with both nonnegative
    a = pow(e, -1, p) if p > 1 else 1
    return a, (a * e - 1) // p


def _scaled(H, K2, lift2, root, a, b, p, e):
    """Substitute u = root^b s^e, y = root^a s^p (1 + y1) and divide by
    the minimal power of s."""
    level = min(e * i + p * j for i, j in H.c)
    powers = {}

    def rpow(n):
        if n not in powers:
            powers[n] = root ** n
        return powers[n]

    out = {}
    for (i, j), cv in H.c.items():
        base = lift2(cv) * rpow(b * i + a * j)
        se = e * i + p * j - level
        for t in range(j + 1):
            cf = comb(j, t) * base
            key = (se, t)
            cur = out.get(key)
            out[key] = cf if cur is None else cur + cf
    return BiPoly(K2, out)


def _horner(cols, y, sring):
    acc = sring.zero()
    for c in reversed(cols):
        acc = acc * y + c
    return acc


def _solve_regular(cols, dcols, sring, order):
    """Newton iteration for the unique solution with y(0) = 0 when
    dH/dy(0, 0) is a unit.  Exact inputs keep the iterate exact, so the
    residual valuation is an honest progress measure."""
    y = sring.zero()
    for _ in range(order.bit_length() + 8):
        py = _horner(cols, y, sring)
        if not py.c:
            return y
        verr = min(py.c)
        if verr >= order:
            return TruncatedSeries(sring, y.c, order)
        corr = py * _horner(dcols, y, sring).inverse()
        nxt = y - corr
        y = TruncatedSeries(sring, {k: v for k, v in nxt.c.items()
                                    if k < order}, None)
    raise ArithmeticError("newton iteration failed to converge")


def _compose(s2, lift2, root, a, b, p, e):
    """Graft an inner solution y1(s) onto the edge substitution."""
    def lift(v, inner=s2.lift, outer=lift2):
        return inner(outer(v))

    sring = s2.y.ring
    u_unit = s2.lift(root ** b) * s2.u_unit ** e
    const = s2.lift(root ** a) * s2.u_unit ** p
    y = ((sring.one() + s2.y) * sring.coerce(const)).shift(p * s2.e)
    return PuiseuxSolution(s2.ring, lift, e * s2.e, u_unit, y)


def expand_at_origin(H, ring, order, depth=0):
    """All solutions of H(u, y) = 0 through the origin with y -> 0.

    H must not be divisible by u.  Solutions are truncated at absolute
    order `order` in their own parameter unless they terminate exactly.
    """
    if depth > _MAX_DEPTH:
        raise ArithmeticError("puiseux recursion exceeded its depth bound")
    sols = []
    k = H.y_valuation()
    if k:
        H = H.div_y(k)
        sols.append(PuiseuxSolution(ring, _identity, 1, ring.one(),
                                    SeriesRing(ring, order).zero()))
    if (0, 0) in H.c:
        return sols
    for p, e, j_lo, i_lo in lower_edges(H.support()):
        level = e * i_lo + p * j_lo
        ks = {(j - j_lo) // e: v for (i, j), v in H.c.items()
              if e * i + p * j == level}
        phi = [ks.get(t, ring.zero()) for t in range(max(ks) + 1)]
        a, b = _duval(p, e)
        for psi, mult in pyun(phi, ring):
            pending = [psi]
            while pending:
                mod = pending.pop()
                if pdeg(mod) == 1:
                    K2, root, lift2 = ring, -mod[0], _identity
                else:
                    K2 = QuotientRing(ring, mod, name=f"t{depth}")
                    root, lift2 = K2.gen(), K2.coerce
                try:
                    H2 = _scaled(H, K2, lift2, root, a, b, p, e)
                    if mult == 1:
                        sring2 = SeriesRing(K2, order)
                        cols, dcols = H2.columns(sring2)
                        y1 = _solve_regular(cols, dcols, sring2, order)
                        inner = [PuiseuxSolution(K2, _identity, 1,
                                                 K2.one(), y1)]
                    else:
                        inner = expand_at_origin(H2, K2, order, depth + 1)
                except ZeroDivisorSplit as ex:
                    if K2 is not ring and ex.ring is K2:
                        # our own extension was reducible in a way the
                        # computation could feel: refine and redo
                        pending.append(list(ex.factors[0]))
                        pending.append(list(ex.factors[1]))
                        continue
                    raise
                for s2 in inner:
                    sols.append(_compose(s2, lift2, root, a, b, p, e))
    return sols


def solution_residual(H, sol):
    """H re-evaluated along the solution; zero to working precision (and
    exactly zero for terminating branches) when the solution is sound."""
    sring = sol.y.ring
    u = sring.monomial(sol.u_unit, sol.e)
    jmax = max(j for _, j in H.c)
    cols = [sring.zero() for _ in range(jmax + 1)]
    for (i, j), v in H.c.items():
        cols[j] = cols[j] + sring.coerce(sol.lift(v)) * u ** i
    return _horner(cols, sol.y, sring)
