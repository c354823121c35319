"""Ideal points of character curves as Puiseux branches, and valuations
of trace and torsion data along them.

A branch is a parametrization (x(s), z(s)) of the curve near a point at
infinity, found in one of three charts: x to infinity with z finite
(u = 1/x), z to infinity with x finite (u = 1/z), and both to infinity
(u = 1/x, w = 1/z through the origin). Finite limits of the dependent
coordinate are grouped into packets over QQ[c]/(factor) without
factorization beyond squarefree splitting; a packet branch carries all
of its conjugates at once, and is refined into sub-branches only when a
later computation witnesses a zero divisor (dynamic evaluation).

Valuations are orders in the branch parameter s. Torsion along a branch
is computed by lifting the branch to a series-valued representation:
the meridian eigenvalue xi is solved as a series (possibly after
ramifying s and/or adjoining one square root), the standard matrix pair
is assembled over the series ring, and the Wada invariant is evaluated
with series scalars. Every reported entry carries a certification
status; undetermined valuations raise PrecisionError so that drivers
can escalate the truncation order.
"""

import math
from dataclasses import dataclass

from gmpy2 import mpq

from . import polyring as pr
from .corpus import classical_data
from .laurent import LaurentRing
from .presentations import Word, longitude_word, two_bridge_presentation
from .puiseux import BiPoly, expand_at_origin
from .scalars import (QQ, QuotientRing, ZeroDivisorSplit, rat, rational_sqrt)
from .series import (PrecisionError, PuiseuxSeries, SeriesRing,
                     TruncatedSeries, series_sqrt)
from .sl2 import (character_curve, sample_irreducible_characters,
                  trace_reduce)
from .torsion import symmetric_normalize, wada_fraction, wada_invariant

DEFAULT_WORDS = ("a", "ab", "aB")


# ------------------------------------------------------------------ reports


@dataclass(frozen=True)
class ValuationEntry:
    """Valuation verdict for one queried function along one branch."""

    name: str
    valuation: object      # int, mpq, math.inf, or None when undetermined
    bounded: object        # bool, or None when undetermined
    certification: str


@dataclass(frozen=True)
class ValuationReport:
    entries: tuple
    has_pole: object = None

    def entry(self, name):
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


# ----------------------------------------------------------------- branches


@dataclass(eq=False)
class IdealBranch:
    """One Puiseux branch at infinity of a plane curve C(x, z) = 0.

    The parametrization is by the local parameter s: both coordinates
    are Laurent series in s over `ring` (QQ or a tower of quotient
    rings). A packet branch of degree d bundles the d conjugate branches
    obtained by embedding the tower into the complex numbers.
    """

    kind: str
    ring: object
    e: int
    order: int
    x: TruncatedSeries
    z: TruncatedSeries
    poly: object
    packet_degree: int
    label: str

    @property
    def x_series(self):
        return PuiseuxSeries.from_truncated(self.x, self.e)

    @property
    def z_series(self):
        return PuiseuxSeries.from_truncated(self.z, self.e)

    def residual(self):
        """The curve polynomial re-substituted along the branch; zero to
        the working precision (exactly zero for terminating branches)."""
        return self.x.ring.coerce(self.poly.evaluate([self.x, self.z]))

    def __repr__(self):
        return (f"IdealBranch({self.label}, {self.kind}, e={self.e}, "
                f"packet_degree={self.packet_degree})")


def _identity(v):
    return v


def _tower_degree(ring):
    d = 1
    while isinstance(ring, QuotientRing):
        d *= ring.degree
        ring = ring.base
    return d


def _refine_ring(ring, target, factor):
    """Rebuild a quotient tower with `target`'s modulus replaced by one of
    its factors; returns (new_ring, remap) where remap moves elements of
    `ring` into the new tower by reducing coefficients mod the factor."""
    if ring is target:
        new = QuotientRing(ring.base, list(factor), name=ring.gen_name)
        return new, lambda el: new.from_coeffs(list(el.c))
    if isinstance(ring, QuotientRing):
        nbase, rbase = _refine_ring(ring.base, target, factor)
        new = QuotientRing(nbase, [rbase(c) for c in ring.modulus],
                           name=ring.gen_name)
        return new, lambda el: new.from_coeffs([rbase(c) for c in el.c])
    raise ArithmeticError("zero divisor reported from outside the tower")


def refine_branch(branch, split):
    """Split a packet branch along a witnessed factorization of one of
    its tower moduli; returns the list of sub-branches."""
    out = []
    for i, f in enumerate(split.factors):
        ring2, remap = _refine_ring(branch.ring, split.ring, list(f))
        sring2 = SeriesRing(ring2, branch.x.ring.prec)
        out.append(IdealBranch(
            kind=branch.kind, ring=ring2, e=branch.e, order=branch.order,
            x=branch.x.map_coefficients(remap, sring2),
            z=branch.z.map_coefficients(remap, sring2),
            poly=branch.poly, packet_degree=_tower_degree(ring2),
            label=f"{branch.label}.{i}"))
    return out


def _shifted(g, ring, zeta):
    """H(u, y) = G(u, zeta + y) with coefficients coerced into `ring`."""
    if not zeta:
        return {k: ring.coerce(v) for k, v in g.items()}
    jmax = max(j for _, j in g)
    zp = [ring.one()]
    for _ in range(jmax):
        zp.append(zp[-1] * zeta)
    out = {}
    for (a, j), v in g.items():
        vc = ring.coerce(v)
        for t in range(j + 1):
            c = vc * math.comb(j, t) * zp[j - t]
            if not c:
                continue
            key = (a, t)
            s = out.get(key)
            out[key] = c if s is None else s + c
    return out


def _divisors(n):
    n, out, i = abs(n), set(), 1
    while i * i <= n:
        if n % i == 0:
            out.update((i, n // i))
        i += 1
    return sorted(out)


def _rational_roots(f):
    """Rational roots of a squarefree polynomial over QQ, together with
    the monic root-free cofactor."""
    f = pr.pmonic(f, QQ)
    roots = []
    while len(f) > 1:
        if not f[0]:
            roots.append(rat(0))
            f = f[1:]
            continue
        den = math.lcm(*(int(c.denominator) for c in f))
        g = [int(c * den) for c in f]
        found = None
        for a in _divisors(g[0]):
            for b in _divisors(g[-1]):
                for s in (1, -1):
                    cand = rat(s * a, b)
                    if not pr.peval(f, cand):
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        f = pr.pdivmod(f, [-found, rat(1)], QQ)[0]
    return roots, f


def _packets(factor):
    """Packets of a squarefree factor: one QQ packet per rational root,
    plus one quotient-ring packet bundling the rest."""
    roots, cof = _rational_roots(list(factor))
    out = [(QQ, r) for r in roots]
    if len(cof) > 1:
        ring = QuotientRing(QQ, cof, name="c0")
        out.append((ring, ring.gen()))
    return out


def _build_branches(kind, poly, packet_ring, zeta, sol, order, label):
    """Coordinate series for one Puiseux solution, with dynamic
    refinement of extensions created during the expansion itself."""
    zl = sol.lift(zeta)
    work = [(sol.ring, _identity, label)]
    out = []
    while work:
        ring, remap, lab = work.pop(0)
        try:
            sring = SeriesRing(ring, order)
            y = sol.y.map_coefficients(remap, sring)
            u = sring.monomial(remap(sol.u_unit), sol.e)
            recip = u.inverse()
            dep = sring.coerce(remap(zl)) + y
            if kind == "x_to_infinity":
                x, z = recip, dep
            elif kind == "z_to_infinity_x_finite":
                x, z = dep, recip
            else:
                x, z = recip, y.inverse()
            out.append(IdealBranch(
                kind=kind, ring=ring, e=sol.e, order=order, x=x, z=z,
                poly=poly, packet_degree=_tower_degree(ring), label=lab))
        except ZeroDivisorSplit as ex:
            if ex.ring is packet_ring:
                raise
            for i, f in enumerate(ex.factors):
                ring2, remap2 = _refine_ring(ring, ex.ring, list(f))
                work.append((ring2,
                             (lambda v, _a=remap, _b=remap2: _b(_a(v))),
                             f"{lab}.{i}"))
    return out


def _chart_branches(g, kind, order, poly):
    if kind == "both_to_infinity":
        work = [(QQ, rat(0))]
    else:
        ell_map = {}
        for (i, j), v in g.items():
            if i == 0:
                ell_map[j] = v
        ell = pr.pstrip([ell_map.get(j, rat(0))
                         for j in range(max(ell_map) + 1)]) if ell_map else []
        if len(ell) < 2:
            return []
        work = [p for f, _ in pr.pyun(ell, QQ) for p in _packets(f)]
    out = []
    pk = 0
    while work:
        ring, zeta = work.pop(0)
        try:
            h = BiPoly(ring, _shifted(g, ring, zeta))
            sols = expand_at_origin(h, ring, order)
            built = []
            for si, sol in enumerate(sols):
                built.extend(_build_branches(
                    kind, poly, ring, zeta, sol, order,
                    f"{kind}[{pk}.{si}]"))
        except ZeroDivisorSplit as ex:
            if isinstance(ring, QuotientRing) and ex.ring is ring:
                for f in ex.factors:
                    work.extend(_packets(f))
                continue
            raise
        out.extend(built)
        pk += 1
    return out


def ideal_branches(curve, order=8):
    """All Puiseux branches of the curve at infinity.

    `curve` is a CharacterCurve or a plane MPoly in (x, z). Branches are
    truncated at absolute order `order` in the local parameter unless
    they terminate exactly. Packet branches bundle conjugate ideal
    points over an unfactored squarefree modulus.
    """
    poly = curve.poly if hasattr(curve, "poly") else curve
    c = poly.c
    if not c:
        raise ValueError("zero polynomial has no branches")
    n = max(i for i, _ in c)
    m = max(j for _, j in c)
    out = []
    out.extend(_chart_branches({(n - i, j): v for (i, j), v in c.items()},
                               "x_to_infinity", order, poly))
    out.extend(_chart_branches({(m - j, i): v for (i, j), v in c.items()},
                               "z_to_infinity_x_finite", order, poly))
    if (n, m) not in c:
        out.extend(_chart_branches(
            {(n - i, m - j): v for (i, j), v in c.items()},
            "both_to_infinity", order, poly))
    return out


# --------------------------------------------------------------- valuations


def _unit_leading(ring, lead):
    """Certify that a leading coefficient is a unit; raises
    ZeroDivisorSplit when the packet must be refined first."""
    if isinstance(ring, QuotientRing):
        ring.invert(lead)


def _series_valuation(branch, series):
    sring = branch.x.ring
    s = sring.coerce(series)
    v = s.valuation()
    if v is None:
        return math.inf
    _unit_leading(branch.ring, s.coefficient(v))
    return v


def valuation_along_branch(f, branch):
    """Order in the branch parameter s of a polynomial (or pair
    numerator/denominator) in the curve coordinates (x, z).

    Exact by construction once the leading coefficient is certified a
    unit; raises PrecisionError when the truncation cannot decide and
    ZeroDivisorSplit when the packet needs refining.
    """
    if isinstance(f, tuple):
        num, den = f
        vd = _series_valuation(branch, den.evaluate([branch.x, branch.z]))
        if vd is math.inf:
            raise ZeroDivisionError("denominator vanishes along the branch")
        vn = _series_valuation(branch, num.evaluate([branch.x, branch.z]))
        return vn if vn is math.inf else vn - vd
    return _series_valuation(branch, f.evaluate([branch.x, branch.z]))


_LETTERS = {"a": (0, 1), "A": (0, -1), "b": (1, 1), "B": (1, -1)}


def _parse_word(w):
    if isinstance(w, Word):
        name = "".join(("ab"[g] if s > 0 else "AB"[g]) for g, s in w.letters
                       for _ in range(abs(s)))
        return w, (name or "1")
    letters = []
    for ch in w:
        if ch not in _LETTERS:
            raise ValueError(f"unknown generator letter {ch!r}")
        letters.append(_LETTERS[ch])
    return Word(tuple(letters)), (w or "1")


def trace_valuations(branch, words=DEFAULT_WORDS):
    """Valuations of trace functions I_w along the branch.

    The has_pole field is the Culler-Shalen nontriviality signature: an
    ideal point must make some trace function blow up.
    """
    entries = []
    pole = False
    for w in words:
        wd, name = _parse_word(w)
        tr = trace_reduce(wd)
        v = _series_valuation(
            branch, tr.evaluate([branch.x, branch.x, branch.z]))
        if v is math.inf:
            entries.append(ValuationEntry(name, math.inf, True, "exact"))
            continue
        entries.append(ValuationEntry(name, v, v >= 0, "exact"))
        pole = pole or v < 0
    return ValuationReport(tuple(entries), pole)


# --------------------------------------------------------- torsion pipeline


def _m2mul(P, Q):
    return [[P[0][0] * Q[0][0] + P[0][1] * Q[1][0],
             P[0][0] * Q[0][1] + P[0][1] * Q[1][1]],
            [P[1][0] * Q[0][0] + P[1][1] * Q[1][0],
             P[1][0] * Q[0][1] + P[1][1] * Q[1][1]]]


def _m2inv(P):
    dinv = (P[0][0] * P[1][1] - P[0][1] * P[1][0]).inverse()
    return [[P[1][1] * dinv, -P[0][1] * dinv],
            [-P[1][0] * dinv, P[0][0] * dinv]]


def _rep_lift(branch):
    """Series-valued standard representation along the branch, cached:
    (sring, lift, a, b, ram)."""
    cached = getattr(branch, "_rep_lift_cache", None)
    if cached is None:
        sring, lift, xi, ram = _xi_series(branch.x, branch.x.ring)
        x, z = lift(branch.x), lift(branch.z)
        one, zero = sring.one(), sring.zero()
        r = z - x * x + 2
        a = [[xi, one], [zero, x - xi]]
        b = [[xi, zero], [r, x - xi]]
        cached = (sring, lift, a, b, ram)
        branch._rep_lift_cache = cached
    return cached


def longitude_valuation(branch, p, q):
    """Valuation of the longitude trace along the branch.

    Boundedness of this trace is the computable necessary condition for
    the ideal point to give a surface dual to the abelianization class:
    a surface with non-longitudinal boundary slope cannot be dual to it.
    """
    sring, lift, a, b, ram = _rep_lift(branch)
    mats = {(0, 1): a, (1, 1): b, (0, -1): _m2inv(a), (1, -1): _m2inv(b)}
    m = None
    for letter in longitude_word(p, q).letters:
        m = mats[letter] if m is None else _m2mul(m, mats[letter])
    tr = m[0][0] + m[1][1]
    v = tr.valuation()
    if v is None:
        return ValuationEntry("longitude", math.inf, True, "exact")
    _unit_leading(sring.base, tr.coefficient(v))
    val = mpq(v, ram)
    val = int(val) if val.denominator == 1 else val
    return ValuationEntry("longitude", val, val >= 0, "exact")


def _stretch(series, k, sring2):
    prec = None if series.prec is None else series.prec * k
    return TruncatedSeries(sring2, {e * k: v for e, v in series.c.items()},
                           prec)


def _xi_series(x, sring):
    """Meridian eigenvalue as a series: xi^2 - x*xi + 1 = 0.

    Chooses the eigenvalue of valuation min(v(x), 0) (the "big" root at
    a pole of x). May ramify the parameter (returned ram = 2 means the
    new parameter squares to the old one) when the discriminant has odd
    valuation, and may adjoin one square root to the coefficient ring.
    Returns (sring2, lift, xi, ram); lift maps series from `sring` in.
    """
    half = rat(1, 2)
    disc = x * x - 4
    v = disc.valuation()
    if v is None:
        return sring, _identity, x * half, 1
    if v < 0:
        lead = x.coefficient(x.valuation())
        return sring, _identity, (x + series_sqrt(disc, lead)) * half, 1
    ring = sring.base
    lift = _identity
    ram = 1
    if v % 2:
        ram = 2
        sring2 = SeriesRing(ring, 2 * sring.prec)
        lift = lambda f, _r=sring2: _stretch(f, 2, _r)
        x, disc = lift(x), lift(disc)
        sring, v = sring2, 2 * v
    c0 = disc.coefficient(v)
    s0 = rational_sqrt(c0) if ring is QQ else None
    if s0 is None:
        ext = QuotientRing(ring, [-c0, ring.zero(), ring.one()], name="sq")
        sring2 = SeriesRing(ext, sring.prec)
        prev = lift
        lift = lambda f, _p=prev, _c=ext.coerce, _r=sring2: \
            _p(f).map_coefficients(_c, _r)
        x, disc = (f.map_coefficients(ext.coerce, sring2) for f in (x, disc))
        sring, s0 = sring2, ext.gen()
    xi = (x + series_sqrt(disc, s0)) * half
    return sring, lift, xi, ram


def torsion_at_character(p, q, x0, z0, psi=(1, 1)):
    """Normalized torsion polynomial of b(p, q) at an exact curve point."""
    from .sl2 import character_point_to_rep
    pres = two_bridge_presentation(p, q)
    lift = character_point_to_rep(x0, z0)
    w = wada_invariant(pres, [lift.a, lift.b], psi, 0, base=lift.ring)
    return symmetric_normalize(w.as_laurent(LaurentRing(lift.ring)))


def generic_torsion_span(p, q, curve=None, samples=3):
    """Degree span of the normalized torsion at generic characters,
    taken as the maximum over deterministic sample packets."""
    if curve is None:
        curve = character_curve(p, q)
    best = 0
    for _, x0, z0 in sample_irreducible_characters(curve, samples):
        best = max(best, torsion_at_character(p, q, x0, z0).span)
    return best


def _series_quotient(num, den, sring):
    """Dense coefficient list (in t) of the Laurent quotient num/den over
    truncated-series scalars. The division must come out exact to the
    working precision: a visibly nonzero remainder is an invariant
    violation, since the quotient is a Laurent polynomial whenever the
    twisted complex is acyclic. Entries can be zero-to-precision."""
    lo_d = min(den.c)
    d = [sring.coerce(den.c.get(e, 0))
         for e in range(lo_d, max(den.c) + 1)]
    if not d[-1]:
        raise PrecisionError(
            "torsion denominator leading coefficient undetermined, "
            "increase truncation", d[-1].prec)
    if not num.c:
        return []
    lo_n = min(num.c)
    a = [sring.coerce(num.c.get(e, 0))
         for e in range(lo_n, max(num.c) + 1)]
    if len(a) < len(d):
        raise PrecisionError(
            "torsion numerator support undetermined at the working "
            "order, increase truncation")
    inv = d[-1].inverse()
    q = [None] * (len(a) - len(d) + 1)
    r = list(a)
    for i in range(len(q) - 1, -1, -1):
        qi = r[i + len(d) - 1] * inv
        q[i] = qi
        for j in range(len(d)):
            r[i + j] = r[i + j] - qi * d[j]
    if any(r[:len(d) - 1]):
        raise ArithmeticError(
            "internal invariant violation: torsion denominator does "
            "not divide the numerator")
    return q


def torsion_coefficient_valuation(knot, branch, thurston_norm=None,
                                  generic_span=None):
    """Valuation along the branch of the top torsion coefficient c.

    The coefficient examined is the top one of the symmetric
    representative of the torsion polynomial, at exponent
    +thurston_norm. When the generic degree span drops below
    2*thurston_norm the coefficient function vanishes identically on
    the curve and the entry reports valuation +inf; otherwise the
    valuation is computed through a series-valued representation along
    the branch and certified exact once the support window, the
    symmetry of the window, and the unit leading coefficient are all
    visible at the working order.
    """
    p, q = knot if isinstance(knot, tuple) else (knot.p, knot.q)
    if thurston_norm is None:
        thurston_norm = classical_data(p, q).thurston_norm
    if generic_span is None:
        generic_span = generic_torsion_span(p, q)
    if generic_span < 2 * thurston_norm:
        return ValuationEntry("c", math.inf, True,
                              "generic degree drop: c vanishes on the curve")
    pres = two_bridge_presentation(p, q)
    sring, lift, a, b, ram = _rep_lift(branch)
    num, den = wada_fraction(pres, [a, b], (1, 1), 0, base=sring)
    tau = _series_quotient(num, den, sring)
    vis = [i for i, cc in enumerate(tau) if cc]
    if not vis:
        known = [cc.prec for cc in tau if cc.prec is not None]
        if not known:
            return ValuationEntry("c", math.inf, True, "exact")
        raise PrecisionError(
            f"valuation undetermined at order {min(known)}, "
            "increase truncation", min(known))
    lo, hi = vis[0], vis[-1]
    if hi - lo > 2 * thurston_norm:
        raise ArithmeticError(
            "internal invariant violation: torsion degree span "
            f"{hi - lo} exceeds 2*norm = {2 * thurston_norm}")
    if hi - lo < 2 * thurston_norm:
        raise PrecisionError(
            "torsion support edges undetermined at the working order, "
            "increase truncation")
    window = tau[lo:hi + 1]
    rev = window[::-1]
    if (any(u - v for u, v in zip(window, rev))
            and any(u + v for u, v in zip(window, rev))):
        raise PrecisionError(
            "torsion symmetry not visible at the working order, "
            "increase truncation")
    c = tau[hi]
    v = c.valuation()
    if v != tau[lo].valuation():
        raise PrecisionError(
            "torsion end coefficients disagree in valuation at the "
            "working order, increase truncation")
    _unit_leading(sring.base, c.coefficient(v))
    val = mpq(v, ram)
    val = int(val) if val.denominator == 1 else val
    return ValuationEntry("c", val, val >= 0, "exact")


# ------------------------------------------------------------------- driver


def _entry_dict(e, key="name"):
    return {key: e.name, "valuation": e.valuation, "bounded": e.bounded,
            "certification": e.certification}


def _branch_row(branch, knot, norm, generic, words, tolerant):
    res = branch.residual()
    if res:
        raise ArithmeticError(
            "internal invariant violation: branch does not satisfy the "
            f"curve equation ({branch.label})")
    row = {
        "label": branch.label,
        "kind": branch.kind,
        "e": branch.e,
        "packet_degree": branch.packet_degree,
        "order": branch.order,
        "x": _ps_data(branch.x_series),
        "z": _ps_data(branch.z_series),
        "resubstitution": ("exact" if res.prec is None
                           else f"zero to order {res.prec}"),
    }
    traces = []
    pole = False
    for w in words:
        _, name = _parse_word(w)
        try:
            rep = trace_valuations(branch, [w])
            e = rep.entries[0]
            pole = pole or (e.valuation is not math.inf and e.valuation < 0)
        except PrecisionError as ex:
            if not tolerant:
                raise
            e = ValuationEntry(name, None, None, f"undetermined: {ex}")
        traces.append(_entry_dict(e, key="word"))
    row["traces"] = traces
    row["has_pole"] = pole
    try:
        lam = longitude_valuation(branch, *knot)
    except PrecisionError as ex:
        if not tolerant:
            raise
        lam = ValuationEntry("longitude", None, None, f"undetermined: {ex}")
    row["longitude"] = _entry_dict(lam)
    row["dual_surface_consistent"] = (None if lam.valuation is None
                                      else bool(lam.bounded))
    try:
        t = torsion_coefficient_valuation(knot, branch, norm, generic)
    except PrecisionError as ex:
        if not tolerant:
            raise
        t = ValuationEntry("c", None, None, f"undetermined: {ex}")
    row["torsion"] = _entry_dict(t)
    return row


def _ps_data(ps):
    return {"e": ps.e, "truncation": ps.truncation,
            "terms": tuple((k, v) for k, v in ps.terms)}


def check_ideal_points(p, q, *, truncation=8, max_truncation=64,
                       words=DEFAULT_WORDS, thurston_norm=None):
    """Full per-branch ideal-point report for b(p, q).

    Enumerates branches, computes trace and top-torsion-coefficient
    valuations along each, doubles the truncation order on undetermined
    valuations up to max_truncation, and records the survivors as
    precision failures. Red flags collect branches that would contradict
    the finiteness statement: generic degree span equal to 2*norm and a
    certified negative valuation of c.
    """
    knot = classical_data(p, q)
    norm = thurston_norm if thurston_norm is not None else knot.thurston_norm
    curve = character_curve(p, q)
    generic = generic_torsion_span(p, q, curve)
    order = truncation
    while True:
        tolerant = order * 2 > max_truncation
        try:
            rows = []
            queue = list(ideal_branches(curve, order))
            while queue:
                b = queue.pop(0)
                try:
                    rows.append(_branch_row(b, (p, q), norm, generic, words,
                                            tolerant))
                except ZeroDivisorSplit as ex:
                    queue = refine_branch(b, ex) + queue
            break
        except PrecisionError:
            order *= 2
    failures = []
    for row in rows:
        for e in row["traces"] + [row["torsion"]]:
            if e["valuation"] is None:
                failures.append({"branch": row["label"],
                                 "entry": e.get("word", e.get("name")),
                                 "certification": e["certification"]})
    red = []
    for row in rows:
        t = row["torsion"]
        if (generic == 2 * norm and t["certification"] == "exact"
                and t["valuation"] is not math.inf and t["valuation"] < 0
                and row["dual_surface_consistent"] is not False):
            red.append({
                "branch": row["label"],
                "c_valuation": t["valuation"],
                "generic_span": generic,
                "thurston_norm": norm,
                "longitude_valuation": row["longitude"]["valuation"],
                "trace_signature": {e["word"]: e["valuation"]
                                    for e in row["traces"]},
                "note": ("certified negative valuation of the top torsion "
                         "coefficient at an ideal point whose bounded-trace "
                         "signature does not rule out a dual "
                         "norm-minimizing surface"),
            })
    return {
        "knot": knot.name,
        "p": p,
        "q": q,
        "thurston_norm": norm,
        "generic_span": generic,
        "truncation": order,
        "fibered": knot.fibered,
        "genus": knot.genus,
        "curve": tuple(sorted((i, j, v) for (i, j), v in curve.poly.c.items())),
        "branches": rows,
        "red_flags": red,
        "precision_failures": failures,
    }
