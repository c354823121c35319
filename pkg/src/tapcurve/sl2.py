"""SL(2) character machinery for two-generator groups.

Traces of words reduce to polynomials in the coordinates x = tr(a),
y = tr(b), z = tr(ab) by the Cayley-Hamilton identities. Substituting the
generic representation pair over Q[x, z][xi]/(xi^2 - x*xi + 1) into a
two-bridge relator and eliminating xi yields the defining polynomial of the
character curve in the (x, z) plane (meridians are conjugate, so y = x).
Points of the curve with nonvanishing commutator certificate lift back to
explicit matrix pairs, over Q itself or a quadratic extension.
"""

from dataclasses import dataclass

import gmpy2

from . import polyring as pr
from .mpoly import MPoly, MPolyRing, mpoly_gcd, squarefree_part
from .presentations import Word, two_bridge_presentation
from .scalars import (QQ, QRElement, QuotientRing, ZeroDivisorSplit, rat,
                      rational_sqrt)

_X = MPoly.var(0, 3)
_Y = MPoly.var(1, 3)
_Z = MPoly.var(2, 3)

_TRACE_MEMO = {}


def word_image(w, images):
    """Multiply out generator images along a word.

    Inverse letters use the adjugate, so every image must have determinant
    one; this keeps the computation division-free and valid over any
    commutative ring. Entries only need +, -, *.
    """
    a0 = images[0]
    one = a0[0][0] * a0[1][1] - a0[0][1] * a0[1][0]
    zero = one - one
    out = [[one, zero], [zero, one]]
    for g, s in w:
        m = images[g]
        if s < 0:
            m = [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
        out = [[out[0][0] * m[0][0] + out[0][1] * m[1][0],
                out[0][0] * m[0][1] + out[0][1] * m[1][1]],
               [out[1][0] * m[0][0] + out[1][1] * m[1][0],
                out[1][0] * m[0][1] + out[1][1] * m[1][1]]]
    return out


def trace_reduce(w):
    """Trace of a word in two generators as a polynomial in (x, y, z).

    x = tr(a), y = tr(b), z = tr(ab). Words mentioning a third generator are
    rejected; the reduction identities are specific to rank two.
    """
    letters = tuple(w)
    for g, _ in letters:
        if g not in (0, 1):
            raise ValueError("trace reduction only covers two-generator words")
    return _trace(letters)


def _cyclic_reduce(letters):
    ls = Word(letters).reduced().letters
    while len(ls) >= 2 and ls[0][0] == ls[-1][0] and ls[0][1] == -ls[-1][1]:
        ls = ls[1:-1]
    return ls


def _canonical_key(ls):
    """Minimal rotation over the word and its inverse; traces are invariant
    under both."""
    if not ls:
        return ()
    inv = tuple((g, -s) for g, s in reversed(ls))
    n = len(ls)
    return min(seq[i:] + seq[:i] for seq in (ls, inv) for i in range(n))


def _trace(letters):
    ls = _cyclic_reduce(letters)
    key = _canonical_key(ls)
    hit = _TRACE_MEMO.get(key)
    if hit is not None:
        return hit
    val = _trace_core(ls)
    _TRACE_MEMO[key] = val
    return val


def _trace_core(ls):
    n = len(ls)
    if n == 0:
        return MPoly.constant(2, 3)
    if n == 1:
        return _X if ls[0][0] == 0 else _Y
    # tr(u g^-1) = tr(u) tr(g) - tr(u g): strictly fewer inverse letters
    for i, (g, s) in enumerate(ls):
        if s < 0:
            u = ls[i + 1:] + ls[:i]
            tg = _X if g == 0 else _Y
            return _trace(u) * tg - _trace(u + ((g, 1),))
    # tr(g g u) = tr(g) tr(g u) - tr(u): strictly shorter positive words
    for i in range(n):
        if ls[i][0] == ls[(i + 1) % n][0]:
            rot = ls[i:] + ls[:i]
            tg = _X if ls[i][0] == 0 else _Y
            return tg * _trace(rot[1:]) - _trace(rot[2:])
    # cyclically alternating positive word: a power of ab up to rotation
    k = n // 2
    t_prev, t_cur = MPoly.constant(2, 3), _Z
    for _ in range(k - 1):
        t_prev, t_cur = t_cur, _Z * t_cur - t_prev
    return t_cur


def irreducibility_certificate(x, y, z):
    """tr of the commutator minus two; vanishes exactly on reducible
    characters."""
    return x * x + y * y + z * z - x * y * z - 4


def trace_function_on_curve(w, x0, z0):
    """Evaluate the trace polynomial of a word at a character with y = x."""
    return trace_reduce(w).evaluate([x0, x0, z0])


@dataclass(eq=False)
class GenericPair:
    """Generic two-generator pair over Q[x, z][xi]/(xi^2 - x xi + 1).

    tr(a) = tr(b) = x and tr(ab) = z hold identically; r = z - x^2 + 2 is
    the lower-left entry of b and cuts out the reducible locus at r = 0.
    """

    ring: QuotientRing
    a: list
    b: list
    x: MPoly
    z: MPoly
    r: QRElement
    xi: QRElement


def generic_pair():
    x = MPoly.var(0, 2)
    z = MPoly.var(1, 2)
    one = MPoly.one(2)
    ring = QuotientRing(MPolyRing(2), [one, -x, one], name="xi")
    xi = ring.gen()
    xibar = ring.from_base(x) - xi
    r = ring.from_base(z - x * x + 2)
    a = [[xi, ring.one()], [ring.zero(), xibar]]
    b = [[xi, ring.zero()], [r, xibar]]
    return GenericPair(ring, a, b, x, z, r, xi)


@dataclass(eq=False)
class CharacterCurve:
    """Defining polynomial of the nonabelian character curve of b(p, q) in
    the coordinates x = tr(a) = tr(b), z = tr(ab); squarefree, integer
    primitive, positive leading coefficient."""

    poly: MPoly
    p: int
    q: int


def character_curve(p, q):
    """Character curve of the two-bridge knot b(p, q).

    Substitutes the generic pair into the relator a w b^-1 w^-1, rewritten
    as the division-free condition (Phi a) W = W (Phi b) with W the image of
    w. Of the four matrix entries one is identically zero and another is a
    module combination of the remaining two, so the ideal of the curve is
    generated by the xi-components of those two; the curve polynomial is
    the squarefree part of their gcd.
    """
    if q % 2 == 0:
        raise ValueError(
            f"character curve needs the odd normal form: b({p}, {q}) with "
            f"even q does not present a knot group; use q = {p - q} "
            f"(mirror) or q = {pow(q, -1, p)}")
    pres = two_bridge_presentation(p, q)
    gp = generic_pair()
    rel = pres.relators[0].letters
    wm = word_image(Word(rel[1:p]), [gp.a, gp.b])
    xdiff = gp.xi + gp.xi - gp.ring.from_base(gp.x)
    e1 = wm[1][0] - gp.r * wm[0][1]
    e2 = wm[1][1] + xdiff * wm[0][1]
    gens = [comp for e in (e1, e2) for comp in e.c if comp]
    if not gens:
        raise ArithmeticError(
            "character variety equations vanished identically for "
            f"b({p}, {q})")
    g = gens[0]
    for h in gens[1:]:
        g = mpoly_gcd(g, h)
    c = squarefree_part(g)
    if c.degree(0) <= 0 and c.degree(1) <= 0:
        raise ArithmeticError(
            f"character curve of b({p}, {q}) degenerated to a constant")
    return CharacterCurve(c, p, q)


@dataclass(eq=False)
class LiftedRep:
    """Explicit matrix pair over `ring` realizing a character point; xi is
    the chosen eigenvalue of the first meridian image."""

    ring: object
    a: list
    b: list
    xi: object


def character_point_to_rep(x0, z0, curve=None):
    """Lift a character curve point (x0, z0) to a matrix pair.

    Requires the point to lie on the curve (when one is supplied) and the
    commutator certificate to be nonzero; reducible characters have no
    lift in this normal form. The pair lives over the coordinates' ring
    when the meridian eigenvalue xi is rational there, and over the
    quadratic extension by xi^2 - x0 xi + 1 otherwise.
    """
    ring = None
    for v in (x0, z0):
        if isinstance(v, QRElement):
            ring = v.ring
    if ring is None:
        x0, z0 = rat(x0), rat(z0)
    else:
        x0, z0 = ring.coerce(x0), ring.coerce(z0)
    if curve is not None:
        if curve.poly.evaluate([x0, z0]):
            raise ValueError(
                f"character point ({x0!r}, {z0!r}) is not on the curve")
    if not irreducibility_certificate(x0, x0, z0):
        raise ValueError("no irreducible lift at this character")
    r = z0 - x0 * x0 + 2
    disc = x0 * x0 - 4
    xi = None
    if ring is None:
        if not disc:
            xi = x0 / 2
        elif disc > 0:
            s = rational_sqrt(disc)
            if s is not None:
                xi = (x0 + s) / 2
        if xi is None:
            ext = QuotientRing(QQ, [rat(1), -x0, rat(1)], name="xi")
            xi = ext.gen()
            x0, z0, r = (ext.from_base(v) for v in (x0, z0, r))
            ring = ext
        else:
            ring = QQ
    else:
        if not disc:
            xi = x0 * rat(1, 2)
        else:
            ext = QuotientRing(ring, [ring.one(), -x0, ring.one()], name="xi")
            xi = ext.gen()
            x0, z0, r = (ext.coerce(v) for v in (x0, z0, r))
            ring = ext
    xibar = x0 - xi
    if isinstance(xi, QRElement):
        one, zero = ring.one(), ring.zero()
    else:
        one, zero = rat(1), rat(0)
    a = [[xi, one], [zero, xibar]]
    b = [[xi, zero], [r, xibar]]
    return LiftedRep(ring, a, b, xi)


def sample_irreducible_characters(curve, count, start=5):
    """Deterministic exact sample points on {C = 0} with irreducible lifts.

    Walks half-integer values of x; each sample is the whole packet of
    z-values above x0, i.e. the point (x0, z0) over the quotient ring
    QQ[z0]/(squarefree part of C(x0, z)). Packets where the commutator
    certificate is not invertible are skipped, so every returned sample
    lifts through character_point_to_rep. Returns (ring, x0, z0) triples;
    linear packets are collapsed to plain rational points over QQ.
    """
    poly = curve.poly if hasattr(curve, "poly") else curve
    out, k = [], 0
    while len(out) < count and k < 24 * (count + 4):
        x0 = rat(start + k, 2)
        k += 1
        acc = {}
        for (i, j), c in poly.c.items():
            acc[j] = acc.get(j, rat(0)) + c * x0 ** i
        cz = pr.pstrip([acc.get(j, rat(0)) for j in range(max(acc) + 1)])
        if len(cz) < 2:
            continue
        g = pr.pmonic(pr.psquarefree(cz, QQ), QQ)
        if len(g) == 2:
            ring, x0e, z0 = QQ, x0, -g[0]
        else:
            ring = QuotientRing(QQ, g, name="z0")
            x0e, z0 = ring.from_base(x0), ring.gen()
        cert = irreducibility_certificate(x0e, x0e, z0)
        try:
            ring.invert(cert)
        except (ZeroDivisionError, ZeroDivisorSplit):
            continue
        out.append((ring, x0e, z0))
    if len(out) < count:
        raise RuntimeError("character sampling exhausted its x-value budget")
    return out


def refine_character_sample(sample, split):
    """Split a sampled character packet along a witnessed factorization.

    Computations over a packet (ring, x0, z0) may discover that the packet
    modulus factors (a ZeroDivisorSplit); the packet is then the disjoint
    union of the sub-packets over the factors, and the failed computation
    can be re-run on each.  Witnesses from rings other than the packet ring
    itself (say a temporary xi-extension) are re-raised: the packet cannot
    be refined from them, and the caller should resample instead.
    """
    ring, x0, z0 = sample
    if getattr(split, "ring", None) is not ring:
        raise split
    out = []
    for f in split.factors:
        if len(f) == 2:
            root = -f[0]
            ev = lambda el, _r=root: sum(
                (c * _r ** k for k, c in enumerate(el.c) if k), el.c[0])
            out.append((ring.base, ev(x0), ev(z0)))
        else:
            sub = QuotientRing(ring.base, list(f), name=ring.gen_name)
            out.append((sub, sub.from_coeffs(list(x0.c)),
                        sub.from_coeffs(list(z0.c))))
    return out
