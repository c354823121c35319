"""Dense univariate polynomial helpers over a ring-protocol coefficient domain.

Polynomials are plain Python lists of coefficients, ascending degree, with no
trailing zeros (the zero polynomial is []). Every function takes the
coefficient ring explicitly; coefficient arithmetic goes through operator
dunders so the same code runs over Q, quotient rings, and truncated series.
"""


def pstrip(c):
    while c and not c[-1]:
        c.pop()
    return c


def pdeg(c):
    return len(c) - 1


def padd(a, b, ring):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = out[i] + v
    return tuple(pstrip(out)) if isinstance(a, tuple) else pstrip(out)


def psub(a, b, ring):
    out = list(a) + [ring.zero()] * max(0, len(b) - len(a))
    for i, v in enumerate(b):
        out[i] = out[i] - v
    return tuple(pstrip(out)) if isinstance(a, tuple) else pstrip(out)


def pneg(a):
    out = [-v for v in a]
    return tuple(out) if isinstance(a, tuple) else out


def pscale(a, s):
    if not s:
        return [] if isinstance(a, list) else ()
    out = [v * s for v in a]
    return tuple(out) if isinstance(a, tuple) else out


def pmul(a, b, ring):
    if not a or not b:
        return []
    zero = ring.zero()
    out = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return pstrip(out)


def pdivmod(a, b, ring):
    """Quotient and remainder; requires an invertible leading coefficient."""
    a = list(a)
    b = list(b)
    pstrip(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lc = ring.invert(b[-1])
    db = len(b) - 1
    q = [ring.zero()] * max(0, len(a) - db)
    r = list(a)
    pstrip(r)
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        f = r[-1] * inv_lc
        q[k] = f
        for i, bi in enumerate(b):
            if bi:
                r[k + i] = r[k + i] - f * bi
        r.pop()
        pstrip(r)
    return pstrip(q), r


def pmonic(a, ring):
    a = pstrip(list(a))
    if not a:
        return a
    inv = ring.invert(a[-1])
    return [v * inv for v in a]


def pgcd(a, b, ring):
    """Monic gcd by the Euclidean algorithm (coefficients must form a field,
    possibly a dynamic-evaluation quotient ring)."""
    a = pstrip(list(a))
    b = pstrip(list(b))
    while b:
        _, r = pdivmod(a, b, ring)
        a, b = b, r
    return pmonic(a, ring)


def pxgcd(a, b, ring):
    """Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic."""
    a = pstrip(list(a))
    b = pstrip(list(b))
    r0, r1 = a, b
    s0, s1 = [ring.one()], []
    t0, t1 = [], [ring.one()]
    while r1:
        q, r = pdivmod(r0, r1, ring)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, ring), ring)
        t0, t1 = t1, psub(t0, pmul(q, t1, ring), ring)
    if not r0:
        return [], s0, t0
    inv = ring.invert(r0[-1])
    return pscale(r0, inv), pscale(s0, inv), pscale(t0, inv)


def pdiff(a, ring):
    return pstrip([a[i] * i for i in range(1, len(a))])


def peval(a, x):
    """Horner evaluation; x may live in any ring accepting these coefficients."""
    if not a:
        return 0 * x
    acc = a[-1]
    for c in reversed(a[:-1]):
        acc = acc * x + c
    return acc


def pyun(f, ring):
    """Yun squarefree decomposition over a characteristic-zero field.

    Returns [(g1, 1), (g2, 2), ...] with f = lc * prod gi^i, gi monic,
    squarefree, pairwise coprime (factors of multiplicity i only).
    """
    f = pmonic(f, ring)
    if pdeg(f) < 1:
        return []
    df = pdiff(f, ring)
    a = pgcd(f, df, ring)
    b, r = pdivmod(f, a, ring)
    assert not r
    c, r = pdivmod(df, a, ring)
    assert not r
    d = psub(c, pdiff(b, ring), ring)
    out = []
    i = 1
    while pdeg(b) >= 1:
        g = pgcd(b, d, ring)
        if pdeg(g) >= 1:
            out.append((g, i))
        b, r = pdivmod(b, g, ring)
        assert not r
        c, r = pdivmod(d, g, ring)
        assert not r
        d = psub(c, pdiff(b, ring), ring)
        i += 1
    return out


def psquarefree(f, ring):
    """Monic squarefree part: product of the Yun factors."""
    out = [ring.one()]
    for g, _ in pyun(f, ring):
        out = pmul(out, g, ring)
    return out
