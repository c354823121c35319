"""Sparse multivariate polynomials over Q (gmpy2 rationals).

Terms are {exponent tuple: coefficient}. The leading term of a polynomial is
the maximal exponent tuple in lexicographic order with variable 0 most
significant; canonical normalization (integer-primitive, positive leading
coefficient) is with respect to that order. gcds use a primitive
pseudo-remainder sequence, resultants the Euclidean recursion over the
rational function field in the other variable; both stay exact.
"""

import gmpy2

from .scalars import rat, QQ
from .ratfunc import RationalFunctionField


class MPoly:
    __slots__ = ("c", "n")

    def __init__(self, coeffs, n):
        self.n = n
        self.c = {e: v for e, v in coeffs.items() if v}

    @classmethod
    def from_terms(cls, coeffs, n):
        return cls({tuple(e): rat(v) for e, v in coeffs.items()}, n)

    @classmethod
    def constant(cls, v, n):
        v = rat(v)
        return cls({(0,) * n: v} if v else {}, n)

    @classmethod
    def zero(cls, n):
        return cls({}, n)

    @classmethod
    def one(cls, n):
        return cls.constant(1, n)

    @classmethod
    def var(cls, i, n, exp=1):
        e = [0] * n
        e[i] = exp
        return cls({tuple(e): rat(1)}, n)

    # ---- structure

    def degree(self, var):
        return max((e[var] for e in self.c), default=-1)

    def items(self):
        return self.c.items()

    def leading(self):
        e = max(self.c)
        return e, self.c[e]

    def diff(self, var):
        out = {}
        for e, v in self.c.items():
            k = e[var]
            if k:
                e2 = e[:var] + (k - 1,) + e[var + 1:]
                out[e2] = out.get(e2, rat(0)) + v * k
        return MPoly(out, self.n)

    def to_dense(self, var):
        """Ascending list of MPoly coefficients with respect to one variable."""
        d = self.degree(var)
        if d < 0:
            return []
        buckets = [dict() for _ in range(d + 1)]
        for e, v in self.c.items():
            e2 = e[:var] + (0,) + e[var + 1:]
            buckets[e[var]][e2] = v
        return [MPoly(b, self.n) for b in buckets]

    @classmethod
    def from_dense(cls, coeffs, var, n):
        out = {}
        for k, p in enumerate(coeffs):
            for e, v in p.c.items():
                e2 = e[:var] + (k,) + e[var + 1:]
                out[e2] = out.get(e2, rat(0)) + v
        return cls(out, n)

    def as_univariate(self, var):
        """Dense rational coefficient list; the poly must involve only var."""
        d = self.degree(var)
        out = [rat(0)] * (d + 1)
        for e, v in self.c.items():
            if any(e[i] for i in range(self.n) if i != var):
                raise ValueError("polynomial involves other variables")
            out[e[var]] = v
        while out and not out[-1]:
            out.pop()
        return out

    def evaluate(self, vals):
        """Full evaluation; vals[i] may be any scalar with ring dunders and is
        only touched when variable i actually occurs."""
        acc = None
        pows = [dict() for _ in range(self.n)]
        for e, v in self.c.items():
            term = v
            for i, k in enumerate(e):
                if k:
                    p = pows[i].get(k)
                    if p is None:
                        p = vals[i] ** k
                        pows[i][k] = p
                    term = term * p
            acc = term if acc is None else acc + term
        if acc is None:
            return rat(0)
        return acc

    def eval_partial(self, var, value):
        """Substitute one variable by an exact rational."""
        value = rat(value)
        out = {}
        for e, v in self.c.items():
            e2 = e[:var] + (0,) + e[var + 1:]
            w = v * value ** e[var] if e[var] else v
            if w:
                out[e2] = out.get(e2, rat(0)) + w
        return MPoly(out, self.n)

    # ---- arithmetic

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.constant(other, self.n)
        out = dict(self.c)
        for e, v in other.c.items():
            w = out.get(e)
            out[e] = v if w is None else w + v
        return MPoly(out, self.n)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.constant(other, self.n)
        return self + (-other)

    def __rsub__(self, other):
        return MPoly.constant(other, self.n) - self

    def __neg__(self):
        return MPoly({e: -v for e, v in self.c.items()}, self.n)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            s = rat(other)
            return MPoly({e: v * s for e, v in self.c.items()}, self.n)
        out = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                w = out.get(e)
                p = v1 * v2
                out[e] = p if w is None else w + p
        return MPoly(out, self.n)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = MPoly.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scalar_div(self, s):
        s = rat(s)
        return MPoly({e: v / s for e, v in self.c.items()}, self.n)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.c == other.c
        return self.c == MPoly.constant(other, self.n).c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __bool__(self):
        return bool(self.c)

    def __repr__(self):
        if not self.c:
            return "0"
        names = "xzwuv"[:self.n] if self.n <= 5 else None
        parts = []
        for e in sorted(self.c, reverse=True):
            v = self.c[e]
            mono = "*".join(
                (f"{names[i] if names else f'v{i}'}" +
                 (f"^{k}" if k > 1 else ""))
                for i, k in enumerate(e) if k)
            parts.append(f"{v}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


class MPolyRing:
    """Ring-protocol wrapper so quotient rings can use MPoly coefficients.

    Not a field: invert only handles nonzero constants, which is all a monic
    modulus ever asks for.
    """

    def __init__(self, n):
        self.n = n
        self.name = f"QQ[{n} vars]"

    def zero(self):
        return MPoly.zero(self.n)

    def one(self):
        return MPoly.one(self.n)

    def coerce(self, v):
        if isinstance(v, MPoly):
            if v.n != self.n:
                raise TypeError("polynomial has the wrong number of variables")
            return v
        return MPoly.constant(v, self.n)

    def invert(self, a):
        if a.c and max(a.c) == (0,) * self.n:
            return MPoly.constant(1 / a.c[(0,) * self.n], self.n)
        raise ArithmeticError("not a unit in the polynomial ring")

    def exact_div(self, a, b):
        return mpoly_divexact(a, b)

    def is_zero(self, a):
        return not a

    def __repr__(self):
        return self.name


def mpoly_divexact(f, d):
    """Exact division f/d; raises ArithmeticError when not divisible."""
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    out = {}
    rem = dict(f.c)
    lead_d = max(d.c)
    lc_d = d.c[lead_d]
    while rem:
        e = max(rem)
        q = tuple(a - b for a, b in zip(e, lead_d))
        if any(k < 0 for k in q):
            raise ArithmeticError("inexact multivariate division")
        coef = rem[e] / lc_d
        out[q] = coef
        for ed, vd in d.c.items():
            t = tuple(a + b for a, b in zip(q, ed))
            w = rem.get(t, rat(0)) - coef * vd
            if w:
                rem[t] = w
            else:
                rem.pop(t, None)
    return MPoly(out, f.n)


def normalize_primitive(f):
    """Integer-primitive representative with positive leading coefficient."""
    if not f:
        return f
    den_lcm = 1
    for v in f.c.values():
        den_lcm = gmpy2.lcm(den_lcm, v.denominator)
    num_gcd = 0
    for v in f.c.values():
        num_gcd = gmpy2.gcd(num_gcd, v.numerator * (den_lcm // v.denominator))
    scale = rat(den_lcm, num_gcd)
    if f.c[max(f.c)] < 0:
        scale = -scale
    return f * scale


class _HeuristicFailure(Exception):
    pass


def _symmetric_mod(v, m):
    r = v % m
    if 2 * r > m:
        r -= m
    return r


def _heugcd(f, g):
    """Heuristic gcd of integer polynomials by evaluation at a large point,
    balanced-digit reconstruction, and trial division (Char-Geddes-Gonnet).

    The integer gcd at the point is a multiple of the evaluated gcd, and a
    balanced-digit candidate dividing both inputs can only differ from the
    gcd by an integer scalar, which is a unit over Q. Integer content must
    NOT be stripped mid-recursion: it encodes factors living in the outer
    variables. Raises _HeuristicFailure when retries run out; callers fall
    back to the pseudo-remainder path.
    """
    var = None
    for i in range(f.n - 1, -1, -1):
        if f.degree(i) > 0 or g.degree(i) > 0:
            var = i
            break
    if var is None:
        a = gmpy2.gcd(int(next(iter(f.c.values()))),
                      int(next(iter(g.c.values()))))
        return MPoly.constant(a, f.n)
    norm_f = max(abs(v.numerator) for v in f.c.values())
    norm_g = max(abs(v.numerator) for v in g.c.values())
    m = 2 * min(norm_f, norm_g) + 2
    for _ in range(6):
        fe = f.eval_partial(var, m)
        ge = g.eval_partial(var, m)
        if fe and ge:
            h = _heugcd(fe, ge)
            digits = []
            cur = h
            while cur:
                d = MPoly({e: rat(_symmetric_mod(int(v), m))
                           for e, v in cur.c.items()}, f.n)
                digits.append(d)
                cur = (cur - d).scalar_div(m)
            cand = MPoly.from_dense(digits, var, f.n)
            try:
                mpoly_divexact(f, cand)
                mpoly_divexact(g, cand)
            except ArithmeticError:
                pass
            else:
                return cand
        m = m * 73794 // 27011 + 1
    raise _HeuristicFailure


def _prem(a, b):
    """Pseudo-remainder of dense coefficient lists in one variable."""
    db = len(b) - 1
    lc_b = b[-1]
    r = list(a)
    while r and len(r) - 1 >= db:
        k = len(r) - 1 - db
        top = r[-1]
        r = [lc_b * v for v in r]
        for i, bi in enumerate(b):
            r[i + k] = r[i + k] - top * bi
        r.pop()
        while r and not r[-1]:
            r.pop()
    return r


def _content(coeffs):
    g = None
    for p in coeffs:
        g = p if g is None else mpoly_gcd(g, p)
    return g


def mpoly_gcd(f, g):
    """gcd up to units, returned integer-primitive with positive leading
    coefficient (lex order, variable 0 most significant)."""
    if not f:
        return normalize_primitive(g)
    if not g:
        return normalize_primitive(f)
    main = None
    for var in range(f.n - 1, -1, -1):
        if f.degree(var) > 0 or g.degree(var) > 0:
            main = var
            break
    if main is None:
        return MPoly.one(f.n)
    fp = normalize_primitive(f)
    gp = normalize_primitive(g)
    try:
        return normalize_primitive(_heugcd(fp, gp))
    except _HeuristicFailure:
        pass
    a = f.to_dense(main)
    b = g.to_dense(main)
    ca = _content(a)
    cb = _content(b)
    a = [mpoly_divexact(p, ca) for p in a]
    b = [mpoly_divexact(p, cb) for p in b]
    if len(a) - 1 < len(b) - 1:
        a, b = b, a
    while True:
        if not b:
            break
        if len(b) == 1:
            # nonzero constant (in main var): primitive, so gcd part is trivial
            b = None
            a = [MPoly.one(f.n)]
            break
        r = _prem(a, b)
        if not r:
            a = b
            break
        cr = _content(r)
        r = [mpoly_divexact(p, cr) for p in r]
        a, b = b, r
    prim = MPoly.from_dense(a, main, f.n)
    cont = mpoly_gcd(ca, cb)
    return normalize_primitive(prim * cont)


def squarefree_part(f):
    """Product of the distinct irreducible factors of f, via gcd with the
    partial derivatives (characteristic zero)."""
    if not f:
        raise ValueError("squarefree part of the zero polynomial")
    dgcd = MPoly.zero(f.n)
    for var in range(f.n):
        if f.degree(var) > 0:
            dgcd = mpoly_gcd(dgcd, f.diff(var))
    if not dgcd:
        return MPoly.one(f.n)
    rep = mpoly_gcd(f, dgcd)
    out = mpoly_divexact(normalize_primitive(f), rep)
    return normalize_primitive(out)


def resultant(f, g, var):
    """Resultant eliminating var (bivariate input), Sylvester convention:
    res(x - a, x - b) = a - b. Computed by the Euclidean recursion over the
    rational function field in the other variable."""
    if f.n != 2 or g.n != 2:
        raise ValueError("resultant implemented for bivariate polynomials")
    other = 1 - var
    field = RationalFunctionField(QQ, var="xz"[other])

    def lift(p):
        out = []
        for coeff in p.to_dense(var):
            out.append(field.build(coeff.as_univariate(other) or [rat(0)],
                                   [rat(1)]))
        return out

    def res(a, b):
        # a, b dense lists over the function field
        while a and not a[-1]:
            a.pop()
        while b and not b[-1]:
            b.pop()
        if not a or not b:
            return field.zero()
        m, n = len(a) - 1, len(b) - 1
        if m == 0 and n == 0:
            return field.one()
        if n == 0:
            return b[0] ** m
        if m == 0:
            return a[0] ** n
        if m < n:
            r = res(b, a)
            return -r if (m * n) % 2 else r
        # remainder of a by b over the field
        r = list(a)
        inv = b[-1].inverse()
        for k in range(m - n, -1, -1):
            fqc = r[n + k] * inv
            for i, bi in enumerate(b):
                r[i + k] = r[i + k] - fqc * bi
            r.pop()
        while r and not r[-1]:
            r.pop()
        p = len(r) - 1
        if not r:
            return field.zero()
        tail = res(b, r)
        out = b[-1] ** (m - p) * tail
        return -out if (m * n) % 2 else out

    value = res(lift(f), lift(g))
    if not value:
        return MPoly.zero(2)
    assert value.den == [rat(1)], "resultant produced a genuine denominator"
    out = {}
    for k, v in enumerate(value.num):
        if v:
            e = [0, 0]
            e[other] = k
            out[tuple(e)] = v
    return MPoly(out, 2)
