"""Two-bridge knot corpus with classical Alexander invariants.

Enumerates one canonical fraction b(p, q) per two-bridge knot with odd
p <= pmax, up to mirror image.  The normal form ties into the relator
convention used by :func:`tapcurve.presentations.two_bridge_presentation`,
which requires q odd; among the four fractions {q, p-q, q^-1, p-q^-1}
describing the same unoriented knot exactly two are odd, and we keep the
smaller one.

Classical data is derived from the rank-one Alexander polynomial: the
genus of a two-bridge (hence alternating) knot equals half the Alexander
span, the knot fibers iff the top coefficient is a unit, and the Thurston
norm of the abelianization class is 2g - 1.
"""

import math
from dataclasses import dataclass

from .presentations import two_bridge_presentation
from .torsion import alexander_polynomial


@dataclass(eq=False)
class CorpusKnot:
    p: int
    q: int
    delta: object  # symmetric-normalized LaurentPoly over QQ
    genus: int
    fibered: bool
    thurston_norm: int

    @property
    def name(self):
        return f"b({self.p},{self.q})"

    def __repr__(self):
        fib = "fibered" if self.fibered else "non-fibered"
        return f"CorpusKnot({self.name}, genus={self.genus}, {fib})"


def classical_data(p, q):
    """CorpusKnot record for b(p, q) with exact Alexander-derived fields."""
    pres = two_bridge_presentation(p, q)
    delta = alexander_polynomial(pres)
    span = max(delta.c) - min(delta.c)
    genus = span // 2
    top = delta.c[max(delta.c)]
    fibered = abs(top) == 1
    return CorpusKnot(p, q, delta, genus, fibered, 2 * genus - 1)


def canonical_fraction(p, q):
    """The canonical odd fraction for the unoriented knot of b(p, q)."""
    qinv = pow(q, -1, p)
    orbit = {q, p - q, qinv, p - qinv}
    return min(x for x in orbit if x % 2 == 1)


def two_bridge_corpus(pmax=45):
    """All two-bridge knots with p <= pmax, one CorpusKnot per knot."""
    knots = []
    for p in range(3, pmax + 1, 2):
        for q in range(1, p, 2):
            if math.gcd(p, q) != 1:
                continue
            if canonical_fraction(p, q) == q:
                knots.append(classical_data(p, q))
    return knots
