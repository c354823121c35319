"""Trace polynomials, the generic representation pair, character curves of
two-bridge knots, and exact lifts of character points."""

import random

import pytest

from tapcurve.mpoly import MPoly
from tapcurve.presentations import Word, two_bridge_presentation
from tapcurve.scalars import QQ, QuotientRing, rat
from tapcurve.sl2 import (
    CharacterCurve,
    character_curve,
    character_point_to_rep,
    generic_pair,
    irreducibility_certificate,
    trace_function_on_curve,
    trace_reduce,
    word_image,
)


def X():
    return MPoly.var(0, 3)


def Y():
    return MPoly.var(1, 3)


def Z():
    return MPoly.var(2, 3)


def W(*letters):
    return Word(letters)


# ------------------------------------------------------------- trace_reduce

def test_trace_reduce_pinned_values():
    assert trace_reduce(W()) == MPoly.constant(2, 3)
    assert trace_reduce(W((0, 1))) == X()
    assert trace_reduce(W((1, 1))) == Y()
    assert trace_reduce(W((0, 1), (0, 1))) == X() * X() - 2
    assert trace_reduce(W((0, 1), (1, 1))) == Z()
    assert trace_reduce(W((0, 1), (1, -1))) == X() * Y() - Z()
    assert trace_reduce(W((0, -1))) == X()


def test_trace_reduce_commutator_fricke():
    w = W((0, 1), (1, 1), (0, -1), (1, -1))
    fricke = (X() ** 2 + Y() ** 2 + Z() ** 2
              - X() * Y() * Z() - MPoly.constant(2, 3))
    assert trace_reduce(w) == fricke


def test_trace_reduce_alternating_chebyshev():
    w = W((0, 1), (1, 1), (0, 1), (1, 1), (0, 1), (1, 1))
    assert trace_reduce(w) == Z() ** 3 - 3 * Z()


def test_trace_reduce_rejects_extra_generators():
    with pytest.raises(ValueError):
        trace_reduce(W((2, 1)))


def rand_sl2(rng, steps=4):
    m = [[rat(1), rat(0)], [rat(0), rat(1)]]
    for _ in range(steps):
        r = rat(rng.randint(-2, 2))
        if rng.random() < 0.5:
            e = [[rat(1), r], [rat(0), rat(1)]]
        else:
            e = [[rat(1), rat(0)], [r, rat(1)]]
        m = [[m[0][0] * e[0][0] + m[0][1] * e[1][0],
              m[0][0] * e[0][1] + m[0][1] * e[1][1]],
             [m[1][0] * e[0][0] + m[1][1] * e[1][0],
              m[1][0] * e[0][1] + m[1][1] * e[1][1]]]
    return m


def _tr(m):
    return m[0][0] + m[1][1]


def test_trace_reduce_matches_matrix_evaluation_seeded():
    rng = random.Random(20260815)
    for _ in range(40):
        a = rand_sl2(rng)
        b = rand_sl2(rng)
        ab = word_image(W((0, 1), (1, 1)), [a, b])
        letters = tuple((rng.randrange(2), rng.choice((1, -1)))
                        for _ in range(rng.randrange(0, 12)))
        w = Word(letters)
        poly = trace_reduce(w)
        val = poly.evaluate([_tr(a), _tr(b), _tr(ab)])
        assert val == _tr(word_image(w, [a, b]))


def _mat_mul(p, q):
    return [[sum(p[i][k] * q[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)]


def test_character_conjugation_invariance_seeded():
    rng = random.Random(6)
    for _ in range(10):
        a, b, g = rand_sl2(rng), rand_sl2(rng), rand_sl2(rng, steps=3)
        ginv = [[g[1][1], -g[0][1]], [-g[1][0], g[0][0]]]
        ca = _mat_mul(_mat_mul(g, a), ginv)
        cb = _mat_mul(_mat_mul(g, b), ginv)
        for w in (W((0, 1)), W((1, 1)), W((0, 1), (1, 1)),
                  W((0, 1), (1, -1), (0, 1))):
            assert _tr(word_image(w, [a, b])) == _tr(word_image(w, [ca, cb]))


# ------------------------------------------------------------- generic pair

def test_generic_pair_trace_coordinates():
    gp = generic_pair()
    ring = gp.ring
    x = ring.from_base(MPoly.var(0, 2))
    z = ring.from_base(MPoly.var(1, 2))
    assert gp.a[0][0] + gp.a[1][1] == x
    assert gp.b[0][0] + gp.b[1][1] == x
    ab = word_image(W((0, 1), (1, 1)), [gp.a, gp.b])
    assert ab[0][0] + ab[1][1] == z


def test_generic_pair_determinants():
    gp = generic_pair()
    one = gp.ring.one()
    for m in (gp.a, gp.b):
        assert m[0][0] * m[1][1] - m[0][1] * m[1][0] == one


# ---------------------------------------------------------- character curves

def test_character_curve_trefoil_is_z_minus_one():
    c = character_curve(3, 1)
    assert c.poly == MPoly.from_terms({(0, 1): 1, (0, 0): -1}, 2)


def test_character_curve_figure_eight_quadratic_in_z():
    c = character_curve(5, 3)
    assert c.poly.degree(1) == 2
    # complex roots over x = 2 must give parabolic representations that
    # satisfy the relator numerically
    import numpy as np
    coeffs = [float(v) for v in c.poly.eval_partial(0, 2).as_univariate(1)]
    roots = np.roots(list(reversed(coeffs)))
    p = two_bridge_presentation(5, 3)
    for z0 in roots:
        r = z0 - 2
        a = [[1.0 + 0j, 1.0 + 0j], [0j, 1.0 + 0j]]
        b = [[1.0 + 0j, 0j], [r, 1.0 + 0j]]
        img = word_image(p.relators[0], [a, b])
        resid = max(abs(img[i][j] - (1 if i == j else 0))
                    for i in range(2) for j in range(2))
        assert resid < 1e-9


def test_character_curve_torus_knot_depends_only_on_z():
    c = character_curve(5, 1)
    assert c.poly.degree(0) == 0
    assert c.poly.degree(1) == 2
    phi = (1 + 5 ** 0.5) / 2
    vals = [abs(float(c.poly.evaluate([0.0, root])))
            for root in (phi, -1 / phi)]
    assert max(vals) < 1e-9


def test_character_curve_rejects_bad_parameters():
    with pytest.raises(ValueError):
        character_curve(4, 1)
    # even q presents a group whose Alexander polynomial is asymmetric, so it
    # is not a knot group and the curve construction refuses it
    with pytest.raises(ValueError, match="odd normal form"):
        character_curve(5, 2)


# ------------------------------------------------------------- point lifting

def test_character_point_to_rep_trefoil_riley():
    curve = character_curve(3, 1)
    lift = character_point_to_rep(2, 1, curve=curve)
    assert lift.a == [[rat(1), rat(1)], [rat(0), rat(1)]]
    assert lift.b == [[rat(1), rat(0)], [rat(-1), rat(1)]]
    p = two_bridge_presentation(3, 1)
    img = word_image(p.relators[0], [lift.a, lift.b])
    assert img == [[rat(1), rat(0)], [rat(0), rat(1)]]


def test_character_point_to_rep_rejects_off_curve():
    curve = character_curve(3, 1)
    with pytest.raises(ValueError):
        character_point_to_rep(2, 2, curve=curve)


def test_character_point_to_rep_rejects_reducible():
    # on the trefoil curve kappa vanishes exactly when x^2 = 3
    k = QuotientRing(QQ, [rat(-3), rat(0), rat(1)], name="s")
    with pytest.raises(ValueError):
        character_point_to_rep(k.gen(), k.one(), curve=None)


def test_character_point_to_rep_quadratic_extension():
    curve = character_curve(3, 1)
    lift = character_point_to_rep(1, 1, curve=curve)
    # xi^2 - xi + 1 has no rational root, so the lift lives in an extension
    assert lift.ring is not None
    p = two_bridge_presentation(3, 1)
    img = word_image(p.relators[0], [lift.a, lift.b])
    one, zero = lift.ring.one(), lift.ring.zero()
    assert img == [[one, zero], [zero, one]]


def test_figure_eight_packet_point_lifts_exactly():
    curve = character_curve(5, 3)
    f = curve.poly.eval_partial(0, rat(1, 2)).as_univariate(1)
    k = QuotientRing(QQ, f, name="z0")
    z0 = k.gen()
    x0 = k.coerce(rat(1, 2))
    lift = character_point_to_rep(x0, z0, curve=curve)
    p = two_bridge_presentation(5, 3)
    img = word_image(p.relators[0], [lift.a, lift.b])
    one, zero = lift.ring.one(), lift.ring.zero()
    assert img == [[one, zero], [zero, one]]


# ------------------------------------------------------- certificates/traces

def test_irreducibility_certificate_pinned():
    assert irreducibility_certificate(2, 2, 2) == 0
    assert irreducibility_certificate(2, 2, 1) == 1
    assert irreducibility_certificate(0, 0, 0) == -4


def test_trace_function_on_curve_values():
    assert trace_function_on_curve(W((0, 1)), rat(2), rat(1)) == 2
    assert trace_function_on_curve(W((0, 1), (1, -1)), rat(2), rat(1)) == 3
    for x0 in (rat(2), rat(5, 2), rat(-1)):
        assert trace_function_on_curve(W((0, 1), (1, 1)), x0, rat(1)) == 1
