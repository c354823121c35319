"""Tests for the two-bridge corpus enumeration and classical invariants."""

import math

from tapcurve.corpus import CorpusKnot, classical_data, two_bridge_corpus


def test_corpus_membership():
    knots = two_bridge_corpus(45)
    pairs = {(k.p, k.q) for k in knots}
    assert (3, 1) in pairs
    assert (5, 1) in pairs
    assert (5, 3) in pairs
    assert (7, 3) in pairs
    # b(7,5) is b(7,3) up to mirror image; only the canonical rep appears
    assert (7, 5) not in pairs
    for k in knots:
        assert k.p % 2 == 1 and 3 <= k.p <= 45
        assert k.q % 2 == 1 and 0 < k.q < k.p
        assert math.gcd(k.p, k.q) == 1


def test_corpus_canonical_and_duplicate_free():
    knots = two_bridge_corpus(45)
    seen = set()
    for k in knots:
        qinv = pow(k.q, -1, k.p)
        orbit = {k.q, k.p - k.q, qinv, k.p - qinv}
        key = (k.p, min(x for x in orbit if x % 2 == 1))
        assert key == (k.p, k.q)
        assert key not in seen
        seen.add(key)


def test_classical_data_trefoil():
    k = classical_data(3, 1)
    assert isinstance(k, CorpusKnot)
    assert dict(k.delta.c) == {-1: 1, 0: -1, 1: 1}
    assert k.genus == 1
    assert k.fibered is True
    assert k.thurston_norm == 1


def test_classical_data_figure_eight():
    k = classical_data(5, 3)
    assert dict(k.delta.c) == {-1: 1, 0: -3, 1: 1}
    assert k.genus == 1
    assert k.fibered is True
    assert k.thurston_norm == 1


def test_classical_data_five_two():
    k = classical_data(7, 3)
    assert dict(k.delta.c) == {-1: 2, 0: -3, 1: 2}
    assert k.genus == 1
    assert k.fibered is False
    assert k.thurston_norm == 1


def test_classical_data_torus_cinquefoil():
    k = classical_data(5, 1)
    assert dict(k.delta.c) == {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1}
    assert k.genus == 2
    assert k.fibered is True
    assert k.thurston_norm == 3


def test_determinant_equals_p():
    # the determinant of a two-bridge knot b(p,q) is p
    for k in two_bridge_corpus(45):
        det = sum(v if e % 2 == 0 else -v for e, v in k.delta.c.items())
        assert abs(det) == k.p, (k.p, k.q)
