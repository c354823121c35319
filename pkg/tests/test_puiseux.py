"""Newton-Puiseux expansion of plane curve germs.

Solutions y(s) of H(u, y) = 0 with u = unit * s^e and y -> 0, over exact
coefficient rings.  Square roots and ramification are handled by rational
rescaling of the parameter, so field extensions appear only when a
characteristic polynomial genuinely has no root in the current ring.
"""

import pytest

from tapcurve.puiseux import (BiPoly, expand_at_origin, lower_edges,
                              solution_residual)
from tapcurve.scalars import QQ, QuotientRing, ZeroDivisorSplit, rat


def bp(terms, ring=QQ):
    return BiPoly(ring, {k: ring.coerce(v) for k, v in terms.items()})


def exact_coeffs(sol):
    assert sol.y.prec is None, "expected a terminating expansion"
    return {e: v for e, v in sol.y.c.items()}


# -- Newton polygon ----------------------------------------------------------

def test_lower_edges_single_edge():
    assert lower_edges({(3, 0), (0, 2)}) == [(3, 2, 0, 3)]


def test_lower_edges_merges_collinear_points():
    assert lower_edges({(4, 0), (2, 1), (0, 2)}) == [(2, 1, 0, 4)]


def test_lower_edges_two_edges_sorted_by_y_exponent():
    edges = lower_edges({(3, 0), (1, 1), (0, 3)})
    assert edges == [(2, 1, 0, 3), (1, 2, 1, 1)]


def test_lower_edges_ignores_non_descending_part():
    assert lower_edges({(1, 0), (1, 1)}) == []
    assert lower_edges({(1, 0), (0, 1), (2, 2)}) == [(1, 1, 0, 1)]


# -- exact branches ----------------------------------------------------------

def test_cusp_branch():
    # u^3 - y^2: the standard cusp, one branch u = s^2, y = s^3
    sols = expand_at_origin(bp({(3, 0): 1, (0, 2): -1}), QQ, order=10)
    assert len(sols) == 1
    s = sols[0]
    assert (s.e, s.u_unit) == (2, 1)
    assert exact_coeffs(s) == {3: 1}
    r = solution_residual(bp({(3, 0): 1, (0, 2): -1}), s)
    assert not r.c and r.prec is None


def test_scaled_cusp_uses_duval_unit():
    # y^2 = 2 u^3 stays over QQ: u = 2 s^2, y = 4 s^3
    h = bp({(0, 2): 1, (3, 0): -2})
    sols = expand_at_origin(h, QQ, order=10)
    assert len(sols) == 1
    s = sols[0]
    assert s.ring is QQ
    assert (s.e, s.u_unit) == (2, 2)
    assert exact_coeffs(s) == {3: 4}
    r = solution_residual(h, s)
    assert not r.c and r.prec is None


def test_square_root_needs_no_extension():
    # y^2 = u: ramification only, u = s^2, y = s
    sols = expand_at_origin(bp({(0, 2): 1, (1, 0): -1}), QQ, order=10)
    assert len(sols) == 1
    s = sols[0]
    assert s.ring is QQ
    assert (s.e, s.u_unit) == (2, 1)
    assert exact_coeffs(s) == {1: 1}


def test_square_root_of_two_extends_the_ring():
    # y^2 = 2 u^2: y = sqrt(2) u, genuine degree-2 extension
    h = bp({(0, 2): 1, (2, 0): -2})
    sols = expand_at_origin(h, QQ, order=10)
    assert len(sols) == 1
    s = sols[0]
    assert isinstance(s.ring, QuotientRing) and s.ring.base is QQ
    t = s.ring.gen()
    assert t * t == s.ring.coerce(2)
    assert s.e == 1
    assert exact_coeffs(s) == {1: t}


def test_exact_zero_branch_from_y_division():
    sols = expand_at_origin(bp({(0, 1): 1, (1, 1): 1, (0, 2): 1}), QQ, order=8)
    assert len(sols) == 1
    s = sols[0]
    assert s.e == 1 and not s.y.c and s.y.prec is None


def test_tangent_branches_resolved_by_recursion():
    # (y - u^2)(y - u^2 - u^3): double characteristic root, one recursion
    h = bp({(0, 2): 1, (2, 1): -2, (3, 1): -1, (4, 0): 1, (5, 0): 1})
    sols = expand_at_origin(h, QQ, order=12)
    assert len(sols) == 2
    got = sorted(sorted(exact_coeffs(s).items()) for s in sols)
    assert got == [[(2, 1)], [(2, 1), (3, 1)]]
    for s in sols:
        assert s.e == 1 and s.u_unit == 1
        r = solution_residual(h, s)
        assert not r.c and r.prec is None


def test_non_terminating_branch_is_truncated_honestly():
    # y(1 - u) = u has the geometric series solution y = u + u^2 + ...
    h = bp({(0, 1): 1, (1, 1): -1, (1, 0): -1})
    sols = expand_at_origin(h, QQ, order=10)
    assert len(sols) == 1
    s = sols[0]
    assert s.y.prec is not None and s.y.prec >= 10
    for k in range(1, 10):
        assert s.y.coefficient(k) == 1
    r = solution_residual(h, s)
    assert not r.c


def test_conjugate_roots_stay_in_one_packet():
    # (y - u)(y - 2u): reducible characteristic polynomial is kept whole,
    # the two geometric branches live in one rank-2 coefficient ring
    h = bp({(0, 2): 1, (1, 1): -3, (2, 0): 2})
    sols = expand_at_origin(h, QQ, order=8)
    assert len(sols) == 1
    s = sols[0]
    assert isinstance(s.ring, QuotientRing)
    t = s.ring.gen()
    assert t * t == 3 * t - 2 * s.ring.one()
    assert exact_coeffs(s) == {1: t}
    r = solution_residual(h, s)
    assert not r.c and r.prec is None


def test_zero_divisor_split_propagates_to_caller():
    k = QuotientRing(QQ, [rat(2), rat(-3), rat(1)], name="th")  # th = 1 or 2
    th = k.gen()
    h = bp({(0, 2): k.one(), (2, 0): -(th - k.one())}, ring=k)
    with pytest.raises(ZeroDivisorSplit) as info:
        expand_at_origin(h, k, order=8)
    assert info.value.ring is k


def test_two_distinct_edges_give_two_branches():
    # (y - u)(y - u^2) = y^2 - y u - y u^2 + u^3
    h = bp({(0, 2): 1, (1, 1): -1, (2, 1): -1, (3, 0): 1})
    sols = expand_at_origin(h, QQ, order=10)
    assert len(sols) == 2
    got = sorted(sorted(exact_coeffs(s).items()) for s in sols)
    assert got == [[(1, 1)], [(2, 1)]]
