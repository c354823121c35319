"""Floating-point oracles for the exact pipeline.

Everything in this module recomputes, in ordinary (or software multi-
precision) floating point, quantities that the rest of the package derives
exactly: solutions of the relator equations found by blind root search must
land on the computed character curve, sampled curve points must lift to
representations with tiny relator residual, and the certified valuations
along ideal branches must match the growth rates observed while tracking
actual curve points toward the ideal point.  None of these checks shares
code with the exact path beyond the input data (presentation, curve
polynomial, branch parametrizations), which is what makes them useful as
independent cross-examinations.

Randomized searches take explicit seeds and draw through numpy's
``default_rng``; multiprecision evaluation goes through mpmath with a
working precision chosen from the target magnitude, so reports are
deterministic for a fixed seed.
"""

import math

import mpmath
import numpy as np
from gmpy2 import mpq

from .presentations import two_bridge_presentation
from .scalars import QQ, QuotientRing
from .sl2 import character_curve, irreducibility_certificate, trace_reduce

DEFAULT_MAGNITUDES = (1e3, 1e4, 1e5)


# ------------------------------------------------------------- embeddings

def _mp_rat(v):
    """mpmath value of a rational (exact at the working precision)."""
    v = mpq(v)
    return mpmath.mpf(int(v.numerator)) / mpmath.mpf(int(v.denominator))


def _root_sort_key(r):
    return (round(float(r.real), 8), round(float(r.imag), 8))


def tower_embedding(ring):
    """A complex embedding of a quotient-tower scalar ring.

    Picks one root of the defining modulus at every tower level (the
    smallest in lexicographic (re, im) order, which makes the choice
    deterministic) and returns a function scalar -> mpc.  Conjugate
    embeddings parametrize conjugate branches, so for valuation growth
    checks any fixed choice is as good as another.
    """
    if not isinstance(ring, QuotientRing):
        return _mp_rat
    base = tower_embedding(ring.base)
    coeffs = [base(c) for c in ring.modulus]
    roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=200,
                             extraprec=80)
    root = min(roots, key=_root_sort_key)

    def emb(el, _root=root, _base=base):
        acc = mpmath.mpc(0)
        for k, c in enumerate(el.c):
            acc = acc + _base(c) * _root ** k
        return acc

    return emb


# ------------------------------------------------- curve evaluation helpers

def _z_slices(poly):
    """Coefficient polynomials in x of each power of z, as mpq lists."""
    nz = max(j for _, j in poly.c)
    out = [[] for _ in range(nz + 1)]
    for (i, j), c in poly.c.items():
        row = out[j]
        while len(row) <= i:
            row.append(mpq(0))
        row[i] = row[i] + c
    return out

def _x_slices(poly):
    nx = max(i for i, _ in poly.c)
    out = [[] for _ in range(nx + 1)]
    for (i, j), c in poly.c.items():
        row = out[i]
        while len(row) <= j:
            row.append(mpq(0))
        row[j] = row[j] + c
    return out


def _eval_rat_poly(coeffs, v):
    acc = mpmath.mpc(0)
    for c in reversed(coeffs):
        acc = acc * v + _mp_rat(c)
    return acc


def curve_residual(curve, x, z):
    """|C(x, z)| in the ambient working precision."""
    acc = mpmath.mpc(0)
    for row in reversed(_z_slices(curve.poly)):
        acc = acc * z + _eval_rat_poly(row, x)
    return abs(acc)


def _mpoly_eval_numeric(poly, vals):
    acc = mpmath.mpc(0)
    for exps, c in poly.c.items():
        term = _mp_rat(c)
        for v, e in zip(vals, exps):
            if e:
                term = term * v ** e
        acc = acc + term
    return acc


# --------------------------------------------------- numeric SL2 matrices

def _mat_mul(a, b):
    return ((a[0][0] * b[0][0] + a[0][1] * b[1][0],
             a[0][0] * b[0][1] + a[0][1] * b[1][1]),
            (a[1][0] * b[0][0] + a[1][1] * b[1][0],
             a[1][0] * b[0][1] + a[1][1] * b[1][1]))


def _mat_adj(a):
    return ((a[1][1], -a[0][1]), (-a[1][0], a[0][0]))


def _rep_matrices(x, z):
    """The normal-form pair (A, B) over mpc for a character (x, z)."""
    xi = (x + mpmath.sqrt(x * x - 4)) / 2
    xibar = x - xi
    one, zero = mpmath.mpc(1), mpmath.mpc(0)
    a = ((xi, one), (zero, xibar))
    b = ((xi, zero), (z - x * x + 2, xibar))
    return a, b


def _word_image(letters, images, inverses):
    out = ((mpmath.mpc(1), mpmath.mpc(0)), (mpmath.mpc(0), mpmath.mpc(1)))
    for g, s in letters:
        out = _mat_mul(out, images[g] if s > 0 else inverses[g])
    return out


def relator_residual(p, q, x, z):
    """Relative deviation of the lifted pair from satisfying the relator."""
    pres = two_bridge_presentation(p, q)
    a, b = _rep_matrices(x, z)
    images = [a, b]
    inverses = [_mat_adj(a), _mat_adj(b)]
    img = _word_image(pres.relators[0].letters, images, inverses)
    scale = max(abs(v) for row in img for v in row)
    dev = max(abs(img[i][j] - (1 if i == j else 0))
              for i in range(2) for j in range(2))
    return float(dev / max(1, scale))


# -------------------------------------------- criterion: relator solutions

def _poly_mat_mul(a, b):
    out = [[None, None], [None, None]]
    for i in range(2):
        for j in range(2):
            acc = np.zeros(1, dtype=complex)
            for k in range(2):
                t = np.convolve(a[i][k], b[k][j])
                if len(t) > len(acc):
                    t[:len(acc)] += acc
                    acc = t
                else:
                    acc[:len(t)] += t
            out[i][j] = acc
    return out


def _mp_polyval(coeffs, v):
    acc = mpmath.mpc(0)
    for c in reversed(coeffs):
        acc = acc * v + c
    return acc


def relator_solutions(p, q, count=20, seed=0, dps=60):
    """Numeric irreducible solutions of the relator equations of b(p, q).

    Searches with the two-generator normal form: fix a random trace x0,
    take xi a root of xi^2 - x0 xi + 1, and solve the matrix equation
    A W(r) = W(r) B for the free lower-left entry r, where w is the
    positive half of the relator (a w = w b).  Roots come from a dense
    eigenvalue solve and are polished by Newton in multiprecision; kept
    solutions satisfy the full relator to working accuracy and have a
    nonzero irreducibility certificate.

    Returns dicts with the character coordinates, the residual of the
    curve polynomial at them, the relator residual, and |kappa|.  The
    curve polynomial plays no role in the search, which is the point: the
    solutions land on it only if the curve construction is right.
    """
    pres = two_bridge_presentation(p, q)
    w_letters = pres.relators[0].letters[1:p]
    curve = character_curve(p, q)
    rng = np.random.default_rng(seed)
    out = []
    with mpmath.workdps(dps):
        for _ in range(120):
            if len(out) >= count:
                break
            x0 = complex(rng.uniform(-2.6, 2.6), rng.uniform(0.15, 2.4))
            xi = (x0 + np.lib.scimath.sqrt(x0 * x0 - 4)) / 2
            xb = x0 - xi
            c = lambda v: np.array([v], dtype=complex)
            r_var = np.array([0, 1], dtype=complex)
            mats = {
                (0, 1): [[c(xi), c(1)], [c(0), c(xb)]],
                (0, -1): [[c(xb), c(-1)], [c(0), c(xi)]],
                (1, 1): [[c(xi), c(0)], [r_var, c(xb)]],
                (1, -1): [[c(xb), c(0)], [-r_var, c(xi)]],
            }
            w = [[c(1), c(0)], [c(0), c(1)]]
            for let in w_letters:
                w = _poly_mat_mul(w, mats[let])
            a_mat, b_mat = mats[(0, 1)], mats[(1, 1)]
            eqs = [e for row in _poly_mat_mul(a_mat, w) for e in row]
            rhs = [e for row in _poly_mat_mul(w, b_mat) for e in row]
            best, best_norm = None, 0.0
            for lhs, r_ in zip(eqs, rhs):
                n = max(len(lhs), len(r_))
                diff = np.zeros(n, dtype=complex)
                diff[:len(lhs)] += lhs
                diff[:len(r_)] -= r_
                nrm = float(np.max(np.abs(diff)))
                if nrm > best_norm:
                    best, best_norm = diff, nrm
            if best is None or best_norm < 1e-9:
                continue
            tail = np.max(np.abs(best))
            keep = len(best)
            while keep > 1 and abs(best[keep - 1]) < 1e-13 * tail:
                keep -= 1
            poly = best[:keep]
            if keep < 2:
                continue
            seeds = sorted(np.roots(poly[::-1]), key=lambda v: (v.real, v.imag))
            coeffs = [mpmath.mpc(v) for v in poly]
            dcoeffs = [k * coeffs[k] for k in range(1, len(coeffs))]
            xi_mp = mpmath.mpc(xi)
            x_mp = mpmath.mpc(x0)
            for r0 in seeds:
                if len(out) >= count:
                    break
                r = mpmath.mpc(complex(r0))
                for _ in range(60):
                    f = _mp_polyval(coeffs, r)
                    df = _mp_polyval(dcoeffs, r)
                    if not df:
                        break
                    step = f / df
                    r = r - step
                    if abs(step) < mpmath.mpf(10) ** (5 - dps):
                        break
                z = xi_mp * xi_mp + (x_mp - xi_mp) ** 2 + r
                rres = relator_residual(p, q, x_mp, z)
                if rres > 1e-25:
                    continue
                kappa = abs(2 * x_mp * x_mp + z * z - x_mp * x_mp * z - 4)
                if kappa < 1e-6:
                    continue
                out.append({
                    "x": complex(x_mp),
                    "z": complex(z),
                    "curve_residual": float(curve_residual(curve, x_mp, z)),
                    "relator_residual": rres,
                    "certificate": float(kappa),
                })
    if len(out) < count:
        raise RuntimeError(
            "numeric relator search found only %d/%d solutions for b(%d, %d)"
            % (len(out), count, p, q))
    return out


# ----------------------------------------------- criterion: on-curve lifts

def curve_point_lifts(p, q, count=20, seed=0, dps=None):
    """Sample numeric points of {C = 0} and lift them to representations.

    Points come from root-solving C(x0, .) at random x0; each point with a
    nonzero irreducibility certificate is lifted through the normal form
    and the full relator image is compared against the identity.
    """
    if dps is None:
        dps = 50 + p
    curve = character_curve(p, q)
    slices = _z_slices(curve.poly)
    rng = np.random.default_rng(seed)
    out = []
    with mpmath.workdps(dps):
        for _ in range(80):
            if len(out) >= count:
                break
            x0 = mpmath.mpc(rng.uniform(-2.6, 2.6), rng.uniform(0.15, 2.4))
            cz = [_eval_rat_poly(row, x0) for row in slices]
            while cz and not abs(cz[-1]):
                cz.pop()
            if len(cz) < 2:
                continue
            try:
                roots = mpmath.polyroots(list(reversed(cz)), maxsteps=120,
                                         extraprec=2 * dps)
            except mpmath.libmp.NoConvergence:
                continue
            for z in sorted(roots, key=_root_sort_key)[:2]:
                if len(out) >= count:
                    break
                kappa = abs(2 * x0 * x0 + z * z - x0 * x0 * z - 4)
                if kappa < 1e-6:
                    continue
                out.append({
                    "x": complex(x0),
                    "z": complex(z),
                    "relator_residual": relator_residual(p, q, x0, z),
                    "certificate": float(kappa),
                })
    if len(out) < count:
        raise RuntimeError(
            "curve sampling found only %d/%d liftable points for b(%d, %d)"
            % (len(out), count, p, q))
    return out


# ------------------------------------------------- path tracking machinery

def _series_val(ts, e):
    return mpq(min(ts.c), e)


def dominant_coordinate(branch):
    """Which affine coordinate escapes along the branch, with its exact
    valuation: ('x'|'z', valuation as a rational < 0)."""
    if branch.kind == "z_to_infinity_x_finite":
        return "z", _series_val(branch.z, branch.e)
    return "x", _series_val(branch.x, branch.e)


def branch_path_points(branch, magnitudes=DEFAULT_MAGNITUDES, dps=None):
    """Numeric curve points following a branch toward its ideal point.

    For each target magnitude m the local parameter is chosen so that the
    dominant coordinate has |.| close to m; the series give the starting
    guess and the dependent coordinate is then polished by Newton on the
    curve equation, so the returned points sit on the curve to working
    accuracy (not merely to the series truncation order).
    """
    poly = branch.poly
    deg = max(i + j for i, j in poly.c)
    if dps is None:
        dps = 60 + int(deg * math.log10(max(magnitudes)))
    coord, v_dom = dominant_coordinate(branch)
    out = []
    with mpmath.workdps(dps):
        emb = tower_embedding(branch.ring)
        x_terms = sorted(branch.x.c.items())
        z_terms = sorted(branch.z.c.items())
        dom_terms = z_terms if coord == "z" else x_terms
        k0, c0 = dom_terms[0]
        c0v = emb(branch.ring.coerce(c0))
        if coord == "z":
            free_slices = [[_mp_rat(v) for v in row]
                           for row in _x_slices(poly)]
        else:
            free_slices = [[_mp_rat(v) for v in row]
                           for row in _z_slices(poly)]
        for m in magnitudes:
            s = (mpmath.mpf(m) / abs(c0v)) ** (mpq(branch.e, k0))
            xv = sum((emb(branch.ring.coerce(v)) * s ** mpq(k, branch.e)
                      for k, v in x_terms), mpmath.mpc(0))
            zv = sum((emb(branch.ring.coerce(v)) * s ** mpq(k, branch.e)
                      for k, v in z_terms), mpmath.mpc(0))
            if coord == "z":
                fixed, guess = zv, xv
            else:
                fixed, guess = xv, zv
            coeffs = [_mp_polyval(row, fixed) for row in free_slices]
            dcoeffs = [k * coeffs[k] for k in range(1, len(coeffs))]
            w = guess
            for _ in range(80):
                f = _mp_polyval(coeffs, w)
                df = _mp_polyval(dcoeffs, w)
                if not df:
                    raise ArithmeticError("degenerate Newton step while "
                                          "tracking a branch")
                step = f / df
                w = w - step
                if abs(step) <= (abs(w) + 1) * mpmath.mpf(10) ** (8 - dps):
                    break
            else:
                raise ArithmeticError("path tracking failed to converge "
                                      "on the curve")
            if abs(w - guess) > (abs(guess) + 1) * mpmath.mpf("0.2"):
                raise ArithmeticError("path tracking drifted off the "
                                      "expected branch")
            if coord == "z":
                out.append({"s": float(s), "x": w, "z": fixed})
            else:
                out.append({"s": float(s), "x": fixed, "z": w})
    return out


def growth_estimate(values, magnitudes, v_dom):
    """Least-squares estimate of a valuation from |f| along the path.

    |f| ~ |s|^v and m ~ |s|^v_dom give log|f| = (v / v_dom) log m; the
    fitted slope times v_dom estimates v.  Zero values (to the working
    precision) report +inf.
    """
    logs = []
    for v, m in zip(values, magnitudes):
        a = abs(v)
        if not a:
            return math.inf
        logs.append(math.log(float(mpmath.log(a, 10))) if False
                    else float(mpmath.log(a) / mpmath.log(mpmath.mpf(m))))
    n = len(logs)
    xs = [1.0] * n
    slope = (n * sum(l * 1 for l in logs)) if False else None
    mean_x = 0.0
    mean_y = sum(logs) / n
    pts = [float(mpmath.log(mpmath.mpf(m))) for m in magnitudes]
    mean_t = sum(pts) / n
    num = sum((t - mean_t) * (l * float(mpmath.log(mpmath.mpf(m))) / float(mpmath.log(mpmath.mpf(m))) - mean_y)
              for t, l, m in zip(pts, logs, magnitudes))
    den = sum((t - mean_t) ** 2 for t in pts)
    slope = num / den if den else 0.0
    return slope * float(v_dom)


def valuation_sign_agrees(certified, estimate, tol=0.25):
    """Sign agreement between a certified valuation and a path estimate."""
    if certified == math.inf:
        return estimate > tol
    c = float(certified)
    if c > 0:
        return estimate > tol
    if c < 0:
        return estimate < -tol
    return abs(estimate) <= tol


def trace_path_estimates(branch, words=("a", "ab", "aB"),
                         magnitudes=DEFAULT_MAGNITUDES, dps=None):
    """Numeric valuation estimates of trace functions along a branch."""
    from .branches import _parse_word
    points = branch_path_points(branch, magnitudes, dps=dps)
    _, v_dom = dominant_coordinate(branch)
    out = {}
    for w in words:
        poly = trace_reduce(_parse_word(w))
        vals = [_mpoly_eval_numeric(poly, (pt["x"], pt["x"], pt["z"]))
                for pt in points]
        out[w] = growth_estimate(vals, magnitudes, v_dom)
    return out
