"""Matrices over a ring-protocol domain.

det_fraction_free is Bareiss one-step elimination: every intermediate value is
a ratio of minors, so the divisions are exact in the ring and no fractions are
introduced. A Laplace pre-pass peels rows/columns that contain a single
nonzero entry first; for the chain complexes in this package that collapses
most of the work into one small dense block.

smith_normal_form works over Z with full unimodular transforms.
"""


class Mat:
    __slots__ = ("rows", "ring", "m", "n")

    def __init__(self, rows, ring, ncols=None):
        self.rows = [list(r) for r in rows]
        self.ring = ring
        self.m = len(self.rows)
        self.n = len(self.rows[0]) if self.rows else (ncols or 0)
        for r in self.rows:
            if len(r) != self.n:
                raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n, ring):
        z, o = ring.zero(), ring.one()
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], ring)

    @classmethod
    def zeros(cls, m, n, ring):
        z = ring.zero()
        return cls([[z] * n for _ in range(m)], ring, ncols=n)

    @property
    def shape(self):
        return (self.m, self.n)

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def copy(self):
        return Mat([list(r) for r in self.rows], self.ring, ncols=self.n)

    def transpose(self):
        return Mat([[self.rows[i][j] for i in range(self.m)]
                    for j in range(self.n)], self.ring, ncols=self.m)

    def __mul__(self, other):
        if not isinstance(other, Mat):
            return Mat([[v * other for v in r] for r in self.rows],
                       self.ring, ncols=self.n)
        if self.n != other.m:
            raise ValueError("shape mismatch")
        z = self.ring.zero()
        out = []
        for i in range(self.m):
            row_i = self.rows[i]
            out_row = []
            for j in range(other.n):
                acc = z
                for k in range(self.n):
                    a = row_i[k]
                    if a:
                        b = other.rows[k][j]
                        if b:
                            acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return Mat(out, self.ring, ncols=other.n)

    def __add__(self, other):
        return Mat([[a + b for a, b in zip(r1, r2)]
                    for r1, r2 in zip(self.rows, other.rows)], self.ring, ncols=self.n)

    def __sub__(self, other):
        return Mat([[a - b for a, b in zip(r1, r2)]
                    for r1, r2 in zip(self.rows, other.rows)], self.ring, ncols=self.n)

    def __neg__(self):
        return Mat([[-a for a in r] for r in self.rows], self.ring, ncols=self.n)

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows

    def map(self, fn, ring=None):
        return Mat([[fn(v) for v in r] for r in self.rows],
                   ring or self.ring, ncols=self.n)

    def hstack(self, other):
        return Mat([r1 + r2 for r1, r2 in zip(self.rows, other.rows)],
                   self.ring, ncols=self.n + other.n)

    def col(self, j):
        return [self.rows[i][j] for i in range(self.m)]

    def submatrix(self, keep_rows, keep_cols):
        return Mat([[self.rows[i][j] for j in keep_cols] for i in keep_rows],
                   self.ring, ncols=len(keep_cols))

    def __repr__(self):
        return f"Mat({self.rows!r})"


def det_fraction_free(mat):
    """Determinant over an integral domain (Bareiss + sparse Laplace pre-pass)."""
    if mat.m != mat.n:
        raise ValueError("determinant of a non-square matrix")
    ring = mat.ring
    n = mat.m
    if n == 0:
        return ring.one()
    a = [list(r) for r in mat.rows]
    live_rows = list(range(n))
    live_cols = list(range(n))
    factor = ring.one()
    sign = 1

    # peel rows/columns with a single nonzero entry
    changed = True
    while changed and len(live_rows) > 1:
        changed = False
        for ri, i in enumerate(live_rows):
            nz = [(cj, j) for cj, j in enumerate(live_cols) if a[i][j]]
            if not nz:
                return ring.zero()
            if len(nz) == 1:
                cj, j = nz[0]
                factor = factor * a[i][j]
                if (ri + cj) % 2:
                    sign = -sign
                live_rows.pop(ri)
                live_cols.pop(cj)
                changed = True
                break
        else:
            for cj, j in enumerate(live_cols):
                nz = [(ri, i) for ri, i in enumerate(live_rows) if a[i][j]]
                if not nz:
                    return ring.zero()
                if len(nz) == 1:
                    ri, i = nz[0]
                    factor = factor * a[i][j]
                    if (ri + cj) % 2:
                        sign = -sign
                    live_rows.pop(ri)
                    live_cols.pop(cj)
                    changed = True
                    break

    m = [[a[i][j] for j in live_cols] for i in live_rows]
    k = len(m)
    if k == 0:
        core = ring.one()
    elif k == 2:
        # direct 2x2 product difference; besides being cheaper, this keeps
        # coefficients that vanish only to a finite precision, which the
        # fraction-free elimination would discard in its exact divisions
        core = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    else:
        prev = ring.one()
        for t in range(k - 1):
            piv = None
            for r in range(t, k):
                if m[r][t]:
                    piv = r
                    break
            if piv is None:
                return ring.zero()
            if piv != t:
                m[t], m[piv] = m[piv], m[t]
                sign = -sign
            ptt = m[t][t]
            for i in range(t + 1, k):
                mit = m[i][t]
                row_i = m[i]
                row_t = m[t]
                for j in range(t + 1, k):
                    row_i[j] = ring.exact_div(ptt * row_i[j] - mit * row_t[j], prev)
                row_i[t] = ring.zero()
            prev = ptt
        core = m[k - 1][k - 1]
    result = factor * core
    return result if sign > 0 else -result


def smith_normal_form(a):
    """Smith normal form over Z.

    Returns (S, U, V, rank) with U*A*V = S, U and V unimodular, diagonal
    entries nonnegative with d1 | d2 | ... .
    """
    a = [[int(v) for v in row] for row in a]
    m = len(a)
    n = len(a[0]) if a else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in a:
            r[i] -= q * r[j]
        for r in v:
            r[i] -= q * r[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    rank = 0
    for t in range(min(m, n)):
        # locate a nonzero pivot of minimal absolute value
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                # divisibility: pivot must divide the rest of the block
                offender = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if a[i][j] % a[t][t]:
                            offender = i
                            break
                    if offender is not None:
                        break
                if offender is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[offender])]
                u[t] = [x + y for x, y in zip(u[t], u[offender])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        rank += 1
    return a, u, v, rank


def pivot_columns(mat, order=None):
    """Pivot-column profile over an integral domain, fraction-free.

    Forward elimination with cross-multiplied row updates selects the same
    greedy column profile as rref over the fraction field, without any
    division. Useful when field arithmetic would drag expensive gcd
    normalization through every row operation.
    """
    a = [list(r) for r in mat.rows]
    m, n = mat.m, mat.n
    cols = list(order) if order is not None else list(range(n))
    pivots = []
    row = 0
    for j in cols:
        if row >= m:
            break
        piv = next((i for i in range(row, m) if a[i][j]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        p = a[row][j]
        for i in range(row + 1, m):
            f = a[i][j]
            if f:
                a[i] = [p * x - f * y for x, y in zip(a[i], a[row])]
        pivots.append(j)
        row += 1
    return pivots


def rref(mat, pivot_cols_order=None):
    """Reduced row echelon form over a field.

    Returns (R, pivots) where R is the reduced matrix, pivots the list of
    pivot column indices in elimination order. pivot_cols_order lets callers
    randomize which columns are tried first (the result is still a valid
    echelon structure for rank/solve purposes).
    """
    ring = mat.ring
    a = [list(r) for r in mat.rows]
    m, n = mat.m, mat.n
    order = list(pivot_cols_order) if pivot_cols_order is not None else list(range(n))
    pivots = []
    row = 0
    for j in order:
        if row >= m:
            break
        piv = None
        for i in range(row, m):
            if a[i][j]:
                piv = i
                break
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = ring.invert(a[row][j])
        a[row] = [x * inv for x in a[row]]
        for i in range(m):
            if i != row and a[i][j]:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        pivots.append(j)
        row += 1
    return Mat(a, ring, ncols=n), pivots


def solve_right(mat, rhs):
    """One solution X of mat @ X = rhs over a field, or None if inconsistent."""
    ring = mat.ring
    aug = mat.hstack(rhs)
    red, pivots = rref(aug)
    n = mat.n
    for i in range(red.m):
        if all(not red.rows[i][j] for j in range(n)) and \
           any(red.rows[i][j] for j in range(n, aug.n)):
            return None
    x = Mat.zeros(n, rhs.n, ring)
    for r, j in enumerate(pivots):
        if j >= n:
            return None
        for k in range(rhs.n):
            x.rows[j][k] = red.rows[r][n + k]
    return x
