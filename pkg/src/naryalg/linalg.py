"""Exact linear algebra over the rationals.

Matrices are lists of lists of Fraction.  Three independent rank routines
are provided (plain Gauss-Jordan, fraction-free Bareiss, minor expansion)
so that results can be cross-checked.
"""

from fractions import Fraction
from itertools import combinations

ZERO = Fraction(0)
ONE = Fraction(1)


def zeros(rows, cols):
    return [[ZERO] * cols for _ in range(rows)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def copy_matrix(a):
    return [row[:] for row in a]


def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def mat_mul(a, b):
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c == 0:
                continue
            bt = b[t]
            for j in range(m):
                if bt[j] != 0:
                    oi[j] += c * bt[j]
    return out


def mat_vec(a, v):
    return [sum((c * x for c, x in zip(row, v) if c != 0), ZERO) for row in a]


def is_zero_matrix(a):
    return all(x == 0 for row in a for x in row)


def hstack(a, b):
    if not a:
        return copy_matrix(b)
    if not b:
        return copy_matrix(a)
    return [ra + rb for ra, rb in zip(a, b)]


def vstack(a, b):
    return copy_matrix(a) + copy_matrix(b)


def rref(a):
    """Reduced row echelon form.  Returns (R, pivot column list)."""
    r = copy_matrix(a)
    if not r:
        return r, []
    rows, cols = len(r), len(r[0])
    pivots = []
    pr = 0
    for pc in range(cols):
        piv = None
        for i in range(pr, rows):
            if r[i][pc] != 0:
                piv = i
                break
        if piv is None:
            continue
        r[pr], r[piv] = r[piv], r[pr]
        inv = ONE / r[pr][pc]
        r[pr] = [x * inv for x in r[pr]]
        for i in range(rows):
            if i != pr and r[i][pc] != 0:
                f = r[i][pc]
                r[i] = [x - f * y for x, y in zip(r[i], r[pr])]
        pivots.append(pc)
        pr += 1
        if pr == rows:
            break
    return r, pivots


def rank(a):
    return len(rref(a)[1])


def bareiss_rank(a):
    """Fraction-free elimination rank; independent of rref's arithmetic path."""
    if not a or not a[0]:
        return 0
    # clear denominators row by row so all entries are integers
    m = []
    for row in a:
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        m.append([int(x * lcm) for x in row])
    rows, cols = len(m), len(m[0])
    prev = 1
    rk = 0
    pr = 0
    for pc in range(cols):
        piv = None
        for i in range(pr, rows):
            if m[i][pc] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[pr], m[piv] = m[piv], m[pr]
        for i in range(pr + 1, rows):
            for j in range(pc + 1, cols):
                m[i][j] = (m[pr][pc] * m[i][j] - m[i][pc] * m[pr][j]) // prev
            m[i][pc] = 0
        prev = m[pr][pc]
        rk += 1
        pr += 1
        if pr == rows:
            break
    return rk


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def rank_by_minors(a):
    """Largest k with a nonvanishing k x k minor.  Exponential; small m only."""
    if not a or not a[0]:
        return 0
    rows, cols = len(a), len(a[0])
    for k in range(min(rows, cols), 0, -1):
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                sub = [[a[i][j] for j in ci] for i in ri]
                if det(sub) != 0:
                    return k
    return 0


def det(a):
    """Determinant by fraction-free Bareiss on a copy."""
    n = len(a)
    if n == 0:
        return ONE
    m = copy_matrix(a)
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = None
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    piv = i
                    break
            if piv is None:
                return ZERO
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev
            m[i][k] = ZERO
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def nullspace(a):
    """Canonical nullspace basis (one vector per free column of the RREF)."""
    if not a:
        return []
    cols = len(a[0])
    r, pivots = rref(a)
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    basis = []
    for fc in free:
        v = [ZERO] * cols
        v[fc] = ONE
        for ri, pc in enumerate(pivots):
            v[pc] = -r[ri][fc]
        basis.append(v)
    return basis


def solve(a, b):
    """One solution of A x = b, or None if inconsistent."""
    if not a:
        return None
    cols = len(a[0])
    aug = [row + [bv] for row, bv in zip(a, b)]
    r, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [ZERO] * cols
    for ri, pc in enumerate(pivots):
        x[pc] = r[ri][cols]
    return x


def row_space(a):
    """RREF rows with zero rows dropped: a canonical basis of the row space."""
    r, pivots = rref(a)
    return [r[i] for i in range(len(pivots))]


def same_subspace(a, b):
    """Do the rows of a and b span the same subspace?"""
    return row_space(a) == row_space(b)


def column_space_dim(a):
    return rank(a)
