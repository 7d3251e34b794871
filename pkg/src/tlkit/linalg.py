"""Exact linear algebra over the package's scalar domains.

Scalars only need +, -, *, /, bool (False iff zero).  Works uniformly for
RingElem, CycElem and Fraction entries.  The meander-matrix path uses a
fraction-free Gauss-Jordan over Laurent polynomials with exact divisions.
"""

from __future__ import annotations

from .coeffring import LaurentPoly, RingElem


class RankTracker:
    """Incremental exact rank of a growing family of sparse vectors."""

    def __init__(self):
        self.pivots = {}  # pivot column -> normalized sparse row

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, vec):
        """Reduce a sparse dict vector against the stored echelon rows.

        Pivot rows only have entries at columns >= their pivot, so a single
        ascending pass is complete.
        """
        vec = dict(vec)
        for col in sorted(self.pivots):
            if col not in vec:
                continue
            row = self.pivots[col]
            factor = vec[col]
            for c, v in row.items():
                s = vec.get(c)
                s = -factor * v if s is None else s - factor * v
                if s:
                    vec[c] = s
                else:
                    vec.pop(c, None)
        return vec

    def add(self, vec):
        """Insert a vector; returns True if it increased the rank."""
        red = self.reduce(vec)
        if not red:
            return False
        col = min(red)
        inv = red[col]
        row = {c: v / inv for c, v in red.items()}
        self.pivots[col] = row
        return True


def rank_of(vectors):
    t = RankTracker()
    for v in vectors:
        t.add(v)
    return t.rank


def kernel_basis(matrix, ncols):
    """Basis of the right kernel of a dense matrix (list of row lists)."""
    rows = [list(r) for r in matrix]
    nrows = len(rows)
    pivots = []  # (row, col)
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c]
        rows[r] = [v / inv for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
    pivot_cols = {c for _, c in pivots}
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        vec = [0] * ncols
        vec[fc] = 1
        for pr, pc in pivots:
            vec[pc] = -rows[pr][fc]
        basis.append(vec)
    return basis


def solve_exact(matrix, rhs_list):
    """Solve A x = b for each b in rhs_list; returns None if inconsistent.

    matrix: dense list of rows; rhs_list: list of column vectors.
    """
    n = len(matrix)
    ncols = len(matrix[0]) if n else 0
    aug = [list(matrix[i]) + [rhs[i] for rhs in rhs_list] for i in range(n)]
    width = ncols + len(rhs_list)
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, n) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = aug[r][c]
        aug[r] = [v / inv for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
    for i in range(r, n):
        if any(aug[i][ncols:]):
            if not any(aug[i][:ncols]):
                return None
    sols = []
    for k in range(len(rhs_list)):
        x = [0] * ncols
        for pr, pc in pivots:
            x[pc] = aug[pr][ncols + k]
        sols.append(x)
    return sols


def invert_matrix(matrix, one):
    """Dense Gauss-Jordan inverse over a field; raises ZeroDivisionError on
    singular input."""
    n = len(matrix)
    zero = one - one
    rhs = [[one if i == j else zero for i in range(n)] for j in range(n)]
    sols = solve_exact(matrix, rhs)
    if sols is None:
        raise ZeroDivisionError("singular matrix")
    # verify squareness of the solution (singular square systems may still
    # return after dropping rank)
    return [[sols[j][i] for j in range(n)] for i in range(n)]


def bareiss_inverse(matrix):
    """Inverse of a square matrix of LaurentPoly entries.

    Fraction-free Gauss-Jordan (Bareiss): all elimination arithmetic stays in
    the Laurent-polynomial ring with exact divisions; the single division by
    the determinant happens at the end.  Returns (inverse as RingElem rows,
    determinant-up-to-sign as LaurentPoly).
    """
    n = len(matrix)
    one = LaurentPoly.const(1)
    zero = LaurentPoly()
    m = [list(row) + [one if i == j else zero for j in range(n)]
         for i, row in enumerate(matrix)]
    prev = one
    for k in range(n):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                raise ZeroDivisionError("singular matrix")
            m[k], m[swap] = m[swap], m[k]
        pivot = m[k][k]
        for i in range(n):
            if i == k:
                continue
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(2 * n):
                if j == k:
                    continue
                val = pivot * row_i[j] - mik * row_k[j]
                row_i[j] = val.divexact(prev) if val else zero
            row_i[k] = zero
        prev = pivot
    det = m[n - 1][n - 1]
    if det.is_zero():
        raise ZeroDivisionError("singular matrix")
    inv = [[RingElem(m[i][n + j], det) for j in range(n)] for i in range(n)]
    return inv, det
