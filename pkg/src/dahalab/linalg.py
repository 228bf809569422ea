"""Exact dense linear algebra over the library's scalar fields.

Entries are scalar objects with +, -, *, /, unary minus and an ``is_zero``
property; everything is deterministic (first usable pivot in column order).
Dimensions here are small (truncation balls and quotients), so classical
Gaussian elimination over the exact field is the right tool.
"""

from __future__ import annotations


def rref(rows, ncols, zero):
    """Reduced row echelon form (in place on a copy); returns (rows, pivots)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].invert() if hasattr(rows[r][c], "invert") else None
        if inv is not None:
            rows[r] = [x * inv for x in rows[r]]
        else:
            pv = rows[r][c]
            rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows, ncols, zero) -> int:
    return len(rref(rows, ncols, zero)[0])


def nullspace(rows, ncols, zero, one):
    """Basis of the right kernel, one vector per free column, deterministic."""
    red, pivots = rref(rows, ncols, zero)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in zip(red, pivots):
            if not r[fc].is_zero:
                v[pc] = -r[fc]
        basis.append(v)
    return basis


def mat_vec(rows, v, zero):
    out = []
    for r in rows:
        acc = zero
        for a, b in zip(r, v):
            if not a.is_zero and not b.is_zero:
                acc = acc + a * b
        out.append(acc)
    return out


def mat_mul(A, B, zero):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a.is_zero:
                continue
            Bt = B[t]
            row = out[i]
            for j in range(m):
                b = Bt[j]
                if not b.is_zero:
                    row[j] = row[j] + a * b
    return out


def identity(n, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_inverse(rows, zero, one):
    n = len(rows)
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug, 2 * n, zero)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in red]


def mat_pow(rows, e, zero, one):
    n = len(rows)
    out = identity(n, zero, one)
    for _ in range(e):
        out = mat_mul(out, rows, zero)
    return out


def solve_columns(cols, target, zero, one):
    """Coefficients x with sum x_j cols[j] = target, or None if unsolvable."""
    if not cols:
        return None if any(not t.is_zero for t in target) else []
    nrows = len(cols[0])
    aug = [[cols[j][i] for j in range(len(cols))] + [target[i]] for i in range(nrows)]
    red, pivots = rref(aug, len(cols) + 1, zero)
    if len(cols) in pivots:
        return None
    x = [zero] * len(cols)
    for r, pc in zip(red, pivots):
        x[pc] = r[len(cols)]
    return x


def in_span(vectors, target, zero, one) -> bool:
    return solve_columns([list(v) for v in vectors], list(target), zero, one) is not None


class SpanBuilder:
    """Incremental row-reduced span with exact membership tests."""

    def __init__(self, ncols, zero, one):
        self.ncols = ncols
        self.zero = zero
        self.one = one
        self.rows = []  # reduced rows
        self.pivots = []

    def reduce(self, v):
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            if not v[p].is_zero:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        return all(x.is_zero for x in self.reduce(v))

    def add(self, v) -> bool:
        """Insert v; True if the span grew."""
        v = self.reduce(v)
        for c in range(self.ncols):
            if not v[c].is_zero:
                inv = v[c].invert() if hasattr(v[c], "invert") else None
                v = [x * inv for x in v] if inv is not None else [x / v[c] for x in v]
                for i, row in enumerate(self.rows):
                    if not row[c].is_zero:
                        f = row[c]
                        self.rows[i] = [a - f * b for a, b in zip(row, v)]
                self.rows.append(v)
                self.pivots.append(c)
                order = sorted(range(len(self.pivots)), key=lambda t: self.pivots[t])
                self.rows = [self.rows[t] for t in order]
                self.pivots = [self.pivots[t] for t in order]
                return True
        return False

    @property
    def dim(self) -> int:
        return len(self.rows)


def rank_modp(int_rows, p: int) -> int:
    """Rank of an integer matrix over GF(p); fast path for certificates."""
    rows = [[x % p for x in r] for r in int_rows]
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r
