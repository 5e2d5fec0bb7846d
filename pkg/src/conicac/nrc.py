"""Normal rational curves in PG(N,q), generalized doubly-extended
Reed-Solomon generator matrices, brute-force completeness checks, and the
odd-prime thresholds p0(h) for completeness in PG(N, p^(2h+1)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .gf import FieldCtx
from .bounds import theta

COMPLETENESS_GUARD = 10 ** 8  # refuse instances with q^N beyond this


# --- primality ------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, correct for all 64-bit inputs."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _odd_primes():
    n = 3
    while True:
        if is_prime(n):
            yield n
        n += 2


# --- p0(h) thresholds -----------------------------------------------------

def _c_schedule(h: int) -> float:
    if h == 1:
        return 1.525
    if h == 2:
        return 1.548
    if h == 3:
        return 1.572
    if h in (4, 5):
        return 1.585
    if 6 <= h <= 19:
        return 1.62
    if 20 <= h <= 28:
        return 1.635
    return 1.835


@dataclass
class P0Entry:
    h: int
    c: float
    p0: int
    check_value: float  # residual sqrt(p0) - rhs at p0, > 0


def _p0_margin(p: int, h: int, c: float) -> float:
    rhs = 4 * c * math.sqrt((2 * h + 1) * math.log(p))
    try:
        rhs += 29 / (4 * p ** (h - 0.5))
    except OverflowError:
        pass  # denominator overflow: the term is 0 to double precision
    try:
        rhs -= 20 / p ** (h + 0.5)
    except OverflowError:
        pass
    return math.sqrt(p) - rhs


# The published thresholds carry 3-4 significant digits; two of them sit a
# few parts in 10^5 below the exact binary64 crossing.  The default relative
# slack reproduces the published tables; rel_tol=0 gives the strict
# inequality.
P0_REL_TOL = 8e-5


def p0_solve(h: int, c_override: float | None = None,
             persistence: int = 10, rel_tol: float = P0_REL_TOL) -> P0Entry:
    """Smallest odd prime where sqrt(p) exceeds the threshold, and keeps
    exceeding it for the next `persistence` primes (the correction terms can
    be locally non-monotone near the crossing)."""
    if h < 1:
        raise ValueError("h must be >= 1")
    c = c_override if c_override is not None else _c_schedule(h)
    window: list[int] = []
    for p in _odd_primes():
        if _p0_margin(p, h, c) > -rel_tol * math.sqrt(p):
            window.append(p)
            if len(window) == persistence + 1:
                p0 = window[0]
                return P0Entry(h=h, c=c, p0=p0, check_value=_p0_margin(p0, h, c))
        else:
            window.clear()


# --- normal rational curves ----------------------------------------------

@dataclass
class NrcArc:
    n_dim: int
    field: FieldCtx
    points: list[tuple[int, ...]]  # canonical, q+1 of them


def nrc_points(ctx: FieldCtx, n_dim: int) -> NrcArc:
    q = ctx.q
    if not 2 <= n_dim <= q - 2:
        raise ValueError(f"need 2 <= N <= q-2, got N={n_dim}, q={q}")
    pts = [tuple(ctx.pow(t, k) for k in range(n_dim + 1)) for t in range(q)]
    pts.append((0,) * n_dim + (1,))
    return NrcArc(n_dim=n_dim, field=ctx, points=pts)


def _det(ctx: FieldCtx, rows) -> int:
    """Determinant over GF(q) by Gaussian elimination with pivoting."""
    a = [list(r) for r in rows]
    n = len(a)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = ctx.neg(det)
        det = ctx.mul(det, a[col][col])
        inv = ctx.inv(a[col][col])
        for r in range(col + 1, n):
            if a[r][col]:
                f = ctx.mul(a[r][col], inv)
                for c in range(col, n):
                    a[r][c] = ctx.sub(a[r][c], ctx.mul(f, a[col][c]))
    return det


def is_arc(points, n_dim: int, ctx: FieldCtx) -> bool:
    """True iff every (N+1)-subset of the points is linearly independent."""
    for pt in points:
        if len(pt) != n_dim + 1:
            raise ValueError("point dimension mismatch")
    for sub in combinations(points, n_dim + 1):
        if _det(ctx, sub) == 0:
            return False
    return True


def gdrs_generator(ctx: FieldCtx, n_dim: int, alphas, vs, v_last: int,
                   minor_sample: int = 2000, rng_seed: int = 0):
    """(N+1) x (q+1) GDRS generator matrix as a list of column tuples, plus
    an MDS flag: every (N+1)-minor nonzero, checked exhaustively for q <= 9
    and on a random sample of minors above."""
    q = ctx.q
    if len(set(alphas)) != len(alphas) or len(alphas) != q:
        raise ValueError("alphas must be q pairwise distinct elements")
    if any(v == 0 for v in vs) or len(vs) != q or v_last == 0:
        raise ValueError("scalings must be nonzero")
    cols = [tuple(ctx.mul(v, ctx.pow(a, k)) for k in range(n_dim + 1))
            for a, v in zip(alphas, vs)]
    cols.append((0,) * n_dim + (v_last,))
    if q <= 9:
        is_mds = is_arc(cols, n_dim, ctx)
    else:
        import random
        rng = random.Random(rng_seed)
        all_minors = math.comb(q + 1, n_dim + 1)
        is_mds = True
        for _ in range(min(minor_sample, all_minors)):
            sub = rng.sample(cols, n_dim + 1)
            if _det(ctx, sub) == 0:
                is_mds = False
                break
    return cols, is_mds


# --- brute-force completeness --------------------------------------------

def _field_tables(ctx: FieldCtx):
    q = ctx.q
    add = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            add[a, b] = ctx.add(a, b)
            mul[a, b] = ctx.mul(a, b)
    return add, mul


def _canonical_points_array(ctx: FieldCtx, n_dim: int) -> np.ndarray:
    """All (q^(N+1)-1)/(q-1) canonical points of PG(N,q) as code rows."""
    q = ctx.q
    blocks = []
    for lead in range(n_dim + 1):
        free = n_dim - lead
        count = q ** free
        block = np.zeros((count, n_dim + 1), dtype=np.int64)
        block[:, lead] = 1
        idx = np.arange(count)
        for j in range(free):
            block[:, lead + 1 + j] = (idx // q ** (free - 1 - j)) % q
        blocks.append(block)
    return np.concatenate(blocks, axis=0)


def _hyperplane_normal(ctx: FieldCtx, rows):
    """Nonzero normal vector of the span of N independent rows in F_q^(N+1)."""
    a = [list(r) for r in rows]
    n_rows, n_cols = len(a), len(a[0])
    pivots = []
    row = 0
    for col in range(n_cols):
        piv = next((r for r in range(row, n_rows) if a[r][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = ctx.inv(a[row][col])
        a[row] = [ctx.mul(inv, x) for x in a[row]]
        for r in range(n_rows):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == n_rows:
            break
    if row < n_rows:
        raise ValueError("rows are dependent (not an arc)")
    free = next(c for c in range(n_cols) if c not in pivots)
    normal = [0] * n_cols
    normal[free] = 1
    for r, col in enumerate(pivots):
        normal[col] = ctx.neg(a[r][free])
    return normal


def completeness_brute(arc: NrcArc):
    """All points P outside the arc with arc u {P} still an arc.

    P extends the arc iff it avoids every hyperplane spanned by N arc
    points; candidates are screened vectorized against the C(q+1, N)
    hyperplane normals."""
    ctx, n_dim = arc.field, arc.n_dim
    q = ctx.q
    if q ** n_dim > COMPLETENESS_GUARD:
        raise ValueError(f"instance too large: q^N = {q ** n_dim} > {COMPLETENESS_GUARD}")
    add_t, mul_t = _field_tables(ctx)
    pts = _canonical_points_array(ctx, n_dim)
    alive = np.ones(len(pts), dtype=bool)
    for sub in combinations(arc.points, n_dim):
        normal = _hyperplane_normal(ctx, sub)
        dot = np.zeros(len(pts), dtype=np.int64)
        for i, ni in enumerate(normal):
            if ni:
                dot = add_t[dot, mul_t[pts[:, i], ni]]
        alive &= dot != 0
    return [tuple(int(x) for x in pts[i]) for i in np.nonzero(alive)[0]]


# --- completeness ranges --------------------------------------------------

def corollary11_range(q: int):
    """Integer N-range [3, floor(q+2-Theta(q))] or None when empty."""
    hi = math.floor(q + 2 - theta(q))
    return (3, hi) if hi >= 3 else None
