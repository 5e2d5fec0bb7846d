"""PG(2,q), the fixed conic {(1,t,t^2)} u {(0,0,1)}, and bisecant incidence.

Conic points are indexed by a parameter t in F_q u {inf}; the point at
infinity is encoded as the code q (one past the field range) so arrays of
size q+1 stay dense.  The off-conic point set M_q (nucleus excluded for even
q) is indexed lexicographically by canonical coordinate codes, which keeps
bitset layouts reproducible across runs.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .gf import FieldCtx, FieldError, field_for_order


def canon_point(ctx: FieldCtx, triple) -> tuple[int, int, int]:
    """Scale so the leftmost nonzero coordinate is 1; idempotent."""
    x0, x1, x2 = triple
    if x0:
        s = ctx.inv(x0)
        return (1, ctx.mul(x1, s), ctx.mul(x2, s))
    if x1:
        s = ctx.inv(x1)
        return (0, 1, ctx.mul(x2, s))
    if x2:
        return (0, 0, 1)
    raise ValueError("zero triple has no projective point")


def line_through(ctx: FieldCtx, P, Q) -> tuple[int, int, int]:
    """Canonical dual coordinates of the unique line through distinct P, Q."""
    a = ctx.sub(ctx.mul(P[1], Q[2]), ctx.mul(P[2], Q[1]))
    b = ctx.sub(ctx.mul(P[2], Q[0]), ctx.mul(P[0], Q[2]))
    c = ctx.sub(ctx.mul(P[0], Q[1]), ctx.mul(P[1], Q[0]))
    return canon_point(ctx, (a, b, c))


def on_line(ctx: FieldCtx, P, line) -> bool:
    s = 0
    for x, a in zip(P, line):
        s = ctx.add(s, ctx.mul(x, a))
    return s == 0


class ConicModel:
    """Immutable incidence model shared read-only by the search layers."""

    def __init__(self, ctx: FieldCtx):
        q = ctx.q
        if q < 4:
            raise ValueError(f"q={q} < 4: conic model undefined")
        self.ctx = ctx
        self.q = q
        self.inf = q  # parameter code for the point at infinity

        self.params = list(range(q)) + [q]
        self.conic_point = {}
        for t in range(q):
            self.conic_point[t] = (1, t, ctx.mul(t, t))
        self.conic_point[q] = (0, 0, 1)
        self._conic_set = set(self.conic_point.values())

        self.tangent = {t: self._tangent_line(t) for t in self.params}
        for t, line in self.tangent.items():
            hits = [s for s in self.params if on_line(ctx, self.conic_point[s], line)]
            assert hits == [t], f"tangent at t={t} meets the conic in {hits}"

        self.nucleus = None
        if q % 2 == 0:
            P = self._intersect(self.tangent[0], self.tangent[q])
            assert all(on_line(ctx, P, l) for l in self.tangent.values())
            self.nucleus = P

        excluded = set(self._conic_set)
        if self.nucleus is not None:
            excluded.add(self.nucleus)
        self.m_points = [P for P in self._all_points() if P not in excluded]
        self.m_points.sort()
        self.m_index = {P: i for i, P in enumerate(self.m_points)}
        self.m_size = len(self.m_points)
        self.full_mask = (1 << self.m_size) - 1

        self._pair_indices = {}
        self._pair_mask = {}
        for t1, t2 in combinations(self.params, 2):
            idxs = self._bisecant_indices(t1, t2)
            mask = 0
            for i in idxs:
                mask |= 1 << i
            self._pair_indices[(t1, t2)] = idxs
            self._pair_mask[(t1, t2)] = mask

    # --- construction helpers --------------------------------------------

    def _all_points(self):
        ctx = self.ctx
        pts = [(0, 0, 1)]
        pts += [(0, 1, z) for z in range(ctx.q)]
        pts += [(1, y, z) for y in range(ctx.q) for z in range(ctx.q)]
        return pts

    def _tangent_line(self, t):
        # polar line of the conic x0*x2 = x1^2: gradient (x2, -2*x1, x0)
        ctx = self.ctx
        x0, x1, x2 = self.conic_point[t]
        two = ctx.add(1, 1)
        return canon_point(ctx, (x2, ctx.neg(ctx.mul(two, x1)), x0))

    def _intersect(self, l1, l2):
        return line_through(self.ctx, l1, l2)  # duality: same cross product

    def _bisecant_indices(self, t1, t2):
        ctx = self.ctx
        P1, P2 = self.conic_point[t1], self.conic_point[t2]
        idxs = []
        for a in range(ctx.q):  # a*P1 + P2, plus P1 itself
            pt = canon_point(ctx, tuple(ctx.add(ctx.mul(a, x), y) for x, y in zip(P1, P2)))
            if pt in self._conic_set:
                continue
            idxs.append(self.m_index[pt])
        assert len(idxs) == ctx.q - 1
        return sorted(idxs)

    # --- queries ----------------------------------------------------------

    def param_name(self, t) -> str:
        return "inf" if t == self.inf else str(t)

    def parse_param(self, s: str) -> int:
        if s == "inf":
            return self.inf
        t = int(s)
        if not 0 <= t < self.q:
            raise ValueError(f"parameter {s} out of range for q={self.q}")
        return t

    def bisecant_mpoints(self, t1, t2):
        """Sorted M_q indices on the line through conic points t1, t2."""
        if t1 == t2:
            raise ValueError("bisecant needs two distinct parameters")
        key = (t1, t2) if t1 < t2 else (t2, t1)
        return self._pair_indices[key]

    def pair_mask(self, t1, t2) -> int:
        key = (t1, t2) if t1 < t2 else (t2, t1)
        return self._pair_mask[key]

    def tangent_count(self, P) -> int:
        ctx = self.ctx
        return sum(on_line(ctx, P, l) for l in self.tangent.values())

    def classify_point(self, P) -> str:
        if P in self._conic_set:
            return "on-conic"
        if self.nucleus is not None and P == self.nucleus:
            return "nucleus"
        if self.q % 2 == 0:
            return "m-even"
        n = self.tangent_count(P)
        if n == 2:
            return "external"
        if n == 0:
            return "internal"
        raise AssertionError(f"odd-q point {P} on {n} tangents")


@lru_cache(maxsize=None)
def build_conic_model(q: int) -> ConicModel:
    try:
        ctx = field_for_order(q)
    except FieldError as e:
        raise ValueError(str(e)) from e
    return ConicModel(ctx)
