"""Upper bounds on the smallest AC-subset size t(q).

Implicit bound A is an exact-integer recursion on worst-case uncovered
counts; the remaining bounds are closed-form or short scans in binary64.
Starred values divide a bound by sqrt(q ln q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .gf import factor_prime_power


def sqrt_qlnq(q: int) -> float:
    return math.sqrt(q * math.log(q))


def is_prime_power(q: int) -> bool:
    return factor_prime_power(q) is not None


def in_q1(q: int) -> bool:
    """Non-prime prime powers 8 <= q <= 139129."""
    pm = factor_prime_power(q)
    return pm is not None and pm[1] >= 2 and 8 <= q <= 139129


# --- implicit bound A -----------------------------------------------------

@dataclass
class BoundTrace:
    q: int
    w0: int
    u0: int
    steps: list[tuple[int, int]]  # (w, U_w), exact integers
    w_fin: int | None
    feasible: bool

    @property
    def bound(self) -> int | None:
        return None if self.w_fin is None else self.w_fin + 1

    @property
    def star(self) -> float | None:
        return None if self.w_fin is None else self.bound / sqrt_qlnq(self.q)


def bound_a_trace(q: int, w0: int = 5, u0: int | None = None) -> BoundTrace:
    """Iterate U_{w+1} = U_w - ceil((w-2) U_w / (q+1-w)) exactly until the
    uncovered bound hits zero; t(q) <= w_fin + 1 when w_fin < (q+3)/2."""
    if u0 is None:
        u0 = (q - w0) ** 2
    if w0 < 2:
        raise ValueError("w0 must be >= 2")
    if u0 < 1 or u0 > q * q:
        raise ValueError("need 1 <= U0 <= q^2")
    steps = [(w0, u0)]
    w, u = w0, u0
    while u > 0:
        if q + 1 - w < 1:  # denominator exhausted: the process never finished
            return BoundTrace(q, w0, u0, steps, w_fin=None, feasible=False)
        u = u - -((w - 2) * u // -(q + 1 - w))  # u - ceil((w-2)u/(q+1-w)), exact
        steps.append((w + 1, u))
        if u <= 0:
            return BoundTrace(q, w0, u0, steps, w_fin=w, feasible=2 * w < q + 3)
        w += 1
    raise AssertionError("unreachable: U0 >= 1 enters the loop")


# --- truncated process and bound B ---------------------------------------

def f_q_log(q: int, w: int) -> float:
    """Natural log of the product prod_{i=1..w} (1 - (i-2)/(q+1-i))."""
    if not 1 <= w < q + 1:
        raise ValueError("need 1 <= w < q+1")
    total = 0.0
    for i in range(1, w + 1):
        factor = 1.0 - (i - 2) / (q + 1 - i)
        if factor <= 0:
            raise ValueError(f"nonpositive factor at i={i} (w too large)")
        total += math.log(factor)
    return total


def bound_theorem32(q: int, xi: float):
    """Smallest w < (q+3)/2 with log f_q(w) <= log(xi/q^2); bound w+1+xi.
    Returns None when no admissible w exists."""
    if xi < 1:
        raise ValueError("xi must be >= 1")
    target = math.log(xi) - 2 * math.log(q)
    total = 0.0
    w_max = (q + 2) // 2  # largest integer < (q+3)/2
    for w in range(1, w_max + 1):
        total += math.log(1.0 - (w - 2) / (q + 1 - w))
        if total <= target:
            return w, w + 1 + xi
    return None


def default_xi(q: int) -> float:
    return math.sqrt(q / (3 * math.log(q)))


def bound_b(q: int, xi: float | None = None):
    """Implicit bound B: smallest w < (q+3)/2 with
    w - (q-1) ln((q+1)/(q+1-w)) <= ln(xi/q^2); bound w+1+xi."""
    if q < 5:
        raise ValueError("q must be >= 5")
    if xi is None:
        xi = default_xi(q)
    if xi < 1:
        raise ValueError("xi must be >= 1")
    target = math.log(xi) - 2 * math.log(q)
    w_max = (q + 2) // 2
    for w in range(1, w_max + 1):
        lhs = w - (q - 1) * math.log((q + 1) / (q + 1 - w))
        if lhs <= target:
            return w, w + 1 + xi
    return None


# --- explicit bounds ------------------------------------------------------

def bound_c_phi(q: int) -> float:
    """Phi(q) = sqrt(q (3 ln q + ln ln q + ln 3)) + sqrt(q / (3 ln q)) + 4."""
    if q < 5:
        raise ValueError("q must be >= 5")
    lnq = math.log(q)
    return math.sqrt(q * (3 * lnq + math.log(lnq) + math.log(3))) + math.sqrt(q / (3 * lnq)) + 4


def bound_theorem34(q: int, xi: float) -> float:
    """sqrt(2q) sqrt(ln(q^2/xi)) + xi + 4 for arbitrary xi >= 1."""
    if xi < 1:
        raise ValueError("xi must be >= 1")
    if xi > q * q:
        raise ValueError("xi > q^2: log domain")
    return math.sqrt(2 * q) * math.sqrt(2 * math.log(q) - math.log(xi)) + xi + 4


def theta(q: int) -> float:
    """Piecewise best bound Theta(q); defined for prime powers q >= 5."""
    if q < 5:
        raise ValueError("q must be >= 5")
    if not is_prime_power(q):
        raise ValueError(f"q={q} is not a prime power")
    s = sqrt_qlnq(q)
    candidates = [min(1.835 * s, bound_c_phi(q))]
    if 8 <= q <= 17041:
        candidates.append(1.62 * s)
    if 17041 < q <= 33013:
        candidates.append(1.635 * s)
    if in_q1(q):
        candidates.append(1.674 * s)
    return min(candidates)


_THEOREM41_EXTRA_Q = (160801, 208849, 253009)


def theorem41_bound(q: int):
    """(coefficient, bound) from the computer-search ranges; the range
    conditions are implemented literally as printed, including the stray
    single-q memberships for q=11 and q=7."""
    if not is_prime_power(q):
        raise ValueError(f"q={q} is not a prime power")
    coefs = []
    if 8 <= q <= 887 and q != 11:
        coefs.append(1.525)
    if 887 < q <= 1553:
        coefs.append(1.548)
    if 1553 < q <= 2351 or q == 11:
        coefs.append(1.572)
    if 2351 < q <= 4027:
        coefs.append(1.585)
    if 4027 < q <= 17041:
        coefs.append(1.620)
    if 17041 < q <= 33013 or q == 7:
        coefs.append(1.635)
    if in_q1(q):
        coefs.append(1.674)
    if q in _THEOREM41_EXTRA_Q:
        coefs.append(1.686)
    if not coefs:
        raise ValueError(f"q={q} outside all computer-search ranges")
    c = min(coefs)
    return c, c * sqrt_qlnq(q)


# --- curve emission -------------------------------------------------------

BOUND_NAMES = ("A", "B", "C", "theta")


def evaluate_bound(name: str, q: int):
    """Bound value for one q, or None when infeasible / not applicable."""
    if name == "A":
        tr = bound_a_trace(q, 5, (q - 5) ** 2)
        return float(tr.bound) if tr.w_fin is not None else None
    if name == "B":
        res = bound_b(q)
        return res[1] if res is not None else None
    if name == "C":
        return bound_c_phi(q)
    if name == "theta":
        try:
            return theta(q)
        except ValueError:
            return None
    raise ValueError(f"unknown bound name {name!r}")


def curve_emit(q_grid, names):
    """Rows (q, name, value, value/sqrt(q ln q)); infeasible pairs skipped."""
    rows = []
    for q in q_grid:
        for name in names:
            value = evaluate_bound(name, q)
            if value is None:
                continue
            rows.append((q, name, value, value / sqrt_qlnq(q)))
    return rows


def prime_powers_up_to(limit: int, lo: int = 5):
    """All prime powers in [lo, limit], ascending (simple sieve)."""
    n = limit + 1
    flags = bytearray([1]) * n
    flags[0:2] = b"\x00\x00"
    for i in range(2, int(limit ** 0.5) + 1):
        if flags[i]:
            flags[i * i::i] = bytearray(len(flags[i * i::i]))
    out = []
    for p in range(2, n):
        if flags[p]:
            pk = p
            while pk <= limit:
                if pk >= lo:
                    out.append(pk)
                pk *= p
    return sorted(out)
