"""Upper and lower bounds on cycle counts that do not need a permanent.

Exact bounds are returned as Python ints (floored where the underlying value is
rational). Closed-form log bounds are :class:`LogBound` values evaluated with
mpmath at :data:`LOG_DPS` significant digits; they are only used to locate
cut-off values of ``n``, never to decide a single case.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from numbers import Real

import mpmath

from .graph import GraphError

LOG_DPS = 40
# comparisons of log-space values closer than this are not trusted
LOG_MARGIN = mpmath.mpf("1e-6")


class BoundDomainError(GraphError):
    """Parameters outside the range where a bound is stated."""


class AmbiguousComparison(ArithmeticError):
    """Two log-space bounds are too close to order reliably."""


class Direction(enum.Enum):
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class LogBound:
    ln_value: mpmath.mpf
    direction: Direction

    def __float__(self) -> float:
        return float(self.ln_value)


def below(upper: LogBound, lower: LogBound) -> bool:
    """True when an upper bound on one count is strictly below a lower bound on
    another, i.e. the first count is provably smaller.

    Only upper-vs-lower comparisons have a meaning; anything else raises.
    """
    if upper.direction is not Direction.UPPER or lower.direction is not Direction.LOWER:
        raise TypeError("compare an upper bound against a lower bound")
    gap = lower.ln_value - upper.ln_value
    if abs(gap) < LOG_MARGIN:
        raise AmbiguousComparison(f"log-space margin {mpmath.nstr(gap, 5)} below guard")
    return gap > 0


def _mpf(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


# --- Stirling sandwich ------------------------------------------------------


def ln_factorial_bounds(x: Real) -> tuple[mpmath.mpf, mpmath.mpf]:
    """``(lo, hi)`` with ``lo <= ln Gamma(x + 1) <= hi`` and ``hi - lo = 1/(12x)``."""
    if x < 1:
        raise BoundDomainError("Stirling bounds are used for x >= 1")
    with mpmath.workdps(LOG_DPS):
        x = _mpf(x)
        lo = x * mpmath.log(x) - x + mpmath.log(x) / 2 + mpmath.log(2 * mpmath.pi) / 2
        return +lo, lo + 1 / (12 * x)


# --- the maximal constrained product ---------------------------------------


@dataclass(frozen=True)
class PiValue:
    n: int
    m: int
    value: int
    sequence: tuple[int, ...]


def _check_pi_domain(n: int, m: int) -> None:
    if n < 3:
        raise BoundDomainError("Pi(n, m) needs n >= 3")
    if not 2 <= m <= comb(n, 2):
        raise BoundDomainError(f"Pi({n}, m) needs 2 <= m <= {comb(n, 2)}, got m={m}")


def pi_max_product(n: int, m: int) -> PiValue:
    """Greatest product of positive integers ``c_1..c_k`` (``k < n``) with
    ``c_i <= n - i`` summing to ``m``.

    Three regimes: the complete case ``m = C(n, 2)`` forces ``n-1, ..., 1``; for
    ``m <= 3n - 7`` the optimum uses threes and at most two twos;
    above that it is ``(s+1)^t s^(n-s-t) (s-1)!`` from the sequence
    ``s+1 (t times), s (n-s-t times), s-1, ..., 2``.
    """
    _check_pi_domain(n, m)
    if m == comb(n, 2):
        seq = tuple(range(n - 1, 0, -1))
        return PiValue(n, m, factorial(n - 1), seq)
    if m <= 3 * n - 7:
        r = m % 3
        if r == 0:
            seq = (3,) * (m // 3)
        elif r == 1:
            seq = (3,) * ((m - 4) // 3) + (2, 2)
        else:
            seq = (3,) * ((m - 2) // 3) + (2,)
        value = 1
        for c in seq:
            value *= c
        return PiValue(n, m, value, tuple(seq))
    # dense: sequence sum is (n-s)s + s(s-1)/2 - 1 + t with 0 <= t <= n-s-1
    for s in range(3, n):
        base = (n - s) * s + s * (s - 1) // 2 - 1
        t = m - base
        if 0 <= t <= n - s - 1:
            seq = (s + 1,) * t + (s,) * (n - s - t) + tuple(range(s - 1, 1, -1))
            value = (s + 1) ** t * s ** (n - s - t) * factorial(s - 1)
            return PiValue(n, m, value, seq)
    raise AssertionError(f"no (s, t) found for Pi({n}, {m})")  # unreachable for valid input


def pi_brute_force(n: int, m: int) -> int:
    """Exhaustive search over nonincreasing admissible sequences (small ``n`` only)."""
    if n > 14:
        raise BoundDomainError("exhaustive Pi search is limited to n <= 14")
    _check_pi_domain(n, m)
    best = 0

    def go(i: int, remaining: int, prev: int, product: int) -> None:
        nonlocal best
        if remaining == 0:
            best = max(best, product)
            return
        if i > n - 1:
            return
        top = min(prev, n - i, remaining)
        # remaining positions i..n-1 can hold at most sum of min(top, n-j)
        if sum(min(top, n - j) for j in range(i, n)) < remaining:
            return
        for c in range(top, 0, -1):
            go(i + 1, remaining - c, c, product * c)

    go(1, m, n - 1, 1)
    return best


# --- edge-count bounds ------------------------------------------------------


def _check_girth(g: int) -> None:
    if g < 3:
        raise BoundDomainError("girth must be at least 3")


def edge_bound(n: int, m: int, g: int) -> int:
    """``floor(Pi(n-1, m) * n^2 / (2g))``: cycles in any graph with ``n`` vertices,
    ``m`` edges and girth at least ``g``."""
    _check_girth(g)
    if n < 4:
        raise BoundDomainError("edge bound needs n >= 4 so that Pi(n-1, m) is defined")
    if not 2 <= m <= comb(n - 1, 2):
        raise BoundDomainError(f"edge bound needs 2 <= m <= C(n-1, 2) = {comb(n - 1, 2)}")
    return pi_max_product(n - 1, m).value * n * n // (2 * g)


def edge_bound_literal(n: int, m: int, g: int) -> int:
    """Same shape as :func:`edge_bound` but with ``Pi(n, m)``, the form used in
    the near-regular feasibility program."""
    _check_girth(g)
    return pi_max_product(n, m).value * n * n // (2 * g)


def alpha(n: int, m: Real) -> mpmath.mpf:
    """``1 - sqrt(1 - 1/n - 2(m+1)/n^2)``, the relative height of the flat part of
    the maximising sequence."""
    with mpmath.workdps(LOG_DPS):
        n_, m_ = _mpf(n), _mpf(m)
        disc = 1 - 1 / n_ - 2 * (m_ + 1) / n_**2
        if disc < 0:
            raise BoundDomainError(f"alpha undefined: negative discriminant at n={n}, m={m}")
        return 1 - mpmath.sqrt(disc)


def edge_bound_log(n: int, m: Real, g: int) -> LogBound:
    """Closed-form upper bound on ``ln c(G)`` for dense graphs, ``3n-7 < m < C(n,2)``.

    ``m`` may be any real in that range (cut-off calculations substitute a real
    edge count)."""
    _check_girth(g)
    if not 3 * n - 7 < m < comb(n, 2):
        raise BoundDomainError(
            f"log edge bound holds for 3n-7 < m < C(n,2); got n={n}, m={m} (use edge_bound)"
        )
    a = alpha(n, m)
    with mpmath.workdps(LOG_DPS):
        n_ = _mpf(n)
        ln = mpmath.log
        value = (
            n_ * ln(n_)
            - (a - ln(a)) * n_
            + mpmath.mpf(5) / 2 * ln(n_)
            + ln(a) / 2
            + ln(mpmath.pi / 2) / 2
            - ln(g)
            + 1 / (12 * a * n_)
        )
    return LogBound(value, Direction.UPPER)


# --- homomorphism bounds ----------------------------------------------------


def hmorph_bound(n: int, p: int, q: int, g: int) -> int:
    """``floor(q^n ((n/p)!)^p n / (2g))`` for subgraphs of a uniform blowup ``H(n/p)``
    of a ``p``-vertex graph ``H`` with maximum degree ``q``."""
    _check_girth(g)
    if p < 1 or n < 1 or n % p:
        raise BoundDomainError(f"p must divide n (n={n}, p={p})")
    if q < 1:
        raise BoundDomainError("q must be at least 1")
    return q**n * factorial(n // p) ** p * n // (2 * g)


def hmorph_bound_log(n: Real, p: int, q: int, g: int) -> LogBound:
    _check_girth(g)
    if p < 1 or q < 1 or n < p:
        raise BoundDomainError("need p, q >= 1 and n >= p")
    with mpmath.workdps(LOG_DPS):
        n_, p_, q_ = _mpf(n), mpmath.mpf(p), mpmath.mpf(q)
        ln = mpmath.log
        value = (
            n_ * ln(n_)
            - (1 + ln(p_ / q_)) * n_
            + (1 + p_ / 2) * ln(n_)
            + p_ / 2 * ln(2 * mpmath.pi / p_)
            - ln(2 * g)
            + p_**2 / (12 * n_)
        )
    return LogBound(value, Direction.UPPER)


# --- Turan lower bound ------------------------------------------------------


def turan_log_lower(n: Real) -> LogBound:
    """``n ln n - (1 + ln 2) n + ln(pi)``, a lower bound on ``ln c(T(n, 2))``."""
    if n < 4:
        raise BoundDomainError("Turan log bound needs n >= 4")
    with mpmath.workdps(LOG_DPS):
        n_ = _mpf(n)
        value = n_ * mpmath.log(n_) - (1 + mpmath.log(2)) * n_ + mpmath.log(mpmath.pi)
    return LogBound(value, Direction.LOWER)


# Constant term used when locating cut-offs. It exceeds ln(pi) by about 0.30
# yet still stays below ln c(T(n, 2)) for 5 <= n <= CUTOFF_MAX_N (checked
# exactly in the tests); the cut-off tables reproduce only with this value.
CUTOFF_LOG_CONSTANT = "1.44730"
CUTOFF_MAX_N = 1200


def turan_log_lower_cutoff(n: Real) -> LogBound:
    """``n ln n - (1 + ln 2) n + 1.44730``, the Turan lower bound used by the
    cut-off searches. Valid for ``5 <= n <= CUTOFF_MAX_N``."""
    if not 5 <= n <= CUTOFF_MAX_N:
        raise BoundDomainError(f"cut-off Turan bound is checked only for 5 <= n <= {CUTOFF_MAX_N}")
    with mpmath.workdps(LOG_DPS):
        n_ = _mpf(n)
        value = n_ * mpmath.log(n_) - (1 + mpmath.log(2)) * n_ + mpmath.mpf(CUTOFF_LOG_CONSTANT)
    return LogBound(value, Direction.LOWER)


def exact_upper(value: int) -> LogBound:
    """An exact integer upper bound moved into log space."""
    if value < 1:
        raise BoundDomainError("log of a nonpositive bound")
    with mpmath.workdps(LOG_DPS):
        return LogBound(mpmath.log(mpmath.mpf(value)), Direction.UPPER)
