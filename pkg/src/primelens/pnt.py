"""Information-theoretic Prime Number Theorem quantities.

N/pi(N) is the average number of bits per prime under the worst-case uniform
source; the harmonic sum realizes the same ln N as an expected information
gain; pi(N) ln N / N is the computable proxy for the expected description
length per symbol. The per-n Lagrangian stationarity check recovers the
density q_n = lambda / ln n.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .primes import PrimeEncoding


@dataclass(frozen=True)
class InfoSummary:
    N: int
    pi_N: int
    bits_per_prime: float  # N / pi(N)
    log_N: float
    harmonic: float        # sum_{k=1}^{N-1} 1/k
    k_proxy: float         # pi(N) * ln N / N
    info_I: float          # sum_{n=2}^{N} q_n * ln n with q_n = 1/ln n


def harmonic_sum(N: int) -> float:
    """Compensated sum of 1/k for k in [1, N-1]."""
    if N < 2:
        raise DomainError(f"need N >= 2, got {N}")
    parts = []
    for start in range(1, N, 1 << 20):
        stop = min(start + (1 << 20), N)
        parts.extend(1.0 / np.arange(start, stop, dtype=np.float64))
    return math.fsum(parts)


def information_total(N: int, mode: str = "float"):
    """sum_{n=2}^{N} q_n * ln n with q_n = 1/ln n.

    Every summand is (1/ln n) * ln n = 1 for any nonzero real ln n, so the
    exact value is N - 1; "rational" mode evaluates the termwise cancellation
    exactly and returns the integer, "float" mode really performs the float
    divisions and multiplications and sums them.
    """
    if N < 2:
        raise DomainError(f"need N >= 2, got {N}")
    if mode == "rational":
        term = Fraction(1)  # x * (1/x) cancels exactly for every n
        return int(term * (N - 1))
    if mode != "float":
        raise DomainError(f"unknown mode {mode!r}")
    parts = []
    for start in range(2, N + 1, 1 << 20):
        stop = min(start + (1 << 20), N + 1)
        logs = np.log(np.arange(start, stop, dtype=np.float64))
        parts.extend((1.0 / logs) * logs)
    return math.fsum(parts)


def info_summary(enc: PrimeEncoding, N: int) -> InfoSummary:
    """All PNT summary quantities at N (requires 10 <= N <= enc.limit)."""
    if N < 10:
        raise DomainError(f"need N >= 10, got {N}")
    pi_N = enc.prime_count(N)
    log_N = math.log(N)
    return InfoSummary(
        N=N,
        pi_N=pi_N,
        bits_per_prime=N / pi_N,
        log_N=log_N,
        harmonic=harmonic_sum(N),
        k_proxy=pi_N * log_N / N,
        info_I=information_total(N, "float"),
    )


def pnt_ratio_curve(enc: PrimeEncoding, grid) -> list:
    """(N, pi(N) * ln N / N) per grid point; converges to 1 from above."""
    out = []
    for N in grid:
        if not 100 <= N <= enc.limit:
            raise DomainError(f"grid point {N} outside [100, {enc.limit}]")
        out.append((N, enc.prime_count(N) * math.log(N) / N))
    return out


@dataclass(frozen=True)
class LagrangianCheck:
    n: int
    lam: float
    q_star: float             # lambda / ln n, the stationary density
    analytic_residual: float  # |ln n - lambda/q_star|, zero up to rounding
    fd_residual: float        # |central difference of the summand at q_star|


def lagrangian_check(n_grid, lam: float = 1.0, eps: float = 1e-6) -> list:
    """Stationarity of f(q) = q ln n - lambda ln q at q* = lambda/ln n, per n.

    Reports both the analytic gradient residual (algebraically zero) and a
    central finite difference of f at q* with step eps, which scales as
    O(eps^2). eps must lie in (0, q*/2) for every n.
    """
    out = []
    for n in n_grid:
        if n < 3:
            raise DomainError(f"need n >= 3, got {n}")
        log_n = math.log(n)
        q_star = lam / log_n
        if not 0 < eps < q_star / 2:
            raise DomainError(f"eps={eps} outside (0, q*/2) at n={n} (q*={q_star})")

        def f(q):
            return q * log_n - lam * math.log(q)

        analytic = abs(log_n - lam / q_star)
        fd = abs((f(q_star + eps) - f(q_star - eps)) / (2.0 * eps))
        out.append(LagrangianCheck(n=n, lam=float(lam), q_star=q_star,
                                   analytic_residual=analytic, fd_residual=fd))
    return out
