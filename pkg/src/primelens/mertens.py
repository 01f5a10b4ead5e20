"""Coprimality-test entropy of prime encodings and the exact product error bound.

An integer z in [1, n] is prime iff it passes one coprimality test per prime
p <= sqrt(n). The exact pass probabilities multiply to the Euler-type product
prod_{p<=sqrt(n)} (1 - 1/p); the corrected variant adds the +1/n boundary term
per test. The absolute difference between the two products is computed
directly (never by the exponential subset expansion) and must satisfy the
closed-form bound 1/sqrt(n) + 1/n exactly, for every n.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, InvariantViolation
from .levelset import TestFamily
from .primes import PrimeEncoding

EULER_MASCHERONI = 0.5772156649
MERTENS_LIMIT_CONSTANT = 2.0 * math.exp(-EULER_MASCHERONI)  # ~1.122918


def _factor_primes(n: int, primes: PrimeEncoding) -> np.ndarray:
    """Primes p <= floor(sqrt(n)); the factor set of every product here.

    floor matches the fact that any composite <= n has a factor <= sqrt(n).
    """
    if n < 4:
        raise DomainError(f"n must be >= 4, got {n}")
    root = math.isqrt(n)
    if primes.limit < root:
        raise DomainError(
            f"prime table covers [1, {primes.limit}] but n={n} needs primes to {root}")
    return primes.primes_upto(root)


def mertens_product(n: int, primes: PrimeEncoding) -> float:
    """prod_{p <= floor(sqrt(n))} (1 - 1/p), accumulated in log domain."""
    ps = _factor_primes(n, primes).astype(np.float64)
    return math.exp(math.fsum(np.log1p(-1.0 / ps).tolist()))


def corrected_product(n: int, primes: PrimeEncoding) -> float:
    """prod_{p <= floor(sqrt(n))} (1 - 1/p + 1/n), accumulated in log domain."""
    ps = _factor_primes(n, primes).astype(np.float64)
    return math.exp(math.fsum(np.log1p(-1.0 / ps + 1.0 / n).tolist()))


@dataclass(frozen=True)
class MertensRecord:
    n: int
    product_exact: float      # prod (1 - 1/p)
    product_corrected: float  # prod (1 - 1/p + 1/n)
    abs_error: float          # corrected - exact, >= 0
    bound: float              # 1/sqrt(n) + 1/n
    entropy: float            # -ln product_exact
    loglog_ratio: float       # entropy / ln ln n
    mertens_scaled: float     # product_exact * ln n, tends to 2 e^{-gamma}


def error_record(n: int, primes: PrimeEncoding) -> MertensRecord:
    """Full record for one n, asserting the closed-form error bound.

    A bound violation raises InvariantViolation: the inequality is a theorem,
    so failure signals an implementation bug, not a data condition.
    """
    if n < 9:
        raise DomainError(f"error records need n >= 9, got {n}")
    exact = mertens_product(n, primes)
    corrected = corrected_product(n, primes)
    delta = corrected - exact
    bound = 1.0 / math.sqrt(n) + 1.0 / n
    if not 0.0 <= delta <= bound:
        raise InvariantViolation(
            f"absolute error {delta} outside [0, {bound}] at n={n}")
    ent = -math.log(exact)
    return MertensRecord(
        n=n,
        product_exact=exact,
        product_corrected=corrected,
        abs_error=delta,
        bound=bound,
        entropy=ent,
        loglog_ratio=ent / math.log(math.log(n)),
        mertens_scaled=exact * math.log(n),
    )


def entropy_vs_loglog(grid, primes: PrimeEncoding) -> list:
    """(n, entropy, ln ln n, ratio) per grid point; the ratio tends to 1."""
    out = []
    for n in grid:
        if n < 16:
            raise DomainError(f"grid points must be >= 16, got {n}")
        ent = -math.log(mertens_product(n, primes))
        lll = math.log(math.log(n))
        out.append((n, ent, lll, ent / lll))
    return out


def mertens_constant_check(grid, primes: PrimeEncoding) -> list:
    """(n, product_exact * ln n) per grid point, for comparison with 2e^{-gamma}."""
    out = []
    for n in grid:
        if n < 16:
            raise DomainError(f"grid points must be >= 16, got {n}")
        out.append((n, mertens_product(n, primes) * math.log(n)))
    return out


def coprimality_family(n: int, primes: PrimeEncoding, *, corrected: bool = False) -> TestFamily:
    """The coprimality test family over [1, n] with exact rational probabilities.

    Pass probability per prime p is (p-1)/p, or (p-1)/p + 1/n when corrected.
    """
    ps = _factor_primes(n, primes)
    tests = []
    for p in ps:
        p = int(p)
        prob = Fraction(p - 1, p)
        if corrected:
            prob += Fraction(1, n)
        tests.append((f"coprime-to-{p}", prob))
    return TestFamily(interval_limit=n, tests=tuple(tests))
