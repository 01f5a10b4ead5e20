"""Rare-event level sets: test families, entropy, classification and simulation.

A rare-event class over [1, n] is modeled by a family of independent tests;
the entropy of the induced encoding is the negative log of the product of the
test probabilities, always accumulated in log domain (products of thousands of
near-1 factors underflow in naive arithmetic). The typical probability
q_n = exp(-H) and the entropy rate exp(H) classify sequences into level sets;
sequences with the same entropy growth share a level set.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, Union

import numpy as np
from scipy.integrate import quad

from ._parallel import run_segments
from .errors import DomainError, NumericError
from .primes import PrimeEncoding
from .rng import check_seed, uniform_stream

Probability = Union[Fraction, float]

SIMULATE_CHUNK = 1 << 20  # doubles per RNG slice; must stay a multiple of 4


@dataclass(frozen=True)
class TestFamily:
    """Independent membership tests with their pass probabilities.

    Probabilities may be exact rationals (preferred where available) or
    floats; either way they must lie in (0, 1].
    """

    __test__ = False  # not a pytest class, despite the name

    interval_limit: int
    tests: Tuple[Tuple[str, Probability], ...]

    def __len__(self) -> int:
        return len(self.tests)


@dataclass(frozen=True)
class LevelSetProfile:
    n: int
    entropy: float              # nats
    typical_probability: float  # q_n = exp(-entropy)
    entropy_rate: float         # exp(entropy), expected waiting time between events


@dataclass(frozen=True)
class SimulatedSequence:
    """Independent-draw rare-event sequence with density (ln n)^-a."""

    bits: np.ndarray  # uint8, length N+1, index 0 is padding; bits[1]=bits[2]=0
    a: float
    seed: int
    event_count: int

    @property
    def limit(self) -> int:
        return len(self.bits) - 1


def _log_probability(p: Probability) -> float:
    """ln p with care near 1 so per-term error stays at ulp scale."""
    if isinstance(p, Fraction):
        if p <= 0 or p > 1:
            raise DomainError(f"test probability {p} outside (0, 1]")
        num, den = p.numerator, p.denominator
        return math.log1p((num - den) / den)
    p = float(p)
    if not 0.0 < p <= 1.0:
        raise DomainError(f"test probability {p} outside (0, 1]")
    if p > 0.5:
        return math.log1p(p - 1.0)
    return math.log(p)


def entropy(family: TestFamily) -> LevelSetProfile:
    """Entropy of the encoding induced by a test family.

    H = -sum(ln P(z in A_k)), computed as a compensated log-sum, never as a
    product of raw probabilities.
    """
    if len(family.tests) == 0:
        raise DomainError("empty test family")
    h = -math.fsum(_log_probability(p) for _, p in family.tests)
    return LevelSetProfile(
        n=family.interval_limit,
        entropy=h,
        typical_probability=math.exp(-h),
        entropy_rate=math.exp(h),
    )


def classify(profiles: Sequence[LevelSetProfile], a: float) -> list:
    """Level-set membership ratios -ln(q_ref)/H against the reference density
    q_n = (ln n)^-a; the ratio tends to 1 exactly on the matching level set.

    Profiles must be sorted by n with every n >= 3 (ln ln n must be positive).
    """
    if a <= 0:
        raise DomainError("density exponent a must be positive")
    ns = [p.n for p in profiles]
    if ns != sorted(ns):
        raise DomainError("profiles must be sorted by n")
    out = []
    for prof in profiles:
        if prof.n < 3:
            raise DomainError(f"n={prof.n} < 3: ln ln n undefined or nonpositive")
        if prof.entropy <= 0:
            raise DomainError(f"profile at n={prof.n} has nonpositive entropy")
        neg_log_qref = a * math.log(math.log(prof.n))
        out.append((prof.n, neg_log_qref / prof.entropy))
    return out


def _is_prime(k: int) -> bool:
    if k < 2:
        return False
    for d in range(2, math.isqrt(k) + 1):
        if k % d == 0:
            return False
    return True


def pairwise_independence_defect(n: int, p: int, q: int, *, include_self: bool = True) -> float:
    """|P(z in A_p and A_q) - P(z in A_p)P(z in A_q)| by exact counting on [1, n].

    A_p is the set of z in [1, n] coprime to p, together with p itself when
    include_self is True. With include_self=False and p*q | n the tests are
    exactly multiplicative and the defect is 0.
    """
    if p == q:
        raise DomainError("tests must be distinct (p != q)")
    if not (_is_prime(p) and _is_prime(q)):
        raise DomainError(f"p={p}, q={q} must both be prime")
    if p * q > n:
        raise DomainError(f"need p*q <= n, got {p}*{q} > {n}")
    z = np.arange(1, n + 1, dtype=np.int64)
    in_p = (z % p) != 0
    in_q = (z % q) != 0
    if include_self:
        in_p[p - 1] = True
        in_q[q - 1] = True
    c_p = int(np.count_nonzero(in_p))
    c_q = int(np.count_nonzero(in_q))
    c_pq = int(np.count_nonzero(in_p & in_q))
    defect = Fraction(c_pq, n) - Fraction(c_p, n) * Fraction(c_q, n)
    return abs(float(defect))


def simulate(a: float, N: int, seed: int, *, chunk: int = SIMULATE_CHUNK) -> SimulatedSequence:
    """Draw bits[n] ~ Bernoulli(min(1, (ln n)^-a)) independently for n in [3, N].

    bits[1] and bits[2] are fixed to 0 ((ln 1)^-a and (ln 2)^-a >= 1 are
    degenerate; the asymptotics ignore finitely many terms). Draw n uses
    position n-3 of the counter-based stream for `seed`, so the result is
    bit-reproducible and independent of chunking or evaluation order.
    """
    if a <= 0:
        raise DomainError(f"density exponent a must be positive, got {a}")
    if N < 3:
        raise DomainError(f"N must be >= 3, got {N}")
    seed = check_seed(seed)
    if chunk < 4 or chunk % 4:
        raise DomainError("chunk must be a positive multiple of 4")
    bits = np.zeros(N + 1, dtype=np.uint8)

    def fill(start):
        stop = min(start + chunk, N + 1)
        u = uniform_stream(seed, start - 3, stop - start)
        thresholds = np.minimum(1.0, np.log(np.arange(start, stop, dtype=np.float64)) ** -a)
        bits[start:stop] = u < thresholds

    run_segments(fill, range(3, N + 1, chunk))
    return SimulatedSequence(bits=bits, a=float(a), seed=seed,
                             event_count=int(np.count_nonzero(bits)))


def log_power_sum(a: float, lo: int, hi: int) -> float:
    """Compensated sum of (ln n)^-a for n in [lo, hi], lo >= 2."""
    if lo < 2 or hi < lo:
        raise DomainError("need 2 <= lo <= hi")
    total = []
    for start in range(lo, hi + 1, 1 << 20):
        stop = min(start + (1 << 20), hi + 1)
        ns = np.arange(start, stop, dtype=np.float64)
        total.extend(np.log(ns) ** -a)
    return math.fsum(total)


def density_sum_vs_integral(a: float, N: int):
    """Compare the integral of (ln x)^-a over [2, N] with the direct sum.

    Returns (integral, sum, ratio). The integral uses adaptive quadrature to
    relative tolerance 1e-9; the sum is accumulated with compensated summation.
    """
    if a <= 0:
        raise DomainError("density exponent a must be positive")
    if N < 3:
        raise DomainError(f"N must be >= 3, got {N}")
    result = quad(lambda x: math.log(x) ** -a, 2.0, float(N),
                  epsrel=1e-9, limit=500, full_output=True)
    if len(result) > 3:
        integral, abserr, info, message = result[:4]
        raise NumericError(f"quadrature did not converge: {message}",
                           integral=integral, abserr=abserr,
                           subintervals=info.get("last"))
    integral = result[0]
    total = log_power_sum(a, 2, N)
    return integral, total, total / integral


def average_probability(seq) -> float:
    """Empirical mean of the bit sequence (frequentist average probability).

    Accepts anything exposing the 1-based `bits` convention (PrimeEncoding,
    SimulatedSequence): index 0 is padding and excluded.
    """
    if isinstance(seq, (PrimeEncoding, SimulatedSequence)) or hasattr(seq, "bits"):
        bits = seq.bits
        n = len(bits) - 1
        if n < 1:
            raise DomainError("empty sequence")
        return float(np.count_nonzero(bits[1:])) / n
    arr = np.asarray(seq)
    if arr.size == 0:
        raise DomainError("empty sequence")
    return float(np.count_nonzero(arr)) / arr.size
