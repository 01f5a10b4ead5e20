"""Prime encodings, prime counts and gap series.

The domain model is 1-based: an encoding of [1, n] stores one bit per integer
k with bit(k) = 1 iff k is prime. Internally the bit array has length n+1 with
a permanent 0 at index 0 so that array index k is integer k; popcount is
unaffected and every formula stays directly transcribable.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._parallel import run_segments
from .errors import CapacityError, DomainError

# Flat sieve above this limit switches to segmented marking to bound the
# working set; both strategies fill the same output array bit for bit.
SEGMENT_THRESHOLD = 1 << 22
DEFAULT_LIMIT_CAP = 2_000_000_000  # bytes of bit storage == limit; desk-scale guard


class PrimeEncoding:
    """Exact binary encoding of primality over [1, limit]."""

    def __init__(self, bits: np.ndarray):
        if bits.dtype != np.uint8 or bits.ndim != 1 or len(bits) < 3:
            raise DomainError("bits must be a 1-d uint8 array of length >= 3")
        bits.flags.writeable = False
        self._bits = bits
        self._counts = None
        self._primes = None

    @property
    def limit(self) -> int:
        return len(self._bits) - 1

    @property
    def bits(self) -> np.ndarray:
        """Read-only uint8 array of length limit+1; bits[k] == 1 iff k is prime."""
        return self._bits

    @property
    def pi(self) -> int:
        """π(limit), the total number of primes in the encoding."""
        return int(np.count_nonzero(self._bits))

    @property
    def primes(self) -> np.ndarray:
        """Ascending int64 array of the primes <= limit."""
        if self._primes is None:
            self._primes = np.flatnonzero(self._bits).astype(np.int64)
        return self._primes

    def primes_upto(self, x: int) -> np.ndarray:
        """Primes p <= x, requiring x <= limit."""
        if x > self.limit:
            raise DomainError(f"prime table covers [1, {self.limit}], need {x}")
        ps = self.primes
        return ps[: int(np.searchsorted(ps, x, side="right"))]

    def bit(self, k: int) -> int:
        if not 1 <= k <= self.limit:
            raise DomainError(f"index {k} outside [1, {self.limit}]")
        return int(self._bits[k])

    def prime_count(self, n: int) -> int:
        """π(n) for 1 <= n <= limit."""
        if not 1 <= n <= self.limit:
            raise DomainError(f"n={n} outside [1, {self.limit}]")
        if self.limit <= 10_000_000:
            if self._counts is None:
                self._counts = np.cumsum(self._bits, dtype=np.int64)
            return int(self._counts[n])
        return int(np.count_nonzero(self._bits[: n + 1]))

    def __repr__(self):
        return f"PrimeEncoding(limit={self.limit}, pi={self.pi})"


def _sieve_flat(limit: int) -> np.ndarray:
    bits = np.ones(limit + 1, dtype=np.uint8)
    bits[:2] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if bits[p]:
            bits[p * p :: p] = 0
    return bits


def _sieve_segmented(limit: int, segment: int) -> np.ndarray:
    root = math.isqrt(limit)
    base = _sieve_flat(root)
    base_primes = [int(p) for p in np.flatnonzero(base)]
    bits = np.empty(limit + 1, dtype=np.uint8)
    bits[: root + 1] = base

    spans = [(lo, min(lo + segment, limit + 1)) for lo in range(root + 1, limit + 1, segment)]

    def fill(span):
        lo, hi = span
        seg = np.ones(hi - lo, dtype=np.uint8)
        for p in base_primes:
            start = ((lo + p - 1) // p) * p  # first multiple >= lo; lo > root >= p
            if start < hi:
                seg[start - lo :: p] = 0
        bits[lo:hi] = seg

    run_segments(fill, spans)
    return bits


def sieve(limit: int, *, method: str = "auto", segment: int = SEGMENT_THRESHOLD,
          limit_cap: int = DEFAULT_LIMIT_CAP) -> PrimeEncoding:
    """Sieve of Eratosthenes over [1, limit].

    Parameters
    ----------
    limit : int
        Upper end of the interval, >= 2.
    method : {"auto", "flat", "segmented"}
        "auto" uses a flat sieve up to SEGMENT_THRESHOLD and segmented marking
        above it. The two strategies are independent implementations and
        produce bit-identical encodings.
    segment : int
        Segment length for the segmented strategy.
    limit_cap : int
        Capacity guard; limits beyond it raise CapacityError instead of
        attempting an allocation that will not fit desk-scale RAM.
    """
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    if limit > limit_cap:
        raise CapacityError(f"limit {limit} exceeds configured cap {limit_cap}")
    if method == "auto":
        method = "flat" if limit <= SEGMENT_THRESHOLD else "segmented"
    if method == "flat":
        bits = _sieve_flat(limit)
    elif method == "segmented":
        if segment < 2:
            raise DomainError("segment must be >= 2")
        if limit <= math.isqrt(limit) + 1:
            bits = _sieve_flat(limit)
        else:
            bits = _sieve_segmented(limit, segment)
    else:
        raise DomainError(f"unknown sieve method {method!r}")
    return PrimeEncoding(bits)


def prime_count(enc: PrimeEncoding, n: int) -> int:
    """π(n) from an encoding covering n."""
    return enc.prime_count(n)


@dataclass(frozen=True)
class GapSeries:
    """Consecutive prime gaps G_n = p_{n+1} - p_n, columnar, 1-based index."""

    index: np.ndarray   # n = 1..count
    p: np.ndarray       # p_n
    p_next: np.ndarray  # p_{n+1}
    gap: np.ndarray     # G_n

    def __post_init__(self):
        for a in (self.index, self.p, self.p_next, self.gap):
            a.flags.writeable = False

    def __len__(self) -> int:
        return len(self.index)

    def __iter__(self):
        for i in range(len(self.index)):
            yield (int(self.index[i]), int(self.p[i]), int(self.p_next[i]), int(self.gap[i]))


def gaps(enc: PrimeEncoding) -> GapSeries:
    """All consecutive prime-pair gaps within the encoding, ordered by n."""
    ps = enc.primes
    if len(ps) < 2:
        raise DomainError("need at least two primes to form a gap")
    return GapSeries(
        index=np.arange(1, len(ps), dtype=np.int64),
        p=ps[:-1].copy(),
        p_next=ps[1:].copy(),
        gap=(ps[1:] - ps[:-1]),
    )
