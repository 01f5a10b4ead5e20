"""Gap-ratio statistics and halting-probability models for prime gaps.

Each consecutive prime pair contributes a record with the normalized gap
G_n / (ln p_n)^2; the empirical supremum of that ratio is the headline
statistic. Per-offset halting probabilities are not observable from a single
encoding (each gap realizes exactly one offset), so gap entropies are computed
under explicit models instead of pretended estimates.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .primes import PrimeEncoding, gaps

DEFAULT_MIN_PRIME = 5  # ln p < 1.3 below this inflates the ratio; filter is reported, never silent

_MODEL_ALIASES = {
    "uniform": "uniform",
    "point": "point_mass",
    "point_mass": "point_mass",
    "product": "independence_product",
    "independence_product": "independence_product",
}


@dataclass(frozen=True)
class GapRecord:
    n: int
    p: int
    p_next: int
    gap: int
    log_p: float
    cramer_ratio: float    # G_n / (ln p_n)^2
    halting_lower: float   # 1 / (ln p_n)^2
    mean_halting: float    # 1 / G_n


@dataclass(frozen=True)
class CramerScan:
    """All gap records plus the filtered headline statistic."""

    records: tuple
    min_prime: int
    max_ratio: float
    argmax_prime: int
    argmax_index: int

    def __len__(self):
        return len(self.records)


def scan(enc: PrimeEncoding, *, min_prime: int = DEFAULT_MIN_PRIME) -> CramerScan:
    """One record per consecutive prime pair; summary over p_n >= min_prime.

    The reduction is deterministic: ties on the ratio resolve to the smallest
    prime, independent of any parallel evaluation order.
    """
    if enc.limit < 5:
        raise DomainError("need limit >= 5 for a meaningful scan")
    series = gaps(enc)
    logs = np.log(series.p.astype(np.float64))
    sq = logs * logs
    ratios = series.gap / sq
    records = tuple(
        GapRecord(
            n=int(series.index[i]),
            p=int(series.p[i]),
            p_next=int(series.p_next[i]),
            gap=int(series.gap[i]),
            log_p=float(logs[i]),
            cramer_ratio=float(ratios[i]),
            halting_lower=float(1.0 / sq[i]),
            mean_halting=float(1.0 / series.gap[i]),
        )
        for i in range(len(series))
    )
    mask = series.p >= min_prime
    if not mask.any():
        raise DomainError(f"no primes >= min_prime={min_prime} in the scan")
    sel = np.flatnonzero(mask)
    best = sel[int(np.argmax(ratios[sel]))]  # argmax returns the first (smallest prime) tie
    return CramerScan(
        records=records,
        min_prime=min_prime,
        max_ratio=float(ratios[best]),
        argmax_prime=int(series.p[best]),
        argmax_index=int(series.index[best]),
    )


@dataclass(frozen=True)
class HaltingEntry:
    n: int
    halting_lower: float
    mean_halting: float
    satisfied: bool


@dataclass(frozen=True)
class HaltingReport:
    entries: tuple
    slack: float           # the constant C the check was run with
    required_slack: float  # smallest C that would satisfy every record

    @property
    def all_satisfied(self) -> bool:
        return all(e.satisfied for e in self.entries)


def halting_bound_report(records, slack: float = 1.0) -> HaltingReport:
    """Check 1/(ln p_n)^2 <= C * (1/G_n) per record with the constant reported.

    The asymptotic bound hides a constant; `slack` makes it explicit and
    `required_slack` reports the smallest constant that covers every record.
    """
    records = tuple(records)
    if not records:
        raise DomainError("no records to report on")
    if slack <= 0:
        raise DomainError("slack constant must be positive")
    entries = tuple(
        HaltingEntry(
            n=r.n,
            halting_lower=r.halting_lower,
            mean_halting=r.mean_halting,
            satisfied=r.halting_lower <= slack * r.mean_halting,
        )
        for r in records
    )
    required = max(r.halting_lower / r.mean_halting for r in records)
    return HaltingReport(entries=entries, slack=float(slack), required_slack=float(required))


@dataclass(frozen=True)
class GapEntropy:
    n: int
    model: str
    distribution: np.ndarray  # probability over offsets k = 1..G_n
    entropy: float            # nats, in [0, ln G_n]

    def __post_init__(self):
        self.distribution.flags.writeable = False


def gap_entropy(record: GapRecord, model: str, k: Optional[int] = None) -> GapEntropy:
    """Entropy of the halting distribution over offsets [1, G_n] under a model.

    uniform: 1/G_n per offset, the maximum-entropy case (H = ln G_n).
    point_mass: all mass on offset k (default: the realized gap), H = 0 --
    the collapse that occurs once both pair members are known.
    independence_product: each offset weighted by the product lower bound
    1/(ln p_n)^2, then normalized; constant weights make this uniform.
    """
    name = _MODEL_ALIASES.get(model)
    if name is None:
        raise DomainError(f"unknown gap-entropy model {model!r}")
    g = record.gap
    if g < 1:
        raise DomainError("gap must be >= 1")
    if name == "uniform":
        dist = np.full(g, 1.0 / g)
    elif name == "point_mass":
        if k is None:
            k = g
        if not 1 <= k <= g:
            raise DomainError(f"point mass offset {k} outside [1, {g}]")
        dist = np.zeros(g)
        dist[k - 1] = 1.0
    else:
        weights = np.full(g, record.halting_lower)
        dist = weights / weights.sum()
    nz = dist[dist > 0]
    h = float(-np.sum(nz * np.log(nz)))
    return GapEntropy(n=record.n, model=name, distribution=dist, entropy=max(h, 0.0))
