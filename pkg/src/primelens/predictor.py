"""Finite-state next-bit prediction as an incompressibility test.

The model family is order-k table lookup: one predicted bit per observed
k-bit context. Majority vote per context is the exact empirical-risk
minimizer for this family, so there is no training approximation gap. A
sequence passes the incompressibility test when the balanced accuracy
min(acc_on_0s, acc_on_1s) of the trained table on the held-out second half
stays at or below chance.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import CapacityError, DomainError
from .primes import sieve
from .rng import uniform_stream


def _as_bit_array(seq) -> np.ndarray:
    arr = np.ascontiguousarray(seq, dtype=np.uint8)
    if arr.ndim != 1:
        raise DomainError("sequence must be one-dimensional")
    if arr.size and arr.max() > 1:
        raise DomainError("sequence must contain only 0/1 values")
    return arr


def _context_codes(seq: np.ndarray, k: int) -> np.ndarray:
    """Integer code of each k-bit window seq[i:i+k], most significant bit first."""
    windows = np.lib.stride_tricks.sliding_window_view(seq, k)
    powers = (1 << np.arange(k - 1, -1, -1)).astype(np.int64)
    return windows @ powers


@dataclass(frozen=True)
class ContextModel:
    """Order-k lookup predictor: per-context majority vote with a global fallback."""

    k: int
    counts: np.ndarray       # shape (2^k, 2): next-bit counts per context
    predictions: np.ndarray  # shape (2^k,): predicted bit per context
    fallback: int            # training-half majority class (ties -> 0)
    train_len: int
    train_accuracy: float

    def __post_init__(self):
        self.counts.flags.writeable = False
        self.predictions.flags.writeable = False

    @property
    def table(self) -> dict:
        """Observed contexts only, as {context code: predicted bit}."""
        seen = np.flatnonzero(self.counts.sum(axis=1))
        return {int(c): int(self.predictions[c]) for c in seen}

    def predict(self, contexts: np.ndarray) -> np.ndarray:
        return self.predictions[contexts]


def train(seq, k: int) -> ContextModel:
    """Exact ERM over order-k tables: majority next bit per observed context.

    Ties within a context, and contexts never observed, fall back to the
    training majority class (the Bayes-optimal context-free choice). Refuses
    with CapacityError when 2^k exceeds the training length; warns when the
    training half is shorter than 4 * 2^k (counts too thin to mean much).
    """
    seq = _as_bit_array(seq)
    if k < 1:
        raise DomainError(f"context order k must be >= 1, got {k}")
    if 2 ** k > len(seq):
        raise CapacityError(f"2^{k} contexts exceed training length {len(seq)}")
    if len(seq) < 4 * 2 ** k:
        warnings.warn(
            f"training length {len(seq)} < 4 * 2^{k}; per-context counts will be sparse",
            stacklevel=2)
    ones = int(seq.sum())
    majority = 1 if 2 * ones > len(seq) else 0
    codes = _context_codes(seq[:-1], k)
    targets = seq[k:].astype(np.int64)
    joint = np.bincount(codes * 2 + targets, minlength=2 ** (k + 1))
    counts = joint.reshape(-1, 2)
    predictions = np.where(
        counts[:, 1] > counts[:, 0], 1,
        np.where(counts[:, 1] < counts[:, 0], 0, majority)).astype(np.uint8)
    train_acc = float(np.mean(predictions[codes] == targets)) if len(targets) else 0.0
    return ContextModel(k=k, counts=counts, predictions=predictions,
                        fallback=majority, train_len=len(seq), train_accuracy=train_acc)


@dataclass(frozen=True)
class EvalReport:
    N: int               # length of the evaluated (test) half
    k: int
    raw_accuracy: float
    n0: int              # test targets of class 0
    n1: int              # test targets of class 1
    acc0: float
    acc1: float
    balanced: Optional[float]  # min(acc0, acc1); None when the test half is single-class
    single_class: bool = False


def evaluate(model: ContextModel, seq, split: int) -> EvalReport:
    """Score the model on seq[split:], using only contexts inside the test half.

    Targets are positions t in [split+k, len); the k-bit context of each lies
    entirely within the test half, so training and evaluation data stay
    disjoint. A single-class test half leaves the balanced score undefined
    (flagged); the raw accuracy is still reported.
    """
    seq = _as_bit_array(seq)
    k = model.k
    if not 0 < split < len(seq):
        raise DomainError(f"split {split} outside (0, {len(seq)})")
    test = seq[split:]
    if len(test) <= k:
        raise DomainError(f"test half of length {len(test)} too short for k={k}")
    codes = _context_codes(test[:-1], k)
    y = test[k:].astype(np.int64)
    y_hat = model.predict(codes).astype(np.int64)
    correct = y == y_hat
    n0 = int(np.count_nonzero(y == 0))
    n1 = int(np.count_nonzero(y == 1))
    raw = float(np.mean(correct))
    acc0 = float(np.mean(correct[y == 0])) if n0 else 0.0
    acc1 = float(np.mean(correct[y == 1])) if n1 else 0.0
    single = n0 == 0 or n1 == 0
    return EvalReport(N=len(test), k=k, raw_accuracy=raw, n0=n0, n1=n1,
                      acc0=acc0, acc1=acc1,
                      balanced=None if single else min(acc0, acc1),
                      single_class=single)


def train_and_evaluate(seq, k: int) -> tuple:
    """Split seq into halves, train on the first, evaluate on the second."""
    seq = _as_bit_array(seq)
    split = len(seq) // 2
    model = train(seq[:split], k)
    return model, evaluate(model, seq, split)


def compression_baseline(seq) -> tuple:
    """Incremental-parsing (LZ78) compressibility estimate.

    Parses the sequence into c distinct phrases (plus a possible trailing
    partial phrase) and estimates c * log2(c) bits; returns
    (phrase_count, compressed_bits_estimate, ratio_to_raw_length).
    """
    seq = _as_bit_array(seq)
    if len(seq) == 0:
        raise DomainError("empty sequence")
    trie = {}
    node = 0
    next_id = 1
    c = 0
    for bit in seq.tolist():
        key = (node, bit)
        child = trie.get(key)
        if child is None:
            trie[key] = next_id
            next_id += 1
            c += 1
            node = 0
        else:
            node = child
    if node:
        c += 1  # trailing phrase that matched an existing dictionary entry
    bits_estimate = c * math.log2(c) if c > 1 else 0.0
    return c, bits_estimate, bits_estimate / len(seq)


def prime_corpus(length: int) -> np.ndarray:
    """Prime encoding bits for k = 1..length (index pad dropped)."""
    return sieve(length).bits[1:].copy()


def periodic_corpus(length: int, period: int = 2) -> np.ndarray:
    pattern = np.arange(period) % 2
    return np.tile(pattern, length // period + 1)[:length].astype(np.uint8)


def block_corpus(length: int, block: int = 8) -> np.ndarray:
    """Alternating runs: `block` zeros, then `block` ones, repeated."""
    pattern = np.repeat([0, 1], block)
    return np.tile(pattern, length // (2 * block) + 1)[:length].astype(np.uint8)


def coin_corpus(length: int, seed: int) -> np.ndarray:
    return (uniform_stream(seed, 0, length) < 0.5).astype(np.uint8)


CONTROL_CORPORA = ("primes", "periodic", "blocks", "coin")


def control_suite(seed: int, *, length: int = 1 << 18, k_grid=tuple(range(1, 13))) -> list:
    """Evaluation matrix over the standard corpora and a k-grid.

    Returns (corpus, k, EvalReport) rows, deterministic for a given seed.
    """
    corpora = {
        "primes": prime_corpus(length),
        "periodic": periodic_corpus(length),
        "blocks": block_corpus(length),
        "coin": coin_corpus(length, seed),
    }
    rows = []
    for name in CONTROL_CORPORA:
        seq = corpora[name]
        for k in k_grid:
            _, report = train_and_evaluate(seq, k)
            rows.append((name, k, report))
    return rows
