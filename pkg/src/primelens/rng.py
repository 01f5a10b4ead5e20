"""Counter-based randomness (Philox) with exact skip-ahead.

Draw number i of the stream for a given seed is the same no matter how the
stream is sliced into ranges, which makes per-index draws order-independent:
a worker handling indices [a, b) reproduces exactly the values a single pass
would have produced there. Philox advances its counter in blocks of four
64-bit words (= four doubles), so offsets are aligned down to a block
boundary and the surplus draws discarded.
"""

import numpy as np
from numpy.random import Generator, Philox

from .errors import DomainError

_BLOCK = 4  # doubles per Philox counter increment

MAX_SEED = 2**64 - 1


def check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)):
        raise DomainError(f"seed must be an integer, got {type(seed).__name__}")
    seed = int(seed)
    if not 0 <= seed <= MAX_SEED:
        raise DomainError(f"seed must be in [0, 2^64), got {seed}")
    return seed


def uniform_stream(seed: int, offset: int, count: int) -> np.ndarray:
    """Return draws [offset, offset+count) of the uniform(0,1) stream for seed."""
    seed = check_seed(seed)
    if offset < 0 or count < 0:
        raise DomainError("offset and count must be nonnegative")
    if count == 0:
        return np.empty(0, dtype=np.float64)
    aligned = offset - (offset % _BLOCK)
    bg = Philox(key=seed)
    if aligned:
        bg.advance(aligned // _BLOCK)
    vals = Generator(bg).random(count + (offset - aligned))
    return vals[offset - aligned:]
