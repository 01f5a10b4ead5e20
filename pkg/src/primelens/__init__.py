"""primelens: level-set statistics of prime encodings.

Subpackages cover exact sieving and gap series (primes), rare-event test
families, entropy and simulation (levelset), Euler-product entropy with exact
error bounds (mertens), normalized gap-ratio scans (cramer), information-
theoretic PNT quantities (pnt), the order-k incompressibility test
(predictor), and CSV/JSON aggregation (report).
"""

__version__ = "0.1.0"

from . import cramer, levelset, mertens, pnt, predictor, primes, report  # noqa: F401
from .errors import (CapacityError, DomainError, InvariantViolation,  # noqa: F401
                     NumericError, PrimelensError)
