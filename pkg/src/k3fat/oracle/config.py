"""Configuration and result records for the finite-field oracle.

Oracle answers are Monte-Carlo certificates: points in "general position"
are modeled by uniform random sampling over a large prime field, so a
reported dimension can only err on the high side, with probability bounded
by the chance of an unlucky rank drop; agreement across trials and across
two primes makes that chance negligible at desk scale.  They are evidence,
not proofs.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from random import Random
from typing import Optional, Tuple

DEFAULT_PRIME = 2**31 - 1
DEFAULT_PRIME2 = 2**61 - 1
DEFAULT_TRIALS = 3
DEFAULT_BUDGET_ROWS = 20_000


class BudgetExceededError(RuntimeError):
    """The requested condition matrix exceeds the configured size budget."""


class SamplingError(RuntimeError):
    """Repeated resampling failed to produce a usable random instance."""


@dataclass(frozen=True)
class PrimeFieldConfig:
    """Prime, seed and trial count driving every oracle computation.

    prime2 is the cross-check prime; set it to None to disable dual-prime
    verification.  budget_rows caps both dimensions of any condition matrix
    so oversized requests fail fast instead of running for hours.
    """

    prime: int = DEFAULT_PRIME
    seed: int = 1
    trials: int = DEFAULT_TRIALS
    prime2: Optional[int] = DEFAULT_PRIME2
    budget_rows: int = DEFAULT_BUDGET_ROWS

    def __post_init__(self) -> None:
        if self.prime <= 2**30:
            raise ValueError(f"prime must exceed 2^30, got {self.prime}")
        if self.prime2 is not None and self.prime2 <= 2**30:
            raise ValueError(f"prime2 must exceed 2^30, got {self.prime2}")
        if self.prime2 == self.prime:
            raise ValueError("prime2 must differ from prime")
        if self.trials < 2:
            raise ValueError(f"trials must be >= 2, got {self.trials}")
        if self.budget_rows < 1:
            raise ValueError("budget_rows must be positive")


@dataclass(frozen=True)
class OracleMeasurement:
    """One measured dimension with its per-trial evidence."""

    dim: int
    trial_dims: Tuple[int, ...]
    low_confidence: bool
    prime: int
    rows: int
    cols: int


def derived_rng(seed: int, *tags) -> Random:
    """Deterministic child generator for a task, stable across platforms.

    The tag tuple is hashed with SHA-256, never with Python's randomized
    hash(), so identical seeds reproduce identical streams everywhere.
    """
    material = repr((seed,) + tags).encode()
    digest = hashlib.sha256(material).digest()
    return Random(int.from_bytes(digest[:16], "big"))
