"""Configuration knobs for a checking run.

Defaults give a fail-fast batch check with no extra output.
"""

from dataclasses import dataclass
from pathlib import Path


@dataclass(slots=True)
class CheckerConfig:
    """Tuneable parameters of the batch driver."""

    max_errors: int = 1                 # stop after this many failed declarations
    verbose: bool = False               # print kinds, peaks, full substitutions
    ps_tables: tuple[str, ...] = ()     # declarations whose dimension table is printed
    preludes: tuple[Path, ...] = ()     # files checked before the inputs
    log_level: str = "WARNING"

    def __post_init__(self) -> None:
        if self.max_errors < 1:
            raise ValueError("max_errors must be >= 1")
