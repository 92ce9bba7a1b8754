"""l1-norm and relative-entropy coherence in the computational basis."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import BellCoeffs, TwoQubitDensity, dephase, von_neumann_entropy
from .errors import EmptyInput

FROZEN_TOL = 1e-9
NEGATIVE_CLAMP = 1e-10


class Measure(enum.Enum):
    L1 = "l1"
    REL = "rel"

    @classmethod
    def parse(cls, name) -> "Measure":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower()
        aliases = {"l1": cls.L1, "rel": cls.REL, "relent": cls.REL, "relative": cls.REL}
        if key not in aliases:
            raise ValueError(f"unknown coherence measure {name!r}")
        return aliases[key]


def _clamp(v: float) -> float:
    return 0.0 if -NEGATIVE_CLAMP < v < 0.0 else v


def c_l1(rho: TwoQubitDensity) -> float:
    """Sum of moduli of all off-diagonal entries."""
    m = np.asarray(rho, dtype=complex)
    return float(np.sum(np.abs(m)) - np.sum(np.abs(np.diag(m))))


def c_l1_bell(c: BellCoeffs) -> float:
    c1, c2 = c.c1, c.c2
    return 0.5 * (abs(c1 + c2) + abs(c1 - c2))


def c_rel(rho: TwoQubitDensity) -> float:
    """S(dephased rho) - S(rho), in bits."""
    return _clamp(von_neumann_entropy(dephase(rho)) - von_neumann_entropy(rho))


def _xlog2x(x: float) -> float:
    # tiny negative arguments come from rounding in 1 +- c sums
    return x * math.log2(x) if x > 0 else 0.0


def c_rel_bell(c: BellCoeffs) -> float:
    """Relative-entropy coherence of a Bell-diagonal state straight from (c1, c2, c3)."""
    c1, c2, c3 = c.c1, c.c2, c.c3
    args = (1 - c1 - c2 - c3, 1 - c1 + c2 + c3, 1 + c1 - c2 + c3, 1 + c1 + c2 - c3)
    value = sum(_xlog2x(a) for a in args) / 4
    value -= (_xlog2x(1 + c3) + _xlog2x(1 - c3)) / 2
    return _clamp(value)


@dataclass(frozen=True)
class FrozenReport:
    is_frozen: bool
    max_deviation: float
    measure: Measure | None
    grid_size: int

    def __str__(self):
        name = self.measure.value if self.measure else "?"
        return (
            f"measure={name} grid_size={self.grid_size} "
            f"max_deviation={self.max_deviation:.3e} frozen={'yes' if self.is_frozen else 'no'}"
        )


def frozen_scan(values: Iterable, measure: Measure | None = None, tol: float = FROZEN_TOL) -> FrozenReport:
    """Decide whether a coherence curve stays constant.

    ``values`` holds either bare numbers or ``(grid_point, value)`` pairs.
    The deviation reported is max - min over the curve.
    """
    vals = []
    for v in values:
        if isinstance(v, (tuple, list)):
            v = v[-1]
        vals.append(float(v))
    if len(vals) < 2:
        raise EmptyInput(f"frozen_scan needs at least two samples, got {len(vals)}")
    dev = max(vals) - min(vals)
    return FrozenReport(dev <= tol, dev, Measure.parse(measure) if measure else None, len(vals))
