"""Tabulated coefficient maps and amplitude-damping output matrices.

Every map below is transcribed as a per-coefficient scale factor and is
used as-is, without reference to which Kraus application convention
produced it.  ``consistency.py`` checks each one against the oracles.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .channels import ChannelKind
from .core import BellCoeffs, TwoQubitDensity, bell_to_density
from .errors import ParamOutOfRange, UnsupportedCombination

UNDERFLOW = 1e-300


class Table(enum.Enum):
    """Families of tabulated maps.

    SINGLE covers the first-subsystem rows (n=1 and n-fold); the two
    bi-side tables take independent rates p (qubit A) and q (qubit B).
    """

    SINGLE = "single"
    BISIDE_SAME = "biside_same"
    BISIDE_DIFF = "biside_diff"


SINGLE_KINDS = (ChannelKind.BF, ChannelKind.PF, ChannelKind.BPF, ChannelKind.DEP, ChannelKind.GAD)
BISIDE_SAME_KINDS = ("PFPF", "BFBF", "BPFBPF")
BISIDE_DIFF_KINDS = ("BFPF", "BFBPF", "PFBPF")


@dataclass(frozen=True)
class MapFamily:
    table: Table
    kind: object
    n: int = 1

    def __post_init__(self):
        table = Table(self.table)
        object.__setattr__(self, "table", table)
        if table is Table.SINGLE:
            kind = ChannelKind.parse(self.kind)
            if kind not in SINGLE_KINDS:
                raise UnsupportedCombination(f"no tabulated single-side map for {kind.name}")
        else:
            kind = str(self.kind).upper().replace("-", "")
            allowed = BISIDE_SAME_KINDS if table is Table.BISIDE_SAME else BISIDE_DIFF_KINDS
            if kind not in allowed:
                raise UnsupportedCombination(f"no tabulated {table.value} map for {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 0:
            raise ValueError(f"n must be a non-negative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def label(self) -> str:
        name = self.kind.name if isinstance(self.kind, ChannelKind) else self.kind
        return f"{self.table.value}:{name}^{self.n}"


def T2(kind) -> MapFamily:
    return MapFamily(Table.SINGLE, kind, 1)


def T3(kind, n: int) -> MapFamily:
    return MapFamily(Table.SINGLE, kind, n)


def _pow(base: float, exp: float) -> float:
    v = base ** exp if exp else 1.0
    return 0.0 if abs(v) < UNDERFLOW else v


def _check_rate(name, v) -> float:
    v = float(v)
    if not 0.0 <= v <= 1.0:
        raise ParamOutOfRange(f"{name}={v} outside [0, 1]")
    return v


def scale_factors(family: MapFamily, p: float, q: float = 0.0) -> tuple[float, float, float]:
    """Multipliers (f1, f2, f3) such that c'_i = f_i * c_i."""
    p = _check_rate("p", p)
    q = _check_rate("q", q)
    n = family.n
    if family.table is Table.SINGLE:
        k = family.kind
        sq = _pow(1 - p, 2 * n)
        if k is ChannelKind.BF:
            return (1.0, sq, sq)
        if k is ChannelKind.PF:
            return (sq, sq, 1.0)
        if k is ChannelKind.BPF:
            return (sq, 1.0, sq)
        if k is ChannelKind.DEP:
            d = _pow(1 - 4 * p / 3, n)
            return (d, d, d)
        # GAD with mixing fixed at 1/2 and p standing in for gamma
        lin = _pow(1 - p, n)
        return (lin, lin, sq)
    a = _pow(1 - p, n)
    b = _pow(1 - q, n)
    ab = 0.0 if abs(a * b) < UNDERFLOW else a * b
    return {
        "PFPF": (ab, ab, 1.0),
        "BFBF": (1.0, ab, ab),
        "BPFBPF": (ab, 1.0, ab),
        "BFPF": (b, ab, a),
        "BFBPF": (b, a, ab),
        "PFBPF": (ab, a, b),
    }[family.kind]


def map_coeffs(family: MapFamily, c: BellCoeffs, p: float, q: float = 0.0) -> BellCoeffs:
    """Evolve Bell-diagonal coefficients through a tabulated map.

    The result is re-validated; an unphysical output signals a transcription
    error rather than something to clamp.
    """
    if not isinstance(c, BellCoeffs):
        c = BellCoeffs(*c)
    f1, f2, f3 = scale_factors(family, p, q)
    return BellCoeffs(f1 * c.c1, f2 * c.c2, f3 * c.c3)


def _adc_matrix(c: BellCoeffs, shrink: float) -> np.ndarray:
    """AD output on qubit A with population survival ``shrink`` (off-diagonals get its root)."""
    c1, c2, c3 = c.as_tuple()
    root = math.sqrt(shrink)
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 2 - (1 - c3) * shrink
    m[1, 1] = 2 - (1 + c3) * shrink
    m[2, 2] = (1 - c3) * shrink
    m[3, 3] = (1 + c3) * shrink
    m[0, 3] = m[3, 0] = (c1 - c2) * root
    m[1, 2] = m[2, 1] = (c1 + c2) * root
    return m / 4


def _coerce(c) -> BellCoeffs:
    return c if isinstance(c, BellCoeffs) else BellCoeffs(*c)


def _check_n(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    return int(n)


def adc_state(c: BellCoeffs, p: float) -> TwoQubitDensity:
    """Bell-diagonal state after one amplitude-damping step on qubit A."""
    return adc_state_n(c, p, 1)


def adc_state_n(c: BellCoeffs, p: float, n: int) -> TwoQubitDensity:
    """Amplitude damping applied ``n`` times to qubit A, via exact powers of (1-p)."""
    c = _coerce(c)
    p = _check_rate("p", p)
    n = _check_n(n)
    if n == 0:
        return bell_to_density(c)
    return TwoQubitDensity(_adc_matrix(c, _pow(1 - p, n)))


def adc_state_biside_n(c: BellCoeffs, p: float, n: int) -> TwoQubitDensity:
    """Amplitude damping applied ``n`` times to each of the two qubits."""
    c = _coerce(c)
    p = _check_rate("p", p)
    n = _check_n(n)
    if n == 0:
        return bell_to_density(c)
    c1, c2, c3 = c.as_tuple()
    s = _pow(1 - p, n)
    s2 = _pow(1 - p, 2 * n)
    x = 4 - 4 * s + (1 + c3) * s2
    y = 2 * s - (1 + c3) * s2
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0], m[1, 1], m[2, 2], m[3, 3] = x, y, y, (1 + c3) * s2
    m[0, 3] = m[3, 0] = (c1 - c2) * s
    m[1, 2] = m[2, 1] = (c1 + c2) * s
    return TwoQubitDensity(m / 4)
