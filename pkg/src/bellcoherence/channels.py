"""Single-qubit Kraus channels and brute-force application to two-qubit states.

These engines make no use of the Bell-diagonal structure; they are the
ground truth that every closed-form coefficient map is checked against.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import I2, SIGMA_X, SIGMA_Y, SIGMA_Z, TwoQubitDensity, kron
from .errors import IterationCapExceeded, ParamOutOfRange

ITERATION_CAP = 10_000
COMPLETENESS_TOL = 1e-12


class ChannelKind(enum.Enum):
    BF = "bf"
    PF = "pf"
    BPF = "bpf"
    DEP = "dep"
    GAD = "gad"
    AD = "ad"
    ID = "id"

    @classmethod
    def parse(cls, name) -> "ChannelKind":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            raise ValueError(f"unknown channel {name!r}") from None


class Side(enum.Enum):
    FIRST = "A"
    SECOND = "B"


def completeness_defect(ops) -> float:
    """Max-norm of sum_k E_k^H E_k - I."""
    if isinstance(ops, KrausSet):
        ops = ops.ops
    total = sum(np.asarray(e).conj().T @ np.asarray(e) for e in ops)
    return float(np.max(np.abs(total - I2)))


@dataclass(frozen=True, eq=False)
class KrausSet:
    ops: tuple

    def __post_init__(self):
        ops = []
        for e in self.ops:
            e = np.array(e, dtype=complex)
            if e.shape != (2, 2):
                raise ValueError(f"Kraus operators must be 2x2, got {e.shape}")
            e.flags.writeable = False
            ops.append(e)
        if not 1 <= len(ops) <= 4:
            raise ValueError(f"expected 1 to 4 Kraus operators, got {len(ops)}")
        object.__setattr__(self, "ops", tuple(ops))
        defect = completeness_defect(ops)
        if defect > COMPLETENESS_TOL:
            raise ValueError(f"Kraus operators are not trace preserving (defect {defect:.3e})")

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)


def _check_prob(name: str, value: float) -> float:
    value = float(value)
    if not (0.0 <= value <= 1.0):
        raise ParamOutOfRange(f"{name}={value} outside [0, 1]")
    return value


def kraus_set(kind, p: float = 0.0, gamma: float = 0.0) -> KrausSet:
    """Kraus operators of a named qubit channel.

    Parameters
    ----------
    kind : ChannelKind or str
    p : float
        Decoherence probability.  For GAD this is the mixing weight between
        damping toward |0> and toward |1>.
    gamma : float
        Damping strength, used only by GAD.
    """
    kind = ChannelKind.parse(kind)
    p = _check_prob("p", p)
    gamma = _check_prob("gamma", gamma)
    if kind is ChannelKind.ID:
        return KrausSet((I2,))
    if kind in (ChannelKind.BF, ChannelKind.PF, ChannelKind.BPF):
        sigma = {ChannelKind.BF: SIGMA_X, ChannelKind.PF: SIGMA_Z, ChannelKind.BPF: SIGMA_Y}[kind]
        return KrausSet((math.sqrt(1 - p / 2) * I2, math.sqrt(p / 2) * sigma))
    if kind is ChannelKind.DEP:
        w = math.sqrt(p / 3)
        return KrausSet((math.sqrt(1 - p) * I2, w * SIGMA_X, w * SIGMA_Y, w * SIGMA_Z))
    if kind is ChannelKind.AD:
        return KrausSet((
            np.array([[1, 0], [0, math.sqrt(1 - p)]]),
            np.array([[0, math.sqrt(p)], [0, 0]]),
        ))
    # GAD
    sg, sd = math.sqrt(gamma), math.sqrt(1 - gamma)
    return KrausSet((
        math.sqrt(p) * np.array([[1, 0], [0, sd]]),
        math.sqrt(p) * np.array([[0, sg], [0, 0]]),
        math.sqrt(1 - p) * np.array([[sd, 0], [0, 1]]),
        math.sqrt(1 - p) * np.array([[0, 0], [sg, 0]]),
    ))


def lift(e: np.ndarray, side: Side) -> np.ndarray:
    return kron(e, I2) if side is Side.FIRST else kron(I2, e)


def kraus_sum(m: np.ndarray, ops4) -> np.ndarray:
    out = np.zeros((4, 4), dtype=complex)
    for e in ops4:
        out += e @ m @ e.conj().T
    return out


def _one_side_raw(m: np.ndarray, k: KrausSet, side: Side) -> np.ndarray:
    return kraus_sum(m, [lift(e, side) for e in k.ops])


def _both_raw(m: np.ndarray, ka: KrausSet, kb: KrausSet) -> np.ndarray:
    return kraus_sum(m, [kron(e, f) for e in ka.ops for f in kb.ops])


def apply_one_side(rho: TwoQubitDensity, k: KrausSet, side: Side = Side.FIRST) -> TwoQubitDensity:
    """sum_k (E_k x I) rho (E_k x I)^H, or with I x E_k for the second qubit."""
    return TwoQubitDensity(_one_side_raw(np.asarray(rho), k, Side(side)))


def apply_both(rho: TwoQubitDensity, ka: KrausSet, kb: KrausSet) -> TwoQubitDensity:
    """Double Kraus sum over E_i x F_j: channel ``ka`` on qubit A and ``kb`` on qubit B."""
    return TwoQubitDensity(_both_raw(np.asarray(rho), ka, kb))


def _check_reps(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ValueError(f"repetition count must be a non-negative integer, got {n!r}")
    if n > ITERATION_CAP:
        raise IterationCapExceeded(f"n={n} exceeds the oracle iteration cap of {ITERATION_CAP}")
    return int(n)


def apply_n(rho: TwoQubitDensity, k: KrausSet, side: Side = Side.FIRST, n: int = 1) -> TwoQubitDensity:
    """Apply a one-sided channel ``n`` times in succession (n=0 is the identity)."""
    n = _check_reps(n)
    side = Side(side)
    ops4 = [lift(e, side) for e in k.ops]
    m = np.asarray(rho, dtype=complex)
    for _ in range(n):
        m = kraus_sum(m, ops4)
    return TwoQubitDensity(m)


def apply_both_n(rho: TwoQubitDensity, ka: KrausSet, kb: KrausSet, n: int = 1) -> TwoQubitDensity:
    """Iterate :func:`apply_both` ``n`` times."""
    n = _check_reps(n)
    ops4 = [kron(e, f) for e in ka.ops for f in kb.ops]
    m = np.asarray(rho, dtype=complex)
    for _ in range(n):
        m = kraus_sum(m, ops4)
    return TwoQubitDensity(m)


def apply_sequence(rho: TwoQubitDensity, steps: Sequence[tuple[KrausSet, Side, int]]) -> TwoQubitDensity:
    """Apply several one-sided channels in order, validating only the final state."""
    m = np.asarray(rho, dtype=complex)
    for k, side, n in steps:
        ops4 = [lift(e, Side(side)) for e in k.ops]
        for _ in range(_check_reps(n)):
            m = kraus_sum(m, ops4)
    return TwoQubitDensity(m)
