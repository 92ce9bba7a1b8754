"""Parameter sweeps over (n, p, q) with either evaluation engine, and CSV output."""
from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .channels import ITERATION_CAP, ChannelKind, KrausSet, Side, kraus_set, kraus_sum, lift
from .closedform import (
    BISIDE_DIFF_KINDS,
    BISIDE_SAME_KINDS,
    SINGLE_KINDS,
    MapFamily,
    Table,
    adc_state_biside_n,
    adc_state_n,
    map_coeffs,
)
from .coherence import Measure, c_l1, c_l1_bell, c_rel, c_rel_bell
from .core import BellCoeffs, TwoQubitDensity, bell_matrix, density_to_bell, kron
from .errors import IterationCapExceeded, NotBellDiagonal, UnsupportedCombination
from .specparse import ChannelSpec, SideSpec, parse_channel_spec

CSV_HEADER = ("p", "q", "n", "c1", "c2", "c3", "C_l1", "C_r")
GAD_MIXING = 0.5


class Engine(enum.Enum):
    CLOSEDFORM = "closedform"
    ORACLE = "oracle"


class Convention(enum.Enum):
    """How the oracle applies each named local channel.

    ONE_SIDED: only to the qubit it is attached to.
    BOTH_SIDES_EQ4: as E_i x E_j on both qubits at once.
    """

    ONE_SIDED = "one_sided"
    BOTH_SIDES_EQ4 = "both_sides_eq4"


@dataclass(frozen=True)
class Grid:
    """Closed arithmetic grid ``start, start+step, ..., stop``."""

    start: float = 0.0
    stop: float = 1.0
    step: float = 0.01

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError(f"grid step must be positive, got {self.step}")
        if self.stop < self.start:
            raise ValueError(f"grid stop {self.stop} lies below start {self.start}")

    @classmethod
    def parse(cls, text: str) -> "Grid":
        parts = [s.strip() for s in text.split(":")]
        try:
            if len(parts) == 1:
                v = float(parts[0])
                return cls(v, v, 1.0)
            if len(parts) == 3:
                return cls(*(float(x) for x in parts))
        except ValueError:
            pass
        raise ValueError(f"grid must look like start:stop:step, got {text!r}")

    def values(self) -> tuple[float, ...]:
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return tuple(round(self.start + i * self.step, 12) for i in range(count))

    def __str__(self):
        return f"{self.start:g}:{self.stop:g}:{self.step:g}"


@dataclass(frozen=True)
class SweepConfig:
    state: BellCoeffs
    spec: ChannelSpec
    p_grid: Grid = field(default_factory=Grid)
    q_grid: Grid = field(default_factory=Grid)
    n_list: tuple[int, ...] = (1,)
    engine: Engine = Engine.CLOSEDFORM
    measures: tuple[Measure, ...] = (Measure.L1, Measure.REL)
    convention: Convention = Convention.ONE_SIDED
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.state, BellCoeffs):
            object.__setattr__(self, "state", BellCoeffs(*self.state))
        if isinstance(self.spec, str):
            object.__setattr__(self, "spec", parse_channel_spec(self.spec))
        object.__setattr__(self, "engine", Engine(self.engine))
        object.__setattr__(self, "convention", Convention(self.convention))
        object.__setattr__(self, "measures", tuple(Measure.parse(m) for m in self.measures))
        n_list = tuple(sorted({int(n) for n in self.n_list}))
        if not n_list or n_list[0] < 0:
            raise ValueError(f"n_list must hold non-negative integers, got {self.n_list}")
        object.__setattr__(self, "n_list", n_list)
        for g in (self.p_grid, self.q_grid):
            if g.start < 0 or g.stop > 1:
                raise ValueError(f"grid {g} leaves [0, 1]")
        if self.engine is Engine.ORACLE:
            reps = max(s.reps for s in (self.spec.a, self.spec.b) if s is not None)
            if reps * n_list[-1] > ITERATION_CAP:
                raise IterationCapExceeded(
                    f"oracle would iterate {reps * n_list[-1]} times (cap {ITERATION_CAP})"
                )
        else:
            closed_form_evaluator(self.spec)

    def p_values(self) -> tuple[float, ...]:
        return self.p_grid.values() if "p" in self.spec.variables() else (0.0,)

    def q_values(self) -> tuple[float, ...]:
        return self.q_grid.values() if "q" in self.spec.variables() else (0.0,)

    def expected_rows(self) -> int:
        return len(self.n_list) * len(self.p_values()) * len(self.q_values())


@dataclass(frozen=True)
class SampleRow:
    p: float
    q: float
    n: int
    c1: float | None = None
    c2: float | None = None
    c3: float | None = None
    C_l1: float | None = None
    C_r: float | None = None

    def coeffs(self) -> BellCoeffs | None:
        if self.c1 is None:
            return None
        return BellCoeffs(self.c1, self.c2, self.c3)


# -- closed-form dispatch ---------------------------------------------------

Evaluator = Callable[[BellCoeffs, float, float, int], "BellCoeffs | TwoQubitDensity"]


def _active(s: SideSpec | None) -> SideSpec | None:
    return None if s is None or s.kind is ChannelKind.ID else s


def closed_form_evaluator(spec: ChannelSpec) -> Evaluator:
    """Pick the tabulated map for a channel spec.

    Returns ``f(c, p, q, n)`` giving either evolved coefficients or, for
    amplitude damping, the output density matrix.  Raises
    :class:`UnsupportedCombination` for arrangements the tables do not cover.
    """
    a, b = _active(spec.a), _active(spec.b)
    if a is None and b is None:
        return lambda c, p, q, n: c
    if a is None:
        raise UnsupportedCombination(
            f"{spec}: tabulated single-side maps act on qubit A; use the oracle engine"
        )
    if b is None:
        if a.kind is ChannelKind.AD:
            return lambda c, p, q, n: adc_state_n(c, a.rate_value(p, q), a.reps * n)
        if a.kind in SINGLE_KINDS:
            return lambda c, p, q, n: map_coeffs(
                MapFamily(Table.SINGLE, a.kind, a.reps * n), c, a.rate_value(p, q)
            )
        raise UnsupportedCombination(f"{spec}: no tabulated map")  # pragma: no cover

    if a.reps != b.reps:
        raise UnsupportedCombination(f"{spec}: tables need equal repetition counts on both sides")
    if a.kind is ChannelKind.AD and b.kind is ChannelKind.AD:
        if a.rate != b.rate:
            raise UnsupportedCombination(f"{spec}: bi-side damping is tabulated for equal rates only")
        return lambda c, p, q, n: adc_state_biside_n(c, a.rate_value(p, q), a.reps * n)
    pair = a.kind.name + b.kind.name
    if pair in BISIDE_SAME_KINDS:
        table = Table.BISIDE_SAME
    elif pair in BISIDE_DIFF_KINDS:
        table = Table.BISIDE_DIFF
    else:
        raise UnsupportedCombination(f"{spec}: no tabulated map for the pair {a.kind.name}-{b.kind.name}")
    return lambda c, p, q, n: map_coeffs(
        MapFamily(table, pair, a.reps * n), c, a.rate_value(p, q), b.rate_value(p, q)
    )


# -- oracle ----------------------------------------------------------------

def side_kraus(s: SideSpec, p: float, q: float) -> KrausSet:
    """Kraus set for one side at grid point (p, q); GAD runs with mixing 1/2 and rate as gamma."""
    rate = s.rate_value(p, q)
    if s.kind is ChannelKind.GAD:
        return kraus_set(ChannelKind.GAD, p=GAD_MIXING, gamma=rate)
    return kraus_set(s.kind, p=rate)


def oracle_matrix(
    c: BellCoeffs,
    spec: ChannelSpec,
    p: float,
    q: float,
    n: int,
    convention: Convention = Convention.ONE_SIDED,
) -> np.ndarray:
    """Evolve the Bell-diagonal state of ``c`` by explicit Kraus sums, unvalidated.

    Side A's channel is applied ``reps * n`` times, then side B's.
    """
    convention = Convention(convention)
    m = bell_matrix(c)
    for side in (Side.FIRST, Side.SECOND):
        s = spec.side(side)
        if s is None or s.kind is ChannelKind.ID:
            continue
        k = side_kraus(s, p, q)
        if convention is Convention.ONE_SIDED:
            ops4 = [lift(e, side) for e in k.ops]
        else:
            ops4 = [kron(e, f) for e in k.ops for f in k.ops]
        for _ in range(s.reps * n):
            m = kraus_sum(m, ops4)
    return m


def oracle_state(c, spec, p, q, n, convention=Convention.ONE_SIDED) -> TwoQubitDensity:
    """:func:`oracle_matrix` wrapped in a validated density matrix."""
    return TwoQubitDensity(oracle_matrix(c, spec, p, q, n, convention))


# -- sweep -----------------------------------------------------------------

def _row_from_coeffs(c: BellCoeffs, p, q, n, measures) -> SampleRow:
    return SampleRow(
        p, q, n, c.c1, c.c2, c.c3,
        c_l1_bell(c) if Measure.L1 in measures else None,
        c_rel_bell(c) if Measure.REL in measures else None,
    )


def _row_from_state(rho: TwoQubitDensity, p, q, n, measures) -> SampleRow:
    try:
        c = density_to_bell(rho)
        coeffs = c.as_tuple()
    except NotBellDiagonal:
        coeffs = (None, None, None)
    return SampleRow(
        p, q, n, *coeffs,
        c_l1(rho) if Measure.L1 in measures else None,
        c_rel(rho) if Measure.REL in measures else None,
    )


def run_sweep(cfg: SweepConfig) -> list[SampleRow]:
    """Evaluate every (n, p, q) grid point, in lexicographic order."""
    rows = []
    evaluate = closed_form_evaluator(cfg.spec) if cfg.engine is Engine.CLOSEDFORM else None
    for n in cfg.n_list:
        for p in cfg.p_values():
            for q in cfg.q_values():
                if evaluate is not None:
                    out = evaluate(cfg.state, p, q, n)
                else:
                    out = oracle_state(cfg.state, cfg.spec, p, q, n, cfg.convention)
                if isinstance(out, BellCoeffs):
                    rows.append(_row_from_coeffs(out, p, q, n, cfg.measures))
                else:
                    rows.append(_row_from_state(out, p, q, n, cfg.measures))
    return rows


def measure_column(rows: Sequence[SampleRow], measure) -> list[float]:
    attr = "C_l1" if Measure.parse(measure) is Measure.L1 else "C_r"
    return [getattr(r, attr) for r in rows]


# -- CSV -------------------------------------------------------------------

def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    v = float(v)
    if v == 0.0:
        v = 0.0  # drop the sign of -0.0
    return format(v, ".12g")


def csv_metadata(cfg: SweepConfig) -> list[str]:
    c = cfg.state
    lines = [
        f"# tool: bellcoherence {__version__}",
        f"# state: {_fmt(c.c1)},{_fmt(c.c2)},{_fmt(c.c3)}",
        f"# spec: {cfg.spec.render()}",
        f"# engine: {cfg.engine.value}",
    ]
    if cfg.engine is Engine.ORACLE:
        lines.append(f"# convention: {cfg.convention.value}")
    lines.append(f"# measures: {','.join(m.value for m in cfg.measures)}")
    lines.append(f"# p_grid: {cfg.p_grid}  q_grid: {cfg.q_grid}  n: {','.join(map(str, cfg.n_list))}")
    if any(s is not None and s.kind is ChannelKind.GAD for s in (cfg.spec.a, cfg.spec.b)):
        lines.append("# axis: p (= gamma for GAD, mixing fixed at 1/2)")
    if cfg.name:
        lines.append(f"# figure: {cfg.name}")
    return lines


def emit_csv(rows: Sequence[SampleRow], cfg: SweepConfig) -> bytes:
    """Serialize sweep rows: '#' metadata, header, one line per row, LF endings."""
    buf = io.StringIO(newline="")
    for line in csv_metadata(cfg):
        buf.write(line + "\n")
    buf.write(",".join(CSV_HEADER) + "\n")
    for r in rows:
        buf.write(",".join(_fmt(getattr(r, col)) for col in CSV_HEADER) + "\n")
    return buf.getvalue().encode("utf-8")


def read_csv(data) -> list[dict]:
    """Parse CSV produced by :func:`emit_csv` back into dicts (None for empty cells)."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    reader = csv.DictReader(ln for ln in data.splitlines() if not ln.startswith("#"))
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise ValueError(f"unexpected header {reader.fieldnames}")
    out = []
    for rec in reader:
        if None in rec or None in rec.values():
            raise ValueError(f"malformed row {rec}")
        out.append({k: None if v == "" else (int(v) if k == "n" else float(v)) for k, v in rec.items()})
    return out
