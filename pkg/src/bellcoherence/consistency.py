"""Which Kraus application convention reproduces each tabulated closed form.

Single-channel families are compared against the channel acting on qubit A
only (``one_sided``) and against E_i x E_j acting on both qubits
(``both_sides_eq4``).  Bi-side families attach one channel per qubit; their
``both_sides_eq4`` alternative applies each of the two channels to both
qubits.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .closedform import T3, adc_state_biside_n, adc_state_n, map_coeffs
from .core import BellCoeffs, bell_matrix, random_bell_coeffs
from .specparse import parse_channel_spec
from .sweep import Convention, Grid, closed_form_evaluator, oracle_matrix

MATCH_TOL = 1e-12
NEITHER = "neither"


@dataclass(frozen=True)
class ConsistencyRow:
    table_row: str
    convention: str
    dev_one_sided: float
    dev_both: float


@dataclass(frozen=True)
class _Family:
    row_id: str
    spec: str
    closed: Callable[[BellCoeffs, float, float, int], np.ndarray]
    n_values: tuple[int, ...]


def _matrix(out) -> np.ndarray:
    if isinstance(out, BellCoeffs):
        return bell_matrix(out)
    return np.asarray(out, dtype=complex)


def _from_spec(spec: str):
    evaluate = closed_form_evaluator(parse_channel_spec(spec))
    return lambda c, p, q, n: _matrix(evaluate(c, p, q, n))


def _families() -> list[_Family]:
    fams = []
    for name in ("BF", "PF", "BPF", "DEP", "GAD"):
        spec = f"A:{name.lower()}(p)"
        fams.append(_Family(f"T2:{name}", spec, _from_spec(spec), (1,)))
    for name in ("BF", "PF", "BPF", "DEP", "GAD"):
        spec = f"A:{name.lower()}(p)"
        fams.append(_Family(
            f"T3:{name}^n", spec,
            lambda c, p, q, n, k=name: _matrix(map_coeffs(T3(k, n), c, p)),
            (2, 3, 5),
        ))
    fams.append(_Family("ADC", "A:ad(p)", lambda c, p, q, n: _matrix(adc_state_n(c, p, 1)), (1,)))
    fams.append(_Family("ADC^n", "A:ad(p)", lambda c, p, q, n: _matrix(adc_state_n(c, p, n)), (0, 2, 3, 5)))
    fams.append(_Family(
        "ADC^(n,n)", "A:ad(p)", lambda c, p, q, n: _matrix(adc_state_biside_n(c, p, n)), (1, 2, 3),
    ))
    for a, b in (("pf", "pf"), ("bf", "bf"), ("bpf", "bpf")):
        spec = f"A:{a}(p); B:{b}(q)"
        fams.append(_Family(f"T5:{a.upper()}-{b.upper()}", spec, _from_spec(spec), (1,)))
        fams.append(_Family(f"T5n:{a.upper()}^n-{b.upper()}^n", spec, _from_spec(spec), (2, 3)))
    for a, b in (("bf", "pf"), ("bf", "bpf"), ("pf", "bpf")):
        spec = f"A:{a}(p); B:{b}(q)"
        fams.append(_Family(f"T7:{a.upper()}-{b.upper()}", spec, _from_spec(spec), (1,)))
        fams.append(_Family(f"T8:{a.upper()}^n-{b.upper()}^n", spec, _from_spec(spec), (2, 3)))
    return fams


def classify(dev_one: float, dev_both: float, tol: float = MATCH_TOL) -> str:
    ok_one, ok_both = dev_one <= tol, dev_both <= tol
    if ok_one and ok_both:
        return Convention.ONE_SIDED.value if dev_one <= dev_both else Convention.BOTH_SIDES_EQ4.value
    if ok_one:
        return Convention.ONE_SIDED.value
    if ok_both:
        return Convention.BOTH_SIDES_EQ4.value
    return NEITHER


def consistency_report(state_samples: int = 4, grid_step: float = 0.1, seed: int = 0) -> list[ConsistencyRow]:
    """Max entrywise deviation of every closed form from both Kraus conventions.

    Deviations are taken over ``state_samples`` random physical states, the
    p grid (and q grid for bi-side rows) with spacing ``grid_step``, and a few
    repetition counts per n-fold family.
    """
    if not 0 < grid_step <= 0.5:
        raise ValueError(f"grid_step must lie in (0, 0.5], got {grid_step}")
    if state_samples < 1:
        raise ValueError("state_samples must be positive")
    rng = np.random.default_rng(seed)
    states = [random_bell_coeffs(rng) for _ in range(state_samples)]
    grid = Grid(0.0, 1.0, grid_step).values()

    rows = []
    for fam in _families():
        spec = parse_channel_spec(fam.spec)
        q_vals = grid if "q" in spec.variables() else (0.0,)
        dev = {Convention.ONE_SIDED: 0.0, Convention.BOTH_SIDES_EQ4: 0.0}
        for c in states:
            for n in fam.n_values:
                for p in grid:
                    for q in q_vals:
                        closed = fam.closed(c, p, q, n)
                        for conv in dev:
                            ref = oracle_matrix(c, spec, p, q, n, conv)
                            dev[conv] = max(dev[conv], float(np.max(np.abs(closed - ref))))
        d1, d2 = dev[Convention.ONE_SIDED], dev[Convention.BOTH_SIDES_EQ4]
        rows.append(ConsistencyRow(fam.row_id, classify(d1, d2), d1, d2))
    return rows


def convention_for(rows: list[ConsistencyRow], row_id: str) -> str:
    for r in rows:
        if r.table_row == row_id:
            return r.convention
    raise KeyError(row_id)


def report_csv(rows: list[ConsistencyRow]) -> bytes:
    buf = io.StringIO(newline="")
    buf.write("table_row,convention,dev_one_sided,dev_both\n")
    for r in rows:
        buf.write(f"{r.table_row},{r.convention},{r.dev_one_sided:.6e},{r.dev_both:.6e}\n")
    return buf.getvalue().encode("utf-8")


def format_table(rows: list[ConsistencyRow]) -> str:
    width = max(len(r.table_row) for r in rows)
    lines = [f"{'table_row':<{width}}  {'convention':<14}  {'dev_one_sided':>13}  {'dev_both':>13}"]
    for r in rows:
        lines.append(
            f"{r.table_row:<{width}}  {r.convention:<14}  {r.dev_one_sided:13.3e}  {r.dev_both:13.3e}"
        )
    return "\n".join(lines)


def convention_for_spec(spec, rows: list[ConsistencyRow]) -> Convention | None:
    """Oracle convention that reproduces the closed form a sweep spec dispatches to.

    Returns None when the closed form matched neither convention.
    """
    if isinstance(spec, str):
        spec = parse_channel_spec(spec)
    sides = [s for s in (spec.a, spec.b) if s is not None and s.kind.name != "ID"]
    if not sides:
        return Convention.ONE_SIDED
    if len(sides) == 1:
        kind = sides[0].kind.name
        row_id = "ADC^n" if kind == "AD" else f"T3:{kind}^n"
    elif sides[0].kind.name == "AD":
        # E x E with a single damping channel is exactly one damping channel per qubit
        conv = convention_for(rows, "ADC^(n,n)")
        return Convention.ONE_SIDED if conv == Convention.BOTH_SIDES_EQ4.value else None
    else:
        row_id = f"T8:{spec.a.kind.name}^n-{spec.b.kind.name}^n"
        if spec.a.kind is spec.b.kind:
            row_id = f"T5n:{spec.a.kind.name}^n-{spec.b.kind.name}^n"
    conv = convention_for(rows, row_id)
    return None if conv == NEITHER else Convention(conv)
