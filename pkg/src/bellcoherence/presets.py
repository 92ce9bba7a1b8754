"""Sweep configurations that regenerate each reference figure panel as CSV."""
from __future__ import annotations

from .coherence import Measure
from .core import BellCoeffs
from .errors import UnknownPreset
from .sweep import Engine, Grid, SweepConfig

DEFAULT_STATE = BellCoeffs(0.3, -0.4, 0.56)
DEFAULT_STEP = 0.01
N_SERIES = (1, 2, 3, 10, 100)

_SINGLE = ("bf", "pf", "bpf", "dep", "ad", "gad")
_PANEL2 = {"fig2a": "bf", "fig2b": "pf", "fig2c": "bpf", "fig2d": "dep", "fig2e": "gad", "fig2f": "ad"}
_BISIDE_SAME = ("bf", "pf", "bpf")
_PANEL6 = {"fig6a": ("bf", "pf"), "fig6b": ("bf", "bpf"), "fig6c": ("pf", "bpf")}
_PANEL7 = {"fig7a": ("bf", "pf"), "fig7b": ("bf", "bpf"), "fig7c": ("pf", "bpf")}

PRESET_NAMES = (
    "fig1a", "fig1b",
    "fig2a", "fig2b", "fig2c", "fig2d", "fig2e", "fig2f",
    "fig3", "fig4", "fig5a", "fig5b",
    "fig6a", "fig6b", "fig6c",
    "fig7a", "fig7b", "fig7c",
)


def figure_preset(
    name: str,
    *,
    step: float = DEFAULT_STEP,
    engine: Engine = Engine.CLOSEDFORM,
    state: BellCoeffs = DEFAULT_STATE,
) -> list[SweepConfig]:
    """Configurations behind one figure panel, one per plotted curve or surface.

    Every curve of a panel shares the state and grid; ``name`` on each config
    is the file stem used by the ``figure`` command.
    """
    key = name.strip().lower()
    grid = Grid(0.0, 1.0, step)

    def cfg(label, spec, measures=(Measure.REL,), n_list=(1,)):
        return SweepConfig(
            state=state, spec=spec, p_grid=grid, q_grid=grid, n_list=n_list,
            engine=engine, measures=measures, name=label,
        )

    if key in ("fig1a", "fig1b"):
        measures = (Measure.REL,) if key == "fig1a" else (Measure.L1,)
        return [cfg(f"{key}_{ch}", f"A:{ch}(p)", measures) for ch in _SINGLE]
    if key in _PANEL2:
        return [cfg(key, f"A:{_PANEL2[key]}(p)", n_list=N_SERIES)]
    if key == "fig3":
        return [cfg(key, "A:ad(p); B:ad(p)", n_list=N_SERIES)]
    if key in ("fig4", "fig5a", "fig5b"):
        n = {"fig4": 1, "fig5a": 10, "fig5b": 100}[key]
        return [cfg(f"{key}_{ch}", f"A:{ch}(p); B:{ch}(q)", n_list=(n,)) for ch in _BISIDE_SAME]
    if key in _PANEL6:
        a, b = _PANEL6[key]
        return [cfg(key, f"A:{a}(p); B:{b}(q)")]
    if key in _PANEL7:
        a, b = _PANEL7[key]
        return [cfg(key, f"A:{a}(p); B:{b}(q)", n_list=(10,))]
    raise UnknownPreset(f"unknown figure preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
