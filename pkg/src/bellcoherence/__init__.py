"""Coherence dynamics of two-qubit Bell-diagonal states under local Markovian channels."""

__version__ = "0.1.0"

from .channels import (
    ChannelKind,
    KrausSet,
    Side,
    apply_both,
    apply_both_n,
    apply_n,
    apply_one_side,
    completeness_defect,
    kraus_set,
)
from .closedform import (
    MapFamily,
    T2,
    T3,
    Table,
    adc_state,
    adc_state_biside_n,
    adc_state_n,
    map_coeffs,
)
from .coherence import FrozenReport, Measure, c_l1, c_l1_bell, c_rel, c_rel_bell, frozen_scan
from .core import (
    BellCoeffs,
    TwoQubitDensity,
    bell_to_density,
    dephase,
    density_to_bell,
    eigenvalues_hermitian,
    kron,
    von_neumann_entropy,
)
from .specparse import ChannelSpec, SideSpec, parse_channel_spec
