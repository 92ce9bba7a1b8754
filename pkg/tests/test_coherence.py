import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from bellcoherence.channels import Side, apply_one_side, kraus_set
from bellcoherence.closedform import T2, map_coeffs
from bellcoherence.coherence import Measure, c_l1, c_l1_bell, c_rel, c_rel_bell, frozen_scan
from bellcoherence.core import BellCoeffs, TwoQubitDensity, bell_to_density, density_to_bell
from bellcoherence.errors import EmptyInput

from conftest import density_matrices, physical_coeffs

# scipy.stats.entropy(base=2) of the dephased diagonal minus that of the spectrum
REF_C_REL = 0.12570350351112025
GRID = [i / 100 for i in range(101)]


def test_l1_examples(ref_state):
    assert c_l1(TwoQubitDensity(np.eye(4) / 4)) == 0.0
    assert c_l1(bell_to_density((1, -1, 1))) == pytest.approx(1.0, abs=1e-15)
    assert c_l1(bell_to_density(ref_state)) == pytest.approx(0.4, abs=1e-15)


def test_l1_bell_examples(ref_state):
    assert c_l1_bell(BellCoeffs(0, 0, 0.3)) == 0.0
    assert c_l1_bell(ref_state) == pytest.approx(0.4, abs=1e-15)
    assert c_l1_bell(BellCoeffs(0.7, 0.1, 0)) == pytest.approx(0.7, abs=1e-15)


def test_rel_examples(ref_state):
    assert c_rel(TwoQubitDensity(np.diag([0.1, 0.2, 0.3, 0.4]))) == 0.0
    assert c_rel(bell_to_density((1, -1, 1))) == pytest.approx(1.0, abs=1e-12)
    assert c_rel(bell_to_density(ref_state)) == pytest.approx(REF_C_REL, abs=1e-12)


def test_rel_bell_examples(ref_state):
    assert c_rel_bell(BellCoeffs(0, 0, 0)) == 0.0
    assert c_rel_bell(BellCoeffs(1, -1, 1)) == pytest.approx(1.0, abs=1e-12)
    assert c_rel_bell(ref_state) == pytest.approx(REF_C_REL, abs=1e-12)


@given(physical_coeffs())
def test_l1_is_max_abs(c):
    assert c_l1_bell(c) == pytest.approx(max(abs(c.c1), abs(c.c2)), abs=1e-15)


def test_specialisations_agree_on_random_states(rng):
    for _ in range(1000):
        c = BellCoeffs.from_probabilities(rng.dirichlet(np.ones(4)))
        rho = bell_to_density(c)
        assert abs(c_l1_bell(c) - c_l1(rho)) <= 1e-14
        assert abs(c_rel_bell(c) - c_rel(rho)) <= 1e-10


@given(physical_coeffs())
def test_bounds_on_bell_family(c):
    rho = bell_to_density(c)
    assert 0.0 <= c_l1(rho) <= 1.0 + 1e-12
    assert 0.0 <= c_rel(rho) <= 1.0 + 1e-12


@given(density_matrices())
def test_measures_nonnegative(m):
    rho = TwoQubitDensity(m)
    assert c_l1(rho) >= 0.0
    assert c_rel(rho) >= 0.0


@given(c=physical_coeffs(), f=st.floats(0, 1))
def test_frozen_theorem(c, f):
    # (f c1, c2, f c3) mixes c with (0, c2, 0), so it stays physical
    assume(abs(c.c2) >= abs(c.c1))
    image = BellCoeffs(f * c.c1, c.c2, f * c.c3)
    assert c_l1_bell(image) == pytest.approx(abs(c.c2), abs=1e-15)
    assert c_l1_bell(map_coeffs(T2("bpf"), c, 1 - f)) == pytest.approx(abs(c.c2), abs=1e-15)


def test_frozen_under_bpf_both_engines(ref_state):
    table = [c_l1_bell(map_coeffs(T2("bpf"), ref_state, p)) for p in GRID]
    assert all(v == 0.4 for v in table)
    rho = bell_to_density(ref_state)
    oracle = [c_l1(apply_one_side(rho, kraus_set("bpf", p=p), Side.FIRST)) for p in GRID]
    assert max(abs(v - 0.4) for v in oracle) <= 1e-12


def test_measure_non_equivalence(ref_state):
    l1 = [c_l1_bell(map_coeffs(T2("bpf"), ref_state, p)) for p in GRID]
    rel = [c_rel_bell(map_coeffs(T2("bpf"), ref_state, p)) for p in GRID]
    assert frozen_scan(l1, Measure.L1).is_frozen
    assert rel[-1] < rel[0]
    assert not frozen_scan(list(zip(GRID, rel)), Measure.REL).is_frozen


def test_frozen_scan_examples():
    r = frozen_scan([0.4] * 101, "l1")
    assert r.is_frozen and r.max_deviation == 0.0 and r.grid_size == 101 and r.measure is Measure.L1
    r = frozen_scan([1 - i / 10 for i in range(11)])
    assert not r.is_frozen
    assert r.max_deviation == pytest.approx(1.0)
    with pytest.raises(EmptyInput):
        frozen_scan([])
    with pytest.raises(EmptyInput):
        frozen_scan([0.3])


def test_frozen_scan_tolerance_boundary():
    assert frozen_scan([0.0, 1e-9]).is_frozen
    assert not frozen_scan([0.0, 2e-9]).is_frozen


def test_measure_parse():
    assert Measure.parse("relent") is Measure.REL
    assert Measure.parse("L1") is Measure.L1
    with pytest.raises(ValueError):
        Measure.parse("trace")


@given(physical_coeffs())
def test_rel_bell_on_evolved_state_matches_matrix(c):
    out = apply_one_side(bell_to_density(c), kraus_set("dep", p=0.3), Side.FIRST)
    assert c_rel_bell(density_to_bell(out)) == pytest.approx(c_rel(out), abs=1e-10)
