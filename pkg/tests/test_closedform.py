import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bellcoherence.channels import ChannelKind, Side, apply_both, apply_both_n, apply_n, apply_one_side, kraus_set
from bellcoherence.closedform import (
    T2, T3, MapFamily, Table, adc_state, adc_state_biside_n, adc_state_n, map_coeffs, scale_factors,
)
from bellcoherence.core import BellCoeffs, bell_to_density, density_to_bell
from bellcoherence.errors import ParamOutOfRange, UnsupportedCombination

from conftest import REF_STATE, physical_coeffs

rates = st.floats(0, 1)
small_n = st.integers(0, 12)

# Rows re-typed independently from the reference tables: factor triples as functions of (p, q, n).
TABLE_ROWS = {
    ("single", "BF"): lambda p, q, n: (1, (1 - p) ** (2 * n), (1 - p) ** (2 * n)),
    ("single", "PF"): lambda p, q, n: ((1 - p) ** (2 * n), (1 - p) ** (2 * n), 1),
    ("single", "BPF"): lambda p, q, n: ((1 - p) ** (2 * n), 1, (1 - p) ** (2 * n)),
    ("single", "DEP"): lambda p, q, n: ((1 - 4 * p / 3) ** n,) * 3,
    ("single", "GAD"): lambda p, q, n: ((1 - p) ** n, (1 - p) ** n, (1 - p) ** (2 * n)),
    ("biside_same", "PFPF"): lambda p, q, n: (((1 - p) * (1 - q)) ** n, ((1 - p) * (1 - q)) ** n, 1),
    ("biside_same", "BFBF"): lambda p, q, n: (1, ((1 - p) * (1 - q)) ** n, ((1 - p) * (1 - q)) ** n),
    ("biside_same", "BPFBPF"): lambda p, q, n: (((1 - p) * (1 - q)) ** n, 1, ((1 - p) * (1 - q)) ** n),
    ("biside_diff", "BFPF"): lambda p, q, n: ((1 - q) ** n, ((1 - p) * (1 - q)) ** n, (1 - p) ** n),
    ("biside_diff", "BFBPF"): lambda p, q, n: ((1 - q) ** n, (1 - p) ** n, ((1 - p) * (1 - q)) ** n),
    ("biside_diff", "PFBPF"): lambda p, q, n: (((1 - p) * (1 - q)) ** n, (1 - p) ** n, (1 - q) ** n),
}
FAMILIES = [MapFamily(Table(t), k) for t, k in TABLE_ROWS]


def test_map_examples(ref_state):
    for c in (ref_state, BellCoeffs(-0.2, 0.1, 0.7)):
        assert map_coeffs(T2("dep"), c, 0.75).as_tuple() == (0.0, 0.0, 0.0)
    np.testing.assert_allclose(map_coeffs(T2("bpf"), ref_state, 0.5).as_tuple(), (0.075, -0.4, 0.14), atol=1e-15)
    pfpf = MapFamily(Table.BISIDE_SAME, "PF-PF")
    np.testing.assert_allclose(map_coeffs(pfpf, ref_state, 0.5, 0.5).as_tuple(), (0.075, -0.1, 0.56), atol=1e-15)


@settings(max_examples=30)
@given(physical_coeffs(), rates)
def test_t3_at_one_is_t2(c, p):
    for kind in ("bf", "pf", "bpf", "dep", "gad"):
        assert map_coeffs(T3(kind, 1), c, p) == map_coeffs(T2(kind), c, p)


@pytest.mark.parametrize("key", list(TABLE_ROWS))
@settings(max_examples=25)
@given(c=physical_coeffs(), p=rates, q=rates, n=small_n)
def test_transcription(key, c, p, q, n):
    fam = MapFamily(Table(key[0]), key[1], n)
    f = TABLE_ROWS[key](p, q, n)
    got = map_coeffs(fam, c, p, q).as_tuple()
    np.testing.assert_allclose(got, [fi * ci for fi, ci in zip(f, c.as_tuple())], atol=1e-15)


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.label)
@settings(max_examples=25)
@given(c=physical_coeffs(), p=rates, q=rates, n=small_n)
def test_contraction(fam, c, p, q, n):
    fam = MapFamily(fam.table, fam.kind, n)
    out = map_coeffs(fam, c, p, q)
    for a, b in zip(out.as_tuple(), c.as_tuple()):
        assert abs(a) <= abs(b) + 1e-15


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.label)
@settings(max_examples=25)
@given(p=rates, q=rates, m=small_n, k=small_n)
def test_semigroup(fam, p, q, m, k):
    whole = scale_factors(MapFamily(fam.table, fam.kind, m + k), p, q)
    first = scale_factors(MapFamily(fam.table, fam.kind, m), p, q)
    second = scale_factors(MapFamily(fam.table, fam.kind, k), p, q)
    np.testing.assert_allclose(whole, np.multiply(first, second), atol=1e-15)


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.label)
def test_zero_rate_is_identity(fam, ref_state):
    for n in (0, 1, 5):
        assert map_coeffs(MapFamily(fam.table, fam.kind, n), ref_state, 0.0, 0.0) == ref_state


def test_family_validation():
    with pytest.raises(UnsupportedCombination):
        T2("ad")
    with pytest.raises(UnsupportedCombination):
        MapFamily(Table.BISIDE_SAME, "DEPDEP")
    with pytest.raises(UnsupportedCombination):
        MapFamily(Table.BISIDE_DIFF, "PFBF")
    with pytest.raises(ValueError):
        T3("bf", -1)
    with pytest.raises(ParamOutOfRange):
        map_coeffs(T2("bf"), (0, 0, 0), 1.5)


def test_large_n_flushes_to_zero(ref_state):
    out = map_coeffs(T3("pf", 10**6), ref_state, 0.5)
    assert out.as_tuple() == (0.0, 0.0, 0.56)


# -- amplitude damping -------------------------------------------------------

def test_adc_limits(ref_state):
    np.testing.assert_allclose(adc_state(ref_state, 0.0).mat, bell_to_density(ref_state).mat, atol=1e-15)
    np.testing.assert_allclose(adc_state(ref_state, 1.0).mat, np.diag([0.5, 0.5, 0, 0]), atol=1e-15)


def test_adc_matches_oracle(ref_state):
    ref = apply_one_side(bell_to_density(ref_state), kraus_set("ad", p=0.5), Side.FIRST)
    np.testing.assert_allclose(adc_state(ref_state, 0.5).mat, ref.mat, atol=1e-12)


def test_adc_n_examples(ref_state):
    np.testing.assert_allclose(adc_state_n(ref_state, 0.3, 0).mat, bell_to_density(ref_state).mat)
    np.testing.assert_allclose(adc_state_n(ref_state, 0.3, 1).mat, adc_state(ref_state, 0.3).mat)
    ref = apply_n(bell_to_density(ref_state), kraus_set("ad", p=0.3), Side.FIRST, 4)
    np.testing.assert_allclose(adc_state_n(ref_state, 0.3, 4).mat, ref.mat, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(c=physical_coeffs(), p=rates, n=small_n)
def test_adc_n_matches_iterated_oracle(c, p, n):
    ref = apply_n(bell_to_density(c), kraus_set("ad", p=p), Side.FIRST, n)
    np.testing.assert_allclose(adc_state_n(c, p, n).mat, ref.mat, atol=1e-12)


def test_adc_n_is_a_state_on_grid(ref_state):
    for i in range(21):
        for n in range(101):
            rho = adc_state_n(ref_state, i * 0.05, n)  # construction validates trace and PSD
            assert rho.spectrum[0] >= -1e-10


def test_adc_biside_examples(ref_state):
    np.testing.assert_allclose(adc_state_biside_n(ref_state, 0.4, 0).mat, bell_to_density(ref_state).mat)
    ad = kraus_set("ad", p=0.3)
    ref = apply_both_n(bell_to_density(ref_state), ad, ad, 2)
    dev = np.max(np.abs(adc_state_biside_n(ref_state, 0.3, 2).mat - ref.mat))
    assert dev <= 1e-12


@settings(max_examples=40, deadline=None)
@given(c=physical_coeffs(), p=rates, n=st.integers(0, 8))
def test_adc_biside_trace_and_oracle(c, p, n):
    rho = adc_state_biside_n(c, p, n)
    assert np.trace(rho.mat).real == pytest.approx(1.0, abs=1e-12)
    ad = kraus_set("ad", p=p)
    np.testing.assert_allclose(rho.mat, apply_both_n(bell_to_density(c), ad, ad, n).mat, atol=1e-12)


# -- oracle equivalence, straight against the channel module -----------------

@pytest.mark.parametrize("kind", ["bf", "pf", "bpf", "gad"])
@settings(max_examples=20, deadline=None)
@given(c=physical_coeffs(), p=rates, n=st.integers(1, 4))
def test_flip_and_gad_rows_match_both_sides(kind, c, p, n):
    k = kraus_set("gad", p=0.5, gamma=p) if kind == "gad" else kraus_set(kind, p=p)
    out = apply_both_n(bell_to_density(c), k, k, n)
    np.testing.assert_allclose(density_to_bell(out).as_tuple(), map_coeffs(T3(kind, n), c, p).as_tuple(), atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(c=physical_coeffs(), p=rates, n=st.integers(0, 6))
def test_dep_rows_match_one_side(c, p, n):
    out = apply_n(bell_to_density(c), kraus_set("dep", p=p), Side.FIRST, n)
    np.testing.assert_allclose(density_to_bell(out).as_tuple(), map_coeffs(T3("dep", n), c, p).as_tuple(), atol=1e-12)


BISIDE = [
    (Table.BISIDE_SAME, "PFPF", "pf", "pf"),
    (Table.BISIDE_SAME, "BFBF", "bf", "bf"),
    (Table.BISIDE_SAME, "BPFBPF", "bpf", "bpf"),
    (Table.BISIDE_DIFF, "BFPF", "bf", "pf"),
    (Table.BISIDE_DIFF, "BFBPF", "bf", "bpf"),
    (Table.BISIDE_DIFF, "PFBPF", "pf", "bpf"),
]


@pytest.mark.parametrize("table,kind,a,b", BISIDE)
@settings(max_examples=20, deadline=None)
@given(c=physical_coeffs(), p=rates, q=rates, n=st.integers(0, 4))
def test_biside_rows_match_one_channel_per_qubit(table, kind, a, b, c, p, q, n):
    out = apply_both_n(bell_to_density(c), kraus_set(a, p=p), kraus_set(b, p=q), n)
    expected = map_coeffs(MapFamily(table, kind, n), c, p, q)
    np.testing.assert_allclose(density_to_bell(out).as_tuple(), expected.as_tuple(), atol=1e-12)
