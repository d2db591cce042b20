"""Property-based tests across the solver."""

import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from src.circuit.schemas import PatchArrayGeometry
from src.circuit.service import (
    absorption_from_reflection,
    grid_impedance,
    reflection_spectrum,
    rlc_extract,
    rlc_impedance,
)
from src.cli.parser import dump_config, parse_config
from src.design.service import synthesize_geometry
from src.enums import Polarization
from src.material.schemas import GrapheneSheet
from src.material.service import drude_conductivity, kubo_conductivity
from src.tmm.service import propagation_matrix, tmm_reflection_spectrum
from src.utils import format_float

F0 = 2.5e12

frequencies = st.floats(min_value=0.5e12, max_value=5e12)
angles = st.floats(min_value=0.0, max_value=math.radians(60))
polarizations = st.sampled_from(list(Polarization))
chemical_potentials = st.floats(min_value=0.1, max_value=1.0)
relaxation_times = st.floats(min_value=0.01e-12, max_value=1e-12)
loss_tangents = st.floats(min_value=0.0, max_value=0.05)


def _stackup(chemical_potential, relaxation_time=0.1e-12, loss_tangent=0.0):
    sheet = GrapheneSheet(
        chemical_potential=chemical_potential, relaxation_time=relaxation_time
    )
    return synthesize_geometry(F0, sheet, 11.9, loss_tangent)


@settings(max_examples=300, deadline=None)
@given(frequencies, angles, polarizations, chemical_potentials, loss_tangents)
def test_passive_and_energy_conserving(
    frequency, angle, polarization, chemical_potential, loss_tangent
):
    """Test |S11| <= 1 and A + |S11|² = 1 everywhere in the design space"""
    stackup = _stackup(chemical_potential, loss_tangent=loss_tangent)
    s11 = complex(reflection_spectrum(stackup, frequency, angle, polarization))
    assert abs(s11) <= 1.0 + 1e-12
    absorbed = absorption_from_reflection(s11)
    assert 0.0 <= absorbed <= 1.0
    assert abs(absorbed + abs(s11) ** 2 - 1.0) < 1e-12


@settings(max_examples=200, deadline=None)
@given(frequencies, angles, polarizations, chemical_potentials, loss_tangents)
def test_circuit_matches_oracle(
    frequency, angle, polarization, chemical_potential, loss_tangent
):
    """Test the circuit model and the transfer-matrix oracle agree"""
    stackup = _stackup(chemical_potential, loss_tangent=loss_tangent)
    f = np.array([frequency])
    circuit = reflection_spectrum(stackup, f, angle, polarization)
    oracle = tmm_reflection_spectrum(stackup, f, angle, polarization)
    assert_allclose(circuit, oracle, rtol=0, atol=1e-10)


@settings(max_examples=150, deadline=None)
@given(frequencies, chemical_potentials)
def test_polarizations_coincide_at_normal_incidence(frequency, chemical_potential):
    """Test TE and TM are bit-identical at θ = 0"""
    stackup = _stackup(chemical_potential)
    te = reflection_spectrum(stackup, frequency, 0.0, Polarization.TE)
    tm = reflection_spectrum(stackup, frequency, 0.0, Polarization.TM)
    assert te == tm


@settings(max_examples=150, deadline=None)
@given(
    frequencies,
    chemical_potentials,
    relaxation_times,
    st.floats(min_value=5e-6, max_value=50e-6),
    st.floats(min_value=0.2, max_value=0.98),
)
def test_rlc_matches_grid_impedance(
    frequency, chemical_potential, relaxation_time, period, fill
):
    """Test the series RLC reproduces Z_g and L/R equals τ"""
    stackup = _stackup(chemical_potential, relaxation_time).model_copy(
        update={
            "geometry": PatchArrayGeometry(period=period, patch_width=fill * period)
        }
    )
    rlc = rlc_extract(stackup)
    z_g = complex(grid_impedance(stackup, frequency))
    assert abs(complex(rlc_impedance(rlc, frequency)) - z_g) <= 1e-12 * abs(z_g)
    assert math.isclose(rlc.inductance / rlc.resistance, relaxation_time, rel_tol=1e-14)


@settings(max_examples=100, deadline=None)
@given(
    st.floats(min_value=0.0, max_value=50.0),
    st.floats(min_value=-5.0, max_value=0.0),
)
def test_propagation_matrix_unit_determinant(real, imag):
    """Test det P = 1 for lossless and lossy phases"""
    assert abs(np.linalg.det(propagation_matrix(complex(real, imag))) - 1.0) < 1e-12


@settings(max_examples=150, deadline=None)
@given(st.floats(min_value=0.1e12, max_value=10e12), chemical_potentials)
def test_conductivity_is_passive(frequency, chemical_potential):
    """Test Re σ > 0 for both the Drude and the Kubo model"""
    sheet = GrapheneSheet(chemical_potential=chemical_potential)
    assert complex(drude_conductivity(sheet, frequency)).real > 0
    assert complex(kubo_conductivity(sheet, frequency)).real > 0


@settings(max_examples=150, deadline=None)
@given(frequencies, st.floats(min_value=0.3, max_value=1.0))
def test_drude_tracks_kubo(frequency, chemical_potential):
    """Test Drude stays within 2% of Kubo at 300 K for µ_c >= 0.3 eV"""
    sheet = GrapheneSheet(chemical_potential=chemical_potential, temperature=300.0)
    kubo = complex(kubo_conductivity(sheet, frequency))
    drude = complex(drude_conductivity(sheet, frequency))
    assert abs(drude - kubo) < 0.02 * abs(kubo)


@settings(max_examples=100, deadline=None)
@given(
    st.floats(min_value=0.2, max_value=5.0), chemical_potentials, relaxation_times
)
def test_frozen_conductivity_scale_invariance(factor, chemical_potential, tau):
    """Test scaling the design and frequency together keeps S11"""
    sheet = GrapheneSheet(chemical_potential=chemical_potential, relaxation_time=tau)
    sigma = drude_conductivity(sheet, F0)
    reference = reflection_spectrum(
        synthesize_geometry(F0, sheet), F0, conductivity=sigma
    )
    scaled = reflection_spectrum(
        synthesize_geometry(factor * F0, sheet), factor * F0, conductivity=sigma
    )
    assert_allclose(scaled, reference, rtol=0, atol=1e-12)


@settings(max_examples=150, deadline=None)
@given(
    st.floats(min_value=0.05, max_value=1.5),
    st.floats(min_value=1e-14, max_value=1e-12),
    st.floats(min_value=2e-6, max_value=2e-5),
    st.floats(min_value=0.0, max_value=1.5),
    st.integers(min_value=2, max_value=5000),
    st.lists(
        st.floats(min_value=0.05, max_value=1.5), min_size=1, max_size=5, unique=True
    ).map(sorted),
)
def test_config_dump_round_trip(mu_c, tau, thickness, angle, n_points, mu_c_list):
    """Test dump_config then parse_config reproduces the configuration"""
    text = "\n".join(
        [
            f"mu_c = {format_float(mu_c)} eV",
            f"tau = {format_float(tau)} s",
            f"thickness = {format_float(thickness)} m",
            f"angle = {format_float(angle)} rad",
            f"n_points = {n_points}",
            "mu_c_list = " + ", ".join(format_float(value) for value in mu_c_list)
            + " eV",
        ]
    )
    config = parse_config(text)
    assert config.mu_c == mu_c
    assert config.mu_c_list == mu_c_list
    assert parse_config(dump_config(config)) == config
