"""Unit tests for the material module."""

import logging

import numpy as np
import pytest
from numpy.testing import assert_allclose
from pydantic import ValidationError

from src.enums import ConductivityModel
from src.exceptions import ModelDomainError
from src.material.schemas import CONSTANTS, GrapheneSheet
from src.material.service import (
    conductivity,
    drude_conductivity,
    drude_sigma0,
    kubo_conductivity,
    kubo_terms,
    relaxation_time_from_mobility,
    with_chemical_potential,
)


def test_drude_sigma0_reference_value():
    """Test drude_sigma0 for 0.5 eV and 0.1 ps"""
    assert drude_sigma0(GrapheneSheet()) == pytest.approx(5.885e-3, rel=1e-3)


def test_drude_sigma0_linear_in_chemical_potential_and_tau():
    """Test drude_sigma0 scales with µ_c·τ"""
    base = drude_sigma0(GrapheneSheet())
    doubled = drude_sigma0(
        GrapheneSheet(chemical_potential=1.0, relaxation_time=0.2e-12)
    )
    assert doubled == pytest.approx(4.0 * base, rel=1e-14)


def test_drude_conductivity_dc_limit():
    """Test drude_conductivity at zero frequency equals σ0"""
    sheet = GrapheneSheet()
    assert drude_conductivity(sheet, 0.0) == pytest.approx(drude_sigma0(sheet))


def test_drude_conductivity_sign_convention():
    """Test drude_conductivity has a negative imaginary part at positive frequency"""
    sigma = drude_conductivity(GrapheneSheet(), 2.5e12)
    assert sigma.real > 0
    assert sigma.imag < 0


def test_drude_conductivity_hermitian_symmetry():
    """Test σ(-ω) = conj(σ(ω))"""
    sheet = GrapheneSheet()
    f = np.linspace(0.1e12, 5e12, 11)
    assert_allclose(
        drude_conductivity(sheet, -f), np.conj(drude_conductivity(sheet, f))
    )


def test_drude_conductivity_vectorized_matches_scalar():
    """Test drude_conductivity over an array equals pointwise evaluation"""
    sheet = GrapheneSheet()
    f = np.array([1e12, 2e12, 3e12])
    values = drude_conductivity(sheet, f)
    for index, frequency in enumerate(f):
        assert values[index] == pytest.approx(
            drude_conductivity(sheet, frequency), rel=1e-14
        )


def test_kubo_close_to_drude_in_thz_band():
    """Test Kubo and Drude agree within 2% for 0.5 eV at 300 K"""
    sheet = GrapheneSheet()
    f = np.linspace(0.5e12, 5e12, 200)
    kubo = kubo_conductivity(sheet, f)
    drude = drude_conductivity(sheet, f)
    assert np.max(np.abs(kubo - drude) / np.abs(drude)) < 0.02


def test_kubo_intraband_dominates():
    """Test the interband term is small against the intraband term in the THz"""
    terms = kubo_terms(GrapheneSheet(), 2.5e12)
    assert abs(terms.interband) < 0.01 * abs(terms.intraband)
    assert terms.total == terms.intraband + terms.interband


def test_kubo_low_temperature_finite():
    """Test kubo_terms stays finite for kT much smaller than µ_c"""
    terms = kubo_terms(GrapheneSheet(temperature=1.0), 2.5e12)
    assert np.isfinite(terms.intraband)
    assert np.isfinite(terms.interband)


def test_kubo_intraband_low_temperature_limit_is_drude():
    """Test the Kubo intraband term at 1 K equals the Drude conductivity"""
    sheet = GrapheneSheet(temperature=1.0)
    f = np.linspace(0.1e12, 10e12, 100)
    assert_allclose(
        kubo_terms(sheet, f).intraband, drude_conductivity(sheet, f), rtol=1e-12
    )


def test_kubo_rejects_non_positive_frequency():
    """Test kubo_terms raises for f <= 0 and names the frequency"""
    with pytest.raises(ModelDomainError) as exc:
        kubo_terms(GrapheneSheet(), np.array([1e12, 0.0]))
    assert exc.value.frequency == 0.0


def test_kubo_branch_cut_detected():
    """Test kubo_terms raises when the interband argument is negative real"""
    sheet = GrapheneSheet(chemical_potential=0.01, relaxation_time=1e3)
    with pytest.raises(ModelDomainError):
        kubo_terms(sheet, 10e12)


def test_conductivity_dispatch():
    """Test conductivity selects the requested model"""
    sheet = GrapheneSheet()
    assert conductivity(sheet, 2e12, ConductivityModel.DRUDE) == drude_conductivity(
        sheet, 2e12
    )
    assert conductivity(sheet, 2e12, ConductivityModel.KUBO) == kubo_conductivity(
        sheet, 2e12
    )


def test_relaxation_time_from_mobility_reference():
    """Test 0.5 eV and 2000 cm²/Vs give 0.1 ps"""
    assert relaxation_time_from_mobility(0.5, 2000e-4) == pytest.approx(
        0.1e-12, rel=1e-2
    )


def test_relaxation_time_from_mobility_rejects_non_positive():
    """Test relaxation_time_from_mobility raises for a zero mobility"""
    with pytest.raises(ModelDomainError):
        relaxation_time_from_mobility(0.5, 0.0)


def test_sheet_rejects_negative_chemical_potential():
    """Test GrapheneSheet validation of µ_c"""
    with pytest.raises(ValidationError):
        GrapheneSheet(chemical_potential=-0.1)


def test_sheet_warns_on_inconsistent_mobility(caplog):
    """Test GrapheneSheet logs a warning when τ and mobility disagree"""
    with caplog.at_level(logging.WARNING, logger="material"):
        GrapheneSheet(mobility=1000e-4)
    assert "inconsistent" in caplog.text


def test_sheet_consistent_mobility_is_silent(caplog):
    """Test GrapheneSheet is silent for the reference mobility"""
    with caplog.at_level(logging.WARNING, logger="material"):
        GrapheneSheet(mobility=2000e-4)
    assert caplog.text == ""


def test_with_chemical_potential_keeps_tau():
    """Test with_chemical_potential only changes µ_c"""
    sheet = GrapheneSheet()
    gated = with_chemical_potential(sheet, 0.6)
    assert gated.chemical_potential == 0.6
    assert gated.relaxation_time == sheet.relaxation_time
    assert sheet.chemical_potential == 0.5


def test_with_chemical_potential_rejects_zero():
    """Test with_chemical_potential raises for µ_c <= 0"""
    with pytest.raises(ModelDomainError):
        with_chemical_potential(GrapheneSheet(), 0.0)


def test_constants_free_space_impedance():
    """Test Z0 = sqrt(µ0/ε0) is about 376.73 Ω"""
    assert CONSTANTS.free_space_impedance == pytest.approx(376.730313, rel=1e-8)
