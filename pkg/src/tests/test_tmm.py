"""Unit tests for the transfer-matrix oracle."""

import cmath
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from pydantic import ValidationError

from src.circuit.schemas import IncidentWave
from src.circuit.service import reflection_spectrum
from src.enums import Polarization
from src.exceptions import ModelDomainError
from src.material.schemas import CONSTANTS
from src.tmm.schemas import DielectricLayer, LayerStack, PecTermination, SheetLayer
from src.tmm.service import (
    compare_with_circuit,
    interface_matrix,
    medium_response,
    propagation_matrix,
    salisbury_screen,
    stack_from_stackup,
    tmm_absorption,
    tmm_reflection,
    tmm_reflection_spectrum,
)

F0 = 2.5e12


def test_bare_pec_is_perfect_mirror():
    """Test a lone PEC reflects everything with phase π"""
    stack = LayerStack(layers=[PecTermination()])
    s11 = tmm_reflection(stack, IncidentWave(frequency=F0))
    assert abs(s11) == pytest.approx(1.0, abs=1e-15)
    assert abs(cmath.phase(s11)) == pytest.approx(math.pi, abs=1e-12)
    assert tmm_absorption(stack, IncidentWave(frequency=F0)) == pytest.approx(
        0.0, abs=1e-15
    )


def test_salisbury_screen_absorbs_at_quarter_wave():
    """Test R = Z0 a quarter wave above a conductor gives A = 1"""
    stack = salisbury_screen(F0)
    assert abs(tmm_reflection(stack, IncidentWave(frequency=F0))) < 1e-12
    assert tmm_absorption(stack, IncidentWave(frequency=F0)) == pytest.approx(
        1.0, abs=1e-12
    )


def test_salisbury_screen_detuned_reflects():
    """Test the Salisbury screen reflects away from its design frequency"""
    stack = salisbury_screen(F0)
    assert tmm_absorption(stack, IncidentWave(frequency=2 * F0)) < 0.5


def test_interface_matrix_trivial():
    """Test an interface between identical media without a sheet is the identity"""
    assert_allclose(interface_matrix(377.0, 377.0), np.eye(2), atol=1e-15)


def test_propagation_matrix_unit_determinant():
    """Test det of the propagation matrix is 1 for lossy and lossless phases"""
    for phase in (0.3, 2.1 - 0.05j, 7.0):
        assert abs(np.linalg.det(propagation_matrix(phase)) - 1) < 1e-12


def test_medium_response_normal_incidence():
    """Test η = Z0/n for both polarizations at θ = 0"""
    eta_te, index = medium_response(11.9 + 0j, 0.0, Polarization.TE)
    eta_tm, _ = medium_response(11.9 + 0j, 0.0, Polarization.TM)
    assert index == pytest.approx(math.sqrt(11.9))
    assert eta_te == pytest.approx(CONSTANTS.free_space_impedance / math.sqrt(11.9))
    assert eta_tm == pytest.approx(eta_te, rel=1e-14)


def test_medium_response_rejects_evanescent():
    """Test a wave that cannot propagate in the layer is rejected"""
    with pytest.raises(ModelDomainError):
        medium_response(0.5 + 0j, math.radians(60), Polarization.TE)


def test_layer_stack_requires_single_final_pec():
    """Test LayerStack validation of the termination"""
    dielectric = DielectricLayer(relative_permittivity=2.0, thickness=1e-6)
    with pytest.raises(ValidationError):
        LayerStack(layers=[dielectric])
    with pytest.raises(ValidationError):
        LayerStack(layers=[PecTermination(), dielectric])
    with pytest.raises(ValidationError):
        LayerStack(layers=[PecTermination(), PecTermination()])


def test_sheet_layer_rejects_zero_impedance():
    """Test SheetLayer validation"""
    with pytest.raises(ValidationError):
        SheetLayer(impedance_real=0.0, impedance_imag=0.0)


def test_dielectric_layer_rejects_zero_thickness():
    """Test DielectricLayer validation"""
    with pytest.raises(ValidationError):
        DielectricLayer(relative_permittivity=2.0, thickness=0.0)


def test_stack_from_stackup_layers(default_stackup):
    """Test the absorber maps to sheet, dielectric and PEC"""
    stack = stack_from_stackup(default_stackup, F0)
    kinds = [type(layer) for layer in stack.layers]
    assert kinds == [SheetLayer, DielectricLayer, PecTermination]
    assert stack.layers[1].thickness == default_stackup.substrate.thickness


def test_default_absorption(default_stackup):
    """Test the oracle puts the default design in [0.90, 1.00] at 2.5 THz"""
    stack = stack_from_stackup(default_stackup, F0)
    assert 0.90 <= tmm_absorption(stack, IncidentWave(frequency=F0)) <= 1.0


@pytest.mark.parametrize("polarization", [Polarization.TE, Polarization.TM])
@pytest.mark.parametrize("angle_deg", [0.0, 30.0, 50.0])
def test_oracle_matches_circuit(default_stackup, angle_deg, polarization):
    """Test circuit and oracle S11 agree within 1e-10"""
    f = np.linspace(0.5e12, 5e12, 91)
    angle = math.radians(angle_deg)
    circuit = reflection_spectrum(default_stackup, f, angle, polarization)
    oracle = tmm_reflection_spectrum(default_stackup, f, angle, polarization)
    assert np.max(np.abs(circuit - oracle)) < 1e-10


def test_oracle_matches_circuit_with_lossy_substrate(default_stackup):
    """Test the equivalence also holds with a loss tangent"""
    lossy = default_stackup.model_copy(
        update={
            "substrate": default_stackup.substrate.model_copy(
                update={"loss_tangent": 0.02}
            )
        }
    )
    report = compare_with_circuit(
        lossy, np.linspace(1e12, 4e12, 61), [0.0, math.radians(40)]
    )
    assert report.passed


def test_compare_with_circuit_report(default_stackup):
    """Test the validation report counts points and passes"""
    f = np.linspace(1e12, 4e12, 31)
    report = compare_with_circuit(default_stackup, f, [0.0, math.radians(30)])
    assert report.passed
    assert report.n_points == 31 * 2 * 2
    assert report.max_deviation == report.worst.deviation
    assert report.max_deviation < report.tolerance


def test_compare_with_circuit_fails_on_tight_tolerance(default_stackup):
    """Test a zero-width tolerance is reported as failed unless bit-identical"""
    report = compare_with_circuit(
        default_stackup, np.array([F0]), [math.radians(30)], tolerance=1e-300
    )
    assert report.passed == (report.max_deviation < 1e-300)


def test_compare_with_circuit_needs_angles(default_stackup):
    """Test an empty angle list is rejected"""
    with pytest.raises(ModelDomainError):
        compare_with_circuit(default_stackup, np.array([F0]), [])
