import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mq_spinsim.spin_basis import total_iz
from mq_spinsim.thermal import ThermalConfig, equilibrium_state


@pytest.mark.parametrize("n", [1, 3, 6])
def test_infinite_temperature(n):
    rho = equilibrium_state(n, ThermalConfig(0.0))
    np.testing.assert_allclose(rho, np.eye(2**n) / 2**n, rtol=0, atol=1e-15)


@pytest.mark.parametrize("b", [0.3, 1.0, 10.0])
def test_single_spin_closed_form(b):
    rho = equilibrium_state(1, ThermalConfig(b=b))
    expected = np.diag([np.exp(b / 2), np.exp(-b / 2)]) / (2 * np.cosh(b / 2))
    np.testing.assert_allclose(rho, expected, rtol=1e-14)


@pytest.mark.parametrize("n", range(1, 10))
@pytest.mark.parametrize("b", [0.5, 2.5, 10.0])
def test_polarization_product_form(n, b):
    rho = equilibrium_state(n, ThermalConfig(b=b))
    pol = np.trace(rho @ total_iz(n)).real
    assert abs(pol - n / 2 * np.tanh(b / 2)) < 1e-12


def test_norm_conventions():
    assert ThermalConfig(10.0).zeeman_b(8) == 10.0
    assert ThermalConfig(10.0, "spectral").zeeman_b(8) == 2.5
    assert ThermalConfig(10.0, "spectral", b=3.0).zeeman_b(8) == 3.0
    with pytest.raises(ValueError):
        ThermalConfig(-1.0)
    with pytest.raises(ValueError):
        ThermalConfig(1.0, "frobenius")


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 8), bh=st.floats(0, 60))
def test_state_invariants(n, bh):
    rho = equilibrium_state(n, ThermalConfig(bh))
    assert np.count_nonzero(rho - np.diag(np.diag(rho))) == 0
    assert abs(np.trace(rho) - 1) < 1e-14
    assert np.all(np.diag(rho).real > 0)
    iz = total_iz(n)
    assert np.max(np.abs(rho @ iz - iz @ rho)) < 1e-15
    # all-up state carries the largest weight
    assert np.argmax(np.diag(rho).real) == 0


@pytest.mark.parametrize("n", [2, 5, 8])
def test_polarization_monotone(n):
    bs = np.linspace(0, 40, 81)
    pol = [np.trace(equilibrium_state(n, ThermalConfig(b)) @ total_iz(n)).real for b in bs]
    assert np.all(np.diff(pol)[bs[1:] < 30] > 0)
    assert np.all(np.diff(pol) >= -1e-14)
    assert abs(pol[-1] - n / 2) < 1e-6
