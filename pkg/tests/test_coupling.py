import numpy as np
import pytest

from mq_spinsim.coherence import order_matrix
from mq_spinsim.coupling import CouplingModel, build_hmq, build_hmq_parts, coupling_matrix
from oracles import hmq_bruteforce

NN = CouplingModel.nearest_neighbor()
FULL = CouplingModel.all_pairs()


def test_coupling_examples():
    d = coupling_matrix(3, FULL)
    assert d[0, 2] == 0.125
    assert coupling_matrix(3, NN)[0, 2] == 0
    for model in (NN, FULL):
        assert coupling_matrix(2, model)[0, 1] == 1.0


@pytest.mark.parametrize("n", range(2, 10))
@pytest.mark.parametrize("model", [NN, FULL, CouplingModel("full", 2.5)])
def test_coupling_invariants(n, model):
    d = coupling_matrix(n, model)
    assert np.array_equal(d, d.T)
    assert np.all(np.diag(d) == 0)
    for j in range(n):
        for k in range(n):
            dist = abs(j - k)
            if dist == 0:
                continue
            if model.variant == "full":
                assert d[j, k] == model.d_nn / dist**3
            else:
                assert d[j, k] == (model.d_nn if dist == 1 else 0)


def test_coupling_errors():
    with pytest.raises(ValueError):
        coupling_matrix(1, FULL)
    with pytest.raises(ValueError):
        CouplingModel("ring")
    with pytest.raises(ValueError):
        CouplingModel("nn", 0.0)
    assert CouplingModel("AllPairs").variant == "full"
    assert CouplingModel("NearestNeighbor").variant == "nn"


def test_hmq_two_spins():
    h = build_hmq(coupling_matrix(2, FULL))
    expected = np.zeros((4, 4))
    expected[0, 3] = expected[3, 0] = -0.25
    np.testing.assert_array_equal(h, expected)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("model", [NN, FULL])
def test_hmq_matches_term_by_term_oracle(n, model):
    d = coupling_matrix(n, model)
    assert np.max(np.abs(build_hmq(d) - hmq_bruteforce(d))) < 1e-15


@pytest.mark.parametrize("n", range(2, 10))
@pytest.mark.parametrize("model", [NN, FULL])
def test_hmq_structure(n, model):
    d = coupling_matrix(n, model)
    h2, hm2 = build_hmq_parts(d)
    h = build_hmq(d)
    np.testing.assert_array_equal(h, h.conj().T)
    assert np.trace(h) == 0
    orders = order_matrix(n)
    assert np.all(h[np.abs(orders) != 2] == 0)
    assert np.all(h2[orders != 2] == 0)
    assert np.all(hm2[orders != -2] == 0)


@pytest.mark.parametrize("n", range(3, 9))
def test_nn_equals_truncated_full(n):
    d = coupling_matrix(n, FULL)
    dist = np.abs(np.subtract.outer(np.arange(n), np.arange(n)))
    d[dist >= 2] = 0
    h_nn = build_hmq(coupling_matrix(n, NN))
    assert np.max(np.abs(h_nn - build_hmq(d))) < 1e-15


@pytest.mark.parametrize("alpha", [0.3, 2.0, 7.5])
def test_hmq_linear_in_couplings(alpha):
    d = coupling_matrix(6, FULL)
    assert np.max(np.abs(build_hmq(alpha * d) - alpha * build_hmq(d))) < 1e-14


def test_hmq_rejects_bad_matrix():
    with pytest.raises(ValueError):
        build_hmq(np.array([[0, 1], [2, 0]]))
    with pytest.raises(ValueError):
        build_hmq(np.eye(3))


def test_coupling_sign_does_not_change_observables():
    from mq_spinsim import coherence_intensities, concurrence, eigendecompose, propagator_at, reduce_to_pair
    from mq_spinsim.thermal import equilibrium_state
    from mq_spinsim.spin_basis import total_iz

    d = coupling_matrix(4, CouplingModel("full"))
    rho0, rz = equilibrium_state(4), total_iz(4)
    out = []
    for sign in (1.0, -1.0):
        u = propagator_at(eigendecompose(build_hmq(sign * d)), 2.7)
        rho, z = u @ rho0 @ u.conj().T, u @ rz @ u.conj().T
        out.append((coherence_intensities(rho, z).values, concurrence(reduce_to_pair(rho, 1, 3)).c))
    np.testing.assert_allclose(out[0][0], out[1][0], atol=1e-12)
    assert abs(out[0][1] - out[1][1]) < 1e-10
