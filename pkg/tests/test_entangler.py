import numpy as np
import pytest

from base.errors import Degenerate, NotHermitian
from entangler import (ObservablePair, assemble_from_unitaries, build_nonfactorable, congruence_residual,
                       dual_basis_form, schmidt_coefficients, verify_transfer)
from hilbert import PAULI_X, PAULI_Z, random_hermitian, random_unitary


def random_instance(n, seed, congruence='transpose'):
    pair = ObservablePair(random_hermitian(n, seed), random_hermitian(n, seed + 1000))
    return build_nonfactorable(pair, random_unitary(n, seed + 2000), congruence=congruence)


def test_bell_pair_from_z_and_x():
    state = build_nonfactorable(ObservablePair(PAULI_Z, PAULI_X))
    np.testing.assert_allclose(state.psi12.amplitudes, np.array([1, 0, 0, 1]) / np.sqrt(2), atol=1e-12)
    np.testing.assert_allclose(state.a_prime, PAULI_Z, atol=1e-12)
    np.testing.assert_allclose(state.b_prime, PAULI_X, atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_transfer_identities(n):
    for trial in range(20):
        state = random_instance(n, seed=100 * n + trial)
        residual_a, residual_b = verify_transfer(state)
        assert residual_a < 1e-9
        assert residual_b < 1e-9
        assert dual_basis_form(state) < 1e-9
        assert congruence_residual(state) < 1e-12


@pytest.mark.parametrize("n", [2, 4])
def test_maximally_entangled(n):
    np.testing.assert_allclose(schmidt_coefficients(random_instance(n, seed=3)), np.full(n, 1 / np.sqrt(n)),
                               atol=1e-12)


def test_primed_observables_keep_spectra():
    state = random_instance(3, seed=9)
    np.testing.assert_allclose(np.linalg.eigvalsh(state.a_prime), np.linalg.eigvalsh(state.pair.a), atol=1e-12)
    np.testing.assert_allclose(np.linalg.eigvalsh(state.b_prime), np.linalg.eigvalsh(state.pair.b), atol=1e-12)


def test_adjoint_congruence_breaks_b_transfer():
    trials = 40
    broken = 0
    for trial in range(trials):
        state = random_instance(3, seed=500 + trial, congruence='adjoint')
        residual_a, residual_b = verify_transfer(state)
        assert residual_a < 1e-9
        broken += residual_b > 1e-3
    assert broken >= 0.95 * trials


def test_arbitrary_unitaries_keep_a_transfer():
    pair = ObservablePair(random_hermitian(3, 1), random_hermitian(3, 2))
    state = assemble_from_unitaries(pair, random_unitary(3, 3), random_unitary(3, 4))
    assert verify_transfer(state)[0] < 1e-9
    assert congruence_residual(state) > 1e-3


def test_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        ObservablePair(np.array([[0, 1], [0, 0]]), PAULI_X)


def test_rejects_degenerate_spectrum():
    with pytest.raises(Degenerate):
        build_nonfactorable(ObservablePair(np.diag([1.0, 1.0, -1.0]), random_hermitian(3, 4)))


def test_phase_twisted_u_breaks_b_transfer():
    rng = np.random.default_rng(17)
    for trial in range(10):
        congruent = random_instance(3, seed=700 + trial)
        phases = np.exp(1j * rng.uniform(0.0, 2 * np.pi, 3))
        state = assemble_from_unitaries(congruent.pair, congruent.u @ np.diag(phases), congruent.v)
        residual_a, residual_b = verify_transfer(state)
        assert residual_a < 1e-9
        assert residual_b > 1e-3
