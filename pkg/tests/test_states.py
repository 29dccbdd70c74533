"""Labeled states, partial trace, and entropy measures."""

import math

import numpy as np
import pytest

from modetangle import (
    BasisLabel,
    BasisMismatchError,
    LabelingError,
    PureState,
    ReducedDensityMatrix,
    apply_local_unitary,
    fidelity,
    partial_trace,
    renyi_entropy,
    tensor,
    von_neumann_entropy,
)

LOG2_3 = 1.584962500721156
ROOT_HALF = 1.0 / math.sqrt(2.0)


def pair_state(amps, dims=(2, 2)):
    return PureState(BasisLabel(("left", "right"), dims), np.asarray(amps, dtype=complex))


def random_state(rng, dims=(2, 2)):
    n = int(np.prod(dims))
    amps = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return PureState(BasisLabel(("left", "right"), dims), amps).normalized()


def random_unitary(rng, d=2):
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


class TestBasisLabel:
    def test_dim_and_axis(self):
        basis = BasisLabel(("a", "b", "c"), (2, 3, 4))
        assert basis.dim == 24
        assert basis.axis("b") == 1

    def test_duplicate_name_rejected(self):
        with pytest.raises(LabelingError, match="duplicate"):
            BasisLabel(("a", "a"), (2, 2))

    def test_unknown_factor_rejected(self):
        with pytest.raises(LabelingError, match="unknown"):
            BasisLabel(("a", "b"), (2, 2)).axis("c")

    def test_length_mismatch_rejected(self):
        with pytest.raises(LabelingError):
            BasisLabel(("a", "b"), (2,))

    def test_too_many_factors_rejected(self):
        with pytest.raises(LabelingError):
            BasisLabel(("a", "b", "c", "d", "e"), (2, 2, 2, 2, 2))


class TestPureState:
    def test_length_must_match_basis(self):
        with pytest.raises(ValueError):
            pair_state([1.0, 0.0, 0.0])

    def test_normalized_unit_norm(self):
        state = pair_state([3.0, 0.0, 4.0, 0.0])
        assert state.normalized().norm == pytest.approx(1.0, abs=1e-12)

    def test_zero_state_rejected(self):
        with pytest.raises(ValueError, match="zero-norm"):
            pair_state([0.0, 0.0, 0.0, 0.0]).normalized()

    def test_amplitudes_frozen(self):
        state = pair_state([1.0, 0.0, 0.0, 0.0])
        with pytest.raises(ValueError):
            state.amplitudes[0] = 2.0


class TestTensor:
    def test_product_of_two_qubits(self):
        a = PureState(BasisLabel(("a",), (2,)), np.array([1.0, 0.0]))
        b = PureState(BasisLabel(("b",), (2,)), np.array([0.0, 1.0]))
        combined = tensor([a, b])
        assert combined.basis.factor_names == ("a", "b")
        np.testing.assert_allclose(combined.amplitudes, [0.0, 1.0, 0.0, 0.0])

    def test_matches_hand_kronecker(self):
        rng = np.random.default_rng(5)
        va = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        vb = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        a = PureState(BasisLabel(("a",), (2,)), va)
        b = PureState(BasisLabel(("b",), (3,)), vb)
        np.testing.assert_allclose(tensor([a, b]).amplitudes, np.kron(va, vb), atol=1e-12)

    def test_duplicate_labels_rejected(self):
        a = PureState(BasisLabel(("a",), (2,)), np.array([1.0, 0.0]))
        with pytest.raises(LabelingError, match="duplicate"):
            tensor([a, a])


class TestPartialTrace:
    def test_bell_pair_is_maximally_mixed(self):
        bell = pair_state([ROOT_HALF, 0.0, 0.0, ROOT_HALF])
        rho = partial_trace(bell, "left")
        np.testing.assert_allclose(rho.entries, np.eye(2) / 2.0, atol=1e-12)

    def test_product_state_is_pure(self):
        state = pair_state([1.0, 0.0, 0.0, 0.0])
        rho = partial_trace(state, "left")
        np.testing.assert_allclose(rho.entries, np.diag([1.0, 0.0]), atol=1e-12)

    def test_three_level_uniform(self):
        # (|2,0> + |1,1> + |0,2>)/sqrt(3) traces to I/3 on either side
        amps = np.zeros(9)
        amps[6] = amps[4] = amps[2] = 1.0 / math.sqrt(3.0)
        state = pair_state(amps, dims=(3, 3))
        rho = partial_trace(state, "right")
        np.testing.assert_allclose(rho.entries, np.eye(3) / 3.0, atol=1e-12)

    def test_random_states_give_valid_density_matrices(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            state = random_state(rng, dims=(3, 4))
            rho = partial_trace(state, "left")
            m = rho.entries
            assert np.max(np.abs(m - m.conj().T)) < 1e-12
            assert np.trace(m).real == pytest.approx(1.0, abs=1e-12)
            assert np.linalg.eigvalsh(m)[0] > -1e-12

    def test_both_sides_share_a_spectrum(self):
        rng = np.random.default_rng(12)
        for _ in range(25):
            state = random_state(rng, dims=(3, 3))
            e_left = von_neumann_entropy(partial_trace(state, "left"))
            e_right = von_neumann_entropy(partial_trace(state, "right"))
            assert e_left == pytest.approx(e_right, abs=1e-10)

    def test_unknown_factor_rejected(self):
        with pytest.raises(LabelingError):
            partial_trace(pair_state([1.0, 0.0, 0.0, 0.0]), "middle")


class TestReducedDensityMatrix:
    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError, match="Hermitian"):
            ReducedDensityMatrix(np.array([[0.5, 1.0], [0.0, 0.5]]))

    def test_wrong_trace_rejected(self):
        with pytest.raises(ValueError, match="trace"):
            ReducedDensityMatrix(np.diag([0.7, 0.7]))

    def test_negative_eigenvalue_rejected(self):
        with pytest.raises(ValueError, match="eigenvalue"):
            ReducedDensityMatrix(np.diag([1.5, -0.5]))

    def test_eigenvalues_clamped(self):
        rho = ReducedDensityMatrix(np.diag([1.0 + 5e-13, -5e-13]))
        assert rho.eigenvalues()[0] == 0.0


class TestVonNeumannEntropy:
    def test_maximally_mixed_qubit(self):
        rho = ReducedDensityMatrix(np.eye(2) / 2.0)
        assert von_neumann_entropy(rho) == pytest.approx(1.0, abs=1e-12)

    def test_pure_state_zero(self):
        rho = ReducedDensityMatrix(np.diag([1.0, 0.0]))
        assert von_neumann_entropy(rho) == 0.0

    def test_uniform_qutrit(self):
        rho = ReducedDensityMatrix(np.eye(3) / 3.0)
        assert von_neumann_entropy(rho) == pytest.approx(LOG2_3, abs=1e-12)

    def test_plateau_spectrum(self):
        # (1/2, 1/4, 1/4) carries exactly 1.5 bits
        rho = ReducedDensityMatrix(np.diag([0.5, 0.25, 0.25]))
        assert von_neumann_entropy(rho) == pytest.approx(1.5, abs=1e-12)

    def test_bounded_by_log_dim(self):
        rng = np.random.default_rng(21)
        for _ in range(25):
            p = rng.random(4)
            rho = ReducedDensityMatrix(np.diag(p / p.sum()))
            assert 0.0 <= von_neumann_entropy(rho) <= 2.0 + 1e-12


class TestRenyiEntropy:
    def test_order_two_uniform(self):
        rho = ReducedDensityMatrix(np.eye(3) / 3.0)
        assert renyi_entropy(rho, 2.0) == pytest.approx(LOG2_3, abs=1e-12)

    def test_order_two_plateau(self):
        # -log2(1/4 + 1/16 + 1/16) = log2(8/3)
        rho = ReducedDensityMatrix(np.diag([0.5, 0.25, 0.25]))
        assert renyi_entropy(rho, 2.0) == pytest.approx(3.0 - LOG2_3, abs=1e-12)

    def test_brackets_von_neumann_near_one(self):
        rng = np.random.default_rng(31)
        spectra = [np.array([0.5, 0.3, 0.2]), np.array([0.4, 0.3, 0.2, 0.1])]
        for _ in range(10):
            p = rng.random(5) + 0.1
            spectra.append(p / p.sum())
        for p in spectra:
            rho = ReducedDensityMatrix(np.diag(p))
            vn = von_neumann_entropy(rho)
            below = renyi_entropy(rho, 1.0 + 1e-4)
            above = renyi_entropy(rho, 1.0 - 1e-4)
            assert below <= vn + 1e-12 <= above + 2e-12
            assert below == pytest.approx(vn, abs=1e-3)
            assert above == pytest.approx(vn, abs=1e-3)

    def test_invalid_orders_rejected(self):
        rho = ReducedDensityMatrix(np.eye(2) / 2.0)
        with pytest.raises(ValueError):
            renyi_entropy(rho, 0.0)
        with pytest.raises(ValueError):
            renyi_entropy(rho, -2.0)
        with pytest.raises(ValueError):
            renyi_entropy(rho, 1.0)


class TestFidelity:
    def test_identical_states(self):
        state = pair_state([ROOT_HALF, 0.0, 0.0, ROOT_HALF])
        assert fidelity(state, state) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_states(self):
        a = pair_state([1.0, 0.0, 0.0, 0.0])
        b = pair_state([0.0, 1.0, 0.0, 0.0])
        assert fidelity(a, b) == 0.0

    def test_half_overlap(self):
        bell = pair_state([ROOT_HALF, 0.0, 0.0, ROOT_HALF])
        basis_state = pair_state([1.0, 0.0, 0.0, 0.0])
        assert fidelity(bell, basis_state) == pytest.approx(0.5, abs=1e-12)

    def test_phase_invariance(self):
        rng = np.random.default_rng(41)
        state = random_state(rng)
        rotated = PureState(state.basis, state.amplitudes * np.exp(1j * 0.7))
        assert fidelity(state, rotated) == pytest.approx(1.0, abs=1e-12)

    def test_basis_mismatch_rejected(self):
        a = pair_state([1.0, 0.0, 0.0, 0.0])
        b = PureState(BasisLabel(("left", "other"), (2, 2)), np.array([1.0, 0, 0, 0]))
        with pytest.raises(BasisMismatchError):
            fidelity(a, b)


class TestLocalUnitaries:
    def test_entropy_invariant_under_local_rotations(self):
        rng = np.random.default_rng(51)
        bell = pair_state([ROOT_HALF, 0.0, 0.0, ROOT_HALF])
        for _ in range(30):
            state = apply_local_unitary(bell, "left", random_unitary(rng))
            state = apply_local_unitary(state, "right", random_unitary(rng))
            entropy = von_neumann_entropy(partial_trace(state, "left"))
            assert entropy == pytest.approx(1.0, abs=1e-10)

    def test_non_unitary_rejected(self):
        bell = pair_state([ROOT_HALF, 0.0, 0.0, ROOT_HALF])
        with pytest.raises(ValueError, match="unitary"):
            apply_local_unitary(bell, "left", np.array([[1.0, 1.0], [0.0, 1.0]]))
