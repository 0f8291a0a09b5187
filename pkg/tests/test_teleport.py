import numpy as np
import pytest

from qcryptolab.errors import DimensionError
from qcryptolab.quantum import (
    BELL_STATES,
    I,
    KET_0,
    PHI_PLUS,
    X,
    Y,
    Z,
    StateVector,
    bell_measure,
    fidelity,
    tensor,
)
from qcryptolab.teleport import (
    TeleportOutcome,
    correction_gate,
    teleport,
    teleport_branches,
)


def random_qubit(rng):
    raw = rng.normal(size=2) + 1j * rng.normal(size=2)
    return StateVector(raw / np.sqrt(np.sum(np.abs(raw) ** 2)))


class TestCorrectionGate:
    def test_classical_bits_select_the_four_paulis(self):
        assert correction_gate((0, 0)) is I
        assert correction_gate((0, 1)) is Z
        assert correction_gate((1, 0)) is X
        assert correction_gate((1, 1)) is Y


class TestTeleportBranches:
    def test_four_branches_each_quarter_probability(self):
        rng = np.random.default_rng(5)
        for psi in (KET_0, StateVector([0.6, 0.8]), random_qubit(rng)):
            branches = teleport_branches(psi)
            assert [o.classical_bits for _, o in branches] == [
                (0, 0),
                (0, 1),
                (1, 0),
                (1, 1),
            ]
            for prob, _ in branches:
                assert prob == pytest.approx(0.25, abs=1e-12)

    def test_every_branch_reconstructs_the_input(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            psi = random_qubit(rng)
            for _, outcome in teleport_branches(psi):
                assert fidelity(outcome.corrected_state, psi) == pytest.approx(
                    1, abs=1e-10
                )

    def test_phase_flip_branch_before_correction(self):
        # Outcome 01 hands Bob alpha|0> - beta|1>; the Z correction undoes it.
        branches = dict(
            (o.classical_bits, o) for _, o in teleport_branches(StateVector([0.6, 0.8]))
        )
        np.testing.assert_allclose(
            branches[(0, 1)].pre_correction_state.amps, [0.6, -0.8], atol=1e-12
        )
        np.testing.assert_allclose(
            branches[(0, 1)].corrected_state.amps, [0.6, 0.8], atol=1e-12
        )

    def test_bit_flip_branches_before_correction(self):
        branches = dict(
            (o.classical_bits, o) for _, o in teleport_branches(StateVector([0.6, 0.8]))
        )
        np.testing.assert_allclose(
            branches[(1, 0)].pre_correction_state.amps, [0.8, 0.6], atol=1e-12
        )
        np.testing.assert_allclose(
            branches[(1, 1)].pre_correction_state.amps, [-0.8, 0.6], atol=1e-12
        )

    def test_y_correction_is_exact_up_to_global_phase(self):
        psi = StateVector([0.6, 0.8])
        branches = dict(
            (o.classical_bits, o) for _, o in teleport_branches(psi)
        )
        corrected = branches[(1, 1)].corrected_state
        np.testing.assert_allclose(corrected.amps, -1j * psi.amps, atol=1e-12)
        assert fidelity(corrected, psi) == pytest.approx(1, abs=1e-12)

    def test_rejects_multi_qubit_input(self):
        with pytest.raises(DimensionError):
            teleport_branches(PHI_PLUS)


class TestTeleport:
    def test_deterministic_given_seed(self):
        psi = StateVector([0.6, 0.8])
        a = teleport(psi, np.random.default_rng(99))
        b = teleport(psi, np.random.default_rng(99))
        assert a.classical_bits == b.classical_bits
        np.testing.assert_array_equal(a.corrected_state.amps, b.corrected_state.amps)

    def test_trivial_input_always_arrives(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            outcome = teleport(KET_0, rng)
            assert fidelity(outcome.corrected_state, KET_0) == pytest.approx(
                1, abs=1e-10
            )

    def test_random_inputs_always_arrive(self):
        rng = np.random.default_rng(23)
        for _ in range(200):
            psi = random_qubit(rng)
            outcome = teleport(psi, rng)
            assert outcome.classical_bits in BELL_STATES
            assert fidelity(outcome.corrected_state, psi) == pytest.approx(
                1, abs=1e-10
            )

    def test_sampled_outcome_matches_its_branch(self):
        psi = StateVector([0.6, 0.8])
        branches = dict(
            (o.classical_bits, o) for _, o in teleport_branches(psi)
        )
        rng = np.random.default_rng(31)
        for _ in range(20):
            outcome = teleport(psi, rng)
            reference = branches[outcome.classical_bits]
            np.testing.assert_array_equal(
                outcome.pre_correction_state.amps,
                reference.pre_correction_state.amps,
            )

    def test_outcome_histogram_is_uniform(self):
        rng = np.random.default_rng(11)
        psi = StateVector([0.6, 0.8])
        counts = {bits: 0 for bits in BELL_STATES}
        trials = 1000
        for _ in range(trials):
            counts[teleport(psi, rng).classical_bits] += 1
        for bits, count in counts.items():
            assert count / trials == pytest.approx(0.25, abs=0.05)


class TestAliceSideCollapse:
    def test_measured_pair_holds_a_bare_bell_state(self):
        # After the measurement the full register factorizes as (Bell state
        # on Alice's pair) x (Bob's qubit): nothing about the input survives
        # on Alice's side.
        rng = np.random.default_rng(41)
        for _ in range(25):
            psi = random_qubit(rng)
            joint = tensor(psi, PHI_PLUS)
            bits, post = bell_measure(joint, (0, 1), rng)
            branches = dict(
                (o.classical_bits, o) for _, o in teleport_branches(psi)
            )
            expected = tensor(
                BELL_STATES[bits], branches[bits].pre_correction_state
            )
            assert fidelity(post, expected) == pytest.approx(1, abs=1e-10)
