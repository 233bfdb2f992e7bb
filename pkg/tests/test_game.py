import math

import numpy as np
import pytest

from pauliham.amplify import amplify
from pauliham.game import (
    GameRound,
    GameTranscript,
    accept_prob_exact,
    play_round,
    sample_term,
    shot_rng,
    simulate,
)
from pauliham.paulis import (
    Hamiltonian,
    hadamard_power,
    linear_combine,
    pauli_1_norm,
    parse_pauli,
)
from pauliham.spectra import StateVector, extremal_eigs, pauli_expectation

from conftest import kron_dense, random_hamiltonian, random_state


def _z() -> Hamiltonian:
    return Hamiltonian.from_labels({"Z": 1.0})


class TestGameRound:
    def test_consistency_enforced(self):
        p = parse_pauli("Z")
        GameRound(p, 1, 1, True)
        with pytest.raises(ValueError):
            GameRound(p, 1, -1, True)
        with pytest.raises(ValueError):
            GameRound(p, 0, 1, False)


class TestAcceptProbExact:
    def test_z_on_ground(self):
        assert accept_prob_exact(_z(), StateVector.basis(1, 0)) == 1.0

    def test_zero_bias(self):
        # <X> vanishes on |0>, so the game is a fair coin
        assert accept_prob_exact(
            Hamiltonian.from_labels({"X": 1.0}), StateVector.basis(1, 0)
        ) == pytest.approx(0.5)

    def test_hadamard_top_eigenvector(self):
        # oracle: eigenvector from the independent kron matrix, then the formula
        h = hadamard_power(1)
        vals, vecs = np.linalg.eigh(kron_dense(h))
        psi = StateVector.normalized(1, vecs[:, -1])
        want = 0.5 + vals[-1] / (2.0 * pauli_1_norm(h))
        got = accept_prob_exact(h, psi)
        assert got == pytest.approx(want, abs=1e-12)
        assert got == pytest.approx(0.8535533905932737, abs=1e-12)

    def test_zero_hamiltonian_rejected(self):
        zero = linear_combine([(1.0, _z()), (-1.0, _z())])
        with pytest.raises(ValueError):
            accept_prob_exact(zero, StateVector.basis(1, 0))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            accept_prob_exact(_z(), StateVector.basis(2, 0))

    def test_closed_equals_termwise(self, rng):
        # both sides of the acceptance identity, recomputed independently
        for i in range(20):
            n = int(rng.integers(1, 5))
            h = random_hamiltonian(rng, n, include_identity=(i % 3 == 0))
            psi = random_state(rng, n)
            lam = pauli_1_norm(h)
            closed = 0.5 + sum(
                c * pauli_expectation(p, psi) for p, c in h.terms.items()
            ) / (2.0 * lam)
            termwise = sum(
                (abs(c) / lam) * (0.5 + 0.5 * math.copysign(1.0, c) * pauli_expectation(p, psi))
                for p, c in h.terms.items()
            )
            assert abs(closed - termwise) <= 1e-12
            assert accept_prob_exact(h, psi) == pytest.approx(closed, abs=1e-12)

    def test_scale_invariance(self, rng):
        for theta in (0.1, 3.0, 250.0):
            h = random_hamiltonian(rng, 2)
            psi = random_state(rng, 2)
            scaled = linear_combine([(theta, h)])
            assert accept_prob_exact(scaled, psi) == pytest.approx(
                accept_prob_exact(h, psi), abs=1e-12
            )

    def test_bias_sign_matches_energy(self, rng):
        from pauliham.spectra import expectation

        for _ in range(20):
            h = random_hamiltonian(rng, 3)
            psi = random_state(rng, 3)
            bias = accept_prob_exact(h, psi) - 0.5
            energy = expectation(h, psi)
            if abs(energy) > 1e-9:
                assert math.copysign(1.0, bias) == math.copysign(1.0, energy)

    def test_top_eigenvector_maximizes(self, rng):
        h = random_hamiltonian(rng, 3)
        res = extremal_eigs(h)
        top = accept_prob_exact(h, res.eigvec_max)
        assert top == pytest.approx(
            0.5 + res.lambda_max / (2.0 * pauli_1_norm(h)), abs=1e-12
        )
        for _ in range(10):
            assert accept_prob_exact(h, random_state(rng, 3)) <= top + 1e-12


class TestSampleTerm:
    def test_single_term_always(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            term, sign = sample_term(_z(), rng)
            assert term.label == "Z" and sign == 1

    def test_weighted_three_to_one(self):
        h = Hamiltonian.from_labels({"X": 3.0, "Z": 1.0})
        rng = np.random.default_rng(11)
        draws = sum(sample_term(h, rng)[0].label == "X" for _ in range(100_000))
        f = draws / 100_000
        sigma = math.sqrt(0.75 * 0.25 / 100_000)
        assert abs(f - 0.75) <= 4 * sigma

    def test_signed_half_half(self):
        h = Hamiltonian.from_labels({"X": 1.0, "Z": -1.0})
        rng = np.random.default_rng(23)
        counts = {"X": 0, "Z": 0}
        signs = set()
        for _ in range(100_000):
            term, sign = sample_term(h, rng)
            counts[term.label] += 1
            signs.add((term.label, sign))
        assert signs == {("X", 1), ("Z", -1)}
        # chi-square against the fifty-fifty target, 1 dof
        expected = 50_000.0
        chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
        assert chi2 < 16.0  # 4-sigma-equivalent threshold for 1 dof

    def test_zero_rejected(self):
        zero = linear_combine([(1.0, _z()), (-1.0, _z())])
        with pytest.raises(ValueError):
            sample_term(zero, np.random.default_rng(0))


class TestPlayRound:
    def test_deterministic_accept(self):
        psi = StateVector.basis(1, 0)
        for shot in range(50):
            r = play_round(_z(), psi, shot_rng(3, shot))
            assert r.outcome == 1 and r.accepted

    def test_fair_coin_on_x(self):
        h = Hamiltonian.from_labels({"X": 1.0})
        psi = StateVector.basis(1, 0)
        accepts = sum(
            play_round(h, psi, shot_rng(5, shot)).accepted for shot in range(20_000)
        )
        f = accepts / 20_000
        assert abs(f - 0.5) <= 4 * math.sqrt(0.25 / 20_000)

    def test_never_accepts_excited_state(self):
        psi = StateVector.basis(1, 1)
        for shot in range(50):
            r = play_round(_z(), psi, shot_rng(9, shot))
            assert r.outcome == -1 and not r.accepted

    def test_identity_term_outcome_is_plus_one(self):
        # amplified operators always carry an identity term; measuring it is
        # deterministic, acceptance depends only on the coefficient sign
        h = amplify(_z(), 2)
        assert h.coefficient(parse_pauli("II")) == pytest.approx(-0.5)
        psi = StateVector.basis(2, 3)
        seen_identity = 0
        for shot in range(300):
            r = play_round(h, psi, shot_rng(21, shot))
            if r.sampled_term.is_identity():
                seen_identity += 1
                assert r.outcome == 1
                assert r.coeff_sign == -1 and not r.accepted
        assert seen_identity > 0


class TestSimulate:
    def test_all_accept(self):
        t = simulate(_z(), StateVector.basis(1, 0), 500, seed=1)
        assert t.accept_frequency == 1.0
        assert t.exact_probability == 1.0
        assert t.std_error == 0.0
        assert len(t.rounds) == 500

    def test_seed_reproducible(self):
        h = hadamard_power(1)
        psi = extremal_eigs(h).eigvec_max
        a = simulate(h, psi, 2000, seed=42)
        b = simulate(h, psi, 2000, seed=42)
        assert a == b
        c = simulate(h, psi, 2000, seed=43)
        assert c.rounds != a.rounds

    def test_vectorized_equals_sequential(self):
        h = Hamiltonian.from_labels({"X": 1.0, "Z": -0.5, "Y": 0.25})
        psi = StateVector.normalized(1, [1.0, 0.5 - 0.25j])
        t = simulate(h, psi, 64, seed=77)
        replayed = tuple(play_round(h, psi, shot_rng(77, i)) for i in range(64))
        assert t.rounds == replayed

    def test_frequency_tracks_exact(self):
        h = hadamard_power(1)
        psi = extremal_eigs(h).eigvec_max
        t = simulate(h, psi, 200_000, seed=4)
        assert t.std_error == pytest.approx(
            math.sqrt(t.accept_frequency * (1 - t.accept_frequency) / t.shots)
        )
        assert abs(t.accept_frequency - t.exact_probability) <= 4 * t.std_error

    def test_round_records_elided_above_limit(self):
        t = simulate(_z(), StateVector.basis(1, 0), 20_000, seed=2)
        assert t.rounds == ()
        assert t.accept_frequency == 1.0
        forced = simulate(_z(), StateVector.basis(1, 0), 20_000, seed=2, record_rounds=True)
        assert len(forced.rounds) == 20_000

    def test_shots_validated(self):
        with pytest.raises(ValueError):
            simulate(_z(), StateVector.basis(1, 0), 0, seed=0)

    def test_transcript_invariants_validated(self):
        with pytest.raises(ValueError):
            GameTranscript((), 10, 0.5, 0.9, 0.5, 0)  # std_error inconsistent
