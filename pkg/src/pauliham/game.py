"""The energy-measurement game against an honest state-vector prover.

One round: draw a term P with probability |beta_P| / sum|beta_P|, measure
P on a fresh copy of psi to get a bit b in {+1, -1}, accept iff
b = sign(beta_P).  The acceptance probability works out to

    Pr[accept] = 1/2 + <psi|H|psi> / (2 ||H||_P1),

so the game's bias away from a fair coin is the energy measured on the
scale of the Pauli 1-norm, not the operator norm.

Randomness is counter-based for reproducibility: a simulation seeded with
``seed`` assigns shot i the Philox counter block i (4 uniform doubles, of
which a round consumes two).  Workers splitting shots [a, b) therefore
reproduce the sequential transcript bit for bit by starting their
generator at ``Philox(key=seed).advance(a)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .paulis import Hamiltonian, PauliString, pauli_1_norm, term_distribution
from .spectra import StateVector, pauli_expectation

# JSON reports and in-memory transcripts keep per-round records only up to
# this many shots; aggregates are always exact.
ROUND_RECORD_LIMIT = 10_000


@dataclass(frozen=True)
class GameRound:
    """One sampled term, its coefficient sign, the outcome bit, and the verdict."""

    sampled_term: PauliString
    coeff_sign: int
    outcome: int
    accepted: bool

    def __post_init__(self):
        if self.coeff_sign not in (-1, 1) or self.outcome not in (-1, 1):
            raise ValueError("coeff_sign and outcome must be +1 or -1")
        if self.accepted != (self.outcome == self.coeff_sign):
            raise ValueError("accepted flag inconsistent with outcome and sign")


@dataclass(frozen=True)
class GameTranscript:
    """Aggregate of seeded rounds plus the exact acceptance probability.

    ``rounds`` may be empty when per-round records were elided for large
    shot counts; the aggregate fields are always computed from all shots.
    """

    rounds: tuple[GameRound, ...]
    shots: int
    accept_frequency: float
    std_error: float
    exact_probability: float
    seed: int

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError(f"shots must be >= 1, got {self.shots}")
        if not 0.0 <= self.accept_frequency <= 1.0:
            raise ValueError(f"accept frequency {self.accept_frequency} outside [0, 1]")
        f = self.accept_frequency
        expected = math.sqrt(f * (1.0 - f) / self.shots)
        if abs(self.std_error - expected) > 1e-12:
            raise ValueError("std_error inconsistent with sqrt(f(1-f)/shots)")


def accept_prob_exact(h: Hamiltonian, psi: StateVector) -> float:
    """Exact acceptance probability 1/2 + <H>/(2 ||H||_P1).

    Also evaluates the term-wise form sum_P Pr[P] (1/2 + sign(beta_P) <P>/2)
    and insists the two agree to 1e-12; they are the same sum rearranged, so
    disagreement signals an internal bug.
    """
    if h.n != psi.n:
        raise ValueError(f"qubit counts differ: {h.n} vs {psi.n}")
    paulis, signs, probs = term_distribution(h)  # raises on the zero Hamiltonian
    expectations = np.array([pauli_expectation(p, psi) for p in paulis])
    coeffs = np.array([h.terms[p] for p in paulis])
    lam = pauli_1_norm(h)
    closed = 0.5 + float(coeffs @ expectations) / (2.0 * lam)
    termwise = float(probs @ (0.5 + 0.5 * signs * expectations))
    if abs(closed - termwise) > 1e-12:
        raise ArithmeticError(
            f"closed-form and term-wise acceptance probabilities differ: "
            f"{closed!r} vs {termwise!r}"
        )
    return min(1.0, max(0.0, closed))


def sample_term(h: Hamiltonian, rng: np.random.Generator) -> tuple[PauliString, int]:
    """Draw one term with probability proportional to |beta_P|; one uniform consumed."""
    paulis, signs, probs = term_distribution(h)
    cum = np.cumsum(probs)
    cum[-1] = 1.0
    i = min(int(np.searchsorted(cum, rng.random(), side="right")), len(paulis) - 1)
    return paulis[i], int(signs[i])


def play_round(h: Hamiltonian, psi: StateVector, rng: np.random.Generator) -> GameRound:
    """Play one round on a fresh copy of psi; consumes exactly two uniforms."""
    term, sign = sample_term(h, rng)
    p_plus = 0.5 * (1.0 + pauli_expectation(term, psi))
    outcome = 1 if rng.random() < p_plus else -1
    return GameRound(term, sign, outcome, outcome == sign)


def shot_rng(seed: int, shot: int) -> np.random.Generator:
    """Generator positioned at the given shot's counter block of the seed's stream."""
    return np.random.Generator(np.random.Philox(key=seed).advance(shot))


def simulate(
    h: Hamiltonian,
    psi: StateVector,
    shots: int,
    seed: int,
    *,
    record_rounds: bool | None = None,
) -> GameTranscript:
    """Seed-deterministic transcript of many rounds.

    Equivalent, bit for bit, to ``play_round(h, psi, shot_rng(seed, i))``
    for i in range(shots); the rounds are evaluated vectorized.  Per-round
    records are kept when ``record_rounds`` is true, or by default when
    shots <= ROUND_RECORD_LIMIT.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    paulis, signs, probs = term_distribution(h)
    cum = np.cumsum(probs)
    cum[-1] = 1.0
    expectations = np.array([pauli_expectation(p, psi) for p in paulis])
    exact = accept_prob_exact(h, psi)

    uniforms = np.random.Generator(np.random.Philox(key=seed)).random(4 * shots)
    uniforms = uniforms.reshape(shots, 4)
    term_idx = np.minimum(
        np.searchsorted(cum, uniforms[:, 0], side="right"), len(paulis) - 1
    )
    p_plus = 0.5 * (1.0 + expectations[term_idx])
    outcomes = np.where(uniforms[:, 1] < p_plus, 1, -1)
    round_signs = signs[term_idx]
    accepted = outcomes == round_signs

    freq = float(accepted.mean())
    if record_rounds is None:
        record_rounds = shots <= ROUND_RECORD_LIMIT
    rounds = ()
    if record_rounds:
        rounds = tuple(
            GameRound(paulis[t], int(s), int(o), bool(a))
            for t, s, o, a in zip(term_idx, round_signs, outcomes, accepted)
        )
    return GameTranscript(
        rounds=rounds,
        shots=shots,
        accept_frequency=freq,
        std_error=math.sqrt(freq * (1.0 - freq) / shots),
        exact_probability=exact,
        seed=seed,
    )
