"""Dense and matrix-free spectral computations for Pauli-sum Hamiltonians.

The dense path is the brute-force oracle: build the full 2^n x 2^n matrix
and call the symmetric eigensolver.  It is exact (to machine precision)
but only feasible for small n, capped by ``DEFAULT_DENSE_LIMIT``.  Beyond
that, a shifted power iteration runs matrix-free on top of :func:`matvec`:
X flips basis-state bits, Z applies signs, Y does both plus a phase, so a
term application is a gather plus a sign vector and never materializes a
matrix.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .paulis import (
    CapacityError,
    DimensionMismatchError,
    Hamiltonian,
    PauliString,
    pauli_1_norm,
)

DEFAULT_DENSE_LIMIT = int(os.environ.get("PAULIHAM_DENSE_LIMIT", "12"))
DEFAULT_EIG_TOL = 1e-8
DEFAULT_MAX_ITERS = 100_000

_PHASES = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized complex amplitude vector over the 2^n basis states.

    The amplitude array is copied and marked read-only on construction;
    the Euclidean norm must be 1 within 1e-9.
    """

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.n,):
            raise DimensionMismatchError(
                f"state on {self.n} qubits needs {1 << self.n} amplitudes, got {amps.shape}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"state vector norm {norm!r} is not 1 within 1e-9")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, n: int, index: int) -> "StateVector":
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[index] = 1.0
        return cls(n, amps)

    @classmethod
    def normalized(cls, n: int, amplitudes) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=np.complex128)
        norm = float(np.linalg.norm(amps))
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(n, amps / norm)

    @property
    def dim(self) -> int:
        return 1 << self.n


@dataclass(frozen=True, eq=False)
class SpectralResult:
    """Extremal eigenvalues plus how they were obtained.

    ``eigvec_max`` is populated on the dense path only.  A non-converged
    iterative run is returned with ``converged=False`` rather than raising,
    so callers always see the achieved residual.
    """

    lambda_max: float
    lambda_min: float
    eigvec_max: StateVector | None
    method: str  # "dense" | "iterative"
    iterations: int
    residual: float
    converged: bool = True


def _term_action(p: PauliString, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Column permutation and per-column values of a single Pauli string.

    P|i> = phase * (-1)^<z,i> |i ^ x> with phase = i^|x & z|.
    """
    idx = np.arange(dim, dtype=np.int64)
    signs = 1.0 - 2.0 * (np.bitwise_count(idx & np.int64(p.z_mask)) & 1)
    phase = _PHASES[(p.x_mask & p.z_mask).bit_count() % 4]
    return idx ^ np.int64(p.x_mask), phase * signs


def to_dense(h: Hamiltonian, *, dense_limit: int | None = None) -> np.ndarray:
    """Brute-force 2^n x 2^n Hermitian matrix of a Hamiltonian.

    Raises:
        CapacityError: n exceeds the dense limit.
    """
    limit = DEFAULT_DENSE_LIMIT if dense_limit is None else dense_limit
    if h.n > limit:
        raise CapacityError(f"dense path limited to n <= {limit}, got n={h.n}")
    dim = 1 << h.n
    idx = np.arange(dim, dtype=np.int64)
    mat = np.zeros((dim, dim), dtype=np.complex128)
    for p, c in h.terms.items():
        rows, values = _term_action(p, dim)
        mat[rows, idx] += c * values
    return mat


def _matvec_array(h: Hamiltonian, v: np.ndarray) -> np.ndarray:
    dim = v.shape[0]
    out = np.zeros(dim, dtype=np.complex128)
    for p, c in h.terms.items():
        cols, values = _term_action(p, dim)
        # out[i ^ x] += value_i * v[i], written as a gather on the output side
        out += c * (values * v)[cols]
    return out


def matvec(h: Hamiltonian, v: "StateVector | np.ndarray") -> np.ndarray:
    """Apply H to a state without building the dense matrix."""
    arr = v.amplitudes if isinstance(v, StateVector) else np.asarray(v, np.complex128)
    if arr.shape != (1 << h.n,):
        raise DimensionMismatchError(
            f"vector of shape {arr.shape} does not match n={h.n}"
        )
    return _matvec_array(h, arr)


def pauli_expectation(p: PauliString, psi: StateVector) -> float:
    """<psi|P|psi> for a single Pauli string; always real in [-1, 1]."""
    if p.n != psi.n:
        raise DimensionMismatchError(f"qubit counts differ: {p.n} vs {psi.n}")
    cols, values = _term_action(p, psi.dim)
    val = complex(np.vdot(psi.amplitudes, (values * psi.amplitudes)[cols]))
    if abs(val.imag) > 1e-10:
        raise ArithmeticError(f"Pauli expectation has imaginary residue {val.imag:.3e}")
    return val.real


def expectation(h: Hamiltonian, psi: StateVector) -> float:
    """Energy <psi|H|psi>, accumulated term-wise as sum_P beta_P <P>."""
    if h.n != psi.n:
        raise DimensionMismatchError(f"qubit counts differ: {h.n} vs {psi.n}")
    return float(sum(c * pauli_expectation(p, psi) for p, c in h.terms.items()))


def _power_iteration(
    h: Hamiltonian, shift: float, want_max: bool, tol: float, max_iters: int
) -> tuple[float, int, float, bool]:
    """Power iteration on (H + shift I) or (shift I - H); Rayleigh value of H.

    With shift = ||H||_P1 >= ||H||, the iterated operator is positive
    semidefinite and its top eigenvector is the extremal eigenvector of H
    on the requested side.
    """
    dim = 1 << h.n
    rng = np.random.default_rng(7)  # fixed start for a deterministic contract
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    v /= np.linalg.norm(v)
    lam, residual = 0.0, np.inf
    for it in range(1, max_iters + 1):
        hv = _matvec_array(h, v)
        lam = float(np.vdot(v, hv).real)
        residual = float(np.linalg.norm(hv - lam * v))
        if residual <= tol:
            return lam, it, residual, True
        w = hv + shift * v if want_max else shift * v - hv
        norm_w = np.linalg.norm(w)
        if norm_w == 0.0:  # v is an exact kernel vector of the shifted operator
            v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
            v /= np.linalg.norm(v)
            continue
        v = w / norm_w
    return lam, max_iters, residual, False


def extremal_eigs(
    h: Hamiltonian,
    *,
    tol: float = DEFAULT_EIG_TOL,
    max_iters: int = DEFAULT_MAX_ITERS,
    dense_limit: int | None = None,
    method: str | None = None,
) -> SpectralResult:
    """Largest and smallest eigenvalues of H.

    Dense exact eigensolve when n is within the dense limit, otherwise a
    shifted power iteration per extremal end, shifted by the Pauli 1-norm
    (a cheap certified bound on the operator norm).  ``method`` forces
    "dense" or "iterative" explicitly.
    """
    if h.is_zero():
        raise ValueError("extremal_eigs needs a nonzero Hamiltonian")
    limit = DEFAULT_DENSE_LIMIT if dense_limit is None else dense_limit
    if method is None:
        method = "dense" if h.n <= limit else "iterative"
    if method == "dense":
        vals, vecs = np.linalg.eigh(to_dense(h, dense_limit=limit))
        return SpectralResult(
            lambda_max=float(vals[-1]),
            lambda_min=float(vals[0]),
            eigvec_max=StateVector.normalized(h.n, vecs[:, -1]),
            method="dense",
            iterations=0,
            residual=0.0,
        )
    if method != "iterative":
        raise ValueError(f"unknown method {method!r}; expected 'dense' or 'iterative'")
    shift = pauli_1_norm(h)
    hi, it_hi, r_hi, ok_hi = _power_iteration(h, shift, True, tol, max_iters)
    lo, it_lo, r_lo, ok_lo = _power_iteration(h, shift, False, tol, max_iters)
    return SpectralResult(
        lambda_max=max(hi, lo),
        lambda_min=min(hi, lo),
        eigvec_max=None,
        method="iterative",
        iterations=it_hi + it_lo,
        residual=max(r_hi, r_lo),
        converged=ok_hi and ok_lo,
    )


def operator_norm(h: Hamiltonian, **kwargs) -> float:
    """Spectral norm max(|lambda_max|, |lambda_min|); raises on non-convergence."""
    result = extremal_eigs(h, **kwargs)
    if not result.converged:
        raise RuntimeError(
            f"eigenvalue iteration did not converge (residual {result.residual:.3e})"
        )
    return max(abs(result.lambda_max), abs(result.lambda_min))
