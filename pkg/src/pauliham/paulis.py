"""Pauli string and Hamiltonian algebra on symplectic bit masks.

A Pauli string on n qubits is encoded as two integer bit masks: bit i of
``x_mask``/``z_mask`` gives the (x, z) code of the operator on qubit i,
with (0,0)=I, (1,0)=X, (0,1)=Z and (1,1)=Y.  Qubit i corresponds to
position i of the letter label, so ``parse_pauli("XZ")`` puts X on qubit 0.

The single-site convention is the Hermitian one,

    sigma(x, z) = i^(x*z) X^x Z^z,

so every encoded string is Hermitian and squares to the identity, and the
product of two strings is a third string times a power of i (e.g.
X*Z = -iY).  Keeping the basis Hermitian is what lets Hamiltonian
coefficients stay real.

Python integers are arbitrary precision, so the masks hold any qubit
count; only the dense routines in :mod:`pauliham.spectra` are limited to
small n.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

PAULI_CHARS = "IXYZ"

# Coefficients with magnitude <= this are dropped from canonical term maps.
DEFAULT_PRUNE_TOLERANCE = 1e-12

# Tensor products and polynomial expansion refuse to materialize more
# terms than this; the (m+1)^k blow-up of repeated tensoring is inherent
# to the constructions built on top of this module.
DEFAULT_TERM_CAP = int(os.environ.get("PAULIHAM_TERM_CAP", str(2**22)))

_PHASE_VALUES = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)


class PauliParseError(ValueError):
    """A Pauli label is empty or contains a letter outside I, X, Y, Z."""


class DimensionMismatchError(ValueError):
    """Operands act on different qubit counts."""


class CapacityError(RuntimeError):
    """An operation would exceed the configured term or dimension cap."""


class HermiticityError(ArithmeticError):
    """A result that must be Hermitian has a non-cancelling imaginary part."""


@dataclass(frozen=True)
class PauliString:
    """Hermitian tensor product of single-qubit Paulis, as two bit masks.

    Attributes:
        n: Number of qubits (label length).
        x_mask: Bit i set iff qubit i carries X or Y.
        z_mask: Bit i set iff qubit i carries Z or Y.
    """

    n: int
    x_mask: int
    z_mask: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be >= 1, got {self.n}")
        full = (1 << self.n) - 1
        if not 0 <= self.x_mask <= full or not 0 <= self.z_mask <= full:
            raise ValueError(f"mask out of range for n={self.n}")

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0)

    @property
    def label(self) -> str:
        return format_pauli(self)

    def weight(self) -> int:
        """Number of non-identity sites."""
        return (self.x_mask | self.z_mask).bit_count()

    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    def __str__(self) -> str:
        return self.label

    def __repr__(self) -> str:
        return f"PauliString({self.label!r})"


@dataclass(frozen=True)
class Phase:
    """A power of i: the value i**exponent with exponent mod 4."""

    exponent: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % 4)

    @property
    def value(self) -> complex:
        return _PHASE_VALUES[self.exponent]

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.exponent + other.exponent)

    def __repr__(self) -> str:
        return f"Phase({('1', 'i', '-1', '-i')[self.exponent]})"


def parse_pauli(text: str) -> PauliString:
    """Parse a label over I, X, Y, Z into a PauliString.

    Raises:
        PauliParseError: empty label, or an illegal character (the message
            names the 1-based offending position).
    """
    if not text:
        raise PauliParseError("empty Pauli label")
    x = z = 0
    for i, ch in enumerate(text):
        if ch == "I":
            continue
        if ch == "X":
            x |= 1 << i
        elif ch == "Y":
            x |= 1 << i
            z |= 1 << i
        elif ch == "Z":
            z |= 1 << i
        else:
            raise PauliParseError(
                f"illegal character {ch!r} at position {i + 1} (expected I, X, Y or Z)"
            )
    return PauliString(len(text), x, z)


def format_pauli(p: PauliString) -> str:
    """Inverse of parse_pauli."""
    site = "IXZY"  # indexed by x + 2z
    out = []
    for i in range(p.n):
        xi = (p.x_mask >> i) & 1
        zi = (p.z_mask >> i) & 1
        out.append(site[xi + 2 * zi])
    return "".join(out)


def _require_same_n(p: PauliString, q: PauliString) -> None:
    if p.n != q.n:
        raise DimensionMismatchError(f"qubit counts differ: {p.n} vs {q.n}")


def pauli_mul(p: PauliString, q: PauliString) -> tuple[Phase, PauliString]:
    """Product of two Pauli strings: P*Q = i^e * R.

    The masks of R are the XOR of the input masks; the exponent e follows
    from sigma(x,z) = i^(x*z) X^x Z^z and Z^z X^x = (-1)^(z&x) X^x Z^z,
    summed over sites:

        e = |x_p & z_p| + |x_q & z_q| - |x_r & z_r| + 2 |z_p & x_q|  (mod 4).

    Squaring any string gives (Phase(1), identity).
    """
    _require_same_n(p, q)
    xr = p.x_mask ^ q.x_mask
    zr = p.z_mask ^ q.z_mask
    e = (
        (p.x_mask & p.z_mask).bit_count()
        + (q.x_mask & q.z_mask).bit_count()
        - (xr & zr).bit_count()
        + 2 * (p.z_mask & q.x_mask).bit_count()
    )
    return Phase(e), PauliString(p.n, xr, zr)


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff the symplectic form <x_p, z_q> + <x_q, z_p> is even."""
    _require_same_n(p, q)
    return ((p.x_mask & q.z_mask) ^ (p.z_mask & q.x_mask)).bit_count() % 2 == 0


def _merged(
    pairs: Iterable[tuple[PauliString, complex]], tolerance: float
) -> dict[PauliString, complex]:
    acc: dict[PauliString, complex] = {}
    for pauli, coeff in pairs:
        acc[pauli] = acc.get(pauli, 0.0) + coeff
    return {p: c for p, c in acc.items() if abs(c) > tolerance}


@dataclass(frozen=True)
class Hamiltonian:
    """Canonical real-weighted sum of Pauli strings.

    The term map is canonical: each string appears at most once and no
    stored coefficient has magnitude <= ``prune_tolerance``.  Because the
    Pauli strings form an orthogonal operator basis, this decomposition is
    unique, which makes the Pauli 1-norm below a plain coefficient sum.

    Instances are immutable; do not mutate ``terms`` after construction.
    """

    n: int
    terms: Mapping[PauliString, float]
    prune_tolerance: float = DEFAULT_PRUNE_TOLERANCE

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be >= 1, got {self.n}")
        clean: dict[PauliString, float] = {}
        for pauli, coeff in self.terms.items():
            if pauli.n != self.n:
                raise DimensionMismatchError(
                    f"term {pauli.label} has {pauli.n} qubits, expected {self.n}"
                )
            c = float(coeff)
            if not math.isfinite(c):
                raise ValueError(f"non-finite coefficient for {pauli.label}")
            if abs(c) > self.prune_tolerance:
                clean[pauli] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def from_pairs(
        cls,
        n: int,
        pairs: Iterable[tuple[PauliString, float]],
        prune_tolerance: float = DEFAULT_PRUNE_TOLERANCE,
    ) -> "Hamiltonian":
        """Build from (string, coefficient) pairs, merging duplicates by summation."""
        return cls(n, _merged(pairs, prune_tolerance), prune_tolerance)

    @classmethod
    def from_labels(
        cls,
        labels: Mapping[str, float],
        prune_tolerance: float = DEFAULT_PRUNE_TOLERANCE,
    ) -> "Hamiltonian":
        """Build from a {label: coefficient} mapping, e.g. {"XX": 1.0, "ZZ": 1.0}."""
        if not labels:
            raise ValueError("cannot infer qubit count from an empty label map")
        n = len(next(iter(labels)))
        return cls.from_pairs(
            n, ((parse_pauli(s), c) for s, c in labels.items()), prune_tolerance
        )

    @classmethod
    def identity(cls, n: int, coeff: float = 1.0) -> "Hamiltonian":
        return cls(n, {PauliString.identity(n): coeff})

    @property
    def num_terms(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, p: PauliString) -> float:
        return self.terms.get(p, 0.0)

    def __repr__(self) -> str:
        return f"Hamiltonian(n={self.n}, terms={self.num_terms})"


@dataclass(frozen=True)
class PauliOperator:
    """Complex-weighted Pauli sum; intermediate results of operator products.

    Hermitian iff every coefficient is (numerically) real; use
    :meth:`to_hamiltonian` to restore the real-weighted form once the
    imaginary parts have cancelled.
    """

    n: int
    terms: Mapping[PauliString, complex]
    prune_tolerance: float = DEFAULT_PRUNE_TOLERANCE

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"qubit count must be >= 1, got {self.n}")
        clean: dict[PauliString, complex] = {}
        for pauli, coeff in self.terms.items():
            if pauli.n != self.n:
                raise DimensionMismatchError(
                    f"term {pauli.label} has {pauli.n} qubits, expected {self.n}"
                )
            c = complex(coeff)
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError(f"non-finite coefficient for {pauli.label}")
            if abs(c) > self.prune_tolerance:
                clean[pauli] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def from_hamiltonian(cls, h: Hamiltonian) -> "PauliOperator":
        return cls(h.n, {p: complex(c) for p, c in h.terms.items()}, h.prune_tolerance)

    def max_imag(self) -> float:
        return max((abs(c.imag) for c in self.terms.values()), default=0.0)

    def is_hermitian(self, tolerance: float = 1e-10) -> bool:
        return self.max_imag() <= tolerance

    def to_hamiltonian(self, imag_tolerance: float = 1e-10) -> Hamiltonian:
        """Drop imaginary residue; raise if any exceeds imag_tolerance."""
        residue = self.max_imag()
        if residue > imag_tolerance:
            raise HermiticityError(
                f"imaginary residue {residue:.3e} exceeds {imag_tolerance:.3e}"
            )
        return Hamiltonian(
            self.n, {p: c.real for p, c in self.terms.items()}, self.prune_tolerance
        )


def sorted_terms(h: Hamiltonian) -> list[tuple[PauliString, float]]:
    """Terms in canonical (label-sorted) order; the order used for files and sampling."""
    return sorted(h.terms.items(), key=lambda item: item[0].label)


def pauli_1_norm(h: Hamiltonian) -> float:
    """Sum of absolute coefficients over the canonical decomposition.

    Always an upper bound on the operator norm; zero iff h is the zero
    operator.
    """
    return float(sum(abs(c) for c in h.terms.values()))


def term_distribution(h: Hamiltonian):
    """Importance distribution over terms: Pr[P] = |beta_P| / sum |beta_P|.

    Returns (paulis, signs, probs) in canonical order.  Raises ValueError
    on the zero Hamiltonian.
    """
    items = sorted_terms(h)
    if not items:
        raise ValueError("zero Hamiltonian has no term distribution")
    coeffs = np.array([c for _, c in items])
    weights = np.abs(coeffs)
    return (
        [p for p, _ in items],
        np.sign(coeffs).astype(int),
        weights / weights.sum(),
    )


def tensor(
    a: Hamiltonian, b: Hamiltonian, *, term_cap: int | None = None
) -> Hamiltonian:
    """Tensor product A (x) B on n_a + n_b qubits.

    Qubits of ``a`` keep their positions; qubits of ``b`` are shifted up by
    ``a.n``.  Concatenation of labels is injective, so the Pauli 1-norm is
    exactly multiplicative.

    Raises:
        CapacityError: the product would hold more than ``term_cap`` terms.
    """
    cap = DEFAULT_TERM_CAP if term_cap is None else term_cap
    count = a.num_terms * b.num_terms
    if count > cap:
        raise CapacityError(f"tensor product needs {count} terms, cap is {cap}")
    n = a.n + b.n
    tol = max(a.prune_tolerance, b.prune_tolerance)
    out: dict[PauliString, float] = {}
    for pa, ca in a.terms.items():
        for pb, cb in b.terms.items():
            key = PauliString(
                n, pa.x_mask | (pb.x_mask << a.n), pa.z_mask | (pb.z_mask << a.n)
            )
            out[key] = ca * cb
    return Hamiltonian(n, out, tol)


def tensor_power(a: Hamiltonian, k: int, *, term_cap: int | None = None) -> Hamiltonian:
    """k-fold tensor power of a Hamiltonian."""
    if k < 1:
        raise ValueError(f"tensor power needs k >= 1, got {k}")
    cap = DEFAULT_TERM_CAP if term_cap is None else term_cap
    if a.num_terms > 1 and a.num_terms**k > cap:
        raise CapacityError(
            f"tensor power needs {a.num_terms}^{k} terms, cap is {cap}"
        )
    out = a
    for _ in range(k - 1):
        out = tensor(out, a, term_cap=cap)
    return out


def linear_combine(
    coeff_pairs: Sequence[tuple[float, Hamiltonian]],
    *,
    prune_tolerance: float | None = None,
) -> Hamiltonian:
    """Coefficient-wise sum c_1*H_1 + ... with canonical merging and pruning."""
    if not coeff_pairs:
        raise ValueError("linear_combine needs at least one (coeff, Hamiltonian) pair")
    n = coeff_pairs[0][1].n
    for _, h in coeff_pairs:
        if h.n != n:
            raise DimensionMismatchError(f"qubit counts differ: {h.n} vs {n}")
    tol = (
        max(h.prune_tolerance for _, h in coeff_pairs)
        if prune_tolerance is None
        else prune_tolerance
    )
    pairs = (
        (p, c * coeff)
        for coeff, h in coeff_pairs
        for p, c in h.terms.items()
    )
    return Hamiltonian.from_pairs(n, pairs, tol)


def _operator_product(
    a: Mapping[PauliString, complex],
    b: Mapping[PauliString, complex],
    n: int,
    cap: int,
    tolerance: float,
) -> dict[PauliString, complex]:
    # Pairwise products bound the work done, so the cap applies pre-merge.
    if len(a) * len(b) > cap:
        raise CapacityError(
            f"operator product needs {len(a) * len(b)} pairwise terms, cap is {cap}"
        )
    out: dict[PauliString, complex] = {}
    for pa, ca in a.items():
        for pb, cb in b.items():
            phase, r = pauli_mul(pa, pb)
            out[r] = out.get(r, 0.0) + ca * cb * phase.value
    return {p: c for p, c in out.items() if abs(c) > tolerance}


def apply_polynomial(
    h: Hamiltonian,
    poly: Sequence[float],
    *,
    term_cap: int | None = None,
    imag_tolerance: float = 1e-8,
) -> Hamiltonian:
    """Evaluate f(H) = sum_j c_j H^j in the Pauli basis.

    ``poly`` lists c_0..c_d.  Powers of a Hermitian operator are Hermitian,
    so the complex phases introduced by term products must cancel; a
    residual imaginary part above ``imag_tolerance`` signals an algebra bug
    and raises :class:`HermiticityError`.
    """
    if len(poly) == 0:
        raise ValueError("polynomial needs at least the constant coefficient")
    cap = DEFAULT_TERM_CAP if term_cap is None else term_cap
    tol = h.prune_tolerance
    base = {p: complex(c) for p, c in h.terms.items()}
    power: dict[PauliString, complex] = {PauliString.identity(h.n): 1.0 + 0.0j}
    acc: dict[PauliString, complex] = {}
    for j, cj in enumerate(poly):
        if j > 0:
            power = _operator_product(power, base, h.n, cap, tol)
        if cj != 0.0:
            for p, c in power.items():
                acc[p] = acc.get(p, 0.0) + cj * c
    return PauliOperator(h.n, acc, tol).to_hamiltonian(imag_tolerance)


def hadamard_power(n: int, *, term_cap: int | None = None) -> Hamiltonian:
    """n-fold tensor power of (X + Z)/sqrt(2).

    All 2^n strings over {X, Z}, each with coefficient 2^(-n/2); the
    operator norm stays 1 while the Pauli 1-norm grows as 2^(n/2).
    """
    if n < 1:
        raise ValueError(f"hadamard_power needs n >= 1, got {n}")
    cap = DEFAULT_TERM_CAP if term_cap is None else term_cap
    if 2**n > cap:
        raise CapacityError(f"hadamard_power(n={n}) needs {2**n} terms, cap is {cap}")
    coeff = 2.0 ** (-n / 2.0)
    full = (1 << n) - 1
    terms = {
        PauliString(n, full ^ zbits, zbits): coeff for zbits in range(1 << n)
    }
    return Hamiltonian(n, terms)


def xxzz_chain(n: int) -> Hamiltonian:
    """Open chain sum_i (X_i X_{i+1} + Z_i Z_{i+1}); 2(n-1) unit terms."""
    if n < 2:
        raise ValueError(f"xxzz_chain needs n >= 2, got {n}")
    terms: dict[PauliString, float] = {}
    for i in range(n - 1):
        bond = (1 << i) | (1 << (i + 1))
        terms[PauliString(n, bond, 0)] = 1.0
        terms[PauliString(n, 0, bond)] = 1.0
    return Hamiltonian(n, terms)


def random_local(n: int, ell: int, m: int, seed: int) -> Hamiltonian:
    """m seeded random strings acting on exactly ell sites, coefficients uniform in [-1, 1].

    Repeated draws of the same string merge by summation, so the result may
    hold fewer than m terms.
    """
    if not 1 <= ell <= n:
        raise ValueError(f"locality must satisfy 1 <= ell <= n, got ell={ell}, n={n}")
    if m < 1:
        raise ValueError(f"term count must be >= 1, got {m}")
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(m):
        sites = rng.choice(n, size=ell, replace=False)
        codes = rng.integers(1, 4, size=ell)  # 1=X, 2=Y, 3=Z
        x = z = 0
        for site, code in zip(sites, codes):
            if code != 3:
                x |= 1 << int(site)
            if code != 1:
                z |= 1 << int(site)
        pairs.append((PauliString(n, x, z), rng.uniform(-1.0, 1.0)))
    return Hamiltonian.from_pairs(n, pairs)


MODEL_KINDS = ("hadamard_power", "xxzz_chain", "random_local")


def build_model(
    kind: str,
    *,
    n: int,
    ell: int | None = None,
    m: int | None = None,
    seed: int | None = None,
    term_cap: int | None = None,
) -> Hamiltonian:
    """Construct one of the named model families.

    ``hadamard_power`` and ``xxzz_chain`` take only n; ``random_local``
    additionally needs ell, m and seed.
    """
    if kind == "hadamard_power":
        return hadamard_power(n, term_cap=term_cap)
    if kind == "xxzz_chain":
        return xxzz_chain(n)
    if kind == "random_local":
        if ell is None or m is None or seed is None:
            raise ValueError("random_local needs ell, m and seed")
        return random_local(n, ell, m, seed)
    raise ValueError(f"unknown model kind {kind!r}; expected one of {MODEL_KINDS}")
