"""How far apart the operator norm and the Pauli 1-norm can drift.

The single-qubit operator (X + Z)/sqrt(2) has unit operator norm but Pauli
1-norm sqrt(2), and tensor powers amplify that gap exponentially: the
operator norm stays pinned at 1 while the coefficient mass grows like
2^(n/2).  Any protocol whose acceptance bias is measured on the 1-norm
scale loses that factor.
"""

import numpy as np

from pauliham import extremal_eigs, hadamard_power, pauli_1_norm

print(f"{'n':>3} {'terms':>6} {'operator norm':>14} {'Pauli 1-norm':>13} {'2^(n/2)':>9}")
for n in range(1, 11):
    h = hadamard_power(n)
    res = extremal_eigs(h)
    norm = max(abs(res.lambda_max), abs(res.lambda_min))
    print(
        f"{n:>3} {h.num_terms:>6} {norm:>14.9f} "
        f"{pauli_1_norm(h):>13.6f} {2 ** (n / 2):>9.4f}"
    )

print()
print("The game bias for the top eigenvector is lambda_max / (2 * Pauli 1-norm):")
for n in (1, 4, 8):
    h = hadamard_power(n)
    bias = extremal_eigs(h).lambda_max / (2.0 * pauli_1_norm(h))
    print(f"  n={n}: bias = {bias:.6f}")
print("so the detectable signal shrinks as 2^(-n/2) even though ||H|| = 1.")
