"""Promise-gap amplification, measured against its closed-form bounds.

A YES instance (top eigenvalue 1) stays at 1 under the shifted tensor
power H' = 2((I+H)/2)^(x k) - I, while a NO instance at 1 - 1/q is pushed
below 2 exp(-k/(2q)) - 1.  The catch: the Pauli 1-norm of H' can blow up
exponentially, which is exactly what renormalizes the amplified gap away
in a measurement game.
"""

import math

from pauliham import (
    AmplifyParams,
    Hamiltonian,
    amplify,
    exact_eigenvalue_map,
    pauli_1_norm,
    verify_amplification,
)

q = 5.0
yes = Hamiltonian.from_labels({"Z": 1.0})            # lambda_max = 1
no = Hamiltonian.from_labels({"Z": 1.0 - 1.0 / q})   # lambda_max = 1 - 1/q

print(f"NO threshold 1 - 1/q = {1 - 1/q}, target bound 2e^(-k/2q) - 1")
print(f"{'k':>3} {'yes lambda_out':>15} {'no lambda_out':>14} {'no upper bound':>15}")
for k in (1, 2, 5, 10):
    lam_yes = exact_eigenvalue_map(1.0, k)
    lam_no = exact_eigenvalue_map(1.0 - 1.0 / q, k)
    bound = 2.0 * math.exp(-k / (2.0 * q)) - 1.0
    print(f"{k:>3} {lam_yes:>15.6f} {lam_no:>14.6f} {bound:>15.6f}")

print()
print("Full verification report for the NO instance at k = 10:")
report = verify_amplification(no, AmplifyParams(k=10, p=math.inf, q=q))
for field in (
    "promise_case", "lambda_in", "lambda_out_exact", "no_upper_bound",
    "no_lower_bound", "pauli1_in", "pauli1_out", "pauli1_bound",
    "all_bounds_hold",
):
    print(f"  {field:>18} = {getattr(report, field)}")

print()
print("Norm growth when the input 1-norm exceeds 1 (the Hadamard seed):")
from pauliham import hadamard_power

h = hadamard_power(1)
for k in (1, 2, 3, 4, 5):
    out = amplify(h, k)
    print(
        f"  k={k}: ||H'||_P1 = {pauli_1_norm(out):9.4f}   "
        f"bound = {1 + 2 * ((1 + pauli_1_norm(h)) / 2) ** k:9.4f}"
    )
