"""
Complexity estimates for unitaries and states
=============================================

The cost of a program p for a target U is l(p) + ceil(-log2 F), where F is
the overlap probability between what p computes and U. Minimizing over all
programs up to a bit budget gives an upper estimate of U's description
complexity. The best single Pauli label always costs at most 4n + 2 bits.
"""

import numpy as np

from ucx import (
    DEFAULT_GATE_SET,
    Budget,
    Machine,
    UnitaryOperator,
    estimate_state_complexity,
    estimate_unitary_complexity,
    random_state,
    random_unitary,
    state_unitary_relation,
    theorem1_check,
)

g = {gate.name: gate.matrix for gate in DEFAULT_GATE_SET.gates}
budget = Budget(14)

###############################################################################
# Exact gates and products of gates.
for name, mat in [("X", np.array([[0, 1], [1, 0]])), ("H", g["H"]), ("T.H", g["T"] @ g["H"]), ("CNOT", g["CNOT"])]:
    u = UnitaryOperator(mat)
    r = estimate_unitary_complexity(u, Machine(u.n), budget, subject=name)
    print(f"  {name:<5} K = {r.k_hat:>2} = {r.program_length} + {r.penalty}   witness {r.witness.decoded}")

###############################################################################
# Haar-random unitaries stay under the baseline ceiling.
rng = np.random.default_rng(1)
for n in (1, 2, 3):
    ks = [estimate_unitary_complexity(random_unitary(n, rng), Machine(n), Budget(12)).k_hat for _ in range(50)]
    worst = max(theorem1_check(random_unitary(n, rng)).cost for _ in range(50))
    print(f"  n={n}: K in [{min(ks)}, {max(ks)}], baseline cost <= {worst}, ceiling {4 * n + 2}")

###############################################################################
# States have a cheaper baseline, (n + 2) + n bits.
for n in (1, 2, 3):
    ks = [estimate_state_complexity(random_state(n, rng), Machine(n), Budget(12)).k_hat for _ in range(50)]
    print(f"  n={n}: state K in [{min(ks)}, {max(ks)}], ceiling {2 * n + 2}")

###############################################################################
# The state U|0...0> is never harder to describe than U itself for these budgets.
for _ in range(5):
    rel = state_unitary_relation(random_unitary(2, rng), Machine(2), Budget(12))
    print(f"  K(U|00>) - K(U) = {rel.gap}")
