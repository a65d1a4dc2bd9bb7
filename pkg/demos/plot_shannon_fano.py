"""
Shannon-Fano codes from operator projections
============================================

Projection probabilities of a unitary onto an operator basis define a code:
symbol i gets ceil(-log2 p_i) bits. The lengths always satisfy the Kraft
inequality, checked here with exact fractions, and a canonical prefix code
realizes them.
"""

import numpy as np

from ucx import (
    DEFAULT_GATE_SET,
    UnitaryOperator,
    assign_codewords,
    decode_index,
    encode_index,
    ensemble_from_projection,
    pauli_basis,
    random_unitary,
    shannon_fano_lengths,
    verify_kraft,
)
from ucx.basis import pauli_label_name
from ucx.coding import entropy_bits

CNOT = UnitaryOperator(DEFAULT_GATE_SET[2].matrix)

###############################################################################
# Dyadic probabilities give a complete code: the Kraft sum is exactly 1.
ens = ensemble_from_projection(CNOT, pauli_basis(2))
table = assign_codewords(shannon_fano_lengths(ens))
for i in table.coded_symbols():
    print(f"  {pauli_label_name(i, 2)}: p = {ens.probs[i]:.2f}  codeword {table.codewords[i]}")
print("Kraft sum:", verify_kraft(table.lengths))

###############################################################################
# A generic unitary spreads over all 16 strings and leaves slack in the code.
u = random_unitary(2, np.random.default_rng(4))
ens = ensemble_from_projection(u, pauli_basis(2))
lengths = shannon_fano_lengths(ens)
table = assign_codewords(lengths)
mean = sum(p * l for p, l in zip(ens.probs, lengths))
print(f"Kraft sum: {verify_kraft(lengths)}  (= {float(verify_kraft(lengths)):.4f})")
print(f"mean length {mean:.3f} bits vs entropy {entropy_bits(ens.probs):.3f} bits")

###############################################################################
# Codewords concatenate into a stream that decodes without separators.
symbols = [3, 0, 15, 7]
stream = "".join(encode_index(s, table) for s in symbols)
decoded, pos = [], 0
while pos < len(stream):
    s, used = decode_index(stream[pos:], table)
    decoded.append(s)
    pos += used
print(stream, "->", decoded)
