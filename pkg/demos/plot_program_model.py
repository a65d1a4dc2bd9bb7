"""
The program language
====================

Programs are self-delimiting bit strings: a 2-bit mode, then either a Pauli
label, a computational-basis label, or a circuit over the gate set
(H, T, CNOT). Enumerating them in length order is the search space for the
complexity estimates.
"""

from collections import Counter

from ucx import BasisIndex, Circuit, Machine, StateBasisIndex, decode_program, encode_program, enumerate_programs, evaluate

m1, m2 = Machine(1), Machine(2)

###############################################################################
# Encodings and their lengths.
for decoded, machine in [
    (BasisIndex(0b01), m1),
    (StateBasisIndex(0), m2),
    (Circuit([(0, (0,))]), m1),
    (Circuit([(0, (0,)), (1, (0,))]), m1),
    (Circuit([(2, (0, 1))]), m2),
]:
    p = encode_program(decoded, machine)
    print(f"  n={machine.n} {p.bits:<12} l(p)={p.length:<3} {decoded}")

###############################################################################
# Two programs written back to back decode one after the other.
stream = encode_program(Circuit([(2, (0, 1)), (0, (1,))]), m2).bits + encode_program(BasisIndex(13), m2).bits
first, used = decode_program(stream, m2)
second, _ = decode_program(stream[used:], m2)
print(first.decoded, "|", second.decoded)

###############################################################################
# How many programs exist at each length for two qubits.
counts = Counter(p.length for p in enumerate_programs(m2, max_bits=14))
print(dict(sorted(counts.items())))

###############################################################################
# Circuits evaluate by left-multiplying each new gate.
th = evaluate(encode_program(Circuit([(0, (0,)), (1, (0,))]), m1), m1)
print(th.matrix.round(4))
