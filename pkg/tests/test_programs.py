from itertools import product

import numpy as np
import pytest

from ucx.errors import DecodeError, ValidationError
from ucx.linalg import fidelity, random_unitary
from ucx.programs import (
    BasisIndex,
    Circuit,
    Gate,
    GateSet,
    Instruction,
    Machine,
    Mode,
    StateBasisIndex,
    baseline_basis_program,
    bits_to_hex,
    circuit_matrix,
    decode_program,
    elias_gamma,
    encode_program,
    enumerate_programs,
    evaluate,
    hex_to_bits,
    read_elias_gamma,
)

import oracles

H_, T_, CNOT_ = 0, 1, 2


def all_valid_by_exhaustion(machine, max_bits):
    """Every bit string up to max_bits that decodes to a program consuming all of it."""
    found = []
    for length in range(1, max_bits + 1):
        for tup in product("01", repeat=length):
            bits = "".join(tup)
            try:
                p, used = decode_program(bits, machine)
            except DecodeError:
                continue
            if used == length:
                found.append(p)
    return found


def test_elias_gamma():
    assert [elias_gamma(k) for k in (1, 2, 3, 4, 5)] == ["1", "010", "011", "00100", "00101"]
    for k in range(1, 300):
        assert read_elias_gamma(elias_gamma(k) + "1101") == (k, len(elias_gamma(k)))
    with pytest.raises(DecodeError):
        read_elias_gamma("000")


def test_encode_examples(m1, m2):
    p = encode_program(BasisIndex(0b01), m1)
    assert (p.bits, p.length) == ("0001", 4)
    p = encode_program(StateBasisIndex(0), m2)
    assert (p.bits, p.length) == ("1000", 4)
    p = encode_program(Circuit([(H_, (0,))]), m1)
    assert (p.bits, p.length) == ("01" + "1" + "00", 5)
    p = encode_program(Circuit([(H_, (0,)), (T_, (0,))]), m1)
    assert (p.bits, p.length) == ("01" + "010" + "00" + "01", 9)
    p = encode_program(Circuit([(CNOT_, (1, 0))]), m2)
    assert p.bits == "01" + "1" + "10" + "1" + "0"


def test_encode_validation(m1, m2):
    with pytest.raises(ValidationError):
        encode_program(Circuit([(CNOT_, (0, 0))]), m2)
    with pytest.raises(ValidationError):
        encode_program(Circuit([(CNOT_, (0, 1))]), m1)
    with pytest.raises(ValidationError):
        encode_program(Circuit([(H_, (2,))]), m2)
    with pytest.raises(ValidationError):
        encode_program(Circuit([(7, (0,))]), m1)
    with pytest.raises(ValidationError):
        encode_program(Circuit([]), m1)
    with pytest.raises(ValidationError):
        encode_program(BasisIndex(16), m1)


def test_decode_errors(m1):
    with pytest.raises(DecodeError):
        decode_program("11" + "0000", m1)
    with pytest.raises(DecodeError):
        decode_program("000", m1)
    with pytest.raises(DecodeError):
        decode_program("01" + "1" + "10", m1)  # CNOT needs two qubits
    with pytest.raises(DecodeError):
        decode_program("01" + "1" + "11", m1)  # gate id 3 is unassigned


def test_concatenated_programs_decode_sequentially(m2):
    a = encode_program(Circuit([(CNOT_, (0, 1)), (H_, (1,))]), m2)
    b = encode_program(BasisIndex(0b1101), m2)
    stream = a.bits + b.bits
    first, used = decode_program(stream, m2)
    second, used2 = decode_program(stream[used:], m2)
    assert (first, second) == (a, b)
    assert used + used2 == len(stream)


def _random_decoded(draw_rng, machine):
    kind = draw_rng.integers(3)
    n = machine.n
    if kind == 0:
        return BasisIndex(int(draw_rng.integers(4**n)))
    if kind == 2:
        return StateBasisIndex(int(draw_rng.integers(2**n)))
    instructions = []
    for _ in range(int(draw_rng.integers(1, 9))):
        gid = int(draw_rng.integers(3 if n >= 2 else 2))
        arity = machine.gate_set[gid].arity
        instructions.append((gid, tuple(int(t) for t in draw_rng.permutation(n)[:arity])))
    return Circuit(instructions)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_random_roundtrip(n):
    machine = Machine(n)
    g = np.random.default_rng(n)
    for _ in range(1000):
        d = _random_decoded(g, machine)
        p = encode_program(d, machine)
        q, used = decode_program(p.bits, machine)
        assert q == p and used == p.length and q.decoded == d


@pytest.mark.parametrize("n,max_bits", [(1, 16), (2, 16)])
def test_language_is_prefix_free_and_enumeration_complete(n, max_bits):
    machine = Machine(n)
    exhaustive = all_valid_by_exhaustion(machine, max_bits)
    bits = {p.bits for p in exhaustive}
    for p in exhaustive:
        for k in range(2, p.length):
            assert p.bits[:k] not in bits
        assert encode_program(p.decoded, machine).bits == p.bits
    enumerated = list(enumerate_programs(machine, max_bits=max_bits))
    assert [p.bits for p in enumerated] == [p.bits for p in sorted(exhaustive, key=lambda p: p.sort_key())]


def test_evaluate_examples(m1, m2, gates):
    assert np.array_equal(evaluate(encode_program(BasisIndex(0b11), m1), m1).matrix, gates["Z"].matrix)
    th = evaluate(encode_program(Circuit([(H_, (0,)), (T_, (0,))]), m1), m1)
    np.testing.assert_array_equal(th.matrix, gates["T"].matrix @ gates["H"].matrix)
    cn = evaluate(encode_program(Circuit([(CNOT_, (0, 1))]), m2), m2)
    np.testing.assert_array_equal(cn.matrix, np.array(oracles.CNOT))
    s = evaluate(encode_program(StateBasisIndex(2), m2), m2)
    np.testing.assert_array_equal(s.amplitudes, [0, 0, 1, 0])
    y = evaluate(encode_program(Circuit([(H_, (0,))]), m2), m2, as_state=True)
    np.testing.assert_allclose(y.amplitudes, [2**-0.5, 0, 2**-0.5, 0], atol=1e-15)


def test_embedding_matches_kronecker(m2):
    h, t = oracles.H, oracles.T
    i2 = oracles.I2
    cases = [
        ([(H_, (0,))], oracles.kron(h, i2)),
        ([(H_, (1,))], oracles.kron(i2, h)),
        ([(T_, (1,)), (H_, (0,))], oracles.matmul(oracles.kron(h, i2), oracles.kron(i2, t))),
    ]
    swap = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    cases.append(([(CNOT_, (1, 0))], oracles.matmul(swap, oracles.matmul(oracles.CNOT, swap))))
    for instructions, expected in cases:
        got = circuit_matrix([Instruction(g, t) for g, t in instructions], m2)
        np.testing.assert_allclose(got, np.array(expected), atol=1e-15)


def test_three_qubit_embedding():
    m3 = Machine(3)
    got = circuit_matrix([Instruction(CNOT_, (2, 0))], m3)
    expected = np.zeros((8, 8))
    for col in range(8):
        b = [(col >> (2 - q)) & 1 for q in range(3)]
        if b[2]:
            b[0] ^= 1
        expected[(b[0] << 2) | (b[1] << 1) | b[2], col] = 1
    np.testing.assert_array_equal(got, expected)


def test_circuit_evaluation_is_phase_exact(m1):
    # T^8 = I exactly in exact arithmetic; here we only require the literal product, no rephasing
    prog = encode_program(Circuit([(T_, (0,))] * 3), m1)
    t = np.diag([1, np.exp(1j * np.pi / 4)])
    np.testing.assert_array_equal(evaluate(prog, m1).matrix, t @ t @ t)


def test_enumeration_examples(m1):
    basis = list(enumerate_programs(m1, [Mode.BASIS], 4))
    assert [p.decoded.label for p in basis] == [0, 1, 2, 3]
    one_gate = [p for p in enumerate_programs(m1, [Mode.CIRCUIT], 5)]
    assert [p.bits for p in one_gate] == ["01100", "01101"]  # CNOT cannot act on one qubit
    big = Machine(2)
    singles = [p for p in enumerate_programs(big, [Mode.CIRCUIT], 6)]
    assert len(singles) == 4  # H and T on either qubit, 6 bits each
    a = [p.bits for p in enumerate_programs(big, max_bits=14)]
    b = [p.bits for p in enumerate_programs(big, max_bits=14)]
    assert a == b and len(set(a)) == len(a)
    assert all((len(x), int(x, 2)) <= (len(y), int(y, 2)) for x, y in zip(a, a[1:]))


def test_enumeration_instruction_cap(m1):
    capped = list(enumerate_programs(m1, [Mode.CIRCUIT], 14, max_instructions=2))
    assert max(len(p.decoded.instructions) for p in capped) == 2


def test_baseline_examples(gates, m1):
    assert baseline_basis_program(gates["X"], m1).decoded == BasisIndex(0b01)
    p = baseline_basis_program(gates["H"], m1)
    assert p.decoded == BasisIndex(0b01) and p.length == 4


def test_baseline_fidelity_bound():
    g = np.random.default_rng(5)
    m2 = Machine(2)
    for _ in range(100):
        u = random_unitary(2, g)
        p = baseline_basis_program(u, m2)
        assert p.length == 6
        assert fidelity(evaluate(p, m2), u) >= 1 / 16


def test_hex_report_form():
    assert bits_to_hex("0001") == {"hex": "1", "bits": 4}
    assert bits_to_hex("01100") == {"hex": "60", "bits": 5}
    assert hex_to_bits("60", 5) == "01100"


def test_custom_gate_set():
    s = Gate("S", 1, np.diag([1, 1j]))
    gs = GateSet((s,))
    m = Machine(1, gs)
    assert gs.id_bits == 0
    p = encode_program(Circuit([(0, (0,)), (0, (0,))]), m)
    assert p.bits == "01" + "010"
    with pytest.raises(ValidationError):
        Gate("bad", 1, np.eye(4))
    with pytest.raises(ValidationError):
        GateSet((s, s))
