"""
A fixed self-delimiting program language over a discrete gate set.

Every program starts with a 2-bit mode field:

========  ================  ============================================
mode      decoded form      payload
========  ================  ============================================
``00``    BasisIndex        2n-bit Pauli label
``01``    Circuit           Elias-gamma instruction count, then per
                            instruction a gate id (ceil(log2 G) bits) and
                            arity * ceil(log2 n) target bits
``10``    StateBasisIndex   n-bit computational basis label
``11``    reserved          never valid
========  ================  ============================================

All fields are written most significant bit first. Because every field
width is fixed by the bits already read, no valid program is a proper
prefix of another.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import IntEnum
from itertools import permutations
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .basis import decompose, pauli_basis, pauli_string
from .errors import DecodeError, ValidationError
from .linalg import PureState, UnitaryOperator, basis_state, check_unitary

__all__ = [
    "Mode",
    "Gate",
    "GateSet",
    "Machine",
    "Instruction",
    "BasisIndex",
    "Circuit",
    "StateBasisIndex",
    "Program",
    "DEFAULT_GATE_SET",
    "elias_gamma",
    "read_elias_gamma",
    "encode_program",
    "decode_program",
    "evaluate",
    "circuit_matrix",
    "enumerate_programs",
    "baseline_basis_program",
    "baseline_state_program",
    "bits_to_hex",
    "hex_to_bits",
]

MODE_BITS = 2


class Mode(IntEnum):
    BASIS = 0
    CIRCUIT = 1
    STATE = 2


@dataclass(frozen=True, eq=False)
class Gate:
    name: str
    arity: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if self.arity < 1 or m.shape != (1 << self.arity, 1 << self.arity):
            raise ValidationError(f"gate {self.name!r}: matrix shape {m.shape} does not match arity {self.arity}")
        if not check_unitary(m, 1e-10):
            raise ValidationError(f"gate {self.name!r} is not unitary")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True, eq=False)
class GateSet:
    gates: Tuple[Gate, ...]

    def __post_init__(self):
        gates = tuple(self.gates)
        if not gates:
            raise ValidationError("gate set is empty")
        names = [g.name for g in gates]
        if len(set(names)) != len(names):
            raise ValidationError("gate names must be unique")
        object.__setattr__(self, "gates", gates)

    def __len__(self):
        return len(self.gates)

    def __getitem__(self, i) -> Gate:
        return self.gates[i]

    @property
    def id_bits(self) -> int:
        return (len(self.gates) - 1).bit_length()

    def index(self, name: str) -> int:
        for i, g in enumerate(self.gates):
            if g.name == name:
                return i
        raise KeyError(name)

    @property
    def key(self) -> tuple:
        return tuple((g.name, g.arity, g.matrix.tobytes()) for g in self.gates)


_S2 = 1 / np.sqrt(2)
DEFAULT_GATE_SET = GateSet(
    (
        Gate("H", 1, np.array([[_S2, _S2], [_S2, -_S2]])),
        Gate("T", 1, np.diag([1, np.exp(1j * np.pi / 4)])),
        Gate("CNOT", 2, np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])),
    )
)


@dataclass(frozen=True, eq=False)
class Machine:
    """The decoder standing in for a universal machine: qubit count plus gate set."""

    n: int
    gate_set: GateSet = field(default=DEFAULT_GATE_SET)

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("machine needs n >= 1")

    @property
    def target_bits(self) -> int:
        return (self.n - 1).bit_length()

    @property
    def key(self) -> tuple:
        return (self.n, self.gate_set.key)


class Instruction(NamedTuple):
    gate: int
    targets: Tuple[int, ...]


@dataclass(frozen=True)
class BasisIndex:
    label: int


@dataclass(frozen=True)
class StateBasisIndex:
    label: int


@dataclass(frozen=True)
class Circuit:
    instructions: Tuple[Instruction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "instructions", tuple(Instruction(g, tuple(t)) for g, t in self.instructions)
        )


Decoded = Union[BasisIndex, Circuit, StateBasisIndex]


@dataclass(frozen=True)
class Program:
    bits: str
    decoded: Decoded

    @property
    def length(self) -> int:
        return len(self.bits)

    def __len__(self):
        return len(self.bits)

    @property
    def value(self) -> int:
        """The bit string read as an unsigned big-endian integer."""
        return int(self.bits, 2)

    @property
    def mode(self) -> Mode:
        return _MODE_OF[type(self.decoded)]

    def sort_key(self):
        return (len(self.bits), self.value)


_MODE_OF = {BasisIndex: Mode.BASIS, Circuit: Mode.CIRCUIT, StateBasisIndex: Mode.STATE}


def bits_to_hex(bits: str) -> dict:
    """Report form of a bit string: MSB-first hex, zero-padded to whole nibbles."""
    padded = bits + "0" * (-len(bits) % 4)
    hexstr = format(int(padded, 2), f"0{len(padded) // 4}x") if padded else ""
    return {"hex": hexstr, "bits": len(bits)}


def hex_to_bits(hexstr: str, nbits: int) -> str:
    if nbits > 4 * len(hexstr):
        raise DecodeError(f"{hexstr!r} cannot hold {nbits} bits")
    if not hexstr:
        return ""
    return format(int(hexstr, 16), f"0{4 * len(hexstr)}b")[:nbits]


def _uint(value: int, width: int) -> str:
    return format(value, f"0{width}b") if width else ""


def elias_gamma(k: int) -> str:
    if k < 1:
        raise ValidationError("Elias gamma encodes integers >= 1")
    b = format(k, "b")
    return "0" * (len(b) - 1) + b


def read_elias_gamma(bits: str, pos: int = 0) -> Tuple[int, int]:
    """Return (value, position after the codeword)."""
    zeros = 0
    while pos + zeros < len(bits) and bits[pos + zeros] == "0":
        zeros += 1
    end = pos + 2 * zeros + 1
    if end > len(bits):
        raise DecodeError("truncated Elias-gamma field")
    return int(bits[pos + zeros : end], 2), end


def _check_instruction(ins: Instruction, machine: Machine) -> None:
    if not 0 <= ins.gate < len(machine.gate_set):
        raise ValidationError(f"gate id {ins.gate} not in gate set")
    gate = machine.gate_set[ins.gate]
    if len(ins.targets) != gate.arity:
        raise ValidationError(f"gate {gate.name} needs {gate.arity} targets, got {len(ins.targets)}")
    if any(not 0 <= t < machine.n for t in ins.targets):
        raise ValidationError(f"target out of range in {ins}")
    if len(set(ins.targets)) != len(ins.targets):
        raise ValidationError(f"repeated target in {ins}")


def _instruction_bits(ins: Instruction, machine: Machine) -> str:
    tb = machine.target_bits
    return _uint(ins.gate, machine.gate_set.id_bits) + "".join(_uint(t, tb) for t in ins.targets)


def encode_program(decoded: Decoded, machine: Machine) -> Program:
    n = machine.n
    if isinstance(decoded, BasisIndex):
        if not 0 <= decoded.label < 1 << (2 * n):
            raise ValidationError(f"basis label {decoded.label} out of range")
        bits = "00" + _uint(decoded.label, 2 * n)
    elif isinstance(decoded, StateBasisIndex):
        if not 0 <= decoded.label < 1 << n:
            raise ValidationError(f"state label {decoded.label} out of range")
        bits = "10" + _uint(decoded.label, n)
    elif isinstance(decoded, Circuit):
        if not decoded.instructions:
            raise ValidationError("a circuit program needs at least one instruction")
        for ins in decoded.instructions:
            _check_instruction(ins, machine)
        bits = "01" + elias_gamma(len(decoded.instructions))
        bits += "".join(_instruction_bits(ins, machine) for ins in decoded.instructions)
    else:
        raise TypeError(f"cannot encode {decoded!r}")
    return Program(bits, decoded)


def _take(bits: str, pos: int, width: int) -> Tuple[int, int]:
    if pos + width > len(bits):
        raise DecodeError("truncated program")
    return (int(bits[pos : pos + width], 2) if width else 0), pos + width


def decode_program(bits: str, machine: Machine) -> Tuple[Program, int]:
    """Decode the program at the head of `bits`; returns (program, bits consumed)."""
    mode, pos = _take(bits, 0, MODE_BITS)
    n = machine.n
    if mode == Mode.BASIS:
        label, pos = _take(bits, pos, 2 * n)
        decoded: Decoded = BasisIndex(label)
    elif mode == Mode.STATE:
        label, pos = _take(bits, pos, n)
        decoded = StateBasisIndex(label)
    elif mode == Mode.CIRCUIT:
        count, pos = read_elias_gamma(bits, pos)
        instructions = []
        for _ in range(count):
            gate, pos = _take(bits, pos, machine.gate_set.id_bits)
            if gate >= len(machine.gate_set):
                raise DecodeError(f"gate id {gate} not in gate set")
            arity = machine.gate_set[gate].arity
            if arity > n:
                raise DecodeError(f"gate {machine.gate_set[gate].name} needs {arity} qubits, machine has {n}")
            targets = []
            for _ in range(arity):
                t, pos = _take(bits, pos, machine.target_bits)
                targets.append(t)
            ins = Instruction(gate, tuple(targets))
            try:
                _check_instruction(ins, machine)
            except ValidationError as exc:
                raise DecodeError(str(exc)) from None
            instructions.append(ins)
        decoded = Circuit(tuple(instructions))
    else:
        raise DecodeError("reserved mode 11")
    return Program(bits[:pos], decoded), pos


def _apply_gate(mat: np.ndarray, gate: np.ndarray, targets: Sequence[int], n: int) -> np.ndarray:
    """Left-multiply `mat` (rows indexed by n qubits) by `gate` acting on `targets`."""
    k = len(targets)
    t = mat.reshape((2,) * n + (-1,))
    g = gate.reshape((2,) * (2 * k))
    out = np.tensordot(g, t, axes=(list(range(k, 2 * k)), list(targets)))
    out = np.moveaxis(out, list(range(k)), list(targets))
    return out.reshape(mat.shape)


def circuit_matrix(instructions: Iterable[Instruction], machine: Machine) -> np.ndarray:
    """Unitary of the instruction list: later instructions multiply on the left."""
    n = machine.n
    mat = np.eye(1 << n, dtype=np.complex128)
    for ins in instructions:
        mat = _apply_gate(mat, machine.gate_set[ins.gate].matrix, ins.targets, n)
    return mat


def evaluate(p: Program, machine: Machine, as_state: bool = False):
    """Run `p` on `machine`.

    BasisIndex programs give a Pauli string and StateBasisIndex programs a
    computational basis state. Circuits give their unitary, or with
    ``as_state=True`` that unitary applied to ``|0...0>``.
    """
    d = p.decoded
    if isinstance(d, BasisIndex):
        if as_state:
            raise ValidationError("BasisIndex programs produce unitaries, not states")
        return UnitaryOperator(pauli_string(d.label, machine.n))
    if isinstance(d, StateBasisIndex):
        return basis_state(d.label, machine.n)
    mat = circuit_matrix(d.instructions, machine)
    if as_state:
        return PureState(mat[:, 0])
    return UnitaryOperator(mat)


def _instruction_options(machine: Machine):
    """Every valid single instruction with its bit string, in gate-id and target order."""
    opts = []
    for gid, gate in enumerate(machine.gate_set.gates):
        if gate.arity > machine.n:
            continue
        for targets in permutations(range(machine.n), gate.arity):
            ins = Instruction(gid, targets)
            opts.append((ins, _instruction_bits(ins, machine)))
    return opts


def _circuits(machine: Machine, max_bits: int, max_instructions: Optional[int], deadline):
    opts = _instruction_options(machine)
    if not opts:
        return
    shortest = min(len(b) for _, b in opts)
    k = 1
    while max_instructions is None or k <= max_instructions:
        header = "01" + elias_gamma(k)
        room = max_bits - len(header)
        if room < k * shortest:
            break
        stack = [((), header)]
        while stack:
            if deadline is not None and time.monotonic() > deadline:
                return
            seq, bits = stack.pop()
            if len(seq) == k:
                yield Program(bits, Circuit(seq))
                continue
            remaining = k - len(seq) - 1
            for ins, ib in opts:
                if len(bits) + len(ib) + remaining * shortest <= max_bits:
                    stack.append((seq + (ins,), bits + ib))
        k += 1


def enumerate_programs(
    machine: Machine,
    modes: Iterable[Mode] = (Mode.BASIS, Mode.CIRCUIT, Mode.STATE),
    max_bits: int = 12,
    max_instructions: Optional[int] = None,
    deadline: Optional[float] = None,
) -> Iterator[Program]:
    """Yield every valid program of at most `max_bits` bits.

    Order is by length, then by the bit string as an unsigned integer.
    `deadline` is a :func:`time.monotonic` timestamp after which circuit
    generation stops early.
    """
    if max_bits < MODE_BITS:
        raise ValidationError("max_bits must be at least the mode width")
    modes = set(Mode(m) for m in modes)
    n = machine.n
    found = []
    if Mode.BASIS in modes and 2 + 2 * n <= max_bits:
        found += [encode_program(BasisIndex(b), machine) for b in range(1 << (2 * n))]
    if Mode.STATE in modes and 2 + n <= max_bits:
        found += [encode_program(StateBasisIndex(b), machine) for b in range(1 << n)]
    if Mode.CIRCUIT in modes:
        found += list(_circuits(machine, max_bits, max_instructions, deadline))
    found.sort(key=Program.sort_key)
    yield from found


def _argmax_smallest(values: np.ndarray, tol: float = 1e-12) -> int:
    """Index of the maximum; near-ties within `tol` resolve to the smallest index."""
    best = float(np.max(values))
    return int(np.flatnonzero(values >= best - tol)[0])


def baseline_basis_program(u: UnitaryOperator, machine: Optional[Machine] = None) -> Program:
    """BasisIndex program for the Pauli string with the largest overlap with `u`."""
    machine = machine or Machine(u.n)
    probs = np.abs(decompose(u, pauli_basis(u.n))) ** 2
    return encode_program(BasisIndex(_argmax_smallest(probs)), machine)


def baseline_state_program(x: PureState, machine: Optional[Machine] = None) -> Program:
    """StateBasisIndex program for the basis state with the largest overlap with `x`."""
    machine = machine or Machine(x.n)
    probs = np.abs(x.amplitudes) ** 2
    return encode_program(StateBasisIndex(_argmax_smallest(probs)), machine)
