"""
Bounded-enumeration upper estimates of description complexity.

The cost of a program ``p`` approximating a target is its length plus the
Shannon-Fano penalty ``ceil(-log2 F)``, where ``F`` is the overlap
probability between what ``p`` computes and the target. The estimate is the
minimum cost over all programs within a :class:`Budget`; restricting the
program set can only raise the minimum, so every value returned here is an
upper estimate.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .coding import neg_log2_ceil
from .errors import ConfigurationError, ShapeError
from .linalg import (
    PureState,
    UnitaryOperator,
    _clamp_probability,
    apply,
    basis_state,
    fidelity,
)
from .programs import (
    BasisIndex,
    Circuit,
    Machine,
    Mode,
    Program,
    StateBasisIndex,
    baseline_basis_program,
    baseline_state_program,
    bits_to_hex,
    circuit_matrix,
    enumerate_programs,
)
from .basis import pauli_string

__all__ = [
    "UNREACHABLE",
    "DIRECT_TOL",
    "Budget",
    "ComplexityReport",
    "Theorem1Result",
    "RelationReport",
    "penalty",
    "state_penalty",
    "estimate_unitary_complexity",
    "estimate_state_complexity",
    "is_directly_computable",
    "theorem1_check",
    "state_unitary_relation",
    "unitary_bound",
    "state_bound",
    "program_to_dict",
]

UNREACHABLE = None
DIRECT_TOL = 1e-9


@dataclass(frozen=True)
class Budget:
    max_program_bits: int
    max_circuit_instructions: Optional[int] = None
    time_limit: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "max_program_bits": self.max_program_bits,
            "max_circuit_instructions": self.max_circuit_instructions,
            "time_limit": self.time_limit,
        }


def unitary_bound(n: int) -> int:
    """Baseline ceiling ``(2n + 2) + 2n`` for unitaries on n qubits."""
    return 4 * n + 2


def state_bound(n: int) -> int:
    """Baseline ceiling ``(n + 2) + n`` for states on n qubits."""
    return 2 * n + 2


def penalty(u_appr, u) -> Optional[int]:
    """``ceil(-log2 fidelity(u_appr, u))``, or UNREACHABLE below ``2**-128``."""
    return neg_log2_ceil(fidelity(u_appr, u))


def state_penalty(x_appr: PureState, x: PureState) -> Optional[int]:
    if x_appr.n != x.n:
        raise ShapeError(f"qubit counts differ: {x_appr.n} vs {x.n}")
    f = _clamp_probability(abs(complex(np.vdot(x_appr.amplitudes, x.amplitudes))) ** 2)
    return neg_log2_ceil(f)


def program_to_dict(p: Program, machine: Machine) -> dict:
    d = p.decoded
    out = {"mode": p.mode.name.lower(), **bits_to_hex(p.bits)}
    if isinstance(d, (BasisIndex, StateBasisIndex)):
        out["label"] = d.label
    else:
        names = machine.gate_set
        out["instructions"] = [[names[ins.gate].name, list(ins.targets)] for ins in d.instructions]
    return out


@dataclass(frozen=True)
class ComplexityReport:
    """Outcome of one complexity estimate.

    ``penalty`` is the raw ceiling and may be 0; ``codec_penalty`` is the
    length of the concrete Shannon-Fano codeword, which is never shorter
    than one bit. ``directly_computable`` says whether some program in the
    budget reproduces the subject exactly; ``direct_witness`` is the
    shortest such program, whose own penalty is 0.
    """

    subject: str
    kind: str
    n: int
    k_hat: int
    program_length: int
    penalty: int
    codec_penalty: int
    fidelity: float
    witness: Program
    directly_computable: bool
    direct_witness: Optional[Program]
    budget: Budget
    bound: int
    basis_used: str
    candidates: int
    truncated: bool
    machine: Machine

    @property
    def direct_penalty(self) -> Optional[int]:
        return 0 if self.direct_witness is not None else None

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "kind": self.kind,
            "estimate": "upper estimate",
            "n": self.n,
            "k_hat": self.k_hat,
            "program_length": self.program_length,
            "penalty": self.penalty,
            "codec_penalty": self.codec_penalty,
            "fidelity": self.fidelity,
            "witness": program_to_dict(self.witness, self.machine),
            "directly_computable": self.directly_computable,
            "direct_witness": (
                None if self.direct_witness is None else program_to_dict(self.direct_witness, self.machine)
            ),
            "budget": self.budget.to_dict(),
            "bound": self.bound,
            "basis_used": self.basis_used,
            "candidates": self.candidates,
            "truncated": self.truncated,
        }


# cache of evaluated candidate programs, keyed by machine and enumeration bounds
_CANDIDATES: Dict[tuple, Tuple[List[Program], np.ndarray]] = {}
_CACHE_LIMIT = 64


def _evaluate_raw(p: Program, machine: Machine, state_mode: bool) -> np.ndarray:
    d = p.decoded
    if isinstance(d, BasisIndex):
        return pauli_string(d.label, machine.n)
    if isinstance(d, StateBasisIndex):
        return basis_state(d.label, machine.n).amplitudes
    mat = circuit_matrix(d.instructions, machine)
    return mat[:, 0].copy() if state_mode else mat


def _candidates(machine: Machine, state_mode: bool, budget: Budget):
    modes = (Mode.STATE, Mode.CIRCUIT) if state_mode else (Mode.BASIS, Mode.CIRCUIT)
    key = (machine.key, state_mode, budget.max_program_bits, budget.max_circuit_instructions)
    if budget.time_limit is None and key in _CANDIDATES:
        progs, outs = _CANDIDATES[key]
        return progs, outs, False
    deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit
    progs = list(
        enumerate_programs(machine, modes, budget.max_program_bits, budget.max_circuit_instructions, deadline)
    )
    truncated = deadline is not None and time.monotonic() > deadline
    outs = np.array([_evaluate_raw(p, machine, state_mode) for p in progs])
    outs.flags.writeable = False
    if budget.time_limit is None:
        if len(_CANDIDATES) >= _CACHE_LIMIT:
            _CANDIDATES.pop(next(iter(_CANDIDATES)))
        _CANDIDATES[key] = (progs, outs)
    return progs, outs, truncated


@dataclass(frozen=True)
class _Scan:
    best: Tuple[int, Program, int, float]
    direct: Optional[Program]
    direct_circuit: Optional[Program]
    candidates: int
    truncated: bool


def _select(entries):
    """Order-independent minimum by (total cost, program length, bits as integer)."""
    return min(entries, key=lambda e: (e[0], e[1].length, e[1].value))


def _scan(target: np.ndarray, progs, outs, baseline: Program, base_out: np.ndarray, truncated: bool) -> _Scan:
    if not any(p.bits == baseline.bits for p in progs):
        progs = list(progs) + [baseline]
        outs = np.concatenate([outs, base_out[None]]) if len(outs) else base_out[None]
    flat = outs.reshape(len(progs), -1)
    t = target.ravel()
    scale = target.shape[0] if target.ndim == 2 else 1
    overlaps = np.abs(flat.conj() @ t / scale) ** 2
    exact = np.max(np.abs(flat - t), axis=1) <= DIRECT_TOL
    entries = []
    for p, f in zip(progs, overlaps):
        f = _clamp_probability(float(f))
        pen = neg_log2_ceil(f)
        if pen is UNREACHABLE:
            continue
        entries.append((p.length + pen, p, pen, f))
    direct = [p for p, e in zip(progs, exact) if e]
    first = lambda ps: min(ps, key=Program.sort_key) if ps else None
    return _Scan(
        best=_select(entries),
        direct=first(direct),
        direct_circuit=first([p for p in direct if isinstance(p.decoded, Circuit)]),
        candidates=len(progs),
        truncated=truncated,
    )


def _check_machine(n: int, machine: Machine) -> None:
    if machine.n != n:
        raise ShapeError(f"subject on {n} qubits, machine on {machine.n}")


def _scan_unitary(u: UnitaryOperator, machine: Machine, budget: Budget) -> _Scan:
    _check_machine(u.n, machine)
    if budget.max_program_bits < 2 * u.n + 2:
        raise ConfigurationError(
            f"budget of {budget.max_program_bits} bits cannot reach the {2 * u.n + 2}-bit baseline program"
        )
    progs, outs, truncated = _candidates(machine, False, budget)
    base = baseline_basis_program(u, machine)
    return _scan(u.matrix, progs, outs, base, pauli_string(base.decoded.label, u.n), truncated)


def _scan_state(x: PureState, machine: Machine, budget: Budget) -> _Scan:
    _check_machine(x.n, machine)
    if budget.max_program_bits < x.n + 2:
        raise ConfigurationError(
            f"budget of {budget.max_program_bits} bits cannot reach the {x.n + 2}-bit baseline program"
        )
    progs, outs, truncated = _candidates(machine, True, budget)
    base = baseline_state_program(x, machine)
    return _scan(x.amplitudes, progs, outs, base, basis_state(base.decoded.label, x.n).amplitudes, truncated)


def _report(scan: _Scan, subject, kind, n, bound, machine, budget) -> ComplexityReport:
    total, witness, pen, f = scan.best
    if isinstance(witness.decoded, BasisIndex):
        basis_used = "pauli"
    elif isinstance(witness.decoded, StateBasisIndex):
        basis_used = "computational"
    else:
        basis_used = "circuit"
    return ComplexityReport(
        subject=subject,
        kind=kind,
        n=n,
        k_hat=total,
        program_length=witness.length,
        penalty=pen,
        codec_penalty=max(pen, 1),
        fidelity=f,
        witness=witness,
        directly_computable=scan.direct is not None,
        direct_witness=scan.direct,
        budget=budget,
        bound=bound,
        basis_used=basis_used,
        candidates=scan.candidates,
        truncated=scan.truncated,
        machine=machine,
    )


def estimate_unitary_complexity(
    u: UnitaryOperator, machine: Machine, budget: Budget, subject: str = "U"
) -> ComplexityReport:
    """Minimum of ``l(p) + penalty`` over BasisIndex and Circuit programs in `budget`.

    The baseline basis-index program is always a candidate, so the result
    never exceeds ``4n + 2``.
    """
    scan = _scan_unitary(u, machine, budget)
    return _report(scan, subject, "unitary", u.n, unitary_bound(u.n), machine, budget)


def estimate_state_complexity(
    x: PureState, machine: Machine, budget: Budget, subject: str = "x"
) -> ComplexityReport:
    """State analogue over StateBasisIndex programs and circuits applied to ``|0...0>``."""
    scan = _scan_state(x, machine, budget)
    return _report(scan, subject, "state", x.n, state_bound(x.n), machine, budget)


def is_directly_computable(u: UnitaryOperator, machine: Machine, budget: Budget) -> bool:
    """True iff a program within `budget` reproduces `u` entrywise within 1e-9 (no phase quotient)."""
    return _scan_unitary(u, machine, budget).direct is not None


@dataclass(frozen=True)
class Theorem1Result:
    n: int
    baseline: Program
    fidelity: float
    penalty: int
    cost: int
    penalty_bound: int
    bound: int

    @property
    def passed(self) -> bool:
        return self.penalty <= self.penalty_bound and self.cost <= self.bound

    def to_dict(self, machine: Machine) -> dict:
        return {
            "baseline": program_to_dict(self.baseline, machine),
            "fidelity": self.fidelity,
            "penalty": self.penalty,
            "cost": self.cost,
            "penalty_bound": self.penalty_bound,
            "bound": self.bound,
            "passed": self.passed,
        }


def theorem1_check(u: UnitaryOperator, machine: Optional[Machine] = None) -> Theorem1Result:
    """Cost of the best single Pauli label against the ``4n + 2`` ceiling."""
    machine = machine or Machine(u.n)
    _check_machine(u.n, machine)
    base = baseline_basis_program(u, machine)
    f = fidelity(pauli_string(base.decoded.label, u.n), u)
    pen = neg_log2_ceil(f)
    if pen is UNREACHABLE:
        # cannot happen: the largest of 4**n overlaps summing to 1 is >= 4**-n
        pen = 2**31
    return Theorem1Result(
        n=u.n,
        baseline=base,
        fidelity=f,
        penalty=pen,
        cost=base.length + pen,
        penalty_bound=2 * u.n,
        bound=unitary_bound(u.n),
    )


@dataclass(frozen=True)
class RelationReport:
    unitary: ComplexityReport
    state: ComplexityReport
    gap: int
    circuit_direct: Optional[Program]

    @property
    def asserted(self) -> bool:
        return self.circuit_direct is not None

    @property
    def holds(self) -> bool:
        return not self.asserted or self.gap <= 0

    def to_dict(self) -> dict:
        return {
            "gap": self.gap,
            "asserted": self.asserted,
            "holds": self.holds,
            "circuit_direct_witness": (
                None if self.circuit_direct is None else program_to_dict(self.circuit_direct, self.unitary.machine)
            ),
            "unitary": self.unitary.to_dict(),
            "state": self.state.to_dict(),
        }


def state_unitary_relation(u: UnitaryOperator, machine: Machine, budget: Budget) -> RelationReport:
    """Gap ``K_state(U|0...0>) - K(U)``; it is asserted nonpositive only when a circuit reproduces `u`."""
    uscan = _scan_unitary(u, machine, budget)
    urep = _report(uscan, "U", "unitary", u.n, unitary_bound(u.n), machine, budget)
    y = apply(u, basis_state(0, u.n))
    srep = estimate_state_complexity(y, machine, budget, subject="U|0>")
    return RelationReport(urep, srep, srep.k_hat - urep.k_hat, uscan.direct_circuit)
