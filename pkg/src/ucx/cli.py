"""
Command-line front end.

Every subcommand writes one JSON report (stdout unless ``--out``) and exits
with 0 on success, 1 when a checked bound or identity fails, and 2/3/4 for
parse, dimension and unitarity errors in the inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .basis import (
    gram_schmidt_with_seed,
    orthonormality_deviation,
    pauli_basis,
    pauli_label_name,
    verify_parseval,
)
from .coding import (
    SKIP,
    assign_codewords,
    ensemble_from_projection,
    entropy_bits,
    shannon_fano_lengths,
    verify_kraft,
)
from .errors import ConfigurationError, ShapeError
from .estimator import (
    Budget,
    estimate_state_complexity,
    estimate_unitary_complexity,
    program_to_dict,
    state_unitary_relation,
    theorem1_check,
)
from .fileio import (
    DimensionError,
    InputError,
    parse_gate_set_file,
    parse_state_file,
    parse_unitary_file,
    state_to_json,
    unitary_to_json,
)
from .linalg import NORM_TOL, UNITARY_TOL, random_unitary
from .programs import DEFAULT_GATE_SET, Machine, Mode, enumerate_programs
from .schema import SCHEMA_VERSION

__all__ = ["RunConfig", "run", "main", "build_parser", "make_report", "render_report"]

TOOL = f"ucx {__version__}"
MODE_NAMES = {"basis": Mode.BASIS, "circuit": Mode.CIRCUIT, "state": Mode.STATE}


@dataclass
class RunConfig:
    subcommand: str
    input: Optional[str] = None
    basis_seed: Optional[str] = None
    gate_set: Optional[str] = None
    n: Optional[int] = None
    budget_bits: int = 12
    max_instructions: Optional[int] = None
    time_limit: Optional[float] = None
    tolerance_unitary: float = UNITARY_TOL
    tolerance_basis: float = 1e-9
    out: Optional[str] = None
    seed: int = 0
    trials: int = 100
    modes: Tuple[str, ...] = ("basis", "circuit", "state")

    def __post_init__(self):
        if self.tolerance_unitary <= 0 or self.tolerance_basis <= 0:
            raise ConfigurationError("tolerances must be positive")

    def echo(self) -> dict:
        keys = {
            "complexity": ("input", "gate_set", "n", "budget_bits", "max_instructions", "time_limit", "tolerance_unitary"),
            "state-complexity": ("input", "gate_set", "n", "budget_bits", "max_instructions", "time_limit", "tolerance_unitary"),
            "relation": ("input", "gate_set", "n", "budget_bits", "max_instructions", "time_limit", "tolerance_unitary"),
            "decompose": ("input", "basis_seed", "n", "tolerance_unitary"),
            "verify": ("n", "trials", "seed", "tolerance_basis"),
            "enumerate": ("gate_set", "n", "budget_bits", "max_instructions", "modes"),
        }[self.subcommand]
        out = {k: getattr(self, k) for k in keys}
        if "modes" in out:
            out["modes"] = list(out["modes"])
        return out


def _machine(cfg: RunConfig, n: int) -> Machine:
    gates = DEFAULT_GATE_SET if cfg.gate_set is None else parse_gate_set_file(cfg.gate_set, cfg.tolerance_unitary)
    return Machine(n, gates)


def _budget(cfg: RunConfig) -> Budget:
    return Budget(cfg.budget_bits, cfg.max_instructions, cfg.time_limit)


def _unitary(cfg: RunConfig, path: Optional[str] = None):
    u = parse_unitary_file(path or cfg.input, cfg.tolerance_unitary)
    if cfg.n is not None and cfg.n != u.n:
        raise DimensionError(f"--n {cfg.n} does not match the {u.n}-qubit input")
    return u


def _fraction(q) -> str:
    return f"{q.numerator}/{q.denominator}"


def _cmd_complexity(cfg: RunConfig):
    u = _unitary(cfg)
    machine = _machine(cfg, u.n)
    report = estimate_unitary_complexity(u, machine, _budget(cfg), subject=cfg.input)
    t1 = theorem1_check(u, machine)
    ok = t1.passed and report.k_hat <= report.bound
    return {"subject": unitary_to_json(u)}, {"complexity": report.to_dict(), "theorem1": t1.to_dict(machine)}, ok


def _cmd_state(cfg: RunConfig):
    x = parse_state_file(cfg.input, NORM_TOL)
    if cfg.n is not None and cfg.n != x.n:
        raise DimensionError(f"--n {cfg.n} does not match the {x.n}-qubit input")
    report = estimate_state_complexity(x, _machine(cfg, x.n), _budget(cfg), subject=cfg.input)
    return {"subject": state_to_json(x)}, {"complexity": report.to_dict()}, report.k_hat <= report.bound


def _cmd_relation(cfg: RunConfig):
    u = _unitary(cfg)
    rel = state_unitary_relation(u, _machine(cfg, u.n), _budget(cfg))
    return {"subject": unitary_to_json(u)}, rel.to_dict(), rel.holds


def _cmd_decompose(cfg: RunConfig):
    u = _unitary(cfg)
    if cfg.basis_seed is None:
        basis = pauli_basis(u.n)
        names = [pauli_label_name(b, u.n) for b in basis.labels]
    else:
        seed_u = _unitary(cfg, cfg.basis_seed)
        if seed_u.n != u.n:
            raise DimensionError("basis seed and input act on different qubit counts")
        basis = gram_schmidt_with_seed(seed_u)
        names = None
    ens = ensemble_from_projection(u, basis)
    lengths = shannon_fano_lengths(ens)
    kraft = verify_kraft(lengths)
    table = assign_codewords(lengths)
    mean_len = sum(p * l for p, l in zip(ens.probs, lengths) if l is not SKIP)
    result = {
        "basis": basis.name,
        "labels": list(basis.labels),
        "label_names": names,
        "probs": list(ens.probs),
        "probability_sum": float(np.sum(ens.probs)),
        "lengths": ["SKIP" if l is SKIP else l for l in lengths],
        "codewords": list(table.codewords),
        "kraft_sum": _fraction(kraft),
        "kraft_ok": kraft <= 1,
        "entropy_bits": entropy_bits(ens.probs),
        "mean_length_bits": mean_len,
    }
    return {"subject": unitary_to_json(u)}, result, kraft <= 1


def _cmd_verify(cfg: RunConfig):
    if cfg.n is None:
        raise ConfigurationError("verify needs --n")
    n, tol = cfg.n, cfg.tolerance_basis
    rng = np.random.default_rng(cfg.seed)
    pb = pauli_basis(n)
    dev_p = dev_gs = ortho = 0.0
    kraft_max = 0
    t1_ok = True
    min_scaled_maxfid = np.inf
    for _ in range(cfg.trials):
        u = random_unitary(n, rng)
        gs = gram_schmidt_with_seed(u)
        dev_p = max(dev_p, abs(verify_parseval(u, pb) - 1))
        dev_gs = max(dev_gs, abs(verify_parseval(u, gs) - 1))
        ortho = max(ortho, orthonormality_deviation(gs))
        ens = ensemble_from_projection(u, pb)
        kraft_max = max(kraft_max, verify_kraft(shannon_fano_lengths(ens)))
        min_scaled_maxfid = min(min_scaled_maxfid, max(ens.probs) * 4**n)
        t1_ok = t1_ok and theorem1_check(u).passed
    passed = dev_p <= tol and dev_gs <= tol and ortho <= tol and kraft_max <= 1 and t1_ok
    result = {
        "trials": cfg.trials,
        "parseval_max_deviation": {"pauli": dev_p, "gram_schmidt": dev_gs},
        "gram_schmidt_orthonormality_max_deviation": ortho,
        "kraft_max_sum": _fraction(kraft_max) if kraft_max else "0/1",
        "theorem1_all_pass": t1_ok,
        "min_max_pauli_fidelity_times_4n": float(min_scaled_maxfid) if cfg.trials else None,
        "passed": passed,
    }
    return {}, result, passed


def _cmd_enumerate(cfg: RunConfig):
    if cfg.n is None:
        raise ConfigurationError("enumerate needs --n")
    machine = _machine(cfg, cfg.n)
    modes = [MODE_NAMES[m] for m in cfg.modes]
    progs = [program_to_dict(p, machine) for p in enumerate_programs(machine, modes, cfg.budget_bits, cfg.max_instructions)]
    return {}, {"count": len(progs), "programs": progs}, True


_COMMANDS = {
    "complexity": _cmd_complexity,
    "state-complexity": _cmd_state,
    "relation": _cmd_relation,
    "decompose": _cmd_decompose,
    "verify": _cmd_verify,
    "enumerate": _cmd_enumerate,
}


def make_report(command: str, inputs: dict, result: dict) -> dict:
    return {"schema": SCHEMA_VERSION, "tool": TOOL, "command": command, "inputs": inputs, "result": result}


def render_report(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    """Execute one subcommand; returns the process exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        inputs, result, ok = _COMMANDS[cfg.subcommand](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        return exc.exit_code
    except (ConfigurationError, ShapeError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    doc = make_report(cfg.subcommand, {"config": cfg.echo(), **inputs}, result)
    text = render_report(doc)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ucx", description="Description-complexity estimates for n-qubit unitaries.")
    parser.add_argument("--version", action="version", version=TOOL)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, input_required=False):
        p.add_argument("--in", dest="input", required=input_required, help="input JSON file")
        p.add_argument("--n", type=int, help="qubit count (checked against the input)")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--tolerance-unitary", type=float, default=UNITARY_TOL)
        p.add_argument("--tolerance-basis", type=float, default=1e-9)
        p.add_argument("--seed", type=int, default=0)

    def budgeted(p):
        p.add_argument("--budget-bits", type=int, default=12)
        p.add_argument("--max-instructions", type=int)
        p.add_argument("--time-limit", type=float, help="wall-clock seconds for program enumeration")
        p.add_argument("--gate-set", help="gate-set JSON file (default: H, T, CNOT)")

    for name, needs_input in (("complexity", True), ("state-complexity", True), ("relation", True)):
        p = sub.add_parser(name)
        common(p, needs_input)
        budgeted(p)
    p = sub.add_parser("decompose")
    common(p, True)
    p.add_argument("--basis-seed", help="unitary JSON file seeding a Gram-Schmidt basis (default: Pauli basis)")
    p = sub.add_parser("verify")
    common(p)
    p.add_argument("--trials", type=int, default=100)
    p = sub.add_parser("enumerate")
    common(p)
    budgeted(p)
    p.add_argument("--mode", dest="modes", action="append", choices=sorted(MODE_NAMES))
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    fields = vars(args).copy()
    if fields.get("modes") is None:
        fields.pop("modes", None)
    else:
        fields["modes"] = tuple(fields["modes"])
    try:
        cfg = RunConfig(**{k: v for k, v in fields.items() if k in RunConfig.__dataclass_fields__})
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
