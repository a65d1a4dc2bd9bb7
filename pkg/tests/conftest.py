import numpy as np
import pytest

from ucx.basis import pauli_string
from ucx.linalg import UnitaryOperator
from ucx.programs import DEFAULT_GATE_SET, Machine


@pytest.fixture(scope="session")
def gates():
    g = {gate.name: UnitaryOperator(gate.matrix) for gate in DEFAULT_GATE_SET.gates}
    for label, name in enumerate("IXYZ"):
        g[name] = UnitaryOperator(pauli_string(label, 1))
    return g


@pytest.fixture(scope="session")
def m1():
    return Machine(1)


@pytest.fixture(scope="session")
def m2():
    return Machine(2)


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


def pytest_terminal_summary(terminalreporter):
    acceptance = __import__("sys").modules.get("test_acceptance")
    results = getattr(acceptance, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
