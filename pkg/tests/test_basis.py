import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ucx.basis import (
    decompose,
    gram_schmidt_with_seed,
    orthonormality_deviation,
    pauli_basis,
    pauli_label_name,
    reconstruct,
    verify_parseval,
)
from ucx.errors import ShapeError
from ucx.linalg import UnitaryOperator, check_unitary, fidelity, hs_inner_normalized, random_unitary

import oracles


def test_pauli_basis_single_qubit(gates):
    b = pauli_basis(1)
    assert b.labels == (0, 1, 2, 3)
    for el, name in zip(b.elements, "IXYZ"):
        np.testing.assert_array_equal(el, gates[name].matrix)


def test_pauli_label_decoding():
    b = pauli_basis(2)
    assert len(b) == 16
    np.testing.assert_array_equal(b[0b0111], np.array(oracles.kron(oracles.X, oracles.Z)))
    assert pauli_label_name(0b0111, 2) == "XZ"


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pauli_basis_elements_are_unitary_and_orthonormal(n):
    b = pauli_basis(n)
    assert all(check_unitary(e, 1e-10) for e in b.elements)
    assert orthonormality_deviation(b) == 0.0


def test_pauli_basis_pairwise_brute_force():
    b = pauli_basis(2)
    for i in range(16):
        for j in range(16):
            expected = oracles.hs(b[i].tolist(), b[j].tolist()) / 4
            assert hs_inner_normalized(b[i], b[j], 2) == pytest.approx(expected, abs=1e-15)
            assert abs(expected - (i == j)) < 1e-15


def test_gram_schmidt_seeded_with_identity():
    b = gram_schmidt_with_seed(UnitaryOperator(np.eye(4)))
    np.testing.assert_array_equal(b[0], np.eye(4))
    assert len(b) == 16
    # every other element is orthogonal to I, i.e. traceless
    assert max(abs(np.trace(e)) for e in b.elements[1:]) < 1e-12


def test_gram_schmidt_seed_placement(gates):
    b = gram_schmidt_with_seed(gates["H"])
    np.testing.assert_array_equal(b[0], gates["H"].matrix)
    assert fidelity(b[0], gates["H"]) == pytest.approx(1, abs=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_gram_schmidt_random_seed_orthonormal(n, rng):
    b = gram_schmidt_with_seed(random_unitary(n, rng))
    assert len(b) == 4**n
    assert orthonormality_deviation(b) < 1e-9


def test_gram_schmidt_brute_force_pairs(rng):
    b = gram_schmidt_with_seed(random_unitary(2, rng))
    for i in range(16):
        for j in range(16):
            ip = oracles.hs(b[i].tolist(), b[j].tolist()) / 4
            assert abs(ip - (i == j)) < 1e-9


def test_decompose_hadamard(gates):
    c = decompose(gates["H"], pauli_basis(1))
    np.testing.assert_allclose(c, [0, 1 / math.sqrt(2), 0, 1 / math.sqrt(2)], atol=1e-12)


def test_decompose_pauli(gates):
    np.testing.assert_allclose(decompose(gates["X"], pauli_basis(1)), [0, 1, 0, 0], atol=1e-15)


def test_decompose_cnot(gates):
    c = decompose(gates["CNOT"], pauli_basis(2))
    expected = np.zeros(16)
    expected[[0b0000, 0b0001, 0b1100]] = 0.5
    expected[0b1101] = -0.5
    np.testing.assert_allclose(c, expected, atol=1e-12)
    np.testing.assert_allclose(reconstruct(c, pauli_basis(2)), gates["CNOT"].matrix, atol=1e-9)


def test_decompose_shape_error(gates):
    with pytest.raises(ShapeError):
        decompose(gates["CNOT"], pauli_basis(1))


def test_parseval_examples(gates):
    assert verify_parseval(gates["H"], pauli_basis(1)) == pytest.approx(1, abs=1e-12)
    basis_with_identity = gram_schmidt_with_seed(UnitaryOperator(np.eye(2)))
    assert verify_parseval(UnitaryOperator(np.eye(2)), basis_with_identity) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_parseval_random(n):
    g = np.random.default_rng(100 + n)
    b = pauli_basis(n)
    for _ in range(100):
        u = random_unitary(n, g)
        assert abs(verify_parseval(u, b) - 1) <= 1e-9


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 3), st.booleans())
def test_max_projection_bound(seed, n, use_gs):
    g = np.random.default_rng(seed)
    a = random_unitary(n, g)
    basis = gram_schmidt_with_seed(random_unitary(n, g)) if use_gs else pauli_basis(n)
    probs = np.abs(decompose(a, basis)) ** 2
    assert probs.max() >= 4.0**-n * (1 - 1e-12)
    assert abs(probs.sum() - 1) <= 1e-9


@pytest.mark.parametrize("label", [0, 5, 0b1101])
def test_gram_schmidt_from_pauli_seed_spans(label):
    seed = UnitaryOperator(pauli_basis(2)[label])
    b = gram_schmidt_with_seed(seed)
    g = np.random.default_rng(label)
    for _ in range(20):
        u = random_unitary(2, g)
        assert np.max(np.abs(reconstruct(decompose(u, b), b) - u.matrix)) < 1e-8
