"""
Orthonormal bases of the 4**n-dimensional operator space.

Inner products here are the normalized Hilbert-Schmidt product
``Tr[A^dagger B] / 2**n``. Two constructions are provided: the Pauli-string
basis, indexed by 2n-bit labels, and a Gram-Schmidt completion that puts a
given unitary first and fills the rest from the Pauli strings in label order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from .errors import ConsistencyError, ShapeError
from .linalg import UnitaryOperator, check_unitary

__all__ = [
    "PAULI_MATRICES",
    "PAULI_NAMES",
    "GS_DEGENERACY_TOL",
    "OperatorBasis",
    "pauli_string",
    "pauli_label_name",
    "pauli_basis",
    "gram_schmidt_with_seed",
    "decompose",
    "reconstruct",
    "verify_parseval",
    "orthonormality_deviation",
]

# label pair -> single-qubit Pauli: 00 I, 01 X, 10 Y, 11 Z
PAULI_MATRICES = (
    np.array([[1, 0], [0, 1]], dtype=np.complex128),
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)
PAULI_NAMES = "IXYZ"

GS_DEGENERACY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class OperatorBasis:
    """An ordered orthonormal basis of operators on n qubits.

    Attributes
    ----------
    n : int
        Qubit count.
    elements : ndarray, shape (4**n, 2**n, 2**n)
        Read-only stack of basis operators.
    labels : tuple of int
        One 2n-bit index per element, in element order.
    name : str
        Short descriptor used in reports (``"pauli"`` or ``"gram-schmidt"``).
    """

    n: int
    elements: np.ndarray
    labels: Tuple[int, ...]
    name: str

    def __len__(self):
        return len(self.labels)

    def __getitem__(self, i) -> np.ndarray:
        return self.elements[i]


def pauli_label_name(label: int, n: int) -> str:
    """``0b0111`` at n=2 -> ``"XZ"``; qubit 0 is the leftmost letter."""
    return "".join(PAULI_NAMES[(label >> (2 * (n - 1 - q))) & 3] for q in range(n))


def pauli_string(label: int, n: int) -> np.ndarray:
    if not 0 <= label < 1 << (2 * n):
        raise ValueError(f"label {label} out of range for {n} qubits")
    out = np.ones((1, 1), dtype=np.complex128)
    for q in range(n):
        out = np.kron(out, PAULI_MATRICES[(label >> (2 * (n - 1 - q))) & 3])
    return out


@lru_cache(maxsize=None)
def _pauli_stack(n: int) -> np.ndarray:
    stack = np.array([pauli_string(b, n) for b in range(1 << (2 * n))])
    stack.flags.writeable = False
    return stack


def pauli_basis(n: int) -> OperatorBasis:
    """The 4**n Pauli strings ordered by label."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return OperatorBasis(n, _pauli_stack(n), tuple(range(1 << (2 * n))), "pauli")


def gram_schmidt_with_seed(u: UnitaryOperator, tol: float = GS_DEGENERACY_TOL) -> OperatorBasis:
    """Orthonormal operator basis whose first element is `u`.

    Pauli strings are orthogonalized against the accepted vectors in label
    order using modified Gram-Schmidt with one re-orthogonalization pass;
    candidates whose residual norm falls below `tol` are skipped.
    """
    n, d = u.n, u.dim
    total = d * d
    scale = 1.0 / np.sqrt(d)
    # rows of q are flattened operators scaled so the plain dot product is the normalized HS product
    q = np.empty((total, total), dtype=np.complex128)
    q[0] = u.matrix.ravel() * scale
    count = 1
    for cand in _pauli_stack(n):
        if count == total:
            break
        r = cand.ravel() * scale
        for _ in range(2):
            for k in range(count):
                r = r - np.vdot(q[k], r) * q[k]
        norm = np.linalg.norm(r)
        if norm < tol:
            continue
        q[count] = r / norm
        count += 1
    if count != total:
        raise ConsistencyError(f"Gram-Schmidt found {count} of {total} independent operators")
    elements = (q / scale).reshape(total, d, d)
    elements[0] = u.matrix
    elements.flags.writeable = False
    return OperatorBasis(n, elements, tuple(range(total)), "gram-schmidt")


def _check_n(a: UnitaryOperator, basis: OperatorBasis) -> None:
    if a.n != basis.n:
        raise ShapeError(f"operator on {a.n} qubits, basis on {basis.n}")


def decompose(a: UnitaryOperator, basis: OperatorBasis) -> np.ndarray:
    """Coefficients ``<e_i, A>`` (normalized HS) for every basis element."""
    _check_n(a, basis)
    flat = basis.elements.reshape(len(basis), -1)
    return flat.conj() @ a.matrix.ravel() / a.dim


def reconstruct(coefficients: np.ndarray, basis: OperatorBasis) -> np.ndarray:
    return np.tensordot(coefficients, basis.elements, axes=1)


def verify_parseval(a: UnitaryOperator, basis: OperatorBasis) -> float:
    """Sum of squared projection magnitudes; 1 for an orthonormal basis."""
    c = decompose(a, basis)
    return float(np.sum(np.abs(c) ** 2))


def orthonormality_deviation(basis: OperatorBasis) -> float:
    """``max_ij |<e_i, e_j> - delta_ij|`` under the normalized HS product."""
    flat = basis.elements.reshape(len(basis), -1)
    gram = flat.conj() @ flat.T / (1 << basis.n)
    return float(np.max(np.abs(gram - np.eye(len(basis)))))


def is_unitary_basis(basis: OperatorBasis, tol: float = 1e-10) -> bool:
    return all(check_unitary(e, tol) for e in basis.elements)
