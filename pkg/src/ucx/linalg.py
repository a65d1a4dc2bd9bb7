"""
Dense complex linear algebra on n-qubit state and operator spaces.

Matrices are plain ``numpy`` ``complex128`` arrays. :class:`UnitaryOperator`
and :class:`PureState` wrap validated, read-only arrays together with the
qubit count they act on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import ConsistencyError, ShapeError, ValidationError

__all__ = [
    "UNITARY_TOL",
    "NORM_TOL",
    "FIDELITY_CLAMP_TOL",
    "UnitaryOperator",
    "PureState",
    "as_matrix",
    "hs_inner",
    "hs_inner_normalized",
    "fidelity",
    "state_fidelity",
    "tensor",
    "apply",
    "unitary_from_basis_images",
    "check_unitary",
    "max_entry_distance",
    "basis_state",
    "random_unitary",
    "random_state",
]

UNITARY_TOL = 1e-10
NORM_TOL = 1e-10
# fidelities above 1 by at most this much are roundoff and get clamped
FIDELITY_CLAMP_TOL = 1e-9


def as_matrix(a) -> np.ndarray:
    """Return `a` as a finite 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or 0 in m.shape:
        raise ShapeError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix has non-finite entries")
    return m


def _qubits_for_dim(dim: int) -> int:
    n = dim.bit_length() - 1
    if n < 1 or 1 << n != dim:
        raise ShapeError(f"dimension {dim} is not 2**n for n >= 1")
    return n


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class UnitaryOperator:
    """A 2**n x 2**n unitary matrix acting on n qubits."""

    n: int
    matrix: np.ndarray

    def __init__(self, matrix, n: int | None = None, tol: float = UNITARY_TOL):
        m = as_matrix(matrix)
        if m.shape[0] != m.shape[1]:
            raise ShapeError(f"unitary must be square, got {m.shape}")
        qubits = _qubits_for_dim(m.shape[0])
        if n is not None and n != qubits:
            raise ShapeError(f"matrix of dimension {m.shape[0]} does not act on {n} qubits")
        if not check_unitary(m, tol):
            raise ValidationError(f"matrix is not unitary within {tol:g}")
        object.__setattr__(self, "n", qubits)
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return 1 << self.n

    def __matmul__(self, other: "UnitaryOperator") -> "UnitaryOperator":
        return UnitaryOperator(self.matrix @ _matrix_of(other))

    def __repr__(self):
        return f"UnitaryOperator(n={self.n})"


@dataclass(frozen=True, eq=False)
class PureState:
    """A unit vector of 2**n amplitudes."""

    n: int
    amplitudes: np.ndarray

    def __init__(self, amplitudes, n: int | None = None, tol: float = NORM_TOL):
        v = np.asarray(amplitudes, dtype=np.complex128)
        if v.ndim != 1:
            raise ShapeError(f"state must be a 1-D vector, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValidationError("state has non-finite amplitudes")
        qubits = _qubits_for_dim(v.shape[0])
        if n is not None and n != qubits:
            raise ShapeError(f"vector of length {v.shape[0]} does not describe {n} qubits")
        norm2 = float(np.vdot(v, v).real)
        if abs(norm2 - 1.0) > tol:
            raise ValidationError(f"state norm**2 = {norm2!r} is not 1 within {tol:g}")
        object.__setattr__(self, "n", qubits)
        object.__setattr__(self, "amplitudes", _frozen(v))

    @property
    def dim(self) -> int:
        return 1 << self.n

    def __repr__(self):
        return f"PureState(n={self.n})"


MatrixLike = Union[UnitaryOperator, np.ndarray, Sequence]


def _matrix_of(a: MatrixLike) -> np.ndarray:
    if isinstance(a, UnitaryOperator):
        return a.matrix
    return as_matrix(a)


def _same_square(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape[0] != a.shape[1] or a.shape != b.shape:
        raise ShapeError(f"need square matrices of equal shape, got {a.shape} and {b.shape}")


def hs_inner(a: MatrixLike, b: MatrixLike) -> complex:
    """Hilbert-Schmidt inner product ``Tr[A^dagger B]`` (unnormalized)."""
    a, b = _matrix_of(a), _matrix_of(b)
    _same_square(a, b)
    # Tr[A^dagger B] = sum_ij conj(A_ij) B_ij
    return complex(np.vdot(a, b))


def hs_inner_normalized(a: MatrixLike, b: MatrixLike, n: int) -> complex:
    """``Tr[A^dagger B] / 2**n``; unitaries are unit vectors under this product."""
    a, b = _matrix_of(a), _matrix_of(b)
    _same_square(a, b)
    if a.shape[0] != 1 << n:
        raise ShapeError(f"matrices of dimension {a.shape[0]} do not act on {n} qubits")
    return complex(np.vdot(a, b)) / (1 << n)


def _clamp_probability(f: float) -> float:
    if f > 1.0 + FIDELITY_CLAMP_TOL:
        raise ConsistencyError(f"overlap probability {f!r} exceeds 1 beyond roundoff")
    return min(max(f, 0.0), 1.0)


def fidelity(a: MatrixLike, b: MatrixLike) -> float:
    """Squared modulus of the normalized HS inner product, clamped to [0, 1]."""
    a, b = _matrix_of(a), _matrix_of(b)
    _same_square(a, b)
    n = _qubits_for_dim(a.shape[0])
    return _clamp_probability(abs(hs_inner_normalized(a, b, n)) ** 2)


def state_fidelity(x: PureState, y: PureState) -> float:
    """``|<x|y>|**2`` clamped to [0, 1]."""
    if x.n != y.n:
        raise ShapeError(f"qubit counts differ: {x.n} vs {y.n}")
    return _clamp_probability(abs(complex(np.vdot(x.amplitudes, y.amplitudes))) ** 2)


def tensor(a: MatrixLike, b: MatrixLike) -> np.ndarray:
    """Kronecker product; row index (i_a, i_b), column index (j_a, j_b)."""
    return np.kron(_matrix_of(a), _matrix_of(b))


def apply(u: UnitaryOperator, s: PureState) -> PureState:
    if u.n != s.n:
        raise ShapeError(f"operator on {u.n} qubits applied to state on {s.n}")
    return PureState(u.matrix @ s.amplitudes)


def _orthonormal_columns(states: Sequence[PureState], tol: float) -> np.ndarray:
    cols = np.column_stack([s.amplitudes for s in states])
    gram = cols.conj().T @ cols
    if np.max(np.abs(gram - np.eye(len(states)))) > tol:
        raise ValidationError("vector set is not orthonormal")
    return cols


def unitary_from_basis_images(
    v: Sequence[PureState], w: Sequence[PureState], tol: float = UNITARY_TOL
) -> UnitaryOperator:
    """Build ``sum_i |w_i><v_i|`` from two ordered orthonormal bases."""
    if len(v) != len(w) or not v:
        raise ValidationError("v and w must be non-empty and of equal length")
    dim = v[0].dim
    if len(v) != dim or any(s.dim != dim for s in (*v, *w)):
        raise ValidationError(f"need {dim} vectors of dimension {dim} in each set")
    vc = _orthonormal_columns(v, tol)
    wc = _orthonormal_columns(w, tol)
    return UnitaryOperator(wc @ vc.conj().T, tol=tol)


def max_entry_distance(a: MatrixLike, b: MatrixLike) -> float:
    a, b = _matrix_of(a), _matrix_of(b)
    if a.shape != b.shape:
        raise ShapeError(f"shapes differ: {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b)))


def check_unitary(m, tol: float = UNITARY_TOL) -> bool:
    """True iff ``max |M^dagger M - I| <= tol``."""
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"unitarity check needs a square matrix, got {m.shape}")
    if not np.all(np.isfinite(m)):
        return False
    dev = m.conj().T @ m - np.eye(m.shape[0])
    return bool(np.max(np.abs(dev)) <= tol)


def basis_state(label: int, n: int) -> PureState:
    """Computational basis state ``|label>``; qubit 0 is the most significant bit."""
    if not 0 <= label < 1 << n:
        raise ValidationError(f"label {label} out of range for {n} qubits")
    v = np.zeros(1 << n, dtype=np.complex128)
    v[label] = 1.0
    return PureState(v)


def random_unitary(n: int, rng: np.random.Generator) -> UnitaryOperator:
    """Haar-random unitary from QR of a complex Gaussian matrix.

    The phases of Q's columns are fixed so that R has a positive real
    diagonal, which makes the output a deterministic function of the draw.
    """
    d = 1 << n
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    q = q * (diag / np.abs(diag))
    return UnitaryOperator(q)


def random_state(n: int, rng: np.random.Generator) -> PureState:
    d = 1 << n
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState(v / np.linalg.norm(v))
