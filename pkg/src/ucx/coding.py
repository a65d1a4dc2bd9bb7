"""
Shannon-Fano code lengths over basis-projection ensembles.

Lengths are ``ceil(-log2 p)`` floored at one bit; symbols with zero (or
below ``2**-LENGTH_CAP``) probability get no codeword and are marked with
:data:`SKIP`. Kraft sums are computed exactly with :class:`fractions.Fraction`.
Codewords are bit strings of ``'0'``/``'1'`` characters, most significant
bit first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from .basis import OperatorBasis, decompose
from .errors import DecodeError, ValidationError
from .linalg import UnitaryOperator

__all__ = [
    "SKIP",
    "LENGTH_CAP",
    "DYADIC_TOL",
    "ProbabilityEnsemble",
    "CodewordTable",
    "ensemble_from_projection",
    "dyadic_exponent",
    "neg_log2_ceil",
    "shannon_fano_lengths",
    "verify_kraft",
    "assign_codewords",
    "encode_index",
    "decode_index",
    "pack_bits",
    "unpack_bits",
    "entropy_bits",
]

SKIP = None
LENGTH_CAP = 128
DYADIC_TOL = 1e-12
ENSEMBLE_SUM_TOL = 1e-9


@dataclass(frozen=True)
class ProbabilityEnsemble:
    probs: Tuple[float, ...]
    source: Tuple[int, ...]

    def __post_init__(self):
        if len(self.probs) != len(self.source):
            raise ValidationError("probs and source labels differ in length")
        if any(p < 0 for p in self.probs):
            raise ValidationError("negative probability in ensemble")
        total = math.fsum(self.probs)
        if abs(total - 1.0) > ENSEMBLE_SUM_TOL:
            raise ValidationError(f"ensemble sums to {total!r}, not 1")


@dataclass(frozen=True)
class CodewordTable:
    lengths: Tuple[Optional[int], ...]
    codewords: Tuple[Optional[str], ...]

    def coded_symbols(self):
        return [i for i, c in enumerate(self.codewords) if c is not SKIP]


def ensemble_from_projection(a: UnitaryOperator, basis: OperatorBasis) -> ProbabilityEnsemble:
    c = decompose(a, basis)
    probs = np.minimum(np.abs(c) ** 2, 1.0)
    return ProbabilityEnsemble(tuple(float(p) for p in probs), tuple(basis.labels))


def dyadic_exponent(p: float, tol: float = DYADIC_TOL) -> Optional[int]:
    """k if `p` is within relative `tol` of ``2**-k`` (k >= 0), else None."""
    if not 0.0 < p <= 1.0 + tol:
        return None
    k = max(0, round(-math.log2(p)))
    if abs(math.ldexp(p, k) - 1.0) <= tol:
        return k
    return None


def neg_log2_ceil(p: float) -> Optional[int]:
    """``ceil(-log2 p)`` with dyadic snapping; None below ``2**-LENGTH_CAP``."""
    if p >= 1.0 - DYADIC_TOL:
        return 0
    k = dyadic_exponent(p)
    if k is not None:
        return k if k <= LENGTH_CAP else None
    if p < 2.0 ** -LENGTH_CAP:
        return None
    return math.ceil(-math.log2(p))


def shannon_fano_lengths(ens: ProbabilityEnsemble) -> Tuple[Optional[int], ...]:
    out = []
    for p in ens.probs:
        length = neg_log2_ceil(p) if p > 0 else None
        out.append(SKIP if length is None else max(length, 1))
    return tuple(out)


def verify_kraft(lengths: Sequence[Optional[int]]) -> Fraction:
    """Exact ``sum 2**-l`` over non-SKIP lengths."""
    total = Fraction(0)
    for length in lengths:
        if length is SKIP:
            continue
        if not isinstance(length, (int, np.integer)) or not 1 <= length <= LENGTH_CAP:
            raise ValidationError(f"code length {length!r} outside 1..{LENGTH_CAP}")
        total += Fraction(1, 1 << int(length))
    return total


def assign_codewords(lengths: Sequence[Optional[int]]) -> CodewordTable:
    """Canonical prefix code realizing `lengths`.

    Symbols are visited by (length, index); each codeword is the previous one
    plus one, left-shifted whenever the length grows.
    """
    if verify_kraft(lengths) > 1:
        raise ValidationError("lengths violate the Kraft inequality")
    order = sorted((l, i) for i, l in enumerate(lengths) if l is not SKIP)
    codewords: list = [SKIP] * len(lengths)
    code, prev = 0, 0
    for k, (length, i) in enumerate(order):
        if k:
            code += 1
        code <<= length - prev
        prev = length
        codewords[i] = format(code, f"0{length}b")
    return CodewordTable(tuple(lengths), tuple(codewords))


def encode_index(i: int, table: CodewordTable) -> str:
    word = table.codewords[i]
    if word is SKIP:
        raise ValidationError(f"symbol {i} has no codeword")
    return word


def decode_index(bits: str, table: CodewordTable) -> Tuple[int, int]:
    """Decode the codeword at the head of `bits`; returns (symbol, bits consumed)."""
    lookup = {w: i for i, w in enumerate(table.codewords) if w is not SKIP}
    longest = max((len(w) for w in lookup), default=0)
    for end in range(1, min(longest, len(bits)) + 1):
        symbol = lookup.get(bits[:end])
        if symbol is not None:
            return symbol, end
    raise DecodeError("bit stream does not start with a codeword")


def pack_bits(bits: str) -> bytes:
    """MSB-first packing, zero-padded to a whole byte."""
    if any(c not in "01" for c in bits):
        raise ValidationError("bit string may contain only '0' and '1'")
    padded = bits + "0" * (-len(bits) % 8)
    return int(padded, 2).to_bytes(len(padded) // 8, "big") if padded else b""


def unpack_bits(data: bytes, nbits: int) -> str:
    if nbits > 8 * len(data):
        raise DecodeError(f"{len(data)} bytes cannot hold {nbits} bits")
    bits = "".join(format(b, "08b") for b in data)
    return bits[:nbits]


def entropy_bits(probs: Sequence[float]) -> float:
    return -math.fsum(p * math.log2(p) for p in probs if p > 0)
