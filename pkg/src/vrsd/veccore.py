"""Dense vector primitives.

Real vectors are 1-D ``float64`` numpy arrays. Integer vectors (used by the
subset-sum reduction) are plain tuples of Python ints so that every operation
on them is exact.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, EmptyInput, NonFiniteValue, ZeroNorm

IntVector = tuple[int, int]


def as_vector(values) -> np.ndarray:
    """Return a read-only float64 copy of ``values`` after validation."""
    v = np.array(values, dtype=np.float64)
    if v.ndim != 1 or v.size == 0:
        raise DimensionMismatch(f"expected a non-empty 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise NonFiniteValue("vector contains NaN or Inf")
    v.setflags(write=False)
    return v


def _check_dims(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"dimension {a.shape[0]} != {b.shape[0]}")


def dot(a: np.ndarray, b: np.ndarray) -> float:
    _check_dims(a, b)
    return float(np.dot(a, b))


def norm(a: np.ndarray) -> float:
    return math.sqrt(float(np.dot(a, a)))


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity clamped to [-1, 1].

    The denominator is ``sqrt(|a|^2 |b|^2)`` rather than ``|a| |b|`` so that
    parallel integer-valued vectors score exactly 1.0.
    """
    _check_dims(a, b)
    aa = float(np.dot(a, a))
    bb = float(np.dot(b, b))
    if aa == 0.0 or bb == 0.0:
        raise ZeroNorm("cosine undefined for a zero-norm vector")
    denom = math.sqrt(aa * bb)
    if not math.isfinite(denom) or denom == 0.0:
        # product over/underflowed
        denom = math.sqrt(aa) * math.sqrt(bb)
    c = float(np.dot(a, b)) / denom
    return min(1.0, max(-1.0, c))


def sum_vectors(vs: Sequence[np.ndarray]) -> np.ndarray:
    """Componentwise sum, accumulated left to right."""
    if len(vs) == 0:
        raise EmptyInput("cannot sum an empty sequence of vectors")
    total = np.array(vs[0], dtype=np.float64)
    for v in vs[1:]:
        _check_dims(total, v)
        total += v
    return total


def normalize(a: np.ndarray) -> np.ndarray:
    n = norm(a)
    if n == 0.0:
        raise ZeroNorm("cannot normalize a zero vector")
    return np.asarray(a, dtype=np.float64) / n


def cosine_many(matrix: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Row-wise cosine of ``matrix`` against ``q`` (vectorised, clamped)."""
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[1] != q.shape[0]:
        raise DimensionMismatch(f"matrix shape {matrix.shape} vs query dim {q.shape[0]}")
    row_sq = np.einsum("ij,ij->i", matrix, matrix)
    qq = float(np.dot(q, q))
    if qq == 0.0 or np.any(row_sq == 0.0):
        raise ZeroNorm("cosine undefined for a zero-norm vector")
    return np.clip(matrix @ q / np.sqrt(row_sq * qq), -1.0, 1.0)


# -- exact integer vectors ---------------------------------------------------


def int_vector(values: Iterable[int]) -> IntVector:
    out = tuple(int(x) for x in values)
    if len(out) != 2:
        raise DimensionMismatch(f"integer vectors are 2-dimensional, got {len(out)}")
    return out  # type: ignore[return-value]


def int_sum(vs: Sequence[IntVector]) -> IntVector:
    if len(vs) == 0:
        raise EmptyInput("cannot sum an empty sequence of vectors")
    return (sum(v[0] for v in vs), sum(v[1] for v in vs))


def int_dot(a: IntVector, b: IntVector) -> int:
    return a[0] * b[0] + a[1] * b[1]


def int_cross(a: IntVector, b: IntVector) -> int:
    return a[0] * b[1] - a[1] * b[0]
