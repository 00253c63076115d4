"""Exact linear algebra over the prime fields F_2, F_3, F_5 and F_7.

Vectors and matrices are plain numpy ``int64`` arrays whose entries are reduced mod q;
the field size travels alongside them. ``FieldElement`` exists for scalar work and for
callers that want checked arithmetic, the array functions are what the geometry uses.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .exceptions import DimensionMismatch, FieldError, NotProjectivePoint, RankDeficient

logger = logging.getLogger(__name__)

SUPPORTED_PRIMES = (2, 3, 5, 7)


@dataclass(frozen=True)
class PrimeField:
    q: int

    def __post_init__(self):
        if self.q not in SUPPORTED_PRIMES:
            raise FieldError(
                f"q={self.q} is not a supported prime field size, expected one of {SUPPORTED_PRIMES}"
            )

    @cached_property
    def inverses(self) -> np.ndarray:
        # inverses[0] stays 0 so that vectorised lookups never index out of range
        table = np.zeros(self.q, dtype=np.int64)
        for a in range(1, self.q):
            table[a] = pow(a, self.q - 2, self.q)
        return table

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.q}")
        return int(self.inverses[a])

    def reduce(self, values) -> np.ndarray:
        return np.mod(np.asarray(values, dtype=np.int64), self.q)


@lru_cache(maxsize=None)
def prime_field(q: int) -> PrimeField:
    return PrimeField(q)


@dataclass(frozen=True)
class FieldElement:
    value: int
    q: int

    def __post_init__(self):
        prime_field(self.q)
        if not 0 <= self.value < self.q:
            raise FieldError(f"{self.value} is not reduced mod {self.q}")

    @classmethod
    def of(cls, value: int, q: int) -> "FieldElement":
        return cls(int(value) % q, q)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.q != self.q:
                raise DimensionMismatch(f"cannot combine elements of F_{self.q} and F_{other.q}")
            return other.value
        return int(other)

    def __add__(self, other):
        return FieldElement.of(self.value + self._coerce(other), self.q)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement.of(self.value - self._coerce(other), self.q)

    def __rsub__(self, other):
        return FieldElement.of(self._coerce(other) - self.value, self.q)

    def __mul__(self, other):
        return FieldElement.of(self.value * self._coerce(other), self.q)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement.of(-self.value, self.q)

    def inverse(self) -> "FieldElement":
        return FieldElement(prime_field(self.q).inv(self.value), self.q)

    def __truediv__(self, other):
        return self * FieldElement.of(self._coerce(other), self.q).inverse()

    def __int__(self):
        return self.value


def as_matrix(rows, q: int) -> np.ndarray:
    """Return ``rows`` as a 2-D int64 array reduced mod q."""
    field = prime_field(q)
    try:
        m = np.asarray(rows, dtype=np.int64)
    except ValueError as exc:
        raise DimensionMismatch("matrix rows have different lengths") from exc
    if m.ndim == 1:
        m = m.reshape(1, -1)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got an array with {m.ndim} dimensions")
    return field.reduce(m)


def rref(m, q: int) -> tuple[np.ndarray, int]:
    """Reduced row echelon form of ``m`` over F_q, and its rank.

    Zero rows are kept at the bottom so the shape is preserved.
    """
    field = prime_field(q)
    a = as_matrix(m, q).copy()
    rows, cols = a.shape
    pivot_row = 0
    for col in range(cols):
        if pivot_row == rows:
            break
        candidates = np.flatnonzero(a[pivot_row:, col])
        if candidates.size == 0:
            continue
        swap = pivot_row + int(candidates[0])
        if swap != pivot_row:
            a[[pivot_row, swap]] = a[[swap, pivot_row]]
        a[pivot_row] = (a[pivot_row] * field.inv(int(a[pivot_row, col]))) % q
        factors = a[:, col].copy()
        factors[pivot_row] = 0
        if factors.any():
            a = (a - np.outer(factors, a[pivot_row])) % q
        pivot_row += 1
    return a, pivot_row


def rank(m, q: int) -> int:
    return rref(m, q)[1]


def pivot_columns(reduced: np.ndarray) -> list[int]:
    """Pivot positions of a matrix already in RREF (zero rows are skipped)."""
    pivots = []
    for row in reduced:
        nonzero = np.flatnonzero(row)
        if nonzero.size:
            pivots.append(int(nonzero[0]))
    return pivots


def normalize_projective(v, q: int) -> np.ndarray:
    """Scale ``v`` so that its first nonzero coordinate is 1."""
    field = prime_field(q)
    vec = field.reduce(v).ravel()
    nonzero = np.flatnonzero(vec)
    if nonzero.size == 0:
        raise NotProjectivePoint("not a projective point: the zero vector")
    return (vec * field.inv(int(vec[nonzero[0]]))) % q


def normalize_rows(vectors, q: int) -> np.ndarray:
    """Row-wise ``normalize_projective`` for a 2-D array."""
    field = prime_field(q)
    a = as_matrix(vectors, q)
    nonzero = a != 0
    has_support = nonzero.any(axis=1)
    if not has_support.all():
        row = int(np.flatnonzero(~has_support)[0])
        raise NotProjectivePoint(f"not a projective point: row {row} is the zero vector")
    lead = a[np.arange(a.shape[0]), nonzero.argmax(axis=1)]
    return (a * field.inverses[lead][:, None]) % q


def in_span(v, basis, q: int) -> bool:
    vec = prime_field(q).reduce(v).ravel()
    b = as_matrix(basis, q)
    if b.shape[1] != vec.size:
        raise DimensionMismatch(
            f"vector of length {vec.size} against a basis of length {b.shape[1]}"
        )
    return rank(np.vstack([b, vec]), q) == rank(b, q)


def null_space(m, q: int) -> np.ndarray:
    """Basis (in RREF) of the vectors x with m @ x = 0 over F_q."""
    reduced, rk = rref(m, q)
    cols = reduced.shape[1]
    pivots = pivot_columns(reduced[:rk])
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, p in enumerate(pivots):
            basis[i, p] = (-reduced[row, f]) % q
    if not free:
        return basis
    return rref(basis, q)[0]


def solve_left(m, b, q: int) -> np.ndarray:
    """Solve x @ m = b for square invertible ``m``; ``b`` may hold one right side per row."""
    square = as_matrix(m, q)
    k = square.shape[0]
    if square.shape != (k, k):
        raise DimensionMismatch(f"expected a square matrix, got {square.shape}")
    rhs = as_matrix(b, q)
    if rhs.shape[1] != k:
        raise DimensionMismatch(f"right side of length {rhs.shape[1]} against order {k}")
    augmented = np.hstack([square.T, rhs.T])
    reduced, _ = rref(augmented, q)
    if not np.array_equal(reduced[:, :k], np.eye(k, dtype=np.int64)):
        raise RankDeficient("matrix is singular, the system has no unique solution")
    return reduced[:, k:].T.copy()
