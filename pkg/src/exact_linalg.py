#!/usr/bin/env python3
"""
Exact rational linear algebra.

Everything here works on lists of ``fractions.Fraction`` (integers are
promoted on entry), so no result ever depends on floating point. Matrices
are small, dense, row-major lists of lists.

Definiteness is decided two independent ways, by Sylvester's criterion on
leading principal minors and by an LDLᵀ factorisation, and a third way for
matrices with non-positive off-diagonal entries: such a matrix is positive
definite exactly when some positive vector v has A·v positive too.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence, Union

from errors import DimensionMismatch, HypothesisViolation

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]
Matrix = list[list[Fraction]]
Vector = list[Fraction]


@dataclass(frozen=True)
class PivotFailure:
    """LDLᵀ met a zero pivot at ``index`` (0-based)."""

    index: int


@dataclass(frozen=True)
class LDLT:
    lower: Matrix
    diagonal: Vector


@dataclass(frozen=True)
class Singular:
    """Returned by solve_linear when the system has no unique solution."""

    rank: int


class NotFoundReason(str, Enum):
    SINGULAR = "singular"
    NOT_POSITIVE = "not_positive"


@dataclass(frozen=True)
class NotFound:
    """find_certificate could not produce a certificate."""

    reason: NotFoundReason
    solution: Vector | None = None


def as_matrix(a: Sequence[Sequence[Number]]) -> Matrix:
    """Copy into a square Fraction matrix."""
    n = len(a)
    rows = [[Fraction(x) for x in row] for row in a]
    for i, row in enumerate(rows):
        if len(row) != n:
            raise DimensionMismatch(f"Row {i} has length {len(row)}, expected {n}")
    return rows


def as_vector(v: Sequence[Number]) -> Vector:
    return [Fraction(x) for x in v]


def negate(a: Sequence[Sequence[Number]]) -> Matrix:
    return [[-x for x in row] for row in as_matrix(a)]


def identity(n: int) -> Matrix:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def mat_vec(a: Sequence[Sequence[Number]], v: Sequence[Number]) -> Vector:
    rows = as_matrix(a)
    vec = as_vector(v)
    if len(vec) != len(rows):
        raise DimensionMismatch(f"Vector of length {len(vec)} against {len(rows)}x{len(rows)} matrix")
    return [sum((x * y for x, y in zip(row, vec)), Fraction(0)) for row in rows]


def is_symmetric(a: Sequence[Sequence[Number]]) -> bool:
    rows = as_matrix(a)
    n = len(rows)
    return all(rows[i][j] == rows[j][i] for i in range(n) for j in range(i + 1, n))


def _require_symmetric(rows: Matrix) -> None:
    if not is_symmetric(rows):
        raise HypothesisViolation("Matrix is not symmetric")


def _require_nonpositive_off_diagonal(rows: Matrix) -> None:
    n = len(rows)
    for i in range(n):
        for j in range(n):
            if i != j and rows[i][j] > 0:
                raise HypothesisViolation(
                    f"Off-diagonal entry ({i}, {j}) = {rows[i][j]} is positive"
                )


def determinant(a: Sequence[Sequence[Number]]) -> Fraction:
    """Fraction-free (Bareiss) elimination; row swaps take the first nonzero pivot."""
    m = as_matrix(a)
    n = len(m)
    if n == 0:
        return Fraction(1)
    sign = 1
    previous = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous
        previous = m[k][k]
    return sign * m[n - 1][n - 1]


def leading_principal_minors(a: Sequence[Sequence[Number]]) -> list[Fraction]:
    rows = as_matrix(a)
    return [determinant([row[:k] for row in rows[:k]]) for k in range(1, len(rows) + 1)]


def ldlt(a: Sequence[Sequence[Number]]) -> LDLT | PivotFailure:
    """A = L·D·Lᵀ with L unit lower triangular, without pivoting."""
    rows = as_matrix(a)
    _require_symmetric(rows)
    n = len(rows)
    lower = identity(n)
    diagonal: Vector = []
    for j in range(n):
        d = rows[j][j] - sum((lower[j][k] ** 2 * diagonal[k] for k in range(j)), Fraction(0))
        if d == 0:
            logger.debug(f"LDLT zero pivot at index {j}")
            return PivotFailure(index=j)
        diagonal.append(d)
        for i in range(j + 1, n):
            s = rows[i][j] - sum((lower[i][k] * lower[j][k] * diagonal[k] for k in range(j)), Fraction(0))
            lower[i][j] = s / d
    return LDLT(lower=lower, diagonal=diagonal)


def is_positive_definite(a: Sequence[Sequence[Number]]) -> bool:
    """Sylvester's criterion: every leading principal minor is positive."""
    rows = as_matrix(a)
    _require_symmetric(rows)
    return all(determinant([row[:k] for row in rows[:k]]) > 0 for k in range(1, len(rows) + 1))


def is_negative_definite(a: Sequence[Sequence[Number]]) -> bool:
    return is_positive_definite(negate(a))


def verify_certificate(a: Sequence[Sequence[Number]], v: Sequence[Number]) -> bool:
    """True iff v > 0 and A·v > 0 entrywise; then A is positive definite."""
    rows = as_matrix(a)
    _require_nonpositive_off_diagonal(rows)
    vec = as_vector(v)
    if len(vec) != len(rows):
        raise DimensionMismatch(f"Certificate of length {len(vec)} for {len(rows)}x{len(rows)} matrix")
    if any(x <= 0 for x in vec):
        return False
    return all(x > 0 for x in mat_vec(rows, vec))


def solve_linear(a: Sequence[Sequence[Number]], b: Sequence[Number]) -> Vector | Singular:
    """Exact Gauss-Jordan elimination; the first nonzero entry in a column is the pivot."""
    rows = as_matrix(a)
    rhs = as_vector(b)
    n = len(rows)
    if len(rhs) != n:
        raise DimensionMismatch(f"Right-hand side of length {len(rhs)} for {n}x{n} system")
    aug = [row + [rhs[i]] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return Singular(rank=col)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def find_certificate(a: Sequence[Sequence[Number]]) -> Vector | NotFound:
    """Candidate v = A⁻¹·(1, ..., 1); positive exactly when A is positive definite."""
    rows = as_matrix(a)
    _require_nonpositive_off_diagonal(rows)
    solution = solve_linear(rows, [1] * len(rows))
    if isinstance(solution, Singular):
        return NotFound(reason=NotFoundReason.SINGULAR)
    if not verify_certificate(rows, solution):
        return NotFound(reason=NotFoundReason.NOT_POSITIVE, solution=solution)
    return solution


def is_strictly_diagonally_dominant(a: Sequence[Sequence[Number]]) -> bool:
    """|a_ii| > sum of |a_ij| over j != i, for every row."""
    rows = as_matrix(a)
    return all(
        abs(row[i]) > sum(abs(x) for j, x in enumerate(row) if j != i)
        for i, row in enumerate(rows)
    )


def scale_columns(a: Sequence[Sequence[Number]], v: Sequence[Number]) -> Matrix:
    """A·diag(v)."""
    rows = as_matrix(a)
    vec = as_vector(v)
    if len(vec) != len(rows):
        raise DimensionMismatch(f"Scaling vector of length {len(vec)} for {len(rows)} columns")
    return [[x * s for x, s in zip(row, vec)] for row in rows]
