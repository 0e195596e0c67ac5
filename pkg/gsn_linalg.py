"""
gsn_linalg.py
Exact linear algebra over Scalar
Matrices are numpy arrays of dtype object whose entries are Scalars
(plain ints are accepted and promoted on first use)
"""

import numpy as np

from extras import DivisionByZero, ShapeMismatch, module_logger
from gsn_algebra import ONE, ZERO, Scalar

logger = module_logger(__name__)


def as_matrix(rows) -> np.ndarray:
    """
    :param rows: nested sequence of Scalars / ints
    :return: 2-d object array of Scalars
    """
    matrix = np.array(rows, dtype=object)
    if matrix.ndim == 1:
        matrix = matrix.reshape(1, -1) if matrix.size else matrix.reshape(0, 0)
    for index, value in np.ndenumerate(matrix):
        if not isinstance(value, Scalar):
            matrix[index] = Scalar(value)
    return matrix


def zeros(rows: int, cols: int) -> np.ndarray:
    matrix = np.empty((rows, cols), dtype=object)
    matrix.fill(ZERO)
    return matrix


def identity(n: int) -> np.ndarray:
    matrix = zeros(n, n)
    for i in range(n):
        matrix[i, i] = ONE
    return matrix


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ShapeMismatch(f"cannot multiply {a.shape} by {b.shape}")
    if 0 in a.shape or 0 in b.shape:
        return zeros(a.shape[0], b.shape[1])
    return a.dot(b)


def chain(*matrices) -> np.ndarray:
    """
    Product of the matrices from left to right
    """
    result = matrices[0]
    for m in matrices[1:]:
        result = matmul(result, m)
    return result


def is_zero(matrix: np.ndarray) -> bool:
    return not any(bool(x) for x in matrix.flat)


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    if a.shape != b.shape:
        return False
    return a.size == 0 or is_zero(a - b)


def is_identity(matrix: np.ndarray) -> bool:
    rows, cols = matrix.shape
    return rows == cols and equal(matrix, identity(rows))


def is_idempotent(matrix: np.ndarray) -> bool:
    return equal(matmul(matrix, matrix), matrix)


def trace(matrix: np.ndarray) -> Scalar:
    total = ZERO
    for i in range(min(matrix.shape)):
        total = total + matrix[i, i]
    return total


def rref(matrix: np.ndarray) -> tuple:
    """
    Reduced row echelon form by exact Gauss-Jordan elimination
    :param matrix: object array
    :return: (reduced copy, tuple of pivot columns)
    """
    work = np.array(matrix, dtype=object, copy=True)
    rows, cols = work.shape
    pivots = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        pick = next((r for r in range(row, rows) if work[r, col]), None)
        if pick is None:
            continue
        if pick != row:
            work[[row, pick]] = work[[pick, row]]
        scale = work[row, col].inverse()
        work[row] = [x * scale for x in work[row]]
        for r in range(rows):
            if r != row and work[r, col]:
                factor = work[r, col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[row])]
        pivots.append(col)
        row += 1
    return work, tuple(pivots)


def rank(matrix: np.ndarray) -> int:
    if matrix.size == 0:
        return 0
    result = len(rref(matrix)[1])
    logger.debug("rank of %s matrix: %d", matrix.shape, result)
    return result


def inverse(matrix: np.ndarray) -> np.ndarray:
    rows, cols = matrix.shape
    if rows != cols:
        raise ShapeMismatch(f"cannot invert a {rows}x{cols} matrix")
    augmented = np.concatenate([matrix, identity(rows)], axis=1)
    reduced, pivots = rref(augmented)
    if pivots[:rows] != tuple(range(rows)):
        raise DivisionByZero("singular matrix")
    return reduced[:, rows:]


def solve(matrix: np.ndarray, rhs: np.ndarray):
    """
    One exact solution of matrix @ x = rhs
    :param matrix: m x n object array
    :param rhs: m x k object array
    :return: n x k solution, or None when the system is inconsistent
    """
    rows, cols = matrix.shape
    augmented = np.concatenate([matrix, rhs], axis=1)
    reduced, pivots = rref(augmented)
    if any(p >= cols for p in pivots):
        return None
    solution = zeros(cols, rhs.shape[1])
    for r, p in enumerate(pivots):
        solution[p] = reduced[r, cols:]
    return solution


def nullspace(matrix: np.ndarray) -> list:
    """
    :return: list of column vectors (1-d object arrays) spanning the kernel
    """
    rows, cols = matrix.shape
    if rows == 0:
        return [identity(cols)[:, j] for j in range(cols)]
    reduced, pivots = rref(matrix)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        vector = np.empty(cols, dtype=object)
        vector.fill(ZERO)
        vector[f] = ONE
        for r, p in enumerate(pivots):
            vector[p] = -reduced[r, f]
        basis.append(vector)
    return basis


def column_space(matrix: np.ndarray) -> np.ndarray:
    """
    :return: the pivot columns of matrix, a basis of its image
    """
    _, pivots = rref(matrix)
    return matrix[:, list(pivots)]
