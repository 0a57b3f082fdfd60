"""
Exact dense linear algebra over the rationals.

Matrices wrap a sympy ``DomainMatrix`` over ``QQ``; all public scalars are
``fractions.Fraction``. Indices are 0-based, the 1-based unit
matrix E^{i,j} is ``elementary(rows, cols, i - 1, j - 1)``.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, NamedTuple

if TYPE_CHECKING:
    from typing import Any, Iterable, Sequence

from fractions import Fraction
from functools import cached_property

from sympy import QQ, Poly, Symbol
from sympy.polys.matrices import DomainMatrix

from . import exceptions, logger

log = logger.get_logger(__name__)


def to_rational(value: Any) -> Fraction:
    """
    Convert an integer, a "p/q" string or an exact rational into a Fraction.
    Floats are refused, they would break exactness.

    Args:
        value (Any): Value to convert

    Returns:
        Fraction
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise exceptions.InputException(f"Not an exact rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise exceptions.InputException(f"Not a rational literal: {value!r}")
    if hasattr(value, "p") and hasattr(value, "q"):
        return Fraction(int(value.p), int(value.q))
    try:
        return Fraction(int(QQ.numer(value)), int(QQ.denom(value)))
    except Exception:
        raise exceptions.InputException(f"Not an exact rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """
    Serialize a rational as "p/q", or "p" when the denominator is 1.
    """
    return str(to_rational(value))


def _to_qq(value: Fraction):
    return QQ(value.numerator, value.denominator)


def _from_qq(element) -> Fraction:
    return Fraction(int(QQ.numer(element)), int(QQ.denom(element)))


class Matrix:
    """Immutable dense matrix over the rationals"""

    def __init__(self, rows: Iterable[Iterable[Any]]):
        grid = [[_to_qq(to_rational(value)) for value in row] for row in rows]
        if not grid or not grid[0]:
            raise exceptions.InputException("A matrix needs at least one row and column")
        cols = len(grid[0])
        if any(len(row) != cols for row in grid):
            raise exceptions.InputException("Matrix rows have different lengths")
        self._rep = DomainMatrix(grid, (len(grid), cols), QQ).to_dense()

    @classmethod
    def _wrap(cls, rep: DomainMatrix) -> Matrix:
        matrix = cls.__new__(cls)
        # sympy refuses arithmetic between sparse and dense reps
        matrix._rep = rep.to_dense()
        return matrix

    @classmethod
    def _from_domain_rows(cls, grid: list[list], shape: tuple[int, int]) -> Matrix:
        return cls._wrap(DomainMatrix(grid, shape, QQ))

    # Shape and entries

    @property
    def rows(self) -> int:
        return self._rep.shape[0]

    @property
    def cols(self) -> int:
        return self._rep.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._rep.shape

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @cached_property
    def entries(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(
            tuple(_from_qq(element) for element in row) for row in self._rep.to_list()
        )

    def to_rows(self) -> list[list[Fraction]]:
        return [list(row) for row in self.entries]

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self.entries[i][j]

    def column(self, j: int) -> Matrix:
        return Matrix([[row[j]] for row in self.entries])

    def submatrix(self, row_start: int, row_stop: int, col_start: int, col_stop: int):
        """
        Return the block of rows [row_start, row_stop) and columns [col_start, col_stop).
        """
        return Matrix([row[col_start:col_stop] for row in self.entries[row_start:row_stop]])

    @property
    def is_zero(self) -> bool:
        return self._rep.is_zero_matrix

    # Arithmetic

    def _check_same_shape(self, other: Matrix):
        if self.shape != other.shape:
            raise exceptions.InputException(
                f"Shape mismatch: {self.shape} and {other.shape}"
            )

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix._wrap(self._rep.add(other._rep))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix._wrap(self._rep.sub(other._rep))

    def __neg__(self) -> Matrix:
        return Matrix._wrap(self._rep.neg())

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise exceptions.InputException(
                f"Cannot multiply {self.shape} by {other.shape}"
            )
        return Matrix._wrap(self._rep.matmul(other._rep))

    def __mul__(self, scalar: Any) -> Matrix:
        if isinstance(scalar, Matrix):
            return NotImplemented
        factor = _to_qq(to_rational(scalar))
        grid = [[element * factor for element in row] for row in self._rep.to_list()]
        return Matrix._from_domain_rows(grid, self.shape)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.shape, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in row) for row in self.entries)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    @property
    def T(self) -> Matrix:
        return Matrix._wrap(self._rep.transpose())

    def power(self, exponent: int) -> Matrix:
        """
        Return this square matrix raised to a non-negative integer power.
        """
        if not self.is_square:
            raise exceptions.InputException("Only square matrices have powers")
        if exponent < 0:
            raise exceptions.InputException("Negative powers are not supported")
        result = identity(self.rows)
        for _ in range(exponent):
            result = result @ self
        return result

    def commutator(self, other: Matrix) -> Matrix:
        return self @ other - other @ self

    def det(self) -> Fraction:
        if not self.is_square:
            raise exceptions.InputException("Determinant of a non-square matrix")
        return _from_qq(self._rep.det())

    def inverse(self) -> Matrix:
        if self.det() == 0:
            raise exceptions.DomainException("Matrix is singular")
        return Matrix._wrap(self._rep.inv())

    def rref(self) -> tuple[Matrix, tuple[int, ...]]:
        """
        Reduced row echelon form with leftmost pivots.

        Returns:
            tuple[Matrix, tuple[int, ...]]: Echelon form and pivot columns
        """
        echelon, pivots = self._rep.rref()
        return Matrix._wrap(echelon), tuple(pivots)

    def kron(self, other: Matrix) -> Matrix:
        """
        Kronecker product, compatible with row-major vectorization:
        vec(L X R) = kron(L, R.T) vec(X).
        """
        left = self._rep.to_list()
        right = other._rep.to_list()
        rows, cols = other.shape
        grid = [
            [a * b for a in left_row for b in right_row]
            for left_row in left
            for right_row in right
        ]
        return Matrix._from_domain_rows(grid, (self.rows * rows, self.cols * cols))

    def vec(self) -> Matrix:
        """
        Row-major vectorization into a column vector.
        """
        return Matrix([[value] for row in self.entries for value in row])

    def hstack(self, *others: Matrix) -> Matrix:
        for other in others:
            if other.rows != self.rows:
                raise exceptions.InputException("hstack needs equal row counts")
        return Matrix._wrap(self._rep.hstack(*[o._rep for o in others]))

    def vstack(self, *others: Matrix) -> Matrix:
        for other in others:
            if other.cols != self.cols:
                raise exceptions.InputException("vstack needs equal column counts")
        return Matrix._wrap(self._rep.vstack(*[o._rep for o in others]))

    def charpoly(self) -> list[Fraction]:
        """
        Characteristic polynomial coefficients, leading coefficient first.
        """
        if not self.is_square:
            raise exceptions.InputException("Characteristic polynomial needs a square matrix")
        return [_from_qq(c) for c in self._rep.charpoly()]


# Constructed instances


def zeros(rows: int, cols: int) -> Matrix:
    if rows < 1 or cols < 1:
        raise exceptions.InputException(f"Invalid shape ({rows}, {cols})")
    return Matrix._wrap(DomainMatrix.zeros((rows, cols), QQ))


def identity(size: int) -> Matrix:
    if size < 1:
        raise exceptions.InputException(f"Invalid size {size}")
    return Matrix._wrap(DomainMatrix.eye(size, QQ))


def elementary(rows: int, cols: int, i: int, j: int) -> Matrix:
    """
    Unit matrix with a single 1 at the 0-based position (i, j).
    """
    if not (0 <= i < rows and 0 <= j < cols):
        raise exceptions.InputException(f"Position ({i}, {j}) outside ({rows}, {cols})")
    grid = [[0] * cols for _ in range(rows)]
    grid[i][j] = 1
    return Matrix(grid)


def diagonal(values: Sequence[Any]) -> Matrix:
    size = len(values)
    return Matrix(
        [[values[i] if i == j else 0 for j in range(size)] for i in range(size)]
    )


def jordan_block(size: int, eigenvalue: Any = 0, lower: bool = False) -> Matrix:
    """
    Jordan block of given size. Upper blocks J^p(a) carry the ones on the
    superdiagonal, lower blocks J_p(a) on the subdiagonal.

    Args:
        size (int): Block size
        eigenvalue (Any): Diagonal value
        lower (bool): Build J_p(a) instead of J^p(a)

    Returns:
        Matrix
    """
    value = to_rational(eigenvalue)
    grid = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        grid[i][i] = value
        if i + 1 < size:
            if lower:
                grid[i + 1][i] = Fraction(1)
            else:
                grid[i][i + 1] = Fraction(1)
    return Matrix(grid)


def block_diagonal(*blocks: Matrix) -> Matrix:
    rows = sum(block.rows for block in blocks)
    cols = sum(block.cols for block in blocks)
    grid = [[Fraction(0)] * cols for _ in range(rows)]
    r = c = 0
    for block in blocks:
        for i, row in enumerate(block.entries):
            grid[r + i][c : c + block.cols] = row
        r += block.rows
        c += block.cols
    return Matrix(grid)


def column_vector(values: Sequence[Any]) -> Matrix:
    return Matrix([[value] for value in values])


def unvec(vector: Matrix, rows: int, cols: int) -> Matrix:
    """
    Inverse of the row-major vectorization.
    """
    if vector.shape != (rows * cols, 1):
        raise exceptions.InputException(
            f"Vector of shape {vector.shape} does not hold a {rows}x{cols} matrix"
        )
    flat = [row[0] for row in vector.entries]
    return Matrix([flat[i * cols : (i + 1) * cols] for i in range(rows)])


def stack_columns(vectors: Sequence[Matrix]) -> Matrix:
    if not vectors:
        raise exceptions.InputException("Cannot stack an empty list of vectors")
    return vectors[0].hstack(*vectors[1:])


# Elimination


class SolveResult(NamedTuple):
    particular: Matrix
    kernel: list[Matrix]


def rank(matrix: Matrix) -> int:
    _, pivots = matrix.rref()
    return len(pivots)


def _kernel_from_rref(echelon: Matrix, pivots: tuple[int, ...], cols: int) -> list[Matrix]:
    basis = []
    pivot_set = set(pivots)
    for free in range(cols):
        if free in pivot_set:
            continue
        values = [Fraction(0)] * cols
        values[free] = Fraction(1)
        for row, pivot in enumerate(pivots):
            values[pivot] = -echelon[row, free]
        basis.append(column_vector(values))
    return basis


def kernel_basis(matrix: Matrix) -> list[Matrix]:
    """
    Basis of the right null space, one column vector per free column of the
    reduced echelon form.

    Args:
        matrix (Matrix)

    Returns:
        list[Matrix]: Column vectors, empty when the matrix has full column rank
    """
    echelon, pivots = matrix.rref()
    return _kernel_from_rref(echelon, pivots, matrix.cols)


def solve_linear(matrix: Matrix, b: Matrix) -> SolveResult | None:
    """
    Solve matrix @ x = b exactly.

    Args:
        matrix (Matrix): Coefficients
        b (Matrix): Right hand side column vector

    Returns:
        SolveResult | None: Particular solution (free variables set to 0) and
            kernel basis, or None if the system is inconsistent
    """
    if b.cols != 1 or b.rows != matrix.rows:
        raise exceptions.InputException(
            f"Right hand side {b.shape} does not fit a {matrix.shape} system"
        )
    echelon, pivots = matrix.hstack(b).rref()
    if matrix.cols in pivots:
        return None

    values = [Fraction(0)] * matrix.cols
    for row, pivot in enumerate(pivots):
        values[pivot] = echelon[row, matrix.cols]
    kernel = _kernel_from_rref(echelon, pivots, matrix.cols)
    return SolveResult(column_vector(values), kernel)


def span_basis(vectors: Sequence[Matrix]) -> list[Matrix]:
    """
    Canonical basis of the span of column vectors: the non-zero rows of the
    reduced echelon form of the stacked vectors, leftmost pivots first.

    Args:
        vectors (Sequence[Matrix]): Column vectors of equal length

    Returns:
        list[Matrix]: Column vectors
    """
    if not vectors:
        return []
    echelon, pivots = stack_columns(list(vectors)).T.rref()
    return [echelon.submatrix(i, i + 1, 0, echelon.cols).T for i in range(len(pivots))]


def span_rank(vectors: Sequence[Matrix]) -> int:
    if not vectors:
        return 0
    return rank(stack_columns(list(vectors)))


# Spectra and nilpotent structure


def rational_eigenvalues(matrix: Matrix) -> dict[Fraction, int]:
    """
    Eigenvalues with algebraic multiplicities, found by factoring the
    characteristic polynomial over the rationals.

    Args:
        matrix (Matrix): Square matrix

    Returns:
        dict[Fraction, int]: Eigenvalue to multiplicity, sorted by eigenvalue

    Raises:
        DomainException: Characteristic polynomial does not split over Q
    """
    t = Symbol("t")
    poly = Poly([QQ.to_sympy(_to_qq(c)) for c in matrix.charpoly()], t, domain=QQ)
    _, factors = poly.factor_list()

    eigenvalues: dict[Fraction, int] = {}
    for factor, multiplicity in factors:
        if factor.degree() != 1:
            raise exceptions.DomainException(
                f"Spectrum is not rational, irreducible factor {factor.as_expr()}"
            )
        a, b = factor.all_coeffs()
        root = to_rational(-b / a)
        eigenvalues[root] = eigenvalues.get(root, 0) + multiplicity

    return dict(sorted(eigenvalues.items()))


def rank_sequence(matrix: Matrix) -> list[int]:
    """
    Ranks of matrix^k for k = 0, 1, ... until the sequence stabilizes.
    """
    ranks = [matrix.rows]
    power = identity(matrix.rows)
    while True:
        power = power @ matrix
        ranks.append(rank(power))
        if ranks[-1] == ranks[-2]:
            return ranks[:-1]


def is_nilpotent(matrix: Matrix) -> bool:
    return matrix.is_square and matrix.power(matrix.rows).is_zero


def nilpotent_elementary_divisors(matrix: Matrix) -> list[int]:
    """
    Jordan block sizes of a nilpotent matrix, read off the rank sequence of
    its powers.

    Args:
        matrix (Matrix): Square nilpotent matrix

    Returns:
        list[int]: Exponents m_1 >= m_2 >= ... summing to the size

    Raises:
        DomainException: Matrix is not nilpotent
    """
    if not is_nilpotent(matrix):
        raise exceptions.DomainException("Elementary divisors need a nilpotent matrix")

    ranks = rank_sequence(matrix) + [0]
    exponents = []
    for k in range(1, len(ranks)):
        at_least_k = ranks[k - 1] - ranks[k]
        at_least_next = ranks[k] - ranks[k + 1] if k + 1 < len(ranks) else 0
        exponents.extend([k] * (at_least_k - at_least_next))

    log.debug(f"Rank sequence {ranks[:-1]} gives exponents {exponents}")
    return sorted(exponents, reverse=True)


def vector_order(theta: Matrix, vector: Matrix) -> int:
    """
    Smallest m with theta^m @ vector = 0.

    Args:
        theta (Matrix): Nilpotent operator
        vector (Matrix): Column vector

    Returns:
        int
    """
    order = 0
    current = vector
    while not current.is_zero:
        if order >= theta.rows:
            raise exceptions.DomainException("Operator is not nilpotent on this vector")
        current = theta @ current
        order += 1
    return order


class JordanDecomposition(NamedTuple):
    J: Matrix
    P: Matrix
    blocks: tuple[tuple[Fraction, int], ...]


def jordan_form(matrix: Matrix, eigenvalues: Sequence[Any]) -> JordanDecomposition:
    """
    Jordan form of a matrix whose spectrum is the given list of rationals.
    Blocks are upper Jordan blocks, grouped by first occurrence of the
    eigenvalue in the list and sorted by descending size inside a group.

    Args:
        matrix (Matrix): Square matrix
        eigenvalues (Sequence[Any]): Rational eigenvalues, repetitions ignored

    Returns:
        JordanDecomposition: J, P with P @ matrix @ P^-1 = J, and the blocks

    Raises:
        DomainException: The eigenvalues do not exhaust the spectrum
    """
    if not matrix.is_square:
        raise exceptions.InputException("Jordan form needs a square matrix")
    size = matrix.rows

    ordered: list[Fraction] = []
    for value in eigenvalues:
        value = to_rational(value)
        if value not in ordered:
            ordered.append(value)

    chains: list[Matrix] = []
    blocks: list[tuple[Fraction, int]] = []
    for mu in ordered:
        shifted = matrix - identity(size) * mu
        ranks = rank_sequence(shifted)
        if ranks[-1] == size:
            log.debug(f"{mu} is not an eigenvalue, skipped")
            continue

        # Kernels of the powers, K[s] = ker shifted^s
        powers = [identity(size)]
        for _ in range(len(ranks) - 1):
            powers.append(powers[-1] @ shifted)
        kernels = [kernel_basis(power) for power in powers]

        heads: list[tuple[Matrix, int]] = []
        for s in range(len(ranks) - 1, 0, -1):
            covered = list(kernels[s - 1])
            for head, length in heads:
                covered.append(powers[length - s] @ head)
            covered_rank = span_rank(covered)
            for candidate in kernels[s]:
                if span_rank(covered + [candidate]) > covered_rank:
                    covered.append(candidate)
                    covered_rank += 1
                    heads.append((candidate, s))

        for head, length in heads:
            chains.extend(powers[k] @ head for k in range(length - 1, -1, -1))
            blocks.append((mu, length))

    if len(chains) != size:
        raise exceptions.DomainException(
            f"Eigenvalues {[str(v) for v in ordered]} do not exhaust the spectrum"
        )

    basis = stack_columns(chains)
    P = basis.inverse()
    J = block_diagonal(*[jordan_block(length, mu) for mu, length in blocks])
    log.debug(f"Jordan blocks {[(str(mu), length) for mu, length in blocks]}")
    return JordanDecomposition(J, P, tuple(blocks))
