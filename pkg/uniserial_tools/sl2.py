"""
sl(2) machinery on the space M_{p,q} of p x q matrices.

M_{p,q} is identified with the top-right block of (p+q) x (p+q) matrices. The
nilpotent element e of sl(2) acts there by X -> J^p(0) X - X J^q(0), which is
also the operator theta = ad A - lambda for A = J^p(alpha) + J^q(alpha - lambda).
All operator matrices act on row-major vectorizations.
"""

from __future__ import annotations

from typing import NamedTuple

from dataclasses import dataclass
from fractions import Fraction

from . import exceptions, linalg, logger
from .linalg import Matrix

log = logger.get_logger(__name__)


@dataclass(frozen=True)
class Sl2Triple:
    """Irreducible matrix model of sl(2) with highest weight a"""

    h: Matrix
    e: Matrix
    f: Matrix
    highest_weight: int

    def check_relations(self) -> bool:
        return (
            self.h.commutator(self.e) == self.e * 2
            and self.h.commutator(self.f) == -self.f * 2
            and self.e.commutator(self.f) == self.h
        )


class MpqAction(NamedTuple):
    E_op: Matrix
    H_op: Matrix
    F_op: Matrix


@dataclass(frozen=True)
class LowestWeightVector:
    """Generator of one irreducible summand of M_{p,q}, annihilated by f"""

    index: int
    coefficients: tuple[Fraction, ...]
    matrix: Matrix

    @property
    def p(self) -> int:
        return self.matrix.rows

    @property
    def q(self) -> int:
        return self.matrix.cols

    @property
    def weight(self) -> int:
        return -(self.p - 1) - (self.q - 1) + 2 * self.index

    @property
    def order(self) -> int:
        """
        Smallest power of theta annihilating this vector.
        """
        return self.p + self.q - 1 - 2 * self.index

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "coefficients": list(self.coefficients),
            "matrix": self.matrix,
            "order": self.order,
            "weight": self.weight,
        }


@dataclass(frozen=True)
class CgDecomposition:
    p: int
    q: int
    exponents: tuple[int, ...]
    generators: tuple[LowestWeightVector, ...]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "exponents": list(self.exponents),
            "generators": [g.to_dict() for g in self.generators],
        }


class CgBasisVector(NamedTuple):
    index: int
    power: int
    vector: Matrix


def _check_dimensions(*values: int):
    for value in values:
        if not isinstance(value, int) or value < 1:
            raise exceptions.InputException(f"Dimensions must be positive integers, got {value!r}")


def sl2_irrep(a: int) -> Sl2Triple:
    """
    Irreducible (a+1)-dimensional representation of sl(2).

    h is diagonal with entries a, a-2, ..., -a and e = J^{a+1}(0). The lower
    subdiagonal of f is found by solving [e, f] = h.

    Args:
        a (int): Highest weight

    Returns:
        Sl2Triple
    """
    if not isinstance(a, int) or a < 0:
        raise exceptions.InputException(f"Highest weight must be a non-negative integer, got {a!r}")

    size = a + 1
    h = linalg.diagonal([a - 2 * i for i in range(size)])
    e = linalg.jordan_block(size)
    if a == 0:
        return Sl2Triple(h=h, e=e, f=linalg.zeros(1, 1), highest_weight=0)

    # One unknown per subdiagonal entry f[k+1, k]
    unknowns = [linalg.elementary(size, size, k + 1, k) for k in range(a)]
    system = linalg.stack_columns([e.commutator(u).vec() for u in unknowns])
    solution = linalg.solve_linear(system, h.vec())
    if solution is None or solution.kernel:
        raise exceptions.InconsistencyException(f"[e, f] = h has no unique solution for a={a}")

    f = linalg.zeros(size, size)
    for k, unknown in enumerate(unknowns):
        f = f + unknown * solution.particular[k, 0]

    log.debug(f"sl2 irrep a={a}, f subdiagonal {[str(f[k + 1, k]) for k in range(a)]}")
    return Sl2Triple(h=h, e=e, f=f, highest_weight=a)


def _commutator_operator(left: Matrix, right: Matrix) -> Matrix:
    # vec(L X - X R) = (L (x) I - I (x) R^T) vec(X)
    return left.kron(linalg.identity(right.rows)) - linalg.identity(left.rows).kron(right.T)


def mpq_action(p: int, q: int) -> MpqAction:
    """
    Operators of e, h, f on vectorized M_{p,q}, acting by commutators with
    the block-diagonal images of R_{p-1} and R_{q-1}.

    Args:
        p (int): Rows
        q (int): Columns

    Returns:
        MpqAction
    """
    _check_dimensions(p, q)
    left = sl2_irrep(p - 1)
    right = sl2_irrep(q - 1)
    return MpqAction(
        E_op=_commutator_operator(left.e, right.e),
        H_op=_commutator_operator(left.h, right.h),
        F_op=_commutator_operator(left.f, right.f),
    )


def theta_operator(p: int, q: int, alpha=0, lam=0) -> Matrix:
    """
    Matrix of X -> [A, X] - lambda X on vectorized M_{p,q} where
    A = J^p(alpha) + J^q(alpha - lambda).

    Args:
        p (int): Rows
        q (int): Columns
        alpha (Rational): Eigenvalue of the first block
        lam (Rational): Shift

    Returns:
        Matrix: pq x pq operator, independent of alpha and lambda
    """
    _check_dimensions(p, q)
    alpha = linalg.to_rational(alpha)
    lam = linalg.to_rational(lam)
    operator = _commutator_operator(
        linalg.jordan_block(p, alpha), linalg.jordan_block(q, alpha - lam)
    )
    return operator - linalg.identity(p * q) * lam


def theta_apply(N: Matrix, times: int = 1) -> Matrix:
    """
    Apply theta to a p x q matrix without building the operator.
    """
    shift_left = linalg.jordan_block(N.rows)
    shift_right = linalg.jordan_block(N.cols)
    for _ in range(times):
        N = shift_left @ N - N @ shift_right
    return N


def lowest_weight_coefficients(p: int, q: int, i: int) -> tuple[Fraction, ...]:
    """
    Coefficients alpha_0, ..., alpha_i of the lowest weight vector E(i), from
    the closed product formula.
    """
    a, b = p - 1, q - 1
    coefficients = [Fraction(1)]
    for j in range(1, i + 1):
        factor = Fraction((i + 1 - j) * (b + j - i), j * (a + 1 - j))
        coefficients.append(coefficients[-1] * factor)
    return tuple(coefficients)


def lowest_weight_vectors(p: int, q: int) -> list[LowestWeightVector]:
    """
    The min(p, q) lowest weight vectors of M_{p,q}.

    E(i) is supported on the i-th diagonal counted from the bottom-left corner:
    E(i) = sum over t of alpha_t at position (p-1-t, i-t).

    Args:
        p (int): Rows
        q (int): Columns

    Returns:
        list[LowestWeightVector]: Indices 0 .. min(p, q) - 1
    """
    _check_dimensions(p, q)
    a = p - 1
    vectors = []
    for i in range(min(p, q)):
        coefficients = lowest_weight_coefficients(p, q, i)
        grid = [[Fraction(0)] * q for _ in range(p)]
        for t, coefficient in enumerate(coefficients):
            grid[a - t][i - t] = coefficient
        vectors.append(LowestWeightVector(index=i, coefficients=coefficients, matrix=Matrix(grid)))
    return vectors


def cg_elementary_divisors(p: int, q: int) -> CgDecomposition:
    """
    Clebsch-Gordan decomposition of M_{p,q} under theta: exponents
    p+q-1, p+q-3, ..., one per lowest weight vector.

    Args:
        p (int): Rows
        q (int): Columns

    Returns:
        CgDecomposition
    """
    generators = tuple(lowest_weight_vectors(p, q))
    exponents = tuple(p + q - 1 - 2 * i for i in range(min(p, q)))
    return CgDecomposition(p=p, q=q, exponents=exponents, generators=generators)


def minimal_poly_criterion(N: Matrix) -> bool:
    """
    Whether N has the maximal theta-order p+q-1, which happens exactly when
    its bottom-left entry is non-zero.
    """
    return N[N.rows - 1, 0] != 0


def embed_hat(N: Matrix) -> Matrix:
    """
    Place a p x q matrix in the top-right block of a (p+q) x (p+q) zero matrix.
    """
    p, q = N.shape
    grid = [[Fraction(0)] * (p + q) for _ in range(p + q)]
    for i, row in enumerate(N.entries):
        grid[i][p:] = row
    return Matrix(grid)


def cg_basis(p: int, q: int) -> list[CgBasisVector]:
    """
    Basis theta^k vec(E(i)) of vectorized M_{p,q}, for every lowest weight
    vector E(i) and 0 <= k < order of E(i).
    """
    basis = []
    for lwv in lowest_weight_vectors(p, q):
        current = lwv.matrix
        for power in range(lwv.order):
            basis.append(CgBasisVector(lwv.index, power, current.vec()))
            current = theta_apply(current)
    return basis


def cg_coordinates(N: Matrix) -> dict[tuple[int, int], Fraction]:
    """
    Coordinates of N in the Clebsch-Gordan basis, keyed by (index, power).

    Args:
        N (Matrix): p x q matrix

    Returns:
        dict[tuple[int, int], Fraction]: Non-zero coordinates only
    """
    basis = cg_basis(*N.shape)
    system = linalg.stack_columns([b.vector for b in basis])
    solution = linalg.solve_linear(system, N.vec())
    if solution is None or solution.kernel:
        raise exceptions.InconsistencyException("Clebsch-Gordan vectors do not form a basis")
    return {
        (b.index, b.power): solution.particular[row, 0]
        for row, b in enumerate(basis)
        if solution.particular[row, 0] != 0
    }
