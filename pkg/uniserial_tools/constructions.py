"""
Named families of uniserial representations and their extensions.

Labels:
    KX      (alpha, lambda, n, k, X)  dimension n+1, 1 < k < n
    TOP     (alpha, lambda, n)        dimension n+1, split k = n
    BOTTOM  (alpha, lambda, n)        dimension n+1, split k = 1
    AA      (alpha, lambda, n, a)     dimension n+2, n odd
    DIAG    (alpha, lambda, ell)      dimension ell, single one-dimensional block
"""

from __future__ import annotations

from typing import TYPE_CHECKING, ClassVar, NamedTuple

if TYPE_CHECKING:
    from typing import Any, Mapping, Sequence

from dataclasses import dataclass
from fractions import Fraction

from . import exceptions, lie, linalg, logger, sl2
from .lie import JordanSpec, Representation
from .linalg import Matrix

log = logger.get_logger(__name__)


# Labels


@dataclass(frozen=True)
class _Label:
    variant: ClassVar[str] = ""

    alpha: Fraction
    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", linalg.to_rational(self.alpha))
        object.__setattr__(self, "lam", linalg.to_rational(self.lam))

    @property
    def spec(self) -> JordanSpec:
        return JordanSpec.from_pairs([(self.lam, self.n)])  # type: ignore

    def to_dict(self) -> dict:
        return {"variant": self.variant, "alpha": self.alpha, "lambda": self.lam}


def _check_size(name: str, value: Any, minimum: int):
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise exceptions.InputException(f"{name} must be an integer >= {minimum}, got {value!r}")


@dataclass(frozen=True)
class KXLabel(_Label):
    variant: ClassVar[str] = "KX"

    n: int
    k: int
    X: Matrix

    def __post_init__(self):
        super().__post_init__()
        _check_size("n", self.n, 3)
        if not 1 < self.k < self.n:
            raise exceptions.InputException(f"KX needs 1 < k < n, got k={self.k}, n={self.n}")
        if self.X.shape != (self.k - 1, self.n - self.k):
            raise exceptions.InputException(
                f"X must be {self.k - 1}x{self.n - self.k}, got {self.X.shape}"
            )

    def to_dict(self) -> dict:
        return super().to_dict() | {"n": self.n, "k": self.k, "X": self.X}


@dataclass(frozen=True)
class TopLabel(_Label):
    variant: ClassVar[str] = "TOP"

    n: int

    def __post_init__(self):
        super().__post_init__()
        _check_size("n", self.n, 2)

    def to_dict(self) -> dict:
        return super().to_dict() | {"n": self.n}


@dataclass(frozen=True)
class BottomLabel(_Label):
    variant: ClassVar[str] = "BOTTOM"

    n: int

    def __post_init__(self):
        super().__post_init__()
        _check_size("n", self.n, 2)

    def to_dict(self) -> dict:
        return super().to_dict() | {"n": self.n}


@dataclass(frozen=True)
class AALabel(_Label):
    variant: ClassVar[str] = "AA"

    n: int
    a: tuple[Fraction, ...]

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "a", tuple(linalg.to_rational(v) for v in self.a))
        _check_size("n", self.n, 3)
        if self.n % 2 == 0:
            raise exceptions.InputException(f"AA needs odd n, got {self.n}")
        if len(self.a) != self.n:
            raise exceptions.InputException(f"a must have {self.n} entries, got {len(self.a)}")
        if self.a[0] != 1:
            raise exceptions.InputException("a must start with 1")
        # Entries a_2, a_4, ... sit at the odd 0-based positions
        if any(self.a[i] != 0 for i in range(1, self.n, 2)):
            raise exceptions.InputException("a must vanish at every even position")

    def to_dict(self) -> dict:
        return super().to_dict() | {"n": self.n, "a": list(self.a)}


@dataclass(frozen=True)
class DiagLabel(_Label):
    variant: ClassVar[str] = "DIAG"

    ell: int

    def __post_init__(self):
        super().__post_init__()
        _check_size("ell", self.ell, 2)

    @property
    def spec(self) -> JordanSpec:
        return JordanSpec.from_pairs([(self.lam, 1)])

    def to_dict(self) -> dict:
        return super().to_dict() | {"ell": self.ell}


ClassLabel = KXLabel | TopLabel | BottomLabel | AALabel | DiagLabel

LABEL_VARIANTS: dict[str, type[_Label]] = {
    cls.variant: cls for cls in (KXLabel, TopLabel, BottomLabel, AALabel, DiagLabel)
}


# Constructions


def construct_R_pqN(alpha: Any, lam: Any, n: int, p: int, q: int, N: Matrix) -> Representation:
    """
    Raw map x -> J^p(alpha) + J^q(alpha - lambda), v_0 -> N placed top-right.
    It is a representation exactly when p+q-1 <= n, the map itself is built
    for every n.

    Args:
        alpha (Rational)
        lam (Rational)
        n (int): Size of the single block of V
        p (int): Size of the first Jordan block of A
        q (int): Size of the second Jordan block of A
        N (Matrix): p x q matrix with non-zero bottom-left entry

    Returns:
        Representation
    """
    _check_size("n", n, 1)
    _check_size("p", p, 1)
    _check_size("q", q, 1)
    if N.shape != (p, q):
        raise exceptions.InputException(f"N must be {p}x{q}, got {N.shape}")
    if not sl2.minimal_poly_criterion(N):
        raise exceptions.InputException("N must have a non-zero bottom-left entry")

    alpha = linalg.to_rational(alpha)
    lam = linalg.to_rational(lam)
    A = linalg.block_diagonal(
        linalg.jordan_block(p, alpha), linalg.jordan_block(q, alpha - lam)
    )
    spec = JordanSpec.from_pairs([(lam, n)])
    return lie.make_representation(spec, A, [sl2.embed_hat(N)])


def kx_matrix(k: int, n: int, X: Matrix | None) -> Matrix:
    """
    The k x (n+1-k) matrix with a 1 in the bottom-left corner, X in the
    top-right (k-1) x (n-k) block and zeros elsewhere.
    """
    grid = [[Fraction(0)] * (n + 1 - k) for _ in range(k)]
    grid[k - 1][0] = Fraction(1)
    if X is not None:
        for i, row in enumerate(X.entries):
            grid[i][1:] = row
    return Matrix(grid)


def construct_R_a(alpha: Any, lam: Any, n: int, a: Sequence[Any]) -> Representation:
    """
    Raw map x -> alpha + J^n(alpha - lambda) + (alpha - 2 lambda) of
    dimension n+2, v_0 -> a in the first row and a 1 closing the chain in
    the last column. A representation exactly when n is odd and a vanishes at
    every even position.

    Args:
        alpha (Rational)
        lam (Rational)
        n (int): Size of the single block of V
        a (Sequence[Rational]): n entries starting with 1

    Returns:
        Representation
    """
    _check_size("n", n, 1)
    a = [linalg.to_rational(v) for v in a]
    if len(a) != n or a[0] != 1:
        raise exceptions.InputException(f"a must have {n} entries starting with 1")

    alpha = linalg.to_rational(alpha)
    lam = linalg.to_rational(lam)
    A = linalg.block_diagonal(
        linalg.diagonal([alpha]),
        linalg.jordan_block(n, alpha - lam),
        linalg.diagonal([alpha - 2 * lam]),
    )
    grid = [[Fraction(0)] * (n + 2) for _ in range(n + 2)]
    grid[0][1 : n + 1] = a
    grid[n][n + 1] = Fraction(1)
    spec = JordanSpec.from_pairs([(lam, n)])
    return lie.make_representation(spec, A, [Matrix(grid)])


def construct_T(alpha: Any, lam: Any, ell: int) -> Representation:
    """
    x -> diag(alpha, alpha - lambda, ..., alpha - (ell-1) lambda), v -> J^ell(0).
    """
    _check_size("ell", ell, 1)
    alpha = linalg.to_rational(alpha)
    lam = linalg.to_rational(lam)
    A = linalg.diagonal([alpha - i * lam for i in range(ell)])
    spec = JordanSpec.from_pairs([(lam, 1)])
    return lie.make_representation(spec, A, [linalg.jordan_block(ell)])


def construct_R(label: ClassLabel) -> Representation:
    """
    Build the representation named by a label.
    """
    match label:
        case KXLabel(alpha=alpha, lam=lam, n=n, k=k, X=X):
            return construct_R_pqN(alpha, lam, n, k, n + 1 - k, kx_matrix(k, n, X))
        case TopLabel(alpha=alpha, lam=lam, n=n):
            return construct_R_pqN(alpha, lam, n, n, 1, kx_matrix(n, n, None))
        case BottomLabel(alpha=alpha, lam=lam, n=n):
            return construct_R_pqN(alpha, lam, n, 1, n, kx_matrix(1, n, None))
        case AALabel(alpha=alpha, lam=lam, n=n, a=a):
            return construct_R_a(alpha, lam, n, a)
        case DiagLabel(alpha=alpha, lam=lam, ell=ell):
            return construct_T(alpha, lam, ell)
    raise exceptions.InputException(f"Unknown label {label!r}")


# Extensions


class ParameterSlot(NamedTuple):
    """Coefficient of theta^power E(generator) in the image of a block generator"""

    block: int
    generator: int
    power: int


@dataclass(frozen=True)
class ExtensionSpace:
    """
    Extensions of R(alpha, k, X) to a multi-block algebra with one
    eigenvalue. Block 0 is fixed, every other block generator maps to a
    combination of theta^power E(j) annihilated by theta^{n_i}.
    """

    spec: JordanSpec
    alpha: Fraction
    k: int
    X: Matrix
    base: Representation
    target_generators: tuple[sl2.LowestWeightVector, ...]
    slots: tuple[ParameterSlot, ...]

    @property
    def p(self) -> int:
        return self.k

    @property
    def q(self) -> int:
        return self.spec.n + 1 - self.k

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(g.order for g in self.target_generators)

    def parameter_count(self, block: int) -> int:
        return sum(1 for slot in self.slots if slot.block == block)

    def block_counts(self) -> dict[int, int]:
        return {i: self.parameter_count(i) for i in range(1, self.spec.block_count)}

    def complete(self, values: Mapping[Any, Any]) -> dict[ParameterSlot, Fraction]:
        """
        Full assignment with every unlisted slot set to 0.

        Args:
            values (Mapping): Slot (or (block, generator, power) tuple) to rational

        Returns:
            dict[ParameterSlot, Fraction]
        """
        assignment = {slot: Fraction(0) for slot in self.slots}
        for key, value in values.items():
            slot = ParameterSlot(*key)
            if slot not in assignment:
                raise exceptions.InputException(f"{tuple(slot)} is not a parameter slot")
            assignment[slot] = linalg.to_rational(value)
        return assignment

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "alpha": self.alpha,
            "k": self.k,
            "X": self.X,
            "orders": list(self.orders),
            "target_generators": [g.to_dict() for g in self.target_generators],
            "block_counts": {str(i): c for i, c in self.block_counts().items()},
            "slots": [slot._asdict() for slot in self.slots],
        }


class ExtensionResult(NamedTuple):
    representation: Representation
    injective: bool

    def to_dict(self) -> dict:
        return {"representation": self.representation.to_dict(), "injective": self.injective}


def extension_space(spec: JordanSpec, alpha: Any, k: int, X: Matrix | None = None) -> ExtensionSpace:
    """
    Parameter space of the extensions of R(alpha, k, X) to the algebra of spec.

    Args:
        spec (JordanSpec): Single eigenvalue lambda != 0, sizes n = n_1 >= n_2 >= ...
        alpha (Rational)
        k (int): Split index, 1 < k < n
        X (Matrix | None): (k-1) x (n-k) parameter matrix, zero by default

    Returns:
        ExtensionSpace

    Raises:
        ExtensionRefusedException: Named condition fails
    """
    if len(spec.eigenvalues) != 1:
        raise exceptions.ExtensionRefusedException(
            "single-eigenvalue", "Extensions need a single eigenvalue on V"
        )
    lam = spec.eigenvalues[0]
    if lam == 0:
        raise exceptions.ExtensionRefusedException(
            "nonzero-eigenvalue", "Extensions need a non-zero eigenvalue"
        )
    n = spec.n
    if not 1 < k < n:
        raise exceptions.ExtensionRefusedException(
            "split-index", f"Split index must satisfy 1 < k < n={n}, got k={k}"
        )
    for i, size in enumerate(spec.sizes[1:], start=1):
        if size > n - 2 * i:
            raise exceptions.ExtensionRefusedException(
                "spacing", f"Block {i} has size {size} > n - {2 * i} = {n - 2 * i}"
            )
    bound = min(k, n + 1 - k)
    if spec.block_count > bound:
        raise exceptions.ExtensionRefusedException(
            "block-count", f"{spec.block_count} blocks exceed min(k, n+1-k) = {bound}"
        )

    if X is None:
        X = linalg.zeros(k - 1, n - k)
    alpha = linalg.to_rational(alpha)
    base = construct_R(KXLabel(alpha, lam, n, k, X))
    targets = tuple(sl2.lowest_weight_vectors(k, n + 1 - k))

    slots = []
    for block, size in enumerate(spec.sizes[1:], start=1):
        for target in targets:
            for power in range(max(0, target.order - size), target.order):
                slots.append(ParameterSlot(block, target.index, power))

    log.debug(f"Extension space for {spec.sizes}, k={k}: {len(slots)} slots")
    return ExtensionSpace(spec, alpha, k, X, base, targets, tuple(slots))


def witness_parameters(space: ExtensionSpace) -> dict[ParameterSlot, Fraction]:
    """
    Injective assignment sending block i to theta^{order_i - n_i} E(i).
    """
    values = {}
    for block, size in enumerate(space.spec.sizes[1:], start=1):
        order = space.target_generators[block].order
        values[ParameterSlot(block, block, order - size)] = Fraction(1)
    return space.complete(values)


def build_extension(space: ExtensionSpace, params: Mapping[Any, Any]) -> ExtensionResult:
    """
    Representation of the full algebra for a parameter assignment.

    Args:
        space (ExtensionSpace)
        params (Mapping): Slot to rational, missing slots count as 0

    Returns:
        ExtensionResult: Representation and whether V maps injectively
    """
    assignment = space.complete(params)
    targets = {g.index: g.matrix for g in space.target_generators}

    generators = [space.base.generators[0]]
    for block in range(1, space.spec.block_count):
        image = linalg.zeros(space.p, space.q)
        for slot, value in assignment.items():
            if slot.block == block and value != 0:
                image = image + sl2.theta_apply(targets[slot.generator], slot.power) * value
        generators.append(sl2.embed_hat(image))

    rep = lie.make_representation(space.spec, space.base.A, generators)
    images = linalg.stack_columns([image.vec() for image in rep.v_images()])
    injective = linalg.rank(images) == space.spec.dim_v
    log.debug(f"Built extension, injective={injective}")
    return ExtensionResult(rep, injective)


def build_extension_type3(
    alpha: Any, lam: Any, n: int, a: Sequence[Any], beta: Any
) -> Representation:
    """
    Extend R(alpha, a) to the algebra of J^n(lambda) + J^1(2 lambda) by
    sending the second generator to beta in the top-right corner.
    """
    beta = linalg.to_rational(beta)
    if beta == 0:
        raise exceptions.InputException("beta must be non-zero")
    label = AALabel(alpha, lam, n, tuple(a))
    base = construct_R(label)
    d = n + 2
    spec = JordanSpec.from_pairs([(label.lam, n), (2 * label.lam, 1)])
    corner = linalg.elementary(d, d, 0, d - 1) * beta
    return lie.make_representation(spec, base.A, [base.generators[0], corner])


# Block normalization


def toeplitz_upper(first_row: Sequence[Any]) -> Matrix:
    """
    Polynomial in J(0) with the given coefficients: constant diagonals, upper triangular.
    """
    size = len(first_row)
    return Matrix(
        [[first_row[j - i] if j >= i else 0 for j in range(size)] for i in range(size)]
    )


def _offsets(sizes: Sequence[int]) -> list[int]:
    offsets = [0]
    for size in sizes:
        offsets.append(offsets[-1] + size)
    return offsets


def normalize_superdiagonal(E: Matrix, sizes: Sequence[int]) -> tuple[Matrix, Matrix]:
    """
    Conjugate a strictly block upper triangular E by a block-diagonal X whose
    blocks are invertible polynomials in J(0), so that every block above the
    diagonal has first column equal to the last unit vector and the final one
    has last row equal to the first unit vector.

    Args:
        E (Matrix): Square matrix
        sizes (Sequence[int]): Diagonal block sizes

    Returns:
        tuple[Matrix, Matrix]: H = X E X^-1 and X

    Raises:
        DomainException: A superdiagonal block has a zero bottom-left entry
    """
    sizes = list(sizes)
    offsets = _offsets(sizes)
    if not E.is_square or offsets[-1] != E.rows:
        raise exceptions.InputException(f"Block sizes {sizes} do not fit a {E.shape} matrix")
    for i in range(len(sizes)):
        diagonal_and_below = E.submatrix(offsets[i], offsets[i + 1], 0, offsets[i + 1])
        if not diagonal_and_below.is_zero:
            raise exceptions.InputException("E must be strictly block upper triangular")

    count = len(sizes)
    if count == 1:
        return E, linalg.identity(E.rows)

    superdiagonal = [
        E.submatrix(offsets[i], offsets[i + 1], offsets[i + 1], offsets[i + 2])
        for i in range(count - 1)
    ]
    for i, block in enumerate(superdiagonal):
        if block[block.rows - 1, 0] == 0:
            raise exceptions.DomainException(f"Block {i} has a zero bottom-left entry")

    # Y_i first_column(E_i) = last unit vector, solved over Toeplitz coefficients
    units = []
    for block in superdiagonal:
        size = block.rows
        column = block.column(0)
        shift = linalg.jordan_block(size)
        system = linalg.stack_columns([shift.power(r) @ column for r in range(size)])
        target = linalg.column_vector([1 if r == size - 1 else 0 for r in range(size)])
        solution = linalg.solve_linear(system, target)
        units.append(toeplitz_upper([solution.particular[r, 0] for r in range(size)]))

    # Backward rescaling so consecutive constant terms match
    scales = [Fraction(1)] * (count - 1)
    for i in range(count - 3, -1, -1):
        scales[i] = scales[i + 1] * units[i + 1][0, 0]
    blocks = [unit * scale for unit, scale in zip(units, scales)]

    last_row = (blocks[-1] @ superdiagonal[-1]).entries[-1]
    blocks.append(toeplitz_upper(last_row))

    X = linalg.block_diagonal(*blocks)
    H = X @ E @ X.inverse()
    log.debug(f"Normalized superdiagonal for block sizes {sizes}")
    return H, X
