from __future__ import annotations

from typing import TYPE_CHECKING, NamedTuple

if TYPE_CHECKING:
    from typing import Any, Iterable, Sequence

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import exceptions, linalg, logger
from .linalg import Matrix

log = logger.get_logger(__name__)


class JordanBlock(NamedTuple):
    eigenvalue: Fraction
    size: int


@dataclass(frozen=True)
class JordanSpec:
    """Jordan form of x acting on V, as (eigenvalue, size) blocks"""

    blocks: tuple[JordanBlock, ...]

    def __post_init__(self):
        blocks = tuple(
            JordanBlock(linalg.to_rational(eigenvalue), size) for eigenvalue, size in self.blocks
        )
        if not blocks:
            raise exceptions.InputException("A Jordan specification needs at least one block")
        for block in blocks:
            if not isinstance(block.size, int) or isinstance(block.size, bool) or block.size < 1:
                raise exceptions.InputException(f"Invalid block size {block.size!r}")

        for eigenvalue in {block.eigenvalue for block in blocks}:
            sizes = [block.size for block in blocks if block.eigenvalue == eigenvalue]
            if sizes != sorted(sizes, reverse=True):
                raise exceptions.InputException(
                    f"Block sizes for eigenvalue {eigenvalue} must be descending, got {sizes}"
                )
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Any, int]]) -> JordanSpec:
        return cls(tuple(JordanBlock(linalg.to_rational(value), size) for value, size in pairs))

    @property
    def dim_v(self) -> int:
        return sum(block.size for block in self.blocks)

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def n(self) -> int:
        """
        Size of the first block.
        """
        return self.blocks[0].size

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(block.size for block in self.blocks)

    @property
    def eigenvalues(self) -> tuple[Fraction, ...]:
        """
        Distinct eigenvalues in order of first occurrence.
        """
        return tuple(dict.fromkeys(block.eigenvalue for block in self.blocks))

    @property
    def is_diagonalizable(self) -> bool:
        return all(block.size == 1 for block in self.blocks)

    def to_dict(self) -> list[dict]:
        return [{"eigenvalue": block.eigenvalue, "size": block.size} for block in self.blocks]


@dataclass(frozen=True)
class LieAlgebraData:
    """
    The algebra g = <x> + V. Basis order is x first, then v[i,j] for every
    block i in spec order and 0 <= j < n_i.
    """

    spec: JordanSpec

    @property
    def dim(self) -> int:
        return 1 + self.spec.dim_v

    @cached_property
    def labels(self) -> tuple[str, ...]:
        labels = ["x"]
        for i, block in enumerate(self.spec.blocks):
            labels.extend(f"v[{i},{j}]" for j in range(block.size))
        return tuple(labels)

    @cached_property
    def _offsets(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate((b.size for b in self.spec.blocks), initial=1))

    def basis_index(self, block: int, j: int) -> int:
        if not 0 <= j < self.spec.blocks[block].size:
            raise exceptions.InputException(f"v[{block},{j}] is not a basis element")
        return self._offsets[block] + j

    def locate(self, index: int) -> tuple[int, int] | None:
        """
        Block and chain position of a basis index, None for x.
        """
        if index == 0:
            return None
        for block, offset in enumerate(self._offsets[:-1]):
            if index < self._offsets[block + 1]:
                return block, index - offset
        raise exceptions.InputException(f"Basis index {index} out of range")

    def bracket(self, a: int, b: int) -> dict[int, Fraction]:
        """
        Structure constants of [basis_a, basis_b] as a sparse coordinate dict.
        """
        if a == b or (a != 0 and b != 0):
            return {}
        if b == 0:
            return {c: -value for c, value in self.bracket(b, a).items()}

        block, j = self.locate(b)
        result = {}
        eigenvalue = self.spec.blocks[block].eigenvalue
        if eigenvalue != 0:
            result[b] = eigenvalue
        if j + 1 < self.spec.blocks[block].size:
            result[b + 1] = Fraction(1)
        return result

    def adjoint(self, a: int) -> Matrix:
        """
        Matrix of ad basis_a in the algebra basis.
        """
        grid = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for b in range(self.dim):
            for c, value in self.bracket(a, b).items():
                grid[c][b] = value
        return Matrix(grid)

    def check_jacobi(self) -> bool:
        adjoints = [self.adjoint(a) for a in range(self.dim)]
        for a, b in itertools.combinations(range(self.dim), 2):
            expected = linalg.zeros(self.dim, self.dim)
            for c, value in self.bracket(a, b).items():
                expected = expected + adjoints[c] * value
            if adjoints[a].commutator(adjoints[b]) != expected:
                return False
        return True


def build_algebra(spec: JordanSpec) -> LieAlgebraData:
    return LieAlgebraData(spec)


def ad_shift(A: Matrix, lam: Any, M: Matrix) -> Matrix:
    """
    (ad A - lambda) applied to M.
    """
    return A.commutator(M) - M * lam


@dataclass(frozen=True)
class Representation:
    """
    Matrix representation given by the image A of x and the images of the
    block generators v[i,0]. Images of v[i,j] are derived by iterating
    ad A - lambda_i.
    """

    algebra: LieAlgebraData
    d: int
    A: Matrix
    generators: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.A.shape != (self.d, self.d):
            raise exceptions.InputException(f"Image of x must be {self.d}x{self.d}")
        if len(self.generators) != self.spec.block_count:
            raise exceptions.InputException(
                f"Expected {self.spec.block_count} generator images, got {len(self.generators)}"
            )
        for generator in self.generators:
            if generator.shape != (self.d, self.d):
                raise exceptions.InputException(f"Generator images must be {self.d}x{self.d}")

    @property
    def spec(self) -> JordanSpec:
        return self.algebra.spec

    @cached_property
    def images(self) -> tuple[Matrix, ...]:
        images = [self.A]
        for block, generator in zip(self.spec.blocks, self.generators):
            current = generator
            for _ in range(block.size):
                images.append(current)
                current = ad_shift(self.A, block.eigenvalue, current)
        return tuple(images)

    def v_images(self) -> tuple[Matrix, ...]:
        return self.images[1:]

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "d": self.d,
            "A": self.A,
            "generators": list(self.generators),
        }


def make_representation(spec: JordanSpec, A: Matrix, generators: Sequence[Matrix]) -> Representation:
    return Representation(build_algebra(spec), A.rows, A, tuple(generators))


def all_images(rep: Representation) -> list[Matrix]:
    """
    Images of every basis element of g, in basis order.
    """
    return list(rep.images)


@dataclass(frozen=True)
class Violation:
    relation: str
    indices: tuple[int, ...]
    residual: Matrix

    def to_dict(self) -> dict:
        return {"relation": self.relation, "indices": list(self.indices), "residual": self.residual}


@dataclass(frozen=True)
class Verdict:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def relations(self) -> set[str]:
        return {violation.relation for violation in self.violations}

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}


def verify_representation(rep: Representation) -> Verdict:
    """
    Check the defining relations of g on the derived images.

    Relations:
        abelian: images of V commute pairwise, indices are basis positions
        nilpotent: (ad A - lambda_i)^{n_i} maps generator i to 0, index is the block
        bracket: [A, v[i,j]] = lambda_i v[i,j] + v[i,j+1] below the chain end,
            indices are (block, j)

    Args:
        rep (Representation)

    Returns:
        Verdict: Empty violation list when rep is a representation
    """
    violations = []
    images = rep.images
    d = rep.d

    for a, b in itertools.combinations(range(1, len(images)), 2):
        residual = images[a].commutator(images[b])
        if not residual.is_zero:
            violations.append(Violation("abelian", (a, b), residual))

    for block, (spec_block, generator) in enumerate(zip(rep.spec.blocks, rep.generators)):
        residual = generator
        for _ in range(spec_block.size):
            residual = ad_shift(rep.A, spec_block.eigenvalue, residual)
        if not residual.is_zero:
            violations.append(Violation("nilpotent", (block,), residual))

        for j in range(spec_block.size - 1):
            current = images[rep.algebra.basis_index(block, j)]
            successor = images[rep.algebra.basis_index(block, j + 1)]
            residual = rep.A.commutator(current) - current * spec_block.eigenvalue - successor
            if not residual.is_zero:
                violations.append(Violation("bracket", (block, j), residual))

    log.debug(f"Verified d={d} representation, {len(violations)} violations")
    return Verdict(tuple(violations))


def is_faithful(rep: Representation) -> bool:
    """
    Whether the images of all basis elements are linearly independent.
    """
    stacked = linalg.stack_columns([image.vec() for image in rep.images])
    return linalg.rank(stacked) == rep.algebra.dim


def is_homomorphism(rep: Representation) -> bool:
    """
    Whether [img a, img b] = img [a, b] for every pair of basis elements.
    """
    images = rep.images
    for a, b in itertools.combinations(range(len(images)), 2):
        expected = linalg.zeros(rep.d, rep.d)
        for c, value in rep.algebra.bracket(a, b).items():
            expected = expected + images[c] * value
        if images[a].commutator(images[b]) != expected:
            return False
    return True


# Socle series


@dataclass(frozen=True)
class SocleSeries:
    chain: tuple[tuple[Matrix, ...], ...]
    factor_dims: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "factor_dims": list(self.factor_dims),
            "chain": [list(basis) for basis in self.chain],
        }


def _quotient_operators(
    operators: Sequence[Matrix], subspace: Sequence[Matrix], d: int
) -> tuple[list[Matrix], Matrix]:
    """
    Operators induced on F^d / subspace, in the coordinates of the standard
    basis vectors at the non-pivot columns of the subspace's echelon form.

    Returns:
        tuple[list[Matrix], Matrix]: Induced operators and the complement basis
    """
    if not subspace:
        return list(operators), linalg.identity(d)

    echelon, pivots = linalg.stack_columns(list(subspace)).T.rref()
    free = [c for c in range(d) if c not in pivots]
    complement = linalg.stack_columns(
        [linalg.column_vector([1 if r == c else 0 for r in range(d)]) for c in free]
    )
    change = linalg.stack_columns(list(subspace)).hstack(complement)
    inverse = change.inverse()
    s = len(subspace)
    induced = [(inverse @ M @ change).submatrix(s, d, s, d) for M in operators]
    return induced, complement


def socle_series(rep: Representation) -> SocleSeries:
    """
    Socle series of the module F^d.

    Every irreducible constituent is one-dimensional: V acts nilpotently
    except that a generator of an eigenvalue-0 block may act by a scalar. A
    socle layer is the sum, over all rational weights of A and of those
    generators, of the joint weight spaces inside the common kernel of the
    remaining images of V.

    Args:
        rep (Representation)

    Returns:
        SocleSeries

    Raises:
        DomainException: Spectrum of A or of a scalar-capable generator is not rational
    """
    d = rep.d
    scalar_positions = [
        rep.algebra.basis_index(i, 0)
        for i, block in enumerate(rep.spec.blocks)
        if block.eigenvalue == 0
    ]
    weights = [list(linalg.rational_eigenvalues(rep.A))]
    weights.extend(list(linalg.rational_eigenvalues(rep.images[p])) for p in scalar_positions)
    nilpotent_positions = [
        p for p in range(1, len(rep.images)) if p not in scalar_positions
    ]
    operators = [rep.A] + [rep.images[p] for p in scalar_positions]
    operators.extend(rep.images[p] for p in nilpotent_positions)

    subspace: list[Matrix] = []
    chain: list[tuple[Matrix, ...]] = [()]
    factor_dims: list[int] = []
    while len(subspace) < d:
        induced, complement = _quotient_operators(operators, subspace, d)
        size = d - len(subspace)
        weighted, others = induced[: len(weights)], induced[len(weights) :]

        layer: list[Matrix] = []
        for combination in itertools.product(*weights):
            shifted = [M - linalg.identity(size) * w for M, w in zip(weighted, combination)]
            stacked = shifted[0].vstack(*shifted[1:], *others)
            layer.extend(linalg.kernel_basis(stacked))

        if not layer:
            raise exceptions.DomainException("Quotient module has an empty socle")

        subspace = linalg.span_basis(subspace + [complement @ v for v in layer])
        chain.append(tuple(subspace))
        factor_dims.append(len(layer))

    log.debug(f"Socle factor dimensions {factor_dims}")
    return SocleSeries(tuple(chain), tuple(factor_dims))


def is_uniserial(rep: Representation) -> bool:
    return all(dim == 1 for dim in socle_series(rep).factor_dims)


# Derived representations


def dual_representation(rep: Representation) -> Representation:
    """
    Dual module: every image replaced by its negated transpose.
    """
    return Representation(rep.algebra, rep.d, -rep.A.T, tuple(-g.T for g in rep.generators))


def restrict(rep: Representation, blocks: Iterable[int]) -> Representation:
    """
    Restriction to the subalgebra <x> + sum of the selected blocks of V.

    Args:
        rep (Representation)
        blocks (Iterable[int]): 0-based block indices

    Returns:
        Representation
    """
    selected = sorted(set(blocks))
    if not selected:
        raise exceptions.InputException("Cannot restrict to an empty set of blocks")
    if selected[0] < 0 or selected[-1] >= rep.spec.block_count:
        raise exceptions.InputException(f"Block indices {selected} out of range")

    spec = JordanSpec(tuple(rep.spec.blocks[i] for i in selected))
    return Representation(
        build_algebra(spec), rep.d, rep.A, tuple(rep.generators[i] for i in selected)
    )


def conjugate(rep: Representation, T: Matrix) -> Representation:
    """
    Representation y -> T img(y) T^-1.
    """
    inverse = T.inverse()
    return Representation(
        rep.algebra, rep.d, T @ rep.A @ inverse, tuple(T @ g @ inverse for g in rep.generators)
    )


def direct_sum(first: Representation, second: Representation) -> Representation:
    if first.spec != second.spec:
        raise exceptions.InputException("Direct sums need representations of the same algebra")
    return Representation(
        first.algebra,
        first.d + second.d,
        linalg.block_diagonal(first.A, second.A),
        tuple(
            linalg.block_diagonal(g1, g2) for g1, g2 in zip(first.generators, second.generators)
        ),
    )
