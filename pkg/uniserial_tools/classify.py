from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from typing import Any

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from . import constructions, exceptions, lie, linalg, logger
from .constructions import (
    AALabel,
    BottomLabel,
    ClassLabel,
    DiagLabel,
    KXLabel,
    TopLabel,
)
from .lie import JordanSpec, Representation
from .linalg import Matrix
from .preferences import Preferences

log = logger.get_logger(__name__)


# Existence


@dataclass(frozen=True)
class ExistenceVerdict:
    exists: bool
    case: str | None = None
    checked: tuple[str, ...] = field(default_factory=tuple)
    condition: str | None = None
    message: str = ""

    def to_dict(self) -> dict:
        if self.exists:
            reason = {"case": self.case, "checked": list(self.checked)}
        else:
            reason = {"refused": True, "condition": self.condition, "message": self.message}
        return {"exists": self.exists, "reason": reason}


def _two_eigenvalue_shape(spec: JordanSpec) -> tuple[Fraction, int] | None:
    """
    (mu, n) when spec is J^n(mu) + J^1(2 mu) in either order.
    """
    if spec.block_count != 2:
        return None
    first, second = spec.blocks
    for main, small in ((first, second), (second, first)):
        if small.size == 1 and small.eigenvalue == 2 * main.eigenvalue:
            return main.eigenvalue, main.size
    return None


def existence_check(spec: JordanSpec) -> ExistenceVerdict:
    """
    Decide whether the algebra of a Jordan specification has a faithful
    uniserial representation.

    Args:
        spec (JordanSpec): Specification with some block of size > 1

    Returns:
        ExistenceVerdict

    Raises:
        OutOfScopeException: spec is diagonalizable or x is singular
    """
    if spec.is_diagonalizable:
        raise exceptions.OutOfScopeException(
            "out of modeled scope: x acts diagonalizably on V"
        )
    if any(value == 0 for value in spec.eigenvalues):
        raise exceptions.OutOfScopeException(
            "out of modeled scope: x has eigenvalue 0 on V"
        )

    eigenvalues = spec.eigenvalues
    if len(eigenvalues) == 1:
        n = spec.n
        for i, size in enumerate(spec.sizes[1:], start=1):
            if size > n - 2 * i:
                return ExistenceVerdict(
                    exists=False,
                    condition="spacing",
                    message=f"Block {i} has size {size} > n - {2 * i} = {n - 2 * i}",
                )
        return ExistenceVerdict(
            exists=True, case="single-eigenvalue", checked=("spacing", "block-count")
        )

    if len(eigenvalues) == 2:
        shape = _two_eigenvalue_shape(spec)
        if shape is None:
            return ExistenceVerdict(
                exists=False,
                condition="two-eigenvalue-shape",
                message="Two eigenvalues need the shape J^n(mu) + J^1(2 mu)",
            )
        _, n = shape
        if n % 2 == 0:
            return ExistenceVerdict(
                exists=False, condition="n-odd", message=f"n = {n} must be odd"
            )
        return ExistenceVerdict(
            exists=True, case="two-eigenvalue", checked=("two-eigenvalue-shape", "n-odd")
        )

    return ExistenceVerdict(
        exists=False,
        condition="eigenvalue-count",
        message=f"{len(eigenvalues)} distinct eigenvalues, at most 2 are possible",
    )


def existence_witness(spec: JordanSpec, alpha: Any = 0) -> Representation:
    """
    Explicit faithful uniserial representation for a spec whose existence
    verdict is positive.
    """
    verdict = existence_check(spec)
    if not verdict.exists:
        raise exceptions.InputException(f"No faithful uniserial representation: {verdict.message}")

    if spec.block_count == 1:
        return constructions.construct_R(
            TopLabel(alpha, spec.blocks[0].eigenvalue, spec.n)
        )

    if verdict.case == "single-eigenvalue":
        e = spec.block_count
        space = constructions.extension_space(spec, alpha, e, linalg.zeros(e - 1, spec.n - e))
        return constructions.build_extension(
            space, constructions.witness_parameters(space)
        ).representation

    mu, n = _two_eigenvalue_shape(spec)
    a = [1] + [0] * (n - 1)
    rep = constructions.build_extension_type3(alpha, mu, n, a, 1)
    if spec.blocks[0].size == 1:
        # Small block listed first
        rep = Representation(lie.build_algebra(spec), rep.d, rep.A, rep.generators[::-1])
    return rep


# Isomorphism


def intertwiner_basis(first: Representation, second: Representation) -> list[Matrix]:
    """
    Basis of {T : T img1(y) = img2(y) T for every basis element y}.
    """
    _check_comparable(first, second)
    d = first.d
    eye = linalg.identity(d)
    blocks = [
        eye.kron(M1.T) - M2.kron(eye) for M1, M2 in zip(first.images, second.images)
    ]
    system = blocks[0].vstack(*blocks[1:])
    return [linalg.unvec(v, d, d) for v in linalg.kernel_basis(system)]


def _check_comparable(first: Representation, second: Representation):
    if first.d != second.d:
        raise exceptions.InputException(f"Dimensions differ: {first.d} and {second.d}")
    if first.spec != second.spec:
        raise exceptions.InputException("Representations of different algebras")


def _combine(basis: list[Matrix], coefficients) -> Matrix:
    result = basis[0] * coefficients[0]
    for matrix, coefficient in zip(basis[1:], coefficients[1:]):
        result = result + matrix * coefficient
    return result


def is_isomorphic(
    first: Representation, second: Representation, seed: int | None = None
) -> Matrix | None:
    """
    Find an invertible intertwiner T with T img1 T^-1 = img2.

    Small intertwiner spaces are searched exhaustively on the grid
    {0..d}^m, which cannot miss a non-root of det. Larger ones are sampled
    randomly, then decided by the symbolic determinant.

    Args:
        first (Representation)
        second (Representation)
        seed (int | None): Sampler seed, configured seed by default

    Returns:
        Matrix | None: Conjugator, None if the representations are not isomorphic
    """
    prefs = Preferences.this()
    if seed is None:
        seed = prefs.seed

    basis = intertwiner_basis(first, second)
    m = len(basis)
    d = first.d
    log.debug(f"Intertwiner space of dimension {m}")
    if m == 0:
        return None

    if m <= prefs.grid_max_dimension:
        for point in itertools.product(range(d + 1), repeat=m):
            if any(point):
                T = _combine(basis, point)
                if T.det() != 0:
                    return T
        return None

    rng = random.Random(seed)
    for _ in range(prefs.random_samples):
        point = [Fraction(rng.randint(-1000, 1000), rng.randint(1, 100)) for _ in range(m)]
        T = _combine(basis, point)
        if T.det() != 0:
            return T

    symbols = sympy.symbols(f"c0:{m}")
    symbolic = sympy.zeros(d, d)
    for symbol, matrix in zip(symbols, basis):
        symbolic += symbol * sympy.Matrix(
            [[sympy.Rational(v.numerator, v.denominator) for v in row] for row in matrix.entries]
        )
    determinant = sympy.Poly(symbolic.det(method="berkowitz"), *symbols)
    if determinant.is_zero:
        return None
    point = nonvanishing_point(determinant, rng, prefs.random_samples)
    return _combine(basis, point)


def nonvanishing_point(
    polynomial: sympy.Poly, rng: random.Random, samples: int
) -> list[int]:
    """
    Find an integer point where a non-zero polynomial does not vanish.

    Seeded points from [-4 deg, 4 deg]^m are tried first. Then one variable is
    fixed at a time to the first value in 0..deg that keeps the rest non-zero,
    which costs at most m * (deg + 1) substitutions.

    Args:
        polynomial (Poly): Non-zero polynomial, one generator per coordinate
        rng (Random): Seeded generator
        samples (int): Random points to try

    Returns:
        list[int]
    """
    if polynomial.is_zero:
        raise exceptions.InputException("The zero polynomial vanishes everywhere")
    symbols = polynomial.gens
    bound = 4 * max(polynomial.total_degree(), 1)
    for _ in range(samples):
        point = [rng.randint(-bound, bound) for _ in symbols]
        if polynomial.eval(dict(zip(symbols, point))) != 0:
            return point

    log.debug("Random points hit the determinant's zero set, fixing variables in turn")
    expression = polynomial.as_expr()
    point = []
    for symbol in symbols:
        for value in range(sympy.degree(expression, symbol) + 1):
            reduced = sympy.expand(expression.subs(symbol, value))
            if reduced != 0:
                expression = reduced
                point.append(value)
                break
        else:
            raise exceptions.InconsistencyException(
                f"Non-zero polynomial vanishes on every value of {symbol}"
            )
    return point


# Classification


@dataclass(frozen=True)
class Classification:
    label: ClassLabel
    conjugator: Matrix

    def to_dict(self) -> dict:
        return {"label": self.label.to_dict(), "conjugator": self.conjugator}


def _ordered_eigenvalues(rep: Representation, lam: Fraction) -> list[Fraction]:
    spectrum = linalg.rational_eigenvalues(rep.A)
    tops = [mu for mu in spectrum if mu + lam not in spectrum]
    if len(tops) != 1:
        raise exceptions.InconsistencyException(
            f"Spectrum {[str(mu) for mu in spectrum]} is not a single lambda-string"
        )
    chain = [tops[0] - i * lam for i in range(len(spectrum))]
    if set(chain) != set(spectrum):
        raise exceptions.InconsistencyException("Spectrum is not a lambda-string")
    return chain


def _read_label(rep: Representation) -> ClassLabel:
    lam = rep.spec.blocks[0].eigenvalue
    n = rep.spec.n
    d = rep.d
    chain = _ordered_eigenvalues(rep, lam)
    alpha = chain[0]

    decomposition = linalg.jordan_form(rep.A, chain)
    if len(decomposition.blocks) != len(chain):
        raise exceptions.InconsistencyException(
            f"Expected one Jordan block per eigenvalue, got {len(decomposition.blocks)}"
        )
    sizes = [size for _, size in decomposition.blocks]
    E = decomposition.P @ rep.generators[0] @ decomposition.P.inverse()

    if n == 1:
        return DiagLabel(alpha, lam, d)

    if d == n + 1:
        if len(sizes) != 2:
            raise exceptions.InconsistencyException(f"Dimension n+1 with block sizes {sizes}")
        H, _ = constructions.normalize_superdiagonal(E, sizes)
        k = sizes[0]
        if k == n:
            return TopLabel(alpha, lam, n)
        if k == 1:
            return BottomLabel(alpha, lam, n)
        X = H.submatrix(0, k - 1, k + 1, d)
        return KXLabel(alpha, lam, n, k, X)

    if d == n + 2:
        if sizes != [1, n, 1]:
            raise exceptions.InconsistencyException(f"Dimension n+2 with block sizes {sizes}")
        H, _ = constructions.normalize_superdiagonal(E, sizes)
        return AALabel(alpha, lam, n, H.entries[0][1 : n + 1])

    raise exceptions.InconsistencyException(f"Dimension {d} is neither n+1 nor n+2 for n={n}")


def certify(rep: Representation, seed: int | None = None) -> Classification:
    """
    Label of a faithful uniserial representation of a single-block algebra,
    certified by an explicit isomorphism with the labelled construction.

    Args:
        rep (Representation)
        seed (int | None): Sampler seed for the isomorphism search

    Returns:
        Classification: Label and T with T img(y) T^-1 = construct_R(label)(y)

    Raises:
        DomainException: rep is outside the classified class
        InconsistencyException: Result contradicts the classification
    """
    if rep.spec.block_count != 1:
        raise exceptions.InputException("Classification needs a single-block algebra")
    if rep.spec.blocks[0].eigenvalue == 0:
        raise exceptions.DomainException("Classification needs lambda != 0")
    if not lie.verify_representation(rep).ok:
        raise exceptions.DomainException("Not a representation")
    if not lie.is_faithful(rep):
        raise exceptions.DomainException("Representation is not faithful")
    if not lie.is_uniserial(rep):
        raise exceptions.DomainException("Representation is not uniserial")

    label = _read_label(rep)
    conjugator = is_isomorphic(rep, constructions.construct_R(label), seed)
    if conjugator is None:
        raise exceptions.InconsistencyException(
            f"Representation is not isomorphic to its label {label.variant}"
        )
    log.debug(f"Classified as {label.variant}")
    return Classification(label, conjugator)


def classify_single_block(rep: Representation, seed: int | None = None) -> ClassLabel:
    return certify(rep, seed).label


@dataclass(frozen=True)
class RestrictionProfile:
    d: int
    n: int
    case: str
    classification: Classification

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "case": self.case,
            "label": self.classification.label.to_dict(),
            "conjugator": self.classification.conjugator,
        }


def restriction_profile(rep: Representation, seed: int | None = None) -> RestrictionProfile:
    """
    Restrict a faithful uniserial representation to the first block and
    classify the result, which has dimension n+1 or n+2.
    """
    if not lie.is_faithful(rep) or not lie.is_uniserial(rep):
        raise exceptions.DomainException("Restriction profiles need a faithful uniserial representation")

    restricted = lie.restrict(rep, [0])
    if not lie.is_uniserial(restricted):
        raise exceptions.InconsistencyException("Restriction to the first block is not uniserial")

    n = rep.spec.n
    if rep.d == n + 1:
        case = "n+1"
    elif rep.d == n + 2:
        case = "n+2"
    else:
        raise exceptions.InconsistencyException(f"Dimension {rep.d} is neither n+1 nor n+2")

    return RestrictionProfile(rep.d, n, case, certify(restricted, seed))
