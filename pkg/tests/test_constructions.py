import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import matrices, nonzero_rationals, rationals

from uniserial_tools import constructions, exceptions, lie, linalg, sl2
from uniserial_tools.constructions import (
    AALabel,
    BottomLabel,
    DiagLabel,
    KXLabel,
    ParameterSlot,
    TopLabel,
)
from uniserial_tools.lie import JordanSpec
from uniserial_tools.linalg import Matrix


def spec_of(*pairs):
    return JordanSpec.from_pairs(pairs)


def assert_faithful_uniserial(rep):
    assert lie.verify_representation(rep).ok
    assert lie.is_faithful(rep)
    assert lie.is_uniserial(rep)


# Labels


@pytest.mark.parametrize("factory", [
    lambda: KXLabel(0, 1, 5, 1, linalg.zeros(1, 1)),
    lambda: KXLabel(0, 1, 5, 5, linalg.zeros(1, 1)),
    lambda: KXLabel(0, 1, 5, 3, linalg.zeros(1, 2)),
    lambda: TopLabel(0, 1, 1),
    lambda: BottomLabel(0, 1, 1),
    lambda: AALabel(0, 1, 4, (1, 0, 0, 0)),
    lambda: AALabel(0, 1, 3, (2, 0, 0)),
    lambda: AALabel(0, 1, 3, (1, 1, 0)),
    lambda: AALabel(0, 1, 1, (1,)),
    lambda: DiagLabel(0, 1, 1),
])
def test_invalid_labels_are_rejected(factory):
    with pytest.raises(exceptions.InputException):
        factory()


def test_top_label_layout():
    rep = constructions.construct_R(TopLabel(2, 1, 3))
    assert rep.A == linalg.block_diagonal(linalg.jordan_block(3, 2), linalg.diagonal([1]))
    assert rep.generators[0] == linalg.elementary(4, 4, 2, 3)


def test_bottom_label_layout():
    rep = constructions.construct_R(BottomLabel(2, 1, 3))
    assert rep.A == linalg.block_diagonal(linalg.diagonal([2]), linalg.jordan_block(3, 1))
    assert rep.generators[0] == linalg.elementary(4, 4, 0, 1)


def test_aa_label_layout():
    rep = constructions.construct_R(AALabel(2, 1, 3, (1, 0, 4)))
    assert rep.d == 5
    assert rep.A == linalg.block_diagonal(
        linalg.diagonal([2]), linalg.jordan_block(3, 1), linalg.diagonal([0])
    )
    E = rep.generators[0]
    assert [E[0, j] for j in range(1, 4)] == [1, 0, 4]
    assert E[3, 4] == 1


def test_kx_embeds_x():
    X = Matrix([[7, 8]])
    rep = constructions.construct_R(KXLabel(0, 1, 4, 2, X))
    N = rep.generators[0].submatrix(0, 2, 2, 5)
    assert N == Matrix([[0, 7, 8], [1, 0, 0]])


@st.composite
def labels(draw):
    alpha = draw(rationals)
    lam = draw(nonzero_rationals)
    variant = draw(st.sampled_from(["KX", "TOP", "BOTTOM", "AA", "DIAG"]))
    if variant == "KX":
        n = draw(st.integers(min_value=3, max_value=7))
        k = draw(st.integers(min_value=2, max_value=n - 1))
        return KXLabel(alpha, lam, n, k, draw(matrices(k - 1, n - k)))
    if variant == "TOP":
        return TopLabel(alpha, lam, draw(st.integers(min_value=2, max_value=7)))
    if variant == "BOTTOM":
        return BottomLabel(alpha, lam, draw(st.integers(min_value=2, max_value=7)))
    if variant == "AA":
        n = draw(st.sampled_from([3, 5, 7]))
        a = [Fraction(1)] + [Fraction(0) if i % 2 else draw(rationals) for i in range(1, n)]
        return AALabel(alpha, lam, n, tuple(a))
    return DiagLabel(alpha, lam, draw(st.integers(min_value=2, max_value=6)))


@given(labels())
def test_labelled_representations_are_faithful_uniserial(label):
    assert_faithful_uniserial(constructions.construct_R(label))


def test_construct_t():
    rep = constructions.construct_T(1, 2, 3)
    assert rep.A == linalg.diagonal([1, -1, -3])
    assert rep.generators[0] == linalg.jordan_block(3)
    assert_faithful_uniserial(rep)


# Raw families


def test_pqn_needs_non_zero_corner():
    with pytest.raises(exceptions.InputException):
        constructions.construct_R_pqN(0, 1, 5, 2, 2, linalg.elementary(2, 2, 0, 0))


@pytest.mark.slow
def test_pqn_verification_and_faithfulness_criterion():
    for p, q in itertools.product(range(1, 6), repeat=2):
        N = linalg.elementary(p, q, p - 1, 0)
        for n in range(1, 10):
            rep = constructions.construct_R_pqN(Fraction(1, 2), 3, n, p, q, N)
            ok = lie.verify_representation(rep).ok
            assert ok == (p + q - 1 <= n), (p, q, n)
            if ok:
                assert lie.is_faithful(rep) == (p + q - 1 == n), (p, q, n)


def test_a_family_criterion():
    rng = random.Random(5)
    for n in range(1, 7):
        for _ in range(4):
            a = [Fraction(1)] + [
                Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n - 1)
            ]
            rep = constructions.construct_R_a(1, 2, n, a)
            expected = n % 2 == 1 and all(a[i] == 0 for i in range(1, n, 2))
            assert lie.verify_representation(rep).ok == expected
            # Zeroing the even positions leaves the criterion to the parity of n
            cleared = [v if i % 2 == 0 else 0 for i, v in enumerate(a)]
            rep = constructions.construct_R_a(1, 2, n, cleared)
            assert lie.verify_representation(rep).ok == (n % 2 == 1)


# Extension spaces


def test_extension_parameter_counts():
    space = constructions.extension_space(spec_of((1, 7), (1, 5), (1, 3)), 0, 3)
    assert space.orders == (7, 5, 3)
    assert space.block_counts() == {1: 13, 2: 9}

    space = constructions.extension_space(spec_of((1, 7), (1, 1)), 0, 3)
    assert space.block_counts() == {1: 3}


@pytest.mark.parametrize("pairs, k, condition", [
    ([(1, 5), (1, 4)], 3, "spacing"),
    ([(1, 7), (1, 5), (1, 3)], 2, "block-count"),
    ([(1, 5), (2, 1)], 3, "single-eigenvalue"),
    ([(0, 5), (0, 3)], 3, "nonzero-eigenvalue"),
    ([(1, 5), (1, 3)], 5, "split-index"),
])
def test_extension_space_refusals(pairs, k, condition):
    with pytest.raises(exceptions.ExtensionRefusedException) as info:
        constructions.extension_space(spec_of(*pairs), 0, k)
    assert info.value.condition == condition
    assert info.value.to_dict()["refused"] is True


def _annihilated_dimension(size, p, q):
    # Dimension of {w in M_{p,q} : theta^size w = 0}
    theta = sl2.theta_operator(p, q)
    return p * q - linalg.rank(theta.power(size))


@pytest.mark.slow
def test_parameter_counts_match_annihilator_rank():
    for n in range(3, 8):
        for k in range(2, n):
            for sizes in itertools.combinations_with_replacement(range(1, n + 1), 2):
                sizes = tuple(sorted(sizes, reverse=True))
                spec = spec_of((1, n), *[(1, s) for s in sizes])
                try:
                    space = constructions.extension_space(spec, 0, k)
                except exceptions.ExtensionRefusedException:
                    continue
                for block, size in enumerate(sizes, start=1):
                    expected = _annihilated_dimension(size, k, n + 1 - k)
                    assert space.parameter_count(block) == expected


def test_complete_rejects_unknown_slots():
    space = constructions.extension_space(spec_of((1, 7), (1, 1)), 0, 3)
    with pytest.raises(exceptions.InputException):
        space.complete({(1, 0, 0): 1})


def theta_slot(block, generator, power):
    return {ParameterSlot(block, generator, power): 1}


@pytest.mark.parametrize("pairs, params", [
    ([(1, 7), (1, 5), (1, 3)], theta_slot(1, 1, 0) | theta_slot(2, 2, 0)),
    ([(1, 7), (1, 4), (1, 2)], theta_slot(1, 1, 1) | theta_slot(2, 2, 1)),
    ([(1, 7), (1, 1)], theta_slot(1, 1, 4) | theta_slot(1, 2, 2)),
])
def test_worked_extensions(pairs, params):
    space = constructions.extension_space(spec_of(*pairs), 0, 3)
    result = constructions.build_extension(space, params)
    assert result.injective
    assert result.representation.d == 8
    assert_faithful_uniserial(result.representation)
    assert lie.is_homomorphism(result.representation)


def test_worked_extension_restricts_to_base():
    space = constructions.extension_space(spec_of((1, 7), (1, 5), (1, 3)), 0, 3)
    rep = constructions.build_extension(space, theta_slot(1, 1, 0) | theta_slot(2, 2, 0)).representation
    restricted = lie.restrict(rep, [0])
    assert restricted == space.base
    assert restricted.generators[0] == sl2.embed_hat(sl2.lowest_weight_vectors(3, 5)[0].matrix)
    assert lie.is_uniserial(restricted)
    assert restricted.d == rep.spec.n + 1


def test_non_injective_extension_is_reported():
    space = constructions.extension_space(spec_of((1, 7), (1, 5), (1, 3)), 0, 3)
    result = constructions.build_extension(space, {})
    assert not result.injective
    assert lie.verify_representation(result.representation).ok
    assert not lie.is_faithful(result.representation)


@given(matrices(2, 4))
def test_witness_parameters_are_injective(X):
    space = constructions.extension_space(spec_of((2, 7), (2, 4), (2, 1)), 1, 3, X)
    result = constructions.build_extension(space, constructions.witness_parameters(space))
    assert result.injective
    assert lie.is_faithful(result.representation) == result.injective


@pytest.mark.parametrize("n, a, beta", [
    (3, (1, 0, 0), 1),
    (5, (1, 0, Fraction(2, 3), 0, -4), 2),
])
def test_type3_extension(n, a, beta):
    rep = constructions.build_extension_type3(1, 3, n, a, beta)
    assert rep.d == n + 2
    assert rep.spec.eigenvalues == (3, 6)
    assert_faithful_uniserial(rep)


def test_type3_needs_non_zero_beta():
    with pytest.raises(exceptions.InputException):
        constructions.build_extension_type3(1, 3, 3, (1, 0, 0), 0)


# Block normalization


def test_normalized_input_is_fixed():
    E = constructions.construct_R(KXLabel(0, 1, 4, 2, Matrix([[3, 4]]))).generators[0]
    H, X = constructions.normalize_superdiagonal(E, [2, 3])
    assert H == E
    assert X == linalg.identity(5)


def test_normalize_two_by_two_block():
    E = linalg.zeros(4, 4)
    for (i, j), value in {(0, 2): 0, (0, 3): 5, (1, 2): 3, (1, 3): 7}.items():
        E = E + linalg.elementary(4, 4, i, j) * value
    H, X = constructions.normalize_superdiagonal(E, [2, 2])
    assert H.submatrix(0, 2, 2, 3) == linalg.column_vector([0, 1])
    assert H.submatrix(1, 2, 2, 4) == Matrix([[1, 0]])
    assert X @ E @ X.inverse() == H


@given(st.lists(nonzero_rationals, min_size=2, max_size=2), st.lists(rationals, min_size=5, max_size=5))
def test_normalize_three_blocks(corners, others):
    sizes = [1, 3, 1]
    top = Matrix([[corners[0], others[0], others[1]]])
    right = linalg.column_vector([others[2], others[3], corners[1]])
    grid = linalg.zeros(5, 5).to_rows()
    grid[0][1:4] = top.entries[0]
    for i in range(3):
        grid[1 + i][4] = right[i, 0]
    grid[0][4] = others[4]
    E = Matrix(grid)

    H, X = constructions.normalize_superdiagonal(E, sizes)
    assert X @ E @ X.inverse() == H
    assert H[0, 1] == 1
    assert [H[1 + i, 4] for i in range(3)] == [0, 0, 1]
    for block in (X.submatrix(0, 1, 0, 1), X.submatrix(1, 4, 1, 4), X.submatrix(4, 5, 4, 5)):
        assert block.det() != 0
        assert block == constructions.toeplitz_upper(block.entries[0])


def test_normalize_needs_non_zero_corner():
    E = linalg.elementary(4, 4, 0, 2)
    with pytest.raises(exceptions.DomainException):
        constructions.normalize_superdiagonal(E, [2, 2])
