"""Twisted symmetric-group actions, Young symmetrizers, commutants."""

import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ybalg.linalg import rref
from ybalg.tensoralg import TensorMap, word_permute, words
from ybalg.frt import (
    GroupAlgebraElement,
    YoungDiagram,
    action_table,
    apply_to_vector,
    braid_generators,
    commutant,
    evaluate_in_action,
    group_algebra_rank,
    hr_component_dual_basis,
    hr_dimension_oracles,
    hr_graded_dimension,
    image_dimension,
    image_vectors,
    partitions,
    permutation_operator,
    r_permutation_action,
    schur_weyl_decompose,
    young_symmetrizer,
)

ONE = Fraction(1)


def identity_twist(dim=2):
    return TensorMap.identity(dim, 2)


def diagonal_twist():
    eps = [[1, -1], [-1, 1]]
    return TensorMap(
        2, 2, 2, {(w, w): Fraction(eps[w[0]][w[1]]) for w in words(2, 2)}
    )


def swap_twist():
    return TensorMap(
        2, 2, 2, {(word_permute((1, 0), w), w): ONE for w in words(2, 2)}
    )


def signed_swap():
    return TensorMap(
        2,
        2,
        2,
        {
            ((0, 0), (0, 0)): ONE,
            ((1, 1), (1, 1)): ONE,
            ((1, 0), (0, 1)): ONE,
            ((0, 1), (1, 0)): -ONE,
        },
    )


def random_group_element(rng, m, size=4):
    perms = list(itertools.permutations(range(m)))
    return GroupAlgebraElement(
        m, {rng.choice(perms): Fraction(rng.randint(-3, 3)) for _ in range(size)}
    )


class TestGroupAlgebra:
    def test_identity_is_unit(self):
        rng = random.Random(3)
        e = GroupAlgebraElement.identity(3)
        for _ in range(10):
            x = random_group_element(rng, 3)
            assert e * x == x
            assert x * e == x

    def test_basis_product_composes(self):
        p, q = (1, 0, 2), (0, 2, 1)
        prod = GroupAlgebraElement.basis(p) * GroupAlgebraElement.basis(q)
        assert prod == GroupAlgebraElement.basis((1, 2, 0))

    def test_associativity(self):
        rng = random.Random(7)
        for _ in range(12):
            x = random_group_element(rng, 3)
            y = random_group_element(rng, 3)
            z = random_group_element(rng, 3)
            assert (x * y) * z == x * (y * z)

    def test_subtraction_purges(self):
        rng = random.Random(11)
        x = random_group_element(rng, 3)
        assert (x - x).is_zero()

    def test_support_validation(self):
        with pytest.raises(ValueError, match="not a permutation"):
            GroupAlgebraElement(3, {(0, 1): ONE})
        with pytest.raises(ValueError, match="not a permutation"):
            GroupAlgebraElement(2, {(0, 0): ONE})

    def test_mixed_groups_rejected(self):
        x = GroupAlgebraElement.identity(2)
        y = GroupAlgebraElement.identity(3)
        with pytest.raises(ValueError, match="different symmetric groups"):
            x * y


class TestYoungDiagram:
    def test_validation(self):
        with pytest.raises(ValueError, match="weakly decreasing"):
            YoungDiagram((1, 2))
        with pytest.raises(ValueError, match="positive"):
            YoungDiagram((2, 0))
        with pytest.raises(ValueError, match="positive"):
            YoungDiagram(())

    def test_conjugate(self):
        assert YoungDiagram((3, 1)).conjugate() == YoungDiagram((2, 1, 1))
        assert YoungDiagram((2, 2)).conjugate() == YoungDiagram((2, 2))

    @given(st.integers(min_value=1, max_value=6))
    def test_conjugate_is_involution(self, m):
        for lam in partitions(m):
            assert lam.conjugate().conjugate() == lam

    def test_hooks_and_dimensions(self):
        assert YoungDiagram((2, 1)).hooks() == [3, 1, 1]
        dims = {
            (3,): 1,
            (2, 1): 2,
            (1, 1, 1): 1,
            (4,): 1,
            (3, 1): 3,
            (2, 2): 2,
            (2, 1, 1): 3,
        }
        for rows, d in dims.items():
            assert YoungDiagram(rows).irrep_dimension() == d

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_squares_sum_to_group_order(self, m):
        total = sum(lam.irrep_dimension() ** 2 for lam in partitions(m))
        assert total == math.factorial(m)

    def test_partition_order(self):
        assert [lam.rows for lam in partitions(4)] == [
            (4,),
            (3, 1),
            (2, 2),
            (2, 1, 1),
            (1, 1, 1, 1),
        ]
        assert [len(partitions(m)) for m in range(1, 6)] == [1, 2, 3, 5, 7]


class TestYoungSymmetrizer:
    def test_single_row_is_full_symmetrizer(self):
        c = young_symmetrizer((3,))
        assert c.terms == {p: ONE for p in itertools.permutations(range(3))}

    def test_single_column_is_signed_sum(self):
        c = young_symmetrizer((1, 1))
        assert c.terms == {(0, 1): ONE, (1, 0): -ONE}

    def test_hook_shape_support(self):
        c = young_symmetrizer((2, 1))
        assert c.terms == {
            (0, 1, 2): ONE,
            (1, 0, 2): ONE,
            (2, 1, 0): -ONE,
            (2, 0, 1): -ONE,
        }

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_quasi_idempotency(self, m):
        for lam in partitions(m):
            c = young_symmetrizer(lam)
            kappa = Fraction(math.factorial(m), lam.irrep_dimension())
            assert c * c == c.scale(kappa)

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_rank_oracle_matches_hooks(self, m):
        for lam in partitions(m):
            assert group_algebra_rank(young_symmetrizer(lam)) == (
                lam.irrep_dimension()
            )


class TestRPermutationAction:
    def test_identity_twist_gives_standard_swaps(self):
        action = r_permutation_action(identity_twist(), 2)
        assert len(action) == 1
        assert (action.generators[0] - permutation_operator((1, 0), 2)).is_zero()

    def test_identity_twist_table_is_standard_action(self):
        action = r_permutation_action(identity_twist(), 3)
        table = action_table(action)
        assert len(table) == 6
        for perm, operator in table.items():
            assert (operator - permutation_operator(perm, 2)).is_zero()

    def test_diagonal_twist_builds_and_differs(self):
        action = r_permutation_action(diagonal_twist(), 3)
        swap = permutation_operator((1, 0, 2), 2)
        assert not (action.generators[0] - swap).is_zero()

    def test_non_unitary_rejected(self):
        with pytest.raises(ValueError, match="not unitary"):
            r_permutation_action(identity_twist().scale(2), 2)

    def test_non_qybe_rejected(self):
        with pytest.raises(ValueError, match="quantum Yang-Baxter"):
            r_permutation_action(signed_swap(), 3)

    def test_braid_generators_allow_non_unitary(self):
        gens = braid_generators(identity_twist().scale(2), 3)
        assert len(gens) == 2
        assert len(commutant(gens[:1], dim=2, deg=3)) == len(
            commutant([permutation_operator((1, 0, 2), 2)], dim=2, deg=3)
        )

    def test_braid_generators_still_need_qybe(self):
        with pytest.raises(ValueError, match="quantum Yang-Baxter"):
            braid_generators(signed_swap(), 2)

    def test_single_factor_action(self):
        action = r_permutation_action(identity_twist(), 1)
        assert len(action) == 0
        evaluated = evaluate_in_action(GroupAlgebraElement.identity(1), action)
        assert (evaluated - TensorMap.identity(2, 1)).is_zero()

    def test_m_mismatch(self):
        action = r_permutation_action(identity_twist(), 2)
        with pytest.raises(ValueError, match="m mismatch"):
            evaluate_in_action(GroupAlgebraElement.identity(3), action)


class TestEvaluation:
    def test_identity_element_has_full_rank(self):
        action = r_permutation_action(identity_twist(), 2)
        evaluated = evaluate_in_action(GroupAlgebraElement.identity(2), action)
        assert image_dimension(evaluated) == 4

    def test_symmetric_and_antisymmetric_ranks(self):
        action = r_permutation_action(identity_twist(), 2)
        sym = evaluate_in_action(young_symmetrizer((2,)), action)
        alt = evaluate_in_action(young_symmetrizer((1, 1)), action)
        assert image_dimension(sym) == 3
        assert image_dimension(alt) == 1

    def test_evaluation_is_linear(self):
        rng = random.Random(13)
        action = r_permutation_action(diagonal_twist(), 3)
        x = random_group_element(rng, 3)
        y = random_group_element(rng, 3)
        lhs = evaluate_in_action(x + y, action)
        rhs = evaluate_in_action(x, action) + evaluate_in_action(y, action)
        assert (lhs - rhs).is_zero()

    def test_evaluation_is_multiplicative(self):
        rng = random.Random(17)
        action = r_permutation_action(diagonal_twist(), 3)
        x = random_group_element(rng, 3)
        y = random_group_element(rng, 3)
        lhs = evaluate_in_action(x * y, action)
        rhs = evaluate_in_action(x, action).compose(evaluate_in_action(y, action))
        assert (lhs - rhs).is_zero()


class TestCommutant:
    def test_no_generators_gives_full_endomorphisms(self):
        assert len(commutant([], dim=2, deg=1)) == 4
        assert len(commutant([], dim=2, deg=2)) == 16

    def test_no_generators_needs_shape(self):
        with pytest.raises(ValueError, match="explicit dim and deg"):
            commutant([])

    def test_standard_swap_commutant(self):
        basis = commutant([permutation_operator((1, 0), 2)])
        assert len(basis) == 10

    def test_full_matrix_generators_leave_scalars(self):
        units = [
            TensorMap(2, 1, 1, {((i,), (j,)): ONE})
            for i in range(2)
            for j in range(2)
        ]
        basis = commutant(units)
        assert len(basis) == 1
        assert image_dimension(basis[0]) == 2  # a scalar operator

    def test_members_commute(self):
        action = r_permutation_action(diagonal_twist(), 2)
        for x in commutant(action.generators, dim=2, deg=2):
            for g in action.generators:
                assert (x.compose(g) - g.compose(x)).is_zero()


class TestComponentDimensions:
    def test_degree_one_is_unconstrained(self):
        assert hr_dimension_oracles(identity_twist(), 1) == (4, 4)

    def test_identity_twist_matches_symmetric_powers(self):
        assert hr_graded_dimension(identity_twist(), 2) == 10
        assert hr_graded_dimension(identity_twist(), 3) == 20
        assert hr_graded_dimension(identity_twist(), 3) == math.comb(4 + 2, 3)

    def test_diagonal_twist_dimensions(self):
        assert hr_dimension_oracles(diagonal_twist(), 2) == (10, 10)
        assert hr_dimension_oracles(diagonal_twist(), 3) == (20, 20)

    def test_swap_twist_has_free_components(self):
        # the swap twist makes every generator act as the identity, so no
        # relations survive and the component is the whole free slice
        assert hr_dimension_oracles(swap_twist(), 2) == (16, 16)

    def test_dual_basis_realizes_the_component(self):
        basis = hr_component_dual_basis(diagonal_twist(), 2)
        assert len(basis) == 10
        action = r_permutation_action(diagonal_twist(), 2)
        for x in basis:
            for g in action.generators:
                assert (x.compose(g) - g.compose(x)).is_zero()


class TestSchurWeyl:
    def test_two_factor_identity_anchor(self):
        report = schur_weyl_decompose(identity_twist(), 2, 2)
        assert [
            (b.partition, b.rho_dim, b.comodule_dim, b.included)
            for b in report.blocks
        ] == [((2,), 1, 3, True), ((1, 1), 1, 1, True)]
        assert report.total == 4 == report.expected
        assert report.passed

    def test_three_factor_identity_anchor(self):
        report = schur_weyl_decompose(identity_twist(), 3, 2)
        assert [
            (b.partition, b.rho_dim, b.comodule_dim, b.included)
            for b in report.blocks
        ] == [
            ((3,), 1, 4, True),
            ((2, 1), 2, 2, True),
            ((1, 1, 1), 1, 0, False),
        ]
        assert report.total == 8 == report.expected
        assert report.sr_commutant_dim == 20
        assert report.hr_commutant_dim == report.sr_span_dim == 5
        assert report.double_commutant_ok
        assert report.passed

    def test_single_factor(self):
        report = schur_weyl_decompose(identity_twist(), 1, 2)
        assert [
            (b.partition, b.rho_dim, b.comodule_dim) for b in report.blocks
        ] == [((1,), 1, 2)]
        assert report.total == 2 == report.expected
        assert report.passed

    def test_diagonal_twist_decomposition(self):
        report = schur_weyl_decompose(diagonal_twist(), 3, 2)
        assert report.total == 8 == report.expected
        assert report.double_commutant_ok
        assert report.passed

    def test_swap_twist_concentrates_in_one_block(self):
        report = schur_weyl_decompose(swap_twist(), 3, 2)
        assert [(b.partition, b.comodule_dim) for b in report.blocks] == [
            ((3,), 8),
            ((2, 1), 0),
            ((1, 1, 1), 0),
        ]
        assert report.total == 8
        assert report.sr_span_dim == 1  # every generator acts as the identity
        assert report.passed

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError, match="acts on dimension"):
            schur_weyl_decompose(identity_twist(), 2, 3)

    def test_report_lines_deterministic(self):
        first = schur_weyl_decompose(diagonal_twist(), 3, 2).lines()
        second = schur_weyl_decompose(diagonal_twist(), 3, 2).lines()
        assert first == second
        assert first[0] == "check: schur-weyl"
        assert first[-1] == "result: PASS"

    @pytest.mark.parametrize("twist", ["identity", "diagonal"])
    def test_symmetrizer_images_are_commutant_stable(self, twist):
        big_r = identity_twist() if twist == "identity" else diagonal_twist()
        action = r_permutation_action(big_r, 3)
        dual = commutant(action.generators, dim=2, deg=3)
        for lam in partitions(3):
            evaluated = evaluate_in_action(young_symmetrizer(lam), action)
            image = rref(image_vectors(evaluated), 8)
            for phi in dual:
                for vec in image_vectors(evaluated):
                    assert image.in_row_space(apply_to_vector(phi, vec))
