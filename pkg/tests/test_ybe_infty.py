"""Infinity-residuals for both Yang-Baxter flavours and n-ary double brackets."""

import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ybalg import double, fixtures, ybe
from ybalg.algebras import TruncatedAlgebra, TruncationOverflow, free_algebra
from ybalg.tensoralg import TensorMap, commutator, embed_components
from ybalg.ybe_infty import (
    InftyReport,
    LieStructure,
    RnFamily,
    abelian_lie,
    assoc_pair_product,
    aybe_infty_residual,
    aybe_infty_sum,
    classical_aybe_element,
    classical_cybe_element,
    cybe_infty_residual,
    cybe_infty_sum,
    cyclic_selections,
    double_leibniz_defects,
    full_selections,
    gl_lie,
    jacobi_infty_check,
    jacobi_infty_residual,
    lie_pair_bracket,
    matrix_algebra,
    matrix_element_to_map,
    matrix_map_to_element,
    scalar_algebra,
    shuffle_selections,
    skew_clause_defects,
)

ONE = Fraction(1)


def random_element(rng, dim, length, entries=5, lo=-3, hi=3):
    out = {}
    for _ in range(entries):
        w = tuple(rng.randrange(dim) for _ in range(length))
        out[w] = out.get(w, Fraction(0)) + Fraction(rng.randint(lo, hi))
    return {w: c for w, c in out.items() if c}


def super_heisenberg():
    # one odd generator squaring onto a central even element
    return LieStructure(("th", "h"), {(0, 0): {1: ONE}}, degrees=(1, 2))


def odd_pair_structure():
    # [th, ps] = [ps, th] = z with th odd, ps odd of negative degree
    return LieStructure(
        ("th", "ps", "z"),
        {(0, 1): {2: ONE}, (1, 0): {2: ONE}},
        degrees=(1, -1, 0),
    )


def zero_product_algebra(nletters, degrees=None):
    labels = [f"x{k}" for k in range(nletters)]
    return TruncatedAlgebra(
        labels,
        list(degrees) if degrees is not None else [0] * nletters,
        {},
        {},
        mode="quotient",
        cap=0,
    )


def letter_generator_values(alg, r):
    lidx = [alg.index(f"x{k}") for k in range(r.dim)]
    values = {}
    for (out_pair, in_pair), c in r.entries.items():
        key = (lidx[in_pair[0]], lidx[in_pair[1]])
        values.setdefault(key, {})[(lidx[out_pair[0]], lidx[out_pair[1]])] = c
    return values


class TestLieStructure:
    @pytest.mark.parametrize("size", [2, 3])
    def test_gl_passes(self, size):
        assert gl_lie(size).defects() == []

    def test_abelian_with_degrees_passes(self):
        assert abelian_lie(4, degrees=(1, 0, -1, 2)).defects() == []

    def test_super_heisenberg_passes(self):
        assert super_heisenberg().defects() == []
        assert odd_pair_structure().defects() == []

    def test_antisymmetry_violation_found(self):
        g = LieStructure(("x", "y", "z"), {(0, 1): {2: ONE}, (1, 0): {2: ONE}})
        assert any("antisymmetry" in d for d in g.defects())

    def test_jacobi_violation_found(self):
        table = {
            (0, 1): {2: ONE},
            (1, 0): {2: -ONE},
            (2, 0): {0: ONE},
            (0, 2): {0: -ONE},
            (2, 1): {1: ONE},
            (1, 2): {1: -ONE},
        }
        g = LieStructure(("e", "f", "h"), table)
        assert any("Jacobi" in d for d in g.defects())

    def test_homogeneity_violation_found(self):
        g = LieStructure(
            ("x", "y"), {(0, 1): {0: ONE}, (1, 0): {0: -ONE}}, degrees=(0, 1)
        )
        assert any("homogeneous" in d for d in g.defects())

    def test_require_lie_raises(self):
        g = LieStructure(("x",), {(0, 0): {0: ONE}})
        with pytest.raises(ValueError, match="not a graded Lie algebra"):
            g.require_lie()

    def test_bracket_is_bilinear(self):
        g = gl_lie(2)
        x = {0: Fraction(2), 1: Fraction(-1)}
        y = {2: Fraction(3)}
        lhs = g.bracket(x, y)
        rhs = {}
        for i, ci in x.items():
            for k, c in g.bracket({i: ONE}, y).items():
                rhs[k] = rhs.get(k, Fraction(0)) + ci * c
        assert lhs == {k: c for k, c in rhs.items() if c}


class TestRnFamily:
    def test_zero_degrees_force_binary_only(self):
        with pytest.raises(ValueError, match="expected -1"):
            RnFamily(2, {3: {(0, 0, 1): ONE}})

    def test_binary_component_accepted_and_purged(self):
        fam = RnFamily(2, {2: {(0, 1): ONE, (1, 0): Fraction(0)}})
        assert fam.arities == (2,)
        assert fam.component(2) == {(0, 1): ONE}

    def test_graded_components_must_match_degrees(self):
        fam = RnFamily(2, {1: {(0,): ONE}}, degrees=(1, 2))
        assert fam.arities == (1,)
        with pytest.raises(ValueError, match="expected 1"):
            RnFamily(2, {1: {(1,): ONE}}, degrees=(1, 2))

    def test_word_length_checked(self):
        with pytest.raises(ValueError, match="length"):
            RnFamily(2, {2: {(0, 1, 1): ONE}})

    def test_letter_range_checked(self):
        with pytest.raises(ValueError, match="out of range"):
            RnFamily(2, {2: {(0, 5): ONE}})

    def test_arity_positive(self):
        with pytest.raises(ValueError, match="at least 1"):
            RnFamily(2, {0: {(): ONE}})

    def test_component_returns_copy(self):
        fam = RnFamily(2, {2: {(0, 1): ONE}})
        fam.component(2)[(1, 1)] = ONE
        assert fam.component(2) == {(0, 1): ONE}


class TestPairOperations:
    def test_shared_slot_product_hand_case(self):
        A = matrix_algebra(2)
        e11, e12, e21 = 0, 1, 2
        x = {(e12, e21): ONE}
        y = {(e21, e11): ONE}
        got = assoc_pair_product(A, x, (0, 1), y, (0, 2), 3)
        assert got == {(e11, e21, e11): ONE}

    def test_disjoint_slots_give_plain_embedding(self):
        A = matrix_algebra(2)
        x = {(1,): Fraction(2)}
        y = {(2, 3): Fraction(3)}
        got = assoc_pair_product(A, x, (1,), y, (0, 2), 3)
        assert got == {(2, 1, 3): Fraction(6)}

    def test_lie_pair_requires_one_shared_slot(self):
        g = gl_lie(2)
        with pytest.raises(ValueError, match="share exactly one"):
            lie_pair_bracket(g, {(0,): ONE}, (0,), {(1,): ONE}, (1,), 2)

    def test_coverage_required(self):
        A = matrix_algebra(2)
        with pytest.raises(ValueError, match="cover"):
            assoc_pair_product(A, {(0, 1): ONE}, (0, 1), {(0,): ONE}, (1,), 3)

    def test_at_most_two_factors_per_slot(self):
        A = matrix_algebra(2)
        with pytest.raises(ValueError, match="at most two"):
            assoc_pair_product(A, {(0,): ONE}, (0,), {(0, 0): ONE}, (0, 0), 1)

    def test_koszul_sign_of_disjoint_interleaving(self):
        # x = th in slot 3 crosses both factors of y = th (x) ps: two odd
        # crossings cancel
        A = zero_product_algebra(2, degrees=(1, 1))
        got = assoc_pair_product(
            A, {(0,): ONE}, (2,), {(0, 1): ONE}, (0, 1), 3, super_degrees=(1, 1)
        )
        assert got == {(0, 1, 0): ONE}
        # x = th in slot 2 crosses one odd factor: one sign
        got = assoc_pair_product(
            A, {(0,): ONE}, (1,), {(1,): ONE}, (0,), 2, super_degrees=(1, 1)
        )
        assert got == {(1, 0): -ONE}

    def test_graded_pair_antisymmetry(self):
        g = odd_pair_structure()
        rng = random.Random(5)
        for _ in range(60):
            wx = tuple(rng.randrange(3) for _ in range(2))
            wy = tuple(rng.randrange(3) for _ in range(2))
            x = {wx: Fraction(rng.randint(1, 3))}
            y = {wy: Fraction(rng.randint(1, 3))}
            lhs = lie_pair_bracket(g, x, (1, 2), y, (1, 0), 3)
            rhs = lie_pair_bracket(g, y, (1, 0), x, (1, 2), 3)
            px = sum(g.degrees[k] for k in wx)
            py = sum(g.degrees[k] for k in wy)
            sign = 1 if (px * py) % 2 else -1
            assert lhs == {w: sign * c for w, c in rhs.items()}


class TestSelections:
    @given(st.integers(min_value=0, max_value=5), st.integers(min_value=0, max_value=5))
    def test_shuffle_counts(self, i, j):
        n = i + j
        assert len(shuffle_selections(n, i)) == math.comb(n, i)

    def test_shuffle_shapes(self):
        assert shuffle_selections(3, 2) == [(0, 1, 2), (0, 2, 1), (1, 2, 0)]

    def test_full_selections(self):
        assert sorted(full_selections(3)) == sorted(
            itertools.permutations(range(3))
        )

    def test_cyclic_selections(self):
        assert cyclic_selections(3) == [(0, 1, 2), (1, 2, 0), (2, 0, 1)]


class TestCybeInfty:
    def test_shuffle_reading_reduces_to_single_bracket(self):
        g = gl_lie(2)
        rng = random.Random(11)
        for _ in range(25):
            r2 = random_element(rng, 4, 2)
            fam = RnFamily(4, {2: r2})
            total = cybe_infty_sum(g, fam, 3, "shuffle")
            single = lie_pair_bracket(g, r2, (1, 2), r2, (1, 0), 3)
            assert total == single

    def test_literal_reading_degenerates_at_three(self):
        g = gl_lie(2)
        rng = random.Random(13)
        for _ in range(25):
            fam = RnFamily(4, {2: random_element(rng, 4, 2)})
            assert cybe_infty_sum(g, fam, 3, "literal") == {}

    def test_residual_matches_map_commutator(self):
        g = gl_lie(2)
        rng = random.Random(17)
        for _ in range(15):
            r2 = random_element(rng, 4, 2)
            total = cybe_infty_sum(g, RnFamily(4, {2: r2}), 3, "shuffle")
            rmap = matrix_element_to_map(r2, 2, 2)
            want = commutator(
                embed_components(rmap, (2, 3), 3), embed_components(rmap, (2, 1), 3)
            )
            assert (matrix_element_to_map(total, 2, 3) - want).is_zero()

    def test_classical_element_matches_map_residual(self):
        g = gl_lie(2)
        rng = random.Random(19)
        for _ in range(15):
            r2 = random_element(rng, 4, 2)
            element = classical_cybe_element(g, r2)
            rmap = matrix_element_to_map(r2, 2, 2)
            got = matrix_element_to_map(element, 2, 3)
            assert (got - ybe.cybe_residual(rmap)).is_zero()

    def test_nilpotent_square_solution_passes(self):
        g = gl_lie(2)
        e12 = 1
        report = cybe_infty_residual(g, RnFamily(4, {2: {(e12, e12): ONE}}), 3)
        assert report.passed
        assert all(reading.zero for reading in report.readings)

    def test_abelian_any_family_is_zero(self):
        g = abelian_lie(3, degrees=(1, 0, -1))
        fam = RnFamily(
            3,
            {1: {(0,): ONE}, 2: {(1, 1): Fraction(2)}, 3: {(2, 1, 1): Fraction(4)}},
            degrees=(1, 0, -1),
        )
        for n in range(1, 5):
            assert cybe_infty_sum(g, fam, n) == {}

    def test_arity_one_equation_is_self_bracket(self):
        g = super_heisenberg()
        fam = RnFamily(2, {1: {(0,): ONE}}, degrees=(1, 2))
        assert cybe_infty_sum(g, fam, 1) == {(1,): -ONE}

    def test_mixed_arity_hand_expansion(self):
        # [x, th] = u with th, u odd: the n=2 residual couples r_1 and r_2
        g = LieStructure(
            ("th", "x", "u"),
            {(1, 0): {2: ONE}, (0, 1): {2: -ONE}},
            degrees=(1, 0, 1),
        )
        assert g.defects() == []
        fam = RnFamily(3, {1: {(0,): ONE}, 2: {(1, 1): ONE}}, degrees=(1, 0, 1))
        assert cybe_infty_sum(g, fam, 2) == {(2, 1): Fraction(2), (1, 2): ONE}

    def test_non_lie_structure_rejected(self):
        bad = LieStructure(("x",), {(0, 0): {0: ONE}})
        fam = RnFamily(1, {2: {(0, 0): ONE}})
        with pytest.raises(ValueError, match="not a graded Lie"):
            cybe_infty_sum(bad, fam, 3)

    def test_family_structure_mismatch_rejected(self):
        g = gl_lie(2)
        with pytest.raises(ValueError, match="does not match"):
            cybe_infty_sum(g, RnFamily(2, {2: {(0, 1): ONE}}), 3)

    def test_report_lines_deterministic(self):
        g = gl_lie(2)
        r_forward = {(1, 2): ONE, (2, 1): -ONE}
        r_reverse = dict(reversed(list(r_forward.items())))
        lines_a = cybe_infty_residual(g, RnFamily(4, {2: r_forward}), 3).lines()
        lines_b = cybe_infty_residual(g, RnFamily(4, {2: r_reverse}), 3).lines()
        assert lines_a == lines_b
        assert any("reading shuffle" in line for line in lines_a)
        assert any("reading literal" in line for line in lines_a)

    def test_literal_flag_governs_verdict(self):
        g = gl_lie(2)
        fam = RnFamily(4, {2: {(1, 2): ONE, (2, 1): -ONE}})
        default = cybe_infty_residual(g, fam, 3)
        literal = cybe_infty_residual(g, fam, 3, literal_shuffles=True)
        assert not default.passed  # [r23, r21] is nonzero for this r
        assert literal.passed  # the literal reading cancels identically


class TestAybeInfty:
    @given(
        st.fractions(
            min_value=Fraction(-50), max_value=Fraction(50), max_denominator=20
        )
    )
    @settings(max_examples=40)
    def test_scalar_oracle(self, c):
        fam = RnFamily(1, {2: {(0, 0): c}} if c else {})
        total = aybe_infty_sum(scalar_algebra(), fam, 3)
        assert total == ({(0, 0, 0): 3 * c * c} if c else {})

    def test_flip_element_residual(self):
        A = matrix_algebra(2)
        flip = {(a * 2 + b, b * 2 + a): ONE for a in range(2) for b in range(2)}
        report = aybe_infty_residual(A, RnFamily(4, {2: flip}), 3)
        assert not report.passed
        terms = dict(report.readings[0].terms)
        assert terms[(0, 0, 0)] == Fraction(3)

    def test_nilpotent_square_solution_passes(self):
        A = matrix_algebra(2)
        e12 = 1
        report = aybe_infty_residual(A, RnFamily(4, {2: {(e12, e12): ONE}}), 3)
        assert report.passed

    def test_classical_element_matches_map_residual(self):
        A = matrix_algebra(2)
        rng = random.Random(23)
        for _ in range(15):
            r2 = random_element(rng, 4, 2)
            element = classical_aybe_element(A, r2)
            rmap = matrix_element_to_map(r2, 2, 2)
            got = matrix_element_to_map(element, 2, 3)
            assert (got - ybe.aybe_residual(rmap)).is_zero()

    def test_dictionary_round_trip(self):
        rng = random.Random(29)
        r2 = random_element(rng, 4, 2)
        rmap = matrix_element_to_map(r2, 2, 2)
        assert matrix_map_to_element(rmap, 2) == r2

    def test_non_associative_rejected(self):
        bad = TruncatedAlgebra(
            ["a", "b"],
            [0, 0],
            {(0, 0): {1: ONE}, (0, 1): {0: ONE}},
            {},
            mode="quotient",
            cap=0,
        )
        fam = RnFamily(2, {2: {(0, 0): ONE}})
        with pytest.raises(ValueError, match="not associative"):
            aybe_infty_sum(bad, fam, 3)

    def test_window_overflow_propagates(self):
        F = free_algebra(2, cap=1, mode="window")
        x0 = F.index("x0")
        fam = RnFamily(F.nbasis, {2: {(x0, x0): ONE}})
        with pytest.raises(TruncationOverflow):
            aybe_infty_sum(F, fam, 3)

    def test_graded_arity_one_is_negated_square(self):
        F = free_algebra(2, cap=2, mode="window")
        lengths = tuple(F.degrees)
        x0 = F.index("x0")
        fam = RnFamily(F.nbasis, {1: {(x0,): ONE}}, degrees=lengths)
        total = aybe_infty_sum(F, fam, 1, super_degrees=lengths)
        assert total == {(F.index("x0x0"),): -ONE}


class TestJacobiInfty:
    def _skew_pairs(self):
        solutions, non_solutions = fixtures.search_skew_solutions("aybe", 2)
        return solutions, non_solutions

    def test_double_lie_brackets_have_zero_residual(self):
        solutions, _ = self._skew_pairs()
        A = zero_product_algebra(2)
        for r in solutions:
            residual = jacobi_infty_residual({2: r}, A, 3)
            assert residual.is_zero()

    def test_skew_non_solutions_have_nonzero_residual(self):
        _, non_solutions = self._skew_pairs()
        A = zero_product_algebra(2)
        for r in non_solutions[:12]:
            assert not jacobi_infty_residual({2: r}, A, 3).is_zero()

    def test_residual_is_transposed_associative_residual(self):
        # for a skew binary bracket the cyclic sum is the three-slot
        # associative residual conjugated by a transposition
        solutions, non_solutions = self._skew_pairs()
        A = zero_product_algebra(2)
        for r in solutions[:4] + non_solutions[:12]:
            got = jacobi_infty_residual({2: r}, A, 3)
            want = ybe.aybe_residual(r).conjugate_by_perm((0, 2, 1))
            assert (got - want).is_zero()

    def test_free_algebra_extension_passes_full_check(self):
        solutions, _ = self._skew_pairs()
        alg = free_algebra(2, cap=1, mode="window")
        bracket = double.extend_by_derivations(
            alg, letter_generator_values(alg, solutions[1])
        )
        report = jacobi_infty_check({2: bracket.as_tensor_map()}, alg, 3)
        assert report.skew_ok
        assert report.residual_zero is True
        assert not report.leibniz_defects
        assert report.passed

    def test_symplectic_necklace_bracket_passes(self):
        bracket = double.two_cycle_symplectic_bracket(cap=2)
        fam = {2: bracket.as_tensor_map()}
        report = jacobi_infty_check(fam, bracket.algebra, 3)
        assert report.passed
        assert report.leibniz_skipped > 0  # window-edge products are skipped

    def test_binary_only_family_trivial_at_higher_arity(self):
        bracket = double.two_cycle_symplectic_bracket(cap=2)
        fam = {2: bracket.as_tensor_map()}
        assert jacobi_infty_residual(fam, bracket.algebra, 4).is_zero()

    def test_skew_violation_reported_before_residual(self):
        A = zero_product_algebra(3)
        bad = TensorMap(3, 2, 2, {((1, 2), (1, 1)): ONE})
        report = jacobi_infty_check({2: bad}, A, 3)
        assert not report.skew_ok
        assert report.residual_zero is None
        assert any("skipped (skew" in line for line in report.lines())

    def test_arity_mismatch_rejected(self):
        A = zero_product_algebra(2)
        with pytest.raises(ValueError, match="arity mismatch"):
            jacobi_infty_residual({3: TensorMap.zero(2, 2, 2)}, A, 3)
        with pytest.raises(ValueError, match="arity mismatch"):
            jacobi_infty_residual({2: TensorMap.zero(5, 2, 2)}, A, 3)

    def test_degree_homogeneity_enforced(self):
        A = zero_product_algebra(2)
        d = TensorMap(2, 1, 1, {((0,), (1,)): ONE})
        with pytest.raises(ValueError, match="homogeneous"):
            jacobi_infty_residual({1: d}, A, 1)

    def test_arity_one_equation_is_squared_differential(self):
        A = zero_product_algebra(3, degrees=(0, 1, 2))
        degs = (0, 1, 2)
        a, u, v = 0, 1, 2
        flat = TensorMap(3, 1, 1, {((u,), (a,)): ONE})
        assert jacobi_infty_residual({1: flat}, A, 1, super_degrees=degs).is_zero()
        chained = TensorMap(3, 1, 1, {((u,), (a,)): ONE, ((v,), (u,)): ONE})
        residual = jacobi_infty_residual({1: chained}, A, 1, super_degrees=degs)
        assert residual.entries == {((v,), (a,)): -ONE}

    def test_skew_clause_defect_location(self):
        sym = TensorMap(2, 2, 2, {((0, 1), (0, 1)): ONE, ((0, 1), (1, 0)): ONE})
        defects = skew_clause_defects({2: sym})
        assert defects and "swap (1 2)" in defects[0]

    def test_leibniz_detects_broken_product_rule(self):
        # the zero bracket trivially satisfies leibniz; a bracket that is
        # nonzero on a product but zero on its factors cannot
        A = matrix_algebra(2)
        e11 = 0
        b = TensorMap(4, 2, 2, {((e11, e11), (e11, e11)): ONE})
        defects, skipped = double_leibniz_defects({2: b}, A)
        assert skipped == 0
        assert defects

    def test_report_lines_deterministic(self):
        bracket = double.two_cycle_symplectic_bracket(cap=2)
        fam = {2: bracket.as_tensor_map()}
        first = jacobi_infty_check(fam, bracket.algebra, 3).lines()
        second = jacobi_infty_check(fam, bracket.algebra, 3).lines()
        assert first == second
