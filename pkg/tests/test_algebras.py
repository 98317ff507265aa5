"""Truncated algebras: structure constants, quotients, and the window policy."""

from fractions import Fraction

import pytest

from ybalg.algebras import (
    Quiver,
    TruncationOverflow,
    deformed_preprojective_algebra,
    double_quiver,
    free_algebra,
    path_algebra,
    polynomial_quotient_algebra,
    preprojective_algebra,
    preprojective_relation,
    structural_primeness_report,
)

ONE = Fraction(1)


def one_loop():
    return Quiver(("1",), (("x", "1", "1"),))


def one_arrow():
    return Quiver(("1", "2"), (("a", "1", "2"),))


class TestPolynomialQuotient:
    def test_basis_and_products(self):
        A = polynomial_quotient_algebra(5)
        assert A.labels == ["1", "x", "x^2", "x^3", "x^4"]
        x = A.index("x")
        x3 = A.index("x^3")
        assert A.mul_basis(x, x3) == {A.index("x^4"): ONE}

    def test_top_power_is_zero_not_overflow(self):
        A = polynomial_quotient_algebra(5)
        x2, x3 = A.index("x^2"), A.index("x^3")
        assert A.mul_basis(x2, x3) == {}
        assert A.mul_basis(x3, x3) == {}

    def test_associative_without_skips(self):
        A = polynomial_quotient_algebra(5)
        ok, failure, skipped = A.check_associativity()
        assert ok and failure is None and skipped == 0


class TestFreeAlgebra:
    def test_window_flags_long_products(self):
        A = free_algebra(2, cap=2)
        ab = A.index("x0x1")
        with pytest.raises(TruncationOverflow):
            A.mul_basis(ab, ab)

    def test_associativity_skips_are_counted(self):
        A = free_algebra(2, cap=2)
        ok, failure, skipped = A.check_associativity()
        assert ok and failure is None and skipped > 0

    def test_noncommutative(self):
        A = free_algebra(2, cap=2)
        a, b = A.index("x0"), A.index("x1")
        assert A.mul_basis(a, b) != A.mul_basis(b, a)


class TestPathAlgebra:
    def test_one_loop_cap3_basis(self):
        A = path_algebra(one_loop(), cap=3)
        assert A.labels == ["e_1", "x", "xx", "xxx"]

    def test_one_arrow_products(self):
        A = path_algebra(one_arrow(), cap=2)
        assert A.labels == ["e_1", "e_2", "a"]
        e1, e2, a = A.index("e_1"), A.index("e_2"), A.index("a")
        assert A.mul_basis(e1, a) == {a: ONE}
        assert A.mul_basis(a, e2) == {a: ONE}
        assert A.mul_basis(a, e1) == {}
        assert A.mul_basis(e2, a) == {}
        assert A.mul_basis(a, a) == {}  # endpoint mismatch, not overflow

    def test_unit_is_sum_of_idempotents(self):
        A = path_algebra(one_arrow(), cap=2)
        assert A.unit == {A.index("e_1"): ONE, A.index("e_2"): ONE}
        a = A.index("a")
        assert A.mul(A.unit, {a: ONE}) == {a: ONE}
        assert A.mul({a: ONE}, A.unit) == {a: ONE}

    def test_two_vertex_double_concatenation_overflows(self):
        A = path_algebra(double_quiver(one_arrow()), cap=2)
        aas = A.index("aa*")
        with pytest.raises(TruncationOverflow):
            A.mul_basis(aas, aas)

    def test_endpoint_mismatch_beyond_cap_is_zero(self):
        # aa* ends at vertex 1, a*a starts at vertex 2: structurally zero even
        # though the combined length exceeds the window.
        A = path_algebra(double_quiver(one_arrow()), cap=2)
        assert A.mul_basis(A.index("aa*"), A.index("a*a")) == {}

    def test_associativity_within_window(self):
        A = path_algebra(double_quiver(one_arrow()), cap=3)
        ok, failure, skipped = A.check_associativity()
        assert ok and failure is None


class TestQuiver:
    def test_double_quiver_reverses(self):
        dq = double_quiver(one_arrow())
        assert ("a*", "2", "1") in dq.edges

    def test_strong_connectivity(self):
        assert not one_arrow().is_strongly_connected()
        assert double_quiver(one_arrow()).is_strongly_connected()
        assert one_loop().is_strongly_connected()

    def test_duplicate_edge_labels_rejected(self):
        with pytest.raises(ValueError):
            Quiver(("1",), (("x", "1", "1"), ("x", "1", "1")))

    def test_bad_endpoint_rejected(self):
        with pytest.raises(ValueError):
            Quiver(("1",), (("x", "1", "2"),))

    def test_primeness_report_mentions_criterion(self):
        lines = structural_primeness_report(double_quiver(one_arrow()))
        text = "\n".join(lines)
        assert "strongly connected" in text
        assert "not verified from first principles" in text


class TestPreprojective:
    def test_one_arrow_moment_map(self):
        parent = path_algebra(double_quiver(one_arrow()), cap=2, mode="window")
        rel = preprojective_relation(one_arrow(), parent)
        assert rel == {parent.index("aa*"): ONE, parent.index("a*a"): -ONE}

    def test_one_arrow_dims(self):
        A = preprojective_algebra(one_arrow(), cap=2)
        assert A.info["dims_by_degree"] == {0: 2, 1: 2}
        assert A.nbasis == 4

    def test_jordan_quiver_matches_commutative_polynomials(self):
        # the doubled loop modulo xx* - x*x is a polynomial ring in two
        # variables; graded dimension in degree d is d + 1
        A = preprojective_algebra(one_loop(), cap=3)
        assert A.info["dims_by_degree"] == {0: 1, 1: 2, 2: 3, 3: 4}

    def test_deformed_one_arrow_collapses_to_matrix_algebra(self):
        weights = {"1": Fraction(1), "2": Fraction(-1)}
        for cap in (2, 3):
            A = deformed_preprojective_algebra(one_arrow(), weights, cap)
            assert A.nbasis == 4
            assert A.info["inhomogeneous"] is True
        # at cap 3 the unit reduces into degree <= 2 representatives
        A = deformed_preprojective_algebra(one_arrow(), weights, 3)
        ok, failure, skipped = A.check_associativity()
        assert ok and failure is None

    def test_deformed_relation_actually_cuts_the_algebra(self):
        A = deformed_preprojective_algebra(
            one_arrow(), {"1": Fraction(1), "2": Fraction(-1)}, 2
        )
        assert A.info["relation_rank"] > 0
