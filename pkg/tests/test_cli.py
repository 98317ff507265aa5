"""Job harness and command line: verdicts, exit codes, determinism."""

from fractions import Fraction

import pytest

from ybalg import harness, io, operad
from ybalg.algebras import Quiver, polynomial_quotient_algebra
from ybalg.cli import main
from ybalg.double import one_variable_lambda_bracket
from ybalg.fixtures import diagonal_unitary_qybe_solution, search_skew_solutions
from ybalg.harness import Job, JobSpec, Report, default_suite, fixture_search, run_suite
from ybalg.linfty import homotopy_fixture
from ybalg.tensoralg import TensorMap
from ybalg.ybe_infty import RnFamily, gl_lie, matrix_algebra


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


@pytest.fixture
def skew_files(tmp_path):
    solutions, non_solutions = search_skew_solutions("cybe", 2)
    good = next(r for r in solutions if not r.is_zero())
    bad = non_solutions[0]
    return (
        write(tmp_path, "good.txt", io.dump_tensor_map(good)),
        write(tmp_path, "bad.txt", io.dump_tensor_map(bad)),
    )


class TestHarness:
    def test_empty_suite_is_a_pass_report(self):
        report = run_suite(JobSpec(()))
        assert report.passed
        assert report.verdicts == ()
        text = report.text()
        assert "checks: 0" in text
        assert text.endswith("result: PASS\n")

    def test_unknown_check_rejected(self):
        with pytest.raises(ValueError, match="unknown check"):
            run_suite(JobSpec((Job("no-such-check"),)))

    def test_job_missing_input_and_param(self):
        job = Job("ybe-check")
        with pytest.raises(ValueError, match="needs an input"):
            job.input("input")
        with pytest.raises(ValueError, match="needs a parameter"):
            job.param("kind")
        assert job.param("kind", "cybe") == "cybe"

    def test_default_suite_passes(self):
        report = run_suite(default_suite())
        assert report.passed
        assert len(report.verdicts) == len(harness.DEFAULT_CHECKS)
        assert all(v == "PASS" for _, v in report.verdicts)

    def test_default_suite_is_byte_deterministic(self):
        first = run_suite(default_suite()).text()
        second = run_suite(default_suite()).text()
        assert first == second

    def test_report_carries_version_and_flags(self):
        report = run_suite(JobSpec((), literal_shuffles=True, emit_witness=True))
        text = report.text()
        assert "version: " + harness.VERSION in text
        assert "convention shuffle reading: literal" in text
        assert "convention witness emission: on" in text

    def test_output_path_written(self, tmp_path):
        out = tmp_path / "report.txt"
        report = run_suite(JobSpec((), output_path=str(out)))
        assert out.read_text() == report.text()


class TestFixtureSearch:
    def test_classical_solutions_include_zero(self):
        solutions = fixture_search("cybe", 2)
        assert solutions
        assert TensorMap.zero(2, 2, 2) in solutions

    def test_associative_inside_classical(self):
        classical = set(fixture_search("cybe", 2))
        associative = fixture_search("aybe", 2)
        assert len(associative) == 17
        assert all(r in classical for r in associative)

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="cybe.*aybe"):
            fixture_search("qybe", 2)

    def test_dim_bound_rejected_up_front(self):
        with pytest.raises(ValueError, match="exceeds the supported bound"):
            fixture_search("cybe", 5)

    def test_cost_limit_carries_estimate(self):
        with pytest.raises(ValueError, match="candidate maps"):
            fixture_search("cybe", 3)

    def test_wider_grid_still_within_limit(self):
        solutions = fixture_search("cybe", 1, entry_values=(-2, -1, 0, 1, 2))
        # dim 1: a single skew orbit forced to zero, so only the zero map
        assert solutions == [TensorMap.zero(1, 2, 2)]


class TestCliExitCodes:
    def test_pass_is_zero(self, skew_files, capsys):
        good, _ = skew_files
        assert main(["ybe", "check", "--kind", "cybe", "--input", good]) == 0
        out = capsys.readouterr().out
        assert "result: PASS" in out
        assert "verdict ybe-check: PASS" in out

    def test_fail_is_one(self, skew_files, capsys):
        _, bad = skew_files
        assert main(["ybe", "check", "--kind", "cybe", "--input", bad]) == 1
        out = capsys.readouterr().out
        assert "witness:" in out
        assert "verdict ybe-check: FAIL" in out

    def test_parse_error_is_two(self, tmp_path, capsys):
        path = write(
            tmp_path,
            "broken.txt",
            "ybalg schema/1 tensor-map\ndim: 2\ndom: 2\ncod: 2\n"
            "entry: 0,1 <- 1,0 : 1/0\n",
        )
        assert main(["ybe", "check", "--kind", "cybe", "--input", path]) == 2
        err = capsys.readouterr().err
        assert "error:" in err
        assert "broken.txt:5" in err

    def test_missing_file_is_two(self, tmp_path, capsys):
        assert main(["ybe", "cae", "--input", str(tmp_path / "nope.txt")]) == 2
        assert "file not found" in capsys.readouterr().err

    def test_bound_violation_is_two(self, tmp_path, capsys):
        path = write(
            tmp_path, "id.txt", io.dump_tensor_map(TensorMap.identity(2, 2))
        )
        assert main(["schurweyl", "decompose", "--R", path, "--m", "9"]) == 2
        err = capsys.readouterr().err
        assert "exceeds the supported bound" in err
        assert "estimated cost" in err

    def test_precondition_unmet_is_one(self, tmp_path, capsys):
        doubled = TensorMap.identity(2, 2).scale(Fraction(2))
        path = write(tmp_path, "two.txt", io.dump_tensor_map(doubled))
        assert main(["schurweyl", "decompose", "--R", path, "--m", "2"]) == 1
        out = capsys.readouterr().out
        assert "verdict schurweyl-decompose: precondition-unmet" in out
        assert "not unitary" in out


class TestCliCommands:
    def test_cae(self, skew_files, capsys):
        good, _ = skew_files
        assert main(["ybe", "cae", "--input", good]) == 0
        assert "check: cae" in capsys.readouterr().out

    def test_emit_witness_dumps_residual(self, skew_files, capsys):
        _, bad = skew_files
        code = main(
            ["ybe", "check", "--kind", "cybe", "--input", bad, "--emit-witness"]
        )
        assert code == 1
        out = capsys.readouterr().out
        assert "residual map:" in out
        assert "ybalg schema/1 tensor-map" in out

    def test_poisson_extend_prints_terms(self, skew_files, capsys):
        good, _ = skew_files
        assert main(["poisson", "extend", "--r", good, "--lhs", "0,1", "--rhs", "1"]) == 0
        out = capsys.readouterr().out
        assert "lhs: (0,1)" in out
        assert "term: (" in out or "value: 0" in out

    def test_poisson_verify(self, skew_files, capsys):
        good, _ = skew_files
        assert main(["poisson", "verify", "--r", good, "--max-degree", "3"]) == 0
        out = capsys.readouterr().out
        assert "antisymmetry" in out
        assert "jacobi" in out

    def test_quiver_build_path(self, tmp_path, capsys):
        q = Quiver(("u", "v"), (("a", "u", "v"), ("b", "v", "u")))
        path = write(tmp_path, "q.txt", io.dump_quiver(q))
        assert main(["quiver", "build", "--quiver", path, "--type", "path", "--cap", "2"]) == 0
        out = capsys.readouterr().out
        assert "basis dimension:" in out

    def test_quiver_build_deformed_with_weights(self, tmp_path, capsys):
        q = Quiver(("u", "v"), (("a", "u", "v"),))
        path = write(tmp_path, "q.txt", io.dump_quiver(q))
        code = main(
            [
                "quiver", "build", "--quiver", path, "--type", "deformed",
                "--cap", "2", "--weights", "u:1 v:-1",
            ]
        )
        assert code == 0
        assert "deformed algebra" in capsys.readouterr().out

    def test_double_verify_and_almcybe(self, tmp_path, capsys):
        algebra = polynomial_quotient_algebra(5)
        algebra_path = write(
            tmp_path, "alg.txt", io.dump_associative_algebra(algebra)
        )
        db = one_variable_lambda_bracket(5, Fraction(1))
        bracket_path = write(
            tmp_path, "br.txt", io.dump_tensor_map(db.to_tensor_map())
        )
        assert main(["double", "verify", "--algebra", algebra_path, "--bracket", bracket_path]) == 0
        assert "double bracket axioms" in capsys.readouterr().out
        assert main(["double", "almcybe", "--algebra", algebra_path, "--bracket", bracket_path]) == 0
        assert "one-sided multiplication" in capsys.readouterr().out

    def test_operad_classify_pass_and_fail(self, tmp_path, capsys):
        jac = write(
            tmp_path, "jac.txt", io.dump_relation_vectors([operad.jacobi_vector()])
        )
        assert main(["operad", "classify", "--sym", "skew", "--relation", jac]) == 0
        assert "operad of Lie algebras" in capsys.readouterr().out
        assoc = write(
            tmp_path,
            "assoc.txt",
            io.dump_relation_vectors([operad.associativity_vector()]),
        )
        assert main(["operad", "classify", "--sym", "none", "--relation", assoc]) == 1
        out = capsys.readouterr().out
        assert "not distributive" in out
        assert "violated:" in out

    def test_operad_classify_wrong_length(self, tmp_path, capsys):
        short = write(
            tmp_path, "short.txt", io.dump_relation_vectors([[Fraction(1)]])
        )
        assert main(["operad", "classify", "--sym", "skew", "--relation", short]) == 2
        assert "coordinates" in capsys.readouterr().err

    def test_operad_nullspace(self, capsys):
        assert main(["operad", "nullspace", "--sym", "skew"]) == 0
        out = capsys.readouterr().out
        assert "distributive nullspace dimension: 1" in out
        assert "basis vector:" in out

    def test_linfty_check(self, tmp_path, capsys):
        path = write(
            tmp_path, "fam.txt", io.dump_linfty_family(homotopy_fixture())
        )
        assert main(["linfty", "check", "--family", path, "--max-m", "3"]) == 0
        assert "all identities hold" in capsys.readouterr().out

    def test_ybe_infty_cybe_and_flag(self, tmp_path, capsys):
        lie_path = write(tmp_path, "gl.txt", io.dump_lie_structure(gl_lie(2)))
        fam = RnFamily(4, {2: {(1, 1): Fraction(1)}})
        fam_path = write(tmp_path, "fam.txt", io.dump_rn_family(fam))
        base = [
            "ybe-infty", "check", "--kind", "cybe", "--algebra", lie_path,
            "--family", fam_path, "--n", "3",
        ]
        assert main(base) == 0
        out = capsys.readouterr().out
        assert "governing reading: shuffle" in out
        assert "reading literal:" in out
        assert main(base + ["--literal-shuffles"]) == 0
        assert "governing reading: literal" in capsys.readouterr().out

    def test_ybe_infty_aybe(self, tmp_path, capsys):
        algebra_path = write(
            tmp_path, "mat.txt", io.dump_associative_algebra(matrix_algebra(2))
        )
        fam = RnFamily(4, {2: {(1, 1): Fraction(1)}})
        fam_path = write(tmp_path, "fam.txt", io.dump_rn_family(fam))
        code = main(
            [
                "ybe-infty", "check", "--kind", "aybe", "--algebra", algebra_path,
                "--family", fam_path, "--n", "3", "--emit-witness",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "check: aybe-infty" in out
        assert "full terms of reading cyclic:" in out

    def test_ybe_infty_flavor_mismatch(self, tmp_path, capsys):
        lie_path = write(tmp_path, "gl.txt", io.dump_lie_structure(gl_lie(2)))
        fam_path = write(
            tmp_path,
            "fam.txt",
            io.dump_rn_family(RnFamily(4, {2: {(1, 1): Fraction(1)}})),
        )
        code = main(
            [
                "ybe-infty", "check", "--kind", "aybe", "--algebra", lie_path,
                "--family", fam_path, "--n", "3",
            ]
        )
        assert code == 2
        assert "flavor assoc" in capsys.readouterr().err

    def test_schurweyl_decompose(self, tmp_path, capsys):
        path = write(
            tmp_path,
            "diag.txt",
            io.dump_tensor_map(diagonal_unitary_qybe_solution(2)),
        )
        assert main(["schurweyl", "decompose", "--R", path, "--m", "3"]) == 0
        out = capsys.readouterr().out
        assert "lambda (2,1): rho dim 2, comodule dim 2" in out
        assert "double commutant closure: PASS" in out

    def test_schurweyl_hrdim(self, tmp_path, capsys):
        path = write(tmp_path, "id.txt", io.dump_tensor_map(TensorMap.identity(2, 2)))
        assert main(["schurweyl", "hrdim", "--R", path, "--m", "2"]) == 0
        out = capsys.readouterr().out
        assert "oracle by relation span: 10" in out
        assert "oracle by commutant dimension: 10" in out

    def test_suite_writes_out_file(self, tmp_path, capsys):
        out_path = tmp_path / "report.txt"
        assert main(["suite", "--out", str(out_path)]) == 0
        stdout = capsys.readouterr().out
        assert out_path.read_text() == stdout
        assert "checks: %d" % len(harness.DEFAULT_CHECKS) in stdout
