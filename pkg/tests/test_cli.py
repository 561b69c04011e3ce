import pytest

from dgql import config
from dgql.cli import main, normalize_argv
from dgql.cli.grammar import kind_of, parse_input
from dgql.error import ParseError, SemanticError


@pytest.fixture(autouse=True)
def default_truncation(monkeypatch):
    monkeypatch.delenv(config.TRUNCATION_ENV, raising=False)


def run(capsys, *argv):
    code = main([str(arg) for arg in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_jacobian_golden(capsys, data_dir):
    code, out, _ = run(capsys, "jacobian", data_dir / "loop-x3.qpot", "--truncate", 8)

    assert code == 0
    assert out.splitlines() == [
        "weight 0: 1",
        "weight 1: 1",
        "total: 2 (finite: likely)",
        "exact in weights <= 8",
    ]


def test_jacobian_of_three_cycle_machine(capsys, data_dir):
    code, out, _ = run(capsys, "jacobian", data_dir / "three-cycle.qpot", "--machine")
    lines = out.splitlines()

    assert code == 0
    assert "total=6" in lines
    assert "finite=true" in lines
    assert "block.u.v.001=1" in lines
    assert lines == sorted(lines)


def test_d2check(capsys, data_dir):
    code, out, _ = run(capsys, "d2check", data_dir / "gamma3.dgq")

    assert code == 0
    assert out.strip() == "d^2 = 0: passed (all arrows, weights <= 8)"

    code, out, _ = run(capsys, "d2check", data_dir / "tampered.dgq")

    assert code == 1
    assert "arrow: t" in out.splitlines()
    assert "remainder: 1 x x x" in out.splitlines()


def test_cohomology_of_gamma(capsys, data_dir):
    code, out, _ = run(
        capsys, "cohomology", data_dir / "gamma3.dgq", "--truncate", 9, "--degrees=-1..0", "--machine"
    )
    lines = out.splitlines()

    assert code == 0
    assert "H.-1.total=0" in lines
    assert "H.0.total=2" in lines
    assert "exact=true" in lines
    assert "weight_of.t=3" in lines


def test_cohomology_below_the_differential_weight(capsys, data_dir):
    code, out, _ = run(
        capsys, "cohomology", data_dir / "gamma3.dgq", "--truncate", 1, "--degrees=-1..0", "--machine"
    )
    lines = out.splitlines()

    assert code == 0
    assert "exact=true" in lines
    assert "weight_of.xstar=2" in lines
    assert "weight_of.t=3" in lines
    assert "H.0.w000=1" in lines
    assert "H.0.w001=1" in lines
    assert "H.-1.total=0" in lines


def test_negative_values_may_be_separate_tokens(capsys, data_dir):
    code, out, _ = run(
        capsys, "cohomology", data_dir / "gamma3.dgq", "--degrees", "-1..0", "--machine"
    )

    assert code == 0
    assert "H.-1.total=0" in out.splitlines()

    code, out, _ = run(capsys, "shifted-hom", data_dir / "truncated4.alg", "--shift", "-1", "--machine")

    assert code == 0
    assert "hom.U1.U1.-1=1" in out.splitlines()


def test_cohomology_refuses_tampered_input(capsys, data_dir):
    code, _, err = run(capsys, "cohomology", data_dir / "tampered.dgq")

    assert code == 3
    assert err.startswith("error: Refusing cohomology")


def test_cohomology_of_potential_goes_through_ginzburg(capsys, data_dir):
    code, out, _ = run(
        capsys, "cohomology", data_dir / "loop-x3.qpot", "--degrees=0..0", "--truncate", 6, "--machine"
    )

    assert code == 0
    assert "H.0.total=2" in out.splitlines()


def test_ginzburg_output_round_trips(capsys, data_dir, tmp_path):
    code, out, _ = run(capsys, "ginzburg", data_dir / "loop-x3.qpot")

    assert code == 0
    assert out.splitlines() == [
        "field rational",
        "vertex v",
        "arrow x v v 0 1",
        "arrow xstar v v -1 1",
        "arrow t_v v v -2 1",
        "d xstar = 3 x x",
        "d t_v = 1 x xstar + -1 xstar x",
    ]

    built = tmp_path / "ginzburg.dgq"
    built.write_text(out)

    code, out, _ = run(capsys, "d2check", built)
    assert code == 0
    assert "passed" in out


def test_bar_and_dual_bar(capsys, data_dir):
    code, out, _ = run(capsys, "bar", data_dir / "massey.aug", "--truncate", 4)

    assert code == 0
    assert "bar d^2 = 0: passed (chains of length <= 4)" in out.splitlines()
    assert "coderivation: passed (chains of length <= 4)" in out.splitlines()

    code, out, _ = run(capsys, "dualbar", data_dir / "massey.aug", "--truncate", 4)

    assert code == 0
    assert "arrow xi_z e e -1 1" in out.splitlines()
    assert "d xi_z = -1 xi_a xi_a xi_a" in out.splitlines()


def test_trivext_iso(capsys, data_dir):
    code, out, _ = run(capsys, "trivext-iso", data_dir / "a3.tree", "--machine")
    lines = out.splitlines()

    assert code == 0
    assert "passed=true" in lines
    assert "failure=none" in lines


def test_machine_output_is_deterministic(capsys, data_dir):
    first = run(capsys, "trivext-iso", data_dir / "cycle.tree", "--machine", "--seed", 3)
    second = run(capsys, "trivext-iso", data_dir / "cycle.tree", "--machine", "--seed", 3)

    assert first == second

    first = run(capsys, "cy-check", data_dir / "a3.tree", "--machine", "--seed", 11)
    second = run(capsys, "cy-check", data_dir / "a3.tree", "--machine", "--seed", 11)

    assert first == second
    assert first[0] == 0


def test_rescaling_needs_a_tree(capsys, data_dir):
    code, _, err = run(capsys, "trivext-iso", data_dir / "cycle.tree")

    assert code == 3
    assert "tree" in err


def test_cy_check(capsys, data_dir):
    code, out, _ = run(capsys, "cy-check", data_dir / "a3.tree", "--d", 3, "--machine")
    lines = out.splitlines()

    assert code == 0
    assert "passed=true" in lines
    assert "d=3" in lines
    assert "dim.v1.v2.+1=1" in lines
    assert "dim.v2.v1.+3=1" in lines


def test_selfinj_check(capsys, data_dir):
    code, out, _ = run(capsys, "selfinj-check", data_dir / "a3.tree")

    assert code == 0
    assert out.strip() == "self-injective; Nakayama permutation: v1 -> v1, v2 -> v2, v3 -> v3"

    code, out, _ = run(capsys, "selfinj-check", data_dir / "a2.alg", "--machine")

    assert code == 1
    assert "accepted=false" in out.splitlines()
    assert "failing_projective=v2" in out.splitlines()


def test_stable_hom_table(capsys, data_dir):
    code, out, _ = run(
        capsys, "stable-hom", data_dir / "truncated4.alg", data_dir / "uniserial3.mod", "--machine"
    )
    lines = out.splitlines()

    assert code == 0
    assert "pairs=9" in lines
    assert "hom.U1.U1.+0=1" in lines
    assert "hom.U2.U2.+0=2" in lines
    assert "hom.U2.U3.+0=1" in lines
    assert "hom.U3.U3.+0=1" in lines


def test_shifted_hom_single_shift(capsys, data_dir):
    code, out, _ = run(capsys, "shifted-hom", data_dir / "truncated4.alg", "--shift=-1", "--machine")
    lines = out.splitlines()

    assert code == 0
    assert "pairs=4" in lines
    assert "hom.U2.U2.-1=2" in lines
    assert "hom.U2.U2.-1.cross_checked=true" in lines
    assert "hom.U1.U1.-1=1" in lines


def test_shifted_hom_default_range(capsys, data_dir):
    code, out, _ = run(capsys, "shifted-hom", data_dir / "truncated4.alg", "--machine")
    lines = out.splitlines()

    assert code == 0
    assert "pairs=28" in lines
    assert "hom.U1.U2.+2=0" in lines
    assert "hom.U1.U2.+1=0" in lines
    assert "hom.U1.U2.-2=1" in lines


def test_stable_hom_needs_self_injective_algebra(capsys, data_dir, tmp_path):
    modules = tmp_path / "simple.mod"
    modules.write_text("module S\ndim v2 1\n")

    code, _, err = run(capsys, "stable-hom", data_dir / "a2.alg", modules)

    assert code == 3
    assert "not self-injective" in err


@pytest.mark.parametrize(
    "name, text, code",
    [
        ("bad.qpot", "vertex v\narrow x v\n", 2),
        ("bad.qpot", "vertex v\narrow x v v 0\nterm 1 y\n", 3),
        ("bad.qpot", "vertex v\narrow x v w 0\n", 3),
        ("bad.dgq", "vertex v\narrow x v v 0\nd x = 1\n", 3),
        ("bad.tree", "field prime 4\nvertex v\n", 2),
        ("bad.txt", "vertex v\n", 2),
    ],
    ids=["arity", "unknown-arrow", "undeclared-vertex", "wrong-degree", "field", "suffix"],
)
def test_input_errors(capsys, tmp_path, name, text, code):
    path = tmp_path / name
    path.write_text(text)

    exit_code, _, err = run(capsys, "d2check", path)

    assert exit_code == code
    assert err.startswith("error: ")


def test_error_detail_in_machine_mode(capsys, tmp_path):
    path = tmp_path / "bad.qpot"
    path.write_text("vertex v\narrow x v v 0\nterm 1 y\n")

    code, out, err = run(capsys, "jacobian", path, "--machine")

    assert code == 3
    assert err.strip() == "error: line 3: Unknown arrow y"
    assert out.splitlines() == [
        "arrow=y",
        "error_type=dgql.semantic",
        "line=3",
        "message=line 3: Unknown arrow y",
    ]


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "d2check", tmp_path / "absent.dgq")

    assert code == 2
    assert "Cannot read" in err


def test_wrong_input_kind_for_command(capsys, data_dir):
    code, _, err = run(capsys, "bar", data_dir / "gamma3.dgq")

    assert code == 3
    assert "bar needs" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["jacobian", "a.qpot", "b.qpot"],
        ["jacobian", "a.qpot", "--truncate", "0"],
        ["cohomology", "a.dgq", "--degrees=1..0"],
        ["cohomology", "a.dgq", "--degrees=1-0"],
        ["cy-check", "a.tree", "--d", "1"],
    ],
)
def test_invalid_jobs(capsys, argv):
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("error: ")


def test_normalize_argv():
    assert normalize_argv(["cohomology", "a.dgq", "--degrees", "-2..0", "--shift", "-1"]) == [
        "cohomology",
        "a.dgq",
        "--degrees=-2..0",
        "--shift=-1",
    ]
    assert normalize_argv(["cohomology", "a.dgq", "--degrees", "0..2", "--machine"]) == [
        "cohomology",
        "a.dgq",
        "--degrees",
        "0..2",
        "--machine",
    ]
    assert normalize_argv(["cohomology", "a.dgq", "--degrees"]) == [
        "cohomology",
        "a.dgq",
        "--degrees",
    ]


def test_unknown_command_exits_through_argparse(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate", "a.qpot"])

    assert info.value.code == 2


def test_truncation_from_environment(capsys, data_dir, monkeypatch):
    monkeypatch.setenv(config.TRUNCATION_ENV, "5")
    code, out, _ = run(capsys, "jacobian", data_dir / "loop-x3.qpot")

    assert code == 0
    assert "exact in weights <= 5" in out.splitlines()

    monkeypatch.setenv(config.TRUNCATION_ENV, "many")
    code, _, err = run(capsys, "jacobian", data_dir / "loop-x3.qpot")

    assert code == 2
    assert "DGQL_TRUNCATE" in err


def test_kind_of():
    assert kind_of("x/y.alg") == "alg"

    with pytest.raises(ParseError):
        kind_of("notes.md")


def test_parse_input_rejects_standalone_modules():
    with pytest.raises(ParseError):
        parse_input("module M\ndim v 1\n", "mod", 4)


def test_parse_potential_requires_cycles():
    with pytest.raises(SemanticError) as info:
        parse_input("vertex u\nvertex v\narrow a u v 0\nterm 1 a\n", "qpot", 4)

    assert info.value.line == 4
