"""End-to-end tests for the ``silting-forge`` command-line interface.

Every test drives :func:`silting_forge.cli.run` exactly as the console
script does and asserts on the printed JSON payload plus the process
exit code contract: 0 for positive verdicts, 1 for negative ones,
2 for undecided/out-of-bound results, 3 for usage and input errors.
"""

from __future__ import annotations

import io
import json
from contextlib import redirect_stdout

import pytest

from silting_forge.cli import run
from silting_forge.io import corpus_load, dump_json, module_to_json
from silting_forge.modules import regular_module, simple_module
from silting_forge.recollement import idempotent_recollement


def cli(*argv: str) -> tuple[int, dict]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = run(list(argv))
    return code, json.loads(buf.getvalue())


def cli_raw(*argv: str) -> tuple[int, str]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = run(list(argv))
    return code, buf.getvalue()


@pytest.fixture(scope="module")
def a2():
    return corpus_load("a2")


@pytest.fixture()
def regular_file(a2, tmp_path):
    path = tmp_path / "regular.json"
    path.write_text(dump_json(module_to_json(regular_module(a2), "a2")))
    return str(path)


@pytest.fixture()
def simple1_file(a2, tmp_path):
    path = tmp_path / "s1.json"
    path.write_text(dump_json(module_to_json(simple_module(a2, "e1"), "a2")))
    return str(path)


# ---------------------------------------------------------------------------
# documented headline examples
# ---------------------------------------------------------------------------


def test_silting_check_regular_module_passes(regular_file):
    code, out = cli(
        "silting", "check", "--algebra", "a2",
        "--module", regular_file, "--presentation", "auto",
    )
    assert code == 0
    assert out["verdict"] == "silting"


def test_algebra_build_rejects_inadmissible_relation(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "field": {"kind": "prime", "p": 2},
        "quiver": {
            "vertices": ["1"],
            "arrows": [{"name": "x", "source": "1", "target": "1"}],
        },
        "relations": [[{"coeff": "1", "path": ["x"]}]],
        "length_bound": 4,
    }))
    code, out = cli("algebra", "build", "--quiver", str(bad))
    assert code == 3
    assert out["error"]["type"] == "ValidationError"


def test_corpus_list_bundled_entries():
    code, out = cli("corpus", "list")
    assert code == 0
    ids = [entry["id"] for entry in out["entries"]]
    assert ids == sorted(ids)
    assert {"a2", "a2xa2", "a3rel", "dualnum", "gamma0", "kxk"} <= set(ids)
    for entry in out["entries"]:
        assert set(entry) == {"id", "kind", "path", "content_hash"}


def test_theorem_suite_idempotent_passes():
    code, out = cli("theorems", "run", "--suite", "idempotent")
    assert code == 0
    assert out["verdict"] == "PASS"
    assert len(out["rows"]) == 6
    for row in out["rows"]:
        assert row["quotient_verdict"] == row["middle_verdict"]


# ---------------------------------------------------------------------------
# exit-code contract
# ---------------------------------------------------------------------------


def test_negative_verdict_exits_one(simple1_file):
    code, out = cli(
        "silting", "check", "--algebra", "a2",
        "--module", simple1_file, "--presentation", "auto",
    )
    assert code == 1
    assert out["verdict"] == "not_silting"


def test_out_of_bound_report_exits_two():
    code, out = cli("gorenstein", "report", "--algebra", "a3rel", "--bound", "1")
    assert code == 2
    assert out["verdict"] == "not_within_bound"


def test_malformed_json_exits_three(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, out = cli("silting", "check", "--algebra", "a2", "--module", str(broken))
    assert code == 3
    assert out["error"]["type"] == "ValidationError"


def test_unknown_subcommand_exits_three():
    code, out = cli("silting", "frobnicate")
    assert code == 3
    assert out["error"]["type"] == "usage"


def test_missing_arguments_exit_three():
    code, out = cli()
    assert code == 3
    code, out = cli("module")
    assert code == 3


def test_invalid_module_action_reported(a2, tmp_path):
    data = module_to_json(simple_module(a2, "e1"), "a2")
    data["action"]["a"] = [["1"]]
    bad = tmp_path / "bad_module.json"
    bad.write_text(dump_json(data))
    code, out = cli("module", "validate", "--algebra", "a2", "--module", str(bad))
    assert code == 1
    assert out["valid"] is False
    assert "structure constants" in out["reason"]


def test_degenerate_quotient_functor_exits_three(regular_file):
    code, out = cli(
        "recollement", "apply", "--algebra", "a2", "--e", "e1,e2",
        "--functor", "i", "--module", regular_file,
    )
    assert code == 3
    assert out["error"]["type"] == "ValidationError"


# ---------------------------------------------------------------------------
# algebra group
# ---------------------------------------------------------------------------


def test_algebra_build_from_corpus_definition():
    from silting_forge.io import CORPUS_DIR

    code, out = cli("algebra", "build", "--quiver", str(CORPUS_DIR / "a2.json"))
    assert code == 0
    assert out["dim"] == 3
    assert out["labels"] == ["e1", "e2", "a"]


def test_algebra_derive_variants():
    for kind, extra, dim in [
        ("opposite", [], 3),
        ("corner", ["--e", "e2"], 1),
        ("quotient", ["--e", "e2"], 1),
        ("tensor", ["--right", "a2"], 9),
    ]:
        code, out = cli("algebra", "derive", "--base", "a2", "--kind", kind, *extra)
        assert code == 0, kind
        assert out["dim"] == dim, kind


def test_algebra_triangular_from_context():
    code, out = cli("algebra", "triangular", "--context", "gamma0")
    assert code == 0
    assert out["triangular"]["dim"] == 5
    assert all(out["hypotheses"].values())


# ---------------------------------------------------------------------------
# module group
# ---------------------------------------------------------------------------


def test_module_validate_accepts_valid_module(simple1_file):
    code, out = cli("module", "validate", "--algebra", "a2", "--module", simple1_file)
    assert code == 0
    assert out == {"dim": 1, "dimension_vector": {"e1": 1, "e2": 0}, "valid": True}


def test_module_hom_and_tau(a2, tmp_path, simple1_file):
    s2 = tmp_path / "s2.json"
    s2.write_text(dump_json(module_to_json(simple_module(a2, "e2"), "a2")))
    code, out = cli("module", "hom", "--algebra", "a2",
                    "--source", simple1_file, "--target", str(s2))
    assert code == 0
    assert out["dim"] == 0
    code, out = cli("module", "tau", "--algebra", "a2", "--module", simple1_file)
    assert code == 0
    assert out["translate"]["dim"] == 1


def test_module_decompose_regular(regular_file):
    code, out = cli("module", "decompose", "--algebra", "a2", "--module", regular_file)
    assert code == 0
    dims = sorted(part["dim"] for part in out["parts"])
    assert dims == [1, 2]


def test_module_enumerate_with_bound():
    code, out = cli("module", "enumerate", "--algebra", "a2", "--dim-bound", "2")
    assert code == 0
    assert out["count"] == 3
    assert len(out["dimension_vectors"]) == 3


# ---------------------------------------------------------------------------
# silting and gorenstein groups
# ---------------------------------------------------------------------------


def test_silting_enumerate_matches_expected_count():
    code, out = cli("silting", "enumerate", "--algebra", "a2", "--dim-bound", "2")
    assert code == 0
    assert len(out["certificates"]) == 5
    for cert in out["certificates"]:
        assert cert["verdict"] == "silting"


def test_silting_tensor_of_regulars(regular_file):
    code, out = cli(
        "silting", "tensor",
        "--left", "a2", "--left-module", regular_file,
        "--right", "a2", "--right-module", regular_file,
    )
    assert code == 0
    assert out["certificate"]["verdict"] == "silting"


def test_gorenstein_report_and_gp():
    code, out = cli("gorenstein", "report", "--algebra", "dualnum", "--bound", "6")
    assert code == 0
    assert out["verdict"] == "gorenstein"
    code, out = cli("gorenstein", "gp", "--algebra", "dualnum", "--dim-bound", "2")
    assert code == 0
    assert out["count"] == 2
    assert {"ev": 2} in out["dimension_vectors"]


def test_gorenstein_gp_single_module(regular_file):
    code, out = cli("gorenstein", "gp", "--algebra", "a2", "--module", regular_file)
    assert code == 0
    assert out["holds"] is True


def test_gorenstein_check_regular(regular_file):
    code, out = cli(
        "gorenstein", "check", "--algebra", "a2",
        "--module", regular_file, "--presentation", "auto",
    )
    assert code == 0
    assert out["verdict"] == "gorenstein_silting"


# ---------------------------------------------------------------------------
# recollement group
# ---------------------------------------------------------------------------


def test_recollement_build_reports_layers():
    code, out = cli("recollement", "build", "--algebra", "a2", "--e", "e2")
    assert code == 0
    assert out["middle_dim"] == 3
    assert out["corner_dim"] == 1
    assert out["quotient_dim"] == 1


def test_recollement_apply_functor(regular_file):
    code, out = cli(
        "recollement", "apply", "--algebra", "a2", "--e", "e2",
        "--functor", "q", "--module", regular_file,
    )
    assert code == 0
    assert out["image"]["dim"] == 1


def test_recollement_verify_idempotent_statement(a2, tmp_path):
    ctx = idempotent_recollement(a2, ("e2",))
    module = tmp_path / "quotient_regular.json"
    module.write_text(dump_json(module_to_json(regular_module(ctx.quotient))))
    code, out = cli(
        "recollement", "verify", "--statement", "thm_idempotent_ideal",
        "--algebra", "a2", "--e", "e2", "--module", str(module),
    )
    assert code == 0
    assert out["verdict"] == "PASS"


def test_recollement_verify_gluing_statement(tmp_path):
    tctx = corpus_load("gamma0")
    x = tmp_path / "x.json"
    x.write_text(dump_json(module_to_json(simple_module(tctx.a, "eu"))))
    y = tmp_path / "y.json"
    y.write_text(dump_json(module_to_json(regular_module(tctx.b))))
    code, out = cli(
        "recollement", "verify", "--statement", "thm_gluing_equivalences",
        "--context", "gamma0", "--x", str(x), "--y", str(y),
    )
    assert code == 0
    assert out["verdict"] == "PASS"
    assert out["atoms"]["equivalence_a_b"] is True
    assert out["atoms"]["equivalence_a_cdef"] is True


def test_recollement_verify_module_over_wrong_algebra(regular_file):
    code, out = cli(
        "recollement", "verify", "--statement", "thm_idempotent_ideal",
        "--algebra", "a2", "--e", "e2", "--module", regular_file,
    )
    assert code == 3
    assert out["error"]["type"] == "ValidationError"


# ---------------------------------------------------------------------------
# corpus management and determinism
# ---------------------------------------------------------------------------


def test_corpus_add_and_list(regular_file, tmp_path, monkeypatch):
    monkeypatch.setenv("SILTING_FORGE_CACHE", str(tmp_path / "cache"))
    code, out = cli("corpus", "add", "--file", regular_file,
                    "--id", "myreg", "--kind", "module")
    assert code == 0
    assert out["added"]["id"] == "myreg"
    code, out = cli("corpus", "list")
    assert code == 0
    assert "myreg" in [entry["id"] for entry in out["entries"]]
    # shadowing a bundled id is refused
    code, out = cli("corpus", "add", "--file", regular_file,
                    "--id", "a2", "--kind", "module")
    assert code == 3


def test_cli_output_is_byte_deterministic(regular_file):
    first = cli_raw("silting", "check", "--algebra", "a2",
                    "--module", regular_file, "--presentation", "auto", "--seed", "7")
    second = cli_raw("silting", "check", "--algebra", "a2",
                     "--module", regular_file, "--presentation", "auto", "--seed", "7")
    assert first == second
    run_a = cli_raw("theorems", "run", "--suite", "idempotent", "--seed", "3")
    run_b = cli_raw("theorems", "run", "--suite", "idempotent", "--seed", "3")
    assert run_a == run_b


def test_budget_flag_is_accepted(regular_file):
    code, out = cli(
        "gorenstein", "check", "--algebra", "a2", "--module", regular_file,
        "--presentation", "auto", "--budget", "5000",
    )
    assert code == 0
    assert out["verdict"] == "gorenstein_silting"
