"""End-to-end command-line behavior via cli.main."""

import json

import pytest

from islt import calculus
from islt.cli import main
from islt.formula import Var
from islt.hilbert import AxiomId, ax, dumps as hilbert_dumps
from islt.search import Proved, prove
from islt.semantics import model_from_json, forces, validate_model
from islt.sequent import parse_sequent
from islt.structural import id_general


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def certificate(text):
    r = prove(parse_sequent(text))
    assert isinstance(r, Proved)
    return r.proof


def test_prove_provable_emits_checked_json(capsys):
    code, out, err = run(capsys, "prove", "([]p -> p) -> p")
    assert code == 0
    d = calculus.loads(out)
    assert calculus.check(d) is None
    assert d.root == parse_sequent("=> ([]p -> p) -> p")


def test_prove_unprovable(capsys):
    code, out, err = run(capsys, "prove", "[]p -> p")
    assert code == 1
    assert out == "unprovable\n"


def test_prove_sequent_flag(capsys):
    code, out, _ = run(capsys, "prove", "--sequent", "p, p -> q => q")
    assert code == 0
    assert calculus.loads(out).root == parse_sequent("p, p -> q => q")


def test_prove_emit_text_and_dot(capsys):
    code, out, _ = run(capsys, "prove", "--emit", "text", "p -> p")
    assert code == 0
    assert "[ImpR]" in out
    code, out, _ = run(capsys, "prove", "--emit", "dot", "p -> p")
    assert code == 0
    assert out.startswith("digraph")


def test_prove_byte_identical_across_runs(capsys):
    first = run(capsys, "prove", "--sequent", "p /\\ q => q /\\ p")
    second = run(capsys, "prove", "--sequent", "p /\\ q => q /\\ p")
    assert first == second


def test_prove_naive_seed_reporting(capsys):
    code, out, err = run(capsys, "prove", "--naive", "--seed", "7", "p -> q -> p")
    assert code == 0
    assert err == "seed: 7\n"
    assert calculus.check(calculus.loads(out)) is None
    # no seed given: one is drawn and reported
    code, _, err = run(capsys, "prove", "--naive", "p -> p")
    assert code == 0
    assert err.startswith("seed: ")
    int(err.split(":")[1])


def test_prove_budget_abort_is_distinct(capsys):
    code, out, err = run(capsys, "prove", "--budget", "1",
                         "(p -> q) -> (q -> r) -> p -> r")
    assert code == 2
    assert out == ""
    assert "search budget exhausted after exploring 1 sequents" in err
    assert "unprovable" not in out + err


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("ISLT_BUDGET", "1")
    code, _, err = run(capsys, "prove", "(p -> q) -> (q -> r) -> p -> r")
    assert code == 2
    assert "budget exhausted" in err
    # explicit flag wins over the environment
    code, _, _ = run(capsys, "prove", "--budget", "100000",
                     "(p -> q) -> (q -> r) -> p -> r")
    assert code == 0
    monkeypatch.setenv("ISLT_BUDGET", "abc")
    code, _, err = run(capsys, "prove", "p -> p")
    assert code == 2
    assert "must be an integer" in err
    monkeypatch.setenv("ISLT_BUDGET", "-3")
    code, _, err = run(capsys, "prove", "p -> p")
    assert code == 2
    assert "must be positive" in err


def test_check_roundtrip(capsys, tmp_path):
    d = certificate("p /\\ q => q")
    path = tmp_path / "cert.json"
    path.write_text(calculus.dumps(d), encoding="utf-8")
    code, out, _ = run(capsys, "check", str(path))
    assert code == 0
    assert out == "ok\n"

    obj = json.loads(calculus.dumps(d))
    obj["sequent"]["suc"] = "p -> p"
    path.write_text(json.dumps(obj), encoding="utf-8")
    code, out, _ = run(capsys, "check", str(path))
    assert code == 1
    assert out.startswith("invalid: at ")


def test_check_missing_and_malformed_files(capsys, tmp_path):
    code, _, err = run(capsys, "check", str(tmp_path / "absent.json"))
    assert code == 2
    assert "error:" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2
    assert "malformed input" in err


def test_cutelim_writes_cut_free_file(capsys, tmp_path):
    base = certificate("p => p \\/ q")
    right = id_general(base.root.suc, base.root.ant)
    cut_node = calculus.node(calculus.RuleId.Cut, base.root, None, base, right)
    src = tmp_path / "with_cut.json"
    dst = tmp_path / "cut_free.json"
    src.write_text(calculus.dumps(cut_node), encoding="utf-8")
    code, out, _ = run(capsys, "cutelim", str(src), "-o", str(dst))
    assert code == 0
    assert str(dst) in out
    out_proof = calculus.loads(dst.read_text(encoding="utf-8"))
    assert calculus.check(out_proof) is None
    assert not calculus.uses_cut(out_proof)
    assert out_proof.root == base.root


def test_cutelim_rejects_broken_certificate(capsys, tmp_path):
    d = calculus.Derivation(parse_sequent("p => q"), calculus.RuleId.IdP, None, ())
    src = tmp_path / "broken.json"
    src.write_text(calculus.dumps(d), encoding="utf-8")
    code, _, err = run(capsys, "cutelim", str(src), "-o", str(tmp_path / "out.json"))
    assert code == 2
    assert "error:" in err


def test_countermodel_found(capsys):
    code, out, _ = run(capsys, "countermodel", "[]p -> p")
    assert code == 0
    payload = json.loads(out)
    world = payload.pop("refuting_world")
    m = model_from_json(payload)
    assert validate_model(m) == []
    assert not forces(m, world, parse_sequent("=> []p -> p").suc)


def test_countermodel_none(capsys):
    code, out, _ = run(capsys, "countermodel", "p -> p")
    assert code == 1
    assert "no countermodel within" in out


def test_countermodel_bound_error(capsys):
    code, _, err = run(capsys, "countermodel", "--max-worlds", "9", "p")
    assert code == 2
    assert "error" in err


def test_theta_output_exact(capsys):
    code, out, _ = run(capsys, "theta", "=> []p")
    assert code == 0
    assert out == "[1,0]\n"
    assert run(capsys, "theta", "=> []p") == (0, "[1,0]\n", "")
    code, out, _ = run(capsys, "theta", "[](p /\\ q), p \\/ q => q -> p")
    assert code == 0
    assert out == "[1,2,0,0]\n"


def test_hilbert_check_cli(capsys, tmp_path):
    d = ax(frozenset(), AxiomId.A11, {"phi": Var("p")})
    path = tmp_path / "hilbert.json"
    path.write_text(hilbert_dumps(d), encoding="utf-8")
    code, out, _ = run(capsys, "hilbert-check", str(path))
    assert code == 0
    assert out == "ok\n"
    obj = json.loads(hilbert_dumps(d))
    obj["conclusion"] = "p -> p"
    path.write_text(json.dumps(obj), encoding="utf-8")
    code, out, _ = run(capsys, "hilbert-check", str(path))
    assert code == 1
    assert out.startswith("invalid:")


def test_parse_errors_exit_2(capsys):
    code, _, err = run(capsys, "prove", "p ->")
    assert code == 2
    assert err.startswith("error:")
    code, _, err = run(capsys, "theta", "p -> q")
    assert code == 2
    assert "=>" in err


def test_usage_error_raises_system_exit():
    with pytest.raises(SystemExit):
        main([])
    with pytest.raises(SystemExit):
        main(["prove", "--emit", "pdf", "p"])
