import json

from cycmat import documents
from cycmat.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_psi_document(capsys, tmp_path):
    out = tmp_path / "psi.json"
    code, _, _ = run_cli(capsys, "gen", "--psi", "12", "4", "--out", str(out))
    assert code == 0
    doc = documents.parse(out.read_text())
    assert doc["matroid"]["psi"] == {"n": 12, "s": 4}


def test_gen_truncate_nested(capsys):
    code, out, _ = run_cli(capsys, "gen", "--truncate", "1", "--psi", "10", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["matroid"]["truncate"]["i"] == 1
    assert doc["matroid"]["truncate"]["inner"]["psi"] == {"n": 10, "s": 3}


def test_gen_rejects_bad_parameters(capsys):
    code, _, err = run_cli(capsys, "gen", "--psi", "9", "3")
    assert code == 2
    assert "error:" in err


def test_rank_command(capsys, tmp_path):
    doc = tmp_path / "m.json"
    doc.write_text(documents.emit(documents.doc_psi(12, 4)))
    code, out, _ = run_cli(capsys, "rank", str(doc))
    assert code == 0
    assert json.loads(out)["rank"] == 6
    code, out, _ = run_cli(capsys, "rank", str(doc), "--set", "1,2,3")
    assert code == 0
    assert json.loads(out) == {"rank": 3, "set": [1, 2, 3]}


def test_circuits_command(capsys, tmp_path):
    doc = tmp_path / "m.json"
    doc.write_text(documents.emit(documents.doc_uniform(2, 4)))
    code, out, _ = run_cli(capsys, "circuits", str(doc))
    assert code == 0
    assert json.loads(out)["circuits"] == [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]


def _write_fixture(tmp_path, doc, order):
    doc_path = tmp_path / "m.json"
    doc_path.write_text(documents.emit(doc))
    order_path = tmp_path / "order.json"
    order_path.write_text(json.dumps(order))
    return str(doc_path), str(order_path)


def test_verify_ordering_full(capsys, tmp_path):
    doc, order = _write_fixture(tmp_path, documents.doc_psi(8, 3), list(range(1, 9)))
    code, out, _ = run_cli(capsys, "verify-ordering", doc, order,
                           "--s", "3", "--t", "3", "--mode", "full")
    assert code == 0
    cert = json.loads(out)
    assert cert["kind"] == "full"
    assert cert["circuit_starts"] == [1, 3, 5, 7]


def test_verify_ordering_mode_unmet(capsys, tmp_path):
    doc, order = _write_fixture(
        tmp_path, documents.doc_construction("wheel", 4), [1, 3, 5, 7, 2, 4, 6, 8]
    )
    code, out, _ = run_cli(capsys, "verify-ordering", doc, order,
                           "--s", "3", "--t", "3", "--mode", "nearly")
    assert code == 1
    assert json.loads(out)["kind"] == "neither"


def test_verify_ordering_malformed(capsys, tmp_path):
    doc, order = _write_fixture(tmp_path, documents.doc_psi(8, 3), [1, 1, 2, 3, 4, 5, 6, 7])
    code, _, err = run_cli(capsys, "verify-ordering", doc, order, "--s", "3", "--t", "3")
    assert code == 2
    assert "error:" in err


def test_find_orderings_command(capsys, tmp_path):
    doc = tmp_path / "m.json"
    doc.write_text(documents.emit(documents.doc_uniform(2, 4)))
    code, out, _ = run_cli(capsys, "find-orderings", str(doc), "--s", "3", "--t", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 3


def test_find_orderings_cap(capsys, tmp_path):
    doc = tmp_path / "m.json"
    doc.write_text(documents.emit(documents.doc_uniform(6, 13)))
    code, _, err = run_cli(capsys, "find-orderings", str(doc), "--s", "3", "--t", "3")
    assert code == 2


def test_weakmap_command(capsys, tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(documents.emit(documents.doc_construction("whirl", 4)))
    b.write_text(documents.emit(documents.doc_construction("wheel", 4)))
    code, out, _ = run_cli(capsys, "weakmap", str(a), str(b))
    assert code == 0 and json.loads(out)["holds"]

    a.write_text(documents.emit(documents.doc_uniform(1, 4)))
    b.write_text(documents.emit(documents.doc_uniform(2, 4)))
    code, out, _ = run_cli(capsys, "weakmap", str(a), str(b))
    assert code == 1
    assert json.loads(out)["violating_circuit"] is not None

    b.write_text(documents.emit(documents.doc_uniform(2, 5)))
    code, _, err = run_cli(capsys, "weakmap", str(a), str(b))
    assert code == 2


def test_weakmap_quotient_flag(capsys, tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(documents.emit(documents.doc_uniform(2, 4)))
    b.write_text(documents.emit(documents.doc_uniform(1, 4)))
    code, out, _ = run_cli(capsys, "weakmap", str(a), str(b), "--quotient")
    assert code == 0 and json.loads(out)["relation"] == "quotient"


def test_counterexample_command(capsys):
    code, out, _ = run_cli(capsys, "counterexample", "8", "4")
    assert code == 0
    payload = json.loads(out)
    assert payload["conclusion"]["contradiction"]
    assert payload["conclusion"] == {
        "rank_bound": 4, "claimed_rank": 5, "contradiction": True,
    }
    assert payload["two_block_circuits"]["ok"]


def test_counterexample_rejects_small_n(capsys):
    code, _, err = run_cli(capsys, "counterexample", "10", "5")
    assert code == 2


def test_suite_mutant_fails(capsys, tmp_path):
    out = tmp_path / "report.json"
    code = main([
        "suite", "--max-n", "6", "--families", "uniform",
        "--inject-mutant", "--out", str(out),
    ])
    capsys.readouterr()
    assert code == 1
    report = json.loads(out.read_text())
    assert report["summary"]["failed"] == 1
    assert report["summary"]["first_failure"]["params"] == {"matroid": "mutant-U(2,4)"}


def test_suite_small_grid_passes_and_deterministic(capsys, tmp_path):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    argv = ["suite", "--max-n", "6", "--families", "uniform,wheel,whirl",
            "--seed", "7"]
    assert main(argv + ["--out", str(out1)]) == 0
    assert main(argv + ["--out", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
