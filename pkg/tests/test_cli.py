import json

import pytest

from lukra.cli import main
from lukra.algebra import FiniteAlgebra, make_chain
from lukra.laws import check_LR, check_LRn, check_delta


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out.strip() else None
    return code, report


def test_chain_roundtrip(tmp_path, capsys):
    out = tmp_path / "l3.json"
    code = main(["algebra", "chain", "--n", "3", "--delta", "--bottom",
                 "--out", str(out)])
    assert code == 0
    A = FiniteAlgebra.from_json(out.read_text())
    assert A == make_chain(3, with_delta=True, with_bottom=True)
    # anything the tool emits re-reads and passes the same checks
    assert check_LR(A).passed and check_LRn(A, 3).passed and check_delta(A, 3).passed
    code, report = run(capsys, "algebra", "check", "--in", str(out),
                       "--suite", "--quasi")
    assert code == 0 and report["passed"] and report["level"] == 3


def test_check_failure_exit_code(tmp_path, capsys):
    bad = make_chain(4)
    p = tmp_path / "l4.json"
    p.write_text(bad.to_json())
    code, report = run(capsys, "algebra", "check", "--in", str(p), "--n", "3")
    assert code == 1 and not report["passed"]


def test_delta_verb(tmp_path, capsys):
    from lukra.catalog import five_element_non_admissible

    p = tmp_path / "m5.json"
    p.write_text(five_element_non_admissible().to_json())
    code, report = run(capsys, "algebra", "delta", "--in", str(p))
    assert code == 1
    assert report == {"admissible": False, "witness": 1, "algebra": None}
    q = tmp_path / "l4.json"
    q.write_text(make_chain(4).to_json())
    code, report = run(capsys, "algebra", "delta", "--in", str(q))
    assert code == 0 and report["admissible"]
    assert report["algebra"]["delta"] == [0, 0, 0, 3]


def test_product_homs_filters(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(make_chain(3, with_delta=True).to_json())
    b.write_text(make_chain(2, with_delta=True).to_json())
    code, prod = run(capsys, "algebra", "product", "--in", str(a), "--in", str(b))
    assert code == 0 and prod["size"] == 6
    code, report = run(capsys, "algebra", "homs", "--from", str(a), "--to", str(a))
    assert code == 0 and report["count"] >= 1
    p = tmp_path / "prod.json"
    p.write_text(json.dumps(prod))
    code, report = run(capsys, "filters", "list", "--in", str(p))
    assert code == 0 and [5] in report["filters"]
    code, report = run(capsys, "filters", "maximal", "--in", str(p))
    assert code == 0 and len(report["filters"]) == 2
    code, report = run(capsys, "filters", "quotient", "--in", str(p),
                       "--filter", "4,5")
    assert code == 0 and report["size"] == 3 and len(report["projection"]) == 6
    code, report = run(capsys, "filters", "subdirect", "--in", str(p))
    assert code == 0 and sorted(report["embedding"]) == list(range(6))
    code, report = run(capsys, "filters", "classify", "--in", str(p))
    assert code == 1 and not report["simple"]
    code, report = run(capsys, "filters", "classify", "--in", str(a))
    assert code == 0 and report["k"] == 3


def test_free_verbs(capsys, tmp_path):
    code, report = run(capsys, "free", "size", "--n", "3", "--m", "1")
    assert code == 0 and report["total"] == 6
    code, report = run(capsys, "free", "size", "--n", "3", "--m", "2",
                       "--mode", "literal")
    assert code == 0 and report["total"] == 486
    out = tmp_path / "free.json"
    code = main(["free", "build", "--n", "3", "--m", "1", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["size"] == 6 and len(data["generators"]) == 1
    code, report = run(capsys, "free", "verify", "--n", "3", "--m", "1")
    assert code == 0 and report == {"formula": 6, "constructed": 6, "match": True}


def test_logic_verbs(capsys, tmp_path):
    code, report = run(capsys, "logic", "taut", "--n", "3",
                       "--formula", "((p ->[2] q) -> p) -> p")
    assert code == 0 and report["valid"]
    code, report = run(capsys, "logic", "taut", "--n", "4",
                       "--formula", "((p ->[2] q) -> p) -> p")
    assert code == 1 and report["counterexample"] == {
        "chain": 4, "valuation": {"p": 2, "q": 0}}
    code, report = run(capsys, "logic", "conseq", "--n", "3",
                       "--hyp", "p", "--hyp", "p -> q", "--formula", "q")
    assert code == 0 and report["entails"]
    code, report = run(capsys, "logic", "refute", "--formula", "p | ~p",
                       "--max-n", "5")
    assert code == 1 and report["counterexample"]["chain"] == 3
    code, report = run(capsys, "logic", "refute", "--formula", "D p -> p",
                       "--max-n", "5")
    assert code == 0 and not report["refuted"]
    code, report = run(capsys, "logic", "theorem-suite", "--n", "3")
    assert code == 0 and report["passed"]
    code, report = run(capsys, "logic", "hierarchy", "--n", "3")
    assert code == 0 and report["passed"]


def test_prove_check_verb(capsys):
    import pathlib

    fixture = pathlib.Path(__file__).parent / "fixtures" / "proofs" / "lh20_n3.proof"
    code, report = run(capsys, "logic", "prove-check", "--system", "n",
                       "--n", "3", "--in", str(fixture))
    assert code == 0 and report["passed"]
    assert report["conclusion"] == "D p -> p"
    fixture = pathlib.Path(__file__).parent / "fixtures" / "proofs" / "crisp_delta_p.proof"
    code, report = run(capsys, "logic", "prove-check", "--system", "bot",
                       "--in", str(fixture))
    assert code == 0 and report["passed"]
    code, report = run(capsys, "logic", "prove-check", "--system", "bot",
                       "--in", str(fixture), "--qgen", "literal")
    assert code == 1 and report["failures"][0]["line"] == 4


def test_fo_eval_verb(capsys, tmp_path):
    L3 = make_chain(3, with_delta=True, with_bottom=True)
    s = tmp_path / "s.json"
    s.write_text(json.dumps({
        "domain_size": 2,
        "algebra": L3.to_dict(),
        "predicates": {"P": {"arity": 1, "table": {"0": 1, "1": 2}}},
        "constants": {"c": 0},
    }))
    code, report = run(capsys, "logic", "fo-eval", "--structure", str(s),
                       "--formula", "forall x (P(x) -> P(x))")
    assert code == 0 and report["designated"]
    code, report = run(capsys, "logic", "fo-eval", "--structure", str(s),
                       "--formula", "forall x P(x)")
    assert code == 1 and report["value"] == 1
    code, report = run(capsys, "logic", "fo-eval", "--structure", str(s),
                       "--formula", "P(x)", "--assign", "x=1")
    assert code == 0 and report["value"] == 2


def test_usage_errors(capsys, tmp_path):
    assert main(["algebra", "check", "--in", "/nonexistent.json"]) == 2
    assert main(["logic", "taut", "--n", "3", "--formula", "p ->"]) == 2
    assert main(["bogus"]) == 2
    big = tmp_path / "big.json"
    from lukra.algebra import product

    big.write_text(product([make_chain(4, with_delta=True)] * 2).to_json())
    assert main(["filters", "list", "--in", str(big)]) == 2
    assert main(["filters", "list", "--in", str(big), "--force"]) == 0
    capsys.readouterr()


def test_guard_env_override(capsys, tmp_path, monkeypatch):
    from lukra.algebra import product

    big = tmp_path / "big.json"
    big.write_text(product([make_chain(4, with_delta=True)] * 2).to_json())
    monkeypatch.setenv("LUKRA_GUARD", "16")
    code, report = run(capsys, "filters", "list", "--in", str(big))
    assert code == 0 and report["filters"]
