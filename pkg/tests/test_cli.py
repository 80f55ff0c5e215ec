import json
import subprocess
import sys

from minent.cli import main


def test_oracle(capsys):
    assert main(["oracle", "a | b |-m ~a | ~b"]) == 0
    assert capsys.readouterr().out.strip() == "true"
    assert main(["oracle", "a | b |- ~a | ~b"]) == 1
    assert capsys.readouterr().out.strip() == "false"


def test_prove(capsys):
    assert main(["prove", "a | b |-m ~a | ~b"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("VALID") and "ignorable-1=2" in out
    assert main(["prove", "a |-m ~a"]) == 1
    assert capsys.readouterr().out.startswith("INVALID")


def test_prove_emit_json(capsys):
    assert main(["prove", "a | (a & b) |-m ~b", "--emit", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert {"id", "parent", "sign", "formula", "marked", "rule"} <= set(doc["nodes"][0])


def test_translate_and_check(tmp_path, capsys):
    path = tmp_path / "proof.json"
    assert main(["translate", "a | (a & b) |-m ~b", "--emit", str(path), "--stats"]) == 0
    out = capsys.readouterr().out
    assert "tableau_nodes=7" in out and "ignorable-2=1" in out and "proof_steps=" in out
    assert main(["check-proof", str(path)]) == 0
    assert capsys.readouterr().out.startswith("accept")


def test_translate_invalid(capsys):
    assert main(["translate", "a |-m ~a"]) == 1


def test_check_proof_reject_reports_the_step(tmp_path, capsys):
    path = tmp_path / "proof.json"
    main(["translate", "a | b |-m ~a | ~b", "--emit", str(path)])
    doc = json.loads(path.read_text())
    doc["steps"][3]["rule"] = "no-such-rule"
    path.write_text(json.dumps(doc))
    capsys.readouterr()
    assert main(["check-proof", str(path)]) == 1
    captured = capsys.readouterr()
    assert captured.out.strip() == "reject"
    assert captured.err.startswith("step 3:")


def test_usage_errors(tmp_path, capsys):
    assert main([]) == 2
    assert main(["oracle", "a & | b |- a"]) == 2
    assert main(["check-proof", str(tmp_path / "missing.json")]) == 2
    (tmp_path / "bad.json").write_text("{not json")
    assert main(["check-proof", str(tmp_path / "bad.json")]) == 2
    assert main(["bench", "corpus", "--out", str(tmp_path)]) == 2
    assert main(["prove", "a |- a"]) == 2


def test_node_budget_environment(monkeypatch, capsys):
    monkeypatch.setenv("MINENT_NODE_BUDGET", "5")
    assert main(["prove", "p1 | p2, p1 | ~p2, ~p1 | p2, ~p1 | ~p2 |-m"]) == 2
    assert "budget" in capsys.readouterr().err


def test_bench_commands(tmp_path, capsys):
    assert main(["bench", "phi", "--max-n", "2", "--out", str(tmp_path / "phi")]) == 0
    assert main(["bench", "random", "--seed", "7", "--count", "5", "--out", str(tmp_path / "r")]) == 0
    assert (tmp_path / "r" / "records.csv").exists()


def test_module_entry_point():
    done = subprocess.run([sys.executable, "-m", "minent.cli", "oracle", "a |-m a"],
                          capture_output=True, text=True)
    assert done.returncode == 0 and done.stdout.strip() == "true"
