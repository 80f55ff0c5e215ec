import csv
import json

from minent.bench import BUDGET, COLUMNS, INVALID, bench_instance, read_corpus, run_bench
from minent.cli import main
from minent.formula import parse_sequent
from minent.generate import PRNG, phi_sequent


def test_phi_family_branch_counts(tmp_path):
    records = run_bench("phi", tmp_path, max_n=4)
    assert len(records) == 4
    assert [r.branches for r in records] == [1, 2, 6, 24]


def test_phi_family_records_check(tmp_path):
    records = run_bench("phi", tmp_path, max_n=4)
    for r in records:
        assert r.flag == ""
        assert r.oracle and r.verdict
        assert r.proof_check and r.roundtrip and r.direct_check
        assert r.direct_steps > 0 and r.proof_steps > 0


def test_random_family_is_byte_identical(tmp_path):
    first, second = tmp_path / "one", tmp_path / "two"
    records = run_bench("random", first, seed=7, count=100)
    run_bench("random", second, seed=7, count=100)
    assert len(records) == 100
    for name in ("records.csv", "records.json"):
        assert (first / name).read_bytes() == (second / name).read_bytes()
    doc = json.loads((first / "records.json").read_text())
    assert doc["meta"]["prng"] == PRNG and doc["meta"]["seed"] == 7
    assert doc["meta"]["columns"] == list(COLUMNS)


def test_random_family_round_trips(tmp_path):
    records = run_bench("random", None, seed=3, count=60)
    assert {r.flag for r in records} <= {"", INVALID}
    for r in records:
        assert r.verdict == r.oracle
        if r.verdict:
            assert r.proof_check and r.roundtrip


def test_csv_layout(tmp_path):
    run_bench("phi", tmp_path, max_n=2)
    with open(tmp_path / "records.csv") as fh:
        rows = list(csv.reader(fh))
    assert tuple(rows[0]) == COLUMNS
    assert len(rows) == 3
    with open(tmp_path / "timings.csv") as fh:
        assert len(list(csv.reader(fh))) == 3


def test_corpus_with_an_invalid_sequent(tmp_path):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("# two sequents\na |-m a\na |-m ~a\n\n")
    assert [name for name, _ in read_corpus(corpus)] == ["line2", "line3"]
    out = tmp_path / "out"
    assert main(["bench", "corpus", "--path", str(corpus), "--out", str(out)]) == 0
    doc = json.loads((out / "records.json").read_text())
    assert [r["flag"] for r in doc["records"]] == ["", INVALID]


def test_budget_marks_the_record():
    r = bench_instance("phi3", phi_sequent(3), budget=10)
    assert r.flag == BUDGET
    assert r.oracle is True and r.verdict is None


def test_budget_does_not_abort_the_run(tmp_path):
    records = run_bench("phi", tmp_path, max_n=3, budget=10)
    assert [r.flag for r in records] == ["", BUDGET, BUDGET]
    assert all(r.direct_check for r in records)


def test_classical_sequent_in_corpus_is_flagged():
    r = bench_instance("classical", parse_sequent("a |- a"))
    assert r.flag.startswith("ERROR")
