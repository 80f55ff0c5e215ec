"""Benchmark runner: oracle, tableau, translation and checks per instance.

Outputs written to the ``out`` directory:

* ``records.csv``: one row per instance, columns in ``COLUMNS`` order
* ``records.json``: metadata plus the same records (canonical format)
* ``timings.csv``: wall time per phase in milliseconds

Timings live in their own file so that ``records.*`` are byte-identical
between reruns of the same family.
"""
from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from .formula import Sequent, parse_sequent
from .generate import PRNG, phi_sequent, random_corpus
from .phi import prove_phi_mlk
from .proof import check, dump_proof, load_proof
from .semantics import OracleLimitError, holds
from .tableau import DEFAULT_STRATEGY, STATUSES, BudgetExceeded, build_tableau, validate_tableau
from .translate import translate

COLUMNS = (
    "name", "n", "sequent", "oracle", "verdict", "tableau_nodes", "branches",
    *STATUSES,
    "proof_steps", "proof_symbols", "proof_check", "roundtrip",
    "direct_steps", "direct_symbols", "direct_check", "flag",
)
PHASES = ("oracle", "tableau", "translate", "check", "direct")

# flags, in decreasing severity; an empty flag means a valid, checked instance
MISMATCH = "MISMATCH"
CHECK_FAILED = "CHECK-FAILED"
BUDGET = "BUDGET"
ERROR = "ERROR"
INVALID = "INVALID"


@dataclass
class BenchRecord:
    name: str
    n: int | None
    sequent: str
    oracle: bool | None = None
    verdict: bool | None = None
    tableau_nodes: int | None = None
    branches: int | None = None
    status_counts: dict = field(default_factory=dict)
    proof_steps: int | None = None
    proof_symbols: int | None = None
    proof_check: bool | None = None
    roundtrip: bool | None = None
    direct_steps: int | None = None
    direct_symbols: int | None = None
    direct_check: bool | None = None
    flag: str = ""
    times_ms: dict = field(default_factory=dict)

    def row(self) -> dict:
        out = {k: getattr(self, k) for k in COLUMNS if k not in STATUSES}
        for s in STATUSES:
            out[s] = self.status_counts.get(s)
        return {k: out[k] for k in COLUMNS}


class _Timer:
    def __init__(self, times: dict, phase: str):
        self.times, self.phase = times, phase

    def __enter__(self):
        self.start = time.perf_counter()

    def __exit__(self, *exc):
        self.times[self.phase] = round((time.perf_counter() - self.start) * 1000, 3)
        return False


def _accepts(proof, conclusion: Sequent) -> bool:
    return check(proof).ok and proof.steps[proof.conclusion].sequent == conclusion


def _recheck(proof, conclusion: Sequent) -> tuple[bool, bool]:
    ok = _accepts(proof, conclusion)
    return ok, ok and _accepts(load_proof(dump_proof(proof)), conclusion)


def bench_instance(name: str, s: Sequent, n: int | None = None, direct=None,
                   budget: int | None = None, strategy: str = DEFAULT_STRATEGY) -> BenchRecord:
    """Run every phase on ``s``; ``direct`` optionally builds an independent MLK proof."""
    rec = BenchRecord(name, n, str(s))
    times = rec.times_ms
    try:
        with _Timer(times, "oracle"):
            rec.oracle = holds(s)
    except OracleLimitError:
        pass
    try:
        with _Timer(times, "tableau"):
            t = build_tableau(s, strategy, budget)
            rec.verdict = validate_tableau(t)
        rec.tableau_nodes = t.size
        rec.branches = len(t.leaves)
        rec.status_counts = t.status_counts()
        if rec.verdict:
            with _Timer(times, "translate"):
                proof = translate(t)
            rec.proof_steps, rec.proof_symbols = proof.num_steps, proof.symbols
            with _Timer(times, "check"):
                rec.proof_check, rec.roundtrip = _recheck(proof, s)
    except BudgetExceeded:
        rec.flag = BUDGET
    except Exception as exc:  # a failing instance must not abort the batch
        rec.flag = f"{ERROR}: {type(exc).__name__}"
    if direct is not None:
        with _Timer(times, "direct"):
            dp = direct()
            rec.direct_steps, rec.direct_symbols = dp.num_steps, dp.symbols
            rec.direct_check = _recheck(dp, s)[1]
    if not rec.flag:
        if rec.oracle is not None and rec.verdict != rec.oracle:
            rec.flag = MISMATCH
        elif rec.verdict and not (rec.proof_check and rec.roundtrip):
            rec.flag = CHECK_FAILED
        elif direct is not None and not rec.direct_check:
            rec.flag = CHECK_FAILED
        elif not rec.verdict:
            rec.flag = INVALID
    return rec


def read_corpus(path: Path) -> list[tuple[str, Sequent]]:
    """One sequent per line; blank lines and ``#`` comments are skipped."""
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            out.append((f"line{lineno}", parse_sequent(line)))
    return out


def family_instances(family: str, *, max_n: int = 4, seed: int = 0, count: int = 100,
                     path: Path | None = None) -> list[dict]:
    if family == "phi":
        return [{"name": f"phi{n}", "n": n, "s": phi_sequent(n),
                 "direct": (lambda n=n: prove_phi_mlk(n))} for n in range(1, max_n + 1)]
    if family == "random":
        return [{"name": f"random{seed}-{i}", "n": i, "s": s}
                for i, s in enumerate(random_corpus(seed, count))]
    if family == "corpus":
        if path is None:
            raise ValueError("corpus family needs a path")
        return [{"name": name, "n": i, "s": s} for i, (name, s) in enumerate(read_corpus(path))]
    raise ValueError(f"unknown family {family!r}")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def write_records(records: list[BenchRecord], out: Path, meta: dict) -> None:
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "records.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in records:
            w.writerow([_cell(v) for v in r.row().values()])
    doc = {"meta": {**meta, "columns": list(COLUMNS)}, "records": [r.row() for r in records]}
    (out / "records.json").write_text(json.dumps(doc, indent=1) + "\n")
    with open(out / "timings.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("name", *(f"{p}_ms" for p in PHASES)))
        for r in records:
            w.writerow([r.name, *(_cell(r.times_ms.get(p)) for p in PHASES)])


def run_bench(family: str, out: Path | None = None, *, max_n: int = 4, seed: int = 0,
              count: int = 100, path: Path | None = None, budget: int | None = None,
              strategy: str = DEFAULT_STRATEGY) -> list[BenchRecord]:
    records = [
        bench_instance(inst["name"], inst["s"], inst["n"], inst.get("direct"), budget, strategy)
        for inst in family_instances(family, max_n=max_n, seed=seed, count=count, path=path)
    ]
    if out is not None:
        meta = {"family": family, "strategy": strategy, "prng": PRNG}
        if family == "phi":
            meta["max_n"] = max_n
        elif family == "random":
            meta.update(seed=seed, count=count)
        else:
            meta["path"] = str(path)
        write_records(records, out, meta)
    return records
