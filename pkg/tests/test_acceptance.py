"""Acceptance criteria, one PASS/FAIL line each."""
import math
import time
from functools import cache

import pytest

from minent.construct import prove_alpha_beta, prove_assignment
from minent.formula import F, T, SignedFormula, parse_formula, variables
from minent.generate import chain_sequent, phi_sequent
from minent.phi import prove_phi_mlk
from minent.proof import check
from minent.semantics import holds, models, satisfies
from minent.tableau import BudgetExceeded, build_tableau, validate_tableau
from minent.translate import annotate, annotate_ab, translate
from mutations import base_proofs, mutation_suite
from util import corpus

NAIVE_BUDGET = 100_000


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {number} {title}: {'PASS' if ok else 'FAIL'} ({detail})")
    return emit


def slope(xs, ys):
    lx, ly = [math.log(x) for x in xs], [math.log(y) for y in ys]
    mx, my = sum(lx) / len(lx), sum(ly) / len(ly)
    return sum((x - mx) * (y - my) for x, y in zip(lx, ly)) / sum((x - mx) ** 2 for x in lx)


@cache
def tableaux():
    start = time.perf_counter()
    rows = [(s, holds(s), build_tableau(s)) for s in corpus()]
    verdicts = [validate_tableau(t) for _, _, t in rows]
    return rows, verdicts, time.perf_counter() - start


@cache
def translations():
    rows, verdicts, _ = tableaux()
    start = time.perf_counter()
    out = [(s, translate(t)) for (s, _, t), v in zip(rows, verdicts) if v]
    accepted = [check(p).ok and p.sequent == s for s, p in out]
    return out, accepted, time.perf_counter() - start


def test_criterion_1_oracle_equivalence(report):
    rows, verdicts, elapsed = tableaux()
    agree = sum(v == truth for (_, truth, _), v in zip(rows, verdicts))
    ok = agree == len(rows) and elapsed < 60
    report(1, "oracle equivalence", ok, f"{agree}/{len(rows)} agree, {elapsed:.1f} s, limit 60 s")
    assert ok


def test_criterion_2_p_simulation(report):
    _, truths, _ = zip(*tableaux()[0])
    proofs, accepted, elapsed = translations()
    valid = sum(truths)
    ok = len(proofs) == valid and all(accepted) and elapsed < 120
    report(2, "p-simulation end to end", ok,
           f"{sum(accepted)}/{valid} valid instances translated and accepted, {elapsed:.1f} s, limit 120 s")
    assert ok


def test_criterion_3_polynomial_size(report):
    nodes, sizes, checked = [], [], True
    for k in range(1, 8):
        s = chain_sequent(k)
        t = build_tableau(s)
        p = translate(t)
        checked &= check(p).ok and p.sequent == s
        nodes.append(t.size)
        sizes.append(p.size)
    span = max(nodes) / min(nodes)
    fit = slope(nodes, sizes)
    ok = checked and span >= 100 and fit <= 4
    report(3, "polynomial translated size", ok,
           f"chain family k=1..7, nodes {min(nodes)}..{max(nodes)} (x{span:.0f}), slope {fit:.2f} <= 4")
    assert ok


def leaves_at_least(s, strategy):
    try:
        return len(build_tableau(s, strategy, NAIVE_BUDGET).leaves)
    except BudgetExceeded as exc:
        return exc.min_leaves


def test_criterion_4_separation(report):
    start = time.perf_counter()
    ns = [2, 3, 4, 5]
    facts = [math.factorial(n) for n in ns]
    default = [len(build_tableau(phi_sequent(n)).leaves) for n in ns]
    alternatives = {st: [leaves_at_least(phi_sequent(n), st) for n in ns]
                    for st in ("shallowest", "deepest", "closing-shallow")}
    proofs = [prove_phi_mlk(n) for n in ns]
    checked = all(check(p).ok and p.sequent == phi_sequent(n) for n, p in zip(ns, proofs))
    fit = slope([phi_sequent(n).size for n in ns], [p.size for p in proofs])
    ratios = [b / p.num_steps for b, p in zip(default, proofs)]
    elapsed = time.perf_counter() - start

    parts = {
        "exact n! under default": default == facts,
        "at least n! under alternatives": all(
            all(x >= f for x, f in zip(counts, facts)) for counts in alternatives.values()),
        "direct proofs check": checked,
        "size slope <= 2.5": fit <= 2.5,
        "ratio strictly increasing": all(x < y for x, y in zip(ratios, ratios[1:])),
        "runtime < 120 s": elapsed < 120,
    }
    ok = all(parts.values())
    failed = [k for k, v in parts.items() if not v]
    report(4, "separation", ok,
           f"default branches {default} vs n! {facts}; alternatives {alternatives}; "
           f"direct size slope {fit:.2f}; ratios {[round(r, 2) for r in ratios]}; {elapsed:.1f} s"
           + (f"; failed: {', '.join(failed)}" if failed else ""))
    assert ok


def generated_proofs():
    yield from (p for _, p in translations()[0])
    for n in range(1, 5):
        yield prove_phi_mlk(n)
        yield translate(build_tableau(phi_sequent(n)))
    for k in (1, 2):
        yield translate(build_tableau(chain_sequent(k)))
    yield from base_proofs().values()
    for shape in ("A & B", "A | B", "A -> B", "~~A", "~(A & B)", "~(A | B)", "~(A -> B)"):
        f = parse_formula(shape.replace("A", "(a | c)").replace("B", "~b"))
        for sign in (T, F):
            yield from prove_alpha_beta(SignedFormula(sign, f))
    yield prove_assignment({"a", "c"}, {"b"}, [parse_formula("a -> b | c")], [parse_formula("~b & c")])


def test_criterion_5_checker_soundness(report):
    accepted = unsound = 0
    for p in generated_proofs():
        s = p.sequent
        if len(variables(s.formulas())) > 4 or not check(p).ok:
            continue
        accepted += 1
        unsound += not holds(s)
    suite = mutation_suite()
    caught = sum(not r.ok and r.step == k for r, k in ((check(p), k) for _, p, k in suite))
    ok = accepted > 0 and unsound == 0 and len(suite) == 20 and caught == 20
    report(5, "checker soundness", ok,
           f"{accepted - unsound}/{accepted} accepted proofs oracle-true; "
           f"{caught}/{len(suite)} mutations rejected at the corrupted step")
    assert ok


def test_criterion_6_lemma_properties(report):
    rows, _, _ = tableaux()
    leaf_agree = at_sat = t_closure = root_empty = True
    inconsistent = 0
    for s, _, t in rows:
        ann = annotate_ab(t)
        for leaf in t.leaves:
            ts, fs = t.unmarked(leaf)
            leaf_agree &= ann.A[leaf] == ts and ann.B[leaf] == fs
            info = t.infos[leaf]
            if info.completed and not info.t_closed:
                at_sat &= all(satisfies(info.at, g) for u in t.path(leaf) for g in ann.A[u])
        if not models(s.antecedent, variables(s.formulas())):
            inconsistent += 1
            t_closure &= all(t.infos[leaf].t_closed for leaf in t.leaves)
        full = annotate(t)
        root_empty &= not full.C[0] and not full.D[0]
    ok = leaf_agree and at_sat and t_closure and root_empty
    report(6, "lemma-level properties", ok,
           f"leaf agreement {leaf_agree}, At satisfaction {at_sat}, "
           f"T-closure on {inconsistent} inconsistent antecedents {t_closure}, root C=D=empty {root_empty}; "
           f"{len(rows)} instances")
    assert ok
