"""Proof objects for LK and MLK and a rule-by-rule checker.

A proof is a list of steps; each step names its rule, the indices of its
premises (always earlier steps) and the formulas instantiating the rule
schema.  Premises may be shared, so a proof is a DAG and its size is the
number of distinct lines rather than the size of the unfolded tree.

Rule tags and the meaning of ``principal`` for each:

=========  ======================  ==========================================
tag        rule                    principal
=========  ======================  ==========================================
axiom      A |- A                  [A]
bot-l      bot |-                  []
top-r      |- top                  []
weak-l     left weakening          the added formulas
weak-r     right weakening         the added formulas
not-l      ~A on the left          [A]
not-r      ~A on the right         [A]
and-l1     A&B on the left from A  [A, B]
and-l2     B&A on the left from A  [A, B]
and-r      A&B on the right        [A, B]
or-l       A|B on the left         [A, B]
or-r1      A|B on the right from A [A, B]
or-r2      B|A on the right from A [A, B]
imp-r      A->B on the right       [A, B]
imp-l      A->B on the left        [A, B]
cut        cut on A                [A]
m-axiom    G |-m ~p                [p]
m-bridge   G |- D  to  G |-m D     []
m-cut      minimal cut on A        [A]
m-weak-l   cumulative left rule    [S]  (the single formula moved left)
m-and-r    as and-r, minimal       [A, B]
m-or-l     as or-l, minimal        [A, B]
m-or-r1    as or-r1, minimal       [A, B]
m-or-r2    as or-r2, minimal       [A, B]
m-not-r    as not-r, minimal       [A]
m-imp-r    as imp-r, minimal       [A, B]
=========  ======================  ==========================================

Sides are sets, so there is no contraction or exchange, and a context may
already contain the principal formula.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .formula import (
    BOT, CLASSICAL, MINIMAL, TOP, And, Atom, Formula, Implies, Not, Or, Sequent,
    canonical, parse_formula, positive_atoms,
)

CLASSICAL_RULES = (
    "axiom", "bot-l", "top-r", "weak-l", "weak-r", "not-l", "not-r",
    "and-l1", "and-l2", "and-r", "or-l", "or-r1", "or-r2", "imp-r", "imp-l", "cut",
)
MINIMAL_RULES = (
    "m-axiom", "m-bridge", "m-cut", "m-weak-l", "m-and-r", "m-or-l",
    "m-or-r1", "m-or-r2", "m-not-r", "m-imp-r",
)
RULES = frozenset(CLASSICAL_RULES + MINIMAL_RULES)

_ARITY = {
    "axiom": 0, "bot-l": 0, "top-r": 0, "m-axiom": 0,
    "and-r": 2, "or-l": 2, "imp-l": 2, "cut": 2,
    "m-cut": 2, "m-weak-l": 2, "m-and-r": 2, "m-or-l": 2,
}
_PRINCIPAL_COUNT = {
    "axiom": 1, "bot-l": 0, "top-r": 0, "not-l": 1, "not-r": 1,
    "and-l1": 2, "and-l2": 2, "and-r": 2, "or-l": 2, "or-r1": 2, "or-r2": 2,
    "imp-r": 2, "imp-l": 2, "cut": 1,
    "m-axiom": 1, "m-bridge": 0, "m-cut": 1, "m-weak-l": 1, "m-and-r": 2,
    "m-or-l": 2, "m-or-r1": 2, "m-or-r2": 2, "m-not-r": 1, "m-imp-r": 2,
}
# minimal rules that reuse a classical schema unchanged
_SAME_SCHEMA = {
    "m-and-r": "and-r", "m-or-l": "or-l", "m-or-r1": "or-r1",
    "m-or-r2": "or-r2", "m-not-r": "not-r", "m-imp-r": "imp-r",
}


class ProofError(ValueError):
    pass


@dataclass(frozen=True)
class Step:
    sequent: Sequent
    rule: str
    premises: tuple[int, ...] = ()
    principal: tuple[Formula, ...] = ()


@dataclass(frozen=True)
class Proof:
    steps: tuple[Step, ...]
    conclusion: int

    @property
    def sequent(self) -> Sequent:
        return self.steps[self.conclusion].sequent

    @property
    def num_steps(self) -> int:
        return len(self.steps)

    @property
    def symbols(self) -> int:
        return sum(s.sequent.size for s in self.steps)

    @property
    def size(self) -> int:
        return self.num_steps + self.symbols


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    step: int | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


# -- schema checking -----------------------------------------------------------

def _ctx(prem: frozenset, concl: frozenset, removed: set, added: set) -> bool:
    """Is there a context G with prem = G + removed and concl = G + added?"""
    if not removed <= prem:
        return False
    return (prem - removed) | added <= concl <= prem | added


def _schema_ok(rule: str, c: Sequent, ps: Sequence[Sequent], pr: Sequence[Formula]) -> bool:
    if rule == "axiom":
        (a,) = pr
        return c.antecedent == {a} and c.succedent == {a}
    if rule == "bot-l":
        return c.antecedent == {BOT} and not c.succedent
    if rule == "top-r":
        return not c.antecedent and c.succedent == {TOP}
    if rule == "weak-l":
        (p,) = ps
        return c.succedent == p.succedent and c.antecedent == p.antecedent | set(pr)
    if rule == "weak-r":
        (p,) = ps
        return c.antecedent == p.antecedent and c.succedent == p.succedent | set(pr)
    if rule == "not-l":
        (p,), (a,) = ps, pr
        return c.antecedent == p.antecedent | {Not(a)} and _ctx(p.succedent, c.succedent, {a}, set())
    if rule == "not-r":
        (p,), (a,) = ps, pr
        return c.succedent == p.succedent | {Not(a)} and _ctx(p.antecedent, c.antecedent, {a}, set())
    if rule in ("and-l1", "and-l2"):
        (p,), (a, b) = ps, pr
        conj = And(a, b) if rule == "and-l1" else And(b, a)
        return c.succedent == p.succedent and _ctx(p.antecedent, c.antecedent, {a}, {conj})
    if rule == "and-r":
        (p, q), (a, b) = ps, pr
        return (c.antecedent == p.antecedent == q.antecedent
                and _ctx(p.succedent, c.succedent, {a}, {And(a, b)})
                and _ctx(q.succedent, c.succedent, {b}, {And(a, b)}))
    if rule == "or-l":
        (p, q), (a, b) = ps, pr
        return (c.succedent == p.succedent == q.succedent
                and _ctx(p.antecedent, c.antecedent, {a}, {Or(a, b)})
                and _ctx(q.antecedent, c.antecedent, {b}, {Or(a, b)}))
    if rule in ("or-r1", "or-r2"):
        (p,), (a, b) = ps, pr
        disj = Or(a, b) if rule == "or-r1" else Or(b, a)
        return c.antecedent == p.antecedent and _ctx(p.succedent, c.succedent, {a}, {disj})
    if rule == "imp-r":
        (p,), (a, b) = ps, pr
        return (_ctx(p.antecedent, c.antecedent, {a}, set())
                and _ctx(p.succedent, c.succedent, {b}, {Implies(a, b)}))
    if rule == "imp-l":
        (p, q), (a, b) = ps, pr
        if a not in p.succedent or b not in q.antecedent:
            return False
        for sigma in {p.succedent - {a}, p.succedent}:
            for delta in {q.antecedent - {b}, q.antecedent}:
                if (c.antecedent == p.antecedent | delta | {Implies(a, b)}
                        and c.succedent == sigma | q.succedent):
                    return True
        return False
    if rule == "cut":
        (p, q), (a,) = ps, pr
        return (p.antecedent == c.antecedent and p.succedent == c.succedent | {a}
                and q.antecedent == c.antecedent | {a} and q.succedent == c.succedent)
    if rule == "m-bridge":
        (p,) = ps
        return p.antecedent == c.antecedent and p.succedent == c.succedent
    if rule == "m-cut":
        (p, q), (a,) = ps, pr
        if a not in p.succedent:
            return False
        if p.antecedent != c.antecedent or q.antecedent != c.antecedent | {a}:
            return False
        return c.succedent in ((p.succedent - {a}) | q.succedent, p.succedent | q.succedent)
    if rule == "m-weak-l":
        (p, q), (s,) = ps, pr
        return (p.antecedent == q.antecedent and p.succedent == {s}
                and c.antecedent == p.antecedent | {s} and c.succedent == q.succedent)
    if rule in _SAME_SCHEMA:
        return _schema_ok(_SAME_SCHEMA[rule], c, ps, pr)
    raise AssertionError(rule)


def step_error(step: Step, premises: Sequence[Sequent]) -> str | None:
    """Reason code if ``step`` is not a correct rule instance, else None.

    ``premises`` are the sequents of the step's premise lines.
    """
    rule, c, pr = step.rule, step.sequent, step.principal
    if rule not in RULES:
        return "unknown-rule"
    if len(premises) != _ARITY.get(rule, 1):
        return "arity"
    if rule in _PRINCIPAL_COUNT and len(pr) != _PRINCIPAL_COUNT[rule]:
        return "principal"
    if not all(isinstance(f, Formula) for f in pr):
        return "principal"
    # kind discipline
    if rule in CLASSICAL_RULES:
        if c.kind != CLASSICAL or any(p.kind != CLASSICAL for p in premises):
            return "kind"
    elif rule == "m-bridge":
        if c.kind != MINIMAL or premises[0].kind != CLASSICAL:
            return "kind"
    elif c.kind != MINIMAL or any(p.kind != MINIMAL for p in premises):
        return "kind"
    if rule == "m-axiom":
        (p,) = pr
        if not isinstance(p, Atom):
            return "principal"
        if c.succedent != {Not(p)}:
            return "schema"
        if any(p.name in positive_atoms(g) for g in c.antecedent):
            return "side-condition"
        return None
    if not _schema_ok(rule, c, premises, pr):
        return "schema"
    return None


def check(proof: Proof) -> CheckResult:
    """Accept iff every step is a correct instance of its rule.

    Each step is checked once against its premises, so the cost is linear
    in the size of the proof.
    """
    steps = proof.steps
    if not 0 <= proof.conclusion < len(steps):
        return CheckResult(False, proof.conclusion, "bad-conclusion")
    for i, step in enumerate(steps):
        if any(not isinstance(j, int) or not 0 <= j < i for j in step.premises):
            return CheckResult(False, i, "bad-premise-ref")
        reason = step_error(step, [steps[j].sequent for j in step.premises])
        if reason is not None:
            return CheckResult(False, i, reason)
    return CheckResult(True)


# -- building ------------------------------------------------------------------

def infer(rule: str, premises: Sequence[Sequent], principal: Sequence[Formula]) -> Sequent:
    """The default conclusion of a rule application.

    Contexts are taken from the premises with the principal formulas removed.
    Rules whose conclusion cannot be computed (``m-axiom``) need an explicit
    sequent.
    """
    ps, pr = premises, principal
    if rule == "axiom":
        return Sequent({pr[0]}, {pr[0]})
    if rule == "bot-l":
        return Sequent({BOT}, ())
    if rule == "top-r":
        return Sequent((), {TOP})
    if rule == "weak-l":
        return Sequent(ps[0].antecedent | set(pr), ps[0].succedent)
    if rule == "weak-r":
        return Sequent(ps[0].antecedent, ps[0].succedent | set(pr))
    if rule == "m-bridge":
        return Sequent(ps[0].antecedent, ps[0].succedent, MINIMAL)
    if rule == "m-weak-l":
        return Sequent(ps[0].antecedent | ps[0].succedent, ps[1].succedent, MINIMAL)
    if rule == "m-cut":
        a = pr[0]
        return Sequent(ps[0].antecedent, (ps[0].succedent - {a}) | ps[1].succedent, MINIMAL)
    kind = MINIMAL if rule.startswith("m-") else CLASSICAL
    base = _SAME_SCHEMA.get(rule, rule)
    if base == "not-l":
        a = pr[0]
        return Sequent(ps[0].antecedent | {Not(a)}, ps[0].succedent - {a}, kind)
    if base == "not-r":
        a = pr[0]
        return Sequent(ps[0].antecedent - {a}, ps[0].succedent | {Not(a)}, kind)
    if base in ("and-l1", "and-l2"):
        a, b = pr
        conj = And(a, b) if base == "and-l1" else And(b, a)
        return Sequent((ps[0].antecedent - {a}) | {conj}, ps[0].succedent, kind)
    if base == "and-r":
        a, b = pr
        return Sequent(ps[0].antecedent,
                       (ps[0].succedent - {a}) | (ps[1].succedent - {b}) | {And(a, b)}, kind)
    if base == "or-l":
        a, b = pr
        return Sequent((ps[0].antecedent - {a}) | (ps[1].antecedent - {b}) | {Or(a, b)},
                       ps[0].succedent, kind)
    if base in ("or-r1", "or-r2"):
        a, b = pr
        disj = Or(a, b) if base == "or-r1" else Or(b, a)
        return Sequent(ps[0].antecedent, (ps[0].succedent - {a}) | {disj}, kind)
    if base == "imp-r":
        a, b = pr
        return Sequent(ps[0].antecedent - {a}, (ps[0].succedent - {b}) | {Implies(a, b)}, kind)
    if base == "imp-l":
        a, b = pr
        return Sequent(ps[0].antecedent | (ps[1].antecedent - {b}) | {Implies(a, b)},
                       (ps[0].succedent - {a}) | ps[1].succedent, kind)
    if base == "cut":
        return Sequent(ps[0].antecedent, ps[1].succedent, kind)
    raise ProofError(f"cannot infer the conclusion of {rule!r}")


class ProofBuilder:
    """Accumulates steps into one DAG, sharing identical lines.

    Every added step is checked on the spot, so a builder only ever holds
    correct derivations.
    """

    def __init__(self):
        self.steps: list[Step] = []
        self._index: dict[Step, int] = {}
        self._by_sequent: dict[Sequent, int] = {}

    def __len__(self) -> int:
        return len(self.steps)

    def sequent(self, i: int) -> Sequent:
        return self.steps[i].sequent

    def find(self, s: Sequent) -> int | None:
        return self._by_sequent.get(s)

    def add(self, rule: str, premises: Iterable[int] = (), principal: Iterable[Formula] = (),
            sequent: Sequent | None = None) -> int:
        premises = tuple(premises)
        principal = tuple(principal)
        prem_seqs = [self.steps[j].sequent for j in premises]
        if sequent is None:
            sequent = infer(rule, prem_seqs, principal)
        step = Step(sequent, rule, premises, principal)
        known = self._index.get(step)
        if known is not None:
            return known
        reason = step_error(step, prem_seqs)
        if reason is not None:
            raise ProofError(f"{rule} step rejected ({reason}): {sequent}")
        self.steps.append(step)
        i = len(self.steps) - 1
        self._index[step] = i
        self._by_sequent.setdefault(sequent, i)
        return i

    def include(self, proof: Proof) -> int:
        """Copy ``proof`` into this builder; returns the index of its conclusion."""
        remap: dict[int, int] = {}
        for j in _reachable(proof.steps, proof.conclusion):
            s = proof.steps[j]
            remap[j] = self.add(s.rule, [remap[k] for k in s.premises], s.principal, s.sequent)
        return remap[proof.conclusion]

    def proof(self, i: int) -> Proof:
        """The sub-DAG deriving line ``i``, renumbered from zero."""
        order = _reachable(self.steps, i)
        remap = {old: new for new, old in enumerate(order)}
        steps = tuple(
            Step(self.steps[old].sequent, self.steps[old].rule,
                 tuple(remap[k] for k in self.steps[old].premises), self.steps[old].principal)
            for old in order
        )
        return Proof(steps, remap[i])


def _reachable(steps: Sequence[Step], root: int) -> list[int]:
    seen = {root}
    stack = [root]
    while stack:
        j = stack.pop()
        for k in steps[j].premises:
            if k not in seen:
                seen.add(k)
                stack.append(k)
    return sorted(seen)


# -- serialization -------------------------------------------------------------

def proof_to_dict(proof: Proof) -> dict:
    return {
        "conclusion": proof.conclusion,
        "steps": [
            {
                "id": i,
                "kind": s.sequent.kind,
                "antecedent": [str(f) for f in canonical(s.sequent.antecedent)],
                "succedent": [str(f) for f in canonical(s.sequent.succedent)],
                "rule": s.rule,
                "premises": list(s.premises),
                "principal": [str(f) for f in s.principal],
            }
            for i, s in enumerate(proof.steps)
        ],
    }


def proof_from_dict(data: dict) -> Proof:
    """Inverse of :func:`proof_to_dict`.

    Step ids must be 0, 1, 2, ... in order; premises refer to those ids.
    """
    steps = []
    for expected, raw in enumerate(data["steps"]):
        if raw.get("id", expected) != expected:
            raise ProofError(f"step ids must be consecutive from 0, got {raw.get('id')!r}")
        seq = Sequent(
            frozenset(parse_formula(t) for t in raw["antecedent"]),
            frozenset(parse_formula(t) for t in raw["succedent"]),
            raw["kind"],
        )
        steps.append(Step(seq, raw["rule"], tuple(raw["premises"]),
                          tuple(parse_formula(t) for t in raw.get("principal", []))))
    conclusion = data.get("conclusion", len(steps) - 1)
    return Proof(tuple(steps), conclusion)


def dump_proof(proof: Proof) -> str:
    return json.dumps(proof_to_dict(proof), indent=1)


def load_proof(text: str) -> Proof:
    return proof_from_dict(json.loads(text))
