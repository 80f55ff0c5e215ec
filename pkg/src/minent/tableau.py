"""OTAB tableaux for minimal sequents.

The tree hangs off a sentinel root (id 0, no label) followed by the initial
chain ``T g`` for g in the antecedent and ``F d`` for d in the succedent.
An expansion is attached to the current leaf ``u`` of a branch: rule (A) adds
the chain ``u -> v -> w``, rule (B) adds the siblings ``v`` and ``w`` under
``u``.  ``u.expanded`` records the signed formula that was used.

Marking is per branch: a node labelled ``sf`` is marked on branch B when some
node of B at or below it expanded ``sf``.  A branch stops growing only once
it is T-closed; everything else is expanded until completed.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

from .formula import (
    F, LITERAL, T, Alpha, Atom, Formula, Not, Sequent, SignedFormula, canonical, classify,
    has_constants, is_literal,
)

DEFAULT_BUDGET = 1_000_000
BUDGET_ENV = "MINENT_NODE_BUDGET"

STATUSES = ("T-closed", "F-closed", "TF-closed", "ignorable-1", "ignorable-2", "open")


class TableauError(ValueError):
    pass


class BudgetExceeded(TableauError):
    """``min_leaves`` bounds the leaf count of the full tableau from below."""

    def __init__(self, message: str, min_leaves: int = 0):
        super().__init__(message)
        self.min_leaves = min_leaves


@dataclass
class Node:
    id: int
    parent: int | None
    label: SignedFormula | None
    depth: int
    children: list[int] = field(default_factory=list)
    rule: str | None = None
    expanded: SignedFormula | None = None
    source: int | None = None


@dataclass(frozen=True)
class BranchInfo:
    leaf: int
    at: frozenset
    completed: bool
    t_closed: bool
    f_closed: bool
    tf_closed: bool
    ignorable1: bool
    ignorable2: bool
    theta: int | None

    @property
    def closed(self) -> bool:
        return self.t_closed or self.f_closed or self.tf_closed

    @property
    def status(self) -> str:
        for flag, name in zip(
            (self.t_closed, self.f_closed, self.tf_closed, self.ignorable1, self.ignorable2),
            STATUSES,
        ):
            if flag:
                return name
        return "open"


# -- expansion strategies ---------------------------------------------------------

def _closes(sf: SignedFormula, tforms: set) -> bool:
    if sf.sign != T:
        return False
    f = sf.formula
    return Not(f) in tforms or (isinstance(f, Not) and f.child in tforms)


def _score(sf: SignedFormula, tforms: set) -> int:
    """Leaves left open if ``sf`` were fully expanded on the branch now."""
    if _closes(sf, tforms):
        return 0
    c = classify(sf)
    if c is LITERAL:
        return 1
    s1, s2 = _score(c.first, tforms), _score(c.second, tforms)
    if isinstance(c, Alpha):
        return 0 if s1 == 0 or s2 == 0 else s1 * s2
    return s1 + s2


class _Branch:
    """Mutable construction state of one open branch."""

    def __init__(self, leaf: int):
        self.leaf = leaf
        self.pending: dict[SignedFormula, int] = {}  # unmarked non-literal -> shallowest copy
        self.tforms: set[Formula] = set()
        self.fforms: set[Formula] = set()
        self.t_closed = False

    def copy(self) -> "_Branch":
        other = _Branch(self.leaf)
        other.pending = dict(self.pending)
        other.tforms = set(self.tforms)
        other.fforms = set(self.fforms)
        other.t_closed = self.t_closed
        return other

    def add(self, node: Node) -> None:
        sf = node.label
        if sf.sign == T:
            if _closes(sf, self.tforms):
                self.t_closed = True
            self.tforms.add(sf.formula)
        else:
            self.fforms.add(sf.formula)
        if not is_literal(sf) and sf not in self.pending:
            self.pending[sf] = node.id


Strategy = Callable[[_Branch, list], SignedFormula]


def _alpha_first(br: _Branch, nodes: list, beta_pick) -> SignedFormula:
    alphas = [sf for sf in br.pending if isinstance(classify(sf), Alpha)]
    if alphas:
        return min(alphas, key=lambda sf: br.pending[sf])
    return beta_pick(list(br.pending))


def _shallowest(br, nodes):
    return _alpha_first(br, nodes, lambda bs: min(bs, key=lambda sf: br.pending[sf]))


def _deepest(br, nodes):
    return _alpha_first(br, nodes, lambda bs: max(bs, key=lambda sf: br.pending[sf]))


def _closing(br, nodes):
    return _alpha_first(br, nodes, lambda bs: min(
        bs, key=lambda sf: (_score(sf, br.tforms), -br.pending[sf])))


def _closing_shallow(br, nodes):
    return _alpha_first(br, nodes, lambda bs: min(
        bs, key=lambda sf: (_score(sf, br.tforms), br.pending[sf])))


STRATEGIES: dict[str, Strategy] = {
    "closing": _closing,
    "closing-shallow": _closing_shallow,
    "shallowest": _shallowest,
    "deepest": _deepest,
}
DEFAULT_STRATEGY = "closing"


# -- the tableau ----------------------------------------------------------------------

class Tableau:
    def __init__(self, origin: Sequent, strategy: str):
        self.origin = origin
        self.strategy = strategy
        self.nodes: list[Node] = []
        self.leaves: list[int] = []  # left to right

    def _new(self, parent: int | None, label: SignedFormula | None) -> Node:
        depth = 0 if parent is None else self.nodes[parent].depth + 1
        node = Node(len(self.nodes), parent, label, depth)
        self.nodes.append(node)
        if parent is not None:
            self.nodes[parent].children.append(node.id)
        return node

    @property
    def size(self) -> int:
        return len(self.nodes)

    def path(self, leaf: int) -> list[int]:
        """Node ids from the root down to ``leaf``."""
        out = []
        x: int | None = leaf
        while x is not None:
            out.append(x)
            x = self.nodes[x].parent
        return out[::-1]

    def on_branch(self, node: int, leaf: int) -> bool:
        return node in self._paths[leaf]

    @cached_property
    def _paths(self) -> dict[int, frozenset]:
        return {leaf: frozenset(self.path(leaf)) for leaf in self.leaves}

    @cached_property
    def subtree_leaves(self) -> dict[int, frozenset]:
        out: dict[int, frozenset] = {}
        for node in reversed(self.nodes):
            if not node.children:
                out[node.id] = frozenset({node.id})
            else:
                out[node.id] = frozenset().union(*(out[c] for c in node.children))
        return out

    def marked_on(self, leaf: int) -> dict[int, bool]:
        """For each node of the branch ending at ``leaf``, whether it is marked there."""
        used: set[SignedFormula] = set()
        out = {}
        for x in reversed(self.path(leaf)):
            node = self.nodes[x]
            if node.expanded is not None:
                used.add(node.expanded)
            out[x] = node.label is not None and node.label in used
        return out

    def unmarked(self, leaf: int) -> tuple[frozenset, frozenset]:
        """(A(B), B(B)): unmarked T- and F-formulas of the branch, signs stripped."""
        marks = self.marked_on(leaf)
        ts, fs = set(), set()
        for x, m in marks.items():
            sf = self.nodes[x].label
            if sf is None or m:
                continue
            (ts if sf.sign == T else fs).add(sf.formula)
        return frozenset(ts), frozenset(fs)

    def labels(self, leaf: int) -> frozenset:
        return frozenset(self.nodes[x].label for x in self.path(leaf) if self.nodes[x].label is not None)

    def node_marked(self, x: int) -> bool:
        """Marked on every branch through ``x``."""
        if self.nodes[x].label is None:
            return False
        return all(self.marked_on(leaf)[x] for leaf in self.subtree_leaves[x])

    # -- branch classification (post hoc, on the full tableau) --

    @cached_property
    def _raw(self) -> dict[int, dict]:
        raw = {}
        for leaf in self.leaves:
            sfs = self.labels(leaf)
            ts = {sf.formula for sf in sfs if sf.sign == T}
            fs = {sf.formula for sf in sfs if sf.sign == F}
            a, _ = self.unmarked(leaf)
            marks = self.marked_on(leaf)
            completed = all(
                marks[x] or is_literal(self.nodes[x].label)
                for x in marks if self.nodes[x].label is not None
            )
            at = frozenset(f.name for f in ts if isinstance(f, Atom))
            raw[leaf] = dict(
                at=at,
                completed=completed,
                t_closed=any(Not(f) in ts for f in ts),
                f_closed=any(Not(f) in fs for f in fs),
                tf_closed=bool(ts & fs),
                ignorable1=completed and any(
                    isinstance(f, Not) and isinstance(f.child, Atom) and f.child.name not in at
                    for f in fs),
            )
        return raw

    def _witnesses(self, leaf: int) -> list[int]:
        """Completed, not T-closed branches with a strictly smaller atom set."""
        if leaf in self._witness_cache:
            return self._witness_cache[leaf]
        at = self._raw[leaf]["at"]
        self._witness_cache[leaf] = out = [b for b in self.leaves
                if b != leaf and self._raw[b]["completed"] and not self._raw[b]["t_closed"]
                and self._raw[b]["at"] < at]
        return out

    @cached_property
    def _witness_cache(self) -> dict[int, list[int]]:
        return {}

    @cached_property
    def infos(self) -> dict[int, BranchInfo]:
        out = {}
        for leaf in self.leaves:
            r = self._raw[leaf]
            closed = r["t_closed"] or r["f_closed"] or r["tf_closed"]
            ign2 = r["completed"] and not closed and bool(self._witnesses(leaf))
            theta = None
            if ign2:
                # left-most witness that is not itself above some smaller branch
                theta = next(b for b in self._witnesses(leaf) if not self._witnesses(b))
            out[leaf] = BranchInfo(leaf, r["at"], r["completed"], r["t_closed"], r["f_closed"],
                                   r["tf_closed"], r["ignorable1"], ign2, theta)
        return out

    def status_counts(self) -> dict[str, int]:
        counts = dict.fromkeys(STATUSES, 0)
        for info in self.infos.values():
            counts[info.status] += 1
        return counts

    def to_dict(self) -> dict:
        return {
            "origin": str(self.origin),
            "strategy": self.strategy,
            "leaves": list(self.leaves),
            "nodes": [
                {
                    "id": n.id,
                    "parent": n.parent,
                    "sign": None if n.label is None else n.label.sign,
                    "formula": None if n.label is None else str(n.label.formula),
                    "marked": self.node_marked(n.id),
                    "rule": n.rule,
                    "source": n.source,
                }
                for n in self.nodes
            ],
        }


def _budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    return int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))


def build_tableau(s: Sequent, strategy: str = DEFAULT_STRATEGY, budget: int | None = None) -> Tableau:
    """Fully expand an OTAB tableau for the minimal sequent ``s``."""
    if not s.minimal:
        raise TableauError("OTAB tableaux are built for minimal sequents")
    if any(has_constants(f) for f in s.formulas()):
        raise TableauError("bot/top are not handled by the tableau rules")
    if strategy not in STRATEGIES:
        raise TableauError(f"unknown strategy {strategy!r}")
    pick = STRATEGIES[strategy]
    limit = _budget(budget)

    t = Tableau(s, strategy)
    root = t._new(None, None)
    br = _Branch(root.id)
    chain = [SignedFormula(T, g) for g in canonical(s.antecedent)]
    chain += [SignedFormula(F, d) for d in canonical(s.succedent)]
    for sf in chain:
        node = t._new(br.leaf, sf)
        br.leaf = node.id
        br.add(node)

    stack = [br]
    while stack:
        br = stack.pop()
        if br.t_closed or not br.pending:
            t.leaves.append(br.leaf)
            continue
        if len(t.nodes) + 2 > limit:
            # every pending branch ends in at least one leaf of its own
            raise BudgetExceeded(f"tableau exceeds the node budget of {limit}",
                                 len(t.leaves) + len(stack) + 1)
        sf = pick(br, t.nodes)
        u = t.nodes[br.leaf]
        u.expanded, u.source = sf, br.pending.pop(sf)
        c = classify(sf)
        if isinstance(c, Alpha):
            u.rule = "A"
            v = t._new(u.id, c.first)
            w = t._new(v.id, c.second)
            br.add(v)
            br.add(w)
            br.leaf = w.id
            stack.append(br)
        else:
            u.rule = "B"
            right = br.copy()
            v = t._new(u.id, c.first)
            w = t._new(u.id, c.second)
            br.add(v)
            br.leaf = v.id
            right.add(w)
            right.leaf = w.id
            stack.append(right)
            stack.append(br)
    return t


def branch_status(t: Tableau, leaf: int) -> BranchInfo:
    if leaf not in t.infos:
        raise TableauError(f"{leaf} is not a leaf of the tableau")
    return t.infos[leaf]


def theta(t: Tableau, leaf: int) -> int:
    info = branch_status(t, leaf)
    if not info.ignorable2:
        raise TableauError(f"branch {leaf} is not ignorable type-2")
    return info.theta


def validate_tableau(t: Tableau) -> bool:
    """Every branch is closed or ignorable."""
    return all(info.status != "open" for info in t.infos.values())
