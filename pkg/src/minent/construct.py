"""Reusable polynomial-size proof constructions.

Builder-level helpers take a :class:`ProofBuilder` and line indices and
return the index of the new conclusion; they are what the translator uses.
The ``Proof``-level functions at the bottom wrap them for standalone use.
"""
from __future__ import annotations

from typing import Iterable

from .formula import (
    BOT, CLASSICAL, MINIMAL, TOP, And, Atom, Bottom, Formula, Implies, Not, Or,
    Sequent, SignedFormula, Top, Alpha, Beta, T, atoms, canonical, classify, variables,
)
from .proof import Proof, ProofBuilder, ProofError


# -- small classical macros ------------------------------------------------------

def axiom(b: ProofBuilder, a: Formula) -> int:
    return b.add("axiom", principal=[a])


def weaken(b: ProofBuilder, i: int, ant: Iterable[Formula] = (), suc: Iterable[Formula] = ()) -> int:
    """Classical weakening of line ``i`` on either side (no-op if nothing new)."""
    s = b.sequent(i)
    if s.kind != CLASSICAL:
        raise ProofError("weakening is only available for classical sequents")
    extra_ant = canonical(set(ant) - s.antecedent)
    extra_suc = canonical(set(suc) - s.succedent)
    if extra_ant:
        i = b.add("weak-l", [i], extra_ant)
    if extra_suc:
        i = b.add("weak-r", [i], extra_suc)
    return i


def weaken_to(b: ProofBuilder, i: int, target: Sequent) -> int:
    s = b.sequent(i)
    if not (s.antecedent <= target.antecedent and s.succedent <= target.succedent):
        raise ProofError(f"cannot weaken {s} to {target}")
    return weaken(b, i, target.antecedent, target.succedent)


def cut(b: ProofBuilder, left: int, right: int, a: Formula) -> int:
    """From ``G |- S, a`` and ``a, G |- S`` derive ``G |- S``."""
    return b.add("cut", [left, right], [a])


def bridge(b: ProofBuilder, i: int) -> int:
    return b.add("m-bridge", [i])


def m_cut(b: ProofBuilder, left: int, right: int, a: Formula, keep: Iterable[Formula] = ()) -> int:
    """Minimal cut on ``a``; ``a`` stays in the succedent if it is in ``keep``."""
    p, q = b.sequent(left), b.sequent(right)
    suc = (p.succedent - {a}) | q.succedent
    if a in set(keep) and a in p.succedent:
        suc |= {a}
    return b.add("m-cut", [left, right], [a], Sequent(p.antecedent, suc, MINIMAL))


def m_axiom(b: ProofBuilder, gamma: Iterable[Formula], p: str) -> int:
    return b.add("m-axiom", principal=[Atom(p)], sequent=Sequent(frozenset(gamma), {Not(Atom(p))}, MINIMAL))


def m_cumulate(b: ProofBuilder, lemma: int, main: int) -> int:
    """From ``G |-m s`` and ``G |-m D`` derive ``G, s |-m D``."""
    (s,) = b.sequent(lemma).succedent
    return b.add("m-weak-l", [lemma, main], [s])


def _leaf_path(tree: Formula, leaf: Formula, conn: type) -> list[Formula] | None:
    """Nodes from ``tree`` down to ``leaf`` through ``conn`` nodes only."""
    if tree == leaf:
        return [tree]
    if isinstance(tree, conn):
        for child in (tree.left, tree.right):
            path = _leaf_path(child, leaf, conn)
            if path is not None:
                return [tree] + path
    return None


def intro_disjunction(b: ProofBuilder, i: int, disj: Formula, leaf: Formula) -> int:
    """Replace ``leaf`` in the succedent of line ``i`` by ``disj``.

    ``leaf`` must be a disjunct of ``disj``; each enclosing ``|`` is
    introduced with or-r1 / or-r2 (or their minimal variants).
    """
    path = _leaf_path(disj, leaf, Or)
    if path is None:
        raise ProofError(f"{leaf} is not a disjunct of {disj}")
    prefix = "m-" if b.sequent(i).minimal else ""
    for parent, child in zip(reversed(path[:-1]), reversed(path[1:])):
        if child == parent.left:
            i = b.add(prefix + "or-r1", [i], [parent.left, parent.right])
        else:
            i = b.add(prefix + "or-r2", [i], [parent.right, parent.left])
    return i


def fold_conjunction(b: ProofBuilder, i: int, conj: Formula) -> int:
    """Replace the conjuncts of ``conj`` in the antecedent of line ``i`` by ``conj``."""
    if not isinstance(conj, And):
        if conj not in b.sequent(i).antecedent:
            raise ProofError(f"{conj} is not in the antecedent")
        return i
    i = fold_conjunction(b, i, conj.left)
    i = fold_conjunction(b, i, conj.right)
    a, c = conj.left, conj.right
    ant = b.sequent(i).antecedent
    s = b.sequent(i)
    keep_a = Sequent((ant - {a}) | {conj} if a != c else ant | {conj}, s.succedent)
    i = b.add("and-l1", [i], [a, c], keep_a)
    return b.add("and-l2", [i], [c, a], Sequent((keep_a.antecedent - {c}) | {conj}, s.succedent))


def conjunction_from_atoms(b: ProofBuilder, gamma: Iterable[Formula], conj: Formula) -> int:
    """``G |- conj`` where every conjunct of ``conj`` is in ``G`` (or conj is top)."""
    gamma = frozenset(gamma)
    if isinstance(conj, Top):
        return weaken(b, b.add("top-r"), gamma)
    if isinstance(conj, And):
        left = conjunction_from_atoms(b, gamma, conj.left)
        right = conjunction_from_atoms(b, gamma, conj.right)
        return b.add("and-r", [left, right], [conj.left, conj.right])
    if conj not in gamma:
        raise ProofError(f"{conj} is not in the antecedent")
    return weaken(b, axiom(b, conj), gamma)


# -- backward search for small classical tautologies ------------------------------

def derive(b: ProofBuilder, s: Sequent, opaque: frozenset = frozenset()) -> int:
    """LK proof of a classical sequent by invertible backward decomposition.

    Formulas in ``opaque`` are treated as atoms.  The search is exponential in
    the number of connectives, so it is only used for fixed-size schemas.
    """
    found = b.find(s)
    if found is not None:
        return found
    if s.kind != CLASSICAL:
        raise ProofError("derive works on classical sequents only")
    ant, suc = s.antecedent, s.succedent
    common = canonical(ant & suc)
    if common:
        return weaken_to(b, axiom(b, common[0]), s)
    if BOT in ant:
        return weaken_to(b, b.add("bot-l"), s)
    if TOP in suc:
        return weaken_to(b, b.add("top-r"), s)

    def open_(f: Formula) -> bool:
        return f not in opaque and isinstance(f, (Not, And, Or, Implies))

    left = [f for f in canonical(ant) if open_(f)]
    right = [f for f in canonical(suc) if open_(f)]
    # non-branching rules first
    for f in left:
        rest = ant - {f}
        if isinstance(f, Not):
            p = derive(b, Sequent(rest, suc | {f.child}), opaque)
            return b.add("not-l", [p], [f.child], s)
        if isinstance(f, And):
            a, c = f.left, f.right
            p = derive(b, Sequent(rest | {a, c}, suc), opaque)
            mid = Sequent(rest | {c, f} | ({a} & rest), suc)
            p = b.add("and-l1", [p], [a, c], mid)
            return b.add("and-l2", [p], [c, a], s)
    for f in right:
        rest = suc - {f}
        if isinstance(f, Not):
            p = derive(b, Sequent(ant | {f.child}, rest), opaque)
            return b.add("not-r", [p], [f.child], s)
        if isinstance(f, Or):
            a, c = f.left, f.right
            p = derive(b, Sequent(ant, rest | {a, c}), opaque)
            mid = Sequent(ant, rest | {c, f} | ({a} & rest))
            p = b.add("or-r1", [p], [a, c], mid)
            return b.add("or-r2", [p], [c, a], s)
        if isinstance(f, Implies):
            p = derive(b, Sequent(ant | {f.left}, rest | {f.right}), opaque)
            return b.add("imp-r", [p], [f.left, f.right], s)
    for f in left:
        rest = ant - {f}
        if isinstance(f, Or):
            p = derive(b, Sequent(rest | {f.left}, suc), opaque)
            q = derive(b, Sequent(rest | {f.right}, suc), opaque)
            return b.add("or-l", [p, q], [f.left, f.right], s)
        if isinstance(f, Implies):
            p = derive(b, Sequent(rest, suc | {f.left}), opaque)
            q = derive(b, Sequent(rest | {f.right}, suc), opaque)
            return b.add("imp-l", [p, q], [f.left, f.right], s)
    for f in right:
        if isinstance(f, And):
            rest = suc - {f}
            p = derive(b, Sequent(ant, rest | {f.left}), opaque)
            q = derive(b, Sequent(ant, rest | {f.right}), opaque)
            return b.add("and-r", [p, q], [f.left, f.right], s)
    raise ProofError(f"not derivable: {s}")


# -- assignment proofs ---------------------------------------------------------------

def _literals(names: Iterable[str], true_atoms: frozenset) -> frozenset:
    return frozenset(Atom(p) if p in true_atoms else Not(Atom(p)) for p in names)


def _truth_proof(b: ProofBuilder, f: Formula, true_atoms: frozenset, memo: dict) -> tuple[bool, int]:
    """Evaluate ``f`` and prove it.

    With ``L`` the literals fixing the atoms of ``f``: returns ``(True, i)``
    with line ``i`` proving ``L |- f``, or ``(False, i)`` proving ``L, f |-``.
    """
    if f in memo:
        return memo[f]
    lits = _literals(atoms(f), true_atoms)
    if isinstance(f, Atom):
        if f.name in true_atoms:
            out = True, axiom(b, f)
        else:
            out = False, b.add("not-l", [axiom(b, f)], [f])
    elif isinstance(f, Top):
        out = True, b.add("top-r")
    elif isinstance(f, Bottom):
        out = False, b.add("bot-l")
    elif isinstance(f, Not):
        val, i = _truth_proof(b, f.child, true_atoms, memo)
        if val:
            out = False, b.add("not-l", [i], [f.child])
        else:
            out = True, b.add("not-r", [i], [f.child])
    else:
        lv, li = _truth_proof(b, f.left, true_atoms, memo)
        rv, ri = _truth_proof(b, f.right, true_atoms, memo)
        li, ri = weaken(b, li, lits), weaken(b, ri, lits)
        a, c = f.left, f.right
        if isinstance(f, And):
            if lv and rv:
                out = True, b.add("and-r", [li, ri], [a, c])
            elif not lv:
                out = False, _conj_left(b, li, a, c, first=True)
            else:
                out = False, _conj_left(b, ri, c, a, first=False)
        elif isinstance(f, Or):
            if lv:
                out = True, _disj_right(b, li, a, c, first=True)
            elif rv:
                out = True, _disj_right(b, ri, c, a, first=False)
            else:
                out = False, b.add("or-l", [li, ri], [a, c],
                                   Sequent(lits | {f}, ()))
        elif isinstance(f, Implies):
            if not lv:
                i = weaken(b, li, suc=[c])
                out = True, b.add("imp-r", [i], [a, c], Sequent(lits, {f}))
            elif rv:
                i = weaken(b, ri, ant=[a])
                out = True, b.add("imp-r", [i], [a, c], Sequent(lits, {f}))
            else:
                out = False, b.add("imp-l", [li, ri], [a, c], Sequent(lits | {f}, ()))
        else:
            raise TypeError(f"not a formula: {f!r}")
    memo[f] = out
    return out


def _conj_left(b: ProofBuilder, i: int, part: Formula, other: Formula, first: bool) -> int:
    # from L, part |- derive L, conj |- ; part is false, so it is not one of the literals
    s = b.sequent(i)
    conj = And(part, other) if first else And(other, part)
    target = Sequent((s.antecedent - {part}) | {conj}, s.succedent)
    return b.add("and-l1" if first else "and-l2", [i], [part, other], target)


def _disj_right(b: ProofBuilder, i: int, part: Formula, other: Formula, first: bool) -> int:
    s = b.sequent(i)
    disj = Or(part, other) if first else Or(other, part)
    return b.add("or-r1" if first else "or-r2", [i], [part, other],
                 Sequent(s.antecedent, (s.succedent - {part}) | {disj}))


def prove_assignment_lines(b: ProofBuilder, positive: Iterable[str], negative: Iterable[str],
                           gamma: Iterable[Formula], delta: Iterable[Formula]) -> int:
    positive, negative = frozenset(positive), frozenset(negative)
    gamma, delta = frozenset(gamma), frozenset(delta)
    if positive & negative:
        raise ValueError(f"atoms assigned both ways: {sorted(positive & negative)}")
    uncovered = variables(gamma | delta) - positive - negative
    if uncovered:
        raise ValueError(f"atoms without a value: {sorted(uncovered)}")
    lits = _literals(positive | negative, positive)
    target = Sequent(lits | gamma, delta)
    memo: dict = {}
    for g in canonical(gamma):
        val, i = _truth_proof(b, g, positive, memo)
        if not val:
            return weaken_to(b, i, target)
    for d in canonical(delta):
        val, i = _truth_proof(b, d, positive, memo)
        if val:
            return weaken_to(b, i, target)
    raise ValueError(f"sequent is false under the assignment: {target}")


# -- alpha/beta equivalences -----------------------------------------------------------

def alpha_beta_sequents(sf: SignedFormula) -> tuple[Sequent, Sequent]:
    """The two classical sequents relating ``sf`` to its components.

    T-alpha and F-beta use the conjunction of the components, F-alpha and
    T-beta their disjunction.
    """
    c = classify(sf)
    if not isinstance(c, (Alpha, Beta)):
        raise ValueError(f"{sf} is a literal")
    phi, c1, c2 = sf.formula, c.first.formula, c.second.formula
    conjunctive = isinstance(c, Alpha) == (sf.sign == T)
    combo = And(c1, c2) if conjunctive else Or(c1, c2)
    return Sequent({phi}, {combo}), Sequent({combo}, {phi})


def alpha_beta_lines(b: ProofBuilder, sf: SignedFormula) -> tuple[int, int]:
    fwd, back = alpha_beta_sequents(sf)
    c = classify(sf)
    opaque = _schema_atoms(sf.formula, c.first.formula, c.second.formula)
    return derive(b, fwd, opaque), derive(b, back, opaque)


def _schema_atoms(phi: Formula, c1: Formula, c2: Formula) -> frozenset:
    # the metavariables A, B of the table row, so that the proofs have fixed size
    if isinstance(phi, Not) and isinstance(phi.child, (And, Or, Implies)):
        letters = {phi.child.left, phi.child.right}
    elif isinstance(phi, Not) and isinstance(phi.child, Not):
        letters = {phi.child.child}
    else:
        letters = {phi.left, phi.right}
    # B = ~A would hide the component ~A behind an opaque letter, so open B one step
    return frozenset(x for x in letters if not (isinstance(x, Not) and x.child in letters))


def component_lines(b: ProofBuilder, sf: SignedFormula) -> tuple[int, int]:
    """For a T-alpha formula, proofs of ``phi |- c1`` and ``phi |- c2``."""
    c = classify(sf)
    fwd, _ = alpha_beta_lines(b, sf)
    c1, c2 = c.first.formula, c.second.formula
    conj = And(c1, c2)
    out = []
    for k, part in enumerate((c1, c2)):
        ax = axiom(b, part)
        if k == 0:
            elim = b.add("and-l1", [ax], [c1, c2], Sequent({conj}, {c1}))
        else:
            elim = b.add("and-l2", [ax], [c2, c1], Sequent({conj}, {c2}))
        out.append(cut(b, weaken(b, fwd, suc=[part]), weaken(b, elim, ant=[sf.formula]), conj))
    return out[0], out[1]


# -- minimal weakening -------------------------------------------------------------------

def mlk_weaken_lines(b: ProofBuilder, i: int, extra: Iterable[Formula]) -> int:
    """From ``G |-m D`` (D nonempty) derive ``G |-m D, extra``."""
    s = b.sequent(i)
    if not s.minimal:
        raise ProofError("mlk_weaken expects a minimal sequent")
    extra = frozenset(extra) - s.succedent
    if not extra:
        return i
    if not s.succedent:
        raise ValueError("cannot weaken a minimal sequent with an empty succedent")
    d = canonical(s.succedent)[0]
    side = weaken(b, axiom(b, d), s.antecedent, s.succedent | extra)
    return b.add("m-cut", [i, bridge(b, side)], [d])


# -- Proof-level API ----------------------------------------------------------------------

def prove_assignment(positive: Iterable[str], negative: Iterable[str],
                     gamma: Iterable[Formula], delta: Iterable[Formula]) -> Proof:
    """LK proof of ``positive, ~negative, gamma |- delta``.

    Every atom of gamma and delta must be assigned.  Raises ``ValueError`` if
    the sequent is false under the assignment.
    """
    b = ProofBuilder()
    return b.proof(prove_assignment_lines(b, positive, negative, gamma, delta))


def prove_alpha_beta(sf: SignedFormula) -> tuple[Proof, Proof]:
    b = ProofBuilder()
    fwd, back = alpha_beta_lines(b, sf)
    return b.proof(fwd), b.proof(back)


def mlk_weaken(p: Proof, extra: Iterable[Formula]) -> Proof:
    extra = frozenset(extra)
    if extra <= p.sequent.succedent:
        return p
    b = ProofBuilder()
    return b.proof(mlk_weaken_lines(b, b.include(p), extra))


def compose(p1: Proof, p2: Proof | None, rule: str, principal: Iterable[Formula] = (),
            sequent: Sequent | None = None) -> Proof:
    """Apply ``rule`` to the conclusions of ``p1`` (and ``p2``), merging both DAGs.

    Identical lines of the two proofs are stored once.
    """
    b = ProofBuilder()
    prem = [b.include(p1)]
    if p2 is not None:
        prem.append(b.include(p2))
    try:
        i = b.add(rule, prem, principal, sequent)
    except ProofError as exc:
        raise ProofError(f"schema mismatch: {exc}") from None
    return b.proof(i)
