"""Instance families: exhaustive small formulas, seeded random sequents, and phi_n."""
from __future__ import annotations

import random
from functools import reduce
from itertools import product

from .formula import MINIMAL, And, Atom, Formula, Implies, Not, Or, Sequent

PRNG = "python-random-mt19937"
MAX_PHI = 8


def exhaustive_formulas(atoms: list[str], depth: int) -> list[Formula]:
    """Every constant-free formula over ``atoms`` with nesting depth at most ``depth``."""
    level = [Atom(a) for a in atoms]
    for _ in range(depth):
        prev = level
        level = [Atom(a) for a in atoms] + [Not(f) for f in prev]
        for conn in (And, Or, Implies):
            level += [conn(x, y) for x in prev for y in prev]
    return level


def exhaustive_corpus(atoms=("a", "b"), ant_depth: int = 2, suc_depth: int = 1) -> list[Sequent]:
    """Minimal sequents with at most one formula per side.

    The antecedent ranges over formulas of depth <= ``ant_depth`` (or nothing),
    the succedent over formulas of depth <= ``suc_depth`` (or nothing).
    """
    left = [()] + [(f,) for f in exhaustive_formulas(list(atoms), ant_depth)]
    right = [()] + [(f,) for f in exhaustive_formulas(list(atoms), suc_depth)]
    return [Sequent(g, d, MINIMAL) for g in left for d in right]


def random_formula(rng: random.Random, atoms: list[str], depth: int) -> Formula:
    if depth == 0 or rng.random() < 0.3:
        return Atom(rng.choice(atoms))
    conn = rng.choice((Not, And, Or, Implies))
    if conn is Not:
        return Not(random_formula(rng, atoms, depth - 1))
    return conn(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1))


def random_sequent(rng: random.Random, max_atoms: int = 4, max_depth: int = 3,
                   max_ant: int = 3, max_suc: int = 2) -> Sequent:
    atoms = [chr(ord("a") + i) for i in range(rng.randint(1, max_atoms))]
    gamma = [random_formula(rng, atoms, max_depth) for _ in range(rng.randint(0, max_ant))]
    delta = [random_formula(rng, atoms, max_depth) for _ in range(rng.randint(0, max_suc))]
    return Sequent(gamma, delta, MINIMAL)


def random_corpus(seed: int, count: int, **kw) -> list[Sequent]:
    rng = random.Random(seed)
    return [random_sequent(rng, **kw) for _ in range(count)]


def generate_phi(n: int) -> frozenset:
    """All 2^n clauses over p1..pn with each variable once, as left-nested disjunctions."""
    if not 1 <= n <= MAX_PHI:
        raise ValueError(f"n must be between 1 and {MAX_PHI}")
    clauses = set()
    for signs in product((True, False), repeat=n):
        lits = [Atom(f"p{i}") if s else Not(Atom(f"p{i}")) for i, s in enumerate(signs, 1)]
        clauses.add(reduce(Or, lits))
    return frozenset(clauses)


def phi_sequent(n: int) -> Sequent:
    return Sequent(generate_phi(n), (), MINIMAL)


def chain_sequent(k: int) -> Sequent:
    """``a_i | (a_i & b_i)`` for i <= k entail ``~b_1 & ... & ~b_k`` minimally.

    Valid, with 2^k completed branches of which half are ignorable type-2,
    so it exercises the omega lemmas at every level.
    """
    if k < 1:
        raise ValueError("k must be positive")
    gamma = [Or(Atom(f"a{i}"), And(Atom(f"a{i}"), Atom(f"b{i}"))) for i in range(1, k + 1)]
    goal = reduce(And, [Not(Atom(f"b{i}")) for i in range(1, k + 1)])
    return Sequent(gamma, [goal], MINIMAL)
