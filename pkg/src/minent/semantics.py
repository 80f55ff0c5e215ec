"""Brute-force classical and minimal-model semantics.

A model is the set of atoms it makes true.  Everything here enumerates
subsets of the atom universe, so instances are capped at ``MAX_ATOMS``.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .formula import (
    And, Atom, Bottom, Formula, Implies, Not, Or, Sequent, Top, variables,
)

Model = frozenset  # of atom names

MAX_ATOMS = 20


class OracleLimitError(ValueError):
    pass


def satisfies(model: Model, f: Formula) -> bool:
    """Truth of ``f`` in ``model``; atoms outside the model are false."""
    if isinstance(f, Atom):
        return f.name in model
    if isinstance(f, Not):
        return not satisfies(model, f.child)
    if isinstance(f, And):
        return satisfies(model, f.left) and satisfies(model, f.right)
    if isinstance(f, Or):
        return satisfies(model, f.left) or satisfies(model, f.right)
    if isinstance(f, Implies):
        return not satisfies(model, f.left) or satisfies(model, f.right)
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    raise TypeError(f"not a formula: {f!r}")


def _check_universe(universe: Iterable[str]) -> list[str]:
    names = sorted(set(universe))
    if len(names) > MAX_ATOMS:
        raise OracleLimitError(f"{len(names)} atoms exceeds the oracle limit of {MAX_ATOMS}")
    return names


def models(gamma: Iterable[Formula], universe: Iterable[str]) -> list[Model]:
    """All subsets of ``universe`` satisfying every formula of ``gamma``."""
    gamma = list(gamma)
    names = _check_universe(universe)
    out = []
    for k in range(len(names) + 1):
        for combo in combinations(names, k):
            m = frozenset(combo)
            if all(satisfies(m, g) for g in gamma):
                out.append(m)
    return out


def minimal_models(gamma: Iterable[Formula], universe: Iterable[str]) -> list[Model]:
    """The ⊆-minimal models of ``gamma`` over ``universe``.

    Subsets are visited by cardinality then lexicographically, so a candidate
    only has to be compared against the minimal models already found.
    """
    gamma = list(gamma)
    names = _check_universe(universe)
    missing = variables(gamma) - set(names)
    if missing:
        raise ValueError(f"universe is missing atoms {sorted(missing)}")
    found: list[Model] = []
    for k in range(len(names) + 1):
        for combo in combinations(names, k):
            m = frozenset(combo)
            if any(small <= m for small in found):
                continue
            if all(satisfies(m, g) for g in gamma):
                found.append(m)
    return found


def holds(s: Sequent) -> bool:
    """Truth of a classical or minimal sequent.

    Classical: every model of the antecedent satisfies some succedent formula.
    Minimal: the same, quantified over minimal models of the antecedent only.
    The universe is the set of atoms of the sequent.
    """
    universe = variables(s.antecedent | s.succedent)
    if s.minimal:
        candidates = minimal_models(s.antecedent, universe)
    else:
        candidates = models(s.antecedent, universe)
    return all(any(satisfies(m, d) for d in s.succedent) for m in candidates)


def countermodel(s: Sequent) -> Model | None:
    universe = variables(s.antecedent | s.succedent)
    candidates = minimal_models(s.antecedent, universe) if s.minimal else models(s.antecedent, universe)
    for m in candidates:
        if not any(satisfies(m, d) for d in s.succedent):
            return m
    return None
