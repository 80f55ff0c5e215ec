"""Shared helpers: the checking corpus and a proof acceptance shortcut."""
from __future__ import annotations

from functools import cache

from hypothesis import strategies as st

from minent.formula import BOT, MINIMAL, TOP, And, Atom, Implies, Not, Or, Sequent
from minent.generate import exhaustive_corpus, random_corpus
from minent.proof import Proof, check

RANDOM_SEED = 1
RANDOM_COUNT = 500


@cache
def corpus() -> tuple[Sequent, ...]:
    """Exhaustive sequents over two atoms plus seeded random ones over at most three."""
    return tuple(exhaustive_corpus()) + tuple(random_corpus(RANDOM_SEED, RANDOM_COUNT, max_atoms=3))


def accepted(proof: Proof, conclusion: Sequent | None = None) -> bool:
    if not check(proof).ok:
        return False
    return conclusion is None or proof.sequent == conclusion


def formulas(names=("a", "b", "c"), constants: bool = True, max_leaves: int = 12):
    leaves = st.sampled_from([Atom(n) for n in names])
    if constants:
        leaves = leaves | st.sampled_from([BOT, TOP])
    return st.recursive(
        leaves,
        lambda sub: st.builds(Not, sub) | st.builds(And, sub, sub)
        | st.builds(Or, sub, sub) | st.builds(Implies, sub, sub),
        max_leaves=max_leaves,
    )


def minimal_sequents(names=("a", "b", "c"), max_leaves: int = 6):
    fs = formulas(names, constants=False, max_leaves=max_leaves)
    return st.builds(lambda g, d: Sequent(g, d, MINIMAL),
                     st.lists(fs, max_size=3), st.lists(fs, max_size=2))
