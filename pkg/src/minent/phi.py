"""Short MLK proofs of ``phi_n |-m`` (the family that is hard for OTAB)."""
from __future__ import annotations

from .construct import bridge, cut, prove_assignment_lines, weaken
from .formula import Atom, Not, Sequent
from .generate import generate_phi
from .proof import Proof, ProofBuilder
from .semantics import satisfies

# steps <= PHI_STEP_CONSTANT * |phi_n|^2; measured at n=2 (23 steps, |phi_2| = 16)
PHI_STEP_CONSTANT = 23 / 256


def prove_phi_mlk(n: int) -> Proof:
    """Refute phi_n in LK by cutting on p1..pn, then bridge to ``phi_n |-m``.

    Each of the 2^n assignment leaves is refuted against the one clause it
    falsifies, so the proof has O(n 2^n) lines.
    """
    clauses = generate_phi(n)
    b = ProofBuilder()
    names = [f"p{i}" for i in range(1, n + 1)]

    def refute(pos: tuple[str, ...], neg: tuple[str, ...]) -> int:
        k = len(pos) + len(neg)
        if k == n:
            model = frozenset(pos)
            clause = next(c for c in sorted(clauses) if not satisfies(model, c))
            line = prove_assignment_lines(b, pos, neg, [clause], [])
            return weaken(b, line, clauses)
        p = Atom(names[k])
        ctx = clauses | {Atom(a) for a in pos} | {Not(Atom(a)) for a in neg}
        # keep p on the left when it is itself a clause (n = 1)
        yes = b.add("not-r", [refute(pos + (p.name,), neg)], [p], Sequent(ctx, {Not(p)}))
        no = refute(pos, neg + (p.name,))
        return cut(b, yes, no, Not(p))

    return b.proof(bridge(b, refute((), ())))
