"""Minimal entailment: formulas, semantics, LK/MLK proofs and OTAB tableaux."""
from .formula import (
    And, Atom, Bottom, Formula, Implies, Not, Or, ParseError, Sequent, SignedFormula, Top,
    parse_formula, parse_sequent,
)
from .semantics import holds, minimal_models, models
from .proof import Proof, ProofError, check, dump_proof, load_proof
from .tableau import build_tableau, validate_tableau
from .translate import translate
from .phi import prove_phi_mlk

__all__ = [
    "And", "Atom", "Bottom", "Formula", "Implies", "Not", "Or", "ParseError", "Sequent",
    "SignedFormula", "Top", "parse_formula", "parse_sequent", "holds", "minimal_models",
    "models", "Proof", "ProofError", "check", "dump_proof", "load_proof", "build_tableau",
    "validate_tableau", "translate", "prove_phi_mlk",
]
