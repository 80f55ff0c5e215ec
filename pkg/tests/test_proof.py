import pytest

from minent.construct import compose, mlk_weaken, prove_alpha_beta, prove_assignment
from minent.formula import (
    CLASSICAL, F, MINIMAL, T, And, Atom, Implies, Not, Or, Sequent, SignedFormula, parse_formula,
)
from minent.proof import (
    Proof, ProofBuilder, ProofError, Step, check, dump_proof, load_proof, proof_from_dict,
    proof_to_dict,
)
from minent.semantics import holds
from mutations import base_proofs, mutation_suite
from util import accepted

a, b, c = Atom("a"), Atom("b"), Atom("c")


def single(step: Step) -> Proof:
    return Proof((step,), 0)


def test_check_examples():
    assert check(single(Step(Sequent({a}, {a}), "axiom", (), (a,)))).ok
    s = Sequent({Or(a, b)}, {Not(c)}, MINIMAL)
    assert check(single(Step(s, "m-axiom", (), (c,)))).ok
    bad = check(single(Step(Sequent({a}, {Not(a)}, MINIMAL), "m-axiom", (), (a,))))
    assert not bad.ok and bad.step == 0 and bad.reason == "side-condition"


def test_check_rejects_bad_conclusion_index():
    p = Proof((Step(Sequent({a}, {a}), "axiom", (), (a,)),), 3)
    assert check(p).reason == "bad-conclusion"


def test_builder_rejects_incorrect_steps():
    bld = ProofBuilder()
    with pytest.raises(ProofError):
        bld.add("axiom", principal=[a], sequent=Sequent({a}, {b}))
    assert len(bld) == 0


def test_builder_shares_identical_lines():
    bld = ProofBuilder()
    i = bld.add("axiom", principal=[a])
    assert bld.add("axiom", principal=[a]) == i
    assert len(bld) == 1


def test_prove_assignment_examples():
    p = prove_assignment({"a"}, {"b"}, [], [And(a, Not(b))])
    assert accepted(p, Sequent({a, Not(b)}, {And(a, Not(b))}))
    assert holds(p.sequent)
    p = prove_assignment(set(), {"a"}, [a], [])
    assert accepted(p, Sequent({Not(a), a}, ()))
    with pytest.raises(ValueError):
        prove_assignment({"a"}, set(), [], [b])


def test_prove_assignment_false_sequent():
    with pytest.raises(ValueError):
        prove_assignment({"a"}, set(), [], [Not(a)])


def test_prove_alpha_beta_examples():
    fwd, back = prove_alpha_beta(SignedFormula(T, And(a, b)))
    assert accepted(fwd, Sequent({And(a, b)}, {And(a, b)}))
    assert accepted(back, Sequent({And(a, b)}, {And(a, b)}))
    imp, disj = Implies(a, b), Or(Not(a), b)
    fwd, back = prove_alpha_beta(SignedFormula(T, imp))
    assert accepted(fwd, Sequent({imp}, {disj})) and accepted(back, Sequent({disj}, {imp}))
    # F~(a | b) is beta with components F~a, F~b, so its sequents use ~a & ~b
    neg, conj = Not(Or(a, b)), And(Not(a), Not(b))
    fwd, back = prove_alpha_beta(SignedFormula(F, neg))
    assert accepted(fwd, Sequent({neg}, {conj})) and accepted(back, Sequent({conj}, {neg}))
    assert holds(fwd.sequent) and holds(back.sequent)


SHAPES = ["A & B", "A | B", "A -> B", "~~A", "~(A & B)", "~(A | B)", "~(A -> B)"]
INSTANCES = [("a", "b"), ("a", "a"), ("b & c", "~a"), ("a", "~a"), ("a -> b", "b | c")]


@pytest.mark.parametrize("shape", SHAPES)
@pytest.mark.parametrize("sign", [T, F])
def test_alpha_beta_sequents_hold_and_check(shape, sign):
    for x, y in INSTANCES:
        f = parse_formula(shape.replace("A", f"({x})").replace("B", f"({y})"))
        for p in prove_alpha_beta(SignedFormula(sign, f)):
            assert check(p).ok
            assert holds(p.sequent)


def test_alpha_beta_proof_size_is_independent_of_the_subformulas():
    small = prove_alpha_beta(SignedFormula(T, Implies(a, b)))
    big_a = parse_formula("(a -> b) & (c | ~a) & (b -> c)")
    big_b = parse_formula("(b | c) & ~c")
    big = prove_alpha_beta(SignedFormula(T, Implies(big_a, big_b)))
    assert [p.num_steps for p in big] == [p.num_steps for p in small]


def _a_proves_m_a() -> Proof:
    bld = ProofBuilder()
    return bld.proof(bld.add("m-bridge", [bld.add("axiom", principal=[a])]))


def test_mlk_weaken_examples():
    p = _a_proves_m_a()
    w = mlk_weaken(p, [b])
    assert accepted(w, Sequent({a}, {a, b}, MINIMAL))
    assert mlk_weaken(p, []) is p
    bld = ProofBuilder()
    empty = bld.add("m-axiom", principal=[b], sequent=Sequent({Not(b)}, {Not(b)}, MINIMAL))
    refute = bld.proof(bld.add("m-bridge", [bld.add("not-l", [bld.add("axiom", principal=[a])], [a])]))
    assert refute.sequent == Sequent({a, Not(a)}, (), MINIMAL)
    with pytest.raises(ValueError):
        mlk_weaken(refute, [b])
    assert check(bld.proof(empty)).ok


def test_compose_examples():
    ax = ProofBuilder()
    p = ax.proof(ax.add("axiom", principal=[a]))
    both = compose(p, p, "and-r", [a, a])
    assert accepted(both, Sequent({a}, {And(a, a)}))
    five = ProofBuilder()
    left = five.add("weak-l", [five.add("axiom", principal=[a])], [b])
    right = five.add("weak-l", [five.add("axiom", principal=[b])], [a])
    five = five.proof(five.add("and-r", [left, right], [a, b]))
    assert five.num_steps == 5
    merged = compose(five, five, "and-r", [And(a, b), And(a, b)])
    assert check(merged).ok
    assert merged.num_steps <= 6
    bb = ProofBuilder()
    q = bb.proof(bb.add("axiom", principal=[b]))
    with pytest.raises(ProofError):
        compose(p, q, "cut", [a])


def test_serialization_round_trip():
    for p in base_proofs().values():
        text = dump_proof(p)
        again = load_proof(text)
        assert again == p
        assert check(again).ok
        assert proof_from_dict(proof_to_dict(p)) == p


def test_serialized_fields():
    p = base_proofs()["assign"]
    step = proof_to_dict(p)["steps"][0]
    assert set(step) == {"id", "kind", "antecedent", "succedent", "rule", "premises", "principal"}
    assert step["kind"] in (CLASSICAL, MINIMAL)


def test_load_rejects_misnumbered_steps():
    data = proof_to_dict(base_proofs()["assign"])
    data["steps"][0]["id"] = 7
    with pytest.raises(ProofError):
        proof_from_dict(data)


def test_base_proofs_are_accepted_and_true():
    for p in base_proofs().values():
        assert check(p).ok
        assert holds(p.sequent)


@pytest.mark.parametrize("name,proof,index", mutation_suite(), ids=[m[0] for m in mutation_suite()])
def test_mutation_rejected_at_the_corrupted_step(name, proof, index):
    result = check(proof)
    assert not result.ok
    assert result.step == index
