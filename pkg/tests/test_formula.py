import pytest
from hypothesis import given

from minent.formula import (
    BOT, CLASSICAL, F, LITERAL, MINIMAL, T, Alpha, And, Atom, Beta, Implies, Not, Or, ParseError,
    Sequent, SignedFormula, canonical, classify, negative_atoms, parse_formula, parse_sequent,
    positive_atoms, variables,
)
from util import formulas

a, b, c = Atom("a"), Atom("b"), Atom("c")


def test_parse_formula_examples():
    assert parse_formula("a & ~b") == And(a, Not(b))
    assert parse_formula("a -> (b | bot)") == Implies(a, Or(b, BOT))


@pytest.mark.parametrize("text", ["a & | b", "", "(a", "a b", "a -> ", "~", "A", "a |- b"])
def test_parse_formula_rejects(text):
    with pytest.raises(ParseError):
        parse_formula(text)


def test_precedence_and_associativity():
    assert parse_formula("a | b & c") == Or(a, And(b, c))
    assert parse_formula("a & b & c") == And(And(a, b), c)
    assert parse_formula("a -> b -> c") == Implies(a, Implies(b, c))
    assert parse_formula("~a -> b | c") == Implies(Not(a), Or(b, c))


def test_parse_sequent_examples():
    assert parse_sequent("a | b |-m ~a | ~b") == Sequent({Or(a, b)}, {Or(Not(a), Not(b))}, MINIMAL)
    assert parse_sequent("|-m ~a, ~b") == Sequent((), {Not(a), Not(b)}, MINIMAL)
    s = parse_sequent("a, a |- a")
    assert s == Sequent({a}, {a}, CLASSICAL)
    assert len(s.antecedent) == 1


def test_parse_sequent_rejects_missing_turnstile():
    with pytest.raises(ParseError):
        parse_sequent("a, b")


def test_classify_examples():
    assert classify(SignedFormula(T, And(a, b))) == Alpha(SignedFormula(T, a), SignedFormula(T, b))
    assert classify(SignedFormula(T, Not(Not(a)))) == Alpha(SignedFormula(T, a), SignedFormula(T, a))
    assert classify(SignedFormula(F, Not(Implies(a, b)))) == Beta(SignedFormula(F, a), SignedFormula(F, Not(b)))


@pytest.mark.parametrize("sign,text,kind,first,second", [
    (T, "a | b", Beta, (T, "a"), (T, "b")),
    (T, "a -> b", Beta, (T, "~a"), (T, "b")),
    (T, "~(a & b)", Beta, (T, "~a"), (T, "~b")),
    (T, "~(a | b)", Alpha, (T, "~a"), (T, "~b")),
    (T, "~(a -> b)", Alpha, (T, "a"), (T, "~b")),
    (F, "a & b", Beta, (F, "a"), (F, "b")),
    (F, "a | b", Alpha, (F, "a"), (F, "b")),
    (F, "a -> b", Alpha, (F, "~a"), (F, "b")),
    (F, "~~a", Alpha, (F, "a"), (F, "a")),
    (F, "~(a & b)", Alpha, (F, "~a"), (F, "~b")),
    (F, "~(a | b)", Beta, (F, "~a"), (F, "~b")),
])
def test_classify_table(sign, text, kind, first, second):
    got = classify(SignedFormula(sign, parse_formula(text)))
    want = kind(SignedFormula(first[0], parse_formula(first[1])),
                SignedFormula(second[0], parse_formula(second[1])))
    assert got == want


@pytest.mark.parametrize("text", ["a", "~a"])
def test_literals(text):
    assert classify(SignedFormula(T, parse_formula(text))) is LITERAL
    assert classify(SignedFormula(F, parse_formula(text))) is LITERAL


def test_positive_atoms_examples():
    assert positive_atoms(And(a, Not(b))) == {"a"}
    assert positive_atoms(Not(Not(a))) == {"a"}
    assert positive_atoms(Implies(a, b)) == {"b"}


def test_variables_examples():
    assert variables([Or(a, b), Not(c)]) == {"a", "b", "c"}
    assert variables([]) == frozenset()
    assert variables([BOT]) == frozenset()


def test_canonical_removes_duplicates_and_orders():
    assert canonical([b, a, b]) == [a, b]


@given(formulas())
def test_print_parse_round_trip(f):
    assert parse_formula(str(f)) == f


@given(formulas())
def test_negation_flips_polarity(f):
    assert positive_atoms(Not(f)) == negative_atoms(f)
    assert negative_atoms(Not(f)) == positive_atoms(f)


@given(formulas(), formulas())
def test_implication_flips_only_the_antecedent(f, g):
    assert positive_atoms(Implies(f, g)) == negative_atoms(f) | positive_atoms(g)
