"""Propositional formulas, signed formulas and sequents.

Formulas are immutable and hashable; structural equality is used for all
set membership.  Sets of formulas are iterated in a canonical order given
by :func:`sort_key` (the printed form), so every derived artefact is
deterministic.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Union


class Formula:
    __slots__ = ("_hash", "_text", "_size")

    def _init(self, *parts) -> None:
        object.__setattr__(self, "_hash", hash((type(self).__name__,) + parts))
        object.__setattr__(self, "_text", None)
        object.__setattr__(self, "_size", None)

    def __setattr__(self, name, value):
        raise AttributeError("formulas are immutable")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if type(self) is not type(other) or self._hash != other._hash:
            return False
        return self._fields() == other._fields()

    def __ne__(self, other) -> bool:
        return not self == other

    def __lt__(self, other: "Formula") -> bool:
        return sort_key(self) < sort_key(other)

    def _fields(self) -> tuple:
        return ()

    def __str__(self) -> str:
        if self._text is None:
            object.__setattr__(self, "_text", _show(self, 1))
        return self._text

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"

    @property
    def size(self) -> int:
        """Number of symbol occurrences (atoms, constants, connectives)."""
        if self._size is None:
            object.__setattr__(self, "_size", 1 + sum(c.size for c in self.children()))
        return self._size

    def children(self) -> tuple["Formula", ...]:
        return ()

    def __reduce__(self):
        return (type(self), self._fields())


class Atom(Formula):
    __slots__ = ("name",)

    def __init__(self, name: str):
        if not isinstance(name, str) or not ATOM_RE.fullmatch(name) or name in KEYWORDS:
            raise ValueError(f"invalid atom name {name!r}")
        object.__setattr__(self, "name", name)
        self._init(name)

    def _fields(self) -> tuple:
        return (self.name,)


class Bottom(Formula):
    __slots__ = ()

    def __init__(self):
        self._init()


class Top(Formula):
    __slots__ = ()

    def __init__(self):
        self._init()


class Not(Formula):
    __slots__ = ("child",)

    def __init__(self, child: Formula):
        object.__setattr__(self, "child", child)
        self._init(child._hash)

    def _fields(self) -> tuple:
        return (self.child,)

    def children(self):
        return (self.child,)


class _Binary(Formula):
    __slots__ = ("left", "right")

    def __init__(self, left: Formula, right: Formula):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        self._init(left._hash, right._hash)

    def _fields(self) -> tuple:
        return (self.left, self.right)

    def children(self):
        return (self.left, self.right)


class And(_Binary):
    __slots__ = ()


class Or(_Binary):
    __slots__ = ()


class Implies(_Binary):
    __slots__ = ()


BOT = Bottom()
TOP = Top()

ATOM_RE = re.compile(r"[a-z][a-z0-9_]*")
KEYWORDS = frozenset({"bot", "top"})


def sort_key(f: Formula) -> str:
    return str(f)


def canonical(fs: Iterable[Formula]) -> list[Formula]:
    """The formulas of ``fs`` in canonical order, without duplicates."""
    return sorted(set(fs), key=sort_key)


# -- printing ---------------------------------------------------------------

_IMP, _OR, _AND, _UNARY = 1, 2, 3, 4


def _show(f: Formula, ctx: int) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Bottom):
        return "bot"
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Not):
        return "~" + _show(f.child, _UNARY)
    if isinstance(f, And):
        text, level = f"{_show(f.left, _AND)} & {_show(f.right, _UNARY)}", _AND
    elif isinstance(f, Or):
        text, level = f"{_show(f.left, _OR)} | {_show(f.right, _AND)}", _OR
    elif isinstance(f, Implies):
        text, level = f"{_show(f.left, _OR)} -> {_show(f.right, _IMP)}", _IMP
    else:
        raise TypeError(f"not a formula: {f!r}")
    return f"({text})" if ctx > level else text


# -- parsing ----------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_TOKEN_RE = re.compile(r"\s*(?:(\|-m|\|-|->|[|&~(),])|([a-z][a-z0-9_]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1):
            tokens.append(("op", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("id", m.group(2), m.start(2)))
        elif m.group(3):
            raise ParseError(f"unexpected character {m.group(3)!r}", m.start(3))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at(self, value: str) -> bool:
        kind, val, _ = self.peek()
        return kind == "op" and val == value

    def expect(self, value: str) -> None:
        if not self.at(value):
            _, val, pos = self.peek()
            raise ParseError(f"expected {value!r} but found {val or 'end of input'!r}", pos)
        self.take()

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.take()
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.at("|"):
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.at("&"):
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind, val, pos = self.take()
        if kind == "op" and val == "~":
            return Not(self.unary())
        if kind == "op" and val == "(":
            f = self.formula()
            self.expect(")")
            return f
        if kind == "id":
            if val == "bot":
                return BOT
            if val == "top":
                return TOP
            return Atom(val)
        raise ParseError(f"expected a formula but found {val or 'end of input'!r}", pos)

    def formula_list(self) -> list[Formula]:
        fs = [self.formula()]
        while self.at(","):
            self.take()
            fs.append(self.formula())
        return fs

    def finish(self) -> None:
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)


def parse_formula(text: str) -> Formula:
    """Parse a formula such as ``"a -> (b | ~c)"``.

    ``|`` and ``&`` associate to the left, ``->`` to the right.
    """
    p = _Parser(text)
    f = p.formula()
    p.finish()
    return f


# -- signed formulas ----------------------------------------------------------

T, F = "T", "F"


@dataclass(frozen=True)
class SignedFormula:
    sign: str
    formula: Formula

    def __post_init__(self):
        if self.sign not in (T, F):
            raise ValueError(f"sign must be 'T' or 'F', got {self.sign!r}")

    def __str__(self) -> str:
        inner = str(self.formula)
        if isinstance(self.formula, (And, Or, Implies)):
            inner = f"({inner})"
        return self.sign + inner


@dataclass(frozen=True)
class Alpha:
    first: SignedFormula
    second: SignedFormula


@dataclass(frozen=True)
class Beta:
    first: SignedFormula
    second: SignedFormula


class _LiteralType:
    __slots__ = ()

    def __repr__(self) -> str:
        return "LITERAL"


LITERAL = _LiteralType()

Classification = Union[Alpha, Beta, _LiteralType]


@lru_cache(maxsize=None)
def classify(sf: SignedFormula) -> Classification:
    """α/β classification by sign and top connective.

    Anything without a row in the table (signed atoms, negated atoms,
    constants and their negations) is a literal.
    """
    s, f = sf.sign, sf.formula
    t = lambda g: SignedFormula(T, g)  # noqa: E731
    fl = lambda g: SignedFormula(F, g)  # noqa: E731
    if isinstance(f, And):
        a, b = f.left, f.right
        return Alpha(t(a), t(b)) if s == T else Beta(fl(a), fl(b))
    if isinstance(f, Or):
        a, b = f.left, f.right
        return Beta(t(a), t(b)) if s == T else Alpha(fl(a), fl(b))
    if isinstance(f, Implies):
        a, b = f.left, f.right
        return Beta(t(Not(a)), t(b)) if s == T else Alpha(fl(Not(a)), fl(b))
    if isinstance(f, Not):
        g = f.child
        if isinstance(g, Not):
            inner = SignedFormula(s, g.child)
            return Alpha(inner, inner)
        if isinstance(g, And):
            a, b = g.left, g.right
            if s == T:
                return Beta(t(Not(a)), t(Not(b)))
            return Alpha(fl(Not(a)), fl(Not(b)))
        if isinstance(g, Or):
            a, b = g.left, g.right
            if s == T:
                return Alpha(t(Not(a)), t(Not(b)))
            return Beta(fl(Not(a)), fl(Not(b)))
        if isinstance(g, Implies):
            a, b = g.left, g.right
            if s == T:
                return Alpha(t(a), t(Not(b)))
            return Beta(fl(a), fl(Not(b)))
    return LITERAL


def is_literal(sf: SignedFormula) -> bool:
    return classify(sf) is LITERAL


# -- polarity and atoms ---------------------------------------------------------

@lru_cache(maxsize=None)
def _polarity(f: Formula) -> tuple[frozenset[str], frozenset[str]]:
    if isinstance(f, Atom):
        return frozenset({f.name}), frozenset()
    if isinstance(f, Not):
        pos, neg = _polarity(f.child)
        return neg, pos
    if isinstance(f, (And, Or)):
        lp, ln = _polarity(f.left)
        rp, rn = _polarity(f.right)
        return lp | rp, ln | rn
    if isinstance(f, Implies):
        lp, ln = _polarity(f.left)
        rp, rn = _polarity(f.right)
        return ln | rp, lp | rn
    return frozenset(), frozenset()


def positive_atoms(f: Formula) -> frozenset[str]:
    """Atoms with at least one positive occurrence in ``f``.

    Polarity flips under ``~`` and in the antecedent of ``->``.
    """
    return _polarity(f)[0]


def negative_atoms(f: Formula) -> frozenset[str]:
    return _polarity(f)[1]


@lru_cache(maxsize=None)
def atoms(f: Formula) -> frozenset[str]:
    if isinstance(f, Atom):
        return frozenset({f.name})
    out: frozenset[str] = frozenset()
    for c in f.children():
        out |= atoms(c)
    return out


def variables(fs: Iterable[Formula]) -> frozenset[str]:
    """All atom names occurring in the formulas ``fs``."""
    out: set[str] = set()
    for f in fs:
        out |= atoms(f)
    return frozenset(out)


def subformulas(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(g.children())


def has_constants(f: Formula) -> bool:
    return any(isinstance(g, (Bottom, Top)) for g in subformulas(f))


def conjoin(fs: Iterable[Formula]) -> Formula:
    """Left-associated conjunction over the canonical order; ``top`` if empty."""
    items = canonical(fs)
    if not items:
        return TOP
    out = items[0]
    for g in items[1:]:
        out = And(out, g)
    return out


def disjoin(fs: Iterable[Formula]) -> Formula:
    """Left-associated disjunction over the canonical order; ``bot`` if empty."""
    items = canonical(fs)
    if not items:
        return BOT
    out = items[0]
    for g in items[1:]:
        out = Or(out, g)
    return out


def conjoin_atoms(names: Iterable[str]) -> Formula:
    return conjoin(Atom(n) for n in names)


# -- sequents -------------------------------------------------------------------

CLASSICAL, MINIMAL = "classical", "minimal"


@dataclass(frozen=True)
class Sequent:
    antecedent: frozenset
    succedent: frozenset
    kind: str = CLASSICAL

    def __post_init__(self):
        object.__setattr__(self, "antecedent", frozenset(self.antecedent))
        object.__setattr__(self, "succedent", frozenset(self.succedent))
        if self.kind not in (CLASSICAL, MINIMAL):
            raise ValueError(f"unknown sequent kind {self.kind!r}")

    @property
    def minimal(self) -> bool:
        return self.kind == MINIMAL

    @property
    def size(self) -> int:
        return sum(f.size for f in self.antecedent) + sum(f.size for f in self.succedent)

    def formulas(self) -> frozenset:
        return self.antecedent | self.succedent

    def __str__(self) -> str:
        left = ", ".join(str(f) for f in canonical(self.antecedent))
        right = ", ".join(str(f) for f in canonical(self.succedent))
        turnstile = "|-m" if self.minimal else "|-"
        return " ".join(x for x in (left, turnstile, right) if x)


def sequent(ant: Iterable[Formula], suc: Iterable[Formula], kind: str = CLASSICAL) -> Sequent:
    return Sequent(frozenset(ant), frozenset(suc), kind)


def parse_sequent(text: str) -> Sequent:
    """Parse ``"G1, G2 |- D1"`` (classical) or ``"G |-m D"`` (minimal)."""
    p = _Parser(text)
    left: list[Formula] = []
    if not (p.at("|-") or p.at("|-m")):
        left = p.formula_list()
    kind_tok = p.peek()
    if not (p.at("|-") or p.at("|-m")):
        raise ParseError("expected '|-' or '|-m'", kind_tok[2])
    p.take()
    kind = MINIMAL if kind_tok[1] == "|-m" else CLASSICAL
    right: list[Formula] = []
    if p.peek()[0] != "end":
        right = p.formula_list()
    p.finish()
    return Sequent(frozenset(left), frozenset(right), kind)
