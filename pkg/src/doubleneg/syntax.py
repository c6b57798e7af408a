"""Propositional formulas and sequents: representation, parsing, printing.

Connectives are primitive: ``~`` (negation), ``&``, ``|``, ``->`` and the
constant ``_|_``.  Precedence, tightest first: ``~``, ``&``, ``|``, ``->``.
``&`` and ``|`` associate to the left, ``->`` to the right.  The Unicode
spellings ``¬ ∧ ∨ → ⊥`` (and ``⇒`` for the turnstile) are accepted on input.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Union

__all__ = [
    "Atom", "Bottom", "Neg", "And", "Or", "Imp", "Formula", "BOTTOM",
    "Sequent", "ParseError",
    "parse_formula", "parse_sequent", "render_formula", "render_sequent",
    "subformulas", "atoms", "connectives", "depth", "iff",
]


class ParseError(ValueError):
    """Syntax error; ``position`` is 1-based."""

    def __init__(self, message: str, position: int, expected: str = ""):
        self.position = position
        self.expected = expected
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __post_init__(self):
        if not _ATOM_RE.fullmatch(self.name):
            raise ValueError(f"bad atom name {self.name!r}")

    def __str__(self):
        return render_formula(self)


@dataclass(frozen=True, slots=True)
class Bottom:
    def __str__(self):
        return render_formula(self)


@dataclass(frozen=True, slots=True)
class Neg:
    body: "Formula"

    def __str__(self):
        return render_formula(self)


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return render_formula(self)


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return render_formula(self)


@dataclass(frozen=True, slots=True)
class Imp:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return render_formula(self)


Formula = Union[Atom, Bottom, Neg, And, Or, Imp]
BOTTOM = Bottom()
BINARY = (And, Or, Imp)


def iff(a: Formula, b: Formula) -> Formula:
    """Biconditional as the abbreviation (a -> b) & (b -> a)."""
    return And(Imp(a, b), Imp(b, a))


# ---------------------------------------------------------------------------
# printing

_PREC = {Imp: 1, Or: 2, And: 3, Neg: 4, Atom: 5, Bottom: 5}
_ASCII = {Neg: "~", And: " & ", Or: " | ", Imp: " -> ", Bottom: "_|_", "turnstile": "=>"}
_UNICODE = {Neg: "¬", And: " ∧ ", Or: " ∨ ", Imp: " → ", Bottom: "⊥", "turnstile": "⇒"}


@lru_cache(maxsize=65536)
def _render(f: Formula, unicode: bool) -> str:
    sym = _UNICODE if unicode else _ASCII
    kind = type(f)
    if kind is Atom:
        return f.name
    if kind is Bottom:
        return sym[Bottom]
    if kind is Neg:
        return sym[Neg] + _wrap(f.body, _PREC[Neg], unicode)
    prec = _PREC[kind]
    # -> is right-associative, & and | left-associative
    if kind is Imp:
        left = _wrap(f.left, prec + 1, unicode)
        right = _wrap(f.right, prec, unicode)
    else:
        left = _wrap(f.left, prec, unicode)
        right = _wrap(f.right, prec + 1, unicode)
    return left + sym[kind] + right


def _wrap(f: Formula, min_prec: int, unicode: bool) -> str:
    text = _render(f, unicode)
    return text if _PREC[type(f)] >= min_prec else f"({text})"


def render_formula(f: Formula, unicode: bool = False) -> str:
    """Canonical rendering with minimal parentheses."""
    return _render(f, unicode)


def formula_key(f: Formula) -> str:
    """Total order used to canonicalise multisets."""
    return _render(f, False)


# ---------------------------------------------------------------------------
# lexing and parsing

_ATOM_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<bot>_\|_|⊥)
  | (?P<turnstile>=>|⇒)
  | (?P<imp>->|→)
  | (?P<neg>~|¬)
  | (?P<and>&|∧)
  | (?P<or>\||∨)
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<comma>,)
  | (?P<atom>[A-Za-z][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

_DESCRIBE = {
    "bot": "'_|_'", "turnstile": "'=>'", "imp": "'->'", "neg": "'~'",
    "and": "'&'", "or": "'|'", "lpar": "'('", "rpar": "')'", "comma": "','",
    "atom": "atom", "eof": "end of input",
}
_FORMULA_START = "atom, '_|_', '~' or '('"


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str
    text: str
    pos: int  # 1-based


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", i + 1, _FORMULA_START)
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, m.group(), i + 1))
        i = m.end()
    tokens.append(_Token("eof", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.open_parens: list[int] = []

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected: str):
        tok = self.tok
        if tok.kind == "eof" and self.open_parens:
            raise ParseError("unclosed parenthesis", self.open_parens[-1], expected)
        if tok.kind == "eof":
            raise ParseError("unexpected end of input", tok.pos, expected)
        raise ParseError(f"unexpected {_DESCRIBE[tok.kind]}", tok.pos, expected)

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.tok.kind == "imp":
            self.advance()
            return Imp(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.tok.kind == "or":
            self.advance()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.tok.kind == "and":
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.tok
        if tok.kind == "neg":
            self.advance()
            return Neg(self.unary())
        if tok.kind == "atom":
            self.advance()
            return Atom(tok.text)
        if tok.kind == "bot":
            self.advance()
            return BOTTOM
        if tok.kind == "lpar":
            self.advance()
            self.open_parens.append(tok.pos)
            f = self.formula()
            if self.tok.kind != "rpar":
                self.fail("')'")
            self.advance()
            self.open_parens.pop()
            return f
        self.fail(_FORMULA_START)

    def formula_list(self, stop: set[str]) -> list[Formula]:
        if self.tok.kind in stop:
            return []
        items = [self.formula()]
        while self.tok.kind == "comma":
            self.advance()
            items.append(self.formula())
        return items


def parse_formula(text: str) -> Formula:
    if not text.strip():
        raise ParseError("empty formula", 1, _FORMULA_START)
    p = _Parser(text)
    f = p.formula()
    if p.tok.kind != "eof":
        p.fail("end of input or binary connective")
    return f


def parse_sequent(text: str) -> "Sequent":
    p = _Parser(text)
    turnstiles = [t for t in p.tokens if t.kind == "turnstile"]
    if not turnstiles:
        raise ParseError("missing '=>'", len(text) + 1, "'=>'")
    if len(turnstiles) > 1:
        raise ParseError("duplicate '=>'", turnstiles[1].pos, "a single '=>'")
    ant = p.formula_list({"turnstile"})
    if p.tok.kind != "turnstile":
        p.fail("',' or '=>'")
    p.advance()
    suc = p.formula_list({"eof"})
    if p.tok.kind != "eof":
        p.fail("',' or end of input")
    return Sequent(ant, suc)


# ---------------------------------------------------------------------------
# structure


def immediate_subformulas(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, Neg):
        return (f.body,)
    if isinstance(f, BINARY):
        return (f.left, f.right)
    return ()


def walk(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(immediate_subformulas(g)))


@lru_cache(maxsize=65536)
def subformulas(f: Formula) -> frozenset:
    """Reflexive-transitive closure of the immediate-subformula relation."""
    return frozenset(walk(f))


def atoms(*fs: Formula) -> list[str]:
    """Sorted atom names occurring in ``fs``."""
    return sorted({g.name for f in fs for g in walk(f) if isinstance(g, Atom)})


def connectives(f: Formula) -> int:
    return sum(1 for g in walk(f) if not isinstance(g, (Atom, Bottom)))


def depth(f: Formula) -> int:
    """Tree depth; atoms and ``_|_`` have depth 1."""
    subs = immediate_subformulas(f)
    return 1 + max(map(depth, subs)) if subs else 1


# ---------------------------------------------------------------------------
# sequents


def _canon(formulas: Iterable[Formula]) -> tuple[Formula, ...]:
    return tuple(sorted(formulas, key=formula_key))


@dataclass(frozen=True, slots=True)
class Sequent:
    """Pair of finite multisets.  Both sides are stored sorted, so ``==`` is
    multiset equality."""

    antecedent: tuple[Formula, ...] = ()
    succedent: tuple[Formula, ...] = ()

    def __init__(self, antecedent: Iterable[Formula] = (), succedent: Iterable[Formula] = ()):
        object.__setattr__(self, "antecedent", _canon(antecedent))
        object.__setattr__(self, "succedent", _canon(succedent))

    @classmethod
    def of(cls, text: str) -> "Sequent":
        return parse_sequent(text)

    @property
    def left(self) -> Counter:
        return Counter(self.antecedent)

    @property
    def right(self) -> Counter:
        return Counter(self.succedent)

    def formulas(self) -> tuple[Formula, ...]:
        return self.antecedent + self.succedent

    def __str__(self):
        return render_sequent(self)


def render_sequent(s: Sequent, unicode: bool = False) -> str:
    ant = ", ".join(render_formula(f, unicode) for f in s.antecedent)
    suc = ", ".join(render_formula(f, unicode) for f in s.succedent)
    turnstile = (_UNICODE if unicode else _ASCII)["turnstile"]
    return " ".join(part for part in (ant, turnstile, suc) if part)
