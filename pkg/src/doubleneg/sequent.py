"""Classical multiple-succedent sequent calculus.

Logical rules are context-sharing (additive) and carry no implicit
weakening; weakening and contraction are explicit rules, exchange is absorbed
by the multiset representation.  Cut splits contexts::

    G => D, C     C, S => P
    -----------------------  Cut
         G, S => D, P

Every node stores its principal formula (or cut formula) so that checking a
node never has to guess which occurrence a rule acted on.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .errors import InvalidProofError, ShapeError
from .syntax import (
    BOTTOM, And, Atom, Bottom, Formula, Imp, Neg, Or, Sequent,
    parse_formula, render_formula, render_sequent,
)


class SkRule(str, enum.Enum):
    Ax = "Ax"
    LBot = "LBot"
    LNeg = "LNeg"
    RNeg = "RNeg"
    LAnd = "LAnd"
    RAnd = "RAnd"
    LOr = "LOr"
    ROr = "ROr"
    LImp = "LImp"
    RImp = "RImp"
    LWeak = "LWeak"
    RWeak = "RWeak"
    LContr = "LContr"
    RContr = "RContr"
    Cut = "Cut"

    def __str__(self):
        return self.value


ARITY = {
    SkRule.Ax: 0, SkRule.LBot: 0,
    SkRule.LNeg: 1, SkRule.RNeg: 1, SkRule.LAnd: 1, SkRule.ROr: 1, SkRule.RImp: 1,
    SkRule.LWeak: 1, SkRule.RWeak: 1, SkRule.LContr: 1, SkRule.RContr: 1,
    SkRule.RAnd: 2, SkRule.LOr: 2, SkRule.LImp: 2, SkRule.Cut: 2,
}

# rule -> (connective of the principal formula, side it is introduced on)
LOGICAL = {
    SkRule.LNeg: (Neg, "L"), SkRule.RNeg: (Neg, "R"),
    SkRule.LAnd: (And, "L"), SkRule.RAnd: (And, "R"),
    SkRule.LOr: (Or, "L"), SkRule.ROr: (Or, "R"),
    SkRule.LImp: (Imp, "L"), SkRule.RImp: (Imp, "R"),
}
STRUCTURAL = {
    SkRule.LWeak: "L", SkRule.RWeak: "R", SkRule.LContr: "L", SkRule.RContr: "R",
}


@dataclass(frozen=True)
class SkProof:
    rule: SkRule
    conclusion: Sequent
    premises: tuple["SkProof", ...] = ()
    principal: Optional[Formula] = None
    cut_formula: Optional[Formula] = None
    _size: int = field(default=0, init=False, repr=False, compare=False)
    _height: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rule", SkRule(self.rule))
        object.__setattr__(self, "premises", tuple(self.premises))
        object.__setattr__(self, "_size", 1 + sum(p._size for p in self.premises))
        object.__setattr__(self, "_height", 1 + max((p._height for p in self.premises), default=0))

    @property
    def size(self) -> int:
        return self._size

    @property
    def height(self) -> int:
        return self._height

    def nodes(self, path: tuple = ()) -> Iterator[tuple[tuple, "SkProof"]]:
        """Pre-order (root first) traversal yielding ``(path, node)``."""
        yield path, self
        for i, p in enumerate(self.premises):
            yield from p.nodes(path + (i,))

    def at(self, path) -> "SkProof":
        node = self
        for i in path:
            node = node.premises[i]
        return node

    def replace_at(self, path, sub: "SkProof") -> "SkProof":
        if not path:
            return sub
        i, rest = path[0], path[1:]
        premises = list(self.premises)
        premises[i] = premises[i].replace_at(rest, sub)
        return SkProof(self.rule, self.conclusion, tuple(premises), self.principal, self.cut_formula)

    def pretty(self, unicode: bool = False, indent: int = 0) -> str:
        label = str(self.rule)
        if self.principal is not None:
            label += f" [{render_formula(self.principal, unicode)}]"
        if self.cut_formula is not None:
            label += f" [{render_formula(self.cut_formula, unicode)}]"
        lines = ["  " * indent + f"{render_sequent(self.conclusion, unicode)}    ({label})"]
        lines += [p.pretty(unicode, indent + 1) for p in self.premises]
        return "\n".join(lines)


class RuleMismatch(Exception):
    pass


# ---------------------------------------------------------------------------
# forward rule application


def _take(side: Counter, f: Formula, where: str) -> Counter:
    if side[f] <= 0:
        raise RuleMismatch(f"{render_formula(f)} is not in the {where}")
    out = side.copy()
    out[f] -= 1
    return +out


def _add(side: Counter, *fs: Formula) -> Counter:
    out = side.copy()
    out.update(fs)
    return out


def _seq(left: Counter, right: Counter) -> Sequent:
    return Sequent(left.elements(), right.elements())


def _shape(principal, kind) -> None:
    if not isinstance(principal, kind):
        raise RuleMismatch(
            f"principal {render_formula(principal)} is not a {kind.__name__} formula")


def _ax(premises, x):
    return Sequent([x], [x])


def _lbot(premises, x):
    if not isinstance(x, Bottom):
        raise RuleMismatch("LBot principal must be _|_")
    return Sequent([BOTTOM], [])


def _lneg(premises, x):
    _shape(x, Neg)
    p = premises[0]
    return _seq(_add(p.left, x), _take(p.right, x.body, "premise succedent"))


def _rneg(premises, x):
    _shape(x, Neg)
    p = premises[0]
    return _seq(_take(p.left, x.body, "premise antecedent"), _add(p.right, x))


def _land(premises, x):
    _shape(x, And)
    p = premises[0]
    left = _take(_take(p.left, x.left, "premise antecedent"), x.right, "premise antecedent")
    return _seq(_add(left, x), p.right)


def _rand(premises, x):
    _shape(x, And)
    p, q = premises
    d1 = _take(p.right, x.left, "left premise succedent")
    d2 = _take(q.right, x.right, "right premise succedent")
    if p.left != q.left or d1 != d2:
        raise RuleMismatch("premise contexts differ")
    return _seq(p.left, _add(d1, x))


def _lor(premises, x):
    _shape(x, Or)
    p, q = premises
    g1 = _take(p.left, x.left, "left premise antecedent")
    g2 = _take(q.left, x.right, "right premise antecedent")
    if g1 != g2 or p.right != q.right:
        raise RuleMismatch("premise contexts differ")
    return _seq(_add(g1, x), p.right)


def _ror(premises, x):
    _shape(x, Or)
    p = premises[0]
    right = _take(_take(p.right, x.left, "premise succedent"), x.right, "premise succedent")
    return _seq(p.left, _add(right, x))


def _limp(premises, x):
    _shape(x, Imp)
    p, q = premises
    d1 = _take(p.right, x.left, "left premise succedent")
    g2 = _take(q.left, x.right, "right premise antecedent")
    if p.left != g2 or d1 != q.right:
        raise RuleMismatch("premise contexts differ")
    return _seq(_add(p.left, x), d1)


def _rimp(premises, x):
    _shape(x, Imp)
    p = premises[0]
    left = _take(p.left, x.left, "premise antecedent")
    return _seq(left, _add(_take(p.right, x.right, "premise succedent"), x))


def _lweak(premises, x):
    p = premises[0]
    return _seq(_add(p.left, x), p.right)


def _rweak(premises, x):
    p = premises[0]
    return _seq(p.left, _add(p.right, x))


def _lcontr(premises, x):
    p = premises[0]
    if p.left[x] < 2:
        raise RuleMismatch(f"premise antecedent lacks two copies of {render_formula(x)}")
    return _seq(_take(p.left, x, "premise antecedent"), p.right)


def _rcontr(premises, x):
    p = premises[0]
    if p.right[x] < 2:
        raise RuleMismatch(f"premise succedent lacks two copies of {render_formula(x)}")
    return _seq(p.left, _take(p.right, x, "premise succedent"))


def _cut(premises, c):
    p, q = premises
    return _seq(p.left + _take(q.left, c, "right premise antecedent"),
                _take(p.right, c, "left premise succedent") + q.right)


# Each entry maps premise sequents and the principal (or cut) formula to the
# conclusion the rule licenses.
RULES: dict[SkRule, Callable] = {
    SkRule.Ax: _ax, SkRule.LBot: _lbot,
    SkRule.LNeg: _lneg, SkRule.RNeg: _rneg,
    SkRule.LAnd: _land, SkRule.RAnd: _rand,
    SkRule.LOr: _lor, SkRule.ROr: _ror,
    SkRule.LImp: _limp, SkRule.RImp: _rimp,
    SkRule.LWeak: _lweak, SkRule.RWeak: _rweak,
    SkRule.LContr: _lcontr, SkRule.RContr: _rcontr,
    SkRule.Cut: _cut,
}


class _Side:
    """Counter views of a sequent, as the rule functions expect."""

    __slots__ = ("left", "right")

    def __init__(self, s: Sequent):
        self.left = Counter(s.antecedent)
        self.right = Counter(s.succedent)


def infer(rule, premises=(), principal: Formula = None, cut_formula: Formula = None) -> SkProof:
    """Apply ``rule`` forward to the given subproofs.

    Raises ``RuleMismatch`` when the rule does not apply.
    """
    rule = SkRule(rule)
    premises = tuple(premises)
    if len(premises) != ARITY[rule]:
        raise RuleMismatch(f"{rule} takes {ARITY[rule]} premises, got {len(premises)}")
    formula = cut_formula if rule is SkRule.Cut else principal
    if formula is None:
        raise RuleMismatch(f"{rule} needs a {'cut' if rule is SkRule.Cut else 'principal'} formula")
    conclusion = RULES[rule]([_Side(p.conclusion) for p in premises], formula)
    if rule is SkRule.Cut:
        return SkProof(rule, conclusion, premises, None, cut_formula)
    return SkProof(rule, conclusion, premises, principal)


def ax(f) -> SkProof:
    if isinstance(f, str):
        f = parse_formula(f)
    return infer(SkRule.Ax, (), f)


def lbot() -> SkProof:
    return infer(SkRule.LBot, (), BOTTOM)


def cut(left: SkProof, right: SkProof, c: Formula) -> SkProof:
    return infer(SkRule.Cut, (left, right), cut_formula=c)


# ---------------------------------------------------------------------------
# checking


@dataclass(frozen=True)
class Violation:
    path: tuple
    rule: str
    message: str

    def __str__(self):
        where = "root" if not self.path else "node " + ".".join(map(str, self.path))
        return f"{where} ({self.rule}): {self.message}"


@dataclass(frozen=True)
class CheckReport:
    valid: bool
    endsequent: Sequent
    violation: Optional[Violation] = None

    def __bool__(self):
        return self.valid


def _check_node(node: SkProof) -> Optional[str]:
    rule = node.rule
    if len(node.premises) != ARITY[rule]:
        return f"arity: {rule} takes {ARITY[rule]} premises, got {len(node.premises)}"
    if rule is SkRule.Cut:
        if node.cut_formula is None:
            return "Cut node has no cut formula"
        if node.principal is not None:
            return "Cut node must not carry a principal formula"
        formula = node.cut_formula
    else:
        if node.principal is None:
            return f"{rule} node has no principal formula"
        if node.cut_formula is not None:
            return f"{rule} node must not carry a cut formula"
        formula = node.principal
    try:
        expected = RULES[rule]([_Side(p.conclusion) for p in node.premises], formula)
    except RuleMismatch as exc:
        return str(exc)
    if expected != node.conclusion:
        return (f"{rule} on {render_formula(formula)} yields {render_sequent(expected)!r}, "
                f"not {render_sequent(node.conclusion)!r}")
    return None


def check_sk_proof(p: SkProof) -> CheckReport:
    """Check every node against its rule schema; report the first failure in
    root-first order."""
    for path, node in p.nodes():
        problem = _check_node(node)
        if problem:
            return CheckReport(False, p.conclusion, Violation(path, str(node.rule), problem))
    return CheckReport(True, p.conclusion)


# ---------------------------------------------------------------------------
# the derivations


def dni_proof(a: Formula) -> SkProof:
    """a => ~~a: Ax, then LNeg on ~a, then RNeg on ~~a."""
    return infer(SkRule.RNeg, [infer(SkRule.LNeg, [ax(a)], Neg(a))], Neg(Neg(a)))


def dne_proof(a: Formula) -> SkProof:
    """~~a => a: Ax, then RNeg on ~a, then LNeg on ~~a."""
    return infer(SkRule.LNeg, [infer(SkRule.RNeg, [ax(a)], Neg(a))], Neg(Neg(a)))


def derivation_catalog() -> dict[str, SkProof]:
    """The DNI and DNE derivations and the cut joining them.

    With split-context cut, cutting ``A => ~~A`` against ``~~A => A`` lands
    directly on ``A => A``; no contraction step is needed.
    """
    a = Atom("A")
    dni, dne = dni_proof(a), dne_proof(a)
    return {
        "sk-dni": dni,
        "sk-dne": dne,
        "sk-cut-roundtrip": cut(dni, dne, Neg(Neg(a))),
    }


# ---------------------------------------------------------------------------
# admissible transformations

TRANSFORMS = ("raa-assert", "raa-deny", "dni-ctx", "dne-ctx")


def _require_valid(p: SkProof) -> None:
    report = check_sk_proof(p)
    if not report.valid:
        raise InvalidProofError(report)


def _pick(candidates, chosen: Optional[Formula], pattern: str) -> Formula:
    if chosen is not None:
        if chosen not in candidates:
            raise ShapeError(f"expected endsequent of the form {pattern} "
                             f"with {render_formula(chosen)} in the antecedent")
        return chosen
    if not candidates:
        raise ShapeError(f"expected endsequent of the form {pattern}")
    return candidates[0]


def admissible_transform(kind: str, p: SkProof, formula: Optional[Formula] = None) -> SkProof:
    """Extend ``p`` into a proof of the transformed endsequent.

    ``raa-assert``  ~A, G => _|_   to  G => A
    ``raa-deny``     A, G => _|_   to  G => ~A
    ``dni-ctx``      G => A        to  G => ~~A
    ``dne-ctx``      G => ~~A      to  G => A

    For the two RAA forms ``formula`` names the antecedent member acted on
    (``~A`` resp. ``A``); by default the first suitable member in canonical
    order is used.
    """
    if kind not in TRANSFORMS:
        raise ValueError(f"unknown transform {kind!r}; expected one of {', '.join(TRANSFORMS)}")
    _require_valid(p)
    s = p.conclusion

    if kind in ("raa-assert", "raa-deny"):
        if s.succedent != (BOTTOM,):
            pattern = "~A, G => _|_" if kind == "raa-assert" else "A, G => _|_"
            raise ShapeError(f"expected endsequent of the form {pattern}, got {render_sequent(s)}")
        # G, X => _|_   cut against _|_ =>   gives   G, X =>
        emptied = cut(p, lbot(), BOTTOM)
        if kind == "raa-deny":
            x = _pick(list(dict.fromkeys(s.antecedent)), formula, "A, G => _|_")
            return infer(SkRule.RNeg, [emptied], Neg(x))
        negs = [f for f in dict.fromkeys(s.antecedent) if isinstance(f, Neg)]
        x = _pick(negs, formula, "~A, G => _|_")
        # => A, ~A   cut against   ~A, G =>
        excluded = infer(SkRule.RNeg, [ax(x.body)], x)
        return cut(excluded, emptied, x)

    if len(s.succedent) != 1:
        pattern = "G => A" if kind == "dni-ctx" else "G => ~~A"
        raise ShapeError(f"expected single-succedent endsequent {pattern}, got {render_sequent(s)}")
    (a,) = s.succedent
    if kind == "dni-ctx":
        return infer(SkRule.RNeg, [infer(SkRule.LNeg, [p], Neg(a))], Neg(Neg(a)))
    if not (isinstance(a, Neg) and isinstance(a.body, Neg)):
        raise ShapeError(f"expected endsequent of the form G => ~~A, got {render_sequent(s)}")
    return cut(p, dne_proof(a.body.body), a)


def normalize_succedent(s: Sequent, direction: str) -> Sequent:
    """Convert between an empty succedent and the succedent ``_|_``."""
    if direction == "to-bottom":
        if s.succedent:
            raise ShapeError(f"to-bottom needs an empty succedent, got {render_sequent(s)}")
        return Sequent(s.antecedent, [BOTTOM])
    if direction == "to-empty":
        if s.succedent != (BOTTOM,):
            raise ShapeError(f"to-empty needs succedent exactly _|_, got {render_sequent(s)}")
        return Sequent(s.antecedent, [])
    raise ValueError(f"unknown direction {direction!r}")
