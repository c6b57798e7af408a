"""Natural deduction with labelled hypotheses.

A hypothesis leaf ``Hyp`` carries a formula and an optional label.  A
discharging node (``ImpI``, ``NegI``, ``Raa``, ``OrE``) names one label and
closes every hypothesis with that label that is still open in the premises it
scopes over; zero closed hypotheses (vacuous discharge) is allowed.  Inner
binders shadow outer ones.

``NegE`` takes its two premises in either order; one must conclude the
negation of the other.  ``MacroDnI``/``MacroDnE`` are the compressed
double-negation rules and unfold through :func:`expand_macros`.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .syntax import BOTTOM, And, Atom, Bottom, Formula, Imp, Neg, Or, formula_key, render_formula

INTUITIONISTIC = "intuitionistic"
CLASSICAL = "classical"
MODES = (INTUITIONISTIC, CLASSICAL)


class NdRule(str, enum.Enum):
    Hyp = "Hyp"
    AndI = "AndI"
    AndE1 = "AndE1"
    AndE2 = "AndE2"
    OrI1 = "OrI1"
    OrI2 = "OrI2"
    OrE = "OrE"
    ImpI = "ImpI"
    ImpE = "ImpE"
    NegI = "NegI"
    NegE = "NegE"
    BotE = "BotE"
    Raa = "Raa"
    MacroDnI = "MacroDnI"
    MacroDnE = "MacroDnE"

    def __str__(self):
        return self.value


ARITY = {
    NdRule.Hyp: 0, NdRule.AndI: 2, NdRule.AndE1: 1, NdRule.AndE2: 1,
    NdRule.OrI1: 1, NdRule.OrI2: 1, NdRule.OrE: 3, NdRule.ImpI: 1, NdRule.ImpE: 2,
    NdRule.NegI: 1, NdRule.NegE: 2, NdRule.BotE: 1, NdRule.Raa: 1,
    NdRule.MacroDnI: 1, NdRule.MacroDnE: 1,
}
DISCHARGING = {NdRule.ImpI, NdRule.NegI, NdRule.Raa, NdRule.OrE}
CLASSICAL_ONLY = {NdRule.Raa, NdRule.MacroDnE}
MACROS = {NdRule.MacroDnI, NdRule.MacroDnE}


@dataclass(frozen=True)
class NdProof:
    rule: NdRule
    conclusion: Formula
    premises: tuple["NdProof", ...] = ()
    label: Optional[str] = None
    discharge: Optional[str] = None
    _size: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rule", NdRule(self.rule))
        object.__setattr__(self, "premises", tuple(self.premises))
        object.__setattr__(self, "_size", 1 + sum(p._size for p in self.premises))

    @property
    def size(self) -> int:
        return self._size

    def nodes(self, path: tuple = ()) -> Iterator[tuple[tuple, "NdProof"]]:
        yield path, self
        for i, p in enumerate(self.premises):
            yield from p.nodes(path + (i,))

    def postorder(self, path: tuple = ()) -> Iterator[tuple[tuple, "NdProof"]]:
        for i, p in enumerate(self.premises):
            yield from p.postorder(path + (i,))
        yield path, self

    def at(self, path) -> "NdProof":
        node = self
        for i in path:
            node = node.premises[i]
        return node

    def replace_at(self, path, sub: "NdProof") -> "NdProof":
        if not path:
            return sub
        premises = list(self.premises)
        premises[path[0]] = premises[path[0]].replace_at(path[1:], sub)
        return self.with_premises(premises)

    def with_premises(self, premises) -> "NdProof":
        return NdProof(self.rule, self.conclusion, tuple(premises), self.label, self.discharge)

    def pretty(self, unicode: bool = False, indent: int = 0) -> str:
        tag = str(self.rule)
        if self.rule is NdRule.Hyp and self.label is not None:
            tag += f" ^{self.label}"
        if self.discharge is not None:
            tag += f" /{self.discharge}"
        lines = ["  " * indent + f"{render_formula(self.conclusion, unicode)}    ({tag})"]
        lines += [p.pretty(unicode, indent + 1) for p in self.premises]
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# constructors


def hyp(f: Formula, label: Optional[str] = None) -> NdProof:
    return NdProof(NdRule.Hyp, f, (), label=label)


def and_i(d1: NdProof, d2: NdProof) -> NdProof:
    return NdProof(NdRule.AndI, And(d1.conclusion, d2.conclusion), (d1, d2))


def and_e(d: NdProof, side: int) -> NdProof:
    c = d.conclusion
    return NdProof(NdRule.AndE1 if side == 1 else NdRule.AndE2, c.left if side == 1 else c.right, (d,))


def or_i(d: NdProof, other: Formula, side: int) -> NdProof:
    if side == 1:
        return NdProof(NdRule.OrI1, Or(d.conclusion, other), (d,))
    return NdProof(NdRule.OrI2, Or(other, d.conclusion), (d,))


def or_e(major: NdProof, left: NdProof, right: NdProof, label: str) -> NdProof:
    return NdProof(NdRule.OrE, left.conclusion, (major, left, right), discharge=label)


def imp_i(d: NdProof, antecedent: Formula, label: str) -> NdProof:
    return NdProof(NdRule.ImpI, Imp(antecedent, d.conclusion), (d,), discharge=label)


def imp_e(major: NdProof, minor: NdProof) -> NdProof:
    return NdProof(NdRule.ImpE, major.conclusion.right, (major, minor))


def neg_i(d: NdProof, body: Formula, label: str) -> NdProof:
    return NdProof(NdRule.NegI, Neg(body), (d,), discharge=label)


def neg_e(minor: NdProof, major: NdProof) -> NdProof:
    return NdProof(NdRule.NegE, BOTTOM, (minor, major))


def bot_e(d: NdProof, goal: Formula) -> NdProof:
    return NdProof(NdRule.BotE, goal, (d,))


def raa(d: NdProof, goal: Formula, label: str) -> NdProof:
    return NdProof(NdRule.Raa, goal, (d,), discharge=label)


def dn_i(d: NdProof) -> NdProof:
    return NdProof(NdRule.MacroDnI, Neg(Neg(d.conclusion)), (d,))


def dn_e(d: NdProof) -> NdProof:
    return NdProof(NdRule.MacroDnE, d.conclusion.body.body, (d,))


# ---------------------------------------------------------------------------
# scoping


def bound_premises(node: NdProof) -> tuple[int, ...]:
    """Indices of the premises in which ``node.discharge`` binds."""
    if node.rule in (NdRule.ImpI, NdRule.NegI, NdRule.Raa):
        return (0,)
    if node.rule is NdRule.OrE:
        return (1, 2)
    return ()


def discharged_formula(node: NdProof, index: int) -> Optional[Formula]:
    """The hypothesis formula ``node`` discharges in premise ``index``."""
    c = node.conclusion
    if node.rule is NdRule.ImpI and isinstance(c, Imp):
        return c.left
    if node.rule is NdRule.NegI and isinstance(c, Neg):
        return c.body
    if node.rule is NdRule.Raa:
        return Neg(c)
    if node.rule is NdRule.OrE:
        major = node.premises[0].conclusion if node.premises else None
        if isinstance(major, Or):
            return major.left if index == 1 else major.right
    return None


def free_hyps(p: NdProof, path: tuple = ()) -> list[tuple[tuple, NdProof]]:
    """Hypothesis leaves of ``p`` not closed by a binder inside ``p``."""
    if p.rule is NdRule.Hyp:
        return [(path, p)]
    out = []
    scoped = bound_premises(p)
    for i, q in enumerate(p.premises):
        for hpath, h in free_hyps(q, path + (i,)):
            if i in scoped and h.label is not None and h.label == p.discharge:
                continue
            out.append((hpath, h))
    return out


def open_assumptions(p: NdProof) -> tuple[Formula, ...]:
    """Multiset of open hypotheses, canonically sorted."""
    return tuple(sorted((h.conclusion for _, h in free_hyps(p)), key=formula_key))


def free_labels(p: NdProof) -> set[str]:
    return {h.label for _, h in free_hyps(p) if h.label is not None}


def all_labels(p: NdProof) -> set[str]:
    labels = set()
    for _, n in p.nodes():
        if n.label is not None:
            labels.add(n.label)
        if n.discharge is not None:
            labels.add(n.discharge)
    return labels


def fresh_label(taken: set[str], stem: str = "h") -> str:
    for i in itertools.count(1):
        name = f"{stem}{i}"
        if name not in taken:
            return name


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
class NdCheckReport:
    valid: bool
    conclusion: Formula
    open_assumptions: tuple[Formula, ...]
    violation: Optional[Violation] = None
    mode: str = CLASSICAL

    def __bool__(self):
        return self.valid


class _Bad(Exception):
    pass


def _need(cond: bool, message: str) -> None:
    if not cond:
        raise _Bad(message)


def _f(x: Formula) -> str:
    return render_formula(x)


def _check_local(n: NdProof) -> None:
    rule, c, ps = n.rule, n.conclusion, [p.conclusion for p in n.premises]
    _need(len(ps) == ARITY[rule], f"arity: {rule} takes {ARITY[rule]} premises, got {len(ps)}")
    if rule in DISCHARGING:
        _need(n.discharge is not None, f"{rule} needs a discharge label")
    else:
        _need(n.discharge is None, f"{rule} does not discharge")
    if rule is not NdRule.Hyp:
        _need(n.label is None, f"only Hyp nodes carry a label")

    if rule is NdRule.Hyp:
        return
    if rule is NdRule.AndI:
        _need(c == And(ps[0], ps[1]), f"AndI of {_f(ps[0])} and {_f(ps[1])} cannot conclude {_f(c)}")
    elif rule in (NdRule.AndE1, NdRule.AndE2):
        _need(isinstance(ps[0], And), f"{rule} premise {_f(ps[0])} is not a conjunction")
        part = ps[0].left if rule is NdRule.AndE1 else ps[0].right
        _need(c == part, f"{rule} of {_f(ps[0])} cannot conclude {_f(c)}")
    elif rule in (NdRule.OrI1, NdRule.OrI2):
        _need(isinstance(c, Or), f"{rule} conclusion {_f(c)} is not a disjunction")
        part = c.left if rule is NdRule.OrI1 else c.right
        _need(ps[0] == part, f"{rule} of {_f(ps[0])} cannot conclude {_f(c)}")
    elif rule is NdRule.OrE:
        _need(isinstance(ps[0], Or), f"OrE major premise {_f(ps[0])} is not a disjunction")
        _need(ps[1] == c and ps[2] == c, f"OrE minor premises must both conclude {_f(c)}")
    elif rule is NdRule.ImpI:
        _need(isinstance(c, Imp) and c.right == ps[0],
              f"ImpI from {_f(ps[0])} cannot conclude {_f(c)}")
    elif rule is NdRule.ImpE:
        _need(isinstance(ps[0], Imp), f"ImpE major premise {_f(ps[0])} is not an implication")
        _need(ps[1] == ps[0].left, f"ImpE minor premise {_f(ps[1])} does not match {_f(ps[0].left)}")
        _need(c == ps[0].right, f"ImpE of {_f(ps[0])} cannot conclude {_f(c)}")
    elif rule is NdRule.NegI:
        _need(isinstance(c, Neg), f"NegI conclusion {_f(c)} is not a negation")
        _need(isinstance(ps[0], Bottom), "NegI premise must be _|_")
    elif rule is NdRule.NegE:
        _need(ps[1] == Neg(ps[0]) or ps[0] == Neg(ps[1]),
              f"NegE premises {_f(ps[0])} and {_f(ps[1])} are not a formula and its negation")
        _need(isinstance(c, Bottom), "NegE concludes _|_")
    elif rule in (NdRule.BotE, NdRule.Raa):
        _need(isinstance(ps[0], Bottom), f"{rule} premise must be _|_")
    elif rule is NdRule.MacroDnI:
        _need(c == Neg(Neg(ps[0])), f"MacroDnI of {_f(ps[0])} cannot conclude {_f(c)}")
    elif rule is NdRule.MacroDnE:
        _need(ps[0] == Neg(Neg(c)), f"MacroDnE of {_f(ps[0])} cannot conclude {_f(c)}")

    for i in bound_premises(n):
        want = discharged_formula(n, i)
        for _, h in free_hyps(n.premises[i]):
            if h.label == n.discharge:
                _need(h.conclusion == want,
                      f"label {n.discharge} binds hypothesis {_f(h.conclusion)}, expected {_f(want)}")


def check_nd_proof(p: NdProof, mode: str = CLASSICAL) -> NdCheckReport:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    opens = open_assumptions(p)
    for path, n in p.nodes():
        try:
            _check_local(n)
            if mode == INTUITIONISTIC and n.rule in CLASSICAL_ONLY:
                raise _Bad("classical-only rule")
        except _Bad as exc:
            return NdCheckReport(False, p.conclusion, opens, Violation(path, str(n.rule), str(exc)), mode)
    return NdCheckReport(True, p.conclusion, opens, None, mode)


def is_classical_only(p: NdProof) -> bool:
    return any(n.rule in CLASSICAL_ONLY for _, n in p.nodes())


# ---------------------------------------------------------------------------
# macros


def expand_macros(p: NdProof) -> NdProof:
    """Unfold MacroDnI/MacroDnE into NegI/NegE and Raa/NegE.

    ``MacroDnI(d)`` becomes ``NegI^l(NegE(d, [~A]^l))`` and ``MacroDnE(e)``
    becomes ``Raa^m(NegE([~A]^m, e))``; labels are fresh for the whole proof.
    """
    if not any(n.rule in MACROS for _, n in p.nodes()):
        return p
    taken = all_labels(p)

    def fresh() -> str:
        name = fresh_label(taken, "dn")
        taken.add(name)
        return name

    def go(n: NdProof) -> NdProof:
        premises = [go(q) for q in n.premises]
        if n.rule is NdRule.MacroDnI:
            (d,) = premises
            l = fresh()
            return neg_i(neg_e(d, hyp(Neg(d.conclusion), l)), Neg(d.conclusion), l)
        if n.rule is NdRule.MacroDnE:
            (e,) = premises
            m = fresh()
            return raa(neg_e(hyp(Neg(n.conclusion), m), e), n.conclusion, m)
        return n.with_premises(premises) if premises else n

    return go(p)


# ---------------------------------------------------------------------------
# the derivations


def nd_catalog() -> dict[str, NdProof]:
    a, b = Atom("A"), Atom("B")
    return {
        # [A]  [~A]^1 / _|_ / ~~A
        "nd-dni": neg_i(neg_e(hyp(a), hyp(Neg(a), "1")), Neg(a), "1"),
        # [A]^1 / A | B ;  [~(A | B)] / _|_ / ~A
        "nd-raa-or": neg_i(neg_e(or_i(hyp(a, "1"), b, 1), hyp(Neg(Or(a, b)))), a, "1"),
        # [~A]^1  [~~A] / _|_ / A
        "nd-dne": raa(neg_e(hyp(Neg(a), "1"), hyp(Neg(Neg(a)))), a, "1"),
        # A / ~~A / A
        "nd-harmony-detour": dn_e(dn_i(hyp(a))),
    }
