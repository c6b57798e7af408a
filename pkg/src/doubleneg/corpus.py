"""Formula enumeration and seeded random proof generators.

Depth counts atoms as 1, so over two atoms there are 2 formulas of depth 1,
16 of depth at most 2 and 786 of depth at most 3.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from . import natded as nd
from .sequent import RuleMismatch, SkProof, SkRule, ax, infer, lbot
from .syntax import BOTTOM, And, Atom, Formula, Imp, Neg, Or

BINARY = (And, Or, Imp)


@lru_cache(maxsize=None)
def _formulas(depth: int, names: tuple[str, ...], bottom: bool) -> tuple[Formula, ...]:
    base = tuple(Atom(n) for n in names) + ((BOTTOM,) if bottom else ())
    if depth <= 1:
        return base
    smaller = _formulas(depth - 1, names, bottom)
    out = list(base)
    out += [Neg(f) for f in smaller]
    out += [op(f, g) for op in BINARY for f in smaller for g in smaller]
    return tuple(out)


def enumerate_formulas(depth: int, names: Sequence[str] = ("A", "B"), bottom: bool = False) -> tuple[Formula, ...]:
    """Every formula of depth at most ``depth`` over ``names``; no duplicates."""
    return _formulas(depth, tuple(names), bottom)


def random_formula(rng: random.Random, max_depth: int, names: Sequence[str] = ("A", "B", "C")) -> Formula:
    if max_depth <= 1 or rng.random() < 0.25:
        return Atom(rng.choice(names))
    r = rng.random()
    if r < 0.25:
        return Neg(random_formula(rng, max_depth - 1, names))
    op = rng.choice(BINARY)
    return op(random_formula(rng, max_depth - 1, names), random_formula(rng, max_depth - 1, names))


def dn_tower(d: nd.NdProof, k: int) -> nd.NdProof:
    """``k`` nested MacroDnE(MacroDnI(.)) pairs over ``d``."""
    for _ in range(k):
        d = nd.dn_e(nd.dn_i(d))
    return d


# ---------------------------------------------------------------------------
# sequent proofs


def _small_formula(rng: random.Random, names: Sequence[str]) -> Formula:
    a = Atom(rng.choice(names))
    r = rng.random()
    if r < 0.45:
        return a
    if r < 0.7:
        return Neg(a)
    return rng.choice(BINARY)(a, Atom(rng.choice(names)))


class SkGenerator:
    """Random valid sequent proofs, grown from leaves towards the root."""

    UNARY = (SkRule.LNeg, SkRule.RNeg, SkRule.LAnd, SkRule.ROr, SkRule.RImp,
             SkRule.LWeak, SkRule.RWeak, SkRule.LContr, SkRule.RContr)
    BINARY_RULES = (SkRule.RAnd, SkRule.LOr, SkRule.LImp)

    def __init__(self, seed: int, names: Sequence[str] = ("A", "B"), max_nodes: int = 10,
                 cut_rate: float = 0.0, max_cuts: int = 2):
        self.rng = random.Random(seed)
        self.names = tuple(names)
        self.max_nodes = max_nodes
        self.cut_rate = cut_rate
        self.max_cuts = max_cuts

    def leaf(self, seed: Optional[Formula] = None) -> SkProof:
        if seed is not None:
            return ax(seed)
        if self.rng.random() < 0.1:
            return lbot()
        return ax(_small_formula(self.rng, self.names))

    def grow(self, budget: int, seed: Optional[Formula] = None) -> SkProof:
        rng = self.rng
        if budget <= 1 or rng.random() < 0.2:
            return self.leaf(seed)
        r = rng.random()
        if r < self.cut_rate and budget >= 3:
            return self._cut(budget)
        if r < self.cut_rate + 0.2 and budget >= 3:
            return self._binary(budget)
        q = self.grow(budget - 1, seed)
        for _ in range(4):
            out = self._unary(q, rng.choice(self.UNARY))
            if out is not None:
                return out
        return q

    def _unary(self, q: SkProof, rule: SkRule) -> Optional[SkProof]:
        rng = self.rng
        ant, suc = list(q.conclusion.antecedent), list(q.conclusion.succedent)
        try:
            if rule is SkRule.LNeg and suc:
                return infer(rule, [q], Neg(rng.choice(suc)))
            if rule is SkRule.RNeg and ant:
                return infer(rule, [q], Neg(rng.choice(ant)))
            if rule is SkRule.LAnd and len(ant) >= 2:
                b, c = rng.sample(ant, 2)
                return infer(rule, [q], And(b, c))
            if rule is SkRule.ROr and len(suc) >= 2:
                b, c = rng.sample(suc, 2)
                return infer(rule, [q], Or(b, c))
            if rule is SkRule.RImp and ant and suc:
                return infer(rule, [q], Imp(rng.choice(ant), rng.choice(suc)))
            if rule in (SkRule.LWeak, SkRule.RWeak):
                pool = ant + suc
                f = rng.choice(pool) if pool and rng.random() < 0.5 else _small_formula(rng, self.names)
                return infer(rule, [q], f)
            if rule is SkRule.LContr:
                dups = [f for f in set(ant) if ant.count(f) > 1]
                return infer(rule, [q], rng.choice(sorted(dups, key=str))) if dups else None
            if rule is SkRule.RContr:
                dups = [f for f in set(suc) if suc.count(f) > 1]
                return infer(rule, [q], rng.choice(sorted(dups, key=str))) if dups else None
        except RuleMismatch:
            return None
        return None

    def _pad(self, p: SkProof, left: Iterable[Formula], right: Iterable[Formula]) -> SkProof:
        for f in left:
            p = infer(SkRule.LWeak, [p], f)
        for f in right:
            p = infer(SkRule.RWeak, [p], f)
        return p

    def _binary(self, budget: int) -> SkProof:
        rng = self.rng
        split = rng.randint(1, budget - 2)
        q1, q2 = self.grow(split), self.grow(budget - 1 - split)
        rule = rng.choice(self.BINARY_RULES)
        s1, s2 = q1.conclusion, q2.conclusion
        if rule is SkRule.RAnd:
            if not (s1.succedent and s2.succedent):
                return q1
            b, c = rng.choice(s1.succedent), rng.choice(s2.succedent)
        elif rule is SkRule.LOr:
            if not (s1.antecedent and s2.antecedent):
                return q1
            b, c = rng.choice(s1.antecedent), rng.choice(s2.antecedent)
        else:
            if not (s1.succedent and s2.antecedent):
                return q1
            b, c = rng.choice(s1.succedent), rng.choice(s2.antecedent)
        principal = {SkRule.RAnd: And, SkRule.LOr: Or, SkRule.LImp: Imp}[rule](b, c)
        return self._join(rule, q1, q2, principal)

    def _join(self, rule: SkRule, q1: SkProof, q2: SkProof, x: Formula) -> SkProof:
        """Weaken both premises to a common context, then apply ``rule``."""
        s1, s2 = q1.conclusion, q2.conclusion
        if rule is SkRule.RAnd:
            ctx1 = (list(s1.antecedent), _drop(s1.succedent, x.left))
            ctx2 = (list(s2.antecedent), _drop(s2.succedent, x.right))
        elif rule is SkRule.LOr:
            ctx1 = (_drop(s1.antecedent, x.left), list(s1.succedent))
            ctx2 = (_drop(s2.antecedent, x.right), list(s2.succedent))
        else:
            ctx1 = (list(s1.antecedent), _drop(s1.succedent, x.left))
            ctx2 = (_drop(s2.antecedent, x.right), list(s2.succedent))
        left = _union(ctx1[0], ctx2[0])
        right = _union(ctx1[1], ctx2[1])
        p1 = self._pad(q1, _diff(left, ctx1[0]), _diff(right, ctx1[1]))
        p2 = self._pad(q2, _diff(left, ctx2[0]), _diff(right, ctx2[1]))
        return infer(rule, [p1, p2], x)

    def _intro(self, c: Formula, side: str, budget: int) -> Optional[SkProof]:
        """A proof whose last rule introduces ``c`` on ``side``."""
        if budget < 2:
            return None

        def seeded(f, b, where):
            q = self.grow(max(1, b), seed=f)
            s = q.conclusion.antecedent if where == "L" else q.conclusion.succedent
            if f not in s:
                q = infer(SkRule.LWeak if where == "L" else SkRule.RWeak, [q], f)
            return q

        if isinstance(c, Neg):
            q = seeded(c.body, budget - 2, "L" if side == "R" else "R")
            return infer(SkRule.RNeg if side == "R" else SkRule.LNeg, [q], c)
        if side == "R" and isinstance(c, Imp):
            q = seeded(c.left, budget - 3, "L")
            if c.right not in q.conclusion.succedent:
                q = infer(SkRule.RWeak, [q], c.right)
            return infer(SkRule.RImp, [q], c)
        if side == "L" and isinstance(c, And):
            q = seeded(c.left, budget - 3, "L")
            if q.conclusion.antecedent.count(c.right) < 1 + (c.left == c.right):
                q = infer(SkRule.LWeak, [q], c.right)
            return infer(SkRule.LAnd, [q], c)
        if side == "R" and isinstance(c, Or):
            q = seeded(c.left, budget - 3, "R")
            if q.conclusion.succedent.count(c.right) < 1 + (c.left == c.right):
                q = infer(SkRule.RWeak, [q], c.right)
            return infer(SkRule.ROr, [q], c)
        if budget < 3:
            return None
        half = (budget - 1) // 2
        if side == "R" and isinstance(c, And):
            return self._join(SkRule.RAnd, seeded(c.left, half - 1, "R"), seeded(c.right, half - 1, "R"), c)
        if side == "L" and isinstance(c, Or):
            return self._join(SkRule.LOr, seeded(c.left, half - 1, "L"), seeded(c.right, half - 1, "L"), c)
        if side == "L" and isinstance(c, Imp):
            return self._join(SkRule.LImp, seeded(c.left, half - 1, "R"), seeded(c.right, half - 1, "L"), c)
        return None

    def _cut(self, budget: int) -> SkProof:
        rng = self.rng
        split = rng.randint(1, budget - 2)
        if rng.random() < 0.5:
            c = _small_formula(rng, self.names)
            if isinstance(c, Atom):
                c = Neg(c)
            q1 = self._intro(c, "R", split)
            q2 = self._intro(c, "L", budget - 1 - split)
            if q1 is not None and q2 is not None:
                return infer(SkRule.Cut, [q1, q2], cut_formula=c)
        q1 = self.grow(split)
        if not q1.conclusion.succedent:
            return q1
        c = rng.choice(q1.conclusion.succedent)
        for _ in range(10):
            q2 = self.grow(budget - 1 - split, seed=c if rng.random() < 0.6 else None)
            if c in q2.conclusion.antecedent:
                return infer(SkRule.Cut, [q1, q2], cut_formula=c)
        return q1

    def proofs(self, count: int, min_cuts: int = 0, max_cuts: Optional[int] = None):
        """``count`` distinct-by-draw proofs within the node and cut bounds."""
        max_cuts = self.max_cuts if max_cuts is None else max_cuts
        out = []
        while len(out) < count:
            p = self.grow(self.max_nodes)
            cuts = sum(1 for _, n in p.nodes() if n.rule is SkRule.Cut)
            if p.size <= self.max_nodes and min_cuts <= cuts <= max_cuts:
                out.append(p)
        return out


def _drop(items, f) -> list:
    items = list(items)
    items.remove(f)
    return items


def _union(a, b) -> list:
    out = list(a)
    rest = list(a)
    for f in b:
        if f in rest:
            rest.remove(f)
        else:
            out.append(f)
    return out


def _diff(big, small) -> list:
    out = list(big)
    for f in small:
        out.remove(f)
    return out


# ---------------------------------------------------------------------------
# natural deduction proofs


class NdGenerator:
    """Random natural deduction proofs, grown from hypotheses downwards.

    Most draws are valid by construction; callers should still filter with
    ``check_nd_proof``.
    """

    LABELS = ("1", "2", "3")

    def __init__(self, seed: int, names: Sequence[str] = ("A", "B"), max_nodes: int = 10,
                 classical: bool = True, macros: bool = True):
        self.rng = random.Random(seed)
        self.names = tuple(names)
        self.max_nodes = max_nodes
        self.classical = classical
        self.macros = macros

    def formula(self) -> Formula:
        return _small_formula(self.rng, self.names)

    def hyp(self, f: Optional[Formula] = None) -> nd.NdProof:
        label = self.rng.choice(self.LABELS + (None,))
        return nd.hyp(f if f is not None else self.formula(), label)

    def _label_for(self, premises: Sequence[nd.NdProof], wanted: Sequence[Optional[Formula]]):
        """A label whose free hypotheses in each premise all have the wanted
        formula; falls back to an unused label (vacuous discharge)."""
        candidates = set()
        for q, w in zip(premises, wanted):
            candidates |= {h.label for _, h in nd.free_hyps(q) if h.label and h.conclusion == w}
        for label in sorted(candidates):
            ok = all(
                all(h.conclusion == w for _, h in nd.free_hyps(q) if h.label == label)
                for q, w in zip(premises, wanted)
            )
            if ok:
                return label
        taken = set()
        for q in premises:
            taken |= nd.all_labels(q)
        return nd.fresh_label(taken, "v")

    def _pick_hyp(self, q: nd.NdProof, test) -> Optional[Formula]:
        options = sorted({h.conclusion for _, h in nd.free_hyps(q) if h.label and test(h.conclusion)}, key=str)
        return self.rng.choice(options) if options else None

    def grow(self, budget: int) -> nd.NdProof:
        rng = self.rng
        if budget <= 1 or rng.random() < 0.2:
            return self.hyp()
        if rng.random() < 0.35 and budget >= 3:
            return self._binary(budget)
        q = self.grow(budget - 1)
        c = q.conclusion
        options = ["OrI", "ImpI"]
        if isinstance(c, And):
            options += ["AndE"] * 2
        if c == BOTTOM:
            options += ["NegI", "NegI", "BotE"] + (["Raa", "Raa"] if self.classical else [])
        if self.macros:
            options.append("DnI")
            if isinstance(c, Neg) and isinstance(c.body, Neg) and self.classical:
                options += ["DnE"] * 2
        choice = rng.choice(options)
        if choice == "AndE":
            return nd.and_e(q, rng.choice((1, 2)))
        if choice == "OrI":
            return nd.or_i(q, self.formula(), rng.choice((1, 2)))
        if choice == "ImpI":
            a = self._pick_hyp(q, lambda f: True) or self.formula()
            return nd.imp_i(q, a, self._label_for([q], [a]))
        if choice == "NegI":
            a = self._pick_hyp(q, lambda f: True) or self.formula()
            return nd.neg_i(q, a, self._label_for([q], [a]))
        if choice == "BotE":
            return nd.bot_e(q, self.formula())
        if choice == "Raa":
            a = self._pick_hyp(q, lambda f: isinstance(f, Neg))
            goal = a.body if a is not None else self.formula()
            return nd.raa(q, goal, self._label_for([q], [Neg(goal)]))
        if choice == "DnI":
            return nd.dn_i(q)
        return nd.dn_e(q)

    def _binary(self, budget: int) -> nd.NdProof:
        rng = self.rng
        split = rng.randint(1, budget - 2)
        q1 = self.grow(split)
        c = q1.conclusion
        kind = rng.choice(("AndI", "ImpE", "NegE", "NegE", "OrE"))
        if kind == "AndI":
            return nd.and_i(q1, self.grow(budget - 1 - split))
        if kind == "ImpE":
            if isinstance(c, Imp):
                return nd.imp_e(q1, self._matching(c.left, budget - 1 - split))
            major = self._matching(Imp(c, self.formula()), budget - 1 - split)
            return nd.imp_e(major, q1)
        if kind == "NegE":
            if isinstance(c, Neg) and rng.random() < 0.5:
                return nd.neg_e(self._matching(c.body, budget - 1 - split), q1)
            return nd.neg_e(q1, self._matching(Neg(c), budget - 1 - split))
        # OrE
        if not isinstance(c, Or):
            return nd.and_i(q1, self.grow(budget - 1 - split))
        rest = budget - 1 - split
        b1 = self.grow(max(1, rest // 2))
        b2 = self._matching(b1.conclusion, max(1, rest - rest // 2))
        label = self._label_for([b1, b2], [c.left, c.right])
        return nd.or_e(q1, b1, b2, label)

    def _matching(self, f: Formula, budget: int) -> nd.NdProof:
        """A proof of ``f`` if one turns up quickly, else a hypothesis."""
        for _ in range(5):
            q = self.grow(budget)
            if q.conclusion == f:
                return q
        return self.hyp(f)

    def proofs(self, count: int, mode: str = nd.CLASSICAL):
        out = []
        while len(out) < count:
            p = self.grow(self.max_nodes)
            if p.size <= self.max_nodes and nd.check_nd_proof(p, mode).valid:
                out.append(p)
        return out
