"""Detour reduction for natural deduction proofs.

Redex kinds and their contractions::

    and-detour  AndEi(AndI(d1, d2))                  ->  di
    or-detour   OrE(OrIi(d), b1, b2)                 ->  bi[label := d]
    imp-detour  ImpE(ImpI^l(body), d)                ->  body[l := d]
    neg-detour  NegE(d, NegI^l(body))                ->  body[l := d]
    dn-detour   MacroDnE(MacroDnI(d))                ->  d
    dn-detour   Raa^m(NegE([~A]^m, NegI^l(NegE(d, [~A]^l))))  ->  d

The second dn-detour form is what the macro form unfolds to.  Where it
matches, the NegE inside it is not reported as a separate neg-detour, so the
unfolded and the compressed detour both collapse in one step.

Redexes are listed leftmost-innermost (post-order); ``normalize`` always
contracts the first one.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import DoublenegError, InvalidProofError, StepLimitExceeded
from .natded import (
    CLASSICAL, NdProof, NdRule, all_labels, bound_premises, check_nd_proof, free_hyps,
    free_labels, fresh_label, open_assumptions,
)
from .syntax import BOTTOM, Formula, Neg, subformulas

DEFAULT_STEP_LIMIT = 10_000

REDEX_KINDS = ("and-detour", "imp-detour", "or-detour", "neg-detour", "dn-detour")


class StaleRedexError(DoublenegError, ValueError):
    pass


@dataclass(frozen=True)
class Redex:
    path: tuple
    kind: str


def _require_valid(p: NdProof) -> None:
    report = check_nd_proof(p, CLASSICAL)
    if not report.valid:
        raise InvalidProofError(report)


# ---------------------------------------------------------------------------
# matching


def _negation_pair(n: NdProof) -> Optional[tuple[int, int]]:
    """For a NegE node return (minor index, major index)."""
    a, b = (q.conclusion for q in n.premises)
    if b == Neg(a):
        return 0, 1
    if a == Neg(b):
        return 1, 0
    return None


def _kernel_dn(n: NdProof) -> Optional[NdProof]:
    """If ``n`` is Raa^m(NegE([~A]^m, NegI^l(NegE(d, [~A]^l)))) return d."""
    if n.rule is not NdRule.Raa:
        return None
    body = n.premises[0]
    if body.rule is not NdRule.NegE:
        return None
    pair = _negation_pair(body)
    if pair is None:
        return None
    minor, major = (body.premises[i] for i in pair)
    m = n.discharge
    if not (minor.rule is NdRule.Hyp and minor.label == m and minor.conclusion == Neg(n.conclusion)):
        return None
    if major.rule is not NdRule.NegI:
        return None
    inner = major.premises[0]
    if inner.rule is not NdRule.NegE:
        return None
    pair = _negation_pair(inner)
    if pair is None:
        return None
    d, h = (inner.premises[i] for i in pair)
    l = major.discharge
    if not (h.rule is NdRule.Hyp and h.label == l and d.conclusion == n.conclusion):
        return None
    if free_labels(d) & {l, m}:
        return None
    return d


def _match(n: NdProof, parent: Optional[NdProof]) -> Optional[str]:
    rule = n.rule
    if rule is NdRule.MacroDnE and n.premises[0].rule is NdRule.MacroDnI:
        return "dn-detour"
    if _kernel_dn(n) is not None:
        return "dn-detour"
    if rule in (NdRule.AndE1, NdRule.AndE2) and n.premises[0].rule is NdRule.AndI:
        return "and-detour"
    if rule is NdRule.OrE and n.premises[0].rule in (NdRule.OrI1, NdRule.OrI2):
        return "or-detour"
    if rule is NdRule.ImpE and n.premises[0].rule is NdRule.ImpI:
        return "imp-detour"
    if rule is NdRule.NegE:
        pair = _negation_pair(n)
        if pair and n.premises[pair[1]].rule is NdRule.NegI:
            if parent is not None and _kernel_dn(parent) is not None:
                return None
            return "neg-detour"
    return None


def _redexes(p: NdProof) -> list[Redex]:
    out = []

    def go(n: NdProof, path: tuple, parent: Optional[NdProof]):
        for i, q in enumerate(n.premises):
            go(q, path + (i,), n)
        kind = _match(n, parent)
        if kind:
            out.append(Redex(path, kind))

    go(p, (), None)
    return out


def find_redexes(p: NdProof) -> list[Redex]:
    """All redexes, leftmost-innermost first."""
    _require_valid(p)
    return _redexes(p)


def is_normal(p: NdProof) -> bool:
    return not _redexes(p)


# ---------------------------------------------------------------------------
# substitution


def rename(p: NdProof, old: str, new: str) -> NdProof:
    """Rename free hypotheses labelled ``old`` to ``new``."""
    if p.rule is NdRule.Hyp:
        return NdProof(NdRule.Hyp, p.conclusion, (), new, None) if p.label == old else p
    scoped = bound_premises(p)
    premises = [
        q if (i in scoped and p.discharge == old) else rename(q, old, new)
        for i, q in enumerate(p.premises)
    ]
    return p.with_premises(premises)


def substitute(body: NdProof, label: str, d: NdProof) -> NdProof:
    """Replace the free hypotheses labelled ``label`` in ``body`` by ``d``,
    renaming binders of ``body`` that would capture free labels of ``d``."""
    danger = free_labels(d)
    taken = all_labels(body) | all_labels(d) | {label}

    def go(n: NdProof) -> NdProof:
        if n.rule is NdRule.Hyp:
            return d if n.label == label else n
        scoped = bound_premises(n)
        if scoped and n.discharge == label:
            # shadowed in the scoped premises
            premises = [q if i in scoped else go(q) for i, q in enumerate(n.premises)]
            return n.with_premises(premises)
        if scoped and n.discharge in danger:
            new = fresh_label(taken, "r")
            taken.add(new)
            premises = [rename(q, n.discharge, new) if i in scoped else q
                        for i, q in enumerate(n.premises)]
            n = NdProof(n.rule, n.conclusion, tuple(premises), None, new)
        return n.with_premises([go(q) for q in n.premises])

    return go(body)


# ---------------------------------------------------------------------------
# contraction


def _contract(n: NdProof, kind: str) -> NdProof:
    if kind == "dn-detour":
        if n.rule is NdRule.MacroDnE:
            return n.premises[0].premises[0]
        return _kernel_dn(n)
    if kind == "and-detour":
        return n.premises[0].premises[0 if n.rule is NdRule.AndE1 else 1]
    if kind == "or-detour":
        intro = n.premises[0]
        branch = n.premises[1 if intro.rule is NdRule.OrI1 else 2]
        return substitute(branch, n.discharge, intro.premises[0])
    if kind == "imp-detour":
        intro, arg = n.premises
        return substitute(intro.premises[0], intro.discharge, arg)
    if kind == "neg-detour":
        minor_i, major_i = _negation_pair(n)
        intro = n.premises[major_i]
        return substitute(intro.premises[0], intro.discharge, n.premises[minor_i])
    raise ValueError(f"unknown redex kind {kind!r}")


def reduce_step(p: NdProof, r: Redex) -> NdProof:
    try:
        node = p.at(r.path)
        parent = p.at(r.path[:-1]) if r.path else None
    except (IndexError, TypeError):
        raise StaleRedexError(f"no node at path {r.path}") from None
    if _match(node, parent) != r.kind:
        raise StaleRedexError(f"no {r.kind} at path {r.path}")
    return p.replace_at(r.path, _contract(node, r.kind))


@dataclass(frozen=True)
class Normalization:
    proof: NdProof
    steps: int
    trace: tuple  # ((Redex, proof after contraction), ...)


def normalize_trace(p: NdProof, step_limit: int = DEFAULT_STEP_LIMIT,
                    on_step: Optional[Callable[[Redex, NdProof], None]] = None) -> Normalization:
    _require_valid(p)
    trace = []
    steps = 0
    while True:
        found = _redexes(p)
        if not found:
            return Normalization(p, steps, tuple(trace))
        if steps >= step_limit:
            raise StepLimitExceeded(f"normalization exceeded {step_limit} steps")
        p = reduce_step(p, found[0])
        steps += 1
        trace.append((found[0], p))
        if on_step is not None:
            on_step(found[0], p)


def normalize(p: NdProof, step_limit: int = DEFAULT_STEP_LIMIT) -> NdProof:
    return normalize_trace(p, step_limit).proof


# ---------------------------------------------------------------------------
# subformula audit


@dataclass(frozen=True)
class AuditReport:
    passed: bool
    strict: bool
    violation: Optional[Formula] = None
    path: Optional[tuple] = None
    auxiliary: tuple = ()  # (path, formula) admitted only as a negation of an allowed formula

    def __bool__(self):
        return self.passed


def subformula_audit(p: NdProof, strict: bool = False) -> AuditReport:
    """Every node formula must be a subformula of the conclusion or of an open
    assumption, or ``_|_``.  Non-strict audits also admit ``~X`` for such an
    ``X``; those nodes are listed in ``auxiliary``."""
    _require_valid(p)
    allowed = set(subformulas(p.conclusion)) | {BOTTOM}
    for a in open_assumptions(p):
        allowed |= subformulas(a)
    auxiliary = []
    for path, n in p.nodes():
        f = n.conclusion
        if f in allowed:
            continue
        if isinstance(f, Neg) and f.body in allowed:
            auxiliary.append((path, f))
            if not strict:
                continue
        return AuditReport(False, strict, f, path, tuple(auxiliary))
    return AuditReport(True, strict, None, None, tuple(auxiliary))
