"""Proof scripts: a JSON tree format shared by both calculi.

Sequent calculus::

    {"calculus": "sk",
     "root": {"rule": "RNeg", "sequent": "A => ~~A", "principal": "~~A",
              "premises": [...]}}

Cut nodes carry ``cutFormula`` instead of ``principal``.

Natural deduction::

    {"calculus": "nd",
     "root": {"rule": "NegI", "formula": "~~A", "discharge": "1",
              "premises": [{"rule": "NegE", "formula": "_|_", "premises": [
                  {"rule": "Hyp", "formula": "A"},
                  {"rule": "Hyp", "formula": "~A", "label": "1"}]}]}}

Formula and sequent strings use the formula grammar; output is ASCII.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .errors import DoublenegError
from .natded import NdProof, NdRule
from .sequent import SkProof, SkRule
from .syntax import ParseError, parse_formula, parse_sequent, render_formula, render_sequent

Proof = Union[SkProof, NdProof]


class ScriptError(DoublenegError, ValueError):
    pass


def _field(node: dict, name: str, where: str):
    if name not in node:
        raise ScriptError(f"{where}: missing field {name!r}")
    return node[name]


def _formula(text, where: str):
    if not isinstance(text, str):
        raise ScriptError(f"{where}: expected a formula string")
    try:
        return parse_formula(text)
    except ParseError as exc:
        raise ScriptError(f"{where}: {exc}") from None


def _premises(node: dict, where: str) -> list:
    premises = node.get("premises", [])
    if not isinstance(premises, list):
        raise ScriptError(f"{where}: premises must be a list")
    return premises


def _sk_node(node, where: str) -> SkProof:
    if not isinstance(node, dict):
        raise ScriptError(f"{where}: expected an object")
    try:
        rule = SkRule(_field(node, "rule", where))
    except ValueError:
        raise ScriptError(f"{where}: unknown sequent rule {node['rule']!r}") from None
    text = _field(node, "sequent", where)
    try:
        sequent = parse_sequent(text)
    except ParseError as exc:
        raise ScriptError(f"{where}: {exc}") from None
    principal = _formula(node["principal"], where) if node.get("principal") is not None else None
    cut = _formula(node["cutFormula"], where) if node.get("cutFormula") is not None else None
    premises = tuple(_sk_node(q, f"{where}.{i}") for i, q in enumerate(_premises(node, where)))
    return SkProof(rule, sequent, premises, principal, cut)


def _nd_node(node, where: str) -> NdProof:
    if not isinstance(node, dict):
        raise ScriptError(f"{where}: expected an object")
    try:
        rule = NdRule(_field(node, "rule", where))
    except ValueError:
        raise ScriptError(f"{where}: unknown natural deduction rule {node['rule']!r}") from None
    formula = _formula(_field(node, "formula", where), where)
    label = node.get("label")
    discharge = node.get("discharge")
    for name, value in (("label", label), ("discharge", discharge)):
        if value is not None and not isinstance(value, (str, int)):
            raise ScriptError(f"{where}: {name} must be a string")
    premises = tuple(_nd_node(q, f"{where}.{i}") for i, q in enumerate(_premises(node, where)))
    return NdProof(rule, formula, premises,
                   None if label is None else str(label),
                   None if discharge is None else str(discharge))


def from_dict(data) -> Proof:
    if not isinstance(data, dict):
        raise ScriptError("proof script must be a JSON object")
    calculus = data.get("calculus")
    root = _field(data, "root", "script")
    if calculus == "sk":
        return _sk_node(root, "root")
    if calculus == "nd":
        return _nd_node(root, "root")
    raise ScriptError(f"calculus must be 'sk' or 'nd', got {calculus!r}")


def loads(text: str) -> Proof:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScriptError(f"not valid JSON: {exc}") from None
    return from_dict(data)


def load(path) -> Proof:
    return loads(Path(path).read_text(encoding="utf-8"))


def _sk_dict(p: SkProof) -> dict:
    node = {"rule": p.rule.value, "sequent": render_sequent(p.conclusion)}
    if p.principal is not None:
        node["principal"] = render_formula(p.principal)
    if p.cut_formula is not None:
        node["cutFormula"] = render_formula(p.cut_formula)
    if p.premises:
        node["premises"] = [_sk_dict(q) for q in p.premises]
    return node


def _nd_dict(p: NdProof) -> dict:
    node = {"rule": p.rule.value, "formula": render_formula(p.conclusion)}
    if p.label is not None:
        node["label"] = p.label
    if p.discharge is not None:
        node["discharge"] = p.discharge
    if p.premises:
        node["premises"] = [_nd_dict(q) for q in p.premises]
    return node


def to_dict(p: Proof) -> dict:
    if isinstance(p, SkProof):
        return {"calculus": "sk", "root": _sk_dict(p)}
    if isinstance(p, NdProof):
        return {"calculus": "nd", "root": _nd_dict(p)}
    raise TypeError(f"not a proof: {p!r}")


def dumps(p: Proof, compact: bool = False) -> str:
    if compact:
        return json.dumps(to_dict(p), ensure_ascii=True, separators=(",", ":"))
    return json.dumps(to_dict(p), ensure_ascii=True, indent=2)


def dump(p: Proof, path) -> None:
    Path(path).write_text(dumps(p) + "\n", encoding="utf-8")
