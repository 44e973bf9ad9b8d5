"""Sequent calculus rules, backward expansion, and certificate checking.

Rules are read backward: expand(s) lists every instance whose conclusion is
s, one instance per (rule, principal value) pair. The split of an antecedent
into non-boxed and boxed parts for BoxImpL and SLtR is always the maximal
one, and check() rejects anything else.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .formula import And, Bot, Box, Formula, Imp, Or, Var, parse_formula, print_formula, sort_key
from .sequent import Multiset, Sequent, box_all, partition_boxed


class RuleId(str, Enum):
    BotL = "BotL"
    IdP = "IdP"
    AndL = "AndL"
    AndR = "AndR"
    OrL = "OrL"
    OrR1 = "OrR1"
    OrR2 = "OrR2"
    AtomImpL = "AtomImpL"
    ImpR = "ImpR"
    AndImpL = "AndImpL"
    OrImpL = "OrImpL"
    ImpImpL = "ImpImpL"
    BoxImpL = "BoxImpL"
    SLtR = "SLtR"
    Cut = "Cut"


LEFT_RULES = frozenset(
    {RuleId.AndL, RuleId.OrL, RuleId.AtomImpL, RuleId.AndImpL, RuleId.OrImpL, RuleId.ImpImpL, RuleId.BoxImpL}
)
ZERO_PREMISE = frozenset({RuleId.BotL, RuleId.IdP})


class SchemaError(ValueError):
    """Raised when (rule, conclusion, principal) match no rule schema."""


@dataclass(frozen=True)
class RuleInstance:
    rule: RuleId
    conclusion: Sequent
    premises: tuple[Sequent, ...]
    principal: Optional[Formula] = None


@dataclass(frozen=True)
class Derivation:
    root: Sequent
    rule: RuleId
    principal: Optional[Formula]
    children: tuple["Derivation", ...]


@dataclass(frozen=True)
class Violation:
    path: tuple[int, ...]
    reason: str

    def __str__(self) -> str:
        where = "/".join(str(i) for i in self.path) or "root"
        return f"at {where}: {self.reason}"


def premises_of(rule: RuleId, conclusion: Sequent, principal: Optional[Formula]) -> tuple[Sequent, ...]:
    """The unique premise list of a rule instance, or SchemaError."""
    ant, suc = conclusion.ant, conclusion.suc

    def need_principal() -> Formula:
        if principal is None:
            raise SchemaError(f"{rule.value} needs a principal formula")
        if principal not in ant:
            raise SchemaError(f"principal {print_formula(principal)} not in the antecedent")
        return principal

    if rule is RuleId.BotL:
        if Bot() not in ant:
            raise SchemaError("BotL needs # in the antecedent")
        return ()
    if rule is RuleId.IdP:
        if not isinstance(suc, Var) or suc not in ant:
            raise SchemaError("IdP needs an atomic succedent present in the antecedent")
        return ()
    if rule is RuleId.AndL:
        p = need_principal()
        if not isinstance(p, And):
            raise SchemaError("AndL principal must be a conjunction")
        return (Sequent(ant.remove(p).add(p.left).add(p.right), suc),)
    if rule is RuleId.AndR:
        if not isinstance(suc, And):
            raise SchemaError("AndR needs a conjunction succedent")
        return (Sequent(ant, suc.left), Sequent(ant, suc.right))
    if rule is RuleId.OrL:
        p = need_principal()
        if not isinstance(p, Or):
            raise SchemaError("OrL principal must be a disjunction")
        rest = ant.remove(p)
        return (Sequent(rest.add(p.left), suc), Sequent(rest.add(p.right), suc))
    if rule is RuleId.OrR1:
        if not isinstance(suc, Or):
            raise SchemaError("OrR1 needs a disjunction succedent")
        return (Sequent(ant, suc.left),)
    if rule is RuleId.OrR2:
        if not isinstance(suc, Or):
            raise SchemaError("OrR2 needs a disjunction succedent")
        return (Sequent(ant, suc.right),)
    if rule is RuleId.AtomImpL:
        p = need_principal()
        if not isinstance(p, Imp) or not isinstance(p.left, Var):
            raise SchemaError("AtomImpL principal must be an implication with atomic antecedent")
        if p.left not in ant.remove(p):
            raise SchemaError("AtomImpL needs the atom alongside the implication")
        return (Sequent(ant.remove(p).add(p.right), suc),)
    if rule is RuleId.ImpR:
        if not isinstance(suc, Imp):
            raise SchemaError("ImpR needs an implication succedent")
        return (Sequent(ant.add(suc.left), suc.right),)
    if rule is RuleId.AndImpL:
        p = need_principal()
        if not isinstance(p, Imp) or not isinstance(p.left, And):
            raise SchemaError("AndImpL principal must have a conjunction antecedent")
        curried = Imp(p.left.left, Imp(p.left.right, p.right))
        return (Sequent(ant.remove(p).add(curried), suc),)
    if rule is RuleId.OrImpL:
        p = need_principal()
        if not isinstance(p, Imp) or not isinstance(p.left, Or):
            raise SchemaError("OrImpL principal must have a disjunction antecedent")
        rest = ant.remove(p)
        return (Sequent(rest.add(Imp(p.left.left, p.right)).add(Imp(p.left.right, p.right)), suc),)
    if rule is RuleId.ImpImpL:
        p = need_principal()
        if not isinstance(p, Imp) or not isinstance(p.left, Imp):
            raise SchemaError("ImpImpL principal must have an implication antecedent")
        inner = p.left
        rest = ant.remove(p)
        return (
            Sequent(rest.add(Imp(inner.right, p.right)), inner),
            Sequent(rest.add(p.right), suc),
        )
    if rule is RuleId.BoxImpL:
        p = need_principal()
        if not isinstance(p, Imp) or not isinstance(p.left, Box):
            raise SchemaError("BoxImpL principal must have a boxed antecedent")
        rest = ant.remove(p)
        phi, gamma = partition_boxed(rest)
        left = Sequent(phi.union(gamma).add(p.right).add(p.left), p.left.body)
        right = Sequent(rest.add(p.right), suc)
        return (left, right)
    if rule is RuleId.SLtR:
        if not isinstance(suc, Box):
            raise SchemaError("SLtR needs a boxed succedent")
        phi, gamma = partition_boxed(ant)
        return (Sequent(phi.union(gamma).add(suc), suc.body),)
    raise SchemaError(f"no schema for rule {rule.value}")


def expand(s: Sequent) -> list[RuleInstance]:
    """All backward rule instances at s, deterministically ordered."""
    out: list[RuleInstance] = []

    def emit(rule: RuleId, principal: Optional[Formula]) -> None:
        out.append(RuleInstance(rule, s, premises_of(rule, s, principal), principal))

    if Bot() in s.ant:
        emit(RuleId.BotL, None)
    if isinstance(s.suc, Var) and s.suc in s.ant:
        emit(RuleId.IdP, None)

    for f in s.ant.distinct():
        if isinstance(f, And):
            emit(RuleId.AndL, f)
        elif isinstance(f, Or):
            emit(RuleId.OrL, f)
        elif isinstance(f, Imp):
            head = f.left
            if isinstance(head, Var):
                if head in s.ant.remove(f):
                    emit(RuleId.AtomImpL, f)
            elif isinstance(head, And):
                emit(RuleId.AndImpL, f)
            elif isinstance(head, Or):
                emit(RuleId.OrImpL, f)
            elif isinstance(head, Imp):
                emit(RuleId.ImpImpL, f)
            elif isinstance(head, Box):
                emit(RuleId.BoxImpL, f)
            # an implication out of # has no rule; it is inert

    if isinstance(s.suc, And):
        emit(RuleId.AndR, None)
    elif isinstance(s.suc, Or):
        emit(RuleId.OrR1, None)
        emit(RuleId.OrR2, None)
    elif isinstance(s.suc, Imp):
        emit(RuleId.ImpR, None)
    elif isinstance(s.suc, Box):
        emit(RuleId.SLtR, None)

    order = list(RuleId)
    out.sort(key=lambda inst: (order.index(inst.rule), sort_key(inst.principal) if inst.principal else ()))
    return out


def node(rule: RuleId, conclusion: Sequent, principal: Optional[Formula], *children: Derivation) -> Derivation:
    return Derivation(conclusion, rule, principal, tuple(children))


def idp(conclusion: Sequent) -> Derivation:
    return node(RuleId.IdP, conclusion, None)


def botl(conclusion: Sequent) -> Derivation:
    return node(RuleId.BotL, conclusion, None)


def check(d: Derivation, allow_cut: bool = False) -> Optional[Violation]:
    """None when every node re-matches its schema and every leaf closes;
    otherwise the first violation found, with its path from the root."""
    stack: list[tuple[Derivation, tuple[int, ...]]] = [(d, ())]
    while stack:
        n, path = stack.pop()
        if n.rule is RuleId.Cut:
            if not allow_cut:
                return Violation(path, "Cut node in a cut-free certificate")
            if len(n.children) != 2:
                return Violation(path, "Cut needs exactly two premises")
            left, right = n.children
            cut_formula = left.root.suc
            if left.root.ant != n.root.ant:
                return Violation(path, "Cut left premise must keep the conclusion context")
            if right.root != Sequent(n.root.ant.add(cut_formula), n.root.suc):
                return Violation(path, "Cut right premise must be context plus the cut formula")
        else:
            try:
                want = premises_of(n.rule, n.root, n.principal)
            except SchemaError as e:
                return Violation(path, str(e))
            got = tuple(c.root for c in n.children)
            if got != want:
                return Violation(
                    path,
                    f"{n.rule.value} premises do not match the schema: "
                    f"expected [{'; '.join(map(str, want))}], got [{'; '.join(map(str, got))}]",
                )
        for i, c in enumerate(n.children):
            stack.append((c, path + (i,)))
    return None


def height(d: Derivation) -> int:
    """Nodes on the longest root-to-leaf path; a leaf has height 1."""
    h = 1
    todo = [(d, 1)]
    while todo:
        n, depth = todo.pop()
        h = max(h, depth)
        for c in n.children:
            todo.append((c, depth + 1))
    return h


def node_count(d: Derivation) -> int:
    total = 0
    todo = [d]
    while todo:
        n = todo.pop()
        total += 1
        todo.extend(n.children)
    return total


def uses_cut(d: Derivation) -> bool:
    todo = [d]
    while todo:
        n = todo.pop()
        if n.rule is RuleId.Cut:
            return True
        todo.extend(n.children)
    return False


def _sequent_to_json(s: Sequent) -> dict:
    return {"ant": [print_formula(f) for f in s.ant], "suc": print_formula(s.suc)}


def _sequent_from_json(obj: dict) -> Sequent:
    ant = Multiset.from_iterable(parse_formula(t) for t in obj["ant"])
    return Sequent(ant, parse_formula(obj["suc"]))


def derivation_to_json(d: Derivation) -> dict:
    out = {"sequent": _sequent_to_json(d.root), "rule": d.rule.value}
    if d.principal is not None:
        out["principal"] = print_formula(d.principal)
    out["premises"] = [derivation_to_json(c) for c in d.children]
    return out


def derivation_from_json(obj: dict) -> Derivation:
    rule = RuleId(obj["rule"])
    principal = parse_formula(obj["principal"]) if "principal" in obj else None
    children = tuple(derivation_from_json(c) for c in obj.get("premises", []))
    return Derivation(_sequent_from_json(obj["sequent"]), rule, principal, children)


def dumps(d: Derivation) -> str:
    return json.dumps(derivation_to_json(d), indent=2)


def loads(text: str) -> Derivation:
    return derivation_from_json(json.loads(text))


def render_text(d: Derivation) -> str:
    lines: list[str] = []

    def walk(n: Derivation, depth: int) -> None:
        tag = n.rule.value
        if n.principal is not None:
            tag += f" on {print_formula(n.principal)}"
        lines.append("  " * depth + f"{n.root}   [{tag}]")
        for c in n.children:
            walk(c, depth + 1)

    walk(d, 0)
    return "\n".join(lines) + "\n"


def render_dot(d: Derivation) -> str:
    lines = ["digraph proof {", '  node [shape=box, fontname="monospace"];']
    counter = 0

    def walk(n: Derivation) -> int:
        nonlocal counter
        me = counter
        counter += 1
        label = str(n.root).replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  n{me} [label="{label}\\n{n.rule.value}"];')
        for c in n.children:
            child = walk(c)
            lines.append(f"  n{me} -> n{child};")
        return me

    walk(d)
    lines.append("}")
    return "\n".join(lines) + "\n"
