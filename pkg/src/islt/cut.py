"""Cut admissibility and elimination.

A cut joins a proof of G => f with a proof of G, f => chi into a proof of
G => chi. The construction recurses on the pair (weight of the cut
formula, ordering measure of the conclusion), lexicographically: every
recursive cut either has a strictly lighter cut formula or the same
formula with a strictly smaller conclusion measure. With debug enabled
that descent is asserted at every step and exposed through the log.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Optional

from .calculus import (
    LEFT_RULES,
    Derivation,
    RuleId,
    botl,
    check,
    idp,
    node,
    uses_cut,
)
from .formula import Box, Formula, Imp, print_formula, weight
from .measure import Theta, shortlex_less, theta
from .sequent import Multiset, Sequent
from .structural import (
    _invert_imp_r,
    box_imp_lir,
    contract,
    id_general,
    imp_imp_lil,
    imp_imp_lir,
    invert,
    unbox_left,
    weaken,
)

_INVERTIBLE_LEFT = (
    RuleId.AndL,
    RuleId.OrL,
    RuleId.AtomImpL,
    RuleId.AndImpL,
    RuleId.OrImpL,
)


class CutError(ValueError):
    """A malformed cut instance."""


Measure = tuple[int, Theta]


def _measure_less(a: Measure, b: Measure) -> bool:
    if a[0] != b[0]:
        return a[0] < b[0]
    return shortlex_less(a[1], b[1])


@dataclass(frozen=True)
class CutInstance:
    """Two cut-free premises sharing a context: left proves context => cut
    formula, right proves context, cut formula => goal."""

    left: Derivation
    right: Derivation

    @property
    def context(self) -> Multiset:
        return self.left.root.ant

    @property
    def cut_formula(self) -> Formula:
        return self.left.root.suc

    @property
    def goal(self) -> Formula:
        return self.right.root.suc

    @property
    def conclusion(self) -> Sequent:
        return Sequent(self.context, self.goal)

    def validate(self) -> None:
        expected = self.context.add(self.cut_formula)
        if self.right.root.ant != expected:
            raise CutError(
                "right antecedent must be the left antecedent plus the cut formula; "
                f"got {self.right.root.ant} expecting {expected}"
            )
        for name, d in (("left", self.left), ("right", self.right)):
            if uses_cut(d):
                raise CutError(f"{name} premise is not cut-free")
            bad = check(d)
            if bad is not None:
                raise CutError(f"{name} premise fails checking: {bad}")


def cut_admissible(
    instance: CutInstance,
    debug: bool = False,
    log: Optional[list] = None,
    validate: bool = True,
) -> Derivation:
    """A cut-free proof of the instance's conclusion."""
    if validate:
        instance.validate()
    if sys.getrecursionlimit() < 100000:
        sys.setrecursionlimit(100000)
    return _cut(instance.left, instance.right, None, debug, log)


def _enter(d1: Derivation, d2: Derivation, parent: Optional[Measure], debug: bool, log) -> Measure:
    own = (weight(d1.root.suc), theta(Sequent(d1.root.ant, d2.root.suc)))
    if log is not None:
        log.append((parent, own))
    if debug and parent is not None:
        assert _measure_less(own, parent), (
            f"cut measure did not descend: {own} under {parent} "
            f"(cut formula {print_formula(d1.root.suc)})"
        )
    return own


def _cut(
    d1: Derivation,
    d2: Derivation,
    parent: Optional[Measure],
    debug: bool,
    log,
) -> Derivation:
    own = _enter(d1, d2, parent, debug, log)

    def go(a: Derivation, b: Derivation) -> Derivation:
        return _cut(a, b, own, debug, log)

    ctx = d1.root.ant
    phi = d1.root.suc
    goal = d2.root.suc
    conclusion = Sequent(ctx, goal)
    r1 = d1.rule

    # the cut formula never became principal on the left
    if r1 is RuleId.IdP:
        return contract(d2, phi)
    if r1 is RuleId.BotL:
        return botl(conclusion)
    if r1 in _INVERTIBLE_LEFT:
        pi = d1.principal
        mirrored = invert(r1, d2, pi)
        subs = [go(c, m) for c, m in zip(d1.children, mirrored)]
        return node(r1, conclusion, pi, *subs)
    if r1 is RuleId.ImpImpL:
        pi = d1.principal
        adj = imp_imp_lir(d2, pi)
        sub = go(d1.children[1], adj)
        return node(RuleId.ImpImpL, conclusion, pi, d1.children[0], sub)
    if r1 is RuleId.BoxImpL:
        pi = d1.principal
        adj = box_imp_lir(d2, pi)
        sub = go(d1.children[1], adj)
        return node(RuleId.BoxImpL, conclusion, pi, d1.children[0], sub)

    # principal on the left: the cut formula was just introduced
    if r1 is RuleId.AndR:
        a, b = phi.left, phi.right
        opened = invert(RuleId.AndL, d2, phi)[0]
        after_a = go(weaken(d1.children[0], b), opened)
        return go(d1.children[1], after_a)
    if r1 in (RuleId.OrR1, RuleId.OrR2):
        branches = invert(RuleId.OrL, d2, phi)
        side = branches[0] if r1 is RuleId.OrR1 else branches[1]
        return go(d1.children[0], side)
    if r1 is RuleId.ImpR:
        return _cut_imp_r(d1, d2, go)
    if r1 is RuleId.SLtR:
        return _cut_sltr(d1, d2, go)
    raise CutError(f"unexpected left rule {r1.value}")


def _cut_imp_r(d1: Derivation, d2: Derivation, go) -> Derivation:
    """Left premise ends in ImpR; the cut formula is an implication."""
    ctx = d1.root.ant
    phi = d1.root.suc
    goal = d2.root.suc
    conclusion = Sequent(ctx, goal)
    p0, p1 = phi.left, phi.right
    d1p = d1.children[0]
    r2 = d2.rule

    if r2 in LEFT_RULES and d2.principal == phi:
        # principal on both sides: reduce through phi's antecedent rule,
        # chosen by the shape of p0
        if r2 is RuleId.AtomImpL:
            stripped = contract(d1p, p0)
            return go(stripped, d2.children[0])
        if r2 is RuleId.AndImpL:
            a, b = p0.left, p0.right
            opened = invert(RuleId.AndL, d1p, p0)[0]
            s1 = node(RuleId.ImpR, Sequent(ctx.add(a), Imp(b, p1)), None, opened)
            s2 = node(RuleId.ImpR, Sequent(ctx, Imp(a, Imp(b, p1))), None, s1)
            return go(s2, d2.children[0])
        if r2 is RuleId.OrImpL:
            a, b = p0.left, p0.right
            ia, ib = invert(RuleId.OrL, d1p, p0)
            sa = node(RuleId.ImpR, Sequent(ctx, Imp(a, p1)), None, ia)
            sb = node(RuleId.ImpR, Sequent(ctx, Imp(b, p1)), None, ib)
            first = go(weaken(sa, Imp(b, p1)), d2.children[0])
            return go(sb, first)
        if r2 is RuleId.ImpImpL:
            a, b = p0.left, p0.right
            c = p1
            bc = Imp(b, c)
            left2, right2 = d2.children
            cut_ab = go(left2, weaken(d1p, bc))
            inner = node(
                RuleId.ImpR,
                Sequent(ctx.add(b), p0),
                None,
                id_general(b, ctx.add(a)),
            )
            cut_b = go(inner, weaken(d1p, b))
            curried = node(RuleId.ImpR, Sequent(ctx, bc), None, cut_b)
            cut_c = go(curried, cut_ab)
            return go(cut_c, right2)
        if r2 is RuleId.BoxImpL:
            # phi = []x -> y; rebuild []x under the strong rule, then cut twice
            y = p1
            left2, right2 = d2.children
            boxed = _boxed_occurrences(ctx)
            s1 = unbox_left(d1p, boxed)
            s2 = go(s1, left2)
            s3 = node(RuleId.SLtR, Sequent(ctx, p0), None, s2)
            s4 = go(s3, d1p)
            return go(s4, right2)
        raise CutError(f"implication cut formula principal under {r2.value}")

    return _commute_right_rule(d1, d2, go)


def _cut_sltr(d1: Derivation, d2: Derivation, go) -> Derivation:
    """Left premise ends in SLtR; the cut formula is boxed."""
    ctx = d1.root.ant
    phi = d1.root.suc
    goal = d2.root.suc
    conclusion = Sequent(ctx, goal)
    f0 = phi.body
    loop = d1.children[0]
    r2 = d2.rule

    if r2 is RuleId.BoxImpL:
        pi = d2.principal
        y = pi.right
        left2, right2 = d2.children
        rest = ctx.remove(pi)
        rest_boxed = _boxed_occurrences(rest)
        # left branch: derive the unboxed premise by two nested cuts
        x2 = unbox_left(d1, rest_boxed)
        x3 = weaken(x2, pi.left)
        x4 = box_imp_lir(x3, pi)
        x6 = weaken(loop, pi.left)
        x7 = box_imp_lir(x6, pi)
        x8 = weaken(left2, phi)
        pi1 = go(x7, x8)
        pi0 = go(x4, pi1)
        # right branch
        x9 = box_imp_lir(d1, pi)
        xb = go(x9, right2)
        return node(RuleId.BoxImpL, conclusion, pi, pi0, xb)

    if r2 is RuleId.SLtR:
        g0 = goal.body
        p2 = d2.children[0]
        stripped = unbox_left(d1, _boxed_occurrences(ctx))
        a = weaken(stripped, goal)
        b = weaken(loop, goal)
        c = weaken(p2, phi)
        d = go(b, c)
        e = go(a, d)
        return node(RuleId.SLtR, conclusion, None, e)

    return _commute_right_rule(d1, d2, go)


def _boxed_occurrences(ms: Multiset) -> list[Formula]:
    out: list[Formula] = []
    for f, n in ms.entries:
        if isinstance(f, Box):
            out.extend([f] * n)
    return out


def _commute_right_rule(d1: Derivation, d2: Derivation, go) -> Derivation:
    """The right premise's last rule does not touch the cut formula:
    push the cut into its premises and replay the rule."""
    ctx = d1.root.ant
    phi = d1.root.suc
    goal = d2.root.suc
    conclusion = Sequent(ctx, goal)
    r2 = d2.rule

    if r2 is RuleId.IdP:
        return idp(conclusion)
    if r2 is RuleId.BotL:
        return botl(conclusion)
    if r2 is RuleId.ImpR:
        sub = go(weaken(d1, goal.left), d2.children[0])
        return node(RuleId.ImpR, conclusion, None, sub)
    if r2 is RuleId.AndR:
        subs = [go(d1, c) for c in d2.children]
        return node(RuleId.AndR, conclusion, None, *subs)
    if r2 in (RuleId.OrR1, RuleId.OrR2):
        return node(r2, conclusion, None, go(d1, d2.children[0]))
    if r2 in _INVERTIBLE_LEFT:
        pi = d2.principal
        mirrored = invert(r2, d1, pi)
        subs = [go(m, c) for m, c in zip(mirrored, d2.children)]
        return node(r2, conclusion, pi, *subs)
    if r2 is RuleId.ImpImpL:
        pi = d2.principal
        x, y, z = pi.left.left, pi.left.right, pi.right
        yz = Imp(y, z)
        left2, right2 = d2.children
        rest = ctx.remove(pi)
        nb = go(imp_imp_lir(d1, pi), right2)
        spread = contract(imp_imp_lil(d1, pi), yz)
        opened = _invert_imp_r(left2)
        inner = go(spread, opened)
        na = node(RuleId.ImpR, Sequent(rest.add(yz), pi.left), None, inner)
        return node(RuleId.ImpImpL, conclusion, pi, na, nb)
    if r2 is RuleId.BoxImpL:
        # reached only for a non-boxed cut formula
        assert isinstance(phi, Imp), print_formula(phi)
        pi = d2.principal
        y = pi.right
        left2, right2 = d2.children
        rest = ctx.remove(pi)
        nb = go(box_imp_lir(d1, pi), right2)
        c0 = _invert_imp_r(d1)
        c1 = weaken(c0, pi.left)
        c2 = box_imp_lir(c1, pi)
        c3 = unbox_left(c2, _boxed_occurrences(rest))
        rebuilt = node(
            RuleId.ImpR,
            Sequent(left2.root.ant.remove(phi), phi),
            None,
            c3,
        )
        na = go(rebuilt, left2)
        return node(RuleId.BoxImpL, conclusion, pi, na, nb)
    if r2 is RuleId.SLtR:
        assert isinstance(phi, Imp), print_formula(phi)
        g0 = goal.body
        p2 = d2.children[0]
        stripped = unbox_left(d1, _boxed_occurrences(ctx))
        sub = go(weaken(stripped, goal), p2)
        return node(RuleId.SLtR, conclusion, None, sub)
    raise CutError(f"unexpected right rule {r2.value}")


def eliminate(d: Derivation, debug: bool = False, log: Optional[list] = None) -> Derivation:
    """Rewrite every Cut node bottom-up through cut_admissible; the result
    is cut-free with the same root sequent."""
    bad = check(d, allow_cut=True)
    if bad is not None:
        raise CutError(f"input fails checking: {bad}")
    if sys.getrecursionlimit() < 100000:
        sys.setrecursionlimit(100000)
    out = _eliminate(d, debug, log)
    assert out.root == d.root
    return out


def _eliminate(d: Derivation, debug: bool, log) -> Derivation:
    children = [_eliminate(c, debug, log) for c in d.children]
    if d.rule is RuleId.Cut:
        return _cut(children[0], children[1], None, debug, log)
    if not d.children:
        return d
    return node(d.rule, d.root, d.principal, *children)
