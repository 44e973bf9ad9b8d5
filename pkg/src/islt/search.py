"""Backward proof search.

Naive depth-first search over expand(); termination is structural, because
every rule instance strictly reduces theta upwards. Memoization on canonical
sequents is on by default; naive mode turns it off and shuffles the rule
order with a seed, which must not change any verdict.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Union

from .calculus import Derivation, RuleId, expand
from .formula import Formula
from .measure import shortlex_less, theta
from .sequent import Multiset, Sequent


@dataclass(frozen=True)
class Proved:
    proof: Derivation


@dataclass(frozen=True)
class Unprovable:
    explored: int


@dataclass(frozen=True)
class BudgetExceeded:
    explored: int


SearchResult = Union[Proved, Unprovable, BudgetExceeded]

# zero-premise, then single-premise invertible, then branching, then SLtR;
# a heuristic only, any order must give the same verdict
_PRIORITY = {
    RuleId.BotL: 0,
    RuleId.IdP: 0,
    RuleId.AndL: 1,
    RuleId.ImpR: 1,
    RuleId.AtomImpL: 1,
    RuleId.AndImpL: 1,
    RuleId.OrImpL: 1,
    RuleId.AndR: 2,
    RuleId.OrL: 2,
    RuleId.OrR1: 3,
    RuleId.OrR2: 3,
    RuleId.ImpImpL: 3,
    RuleId.BoxImpL: 3,
    RuleId.SLtR: 4,
}


class _Budget(Exception):
    pass


def prove(
    s: Sequent,
    naive: bool = False,
    seed: Optional[int] = None,
    budget: Optional[int] = None,
    debug: bool = False,
) -> SearchResult:
    """Decide s. naive=True disables memoization and shuffles rule order
    using seed; budget caps the number of distinct sequents visited."""
    rng = random.Random(seed) if naive else None
    memo: dict[Sequent, Optional[Derivation]] = {}
    visited: set[Sequent] = set()

    def order(instances):
        if rng is not None:
            instances = list(instances)
            rng.shuffle(instances)
            return instances
        return sorted(instances, key=lambda i: _PRIORITY[i.rule])

    def search(seq: Sequent, parent_theta) -> Optional[Derivation]:
        if not naive and seq in memo:
            return memo[seq]
        if seq not in visited:
            if budget is not None and len(visited) >= budget:
                raise _Budget()
            visited.add(seq)
        own_theta = None
        if debug:
            own_theta = theta(seq)
            # strict decrease against the immediate parent rules out loops
            assert parent_theta is None or shortlex_less(own_theta, parent_theta), (
                f"theta failed to decrease at {seq}"
            )
        result: Optional[Derivation] = None
        for inst in order(expand(seq)):
            children = []
            for premise in inst.premises:
                sub = search(premise, own_theta)
                if sub is None:
                    break
                children.append(sub)
            else:
                result = Derivation(seq, inst.rule, inst.principal, tuple(children))
                break
        if not naive:
            memo[seq] = result
        return result

    try:
        found = search(s, None)
    except _Budget:
        return BudgetExceeded(len(visited))
    if found is None:
        return Unprovable(len(visited))
    return Proved(found)


def decide(f: Formula, **kwargs) -> SearchResult:
    return prove(Sequent(Multiset(), f), **kwargs)
