"""Finite Kripke models: validation, forcing, exhaustive enumeration,
bounded countermodel search.

Frames carry an intuitionistic preorder leq and a transitive irreflexive
modal relation r with (leq ; r) contained in r and r contained in leq; the
two containments make forcing persistent and keep the box a strong Loeb
modality on finite frames. r empty recovers plain intuitionistic models.
Absence of a countermodel within the world bound proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterator, Optional, Sequence

from .formula import And, Bot, Box, Formula, Imp, Or, Var
from .sequent import Sequent
from .sequent import variables as sequent_variables

ENUMERATION_BOUND = 3


@dataclass(frozen=True)
class KripkeModel:
    worlds: int
    leq: frozenset[tuple[int, int]]
    r: frozenset[tuple[int, int]]
    valuation: dict[str, frozenset[int]]

    def __post_init__(self):
        object.__setattr__(self, "valuation", dict(self.valuation))

    def __hash__(self):
        return hash((self.worlds, self.leq, self.r, tuple(sorted(self.valuation.items()))))

    def __eq__(self, other):
        return (
            isinstance(other, KripkeModel)
            and self.worlds == other.worlds
            and self.leq == other.leq
            and self.r == other.r
            and self.valuation == other.valuation
        )


def validate_model(m: KripkeModel) -> list[str]:
    """Empty list when m satisfies every frame and valuation condition."""
    problems: list[str] = []
    if m.worlds < 1:
        problems.append("a model needs at least one world")
    for rel, name in ((m.leq, "leq"), (m.r, "r")):
        for (a, b) in rel:
            if not (0 <= a < m.worlds and 0 <= b < m.worlds):
                problems.append(f"{name} mentions world pair ({a},{b}) out of range")
    for w in range(m.worlds):
        if (w, w) not in m.leq:
            problems.append(f"leq not reflexive at {w}")
    for (a, b) in m.leq:
        for (c, d) in m.leq:
            if b == c and (a, d) not in m.leq:
                problems.append(f"leq not transitive: ({a},{b}) and ({c},{d})")
    for (a, b) in m.r:
        if a == b:
            problems.append(f"r not irreflexive at {a}")
        if (a, b) not in m.leq:
            problems.append(f"r not inside leq: ({a},{b})")
    for (a, b) in m.r:
        for (c, d) in m.r:
            if b == c and (a, d) not in m.r:
                problems.append(f"r not transitive: ({a},{b}) and ({c},{d})")
    for (a, b) in m.leq:
        for (c, d) in m.r:
            if b == c and (a, d) not in m.r:
                problems.append(f"leq;r escapes r: {a} leq {b} r {d}")
    for name, worlds in m.valuation.items():
        for w in worlds:
            if not (0 <= w < m.worlds):
                problems.append(f"valuation of {name} mentions world {w} out of range")
        for (a, b) in m.leq:
            if a in worlds and b not in worlds:
                problems.append(f"valuation of {name} not persistent: {a} leq {b}")
    return problems


def evaluator(m: KripkeModel) -> Callable[[Formula], int]:
    """Forcing extensions as world bitmasks, memoized per subformula."""
    up = [0] * m.worlds
    for (a, b) in m.leq:
        up[a] |= 1 << b
    rm = [0] * m.worlds
    for (a, b) in m.r:
        rm[a] |= 1 << b
    full = (1 << m.worlds) - 1
    cache: dict[Formula, int] = {}

    def ext(g: Formula) -> int:
        got = cache.get(g)
        if got is not None:
            return got
        if isinstance(g, Var):
            mask = 0
            for w in m.valuation.get(g.name, frozenset()):
                mask |= 1 << w
        elif isinstance(g, Bot):
            mask = 0
        elif isinstance(g, And):
            mask = ext(g.left) & ext(g.right)
        elif isinstance(g, Or):
            mask = ext(g.left) | ext(g.right)
        elif isinstance(g, Imp):
            bad = ext(g.left) & ~ext(g.right) & full
            mask = sum(1 << w for w in range(m.worlds) if not (up[w] & bad))
        elif isinstance(g, Box):
            bad = ~ext(g.body) & full
            mask = sum(1 << w for w in range(m.worlds) if not (rm[w] & bad))
        else:
            raise TypeError(f"not a formula: {g!r}")
        cache[g] = mask
        return mask

    return ext


def forces(m: KripkeModel, w: int, f: Formula) -> bool:
    if not (0 <= w < m.worlds):
        raise ValueError(f"world {w} out of range")
    return bool(evaluator(m)(f) >> w & 1)


def valid(m: KripkeModel, s: Sequent) -> bool:
    """Every world forcing the whole antecedent forces the succedent."""
    ext = evaluator(m)
    ants = (1 << m.worlds) - 1
    for f in s.ant.distinct():
        ants &= ext(f)
    return not (ants & ~ext(s.suc))


def _preorders(n: int) -> list[frozenset[tuple[int, int]]]:
    diagonal = [(w, w) for w in range(n)]
    offdiag = [(a, b) for a in range(n) for b in range(n) if a != b]
    found = []
    for bits in product((False, True), repeat=len(offdiag)):
        rel = set(diagonal)
        rel.update(p for p, keep in zip(offdiag, bits) if keep)
        if all((a, d) in rel for (a, b) in rel for (c, d) in rel if b == c):
            found.append(frozenset(rel))
    return found


def _modal_relations(n: int, leq: frozenset[tuple[int, int]]) -> list[frozenset[tuple[int, int]]]:
    strict = sorted(p for p in leq if p[0] != p[1])
    found = []
    for k in range(len(strict) + 1):
        for chosen in combinations(strict, k):
            r = frozenset(chosen)
            if any((a, d) not in r for (a, b) in r for (c, d) in r if b == c):
                continue
            if any((a, d) not in r for (a, b) in leq for (c, d) in r if b == c):
                continue
            found.append(r)
    return found


def _upward_closed(n: int, leq: frozenset[tuple[int, int]]) -> list[frozenset[int]]:
    out = []
    for bits in product((False, True), repeat=n):
        worlds = frozenset(w for w in range(n) if bits[w])
        if all(b in worlds for (a, b) in leq if a in worlds):
            out.append(worlds)
    return out


def enumerate_models(
    max_worlds: int, variables: Sequence[str], bound: int = ENUMERATION_BOUND
) -> Iterator[KripkeModel]:
    """Every model with 1..max_worlds worlds over the given variables, up to
    canonical world indexing, in a deterministic order."""
    if max_worlds > bound:
        raise ValueError(f"max_worlds {max_worlds} exceeds the enumeration bound {bound}")
    names = list(variables)
    for n in range(1, max_worlds + 1):
        for leq in sorted(_preorders(n), key=sorted):
            ups = _upward_closed(n, leq)
            for r in sorted(_modal_relations(n, leq), key=sorted):
                for chosen in product(ups, repeat=len(names)):
                    yield KripkeModel(n, leq, r, dict(zip(names, chosen)))


def find_countermodel(
    s: Sequent,
    max_worlds: int = 3,
    variables: Optional[Sequence[str]] = None,
    bound: int = ENUMERATION_BOUND,
) -> Optional[tuple[KripkeModel, int]]:
    """First (model, world) forcing the antecedent but not the succedent.
    None only means nothing within the bound, not provability."""
    if variables is None:
        variables = sorted(sequent_variables(s))
    for m in enumerate_models(max_worlds, variables, bound=bound):
        ext = evaluator(m)
        ants = (1 << m.worlds) - 1
        for f in s.ant.distinct():
            ants &= ext(f)
        bad = ants & ~ext(s.suc)
        if bad:
            return m, (bad & -bad).bit_length() - 1
    return None


def model_to_json(m: KripkeModel) -> dict:
    return {
        "worlds": m.worlds,
        "leq": sorted([a, b] for (a, b) in m.leq),
        "r": sorted([a, b] for (a, b) in m.r),
        "valuation": {name: sorted(ws) for name, ws in sorted(m.valuation.items())},
    }


def model_from_json(obj: dict) -> KripkeModel:
    return KripkeModel(
        obj["worlds"],
        frozenset((a, b) for a, b in obj["leq"]),
        frozenset((a, b) for a, b in obj["r"]),
        {name: frozenset(ws) for name, ws in obj["valuation"].items()},
    )
