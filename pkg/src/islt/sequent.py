"""Sequents over canonical multisets.

Antecedents are multisets kept in a sorted canonical form, so structurally
equal sequents compare and hash equal and exchange is a non-operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .formula import Box, Formula, ParseError, _Parser, print_formula, sort_key
from .formula import variables as formula_variables


@dataclass(frozen=True)
class Multiset:
    """Multiset of formulas as (formula, count) entries sorted by sort_key."""

    entries: tuple[tuple[Formula, int], ...] = ()

    @staticmethod
    def of(*formulas: Formula) -> "Multiset":
        return Multiset.from_iterable(formulas)

    @staticmethod
    def from_iterable(formulas: Iterable[Formula]) -> "Multiset":
        counts: dict[Formula, int] = {}
        for f in formulas:
            counts[f] = counts.get(f, 0) + 1
        return Multiset(tuple(sorted(counts.items(), key=lambda e: sort_key(e[0]))))

    def count(self, f: Formula) -> int:
        for g, n in self.entries:
            if g == f:
                return n
        return 0

    def __contains__(self, f: Formula) -> bool:
        return self.count(f) > 0

    def __len__(self) -> int:
        return sum(n for _, n in self.entries)

    def __iter__(self) -> Iterator[Formula]:
        for f, n in self.entries:
            for _ in range(n):
                yield f

    def distinct(self) -> Iterator[Formula]:
        for f, _ in self.entries:
            yield f

    def add(self, f: Formula, n: int = 1) -> "Multiset":
        counts = dict(self.entries)
        counts[f] = counts.get(f, 0) + n
        return Multiset(tuple(sorted(counts.items(), key=lambda e: sort_key(e[0]))))

    def remove(self, f: Formula) -> "Multiset":
        """Drop one occurrence; absence is an error."""
        return self.remove_all(Multiset.of(f))

    def remove_all(self, other: "Multiset") -> "Multiset":
        counts = dict(self.entries)
        for f, n in other.entries:
            have = counts.get(f, 0)
            if have < n:
                raise KeyError(f"removing {n} of {print_formula(f)}, only {have} present")
            if have == n:
                del counts[f]
            else:
                counts[f] = have - n
        return Multiset(tuple(sorted(counts.items(), key=lambda e: sort_key(e[0]))))

    def union(self, other: "Multiset") -> "Multiset":
        counts = dict(self.entries)
        for f, n in other.entries:
            counts[f] = counts.get(f, 0) + n
        return Multiset(tuple(sorted(counts.items(), key=lambda e: sort_key(e[0]))))


def msum(a: Multiset, b: Multiset) -> Multiset:
    return a.union(b)


def mremove(a: Multiset, f: Formula) -> Multiset:
    return a.remove(f)


def partition_boxed(a: Multiset) -> tuple[Multiset, Multiset]:
    """Maximal split (phi, gamma): phi holds the non-boxed occurrences and
    gamma the bodies of the boxed ones, one box level only."""
    phi: list[tuple[Formula, int]] = []
    gamma: dict[Formula, int] = {}
    for f, n in a.entries:
        if isinstance(f, Box):
            gamma[f.body] = gamma.get(f.body, 0) + n
        else:
            phi.append((f, n))
    return (
        Multiset(tuple(phi)),
        Multiset(tuple(sorted(gamma.items(), key=lambda e: sort_key(e[0])))),
    )


def box_all(a: Multiset) -> Multiset:
    return Multiset(tuple(sorted(((Box(f), n) for f, n in a.entries), key=lambda e: sort_key(e[0]))))


def unbox_one_level(a: Multiset) -> Multiset:
    """Strip one box from every boxed occurrence, keep the rest."""
    phi, gamma = partition_boxed(a)
    return phi.union(gamma)


@dataclass(frozen=True)
class Sequent:
    ant: Multiset
    suc: Formula

    def __str__(self) -> str:
        return print_sequent(self)


def sequent(ant: Iterable[Formula], suc: Formula) -> Sequent:
    return Sequent(Multiset.from_iterable(ant), suc)


def print_sequent(s: Sequent) -> str:
    left = ", ".join(print_formula(f) for f in s.ant)
    if left:
        return f"{left} => {print_formula(s.suc)}"
    return f"=> {print_formula(s.suc)}"


def parse_sequent(text: str) -> Sequent:
    """Parse ``f1, ..., fn => g``; the antecedent may be empty."""
    p = _Parser(text)
    ant: list[Formula] = []
    if p.peek() != "seq":
        ant.append(p.formula())
        while p.peek() == "comma":
            p.next()
            ant.append(p.formula())
    p.expect("seq")
    suc = p.formula()
    kind, value, pos = p.next()
    if kind != "eof":
        raise ParseError(f"trailing input {value!r}", pos)
    return sequent(ant, suc)


def variables(s: Sequent) -> set[str]:
    vs = formula_variables(s.suc)
    for f in s.ant.distinct():
        vs |= formula_variables(f)
    return vs
