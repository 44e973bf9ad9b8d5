"""Shortlex-ordered weight histograms used as the termination measure.

theta(s) strips one box from every boxed antecedent occurrence, throws in the
succedent, and histograms the weights of the resulting topmost formulas.
Every backward rule step strictly reduces it, which is exactly what the
search and cut recursions lean on.
"""

from __future__ import annotations

from .formula import weight
from .sequent import Multiset, Sequent, unbox_one_level

Theta = list[int]


def weight_histogram(ms: Multiset) -> Theta:
    """List of length max-weight; position k from the right (1-indexed)
    counts the occurrences of weight k. Empty multiset gives []."""
    counts: dict[int, int] = {}
    for f, n in ms.entries:
        w = weight(f)
        counts[w] = counts.get(w, 0) + n
    if not counts:
        return []
    top = max(counts)
    return [counts.get(top - i, 0) for i in range(top)]


def theta(s: Sequent) -> Theta:
    return weight_histogram(unbox_one_level(s.ant).add(s.suc))


def shortlex_less(a: Theta, b: Theta) -> bool:
    """Shorter lists first; equal lengths compare lexicographically."""
    if len(a) != len(b):
        return len(a) < len(b)
    return a < b
