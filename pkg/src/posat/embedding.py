"""Induced copies of a poset inside a family of sets ordered by inclusion.

The search is a backtracking over poset elements in a fixed order (most
comparabilities first).  Each element's candidate list starts as the family
members whose cardinality is compatible with the element's height, in
ascending integer order; after every assignment the candidate lists of the
remaining elements are filtered against the new image, so both directions
of the induced condition are enforced as soon as a pair is complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Optional, Sequence

from .errors import PreconditionError, SizeLimitError
from .family import SubsetFamily, to_elements
from .poset import Poset

_BELOW, _ABOVE, _APART = 1, 2, 0


@dataclass(frozen=True)
class EmbeddingWitness:
    """``assignment[a]`` is the set (bitmask) that poset element ``a`` maps to."""

    assignment: tuple[int, ...]

    def image(self) -> frozenset:
        return frozenset(self.assignment)

    def is_valid(self, P: Poset) -> bool:
        img = self.assignment
        if len(img) != P.size or len(set(img)) != len(img):
            return False
        for a in range(P.size):
            for b in range(P.size):
                if a != b:
                    proper = img[a] & img[b] == img[a] and img[a] != img[b]
                    if proper != P.lt[a][b]:
                        return False
        return True

    def to_json(self) -> dict:
        return {"map": [[a, to_elements(x)] for a, x in enumerate(self.assignment)]}


class _Plan:
    """Search order and pairwise relation table for one poset."""

    __slots__ = ("order", "rel", "lo", "hi_gap")

    def __init__(self, P: Poset, first: Optional[int] = None):
        deg = [(P.down_masks[a] | P.up_masks[a]).bit_count() for a in range(P.size)]
        order = sorted(range(P.size), key=lambda a: (-deg[a], a))
        if first is not None:
            order.remove(first)
            order.insert(0, first)
        self.order = order
        k = P.size
        # rel[i][j] for i < j: how order[j] must relate to order[i]
        self.rel = [[0] * k for _ in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                a, b = order[i], order[j]
                self.rel[i][j] = _ABOVE if P.lt[a][b] else (_BELOW if P.lt[b][a] else _APART)
        self.lo = [P.height_below[a] for a in order]
        self.hi_gap = [P.height_above[a] for a in order]


_plan_cache: dict = {}


def _plan(P: Poset, first: Optional[int] = None) -> _Plan:
    key = (P, first)
    plan = _plan_cache.get(key)
    if plan is None:
        if len(_plan_cache) > 512:
            _plan_cache.clear()
        plan = _plan_cache[key] = _Plan(P, first)
    return plan


def _filter(dom: list[int], x: int, rel: int) -> list[int]:
    if rel == _ABOVE:
        return [y for y in dom if y & x == x and y != x]
    if rel == _BELOW:
        return [y for y in dom if y & x == y and y != x]
    return [y for y in dom if y & x != x and y & x != y]


def iter_embeddings(members: Sequence[int], P: Poset, n: int,
                    anchor: Optional[tuple[int, int]] = None) -> Iterator[tuple[int, ...]]:
    """Yield every induced copy of ``P`` in ``members`` as an assignment tuple.

    ``anchor=(a, x)`` restricts to copies sending poset element ``a`` to ``x``.
    Members are tried in the order given; callers pass them sorted.
    """
    k = P.size
    if k == 0:
        yield ()
        return
    plan = _plan(P, None if anchor is None else anchor[0])
    order, rel = plan.order, plan.rel
    domains = []
    for i in range(k):
        lo, hi = plan.lo[i], n - plan.hi_gap[i]
        domains.append([x for x in members if lo <= x.bit_count() <= hi])
    if anchor is not None:
        x = anchor[1]
        domains[0] = [x] if x in domains[0] else []
    img = [0] * k

    def rec(i, doms):
        dom = doms[0]
        rest = doms[1:]
        row = rel[i]
        for x in dom:
            img[i] = x
            if i + 1 == k:
                out = [0] * k
                for pos, a in enumerate(order):
                    out[a] = img[pos]
                yield tuple(out)
                continue
            new = []
            for off, d in enumerate(rest):
                d = _filter(d, x, row[i + 1 + off])
                if not d:
                    break
                new.append(d)
            else:
                yield from rec(i + 1, new)

    yield from rec(0, domains)


def first_embedding(members: Sequence[int], P: Poset, n: int,
                    anchor: Optional[tuple[int, int]] = None) -> Optional[tuple[int, ...]]:
    return next(iter_embeddings(members, P, n, anchor), None)


def copy_through(members: Sequence[int], x: int, P: Poset, n: int) -> Optional[tuple[int, ...]]:
    """First induced copy of ``P`` in ``members`` whose image contains ``x``."""
    for a in range(P.size):
        found = first_embedding(members, P, n, (a, x))
        if found is not None:
            return found
    return None


def find_induced_copy(F: SubsetFamily, P: Poset) -> Optional[EmbeddingWitness]:
    found = first_embedding(F.members, P, F.n)
    return None if found is None else EmbeddingWitness(found)


def find_copy_through(F: SubsetFamily, X: int, P: Poset) -> Optional[EmbeddingWitness]:
    if X not in F:
        raise PreconditionError(f"set {to_elements(X)} is not a member of the family")
    found = copy_through(F.members, X, P, F.n)
    return None if found is None else EmbeddingWitness(found)


def contains_copy(F: SubsetFamily, P: Poset) -> bool:
    return first_embedding(F.members, P, F.n) is not None


def copy_images(members: Sequence[int], P: Poset, n: int) -> set[frozenset]:
    """Distinct images (as sets of members) of all induced copies."""
    return {frozenset(a) for a in iter_embeddings(members, P, n)}


ORACLE_MAX_FAMILY = 12
ORACLE_MAX_POSET = 5


def oracle_find_copy(F: SubsetFamily, P: Poset) -> Optional[EmbeddingWitness]:
    """Exhaustive injection scan in lexicographic order; the testing oracle."""
    if len(F) > ORACLE_MAX_FAMILY or P.size > ORACLE_MAX_POSET:
        raise SizeLimitError(
            f"oracle limited to |F| <= {ORACLE_MAX_FAMILY} and |P| <= {ORACLE_MAX_POSET}")
    k = P.size
    for img in permutations(F.members, k):
        good = True
        for a in range(k):
            for b in range(k):
                if a != b and (img[a] & img[b] == img[a]) != P.lt[a][b]:
                    good = False
                    break
            if not good:
                break
        if good:
            return EmbeddingWitness(tuple(img))
    return None
