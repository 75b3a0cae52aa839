"""Exact saturation numbers at small n.

Two independent routes:

* ``exhaustive`` (n <= 4) lists every induced copy of P in the whole cube,
  marks each copy as a bitmask over the 2^n sets, and pushes the marks up
  the lattice of all 2^(2^n) families with a superset-sum pass.  A family is
  saturated when it is unmarked and every one-set extension is marked.
* ``bnb`` (n <= 5) decides the sets one at a time in ascending order,
  including before excluding, and keeps the partial family P-free.  Every
  excluded set must eventually see a copy through itself; a branch dies as
  soon as some excluded set can no longer be covered by the sets still
  available, or when it cannot beat the incumbent size.

With include-first ordering, the first leaf of each size is the
lexicographically least family of that size, so both routes return the
same witness.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .embedding import copy_images, copy_through
from .errors import PreconditionError, SizeLimitError
from .family import SubsetFamily
from .poset import Poset, antichain, sum_of
from .saturation import check_saturated, greedy_saturate

MAX_EXHAUSTIVE_N = 4
MAX_BNB_N = 5
DEFAULT_BUDGET = 10 ** 8


@dataclass(frozen=True)
class SearchResult:
    sat_star: int
    witness: SubsetFamily
    nodes_explored: int
    method: str
    complete: bool = True
    sequential: bool = True

    def to_json(self) -> dict:
        return {
            "sat_star": self.sat_star,
            "witness": self.witness.to_json(),
            "nodes_explored": self.nodes_explored,
            "method": self.method,
            "complete": self.complete,
            "sequential": self.sequential,
        }


def _saturated_mask_table(n: int, P: Poset) -> np.ndarray:
    """Boolean table over all families of P([n]) (family = bitmask of sets)."""
    if n > MAX_EXHAUSTIVE_N:
        raise SizeLimitError(f"exhaustive search limited to n <= {MAX_EXHAUSTIVE_N}")
    N = 1 << n
    contains = np.zeros(1 << N, dtype=bool)
    masks = [sum(1 << s for s in img) for img in copy_images(range(N), P, n)]
    if masks:
        contains[np.array(masks, dtype=np.int64)] = True
    for b in range(N):
        view = contains.reshape(-1, 2, 1 << b)
        view[:, 1, :] |= view[:, 0, :]
    saturated = ~contains
    for b in range(N):
        sat = saturated.reshape(-1, 2, 1 << b)
        sat[:, 0, :] &= contains.reshape(-1, 2, 1 << b)[:, 1, :]
    return saturated


def _mask_to_family(n: int, mask: int) -> SubsetFamily:
    return SubsetFamily(n, tuple(s for s in range(1 << n) if mask >> s & 1))


def enumerate_saturated(n: int, P: Poset) -> list[SubsetFamily]:
    """Every P-saturated family over [n], ordered by size then members."""
    table = _saturated_mask_table(n, P)
    fams = [_mask_to_family(n, int(m)) for m in np.flatnonzero(table)]
    fams.sort(key=lambda F: (len(F), F.members))
    return fams


def _exhaustive(n: int, P: Poset) -> SearchResult:
    table = _saturated_mask_table(n, P)
    idx = np.flatnonzero(table)
    # some maximal P-free family always exists, so idx is nonempty
    sizes = np.array([int(m).bit_count() for m in idx])
    best = int(sizes.min())
    candidates = [_mask_to_family(n, int(m)) for m in idx[sizes == best]]
    witness = min(candidates, key=lambda F: F.members)
    return SearchResult(best, witness, 1 << (1 << n), "exhaustive")


class _BudgetExhausted(Exception):
    pass


def _bnb(n: int, P: Poset, budget: int) -> SearchResult:
    if n > MAX_BNB_N:
        raise SizeLimitError(f"branch-and-bound limited to n <= {MAX_BNB_N}")
    N = 1 << n
    best: Optional[tuple[int, ...]] = None
    nodes = 0

    def coverable(t, inside, nxt):
        return copy_through(sorted(inside + [t]) + list(range(nxt, N)), t, P, n) is not None

    def rec(s, inside, pending):
        nonlocal nodes, best
        nodes += 1
        if nodes > budget:
            raise _BudgetExhausted
        if best is not None and len(inside) >= len(best):
            return
        if s == N:
            if not pending:
                best = tuple(inside)
            return
        if copy_through(inside + [s], s, P, n) is not None:
            rec(s + 1, inside, pending)
            return
        if best is None or len(inside) + 1 < len(best):
            grown = inside + [s]
            still = [t for t in pending if copy_through(sorted(grown + [t]), t, P, n) is None]
            rec(s + 1, grown, still)
        waiting = pending + [s]
        if all(coverable(t, inside, s + 1) for t in waiting):
            rec(s + 1, inside, waiting)

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * N + 100))
    complete = True
    try:
        rec(0, [], [])
    except _BudgetExhausted:
        complete = False
    finally:
        sys.setrecursionlimit(limit)
    if best is None:
        witness = greedy_saturate(SubsetFamily(n, ()), P)
    else:
        witness = SubsetFamily(n, best)
    return SearchResult(len(witness), witness, min(nodes, budget), "bnb", complete=complete)


def sat_star_exact(n: int, P: Poset, budget: int = DEFAULT_BUDGET,
                   method: str = "auto") -> SearchResult:
    """Minimum size of a P-saturated family over [n] with its least witness."""
    if n < 1:
        raise SizeLimitError("n must be at least 1")
    if method == "auto":
        method = "exhaustive" if n <= MAX_EXHAUSTIVE_N else "bnb"
    if method == "exhaustive":
        result = _exhaustive(n, P)
    elif method == "bnb":
        result = _bnb(n, P, budget)
    else:
        raise PreconditionError(f"unknown method {method!r}")
    if not check_saturated(result.witness, P).is_saturated:
        raise AssertionError("search returned a family that is not saturated")
    return result


@dataclass(frozen=True)
class BoundReport:
    n: int
    sat_star: int
    complete: bool
    theorem_bound: int
    empty_part_bound: Optional[int]

    @property
    def theorem_margin(self) -> int:
        return self.sat_star - self.theorem_bound

    @property
    def empty_part_margin(self) -> Optional[int]:
        if self.empty_part_bound is None:
            return None
        return self.sat_star - self.empty_part_bound

    @property
    def holds(self) -> bool:
        if self.theorem_margin < 0:
            return False
        return self.empty_part_margin is None or self.empty_part_margin >= 0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sat_star": self.sat_star,
            "complete": self.complete,
            "theorem_bound": self.theorem_bound,
            "theorem_margin": self.theorem_margin,
            "empty_part_bound": self.empty_part_bound,
            "empty_part_margin": self.empty_part_margin,
            "holds": self.holds,
        }


def verify_theorem_bound(n: int, P1: Poset, k: int, P2: Poset,
                         budget: int = DEFAULT_BUDGET, method: str = "auto") -> BoundReport:
    """Compare the exact saturation number of P1*A_k*P2 with the linear lower bounds."""
    if k < 2:
        raise PreconditionError("middle antichain needs k >= 2")
    P = sum_of(P1, antichain(k), P2)
    result = sat_star_exact(n, P, budget=budget, method=method)
    extra = n + 1 if not (P1.size and P2.size) else None
    return BoundReport(n, result.sat_star, result.complete, math.ceil((n + 1) / 9), extra)
