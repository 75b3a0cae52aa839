"""Largest antichain of a set family via bipartite matching (Dilworth / König)."""

from __future__ import annotations

from typing import Sequence


def _max_matching(adj: list[list[int]], size: int) -> list[int]:
    match_right = [-1] * size

    def augment(u, seen):
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                if match_right[v] < 0 or augment(match_right[v], seen):
                    match_right[v] = u
                    return True
        return False

    for u in range(size):
        augment(u, [False] * size)
    return match_right


def max_antichain(members: Sequence[int]) -> list[int]:
    """A largest antichain among ``members`` under proper inclusion.

    Its size equals the minimum number of chains covering the family.
    """
    members = list(members)
    k = len(members)
    adj = [[j for j in range(k) if i != j and members[i] & members[j] == members[i]]
           for i in range(k)]
    match_right = _max_matching(adj, k)
    match_left = [-1] * k
    for v, u in enumerate(match_right):
        if u >= 0:
            match_left[u] = v
    # alternating search from unmatched left vertices
    seen_left = [match_left[u] < 0 for u in range(k)]
    seen_right = [False] * k
    stack = [u for u in range(k) if seen_left[u]]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen_right[v]:
                seen_right[v] = True
                w = match_right[v]
                if w >= 0 and not seen_left[w]:
                    seen_left[w] = True
                    stack.append(w)
    return [members[x] for x in range(k) if seen_left[x] and not seen_right[x]]


def width(members: Sequence[int]) -> int:
    return len(max_antichain(members))
