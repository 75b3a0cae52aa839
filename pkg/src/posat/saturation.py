"""P-freeness, P-saturation and greedy completion inside the Boolean lattice."""

from __future__ import annotations

from bisect import insort
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .embedding import EmbeddingWitness, copy_through, find_induced_copy
from .errors import PreconditionError, SizeLimitError
from .family import SubsetFamily, to_elements
from .poset import POINT, Poset, has_unique_maximal, has_unique_minimal, linear_sum

MAX_SCAN_GROUND = 20


@dataclass(frozen=True)
class SaturationReport:
    is_free: bool
    is_saturated: bool
    witness: Optional[EmbeddingWitness] = None
    gap: Optional[int] = None

    def to_json(self) -> dict:
        out = {"is_free": self.is_free, "is_saturated": self.is_saturated, "certificate": None}
        if self.witness is not None:
            out["certificate"] = {"kind": "copy", **self.witness.to_json()}
        elif self.gap is not None:
            out["certificate"] = {"kind": "gap", "set": to_elements(self.gap)}
        return out


def is_free(F: SubsetFamily, P: Poset) -> bool:
    return find_induced_copy(F, P) is None


def _first_gap(members: tuple[int, ...], P: Poset, n: int, start: int, stop: int) -> Optional[int]:
    present = set(members)
    for s in range(start, stop):
        if s in present:
            continue
        extended = list(members)
        insort(extended, s)
        if copy_through(extended, s, P, n) is None:
            return s
    return None


def _scan_chunk(args):
    return _first_gap(*args)


def check_saturated(F: SubsetFamily, P: Poset, jobs: int = 1) -> SaturationReport:
    """Full verdict with a certificate.

    The outside sets are scanned in ascending order and the smallest gap is
    reported.  With ``jobs > 1`` the scan is split into contiguous ranges over
    worker processes; the minimum gap across ranges is the same as the
    sequential one.
    """
    if F.n > MAX_SCAN_GROUND:
        raise SizeLimitError(f"saturation scan limited to n <= {MAX_SCAN_GROUND}")
    witness = find_induced_copy(F, P)
    if witness is not None:
        return SaturationReport(False, False, witness=witness)
    total = 1 << F.n
    if jobs <= 1 or total < 256:
        gap = _first_gap(F.members, P, F.n, 0, total)
    else:
        step = -(-total // (jobs * 4))
        chunks = [(F.members, P, F.n, lo, min(lo + step, total)) for lo in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            gaps = [g for g in pool.map(_scan_chunk, chunks) if g is not None]
        gap = min(gaps) if gaps else None
    if gap is not None:
        return SaturationReport(True, False, gap=gap)
    return SaturationReport(True, True)


def greedy_saturate(F0: SubsetFamily, P: Poset) -> SubsetFamily:
    """Scan all subsets in ascending order, keeping each one that stays P-free."""
    if F0.n > MAX_SCAN_GROUND:
        raise SizeLimitError(f"saturation scan limited to n <= {MAX_SCAN_GROUND}")
    if not is_free(F0, P):
        raise PreconditionError("starting family already contains an induced copy")
    members = list(F0.members)
    present = set(members)
    for s in range(1 << F0.n):
        if s in present:
            continue
        insort(members, s)
        if copy_through(members, s, P, F0.n) is None:
            present.add(s)
        else:
            members.remove(s)
    return SubsetFamily(F0.n, tuple(members))


def check_separating(F: SubsetFamily) -> tuple[bool, list[int]]:
    """Coordinates i with no members A, B such that A \\ B = {i}."""
    separated = 0
    for a in F.members:
        for b in F.members:
            d = a & ~b
            if d and d & (d - 1) == 0:
                separated |= d
    missing = [i + 1 for i in range(F.n) if not separated >> i & 1]
    return not missing, missing


def check_gluing_property(F: SubsetFamily, Q1: Poset, Q2: Poset, n: int) -> bool:
    """Whether a Q1*Q2-saturated family is also Q1*point*Q2-saturated.

    The preconditions are those under which this always holds, so a False
    return is a counterexample and points at a bug.
    """
    if F.n != n:
        raise PreconditionError(f"family lives over [{F.n}], expected [{n}]")
    if not (Q1.size or Q2.size):
        raise PreconditionError("Q1 and Q2 cannot both be empty")
    if Q1.size and has_unique_minimal(Q1):
        raise PreconditionError("Q1 must not have a unique minimal element")
    if Q2.size and has_unique_maximal(Q2):
        raise PreconditionError("Q2 must not have a unique maximal element")
    if not check_saturated(F, linear_sum(Q1, Q2)).is_saturated:
        raise PreconditionError("family is not Q1*Q2-saturated")
    return check_saturated(F, linear_sum(Q1, linear_sum(POINT, Q2))).is_saturated
