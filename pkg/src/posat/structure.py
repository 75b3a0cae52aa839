"""Structural decomposition of a family against P1 * A_k * P2.

``M0``  members with a copy of P2 inside their own down-set (inclusive)
``M``   minimal elements of M0
``N0``  members with a copy of P1 inside their own up-set (inclusive)
``N``   maximal elements of N0
``L0``  sets strictly above some copy of A_k * P2 in F
``L1``  minimal sets lying strictly above some copy of A_k * P2 in F
``L``   members of L1 that contain no member of N
``GL``  members of F taking part in a copy of A_k * P2 strictly below some L
``W``   coordinates outside every member of L

The lemma battery checks the statements about these objects that hold for
every saturated family; a "violated" verdict on a family that really is
saturated points at a bug.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence

from .embedding import copy_through, first_embedding, iter_embeddings
from .errors import PosatError, PreconditionError, SizeLimitError
from .family import SubsetFamily, complement_family, to_elements
from .poset import Poset, antichain, has_unique_maximal, has_unique_minimal, linear_sum, sum_of
from .saturation import check_saturated

MAX_DECOMPOSITION_N = 14

HOLDS = "holds"
VIOLATED = "violated"
NOT_MET = "hypothesis-not-met"
NOT_APPLICABLE = "not-applicable"


def _minimal(sets: Iterable[int]) -> list[int]:
    sets = sorted(set(sets))
    return [x for x in sets if not any(y != x and y & x == y for y in sets)]


def _maximal(sets: Iterable[int]) -> list[int]:
    sets = sorted(set(sets))
    return [x for x in sets if not any(y != x and y & x == x for y in sets)]


def _has_copy(members: Sequence[int], P: Poset, n: int) -> bool:
    return P.size == 0 or first_embedding(members, P, n) is not None


def _proper_below(members: Sequence[int], top: int) -> list[int]:
    return [x for x in members if x & top == x and x != top]


@dataclass(frozen=True)
class Decomposition:
    n: int
    M0: tuple[int, ...]
    M: tuple[int, ...]
    N0: tuple[int, ...]
    N: tuple[int, ...]
    L0: tuple[int, ...]
    L1: tuple[int, ...]
    L: tuple[int, ...]
    GL: tuple[int, ...]
    W: tuple[int, ...]

    def to_json(self) -> dict:
        out = {"n": self.n}
        for name in ("M0", "M", "N0", "N", "L0", "L1", "L", "GL"):
            out[name] = [to_elements(x) for x in getattr(self, name)]
        out["W"] = list(self.W)
        return out


def minimal_above_copies(members: Sequence[int], P: Poset, n: int) -> list[int]:
    """Minimal sets strictly above an induced copy of ``P`` (which must have
    at least two maximal elements), found as minimal unions of copies."""
    unions = set()
    for img in iter_embeddings(members, P, n):
        u = 0
        for x in img:
            u |= x
        unions.add(u)
    return _minimal(unions)


def minimal_above_copies_scan(members: Sequence[int], P: Poset, n: int) -> list[int]:
    """Same as :func:`minimal_above_copies` by scanning all of P([n])."""
    above = [X for X in range(1 << n) if _has_copy(_proper_below(members, X), P, n)]
    return _minimal(above)


def compute_decomposition(F: SubsetFamily, P1: Poset, k: int, P2: Poset) -> Decomposition:
    if F.n > MAX_DECOMPOSITION_N:
        raise SizeLimitError(f"decomposition limited to n <= {MAX_DECOMPOSITION_N}")
    if k < 2:
        raise PreconditionError("middle antichain needs k >= 2")
    n = F.n
    fam = F.members
    M0 = [A for A in fam if _has_copy([X for X in fam if X & A == X], P2, n)]
    N0 = [A for A in fam if _has_copy([X for X in fam if X & A == A], P1, n)]
    M = _minimal(M0)
    N = _maximal(N0)
    middle = linear_sum(antichain(k), P2)
    L1 = minimal_above_copies(fam, middle, n)
    # every superset of a generator in L1 is strictly above the same copy
    L0 = [X for X in range(1 << n) if any(U & X == U for U in L1)]
    L = [X for X in L1 if not any(Y & X == Y for Y in N)]
    GL = set()
    for top in L:
        below = _proper_below(fam, top)
        GL.update(x for x in below if copy_through(below, x, middle, n) is not None)
    covered = 0
    for X in L:
        covered |= X
    W = [i + 1 for i in range(n) if not covered >> i & 1]
    return Decomposition(n, tuple(M0), tuple(M), tuple(N0), tuple(N), tuple(L0), tuple(L1),
                         tuple(L), tuple(sorted(GL)), tuple(W))


@dataclass(frozen=True)
class LemmaCheck:
    name: str
    status: str
    detail: str = ""

    def to_json(self) -> dict:
        return {"lemma": self.name, "status": self.status, "detail": self.detail}


@dataclass(frozen=True)
class PrelimReport:
    saturated: bool
    reduced: bool
    lemmas: tuple[LemmaCheck, ...]
    invariants: tuple[LemmaCheck, ...]

    @property
    def entries(self) -> tuple[LemmaCheck, ...]:
        return self.lemmas + self.invariants

    @property
    def violated(self) -> list[str]:
        return [c.name for c in self.entries if c.status == VIOLATED]

    @property
    def ok(self) -> bool:
        return not self.violated

    def to_json(self) -> dict:
        return {"saturated": self.saturated, "reduced": self.reduced,
                "lemmas": [c.to_json() for c in self.lemmas],
                "invariants": [c.to_json() for c in self.invariants]}


def _coord_has_step(fam: set, i: int) -> bool:
    bit = 1 << i
    return any(not S & bit and S | bit in fam for S in fam)


def _c2_pairs(sets: Sequence[int]) -> list[tuple[int, int]]:
    return [(a, b) for a in sets for b in sets if a != b and a & b == a]


def _union(sets: Iterable[int]) -> int:
    u = 0
    for x in sets:
        u |= x
    return u


def _missed_by(sets: Iterable[int], full: int) -> int:
    """Coordinates absent from at least one of ``sets``."""
    u = 0
    for x in sets:
        u |= full & ~x
    return u


def _trichotomy(F: SubsetFamily, D: Decomposition) -> tuple[bool, str]:
    fam = set(F.members)
    in_M = _union(D.M)
    bad = []
    for i in range(F.n):
        bit = 1 << i
        if in_M & bit or _coord_has_step(fam, i):
            continue
        if any(not Y & bit and any(A & Y == A and A != Y for A in D.M)
               and any(Y & B == Y and Y != B for B in D.N) for Y in fam):
            continue
        bad.append(i + 1)
    return not bad, f"failing coordinates {bad}" if bad else ""


def _refined(F: SubsetFamily, D: Decomposition) -> tuple[bool, str]:
    fam = set(F.members)
    in_M, out_N = _union(D.M), _missed_by(D.N, F.full)
    bad = [i + 1 for i in range(F.n)
           if not (in_M >> i & 1 or out_N >> i & 1 or _coord_has_step(fam, i))]
    return not bad, f"failing coordinates {bad}" if bad else ""


def _half_count(F: SubsetFamily, D: Decomposition) -> tuple[bool, str]:
    need = (F.n + 1 - len(F)) / 2
    a = _union(D.M).bit_count()
    b = _missed_by(D.N, F.full).bit_count()
    return a >= need or b >= need, f"|union M| = {a}, |coords missed by N| = {b}, need {need}"


def _extremes(F: SubsetFamily, D: Decomposition) -> tuple[bool, str]:
    size = len(F)
    big = max((X.bit_count() for X in D.L), default=0)
    small = min((X.bit_count() for X in D.N), default=F.n)
    ok = big <= size and small >= F.n - size
    return ok, f"max |L| = {big}, min |N| = {small}, |F| = {size}"


def _disjoint(F: SubsetFamily, D: Decomposition) -> tuple[bool, str]:
    common = set(D.L) & set(D.N)
    nested = _c2_pairs(sorted(set(D.L) | set(D.N)))
    ok = not common and not nested
    return ok, "" if ok else f"shared {len(common)}, nested pairs {len(nested)}"


def _near_c2(F: SubsetFamily, D: Decomposition) -> tuple[bool, str]:
    union = set(D.L) | set(D.N)
    bad = sum(1 for S in range(1 << F.n)
              if S not in union and S.bit_count() >= len(F)
              and not any(S & Y == S or S & Y == Y for Y in union))
    return not bad, f"{bad} large sets incomparable to every member of L and N" if bad else ""


def _cover_count(F: SubsetFamily, D: Decomposition) -> tuple[bool, str]:
    covered = F.n - len(D.W)
    need = (F.n + 1 - 3 * len(F)) / 2
    return covered >= need, f"{covered} coordinates lie in some L, need {need}"


def verify_prelim_lemmas(F: SubsetFamily, P1: Poset, k: int, P2: Poset) -> PrelimReport:
    """Evaluate the structural lemmas on ``F`` (see the module docstring).

    Every lemma assumes a saturated family, P1 with a unique minimum and P2
    with a unique maximum.  The four size lemmas also assume |F| < n and the
    covering lemma |F| < n/2; outside that range the entry reads
    hypothesis-not-met.  The two invariants on L and N need no size
    hypothesis and are reported separately.
    """
    hat = sum_of(P1, antichain(k), P2)
    saturated = check_saturated(F, hat).is_saturated
    reduced = bool(P1.size and P2.size and has_unique_minimal(P1) and has_unique_maximal(P2))
    D = compute_decomposition(F, P1, k, P2)
    n, size = F.n, len(F)

    def entry(name, size_ok, size_msg, check):
        if not saturated:
            return LemmaCheck(name, NOT_APPLICABLE, "family is not saturated")
        if not reduced:
            return LemmaCheck(name, NOT_MET, "P1 needs a unique minimum and P2 a unique maximum")
        if not size_ok:
            return LemmaCheck(name, NOT_MET, size_msg)
        ok, detail = check()
        return LemmaCheck(name, HOLDS if ok else VIOLATED, detail)

    below_n = size < n
    msg = f"needs |F| < n (|F| = {size}, n = {n})"

    def cover():
        need = (n + 1 - size) / 2
        if _missed_by(D.N, F.full).bit_count() >= need:
            return _cover_count(F, D)
        if _union(D.M).bit_count() >= need:
            # complements reverse the order: P1*A_k*P2 turns into dual(P2)*A_k*dual(P1)
            Fc = complement_family(F, n)
            ok, detail = _cover_count(Fc, compute_decomposition(Fc, P2.dual(), k, P1.dual()))
            return ok, "complemented family: " + detail
        return False, "neither side of the half count holds"

    lemmas = (
        entry("coordinate_trichotomy", below_n, msg, lambda: _trichotomy(F, D)),
        entry("refined_trichotomy", below_n, msg, lambda: _refined(F, D)),
        entry("half_coordinate_count", below_n, msg, lambda: _half_count(F, D)),
        entry("size_extremes", below_n, msg, lambda: _extremes(F, D)),
        entry("cover_by_L", 2 * size < n, f"needs |F| < n/2 (|F| = {size}, n = {n})", cover),
    )
    invariants = (
        entry("disjoint_antichain_union", True, "", lambda: _disjoint(F, D)),
        entry("near_chain_saturation", True, "", lambda: _near_c2(F, D)),
    )
    return PrelimReport(saturated, reduced, lemmas, invariants)


# ---------------------------------------------------------------------------
# Pairs of families over a ground set X


def _submasks(X: int):
    sub = X
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & X


def _check_inside(X: int, *families: Iterable[int]) -> None:
    for fam in families:
        for A in fam:
            if A & ~X:
                raise PosatError(f"set {to_elements(A)} is not inside the ground set {to_elements(X)}")


def check_L_membership(G: Iterable[int], H: Iterable[int], X: int, m: int) -> bool:
    """Membership of the pair (G, H) in L(X, m).

    H-members are measured against |X| - m, the ground set of the pair.
    """
    G, H = sorted(set(G)), sorted(set(H))
    _check_inside(X, G, H)
    size_x = X.bit_count()
    if 2 * m + 1 > size_x:
        raise PreconditionError(f"need 2m+1 <= |X| (m = {m}, |X| = {size_x})")
    if set(G) & set(H):
        return False
    if any(A.bit_count() > m for A in G) or any(A.bit_count() < size_x - m for A in H):
        return False
    cover = 0
    for A in G:
        cover |= A
    if cover != X:
        return False
    hs = set(H)
    if any(not (a in hs and b in hs) for a, b in _c2_pairs(G + H)):
        return False
    both = G + H
    for A in _submasks(X):
        if m <= A.bit_count() <= size_x - m:
            if not any(A & B == A or A & B == B for B in both):
                return False
    return True


def lstar_targets(I: Iterable[int], J: Iterable[int], X: int, k: int, P2: Poset,
                  limit: int = 4) -> list[int]:
    """T(I, J): minimal A in P(X) containing no J-member and strictly above a
    copy of A_k * P2 drawn from I."""
    I, J = sorted(set(I)), sorted(set(J))
    _check_inside(X, I, J)
    if X.bit_count() > limit:
        raise SizeLimitError(f"target scan limited to |X| <= {limit}")
    middle = linear_sum(antichain(k), P2)
    n = X.bit_length()
    T0 = [A for A in _submasks(X)
          if not any(B & A == B for B in J) and _has_copy(_proper_below(I, A), middle, n)]
    return _minimal(T0)


def check_Lstar_membership(I: Iterable[int], J: Iterable[int], X: int, m: int, k: int,
                           P2: Poset, limit: int = 4) -> bool:
    I = sorted(set(I))
    if any(A.bit_count() > m for A in I):
        _check_inside(X, I, J)
        return False
    return check_L_membership(lstar_targets(I, J, X, k, P2, limit), J, X, m)


@dataclass(frozen=True)
class FEstimate:
    min_found: Optional[int]
    exhausted: bool
    pairs_examined: int
    members_found: int

    def satisfies_bound(self, n: int, m: int) -> bool:
        return self.min_found is None or self.min_found >= n - 2 * m

    def to_json(self) -> dict:
        return {"min_found": self.min_found, "exhausted": self.exhausted,
                "pairs_examined": self.pairs_examined, "members_found": self.members_found}


MAX_F_N = 4


def f_empirical(n: int, m: int, k: int, P2: Poset, budget: int = 10 ** 6) -> FEstimate:
    """Minimum of |I u J| over (I, J) in L_*([n], m), by enumeration.

    Only sets that can satisfy the size clauses are enumerated: I-members
    of size <= m and J-members of size >= n - m.  ``min_found`` is None when
    no member pair exists in the searched space.
    """
    if n > MAX_F_N:
        raise SizeLimitError(f"f_empirical limited to n <= {MAX_F_N}")
    if 2 * m + 1 > n:
        raise PreconditionError(f"need 2m+1 <= n (m = {m}, n = {n})")
    X = (1 << n) - 1
    small = [A for A in range(1 << n) if A.bit_count() <= m]
    large = [A for A in range(1 << n) if A.bit_count() >= n - m]
    best = None
    examined = found = 0
    for i_mask, j_mask in product(range(1 << len(small)), range(1 << len(large))):
        if examined >= budget:
            return FEstimate(best, False, examined, found)
        examined += 1
        I = [A for t, A in enumerate(small) if i_mask >> t & 1]
        J = [A for t, A in enumerate(large) if j_mask >> t & 1]
        if check_Lstar_membership(I, J, X, m, k, P2, limit=n):
            found += 1
            size = len(set(I) | set(J))
            best = size if best is None else min(best, size)
    return FEstimate(best, True, examined, found)


def lemma_table_csv(report: PrelimReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["lemma", "status", "detail"])
    for c in report.entries:
        writer.writerow([c.name, c.status, c.detail])
    return buf.getvalue()
