"""Linear-size saturated families for complete multipartite posets.

A multipartite poset is first normalised into blocks, each an antichain of
size at least two or a chain.  With ``m = (total size) - 1`` a constant-size
seed is formed from whole layers of the small cube P([m]) (bottom part) and
the complements in [n] of such layers (top part).  The seed is free of the
poset; completing it greedily gives a saturated family whose members
split by their trace ``X & [m]`` into classes of size O(n).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

from .dilworth import max_antichain
from .errors import PosatError, PreconditionError
from .family import SubsetFamily, complement_family, layer_sets, to_elements
from .poset import Poset, antichain, chain, make_multipartite, sum_of
from .saturation import check_saturated, greedy_saturate, is_free

CHAIN = "chain"
ANTICHAIN = "antichain"
MAX_VERIFY_N = 14


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[str, int], ...]  # bottom first

    @property
    def l(self) -> int:
        return len(self.blocks)

    @property
    def m(self) -> int:
        return sum(size for _, size in self.blocks) - 1

    @property
    def degenerate(self) -> bool:
        return self.l == 1 and self.blocks[0][0] == CHAIN

    def poset(self) -> Poset:
        parts = [chain(s) if kind == CHAIN else antichain(s) for kind, s in self.blocks]
        return sum_of(*reversed(parts))

    def prefix(self, i: int) -> int:
        """Total size of blocks 1..i (1-based)."""
        return sum(size for _, size in self.blocks[:i])

    def suffix(self, i: int) -> int:
        """Total size of blocks i..l (1-based)."""
        return sum(size for _, size in self.blocks[i - 1:])

    def block_of_trace(self, t: int) -> int:
        """1-based block whose trace-size range [prefix(i-1), prefix(i)-1] holds t."""
        if not 0 <= t <= self.m:
            raise PosatError(f"trace size {t} outside 0..{self.m}")
        for i in range(1, self.l + 1):
            if t <= self.prefix(i) - 1:
                return i
        raise AssertionError("unreachable")

    def to_json(self) -> dict:
        return {"blocks": [[k, s] for k, s in self.blocks], "l": self.l, "m": self.m,
                "degenerate": self.degenerate}


def normalize_layers(layers: Sequence[int]) -> BlockDecomposition:
    layers = list(layers)
    if not layers or any(n < 1 for n in layers):
        raise PosatError("layers must be a nonempty list of positive sizes")
    kept = [
        size for i, size in enumerate(layers)
        if not (size == 1 and 0 < i < len(layers) - 1
                and layers[i - 1] != 1 and layers[i + 1] != 1)
    ]
    blocks: list[tuple[str, int]] = []
    for size in kept:
        if size == 1:
            if blocks and blocks[-1][0] == CHAIN:
                blocks[-1] = (CHAIN, blocks[-1][1] + 1)
            else:
                blocks.append((CHAIN, 1))
        else:
            blocks.append((ANTICHAIN, size))
    return BlockDecomposition(tuple(blocks))


@dataclass(frozen=True)
class IntervalLedger:
    T: tuple[frozenset, ...]  # index 0 <-> block 1
    U: tuple[frozenset, ...]  # index 0 <-> block 2


def interval_ledger(blocks: BlockDecomposition) -> IntervalLedger:
    T, U = [], []
    for i in range(1, blocks.l):
        kind, _ = blocks.blocks[i - 1]
        lo = blocks.prefix(i - 1) + 1
        hi = blocks.prefix(i) if kind == CHAIN else lo
        T.append(frozenset(range(lo, hi + 1)))
    for i in range(2, blocks.l + 1):
        kind, _ = blocks.blocks[i - 1]
        lo = blocks.suffix(i + 1) + 1
        hi = blocks.suffix(i) if kind == CHAIN else lo
        U.append(frozenset(range(lo, hi + 1)))
    return IntervalLedger(tuple(T), tuple(U))


def _check_n(n: int, blocks: BlockDecomposition) -> None:
    if blocks.degenerate:
        raise PreconditionError("pure chain: the construction does not apply")
    if n < 2 * blocks.m + 1:
        raise PreconditionError(
            f"n = {n} is below 2m+1 = {2 * blocks.m + 1} (m = {blocks.m})")


def seed_family(n: int, blocks: BlockDecomposition) -> SubsetFamily:
    if blocks.l < 2:
        raise PreconditionError("seed needs at least two blocks")
    _check_n(n, blocks)
    ledger = interval_ledger(blocks)
    m = blocks.m
    bottom = set()
    for sizes in ledger.T:
        bottom.update(layer_sets(m, sizes).members)
    top = set()
    for sizes in ledger.U:
        top.update(layer_sets(m, sizes).members)
    top_family = complement_family(SubsetFamily.of(n, top), n)
    return SubsetFamily.of(n, bottom | set(top_family.members))


def ledger_bound(seed_size: int, blocks: BlockDecomposition, n: int) -> int:
    """Seed size plus one |P_i|(n+1) allowance per block."""
    return seed_size + (blocks.m + 1) * (n + 1)


def class_bound(seed_size: int, blocks: BlockDecomposition, n: int) -> int:
    """Seed size plus |P_i|(n+1) for every antichain-block trace T of [m].

    Chain-block traces hold only seed members, so this is the sum of the
    per-trace audit limits and always bounds the completed family.
    """
    total = seed_size
    for t in range(blocks.m + 1):
        kind, size = blocks.blocks[blocks.block_of_trace(t) - 1]
        if kind == ANTICHAIN:
            total += comb(blocks.m, t) * size * (n + 1)
    return total


@dataclass(frozen=True)
class Construction:
    n: int
    layers: tuple[int, ...]
    blocks: BlockDecomposition
    seed: SubsetFamily
    family: SubsetFamily
    bound: int
    saturated: Optional[bool] = None

    @property
    def size_bound(self) -> int:
        return self.bound

    @property
    def class_bound(self) -> int:
        return class_bound(len(self.seed), self.blocks, self.n)

    @property
    def within_bound(self) -> bool:
        return len(self.family) <= self.bound

    def ledger_row(self) -> dict:
        return {"n": self.n, "seed_size": len(self.seed), "final_size": len(self.family),
                "bound": self.bound, "class_bound": self.class_bound}

    def to_json(self) -> dict:
        return {"layers": list(self.layers), **self.blocks.to_json(), **self.ledger_row(),
                "saturated": self.saturated, "family": self.family.to_json()}


def construct_saturated_multipartite(n: int, layers: Sequence[int],
                                     verify: bool = True) -> Construction:
    """Seed plus greedy completion with respect to the normalised poset.

    The normalised poset differs from the layered one only by dropped
    interior singleton layers, and a family saturated for the former is
    saturated for the latter.  With ``verify`` (and n <= 14) the result is
    re-checked against the layered poset.
    """
    blocks = normalize_layers(layers)
    _check_n(n, blocks)
    seed = seed_family(n, blocks) if blocks.l >= 2 else SubsetFamily(n, ())
    family = greedy_saturate(seed, blocks.poset())
    saturated = None
    if verify and n <= MAX_VERIFY_N:
        saturated = check_saturated(family, make_multipartite(layers)).is_saturated
    return Construction(n, tuple(layers), blocks, seed, family,
                        ledger_bound(len(seed), blocks, n), saturated)


def verify_seed_free(n: int, layers: Sequence[int]) -> bool:
    blocks = normalize_layers(layers)
    return is_free(seed_family(n, blocks), blocks.poset())


@dataclass
class TraceAudit:
    trace: int
    block: int
    kind: str
    block_size: int
    count: int
    passed: bool
    outside_seed: list[int] = field(default_factory=list)
    antichain: list[int] = field(default_factory=list)
    limit: Optional[int] = None

    def to_json(self) -> dict:
        out = {"T": to_elements(self.trace), "block": self.block, "kind": self.kind,
               "block_size": self.block_size, "count": self.count, "passed": self.passed}
        if self.kind == CHAIN:
            out["outside_seed"] = [to_elements(x) for x in self.outside_seed]
        else:
            out["max_antichain"] = [to_elements(x) for x in self.antichain]
            out["limit"] = self.limit
        return out


def trace_class(F: SubsetFamily, m: int, T: int) -> list[int]:
    low = (1 << m) - 1
    return [x for x in F.members if x & low == T]


def audit_C_T(construction: Construction, T: int) -> TraceAudit:
    """Check one trace class against the chain / antichain bounds."""
    blocks = construction.blocks
    m, n = blocks.m, construction.n
    if T < 0 or T >> m:
        raise PosatError(f"T = {to_elements(T)} is not a subset of [{m}]")
    i = blocks.block_of_trace(T.bit_count())
    kind, size = blocks.blocks[i - 1]
    members = trace_class(construction.family, m, T)
    if kind == CHAIN:
        outside = [x for x in members if x not in construction.seed]
        return TraceAudit(T, i, kind, size, len(members), not outside, outside_seed=outside)
    anti = max_antichain(members)
    limit = size * (n + 1)
    passed = len(anti) < size and len(members) <= limit
    return TraceAudit(T, i, kind, size, len(members), passed, antichain=anti, limit=limit)


def audit_all(construction: Construction) -> list[TraceAudit]:
    return [audit_C_T(construction, T) for T in range(1 << construction.blocks.m)]
