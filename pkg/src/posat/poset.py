"""Finite strict partial orders, linear sums and the poset expression language.

A :class:`Poset` is stored as an explicit strict-order matrix ``lt`` where
``lt[a][b]`` means *a is strictly below b*.  Posets built with
:func:`linear_sum` put the bottom operand at indices ``0..len(bottom)-1``
and the top operand after it, so layers of a multipartite poset occupy
contiguous index ranges.

Expressions are written top first: ``".*A2*."`` is the diamond (a point
above an antichain of two above a point).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

from .errors import PosatError, PosetSyntaxError, SizeLimitError

MAX_POSET_SIZE = 12


@dataclass(frozen=True)
class Poset:
    size: int
    lt: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        if self.size > MAX_POSET_SIZE:
            raise SizeLimitError(f"poset has {self.size} elements, limit is {MAX_POSET_SIZE}")
        if len(self.lt) != self.size or any(len(row) != self.size for row in self.lt):
            raise PosatError("order matrix shape does not match poset size")
        _validate(self.size, self.lt)

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]]) -> "Poset":
        """Build from (below, above) relations, taking the transitive closure."""
        if size > MAX_POSET_SIZE:
            raise SizeLimitError(f"poset has {size} elements, limit is {MAX_POSET_SIZE}")
        rel = [[False] * size for _ in range(size)]
        for a, b in pairs:
            if not (0 <= a < size and 0 <= b < size):
                raise PosatError(f"relation ({a}, {b}) out of range for size {size}")
            rel[a][b] = True
        for k in range(size):
            for i in range(size):
                if rel[i][k]:
                    row_k = rel[k]
                    row_i = rel[i]
                    for j in range(size):
                        if row_k[j]:
                            row_i[j] = True
        for i in range(size):
            if rel[i][i]:
                raise PosatError(f"relations contain a cycle through element {i}")
        return cls(size, tuple(tuple(r) for r in rel))

    def __len__(self):
        return self.size

    # Bitmask views, used by the embedding search.
    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        return tuple(
            sum(1 << a for a in range(self.size) if self.lt[a][b]) for b in range(self.size)
        )

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        return tuple(
            sum(1 << b for b in range(self.size) if self.lt[a][b]) for a in range(self.size)
        )

    @cached_property
    def strict_pairs(self) -> int:
        return sum(row.count(True) for row in self.lt)

    def comparable(self, a: int, b: int) -> bool:
        return self.lt[a][b] or self.lt[b][a]

    def minimal_elements(self) -> list[int]:
        return [b for b in range(self.size) if not self.down_masks[b]]

    def maximal_elements(self) -> list[int]:
        return [a for a in range(self.size) if not self.up_masks[a]]

    @cached_property
    def height_below(self) -> tuple[int, ...]:
        """Length of the longest chain strictly below each element."""
        return _longest_chains(self.size, self.down_masks)

    @cached_property
    def height_above(self) -> tuple[int, ...]:
        return _longest_chains(self.size, self.up_masks)

    def height(self) -> int:
        """Number of elements in a longest chain."""
        if not self.size:
            return 0
        return max(self.height_below) + 1

    def width(self) -> int:
        """Size of a largest antichain (brute force; posets are tiny)."""
        best = 0
        for mask in range(1 << self.size):
            k = mask.bit_count()
            if k <= best:
                continue
            elems = [a for a in range(self.size) if mask >> a & 1]
            if all(not self.comparable(a, b) for i, a in enumerate(elems) for b in elems[i + 1:]):
                best = k
        return best

    def dual(self) -> "Poset":
        return Poset(self.size, tuple(tuple(self.lt[b][a] for b in range(self.size))
                                      for a in range(self.size)))

    def cover_pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.size) for b in range(self.size) if covers(self, a, b)]

    def to_json(self) -> dict:
        return {"size": self.size, "covers": [list(p) for p in self.cover_pairs()]}

    def __repr__(self):
        return f"Poset(size={self.size}, covers={self.cover_pairs()})"


def _validate(size, lt):
    for a in range(size):
        if lt[a][a]:
            raise PosatError(f"order is not irreflexive at element {a}")
        for b in range(size):
            if lt[a][b]:
                if lt[b][a]:
                    raise PosatError(f"order is not antisymmetric at ({a}, {b})")
                for c in range(size):
                    if lt[b][c] and not lt[a][c]:
                        raise PosatError(f"order is not transitive at ({a}, {b}, {c})")


def _longest_chains(size, masks):
    memo: dict[int, int] = {}

    def depth(x):
        if x not in memo:
            memo[x] = max((depth(y) + 1 for y in range(size) if masks[x] >> y & 1), default=0)
        return memo[x]

    return tuple(depth(x) for x in range(size))


EMPTY = Poset(0, ())
POINT = Poset(1, ((False,),))


def antichain(k: int) -> Poset:
    if k < 1:
        raise PosatError("antichain arity must be at least 1")
    return Poset.from_pairs(k, [])


def chain(k: int) -> Poset:
    if k < 1:
        raise PosatError("chain arity must be at least 1")
    return Poset.from_pairs(k, [(i, i + 1) for i in range(k - 1)])


def linear_sum(top: Poset, bottom: Poset) -> Poset:
    """Place ``top`` entirely above ``bottom``; the empty poset is a unit."""
    size = top.size + bottom.size
    if size > MAX_POSET_SIZE:
        raise SizeLimitError(f"linear sum would have {size} elements, limit is {MAX_POSET_SIZE}")
    if not top.size:
        return bottom
    if not bottom.size:
        return top
    nb = bottom.size
    rows = []
    for a in range(size):
        row = []
        for b in range(size):
            if a < nb and b < nb:
                row.append(bottom.lt[a][b])
            elif a >= nb and b >= nb:
                row.append(top.lt[a - nb][b - nb])
            else:
                row.append(a < nb <= b)
        rows.append(tuple(row))
    return Poset(size, tuple(rows))


def sum_of(*parts: Poset) -> Poset:
    """``sum_of(P1, P2, P3)`` is ``P1 * P2 * P3`` (first argument on top)."""
    result = EMPTY
    for part in reversed(parts):
        result = linear_sum(part, result)
    return result


def make_multipartite(layers: Sequence[int]) -> Poset:
    """Complete multipartite poset; ``layers`` are listed bottom first."""
    layers = list(layers)
    if not layers:
        raise PosatError("layer list is empty")
    if any(n < 1 for n in layers):
        raise PosatError("layer sizes must be positive")
    if sum(layers) > MAX_POSET_SIZE:
        raise SizeLimitError(f"multipartite poset would have {sum(layers)} elements")
    result = EMPTY
    for n in layers:
        result = linear_sum(antichain(n), result)
    return result


DIAMOND = make_multipartite([1, 2, 1])
BUTTERFLY = make_multipartite([2, 2])


def _require_nonempty(P: Poset):
    if not P.size:
        raise PosatError("predicate is undefined on the empty poset")


def has_unique_minimal(P: Poset) -> bool:
    _require_nonempty(P)
    return len(P.minimal_elements()) == 1


def has_unique_maximal(P: Poset) -> bool:
    _require_nonempty(P)
    return len(P.maximal_elements()) == 1


def reduce_endpoints(P1: Poset, P2: Poset) -> tuple[Poset, Poset]:
    """Give the top part a unique minimum and the bottom part a unique maximum.

    An empty part counts as lacking the extremum, so it becomes a point.
    """
    if not (P1.size and has_unique_minimal(P1)):
        P1 = linear_sum(P1, POINT)
    if not (P2.size and has_unique_maximal(P2)):
        P2 = linear_sum(POINT, P2)
    return P1, P2


def covers(P: Poset, x: int, y: int) -> bool:
    """True when y covers x: x < y with nothing strictly between."""
    if not (0 <= x < P.size and 0 <= y < P.size):
        raise PosatError(f"element index out of range for poset of size {P.size}")
    if not P.lt[x][y]:
        return False
    return not (P.up_masks[x] & P.down_masks[y])


def has_uctp(P: Poset) -> bool:
    """Every cover pair has a twin comparable with exactly one of the two."""
    _require_nonempty(P)
    for x, y in P.cover_pairs():
        if not any(P.comparable(z, x) != P.comparable(z, y)
                   for z in range(P.size) if z not in (x, y)):
            return False
    return True


# ---------------------------------------------------------------------------
# Expressions


@dataclass(frozen=True)
class Point:
    def render(self) -> str:
        return "."


@dataclass(frozen=True)
class Antichain:
    k: int

    def render(self) -> str:
        return f"A{self.k}"


@dataclass(frozen=True)
class Chain:
    k: int

    def render(self) -> str:
        return f"C{self.k}"


@dataclass(frozen=True)
class Sum:
    top: "PosetExpr"
    bottom: "PosetExpr"

    def render(self) -> str:
        return f"{self.top.render()}*{self.bottom.render()}"


PosetExpr = Union[Point, Antichain, Chain, Sum]


def evaluate(expr: PosetExpr) -> Poset:
    if isinstance(expr, Point):
        return POINT
    if isinstance(expr, Antichain):
        return antichain(expr.k)
    if isinstance(expr, Chain):
        return chain(expr.k)
    return linear_sum(evaluate(expr.top), evaluate(expr.bottom))


def render(expr: PosetExpr) -> str:
    return expr.render()


_TOKEN = re.compile(r"\s*(?:(?P<dot>\.)|(?P<kind>[AC])(?P<num>\d*)|(?P<star>\*)|(?P<bad>\S))")


def parse_expr(text: str) -> PosetExpr:
    """Parse ``atom ('*' atom)*`` with atoms ``.``, ``A<k>``, ``C<k>``."""
    atoms: list[PosetExpr] = []
    expect_atom = True
    pos = 0
    total = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastgroup)
        if m.group("bad") is not None:
            raise PosetSyntaxError(f"unexpected character {m.group('bad')!r}", _byte_offset(text, start))
        if m.group("star") is not None:
            if expect_atom:
                raise PosetSyntaxError("expected an atom before '*'", _byte_offset(text, start))
            expect_atom = True
        else:
            if not expect_atom:
                raise PosetSyntaxError("expected '*' between atoms", _byte_offset(text, start))
            if m.group("dot") is not None:
                atom: PosetExpr = Point()
                total += 1
            else:
                digits = m.group("num")
                if not digits:
                    raise PosetSyntaxError(f"{m.group('kind')} needs an arity", _byte_offset(text, m.end()))
                k = int(digits)
                if k == 0:
                    raise PosetSyntaxError("arity must be at least 1", _byte_offset(text, start))
                total += k
                if total > MAX_POSET_SIZE:
                    raise SizeLimitError(f"expression exceeds {MAX_POSET_SIZE} elements")
                atom = Antichain(k) if m.group("kind") == "A" else Chain(k)
            atoms.append(atom)
            expect_atom = False
        pos = m.end()
    if expect_atom:
        raise PosetSyntaxError("expected an atom", _byte_offset(text, len(text)))
    expr = atoms[-1]
    for atom in reversed(atoms[:-1]):
        expr = Sum(atom, expr)
    return expr


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def parse_poset_expr(text: str) -> Poset:
    return evaluate(parse_expr(text))


def poset_from_json(data: Union[str, dict]) -> Poset:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise PosatError(f"invalid poset JSON at line {exc.lineno}: {exc.msg}") from None
    try:
        size = int(data["size"])
        pairs = [(int(a), int(b)) for a, b in data.get("covers", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise PosatError(f"malformed poset JSON: {exc}") from None
    if size < 0:
        raise PosatError("poset size must be non-negative")
    return Poset.from_pairs(size, pairs)
