"""Families of subsets of [n], encoded as integers (bit i-1 set <=> i in the set)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

from .errors import FamilyFormatError, PosatError, SizeLimitError

MAX_GROUND = 20


def check_ground(n: int) -> None:
    if not 1 <= n <= MAX_GROUND:
        raise SizeLimitError(f"ground set size {n} outside 1..{MAX_GROUND}")


def to_elements(mask: int) -> list[int]:
    """1-based element list of a bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def from_elements(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << (e - 1)
    return mask


def is_subset(a: int, b: int) -> bool:
    return a & b == a


def is_proper_subset(a: int, b: int) -> bool:
    return a & b == a and a != b


@dataclass(frozen=True)
class SubsetFamily:
    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        check_ground(self.n)
        top = 1 << self.n
        prev = -1
        for x in self.members:
            if x <= prev:
                raise PosatError("family members must be strictly increasing")
            if x >= top:
                raise PosatError(f"member {to_elements(x)} exceeds ground set [{self.n}]")
            prev = x

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "SubsetFamily":
        return cls(n, tuple(sorted(set(members))))

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "SubsetFamily":
        return cls.of(n, (from_elements(s) for s in sets))

    @classmethod
    def power_set(cls, n: int) -> "SubsetFamily":
        return cls(n, tuple(range(1 << n)))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x):
        return x in self._member_set

    @cached_property
    def _member_set(self) -> frozenset:
        return frozenset(self.members)

    def add(self, x: int) -> "SubsetFamily":
        return SubsetFamily.of(self.n, self.members + (x,))

    def remove(self, x: int) -> "SubsetFamily":
        return SubsetFamily(self.n, tuple(m for m in self.members if m != x))

    def union(self, other: "SubsetFamily") -> "SubsetFamily":
        return SubsetFamily.of(max(self.n, other.n), self.members + other.members)

    def lift(self, n: int) -> "SubsetFamily":
        """Same sets viewed inside a larger ground set."""
        if n < self.n and any(x >> n for x in self.members):
            raise PosatError(f"family does not fit in ground set [{n}]")
        return SubsetFamily(n, self.members)

    def sets(self) -> list[list[int]]:
        return [to_elements(x) for x in self.members]

    def to_json(self) -> dict:
        return {"n": self.n, "sets": self.sets()}

    def __repr__(self):
        return f"SubsetFamily(n={self.n}, sets={self.sets()})"


def layer_sets(m: int, sizes: Iterable[int]) -> SubsetFamily:
    """All subsets of [m] whose cardinality lies in ``sizes``."""
    check_ground(m)
    sizes = set(sizes)
    if any(not 0 <= t <= m for t in sizes):
        raise PosatError(f"layer size out of range 0..{m}")
    members = []
    for t in sizes:
        for combo in combinations(range(m), t):
            members.append(sum(1 << i for i in combo))
    return SubsetFamily.of(m, members)


def complement_family(F: SubsetFamily, n: int) -> SubsetFamily:
    """``{[n] \\ X : X in F}`` over ground set [n]."""
    check_ground(n)
    full = (1 << n) - 1
    if any(x & ~full for x in F.members):
        raise PosatError(f"family member exceeds ground set [{n}]")
    return SubsetFamily.of(n, (full ^ x for x in F.members))


def serialize(F: SubsetFamily) -> str:
    return json.dumps(F.to_json(), separators=(",", ":"))


def deserialize(text: str) -> SubsetFamily:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FamilyFormatError(f"parse error at line {exc.lineno}: {exc.msg}") from None
    return family_from_json(data)


def family_from_json(data) -> SubsetFamily:
    if not isinstance(data, dict) or "n" not in data or "sets" not in data:
        raise FamilyFormatError("family JSON needs keys 'n' and 'sets'")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise FamilyFormatError("'n' must be an integer")
    check_ground(n)
    seen = set()
    members = []
    for index, elements in enumerate(data["sets"]):
        if not isinstance(elements, list):
            raise FamilyFormatError(f"set at index {index} is not a list")
        if len(set(elements)) != len(elements):
            raise FamilyFormatError(f"repeated element in set at index {index}")
        for e in elements:
            if not isinstance(e, int) or isinstance(e, bool) or not 1 <= e <= n:
                raise FamilyFormatError(f"element {e!r} at index {index} outside [1, {n}]")
        mask = from_elements(elements)
        if mask in seen:
            raise FamilyFormatError(f"duplicate member at index {index}")
        seen.add(mask)
        members.append(mask)
    return SubsetFamily.of(n, members)


def to_csv(F: SubsetFamily) -> str:
    lines = [f"n={F.n}"]
    lines.extend(",".join(str(e) for e in s) for s in F.sets())
    return "\n".join(lines) + "\n"


def from_csv(text: str) -> SubsetFamily:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("n="):
        raise FamilyFormatError("CSV family must start with a 'n=<n>' header")
    try:
        n = int(lines[0][2:])
        sets = [[int(tok) for tok in line.split(",")] if line.strip() else [] for line in lines[1:]]
    except ValueError as exc:
        raise FamilyFormatError(f"bad CSV family: {exc}") from None
    return family_from_json({"n": n, "sets": sets})
