"""Multisets over a finite group, and ordered families of them."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import ParameterError, UsageError
from .groups import Group


class GMultiset:
    """A mapping from group elements to non-negative multiplicities.

    The universal carrier for sets, multisets and difference multisets.
    Instances are immutable; ``is_set`` is true when all multiplicities
    are at most one.
    """

    __slots__ = ("group", "_counts", "support", "size", "is_set")

    def __init__(self, group: Group, counts: Mapping[int, int]):
        clean = {}
        for x, c in counts.items():
            if not 0 <= x < group.order:
                raise ParameterError(f"element {x} out of range for {group.name}")
            if c < 0:
                raise ParameterError(f"negative multiplicity for element {x}")
            if c:
                clean[x] = int(c)
        self.group = group
        self._counts = clean
        self.support = tuple(sorted(clean))
        self.size = sum(clean.values())
        self.is_set = all(c == 1 for c in clean.values())

    @classmethod
    def from_elements(cls, group: Group, elems: Iterable[int]) -> "GMultiset":
        return cls(group, Counter(elems))

    @classmethod
    def from_counts(cls, group: Group, counts: Mapping[int, int]) -> "GMultiset":
        return cls(group, counts)

    @classmethod
    def from_vector(cls, group: Group, vec: Sequence[int]) -> "GMultiset":
        if len(vec) != group.order:
            raise ParameterError("vector length does not match group order")
        return cls(group, {i: c for i, c in enumerate(vec) if c})

    def multiplicity(self, x: int) -> int:
        return self._counts.get(x, 0)

    def items(self) -> list[tuple[int, int]]:
        return [(x, self._counts[x]) for x in self.support]

    def vector(self) -> list[int]:
        out = [0] * self.group.order
        for x, c in self._counts.items():
            out[x] = c
        return out

    def key(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.items())

    def translate(self, g: int) -> "GMultiset":
        """Left translation g + A."""
        op = self.group.op
        return GMultiset(self.group, {op(g, x): c for x, c in self._counts.items()})

    def complement(self) -> "GMultiset":
        if not self.is_set:
            raise UsageError("complement is defined for sets only")
        inside = set(self.support)
        return GMultiset(self.group, {x: 1 for x in self.group.elements() if x not in inside})

    def union(self, other: "GMultiset") -> "GMultiset":
        """Multiset union: multiplicities add."""
        if self.group != other.group:
            raise UsageError("multisets live in different groups")
        counts = dict(self._counts)
        for x, c in other._counts.items():
            counts[x] = counts.get(x, 0) + c
        return GMultiset(self.group, counts)

    def disjoint_from(self, other: "GMultiset") -> bool:
        a, b = self.support, other.support
        if len(b) < len(a):
            a, b = b, a
        bs = set(b)
        return not any(x in bs for x in a)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GMultiset) and self.group == other.group
                and self._counts == other._counts)

    def __hash__(self) -> int:
        return hash((self.group, self.key()))

    def __repr__(self) -> str:
        if self.is_set:
            body = ",".join(str(x) for x in self.support)
        else:
            body = ";".join(f"{x}:{c}" for x, c in self.items())
        return "{" + body + "}"


@dataclass(frozen=True)
class Provenance:
    construction: str
    params: dict

    def to_json(self) -> dict:
        return {"construction": self.construction, "params": self.params}


@dataclass(frozen=True)
class Declared:
    """A generator's claim about its output, checked against the certificate.

    ``kind`` is "uniform" or "punctured" and describes every off-diagonal
    pairwise difference; ``lambda_matrix`` holds the claimed values with
    None on the diagonal.  ``row_lambdas`` and ``grand_lambda`` carry
    row-union and whole-family claims when the construction makes them.
    ``labels`` are certificate labels the output must receive.
    """

    sizes: tuple[int, ...]
    kind: Optional[str] = None
    lambda_matrix: Optional[tuple[tuple[Optional[int], ...], ...]] = None
    row_lambdas: Optional[tuple[int, ...]] = None
    grand_lambda: Optional[int] = None
    labels: tuple[str, ...] = ()


class Family:
    """An ordered list of multisets over one group, with provenance."""

    __slots__ = ("group", "members", "provenance", "declared", "_cert")

    def __init__(self, group: Group, members: Sequence[GMultiset],
                 provenance: Optional[Provenance] = None,
                 declared: Optional[Declared] = None):
        members = tuple(members)
        if not members:
            raise ParameterError("a family needs at least one member")
        for m in members:
            if m.group != group:
                raise UsageError("family member lives in a different group")
            if m.size == 0:
                raise ParameterError("family members must be non-empty")
        self.group = group
        self.members = members
        self.provenance = provenance
        self.declared = declared
        self._cert = None

    @property
    def m(self) -> int:
        return len(self.members)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(mem.size for mem in self.members)

    @property
    def all_sets(self) -> bool:
        return all(mem.is_set for mem in self.members)

    def member(self, i: int) -> GMultiset:
        return self.members[i]

    def with_member(self, i: int, new: GMultiset,
                    provenance: Optional[Provenance] = None,
                    declared: Optional[Declared] = None) -> "Family":
        members = list(self.members)
        members[i] = new
        return Family(self.group, members, provenance or self.provenance, declared)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Family) and self.group == other.group
                and self.members == other.members)

    def __hash__(self) -> int:
        return hash((self.group, self.members))

    def __repr__(self) -> str:
        return f"Family({self.group.name}, {list(self.members)})"


def parse_member_text(group: Group, text: str) -> GMultiset:
    """Parse one member: elements separated by ',', multiset entries as 'e:c'."""
    counts: dict[int, int] = {}
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if ":" in tok:
            e, _, c = tok.partition(":")
            counts[int(e)] = counts.get(int(e), 0) + int(c)
        else:
            counts[int(tok)] = counts.get(int(tok), 0) + 1
    if not counts:
        raise ParameterError(f"empty member in {text!r}")
    return GMultiset.from_counts(group, counts)


def parse_family_text(group: Group, text: str) -> Family:
    """Parse a family: members separated by '|'."""
    members = [parse_member_text(group, part) for part in text.split("|")]
    return Family(group, members)
