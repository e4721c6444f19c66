"""Finite-group arithmetic on canonically indexed elements.

Groups are immutable and their elements are the integers ``0..order-1``.
Cyclic groups index residues directly, direct products use mixed-radix
tuples (first factor most significant), dihedral groups of order ``2n``
index ``a^i b^j`` as ``2*i + j`` (with ``b*a = a^(n-1)*b``), and the
quaternion group uses the fixed element order ``1,-1,i,-i,j,-j,k,-k``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapacityError, GroupStructureError, ParameterError, UsageError

SUBGROUP_ENUM_BOUND = 256
ASSOC_FULL_CHECK_BOUND = 64
ASSOC_SAMPLE_TRIPLES = 4096


@dataclass(frozen=True)
class Cyclic:
    v: int


@dataclass(frozen=True)
class Product:
    parts: tuple["GroupSpec", ...]


@dataclass(frozen=True)
class Dihedral:
    n: int


@dataclass(frozen=True)
class Quaternion:
    pass


@dataclass(frozen=True)
class Table:
    table: tuple[tuple[int, ...], ...]


GroupSpec = Cyclic | Product | Dihedral | Quaternion | Table


def spec_to_json(spec: GroupSpec) -> dict:
    if isinstance(spec, Cyclic):
        return {"kind": "cyclic", "v": spec.v}
    if isinstance(spec, Product):
        return {"kind": "product", "parts": [spec_to_json(p) for p in spec.parts]}
    if isinstance(spec, Dihedral):
        return {"kind": "dihedral", "n": spec.n}
    if isinstance(spec, Quaternion):
        return {"kind": "q8"}
    if isinstance(spec, Table):
        return {"kind": "table", "order": len(spec.table), "table": [list(r) for r in spec.table]}
    raise ParameterError(f"unknown group spec {spec!r}")


def spec_from_json(obj: dict) -> GroupSpec:
    kind = obj.get("kind")
    if kind == "cyclic":
        return Cyclic(int(obj["v"]))
    if kind == "product":
        return Product(tuple(spec_from_json(p) for p in obj["parts"]))
    if kind == "dihedral":
        return Dihedral(int(obj["n"]))
    if kind == "q8":
        return Quaternion()
    if kind == "table":
        return Table(tuple(tuple(int(x) for x in row) for row in obj["table"]))
    raise ParameterError(f"unknown group kind {kind!r}")


def parse_group_text(text: str) -> GroupSpec:
    """Parse a compact group description: cyclic:V, dihedral:N, q8, product:V1,V2,..."""
    text = text.strip().lower()
    if text == "q8":
        return Quaternion()
    if ":" in text:
        kind, _, rest = text.partition(":")
        if kind == "cyclic":
            return Cyclic(int(rest))
        if kind == "dihedral":
            return Dihedral(int(rest))
        if kind == "product":
            return Product(tuple(Cyclic(int(x)) for x in rest.split(",")))
    raise ParameterError(f"cannot parse group description {text!r}")


class Group:
    """A finite group with a total operation and inverse on element indices."""

    __slots__ = ("spec", "order", "identity", "is_abelian", "name", "_op", "_inv", "_names")

    def __init__(self, spec, order, identity, is_abelian, name, op, inv, names):
        self.spec = spec
        self.order = order
        self.identity = identity
        self.is_abelian = is_abelian
        self.name = name
        self._op = op
        self._inv = inv
        self._names = names

    @property
    def is_cyclic(self) -> bool:
        return isinstance(self.spec, Cyclic)

    def op(self, a: int, b: int) -> int:
        return self._op(a, b)

    def inverse(self, a: int) -> int:
        return self._inv(a)

    def diff(self, a: int, b: int) -> int:
        """op(a, inverse(b)); the difference a - b in additive notation."""
        return self._op(a, self._inv(b))

    def elements(self) -> range:
        return range(self.order)

    def element_name(self, a: int) -> str:
        return self._names(a)

    def __eq__(self, other) -> bool:
        return isinstance(other, Group) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        return f"Group({self.name})"


def _build_cyclic(spec: Cyclic) -> Group:
    v = spec.v
    if v < 1:
        raise ParameterError("cyclic order must be positive")
    return Group(spec, v, 0, True, f"Z_{v}",
                 lambda a, b: (a + b) % v,
                 lambda a: (-a) % v,
                 str)


def _build_product(spec: Product) -> Group:
    if not spec.parts:
        raise ParameterError("direct product needs at least one factor")
    parts = [build_group(p) for p in spec.parts]
    orders = [g.order for g in parts]
    strides = [1] * len(parts)
    for i in range(len(parts) - 2, -1, -1):
        strides[i] = strides[i + 1] * orders[i + 1]
    total = strides[0] * orders[0]

    def decode(x: int) -> list[int]:
        out = []
        for s in strides:
            q, x = divmod(x, s)
            out.append(q)
        return out

    def op(a: int, b: int) -> int:
        xs, ys = decode(a), decode(b)
        acc = 0
        for g, s, x, y in zip(parts, strides, xs, ys):
            acc += g.op(x, y) * s
        return acc

    def inv(a: int) -> int:
        acc = 0
        for g, s, x in zip(parts, strides, decode(a)):
            acc += g.inverse(x) * s
        return acc

    def names(a: int) -> str:
        return "(" + ",".join(g.element_name(x) for g, x in zip(parts, decode(a))) + ")"

    identity = sum(g.identity * s for g, s in zip(parts, strides))
    return Group(spec, total, identity, all(g.is_abelian for g in parts),
                 "x".join(g.name for g in parts), op, inv, names)


def _build_dihedral(spec: Dihedral) -> Group:
    n = spec.n
    if n < 1:
        raise ParameterError("dihedral parameter must be positive")

    def op(x: int, y: int) -> int:
        a1, b1 = divmod(x, 2)
        a2, b2 = divmod(y, 2)
        a = (a1 + a2) % n if b1 == 0 else (a1 - a2) % n
        return 2 * a + (b1 ^ b2)

    def inv(x: int) -> int:
        a, b = divmod(x, 2)
        return x if b == 1 else 2 * ((-a) % n)

    def names(x: int) -> str:
        a, b = divmod(x, 2)
        base = "e" if a == 0 else ("a" if a == 1 else f"a{a}")
        if b == 0:
            return base
        return "b" if a == 0 else base + "b"

    return Group(spec, 2 * n, 0, n <= 2, f"D_{2 * n}", op, inv, names)


_Q8_NAMES = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")


def _q8_table() -> list[list[int]]:
    # axis 0 is the unit, axes 1..3 are i, j, k; index = 2*axis + sign
    axis_mult = {}
    for x in range(4):
        axis_mult[(0, x)] = (0, x)
        axis_mult[(x, 0)] = (0, x)
    for x in (1, 2, 3):
        axis_mult[(x, x)] = (1, 0)
    cyc = {(1, 2): 3, (2, 3): 1, (3, 1): 2}
    for (x, y), z in cyc.items():
        axis_mult[(x, y)] = (0, z)
        axis_mult[(y, x)] = (1, z)
    table = [[0] * 8 for _ in range(8)]
    for a in range(8):
        for b in range(8):
            ax, sa = a >> 1, a & 1
            bx, sb = b >> 1, b & 1
            sp, cx = axis_mult[(ax, bx)]
            table[a][b] = 2 * cx + (sa ^ sb ^ sp)
    return table


def _build_quaternion(spec: Quaternion) -> Group:
    table = _q8_table()
    inv = [next(b for b in range(8) if table[a][b] == 0) for a in range(8)]
    return Group(spec, 8, 0, False, "Q8",
                 lambda a, b: table[a][b],
                 lambda a: inv[a],
                 lambda a: _Q8_NAMES[a])


def _validate_table(table: Sequence[Sequence[int]]) -> tuple[int, int]:
    v = len(table)
    if v == 0 or any(len(row) != v for row in table):
        raise GroupStructureError("operation table is not square")
    full = set(range(v))
    for i, row in enumerate(table):
        if set(row) != full:
            raise GroupStructureError(f"row {i} is not a permutation (Latin square fails)")
    for j in range(v):
        if {table[i][j] for i in range(v)} != full:
            raise GroupStructureError(f"column {j} is not a permutation (Latin square fails)")
    identity = None
    for e in range(v):
        if all(table[e][g] == g and table[g][e] == g for g in range(v)):
            identity = e
            break
    if identity is None:
        raise GroupStructureError("no identity element")
    for g in range(v):
        if not any(table[g][h] == identity and table[h][g] == identity for h in range(v)):
            raise GroupStructureError(f"element {g} has no inverse")
    if v <= ASSOC_FULL_CHECK_BOUND:
        triples = ((a, b, c) for a in range(v) for b in range(v) for c in range(v))
    else:
        rng = random.Random(0)
        triples = ((rng.randrange(v), rng.randrange(v), rng.randrange(v))
                   for _ in range(ASSOC_SAMPLE_TRIPLES))
    for a, b, c in triples:
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise GroupStructureError(f"associativity fails on ({a},{b},{c})")
    return v, identity


def _build_table(spec: Table) -> Group:
    v, identity = _validate_table(spec.table)
    table = spec.table
    inv = [next(b for b in range(v) if table[a][b] == identity) for a in range(v)]
    abelian = all(table[a][b] == table[b][a] for a in range(v) for b in range(a))
    return Group(spec, v, identity, abelian, f"Table({v})",
                 lambda a, b: table[a][b],
                 lambda a: inv[a],
                 str)


def build_group(spec: GroupSpec) -> Group:
    if isinstance(spec, Cyclic):
        return _build_cyclic(spec)
    if isinstance(spec, Product):
        return _build_product(spec)
    if isinstance(spec, Dihedral):
        return _build_dihedral(spec)
    if isinstance(spec, Quaternion):
        return _build_quaternion(spec)
    if isinstance(spec, Table):
        return _build_table(spec)
    raise ParameterError(f"unknown group spec {spec!r}")


@dataclass(frozen=True)
class Subgroup:
    group: Group
    elements: tuple[int, ...]
    generators: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, x: int) -> bool:
        return x in self._members

    @property
    def _members(self) -> frozenset:
        return frozenset(self.elements)


def subgroup_generated(group: Group, gens: Iterable[int]) -> Subgroup:
    """Closure of the generators under the group operation."""
    gens = tuple(gens)
    if not gens:
        raise ParameterError("need at least one generator")
    for g in gens:
        if not 0 <= g < group.order:
            raise ParameterError(f"generator {g} out of range")
    members = {group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = group.op(x, g)
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(group, tuple(sorted(members)), gens)


class ProductSet:
    """Result of multiplying two subgroups elementwise."""

    __slots__ = ("elements", "is_all_of_g", "intersection_size")

    def __init__(self, elements, is_all_of_g, intersection_size):
        self.elements = elements
        self.is_all_of_g = is_all_of_g
        self.intersection_size = intersection_size


def product_set(h: Subgroup, k: Subgroup) -> ProductSet:
    """HK = {op(h,k)}; |HK| * |H∩K| = |H| * |K| always holds."""
    if h.group != k.group:
        raise UsageError("subgroups have different parent groups")
    g = h.group
    hk = {g.op(x, y) for x in h.elements for y in k.elements}
    inter = len(set(h.elements) & set(k.elements))
    assert len(hk) * inter == h.order * k.order
    return ProductSet(tuple(sorted(hk)), len(hk) == g.order, inter)


def coset(h: Subgroup, g: int) -> tuple[int, ...]:
    """The left coset g+H as a sorted element tuple."""
    grp = h.group
    return tuple(sorted(grp.op(g, x) for x in h.elements))


def coset_union(h: Subgroup, reps: Iterable[int], require_distinct: bool = True):
    """Union of the cosets reps[t]+H flattened to a multiset.

    With require_distinct, repeated cosets among the reps raise; otherwise
    multiplicities accumulate.
    """
    from .families import GMultiset

    grp = h.group
    counts: dict[int, int] = {}
    seen = set()
    for r in reps:
        cs = coset(h, r)
        if cs in seen and require_distinct:
            raise ParameterError(f"rep {r} repeats an earlier coset")
        seen.add(cs)
        for x in cs:
            counts[x] = counts.get(x, 0) + 1
    if not counts:
        raise ParameterError("coset union needs at least one rep")
    return GMultiset.from_counts(grp, counts)


def is_partition(group: Group, subs: Sequence[Subgroup]) -> bool:
    """True iff every non-identity element lies in exactly one subgroup."""
    for s in subs:
        if s.group != group:
            raise UsageError("subgroup belongs to a different group")
    counts = [0] * group.order
    for s in subs:
        for x in s.elements:
            counts[x] += 1
    return all(counts[x] == 1 for x in group.elements() if x != group.identity)


def all_subgroups_of_order(group: Group, k: int, bound: int = SUBGROUP_ENUM_BOUND) -> list[Subgroup]:
    """Every subgroup of the given order, by exhaustive lattice growth."""
    if group.order > bound:
        raise CapacityError(f"exhaustive subgroup enumeration capped at order {bound}")
    if k < 1 or group.order % k:
        return []
    ident = group.identity
    if k == 1:
        return [Subgroup(group, (ident,), (ident,))]
    seen: dict[frozenset, tuple[int, ...]] = {frozenset((ident,)): ()}
    frontier = [(frozenset((ident,)), ())]
    found: dict[frozenset, tuple[int, ...]] = {}
    while frontier:
        members, gens = frontier.pop()
        for x in group.elements():
            if x in members:
                continue
            new_gens = gens + (x,)
            sub = subgroup_generated(group, new_gens)
            if k % sub.order:
                continue
            key = frozenset(sub.elements)
            if key in seen:
                continue
            seen[key] = new_gens
            if sub.order == k:
                found[key] = new_gens
            else:
                frontier.append((key, new_gens))
    subs = [Subgroup(group, tuple(sorted(m)), g) for m, g in found.items()]
    subs.sort(key=lambda s: s.elements)
    return subs
