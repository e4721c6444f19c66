"""Difference multisets and family classification.

This module is the brute-force oracle the rest of the package is tested
against: differences are enumerated by a double loop over member supports,
never via the sequence-correlation path (which is maintained separately in
``sequences`` precisely so the two can check each other).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import UsageError
from .families import Family, GMultiset, Provenance

UNIFORM = "uniform"
PUNCTURED = "punctured"
NONUNIFORM = "nonuniform"

# Canonical label order for all reporting.
LABEL_ORDER = (
    "ND-PSEDF", "ND-SEDF", "ND-SCEDF", "ND-GPSEDF", "ND-GSEDF",
    "ND-MGPSEDF", "ND-MGSEDF",
    "C-PSEDF", "C-SEDF", "C-SCEDF", "C-GPSEDF", "C-GSEDF",
    "C-EDF", "C-GEDF", "C-MGPSEDF", "C-MGSEDF",
)


@dataclass(frozen=True)
class PairShape:
    """Classification of one difference multiset against the group.

    uniform: every element occurs lam times.
    punctured: the identity is absent and every other element occurs lam times.
    nonuniform: anything else.  The identity multiplicity is always reported.
    """

    kind: str
    lam: Optional[int]
    identity_count: int

    @property
    def is_uniform(self) -> bool:
        return self.kind == UNIFORM

    @property
    def is_punctured(self) -> bool:
        return self.kind == PUNCTURED

    def encoded(self) -> str:
        if self.kind == UNIFORM:
            return f"u:{self.lam}"
        if self.kind == PUNCTURED:
            return f"p:{self.lam}"
        return "n"


def difference_vector(a: GMultiset, b: GMultiset) -> list[int]:
    """Multiplicity vector of the external difference multiset of a and b."""
    if a.group != b.group:
        raise UsageError("multisets live in different groups")
    g = a.group
    v = g.order
    out = [0] * v
    if g.is_cyclic:
        if a.is_set and b.is_set:
            bs = b.support
            for x in a.support:
                for y in bs:
                    out[(x - y) % v] += 1
        else:
            bi = b.items()
            for x, cx in a.items():
                for y, cy in bi:
                    out[(x - y) % v] += cx * cy
    else:
        diff = g.diff
        bi = b.items()
        for x, cx in a.items():
            for y, cy in bi:
                out[diff(x, y)] += cx * cy
    return out


def external_difference(a: GMultiset, b: GMultiset) -> GMultiset:
    """The multiset of op(x, inverse(y)) over all pairs, with multiplicity."""
    return GMultiset.from_vector(a.group, difference_vector(a, b))


def internal_difference(a: GMultiset) -> GMultiset:
    return external_difference(a, a)


def classify_vector(vec: list[int], identity: int) -> PairShape:
    ident_count = vec[identity]
    first = vec[0]
    if all(x == first for x in vec):
        return PairShape(UNIFORM, first, ident_count)
    if ident_count == 0:
        lam = None
        for i, x in enumerate(vec):
            if i == identity:
                continue
            if lam is None:
                lam = x
            elif x != lam:
                return PairShape(NONUNIFORM, None, 0)
        return PairShape(PUNCTURED, lam, 0)
    return PairShape(NONUNIFORM, None, ident_count)


def classify_pair(d: GMultiset) -> PairShape:
    """Classify one difference multiset as uniform/punctured/nonuniform."""
    return classify_vector(d.vector(), d.group.identity)


def _add_into(acc: list[int], vec: list[int]) -> None:
    for i, x in enumerate(vec):
        acc[i] += x


@dataclass
class Certificate:
    """Full verification result for a family.

    ``pairs[i][j]`` classifies the external differences with member i on the
    left and member j on the right (computed independently in both orders;
    commutativity is never assumed).  ``rows[i]`` classifies the union over
    j != i of those differences, ``adjacents[j]`` the cyclically adjacent
    difference with member j+1 (mod m) on the left, and ``grand`` the union
    over all ordered pairs.
    """

    v: int
    m: int
    sizes: tuple[int, ...]
    all_sets: bool
    pairwise_disjoint: bool
    pairs: tuple[tuple[Optional[PairShape], ...], ...]
    rows: tuple[PairShape, ...]
    adjacents: tuple[PairShape, ...]
    grand: PairShape
    labels: dict

    def has(self, label: str) -> bool:
        return label in self.labels

    def params(self, label: str) -> dict:
        return self.labels[label]

    def lambda_matrix_encoded(self) -> list[list[str]]:
        out = []
        for i in range(self.m):
            row = []
            for j in range(self.m):
                row.append("." if i == j else self.pairs[i][j].encoded())
            out.append(row)
        return out

    def uniform_lambda_matrix(self) -> Optional[list[list[int]]]:
        """Integer matrix with zero diagonal when every pair is uniform."""
        out = []
        for i in range(self.m):
            row = []
            for j in range(self.m):
                if i == j:
                    row.append(0)
                else:
                    shape = self.pairs[i][j]
                    if not shape.is_uniform:
                        return None
                    row.append(shape.lam)
            out.append(row)
        return out

    def punctured_lambda_matrix(self) -> Optional[list[list[int]]]:
        out = []
        for i in range(self.m):
            row = []
            for j in range(self.m):
                if i == j:
                    row.append(0)
                else:
                    shape = self.pairs[i][j]
                    if not shape.is_punctured:
                        return None
                    row.append(shape.lam)
            out.append(row)
        return out

    def summary(self) -> dict:
        return {
            "labels": [name for name in LABEL_ORDER if name in self.labels],
            "lambda_matrix": self.lambda_matrix_encoded(),
        }

    def text_lines(self) -> list[str]:
        lines = []
        for name in LABEL_ORDER:
            if name not in self.labels:
                continue
            p = self.labels[name]
            if "lambda" in p and "k" in p and isinstance(p["k"], int):
                lines.append(f"{name} ({p['v']},{p['m']},{p['k']},{p['lambda']})")
            elif "lambdas" in p:
                ks = ",".join(str(k) for k in p["k"])
                ls = ",".join(str(x) for x in p["lambdas"])
                lines.append(f"{name} ({p['v']},{p['m']};{ks};{ls})")
            elif "lambda" in p:
                ks = ",".join(str(k) for k in p["k"])
                lines.append(f"{name} ({p['v']},{p['m']};{ks};lambda={p['lambda']})")
            else:
                ks = ",".join(str(k) for k in p["k"])
                lines.append(f"{name} ({p['v']},{p['m']};{ks})")
        if not lines:
            lines.append("no labels")
        flags = []
        flags.append("disjoint" if self.pairwise_disjoint else "non-disjoint")
        flags.append("sets" if self.all_sets else "multisets")
        lines.append("members: " + ", ".join(flags))
        lines.append("lambda-matrix: " +
                     " / ".join(" ".join(row) for row in self.lambda_matrix_encoded()))
        return lines


def _pairwise_disjoint(members) -> bool:
    seen: set[int] = set()
    for mem in members:
        for x in mem.support:
            if x in seen:
                return False
        seen.update(mem.support)
    return True


def classify_family(f: Family) -> Certificate:
    """Compute every pairwise, row, adjacent and grand difference profile
    and assign all applicable taxonomy labels with parameters."""
    m = f.m
    if m < 2:
        raise UsageError("classification needs at least two members")
    g = f.group
    v = g.order
    identity = g.identity
    members = f.members
    sizes = f.sizes

    vecs: list[list[Optional[list[int]]]] = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i != j:
                vecs[i][j] = difference_vector(members[i], members[j])

    pair_shapes = tuple(
        tuple(None if i == j else classify_vector(vecs[i][j], identity) for j in range(m))
        for i in range(m)
    )

    rows = []
    for i in range(m):
        acc = [0] * v
        for j in range(m):
            if j != i:
                _add_into(acc, vecs[i][j])
        rows.append(classify_vector(acc, identity))
    rows = tuple(rows)

    adjacents = tuple(
        classify_vector(vecs[(j + 1) % m][j], identity) for j in range(m)
    )

    grand_acc = [0] * v
    for i in range(m):
        for j in range(m):
            if i != j:
                _add_into(grand_acc, vecs[i][j])
    grand = classify_vector(grand_acc, identity)

    all_sets = f.all_sets
    disjoint = _pairwise_disjoint(members)
    equal_sizes = len(set(sizes)) == 1
    k_list = list(sizes)

    labels: dict = {}

    def base(**extra) -> dict:
        d = {"v": v, "m": m}
        d.update(extra)
        return d

    pairs_uniform = all(pair_shapes[i][j].is_uniform for i in range(m) for j in range(m) if i != j)
    pairs_punct = all(pair_shapes[i][j].is_punctured for i in range(m) for j in range(m) if i != j)
    rows_uniform = all(r.is_uniform for r in rows)
    rows_punct = all(r.is_punctured for r in rows)
    adj_uniform = all(a.is_uniform for a in adjacents)
    adj_punct = all(a.is_punctured for a in adjacents)

    if pairs_uniform:
        mat = [[0 if i == j else pair_shapes[i][j].lam for j in range(m)] for i in range(m)]
        labels["ND-MGPSEDF"] = base(k=k_list, lambda_matrix=mat)
        if all_sets:
            labels["ND-GPSEDF"] = base(k=k_list, lambda_matrix=mat)
            if equal_sizes:
                labels["ND-PSEDF"] = base(k=sizes[0], **{"lambda": mat[0][1]})
    if rows_uniform:
        lams = [r.lam for r in rows]
        labels["ND-MGSEDF"] = base(k=k_list, lambdas=lams)
        if all_sets:
            labels["ND-GSEDF"] = base(k=k_list, lambdas=lams)
            if equal_sizes:
                labels["ND-SEDF"] = base(k=sizes[0], **{"lambda": lams[0]})
    if all_sets and equal_sizes and adj_uniform:
        labels["ND-SCEDF"] = base(k=sizes[0], **{"lambda": adjacents[0].lam})

    if disjoint:
        if pairs_punct:
            mat = [[0 if i == j else pair_shapes[i][j].lam for j in range(m)] for i in range(m)]
            labels["C-MGPSEDF"] = base(k=k_list, lambda_matrix=mat)
            if all_sets:
                labels["C-GPSEDF"] = base(k=k_list, lambda_matrix=mat)
                if equal_sizes:
                    labels["C-PSEDF"] = base(k=sizes[0], **{"lambda": mat[0][1]})
        if rows_punct:
            lams = [r.lam for r in rows]
            labels["C-MGSEDF"] = base(k=k_list, lambdas=lams)
            if all_sets:
                labels["C-GSEDF"] = base(k=k_list, lambdas=lams)
                if equal_sizes:
                    labels["C-SEDF"] = base(k=sizes[0], **{"lambda": lams[0]})
        if all_sets and equal_sizes and adj_punct:
            labels["C-SCEDF"] = base(k=sizes[0], **{"lambda": adjacents[0].lam})
        if all_sets and grand.is_punctured:
            labels["C-GEDF"] = base(k=k_list, **{"lambda": grand.lam})
            if equal_sizes:
                labels["C-EDF"] = base(k=sizes[0], **{"lambda": grand.lam})

    ordered = {name: labels[name] for name in LABEL_ORDER if name in labels}
    return Certificate(v, m, sizes, all_sets, disjoint, pair_shapes, rows,
                       adjacents, grand, ordered)


def certify(f: Family) -> Certificate:
    """classify_family with a per-instance cache (families are immutable)."""
    if f._cert is None:
        f._cert = classify_family(f)
    return f._cert


def merged_pair_check(f: Family, i: int) -> Certificate:
    """Certificate of the two-member family {A_i, multiset-union of the rest}.

    The multiset union equals the plain union whenever the other members are
    pairwise disjoint sets, so both merge readings are covered by one path.
    """
    if f.m < 2:
        raise UsageError("merged pair needs at least two members")
    rest = None
    for j, mem in enumerate(f.members):
        if j == i:
            continue
        rest = mem if rest is None else rest.union(mem)
    merged = Family(f.group, (f.members[i], rest),
                    Provenance("merged_pair", {"i": i}))
    return classify_family(merged)
