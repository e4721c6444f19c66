"""New families from old: complements, translates, merges, coset lifts and
direct products, each with the predicted certificate attached."""
from __future__ import annotations

from typing import Optional, Sequence

from .differences import Certificate, certify
from .errors import ParameterError, UsageError
from .families import Declared, Family, GMultiset, Provenance
from .groups import Group, Product, Subgroup, build_group


def _uniform_matrix(f: Family) -> tuple[Certificate, list[list[Optional[int]]]]:
    cert = certify(f)
    mat = cert.uniform_lambda_matrix()
    if mat is None:
        raise UsageError("transform needs a family whose pairwise differences "
                         "are all uniform")
    return cert, [[None if i == j else mat[i][j] for j in range(f.m)] for i in range(f.m)]


def _require_sets(f: Family) -> None:
    if not f.all_sets:
        raise UsageError("this transform is defined for set families only")


def _declare(sizes, matrix, all_sets) -> Declared:
    from .constructions import _declare_uniform
    return _declare_uniform(sizes, matrix, all_sets)


def complement_member(f: Family, j: int) -> Family:
    """Replace member j by its complement in the group."""
    _require_sets(f)
    cert, mat = _uniform_matrix(f)
    v = f.group.order
    sizes = list(f.sizes)
    if sizes[j] >= v:
        raise ParameterError("cannot complement a member covering the whole group")
    for i in range(f.m):
        if i != j:
            mat[i][j] = sizes[i] - mat[i][j]
            mat[j][i] = sizes[i] - mat[j][i]
    sizes[j] = v - sizes[j]
    members = list(f.members)
    members[j] = members[j].complement()
    return Family(f.group, members,
                  Provenance("complement_member", {"j": j}),
                  _declare(sizes, mat, True))


def complement_all(f: Family) -> Family:
    """Replace every member by its complement."""
    _require_sets(f)
    cert, mat = _uniform_matrix(f)
    v = f.group.order
    sizes = f.sizes
    if any(k >= v for k in sizes):
        raise ParameterError("cannot complement a member covering the whole group")
    new_mat = [[None if i == j else v - sizes[i] - sizes[j] + mat[i][j]
                for j in range(f.m)] for i in range(f.m)]
    members = [mem.complement() for mem in f.members]
    return Family(f.group, members, Provenance("complement_all", {}),
                  _declare([v - k for k in sizes], new_mat, True))


def translate_member(f: Family, j: int, g: int) -> Family:
    """Replace member j by its left translate g + A_j; parameters unchanged."""
    _require_sets(f)
    cert, mat = _uniform_matrix(f)
    members = list(f.members)
    members[j] = members[j].translate(g)
    return Family(f.group, members,
                  Provenance("translate_member", {"j": j, "g": g}),
                  _declare(list(f.sizes), mat, True))


def union_translates(f: Family, j: int, gs: Sequence[int]) -> Family:
    """Replace member j by the multiset union of its translates g + A_j.

    The result is a set family exactly when the translates are pairwise
    disjoint; multiplicities accumulate otherwise.
    """
    _require_sets(f)
    cert, mat = _uniform_matrix(f)
    gs = [int(g) for g in gs]
    if not gs:
        raise ParameterError("need at least one translate")
    n = len(gs)
    translates = [f.members[j].translate(g) for g in gs]
    merged = translates[0]
    for t in translates[1:]:
        merged = merged.union(t)
    for i in range(f.m):
        if i != j:
            mat[i][j] *= n
            mat[j][i] *= n
    sizes = list(f.sizes)
    sizes[j] *= n
    members = list(f.members)
    members[j] = merged
    all_sets = merged.is_set and f.all_sets
    return Family(f.group, members,
                  Provenance("union_translates", {"j": j, "gs": gs}),
                  _declare(sizes, mat, all_sets))


def merge_families(f: Family, other: Family) -> Family:
    """Merge two families sharing all but one member: the differing members
    are replaced by their multiset union."""
    if f.group != other.group:
        raise UsageError("families live in different groups")
    if f.m != other.m:
        raise UsageError("families have different member counts")
    cert_f, mat_f = _uniform_matrix(f)
    cert_o, mat_o = _uniform_matrix(other)
    diffs = [i for i in range(f.m) if f.members[i] != other.members[i]]
    if len(diffs) > 1:
        raise UsageError("families must share all but one member")
    idx = diffs[0] if diffs else f.m - 1
    merged = f.members[idx].union(other.members[idx])
    mat = [row[:] for row in mat_f]
    for i in range(f.m):
        if i != idx:
            mat[i][idx] = mat_f[i][idx] + mat_o[i][idx]
            mat[idx][i] = mat_f[idx][i] + mat_o[idx][i]
    sizes = list(f.sizes)
    sizes[idx] += other.sizes[idx]
    members = list(f.members)
    members[idx] = merged
    all_sets = merged.is_set and f.all_sets and other.all_sets
    return Family(f.group, members, Provenance("merge", {"index": idx}),
                  _declare(sizes, mat, all_sets))


def coset_lift(f: Family, group: Group, sub: Subgroup,
               transversal: Optional[Sequence[int]] = None) -> Family:
    """Lift a two-member family along a quotient: each element of a member
    becomes the whole coset rep + H; pairwise values scale by |H|.

    ``transversal`` maps each element of f's (quotient) group to a coset
    representative in the target group; it defaults to the identity embedding
    when both groups are cyclic and H is generated by the quotient order.
    """
    if f.m != 2:
        raise UsageError("coset lifting is defined for two-member families")
    _require_sets(f)
    if sub.group != group:
        raise UsageError("subgroup belongs to a different group")
    if not group.is_abelian:
        raise UsageError("coset lifting needs an abelian target group")
    q = f.group
    if q.order * sub.order != group.order:
        raise ParameterError("quotient order times subgroup order must equal "
                             "the target group order")
    cert, mat = _uniform_matrix(f)
    if transversal is None:
        if not (q.is_cyclic and group.is_cyclic):
            raise ParameterError("give an explicit transversal for non-cyclic lifts")
        d = q.order
        expected = tuple(sorted(range(0, group.order, d)))
        if sub.elements != expected:
            raise ParameterError("default transversal needs the subgroup "
                                 f"generated by {d}")
        transversal = list(range(d))
    transversal = [int(x) for x in transversal]
    if len(transversal) != q.order:
        raise ParameterError("transversal must list one rep per quotient element")
    coset_of = {}
    for qe, rep in enumerate(transversal):
        for h in sub.elements:
            x = group.op(rep, h)
            if x in coset_of:
                raise ParameterError("transversal reps do not give disjoint cosets")
            coset_of[x] = qe
    if len(coset_of) != group.order:
        raise ParameterError("cosets do not cover the target group")
    for q1 in q.elements():
        for q2 in q.elements():
            if coset_of[group.op(transversal[q1], transversal[q2])] != q.op(q1, q2):
                raise ParameterError("transversal is not a quotient isomorphism")
    members = []
    for mem in f.members:
        elems = [group.op(transversal[x], h) for x in mem.support for h in sub.elements]
        members.append(GMultiset.from_elements(group, elems))
    h = sub.order
    new_mat = [[None if i == j else mat[i][j] * h for j in range(2)] for i in range(2)]
    sizes = [k * h for k in f.sizes]
    return Family(group, members,
                  Provenance("coset_lift", {"subgroup_order": h,
                                            "quotient_order": q.order}),
                  _declare(sizes, new_mat, True))


def product_family(fa: Family, fb: Family) -> Family:
    """Member-wise direct product; pairwise values multiply entrywise."""
    if fa.m != fb.m:
        raise UsageError("families must have the same number of members")
    cert_a, mat_a = _uniform_matrix(fa)
    cert_b, mat_b = _uniform_matrix(fb)
    group = build_group(Product((fa.group.spec, fb.group.spec)))
    ob = fb.group.order
    members = []
    for ma, mb in zip(fa.members, fb.members):
        counts = {}
        for x, cx in ma.items():
            for y, cy in mb.items():
                counts[x * ob + y] = cx * cy
        members.append(GMultiset.from_counts(group, counts))
    m = fa.m
    mat = [[None if i == j else mat_a[i][j] * mat_b[i][j] for j in range(m)]
           for i in range(m)]
    sizes = [ka * kb for ka, kb in zip(fa.sizes, fb.sizes)]
    return Family(group, members, Provenance("product", {}),
                  _declare(sizes, mat, fa.all_sets and fb.all_sets))


def apply_transform(f: Family, name: str, **kw) -> Family:
    """String-dispatched entry point used by the command line."""
    if name == "complement-one":
        return complement_member(f, int(kw["member"]))
    if name == "complement-all":
        return complement_all(f)
    if name == "translate":
        return translate_member(f, int(kw["member"]), int(kw["g"]))
    if name == "union-translates":
        return union_translates(f, int(kw["member"]), kw["gs"])
    if name == "merge":
        return merge_families(f, kw["other"])
    if name == "coset-lift":
        return coset_lift(f, kw["group"], kw["subgroup"])
    raise ParameterError(f"unknown transform {name!r}")
