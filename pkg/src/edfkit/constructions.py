"""Parameterized family generators.

Every generator returns a Family carrying provenance (construction name and
raw parameters) and a Declared record stating the expected certificate.
Generators never self-certify: checking a declaration always goes through
the difference kernel via ``check_declaration``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Optional, Sequence, Union

from .differences import certify
from .errors import ParameterError, UsageError
from .families import Declared, Family, GMultiset, Provenance
from .groups import (Cyclic, Group, Subgroup, build_group, coset_union,
                     is_partition, product_set)


def _declare_uniform(sizes: Sequence[int], matrix: Sequence[Sequence[Optional[int]]],
                     all_sets: bool) -> Declared:
    m = len(sizes)
    mat = tuple(tuple(None if i == j else matrix[i][j] for j in range(m)) for i in range(m))
    rows = tuple(sum(matrix[i][j] for j in range(m) if j != i) for i in range(m))
    labels = ["ND-MGPSEDF", "ND-MGSEDF"]
    if all_sets:
        labels += ["ND-GPSEDF", "ND-GSEDF"]
        if len(set(sizes)) == 1:
            labels += ["ND-PSEDF", "ND-SEDF", "ND-SCEDF"]
    return Declared(sizes=tuple(sizes), kind="uniform", lambda_matrix=mat,
                    row_lambdas=rows, labels=tuple(labels))


def check_declaration(f: Family) -> list[str]:
    """Compare a family's declared expectation with its recomputed
    certificate; returns a list of mismatch descriptions (empty = ok)."""
    d = f.declared
    if d is None:
        return []
    cert = certify(f)
    problems = []
    if tuple(f.sizes) != d.sizes:
        problems.append(f"sizes {f.sizes} != declared {d.sizes}")
    if d.lambda_matrix is not None:
        mat = (cert.uniform_lambda_matrix() if d.kind == "uniform"
               else cert.punctured_lambda_matrix())
        if mat is None:
            problems.append(f"pairwise differences are not all {d.kind}")
        else:
            m = len(d.lambda_matrix)
            for i in range(m):
                for j in range(m):
                    if i != j and mat[i][j] != d.lambda_matrix[i][j]:
                        problems.append(
                            f"lambda[{i}][{j}] = {mat[i][j]} != declared {d.lambda_matrix[i][j]}")
    if d.row_lambdas is not None:
        want = "uniform" if d.kind == "uniform" else "punctured"
        for i, row in enumerate(cert.rows):
            if row.kind != want or row.lam != d.row_lambdas[i]:
                problems.append(f"row {i} is {row.kind}({row.lam}), "
                                f"declared {want}({d.row_lambdas[i]})")
    if d.grand_lambda is not None:
        want = "uniform" if d.kind == "uniform" else "punctured"
        if cert.grand.kind != want or cert.grand.lam != d.grand_lambda:
            problems.append(f"grand union is {cert.grand.kind}({cert.grand.lam}), "
                            f"declared {want}({d.grand_lambda})")
    for label in d.labels:
        if not cert.has(label):
            problems.append(f"missing declared label {label}")
    return problems


def _validate_chain(a_chain: Sequence[int]) -> list[int]:
    a = [int(x) for x in a_chain]
    if len(a) < 3:
        raise ParameterError("chain needs at least three terms (m >= 2)")
    if any(x < 1 for x in a):
        raise ParameterError("chain terms must be positive")
    bs = []
    for i in range(len(a) - 1):
        if a[i] % a[i + 1]:
            raise ParameterError(f"chain term {a[i]} is not a multiple of {a[i + 1]}")
        b = a[i] // a[i + 1]
        if b < 2:
            raise ParameterError(f"chain ratio {a[i]}/{a[i + 1]} must be at least 2")
        bs.append(b)
    return bs


def build_block(a_chain: Sequence[int], eta: Sequence[int]) -> Family:
    """Repeating-block binary sequences over Z_{a_0}.

    Member i has period a_{i-1}: eta_i blocks of a_i ones followed by zeros.
    """
    a = [int(x) for x in a_chain]
    bs = _validate_chain(a)
    m = len(a) - 1
    eta = [int(x) for x in eta]
    if len(eta) != m:
        raise ParameterError(f"need {m} eta values, got {len(eta)}")
    for i, (e, b) in enumerate(zip(eta, bs)):
        if not 1 <= e <= b - 1:
            raise ParameterError(f"eta[{i}]={e} outside 1..{b - 1}")
    v = a[0]
    group = build_group(Cyclic(v))
    members = []
    for i in range(1, m + 1):
        period, ones = a[i - 1], eta[i - 1] * a[i]
        members.append(GMultiset.from_vector(
            group, [1 if t % period < ones else 0 for t in range(v)]))
    matrix = [[None if i == j else
               v * eta[i] * a[i + 1] * eta[j] * a[j + 1] // (a[i] * a[j])
               for j in range(m)] for i in range(m)]
    sizes = [eta[i] * a[i + 1] * v // a[i] for i in range(m)]
    return Family(group, members,
                  Provenance("block", {"a_chain": a, "eta": eta}),
                  _declare_uniform(sizes, matrix, True))


def build_block_by_factors(c: Sequence[int], d: Sequence[int]) -> Family:
    """The block construction parameterized by cofactors: a_i = c_i*...*c_m."""
    c = [int(x) for x in c]
    d = [int(x) for x in d]
    m = len(c) - 1
    if m < 2 or len(d) != m:
        raise ParameterError("need factors c_0..c_m and d_1..d_m with m >= 2")
    if any(x < 2 for x in c[:-1]) or c[-1] < 1:
        raise ParameterError("factors c_0..c_{m-1} must be at least 2")
    for i, x in enumerate(d):
        if not 1 <= x <= c[i] - 1:
            raise ParameterError(f"d[{i}]={x} outside 1..{c[i] - 1}")
    a = [1] * (m + 1)
    for i in range(m, -1, -1):
        a[i] = c[i] * (a[i + 1] if i < m else 1)
    fam = build_block(a, d)
    return Family(fam.group, fam.members,
                  Provenance("block_by_factors", {"c": c, "d": d}), fam.declared)


def build_psedf_rational(c: Sequence[int], d: Optional[Sequence[int]] = None,
                         z: Optional[Fraction] = None) -> Family:
    """Equal-size block family from m fraction expressions of one z in (0,1)."""
    c = [int(x) for x in c]
    m = len(c) - 1
    if m < 2:
        raise ParameterError("need at least c_0, c_1, c_2")
    if d is None:
        if z is None:
            raise ParameterError("give either d or z")
        z = Fraction(z)
        d = []
        for i in range(m):
            di = z * c[i]
            if di.denominator != 1:
                raise ParameterError(f"z*c_{i} = {di} is not an integer")
            d.append(int(di))
    d = [int(x) for x in d]
    if len(d) != m:
        raise ParameterError(f"need {m} numerators, got {len(d)}")
    ratios = {Fraction(d[i], c[i]) for i in range(m)}
    if len(ratios) != 1:
        raise ParameterError("all ratios d_i/c_{i-1} must be equal")
    z = ratios.pop()
    if not 0 < z < 1:
        raise ParameterError(f"z = {z} must lie strictly between 0 and 1")
    fam = build_block_by_factors(c, d)
    v = fam.group.order
    k = int(v * z)
    lam = int(v * z * z)
    matrix = tuple(tuple(None if i == j else lam for j in range(m)) for i in range(m))
    declared = Declared(sizes=(k,) * m, kind="uniform", lambda_matrix=matrix,
                        row_lambdas=((m - 1) * lam,) * m,
                        labels=("ND-PSEDF", "ND-SEDF", "ND-SCEDF",
                                "ND-GPSEDF", "ND-GSEDF", "ND-MGPSEDF", "ND-MGSEDF"))
    return Family(fam.group, fam.members,
                  Provenance("psedf_rational", {"c": c, "d": d, "z": str(z)}), declared)


def build_modular_two_set(a: int, b: int, k1: int, k2: int,
                          s: Optional[Sequence[int]] = None,
                          r: Optional[Sequence[Sequence[int]]] = None) -> Family:
    """Two-set family in Z_{ab}: A covers k1 residue classes mod b, B picks
    k2 elements in each class mod b via a residue grid."""
    v = a * b
    if not 1 <= k1 <= b - 1:
        raise ParameterError(f"k1={k1} outside 1..{b - 1}")
    if not 1 <= k2 <= a - 1:
        raise ParameterError(f"k2={k2} outside 1..{a - 1}")
    if s is None:
        s = list(range(k1))
    s = [int(x) for x in s]
    if len(s) != k1 or len(set(s)) != k1 or any(not 0 <= x <= b - 1 for x in s):
        raise ParameterError(f"S must be {k1} distinct residues mod {b}")
    if r is None:
        r = [list(range(k2)) for _ in range(b)]
    r = [[int(x) for x in row] for row in r]
    if len(r) != b:
        raise ParameterError(f"R needs {b} rows")
    for i, row in enumerate(r):
        if len(row) != k2 or len(set(row)) != k2 or any(not 0 <= x <= a - 1 for x in row):
            raise ParameterError(f"R row {i} must hold {k2} distinct residues mod {a}")
    group = build_group(Cyclic(v))
    a_set = GMultiset.from_elements(group, (j * b + si for j in range(a) for si in s))
    b_set = GMultiset.from_elements(group, (r[i][j] * b + i for i in range(b) for j in range(k2)))
    lam = k1 * k2
    matrix = ((None, lam), (lam, None))
    declared = Declared(sizes=(k1 * a, k2 * b), kind="uniform", lambda_matrix=matrix,
                        row_lambdas=(lam, lam),
                        labels=("ND-GPSEDF", "ND-GSEDF", "ND-MGPSEDF", "ND-MGSEDF"))
    return Family(group, [a_set, b_set],
                  Provenance("modular_two_set", {"a": a, "b": b, "k1": k1, "k2": k2,
                                                 "s": s, "r": r}), declared)


def build_mod_coprime(v: int, divisors: Sequence[int],
                      mu: Optional[Sequence[int]] = None) -> Family:
    """Members are unions of mu_i translates of the subgroup generated by a_i
    in Z_v, for pairwise-coprime divisors a_i of v."""
    divisors = [int(x) for x in divisors]
    m = len(divisors)
    if m < 2:
        raise ParameterError("need at least two divisors")
    for x in divisors:
        if x < 2 or v % x:
            raise ParameterError(f"{x} is not a divisor of {v} of size at least 2")
    for i in range(m):
        for j in range(i + 1, m):
            if gcd(divisors[i], divisors[j]) != 1:
                raise ParameterError(
                    f"divisors {divisors[i]} and {divisors[j]} are not coprime")
    if mu is None:
        mu = [1] * m
    mu = [int(x) for x in mu]
    if len(mu) != m:
        raise ParameterError(f"need {m} translate counts, got {len(mu)}")
    for x, ai in zip(mu, divisors):
        if not 1 <= x <= ai - 1:
            raise ParameterError(f"mu={x} outside 1..{ai - 1}")
    group = build_group(Cyclic(v))
    members = []
    for ai, mi in zip(divisors, mu):
        members.append(GMultiset.from_elements(
            group, (g + l * ai for g in range(mi) for l in range(v // ai))))
    matrix = [[None if i == j else mu[i] * mu[j] * v // (divisors[i] * divisors[j])
               for j in range(m)] for i in range(m)]
    sizes = [mu[i] * v // divisors[i] for i in range(m)]
    return Family(group, members,
                  Provenance("mod_coprime", {"v": v, "divisors": divisors, "mu": mu}),
                  _declare_uniform(sizes, matrix, True))


def build_block_multiset(a_chain: Sequence[int], k: Sequence[int],
                         weights: Sequence[Sequence[int]]) -> Family:
    """Block construction with integer plateaus: member i repeats, with
    period a_{i-1}, k_i blocks of length a_i at heights weights[i]."""
    a = [int(x) for x in a_chain]
    bs = _validate_chain(a)
    m = len(a) - 1
    k = [int(x) for x in k]
    if len(k) != m:
        raise ParameterError(f"need {m} block counts, got {len(k)}")
    for i, (ki, b) in enumerate(zip(k, bs)):
        if not 1 <= ki <= b:
            raise ParameterError(f"k[{i}]={ki} outside 1..{b}")
    weights = [[int(w) for w in row] for row in weights]
    if len(weights) != m or any(len(row) != ki for row, ki in zip(weights, k)):
        raise ParameterError("weights must hold k_i values per member")
    if any(w < 1 for row in weights for w in row):
        raise ParameterError("plateau weights must be positive")
    v = a[0]
    group = build_group(Cyclic(v))
    members = []
    for i in range(1, m + 1):
        period = a[i - 1]
        vec = []
        for t in range(v):
            t_in = t % period
            block = t_in // a[i]
            vec.append(weights[i - 1][block] if block < k[i - 1] else 0)
        members.append(GMultiset.from_vector(group, vec))
    totals = [sum(row) for row in weights]
    matrix = [[None if i == j else
               v * totals[i] * a[i + 1] * totals[j] * a[j + 1] // (a[i] * a[j])
               for j in range(m)] for i in range(m)]
    sizes = [totals[i] * a[i + 1] * v // a[i] for i in range(m)]
    return Family(group, members,
                  Provenance("block_multiset", {"a_chain": a, "k": k, "weights": weights}),
                  _declare_uniform(sizes, matrix, all(mem.is_set for mem in members)))


def build_subgroup_family(group: Group, subs: Sequence[Subgroup],
                          coset_reps: Optional[Sequence[Optional[Sequence[int]]]] = None) -> Family:
    """Family of subgroups (or disjoint coset unions of them) whose pairwise
    products cover the whole group."""
    subs = list(subs)
    if len(subs) < 2:
        raise ParameterError("need at least two subgroups")
    for s in subs:
        if s.group != group:
            raise UsageError("subgroup belongs to a different group")
    if len({s.elements for s in subs}) != len(subs):
        raise ParameterError("subgroups must be distinct")
    inter = {}
    for i in range(len(subs)):
        for j in range(i + 1, len(subs)):
            ps = product_set(subs[i], subs[j])
            if not ps.is_all_of_g:
                raise ParameterError(
                    f"product of subgroups {i} and {j} does not cover the group")
            inter[(i, j)] = ps.intersection_size
    if coset_reps is None:
        coset_reps = [None] * len(subs)
    if len(coset_reps) != len(subs):
        raise ParameterError("need one rep list (or None) per subgroup")
    members = []
    mus = []
    for s, reps in zip(subs, coset_reps):
        if reps is None:
            members.append(GMultiset.from_elements(group, s.elements))
            mus.append(1)
        else:
            reps = [int(x) for x in reps]
            members.append(coset_union(s, reps, require_distinct=True))
            mus.append(len(reps))
    m = len(subs)
    matrix = [[None if i == j else
               inter[(min(i, j), max(i, j))] * mus[i] * mus[j]
               for j in range(m)] for i in range(m)]
    sizes = [mem.size for mem in members]
    return Family(group, members,
                  Provenance("subgroup_family",
                             {"orders": [s.order for s in subs],
                              "generators": [list(s.generators) for s in subs],
                              "coset_reps": [list(r) if r is not None else None
                                             for r in coset_reps]}),
                  _declare_uniform(sizes, matrix, True))


ChunkChoices = Union[str, Sequence[int], Mapping[tuple[int, int], int]]


def chunk_widths(n: int, divisors: Sequence[int],
                 choices: ChunkChoices = "min") -> list[int]:
    """Pair-scan width assignment: for each pair (i,j) in index order, the
    chosen side's width becomes lcm(width, gcd(a_i, a_j)).

    choices: "min" always picks the smaller index; "cyclic" (three divisors)
    assigns pair (i,i+1) to i and (0,2) to 2; otherwise a list of 0-based
    member indices aligned with pair order (0,1),(0,2),...,(1,2),... or a
    mapping {(i,j): index}.
    """
    m = len(divisors)
    pair_order = [(i, j) for i in range(m - 1) for j in range(i + 1, m)]
    if isinstance(choices, str):
        if choices == "min":
            pick = {p: p[0] for p in pair_order}
        elif choices == "cyclic":
            if m != 3:
                raise ParameterError("cyclic choice preset needs exactly three divisors")
            pick = {(0, 1): 0, (1, 2): 1, (0, 2): 2}
        else:
            raise ParameterError(f"unknown choice preset {choices!r}")
    elif isinstance(choices, Mapping):
        pick = {p: int(choices[p]) for p in pair_order}
    else:
        choices = [int(x) for x in choices]
        if len(choices) != len(pair_order):
            raise ParameterError(f"need {len(pair_order)} choices, got {len(choices)}")
        pick = dict(zip(pair_order, choices))
    ch = [1] * m
    for (i, j) in pair_order:
        t = pick[(i, j)]
        if t not in (i, j):
            raise ParameterError(f"choice for pair ({i},{j}) must be {i} or {j}")
        ch[t] = lcm(ch[t], gcd(divisors[i], divisors[j]))
    return ch


def build_chunk_family(n: int, divisors: Sequence[int],
                       choices: ChunkChoices = "min") -> Family:
    """Members are width-ch(a_i) coset unions of the subgroups a_i*Z_n."""
    divisors = [int(x) for x in divisors]
    m = len(divisors)
    if m < 2:
        raise ParameterError("need at least two divisors")
    if len(set(divisors)) != m:
        raise ParameterError("divisors must be distinct")
    for x in divisors:
        if x < 1 or n % x:
            raise ParameterError(f"{x} is not a divisor of {n}")
    ch = chunk_widths(n, divisors, choices)
    group = build_group(Cyclic(n))
    members = []
    for ai, ci in zip(divisors, ch):
        members.append(GMultiset.from_elements(
            group, (r + l * ai for r in range(ci) for l in range(n // ai))))
    matrix = [[None if i == j else
               n * ch[i] * ch[j] // (divisors[i] * divisors[j])
               for j in range(m)] for i in range(m)]
    sizes = [n * ch[i] // divisors[i] for i in range(m)]
    if isinstance(choices, str):
        choice_param = choices
    elif isinstance(choices, Mapping):
        choice_param = {f"{i},{j}": t for (i, j), t in sorted(choices.items())}
    else:
        choice_param = [int(x) for x in choices]
    return Family(group, members,
                  Provenance("chunk", {"n": n, "divisors": divisors,
                                       "choices": choice_param, "widths": ch}),
                  _declare_uniform(sizes, matrix, True))


def build_partition_family(group: Group, subs: Sequence[Subgroup]) -> tuple[Family, Family]:
    """From a partition of the group by subgroups with |G| = |H_i||H_j|:
    the subgroups themselves (uniform, lambda 1) and the identity-stripped
    classical family (whose grand union is punctured but which is not strong)."""
    subs = list(subs)
    if len(subs) < 2:
        raise ParameterError("need at least two subgroups")
    if not is_partition(group, subs):
        raise ParameterError("subgroups do not partition the group")
    v = group.order
    for i in range(len(subs)):
        for j in range(i + 1, len(subs)):
            if subs[i].order * subs[j].order != v:
                raise ParameterError(
                    f"|H_{i}|*|H_{j}| = {subs[i].order * subs[j].order} != {v}")
    m = len(subs)
    nd_members = [GMultiset.from_elements(group, s.elements) for s in subs]
    sizes = [s.order for s in subs]
    matrix = [[None if i == j else 1 for j in range(m)] for i in range(m)]
    prov = {"orders": sizes, "generators": [list(s.generators) for s in subs]}
    nd = Family(group, nd_members,
                Provenance("partition", prov), _declare_uniform(sizes, matrix, True))
    ident = group.identity
    cl_members = [GMultiset.from_elements(group, (x for x in s.elements if x != ident))
                  for s in subs]
    cl_sizes = [s.order - 1 for s in subs]
    total = sum(cl_sizes[i] * cl_sizes[j] for i in range(m) for j in range(m) if i != j)
    grand_lam, rem = divmod(total, v - 1)
    if rem:
        raise ParameterError("partition family does not yield an integer grand lambda")
    labels = ["C-GEDF"] + (["C-EDF"] if len(set(cl_sizes)) == 1 else [])
    classical = Family(group, cl_members,
                       Provenance("partition_classical", prov),
                       Declared(sizes=tuple(cl_sizes), kind="punctured",
                                grand_lambda=grand_lam, labels=tuple(labels)))
    return nd, classical


def build_classical(h1: int, h2: int, h3: int, h4: int) -> Family:
    """Disjoint two-set family in Z_{h1*h2*h3*h4+1} whose external differences
    cover every non-identity element exactly once in each direction."""
    for h in (h1, h2, h3, h4):
        if h < 1:
            raise ParameterError("all four parameters must be positive")
    v = h1 * h2 * h3 * h4 + 1
    group = build_group(Cyclic(v))
    a_set = GMultiset.from_elements(
        group, (i * h1 * h2 + alpha for i in range(h3) for alpha in range(h1)))
    b_set = GMultiset.from_elements(
        group, (i * h1 * h2 * h3 + h1 * h2 * (h3 - 1) + beta * h1
                for i in range(h4) for beta in range(1, h2 + 1)))
    if a_set.size != h1 * h3 or b_set.size != h2 * h4:
        raise ParameterError("parameter combination collapses the sets")
    labels = ["C-GSEDF", "C-MGPSEDF", "C-MGSEDF", "C-GPSEDF", "C-GEDF"]
    if h1 * h3 == h2 * h4:
        labels += ["C-SEDF", "C-PSEDF", "C-SCEDF", "C-EDF"]
    declared = Declared(sizes=(h1 * h3, h2 * h4), kind="punctured",
                        lambda_matrix=((None, 1), (1, None)),
                        row_lambdas=(1, 1), grand_lambda=2, labels=tuple(labels))
    return Family(group, [a_set, b_set],
                  Provenance("classical", {"h": [h1, h2, h3, h4]}), declared)
