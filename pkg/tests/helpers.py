"""Shared parameter grids producing families for sweep-style tests."""
from __future__ import annotations

import random
from itertools import combinations, product

from edfkit import constructions as cons
from edfkit import transforms as tr
from edfkit.groups import (Cyclic, Dihedral, Product, Quaternion,
                           all_subgroups_of_order, build_group,
                           subgroup_generated)


def block_grid(max_v: int = 512) -> list:
    fams = []
    for b1, b2 in product(range(2, 7), repeat=2):
        for am in (1, 2, 3):
            v = b1 * b2 * am
            if v > max_v:
                continue
            chain = (v, b2 * am, am)
            for e1 in range(1, b1):
                for e2 in range(1, b2):
                    fams.append(cons.build_block(chain, (e1, e2)))
    for b1, b2, b3 in product((2, 3), repeat=3):
        for am in (1, 2):
            v = b1 * b2 * b3 * am
            if v > max_v:
                continue
            chain = (v, b2 * b3 * am, b3 * am, am)
            for etas in product(range(1, b1), range(1, b2), range(1, b3)):
                fams.append(cons.build_block(chain, etas))
    # a few large-v chains
    fams.append(cons.build_block((512, 256, 128), (1, 1)))
    fams.append(cons.build_block((512, 256, 64), (1, 2)))
    fams.append(cons.build_block((512, 128, 32, 8), (2, 3, 1)))
    return fams


def rational_grid() -> list:
    fams = []
    for num, den in ((1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (2, 5)):
        for m in (2, 3):
            for f0 in (1, 2):
                v = den ** m * f0
                if v > 512:
                    continue
                c = [den * f0] + [den] * (m - 1) + [1]
                d = [num * f0] + [num] * (m - 1)
                if any(not 1 <= d[i] <= c[i] - 1 for i in range(m)):
                    continue
                fams.append(cons.build_psedf_rational(c, d))
    return fams


def modular_grid(seed: int = 7) -> list:
    rng = random.Random(seed)
    fams = []
    pairs = [(2, 3), (3, 2), (3, 4), (4, 3), (4, 5), (2, 5), (5, 2), (3, 5), (5, 3), (6, 5)]
    for a, b in pairs:
        for k1 in range(1, min(4, b)):
            for k2 in range(1, min(4, a)):
                fams.append(cons.build_modular_two_set(a, b, k1, k2))
                s = sorted(rng.sample(range(b), k1))
                r = [sorted(rng.sample(range(a), k2)) for _ in range(b)]
                fams.append(cons.build_modular_two_set(a, b, k1, k2, s=s, r=r))
    return fams


def coprime_grid() -> list:
    fams = []
    for v in (6, 12, 15, 30, 60, 105, 210):
        divisors = [d for d in range(2, v) if v % d == 0]
        tuples = []
        for m in (2, 3):
            for combo in combinations(divisors, m):
                if all(__import__("math").gcd(x, y) == 1 for x, y in combinations(combo, 2)):
                    tuples.append(combo)
        for combo in tuples[:10]:
            fams.append(cons.build_mod_coprime(v, combo))
            mu = tuple(min(2, a - 1) for a in combo)
            if any(x > 1 for x in mu):
                fams.append(cons.build_mod_coprime(v, combo, mu))
    return fams


def chunk_grid() -> list:
    fams = []
    for n in (12, 24, 30, 36, 48, 60):
        divisors = [d for d in range(2, n) if n % d == 0]
        pairs = list(combinations(divisors, 2))[:8]
        triples = list(combinations(divisors, 3))[:8]
        for combo in pairs:
            fams.append(cons.build_chunk_family(n, combo, "min"))
        for combo in triples:
            fams.append(cons.build_chunk_family(n, combo, "min"))
            fams.append(cons.build_chunk_family(n, combo, "cyclic"))
    return fams


def block_multiset_grid() -> list:
    fams = []
    weight_menu = ((1,), (2,), (3,), (1, 2), (2, 1), (2, 3))
    for b1, b2 in product((2, 3), repeat=2):
        for am in (1, 2):
            chain = (b1 * b2 * am, b2 * am, am)
            for k1 in range(1, b1 + 1):
                for k2 in range(1, b2 + 1):
                    for w1 in weight_menu:
                        if len(w1) != k1:
                            continue
                        for w2 in weight_menu:
                            if len(w2) != k2:
                                continue
                            fams.append(cons.build_block_multiset(chain, (k1, k2), (w1, w2)))
    return fams


def subgroup_grid() -> list:
    fams = []
    q8 = build_group(Quaternion())
    qi, qj, qk = (subgroup_generated(q8, [g]) for g in (2, 4, 6))
    fams.append(cons.build_subgroup_family(q8, [qi, qj]))
    fams.append(cons.build_subgroup_family(q8, [qi, qk]))
    fams.append(cons.build_subgroup_family(q8, [qi, qj, qk]))
    d8 = build_group(Dihedral(4))
    fams.append(cons.build_subgroup_family(
        d8, [subgroup_generated(d8, [1, 4]), subgroup_generated(d8, [3, 4])]))
    for n in (3, 5, 7):
        d2n = build_group(Dihedral(n))
        fams.append(cons.build_subgroup_family(
            d2n, [subgroup_generated(d2n, [2]), subgroup_generated(d2n, [1])]))
    for p in (2, 3, 5):
        g = build_group(Product((Cyclic(p), Cyclic(p))))
        subs = all_subgroups_of_order(g, p)
        for m in range(2, len(subs) + 1):
            for combo in list(combinations(subs, m))[:6]:
                fams.append(cons.build_subgroup_family(g, list(combo)))
    g9 = build_group(Product((Cyclic(3), Cyclic(3))))
    subs9 = all_subgroups_of_order(g9, 3)
    outside = min(x for x in g9.elements() if x not in subs9[0].elements)
    fams.append(cons.build_subgroup_family(g9, subs9[:2], [[0, outside], None]))
    outside1 = min(x for x in g9.elements() if x not in subs9[1].elements)
    fams.append(cons.build_subgroup_family(g9, subs9[:3], [None, [0, outside1], None]))
    return fams


def partition_grid() -> list:
    fams = []
    for p in (2, 3, 5, 7):
        g = build_group(Product((Cyclic(p), Cyclic(p))))
        nd, classical = cons.build_partition_family(g, all_subgroups_of_order(g, p))
        fams.extend([nd, classical])
    return fams


def classical_grid(max_product: int = 100) -> list:
    fams = []
    for h in product(range(1, 5), repeat=4):
        n = h[0] * h[1] * h[2] * h[3]
        if n <= max_product:
            fams.append(cons.build_classical(*h))
    return fams


def product_grid() -> list:
    k4 = build_group(Product((Cyclic(2), Cyclic(2))))
    nd_k4, _ = cons.build_partition_family(k4, all_subgroups_of_order(k4, 2))
    b8 = cons.build_block((8, 4, 2, 1), (1, 1, 1))
    b4 = cons.build_block((4, 2, 1), (1, 1))
    b9 = cons.build_psedf_rational((3, 3, 1), (2, 2))
    pairs = [(nd_k4, nd_k4), (nd_k4, b8), (b8, b8), (b4, b4), (b4, b9), (b9, b9)]
    return [tr.product_family(a, b) for a, b in pairs]


def uniform_grid() -> list:
    """Families declared pairwise-uniform (for transform/product sweeps)."""
    return (block_grid(128) + rational_grid() + modular_grid() + coprime_grid()
            + chunk_grid() + subgroup_grid())


def full_grid() -> list:
    """Every construction's grid; at least a thousand families overall."""
    return (block_grid() + rational_grid() + modular_grid() + coprime_grid()
            + chunk_grid() + block_multiset_grid() + subgroup_grid()
            + partition_grid() + classical_grid() + product_grid())
