import pytest

from edfkit.errors import CapacityError, GroupStructureError, ParameterError, UsageError
from edfkit.groups import (Cyclic, Dihedral, Product, Quaternion, Table,
                           all_subgroups_of_order, build_group, coset,
                           coset_union, is_partition, parse_group_text,
                           product_set, spec_from_json, spec_to_json,
                           subgroup_generated)


def test_cyclic_op():
    g = build_group(Cyclic(10))
    assert g.op(3, 9) == 2
    assert g.inverse(3) == 7
    assert g.identity == 0 and g.order == 10 and g.is_abelian


def test_dihedral_relations():
    d8 = build_group(Dihedral(4))
    assert d8.order == 8
    beta, alpha = 1, 2
    # beta * alpha = alpha^3 * beta
    assert d8.op(beta, alpha) == 2 * 3 + 1
    assert d8.element_name(7) == "a3b"
    assert not d8.is_abelian


def test_quaternion_table():
    q8 = build_group(Quaternion())
    i, j, k = 2, 4, 6
    assert q8.op(i, j) == k
    assert q8.op(j, i) == 7  # -k
    assert q8.op(i, i) == 1  # -1
    assert [q8.element_name(x) for x in range(8)] == \
        ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]


def test_group_axioms_hold():
    groups = [build_group(s) for s in
              (Cyclic(12), Dihedral(5), Quaternion(), Product((Cyclic(2), Cyclic(6))))]
    for g in groups:
        e = g.identity
        for a in g.elements():
            assert g.op(e, a) == a == g.op(a, e)
            assert g.op(a, g.inverse(a)) == e
        # op rows and columns are permutations
        for a in g.elements():
            assert sorted(g.op(a, b) for b in g.elements()) == list(g.elements())
            assert sorted(g.op(b, a) for b in g.elements()) == list(g.elements())


def test_associativity_small():
    for spec in (Dihedral(3), Quaternion(), Product((Cyclic(2), Cyclic(2)))):
        g = build_group(spec)
        for a in g.elements():
            for b in g.elements():
                for c in g.elements():
                    assert g.op(g.op(a, b), c) == g.op(a, g.op(b, c))


def test_table_group_roundtrip():
    z6 = build_group(Cyclic(6))
    table = tuple(tuple(z6.op(a, b) for b in range(6)) for a in range(6))
    g = build_group(Table(table))
    assert g.order == 6 and g.identity == 0 and g.is_abelian
    assert g.op(4, 5) == 3


def test_table_group_rejects_bad_tables():
    with pytest.raises(GroupStructureError, match="Latin"):
        build_group(Table(((0, 0), (1, 1))))
    # Latin square with only a one-sided identity
    with pytest.raises(GroupStructureError, match="identity"):
        build_group(Table(((0, 1, 2), (2, 0, 1), (1, 2, 0))))
    # order-5 loop with identity and inverses but no associativity
    loop = ((0, 1, 2, 3, 4),
            (1, 0, 4, 2, 3),
            (2, 3, 0, 4, 1),
            (3, 4, 1, 0, 2),
            (4, 2, 3, 1, 0))
    with pytest.raises(GroupStructureError, match="associativity"):
        build_group(Table(loop))


def test_subgroup_generated():
    z15 = build_group(Cyclic(15))
    assert subgroup_generated(z15, [3]).elements == (0, 3, 6, 9, 12)
    assert subgroup_generated(z15, [0]).elements == (0,)
    q8 = build_group(Quaternion())
    assert subgroup_generated(q8, [2]).elements == (0, 1, 2, 3)
    with pytest.raises(ParameterError):
        subgroup_generated(z15, [])


def test_product_set_examples():
    d8 = build_group(Dihedral(4))
    h = subgroup_generated(d8, [1, 4])
    k = subgroup_generated(d8, [3, 4])
    assert h.elements == (0, 1, 4, 5) and k.elements == (0, 3, 4, 7)
    ps = product_set(h, k)
    assert ps.is_all_of_g and ps.intersection_size == 2

    ps_same = product_set(h, h)
    assert ps_same.elements == h.elements and ps_same.intersection_size == h.order

    z30 = build_group(Cyclic(30))
    h6 = subgroup_generated(z30, [6])
    k10 = subgroup_generated(z30, [10])
    oracle = sorted({(a + b) % 30 for a in h6.elements for b in k10.elements})
    ps2 = product_set(h6, k10)
    assert list(ps2.elements) == oracle == list(range(0, 30, 2))
    assert ps2.intersection_size == 1 and not ps2.is_all_of_g


def test_product_set_law_and_coprime_indices():
    z12 = build_group(Cyclic(12))
    subs = []
    for k in (1, 2, 3, 4, 6, 12):
        subs.extend(all_subgroups_of_order(z12, k))
    for h in subs:
        for k in subs:
            ps = product_set(h, k)
            assert len(ps.elements) * ps.intersection_size == h.order * k.order
            # coprime indices force HK = G
            if __import__("math").gcd(12 // h.order, 12 // k.order) == 1:
                assert ps.is_all_of_g


def test_product_set_mismatched_parents():
    h = subgroup_generated(build_group(Cyclic(6)), [2])
    k = subgroup_generated(build_group(Cyclic(8)), [2])
    with pytest.raises(UsageError):
        product_set(h, k)


def test_cosets():
    z15 = build_group(Cyclic(15))
    h5 = subgroup_generated(z15, [5])
    assert coset(h5, 1) == (1, 6, 11)
    u = coset_union(h5, [0, 1, 2])
    assert u.support == (0, 1, 2, 5, 6, 7, 10, 11, 12) and u.is_set

    assert coset_union(h5, [0]).support == h5.elements

    z24 = build_group(Cyclic(24))
    h4 = subgroup_generated(z24, [4])
    assert coset_union(h4, [0, 1]).support == \
        (0, 1, 4, 5, 8, 9, 12, 13, 16, 17, 20, 21)

    with pytest.raises(ParameterError, match="coset"):
        coset_union(h5, [0, 5])
    # multiplicities accumulate when distinctness is not required
    doubled = coset_union(h5, [0, 5], require_distinct=False)
    assert doubled.multiplicity(0) == 2


def test_coset_union_cardinality():
    z24 = build_group(Cyclic(24))
    h = subgroup_generated(z24, [6])
    for reps in ([0], [0, 1], [0, 1, 2], [0, 2, 4]):
        assert coset_union(h, reps).size == len(reps) * h.order


def test_is_partition():
    k4 = build_group(Product((Cyclic(2), Cyclic(2))))
    subs = all_subgroups_of_order(k4, 2)
    assert is_partition(k4, subs)
    whole = subgroup_generated(k4, [1, 2])
    assert is_partition(k4, [whole])
    z30 = build_group(Cyclic(30))
    assert not is_partition(z30, [subgroup_generated(z30, [6]),
                                  subgroup_generated(z30, [10])])


def test_all_subgroups_of_order():
    k4 = build_group(Product((Cyclic(2), Cyclic(2))))
    assert len(all_subgroups_of_order(k4, 2)) == 3
    assert [s.elements for s in all_subgroups_of_order(k4, 1)] == [(0,)]
    g9 = build_group(Product((Cyclic(3), Cyclic(3))))
    assert len(all_subgroups_of_order(g9, 3)) == 4
    g25 = build_group(Product((Cyclic(5), Cyclic(5))))
    assert len(all_subgroups_of_order(g25, 5)) == 6
    assert all_subgroups_of_order(build_group(Cyclic(10)), 4) == []
    with pytest.raises(CapacityError):
        all_subgroups_of_order(build_group(Cyclic(300)), 2)


def test_spec_json_roundtrip():
    specs = [Cyclic(30), Product((Cyclic(2), Dihedral(3))), Quaternion(), Dihedral(4)]
    for spec in specs:
        assert spec_from_json(spec_to_json(spec)) == spec
    assert spec_to_json(Cyclic(30)) == {"kind": "cyclic", "v": 30}
    assert parse_group_text("q8") == Quaternion()
    assert parse_group_text("product:2,2") == Product((Cyclic(2), Cyclic(2)))
