import random
from fractions import Fraction
from itertools import combinations

import pytest

from edfkit import constructions as cons
from edfkit.differences import certify
from edfkit.errors import CapacityError, ExportError, ParameterError, UsageError
from edfkit.families import Family, GMultiset, parse_family_text
from edfkit.groups import Cyclic, Quaternion, build_group, subgroup_generated
from edfkit.ooc import (build_vw_ooc, check_optimal, code_set_from_sequences,
                        complete_si_hypothesis, export_ooc, minimal_period,
                        si_report, write_code_file)
from edfkit.sequences import correlation_profile, to_sequence


def test_export_ooc_basic():
    fam = cons.build_block((8, 4, 2, 1), (1, 1, 1))
    cs = export_ooc(fam)
    assert cs.v == 8 and cs.weights == (4, 4, 4)
    assert cs.lambda_c == 2 and cs.optimal is True
    rep = check_optimal(cs)
    assert rep.optimal and rep.bound == Fraction(16, 8)
    assert rep.certificate.has("ND-PSEDF") and rep.round_trip_ok


def test_export_ooc_nine_element_example():
    z9 = build_group(Cyclic(9))
    cs = export_ooc(parse_family_text(z9, "0,1,2|0,3,6"))
    assert cs.lambda_c == 1 and cs.optimal is True
    rep = check_optimal(cs)
    assert rep.optimal and rep.bound == Fraction(9, 9)


def test_export_ooc_single_codeword():
    z8 = build_group(Cyclic(8))
    fam = Family(z8, [GMultiset.from_elements(z8, [0, 1, 3])])
    cs = export_ooc(fam)
    assert cs.lambda_c is None and len(cs.lambda_a) == 1
    with pytest.raises(UsageError):
        check_optimal(cs)


def test_export_ooc_errors():
    q8 = build_group(Quaternion())
    fam = Family(q8, [GMultiset.from_elements(q8, [0, 2])] * 2)
    with pytest.raises(UsageError):
        export_ooc(fam)
    z6 = build_group(Cyclic(6))
    multi = Family(z6, [GMultiset.from_counts(z6, {0: 2, 1: 1}),
                        GMultiset.from_elements(z6, [0, 1])])
    with pytest.raises(ExportError):
        export_ooc(multi)


def test_export_variable_weight_family():
    z12 = build_group(Cyclic(12))
    fam = parse_family_text(z12, "0,1,2,3,4,5|0,1,2,6,7,8|0,1,3,4,6,7,9,10")
    cs = export_ooc(fam)
    assert cs.weights == (6, 6, 8)
    assert cs.lambda_c == 4  # largest pairwise uniform value of the family
    assert cs.optimal is None


def test_optimality_bound():
    # cross-correlation can never undercut w^2/v
    rng = random.Random(6)
    for _ in range(40):
        v = rng.randint(4, 24)
        w = rng.randint(1, v)
        g = build_group(Cyclic(v))
        a = GMultiset.from_elements(g, rng.sample(range(v), w))
        b = GMultiset.from_elements(g, rng.sample(range(v), w))
        cs = export_ooc(Family(g, [a, b]))
        assert cs.lambda_c * v >= w * w


def test_perturbed_bit_breaks_optimality():
    fam = cons.build_block((8, 4, 2, 1), (1, 1, 1))
    cs = export_ooc(fam)
    for ci in range(cs.n_codewords):
        for pos in range(cs.v):
            cws = [list(c) for c in cs.codewords]
            cws[ci][pos] ^= 1
            assert code_set_from_sequences(cws).optimal is not True


def test_check_optimal_unequal_weights():
    cs = code_set_from_sequences([[1, 1, 0, 0], [1, 0, 0, 0]])
    with pytest.raises(UsageError, match="variable-weight"):
        check_optimal(cs)


def test_vw_ooc():
    cs, vw = build_vw_ooc(30, (6, 10, 15))
    assert vw.weights == (5, 3, 2)
    assert vw.lambda_a == (5, 3, 2)
    assert vw.ratios == (Fraction(1, 3),) * 3
    assert vw.lambda_c == 1
    assert cs.lambda_a == (5, 3, 2) and cs.lambda_c == 1
    for a, b in combinations(cs.codewords, 2):
        prof = correlation_profile(a, b)
        assert set(prof) <= {0, 1} and 1 in prof

    cs2, vw2 = build_vw_ooc(35, (5, 7))
    assert vw2.weights == (7, 5) and cs2.lambda_c == 1

    with pytest.raises(ParameterError, match="lcm"):
        build_vw_ooc(60, (6, 10))

    cs3, _ = build_vw_ooc(210, (105, 70, 42, 30))
    assert cs3.lambda_c == 1 and cs3.weights == (2, 3, 5, 7)


def test_subgroup_autocorrelation():
    z30 = build_group(Cyclic(30))
    h = subgroup_generated(z30, [6])
    seq = to_sequence(GMultiset.from_elements(z30, h.elements))
    prof = correlation_profile(seq, seq)
    for delta in range(30):
        assert prof[delta] == (h.order if delta in h.elements else 0)


def test_minimal_period():
    assert minimal_period([1, 1, 0, 0, 1, 1, 0, 0]) == 4
    assert minimal_period([1, 0, 1, 0]) == 2
    assert minimal_period([1, 1, 1, 1]) == 1
    assert minimal_period([1, 0, 0, 0, 1, 0]) == 6


def test_si_report_power_family():
    fam = cons.build_block((8, 4, 2, 1), (1, 1, 1))
    seqs = [to_sequence(m) for m in fam.members]
    rep = si_report(seqs, max_k=3)
    assert rep.pairwise_si
    assert rep.periods == (8, 4, 2) and rep.common_period == 8
    assert rep.duty_factors == (Fraction(1, 2),) * 3
    lvl = rep.k_levels[3]
    assert lvl.si and lvl.exhaustive and lvl.values[(0, 1, 2)] == 1
    hyp = complete_si_hypothesis(seqs)
    assert hyp.holds and hyp.p == 2 and hyp.k_count == 3


def test_si_report_chunk_family():
    fam = cons.build_chunk_family(30, (6, 15, 10), "cyclic")
    seqs = [to_sequence(m) for m in fam.members]
    rep = si_report(seqs, max_k=2)
    assert rep.pairwise_si
    assert not complete_si_hypothesis(seqs).holds  # 30 is not a prime power


def test_si_pairwise_iff_uniform_family():
    rng = random.Random(8)
    for _ in range(60):
        v = rng.choice([4, 6, 8, 9, 12])
        g = build_group(Cyclic(v))
        a = GMultiset.from_elements(g, rng.sample(range(v), rng.randint(1, v)))
        b = GMultiset.from_elements(g, rng.sample(range(v), rng.randint(1, v)))
        fam = Family(g, [a, b])
        rep = si_report([to_sequence(a), to_sequence(b)])
        uniform = certify(fam).uniform_lambda_matrix() is not None
        assert rep.pairwise_si == uniform


def test_si_hypothesis_counterexamples():
    # periods 8 and 6 make the common minimum period 24: not a prime power
    x = [1, 1, 1, 1, 0, 0, 0, 0] * 3
    y = ([1, 0, 0, 0, 0, 0] * 4)
    assert minimal_period(x) == 8 and minimal_period(y) == 6
    assert not complete_si_hypothesis([x, y]).holds
    # single all-ones sequence: no pairs to check
    rep = si_report([[1] * 6])
    assert rep.pairwise == {} and not rep.pairwise_si


def test_si_budget():
    fam = cons.build_block((8, 4, 2, 1), (1, 1, 1))
    seqs = [to_sequence(m) for m in fam.members]
    with pytest.raises(CapacityError, match="lower max_k"):
        si_report(seqs, max_k=3, max_evals=10, on_budget="error")
    rep = si_report(seqs, max_k=3, max_evals=10, on_budget="sample", seed=1)
    assert not rep.k_levels[3].exhaustive
    assert rep.k_levels[3].checked <= 10


def test_write_code_file(tmp_path):
    cs, vw = build_vw_ooc(30, (6, 10, 15))
    path = tmp_path / "code.txt"
    write_code_file(cs, path, vw)
    lines = path.read_text().splitlines()
    assert lines[0] == "30 3" and lines[1] == "5 3 2"
    assert len(lines) == 5 and all(len(l) == 30 for l in lines[2:])
