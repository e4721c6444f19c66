"""Optical orthogonal code export and shift-invariance checking.

Codeword correlation values are always exact maxima recomputed from the
sequences, never declared bounds; the declared bounds live alongside them
so the two can be compared.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Optional, Sequence

from .differences import Certificate, classify_family
from .errors import CapacityError, ExportError, ParameterError, UsageError
from .families import Family
from .groups import Cyclic, build_group
from .sequences import correlation_profile, from_sequence, to_sequence

DEFAULT_SHIFT_BUDGET = 10_000_000
DEFAULT_SAMPLES = 20_000


@dataclass
class CodeSet:
    """Binary codewords of one length with exact correlation maxima."""

    v: int
    codewords: tuple[tuple[int, ...], ...]
    weights: tuple[int, ...]
    lambda_a: tuple[int, ...]
    lambda_c: Optional[int]

    @property
    def n_codewords(self) -> int:
        return len(self.codewords)

    @property
    def equal_weight(self) -> bool:
        return len(set(self.weights)) == 1

    @property
    def optimal(self) -> Optional[bool]:
        """Cross-correlation meets w^2/v exactly (equal weights only)."""
        if self.lambda_c is None or not self.equal_weight:
            return None
        w = self.weights[0]
        return self.lambda_c * self.v == w * w


def code_set_from_sequences(seqs: Sequence[Sequence[int]]) -> CodeSet:
    seqs = [tuple(int(x) for x in s) for s in seqs]
    if not seqs:
        raise ParameterError("need at least one codeword")
    v = len(seqs[0])
    if any(len(s) != v for s in seqs):
        raise ParameterError("codewords must share one length")
    if any(x not in (0, 1) for s in seqs for x in s):
        raise ExportError("codewords must be binary")
    weights = tuple(sum(s) for s in seqs)
    lambda_a = tuple(max(correlation_profile(s, s)[1:], default=0) for s in seqs)
    lambda_c = None
    if len(seqs) >= 2:
        lambda_c = max(max(correlation_profile(a, b))
                       for a, b in combinations(seqs, 2))
    return CodeSet(v, tuple(seqs), weights, lambda_a, lambda_c)


def export_ooc(f: Family) -> CodeSet:
    """Characteristic sequences of a set family over a cyclic group."""
    if not f.group.is_cyclic:
        raise UsageError("code export needs a cyclic group")
    for i, mem in enumerate(f.members):
        if not mem.is_set:
            raise ExportError(f"member {i} is a multiset; codewords must be binary")
    return code_set_from_sequences([to_sequence(mem) for mem in f.members])


@dataclass
class OptimalityReport:
    optimal: bool
    v: int
    weight: int
    lambda_c: int
    bound: Fraction
    certificate: Optional[Certificate]
    round_trip_ok: Optional[bool]


def check_optimal(cs: CodeSet) -> OptimalityReport:
    """Exact check of lambda_c * v == w^2; on success the codewords are
    re-read as a family and re-certified as a non-disjoint PSEDF."""
    if cs.n_codewords < 2:
        raise UsageError("optimality needs at least two codewords")
    if not cs.equal_weight:
        raise UsageError("weights differ; use the variable-weight path")
    w = cs.weights[0]
    bound = Fraction(w * w, cs.v)
    optimal = cs.lambda_c * cs.v == w * w
    cert = None
    round_trip = None
    if optimal:
        group = build_group(Cyclic(cs.v))
        members = [from_sequence(s, group) for s in cs.codewords]
        fam = Family(group, members)
        cert = classify_family(fam)
        lam = w * w // cs.v
        if not (cert.has("ND-PSEDF") and cert.labels["ND-PSEDF"]["lambda"] == lam):
            raise ParameterError("optimal code failed PSEDF re-certification")
        round_trip = [tuple(to_sequence(mem)) for mem in fam.members] == list(cs.codewords)
    return OptimalityReport(optimal, cs.v, w, cs.lambda_c, bound, cert, round_trip)


@dataclass
class VWParams:
    """Declared variable-weight parameters (per codeword-weight class)."""

    weights: tuple[int, ...]
    lambda_a: tuple[int, ...]
    ratios: tuple[Fraction, ...]
    lambda_c: int

    def to_json(self) -> dict:
        return {
            "weights": list(self.weights),
            "lambda_a": list(self.lambda_a),
            "ratios": [str(r) for r in self.ratios],
            "lambda_c": self.lambda_c,
        }


def build_vw_ooc(v: int, divisors: Sequence[int]) -> tuple[CodeSet, VWParams]:
    """Variable-weight code from subgroup characteristic sequences: one
    codeword per divisor a_i (pairwise lcm must be v), weight v/a_i,
    autocorrelation bound v/a_i, cross-correlation 1."""
    divisors = [int(x) for x in divisors]
    m = len(divisors)
    if m < 2:
        raise ParameterError("need at least two divisors")
    if len(set(divisors)) != m:
        raise ParameterError("divisors must be distinct")
    for a in divisors:
        if a < 1 or v % a:
            raise ParameterError(f"{a} is not a divisor of {v}")
    for i in range(m):
        for j in range(i + 1, m):
            if lcm(divisors[i], divisors[j]) != v:
                raise ParameterError(
                    f"lcm of divisors {divisors[i]} and {divisors[j]} is not {v}")
    seqs = []
    for a in divisors:
        seqs.append([1 if t % a == 0 else 0 for t in range(v)])
    cs = code_set_from_sequences(seqs)
    params = VWParams(tuple(v // a for a in divisors),
                      tuple(v // a for a in divisors),
                      tuple(Fraction(1, m) for _ in divisors), 1)
    return cs, params


def minimal_period(seq: Sequence[int]) -> int:
    n = len(seq)
    for d in range(1, n + 1):
        if n % d:
            continue
        if all(seq[i] == seq[(i + d) % n] for i in range(n)):
            return d
    return n


@dataclass
class KLevelResult:
    k: int
    si: bool
    exhaustive: bool
    checked: int
    total: int
    values: dict

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "shift_invariant": self.si,
            "exhaustive": self.exhaustive,
            "checked_shift_tuples": self.checked,
            "total_shift_tuples": self.total,
            "values": {"/".join(map(str, combo)): val
                       for combo, val in sorted(self.values.items())},
        }


@dataclass
class SIHypothesis:
    """Whether a single prime p gives all duty factors n_i/p and a common
    minimum period p^K for K sequences (the completely-SI sufficient
    condition); this flag never asserts complete shift invariance itself."""

    holds: bool
    p: Optional[int]
    k_count: int
    duty_factors: tuple[Fraction, ...]
    common_period: int

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "p": self.p,
            "k": self.k_count,
            "duty_factors": [str(d) for d in self.duty_factors],
            "common_period": self.common_period,
        }


@dataclass
class SIReport:
    length: int
    duty_factors: tuple[Fraction, ...]
    periods: tuple[int, ...]
    common_period: int
    pairwise: dict
    pairwise_si: bool
    k_levels: dict

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "duty_factors": [str(d) for d in self.duty_factors],
            "periods": list(self.periods),
            "common_period": self.common_period,
            "pairwise": {f"{i}/{j}": {"constant": const, "value": val}
                         for (i, j), (const, val) in sorted(self.pairwise.items())},
            "pairwise_shift_invariant": self.pairwise_si,
            "k_levels": {str(k): lvl.to_json() for k, lvl in sorted(self.k_levels.items())},
        }


def _kwise_value(seqs, combo, taus, length) -> int:
    first = seqs[combo[0]]
    rest = [(seqs[c], t) for c, t in zip(combo[1:], taus)]
    total = 0
    for t in range(length):
        x = first[t]
        if not x:
            continue
        for s, tau in rest:
            x *= s[(t + tau) % length]
            if not x:
                break
        total += x
    return total


def si_report(seqs: Sequence[Sequence[int]], max_k: int = 2,
              max_evals: int = DEFAULT_SHIFT_BUDGET,
              on_budget: str = "sample", seed: int = 0,
              samples: int = DEFAULT_SAMPLES) -> SIReport:
    """Pairwise and k-wise Hamming cross-correlation constancy.

    Levels whose exhaustive shift enumeration would exceed max_evals are
    sampled (seeded) and flagged non-exhaustive, or rejected with a capacity
    error when on_budget="error".
    """
    seqs = [tuple(int(x) for x in s) for s in seqs]
    if not seqs:
        raise ParameterError("need at least one sequence")
    length = len(seqs[0])
    if any(len(s) != length for s in seqs):
        raise UsageError("sequences must share one length")
    n = len(seqs)
    if not 2 <= max_k <= max(n, 2):
        raise ParameterError(f"max_k must lie in 2..{n}")
    duty = tuple(Fraction(sum(s), length) for s in seqs)
    periods = tuple(minimal_period(s) for s in seqs)
    common = 1
    for p in periods:
        common = lcm(common, p)

    pairwise = {}
    for i, j in combinations(range(n), 2):
        profile = correlation_profile(seqs[i], seqs[j])
        const = len(set(profile)) == 1
        pairwise[(i, j)] = (const, profile[0] if const else None)
    pairwise_si = all(const for const, _ in pairwise.values()) and n >= 2

    rng = random.Random(seed)
    levels = {}
    spent = 0
    for k in range(3, max_k + 1):
        values = {}
        level_si = True
        exhaustive = True
        checked = 0
        total_level = 0
        for combo in combinations(range(n), k):
            total = length ** (k - 1)
            total_level += total
            if spent + total > max_evals and on_budget == "error":
                raise CapacityError(
                    f"{k}-wise enumeration needs {total} shift tuples; "
                    f"budget {max_evals} exceeded, lower max_k")
            seen = None
            const = True
            if spent + total <= max_evals:
                taus_iter = _all_taus(length, k - 1)
                count = total
            else:
                exhaustive = False
                count = min(samples, max_evals)
                taus_iter = (tuple(rng.randrange(length) for _ in range(k - 1))
                             for _ in range(count))
            for taus in taus_iter:
                val = _kwise_value(seqs, combo, taus, length)
                if seen is None:
                    seen = val
                elif val != seen:
                    const = False
                    break
            spent += count
            checked += count
            values[combo] = seen if const else None
            if not const:
                level_si = False
        levels[k] = KLevelResult(k, level_si, exhaustive, checked, total_level, values)
    return SIReport(length, duty, periods, common, pairwise, pairwise_si, levels)


def _all_taus(length: int, dims: int):
    taus = [0] * dims
    while True:
        yield tuple(taus)
        i = dims - 1
        while i >= 0:
            taus[i] += 1
            if taus[i] < length:
                break
            taus[i] = 0
            i -= 1
        if i < 0:
            return


def complete_si_hypothesis(seqs: Sequence[Sequence[int]]) -> SIHypothesis:
    """Check for a prime p with all duty factors of the form n_i/p and the
    common minimum period (lcm of the minimal periods) equal to p^K."""
    seqs = [tuple(int(x) for x in s) for s in seqs]
    if not seqs:
        raise ParameterError("need at least one sequence")
    length = len(seqs[0])
    if any(len(s) != length for s in seqs):
        raise UsageError("sequences must share one length")
    k_count = len(seqs)
    duty = tuple(Fraction(sum(s), length) for s in seqs)
    common = 1
    for s in seqs:
        common = lcm(common, minimal_period(s))
    p = _prime_power_base(common, k_count)
    holds = p is not None and all((d * p).denominator == 1 for d in duty)
    return SIHypothesis(holds, p if holds else None, k_count, duty, common)


def _prime_power_base(n: int, k: int) -> Optional[int]:
    if n < 2:
        return None
    p = None
    for cand in range(2, n + 1):
        if n % cand == 0:
            p = cand
            break
    if p is None:
        return None
    return p if p ** k == n else None


def write_code_file(cs: CodeSet, path, vw: Optional[VWParams] = None) -> None:
    """Header "v N", optional weights line, then one 0/1 row per codeword."""
    lines = [f"{cs.v} {cs.n_codewords}"]
    if vw is not None:
        lines.append(" ".join(str(w) for w in vw.weights))
    for cw in cs.codewords:
        lines.append("".join(str(x) for x in cw))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
