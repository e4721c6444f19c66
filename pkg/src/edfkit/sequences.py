"""Sequence form of cyclic-group multisets, and cyclic correlation.

Sequences are plain lists of non-negative integers indexed 0..v-1, printed
index 0 first.  Correlation here is computed by the direct shifted-product
sum; it is deliberately a second, independent implementation of the same
quantity the difference kernel enumerates, so the two can cross-check.
"""
from __future__ import annotations

from typing import Optional, Sequence

from .errors import ParameterError, UsageError
from .families import GMultiset
from .groups import Cyclic, Group, build_group


def to_sequence(a: GMultiset) -> list[int]:
    """Counts-by-position vector; requires a cyclic carrier group."""
    if not a.group.is_cyclic:
        raise UsageError("sequence form needs a cyclic group")
    return a.vector()


def from_sequence(seq: Sequence[int], group: Optional[Group] = None) -> GMultiset:
    if group is None:
        group = build_group(Cyclic(len(seq)))
    elif not group.is_cyclic:
        raise UsageError("sequence form needs a cyclic group")
    return GMultiset.from_vector(group, list(seq))


def sequence_text(seq: Sequence[int]) -> str:
    """One line of digits when binary, comma-separated counts otherwise."""
    if all(x in (0, 1) for x in seq):
        return "".join(str(x) for x in seq)
    return ",".join(str(x) for x in seq)


def parse_sequence_text(text: str) -> list[int]:
    text = text.strip()
    if "," in text:
        return [int(tok) for tok in text.split(",")]
    if not text or any(ch not in "01" for ch in text):
        raise ParameterError(f"cannot parse sequence {text!r}")
    return [int(ch) for ch in text]


def correlation(x: Sequence[int], y: Sequence[int], delta: int) -> int:
    """sum_t x[t] * y[t + delta] with cyclic indices."""
    v = len(x)
    if len(y) != v:
        raise UsageError("sequences have different lengths")
    delta %= v
    yy = list(y[delta:]) + list(y[:delta])
    return sum(a * b for a, b in zip(x, yy))


def correlation_profile(x: Sequence[int], y: Sequence[int]) -> list[int]:
    """Correlation at every shift; profile[d] equals the multiplicity of d
    in the difference multiset with y's multiset on the left."""
    v = len(x)
    if len(y) != v:
        raise UsageError("sequences have different lengths")
    y2 = list(y) + list(y)
    nz = [(t, xv) for t, xv in enumerate(x) if xv]
    out = [0] * v
    for d in range(v):
        s = 0
        for t, xv in nz:
            s += xv * y2[t + d]
        out[d] = s
    return out
