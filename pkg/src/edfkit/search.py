"""Exhaustive backtracking search for set families with a required label.

Pruning keeps running difference counts per ordered member pair (plus row
and grand counts when the requested labels constrain them) and cuts any
branch where a count exceeds its forced target.  Every surviving candidate
is re-certified by the difference kernel before being reported, so results
are sound regardless of pruning.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Optional, Sequence, Union

from .catalog import canonical_form, canonical_form_mod_translation
from .differences import classify_family
from .errors import ParameterError
from .families import Family, GMultiset
from .groups import Group

DEFAULT_BUDGET = 2_000_000

ND_PAIRWISE = {"ND-PSEDF", "ND-GPSEDF", "ND-MGPSEDF"}
C_PAIRWISE = {"C-PSEDF", "C-GPSEDF", "C-MGPSEDF"}
ND_ROWS = {"ND-SEDF", "ND-GSEDF", "ND-MGSEDF"}
C_ROWS = {"C-SEDF", "C-GSEDF", "C-MGSEDF"}
GRAND = {"C-EDF", "C-GEDF"}
EQUAL_SIZE = {"ND-PSEDF", "ND-SEDF", "ND-SCEDF", "C-PSEDF", "C-SEDF", "C-SCEDF", "C-EDF"}
ORDER_SENSITIVE = {"ND-SCEDF", "C-SCEDF"}


@dataclass
class SearchResult:
    families: list[Family]
    exhaustive: bool
    nodes: int


class _Budget(Exception):
    pass


class _Searcher:
    def __init__(self, group: Group, sizes: Sequence[int], labels: Sequence[str],
                 lam: Optional[int], budget: int):
        self.group = group
        self.v = group.order
        self.identity = group.identity
        self.sizes = list(sizes)
        self.m = len(sizes)
        self.labels = set(labels)
        self.lam = lam
        self.budget = budget
        self.nodes = 0
        self.found: list[Family] = []
        self.classical = any(name.startswith("C-") for name in self.labels)
        self.order_free = not (self.labels & ORDER_SENSITIVE)
        if group.is_cyclic:
            v = self.v
            self.diff = lambda a, b: (a - b) % v
        else:
            self.diff = group.diff

    def _targets(self) -> bool:
        """Derive forced count targets from the labels; False = infeasible."""
        v, m, sizes = self.v, self.m, self.sizes
        total = sum(sizes)
        self.pair_target = None
        self.row_target = None
        self.grand_target = None
        if self.labels & EQUAL_SIZE and len(set(sizes)) != 1:
            return False
        if self.classical and total > v:
            return False
        if self.labels & (ND_PAIRWISE | C_PAIRWISE):
            div = v if self.labels & ND_PAIRWISE else v - 1
            if self.labels & ND_PAIRWISE and self.labels & C_PAIRWISE:
                return False
            if div == 0:
                return False
            tgt = [[0] * m for _ in range(m)]
            for i in range(m):
                for j in range(m):
                    if i == j:
                        continue
                    lam, rem = divmod(sizes[i] * sizes[j], div)
                    if rem or lam == 0:
                        return False
                    tgt[i][j] = lam
            self.pair_target = tgt
            self.pair_punctured = bool(self.labels & C_PAIRWISE)
        if self.labels & (ND_ROWS | C_ROWS):
            div = v if self.labels & ND_ROWS else v - 1
            if self.labels & ND_ROWS and self.labels & C_ROWS:
                return False
            if div == 0:
                return False
            rows = []
            for i in range(m):
                lam, rem = divmod(sizes[i] * (total - sizes[i]), div)
                if rem or lam == 0:
                    return False
                rows.append(lam)
            self.row_target = rows
            self.row_punctured = bool(self.labels & C_ROWS)
        if self.labels & GRAND:
            cross = total * total - sum(k * k for k in sizes)
            lam, rem = divmod(cross, v - 1) if v > 1 else (0, 1)
            if rem or lam == 0:
                return False
            self.grand_target = lam
        if self.lam is not None and self.pair_target is not None:
            if any(self.pair_target[i][j] != self.lam
                   for i in range(m) for j in range(m) if i != j):
                return False
        return True

    def run(self) -> bool:
        if not self._targets():
            return True
        v, m = self.v, self.m
        self.chosen: list[list[int]] = [[] for _ in range(m)]
        self.used = [False] * v
        self.pair_cnt = {(i, j): [0] * v for i in range(m) for j in range(m) if i != j}
        self.row_cnt = [[0] * v for _ in range(m)] if self.row_target else None
        self.grand_cnt = [0] * v if self.grand_target else None
        self._undo_stack: list[list] = []
        try:
            self._fill(0, 0)
        except _Budget:
            return False
        return True

    def _cap(self, pair_lam: int, d: int) -> int:
        if self.pair_punctured and d == self.identity:
            return 0
        return pair_lam

    def _try_add(self, c: int, x: int) -> bool:
        """Apply x to member c, rolling back and refusing on any cap breach."""
        self.nodes += 1
        if self.nodes > self.budget:
            raise _Budget
        log = []
        ok = True
        for e in range(c):
            lam_ce = self.pair_target[c][e] if self.pair_target else None
            lam_ec = self.pair_target[e][c] if self.pair_target else None
            for y in self.chosen[e]:
                d1 = self.diff(x, y)
                d2 = self.diff(y, x)
                cnt1 = self.pair_cnt[(c, e)]
                cnt2 = self.pair_cnt[(e, c)]
                cnt1[d1] += 1
                cnt2[d2] += 1
                log.append((cnt1, d1))
                log.append((cnt2, d2))
                if lam_ce is not None and cnt1[d1] > self._cap(lam_ce, d1):
                    ok = False
                    break
                if lam_ec is not None and cnt2[d2] > self._cap(lam_ec, d2):
                    ok = False
                    break
                if self.row_cnt is not None:
                    rc, re = self.row_cnt[c], self.row_cnt[e]
                    rc[d1] += 1
                    re[d2] += 1
                    log.append((rc, d1))
                    log.append((re, d2))
                    cap_c = 0 if (self.row_punctured and d1 == self.identity) else self.row_target[c]
                    cap_e = 0 if (self.row_punctured and d2 == self.identity) else self.row_target[e]
                    if rc[d1] > cap_c or re[d2] > cap_e:
                        ok = False
                        break
                if self.grand_cnt is not None:
                    gc = self.grand_cnt
                    gc[d1] += 1
                    gc[d2] += 1
                    log.append((gc, d1))
                    log.append((gc, d2))
                    cap1 = 0 if d1 == self.identity else self.grand_target
                    cap2 = 0 if d2 == self.identity else self.grand_target
                    if gc[d1] > cap1 or gc[d2] > cap2:
                        ok = False
                        break
            if not ok:
                break
        if not ok:
            for cnt, d in reversed(log):
                cnt[d] -= 1
            return False
        self.chosen[c].append(x)
        if self.classical:
            self.used[x] = True
        self._undo_stack.append(log)
        return True

    def _remove(self, c: int, x: int) -> None:
        log = self._undo_stack.pop()
        for cnt, d in reversed(log):
            cnt[d] -= 1
        self.chosen[c].pop()
        if self.classical:
            self.used[x] = False

    def _member_complete_ok(self, c: int) -> bool:
        if self.pair_target:
            for e in range(c):
                lam_ce = self.pair_target[c][e]
                lam_ec = self.pair_target[e][c]
                cnt1 = self.pair_cnt[(c, e)]
                cnt2 = self.pair_cnt[(e, c)]
                for d in range(self.v):
                    if cnt1[d] != self._cap(lam_ce, d) or cnt2[d] != self._cap(lam_ec, d):
                        return False
        if (self.order_free and c > 0 and self.sizes[c] == self.sizes[c - 1]
                and self.chosen[c] < self.chosen[c - 1]):
            return False
        return True

    def _final_ok(self) -> bool:
        if self.row_target:
            for i in range(self.m):
                tgt = self.row_target[i]
                for d in range(self.v):
                    want = 0 if (self.row_punctured and d == self.identity) else tgt
                    if self.row_cnt[i][d] != want:
                        return False
        if self.grand_target:
            for d in range(self.v):
                want = 0 if d == self.identity else self.grand_target
                if self.grand_cnt[d] != want:
                    return False
        return True

    def _accept(self) -> None:
        members = [GMultiset.from_elements(self.group, elems) for elems in self.chosen]
        fam = Family(self.group, members)
        cert = classify_family(fam)
        for name in self.labels:
            if not cert.has(name):
                return
            if self.lam is not None:
                params = cert.labels[name]
                if params.get("lambda", self.lam) != self.lam:
                    return
        self.found.append(fam)

    def _fill(self, c: int, start: int) -> None:
        if len(self.chosen[c]) == self.sizes[c]:
            if not self._member_complete_ok(c):
                return
            if c + 1 == self.m:
                if self._final_ok():
                    self._accept()
            else:
                self._fill(c + 1, 0)
            return
        need = self.sizes[c] - len(self.chosen[c])
        for x in range(start, self.v - need + 1):
            if self.classical and self.used[x]:
                continue
            if self._try_add(c, x):
                self._fill(c, x + 1)
                self._remove(c, x)


def search(group: Group, m: int, sizes: Union[str, Sequence[int]],
           labels: Sequence[str], lam: Optional[int] = None,
           budget: int = DEFAULT_BUDGET,
           dedup_translates: bool = False) -> SearchResult:
    """Exhaustive (within budget) search for set families carrying every
    requested label, deduplicated by canonical form."""
    if m < 2:
        raise ParameterError("search needs at least two members")
    if not labels:
        raise ParameterError("give at least one required label")
    v = group.order
    if sizes == "any":
        profiles = list(combinations_with_replacement(range(1, v + 1), m))
    else:
        sizes = [int(k) for k in sizes]
        if len(sizes) != m:
            raise ParameterError(f"need {m} sizes, got {len(sizes)}")
        if any(not 1 <= k <= v for k in sizes):
            raise ParameterError("sizes must lie in 1..v")
        profiles = [tuple(sizes)]
    families: list[Family] = []
    exhaustive = True
    nodes = 0
    for profile in profiles:
        s = _Searcher(group, profile, labels, lam, budget - nodes)
        complete = s.run()
        nodes += s.nodes
        families.extend(s.found)
        if not complete:
            exhaustive = False
            break
    key_fn = canonical_form_mod_translation if dedup_translates else canonical_form
    seen = set()
    out = []
    for f in families:
        k = key_fn(f)
        if k not in seen:
            seen.add(k)
            out.append(f)
    return SearchResult(out, exhaustive, nodes)
