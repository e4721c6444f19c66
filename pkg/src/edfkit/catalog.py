"""Persistence, canonicalization and deduplication of families.

Catalog files are bit-stable JSON (sorted keys, integers only).  Every
stored certificate summary is recomputed on load; any mismatch is a hard
integrity failure naming the entry.
"""
from __future__ import annotations

import json
from typing import Iterable, Sequence

from .differences import certify, classify_family
from .errors import IntegrityError, ParameterError
from .families import Family, GMultiset, Provenance
from .groups import build_group, spec_from_json, spec_to_json

SCHEMA_VERSION = 1


def member_key(mem: GMultiset) -> tuple[tuple[int, int], ...]:
    return mem.key()


def canonical_form(f: Family):
    """Dedup key: members sorted internally, member order normalized by
    (size, lexicographic elements)."""
    keys = sorted((mem.size, mem.key()) for mem in f.members)
    return (json.dumps(spec_to_json(f.group.spec), sort_keys=True), tuple(keys))


def _min_translate_key(mem: GMultiset) -> tuple[tuple[int, int], ...]:
    g = mem.group
    return min(mem.translate(t).key() for t in g.elements())


def canonical_form_mod_translation(f: Family):
    """Dedup key treating each member up to left translation."""
    keys = sorted((mem.size, _min_translate_key(mem)) for mem in f.members)
    return (json.dumps(spec_to_json(f.group.spec), sort_keys=True), tuple(keys))


def dedup(families: Iterable[Family], mod_translation: bool = False) -> list[Family]:
    key_fn = canonical_form_mod_translation if mod_translation else canonical_form
    seen = set()
    out = []
    for f in families:
        k = key_fn(f)
        if k not in seen:
            seen.add(k)
            out.append(f)
    return out


def family_to_json(f: Family, with_certificate: bool = True) -> dict:
    entry: dict = {"group": spec_to_json(f.group.spec),
                   "members": [list(mem.support) for mem in f.members]}
    if not f.all_sets:
        entry["multiplicities"] = [[mem.multiplicity(x) for x in mem.support]
                                   for mem in f.members]
    if f.provenance is not None:
        entry["provenance"] = f.provenance.to_json()
    if with_certificate:
        entry["certificate"] = certify(f).summary()
    return entry


def family_from_json(obj: dict) -> Family:
    group = build_group(spec_from_json(obj["group"]))
    members = []
    mults = obj.get("multiplicities")
    for i, elems in enumerate(obj["members"]):
        if mults is not None:
            counts = dict(zip(elems, mults[i]))
            members.append(GMultiset.from_counts(group, counts))
        else:
            members.append(GMultiset.from_elements(group, elems))
    prov = None
    if "provenance" in obj:
        prov = Provenance(obj["provenance"].get("construction", "unknown"),
                          obj["provenance"].get("params", {}))
    return Family(group, members, prov)


def _entry_name(index: int, obj: dict) -> str:
    prov = obj.get("provenance") or {}
    name = prov.get("construction")
    return f"entry {index}" + (f" ({name})" if name else "")


def dumps(families: Sequence[Family]) -> str:
    doc = {"version": SCHEMA_VERSION,
           "entries": [family_to_json(f) for f in families]}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def save(families: Sequence[Family], path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(families))


def load(path) -> list[Family]:
    """Read a catalog and re-verify every stored certificate."""
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "version" not in doc:
        raise IntegrityError("catalog has no schema version")
    if doc["version"] != SCHEMA_VERSION:
        raise IntegrityError(f"catalog schema version {doc['version']} is not "
                             f"{SCHEMA_VERSION}")
    out = []
    for i, obj in enumerate(doc.get("entries", [])):
        try:
            fam = family_from_json(obj)
        except (KeyError, ValueError, TypeError) as exc:
            raise IntegrityError(f"{_entry_name(i, obj)}: malformed ({exc})") from exc
        stored = obj.get("certificate")
        if stored is not None:
            fresh = classify_family(fam).summary() if fam.m >= 2 else None
            if fresh != stored:
                raise IntegrityError(
                    f"{_entry_name(i, obj)}: stored certificate does not match "
                    f"recomputation")
        out.append(fam)
    return out


def load_family(path) -> Family:
    """Read a single-family JSON file (one catalog entry, version optional)."""
    with open(path) as fh:
        doc = json.load(fh)
    if isinstance(doc, dict) and "entries" in doc:
        entries = doc["entries"]
        if len(entries) != 1:
            raise ParameterError(f"expected one family, found {len(entries)}")
        doc = entries[0]
    return family_from_json(doc)
