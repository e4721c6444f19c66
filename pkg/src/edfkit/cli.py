"""Command-line front door: construct, verify, transform, product, search,
export and catalog maintenance.

Exit status: 0 on success, 1 when a recomputed certificate contradicts a
declaration or stored summary, 2 on usage/parameter errors.  All output is
deterministic for deterministic inputs.  Member and transform indices are
0-based throughout.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import constructions as cons
from . import transforms as tr
from .catalog import family_to_json, load, load_family, save
from .differences import certify
from .errors import (CapacityError, ExportError, GroupStructureError,
                     IntegrityError, ParameterError, UsageError)
from .families import Family, parse_family_text
from .groups import build_group, parse_group_text, subgroup_generated
from .ooc import (build_vw_ooc, check_optimal, complete_si_hypothesis,
                  export_ooc, si_report, write_code_file)
from .search import DEFAULT_BUDGET, search
from .sequences import parse_sequence_text, sequence_text, to_sequence


def _ints(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _rows(text: str) -> list[list[int]]:
    return [_ints(part) for part in text.split("|")]


def _load_family_arg(args) -> Family:
    if getattr(args, "file", None):
        return load_family(args.file)
    if getattr(args, "group", None) and getattr(args, "sets", None):
        group = build_group(parse_group_text(args.group))
        return parse_family_text(group, args.sets)
    raise UsageError("give --file, or --group together with --sets")


def _emit_family(fam: Family, args, out=None) -> int:
    out = out or sys.stdout
    cert = certify(fam)
    problems = cons.check_declaration(fam)
    if args.format == "json":
        doc = family_to_json(fam)
        doc["declared_ok"] = not problems
        if problems:
            doc["declared_problems"] = problems
        print(json.dumps(doc, sort_keys=True, indent=2), file=out)
    else:
        print(f"group: {fam.group.name}", file=out)
        for i, mem in enumerate(fam.members):
            print(f"member {i}: {mem!r}  (size {mem.size})", file=out)
        if fam.group.is_cyclic:
            for i, mem in enumerate(fam.members):
                print(f"sequence {i}: {sequence_text(to_sequence(mem))}", file=out)
        print("certificate:", file=out)
        for line in cert.text_lines():
            print(f"  {line}", file=out)
        if fam.declared is not None:
            if problems:
                print("declared: MISMATCH", file=out)
                for p in problems:
                    print(f"  {p}", file=out)
            else:
                print("declared: confirmed", file=out)
    if args.out:
        save([fam], args.out)
    return 1 if problems else 0


def _cmd_construct(args) -> int:
    name = args.name
    if name == "block":
        fam = cons.build_block(_ints(args.chain), _ints(args.eta))
    elif name == "factors":
        fam = cons.build_block_by_factors(_ints(args.factors), _ints(args.eta))
    elif name == "rational":
        d = _ints(args.eta) if args.eta else None
        z = Fraction(args.z) if args.z else None
        fam = cons.build_psedf_rational(_ints(args.factors), d=d, z=z)
    elif name == "modular":
        a, b = _ints(args.divisors)
        k1, k2 = _ints(args.eta)
        s = _ints(args.s) if args.s else None
        r = _rows(args.r) if args.r else None
        fam = cons.build_modular_two_set(a, b, k1, k2, s=s, r=r)
    elif name == "coprime":
        group = build_group(parse_group_text(args.group))
        if not group.is_cyclic:
            raise UsageError("this construction needs a cyclic group")
        mu = _ints(args.mu) if args.mu else None
        fam = cons.build_mod_coprime(group.order, _ints(args.divisors), mu)
    elif name == "block-multiset":
        fam = cons.build_block_multiset(_ints(args.chain), _ints(args.k), _rows(args.l))
    elif name == "subgroups":
        group = build_group(parse_group_text(args.group))
        subs = [subgroup_generated(group, gens) for gens in _rows(args.gens)]
        reps = None
        if args.reps:
            reps = [(_ints(part) if part.strip() else None) for part in args.reps.split("|")]
        fam = cons.build_subgroup_family(group, subs, reps)
    elif name == "chunk":
        group = build_group(parse_group_text(args.group))
        if not group.is_cyclic:
            raise UsageError("this construction needs a cyclic group")
        choices = args.choices
        if choices not in ("min", "cyclic"):
            choices = _ints(choices)
        fam = cons.build_chunk_family(group.order, _ints(args.divisors), choices)
    elif name == "partition":
        group = build_group(parse_group_text(args.group))
        subs = [subgroup_generated(group, gens) for gens in _rows(args.gens)]
        nd, classical = cons.build_partition_family(group, subs)
        code = _emit_family(nd, args)
        print()
        return max(code, _emit_family(classical, args))
    elif name == "classical":
        h = _ints(args.h)
        if len(h) != 4:
            raise ParameterError("--h needs four integers")
        fam = cons.build_classical(*h)
    else:
        raise ParameterError(f"unknown construction {name!r}")
    return _emit_family(fam, args)


def _cmd_verify(args) -> int:
    fam = _load_family_arg(args)
    cert = certify(fam)
    if args.format == "json":
        print(json.dumps(family_to_json(fam), sort_keys=True, indent=2))
    else:
        print(f"group: {fam.group.name}")
        for i, mem in enumerate(fam.members):
            print(f"member {i}: {mem!r}  (size {mem.size})")
        print("certificate:")
        for line in cert.text_lines():
            print(f"  {line}")
    return 0


def _cmd_transform(args) -> int:
    fam = _load_family_arg(args)
    kw = {}
    if args.member is not None:
        kw["member"] = args.member
    if args.g:
        gs = _ints(args.g)
        if args.op == "translate":
            kw["g"] = gs[0]
        else:
            kw["gs"] = gs
    if args.op == "merge":
        if not args.other:
            raise UsageError("merge needs --other FILE")
        kw["other"] = load_family(args.other)
    if args.op == "coset-lift":
        if not args.target_group or not args.gens:
            raise UsageError("coset-lift needs --target-group and --gens")
        group = build_group(parse_group_text(args.target_group))
        kw["group"] = group
        kw["subgroup"] = subgroup_generated(group, _ints(args.gens))
    out = tr.apply_transform(fam, args.op, **kw)
    return _emit_family(out, args)


def _cmd_product(args) -> int:
    fa = load_family(args.family_a)
    fb = load_family(args.family_b)
    return _emit_family(tr.product_family(fa, fb), args)


def _cmd_search(args) -> int:
    group = build_group(parse_group_text(args.group))
    sizes = "any" if args.k == "any" else _ints(args.k)
    labels = [tok.strip() for tok in args.labels.split(",") if tok.strip()]
    res = search(group, args.m, sizes, labels, lam=args.lam,
                 budget=args.budget, dedup_translates=args.dedup_translates)
    if args.format == "json":
        doc = {"exhaustive": res.exhaustive, "nodes": res.nodes,
               "families": [family_to_json(f) for f in res.families]}
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        status = "exhaustive" if res.exhaustive else "NON-EXHAUSTIVE (budget hit)"
        print(f"search: {len(res.families)} result(s), {status}, nodes={res.nodes}")
        for f in res.families:
            print("  " + " | ".join(repr(m) for m in f.members))
    if args.out:
        save(res.families, args.out)
    return 0


def _cmd_export_ooc(args) -> int:
    fam = _load_family_arg(args)
    cs = export_ooc(fam)
    if args.out:
        write_code_file(cs, args.out)
    print(f"v={cs.v} N={cs.n_codewords} weights={list(cs.weights)} "
          f"lambda_a={list(cs.lambda_a)} lambda_c={cs.lambda_c}")
    if cs.optimal is not None:
        print(f"optimal (lambda_c = w^2/v): {cs.optimal}")
        if cs.optimal:
            rep = check_optimal(cs)
            print(f"re-certified ND-PSEDF lambda={rep.certificate.labels['ND-PSEDF']['lambda']}, "
                  f"round-trip ok: {rep.round_trip_ok}")
    return 0


def _cmd_export_vw(args) -> int:
    group = build_group(parse_group_text(args.group))
    if not group.is_cyclic:
        raise UsageError("variable-weight export needs a cyclic group")
    cs, vw = build_vw_ooc(group.order, _ints(args.divisors))
    if args.out:
        write_code_file(cs, args.out, vw)
    doc = vw.to_json()
    doc["exact_lambda_a"] = list(cs.lambda_a)
    doc["exact_lambda_c"] = cs.lambda_c
    print(json.dumps(doc, sort_keys=True, indent=2))
    return 0


def _cmd_check_si(args) -> int:
    if args.seqs:
        seqs = [parse_sequence_text(part) for part in args.seqs.split("|")]
    else:
        fam = _load_family_arg(args)
        seqs = [to_sequence(mem) for mem in fam.members]
    rep = si_report(seqs, max_k=args.max_k, max_evals=args.budget,
                    on_budget="error" if args.strict else "sample",
                    seed=args.seed)
    doc = rep.to_json()
    doc["complete_si_hypothesis"] = complete_si_hypothesis(seqs).to_json()
    print(json.dumps(doc, sort_keys=True, indent=2))
    return 0


def _cmd_catalog(args) -> int:
    if args.action == "verify":
        fams = load(args.path)
        print(f"catalog ok: {len(fams)} entries verified")
        return 0
    if args.action == "show":
        fams = load(args.path)
        for i, f in enumerate(fams):
            name = f.provenance.construction if f.provenance else "-"
            labels = ",".join(certify(f).summary()["labels"]) or "none"
            print(f"{i}: {f.group.name} m={f.m} sizes={list(f.sizes)} "
                  f"[{name}] {labels}")
        return 0
    if args.action == "add":
        if not args.file:
            raise UsageError("catalog add needs --file FAMILY")
        fams = load(args.path) if _exists(args.path) else []
        fams.append(load_family(args.file))
        save(fams, args.path)
        print(f"catalog now holds {len(fams)} entries")
        return 0
    raise ParameterError(f"unknown catalog action {args.action!r}")


def _exists(path) -> bool:
    import os
    return os.path.exists(path)


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="edfkit")
    sub = top.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--out", help="also write the result to this path")

    p = sub.add_parser("construct", help="run a named construction")
    p.add_argument("name", choices=["block", "factors", "rational", "modular",
                                    "coprime", "block-multiset", "subgroups",
                                    "chunk", "partition", "classical"])
    p.add_argument("--chain", help="divisor chain a_0,a_1,...,a_m")
    p.add_argument("--eta", help="per-member counts (eta / d / k1,k2)")
    p.add_argument("--factors", help="cofactor list c_0,...,c_m")
    p.add_argument("--z", help="target fraction, e.g. 2/3")
    p.add_argument("--divisors", help="divisor list")
    p.add_argument("--mu", help="translate counts")
    p.add_argument("--choices", default="min",
                   help="chunk choices: min, cyclic, or 0-based index list")
    p.add_argument("--h", help="four classical construction integers")
    p.add_argument("--k", help="block counts for block-multiset")
    p.add_argument("--l", help="plateau weights, rows split by |")
    p.add_argument("--s", help="modular construction residues S")
    p.add_argument("--r", help="modular residue grid R, rows split by |")
    p.add_argument("--group", help="group, e.g. cyclic:24, q8, product:2,2")
    p.add_argument("--gens", help="subgroup generator lists split by |")
    p.add_argument("--reps", help="coset rep lists split by | (blank = none)")
    common(p)
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("verify", help="classify a family and print its certificate")
    p.add_argument("--group")
    p.add_argument("--sets", help="members split by |, elements by ',', 'e:c' for multisets")
    p.add_argument("--file", help="family JSON file")
    common(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("transform", help="apply a family transform")
    p.add_argument("--file")
    p.add_argument("--group")
    p.add_argument("--sets")
    p.add_argument("--op", required=True,
                   choices=["complement-one", "complement-all", "translate",
                            "union-translates", "merge", "coset-lift"])
    p.add_argument("--member", type=int, help="0-based member index")
    p.add_argument("--g", help="group element(s), comma separated")
    p.add_argument("--other", help="family file for merge")
    p.add_argument("--target-group", help="lift target, e.g. cyclic:15")
    p.add_argument("--gens", help="lift subgroup generators")
    common(p)
    p.set_defaults(fn=_cmd_transform)

    p = sub.add_parser("product", help="member-wise direct product of two families")
    p.add_argument("family_a")
    p.add_argument("family_b")
    common(p)
    p.set_defaults(fn=_cmd_product)

    p = sub.add_parser("search", help="exhaustive family search with pruning")
    p.add_argument("--group", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", default="any", help="sizes k_1,...,k_m or 'any'")
    p.add_argument("--labels", required=True, help="required labels, comma separated")
    p.add_argument("--lambda", dest="lam", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--dedup-translates", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("export-ooc", help="write a family as an optical code")
    p.add_argument("--file")
    p.add_argument("--group")
    p.add_argument("--sets")
    common(p)
    p.set_defaults(fn=_cmd_export_ooc)

    p = sub.add_parser("export-vw", help="variable-weight code from subgroup sequences")
    p.add_argument("--group", required=True)
    p.add_argument("--divisors", required=True)
    common(p)
    p.set_defaults(fn=_cmd_export_vw)

    p = sub.add_parser("check-si", help="pairwise/k-wise shift invariance report")
    p.add_argument("--file")
    p.add_argument("--group")
    p.add_argument("--sets")
    p.add_argument("--seqs", help="sequences split by |")
    p.add_argument("--max-k", dest="max_k", type=int, default=2)
    p.add_argument("--budget", type=int, default=10_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strict", action="store_true",
                   help="error instead of sampling when over budget")
    common(p)
    p.set_defaults(fn=_cmd_check_si)

    p = sub.add_parser("catalog", help="verify/show/extend a catalog file")
    p.add_argument("action", choices=["verify", "show", "add"])
    p.add_argument("path")
    p.add_argument("--file", help="family to add")
    common(p)
    p.set_defaults(fn=_cmd_catalog)
    return top


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args)
    except IntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return 1
    except (ParameterError, UsageError, GroupStructureError, ExportError,
            CapacityError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
