"""Command-line front end: ``greenring <command> [options]``.

Exit codes: 0 success, 1 a verification failed, 2 invalid parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from collections import Counter

from .derived import conjecture_scan, decompose_complex, homology, string_tensor
from .greenring import precompute_base_products, structure_constant_table, worker_count
from .hopfalgebra import AlgebraParams, validate_hopf
from .modcat import Uniserial, decompose, format_classes, make_uniserial, tensor
from .pascal import PascalSeed, realize_module, render
from .presentation import build_presentation, verify_presentation

CSV_HEADER = ["i", "j", "i2", "j2", "i3", "j3", "k"]


class UsageError(Exception):
    """Bad parameters; reported with exit code 2."""


def _ints(text: str, count: int | None = None, what: str = "value") -> list[int]:
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None
    if count is not None and len(vals) != count:
        raise UsageError(f"{what} needs {count} integers, got {len(vals)}")
    return vals


def _params(args) -> AlgebraParams:
    try:
        check = validate_hopf(args.n, args.p**args.m, args.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.m < 1:
        raise UsageError(f"m={args.m} must be positive")
    if not check:
        raise UsageError(f"KZ_{args.n}/J^{args.p ** args.m} is not a Hopf algebra: {check.diagnostic}")
    return AlgebraParams(args.n, args.p, args.m)


def _class(text: str, params: AlgebraParams, what: str) -> Uniserial:
    i, j = _ints(text, 2, what)
    if not 1 <= i <= params.d:
        raise UsageError(f"{what}: length {i} outside [1, {params.d}]")
    return Uniserial(i, j % params.n)


def _csv_text(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def cmd_decompose(args) -> tuple[str, int]:
    params = _params(args)
    a, b = _class(args.left, params, "--left"), _class(args.right, params, "--right")
    result = decompose(tensor(make_uniserial(params, *a), make_uniserial(params, *b)))
    items = sorted(result.items(), key=lambda t: (-t[0].length, t[0].top))
    if args.format == "json":
        return _dump({
            "n": params.n, "p": params.p, "m": params.m,
            "left": list(a), "right": list(b),
            "summands": [{"i": c.length, "j": c.top, "k": k} for c, k in items],
        }), 0
    if args.format == "csv":
        return _csv_text([CSV_HEADER] + [[*a, *b, c.length, c.top, k] for c, k in items]), 0
    return format_classes(result) + "\n", 0


def cmd_presentation(args) -> tuple[str, int]:
    params = _params(args)
    pres = build_presentation(params)
    report = verify_presentation(pres, samples=args.samples, seed=args.seed)
    code = 0 if report.ok else 1
    if args.format == "json":
        return _dump({**pres.to_json(), "verification": report.to_json()}), code
    if args.format == "csv":
        rows = [["generator", "coeff", *pres.variables]]
        for rel in pres.relations:
            rows += [[rel.name, c, *e] for e, c in rel.poly.sorted_terms()]
        return _csv_text(rows), code
    return f"{pres}\n{report}\n", code


def cmd_pascal(args) -> tuple[str, int]:
    params = _params(args)
    vals = _ints(args.pascal_seed, what="--seed")
    if len(vals) < 4:
        raise UsageError("--seed needs i,i',l,u0..ul")
    try:
        seed = PascalSeed(vals[0], vals[1], vals[2], tuple(vals[3:]))
        real = realize_module(params, seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    classes = decompose(real.module)
    if args.format == "json":
        return _dump({
            "seed": {"i": seed.i, "i2": seed.i2, "l": seed.l, "u": list(seed.u)},
            "rows": [list(r) for r in real.triangle.rows],
            "dims": list(real.module.dims),
            "classes": [{"i": c.length, "j": c.top, "k": k} for c, k in sorted(classes.items())],
        }), 0
    if args.format == "csv":
        rows = [["row", "col", "value"]]
        for r, row in enumerate(real.triangle.rows):
            rows += [[r, -r + 2 * k, "" if x is None else x] for k, x in enumerate(row)]
        return _csv_text(rows), 0
    dims = ",".join(map(str, real.module.dims))
    return f"{render(real.triangle)}\ndims ({dims})\n{format_classes(classes)}\n", 0


def cmd_structconsts(args) -> tuple[str, int]:
    params = _params(args)
    precompute_base_products(params, worker_count())
    table = structure_constant_table(params)
    ordered = sorted(table.items())
    if args.format == "json":
        text = _dump({
            "n": params.n, "p": params.p, "m": params.m,
            "products": [
                {"left": list(a), "right": list(b), "summands": [[c.length, c.top, k] for c, k in sorted(prod.items())]}
                for (a, b), prod in ordered
            ],
        })
    elif args.format == "csv":
        rows = [CSV_HEADER]
        for (a, b), prod in ordered:
            rows += [[*a, *b, c.length, c.top, k] for c, k in sorted(prod.items())]
        text = _csv_text(rows)
    else:
        text = "".join(f"{a} * {b} = {format_classes(Counter(prod))}\n" for (a, b), prod in ordered)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return f"wrote {len(ordered)} products to {args.out}\n", 0
    return text, 0


def cmd_derived(args) -> tuple[str, int]:
    if args.p != 2 or args.m != 1:
        raise UsageError("derived computations need p=2, m=1 (d=2)")
    if (args.tensor is None) == (args.scan is None):
        raise UsageError("give exactly one of --tensor or --scan")
    if args.tensor is not None:
        j2, s2, j, s = _ints(args.tensor, 4, "--tensor")
        if s2 < 1 or s < 1:
            raise UsageError("string lengths s, s' must be positive")
        n = args.n if args.n is not None else 5
        params = _params(argparse.Namespace(n=n, p=2, m=1))
        c = string_tensor(params, j2, s2, j, s)
        dec = decompose_complex(c)
        if args.format in ("json", "csv"):
            summ = [[x.i, x.j, x.shift] for x in dec.sorted_summands()]
            if args.format == "csv":
                return _csv_text([["i", "j", "shift"]] + summ), 0
            hom = {str(k): [[u.length, u.top, v] for u, v in sorted(h.items())] for k, h in sorted(homology(c).items())}
            return _dump({
                "n": n, "j_prime": j2, "s_prime": s2, "j": j, "s": s,
                "summands": summ, "contractibles_removed": dec.contractibles_removed, "homology": hom,
            }), 0
        return f"{dec}\n", 0

    s2max, smax = args.scan
    ns = [args.n] if args.n is not None else [2, 3, 4, 5]
    for n in ns:
        _params(argparse.Namespace(n=n, p=2, m=1))
    records = conjecture_scan(ns, range(2, s2max + 1), range(3, smax + 1), workers=worker_count())
    counts = Counter(r.case or "none" for r in records)
    bad = [r for r in records if r.case is None or r.stalk_simple or not (r.homology_ok and r.table_ok and r.count_ok)]
    summary = ", ".join(f"case {k}: {v}" for k, v in sorted(counts.items()))
    summary = f"{len(records)} tuples; {summary or 'no tuples'}; {len(bad)} flagged"
    if args.format == "json":
        text = "".join(_dump(r.to_json()) for r in records)
        print(summary, file=sys.stderr)
    elif args.format == "csv":
        rows = [["n", "j", "j_prime", "s", "s_prime", "case", "summands"]]
        for r in records:
            rows.append([r.n, r.j, r.j_prime, r.s, r.s_prime, r.case or "",
                         " + ".join(f"P({i},{j})[{sh}]" for i, j, sh in r.summands)])
        text = _csv_text(rows)
        print(summary, file=sys.stderr)
    else:
        lines = [
            f"n={r.n} j={r.j} j'={r.j_prime} s={r.s} s'={r.s_prime}  case {r.case or '?'}  "
            + " + ".join(f"P({i},{j})[{sh}]" for i, j, sh in r.summands)
            for r in records
        ]
        text = "\n".join(lines + [summary]) + "\n"
    return text, 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="greenring", description="Green rings of truncated cyclic Nakayama Hopf algebras.")
    ap.add_argument("--format", choices=["text", "json", "csv"], default="text")
    ap.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    sub = ap.add_subparsers(dest="command", required=True)
    # the same options after the subcommand; SUPPRESS keeps the top-level value
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["text", "json", "csv"], default=argparse.SUPPRESS)
    seeded = argparse.ArgumentParser(add_help=False, parents=[fmt])
    seeded.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    def algebra(sp, n_required=True):
        sp.add_argument("--n", type=int, required=n_required, default=None)
        sp.add_argument("--p", type=int, required=n_required, default=2)
        sp.add_argument("--m", type=int, default=1)

    sp = sub.add_parser("decompose", parents=[seeded], help="decompose M(i,j) (x) M(i',j')")
    algebra(sp)
    sp.add_argument("--left", required=True, metavar="I,J")
    sp.add_argument("--right", required=True, metavar="I,J")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("presentation", parents=[seeded], help="polynomial presentation and its verification")
    algebra(sp)
    sp.add_argument("--samples", type=int, default=50, help="sampled products in the closure check")
    sp.set_defaults(func=cmd_presentation)

    sp = sub.add_parser("pascal", parents=[fmt], help="Pascal triangle for a seed and the module it realizes")
    algebra(sp)
    sp.add_argument("--seed", dest="pascal_seed", required=True, metavar="I,I2,L,U0,...,UL")
    sp.set_defaults(func=cmd_pascal)

    sp = sub.add_parser("structconsts", parents=[seeded], help="full structure-constant table")
    algebra(sp)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_structconsts)

    sp = sub.add_parser("derived", parents=[seeded], help="string-complex tensors for d=2")
    algebra(sp, n_required=False)
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--tensor", metavar="J2,S2,J,S")
    group.add_argument("--scan", nargs=2, type=int, metavar=("S2MAX", "SMAX"))
    sp.set_defaults(func=cmd_derived)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
