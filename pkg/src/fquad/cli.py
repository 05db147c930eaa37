"""Command line: classify spaces, tabulate functor dimensions, run and export checks.

Exit codes: 0 when everything passes, 1 on a failed check, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .category import DEFAULT_SEED
from .functors import FunctorParseError, parse_functor
from .functors.registry import GRAMMAR
from .quadspace import SpaceParseError, classify, parse_space
from .verify import CHECKS, DEFAULT_ROSTER, run_check

EXPORT_FUNCTORS = (
    "iso:x0", "iso:x1", "P", "lambda:n=1", "lambda:n=2",
    "mix:a=0,b=1", "mix:a=1,b=1", "m:a=0", "m:a=1",
    "kd_m:a=0,d=1", "kd_m:a=1,d=1", "kd_m:a=0,d=2", "kd_m:a=1,d=2",
    "K:a=0,n=1", "K:a=1,n=1", "K:a=0,n=2", "K:a=1,n=2", "K:a=0,n=3", "K:a=1,n=3",
    "L:a=0,n=1", "L:a=1,n=1", "L:a=0,n=2", "L:a=1,n=2", "L:a=0,n=3", "L:a=1,n=3",
)


class UsageError(Exception):
    pass


def describe_space(expr: str) -> dict:
    S = parse_space(expr)
    rad = S.radical.dim
    info = {"space": expr, "dim": S.dim, "radical_dim": rad, "nondegenerate": rad == 0}
    if rad == 0:
        c = classify(S)
        info.update(arf=c.arf, normal_form=c.describe())
        info["text"] = f"dim {S.dim}, nondegenerate, Arf {c.arf}, ≅ {c.describe()}"
    else:
        info["text"] = f"dim {S.dim}, radical dim {rad}, degenerate"
    return info


def _roster(text: str) -> list[str]:
    if text == "default":
        return list(DEFAULT_ROSTER)
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise UsageError("empty roster")
    for n in names:
        parse_space(n)
    return names


def _split_table_args(tokens: list[str]) -> tuple[list[str], list[str]]:
    """Leading functor names, then space expressions."""
    functors: list[str] = []
    for i, tok in enumerate(tokens):
        try:
            parse_space(tok)
        except SpaceParseError:
            functors.append(tok)
            continue
        return functors, tokens[i:]
    return functors, []


def dimension_table(functors: list[str], spaces: list[str]) -> list[dict]:
    rows = []
    for name in functors:
        F = parse_functor(name)
        rows.append({"functor": name, **{s: F.dim(parse_space(s)) for s in spaces}})
    return rows


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _table_text(rows: list[dict], spaces: list[str]) -> str:
    width = max([len("functor")] + [len(r["functor"]) for r in rows])
    cols = [max(len(s), 4) for s in spaces]
    lines = ["functor".ljust(width) + "  " + "  ".join(s.rjust(c) for s, c in zip(spaces, cols))]
    for r in rows:
        lines.append(r["functor"].ljust(width) + "  "
                     + "  ".join(str(r[s]).rjust(c) for s, c in zip(spaces, cols)))
    return "\n".join(lines) + "\n"


def _table_csv(rows: list[dict], spaces: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["functor"] + spaces, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def cmd_classify(args) -> int:
    infos = [describe_space(s) for s in args.spaces]
    if args.format == "json":
        _write(json.dumps(infos, indent=2, ensure_ascii=False) + "\n", args.out)
    else:
        _write("".join(f"{i['space']}: {i['text']}\n" if len(infos) > 1 else i["text"] + "\n"
                       for i in infos), args.out)
    return 0


def cmd_table(args) -> int:
    functors, spaces = _split_table_args(args.items)
    if not functors:
        raise UsageError("table needs at least one functor name")
    spaces = spaces or _roster(args.roster)
    rows = dimension_table(functors, spaces)
    if args.format == "json":
        text = json.dumps({"spaces": spaces, "rows": rows}, indent=2) + "\n"
    elif args.format == "csv":
        text = _table_csv(rows, spaces)
    else:
        text = _table_text(rows, spaces)
    _write(text, args.out)
    return 0


def _check_names(names: list[str]) -> list[str]:
    if not names or names == ["all"]:
        return list(CHECKS)
    for n in names:
        if n not in CHECKS:
            raise UsageError(f"unknown check {n!r}; choose from: all, {', '.join(CHECKS)}")
    return names


def cmd_verify(args) -> int:
    names = _check_names(args.checks)
    if args.nmax < 1 or args.dmax < 0:
        raise UsageError("--nmax must be >= 1 and --dmax >= 0")
    roster = _roster(args.roster)
    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    passed = True
    for name in names:
        reports = run_check(name, roster, args.alpha, args.nmax, args.dmax, args.seed)
        for k, rep in enumerate(reports):
            passed = passed and rep.passed
            if args.format == "json":
                print(json.dumps(rep.to_json(), ensure_ascii=False))
            elif args.format == "csv":
                sys.stdout.write(rep.to_csv())
            else:
                print(rep.summary())
                for row in rep.rows:
                    if "summary" in row or not row["ok"]:
                        mark = "ok" if row["ok"] else "FAILED"
                        print(f"  {row.get('object', '')} {row.get('summary', row)} {mark}")
            if out:
                stem = out / f"{name}_{k}"
                stem.with_suffix(".json").write_text(
                    json.dumps(rep.to_json(), indent=2, ensure_ascii=False) + "\n")
                stem.with_suffix(".csv").write_text(rep.to_csv())
    return 0 if passed else 1


def cmd_export(args) -> int:
    roster = _roster(args.roster)
    rows = dimension_table(list(args.functors or EXPORT_FUNCTORS), roster)
    if args.format == "csv":
        text = _table_csv(rows, roster)
    elif args.format == "text":
        text = _table_text(rows, roster)
    else:
        text = json.dumps({"spaces": roster, "rows": rows}, indent=2) + "\n"
    _write(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--roster", default="default",
                        help="'default' (" + ",".join(DEFAULT_ROSTER) + ") or comma-separated spaces")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for sampled morphisms")
    common.add_argument("--format", choices=("text", "json", "csv"),
                        help="output format (default: text, or json for export)")
    common.add_argument("--out", help="output file (classify/table/export) or report directory (verify)")

    p = argparse.ArgumentParser(
        prog="fquad",
        description="Quadratic spaces over F2 and functors on the cospan category.",
        epilog="space grammar: H0 | H1 | x0 | x1 | 0 joined by '+'\n\nfunctor grammar:\n" + GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="dimension, radical, Arf invariant, normal form")
    c.add_argument("spaces", nargs="+")
    c.set_defaults(func=cmd_classify)

    t = sub.add_parser("table", parents=[common], help="dimension table: functors then spaces",
                       epilog="example: fquad table iso:x1 L:a=1,n=2 H0 H1 H0+H0")
    t.add_argument("items", nargs="+", metavar="FUNCTOR_OR_SPACE")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", parents=[common], help="run named checks ('all' for every check)",
                       epilog="checks: all, " + ", ".join(CHECKS))
    v.add_argument("checks", nargs="*", default=["all"])
    v.add_argument("--alpha", type=int, choices=(0, 1), help="restrict to one value of alpha")
    v.add_argument("--nmax", type=int, default=3)
    v.add_argument("--dmax", type=int, default=2)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", parents=[common], help="dimension tables of the built-in functors")
    e.add_argument("functors", nargs="*")
    e.set_defaults(func=cmd_export)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "json" if args.command == "export" else "text"
    try:
        return args.func(args)
    except (UsageError, SpaceParseError, FunctorParseError) as exc:
        print(f"fquad {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
