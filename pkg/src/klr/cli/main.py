"""Command-line entry point: ``klr <subcommand> [options]``."""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .jobs import EXIT_USAGE, JobSpec, Outputs, UsageError, run_cached


def _ints(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _names(text: str) -> tuple:
    return tuple(x.strip() for x in text.split(",") if x.strip())


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _common(p: argparse.ArgumentParser, alpha: bool = True) -> None:
    p.add_argument("--type", required=True, dest="cartan_type", help="Cartan type such as A2, B2, G2")
    if alpha:
        p.add_argument("--alpha", type=_ints, default=(), help="weight as comma-separated coefficients")
    p.add_argument("--order-word", type=_ints, default=None, help="reduced word of w0 defining the convex order")
    p.add_argument("--max-deg", type=int, default=8)
    p.add_argument("--ann-deg", type=int, default=4)
    p.add_argument("--fields", type=_names, default=("Q",), help="comma-separated fields, e.g. Q,F2,F3")
    p.add_argument("--p", type=_ints, default=(2,), dest="primes", help="primes for modular tasks")
    p.add_argument("--out", type=Path, default=None, help="directory for report.json and CSV tables")
    p.add_argument("--cache-dir", type=Path, default=None)
    p.add_argument("--jobs", type=int, default=1, help="worker processes across fields")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="klr", description="Exact computations with KLR algebras and their standard modules.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _common(sub.add_parser("roots", help="positive roots and symmetrizers"), alpha=False)
    _common(sub.add_parser("orders", help="convex order from a reduced word"), alpha=False)
    _common(sub.add_parser("kp", help="Kostant partitions and minimal pairs"))
    _common(sub.add_parser("characters", help="characters of L, reduced standard and standard modules"))
    verify = sub.add_parser("verify", help="verification suites")
    _common(verify)
    verify.add_argument("suite", choices=["theorem-a", "theorem-b", "freeness"])
    _common(sub.add_parser("decomp", help="decomposition matrices"))
    _common(sub.add_parser("adjustment", help="adjustment matrices and verdicts"))
    _common(sub.add_parser("ext1", help="Ext^1 windows and torsion reports"))
    return parser


def _spec(args, fields=None) -> JobSpec:
    task = args.suite if args.command == "verify" else args.command
    return JobSpec(
        cartan_type=args.cartan_type,
        alpha=tuple(getattr(args, "alpha", ()) or ()),
        order_word=args.order_word,
        fields=tuple(fields or args.fields),
        max_deg=args.max_deg,
        ann_deg=args.ann_deg,
        primes=tuple(args.primes),
        task=task,
    )


def _merge(texts: list[str]) -> str:
    import json

    if len(texts) == 1:
        return texts[0]
    reports = [json.loads(t) for t in texts]
    merged = dict(reports[0])
    merged["job"] = dict(merged["job"], fields=[f for r in reports for f in r["job"]["fields"]])
    merged["parts"] = [r["result"] for r in reports]
    merged.pop("result")
    order = {"pass": 0, "falsified": 1, "refused": 2}
    merged["outcome"] = max((r["outcome"] for r in reports), key=order.__getitem__)
    return json.dumps(merged, indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.jobs > 1 and len(args.fields) > 1:
            specs = [_spec(args, [f]) for f in args.fields]
            for s in specs:
                s.validate()
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(run_cached, specs, [args.cache_dir] * len(specs)))
            text = _merge([r[0] for r in results])
            status = max(r[1] for r in results)
            tables = {k: v for r in results for k, v in r[2].items()}
        else:
            spec = _spec(args)
            spec.validate()
            text, status, tables = run_cached(spec, args.cache_dir)
    except UsageError as exc:
        print(f"klr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = Outputs(args.out)
    out.write("report.json", text)
    for name, table in sorted(tables.items()):
        out.write(name, table)
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
