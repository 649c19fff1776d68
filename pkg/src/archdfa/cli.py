"""``archdfa`` command line.

Exit codes: 0 success, 1 validation/analysis error or bad usage,
2 unreadable or unparseable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal
from pathlib import Path
from typing import Optional, Sequence

from . import report
from .adcd import RenderUnavailable, UnknownBase, build_adcd, emit_dot, render_svg
from .complexity import architecture_tac
from .concept import ConceptError, Mode, Scale, discipline, evaluate_concepts
from .document import DocumentIOError, DocumentParseError, ValidationFailed, load, parse_profile, read_document
from .matrix import NoInterfaces, base_module, build_im, im_csv, strategy_suggestion
from .mim import grouping_hints, mim_summary
from .model import InterfaceType, errors
from .msasm import MsasmError, builtin_profile

EXIT_OK, EXIT_ANALYSIS, EXIT_IO = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2; usage errors are 1 here
        self.print_usage(sys.stderr)
        self.exit(EXIT_ANALYSIS, f"{self.prog}: error: {message}\n")


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="archdfa", description="Assembly-oriented modular architecture analysis.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("validate", help="check an architecture document")
    sp.add_argument("file")

    sp = sub.add_parser("tac", help="total assembly complexity")
    sp.add_argument("file")
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")

    sp = sub.add_parser("msasm", help="module set assembly strategy scores")
    sp.add_argument("file")
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--profile", metavar="NAME")
    grp.add_argument("--profile-file", metavar="F")

    sp = sub.add_parser("concept", help="rank technical solutions")
    sp.add_argument("file")
    sp.add_argument("--discipline", metavar="D", help="operational_excellence, product_leadership, customer_intimacy or custom")
    sp.add_argument("--mode", choices=("triadic", "pugh"), default="triadic")

    sp = sub.add_parser("mim", help="module indication matrix summary and hints")
    sp.add_argument("file")

    sp = sub.add_parser("im", help="interface matrix, base module and strategy")
    sp.add_argument("file")
    sp.add_argument("--csv", action="store_true")
    sp.add_argument("--exclude-type", action="append", default=[], metavar="T", choices=[t.value for t in InterfaceType])
    sp.add_argument("-v", "--verbose", action="store_true")

    sp = sub.add_parser("adcd", help="assembly directions and connections draft")
    sp.add_argument("file")
    sp.add_argument("--base", metavar="ID")
    sp.add_argument("--format", choices=("dot", "svg"), default="dot")
    sp.add_argument("-o", "--output", metavar="OUT", help="write here instead of stdout")

    sp = sub.add_parser("compare", help="legacy vs revised report")
    sp.add_argument("legacy")
    sp.add_argument("revised")
    sp.add_argument("--format", choices=("md", "csv"), default="md")
    return p


def _cmd_validate(args) -> int:
    arch, diags = read_document(args.file)
    for d in diags:
        print(f"{args.file}: {d}", file=sys.stderr)
    errs = errors(diags)
    print(f"{arch.name}: {len(errs)} error(s), {len(diags) - len(errs)} other diagnostic(s)")
    return EXIT_ANALYSIS if errs else EXIT_OK


def _cmd_tac(args) -> int:
    arch = load(args.file)
    tac = architecture_tac(arch)
    if args.json:
        sys.stdout.write(report.tac_json(arch, tac))
    elif args.csv:
        sys.stdout.write(report.tac_csv(tac))
    else:
        sys.stdout.write(report.tac_text(arch, tac))
    return EXIT_OK


def _cmd_msasm(args) -> int:
    arch = load(args.file)
    if args.profile_file:
        try:
            raw = json.loads(Path(args.profile_file).read_text(encoding="utf-8"), parse_float=Decimal)
        except OSError as exc:
            raise DocumentIOError(f"cannot read {args.profile_file}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise DocumentParseError(f"{args.profile_file}: invalid JSON: {exc}") from exc
        profile = parse_profile(raw, args.profile_file)
    elif args.profile:
        profile = builtin_profile(args.profile)
    else:
        profile = arch.weight_profile or builtin_profile("table6-default")
    table = report.msasm_table(arch, profile)
    sys.stdout.write(report.msasm_text(arch, table, profile.name))
    return EXIT_OK


def _cmd_concept(args) -> int:
    arch = load(args.file)
    ci = arch.concept
    if ci is None:
        print(f"{args.file}: no concept section", file=sys.stderr)
        return EXIT_ANALYSIS
    name = args.discipline or ("custom" if ci.emphasis is not None else "operational_excellence")
    profile = discipline(name, list(ci.emphasis or ()) if name == "custom" else None)
    mode = Mode.PUGH if args.mode == "pugh" else Mode.TRIADIC_MEAN
    rankings = evaluate_concepts(ci, profile, mode)
    print(f"discipline: {profile.name} (criteria {', '.join(profile.criteria())}); mode: {mode.value}")
    if ci.scale is Scale.FIVE_POINT and mode is Mode.TRIADIC_MEAN:
        print("note: 1-5 scale aggregated by unweighted mean (non-normative)")
    for fr in rankings:
        head = f"{fr.function_id} {fr.label}"
        print(head + (f" (datum {fr.datum})" if fr.datum else ""))
        for e in fr.entries:
            tie = " (tie)" if e.tied else ""
            if mode is Mode.PUGH:
                value = f"net {int(e.value):+d} (+{e.better}/={e.same}/-{e.worse})"
            else:
                value = f"mean {float(e.value):.2f}"
            print(f"  {e.rank}. {e.ts_id} {e.label}: {value}{tie}")
            for crit in profile.criteria():
                note = ci.justifications.get((fr.function_id, e.ts_id, crit))
                if note:
                    print(f"       {crit}: {note}")
    return EXIT_OK


def _cmd_mim(args) -> int:
    arch = load(args.file)
    if arch.mim is None:
        print(f"{args.file}: no mim section", file=sys.stderr)
        return EXIT_ANALYSIS
    print("TS totals:")
    for s in mim_summary(arch.mim):
        flag = " candidate" if s.candidate else ""
        print(f"  {s.ts_id}: {s.total}{flag}" + (f" [{', '.join(s.strong_drivers)}]" if s.strong_drivers else ""))
    print("hints (advisory):")
    hints = grouping_hints(arch.mim)
    for h in hints:
        print(f"  {h}")
    if not hints:
        print("  none")
    return EXIT_OK


def _cmd_im(args) -> int:
    arch = load(args.file)
    im = build_im(arch, [InterfaceType(t) for t in args.exclude_type])
    if args.csv:
        sys.stdout.write(im_csv(im))
        return EXIT_OK
    print("module degrees: " + ", ".join(f"{m}={im.degree(m)}" for m in im.modules))
    for cell in im.cells.values():
        codes = " + ".join(str(c) for c in cell.codes)
        print(f"  {cell.a}-{cell.b}: {cell.complexity:.2f} (max P{cell.max_priority}) {codes}")
    base = base_module(im)
    tie = f" (tie with {', '.join(base.tied_with)})" if base.tie else ""
    print(f"base module: {base.id}{tie}")
    sug = strategy_suggestion(im)
    print(f"strategy (advisory): {sug.strategy.value}: {sug.rationale}")
    if args.verbose:
        for c in sug.checks:
            print(f"  {c.strategy.value}: {'yes' if c.applies else 'no'} - {c.detail}")
    return EXIT_OK


def _cmd_adcd(args) -> int:
    arch = load(args.file)
    dot = emit_dot(build_adcd(arch, args.base))
    data = render_svg(dot) if args.format == "svg" else dot.encode()
    if args.output:
        try:
            Path(args.output).write_bytes(data)
        except OSError as exc:
            raise DocumentIOError(f"cannot write {args.output}: {exc}") from exc
    elif args.format == "svg":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        sys.stdout.write(dot)
    return EXIT_OK


def _cmd_compare(args) -> int:
    rep = report.compare(load(args.legacy, quiet=True), load(args.revised, quiet=True))
    sys.stdout.write(report.render_csv(rep) if args.format == "csv" else report.render_markdown(rep))
    return EXIT_OK


COMMANDS = {
    "validate": _cmd_validate,
    "tac": _cmd_tac,
    "msasm": _cmd_msasm,
    "concept": _cmd_concept,
    "mim": _cmd_mim,
    "im": _cmd_im,
    "adcd": _cmd_adcd,
    "compare": _cmd_compare,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (DocumentIOError, DocumentParseError) as exc:
        print(f"archdfa: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValidationFailed as exc:
        for d in errors(exc.diagnostics):
            print(f"archdfa: {d}", file=sys.stderr)
        return EXIT_ANALYSIS
    except (MsasmError, ConceptError, NoInterfaces, UnknownBase, RenderUnavailable) as exc:
        print(f"archdfa: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS


if __name__ == "__main__":
    sys.exit(main())
