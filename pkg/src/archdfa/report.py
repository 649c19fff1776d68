"""Text, JSON, CSV and Markdown renderings of the analyses.

Every renderer is a pure function of its inputs so outputs can be pinned
by golden files.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from decimal import Decimal
from typing import Optional

from .complexity import TacBreakdown, architecture_tac, reduction_percent
from .model import Architecture, Diagnostic, validate
from .msasm import TABLE6_DEFAULT, Verdict, WeightProfile, assess_set, classify, mean_score


def fmt(value: Optional[Decimal]) -> str:
    return "-" if value is None else f"{value:.2f}"


def _signed(value: Decimal) -> str:
    return f"{value:+.2f}"


# --- TAC -----------------------------------------------------------------


def tac_text(arch: Architecture, tac: TacBreakdown) -> str:
    lines = [f"Architecture: {arch.name}"]
    for set_id, computed in tac.per_set.items():
        asserted = tac.asserted_per_set.get(set_id)
        line = f"  set {set_id}: computed {fmt(computed)}"
        if asserted is not None:
            line += f", asserted {fmt(asserted)}"
            if abs(asserted - computed) > Decimal("0.005"):
                line += "  MISMATCH"
        lines.append(line)
    lines.append(f"architecture TAC computed: {fmt(tac.architecture_tac)}")
    if tac.asserted_total is not None:
        lines.append(f"architecture TAC asserted: {fmt(tac.asserted_total)}")
    lines.append(f"max task C_t: {fmt(tac.max_task)}")
    if tac.asserted_mismatches:
        lines.append(f"mismatch ledger ({len(tac.asserted_mismatches)}):")
        for m in tac.asserted_mismatches:
            where = f"set {m.set_id}" if m.set_id else "architecture"
            lines.append(f"  {where}: asserted {fmt(m.asserted)}, computed {fmt(m.computed)} ({_signed(m.difference)})")
    else:
        lines.append("mismatch ledger: empty")
    return "\n".join(lines) + "\n"


def tac_json(arch: Architecture, tac: TacBreakdown) -> str:
    doc = {
        "name": arch.name,
        "per_task": [
            {"set": t.set_id, "interface": t.interface, "code": t.code, "c_t": fmt(t.value)} for t in tac.per_task
        ],
        "per_set": {k: fmt(v) for k, v in tac.per_set.items()},
        "asserted_per_set": {k: fmt(v) for k, v in tac.asserted_per_set.items()},
        "architecture_tac": fmt(tac.architecture_tac),
        "asserted_total": None if tac.asserted_total is None else fmt(tac.asserted_total),
        "mismatches": [
            {"set": m.set_id, "asserted": fmt(m.asserted), "computed": fmt(m.computed)} for m in tac.asserted_mismatches
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def tac_csv(tac: TacBreakdown) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["set", "interface", "code", "c_t"])
    for t in tac.per_task:
        w.writerow([t.set_id, t.interface, t.code, fmt(t.value)])
    w.writerow([])
    w.writerow(["set", "computed", "asserted"])
    for set_id, value in tac.per_set.items():
        w.writerow([set_id, fmt(value), fmt(tac.asserted_per_set.get(set_id))])
    w.writerow(["architecture", fmt(tac.architecture_tac), fmt(tac.asserted_total)])
    return buf.getvalue()


# --- MSASM rows ----------------------------------------------------------


@dataclass(frozen=True)
class MsasmRow:
    set_id: str
    score: Optional[Decimal]
    basis: str  # "computed", "asserted" or "missing"
    verdict: Optional[Verdict]
    source_label: Optional[str]

    @property
    def label_differs(self) -> bool:
        return (
            self.verdict is not None
            and self.source_label is not None
            and self.source_label.strip().lower() != self.verdict.value
        )


@dataclass(frozen=True)
class MsasmTable:
    rows: tuple[MsasmRow, ...]
    mean: Optional[Decimal]
    mean_basis: str


def msasm_table(arch: Architecture, profile: Optional[WeightProfile] = None) -> MsasmTable:
    """Per-set scores: computed from criterion scores when present, else the
    asserted value. The mean falls back to the asserted architecture mean
    when any set lacks a score."""
    profile = profile or arch.weight_profile or TABLE6_DEFAULT
    rows = []
    for s in arch.module_sets:
        if s.msasm_scores is not None:
            score, basis = assess_set(s.id, s.msasm_scores, profile).weighted_score, "computed"
        elif s.asserted_msasm is not None:
            score, basis = s.asserted_msasm, "asserted"
        else:
            score, basis = None, "missing"
        rows.append(MsasmRow(s.id, score, basis, classify(score) if score is not None else None, s.source_label))
    scored = [r.score for r in rows if r.score is not None]
    if rows and len(scored) == len(rows):
        bases = {r.basis for r in rows}
        mean, basis = mean_score(scored), bases.pop() if len(bases) == 1 else "mixed"
    elif arch.asserted_msasm_mean is not None:
        mean, basis = arch.asserted_msasm_mean, "asserted"
    else:
        mean, basis = None, "missing"
    return MsasmTable(tuple(rows), mean, basis)


def msasm_text(arch: Architecture, table: MsasmTable, profile_name: str) -> str:
    lines = [f"Architecture: {arch.name}", f"profile: {profile_name}"]
    for r in table.rows:
        verdict = r.verdict.value if r.verdict else "-"
        note = f" (source label: {r.source_label})" if r.label_differs else ""
        lines.append(f"  {r.set_id}: {fmt(r.score)} {verdict} [{r.basis}]{note}")
    lines.append(f"mean: {fmt(table.mean)} [{table.mean_basis}]")
    return "\n".join(lines) + "\n"


# --- comparison ----------------------------------------------------------


@dataclass(frozen=True)
class ComparisonReport:
    legacy: Architecture
    revised: Architecture
    legacy_tac: TacBreakdown
    revised_tac: TacBreakdown
    legacy_msasm: MsasmTable
    revised_msasm: MsasmTable
    reduction_asserted: Optional[int]
    reduction_computed: Optional[int]
    diagnostics: tuple[tuple[str, Diagnostic], ...]


def compare(legacy: Architecture, revised: Architecture, profile: Optional[WeightProfile] = None) -> ComparisonReport:
    lt, rt = architecture_tac(legacy), architecture_tac(revised)
    red_a = None
    if lt.asserted_total and rt.asserted_total is not None:
        red_a = reduction_percent(lt.asserted_total, rt.asserted_total)
    red_c = reduction_percent(lt.architecture_tac, rt.architecture_tac) if lt.architecture_tac else None
    diags = tuple(("legacy", d) for d in validate(legacy)) + tuple(("revised", d) for d in validate(revised))
    return ComparisonReport(
        legacy, revised, lt, rt,
        msasm_table(legacy, profile), msasm_table(revised, profile),
        red_a, red_c, diags,
    )


def _pct(before: Decimal, after: Decimal) -> str:
    if before == 0:
        return "-"
    return f"{-reduction_percent(before, after):+d}%"


def _summary_rows(rep: ComparisonReport) -> list[tuple[str, str, str, str, str]]:
    L, R = rep.legacy, rep.revised
    rows = []
    for label, a, b in (
        ("Modules", len(L.modules), len(R.modules)),
        ("Interfaces", len(L.interfaces), len(R.interfaces)),
        ("Interface codes", sum(len(i.codes) for i in L.interfaces), sum(len(i.codes) for i in R.interfaces)),
        ("Module sets", len(L.module_sets), len(R.module_sets)),
    ):
        rows.append((label, str(a), str(b), f"{b - a:+d}", _pct(Decimal(a), Decimal(b))))
    la, ra = rep.legacy_tac.asserted_total, rep.revised_tac.asserted_total
    if la is not None and ra is not None:
        rows.append(("TAC (asserted)", fmt(la), fmt(ra), _signed(ra - la), _pct(la, ra)))
    lc, rc = rep.legacy_tac.architecture_tac, rep.revised_tac.architecture_tac
    rows.append(("TAC (computed from codes)", fmt(lc), fmt(rc), _signed(rc - lc), _pct(lc, rc)))
    lm, rm = rep.legacy_msasm.mean, rep.revised_msasm.mean
    if lm is not None and rm is not None:
        rows.append(("MSASM mean", fmt(lm), fmt(rm), _signed(rm - lm), _pct(lm, rm)))
    return rows


def _mismatch_lines(rep: ComparisonReport) -> list[str]:
    out = []
    for tag, tac in (("legacy", rep.legacy_tac), ("revised", rep.revised_tac)):
        for m in tac.asserted_mismatches:
            where = f"set {m.set_id}" if m.set_id else "architecture"
            out.append(f"[{tag}] TAC {where}: asserted {fmt(m.asserted)}, computed {fmt(m.computed)} ({_signed(m.difference)})")
    for tag, table in (("legacy", rep.legacy_msasm), ("revised", rep.revised_msasm)):
        for r in table.rows:
            if r.label_differs:
                out.append(
                    f"[{tag}] MSASM {r.set_id}: {fmt(r.score)} classifies {r.verdict.value}, source label {r.source_label}"
                )
    return out


def render_markdown(rep: ComparisonReport) -> str:
    L, R = rep.legacy, rep.revised
    out = [f"# Architecture comparison: {L.name} vs {R.name}", ""]
    out += ["## Summary", "", f"| Metric | {L.name} | {R.name} | Delta | Change |", "|---|---:|---:|---:|---:|"]
    out += [f"| {a} | {b} | {c} | {d} | {e} |" for a, b, c, d, e in _summary_rows(rep)]
    out.append("")
    if rep.reduction_asserted is not None:
        out.append(f"TAC reduction (asserted basis): {rep.reduction_asserted}%")
    if rep.reduction_computed is not None:
        out.append(f"TAC reduction (computed basis): {rep.reduction_computed}%")
    out.append("")

    out += ["## Total assembly complexity per module set", ""]
    for title, arch, tac in ((L.name, L, rep.legacy_tac), (R.name, R, rep.revised_tac)):
        out += [f"### {title}", "", "| Set | Codes | Computed | Asserted |", "|---|---|---:|---:|"]
        for s in arch.module_sets:
            codes = "<br>".join(c for i in arch.set_interfaces(s) for c in i.code_strings)
            out.append(f"| {s.id} | {codes} | {fmt(tac.per_set[s.id])} | {fmt(tac.asserted_per_set.get(s.id))} |")
        out.append(f"| **Total** | | **{fmt(tac.architecture_tac)}** | **{fmt(tac.asserted_total)}** |")
        out.append("")

    out += ["## MSASM", ""]
    for title, table in ((L.name, rep.legacy_msasm), (R.name, rep.revised_msasm)):
        out += [f"### {title}", "", "| Set | Score | Basis | Verdict | Source label |", "|---|---:|---|---|---|"]
        for r in table.rows:
            verdict = r.verdict.value if r.verdict else "-"
            label = r.source_label or ""
            if r.label_differs:
                label += " (differs)"
            out.append(f"| {r.set_id} | {fmt(r.score)} | {r.basis} | {verdict} | {label} |")
        out.append(f"| **Mean** | **{fmt(table.mean)}** | {table.mean_basis} | | |")
        out.append("")

    out += ["## Mismatch ledger", ""]
    out += [f"- {line}" for line in _mismatch_lines(rep)] or ["- none"]
    out.append("")
    out += ["## Diagnostics", ""]
    out += [f"- [{tag}] {d}" for tag, d in rep.diagnostics] or ["- none"]
    return "\n".join(out) + "\n"


def render_csv(rep: ComparisonReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["section", "item", "legacy", "revised", "delta", "change"])
    for row in _summary_rows(rep):
        w.writerow(["summary", *row])
    if rep.reduction_asserted is not None:
        w.writerow(["summary", "TAC reduction (asserted basis)", "", "", "", f"{rep.reduction_asserted}%"])
    if rep.reduction_computed is not None:
        w.writerow(["summary", "TAC reduction (computed basis)", "", "", "", f"{rep.reduction_computed}%"])
    w.writerow([])
    w.writerow(["architecture", "set", "tac_computed", "tac_asserted", "msasm", "msasm_basis", "verdict", "source_label"])
    for tag, arch, tac, table in (
        ("legacy", rep.legacy, rep.legacy_tac, rep.legacy_msasm),
        ("revised", rep.revised, rep.revised_tac, rep.revised_msasm),
    ):
        rows = {r.set_id: r for r in table.rows}
        for s in arch.module_sets:
            r = rows[s.id]
            w.writerow([
                tag, s.id, fmt(tac.per_set[s.id]), fmt(tac.asserted_per_set.get(s.id)),
                fmt(r.score), r.basis, r.verdict.value if r.verdict else "", r.source_label or "",
            ])
    w.writerow([])
    w.writerow(["mismatch"])
    for line in _mismatch_lines(rep):
        w.writerow([line])
    return buf.getvalue()

