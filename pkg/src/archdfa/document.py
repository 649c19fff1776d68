"""Architecture description documents (JSON, ``"schema": "archdfa/1"``).

Three failure classes are kept apart so the CLI can map them to exit codes:
:class:`DocumentIOError` (unreadable file), :class:`DocumentParseError`
(bad JSON, wrong shape, unparseable code) and :class:`ValidationFailed`
(well-formed document that breaks an architecture invariant).
"""

from __future__ import annotations

import json
import sys
from decimal import Decimal
from pathlib import Path
from typing import Any, Optional, TextIO

from .codec import MalformedCode, parse_code
from .concept import ConceptInput, Scale
from .mim import MimInput
from .model import (
    Architecture,
    ConstraintFlag,
    Diagnostic,
    Direction,
    FlagKind,
    InterfaceDef,
    ModuleDef,
    ModuleSet,
    Severity,
    Shell,
    errors,
    validate,
)
from .msasm import MsasmError, WeightProfile, builtin_profile

SCHEMA = "archdfa/1"

_KEYS = {
    "top": {"schema", "name", "modules", "interfaces", "module_sets", "weight_profile", "concept", "mim", "asserted", "notes"},
    "module": {"id", "name", "shell", "description", "flags"},
    "interface": {"id", "from", "to", "codes", "direction", "comment", "flags"},
    "module_set": {"id", "members", "interfaces", "msasm_scores", "asserted_tac", "asserted_msasm", "source_label"},
    "asserted": {"architecture_tac", "msasm_mean"},
    "concept": {"scale", "functions", "emphasis"},
    "function": {"id", "label", "datum", "solutions"},
    "solution": {"id", "label", "scores", "justifications"},
    "mim": {"ts_ids", "relevance"},
}


class DocumentError(Exception):
    pass


class DocumentIOError(DocumentError):
    pass


class DocumentParseError(DocumentError):
    pass


class ValidationFailed(DocumentError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        errs = errors(diagnostics)
        super().__init__(f"{len(errs)} validation error(s): " + "; ".join(d.message for d in errs))


class _Reader:
    def __init__(self) -> None:
        self.diagnostics: list[Diagnostic] = []

    def keys(self, obj: Any, kind: str, where: str) -> dict:
        if not isinstance(obj, dict):
            raise DocumentParseError(f"{where}: expected an object, got {type(obj).__name__}")
        for key in obj:
            if key not in _KEYS[kind]:
                self.diagnostics.append(Diagnostic(Severity.WARNING, "UNKNOWN_KEY", f"{where}: unknown key {key!r}"))
        return obj

    @staticmethod
    def req(obj: dict, key: str, where: str, typ: type | tuple = str) -> Any:
        if key not in obj:
            raise DocumentParseError(f"{where}: missing required key {key!r}")
        value = obj[key]
        if not isinstance(value, typ):
            raise DocumentParseError(f"{where}: {key!r} has the wrong type")
        return value

    @staticmethod
    def enum(cls, value: Any, where: str):
        try:
            return cls(value)
        except ValueError:
            allowed = ", ".join(m.value for m in cls)
            raise DocumentParseError(f"{where}: {value!r} is not one of {allowed}") from None

    def flags(self, raw: Any, where: str) -> tuple[ConstraintFlag, ...]:
        out = []
        for i, f in enumerate(raw or ()):
            if isinstance(f, str):
                f = {"kind": f}
            if not isinstance(f, dict) or "kind" not in f:
                raise DocumentParseError(f"{where}.flags[{i}]: expected a kind string or {{kind, note}}")
            out.append(ConstraintFlag(self.enum(FlagKind, f["kind"], where), str(f.get("note", ""))))
        return tuple(out)


def _decimal(value: Any, where: str) -> Optional[Decimal]:
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, Decimal)):
        raise DocumentParseError(f"{where}: expected a number")
    return Decimal(value)


def _codes(raw: Any, where: str):
    if not isinstance(raw, list):
        raise DocumentParseError(f"{where}: 'codes' must be a list")
    out = []
    for s in raw:
        if not isinstance(s, str):
            raise DocumentParseError(f"{where}: code {s!r} is not a string")
        try:
            out.append(parse_code(s))
        except MalformedCode as exc:
            raise DocumentParseError(f"{where}: {exc}") from exc
    return tuple(out)


def parse_profile(raw: Any, where: str) -> WeightProfile:
    try:
        if isinstance(raw, str):
            return builtin_profile(raw)
        if isinstance(raw, dict):
            return WeightProfile(str(raw.get("name", "custom")), dict(raw.get("weights", {})), bool(raw.get("reduced", False)))
    except MsasmError as exc:
        raise DocumentParseError(f"{where}: {exc}") from exc
    raise DocumentParseError(f"{where}: expected a profile name or {{name, weights}}")


def _concept(r: _Reader, raw: Any) -> ConceptInput:
    raw = r.keys(raw, "concept", "concept")
    scale = r.enum(Scale, raw.get("scale", "triadic"), "concept.scale")
    functions, solutions, scores, datums, notes = [], {}, {}, {}, {}
    for i, f in enumerate(r.req(raw, "functions", "concept", list)):
        where = f"concept.functions[{i}]"
        f = r.keys(f, "function", where)
        fid = r.req(f, "id", where)
        functions.append((fid, str(f.get("label", fid))))
        if "datum" in f:
            datums[fid] = f["datum"]
        sols = []
        for j, ts in enumerate(r.req(f, "solutions", where, list)):
            w = f"{where}.solutions[{j}]"
            ts = r.keys(ts, "solution", w)
            tid = r.req(ts, "id", w)
            sols.append((tid, str(ts.get("label", tid))))
            for crit, value in (ts.get("scores") or {}).items():
                scores[(fid, tid, crit)] = value
            for crit, text in (ts.get("justifications") or {}).items():
                notes[(fid, tid, crit)] = str(text)
        solutions[fid] = tuple(sols)
    emphasis = raw.get("emphasis")
    return ConceptInput(
        tuple(functions), solutions, scores, scale, datums, notes, tuple(emphasis) if emphasis is not None else None
    )


def _mim(r: _Reader, raw: Any) -> MimInput:
    raw = r.keys(raw, "mim", "mim")
    ts_ids = tuple(r.req(raw, "ts_ids", "mim", list))
    relevance = r.req(raw, "relevance", "mim", dict)
    for ts, row in relevance.items():
        if not isinstance(row, dict):
            raise DocumentParseError(f"mim.relevance.{ts}: expected an object of driver -> value")
    return MimInput(ts_ids, {ts: dict(row) for ts, row in relevance.items()})


def parse_document(data: Any) -> tuple[Architecture, list[Diagnostic]]:
    """Build an Architecture from decoded JSON. Returns ingestion warnings
    (unknown keys) alongside; invariant checks are left to ``validate``."""
    r = _Reader()
    doc = r.keys(data, "top", "document")
    schema = r.req(doc, "schema", "document")
    if schema != SCHEMA:
        raise DocumentParseError(f"unsupported schema {schema!r}, expected {SCHEMA!r}")
    name = r.req(doc, "name", "document")

    modules = []
    for i, m in enumerate(r.req(doc, "modules", "document", list)):
        where = f"modules[{i}]"
        m = r.keys(m, "module", where)
        shell = r.enum(Shell, m["shell"], where) if m.get("shell") is not None else None
        modules.append(
            ModuleDef(r.req(m, "id", where), r.req(m, "name", where), shell, str(m.get("description", "")), r.flags(m.get("flags"), where))
        )

    interfaces = []
    for i, itf in enumerate(r.req(doc, "interfaces", "document", list)):
        where = f"interfaces[{i}]"
        itf = r.keys(itf, "interface", where)
        interfaces.append(
            InterfaceDef(
                from_module=r.req(itf, "from", where),
                to_module=r.req(itf, "to", where),
                codes=_codes(r.req(itf, "codes", where, list), where),
                direction=r.enum(Direction, itf.get("direction", "unspecified"), where),
                comment=str(itf.get("comment", "")),
                id=itf.get("id"),
                flags=r.flags(itf.get("flags"), where),
            )
        )

    sets = []
    for i, s in enumerate(r.req(doc, "module_sets", "document", list)):
        where = f"module_sets[{i}]"
        s = r.keys(s, "module_set", where)
        refs = s.get("interfaces")
        scores = s.get("msasm_scores")
        if scores is not None and not isinstance(scores, dict):
            raise DocumentParseError(f"{where}: msasm_scores must be an object")
        sets.append(
            ModuleSet(
                id=r.req(s, "id", where),
                members=tuple(r.req(s, "members", where, list)),
                interface_refs=tuple(refs) if refs is not None else None,
                msasm_scores=dict(scores) if scores is not None else None,
                asserted_tac=_decimal(s.get("asserted_tac"), f"{where}.asserted_tac"),
                asserted_msasm=_decimal(s.get("asserted_msasm"), f"{where}.asserted_msasm"),
                source_label=s.get("source_label"),
            )
        )

    asserted = r.keys(doc.get("asserted", {}), "asserted", "asserted")
    arch = Architecture(
        name=name,
        modules=tuple(modules),
        interfaces=tuple(interfaces),
        module_sets=tuple(sets),
        concept=_concept(r, doc["concept"]) if doc.get("concept") is not None else None,
        mim=_mim(r, doc["mim"]) if doc.get("mim") is not None else None,
        weight_profile=parse_profile(doc["weight_profile"], "weight_profile") if doc.get("weight_profile") is not None else None,
        asserted_tac=_decimal(asserted.get("architecture_tac"), "asserted.architecture_tac"),
        asserted_msasm_mean=_decimal(asserted.get("msasm_mean"), "asserted.msasm_mean"),
        notes=tuple(str(n) for n in doc.get("notes", ())),
    )
    return arch, r.diagnostics


def read_document(path: str | Path) -> tuple[Architecture, list[Diagnostic]]:
    """Parse a file and run ``validate``; diagnostics are returned, not raised."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DocumentIOError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise DocumentParseError(f"{path}: invalid JSON: {exc}") from exc
    try:
        arch, diags = parse_document(data)
    except DocumentParseError as exc:
        raise DocumentParseError(f"{path}: {exc}") from exc
    except (ValueError, TypeError) as exc:
        raise DocumentParseError(f"{path}: {exc}") from exc
    return arch, diags + validate(arch)


def load(path: str | Path, report: Optional[TextIO] = None, quiet: bool = False) -> Architecture:
    """Read, parse and validate; diagnostics go to ``report`` (stderr by default)."""
    arch, diags = read_document(path)
    if not quiet:
        report = report or sys.stderr
        for d in diags:
            print(f"{path}: {d}", file=report)
    if errors(diags):
        raise ValidationFailed(diags)
    return arch
