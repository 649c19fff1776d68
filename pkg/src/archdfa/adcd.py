"""Assembly Directions and Connections Draft (ADCD) as a directed graph.

Edges point from the inserted module toward the module receiving it. The
receiver is whichever end sits closer to the base (graph distance), then the
inner-shell end, then the better-connected end, then the smaller id.
DOT is the normative output; SVG needs the Graphviz ``dot`` binary.
"""

from __future__ import annotations

import shutil
import subprocess
from collections import deque
from dataclasses import dataclass
from decimal import Decimal
from typing import Optional

from .matrix import build_im, base_module
from .model import Architecture, ConstraintFlag, Direction, InterfaceType, Shell

TYPE_COLORS = {
    InterfaceType.M1: "black",
    InterfaceType.M2: "black",
    InterfaceType.E: "blue",
    InterfaceType.C: "green",
    InterfaceType.B: "purple",
    InterfaceType.O: "purple",
}


class UnknownBase(ValueError):
    pass


class RenderUnavailable(RuntimeError):
    pass


@dataclass(frozen=True)
class AdcdNode:
    id: str
    name: str
    shell: Shell
    is_base: bool
    flags: tuple[ConstraintFlag, ...] = ()


@dataclass(frozen=True)
class AdcdEdge:
    source: str  # inserted module
    target: str  # receiving module
    codes: tuple[str, ...]
    types: tuple[InterfaceType, ...]
    direction: Direction
    max_priority: int
    complexity: Decimal
    flags: tuple[ConstraintFlag, ...] = ()
    interface: str = ""


@dataclass(frozen=True)
class AdcdGraph:
    name: str
    base: Optional[str]
    nodes: tuple[AdcdNode, ...]
    edges: tuple[AdcdEdge, ...]
    warnings: tuple[str, ...] = ()


def _distances(arch: Architecture, base: str) -> dict[str, int]:
    adj: dict[str, set[str]] = {m.id: set() for m in arch.modules}
    for itf in arch.interfaces:
        adj.setdefault(itf.from_module, set()).add(itf.to_module)
        adj.setdefault(itf.to_module, set()).add(itf.from_module)
    dist = {base: 0}
    queue = deque([base])
    while queue:
        cur = queue.popleft()
        for nxt in sorted(adj[cur]):
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                queue.append(nxt)
    return dist


def build_adcd(arch: Architecture, base: Optional[str] = None) -> AdcdGraph:
    """Shell-layered, direction-annotated graph; base defaults to the IM base module."""
    im = build_im(arch)
    if base is None:
        base = base_module(im).id if im.cells else (arch.modules[0].id if arch.modules else None)
    if base is not None and arch.module(base) is None:
        raise UnknownBase(f"base module {base!r} is not defined")

    warnings = []
    nodes = []
    shells = {}
    for m in arch.modules:
        shell = m.shell or (Shell.INNER if m.id == base else Shell.OUTER)
        if m.id == base and shell is Shell.OUTER:
            warnings.append(f"base module {m.id} declared outer; drawn in inner shell")
            shell = Shell.INNER
        shells[m.id] = shell
        nodes.append(AdcdNode(m.id, m.name, shell, m.id == base, m.flags))

    dist = _distances(arch, base) if base is not None else {}
    far = len(arch.modules) + 1

    def receiver_key(mid: str):
        return (dist.get(mid, far), shells[mid] is Shell.OUTER, -im.degree(mid), mid)

    edges = []
    for itf in arch.interfaces:
        a, b = itf.from_module, itf.to_module
        target, source = sorted((a, b), key=receiver_key)
        cell = im.cell(a, b)
        edges.append(
            AdcdEdge(
                source=source,
                target=target,
                codes=itf.code_strings,
                types=tuple(c.itype for c in itf.codes),
                direction=itf.direction,
                max_priority=cell.max_priority,
                complexity=cell.complexity,
                flags=itf.flags,
                interface=itf.key,
            )
        )
        if shells[source] is Shell.INNER and shells[target] is Shell.OUTER:
            warnings.append(f"edge {source}->{target} inserts an inner-shell module into an outer-shell one")
    edges.sort(key=lambda e: (-e.max_priority, -e.complexity, e.source, e.target))
    return AdcdGraph(arch.name, base, tuple(nodes), tuple(edges), tuple(warnings))


def _q(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def _flag_suffix(flags: tuple[ConstraintFlag, ...]) -> str:
    return "".join(f" [{f.kind.value}{': ' + f.note if f.note else ''}]" for f in flags)


def edge_color(types: tuple[InterfaceType, ...]) -> str:
    colors = []
    for t in types:
        if TYPE_COLORS[t] not in colors:
            colors.append(TYPE_COLORS[t])
    return ":".join(colors)


def emit_dot(g: AdcdGraph) -> str:
    lines = [f"digraph {_q('ADCD: ' + g.name)} {{"]
    if not g.nodes:
        return lines[0] + "\n}\n"
    lines.append("  graph [rankdir=BT, newrank=true];")
    lines.append('  node [shape=box, fontname="Helvetica"];')
    lines.append('  edge [fontname="Helvetica", fontsize=10];')
    for w in g.warnings:
        lines.append(f"  // warning: {w}")
    for shell in (Shell.INNER, Shell.OUTER):
        members = [n for n in g.nodes if n.shell is shell]
        if not members:
            continue
        lines.append(f"  subgraph cluster_{shell.value} {{")
        lines.append(f"    label={_q(shell.value + ' shell')};")
        for n in members:
            attrs = [f"label={_q(n.id + chr(10) + n.name + _flag_suffix(n.flags))}"]
            if n.is_base:
                attrs.append("peripheries=2")
            lines.append(f"    {_q(n.id)} [{', '.join(attrs)}];")
        lines.append("  }")
    for e in g.edges:
        label = " + ".join(e.codes) + " / " + e.direction.value + _flag_suffix(e.flags)
        lines.append(f"  {_q(e.source)} -> {_q(e.target)} [label={_q(label)}, color={_q(edge_color(e.types))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_svg(dot_text: str) -> bytes:
    exe = shutil.which("dot")
    if exe is None:
        raise RenderUnavailable("SVG output needs the Graphviz 'dot' executable on PATH")
    proc = subprocess.run([exe, "-Tsvg"], input=dot_text.encode(), capture_output=True, check=False)
    if proc.returncode != 0:
        raise RenderUnavailable(proc.stderr.decode(errors="replace").strip() or "dot failed")
    return proc.stdout
