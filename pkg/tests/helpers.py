"""Small builders shared by the tests."""

from archdfa.codec import parse_code
from archdfa.model import Architecture, InterfaceDef, ModuleDef, ModuleSet


def arch(pairs, modules=None, sets=(), **kw):
    """Architecture from ``[(a, b, [code, ...]), ...]``; modules inferred when omitted."""
    ids = modules or sorted({m for a, b, _ in pairs for m in (a, b)})
    return Architecture(
        name=kw.pop("name", "t"),
        modules=tuple(ModuleDef(m, m) if isinstance(m, str) else m for m in ids),
        interfaces=tuple(InterfaceDef(a, b, tuple(parse_code(c) for c in codes)) for a, b, codes in pairs),
        module_sets=tuple(sets),
        **kw,
    )


def whole_set(a: Architecture, set_id="ALL"):
    return ModuleSet(set_id, tuple(m.id for m in a.modules))
