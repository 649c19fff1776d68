"""Regenerate tests/golden from the current code. Review the diff before committing."""

from pathlib import Path

from archdfa.document import load
from archdfa.adcd import build_adcd, emit_dot
from archdfa.report import compare, render_csv, render_markdown

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"


def main() -> None:
    legacy = load(ROOT / "fixtures" / "leafblower_legacy.json", quiet=True)
    revised = load(ROOT / "fixtures" / "leafblower_revised.json", quiet=True)
    rep = compare(legacy, revised)
    outputs = {
        "leafblower_legacy.dot": emit_dot(build_adcd(legacy)),
        "leafblower_revised.dot": emit_dot(build_adcd(revised)),
        "compare.md": render_markdown(rep),
        "compare.csv": render_csv(rep),
    }
    for name, text in outputs.items():
        path = GOLDEN / name
        changed = not path.exists() or path.read_text() != text
        path.write_text(text)
        print(f"{name}: {'updated' if changed else 'unchanged'}")


if __name__ == "__main__":
    main()
