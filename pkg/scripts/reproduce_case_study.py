"""Run every analysis on the leaf-blower fixtures and write the outputs to a folder."""

import argparse
import contextlib
import io
from pathlib import Path

from archdfa.cli import main

ROOT = Path(__file__).resolve().parent.parent
LEGACY = ROOT / "fixtures" / "leafblower_legacy.json"
REVISED = ROOT / "fixtures" / "leafblower_revised.json"

RUNS = {
    "legacy_tac.txt": ["tac", LEGACY],
    "revised_tac.txt": ["tac", REVISED],
    "revised_msasm.txt": ["msasm", REVISED],
    "revised_concept.txt": ["concept", REVISED, "--discipline", "operational_excellence"],
    "revised_concept_pugh.txt": ["concept", REVISED, "--mode", "pugh"],
    "revised_mim.txt": ["mim", REVISED],
    "legacy_im.txt": ["im", LEGACY, "-v"],
    "revised_im.txt": ["im", REVISED, "-v"],
    "legacy_im.csv": ["im", LEGACY, "--csv"],
    "revised_im.csv": ["im", REVISED, "--csv"],
    "legacy.dot": ["adcd", LEGACY],
    "revised.dot": ["adcd", REVISED],
    "compare.md": ["compare", LEGACY, REVISED],
    "compare.csv": ["compare", LEGACY, REVISED, "--format", "csv"],
}


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main([str(a) for a in argv])
    return code, out.getvalue()


def main_(out_dir: Path) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    worst = 0
    for name, argv in RUNS.items():
        code, text = run(argv)
        (out_dir / name).write_text(text)
        print(f"{name}: exit {code}")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=ROOT / "out")
    raise SystemExit(main_(ap.parse_args().out))
