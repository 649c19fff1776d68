from pathlib import Path

import pytest

from archdfa.document import load

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"
LEGACY = FIXTURES / "leafblower_legacy.json"
REVISED = FIXTURES / "leafblower_revised.json"
DEMO = FIXTURES / "scored_demo.json"


@pytest.fixture(scope="session")
def legacy():
    return load(LEGACY, quiet=True)


@pytest.fixture(scope="session")
def revised():
    return load(REVISED, quiet=True)


@pytest.fixture(scope="session")
def demo():
    return load(DEMO, quiet=True)


# acceptance results: criterion -> list of (check, ok, detail)
ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


def record(criterion: int, check: str, ok: bool, detail: str) -> None:
    ACCEPTANCE.setdefault(criterion, []).append((check, ok, detail))
    print(f"criterion {criterion} [{check}]: {'PASS' if ok else 'FAIL'} ({detail})")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[n]
        ok = all(c[1] for c in checks)
        detail = "; ".join(f"{name}: {d}" + ("" if good else " [FAIL]") for name, good, d in checks)
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
