import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qsim.catalog import Catalog
from qsim.engine import Engine
from qsim.registry import core_profile, default_registry

FIXTURES = Path(__file__).parent.parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / f"{name}.csv").read_text()


@pytest.fixture(scope="session")
def profile():
    """Default profile: core plus the vector extension."""
    return default_registry().build_profile()


@pytest.fixture(scope="session")
def core_prof():
    return core_profile()


@pytest.fixture()
def catalog(profile):
    cat = Catalog()
    for name in ("t1", "t2", "t3"):
        cat.load_csv(name, fixture_text(name), profile)
    return cat


@pytest.fixture()
def engine():
    eng = Engine()
    for name in ("t1", "t2", "t3"):
        eng.load_table(name, fixture_text(name))
    return eng


# One summary line per acceptance criterion, printed whether it passed or
# failed, keyed off the test_criterion_<n>_* naming in test_acceptance.py.
ACCEPTANCE_CRITERIA = {
    1: "oracle equivalence: 20 queries x 8 rule configs, floats at 1e-9 relative, under 10 s",
    2: "showcase similarity join: oracle rows, EquiJoin + SimilarityFilter shape, 100 vs 5000 distance evals",
    3: "cost model: documented spot values; optimized cost strictly below initial on the showcase query",
    4: "optimizer: empty list is identity, ping-pong stops at 10 iterations, 200 random plans keep schema and results",
    5: "registry: keyword gating, duplicate-keyword conflicts, core suite identical with extensions off or absent",
    6: "external estimator: stub round-trip for every core plan, missing backend degrades with a warning",
    7: "service: response shape, one history row per success, rule validation, dataset lifecycle, no UI required",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    verdicts: dict[int, bool] = {}
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance" not in nodeid:
                continue
            for num in ACCEPTANCE_CRITERIA:
                if f"test_criterion_{num}_" in nodeid:
                    verdicts[num] = verdicts.get(num, True) and status == "passed"
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(verdicts):
        word = "PASS" if verdicts[num] else "FAIL"
        terminalreporter.write_line(
            f"criterion {num}: {word}  {ACCEPTANCE_CRITERIA[num]}")
