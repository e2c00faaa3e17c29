import json
import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    results = item.config._criteria.setdefault((number, title), [])
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        results.append(report.outcome)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    criteria = getattr(config, "_criteria", {})
    if not criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), outcomes in sorted(criteria.items()):
        if any(o == "failed" for o in outcomes):
            status = "FAIL"
        elif outcomes and all(o == "skipped" for o in outcomes):
            status = "SKIPPED"
        elif any(o == "skipped" for o in outcomes):
            status = "PASS (partly skipped)"
        else:
            status = "PASS"
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")


@pytest.fixture(scope="session")
def synthetic_path():
    return FIXTURES / "synthetic.json"


@pytest.fixture(scope="session")
def synthetic(synthetic_path):
    from mdke.dataset import load_dataset

    return load_dataset(synthetic_path)


@pytest.fixture(scope="session")
def d31_gold():
    from mdke.dataset import TopicGold

    data = json.loads((FIXTURES / "d31_gold.json").read_text())
    return TopicGold.from_variants(data["topic_id"], [e["variants"] for e in data["gold"]])
