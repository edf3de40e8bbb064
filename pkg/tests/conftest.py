import numpy as np
import pytest

from chaoquant import ChaoticKey
from chaoquant import _backend

REFERENCE_KEY = ChaoticKey(3.9, 3.7, 3.5, 0.1, 0.2, 0.3)

BACKENDS = [_backend.python_kernels]
if _backend.compiled_kernels is not None:
    BACKENDS.append(_backend.compiled_kernels)


@pytest.fixture
def key():
    return REFERENCE_KEY


@pytest.fixture(params=BACKENDS, ids=lambda k: k.BACKEND)
def kernels(request):
    return request.param


def random_valid_keys(n, seed):
    """Keys drawn uniformly from the whole admissible region."""
    rng = np.random.default_rng(seed)
    return [
        ChaoticKey(*rng.uniform(0.5, 4.0, 3), *rng.uniform(0.0, 1.0, 3))
        for _ in range(n)
    ]


@pytest.fixture
def speech_path():
    from pathlib import Path

    return Path(__file__).parent / "data" / "speech.wav"


# acceptance summary: one line per criterion, printed after the run

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = dict(report.user_properties).get("criterion")
    if marker is None:
        return
    number, title = marker
    detail = dict(report.user_properties).get("detail", "")
    status = "PASS" if report.passed else "FAIL"
    prev = _ACCEPTANCE.get(number)
    if prev is None or status == "FAIL":
        _ACCEPTANCE[number] = (status, title, detail)


def pytest_runtest_setup(item):
    m = item.get_closest_marker("criterion")
    if m is not None:
        item.user_properties.append(("criterion", tuple(m.args)))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, title, detail = _ACCEPTANCE[number]
        line = f"[{status}] {number:>2}. {title}"
        if detail:
            line += f" | {detail}"
        terminalreporter.write_line(line)
    report = _ACCEPTANCE_TEXT.get("report")
    if report:
        terminalreporter.section("measured gains vs claimed (not asserted)")
        for line in report.splitlines():
            terminalreporter.write_line(line)


_ACCEPTANCE_TEXT = {}
