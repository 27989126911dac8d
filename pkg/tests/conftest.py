"""Shared fixtures: the alternating-group example, the plane-cubics example
and the acceptance log printed at the end of the run."""

from __future__ import annotations

import contextlib
import os
import sys
import time

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))
import data  # noqa: E402

# fixed seed for every property suite (derandomize=True derives examples
# from the test body, so runs are reproducible)
settings.register_profile(
    "kbasis", derandomize=True, deadline=None, database=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("kbasis")


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def alt():
    return data.alternating()


@pytest.fixture(scope="session")
def cubics():
    return data.plane_cubics()


@pytest.fixture
def criterion(request):
    """``with criterion(n, text, limit=seconds):`` records one PASS/FAIL line."""
    log = request.config.stash.setdefault(_ACCEPTANCE, [])

    @contextlib.contextmanager
    def record(number, text, limit=None):
        start = time.perf_counter()
        try:
            yield
            elapsed = time.perf_counter() - start
            if limit is not None:
                assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
        except BaseException as e:
            log.append((number, "FAIL", text, time.perf_counter() - start, str(e).splitlines()[:1]))
            raise
        log.append((number, "PASS", text, elapsed, []))

    return record


def pytest_terminal_summary(terminalreporter, config):
    log = config.stash.get(_ACCEPTANCE, [])
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for number, verdict, text, elapsed, why in sorted(log):
        extra = f" -- {why[0]}" if why else ""
        terminalreporter.write_line(f"criterion {number}: {verdict}  {text} ({elapsed:.2f}s){extra}")
