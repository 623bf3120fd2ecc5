import random
import time

import pytest
from hypothesis import HealthCheck, settings

from polyprg.fields import PrimeField
from polyprg.tower import extension_field

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture(scope="session")
def F7():
    return PrimeField(7)


@pytest.fixture(scope="session")
def F13():
    return PrimeField(13)


@pytest.fixture(scope="session")
def F169():
    return extension_field(13, 1)


# --- acceptance bookkeeping -------------------------------------------------------

ACCEPTANCE_LINES = []


class _Criterion:
    def __init__(self, number, title, limit_s):
        self.number, self.title, self.limit_s = number, title, limit_s
        self.detail = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed <= self.limit_s
        why = self.detail
        if exc_type is not None:
            why = f"{exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        elif elapsed > self.limit_s:
            why = f"over time limit; {self.detail}"
        line = (f"{'PASS' if ok else 'FAIL'} {self.number:>2} {self.title} "
                f"[{elapsed:.1f}s / {self.limit_s:g}s] {why}").rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)
        if exc_type is None and not ok:
            raise AssertionError(line)
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
