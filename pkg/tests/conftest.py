import pytest
from hypothesis import HealthCheck, settings

from ringel_hall.quiver import preset_quiver
from ringel_hall.reps import TableStore

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_STORES: dict = {}


def get_store(name: str, q: int) -> TableStore:
    """Session-wide store per (preset, q); tables are immutable once built."""
    key = (name, q)
    if key not in _STORES:
        _STORES[key] = TableStore(preset_quiver(name), q)
    return _STORES[key]


@pytest.fixture
def store():
    return get_store


@pytest.fixture
def a2_2():
    return get_store("a2", 2)


@pytest.fixture
def a2_3():
    return get_store("a2", 3)


# acceptance summary -----------------------------------------------------------

ACCEPTANCE: dict = {}


def record(criterion: str, passed: bool, detail: str) -> None:
    """Record a criterion outcome; a criterion with several parts fails if any part fails."""
    prev = ACCEPTANCE.get(criterion)
    if prev is not None:
        passed = passed and prev[0]
        detail = f"{prev[1]}; {detail}"
    ACCEPTANCE[criterion] = (passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0])):
        passed, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"criterion {name}: {'PASS' if passed else 'FAIL'}  {detail}")
