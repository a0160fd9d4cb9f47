import pytest
from hypothesis import strategies as st

from forbconf.matrix import RMatrix

ACCEPTANCE_LINES: list[str] = []


@st.composite
def rmatrices(draw, max_m=5, max_n=6, r=None, min_m=0, min_n=0):
    r = draw(st.integers(2, 4)) if r is None else r
    m = draw(st.integers(min_m, max_m))
    n = draw(st.integers(min_n, max_n))
    rows = draw(st.lists(st.lists(st.integers(0, r - 1), min_size=n, max_size=n), min_size=m, max_size=m))
    return RMatrix(m, n, r, tuple(tuple(row) for row in rows))


@pytest.fixture
def acceptance_log():
    def record(name: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" -- {detail}" if detail else ""))
        assert ok, f"{name}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
