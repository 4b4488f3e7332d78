import pytest

from coxbound.cli import builtin_path
from coxbound.coxeter import CoxeterGroup, load_matrix

FIXTURES = ["dinf", "i2_3", "i2_4", "a3", "b3", "h3", "z2free3", "remark", "pentagon", "affine_a2", "odd_triangle", "dinf_x_dinf"]


def load(name: str) -> CoxeterGroup:
    return CoxeterGroup(load_matrix(builtin_path(name + ".cox")))


@pytest.fixture(scope="session")
def groups():
    return {name: load(name) for name in FIXTURES}


ACCEPTANCE: dict[int, tuple[bool, float, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, secs, title = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {secs:7.2f}s  {title}")
