import pytest

from posdirac.constants import DEFAULT
from posdirac.fem import assemble_fem, build_grid, solve_pencil
from posdirac.momentum import assemble, preset_basis, solve


def atomic_window(constants=DEFAULT):
    return (constants.rest_energy - 0.3, constants.rest_energy)


@pytest.fixture(scope="session")
def atomic_case1():
    basis, quad = preset_basis("atomic", 0)
    system = assemble(1, 0, basis, quadrature=quad)
    return system, solve(system, window=atomic_window())


@pytest.fixture(scope="session")
def anomalous_case1():
    basis, quad = preset_basis("anomalous", 0)
    system = assemble(1, 0, basis, quadrature=quad)
    return system, solve(system)


@pytest.fixture(scope="session")
def fem_ground():
    grid = build_grid(1, "paper_default")
    pencil = assemble_fem(1, 0, grid)
    return pencil, solve_pencil(pencil, atomic_window())


@pytest.fixture(scope="session")
def fem_anomalous():
    grid = build_grid(1, "anomalous_region1")
    pencil = assemble_fem(1, 0, grid)
    nodes = grid.free_nodes
    return pencil, solve_pencil(pencil, (-1.5 / nodes[0], -0.5 / nodes[-1]))


# acceptance results, printed once at the end of the run
ACCEPTANCE = {}


def record_criterion(number: int, title: str, checks, elapsed: float, budget: float) -> bool:
    """Store and print one PASS/FAIL line; return whether every check passed."""
    checks = list(checks) + [(f"runtime {elapsed:.2f} s < {budget:g} s", elapsed < budget)]
    ok = all(passed for _, passed in checks)
    failed = [name for name, passed in checks if not passed]
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}"
    if failed:
        line += "  [failed: " + "; ".join(failed) + "]"
    ACCEPTANCE[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number])
