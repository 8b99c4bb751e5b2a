from functools import lru_cache

import pytest

from preproj.algebra import build_algebra
from preproj.frobenius import build_trace, dual_basis
from preproj.quiver import build_quiver
from preproj.resolution import build_resolution

CRITERIA: dict[int, tuple[bool, str]] = {}


@lru_cache(maxsize=None)
def built(type_tag: str, rank: int, mu: tuple | None = None):
    """(algebra, trace, dual basis, resolution), shared across test modules."""
    alg = build_algebra(build_quiver(type_tag, rank), mu)
    tr = build_trace(alg, seed=0)
    db = dual_basis(alg, tr)
    return alg, tr, db, build_resolution(alg, db)


@pytest.fixture(scope="session")
def a2():
    return built("A", 2)


@pytest.fixture(scope="session")
def a3():
    return built("A", 3)


def record(n: int, ok: bool, detail: str) -> None:
    CRITERIA[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
