from functools import lru_cache

import numpy as np
import pytest

from engel_lab.constructions import make_group
from engel_lab.verify import GroupContext

SMALL = ("C1", "C2", "C6", "C2xC2", "D8", "D16", "Q8", "S3", "S4", "A4", "wreath(C2,C2)", "fnil(p=3,k=2)")


@lru_cache(maxsize=None)
def group(spec: str):
    return make_group(spec)


@lru_cache(maxsize=None)
def context(spec: str) -> GroupContext:
    return GroupContext(spec)


def brute_left_length(G, a, bound=None):
    """Least n with [g, n a] = 1 for all g, by direct iteration (None if none up to bound)."""
    bound = bound or G.order + 1
    cur = np.arange(G.order)
    for n in range(1, bound + 1):
        cur = G.comm_table[cur, a]
        if np.all(cur == 0):
            return n
    return None


def brute_right_length(G, a, bound=None):
    bound = bound or G.order + 1
    g = np.arange(G.order)
    cur = np.full(G.order, a)
    for n in range(1, bound + 1):
        cur = G.comm_table[cur, g]
        if np.all(cur == 0):
            return n
    return None


@pytest.fixture(params=SMALL)
def small_group(request):
    return group(request.param)


ACCEPTANCE_LINES: dict[int, str] = {}


def record_acceptance(number: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    prev = ACCEPTANCE_LINES.get(number)
    if prev is not None and prev.startswith("FAIL"):
        return  # a failing part of a criterion is never overwritten
    ACCEPTANCE_LINES[number] = f"{status}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"criterion {n:2d}: {ACCEPTANCE_LINES[n]}")
