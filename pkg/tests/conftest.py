import numpy as np
import pytest

from polargraphs import graphs as gr

ACCEPTANCE_LOG: list[str] = []


def record(criterion: int, ok: bool, detail: str) -> bool:
    line = f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LOG.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LOG:
            terminalreporter.write_line(line)


def decode_graph6(data: bytes) -> np.ndarray:
    """Standalone graph6 reader used only as a test oracle."""
    body = [b - 63 for b in data.strip()]
    if body[0] < 63:
        n, rest = body[0], body[1:]
    elif body[1] < 63:
        n = (body[1] << 12) | (body[2] << 6) | body[3]
        rest = body[4:]
    else:
        n = 0
        for b in body[2:8]:
            n = (n << 6) | b
        rest = body[8:]
    bits = []
    for b in rest:
        bits.extend((b >> (5 - k)) & 1 for k in range(6))
    adj = np.zeros((n, n), dtype=bool)
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                adj[i, j] = adj[j, i] = True
            pos += 1
    assert not any(bits[pos:]), "padding bits must be zero"
    return adj


def kneser_petersen() -> gr.Graph:
    """Petersen graph as the Kneser graph K(5, 2)."""
    from itertools import combinations

    pairs = [frozenset(c) for c in combinations(range(5), 2)]
    edges = [(i, j) for i, a in enumerate(pairs) for j, b in enumerate(pairs) if i < j and not a & b]
    return gr.Graph.from_edges(10, edges)


@pytest.fixture(scope="session")
def petersen():
    return gr.build_no_even(2, -1)


@pytest.fixture(scope="session")
def k33():
    return gr.build_no_even(2, 1)
