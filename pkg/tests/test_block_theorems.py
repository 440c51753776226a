"""Exhaustive scans for the block-level bounds that have no CheckId of their own."""

from __future__ import annotations

from szeged_wiener.enumeration import GraphFilter, builtin_enumerate
from szeged_wiener.graph_core import Graph, blocks, has_dominated_pair, is_complete, is_two_connected
from szeged_wiener.invariants import contributions, eta


def _no_dominated_pair(g: Graph) -> bool:
    return not any(has_dominated_pair(g, u) for u in range(g.n))


def _is_c5(g: Graph) -> bool:
    return g.n == 5 and g.m == 5 and is_two_connected(g)


def test_contribution_floor_without_dominated_pairs():
    # 2-connected, non-complete, not C5, no N[u] inside N[v]: every c(u) >= 4
    seen = 0
    for n in range(3, 9):
        for g in builtin_enumerate(n, GraphFilter(two_connected=True, non_complete=True)):
            if _is_c5(g) or not _no_dominated_pair(g):
                continue
            assert min(contributions(g)) >= 4, str(g)
            assert eta(g) >= 2 * n
            seen += 1
    assert seen > 0


def test_two_heavy_blocks_give_eta_at_least_4n():
    # at least two blocks, none C5 or complete, no dominated pair: eta >= 4n
    seen = 0
    for n in range(3, 9):
        for g in builtin_enumerate(n, GraphFilter(connected=True)):
            parts = [g.induced(b) for b in blocks(g).blocks]
            if len(parts) < 2 or any(is_complete(b) or _is_c5(b) for b in parts):
                continue
            if not _no_dominated_pair(g):
                continue
            assert eta(g) >= 4 * n, str(g)
            seen += 1
    assert seen > 0
