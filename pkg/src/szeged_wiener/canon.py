"""Canonical labelling for small graphs.

The canonical code is the lexicographically smallest upper-triangle bitstring
(graph6 column order, first bit most significant) over all vertex orders that
respect an isomorphism-invariant ordered partition. The partition starts from
degrees and is refined by neighbour counts per cell until stable.

Search is a depth-first fill of positions 0..n-1. At each position only the
candidates producing the smallest new column can lead to the minimum, and
candidates that are twins of each other (``N(v) - w == N(w) - v``) are
interchangeable by an automorphism that fixes everything already placed, so
only one per twin class is expanded.
"""

from __future__ import annotations

from .graph_core import Graph, _bits


def refined_partition(g: Graph) -> list[list[int]]:
    """Ordered equitable partition of the vertices, as a list of cells."""
    n = g.n
    adj = g.adj
    cell_of = [adj[v].bit_count() for v in range(n)]
    ncells = len(set(cell_of))
    # renumber so cell ids follow sorted degree
    ids = {d: i for i, d in enumerate(sorted(set(cell_of)))}
    cell_of = [ids[d] for d in cell_of]
    while True:
        masks = [0] * ncells
        for v in range(n):
            masks[cell_of[v]] |= 1 << v
        sig = [
            (cell_of[v], tuple((adj[v] & m).bit_count() for m in masks))
            for v in range(n)
        ]
        ordered = sorted(set(sig))
        ids = {s: i for i, s in enumerate(ordered)}
        cell_of = [ids[s] for s in sig]
        if len(ordered) == ncells:
            break
        ncells = len(ordered)
    cells: list[list[int]] = [[] for _ in range(ncells)]
    for v in range(n):
        cells[cell_of[v]].append(v)
    return cells


def canonical_labeling(g: Graph) -> tuple[int, list[int]]:
    """``(code, order)``: ``g.relabel(order)`` has upper-triangle code ``code``."""
    n = g.n
    adj = g.adj
    cells = refined_partition(g)
    if len(cells) == n:
        order = [c[0] for c in cells]
        return _code_of_order(g, order), order

    cell_at = []
    for idx, cell in enumerate(cells):
        cell_at += [idx] * len(cell)
    cell_masks = [sum(1 << v for v in c) for c in cells]

    best_code = -1
    best_order: list[int] = []
    order: list[int] = []

    def search(pos: int, placed: int, code: int) -> None:
        nonlocal best_code, best_order
        if pos == n:
            if best_code < 0 or code < best_code:
                best_code = code
                best_order = order.copy()
            return
        if best_code >= 0:
            # compare against the best code's prefix of the same length
            shift = (n * (n - 1) // 2) - (pos * (pos - 1) // 2)
            if code > best_code >> shift:
                return
        candidates = cell_masks[cell_at[pos]] & ~placed
        columns: dict[int, list[int]] = {}
        for v in _bits(candidates):
            col = 0
            row = adj[v]
            for u in order:
                col = col << 1 | (row >> u & 1)
            columns.setdefault(col, []).append(v)
        col = min(columns)
        reps: list[int] = []
        for v in columns[col]:
            if any((adj[v] & ~(1 << w)) == (adj[w] & ~(1 << v)) for w in reps):
                continue
            reps.append(v)
        next_code = code << pos | col
        for v in reps:
            order.append(v)
            search(pos + 1, placed | 1 << v, next_code)
            order.pop()

    search(0, 0, 0)
    return best_code, best_order


def _code_of_order(g: Graph, order: list[int]) -> int:
    code = 0
    for j in range(1, g.n):
        row = g.adj[order[j]]
        for i in range(j):
            code = code << 1 | (row >> order[i] & 1)
    return code


def canonical_code(g: Graph) -> int:
    return canonical_labeling(g)[0]


def canonical_form(g: Graph) -> Graph:
    return g.relabel(canonical_labeling(g)[1])


def graph_from_code(n: int, code: int) -> Graph:
    """Inverse of the upper-triangle code for a graph on n vertices."""
    rows = [0] * n
    k = n * (n - 1) // 2
    for j in range(1, n):
        for i in range(j):
            k -= 1
            if code >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, tuple(rows))
