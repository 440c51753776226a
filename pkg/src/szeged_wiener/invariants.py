"""Exact Szeged/Wiener quantities over one connected graph.

Everything is integer arithmetic. The revised Szeged index and its difference
with the Wiener index are returned in quarter units (``4 * Sz*``, ``4 * eta*``)
because ``(2 n_u + n_0)(2 n_v + n_0)`` is always an integer.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .graph_core import (
    DisconnectedGraphError,
    DistanceMatrix,
    Graph,
    GraphError,
    _bits,
    all_pairs_distances,
)


@dataclass(frozen=True)
class EdgeSplit:
    edge: tuple[int, int]
    n_u: int
    n_v: int
    n_0: int


@dataclass(frozen=True)
class InvariantReport:
    n: int
    m: int
    W: int
    Sz: int
    Sz4: int
    eta: int
    eta4: int
    c: tuple[int, ...]
    h: tuple[int, ...]

    def to_dict(self) -> dict:
        out = asdict(self)
        out["c"] = list(self.c)
        out["h"] = list(self.h)
        return out


def _distances(g: Graph, dm: DistanceMatrix | None) -> DistanceMatrix:
    if dm is None:
        dm = all_pairs_distances(g)
    if not dm.connected:
        raise DisconnectedGraphError(f"graph {g} is disconnected")
    return dm


def _closer_mask(levels_u: tuple[int, ...], levels_v: tuple[int, ...]) -> int:
    """Bitset of vertices strictly closer to u than to v, for adjacent u and v."""
    # adjacent endpoints: d(x,u) < d(x,v) iff d(x,v) = d(x,u) + 1
    mask = 0
    for k in range(min(len(levels_u), len(levels_v) - 1)):
        mask |= levels_u[k] & levels_v[k + 1]
    return mask


def _closer_count(levels_u: tuple[int, ...], levels_v: tuple[int, ...]) -> int:
    return _closer_mask(levels_u, levels_v).bit_count()


def wiener(g: Graph, dm: DistanceMatrix | None = None) -> int:
    dm = _distances(g, dm)
    return sum(map(sum, dm.d)) // 2


def edge_split(g: Graph, dm: DistanceMatrix | None, edge: tuple[int, int]) -> EdgeSplit:
    u, v = edge
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    dm = _distances(g, dm)
    n_u = _closer_count(dm.levels[u], dm.levels[v])
    n_v = _closer_count(dm.levels[v], dm.levels[u])
    return EdgeSplit((u, v), n_u, n_v, g.n - n_u - n_v)


def edge_splits(g: Graph, dm: DistanceMatrix | None = None) -> list[EdgeSplit]:
    dm = _distances(g, dm)
    levels = dm.levels
    n = g.n
    out = []
    for u, v in g.edges():
        n_u = _closer_count(levels[u], levels[v])
        n_v = _closer_count(levels[v], levels[u])
        out.append(EdgeSplit((u, v), n_u, n_v, n - n_u - n_v))
    return out


def szeged(g: Graph, dm: DistanceMatrix | None = None) -> int:
    return sum(s.n_u * s.n_v for s in edge_splits(g, dm))


def revised_szeged_q4(g: Graph, dm: DistanceMatrix | None = None) -> int:
    """``4 * Sz*(G)``."""
    return sum((2 * s.n_u + s.n_0) * (2 * s.n_v + s.n_0) for s in edge_splits(g, dm))


def good_count(g: Graph, dm: DistanceMatrix, a: int, b: int) -> int:
    """Number of edges good for the pair ``{a, b}``; zero when ``a == b``."""
    if a == b:
        return 0
    da, db = dm.d[a], dm.d[b]
    count = 0
    for u, v in g.edges():
        if (da[u] < da[v] and db[v] < db[u]) or (da[v] < da[u] and db[u] < db[v]):
            count += 1
    return count


def eta_pair(g: Graph, dm: DistanceMatrix, a: int, b: int) -> int:
    return good_count(g, dm, a, b) - dm.d[a][b]


def contribution(g: Graph, dm: DistanceMatrix | None, a: int) -> int:
    dm = _distances(g, dm)
    return sum(eta_pair(g, dm, a, b) for b in range(g.n) if b != a)


def contributions(g: Graph, dm: DistanceMatrix | None = None) -> tuple[int, ...]:
    """Per-vertex contributions ``c(a)``, sharing one pass over the edges.

    For each edge we collect which vertices are closer to which endpoint;
    the edge is good for ``{a, b}`` iff ``a`` and ``b`` fall on opposite sides.
    """
    dm = _distances(g, dm)
    n = g.n
    good = [0] * n
    for u, v in g.edges():
        side_u = _closer_mask(dm.levels[u], dm.levels[v])
        side_v = _closer_mask(dm.levels[v], dm.levels[u])
        size_u, size_v = side_u.bit_count(), side_v.bit_count()
        for a in _bits(side_u):
            good[a] += size_v
        for a in _bits(side_v):
            good[a] += size_u
    return tuple(good[a] - sum(dm.d[a]) for a in range(n))


def horizontal_count(g: Graph, dm: DistanceMatrix | None, a: int) -> int:
    dm = _distances(g, dm)
    da = dm.d[a]
    return sum(1 for u, v in g.edges() if da[u] == da[v])


def horizontal_counts(g: Graph, dm: DistanceMatrix | None = None) -> tuple[int, ...]:
    dm = _distances(g, dm)
    return tuple(
        sum((level & g.adj[x]).bit_count() for level in dm.levels[a] for x in _bits(level)) // 2
        for a in range(g.n)
    )


def eta(g: Graph, dm: DistanceMatrix | None = None) -> int:
    dm = _distances(g, dm)
    return szeged(g, dm) - wiener(g, dm)


def eta_star_q4(g: Graph, dm: DistanceMatrix | None = None) -> int:
    """``4 * eta*(G)``."""
    dm = _distances(g, dm)
    return revised_szeged_q4(g, dm) - 4 * wiener(g, dm)


def full_report(g: Graph) -> InvariantReport:
    dm = _distances(g, None)
    splits = edge_splits(g, dm)
    w = sum(map(sum, dm.d)) // 2
    sz = sum(s.n_u * s.n_v for s in splits)
    sz4 = sum((2 * s.n_u + s.n_0) * (2 * s.n_v + s.n_0) for s in splits)
    return InvariantReport(
        n=g.n,
        m=len(splits),
        W=w,
        Sz=sz,
        Sz4=sz4,
        eta=sz - w,
        eta4=sz4 - 4 * w,
        c=contributions(g, dm),
        h=horizontal_counts(g, dm),
    )


def verify_good_edge_identity(g: Graph) -> bool:
    """Szeged index by edge splits equals the sum of good-edge counts over pairs."""
    dm = _distances(g, None)
    by_pairs = sum(good_count(g, dm, a, b) for a in range(g.n) for b in range(a + 1, g.n))
    return szeged(g, dm) == by_pairs


def verify_horizontal_identity(g: Graph) -> bool:
    dm = _distances(g, None)
    per_vertex = sum(horizontal_count(g, dm, a) for a in range(g.n))
    per_edge = sum(s.n_0 for s in edge_splits(g, dm))
    return per_vertex == per_edge
