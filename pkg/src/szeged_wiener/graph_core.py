"""Graph representation, graph6/edge-list codecs, distances and blocks.

Vertices are dense ids ``0..n-1``. Adjacency is stored as one Python ``int``
per vertex used as a bitset (bit ``j`` of ``adj[i]`` set iff ``ij`` is an
edge), so neighbourhood tests and BFS frontiers are word operations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

INFINITE = math.inf
"""Girth reported for acyclic graphs."""

UNREACHABLE = -1

_G6_EXT_HEADER = 126
_G6_MAX_SHORT = 62
_G6_MAX_EXT = 258047


class GraphError(ValueError):
    """Invalid graph construction."""


class Graph6Error(ValueError):
    """Malformed graph6 record; ``offset`` is the offending byte position."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class EdgeListError(ValueError):
    pass


class DisconnectedGraphError(ValueError):
    """Raised by every operation whose quantities presume connectivity."""


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1`` with bitset rows."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("graph must have at least one vertex")
        if len(self.adj) != self.n:
            raise GraphError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {i} references a vertex >= n")
            if row >> i & 1:
                raise GraphError(f"loop at vertex {i}")
            for j in _bits(row):
                if not self.adj[j] >> i & 1:
                    raise GraphError(f"asymmetric adjacency between {i} and {j}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << i) for i in range(n)))

    @classmethod
    def cycle(cls, k: int) -> Graph:
        if k < 3:
            raise GraphError("a cycle needs at least 3 vertices")
        return cls.from_edges(k, ((i, (i + 1) % k) for i in range(k)))

    @classmethod
    def path(cls, k: int) -> Graph:
        return cls.from_edges(k, ((i, i + 1) for i in range(k - 1)))

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def neighbors(self, u: int) -> list[int]:
        return list(_bits(self.adj[u]))

    def closed_neighborhood(self, u: int) -> int:
        return self.adj[u] | 1 << u

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Subgraph induced on ``vertices``, relabelled in increasing order."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            row = 0
            for w in _bits(self.adj[v]):
                if w in index:
                    row |= 1 << index[w]
            rows.append(row)
        return Graph(len(keep), tuple(rows))

    def remove_vertex(self, u: int) -> Graph:
        return self.induced(v for v in range(self.n) if v != u)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph whose vertex ``i`` is vertex ``perm[i]`` of this graph."""
        pos = [0] * self.n
        for i, v in enumerate(perm):
            pos[v] = i
        rows = [0] * self.n
        for i, v in enumerate(perm):
            row = 0
            for w in _bits(self.adj[v]):
                row |= 1 << pos[w]
            rows[i] = row
        return Graph(self.n, tuple(rows))

    def __str__(self) -> str:
        return encode_graph6(self).decode("ascii")


# graph6

def _g6_size_header(n: int) -> bytes:
    if n <= _G6_MAX_SHORT:
        return bytes([n + 63])
    if n <= _G6_MAX_EXT:
        return bytes([_G6_EXT_HEADER, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    raise Graph6Error(f"n={n} exceeds the graph6 header range")


def encode_graph6(g: Graph) -> bytes:
    n = g.n
    out = bytearray(_g6_size_header(n))
    group = 0
    filled = 0
    for j in range(1, n):
        row_j = g.adj[j]
        for i in range(j):
            group = group << 1 | (row_j >> i & 1)
            filled += 1
            if filled == 6:
                out.append(group + 63)
                group = 0
                filled = 0
    if filled:
        out.append((group << (6 - filled)) + 63)
    return bytes(out)


def parse_graph6(line: bytes | str) -> Graph:
    if isinstance(line, str):
        line = line.encode("ascii")
    data = line.rstrip(b"\r\n")
    start = 0
    if data.startswith(b">>graph6<<"):
        start = len(b">>graph6<<")
    if len(data) <= start:
        raise Graph6Error("empty record", start)
    for k in range(start, len(data)):
        if not 63 <= data[k] <= 126:
            raise Graph6Error(f"byte {data[k]} outside 63..126", k)
    if data[start] == _G6_EXT_HEADER:
        if len(data) < start + 4:
            raise Graph6Error("truncated extended size header", start)
        if data[start + 1] == _G6_EXT_HEADER:
            raise Graph6Error("8-byte size headers are not supported", start + 1)
        n = (data[start + 1] - 63) << 12 | (data[start + 2] - 63) << 6 | (data[start + 3] - 63)
        body_start = start + 4
        if n <= _G6_MAX_SHORT:
            raise Graph6Error(f"extended header used for n={n}", start)
    else:
        n = data[start] - 63
        body_start = start + 1
    if n < 1:
        raise Graph6Error("graph6 record encodes zero vertices", start)
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    body = data[body_start:]
    if len(body) != expected:
        offset = body_start + min(len(body), expected)
        raise Graph6Error(f"body has {len(body)} bytes, expected {expected} for n={n}", offset)
    rows = [0] * n
    i, j = 0, 1
    k = 0
    for b in body:
        value = b - 63
        for shift in range(5, -1, -1):
            if k == nbits:
                if value & ((1 << (shift + 1)) - 1):
                    raise Graph6Error("nonzero padding bits", body_start + len(body) - 1)
                break
            if value >> shift & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i = 0
                j += 1
    return Graph(n, tuple(rows))


# edge lists

def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``; duplicate edges collapse."""
    lines = [ln.strip() for ln in text.strip().splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise EdgeListError("empty edge list")
    try:
        n, m = (int(tok) for tok in lines[0].split())
    except ValueError:
        raise EdgeListError(f"malformed header line {lines[0]!r}") from None
    if n < 1 or m < 0:
        raise EdgeListError(f"invalid header n={n} m={m}")
    if len(lines) - 1 != m:
        raise EdgeListError(f"header announces {m} edges, found {len(lines) - 1} lines")
    edges = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise EdgeListError(f"line {lineno}: expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"line {lineno}: non-integer vertex id in {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListError(f"line {lineno}: vertex id out of range 0..{n - 1}")
        if u == v:
            raise EdgeListError(f"line {lineno}: loop at vertex {u}")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    return "\n".join([f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


# distances

@dataclass(frozen=True)
class DistanceMatrix:
    """Hop distances; ``d[i][j] == UNREACHABLE`` when no path exists.

    ``levels[u][k]`` is the bitset of vertices at distance exactly ``k`` from u.
    """

    n: int
    d: tuple[tuple[int, ...], ...]
    levels: tuple[tuple[int, ...], ...]

    def reachable(self, i: int, j: int) -> bool:
        return self.d[i][j] != UNREACHABLE

    @property
    def connected(self) -> bool:
        return all(x != UNREACHABLE for row in self.d for x in row)


def _bfs_levels(adj: tuple[int, ...], source: int) -> list[int]:
    seen = frontier = 1 << source
    levels = [frontier]
    while True:
        nxt = 0
        for v in _bits(frontier):
            nxt |= adj[v]
        nxt &= ~seen
        if not nxt:
            return levels
        levels.append(nxt)
        seen |= nxt
        frontier = nxt


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    rows = []
    all_levels = []
    for s in range(g.n):
        levels = _bfs_levels(g.adj, s)
        row = [UNREACHABLE] * g.n
        for k, level in enumerate(levels):
            for v in _bits(level):
                row[v] = k
        rows.append(tuple(row))
        all_levels.append(tuple(levels))
    return DistanceMatrix(g.n, tuple(rows), tuple(all_levels))


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError(f"graph {g} is disconnected")


# predicates

def component_mask(g: Graph, source: int, removed: int = 0) -> int:
    """Bitset of vertices reachable from ``source`` avoiding the ``removed`` set."""
    adj = g.adj
    seen = frontier = 1 << source
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= adj[v]
        frontier = nxt & ~seen & ~removed
        seen |= frontier
    return seen


def is_connected(g: Graph) -> bool:
    return component_mask(g, 0) == (1 << g.n) - 1


def is_complete(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in _bits(g.adj[v]):
                if color[w] == -1:
                    color[w] = color[v] ^ 1
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def girth(g: Graph) -> float | int:
    """Length of a shortest cycle, or ``INFINITE`` for a forest."""
    best = INFINITE
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = [s]
        for v in queue:
            if 2 * dist[v] + 1 >= best:
                break
            for w in _bits(g.adj[v]):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


# blocks

@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]

    def __len__(self) -> int:
        return len(self.blocks)


def blocks(g: Graph) -> BlockDecomposition:
    """Blocks and cut vertices of a connected graph (iterative lowpoint DFS)."""
    require_connected(g)
    n = g.n
    if n == 1:
        return BlockDecomposition((frozenset({0}),), frozenset())
    disc = [-1] * n
    low = [0] * n
    found: list[frozenset[int]] = []
    cuts: set[int] = set()
    edge_stack: list[tuple[int, int]] = []
    disc[0] = low[0] = 0
    counter = 1
    root_children = 0
    # frame: (vertex, parent, bitset of neighbours still to visit)
    stack = [(0, -1, g.adj[0])]
    while stack:
        v, parent, todo = stack[-1]
        if todo:
            low_bit = todo & -todo
            w = low_bit.bit_length() - 1
            stack[-1] = (v, parent, todo ^ low_bit)
            if disc[w] == -1:
                disc[w] = low[w] = counter
                counter += 1
                edge_stack.append((v, w))
                if v == 0:
                    root_children += 1
                stack.append((w, v, g.adj[w]))
            elif w != parent and disc[w] < disc[v]:
                edge_stack.append((v, w))
                low[v] = min(low[v], disc[w])
            continue
        stack.pop()
        if parent == -1:
            continue
        low[parent] = min(low[parent], low[v])
        if low[v] >= disc[parent]:
            if parent != 0:
                cuts.add(parent)
            comp: set[int] = set()
            while True:
                a, b = edge_stack.pop()
                comp.add(a)
                comp.add(b)
                if (a, b) == (parent, v):
                    break
            found.append(frozenset(comp))
    if root_children > 1:
        cuts.add(0)
    found.sort(key=lambda b: sorted(b))
    return BlockDecomposition(tuple(found), frozenset(cuts))


def is_two_connected(g: Graph) -> bool:
    if g.n < 3 or not is_connected(g):
        return False
    return not blocks(g).cut_vertices


def has_dominated_pair(g: Graph, u: int) -> bool:
    """True when some ``v != u`` satisfies ``N[u]`` is a subset of ``N[v]``."""
    closed_u = g.closed_neighborhood(u)
    for v in _bits(g.adj[u]):
        if closed_u & ~g.closed_neighborhood(v) == 0:
            return True
    return False
