"""Named graph families and closed-form values of eta / eta* on them.

Closed forms use the same units as :mod:`szeged_wiener.invariants`: eta as an
integer, eta* in quarter units.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph_core import (
    Graph,
    _bits,
    blocks,
    component_mask,
    is_complete,
    require_connected,
)

KINDS = ("complete", "cycle", "knt", "ctrees")


class FamilySpecError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    """One member of a named family.

    ``kind`` is ``complete`` (``params=(n,)``), ``cycle`` (``(k,)``), ``knt``
    (``(n, t)``: K_{n-1} plus a vertex joined to t of its vertices) or
    ``ctrees`` (``(k, s_1, ..., s_k)``: a k-cycle with a path of ``s_i``
    vertices rooted at cycle vertex i, root included).
    """

    kind: str
    params: tuple[int, ...]

    def __post_init__(self):
        p = self.params
        if self.kind not in KINDS:
            raise FamilySpecError(f"unknown family kind {self.kind!r}")
        if self.kind == "complete":
            if len(p) != 1 or p[0] < 1:
                raise FamilySpecError("complete needs n >= 1")
        elif self.kind == "cycle":
            if len(p) != 1 or p[0] < 3:
                raise FamilySpecError("cycle needs k >= 3")
        elif self.kind == "knt":
            if len(p) != 2 or not (p[0] >= 2 and 1 <= p[1] <= p[0] - 1):
                raise FamilySpecError("knt needs n >= 2 and 1 <= t <= n-1")
        else:
            if len(p) < 4 or p[0] < 3 or len(p) != p[0] + 1:
                raise FamilySpecError("ctrees needs k >= 3 followed by k sizes")
            if min(p[1:]) < 1:
                raise FamilySpecError("ctrees sizes must be positive")

    @property
    def n(self) -> int:
        if self.kind in ("complete", "cycle", "knt"):
            return self.params[0]
        return sum(self.params[1:])

    @property
    def sizes(self) -> tuple[int, ...]:
        return self.params[1:] if self.kind == "ctrees" else ()

    def __str__(self) -> str:
        if self.kind == "ctrees":
            return f"ctrees:{self.params[0]}:{','.join(map(str, self.sizes))}"
        return f"{self.kind}:{','.join(map(str, self.params))}"

    @classmethod
    def parse(cls, text: str) -> FamilySpec:
        """Parse ``knt:n,t``, ``cycle:k``, ``ctrees:k:s1,...,sk`` or ``complete:n``."""
        kind, _, rest = text.strip().partition(":")
        try:
            if kind == "ctrees":
                k, _, sizes = rest.partition(":")
                params = (int(k), *(int(x) for x in sizes.split(",")))
            else:
                params = tuple(int(x) for x in rest.split(","))
        except ValueError:
            raise FamilySpecError(f"malformed family spec {text!r}") from None
        return cls(kind, params)


def complete(n: int) -> FamilySpec:
    return FamilySpec("complete", (n,))


def cycle(k: int) -> FamilySpec:
    return FamilySpec("cycle", (k,))


def knt(n: int, t: int) -> FamilySpec:
    return FamilySpec("knt", (n, t))


def ctrees(sizes: Sequence[int]) -> FamilySpec:
    return FamilySpec("ctrees", (len(sizes), *sizes))


def cycle_with_rooted_trees(k: int, trees: Sequence[Graph]) -> Graph:
    """Attach ``trees[i]`` to cycle vertex i by identifying its vertex 0 with it.

    Cycle vertices are 0..k-1; the non-root tree vertices follow in order.
    """
    if len(trees) != k:
        raise FamilySpecError(f"expected {k} trees, got {len(trees)}")
    edges = [(i, (i + 1) % k) for i in range(k)]
    nxt = k
    for i, tree in enumerate(trees):
        if tree.m != tree.n - 1 or component_mask(tree, 0) != (1 << tree.n) - 1:
            raise FamilySpecError(f"tree {i} is not a tree")
        label = [i] + list(range(nxt, nxt + tree.n - 1))
        nxt += tree.n - 1
        edges += [(label[u], label[v]) for u, v in tree.edges()]
    return Graph.from_edges(nxt, edges)


def build(spec: FamilySpec) -> Graph:
    if spec.kind == "complete":
        return Graph.complete(spec.params[0])
    if spec.kind == "cycle":
        return Graph.cycle(spec.params[0])
    if spec.kind == "knt":
        n, t = spec.params
        # old clique on 0..n-2, new vertex n-1 joined to 0..t-1
        edges = [(i, j) for i in range(n - 1) for j in range(i + 1, n - 1)]
        edges += [(i, n - 1) for i in range(t)]
        return Graph.from_edges(n, edges)
    k = spec.params[0]
    return cycle_with_rooted_trees(k, [Graph.path(s) for s in spec.sizes])


def eta_knt_special(n: int, t: int) -> int:
    if n < 4 or t not in (2, n - 2):
        raise ValueError(f"no closed form for K_{n}^{t}: need n >= 4 and t in {{2, n-2}}")
    return 2 * n - 6


def _check_sizes(t: Sequence[int], k: int) -> None:
    if len(t) != k or min(t) < 1:
        raise ValueError(f"expected {k} positive tree sizes, got {tuple(t)}")


def eta_c5_trees(t: Sequence[int]) -> int:
    """eta of C5 with trees of sizes ``t`` rooted at consecutive cycle vertices.

    Only pairs of trees hanging at distance two on the cycle contribute, one
    unit per vertex pair.
    """
    _check_sizes(t, 5)
    return sum(t[i] * t[(i + 2) % 5] for i in range(5))


def eta_c4_trees(t: Sequence[int]) -> int:
    _check_sizes(t, 4)
    a, b, c, d = t
    return a * b + b * c + c * d + d * a + 2 * (a * c + b * d)


def eta_star_c3_trees_q4(t: Sequence[int]) -> int:
    """``4 * eta*`` of a triangle with trees of sizes ``t`` at its vertices."""
    _check_sizes(t, 3)
    a, b, c = t
    n = a + b + c
    twelve_eta_star = 5 * n * n - ((a - b) ** 2 + (b - c) ** 2 + (c - a) ** 2)
    q4, rem = divmod(twelve_eta_star, 3)
    assert rem == 0
    return q4


def detect_knt(g: Graph) -> tuple[int, int] | None:
    """``(n, t)`` when g is K_n^t with 1 <= t <= n-2; complete graphs give None.

    A witness is a vertex of degree t whose removal leaves a clique.
    """
    n = g.n
    if n < 3 or is_complete(g):
        return None
    # K_n^t misses exactly n-1-t edges, all at the witness
    missing = n * (n - 1) // 2 - g.m
    t = n - 1 - missing
    if t < 1:
        return None
    full = (1 << n) - 1
    for u in range(n):
        if g.degree(u) != t:
            continue
        rest = full ^ (1 << u)
        if all(g.adj[v] | 1 << v | 1 << u == full for v in _bits(rest)):
            return (n, t)
    return None


def is_block_graph(g: Graph) -> bool:
    require_connected(g)
    for block in blocks(g).blocks:
        mask = sum(1 << v for v in block)
        if any((g.adj[v] | 1 << v) & mask != mask for v in block):
            return False
    return True


def cycle_tree_sizes(g: Graph, cycle_vertices: Sequence[int]) -> tuple[int, ...]:
    """Sizes of the components of ``G - E(C)`` containing each cycle vertex.

    ``cycle_vertices`` lists the cycle in cyclic order.
    """
    k = len(cycle_vertices)
    rows = list(g.adj)
    for i in range(k):
        u, v = cycle_vertices[i], cycle_vertices[(i + 1) % k]
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
    stripped = Graph(g.n, tuple(rows))
    return tuple(component_mask(stripped, x).bit_count() for x in cycle_vertices)


def unicyclic_cycle(g: Graph) -> list[int] | None:
    """Cyclic vertex order of the unique cycle of a connected unicyclic graph."""
    if g.m != g.n:
        return None
    require_connected(g)
    rows = list(g.adj)
    degree = [r.bit_count() for r in rows]
    leaves = [v for v in range(g.n) if degree[v] == 1]
    alive = (1 << g.n) - 1
    while leaves:
        v = leaves.pop()
        alive &= ~(1 << v)
        for w in _bits(rows[v] & alive):
            degree[w] -= 1
            if degree[w] == 1:
                leaves.append(w)
    core = list(_bits(alive))
    start = core[0]
    order = [start]
    prev, cur = -1, start
    while True:
        nxt = [w for w in _bits(rows[cur] & alive) if w != prev]
        step = nxt[0]
        if step == start:
            break
        order.append(step)
        prev, cur = cur, step
    return order


def cycle_with_trees_profile(g: Graph) -> tuple[int, ...] | None:
    """Tree sizes around the cycle when g is a cycle with trees attached.

    Returns the sizes in cyclic order, or None when g is not connected
    unicyclic.
    """
    if g.m != g.n or component_mask(g, 0) != (1 << g.n) - 1:
        return None
    cyc = unicyclic_cycle(g)
    return cycle_tree_sizes(g, cyc)


def is_c5_equality_family(g: Graph) -> bool:
    """C5 with one tree, or two trees at adjacent cycle vertices."""
    profile = cycle_with_trees_profile(g)
    if profile is None or len(profile) != 5:
        return False
    big = [i for i, s in enumerate(profile) if s > 1]
    if len(big) <= 1:
        return True
    return len(big) == 2 and (big[1] - big[0]) in (1, 4)


def is_c3_with_trees(g: Graph) -> bool:
    profile = cycle_with_trees_profile(g)
    return profile is not None and len(profile) == 3


def is_c3_with_one_tree(g: Graph) -> bool:
    profile = cycle_with_trees_profile(g)
    return profile is not None and len(profile) == 3 and sum(s > 1 for s in profile) <= 1


def is_c4_with_one_tree(g: Graph) -> bool:
    profile = cycle_with_trees_profile(g)
    return profile is not None and len(profile) == 4 and sum(s > 1 for s in profile) <= 1
