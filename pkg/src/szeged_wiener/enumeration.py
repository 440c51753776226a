"""Graph streams for exhaustive verification and the parallel scan driver."""

from __future__ import annotations

import functools
import io
import json
import os
import sys
import time
from collections import Counter
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .canon import canonical_labeling, graph_from_code
from .graph_core import (
    Graph,
    Graph6Error,
    encode_graph6,
    girth,
    is_bipartite,
    is_complete,
    is_connected,
    is_two_connected,
    parse_graph6,
)

MAX_BUILTIN_N = 8
DEFAULT_CHUNK = 2000

FILTER_FLAGS = ("connected", "two_connected", "bipartite", "non_complete")
_FLAG_ALIASES = {
    "connected": "connected",
    "2connected": "two_connected",
    "two_connected": "two_connected",
    "biconnected": "two_connected",
    "bipartite": "bipartite",
    "noncomplete": "non_complete",
    "non_complete": "non_complete",
}


class EnumerationError(ValueError):
    pass


class Graph6StreamError(ValueError):
    def __init__(self, lineno: int, cause: Exception):
        super().__init__(f"line {lineno}: {cause}")
        self.lineno = lineno


class ScanError(RuntimeError):
    """A check raised on one graph; ``graph6`` names it."""

    def __init__(self, graph6: str, cause: str):
        super().__init__(f"check failed to evaluate on {graph6}: {cause}")
        self.graph6 = graph6


@dataclass(frozen=True)
class GraphFilter:
    """Conjunction of hypothesis clauses; ``order`` of None admits any n."""

    connected: bool = False
    two_connected: bool = False
    bipartite: bool = False
    non_complete: bool = False
    min_girth: int | None = None
    order: int | None = None

    @classmethod
    def parse(cls, text: str, **extra) -> GraphFilter:
        """Build from a comma list such as ``"2connected,noncomplete,girth>=5"``."""
        flags: dict = dict(extra)
        for token in filter(None, (t.strip() for t in text.split(","))):
            if token.startswith("girth>="):
                flags["min_girth"] = int(token[len("girth>="):])
            elif token in _FLAG_ALIASES:
                flags[_FLAG_ALIASES[token]] = True
            else:
                raise EnumerationError(f"unknown filter clause {token!r}")
        return cls(**flags)

    def __call__(self, g: Graph) -> bool:
        if self.order is not None and g.n != self.order:
            return False
        if self.connected and not is_connected(g):
            return False
        if self.two_connected and not is_two_connected(g):
            return False
        if self.bipartite and not is_bipartite(g):
            return False
        if self.non_complete and is_complete(g):
            return False
        if self.min_girth is not None and girth(g) < self.min_girth:
            return False
        return True


@functools.lru_cache(maxsize=None)
def _canonical_codes(n: int, connected: bool) -> tuple[int, ...]:
    """Sorted canonical codes of all (connected) graphs on n vertices.

    Every connected graph on n vertices arises from a connected graph on n-1
    vertices by adding a vertex (delete a leaf of a spanning tree), so the
    connected levels only extend connected parents.
    """
    if n == 1:
        return (0,)
    found: set[int] = set()
    for parent_code in _canonical_codes(n - 1, connected):
        parent = graph_from_code(n - 1, parent_code)
        rows = list(parent.adj) + [0]
        first = 1 if connected else 0
        for subset in range(first, 1 << (n - 1)):
            child = rows.copy()
            child[n - 1] = subset
            for v in range(n - 1):
                if subset >> v & 1:
                    child[v] |= 1 << (n - 1)
            code, _ = canonical_labeling(Graph(n, tuple(child)))
            found.add(code)
    return tuple(sorted(found))


MAX_GIRTH5_N = 12


@functools.lru_cache(maxsize=None)
def _girth5_codes(n: int) -> tuple[int, ...]:
    """Connected graphs of girth >= 5 (trees included) by pruned augmentation.

    Girth >= 5 survives vertex deletion, so every such graph extends one on
    n-1 vertices; the new vertex's neighbours must be pairwise at distance >= 3.
    """
    if n == 1:
        return (0,)
    found: set[int] = set()
    for parent_code in _girth5_codes(n - 1):
        parent = graph_from_code(n - 1, parent_code)
        # ball2[v]: vertices within distance 2 of v, v included
        ball1 = [parent.adj[v] | 1 << v for v in range(n - 1)]
        ball2 = [0] * (n - 1)
        for v in range(n - 1):
            reach = ball1[v]
            for u in _bits_of(parent.adj[v]):
                reach |= ball1[u]
            ball2[v] = reach
        rows = list(parent.adj) + [0]
        for subset in range(1, 1 << (n - 1)):
            if any(ball2[v] & subset & ~(1 << v) for v in _bits_of(subset)):
                continue
            child = rows.copy()
            child[n - 1] = subset
            for v in _bits_of(subset):
                child[v] |= 1 << (n - 1)
            found.add(canonical_labeling(Graph(n, tuple(child)))[0])
    return tuple(sorted(found))


def _bits_of(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def enumerate_girth5(n: int) -> Iterator[Graph]:
    """All connected graphs on n vertices with girth >= 5, one per isomorphism class."""
    if not 1 <= n <= MAX_GIRTH5_N:
        raise EnumerationError(f"girth >= 5 enumeration supports 1 <= n <= {MAX_GIRTH5_N}")
    for code in _girth5_codes(n):
        yield graph_from_code(n, code)


def builtin_enumerate(n: int, graph_filter: GraphFilter = GraphFilter()) -> Iterator[Graph]:
    """One canonically labelled representative per isomorphism class passing the filter."""
    if not 1 <= n <= MAX_BUILTIN_N:
        raise EnumerationError(
            f"builtin enumeration supports 1 <= n <= {MAX_BUILTIN_N}; use an external graph6 stream"
        )
    connected = graph_filter.connected or graph_filter.two_connected
    for code in _canonical_codes(n, connected):
        g = graph_from_code(n, code)
        if graph_filter(g):
            yield g


# graph6 streams

def _as_binary_lines(source) -> Iterable[bytes]:
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            yield from fh
        return
    if isinstance(source, io.TextIOBase):
        for line in source:
            yield line.encode("ascii", errors="replace")
        return
    for line in source:
        yield line.encode("ascii", errors="replace") if isinstance(line, str) else line


def iter_graph6_records(source) -> Iterator[tuple[int, bytes]]:
    """``(line number, record)`` pairs, skipping blank lines."""
    for lineno, line in enumerate(_as_binary_lines(source), start=1):
        record = line.strip()
        if record:
            yield lineno, record


class Graph6Stream:
    """Lazy decoded graph6 stream.

    Strict mode raises :class:`Graph6StreamError` naming the first bad line;
    lenient mode skips it and counts it in ``skipped``.
    """

    def __init__(self, source, lenient: bool = False):
        self.source = source
        self.lenient = lenient
        self.skipped = 0

    def __iter__(self) -> Iterator[Graph]:
        for lineno, record in iter_graph6_records(self.source):
            try:
                yield parse_graph6(record)
            except Graph6Error as exc:
                if not self.lenient:
                    raise Graph6StreamError(lineno, exc) from exc
                self.skipped += 1


def stream_graph6(source, lenient: bool = False) -> Graph6Stream:
    return Graph6Stream(source, lenient)


# scanning

@dataclass
class ScanReport:
    check: str
    total: int = 0
    skipped: int = 0
    status_counts: Counter = field(default_factory=Counter)
    counterexamples: list[tuple[str, dict]] = field(default_factory=list)
    key: str | None = None
    minimum: int | None = None
    maximum: int | None = None
    histogram: Counter = field(default_factory=Counter)
    expected_count: int | None = None
    wall_time: float = 0.0

    @property
    def failures(self) -> int:
        return self.status_counts.get("fail", 0)

    @property
    def count_verified(self) -> bool | None:
        if self.expected_count is None:
            return None
        return self.expected_count == self.total + self.skipped

    def record(self, status: str, graph6: str, observed: dict) -> None:
        self.total += 1
        self.status_counts[status] += 1
        if status == "fail":
            self.counterexamples.append((graph6, observed))
        if self.key is not None and self.key in observed and status != "not_applicable":
            self.observe_value(observed[self.key])

    def record_bulk(self, status: str, values) -> None:
        """Record ``len(values)`` graphs settled with ``status`` and key values ``values``."""
        values = [int(v) for v in values]
        if not values:
            return
        self.total += len(values)
        self.status_counts[status] += len(values)
        if self.key is not None and status != "not_applicable":
            for value, count in Counter(values).items():
                self.observe_value(value, count)

    def observe_value(self, value: int, count: int = 1) -> None:
        self.histogram[value] += count
        self.minimum = value if self.minimum is None else min(self.minimum, value)
        self.maximum = value if self.maximum is None else max(self.maximum, value)

    def merge(self, other: ScanReport) -> ScanReport:
        """Associative, commutative merge of two partial reports."""
        if other.check != self.check:
            raise ValueError("cannot merge reports of different checks")
        out = ScanReport(self.check, key=self.key, expected_count=self.expected_count)
        out.total = self.total + other.total
        out.skipped = self.skipped + other.skipped
        out.status_counts = self.status_counts + other.status_counts
        out.counterexamples = sorted(self.counterexamples + other.counterexamples, key=lambda c: c[0])
        out.histogram = self.histogram + other.histogram
        mins = [x for x in (self.minimum, other.minimum) if x is not None]
        maxs = [x for x in (self.maximum, other.maximum) if x is not None]
        out.minimum = min(mins) if mins else None
        out.maximum = max(maxs) if maxs else None
        out.wall_time = max(self.wall_time, other.wall_time)
        return out

    def to_dict(self, include_wall_time: bool = True) -> dict:
        out = {
            "check": self.check,
            "total": self.total,
            "skipped": self.skipped,
            "status_counts": {k: self.status_counts.get(k, 0) for k in ("pass", "fail", "not_applicable")},
            "counterexamples": [
                {"graph6": g6, "observed": observed} for g6, observed in sorted(self.counterexamples, key=lambda c: c[0])
            ],
            "key": self.key,
            "min": self.minimum,
            "max": self.maximum,
            "histogram": {str(k): self.histogram[k] for k in sorted(self.histogram)},
            "expected_count": self.expected_count,
            "count_verified": self.count_verified,
        }
        if include_wall_time:
            out["wall_time"] = round(self.wall_time, 6)
        return out

    def to_json(self, include_wall_time: bool = True) -> str:
        return json.dumps(self.to_dict(include_wall_time), sort_keys=True)


def _scan_chunk(check_id: str, options: tuple, start: int, records: list[bytes], lenient: bool) -> ScanReport:
    from .verifier import get_check

    check = get_check(check_id)
    report = ScanReport(check_id, key=check.key)
    check.evaluate_many(records, start, report, dict(options), lenient)
    return report


def _chunks(records: Iterable[bytes], size: int) -> Iterator[tuple[int, list[bytes]]]:
    chunk: list[bytes] = []
    index = 0
    start = 1
    for record in records:
        if not chunk:
            start = index + 1
        chunk.append(record)
        index += 1
        if len(chunk) == size:
            yield start, chunk
            chunk = []
    if chunk:
        yield start, chunk


def _records_of(stream) -> Iterator[bytes]:
    """graph6 records from Graphs, bytes/str lines, a path or a Graph6Stream."""
    if isinstance(stream, Graph6Stream):
        stream = stream.source
    if isinstance(stream, (str, os.PathLike)) or isinstance(stream, (io.IOBase,)):
        for _, record in iter_graph6_records(stream):
            yield record
        return
    for item in stream:
        if isinstance(item, Graph):
            yield encode_graph6(item)
        elif isinstance(item, str):
            if item.strip():
                yield item.strip().encode("ascii")
        else:
            if item.strip():
                yield item.strip()


def scan(
    stream,
    check_id: str,
    workers: int = 1,
    *,
    chunk_size: int = DEFAULT_CHUNK,
    lenient: bool | None = None,
    expected_count: int | None = None,
    options: dict | None = None,
    progress: bool = False,
) -> ScanReport:
    """Apply a registered check to every graph of ``stream``.

    Records are read by a single reader and handed to workers in fixed-size
    chunks; partial reports merge associatively, so the result does not
    depend on ``workers``, ``chunk_size`` or completion order.
    """
    from .verifier import get_check

    check = get_check(check_id)
    if lenient is None:
        lenient = isinstance(stream, Graph6Stream) and stream.lenient
    opts = tuple(sorted((options or {}).items()))
    started = time.perf_counter()
    report = ScanReport(check_id, key=check.key, expected_count=expected_count)
    chunks = _chunks(_records_of(stream), chunk_size)
    done_chunks = 0
    if workers <= 1:
        for start, records in chunks:
            report = report.merge(_scan_chunk(check_id, opts, start, records, lenient))
            done_chunks += 1
            if progress:
                _progress(report, started)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pending = set()
            for start, records in chunks:
                pending.add(pool.submit(_scan_chunk, check_id, opts, start, records, lenient))
                if len(pending) >= 2 * workers:
                    finished, pending = wait(pending, return_when=FIRST_COMPLETED)
                    for fut in finished:
                        report = report.merge(fut.result())
                    if progress:
                        _progress(report, started)
            for fut in pending:
                report = report.merge(fut.result())
    report.expected_count = expected_count
    report.wall_time = time.perf_counter() - started
    return report


def _progress(report: ScanReport, started: float) -> None:
    elapsed = time.perf_counter() - started
    rate = report.total / elapsed if elapsed > 0 else 0.0
    print(f"\r{report.total} graphs, {report.failures} failures, {rate:.0f}/s", end="", file=sys.stderr)
