"""Vectorised eta over many same-order graphs, used to screen scan chunks.

A chunk of graph6 records of one order is decoded into a ``(B, n, n)``
adjacency tensor; distances come from boolean reachability powers and the
Szeged index from comparing distance columns of every vertex pair. Results
are exact integers and are cross-checked against the scalar route in tests.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def _triangle_index(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Row/column indices of the upper triangle in graph6 bit order."""
    rows, cols = [], []
    for j in range(1, n):
        for i in range(j):
            rows.append(i)
            cols.append(j)
    return np.array(rows, dtype=np.intp), np.array(cols, dtype=np.intp)


def decode_graph6_batch(records: list[bytes]) -> np.ndarray | None:
    """``(B, n, n)`` bool adjacency, or None when any record fails validation.

    All records must share one length and a one-byte size header.
    """
    if not records:
        return None
    width = len(records[0])
    if any(len(r) != width for r in records):
        return None
    raw = np.frombuffer(b"".join(records), dtype=np.uint8).reshape(len(records), width)
    if raw.min() < 63 or raw.max() > 126:
        return None
    n = int(raw[0, 0]) - 63
    if n < 1 or n > 62 or (raw[:, 0] != raw[0, 0]).any():
        return None
    nbits = n * (n - 1) // 2
    if width != 1 + (nbits + 5) // 6:
        return None
    body = raw[:, 1:] - 63
    bits = np.unpackbits(body[:, :, None], axis=2)[:, :, 2:].reshape(len(records), -1)
    if bits[:, nbits:].any():
        return None
    rows, cols = _triangle_index(n)
    adj = np.zeros((len(records), n, n), dtype=bool)
    adj[:, rows, cols] = bits[:, :nbits].astype(bool)
    adj |= adj.transpose(0, 2, 1)
    return adj


def distances(adj: np.ndarray) -> np.ndarray:
    """Hop distances ``(B, n, n)``; ``-1`` marks unreachable pairs."""
    batch, n, _ = adj.shape
    a = adj.astype(np.float32)
    reach = np.broadcast_to(np.eye(n, dtype=bool), adj.shape).copy()
    dist = np.zeros(adj.shape, dtype=np.int16)
    for _ in range(n - 1):
        if reach.all():
            break
        dist += ~reach
        reach = reach | (np.matmul(reach.astype(np.float32), a) > 0)
    dist[~reach] = -1
    return dist


def connected(dist: np.ndarray) -> np.ndarray:
    return (dist >= 0).all(axis=(1, 2))


def two_connected(adj: np.ndarray) -> np.ndarray:
    """Connected, n >= 3 and every vertex-deleted subgraph connected."""
    batch, n, _ = adj.shape
    if n < 3:
        return np.zeros(batch, dtype=bool)
    eye = np.eye(n, dtype=bool)
    out = np.ones(batch, dtype=bool)
    for r in range(n):
        keep = np.ones(n, dtype=bool)
        keep[r] = False
        sub = adj[:, keep][:, :, keep]
        closure = (sub | eye[: n - 1, : n - 1]).astype(np.float32)
        steps = 1
        while steps < n - 2:
            closure = (np.matmul(closure, closure) > 0).astype(np.float32)
            steps *= 2
        out &= (closure > 0).all(axis=(1, 2))
    return out


def eta_from(adj: np.ndarray, dist: np.ndarray) -> np.ndarray:
    """``Sz - W`` per graph; only meaningful where the graph is connected."""
    batch, n, _ = adj.shape
    rows, cols = _triangle_index(n)
    du = dist[:, :, rows]
    dv = dist[:, :, cols]
    n_u = (du < dv).sum(axis=1, dtype=np.int64)
    n_v = (dv < du).sum(axis=1, dtype=np.int64)
    edge = adj[:, rows, cols]
    sz = (n_u * n_v * edge).sum(axis=1)
    w = dist.astype(np.int64).sum(axis=(1, 2)) // 2
    return sz - w


def screen_arrays(records: list[bytes]):
    """``(n, adj, conn, two_conn, complete, eta)`` or None if decoding fails."""
    adj = decode_graph6_batch(records)
    if adj is None:
        return None
    n = adj.shape[1]
    dist = distances(adj)
    conn = connected(dist)
    two = two_connected(adj) & conn
    m = adj.sum(axis=(1, 2)) // 2
    complete = m == n * (n - 1) // 2
    values = eta_from(adj, dist)
    return n, adj, conn, two, complete, values
