"""Acceptance criteria 1-10, one test per criterion.

Each test records a one-line verdict; the lines are printed in the pytest
terminal summary (and directly when this file is run as a script).

Criterion 9's n = 10 stream comes from nauty ``geng -C 10`` when available
(``$SZW_GENG``, PATH or /root/tools/geng) or from a graph6 file named by
``$SZW_N10_STREAM``; otherwise that part is skipped. ``SZW_SKIP_EXTENDED=1``
skips it too.
"""

from __future__ import annotations

import contextlib
import itertools
import os
import random
import subprocess
import time
from collections import Counter

import pytest

from conftest import geng_path
from oracles import atlas_graphs, random_connected_edges
from szeged_wiener import families
from szeged_wiener.canon import canonical_code
from szeged_wiener.enumeration import GraphFilter, builtin_enumerate, enumerate_girth5, scan
from szeged_wiener.graph_core import Graph, is_bipartite, is_complete, is_two_connected
from szeged_wiener.invariants import eta, eta_star_q4
from szeged_wiener.verifier import FAIL, NOT_APPLICABLE, PASS, run_check

RESULTS: dict[float, str] = {}

CONNECTED = GraphFilter(connected=True)
TWO = GraphFilter(two_connected=True)
# published counts of 2-connected graphs (OEIS A002218), n = 3..10
TWO_CONNECTED_COUNTS = {3: 1, 4: 3, 5: 10, 6: 56, 7: 468, 8: 7123, 9: 194066, 10: 9743542}


def _label(k: float) -> str:
    return {3.5: "criterion 3 (n=8 extension)", 9.5: "criterion 9 (n=10 stream)"}.get(k, f"criterion {int(k)}")


@contextlib.contextmanager
def criterion(k: float, budget: float | None = None):
    """Record PASS/FAIL for criterion k; ``note`` collects detail text."""
    note: list[str] = []
    started = time.perf_counter()
    try:
        yield note
    except pytest.skip.Exception as exc:
        RESULTS[k] = f"{_label(k)}: SKIP ({exc.msg})"
        raise
    except BaseException:
        RESULTS[k] = f"{_label(k)}: FAIL ({'; '.join(note)})"
        raise
    elapsed = time.perf_counter() - started
    timing = f"{elapsed:.1f}s" + (f" of {budget:.0f}s budget" if budget else "")
    if budget is not None and elapsed > budget:
        RESULTS[k] = f"{_label(k)}: FAIL (over budget, {timing}; {'; '.join(note)})"
        raise AssertionError(RESULTS[k])
    RESULTS[k] = f"{_label(k)}: PASS ({'; '.join(note + [timing])})"


def connected_upto(n):
    for k in range(1, n + 1):
        yield from builtin_enumerate(k, CONNECTED)


def two_connected_upto(n):
    for k in range(3, n + 1):
        yield from builtin_enumerate(k, TWO)


def knt(n, t):
    return families.build(families.knt(n, t))


def statuses(name, graphs, **options):
    counts = Counter()
    failures = []
    for g in graphs:
        out = run_check(name, g, **options)
        counts[out.status] += 1
        if out.status == FAIL:
            failures.append((str(g), out.observed))
    return counts, failures


def test_criterion_01_closed_form_spot_values():
    with criterion(1, budget=1.0) as note:
        assert eta(Graph.cycle(5)) == 5
        assert all(eta(Graph.complete(n)) == 0 for n in range(3, 11))
        for n in range(4, 13):
            assert eta(knt(n, 2)) == eta(knt(n, n - 2)) == 2 * n - 6
        assert eta_star_q4(Graph.complete(3)) == 15
        note.append("eta(C5)=5, eta(K_n)=0, eta(K_n^2)=eta(K_n^(n-2))=2n-6 for n<=12, 4eta*(K3)=15")


def test_criterion_02_identity_suites():
    with criterion(2, budget=30.0) as note:
        graphs = list(connected_upto(7))
        assert sum(1 for g in graphs if g.n == 7) == 853
        rng = random.Random(2024)
        for _ in range(1000):
            n = rng.randrange(2, 13)
            graphs.append(Graph.from_edges(n, random_connected_edges(rng, n, rng.uniform(0.0, 0.6))))
        for name in ("eq1", "horiz"):
            counts, failures = statuses(name, graphs)
            assert failures == [] and counts[PASS] == len(graphs), failures[:3]
        note.append(f"{len(graphs)} graphs, eq1 and horiz all pass")


def _equality_set(n):
    return {canonical_code(knt(n, 2)), canonical_code(knt(n, n - 2))}


def _main_theorems(max_n, note):
    for n in range(3, max_n + 1):
        graphs = list(builtin_enumerate(n, TWO))
        assert len(graphs) == TWO_CONNECTED_COUNTS[n]
        for name in ("main1", "main3"):
            counts, failures = statuses(name, graphs)
            assert failures == [], failures[:3]
        tight = {canonical_code(g) for g in graphs if not is_complete(g) and eta(g) == 2 * n - 6}
        assert tight == (_equality_set(n) if n >= 4 else set())
    note.append(f"2-connected n=3..{max_n}: main1/main3 zero counterexamples, eta=2n-6 exactly on K_n^2, K_n^(n-2)")


def test_criterion_03_main_theorems_exhaustive():
    with criterion(3, budget=60.0) as note:
        # independent dedup oracle: the networkx atlas of all graphs up to 7 vertices
        for n in range(3, 8):
            atlas = {canonical_code(g) for g in (Graph.from_edges(n, h.edges()) for h in atlas_graphs(n))
                     if is_two_connected(g)}
            assert atlas == {canonical_code(g) for g in builtin_enumerate(n, TWO)}
        note.append("counts 1,3,10,56,468 match the atlas oracle")
        _main_theorems(7, note)


def test_criterion_03_extension_n8():
    with criterion(3.5, budget=300.0) as note:
        assert TWO_CONNECTED_COUNTS[8] == sum(1 for _ in builtin_enumerate(8, TWO))
        _main_theorems(8, note)


def test_criterion_04_corollary_and_block_graphs():
    with criterion(4, budget=120.0) as note:
        graphs = list(connected_upto(7))
        for name in ("corollary_blocks", "dg_zero"):
            counts, failures = statuses(name, graphs)
            assert failures == [] and counts[PASS] == len(graphs), failures[:3]
        zero = sum(1 for g in graphs if eta(g) == 0)
        note.append(f"{len(graphs)} connected graphs n<=7; {zero} with eta=0, all block graphs")


def test_criterion_05_forbidden_values():
    with criterion(5, budget=120.0) as note:
        graphs = list(connected_upto(7))
        counts, failures = statuses("forbidden_values", graphs)
        assert failures == []
        values = {eta(g) for g in graphs}
        assert not values & {1, 3}
        assert {2, 4, 5} <= values
        note.append("no eta in {1,3} for n<=7; 2, 4, 5 realized")


def test_criterion_06_bipartite_theorems():
    with criterion(6, budget=60.0) as note:
        bip = [g for g in two_connected_upto(8) if is_bipartite(g)]
        counts, failures = statuses("bip_contrib", bip)
        assert failures == []
        c4 = [g for g in bip if g.n == 4 and g.m == 4]
        assert len(c4) == 1 and counts[NOT_APPLICABLE] == 1 and counts[PASS] == len(bip) - 1
        counts, failures = statuses("bip_bound", connected_upto(8))
        assert failures == [] and counts[PASS] > 0
        note.append(f"{len(bip)} 2-connected bipartite graphs: c_min>=8 except C4; bip_bound {counts[PASS]} pass over connected n<=8")


def _compositions(k, max_total):
    for sizes in itertools.product(range(1, max_total - k + 2), repeat=k):
        if sum(sizes) <= max_total:
            yield sizes


def test_criterion_07_girth_theorems():
    with criterion(7, budget=60.0) as note:
        checked = 0
        for k, closed, measure in (
            (5, families.eta_c5_trees, eta),
            (4, families.eta_c4_trees, eta),
            (3, families.eta_star_c3_trees_q4, eta_star_q4),
        ):
            for sizes in _compositions(k, 12):
                assert closed(sizes) == measure(families.build(families.ctrees(sizes))), sizes
                checked += 1
        equality = 0
        for n in range(5, 11):
            for g in enumerate_girth5(n):
                out = run_check("girth5_bound", g)
                assert out.status != FAIL, (str(g), out.observed)
                if out.status == PASS:
                    tight = out.observed["eta"] == 2 * n - 5
                    assert tight == families.is_c5_equality_family(g)
                    equality += tight
        note.append(f"{checked} size vectors match; girth>=5 graphs n<=10: equality family exact ({equality} graphs)")


def test_criterion_08_revised_suite():
    with criterion(8, budget=120.0) as note:
        graphs = [g for g in connected_upto(7) if not is_bipartite(g)]
        for name in ("revised_lemma", "revised_floor", "revised_equality"):
            counts, failures = statuses(name, graphs)
            assert failures == [], failures[:3]
        tight = [g for g in graphs if eta_star_q4(g) == g.n * g.n + 4 * g.n - 6]
        assert all(families.is_c3_with_one_tree(g) for g in tight)
        assert sum(1 for g in graphs if families.is_c3_with_one_tree(g)) == len(tight)
        note.append(f"{len(graphs)} non-bipartite graphs; revised-floor equality on {len(tight)} C3-with-one-tree graphs")


def _geng_stream(n):
    return subprocess.Popen([geng_path(), "-C", "-q", str(n)], stdout=subprocess.PIPE)


def test_criterion_09_computer_search():
    with criterion(9) as note:
        found = {}
        for n in range(5, 9):
            report = scan(builtin_enumerate(n, TWO), "conjecture4_relaxed")
            if report.failures:
                found[n] = report.failures
        if geng_path():
            proc = _geng_stream(9)
            report = scan(proc.stdout, "conjecture4_relaxed", expected_count=TWO_CONNECTED_COUNTS[9])
            proc.wait()
            assert report.count_verified
            if report.failures:
                found[9] = report.failures
        assert found
        note.append("eta<2n violators by order " + ", ".join(f"n={k}: {v}" for k, v in sorted(found.items())))


def test_criterion_09_n10_stream():
    with criterion(9.5) as note:
        if os.environ.get("SZW_SKIP_EXTENDED"):
            pytest.skip("n=10 stream disabled by SZW_SKIP_EXTENDED")
        path = os.environ.get("SZW_N10_STREAM")
        if path:
            source, proc = path, None
        elif geng_path():
            proc = _geng_stream(10)
            source = proc.stdout
        else:
            pytest.skip("no n=10 stream: set SZW_N10_STREAM or install nauty geng")
        report = scan(source, "conjecture4", workers=os.cpu_count() or 1, expected_count=TWO_CONNECTED_COUNTS[10])
        if proc is not None:
            proc.wait()
        assert report.count_verified, (report.total, report.skipped)
        assert report.failures == 0, report.counterexamples[:3]
        note.append(
            f"n=10: {report.total} graphs, count verified, 0 counterexamples, "
            f"{report.status_counts['not_applicable']} exceptional, min eta {report.minimum}, {report.wall_time:.0f}s"
        )


def test_criterion_10_determinism():
    with criterion(10) as note:
        graphs = list(two_connected_upto(7))
        for name in ("main1", "main3"):
            outputs = {
                w: scan(graphs, name, workers=w, chunk_size=40).to_json(include_wall_time=False) for w in (1, 4, 8)
            }
            assert len(set(outputs.values())) == 1
        note.append("main1/main3 reports byte-identical for 1, 4, 8 workers")


if __name__ == "__main__":
    import sys

    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)
