"""Registry of theorem and conjecture checks over single graphs.

A check never assumes its hypothesis. It tests each clause and answers
``not_applicable`` with the failing clause recorded in the trace, so a raw
stream can be piped into any check. Bounds are compared in integer units
(eta) or quarter units (eta*); nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import families
from .graph_core import (
    DisconnectedGraphError,
    Graph,
    Graph6Error,
    all_pairs_distances,
    blocks,
    girth,
    has_dominated_pair,
    is_bipartite,
    is_complete,
    is_two_connected,
    parse_graph6,
)
from .invariants import (
    contributions,
    edge_splits,
    eta,
    full_report,
    good_count,
    horizontal_counts,
    szeged,
)

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not_applicable"
STATUSES = (PASS, FAIL, NOT_APPLICABLE)


@dataclass
class CheckOutcome:
    check: str
    status: str
    observed: dict[str, int] = field(default_factory=dict)
    trace: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"check": self.check, "status": self.status, "observed": dict(self.observed), "trace": list(self.trace)}

    @classmethod
    def from_dict(cls, data: dict) -> CheckOutcome:
        return cls(data["check"], data["status"], dict(data["observed"]), list(data["trace"]))


class UnknownCheckError(KeyError):
    pass


@dataclass(frozen=True)
class Check:
    name: str
    func: Callable[..., CheckOutcome]
    key: str
    statement: str
    screen: Callable | None = None

    def __call__(self, g: Graph, **options) -> CheckOutcome:
        return self.func(g, **options)

    def evaluate_many(self, records: list[bytes], start: int, report, options: dict, lenient: bool = False) -> None:
        """Evaluate graph6 ``records`` (line ``start`` onwards) into ``report``.

        A batch screen, when registered, settles most records in bulk and
        returns the indices that still need the scalar check.
        """
        from .enumeration import Graph6StreamError, ScanError

        pending: Iterable[int] = range(len(records))
        if self.screen is not None and records:
            pending = self.screen(records, report, options)
        for i in pending:
            try:
                g = parse_graph6(records[i])
            except Graph6Error as exc:
                if lenient:
                    report.skipped += 1
                    continue
                raise Graph6StreamError(start + i, exc) from exc
            label = records[i].decode("ascii")
            try:
                outcome = self.func(g, **options)
            except Exception as exc:
                raise ScanError(label, f"{type(exc).__name__}: {exc}") from exc
            report.record(outcome.status, label, outcome.observed)


REGISTRY: dict[str, Check] = {}


def register(name: str, key: str, statement: str):
    def wrap(func):
        REGISTRY[name] = Check(name, func, key, statement)
        return func
    return wrap


def get_check(name: str) -> Check:
    try:
        return REGISTRY[name]
    except KeyError:
        raise UnknownCheckError(f"unknown check {name!r}; known: {', '.join(sorted(REGISTRY))}") from None


def _require_connected(g: Graph):
    dm = all_pairs_distances(g)
    if not dm.connected:
        raise DisconnectedGraphError(f"graph {g} is disconnected")
    return dm


def _two_connected_clauses(g: Graph, trace: list[str]) -> bool:
    if not is_two_connected(g):
        trace.append("hypothesis failed: 2-connected")
        return False
    trace.append("hypothesis: 2-connected")
    return True


def _is_cycle_block(g: Graph, block: frozenset[int], k: int) -> bool:
    if len(block) != k:
        return False
    sub = g.induced(block)
    return sub.m == k


def _is_knt_exception(g: Graph) -> tuple[int, int] | None:
    hit = families.detect_knt(g)
    if hit is not None and hit[1] in (2, g.n - 2):
        return hit
    return None


# identities

@register("eq1", "Sz", "Sz(G) equals the sum over vertex pairs of good-edge counts")
def check_eq1(g: Graph) -> CheckOutcome:
    dm = _require_connected(g)
    sz = szeged(g, dm)
    pairs = sum(good_count(g, dm, a, b) for a in range(g.n) for b in range(a + 1, g.n))
    status = PASS if sz == pairs else FAIL
    return CheckOutcome("eq1", status, {"Sz": sz, "good_sum": pairs}, ["hypothesis: connected"])


@register("horiz", "h_sum", "sum of h(a) over vertices equals sum of n0(u,v) over edges")
def check_horiz(g: Graph) -> CheckOutcome:
    dm = _require_connected(g)
    h_sum = sum(horizontal_counts(g, dm))
    n0_sum = sum(s.n_0 for s in edge_splits(g, dm))
    status = PASS if h_sum == n0_sum else FAIL
    return CheckOutcome("horiz", status, {"h_sum": h_sum, "n0_sum": n0_sum}, ["hypothesis: connected"])


# main theorems

@register("main1", "eta", "2-connected non-complete: eta >= 2n - 6")
def check_main1(g: Graph) -> CheckOutcome:
    dm = _require_connected(g)
    trace: list[str] = []
    observed = {"n": g.n, "bound": 2 * g.n - 6}
    if not _two_connected_clauses(g, trace):
        return CheckOutcome("main1", NOT_APPLICABLE, observed, trace)
    if is_complete(g):
        trace.append("hypothesis failed: non-complete")
        return CheckOutcome("main1", NOT_APPLICABLE, observed, trace)
    trace.append("hypothesis: non-complete")
    observed["eta"] = eta(g, dm)
    status = PASS if observed["eta"] >= observed["bound"] else FAIL
    return CheckOutcome("main1", status, observed, trace)


@register("main3", "eta", "2-connected non-complete, not K_n^2 or K_n^(n-2): eta >= 2n - 5")
def check_main3(g: Graph) -> CheckOutcome:
    dm = _require_connected(g)
    trace: list[str] = []
    observed = {"n": g.n, "bound": 2 * g.n - 5}
    if not _two_connected_clauses(g, trace):
        return CheckOutcome("main3", NOT_APPLICABLE, observed, trace)
    if is_complete(g):
        trace.append("hypothesis failed: non-complete")
        return CheckOutcome("main3", NOT_APPLICABLE, observed, trace)
    trace.append("hypothesis: non-complete")
    observed["eta"] = eta(g, dm)
    hit = _is_knt_exception(g)
    if hit is not None:
        n, t = hit
        trace.append(f"exception: K_{n}^{t}; asserting eta == 2n - 6")
        observed["bound"] = 2 * n - 6
        observed["t"] = t
        status = NOT_APPLICABLE if observed["eta"] == 2 * n - 6 else FAIL
        return CheckOutcome("main3", status, observed, trace)
    trace.append("hypothesis: not K_n^2 or K_n^(n-2)")
    status = PASS if observed["eta"] >= observed["bound"] else FAIL
    return CheckOutcome("main3", status, observed, trace)


@register("corollary_blocks", "eta", "eta >= sum over non-complete blocks of (2 n_i - 6)")
def check_corollary_blocks(g: Graph) -> CheckOutcome:
    dm = _require_connected(g)
    bound = 0
    non_complete = 0
    for block in blocks(g).blocks:
        if not is_complete(g.induced(block)):
            non_complete += 1
            bound += 2 * len(block) - 6
    value = eta(g, dm)
    observed = {"eta": value, "bound": bound, "non_complete_blocks": non_complete}
    return CheckOutcome("corollary_blocks", PASS if value >= bound else FAIL, observed, ["hypothesis: connected"])


@register("conjecture4", "eta", "2-connected, n >= 10, not K_n, K_n^2, K_n^(n-2): eta >= 2n")
def check_conjecture4(g: Graph, relaxed: bool = False) -> CheckOutcome:
    """With ``relaxed`` the order clause is dropped, exposing small violators."""
    dm = _require_connected(g)
    trace: list[str] = []
    name = "conjecture4_relaxed" if relaxed else "conjecture4"
    observed = {"n": g.n, "bound": 2 * g.n}
    if not _two_connected_clauses(g, trace):
        return CheckOutcome(name, NOT_APPLICABLE, observed, trace)
    if not relaxed:
        if g.n < 10:
            trace.append("hypothesis failed: n >= 10")
            return CheckOutcome(name, NOT_APPLICABLE, observed, trace)
        trace.append("hypothesis: n >= 10")
    if is_complete(g):
        trace.append("exception: K_n")
        return CheckOutcome(name, NOT_APPLICABLE, observed, trace)
    hit = _is_knt_exception(g)
    if hit is not None:
        trace.append(f"exception: K_{hit[0]}^{hit[1]}")
        return CheckOutcome(name, NOT_APPLICABLE, observed, trace)
    trace.append("hypothesis: not K_n, K_n^2, K_n^(n-2)")
    observed["eta"] = eta(g, dm)
    return CheckOutcome(name, PASS if observed["eta"] >= observed["bound"] else FAIL, observed, trace)


def check_conjecture4_relaxed(g: Graph) -> CheckOutcome:
    return check_conjecture4(g, relaxed=True)


REGISTRY["conjecture4_relaxed"] = Check(
    "conjecture4_relaxed", check_conjecture4_relaxed, "eta", "conjecture4 without the n >= 10 clause"
)


# background facts

@register("dg_zero", "eta", "eta == 0 exactly on block graphs")
def check_dg_zero(g: Graph) -> CheckOutcome:
    dm = _require_connected(g)
    value = eta(g, dm)
    block_graph = families.is_block_graph(g)
    observed = {"eta": value, "block_graph": int(block_graph)}
    status = PASS if (value == 0) == block_graph else FAIL
    return CheckOutcome("dg_zero", status, observed, ["hypothesis: connected"])


FORBIDDEN_ETA = (1, 3)


@register("forbidden_values", "eta", "no connected graph has eta in {1, 3}")
def check_forbidden_values(g: Graph) -> CheckOutcome:
    dm = _require_connected(g)
    value = eta(g, dm)
    status = FAIL if value in FORBIDDEN_ETA else PASS
    return CheckOutcome("forbidden_values", status, {"eta": value, "n": g.n}, ["hypothesis: connected"])


# bipartite

@register("bip_contrib", "c_min", "2-connected bipartite, not C4: every c(u) >= 8")
def check_bip_contrib(g: Graph) -> CheckOutcome:
    dm = _require_connected(g)
    trace: list[str] = []
    observed: dict[str, int] = {"n": g.n}
    if not _two_connected_clauses(g, trace):
        return CheckOutcome("bip_contrib", NOT_APPLICABLE, observed, trace)
    if not is_bipartite(g):
        trace.append("hypothesis failed: bipartite")
        return CheckOutcome("bip_contrib", NOT_APPLICABLE, observed, trace)
    trace.append("hypothesis: bipartite")
    c = contributions(g, dm)
    observed["c_min"] = min(c)
    observed["c_max"] = max(c)
    if g.n == 4 and g.m == 4:
        trace.append("exception: C4; asserting c(u) == 4 for all u")
        ok = all(x == 4 for x in c)
        return CheckOutcome("bip_contrib", NOT_APPLICABLE if ok else FAIL, observed, trace)
    trace.append("hypothesis: not C4")
    observed["bound"] = 8
    return CheckOutcome("bip_contrib", PASS if min(c) >= 8 else FAIL, observed, trace)


@register("bip_bound", "eta", "a bipartite 2-connected block other than C4, or two C4 blocks: eta >= 4n")
def check_bip_bound(g: Graph) -> CheckOutcome:
    dm = _require_connected(g)
    trace: list[str] = []
    bip_other = 0
    c4_blocks = 0
    for block in blocks(g).blocks:
        if len(block) < 3:
            continue
        sub = g.induced(block)
        if not is_bipartite(sub):
            continue
        if sub.n == 4 and sub.m == 4:
            c4_blocks += 1
        else:
            bip_other += 1
    observed = {"n": g.n, "bound": 4 * g.n, "bipartite_blocks_not_c4": bip_other, "c4_blocks": c4_blocks}
    if bip_other == 0 and c4_blocks < 2:
        trace.append("hypothesis failed: bipartite 2-connected block other than C4, or two C4 blocks")
        return CheckOutcome("bip_bound", NOT_APPLICABLE, observed, trace)
    trace.append("hypothesis: bipartite 2-connected block other than C4, or two C4 blocks")
    observed["eta"] = eta(g, dm)
    return CheckOutcome("bip_bound", PASS if observed["eta"] >= 4 * g.n else FAIL, observed, trace)


# girth

@register("girth_bound", "eta", "a triangle-free 2-connected block other than C5, or two C5 blocks: eta >= 2n")
def check_girth_bound(g: Graph) -> CheckOutcome:
    dm = _require_connected(g)
    trace: list[str] = []
    free_other = 0
    c5_blocks = 0
    for block in blocks(g).blocks:
        if len(block) < 3:
            continue
        if _is_cycle_block(g, block, 5):
            c5_blocks += 1
        elif girth(g.induced(block)) >= 4:
            free_other += 1
    observed = {"n": g.n, "bound": 2 * g.n, "triangle_free_blocks_not_c5": free_other, "c5_blocks": c5_blocks}
    if free_other == 0 and c5_blocks < 2:
        trace.append("hypothesis failed: triangle-free 2-connected block other than C5, or two C5 blocks")
        return CheckOutcome("girth_bound", NOT_APPLICABLE, observed, trace)
    trace.append("hypothesis: triangle-free 2-connected block other than C5, or two C5 blocks")
    observed["eta"] = eta(g, dm)
    return CheckOutcome("girth_bound", PASS if observed["eta"] >= 2 * g.n else FAIL, observed, trace)


@register("girth5_bound", "eta", "n >= 5, odd cycle, girth >= 5: eta >= 2n - 5, equality only on C5 with trees at <= 2 adjacent vertices")
def check_girth5_bound(g: Graph) -> CheckOutcome:
    dm = _require_connected(g)
    trace: list[str] = []
    observed = {"n": g.n, "bound": 2 * g.n - 5}
    if g.n < 5:
        trace.append("hypothesis failed: n >= 5")
        return CheckOutcome("girth5_bound", NOT_APPLICABLE, observed, trace)
    if is_bipartite(g):
        trace.append("hypothesis failed: odd cycle")
        return CheckOutcome("girth5_bound", NOT_APPLICABLE, observed, trace)
    if girth(g) < 5:
        trace.append("hypothesis failed: girth >= 5")
        return CheckOutcome("girth5_bound", NOT_APPLICABLE, observed, trace)
    trace.append("hypothesis: n >= 5, odd cycle, girth >= 5")
    value = eta(g, dm)
    family = families.is_c5_equality_family(g)
    observed["eta"] = value
    observed["equality_family"] = int(family)
    if value < observed["bound"]:
        return CheckOutcome("girth5_bound", FAIL, observed, trace)
    if (value == observed["bound"]) != family:
        trace.append("equality case does not match the C5-with-trees family")
        return CheckOutcome("girth5_bound", FAIL, observed, trace)
    return CheckOutcome("girth5_bound", PASS, observed, trace)


# revised index

def _non_bipartite_clause(g: Graph, trace: list[str]) -> bool:
    if is_bipartite(g):
        trace.append("hypothesis failed: non-bipartite")
        return False
    trace.append("hypothesis: connected, non-bipartite")
    return True


@register("revised_lemma", "eta4", "non-bipartite: 4eta* >= 4eta + n^2 + 2n + (n+2) sum(h(a) - 1)")
def check_revised_lemma(g: Graph) -> CheckOutcome:
    _require_connected(g)
    trace: list[str] = []
    observed: dict[str, int] = {"n": g.n}
    if not _non_bipartite_clause(g, trace):
        return CheckOutcome("revised_lemma", NOT_APPLICABLE, observed, trace)
    rep = full_report(g)
    n = g.n
    basic = 4 * rep.eta + n * n + 2 * n
    refined = basic + (n + 2) * sum(x - 1 for x in rep.h)
    observed.update(eta=rep.eta, eta4=rep.eta4, bound=basic, refined_bound=refined, h_min=min(rep.h))
    ok = rep.eta4 >= basic and rep.eta4 >= refined
    return CheckOutcome("revised_lemma", PASS if ok else FAIL, observed, trace)


@register("revised_floor", "eta4", "non-bipartite, not a tree with one vertex expanded into C3: 4eta* >= n^2 + 4n")
def check_revised_floor(g: Graph) -> CheckOutcome:
    _require_connected(g)
    trace: list[str] = []
    observed: dict[str, int] = {"n": g.n, "bound": g.n * g.n + 4 * g.n}
    if not _non_bipartite_clause(g, trace):
        return CheckOutcome("revised_floor", NOT_APPLICABLE, observed, trace)
    if families.is_c3_with_trees(g):
        trace.append("exception: tree with one vertex expanded into C3")
        return CheckOutcome("revised_floor", NOT_APPLICABLE, observed, trace)
    trace.append("hypothesis: not a C3-with-trees graph")
    rep = full_report(g)
    observed["eta4"] = rep.eta4
    return CheckOutcome("revised_floor", PASS if rep.eta4 >= observed["bound"] else FAIL, observed, trace)


@register("revised_equality", "eta4", "non-bipartite: 4eta* >= n^2 + 4n - 6, equality exactly on C3 with one tree")
def check_revised_equality(g: Graph) -> CheckOutcome:
    _require_connected(g)
    trace: list[str] = []
    n = g.n
    observed: dict[str, int] = {"n": n, "bound": n * n + 4 * n - 6}
    if not _non_bipartite_clause(g, trace):
        return CheckOutcome("revised_equality", NOT_APPLICABLE, observed, trace)
    rep = full_report(g)
    family = families.is_c3_with_one_tree(g)
    observed["eta4"] = rep.eta4
    observed["equality_family"] = int(family)
    if rep.eta4 < observed["bound"]:
        return CheckOutcome("revised_equality", FAIL, observed, trace)
    if (rep.eta4 == observed["bound"]) != family:
        trace.append("equality case does not match the C3-with-one-tree family")
        return CheckOutcome("revised_equality", FAIL, observed, trace)
    return CheckOutcome("revised_equality", PASS, observed, trace)


# lemmas

@register("induction_lemma", "delta_min", "removable dominated vertex u: eta(G) - eta(G - u) >= 2")
def check_induction_lemma(g: Graph) -> CheckOutcome:
    dm = _require_connected(g)
    trace: list[str] = []
    observed: dict[str, int] = {"n": g.n}
    if not _two_connected_clauses(g, trace):
        return CheckOutcome("induction_lemma", NOT_APPLICABLE, observed, trace)
    base = None
    deltas = []
    for u in range(g.n):
        if not has_dominated_pair(g, u):
            continue
        rest = g.remove_vertex(u)
        if not is_two_connected(rest) or is_complete(rest):
            continue
        if base is None:
            base = eta(g, dm)
        deltas.append(base - eta(rest))
    if not deltas:
        trace.append("hypothesis failed: no u with G - u 2-connected non-complete and N[u] inside some N[v]")
        return CheckOutcome("induction_lemma", NOT_APPLICABLE, observed, trace)
    trace.append(f"hypothesis: {len(deltas)} removable dominated vertices")
    observed.update(eta=base, delta_min=min(deltas), applicable_vertices=len(deltas), bound=2)
    return CheckOutcome("induction_lemma", PASS if min(deltas) >= 2 else FAIL, observed, trace)


@register("blockdecomp_lemma", "eta", "c_G(u) >= sum of per-block minima p_i, hence 2 eta >= n sum p_i")
def check_blockdecomp_lemma(g: Graph) -> CheckOutcome:
    dm = _require_connected(g)
    p_sum = 0
    for block in blocks(g).blocks:
        if len(block) >= 3:
            p_sum += min(contributions(g.induced(block)))
    c = contributions(g, dm)
    value = eta(g, dm)
    observed = {"eta": value, "p_sum": p_sum, "c_min": min(c), "twice_bound": g.n * p_sum}
    ok = min(c) >= p_sum and 2 * value >= g.n * p_sum
    return CheckOutcome("blockdecomp_lemma", PASS if ok else FAIL, observed, ["hypothesis: connected"])


def run_check(name: str, g: Graph, **options) -> CheckOutcome:
    return get_check(name)(g, **options)


# batch screens: settle provable outcomes in bulk, defer everything else

def _screen(settle):
    """Wrap ``settle(n, conn, two, complete, eta, options) -> (na_mask, pass_mask)``."""
    import numpy as np

    from .batch import screen_arrays

    def screen(records: list[bytes], report, options: dict) -> list[int]:
        by_width: dict[int, list[int]] = {}
        for i, record in enumerate(records):
            by_width.setdefault(len(record), []).append(i)
        pending: list[int] = []
        for idx in by_width.values():
            arrays = screen_arrays([records[i] for i in idx])
            if arrays is None:
                pending += idx
                continue
            n, _, conn, two, complete, values = arrays
            na, ok = settle(n, conn, two, complete, values, options)
            na &= conn
            ok &= conn & ~na
            report.record_bulk(NOT_APPLICABLE, np.zeros(int(na.sum()), dtype=np.int64))
            report.record_bulk(PASS, values[ok])
            rest = ~(na | ok)
            pending += [i for i, keep in zip(idx, rest) if keep]
        return sorted(pending)

    return screen


def _settle_main1(n, conn, two, complete, values, options):
    return ~two | complete, two & ~complete & (values >= 2 * n - 6)


def _settle_main3(n, conn, two, complete, values, options):
    # K_n^2 and K_n^(n-2) sit at 2n - 6, below the settled region
    return ~two | complete, two & ~complete & (values >= 2 * n - 5)


def _settle_conjecture4(relaxed_default: bool):
    def settle(n, conn, two, complete, values, options):
        relaxed = options.get("relaxed", relaxed_default)
        if not relaxed and n < 10:
            return conn.copy(), conn & False
        # every exception has eta <= 2n - 6, so eta >= 2n certifies the hypothesis
        return ~two, two & ~complete & (values >= 2 * n)
    return settle


def _attach_screens() -> None:
    import dataclasses

    for name, settle in (
        ("main1", _settle_main1),
        ("main3", _settle_main3),
        ("conjecture4", _settle_conjecture4(False)),
        ("conjecture4_relaxed", _settle_conjecture4(True)),
    ):
        REGISTRY[name] = dataclasses.replace(REGISTRY[name], screen=_screen(settle))


_attach_screens()
