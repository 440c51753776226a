"""Tour of the Szeged-Wiener difference on a few small graphs."""

# %%
from szeged_wiener.graph_core import Graph, all_pairs_distances, encode_graph6
from szeged_wiener.invariants import edge_splits, eta, full_report, good_count

print("== 1. the five-cycle ==")
c5 = Graph.cycle(5)
rep = full_report(c5)
print("graph6:", encode_graph6(c5).decode())
print("W =", rep.W, " Sz =", rep.Sz, " eta = Sz - W =", rep.eta)
for split in edge_splits(c5):
    print("   edge", split.edge, "closer to u:", split.n_u, "closer to v:", split.n_v, "tied:", split.n_0)

# %%
print("== 2. good edges for a pair at distance 2 ==")
dm = all_pairs_distances(c5)
print("g(0, 2) =", good_count(c5, dm, 0, 2), "against d(0, 2) =", dm.d[0][2])
print("per-vertex contributions c(a):", rep.c, "  sum / 2 =", sum(rep.c) // 2)

# %%
print("== 3. revised index in quarter units ==")
k3 = Graph.complete(3)
r3 = full_report(k3)
print("K3: 4 Sz* =", r3.Sz4, " 4 eta* =", r3.eta4, " i.e. eta* =", r3.eta4 / 4)

# %%
print("== 4. complete graphs are flat, one missing edge is not ==")
for n in range(3, 8):
    k = Graph.complete(n)
    dent = Graph.from_edges(n, [e for e in k.edges() if e != (0, 1)])
    print(f"   n={n}: eta(K_n) = {eta(k)}, eta(K_n minus an edge) = {eta(dent)}")
