"""Closed forms on named families, compared with direct computation."""

# %%
import itertools

from szeged_wiener import families
from szeged_wiener.invariants import eta, eta_star_q4

print("== 1. K_n^t: extremal at t = 2 and t = n - 2 ==")
for n in range(5, 10):
    row = [eta(families.build(families.knt(n, t))) for t in range(1, n - 1)]
    print(f"   n={n}: eta over t=1..{n - 2}: {row}   2n-6 = {2 * n - 6}")

# %%
print("== 2. C5 with pendant paths: eta = sum t_i t_(i+2) ==")
for sizes in [(1, 1, 1, 1, 1), (5, 1, 1, 1, 1), (2, 2, 1, 1, 1), (2, 1, 2, 1, 1), (3, 3, 3, 3, 3)]:
    g = families.build(families.ctrees(sizes))
    print(f"   sizes {sizes}: formula {families.eta_c5_trees(sizes)}, measured {eta(g)}, 2n-5 = {2 * g.n - 5}")

# %%
print("== 3. C3 with trees: the revised floor n^2 + 4n - 6 (quarter units) ==")
for sizes in itertools.combinations_with_replacement(range(1, 4), 3):
    g = families.build(families.ctrees(sizes))
    floor = g.n * g.n + 4 * g.n - 6
    flag = "equality" if eta_star_q4(g) == floor else ""
    print(f"   sizes {sizes}: 4 eta* = {eta_star_q4(g)}, floor {floor} {flag}")
