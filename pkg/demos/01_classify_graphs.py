"""Deciding CCR / GCR for small directed graphs.

Run with ``python3 demos/01_classify_graphs.py``.
"""
# %%
from ccrgraph.classify import classify_graph, classify_product
from ccrgraph.families import binary_tree, canonical_fixtures, figure_eight, loop_with_exit
from ccrgraph.paths import orbit_intersection_size, terminus_path
from ccrgraph.topology import check_condition_M, oracle_condition

# %% [markdown]
# Every canonical fixture, with both deciders.

# %%
for name, g in canonical_fixtures().items():
    s = classify_graph(g, method="structural").level
    a = classify_graph(g, method="automaton").level
    print(f"{name:20s} {s:12s} automaton agrees: {s == a}")

# %% [markdown]
# The loop with an exit fails condition M: the terminus orbit meets Z(w)
# infinitely often, once for each number of turns around the loop.

# %%
g = loop_with_exit()
m = check_condition_M(g)
print(m.witness)
print(orbit_intersection_size(g, terminus_path(g, "t"), "w"))
print("oracle:", oracle_condition(g, "M", 6).holds)

# %% [markdown]
# Products take the weakest level of their factors.

# %%
print(classify_product([binary_tree(2), binary_tree(2)]).level)
print(classify_product([binary_tree(2), figure_eight()]).level)

# %% [markdown]
# Over a field that is not declared uncountable and algebraically closed the
# verdict carries a caveat.

# %%
v = classify_graph(binary_tree(2), "GF(7)")
print(v.level, "|", v.field_status)
