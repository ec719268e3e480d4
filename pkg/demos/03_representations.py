"""Composition factors, Clifford bounds, amplification and corners.

Run with ``python3 demos/03_representations.py``.
"""
# %%
from ccrgraph.fields import GF
from ccrgraph.groups import cyclic, dihedral4, rotation_subgroup, symmetric3
from ccrgraph.repn import (
    chop,
    clifford_check,
    matrix_amplification_check,
    regular_module,
)

# %% [markdown]
# The regular module of S3 over GF(7): two linear characters and the
# two-dimensional simple twice.

# %%
cs = chop(regular_module(symmetric3(), GF(7)))
for f in cs.factors:
    print(f"dim {f.dimension}  mult {f.multiplicity}  endo {f.endo_dim}")

# %% [markdown]
# GF(3) does not split C4: one factor has a two-dimensional commutant.
# Enlarging to GF(9) repairs it.

# %%
print(chop(regular_module(cyclic(4), GF(3))).multiset())
print(chop(regular_module(cyclic(4), GF(3), split=True)).multiset())

# %% [markdown]
# Simple modules are bounded by the index of a normal abelian subgroup.

# %%
for G, F in [(symmetric3(), GF(7)), (dihedral4(), GF(9))]:
    r = clifford_check(G, rotation_subgroup(G), F)
    print(G.name, F.name, "max dim", r["max_dim"], "bound", r["bound"], r["passed"])

# %% [markdown]
# Matrix amplification multiplies every simple dimension by n.

# %%
r = matrix_amplification_check(regular_module(cyclic(2), GF(5)), 3)
print(r["expected"], r["passed"])
