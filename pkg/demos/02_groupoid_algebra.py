"""Convolution algebras of finite groupoids.

Run with ``python3 demos/02_groupoid_algebra.py``.
"""
# %%
from fractions import Fraction

from ccrgraph.groupoid import (
    SteinbergElement,
    convolve,
    convolve_direct,
    endo_dim_orbit,
    fixture_groupoids,
    matrix_iso,
    transitive_groupoid,
)
from ccrgraph.groups import cyclic

# %% [markdown]
# The pair groupoid on two objects next to a copy of C2.

# %%
G = fixture_groupoids()["pair2+C2"]
print(G.arrows)
f = SteinbergElement(G, {"0.1<-1": 1, "0.2<-1": Fraction(1, 2), "1.r1": 3})
g = SteinbergElement(G, {"0.1<-2": 2, "0.1<-1": -1, "1.r1": Fraction(2, 3), "1.r0": 1})
fg = convolve(f, g)
print(fg.to_json())
print("direct double loop agrees:", fg == convolve_direct(f, g))

# %% [markdown]
# A transitive groupoid is a matrix algebra over its isotropy group algebra.

# %%
T = transitive_groupoid(2, cyclic(2))
print(matrix_iso(T).verify())

# %% [markdown]
# Orbit modules have scalar endomorphisms.

# %%
for name, H in fixture_groupoids().items():
    print(name, [endo_dim_orbit(H, o[0]) for o in H.orbits()])
