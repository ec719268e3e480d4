from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccrgraph.fields import GF, QQ
from ccrgraph.groups import cyclic, dihedral4, parse_group, preset, quaternion8, rotation_subgroup, symmetric3
from ccrgraph.linalg import identity, mat_add, mat_scale, zeros
from ccrgraph.repn import (
    MatrixAlgebraModule,
    ReprError,
    RepnLimits,
    algebra_basis,
    chop,
    clifford_check,
    commutant_dim,
    corner_simples_check,
    endo_dim,
    group_element_matrix,
    hom_dim,
    is_simple,
    matrix_amplification_check,
    regular_module,
    scalar_module,
    splitting_field,
)


def _linear_characters(G, F) -> int:
    """Count homomorphisms G -> F^* by brute force over generator images."""
    units = [a for a in F.elements() if a != F.zero]
    gens = G.generators
    count = 0
    for imgs in itertools.product(units, repeat=len(gens)):
        # extend along words in the generators; reject on conflict
        val = {G.identity: F.one}
        frontier = [G.identity]
        ok = True
        while frontier and ok:
            g = frontier.pop()
            for s, a in zip(gens, imgs):
                h = G.mul(s, g)
                v = F.mul(a, val[g])
                if h in val:
                    ok = val[h] == v
                    if not ok:
                        break
                else:
                    val[h] = v
                    frontier.append(h)
        count += ok
    return count


def _averaging(G, F, H):
    inv = F.inv(F.from_int(len(H)))
    e = zeros(F, G.order)
    for h in H:
        e = mat_add(F, e, group_element_matrix(G, F, h))
    return mat_scale(F, inv, e)


# -- construction ----------------------------------------------------------

def test_c2_over_f7_element_matrices():
    F, G = GF(7), cyclic(2)
    mats = [group_element_matrix(G, F, g) for g in range(2)]
    assert mats == [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
    M = regular_module(G, F)
    assert M.dimension == 2 and M.generators == [mats[1]]


def test_s3_regular_shape():
    M = regular_module(symmetric3(), GF(7))
    assert M.dimension == 6 and len(M.generators) == 2


def test_splitting_field_choice():
    assert splitting_field(cyclic(3), GF(5)).order == 25
    assert splitting_field(cyclic(3), GF(7)).order == 7
    assert splitting_field(cyclic(4), GF(3)).order == 9
    assert regular_module(cyclic(3), GF(5), split=True).field.order == 25
    with pytest.raises(ReprError):
        splitting_field(cyclic(3), QQ)
    with pytest.raises(ReprError):
        splitting_field(cyclic(3), GF(3))


def test_presets_and_parsing():
    for name, order in [("C5", 5), ("S3", 6), ("D4", 8), ("Q8", 8)]:
        assert preset(name).order == order
    G = symmetric3()
    assert parse_group(G.to_json()).order == 6
    assert len(rotation_subgroup(dihedral4())) == 4


def test_caps_are_configuration():
    small = RepnLimits(max_group_order=4, max_dim=4)
    with pytest.raises(ReprError):
        regular_module(symmetric3(), GF(7), limits=small)
    with pytest.raises(ReprError):
        chop(regular_module(cyclic(5), GF(11)), limits=small)
    with pytest.raises(ReprError):
        regular_module(cyclic(3), GF(3), require_semisimple=True)


# -- chop ------------------------------------------------------------------

def test_f7s3_chop():
    G, F = symmetric3(), GF(7)
    cs = chop(regular_module(G, F), seed=0)
    assert cs.multiset() == [(1, 1, 1), (1, 1, 1), (2, 1, 2)]
    # oracles: linear characters by brute force, and the commutant of each factor
    assert sum(1 for f in cs.factors if f.dimension == 1) == _linear_characters(G, F) == 2
    assert all(commutant_dim(f.module) == 1 for f in cs.factors)
    assert all(f.certified for f in cs.factors)


def test_f7c3_chop():
    cs = chop(regular_module(cyclic(3), GF(7)))
    assert cs.multiset() == [(1, 1, 1)] * 3
    assert _linear_characters(cyclic(3), GF(7)) == 3


def test_f3c4_has_non_split_factor():
    cs = chop(regular_module(cyclic(4), GF(3)))
    assert cs.multiset() == [(1, 1, 1), (1, 1, 1), (2, 2, 1)]
    two = next(f for f in cs.factors if f.dimension == 2)
    assert commutant_dim(two.module) == 2
    # over GF(9) the same group splits into linear factors
    assert chop(regular_module(cyclic(4), GF(3), split=True)).multiset() == [(1, 1, 1)] * 4


def test_q8_over_split_field():
    cs = chop(regular_module(quaternion8(), GF(3), split=True))
    assert cs.multiset() == [(1, 1, 1)] * 4 + [(2, 1, 2)]


def test_rationals():
    cs = chop(regular_module(symmetric3(), QQ))
    assert cs.multiset() == [(1, 1, 1), (1, 1, 1), (2, 1, 2)]


def test_simple_input_is_single_factor():
    M = scalar_module(GF(5))
    cs = chop(M)
    assert cs.multiset() == [(1, 1, 1)]
    assert cs.factors[0].module.generators == M.generators


@pytest.mark.parametrize("G,F", [
    (symmetric3(), GF(7)), (cyclic(4), GF(3)), (cyclic(5), GF(11)),
    (dihedral4(), GF(9)), (quaternion8(), GF(5)), (cyclic(6), GF(7)),
], ids=["F7S3", "F3C4", "F11C5", "F9D4", "F5Q8", "F7C6"])
def test_rechop_factors_and_bookkeeping(G, F):
    cs = chop(regular_module(G, F), seed=1)
    assert sum(f.dimension * f.multiplicity for f in cs.factors) == G.order
    # semisimple algebra: each factor is simple and re-chops to itself
    for f in cs.factors:
        again = chop(f.module, seed=2)
        assert again.multiset() == [(f.dimension, f.endo_dim, 1)]
        assert is_simple(f.module)
        # each simple of a semisimple group algebra occurs dim/endo times
        assert f.multiplicity == f.dimension // f.endo_dim


@pytest.mark.parametrize("G,p", [(symmetric3(), 5), (dihedral4(), 3), (quaternion8(), 3),
                                 (cyclic(6), 5), (cyclic(4), 5)])
def test_schur_over_splitting_field(G, p):
    cs = chop(regular_module(G, GF(p), split=True))
    assert all(f.endo_dim == 1 for f in cs.factors)


def test_hom_and_endo_match_commutant_oracle():
    for G, F in [(symmetric3(), GF(7)), (cyclic(4), GF(3)), (quaternion8(), GF(3))]:
        cs = chop(regular_module(G, F))
        for a in cs.factors:
            assert endo_dim(a.module) == commutant_dim(a.module)
            for b in cs.factors:
                expect = a.endo_dim if a is b else 0
                assert hom_dim(a.module, b.module) == expect


def test_endo_dim_rejects_non_simple():
    with pytest.raises(ReprError):
        endo_dim(regular_module(cyclic(3), GF(7)))


@given(st.integers(0, 2**16))
@settings(max_examples=15)
def test_chop_is_deterministic(seed):
    M = regular_module(symmetric3(), GF(7))
    a = json.dumps(chop(M, seed).to_json(), sort_keys=True)
    b = json.dumps(chop(M, seed).to_json(), sort_keys=True)
    assert a == b
    assert chop(M, seed).multiset() == [(1, 1, 1), (1, 1, 1), (2, 1, 2)]


# -- checks ----------------------------------------------------------------

def test_clifford_s3():
    G = symmetric3()
    r = clifford_check(G, rotation_subgroup(G), GF(7))
    assert r["passed"] and r["bound"] == 2 and r["max_dim"] == 2
    assert sorted(f["dimension"] for f in r["factors"]) == [1, 1, 2]


def test_clifford_d4():
    G = dihedral4()
    r = clifford_check(G, rotation_subgroup(G), GF(9))
    assert r["passed"] and r["bound"] == 2 and r["max_dim"] == 2


def test_clifford_abelian_whole_group():
    G = cyclic(5)
    r = clifford_check(G, range(5), GF(11))
    assert r["passed"] and r["bound"] == 1 and r["max_dim"] == 1


def test_clifford_preconditions():
    G = symmetric3()
    transposition = next(g for g in range(6) if G.element_order(g) == 2)
    with pytest.raises(ReprError, match="normal"):
        clifford_check(G, (G.identity, transposition), GF(7))
    with pytest.raises(ReprError, match="characteristic"):
        clifford_check(G, rotation_subgroup(G), GF(3))
    with pytest.raises(ReprError, match="not a subgroup"):
        clifford_check(G, (G.identity, 1, 2, 3), GF(7))
    with pytest.raises(ReprError, match="endo_dim 2"):
        clifford_check(cyclic(4), range(4), GF(3))
    # the same input passes once the field is enlarged
    assert clifford_check(cyclic(4), range(4), GF(3), split=True)["passed"]


def test_amplification_f5c2():
    r = matrix_amplification_check(regular_module(cyclic(2), GF(5)), 3)
    assert r["passed"]
    assert [f["dimension"] for f in r["base_factors"]] == [1, 1]
    assert [f["dimension"] for f in r["amplified_factors"]] == [3, 3]


def test_amplification_scalar():
    r = matrix_amplification_check(scalar_module(GF(7)), 2)
    assert r["passed"] and r["expected"] == [[2, 1, 1]]


def test_amplification_preserves_endo():
    r = matrix_amplification_check(regular_module(cyclic(4), GF(3)), 2)
    assert r["passed"]
    assert [2, 2] in [[f["dimension"], f["endo_dim"]] for f in r["base_factors"]]
    assert [4, 2] in [[f["dimension"], f["endo_dim"]] for f in r["amplified_factors"]]


def test_amplification_caps():
    with pytest.raises(ReprError):
        matrix_amplification_check(scalar_module(GF(7)), 5)
    with pytest.raises(ReprError):
        matrix_amplification_check(regular_module(cyclic(3), GF(7)), 1,
                                   limits=RepnLimits(max_algebra_dim=2))


def _m2(F):
    E12 = [[F.zero, F.one], [F.zero, F.zero]]
    E21 = [[F.zero, F.zero], [F.one, F.zero]]
    return MatrixAlgebraModule(F, [E12, E21], 2, name="M2")


def test_corner_matrix_unit():
    F = GF(5)
    M = _m2(F)
    assert len(algebra_basis(M)) == 4
    r = corner_simples_check(M, [[1, 0], [0, 0]])
    assert r["passed"] and r["corner_module_dim"] == 1
    assert r["factors"] == [{"dimension": 2, "multiplicity": 1, "endo_dim": 1, "corner_dim": 1,
                             "corner_simple": True, "corner_endo_dim": 1}]


def test_corner_s3_averaging():
    G, F = symmetric3(), GF(7)
    e = _averaging(G, F, rotation_subgroup(G))
    r = corner_simples_check(regular_module(G, F), e)
    assert r["passed"] and r["bookkeeping"]
    # e kills the 2-dimensional simple; the corner is the two linear characters
    assert sorted(f["corner_dim"] for f in r["factors"]) == [0, 1, 1]
    assert r["corner_module_dim"] == 2


def test_corner_identity():
    F = GF(7)
    M = regular_module(symmetric3(), F)
    r = corner_simples_check(M, identity(F, 6))
    assert r["passed"]
    assert [(f["dimension"], f["corner_dim"]) for f in r["factors"]] == [(1, 1), (1, 1), (2, 2)]


def test_corner_rejects_non_idempotent():
    F = GF(5)
    with pytest.raises(ReprError):
        corner_simples_check(_m2(F), [[2, 0], [0, 0]])
