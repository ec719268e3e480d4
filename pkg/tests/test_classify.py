from __future__ import annotations

import itertools
import json

import pytest

from ccrgraph.classify import (
    CCR,
    GCR_NOT_CCR,
    LEVELS,
    NOT_GCR,
    UNKNOWN,
    classify_graph,
    classify_product,
    parse_field_spec,
    product_intersection_size,
)
from ccrgraph.families import (
    binary_tree,
    canonical_fixtures,
    figure_eight,
    loop_with_exit,
    path_graph,
    small_multigraphs,
)
from ccrgraph.graph import TRIVIAL, scc_decompose
from ccrgraph.paths import LassoPath, orbit_intersection_size
from ccrgraph.topology import oracle_condition, orbit_representatives
from test_paths import brute_intersection

LEVEL_OF = {
    "binary_tree": CCR,
    "figure_eight": NOT_GCR,
    "loop_with_exit": GCR_NOT_CCR,
    "single_loop": CCR,
    "loop_with_entrance": CCR,
    "path_graph": CCR,
    "two_separate_loops": CCR,
}


@pytest.mark.parametrize("name", sorted(LEVEL_OF))
def test_fixture_levels(name):
    g = canonical_fixtures()[name]
    for method in ("structural", "automaton"):
        v = classify_graph(g, "complex", method)
        assert v.level == LEVEL_OF[name]
        assert v.field_status == "established" and not v.caveats


def test_acyclic_graphs_are_ccr():
    for g in small_multigraphs(3, 4):
        if set(scc_decompose(g).kinds) == {TRIVIAL}:
            assert classify_graph(g).level == CCR


def test_level_is_function_of_conditions():
    for g in small_multigraphs(3, 4):
        v = classify_graph(g)
        m, n = v.m_verdict.holds, v.n_verdict.holds
        assert not (m and not n)
        assert v.level == (CCR if m else GCR_NOT_CCR if n else NOT_GCR)


def test_witness_round_trip():
    for g in small_multigraphs(3, 4):
        v = classify_graph(g)
        if v.level == NOT_GCR:
            assert oracle_condition(g, "N", 6).holds is False
        elif v.level == GCR_NOT_CCR:
            w = v.witnesses["M"]
            x = LassoPath.from_json(g, w["x"])
            assert not orbit_intersection_size(g, x, w["v"]).is_finite


def test_field_caveat():
    v = classify_graph(binary_tree(2), "GF(7)")
    assert v.level == CCR
    assert v.field_status == UNKNOWN
    assert len(v.caveats) == 1 and "GF(7)" in v.caveats[0]
    assert parse_field_spec("complex").is_closed
    assert not parse_field_spec("QQ").is_closed
    with pytest.raises(ValueError):
        parse_field_spec("  ")


def test_verdict_json_shape():
    doc = classify_graph(loop_with_exit()).to_json()
    assert json.loads(json.dumps(doc)) == doc
    assert doc["level"] == GCR_NOT_CCR
    assert doc["condition_M"]["holds"] is False and doc["condition_N"]["holds"] is True
    assert "isotropy" in doc["isotropy_note"]


def test_product_monotonicity():
    fixtures = canonical_fixtures()
    for a, b in itertools.product(sorted(fixtures), repeat=2):
        v = classify_product([fixtures[a], fixtures[b]])
        expected = min(LEVEL_OF[a], LEVEL_OF[b], key=LEVELS.index)
        assert v.level == expected, (a, b)
        assert any("products" in c for c in v.caveats)
        assert [f.level for f in v.factors] == [LEVEL_OF[a], LEVEL_OF[b]]


def test_product_examples():
    tree, fig8 = binary_tree(2), figure_eight()
    assert classify_product([tree, tree]).level == CCR
    assert classify_product([tree, fig8]).level == NOT_GCR
    single = classify_product([loop_with_exit()])
    assert single.to_json() == classify_graph(loop_with_exit()).to_json()
    assert classify_product([tree, tree, path_graph(2)]).level == CCR
    with pytest.raises(ValueError):
        classify_product([])
    with pytest.raises(ValueError):
        classify_product([tree] * 4)


def test_tree_product_intersections_match_pair_brute_count():
    g = binary_tree(2)
    reps = orbit_representatives(g)
    for x1, x2 in itertools.product(reps, repeat=2):
        for v1, v2 in itertools.product(g.vertices, repeat=2):
            size = product_intersection_size([g, g], [x1, x2], [v1, v2])
            pairs = {(a, b) for a in brute_intersection(g, x1, v1, 4)
                     for b in brute_intersection(g, x2, v2, 4)}
            assert size.is_finite and size.n == len(pairs)


def test_product_with_infinite_factor():
    g, tree = figure_eight(), binary_tree(1)
    x = orbit_representatives(g)[0]
    t = orbit_representatives(tree)[0]
    size = product_intersection_size([g, tree], [x, t], ["w", "v"])
    assert not size.is_finite
    # an empty factor wins over an infinite one
    assert product_intersection_size([g, tree], [x, t], ["w", "1" if t.terminus == "0" else "0"]).n == 0
