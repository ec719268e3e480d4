from __future__ import annotations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from ccrgraph.families import (
    binary_tree,
    figure_eight,
    loop_with_entrance,
    loop_with_exit,
    single_loop,
    small_multigraphs,
)
from ccrgraph.graph import Graph
from ccrgraph.paths import (
    Cardinality,
    LassoPath,
    PathError,
    connector_automaton,
    cycle_path,
    elementary_cycles,
    enumerate_boundary_prefixes,
    expand,
    lasso_normalize,
    min_rotation,
    orbit_intersection_size,
    primitive_root,
    rng_of,
    rotations,
    shift,
    tail_equivalent,
    terminus_path,
)
from ccrgraph.topology import orbit_representatives
from strategies import graphs


# -- an independent enumerator for Z(v) ∩ Orb_x ---------------------------

def paths_from(g: Graph, v: str, max_len: int):
    level = [(v, ())]
    for _ in range(max_len + 1):
        nxt = []
        for at, word in level:
            yield at, word
            nxt += [(e.src, word + (e.id,)) for e in g.continuations(at)]
        level = nxt


def brute_intersection(g: Graph, x: LassoPath, v: str, max_len: int) -> set[LassoPath]:
    """Elements ``rho . tail`` of the orbit of ``x`` with ``|rho| <= max_len``
    and ``rng = v``, where ``tail`` is a rotation of the cycle of ``x`` or
    the terminus of ``x``."""
    out = set()
    for at, rho in paths_from(g, v, max_len):
        if x.cycle is None:
            if at == x.terminus:
                out.add(lasso_normalize(g, rho, None, terminus=at))
        else:
            for rot in rotations(x.cycle):
                if g.rng(rot[0]) == at:
                    out.add(lasso_normalize(g, rho, rot))
    return out


# -- lasso normal form ------------------------------------------------------

def test_normalize_absorbs_trailing_cycle_edges():
    g = single_loop()
    assert lasso_normalize(g, ("c", "c"), ("c",)) == LassoPath((), ("c",))
    assert lasso_normalize(g, (), ("c", "c", "c")) == LassoPath((), ("c",))


def test_normalize_keeps_entrance():
    g = loop_with_entrance()
    x = lasso_normalize(g, ("a",), ("c",))
    assert x == LassoPath(("a",), ("c",))
    assert str(x) == "a·(c)^∞"
    assert rng_of(g, x) == "v"


def test_terminus_paths():
    g = loop_with_exit()
    t = terminus_path(g, "t")
    assert str(t) == "[t]"
    assert lasso_normalize(g, ("c", "x")) == LassoPath(("c", "x"), None, "t")
    with pytest.raises(PathError):
        lasso_normalize(g, ("c",))          # ends at w, which is not a terminus
    with pytest.raises(PathError):
        terminus_path(g, "w")


def test_rejects_bad_cycles():
    g = loop_with_exit()
    with pytest.raises(PathError):
        lasso_normalize(g, (), ("x",))
    with pytest.raises(PathError):
        lasso_normalize(g, (), ())


def test_word_helpers():
    assert primitive_root(("a", "b", "a", "b")) == ("a", "b")
    assert min_rotation(("c", "a", "b")) == ("a", "b", "c")
    assert rotations(("a", "b")) == [("a", "b"), ("b", "a")]


def test_shift_past_terminus_fails():
    g = loop_with_exit()
    with pytest.raises(PathError):
        shift(g, lasso_normalize(g, ("c", "x")), 3)


@st.composite
def lassos(draw):
    g = draw(graphs(max_vertices=3, max_edges=5, min_edges=1))
    cycles = elementary_cycles(g)
    assume(cycles)
    c = draw(st.sampled_from(cycles))
    k = draw(st.integers(1, 3))
    cycle = c * k
    # walk backwards from the cycle to build a prefix
    prefix: tuple[str, ...] = ()
    at = g.rng(cycle[0])
    for _ in range(draw(st.integers(0, 4))):
        into = [e for e in g.edges if e.src == at]
        if not into:
            break
        e = draw(st.sampled_from(into))
        prefix = (e.id,) + prefix
        at = e.rng
    return g, prefix, cycle


@given(lassos())
def test_normal_form_is_canonical(data):
    g, prefix, cycle = data
    x = lasso_normalize(g, prefix, cycle)
    # idempotent, same infinite word, primitive cycle, no absorbable edge
    assert lasso_normalize(g, x.prefix, x.cycle) == x
    n = len(prefix) + 3 * len(cycle)
    assert expand(x, n) == (prefix + cycle * 3)[:n]
    assert primitive_root(x.cycle) == x.cycle
    assert not x.prefix or x.prefix[-1] != x.cycle[-1]
    # unrolling one more period gives the same canonical form
    assert lasso_normalize(g, prefix + cycle, cycle) == x


@given(lassos(), st.integers(0, 8))
def test_shift_agrees_with_expansion(data, n):
    g, prefix, cycle = data
    x = lasso_normalize(g, prefix, cycle)
    y = shift(g, x, n)
    assert expand(y, 12) == expand(x, n + 12)[n:]
    assert tail_equivalent(x, y)


# -- connector automaton ----------------------------------------------------

def test_single_loop_connector():
    g = single_loop()
    aut = connector_automaton(g, cycle_path(g, ("c",)), "w")
    words = list(aut.words())
    assert [aut.connector(w) for w in words] == [()]
    assert orbit_intersection_size(g, cycle_path(g, ("c",)), "w") == Cardinality.finite(1)


def test_figure_eight_is_infinite():
    g = figure_eight()
    size = orbit_intersection_size(g, cycle_path(g, ("e",)), "w")
    assert not size.is_finite
    assert size.pump and g.is_path(size.pump)


def test_loop_with_exit_counts():
    g = loop_with_exit()
    t = terminus_path(g, "t")
    assert not orbit_intersection_size(g, t, "w").is_finite
    assert orbit_intersection_size(g, t, "t") == Cardinality.finite(1)
    assert orbit_intersection_size(g, cycle_path(g, ("c",)), "t") == Cardinality.finite(0)


def test_tree_prefixes():
    g = binary_tree(2)
    prefixes = enumerate_boundary_prefixes(g, 2, "v")
    assert len(prefixes) == 7
    assert sum(p.complete for p in prefixes) == 4
    for leaf in ("00", "01", "10", "11"):
        assert orbit_intersection_size(g, terminus_path(g, leaf), "v") == Cardinality.finite(1)


def test_automaton_words_decode_into_the_orbit():
    g = loop_with_exit()
    x = terminus_path(g, "t")
    aut = connector_automaton(g, x, "w")
    decoded = [aut.decode(w) for w in aut.words(max_length=4)]
    assert len(set(decoded)) == len(decoded)
    assert all(tail_equivalent(d, x) and rng_of(g, d) == "w" for d in decoded)
    assert aut.accepts(("c", "c", "x")) and not aut.accepts(("x", "c"))


def _path_count(g: Graph, v: str, n: int) -> int:
    counts = {v: 1}
    total = 1
    for _ in range(n):
        nxt: dict[str, int] = {}
        for at, c in counts.items():
            for e in g.continuations(at):
                nxt[e.src] = nxt.get(e.src, 0) + c
        counts = nxt
        total += sum(counts.values())
    return total


def _check_against_brute(g: Graph):
    for x in orbit_representatives(g):
        for v in g.vertices:
            size = orbit_intersection_size(g, x, v)
            # branching graphs explode; a window of 4 still exceeds any pump
            lo, hi = (8, 12) if _path_count(g, v, 12) < 3000 else (4, 8)
            small = brute_intersection(g, x, v, lo)
            big = brute_intersection(g, x, v, hi)
            if size.is_finite:
                assert len(small) == len(big) == size.n, (g, x, v)
            else:
                assert len(big) > len(small), (g, x, v)


def test_intersection_sizes_match_brute_force_on_family():
    for g in small_multigraphs(3, 4):
        _check_against_brute(g)


@given(graphs(max_vertices=3, max_edges=4))
def test_automaton_words_biject_with_brute_elements(g: Graph):
    for x in orbit_representatives(g):
        for v in g.vertices:
            aut = connector_automaton(g, x, v)
            k = len(x.cycle or ())
            words = list(aut.words(max_length=5 + k))
            decoded = {aut.decode(w) for w in words}
            assert len(decoded) == len(words)
            brute = brute_intersection(g, x, v, 5)
            assert {d for d in decoded if len(d.prefix) <= 5} == brute
