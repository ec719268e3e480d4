"""Named fixture graphs and the exhaustive family of small multigraphs."""

from __future__ import annotations

import itertools
from typing import Iterator

from .graph import Graph

__all__ = [
    "single_loop",
    "loop_with_entrance",
    "figure_eight",
    "loop_with_exit",
    "path_graph",
    "binary_tree",
    "two_separate_loops",
    "canonical_fixtures",
    "small_multigraphs",
]


def single_loop() -> Graph:
    return Graph.from_edges(["w"], [("c", "w", "w")])


def loop_with_entrance() -> Graph:
    """Loop ``c`` at ``w`` and an edge ``a`` with ``rng(a)=v``, ``src(a)=w``."""
    return Graph.from_edges(["v", "w"], [("a", "w", "v"), ("c", "w", "w")])


def figure_eight() -> Graph:
    return Graph.from_edges(["w"], [("e", "w", "w"), ("f", "w", "w")])


def loop_with_exit() -> Graph:
    """Loop ``c`` at ``w`` whose exit ``x`` leads to the terminus ``t``."""
    return Graph.from_edges(["w", "t"], [("c", "w", "w"), ("x", "t", "w")])


def path_graph(n: int = 3) -> Graph:
    """``u0 -> u1 -> ... -> u{n-1}`` in continuation order; the last vertex is
    a terminus."""
    vs = [f"u{i}" for i in range(n)]
    return Graph.from_edges(vs, [(f"p{i}", vs[i + 1], vs[i]) for i in range(n - 1)])


def binary_tree(depth: int = 2) -> Graph:
    """Full rooted binary tree truncated at ``depth`` levels below the root
    ``v``.  Edges point from child (src) to parent (rng), so boundary paths
    start at the root and walk down to a leaf."""
    vertices = ["v"]
    edges = []
    level = ["v"]
    for _ in range(depth):
        nxt = []
        for parent in level:
            for side in "01":
                child = side if parent == "v" else parent + side
                vertices.append(child)
                edges.append((f"e{child}", child, parent))
                nxt.append(child)
        level = nxt
    return Graph.from_edges(vertices, edges)


def two_separate_loops() -> Graph:
    return Graph.from_edges(["a", "b"], [("c", "a", "a"), ("d", "b", "b")])


def canonical_fixtures() -> dict[str, Graph]:
    return {
        "binary_tree": binary_tree(2),
        "figure_eight": figure_eight(),
        "loop_with_exit": loop_with_exit(),
        "single_loop": single_loop(),
        "loop_with_entrance": loop_with_entrance(),
        "path_graph": path_graph(3),
        "two_separate_loops": two_separate_loops(),
    }


def _canonical(n: int, arcs: tuple[tuple[int, int], ...]) -> tuple:
    return min(
        tuple(sorted((p[a], p[b]) for a, b in arcs))
        for p in itertools.permutations(range(n))
    )


def small_multigraphs(max_vertices: int = 3, max_edges: int = 4) -> Iterator[Graph]:
    """Every directed multigraph (loops and parallel edges allowed) with
    1..max_vertices vertices and 0..max_edges edges, one per isomorphism
    class.  Edge ids are ``e0, e1, ...`` in the canonical arc order."""
    for n in range(1, max_vertices + 1):
        pairs = [(a, b) for a in range(n) for b in range(n)]
        seen = set()
        for m in range(max_edges + 1):
            for arcs in itertools.combinations_with_replacement(pairs, m):
                key = _canonical(n, arcs)
                if key in seen:
                    continue
                seen.add(key)
                yield Graph.from_edges(
                    [f"v{i}" for i in range(n)],
                    [(f"e{k}", f"v{s}", f"v{r}") for k, (s, r) in enumerate(key)],
                )
