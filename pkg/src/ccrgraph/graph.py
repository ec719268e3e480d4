"""Finite directed multigraphs in the range/source convention used for
boundary paths.

A path ``e1 e2 ... en`` is composable when ``src(e_i) == rng(e_{i+1})``.
Its range is ``rng(e1)`` and its source is ``src(en)``.  *Continuing* a path
means appending an edge ``e`` with ``rng(e)`` equal to the current source, so
a boundary path read left to right walks every edge from its range vertex to
its source vertex.  Everything in this module (reachability, SCCs, the
condensation DAG) is stated in that continuation orientation.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import networkx as nx

__all__ = [
    "Edge",
    "Graph",
    "GraphError",
    "SccDecomposition",
    "parse_graph",
    "scc_decompose",
    "reaches",
    "termini",
    "to_dot",
    "condensation_dot",
]

TRIVIAL = "trivial"
SIMPLE_CYCLE = "simple-cycle"
BRANCHED = "branched"


class GraphError(ValueError):
    """Raised for malformed graph documents and integrity violations."""


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    rng: str


@dataclass(frozen=True)
class Graph:
    """Immutable finite directed multigraph.

    Vertex and edge ids are opaque strings.  Loops and parallel edges are
    allowed.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    _by_id: Mapping[str, Edge] = field(init=False, repr=False, compare=False)
    _out: Mapping[str, tuple[Edge, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex id")
        vset = set(self.vertices)
        by_id: dict[str, Edge] = {}
        for e in self.edges:
            if e.id in by_id:
                raise GraphError(f"duplicate edge id {e.id!r}")
            for end in (e.src, e.rng):
                if end not in vset:
                    raise GraphError(f"edge {e.id!r} references unknown vertex {end!r}")
            by_id[e.id] = e
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.rng].append(e)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(
            self, "_out", {v: tuple(sorted(es, key=lambda e: e.id)) for v, es in out.items()}
        )

    @classmethod
    def from_edges(
        cls, vertices: Iterable[str], edges: Iterable[tuple[str, str, str]]
    ) -> "Graph":
        """Build from ``(id, src, rng)`` triples."""
        return cls(tuple(vertices), tuple(Edge(i, s, r) for i, s, r in edges))

    def edge(self, eid: str) -> Edge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise GraphError(f"unknown edge {eid!r}") from None

    def src(self, eid: str) -> str:
        return self.edge(eid).src

    def rng(self, eid: str) -> str:
        return self.edge(eid).rng

    def continuations(self, v: str) -> tuple[Edge, ...]:
        """Edges that may follow a path whose source is ``v``."""
        self._check_vertex(v)
        return self._out[v]

    def is_terminus(self, v: str) -> bool:
        return not self.continuations(v)

    def is_path(self, edges: Sequence[str]) -> bool:
        try:
            es = [self.edge(e) for e in edges]
        except GraphError:
            return False
        return all(a.src == b.rng for a, b in zip(es, es[1:]))

    def check_path(self, edges: Sequence[str]) -> None:
        es = [self.edge(e) for e in edges]
        for a, b in zip(es, es[1:]):
            if a.src != b.rng:
                raise GraphError(f"edges {a.id!r} and {b.id!r} are not composable")

    def _check_vertex(self, v: str) -> None:
        if v not in self._out:
            raise GraphError(f"unknown vertex {v!r}")

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "src": e.src, "rng": e.rng} for e in self.edges],
        }

    def walk_digraph(self) -> nx.MultiDiGraph:
        """Multigraph with an arc ``rng(e) -> src(e)`` for every edge."""
        d = nx.MultiDiGraph()
        d.add_nodes_from(self.vertices)
        for e in self.edges:
            d.add_edge(e.rng, e.src, key=e.id)
        return d


def parse_graph(document: str | Mapping) -> Graph:
    """Validate a graph document (JSON text or already-decoded mapping)."""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise GraphError(f"malformed JSON: {exc}") from None
    if not isinstance(document, Mapping):
        raise GraphError("graph document must be an object")
    extra = set(document) - {"vertices", "edges"}
    if extra:
        raise GraphError(f"unexpected keys {sorted(extra)}")
    vertices = document.get("vertices")
    edges = document.get("edges", [])
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphError("'vertices' must be a list of strings")
    if not isinstance(edges, list):
        raise GraphError("'edges' must be a list")
    triples = []
    for item in edges:
        if not isinstance(item, Mapping) or set(item) != {"id", "src", "rng"}:
            raise GraphError(f"edge entry must have exactly id/src/rng: {item!r}")
        if not all(isinstance(item[k], str) for k in ("id", "src", "rng")):
            raise GraphError(f"edge fields must be strings: {item!r}")
        triples.append((item["id"], item["src"], item["rng"]))
    return Graph.from_edges(vertices, triples)


def termini(g: Graph) -> tuple[str, ...]:
    return tuple(v for v in g.vertices if g.is_terminus(v))


def reaches(g: Graph, a: str, b: str) -> bool:
    """True iff some (possibly empty) path has range ``a`` and source ``b``."""
    g._check_vertex(a)
    g._check_vertex(b)
    seen = {a}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            return True
        for e in g.continuations(u):
            if e.src not in seen:
                seen.add(e.src)
                queue.append(e.src)
    return False


def reachable_set(g: Graph, starts: Iterable[str]) -> frozenset[str]:
    seen = set(starts)
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for e in g.continuations(u):
            if e.src not in seen:
                seen.add(e.src)
                queue.append(e.src)
    return frozenset(seen)


@dataclass(frozen=True)
class SccDecomposition:
    """Strongly connected components in continuation orientation.

    ``components`` are listed in topological order of the condensation
    (a component only continues into components with a larger index).
    """

    components: tuple[frozenset[str], ...]
    kinds: tuple[str, ...]
    internal_edges: tuple[tuple[str, ...], ...]
    condensation: frozenset[tuple[int, int]]
    component_of: Mapping[str, int]

    def kind_of(self, v: str) -> str:
        return self.kinds[self.component_of[v]]

    def exits(self, g: Graph, index: int) -> tuple[str, ...]:
        """Continuation edges leaving component ``index``."""
        comp = self.components[index]
        return tuple(
            sorted(e.id for e in g.edges if e.rng in comp and e.src not in comp)
        )


def scc_decompose(g: Graph) -> SccDecomposition:
    walk = g.walk_digraph()
    cond = nx.condensation(walk)
    order = list(nx.lexicographical_topological_sort(
        cond, key=lambda n: min(cond.nodes[n]["members"])))
    relabel = {old: new for new, old in enumerate(order)}
    components = tuple(frozenset(cond.nodes[n]["members"]) for n in order)
    component_of = {v: i for i, comp in enumerate(components) for v in comp}
    internal: list[list[str]] = [[] for _ in components]
    arcs = set()
    for e in g.edges:
        a, b = component_of[e.rng], component_of[e.src]
        if a == b:
            internal[a].append(e.id)
        else:
            arcs.add((a, b))
    kinds = []
    for comp, inner in zip(components, internal):
        if not inner:
            kinds.append(TRIVIAL)
        elif len(inner) == len(comp):
            kinds.append(SIMPLE_CYCLE)
        else:
            kinds.append(BRANCHED)
    assert all(relabel[a] < relabel[b] for a, b in cond.edges)
    return SccDecomposition(
        components=components,
        kinds=tuple(kinds),
        internal_edges=tuple(tuple(sorted(i)) for i in internal),
        condensation=frozenset(arcs),
        component_of=component_of,
    )


def _dot_id(s: str) -> str:
    return json.dumps(s)


def to_dot(g: Graph) -> str:
    lines = [
        "// arrows are drawn from rng(e) to src(e): the direction in which",
        "// a boundary path continues",
        "digraph G {",
    ]
    for v in g.vertices:
        lines.append(f"  {_dot_id(v)};")
    for e in g.edges:
        lines.append(f"  {_dot_id(e.rng)} -> {_dot_id(e.src)} [label={_dot_id(e.id)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


_KIND_COLOURS = {TRIVIAL: "gray", SIMPLE_CYCLE: "forestgreen", BRANCHED: "firebrick"}


def condensation_dot(g: Graph, scc: SccDecomposition | None = None) -> str:
    scc = scc or scc_decompose(g)
    lines = [
        "// condensation DAG; arrows follow continuation (rng -> src)",
        "// colours: gray=trivial, green=simple-cycle, red=branched",
        "digraph condensation {",
    ]
    for i, (comp, kind) in enumerate(zip(scc.components, scc.kinds)):
        label = ",".join(sorted(comp))
        lines.append(
            f"  c{i} [label={_dot_id(label + chr(10) + kind)}, "
            f"color={_KIND_COLOURS[kind]}, style=filled, fillcolor=white];"
        )
    for a, b in sorted(scc.condensation):
        lines.append(f"  c{a} -> c{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
