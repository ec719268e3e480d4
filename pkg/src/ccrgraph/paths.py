"""Boundary paths of a finite graph.

Every boundary path handled here is either *eventually periodic*
(``prefix . cycle^inf``) or a finite path ending at a terminus.  Both are
stored as a :class:`LassoPath` in a canonical form, so equality of boundary
paths is equality of the dataclass.

The orbit of ``x`` (tail-equivalence class) meets a cylinder ``Z(v)`` in a
set that is in bijection with the language of a finite automaton, see
:func:`connector_automaton`.  Finiteness of that set is decided exactly by
looking for a cycle in the trimmed automaton.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering
from typing import Iterator, Sequence

from .graph import Graph

__all__ = [
    "LassoPath",
    "PathError",
    "Cardinality",
    "BoundaryPrefix",
    "ConnectorAutomaton",
    "lasso_normalize",
    "cycle_path",
    "terminus_path",
    "shift",
    "tail_equivalent",
    "expand",
    "rng_of",
    "primitive_root",
    "min_rotation",
    "is_rotation",
    "enumerate_boundary_prefixes",
    "connector_automaton",
    "orbit_intersection_size",
    "elementary_cycles",
]

Word = tuple[str, ...]


class PathError(ValueError):
    pass


@total_ordering
@dataclass(frozen=True)
class LassoPath:
    """``prefix . cycle^inf`` when ``cycle`` is set, else the finite path
    ``prefix`` ending at ``terminus``."""

    prefix: Word
    cycle: Word | None = None
    terminus: str | None = None

    @property
    def is_periodic(self) -> bool:
        return self.cycle is not None

    def sort_key(self) -> tuple:
        return (self.prefix + (self.cycle or ()), self.terminus or "")

    def __lt__(self, other: "LassoPath") -> bool:
        return (self.sort_key(), len(self.prefix)) < (other.sort_key(), len(other.prefix))

    def to_json(self) -> dict:
        return {
            "prefix": list(self.prefix),
            "cycle": list(self.cycle) if self.cycle is not None else None,
            "terminus": self.terminus,
        }

    @classmethod
    def from_json(cls, g: Graph, doc: dict) -> "LassoPath":
        cycle = doc.get("cycle")
        return lasso_normalize(
            g,
            tuple(doc.get("prefix") or ()),
            tuple(cycle) if cycle is not None else None,
            terminus=doc.get("terminus"),
        )

    def __str__(self) -> str:
        head = "·".join(self.prefix)
        if self.cycle is not None:
            tail = "(" + "·".join(self.cycle) + ")^∞"
            return f"{head}·{tail}" if head else tail
        return (head + "·" if head else "") + f"[{self.terminus}]"


def primitive_root(word: Word) -> Word:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


def rotations(word: Word) -> list[Word]:
    return [word[i:] + word[:i] for i in range(len(word))]


def min_rotation(word: Word) -> Word:
    return min(rotations(word))


def is_rotation(a: Word, b: Word) -> bool:
    return len(a) == len(b) and (not a or b in rotations(a))


def lasso_normalize(
    g: Graph,
    prefix: Sequence[str],
    cycle: Sequence[str] | None = None,
    *,
    terminus: str | None = None,
) -> LassoPath:
    """Canonical form of ``prefix . cycle^inf`` or of a terminus path.

    For a periodic path the cycle is replaced by its primitive root and
    trailing prefix edges are rotated into it.  For a finite path the
    terminus is inferred from the last edge (and must be given when the
    prefix is empty).
    """
    prefix = tuple(prefix)
    g.check_path(prefix)
    if cycle is not None:
        cycle = tuple(cycle)
        if not cycle:
            raise PathError("cycle must be non-empty")
        g.check_path(cycle)
        if g.src(cycle[-1]) != g.rng(cycle[0]):
            raise PathError(f"cycle {cycle} is not closed")
        if prefix and g.src(prefix[-1]) != g.rng(cycle[0]):
            raise PathError("prefix does not lead into the cycle")
        if terminus is not None:
            raise PathError("a periodic path has no terminus")
        cycle = primitive_root(cycle)
        while prefix and prefix[-1] == cycle[-1]:
            cycle = (cycle[-1],) + cycle[:-1]
            prefix = prefix[:-1]
        return LassoPath(prefix, cycle, None)
    end = g.src(prefix[-1]) if prefix else terminus
    if end is None:
        raise PathError("an empty finite path needs its terminus vertex")
    if terminus is not None and terminus != end:
        raise PathError(f"path ends at {end!r}, not {terminus!r}")
    if not g.is_terminus(end):
        raise PathError(f"{end!r} is not a terminus; finite path is not a boundary path")
    return LassoPath(prefix, None, end)


def cycle_path(g: Graph, cycle: Sequence[str]) -> LassoPath:
    return lasso_normalize(g, (), cycle)


def terminus_path(g: Graph, t: str) -> LassoPath:
    return lasso_normalize(g, (), None, terminus=t)


def rng_of(g: Graph, x: LassoPath) -> str:
    if x.prefix:
        return g.rng(x.prefix[0])
    if x.cycle is not None:
        return g.rng(x.cycle[0])
    assert x.terminus is not None
    return x.terminus


def expand(x: LassoPath, n: int) -> Word:
    """First ``n`` edges of ``x`` (all of it if ``x`` is shorter)."""
    out = list(x.prefix[:n])
    if x.cycle is not None:
        while len(out) < n:
            out.extend(x.cycle)
    return tuple(out[:n])


def shift(g: Graph, x: LassoPath, n: int) -> LassoPath:
    """Drop the first ``n`` edges."""
    if n < 0:
        raise PathError("shift amount must be non-negative")
    if n <= len(x.prefix):
        rest = x.prefix[n:]
        if x.cycle is None:
            return lasso_normalize(g, rest, None, terminus=x.terminus)
        return lasso_normalize(g, rest, x.cycle)
    if x.cycle is None:
        raise PathError(f"cannot shift a path of length {len(x.prefix)} by {n}")
    m = (n - len(x.prefix)) % len(x.cycle)
    return LassoPath((), x.cycle[m:] + x.cycle[:m], None)


def tail_equivalent(x: LassoPath, y: LassoPath) -> bool:
    """True iff some shift of ``x`` equals some shift of ``y``.

    Canonical cycles are primitive, so the periodic tails agree exactly when
    the cycles are rotations of one another.
    """
    if x.cycle is not None and y.cycle is not None:
        return is_rotation(x.cycle, y.cycle)
    if x.cycle is None and y.cycle is None:
        return x.terminus == y.terminus
    return False


@dataclass(frozen=True)
class Cardinality:
    """``Finite(n)`` when ``n`` is set, otherwise infinite.

    An infinite cardinality carries a ``pump``: a closed path that can be
    inserted repeatedly to produce distinct elements.
    """

    n: int | None
    pump: Word | None = None

    @classmethod
    def finite(cls, n: int) -> "Cardinality":
        return cls(n)

    @classmethod
    def infinite(cls, pump: Word) -> "Cardinality":
        return cls(None, pump)

    @property
    def is_finite(self) -> bool:
        return self.n is not None

    def to_json(self):
        if self.is_finite:
            return {"finite": True, "n": self.n}
        return {"finite": False, "pump": list(self.pump or ())}

    def __str__(self) -> str:
        return str(self.n) if self.is_finite else "∞"


@dataclass(frozen=True)
class BoundaryPrefix:
    start: str
    edges: Word
    complete: bool


def enumerate_boundary_prefixes(
    g: Graph, depth: int, start: str | None = None
) -> set[BoundaryPrefix]:
    """All paths of length <= ``depth`` (each a prefix of a boundary path).

    ``complete`` marks the ones that already are boundary paths, i.e. end
    at a terminus.
    """
    if depth < 0:
        raise PathError("depth must be non-negative")
    starts = g.vertices if start is None else (start,)
    out: set[BoundaryPrefix] = set()
    for v in starts:
        stack: list[tuple[str, Word]] = [(v, ())]
        while stack:
            end, word = stack.pop()
            conts = g.continuations(end)
            out.add(BoundaryPrefix(v, word, not conts))
            if len(word) < depth:
                for e in conts:
                    stack.append((e.src, word + (e.id,)))
    return out


def elementary_cycles(g: Graph) -> list[Word]:
    """Closed paths visiting no vertex twice, each listed once, rotated so
    that the smallest edge sequence comes first."""
    seen: set[Word] = set()
    index = {v: i for i, v in enumerate(g.vertices)}
    for root in g.vertices:
        stack: list[tuple[str, Word, frozenset[str]]] = [(root, (), frozenset([root]))]
        while stack:
            u, word, visited = stack.pop()
            for e in g.continuations(u):
                if e.src == root:
                    seen.add(min_rotation(word + (e.id,)))
                elif e.src not in visited and index[e.src] > index[root]:
                    stack.append((e.src, word + (e.id,), visited | {e.src}))
    return sorted(seen, key=lambda w: (len(w), w))


# -- connector automaton ---------------------------------------------------

State = tuple


@dataclass
class ConnectorAutomaton:
    """Automaton whose accepted words biject with ``Z(v) ∩ Orb_x``.

    For a periodic ``x`` with primitive cycle ``c`` of length ``k``, an
    accepted word is ``mu + d`` where ``d`` is the rotation of ``c`` entered
    at the end of ``mu`` and ``mu`` does not end with the last edge of ``d``;
    it decodes to the canonical ``mu . d^inf``.  For a terminus path ending
    at ``t`` an accepted word is a path from ``v`` to ``t``.

    States: ``("v", v)`` start, ``("e", g)`` after reading edge ``g`` in the
    connector, ``("c", i, j)`` after reading ``j`` edges of the cycle entered
    at position ``i``.
    """

    graph: Graph
    target: LassoPath
    start_vertex: str
    start: State
    transitions: dict[State, list[tuple[str, State]]]
    accepting: frozenset[State]
    _trim: frozenset[State] | None = field(default=None, repr=False)

    @property
    def states(self) -> list[State]:
        return sorted(self.transitions, key=repr)

    @property
    def cycle_length(self) -> int:
        return len(self.target.cycle) if self.target.cycle is not None else 0

    def trimmed(self) -> frozenset[State]:
        """States reachable from the start and co-reachable to acceptance."""
        if self._trim is None:
            fwd = {self.start}
            stack = [self.start]
            while stack:
                s = stack.pop()
                for _, t in self.transitions.get(s, ()):
                    if t not in fwd:
                        fwd.add(t)
                        stack.append(t)
            rev: dict[State, list[State]] = {}
            for s, arcs in self.transitions.items():
                for _, t in arcs:
                    rev.setdefault(t, []).append(s)
            back = set(self.accepting & fwd)
            stack = list(back)
            while stack:
                s = stack.pop()
                for p in rev.get(s, ()):
                    if p not in back:
                        back.add(p)
                        stack.append(p)
            self._trim = frozenset(fwd & back)
        return self._trim

    def _live_arcs(self, s: State) -> list[tuple[str, State]]:
        live = self.trimmed()
        return sorted((a for a in self.transitions.get(s, ()) if a[1] in live), key=repr)

    def pump(self) -> Word | None:
        """Label of a cycle in the trimmed automaton, or None if acyclic.

        The first cycle met by a depth-first search with sorted arcs is
        returned, so the result is deterministic.
        """
        if self.start not in self.trimmed():
            return None
        return _find_cycle(self.start, self._live_arcs)

    def is_finite(self) -> bool:
        return self.pump() is None

    def count(self) -> Cardinality:
        pump = self.pump()
        if pump is not None:
            return Cardinality.infinite(pump)
        live = self.trimmed()
        if self.start not in live:
            return Cardinality.finite(0)
        memo: dict[State, int] = {}

        def paths(s: State) -> int:
            if s not in memo:
                memo[s] = (1 if s in self.accepting else 0) + sum(
                    paths(t) for _, t in self._live_arcs(s)
                )
            return memo[s]

        return Cardinality.finite(paths(self.start))

    def words(self, max_length: int | None = None) -> Iterator[Word]:
        """Accepted words in length-lexicographic order.

        ``max_length`` is required when the language is infinite.
        """
        if max_length is None and not self.is_finite():
            raise PathError("language is infinite; pass max_length")
        live = self.trimmed()
        if self.start not in live:
            return
        level: list[tuple[State, Word]] = [(self.start, ())]
        n = 0
        while level and (max_length is None or n <= max_length):
            found = sorted(w for s, w in level if s in self.accepting)
            yield from found
            nxt = []
            for s, w in level:
                for label, t in self._live_arcs(s):
                    nxt.append((t, w + (label,)))
            level = nxt
            n += 1

    def connector(self, word: Word) -> Word:
        k = self.cycle_length
        return word[: len(word) - k] if k else word

    def decode(self, word: Word) -> LassoPath:
        k = self.cycle_length
        g = self.graph
        if k:
            return lasso_normalize(g, word[:-k], word[-k:])
        return lasso_normalize(g, word, None, terminus=self.target.terminus)

    def accepts(self, word: Sequence[str]) -> bool:
        current = {self.start}
        for label in word:
            current = {t for s in current for lab, t in self.transitions.get(s, ()) if lab == label}
            if not current:
                return False
        return bool(current & self.accepting)


def _find_cycle(start, arcs_of) -> Word | None:
    """Iterative DFS returning the label sequence of the first back-edge
    cycle found from ``start``."""
    on_stack: dict = {start: 0}
    done: set = set()
    stack = [(start, iter(arcs_of(start)))]
    labels: list[str] = []
    while stack:
        s, it = stack[-1]
        advanced = False
        for label, t in it:
            if t in on_stack:
                return tuple(labels[on_stack[t]:] + [label])
            if t in done:
                continue
            on_stack[t] = len(labels) + 1
            labels.append(label)
            stack.append((t, iter(arcs_of(t))))
            advanced = True
            break
        if not advanced:
            stack.pop()
            del on_stack[s]
            done.add(s)
            if labels:
                labels.pop()
    return None


def connector_automaton(g: Graph, x: LassoPath, v: str) -> ConnectorAutomaton:
    """Automaton for ``Z(v) ∩ Orb_x``; see :class:`ConnectorAutomaton`."""
    g._check_vertex(v)
    transitions: dict[State, list[tuple[str, State]]] = {}
    start: State = ("v", v)
    accepting: set[State] = set()
    cycle = x.cycle
    if cycle is not None:
        k = len(cycle)
        entries: dict[str, list[int]] = {}
        for i, e in enumerate(cycle):
            entries.setdefault(g.rng(e), []).append(i)
    vertex_states: list[tuple[State, str, str | None]] = [(start, v, None)]
    vertex_states += [(("e", e.id), e.src, e.id) for e in g.edges]
    for state, at, last in vertex_states:
        arcs = [(e.id, ("e", e.id)) for e in g.continuations(at)]
        if cycle is not None:
            for i in entries.get(at, ()):
                if last is None or last != cycle[i - 1]:
                    arcs.append((cycle[i], ("c", i, 1)))
        elif at == x.terminus:
            accepting.add(state)
        transitions[state] = arcs
    if cycle is not None:
        for i in range(k):
            for j in range(1, k + 1):
                transitions[("c", i, j)] = (
                    [(cycle[(i + j) % k], ("c", i, j + 1))] if j < k else []
                )
            accepting.add(("c", i, k))
    return ConnectorAutomaton(g, x, v, start, transitions, frozenset(accepting))


def orbit_intersection_size(g: Graph, x: LassoPath, v: str) -> Cardinality:
    """Exact size of ``Z(v) ∩ Orb_x``."""
    return connector_automaton(g, x, v).count()
