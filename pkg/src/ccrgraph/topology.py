"""Deciders for the T1 condition (M) and the T0 condition (N) on the orbit
space of a finite graph's boundary-path groupoid.

Condition (M): every ``Z(v) ∩ Orb_x`` is finite.
Condition (N): every ``x`` is isolated in its orbit by some punctured
cylinder ``Z(mu \\ F)``.

Three independent routes are provided:

``structural``
    (N) holds iff no strongly connected component is branched; (M) holds iff
    (N) holds and no simple cycle has an exit.
``automaton``
    (M) quantifies :func:`orbit_intersection_size` over cycle and terminus
    orbits; (N) asks that every elementary cycle meets some cylinder
    ``Z(v)`` in its orbit exactly once.
``oracle``
    bounded brute force over lasso paths, see :func:`oracle_condition`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Literal

from .graph import (
    BRANCHED,
    SIMPLE_CYCLE,
    Graph,
    SccDecomposition,
    reachable_set,
    scc_decompose,
    termini,
)
from .paths import (
    LassoPath,
    Word,
    cycle_path,
    elementary_cycles,
    lasso_normalize,
    min_rotation,
    orbit_intersection_size,
    primitive_root,
    rng_of,
    tail_equivalent,
    terminus_path,
)

__all__ = [
    "TopologyVerdict",
    "OrbitClosure",
    "HOLDS",
    "FAILS",
    "INCONCLUSIVE",
    "check_condition_N",
    "check_condition_M",
    "orbit_representatives",
    "orbit_closure",
    "oracle_condition",
    "verify_witness",
]

HOLDS = "holds"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"

Condition = Literal["M", "N"]


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class TopologyVerdict:
    condition: str
    holds: bool | None
    witness: dict | None
    method: str
    status: str = ""
    depth: int | None = None

    def __post_init__(self) -> None:
        if not self.status:
            object.__setattr__(
                self, "status",
                INCONCLUSIVE if self.holds is None else (HOLDS if self.holds else FAILS),
            )

    def to_json(self) -> dict:
        out = {
            "condition": self.condition,
            "holds": self.holds,
            "status": self.status,
            "method": self.method,
            "witness": self.witness,
        }
        if self.depth is not None:
            out["depth"] = self.depth
        return out


# -- witnesses -------------------------------------------------------------


def _shortest_return(g: Graph, start: str, target: str, allowed: frozenset[str]) -> Word:
    """Lexicographically least among shortest paths from ``start`` to
    ``target`` inside ``allowed``."""
    frontier: dict[str, Word] = {start: ()}
    seen = {start}
    while frontier:
        if target in frontier:
            return frontier[target]
        nxt: dict[str, Word] = {}
        for u in sorted(frontier, key=lambda u: frontier[u]):
            for e in g.continuations(u):
                if e.src in allowed and e.src not in seen:
                    cand = frontier[u] + (e.id,)
                    if e.src not in nxt or cand < nxt[e.src]:
                        nxt[e.src] = cand
        seen |= set(nxt)
        frontier = nxt
    raise AssertionError("target unreachable inside component")


def _cycle_pair(g: Graph, scc: SccDecomposition) -> dict | None:
    """Two distinct first-return cycles at a common vertex of a branched
    component; lexicographically smallest pair."""
    best = None
    for idx, kind in enumerate(scc.kinds):
        if kind != BRANCHED:
            continue
        comp = scc.components[idx]
        for u in sorted(comp):
            inner = [e for e in g.continuations(u) if e.src in comp]
            for e1, e2 in itertools.combinations(inner, 2):
                c1 = (e1.id,) + _shortest_return(g, e1.src, u, comp)
                c2 = (e2.id,) + _shortest_return(g, e2.src, u, comp)
                cand = (c1, c2, u)
                if best is None or cand < best:
                    best = cand
    if best is None:
        return None
    c1, c2, u = best
    return {"kind": "cycle-pair", "vertex": u, "cycles": [list(c1), list(c2)]}


def _mx_witness(x: LassoPath, v: str, pump: Word | None = None) -> dict:
    w = {"kind": "infinite-intersection", "x": x.to_json(), "v": v}
    if pump is not None:
        w["pump"] = list(pump)
    return w


def _witness_key(x: LassoPath, v: str) -> tuple:
    return (x.sort_key(), v)


def verify_witness(g: Graph, verdict: TopologyVerdict) -> bool:
    """Re-check a failure witness independently of how it was produced."""
    w = verdict.witness
    if verdict.holds is not False or w is None:
        return False
    if w["kind"] == "infinite-intersection":
        x = LassoPath.from_json(g, w["x"])
        return not orbit_intersection_size(g, x, w["v"]).is_finite
    if w["kind"] == "cycle-pair":
        c1, c2 = (tuple(c) for c in w["cycles"])
        if not (g.is_path(c1) and g.is_path(c2)):
            return False
        u = w["vertex"]
        closed = all(g.rng(c[0]) == u and g.src(c[-1]) == u for c in (c1, c2))
        scc = scc_decompose(g)
        comp = {scc.component_of[g.rng(e)] for e in c1 + c2}
        return (
            closed
            and len(comp) == 1
            and not tail_equivalent(cycle_path(g, c1), cycle_path(g, c2))
        )
    return False


# -- orbits ------------------------------------------------------------------


def orbit_representatives(g: Graph, scc: SccDecomposition | None = None) -> list[LassoPath]:
    """One canonical representative per cycle/terminus orbit.

    Cycle orbits are taken from the elementary cycles of the graph (with
    minimal rotation); terminus orbits are the empty paths at termini.
    Under condition (N) these exhaust the orbit space.
    """
    reps = [cycle_path(g, c) for c in elementary_cycles(g)]
    reps += [terminus_path(g, t) for t in termini(g)]
    return sorted(set(reps), key=LassoPath.sort_key)


def _simple_cycle_reps(g: Graph, scc: SccDecomposition) -> dict[int, LassoPath]:
    reps = {}
    for idx, kind in enumerate(scc.kinds):
        if kind == SIMPLE_CYCLE:
            u = min(scc.components[idx])
            comp = scc.components[idx]
            (e,) = [e for e in g.continuations(u) if e.src in comp]
            cyc = (e.id,) + _shortest_return(g, e.src, u, comp)
            reps[idx] = cycle_path(g, min_rotation(cyc))
    return reps


# -- condition N -------------------------------------------------------------


def check_condition_N(g: Graph, method: str = "structural") -> TopologyVerdict:
    scc = scc_decompose(g)
    if method == "structural":
        holds = BRANCHED not in scc.kinds
    elif method == "automaton":
        holds = all(
            any(
                orbit_intersection_size(g, cycle_path(g, c), g.rng(e)).n == 1
                for e in c
            )
            for c in (tuple(c) for c in elementary_cycles(g))
        )
    else:
        raise ValueError(f"unknown method {method!r}")
    witness = None if holds else _cycle_pair(g, scc)
    return TopologyVerdict("N", holds, witness, method)


# -- condition M -------------------------------------------------------------


def _tail_component(g: Graph, scc: SccDecomposition, x: LassoPath) -> int:
    if x.cycle is not None:
        return scc.component_of[g.rng(x.cycle[0])]
    return scc.component_of[x.terminus]


def _structural_m_failures(g: Graph, scc: SccDecomposition) -> list[tuple[LassoPath, str]]:
    """All (orbit representative, vertex) pairs with infinite intersection,
    assuming (N)."""
    reps = list(_simple_cycle_reps(g, scc).values()) + [terminus_path(g, t) for t in termini(g)]
    comp_reach = {
        i: {scc.component_of[u] for u in reachable_set(g, comp)}
        for i, comp in enumerate(scc.components)
    }
    exiting = [
        i for i, kind in enumerate(scc.kinds)
        if kind == SIMPLE_CYCLE and len(comp_reach[i]) > 1
    ]
    fails = []
    for x in reps:
        tail = _tail_component(g, scc, x)
        pumps = [d for d in exiting if d != tail and tail in comp_reach[d]]
        if not pumps:
            continue
        for v in g.vertices:
            vr = comp_reach[scc.component_of[v]]
            if any(d in vr for d in pumps):
                fails.append((x, v))
    return fails


def check_condition_M(g: Graph, method: str = "structural") -> TopologyVerdict:
    scc = scc_decompose(g)
    n_verdict = check_condition_N(g, method if method in ("structural", "automaton") else "structural")
    if not n_verdict.holds:
        pair = n_verdict.witness
        u = pair["vertex"]
        # rooted at the shared vertex, not at the minimal rotation
        x = lasso_normalize(g, (), tuple(pair["cycles"][0]))
        pump = orbit_intersection_size(g, x, u).pump
        return TopologyVerdict("M", False, _mx_witness(x, u, pump), method)
    if method == "structural":
        fails = _structural_m_failures(g, scc)
        if not fails:
            return TopologyVerdict("M", True, None, method)
        x, v = min(fails, key=lambda p: _witness_key(*p))
        pump = orbit_intersection_size(g, x, v).pump
        return TopologyVerdict("M", False, _mx_witness(x, v, pump), method)
    if method == "automaton":
        reps = list(_simple_cycle_reps(g, scc).values()) + [terminus_path(g, t) for t in termini(g)]
        candidates = sorted(
            ((x, v) for x in reps for v in g.vertices), key=lambda p: _witness_key(*p)
        )
        for x, v in candidates:
            size = orbit_intersection_size(g, x, v)
            if not size.is_finite:
                return TopologyVerdict("M", False, _mx_witness(x, v, size.pump), method)
        return TopologyVerdict("M", True, None, method)
    raise ValueError(f"unknown method {method!r}")


# -- orbit closures ----------------------------------------------------------


@dataclass(frozen=True)
class OrbitClosure:
    x: LassoPath
    orbits: tuple[LassoPath, ...]
    is_closed: bool
    is_locally_closed: bool

    def to_json(self) -> dict:
        return {
            "x": self.x.to_json(),
            "closure": [o.to_json() for o in self.orbits],
            "is_closed": self.is_closed,
            "is_locally_closed": self.is_locally_closed,
        }


def _orbit_rep(g: Graph, scc: SccDecomposition, x: LassoPath) -> LassoPath:
    if x.cycle is None:
        return terminus_path(g, x.terminus)
    return cycle_path(g, min_rotation(x.cycle))


def orbit_closure(g: Graph, x: LassoPath) -> OrbitClosure:
    """Orbits meeting the closure of ``Orb_x``; requires condition (N).

    An orbit ``Orb_y`` lies in the closure iff every finite prefix of ``y``
    continues into ``Orb_x``.  For a terminus orbit the whole path is such a
    prefix, so terminus orbits only ever lie in their own closure; a cycle
    orbit ``d^inf`` lies in the closure iff the cycle reaches the tail of
    ``x``.
    """
    scc = scc_decompose(g)
    if BRANCHED in scc.kinds:
        raise PreconditionError("orbit_closure requires condition (N): branched component present")
    own = _orbit_rep(g, scc, x)
    tail = _tail_component(g, scc, own)
    tail_vertices = scc.components[tail]
    others = []
    for idx, rep in _simple_cycle_reps(g, scc).items():
        if idx == tail:
            continue
        if reachable_set(g, scc.components[idx]) & tail_vertices:
            others.append(rep)
    others.sort(key=LassoPath.sort_key)
    other_vertices = set().union(*(scc.components[_tail_component(g, scc, o)] for o in others)) \
        if others else set()
    # Orb_x is open in its closure iff some cylinder around x avoids the
    # other orbits of the closure.
    if own.cycle is None:
        locally_closed = True  # Z(x) = {x} for a terminus path
    else:
        locally_closed = False
        expansion = own.cycle
        for n in range(len(expansion) + 1):
            at = g.src(expansion[n - 1]) if n else rng_of(g, own)
            if not (reachable_set(g, [at]) & other_vertices):
                locally_closed = True
                break
    return OrbitClosure(
        x=own,
        orbits=(own, *others),
        is_closed=not others,
        is_locally_closed=locally_closed,
    )


# -- oracle ------------------------------------------------------------------


class _Brute:
    """Bounded enumeration helpers shared by the oracle checks.

    Nothing here uses SCCs or automata: only walks, normalisation and
    breadth-first reachability.
    """

    def __init__(self, g: Graph, depth: int):
        self.g = g
        self.depth = depth
        self._closed: dict[tuple[str, int], list[Word]] = {}

    def closed_walks(self, u: str, max_len: int) -> list[Word]:
        key = (u, max_len)
        if key not in self._closed:
            out = []
            stack: list[tuple[str, Word]] = [(u, ())]
            while stack:
                at, w = stack.pop()
                if w and at == u:
                    out.append(w)
                if len(w) < max_len:
                    for e in self.g.continuations(at):
                        stack.append((e.src, w + (e.id,)))
            out.sort(key=lambda w: (len(w), w))
            self._closed[key] = out
        return self._closed[key]

    def sample_orbits(self) -> list[LassoPath]:
        """Primitive cycles of length <= depth (up to rotation) and termini."""
        cycles = set()
        for v in self.g.vertices:
            for w in self.closed_walks(v, self.depth):
                p = primitive_root(w)
                cycles.add(min_rotation(p))
        reps = [lasso_normalize(self.g, (), c) for c in sorted(cycles, key=lambda w: (len(w), w))]
        reps += [
            lasso_normalize(self.g, (), None, terminus=v)
            for v in self.g.vertices
            if not self.g.continuations(v)
        ]
        return reps

    def can_reach(self, targets: frozenset[str]) -> list[set[str]]:
        """``layer[k]`` = vertices from which ``targets`` is reachable in at
        most ``k`` steps; the last layer is the full fixpoint."""
        layers = [set(targets)]
        for _ in range(2 * self.depth + 1):
            layers.append(self._grow(layers[-1]))
        final = layers[-1]
        while True:
            nxt = self._grow(final)
            if nxt == final:
                break
            final = nxt
        layers.append(final)
        return layers

    def _grow(self, prev: set[str]) -> set[str]:
        cur = set(prev)
        for e in self.g.edges:
            if e.src in prev:
                cur.add(e.rng)
        return cur

    def tail_vertices(self, x: LassoPath) -> frozenset[str]:
        if x.cycle is None:
            return frozenset([x.terminus])
        return frozenset(self.g.rng(e) for e in x.cycle)

    def orbit_elements(
        self, x: LassoPath, start: str, head: Word = (), banned: frozenset[str] = frozenset(),
        max_len: int | None = None,
    ) -> Iterable[tuple[LassoPath, Word]]:
        """Elements ``head . rho . (tail of x)`` with ``|rho| <= max_len``,
        ``rho`` starting at ``start`` and not beginning with a banned edge.

        Yields ``(element, rho)`` in breadth-first order; duplicates are
        possible and left to the caller.
        """
        g = self.g
        max_len = 2 * self.depth if max_len is None else max_len
        targets = self.tail_vertices(x)
        reach = self.can_reach(targets)
        level: list[tuple[str, Word]] = [(start, ())]
        for n in range(max_len + 1):
            nxt = []
            for at, rho in level:
                if at not in reach[max_len - n]:
                    continue
                if x.cycle is None:
                    if at == x.terminus:
                        yield lasso_normalize(g, head + rho, None, terminus=at), rho
                else:
                    k = len(x.cycle)
                    for i in range(k):
                        if n == 0 and x.cycle[i] in banned:
                            continue
                        if g.rng(x.cycle[i]) == at:
                            rot = x.cycle[i:] + x.cycle[:i]
                            yield lasso_normalize(g, head + rho, rot), rho
                if n < max_len:
                    for e in g.continuations(at):
                        if n == 0 and e.id in banned:
                            continue
                        nxt.append((e.src, rho + (e.id,)))
            level = nxt

    def live_beyond(self, x: LassoPath, start: str, banned: frozenset[str],
                    along: Word) -> bool:
        """Is there a walk of length ``2*depth`` from ``start`` that avoids
        the banned first edges, leaves the expansion ``along`` of ``x`` and can
        still rejoin the tail of ``x``?"""
        g = self.g
        reach = self.can_reach(self.tail_vertices(x))[-1]
        horizon = 2 * self.depth
        level: list[tuple[str, bool, int]] = [(start, False, 0)]
        seen = set()
        for n in range(horizon):
            nxt = []
            for at, off, pos in level:
                for e in g.continuations(at):
                    if n == 0 and e.id in banned:
                        continue
                    if e.src not in reach:
                        continue
                    on = not off and pos < len(along) and along[pos] == e.id
                    state = (e.src, not on, (pos + 1) if on else 0)
                    if state not in seen:
                        seen.add(state)
                        nxt.append(state)
            level = nxt
        return any(off for _, off, _ in level)

    def insert(self, y: LassoPath, pos: int, kappa: Word) -> LassoPath | None:
        """``y`` with the closed path ``kappa`` spliced in after ``pos``
        edges."""
        g = self.g
        if y.cycle is None:
            word = y.prefix
            if pos > len(word):
                return None
            return lasso_normalize(g, word[:pos] + kappa + word[pos:], None, terminus=y.terminus)
        n_pre = len(y.prefix)
        if pos <= n_pre:
            return lasso_normalize(g, y.prefix[:pos] + kappa + y.prefix[pos:], y.cycle)
        m = pos - n_pre
        c = y.cycle
        return lasso_normalize(g, y.prefix + c[:m] + kappa, c[m:] + c[:m])

    def vertex_at(self, y: LassoPath, pos: int) -> str:
        word = y.prefix + (y.cycle or ()) * 2
        if pos == 0:
            return rng_of(self.g, y)
        return self.g.src(word[pos - 1])


def _oracle_m(g: Graph, depth: int) -> TopologyVerdict:
    brute = _Brute(g, depth)
    inconclusive = None
    for x in brute.sample_orbits():
        for v in g.vertices:
            found: set[LassoPath] = set()
            for y, _ in brute.orbit_elements(x, v):
                if y in found:
                    continue
                found.add(y)
                span = len(y.prefix) + len(y.cycle or ())
                for pos in range(span + 1):
                    at = brute.vertex_at(y, pos)
                    for kappa in brute.closed_walks(at, depth):
                        z = brute.insert(y, pos, kappa)
                        if z is not None and z != y:
                            witness = _mx_witness(x, v)
                            witness["pumped"] = [y.to_json(), z.to_json()]
                            return TopologyVerdict("M", False, witness, "oracle", depth=depth)
            if inconclusive is None and any(len(y.prefix) > depth for y in found):
                inconclusive = {"x": x.to_json(), "v": v}
    if inconclusive is not None:
        return TopologyVerdict("M", None, inconclusive, "oracle", depth=depth)
    return TopologyVerdict("M", True, None, "oracle", depth=depth)


def _isolated(brute: _Brute, x: LassoPath) -> bool | None:
    """Search for ``(mu, F)`` with ``Z(mu \\ F) ∩ Orb_x = {x}``.

    ``mu`` ranges over prefixes of ``x`` of length <= depth and ``F`` over
    sets of single continuation edges at ``s(mu)`` other than the next edge
    of ``x``.  Returns True if a candidate survives with the search space
    exhausted, False if every candidate is refuted by another orbit element,
    None if a candidate survives only because of the depth cut-off.
    """
    g = brute.g
    if x.cycle is None:
        # Z(x) = {x}: nothing continues past a terminus
        return True
    depth = brute.depth
    span = 2 * depth
    expansion = x.prefix + x.cycle * (3 * depth + 2)
    truncated = False
    for n in range(depth + 1):
        mu = expansion[:n]
        at = g.src(mu[-1]) if mu else rng_of(g, x)
        nxt = expansion[n]
        others = [e.id for e in g.continuations(at) if e.id != nxt]
        for r in range(len(others), -1, -1):
            for banned in itertools.combinations(others, r):
                banned = frozenset(banned)
                refuted = False
                for y, _ in brute.orbit_elements(x, at, head=mu, banned=banned, max_len=span):
                    if y != x:
                        refuted = True
                        break
                if refuted:
                    continue
                if brute.live_beyond(x, at, banned, expansion[n:]):
                    truncated = True
                    continue
                return True
    return None if truncated else False


def _oracle_n(g: Graph, depth: int) -> TopologyVerdict:
    brute = _Brute(g, depth)
    pending = None
    for x in brute.sample_orbits():
        result = _isolated(brute, x)
        if result is False:
            return TopologyVerdict(
                "N", False, {"kind": "not-isolated", "x": x.to_json()}, "oracle", depth=depth
            )
        if result is None and pending is None:
            pending = {"x": x.to_json()}
    if pending is not None:
        return TopologyVerdict("N", None, pending, "oracle", depth=depth)
    return TopologyVerdict("N", True, None, "oracle", depth=depth)


def oracle_condition(g: Graph, condition: Condition, depth: int = 6) -> TopologyVerdict:
    """Bounded brute-force semi-decision of (M) or (N).

    (M) fails when an orbit element ``y`` in ``Z(v)`` and a closed path
    ``kappa`` are found such that splicing ``kappa`` into ``y`` gives a
    different element: then every power of ``kappa`` gives yet another one.
    (N) fails when a sampled ``x`` has every candidate punctured cylinder
    refuted.  ``holds`` is ``None`` (inconclusive) when the bounded search
    cannot settle the question.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if condition == "M":
        return _oracle_m(g, depth)
    if condition == "N":
        return _oracle_n(g, depth)
    raise ValueError(f"unknown condition {condition!r}")
