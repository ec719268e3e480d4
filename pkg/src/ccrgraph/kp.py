"""Generators ``1_{Z(mu, nu)}`` of the graph algebra acting on orbit modules.

The orbit module of ``x`` has the boundary paths tail equivalent to ``x`` as
basis.  The generator for ``(mu, nu)`` replaces a leading ``nu`` by ``mu``
and kills paths that do not start with ``nu``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .fields import QQ, Field
from .graph import Graph
from .groupoid import OrbitVector
from .paths import (
    Cardinality,
    LassoPath,
    PathError,
    Word,
    expand,
    lasso_normalize,
    orbit_intersection_size,
    rng_of,
    shift,
)

__all__ = [
    "KPGenerator",
    "kp_generator",
    "kp_orbit_action",
    "kp_product",
    "generator_rank",
    "small_generators",
]


@dataclass(frozen=True, order=True)
class KPGenerator:
    mu: Word
    nu: Word
    source: str

    def __str__(self) -> str:
        def show(w: Word) -> str:
            return "·".join(w) if w else self.source
        return f"({show(self.mu)}, {show(self.nu)})"

    def to_json(self) -> dict:
        return {"mu": list(self.mu), "nu": list(self.nu), "source": self.source}


def _end(g: Graph, path: Word, default: str | None) -> str | None:
    return g.src(path[-1]) if path else default


def kp_generator(g: Graph, mu, nu, source: str | None = None) -> KPGenerator:
    """Validate the two paths and their common source vertex."""
    mu, nu = tuple(mu), tuple(nu)
    g.check_path(mu)
    g.check_path(nu)
    ends = {e for e in (_end(g, mu, None), _end(g, nu, None)) if e is not None}
    if source is not None:
        g._check_vertex(source)
        ends.add(source)
    if len(ends) != 1:
        raise PathError(f"paths {mu} and {nu} do not share a source vertex")
    return KPGenerator(mu, nu, ends.pop())


def _in_cylinder(g: Graph, y: LassoPath, gen: KPGenerator) -> bool:
    n = len(gen.nu)
    if y.cycle is None and len(y.prefix) < n:
        return False
    if n == 0:
        return rng_of(g, y) == gen.source
    return expand(y, n) == gen.nu


def _act_on_path(g: Graph, gen: KPGenerator, y: LassoPath) -> LassoPath | None:
    if not _in_cylinder(g, y, gen):
        return None
    rest = shift(g, y, len(gen.nu))
    if rest.cycle is not None:
        return lasso_normalize(g, gen.mu + rest.prefix, rest.cycle)
    return lasso_normalize(g, gen.mu + rest.prefix, None, terminus=rest.terminus)


def kp_orbit_action(g: Graph, gen: KPGenerator, y: LassoPath | OrbitVector,
                    field: Field = QQ) -> OrbitVector:
    """Image of a basis path (or a vector of them) under the generator."""
    vec = OrbitVector.basis(y, field) if isinstance(y, LassoPath) else y
    F = vec.field
    out: dict[LassoPath, object] = {}
    for path, c in vec.coeffs.items():
        img = _act_on_path(g, gen, path)
        if img is not None:
            out[img] = F.add(out.get(img, F.zero), c)
    return OrbitVector(out, F)


def _range(g: Graph, path: Word, source: str) -> str:
    return g.rng(path[0]) if path else source


def _has_prefix(g: Graph, path: Word, source: str, pre: Word, pre_source: str) -> bool:
    if len(pre) > len(path):
        return False
    if not pre:
        return _range(g, path, source) == pre_source
    return path[: len(pre)] == pre


def kp_product(g: Graph, first: KPGenerator, second: KPGenerator) -> KPGenerator | None:
    """The generator equal to ``first * second`` (act by ``second``, then
    ``first``), or None when the product is zero."""
    mu, nu = first.mu, first.nu
    alpha, beta = second.mu, second.nu
    if _has_prefix(g, alpha, second.source, nu, first.source):
        return KPGenerator(mu + alpha[len(nu):], beta, second.source)
    if _has_prefix(g, nu, first.source, alpha, second.source):
        return KPGenerator(mu, beta + nu[len(alpha):], first.source)
    return None


def generator_rank(g: Graph, gen: KPGenerator, x: LassoPath) -> Cardinality:
    """Rank of the generator on the orbit module of ``x``.

    The image has basis ``mu y'`` for the orbit elements ``nu y'``, and
    ``y' -> nu y'`` is a bijection from ``Z(source)`` onto ``Z(nu)`` inside
    the orbit, so the rank is ``|Z(source) ∩ Orb_x|``.
    """
    return orbit_intersection_size(g, x, gen.source)


def small_generators(g: Graph, max_length: int = 1) -> Iterator[KPGenerator]:
    """Every generator whose two paths have at most ``max_length`` edges."""
    by_source: dict[str, list[Word]] = {v: [()] for v in g.vertices}
    frontier: list[Word] = [(e.id,) for e in g.edges] if max_length >= 1 else []
    while frontier:
        nxt = []
        for p in frontier:
            by_source[g.src(p[-1])].append(p)
            if len(p) < max_length:
                nxt += [p + (e.id,) for e in g.continuations(g.src(p[-1]))]
        frontier = nxt
    for v in g.vertices:
        for mu in by_source[v]:
            for nu in by_source[v]:
                yield KPGenerator(mu, nu, v)
