"""Finite discrete groupoids and their convolution algebras.

For a finite discrete groupoid every function on the arrows is finitely
supported, so the algebra is simply the space of coefficient maps with the
convolution product.  The orbit module of an object has the objects of its
orbit as basis, and an arrow ``gamma: v -> w`` sends ``v`` to ``w``.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .fields import QQ, Field
from .groups import Group
from .linalg import Matrix, zeros

__all__ = [
    "GroupoidError",
    "FiniteGroupoid",
    "SteinbergElement",
    "OrbitVector",
    "pair_groupoid",
    "group_groupoid",
    "transitive_groupoid",
    "disjoint_union",
    "parse_groupoid",
    "fixture_groupoids",
    "convolve",
    "convolve_direct",
    "involute",
    "is_bisection",
    "bisections",
    "bisection_product",
    "MatrixIso",
    "matrix_iso",
    "orbit_action_finite",
    "orbit_module_matrices",
    "orbit_module_is_simple",
    "reduction",
    "restrict_to_closed_invariant",
    "verify_restriction",
    "endo_dim_orbit",
]


class GroupoidError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroupoid:
    """Arrows ``a`` go from ``src[a]`` to ``rng[a]``; ``comp[(a, b)]`` is
    ``ab`` (first ``b``, then ``a``) and is defined iff ``src[a] == rng[b]``."""

    objects: tuple[str, ...]
    arrows: tuple[str, ...]
    src: Mapping[str, str]
    rng: Mapping[str, str]
    comp: Mapping[tuple[str, str], str]
    name: str = ""
    units: Mapping[str, str] = field(init=False, compare=False, repr=False)
    inv: Mapping[str, str] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        obj = set(self.objects)
        if len(obj) != len(self.objects) or len(set(self.arrows)) != len(self.arrows):
            raise GroupoidError("duplicate object or arrow names")
        for a in self.arrows:
            if self.src.get(a) not in obj or self.rng.get(a) not in obj:
                raise GroupoidError(f"arrow {a!r} has unknown endpoints")
        for a in self.arrows:
            for b in self.arrows:
                ab = self.comp.get((a, b))
                if (self.src[a] == self.rng[b]) != (ab is not None):
                    raise GroupoidError(f"composition of {a!r} and {b!r} wrongly (un)defined")
                if ab is not None and (self.src[ab] != self.src[b] or self.rng[ab] != self.rng[a]):
                    raise GroupoidError(f"{a!r}{b!r} has the wrong endpoints")
        for (a, b), ab in self.comp.items():
            for c in self.arrows:
                if self.src[b] == self.rng[c] and self.comp[(ab, c)] != self.comp[(a, self.comp[(b, c)])]:
                    raise GroupoidError("composition is not associative")
        units = {}
        for v in self.objects:
            cands = [a for a in self.arrows if self.src[a] == v == self.rng[a]
                     and all(self.comp.get((a, b), b) == b for b in self.arrows if self.rng[b] == v)
                     and all(self.comp.get((b, a), b) == b for b in self.arrows if self.src[b] == v)]
            if len(cands) != 1:
                raise GroupoidError(f"object {v!r} has no unique unit arrow")
            units[v] = cands[0]
        inv = {}
        for a in self.arrows:
            cands = [b for b in self.arrows if self.src[b] == self.rng[a] and self.rng[b] == self.src[a]
                     and self.comp[(b, a)] == units[self.src[a]] and self.comp[(a, b)] == units[self.rng[a]]]
            if len(cands) != 1:
                raise GroupoidError(f"arrow {a!r} has no unique inverse")
            inv[a] = cands[0]
        object.__setattr__(self, "units", units)
        object.__setattr__(self, "inv", inv)

    def mul(self, a: str, b: str) -> str | None:
        return self.comp.get((a, b))

    def isotropy(self, v: str) -> tuple[str, ...]:
        return tuple(a for a in self.arrows if self.src[a] == v == self.rng[a])

    def orbit(self, v: str) -> tuple[str, ...]:
        return tuple(sorted({self.rng[a] for a in self.arrows if self.src[a] == v},
                            key=self.objects.index))

    def orbits(self) -> list[tuple[str, ...]]:
        seen: set[str] = set()
        out = []
        for v in self.objects:
            if v not in seen:
                o = self.orbit(v)
                seen.update(o)
                out.append(o)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "objects": list(self.objects),
            "arrows": [{"id": a, "src": self.src[a], "rng": self.rng[a]} for a in self.arrows],
            "composition": [[a, b, ab] for (a, b), ab in sorted(self.comp.items())],
        }


def _build(name: str, objects, arrows: list[tuple[str, str, str]], mul) -> FiniteGroupoid:
    src = {a: s for a, s, _ in arrows}
    rng = {a: r for a, _, r in arrows}
    ids = [a for a, _, _ in arrows]
    comp = {(a, b): mul(a, b) for a in ids for b in ids if src[a] == rng[b]}
    return FiniteGroupoid(tuple(objects), tuple(ids), src, rng, comp, name)


def pair_groupoid(objects: Sequence[str] | int) -> FiniteGroupoid:
    """One arrow ``v<-w`` for every ordered pair of objects."""
    if isinstance(objects, int):
        objects = [str(i + 1) for i in range(objects)]
    objects = list(objects)
    arrows = [(f"{v}<-{w}", w, v) for v in objects for w in objects]
    lookup = {a: (r, s) for a, s, r in arrows}

    def mul(a, b):
        return f"{lookup[a][0]}<-{lookup[b][1]}"

    return _build(f"pair{len(objects)}", objects, arrows, mul)


def transitive_groupoid(objects: Sequence[str] | int, G: Group) -> FiniteGroupoid:
    """``objects x G x objects`` with ``(v,g,w)(w,h,x) = (v,gh,x)``."""
    if isinstance(objects, int):
        objects = [str(i + 1) for i in range(objects)]
    objects = list(objects)
    arrows, parts = [], {}
    for v in objects:
        for g in range(G.order):
            for w in objects:
                a = f"{v}<{G.labels[g]}<{w}"
                arrows.append((a, w, v))
                parts[a] = (v, g, w)
    names = {p: a for a, p in parts.items()}

    def mul(a, b):
        v, g, _ = parts[a]
        _, h, x = parts[b]
        return names[(v, G.mul(g, h), x)]

    return _build(f"{G.name}x{len(objects)}", objects, arrows, mul)


def group_groupoid(G: Group) -> FiniteGroupoid:
    """The group as a groupoid with the single object ``*``."""
    arrows = [(lab, "*", "*") for lab in G.labels]
    idx = {lab: i for i, lab in enumerate(G.labels)}
    return _build(G.name, ["*"], arrows, lambda a, b: G.labels[G.mul(idx[a], idx[b])])


def disjoint_union(*parts: FiniteGroupoid) -> FiniteGroupoid:
    """Names are prefixed with the part index: ``0.x``, ``1.x``, ..."""
    objects, arrows, comp, src, rng = [], [], {}, {}, {}
    for i, G in enumerate(parts):
        p = f"{i}."
        objects += [p + v for v in G.objects]
        for a in G.arrows:
            arrows.append(p + a)
            src[p + a], rng[p + a] = p + G.src[a], p + G.rng[a]
        for (a, b), ab in G.comp.items():
            comp[(p + a, p + b)] = p + ab
    name = "+".join(G.name for G in parts)
    return FiniteGroupoid(tuple(objects), tuple(arrows), src, rng, comp, name)


def parse_groupoid(doc: Mapping | str) -> FiniteGroupoid:
    """JSON with ``objects``, ``arrows`` (``id``/``src``/``rng``) and
    ``composition`` triples ``[a, b, ab]``."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        arrows = doc["arrows"]
        src = {a["id"]: a["src"] for a in arrows}
        rng = {a["id"]: a["rng"] for a in arrows}
        comp = {(a, b): ab for a, b, ab in doc["composition"]}
        return FiniteGroupoid(tuple(doc["objects"]), tuple(a["id"] for a in arrows),
                              src, rng, comp, doc.get("name", ""))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GroupoidError):
            raise
        raise GroupoidError(f"malformed groupoid document: {exc}") from None


def fixture_groupoids() -> dict[str, FiniteGroupoid]:
    """Every groupoid here has at most 12 arrows."""
    from .groups import cyclic, dihedral4, quaternion8, symmetric3

    out = {
        "pair1": pair_groupoid(1),
        "pair2": pair_groupoid(2),
        "pair3": pair_groupoid(3),
        "C2": group_groupoid(cyclic(2)),
        "C3": group_groupoid(cyclic(3)),
        "S3": group_groupoid(symmetric3()),
        "D4": group_groupoid(dihedral4()),
        "Q8": group_groupoid(quaternion8()),
        "pair2+C2": disjoint_union(pair_groupoid(2), group_groupoid(cyclic(2))),
        "pair2+pair2": disjoint_union(pair_groupoid(2), pair_groupoid(2)),
        "C2x2": transitive_groupoid(2, cyclic(2)),
        "C3x2": transitive_groupoid(2, cyclic(3)),
        "pair1+C3+pair2": disjoint_union(pair_groupoid(1), group_groupoid(cyclic(3)),
                                         pair_groupoid(2)),
    }
    assert all(len(G.arrows) <= 12 for G in out.values())
    return out


# the algebra --------------------------------------------------------------

@dataclass(frozen=True)
class SteinbergElement:
    groupoid: FiniteGroupoid
    coeffs: Mapping[str, Any]
    field: Field = QQ

    def __post_init__(self) -> None:
        F = self.field
        clean = {}
        for a, c in self.coeffs.items():
            if a not in self.groupoid.src:
                raise GroupoidError(f"unknown arrow {a!r}")
            if c != F.zero:
                clean[a] = c
        object.__setattr__(self, "coeffs", clean)

    def __call__(self, a: str):
        return self.coeffs.get(a, self.field.zero)

    def __eq__(self, other) -> bool:
        return (isinstance(other, SteinbergElement) and self.groupoid == other.groupoid
                and dict(self.coeffs) == dict(other.coeffs))

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))

    def __add__(self, other: "SteinbergElement") -> "SteinbergElement":
        _same(self, other)
        F = self.field
        keys = set(self.coeffs) | set(other.coeffs)
        return SteinbergElement(self.groupoid, {a: F.add(self(a), other(a)) for a in keys}, F)

    def scale(self, c) -> "SteinbergElement":
        F = self.field
        return SteinbergElement(self.groupoid, {a: F.mul(c, x) for a, x in self.coeffs.items()}, F)

    @classmethod
    def indicator(cls, G: FiniteGroupoid, U: Iterable[str], F: Field = QQ) -> "SteinbergElement":
        return cls(G, {a: F.one for a in U}, F)

    @classmethod
    def unit(cls, G: FiniteGroupoid, F: Field = QQ) -> "SteinbergElement":
        return cls.indicator(G, G.units.values(), F)

    @classmethod
    def random(cls, G: FiniteGroupoid, rng: random.Random, F: Field = QQ,
               density: float = 0.5) -> "SteinbergElement":
        return cls(G, {a: F.random(rng) for a in G.arrows if rng.random() < density}, F)

    def to_json(self) -> dict:
        F = self.field
        return {a: F.to_json(c) for a, c in sorted(self.coeffs.items())}


def _same(f: SteinbergElement, g: SteinbergElement) -> None:
    if f.groupoid != g.groupoid or f.field != g.field:
        raise GroupoidError("elements live in different algebras")


def convolve(f: SteinbergElement, g: SteinbergElement) -> SteinbergElement:
    """``(f*g)(c) = sum over a with src(a) = src(c) of f(c a^-1) g(a)``."""
    _same(f, g)
    G, F = f.groupoid, f.field
    out = {}
    for c in G.arrows:
        s = F.zero
        for a, ga in g.coeffs.items():
            if G.src[a] == G.src[c]:
                fb = f(G.comp[(c, G.inv[a])])
                if fb != F.zero:
                    s = F.add(s, F.mul(fb, ga))
        out[c] = s
    return SteinbergElement(G, out, F)


def convolve_direct(f: SteinbergElement, g: SteinbergElement) -> SteinbergElement:
    """Sum of ``f(b) g(a)`` over every composable pair, credited to ``ba``."""
    _same(f, g)
    G, F = f.groupoid, f.field
    out: dict[str, Any] = {}
    for b in G.arrows:
        for a in G.arrows:
            ba = G.mul(b, a)
            if ba is not None:
                out[ba] = F.add(out.get(ba, F.zero), F.mul(f(b), g(a)))
    return SteinbergElement(G, out, F)


def involute(f: SteinbergElement) -> SteinbergElement:
    G = f.groupoid
    return SteinbergElement(G, {G.inv[a]: c for a, c in f.coeffs.items()}, f.field)


# bisections ---------------------------------------------------------------

def is_bisection(G: FiniteGroupoid, U: Iterable[str]) -> bool:
    U = list(U)
    return len({G.src[a] for a in U}) == len(U) == len({G.rng[a] for a in U})


def bisections(G: FiniteGroupoid) -> Iterator[frozenset[str]]:
    """All bisections, built object by object so that sources stay distinct."""
    by_src = {v: [a for a in G.arrows if G.src[a] == v] for v in G.objects}

    def rec(i: int, used_rng: frozenset[str], chosen: tuple[str, ...]):
        if i == len(G.objects):
            yield frozenset(chosen)
            return
        yield from rec(i + 1, used_rng, chosen)
        for a in by_src[G.objects[i]]:
            if G.rng[a] not in used_rng:
                yield from rec(i + 1, used_rng | {G.rng[a]}, chosen + (a,))

    yield from rec(0, frozenset(), ())


def bisection_product(G: FiniteGroupoid, U: Iterable[str], V: Iterable[str]) -> frozenset[str]:
    return frozenset(G.comp[(u, v)] for u in U for v in V if G.src[u] == G.rng[v])


# matrix isomorphism -------------------------------------------------------

@dataclass
class MatrixIso:
    """``phi[c] = (g, v, w)`` means ``c`` corresponds to ``g E_vw`` with ``g``
    in the isotropy group at ``base``."""

    groupoid: FiniteGroupoid
    base: str
    connectors: dict[str, str]   # object v -> chosen arrow base -> v
    phi: dict[str, tuple[str, str, str]]

    def inverse(self, g: str, v: str, w: str) -> str:
        G, cv, cw = self.groupoid, self.connectors[v], self.connectors[w]
        return G.comp[(G.comp[(cv, g)], G.inv[cw])]

    def verify(self) -> dict:
        G = self.groupoid
        iso = G.isotropy(self.base)
        n = len(G.objects)
        images = set(self.phi.values())
        bijective = len(images) == len(G.arrows) == len(iso) * n * n
        products = failures = 0
        for a in G.arrows:
            ga, va, wa = self.phi[a]
            for b in G.arrows:
                gb, vb, wb = self.phi[b]
                products += 1
                ab = G.mul(a, b)
                if wa != vb:
                    ok = ab is None
                else:
                    ok = ab is not None and self.phi[ab] == (G.comp[(ga, gb)], va, wb)
                failures += not ok
        inverse_ok = all(self.inverse(*self.phi[a]) == a for a in G.arrows)
        return {
            "objects": n,
            "isotropy_order": len(iso),
            "bijective": bijective,
            "products_checked": products,
            "product_failures": failures,
            "inverse_formula": inverse_ok,
            "passed": bijective and failures == 0 and inverse_ok,
        }


def matrix_iso(G: FiniteGroupoid, base: str | None = None) -> MatrixIso:
    """Identify the algebra of a transitive groupoid with matrices over the
    group algebra of the isotropy group at ``base``."""
    if not G.is_transitive():
        raise GroupoidError("matrix_iso needs a transitive groupoid")
    base = G.objects[0] if base is None else base
    if base not in G.objects:
        raise GroupoidError(f"unknown object {base!r}")
    conn = {}
    for v in G.objects:
        if v == base:
            conn[v] = G.units[v]
        else:
            conn[v] = min(a for a in G.arrows if G.src[a] == base and G.rng[a] == v)
    phi = {}
    for c in G.arrows:
        v, w = G.rng[c], G.src[c]
        g = G.comp[(G.comp[(G.inv[conn[v]], c)], conn[w])]
        phi[c] = (g, v, w)
    return MatrixIso(G, base, conn, phi)


# orbit modules ------------------------------------------------------------

@dataclass(frozen=True)
class OrbitVector:
    """Finitely supported vector over orbit points (objects, or canonical
    boundary paths for graph groupoids)."""

    coeffs: Mapping[Any, Any]
    field: Field = QQ

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs",
                           {k: c for k, c in self.coeffs.items() if c != self.field.zero})

    @classmethod
    def basis(cls, point, F: Field = QQ) -> "OrbitVector":
        return cls({point: F.one}, F)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "OrbitVector") -> "OrbitVector":
        F = self.field
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = F.add(out.get(k, F.zero), c)
        return OrbitVector(out, F)

    def __eq__(self, other) -> bool:
        return isinstance(other, OrbitVector) and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def to_json(self) -> list:
        F = self.field

        def key(k):
            return k.sort_key() if hasattr(k, "sort_key") else (str(k),)

        return [[k.to_json() if hasattr(k, "to_json") else k, F.to_json(c)]
                for k, c in sorted(self.coeffs.items(), key=lambda kc: key(kc[0]))]


def orbit_action_finite(f: SteinbergElement, w: OrbitVector) -> OrbitVector:
    """``f v = sum over arrows c with src(c) = v of f(c) rng(c)``."""
    G, F = f.groupoid, f.field
    if w.is_zero():
        return w
    orbit = set(G.orbit(next(iter(w.coeffs))))
    if not set(w.coeffs) <= orbit:
        raise GroupoidError("orbit vector is not supported on one orbit")
    out: dict[str, Any] = {}
    for v, x in w.coeffs.items():
        for c, fc in f.coeffs.items():
            if G.src[c] == v:
                out[G.rng[c]] = F.add(out.get(G.rng[c], F.zero), F.mul(fc, x))
    return OrbitVector(out, F)


def orbit_module_matrices(G: FiniteGroupoid, u: str, F: Field = QQ) -> tuple[tuple[str, ...], list[Matrix]]:
    """Basis (the orbit of ``u``) and one matrix per arrow of the orbit."""
    orbit = G.orbit(u)
    idx = {v: i for i, v in enumerate(orbit)}
    mats = []
    for c in G.arrows:
        if G.src[c] in idx:
            M = zeros(F, len(orbit))
            M[idx[G.rng[c]]][idx[G.src[c]]] = F.one
            mats.append(M)
    return orbit, mats


def orbit_module_is_simple(G: FiniteGroupoid, u: str, F: Field = QQ,
                           rng: random.Random | None = None, probes: int = 16) -> bool:
    """Cyclic-vector test: every nonzero vector generates the orbit module
    under the arrow basis.  Exhaustive over small finite fields, otherwise
    the standard basis plus seeded random probes."""
    from .linalg import rank

    orbit = G.orbit(u)
    n = len(orbit)
    if F.order is not None and F.order ** n <= 4096:
        vectors = [list(v) for v in itertools.product(list(F.elements()), repeat=n)
                   if any(x != F.zero for x in v)]
    else:
        rng = rng or random.Random(0)
        vectors = [[F.one if i == j else F.zero for i in range(n)] for j in range(n)]
        vectors += [[F.random(rng) for _ in range(n)] for _ in range(probes)]
        vectors = [v for v in vectors if any(x != F.zero for x in v)]
    for vec in vectors:
        w = OrbitVector(dict(zip(orbit, vec)), F)
        images = [orbit_action_finite(SteinbergElement.indicator(G, [c], F), w) for c in G.arrows]
        rows = [[img.coeffs.get(v, F.zero) for v in orbit] for img in images]
        if rank(F, rows) != n:
            return False
    return True


def endo_dim_orbit(G: FiniteGroupoid, u: str | None = None, F: Field = QQ) -> int:
    """Dimension of the commutant of the arrow action on the orbit module."""
    from .repn import MatrixAlgebraModule, commutant_dim

    u = G.objects[0] if u is None else u
    orbit, mats = orbit_module_matrices(G, u, F)
    return commutant_dim(MatrixAlgebraModule(F, mats, len(orbit)))


# reduction to invariant subsets -------------------------------------------

def _check_invariant(G: FiniteGroupoid, X: Iterable[str]) -> frozenset[str]:
    X = frozenset(X)
    if not X <= set(G.objects):
        raise GroupoidError("unknown objects in X")
    if any((G.src[a] in X) != (G.rng[a] in X) for a in G.arrows):
        raise GroupoidError("X is not invariant")
    return X


def reduction(G: FiniteGroupoid, X: Iterable[str]) -> FiniteGroupoid:
    X = _check_invariant(G, X)
    arrows = tuple(a for a in G.arrows if G.src[a] in X)
    keep = set(arrows)
    return FiniteGroupoid(
        tuple(v for v in G.objects if v in X), arrows,
        {a: G.src[a] for a in arrows}, {a: G.rng[a] for a in arrows},
        {k: v for k, v in G.comp.items() if k[0] in keep and k[1] in keep},
        f"{G.name}|X",
    )


def restrict_to_closed_invariant(f: SteinbergElement, X: Iterable[str],
                                 target: FiniteGroupoid | None = None) -> SteinbergElement:
    G = f.groupoid
    H = target or reduction(G, X)
    return SteinbergElement(H, {a: c for a, c in f.coeffs.items() if a in H.src}, f.field)


def verify_restriction(G: FiniteGroupoid, X: Iterable[str], F: Field = QQ,
                       trials: int = 50, seed: int = 0) -> dict:
    """Restriction is a surjective homomorphism whose kernel is spanned by
    the arrows outside ``X``."""
    X = _check_invariant(G, X)
    H = reduction(G, X)
    rng = random.Random(seed)
    hom_ok = True
    for _ in range(trials):
        f = SteinbergElement.random(G, rng, F)
        g = SteinbergElement.random(G, rng, F)
        lhs = restrict_to_closed_invariant(convolve(f, g), X, H)
        rhs = convolve(restrict_to_closed_invariant(f, X, H), restrict_to_closed_invariant(g, X, H))
        hom_ok = hom_ok and lhs == rhs
    surjective = all(
        restrict_to_closed_invariant(SteinbergElement.indicator(G, [a], F), X, H)
        == SteinbergElement.indicator(H, [a], F) for a in H.arrows)
    kernel = [a for a in G.arrows
              if not restrict_to_closed_invariant(SteinbergElement.indicator(G, [a], F), X, H).coeffs]
    expected = [a for a in G.arrows if G.src[a] not in X]
    return {
        "homomorphism": hom_ok,
        "surjective": surjective,
        "kernel_dim": len(kernel),
        "expected_kernel_dim": len(expected),
        "passed": hom_ok and surjective and kernel == expected,
    }
