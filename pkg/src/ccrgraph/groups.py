"""Finite groups given by multiplication tables, plus a few presets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

__all__ = ["Group", "GroupError", "cyclic", "symmetric3", "dihedral4", "quaternion8", "preset", "parse_group", "rotation_subgroup"]


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class Group:
    """Elements are ``0 .. order-1``; ``table[a][b]`` is ``a*b``."""

    name: str
    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.labels)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise GroupError("table must be square and match the labels")
        for row in self.table:
            if sorted(row) != list(range(n)):
                raise GroupError("each row of the table must be a permutation")
        e = self.identity
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise GroupError("multiplication is not associative")
        if any(self.table[e][a] != a for a in range(n)):
            raise GroupError("no two-sided identity")

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][a] == a and self.table[a][e] == a for a in range(self.order)):
                return e
        raise GroupError("no identity element")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        e = self.identity
        return next(b for b in range(self.order) if self.table[a][b] == e)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    @property
    def exponent(self) -> int:
        return math.lcm(*(self.element_order(a) for a in range(self.order)))

    def generated(self, gens: Sequence[int]) -> frozenset[int]:
        out = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(g, x)
                if y not in out:
                    out.add(y)
                    frontier.append(y)
        return frozenset(out)

    @property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set, scanning elements in index order."""
        gens: list[int] = []
        span = self.generated(gens)
        for a in range(self.order):
            if a not in span:
                gens.append(a)
                span = self.generated(gens)
        return tuple(gens)

    def is_abelian(self, elements: Sequence[int] | None = None) -> bool:
        els = range(self.order) if elements is None else elements
        return all(self.mul(a, b) == self.mul(b, a) for a in els for b in els)

    def is_subgroup(self, H: Sequence[int]) -> bool:
        H = set(H)
        return self.identity in H and all(self.mul(a, self.inverse(b)) in H for a in H for b in H)

    def is_normal(self, H: Sequence[int]) -> bool:
        H = set(H)
        return self.is_subgroup(H) and all(
            self.mul(self.mul(g, h), self.inverse(g)) in H for g in range(self.order) for h in H
        )

    def subgroup(self, labels: Sequence[str]) -> tuple[int, ...]:
        idx = {lab: i for i, lab in enumerate(self.labels)}
        return tuple(sorted(idx[lab] for lab in labels))

    def to_json(self) -> dict:
        return {"name": self.name, "elements": list(self.labels), "table": [list(r) for r in self.table]}


def _from_perms(name: str, gens: Sequence[tuple[int, ...]], label) -> Group:
    n = len(gens[0])
    ident = tuple(range(n))
    elements = [ident]
    seen = {ident}
    i = 0
    while i < len(elements):
        x = elements[i]
        i += 1
        for g in gens:
            y = tuple(g[x[k]] for k in range(n))  # g after x
            if y not in seen:
                seen.add(y)
                elements.append(y)
    index = {p: k for k, p in enumerate(elements)}
    table = tuple(
        tuple(index[tuple(a[b[k]] for k in range(n))] for b in elements) for a in elements
    )
    return Group(name, tuple(label(p, k) for k, p in enumerate(elements)), table)


def cyclic(n: int) -> Group:
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return Group(f"C{n}", tuple(f"r{a}" for a in range(n)), table)


def symmetric3() -> Group:
    return _from_perms("S3", [(1, 2, 0), (1, 0, 2)], lambda p, k: "".join(map(str, p)))


def dihedral4() -> Group:
    """Symmetries of a square; ``r`` is the quarter turn."""
    return _from_perms("D4", [(1, 2, 3, 0), (0, 3, 2, 1)], lambda p, k: "".join(map(str, p)))


def quaternion8() -> Group:
    units = ["1", "i", "j", "k"]
    # unit products: (sign, unit)
    prod = {
        ("1", u): (1, u) for u in units
    } | {
        (u, "1"): (1, u) for u in units
    } | {
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }
    elems = [(s, u) for s in (1, -1) for u in units]
    index = {e: i for i, e in enumerate(elems)}

    def mul(a, b):
        s, u = prod[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    table = tuple(tuple(index[mul(a, b)] for b in elems) for a in elems)
    labels = tuple(("" if s > 0 else "-") + u for s, u in elems)
    return Group("Q8", labels, table)


def preset(name: str) -> Group:
    key = name.strip().upper().replace("₃", "3").replace("₄", "4").replace("₈", "8")
    if key == "S3":
        return symmetric3()
    if key == "D4":
        return dihedral4()
    if key == "Q8":
        return quaternion8()
    if key.startswith("C") and key[1:].isdigit():
        return cyclic(int(key[1:]))
    raise GroupError(f"unknown group preset {name!r}")


def parse_group(doc: Mapping | str) -> Group:
    """A preset name, ``{"preset": name}`` or ``{"elements": [...], "table": [[...]]}``
    where table entries are element indices or labels."""
    if isinstance(doc, str):
        return preset(doc)
    if "preset" in doc:
        return preset(doc["preset"])
    labels = tuple(str(x) for x in doc["elements"])
    idx = {lab: i for i, lab in enumerate(labels)}
    table = tuple(
        tuple(idx[str(c)] if not isinstance(c, int) else c for c in row) for row in doc["table"]
    )
    return Group(doc.get("name", "G"), labels, table)


# normal subgroups used by the Clifford presets
def rotation_subgroup(G: Group) -> tuple[int, ...]:
    """Elements of G of the form r^k for the first element of maximal order."""
    a = max(range(G.order), key=lambda x: (G.element_order(x), -x))
    return tuple(sorted(G.generated([a])))
