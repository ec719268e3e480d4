"""Graph in, representation-theoretic level out.

The level is read off the orbit space of the boundary path groupoid:
condition (M) gives CCR, condition (N) without (M) gives GCR but not CCR,
and failure of (N) gives not GCR.  The isotropy groups of a graph groupoid
are trivial or infinite cyclic, so their group algebras never obstruct the
verdict when the field is uncountable and algebraically closed.  For other
fields the level is still computed, but flagged as unknown.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph
from .paths import Cardinality, LassoPath, orbit_intersection_size
from .topology import TopologyVerdict, check_condition_M, check_condition_N

__all__ = [
    "CCR",
    "GCR_NOT_CCR",
    "NOT_GCR",
    "LEVELS",
    "FieldSpec",
    "Verdict",
    "parse_field_spec",
    "classify_graph",
    "classify_product",
    "product_intersection_size",
]

CCR = "CCR"
GCR_NOT_CCR = "GCR_not_CCR"
NOT_GCR = "not_GCR"
LEVELS = (NOT_GCR, GCR_NOT_CCR, CCR)   # increasing

CLOSED = "uncountable-algebraically-closed"
OTHER = "other"

ISOTROPY_NOTE = (
    "isotropy groups are trivial or infinite cyclic; group algebras of abelian "
    "groups are CCR over an uncountable algebraically closed field"
)
UNKNOWN = "unknown under this field hypothesis"

_CLOSED_NAMES = {"complex", "c", "cc", "complexes", "uncountable-algebraically-closed",
                 "closed", "qbar-uncountable"}


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    name: str

    @property
    def is_closed(self) -> bool:
        return self.kind == CLOSED

    def to_json(self) -> dict:
        return {"kind": self.kind, "name": self.name}


def parse_field_spec(spec: str | FieldSpec | None) -> FieldSpec:
    """``complex`` (and synonyms) is uncountable algebraically closed; any
    other name is recorded as is."""
    if isinstance(spec, FieldSpec):
        return spec
    if spec is None:
        spec = "complex"
    name = spec.strip()
    if not name:
        raise ValueError("empty field name")
    kind = CLOSED if name.lower() in _CLOSED_NAMES else OTHER
    return FieldSpec(kind, name)


@dataclass(frozen=True)
class Verdict:
    level: str
    m_verdict: TopologyVerdict
    n_verdict: TopologyVerdict
    field: FieldSpec
    field_status: str
    caveats: tuple[str, ...] = ()
    isotropy_note: str = ISOTROPY_NOTE
    factors: tuple["Verdict", ...] = field(default=())

    @property
    def witnesses(self) -> dict:
        out = {}
        if self.m_verdict.witness is not None:
            out["M"] = self.m_verdict.witness
        if self.n_verdict.witness is not None:
            out["N"] = self.n_verdict.witness
        return out

    def to_json(self) -> dict:
        out = {
            "level": self.level,
            "condition_M": self.m_verdict.to_json(),
            "condition_N": self.n_verdict.to_json(),
            "field": self.field.to_json(),
            "field_status": self.field_status,
            "caveats": list(self.caveats),
            "isotropy_note": self.isotropy_note,
        }
        if self.factors:
            out["factors"] = [f.to_json() for f in self.factors]
        return out


def _level(m: bool, n: bool) -> str:
    if m and not n:
        raise AssertionError("condition M holds while N fails; T1 spaces are T0")
    if m:
        return CCR
    return GCR_NOT_CCR if n else NOT_GCR


def _field_status(F: FieldSpec) -> tuple[str, tuple[str, ...]]:
    if F.is_closed:
        return "established", ()
    return UNKNOWN, (
        f"the field {F.name!r} is not declared uncountable and algebraically closed; "
        "the level below is the orbit-space level and its algebraic meaning is "
        + UNKNOWN,
    )


def classify_graph(g: Graph, F: FieldSpec | str | None = None, method: str = "structural") -> Verdict:
    F = parse_field_spec(F)
    m = check_condition_M(g, method)
    n = check_condition_N(g, method)
    status, caveats = _field_status(F)
    return Verdict(_level(bool(m.holds), bool(n.holds)), m, n, F, status, caveats)


def _combine(condition: str, parts: Sequence[TopologyVerdict]) -> TopologyVerdict:
    for i, v in enumerate(parts):
        if not v.holds:
            witness = dict(v.witness or {})
            witness["factor"] = i
            return TopologyVerdict(condition, False, witness, "product")
    return TopologyVerdict(condition, True, None, "product")


def classify_product(gs: Sequence[Graph], F: FieldSpec | str | None = None,
                     method: str = "structural") -> Verdict:
    """Level of a cartesian product of one to three graphs.  The orbit space
    of a product is the product of the orbit spaces, so it is T1 (T0) exactly
    when every factor is."""
    if not gs:
        raise ValueError("classify_product needs at least one graph")
    if len(gs) > 3:
        raise ValueError("classify_product supports at most three factors")
    F = parse_field_spec(F)
    if len(gs) == 1:
        return classify_graph(gs[0], F, method)
    parts = [classify_graph(g, F, method) for g in gs]
    m = _combine("M", [p.m_verdict for p in parts])
    n = _combine("N", [p.n_verdict for p in parts])
    level = _level(bool(m.holds), bool(n.holds))
    assert level == min((p.level for p in parts), key=LEVELS.index)
    status, caveats = _field_status(F)
    caveats = caveats + ("only cartesian products of graphs are supported among higher-rank graphs",)
    return Verdict(level, m, n, F, status, caveats, factors=tuple(parts))


def product_intersection_size(gs: Sequence[Graph], xs: Sequence[LassoPath],
                              vs: Sequence[str]) -> Cardinality:
    """``|Z(v_1,...,v_k) ∩ Orb_(x_1,...,x_k)|`` in a product of graphs: the
    cylinder and the orbit both split as products."""
    sizes = [orbit_intersection_size(g, x, v) for g, x, v in zip(gs, xs, vs)]
    if any(s.is_finite and s.n == 0 for s in sizes):
        return Cardinality.finite(0)
    inf = next((s for s in sizes if not s.is_finite), None)
    if inf is not None:
        return Cardinality.infinite(inf.pump)
    total = 1
    for s in sizes:
        total *= s.n
    return Cardinality.finite(total)
