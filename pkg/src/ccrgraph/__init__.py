"""Decide whether the algebra of a finite directed graph is CCR or GCR from
the topology of its orbit space, with exact algebraic checks alongside."""

from __future__ import annotations

__version__ = "0.1.0"

from .classify import FieldSpec, Verdict, classify_graph, classify_product, parse_field_spec
from .graph import Graph, GraphError, parse_graph, scc_decompose
from .paths import (
    Cardinality,
    LassoPath,
    connector_automaton,
    lasso_normalize,
    orbit_intersection_size,
    shift,
    tail_equivalent,
)
from .topology import (
    TopologyVerdict,
    check_condition_M,
    check_condition_N,
    oracle_condition,
    orbit_closure,
)

__all__ = [
    "__version__",
    "Cardinality",
    "FieldSpec",
    "Graph",
    "GraphError",
    "LassoPath",
    "TopologyVerdict",
    "Verdict",
    "check_condition_M",
    "check_condition_N",
    "classify_graph",
    "classify_product",
    "connector_automaton",
    "lasso_normalize",
    "oracle_condition",
    "orbit_closure",
    "orbit_intersection_size",
    "parse_field_spec",
    "parse_graph",
    "scc_decompose",
    "shift",
    "tail_equivalent",
]
