"""Projective dimension of R/I from the reduced dual hypergraph.

Each component after full reduction is matched against a shape with a
closed-form answer; anything else goes to the homology oracle through
its ideal realization. Components add.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .betti import betti_table
from .hypergraphs import Hypergraph, HypergraphError, classify_shape, ideal_from_hypergraph
from .reduction import ReductionTrace, full_reduce

METHOD_OPEN_STRING = "formula_open_string"
METHOD_TWO_STAR = "formula_two_star"
METHOD_CLOSED_ISOLATED = "formula_closed_isolated"
METHOD_ORACLE = "oracle"
METHOD_ADDITIVITY = "additivity"


class PdError(ValueError):
    """A component the engine cannot price."""


def pd_open_string(mu: int) -> int:
    """pd of the string on mu vertices, all open: mu - floor(mu/3)."""
    if mu <= 0:
        raise PdError(f"string length must be positive, got {mu}")
    return mu - mu // 3


def pd_two_star(H: Hypergraph) -> int:
    """pd of a 2-star on mu vertices: mu - 1."""
    shape = classify_shape(H)
    if shape.kind != "two_star":
        raise PdError(f"hypergraph is a {shape.kind}, not a 2-star")
    return H.mu - 1


def pd_closed_isolated(count: int) -> int:
    """Each isolated closed vertex contributes exactly 1."""
    if count < 0:
        raise PdError("negative count")
    return count


@dataclass
class PdResult:
    pd: int
    method: str
    per_component: list[tuple[Hypergraph, "PdResult"]] = field(default_factory=list)
    trace: ReductionTrace | None = None

    def to_json_dict(self) -> dict:
        data: dict = {"pd": self.pd, "method": self.method}
        if self.per_component:
            data["components"] = [
                {
                    "vertices": [int(v) for v in comp.vertices],
                    "pd": sub.pd,
                    "method": sub.method,
                }
                for comp, sub in self.per_component
            ]
        return data


def _component_pd(comp: Hypergraph, field_char: int) -> PdResult:
    shape = classify_shape(comp)
    if comp.mu == 1 and comp.is_closed(next(iter(comp.vertices))):
        return PdResult(pd_closed_isolated(1), METHOD_CLOSED_ISOLATED)
    if shape.kind == "string" and all(comp.is_open(v) for v in comp.vertices):
        return PdResult(pd_open_string(comp.mu), METHOD_OPEN_STRING)
    if shape.kind == "two_star" and not any(
        len(e) == 2 and comp.is_closed(e[0]) and comp.is_closed(e[1])
        for e in comp.edges
    ):
        return PdResult(pd_two_star(comp), METHOD_TWO_STAR)
    try:
        ideal = ideal_from_hypergraph(comp)
        table = betti_table(ideal, char=field_char)
    except (HypergraphError, ValueError) as exc:
        raise PdError(
            f"component {sorted(comp.vertices)} needs the oracle but {exc}"
        ) from exc
    return PdResult(table.pd, METHOD_ORACLE)


def pd(H: Hypergraph, field_char: int = 2) -> PdResult:
    """Reduce, split into components, price each, and add."""
    reduced, trace = full_reduce(H)
    parts = [(comp, _component_pd(comp, field_char)) for comp in reduced.components()]
    total = sum(sub.pd for _, sub in parts)
    if len(parts) == 1:
        method = parts[0][1].method
    else:
        method = METHOD_ADDITIVITY
    return PdResult(total, method, parts, trace)


def pd_monotonicity_check(H1: Hypergraph, H2: Hypergraph, field_char: int = 2) -> bool:
    """Oracle check that a sub-hypergraph never has larger pd.

    H1 must use a subset of H2's vertices and edges. Returns whether
    pd(H1) <= pd(H2); raises if either side has no ideal realization.
    """
    if not set(H1.vertices) <= set(H2.vertices):
        raise PdError("H1 has vertices outside H2")
    if not set(H1.edges) <= set(H2.edges):
        raise PdError("H1 has edges outside H2")
    pd1 = betti_table(ideal_from_hypergraph(H1), char=field_char).pd
    pd2 = betti_table(ideal_from_hypergraph(H2), char=field_char).pd
    return pd1 <= pd2
