"""The pd-preserving rewrite passes, each recorded in a replayable trace.

Three passes cooperate in full_reduce: joint removal on qualifying
bushes, union-edge removal, and closed-vertex edge removal. Every
removal carries a one-line justification so a trace can be audited
without the surrounding code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .hypergraphs import Hypergraph, HypergraphError, classify_shape
from .lattices import union_edge_elements

RULE_UNION = "union_edge_removed"
RULE_CLOSED = "closed_edge_removed"
RULE_JOINT = "joint_removed"
RULE_BRANCH_COLON = "branch_colon"
RULE_BRANCH_VERTEX = "branch_vertex_removed"

_EDGE_RULES = {RULE_UNION, RULE_CLOSED, RULE_BRANCH_COLON}
_VERTEX_RULES = {RULE_JOINT, RULE_BRANCH_VERTEX}

_CITES = {
    RULE_UNION: "edge equals the union of its proper subedges; total Betti numbers unchanged",
    RULE_CLOSED: "every vertex of the edge is closed; projective dimension unchanged",
    RULE_JOINT: "joint with a branch of length 2 on a qualifying bush; projective dimension unchanged",
    RULE_BRANCH_COLON: "branch vertex count is 1 mod 3; dropping the connecting edge preserves projective dimension",
    RULE_BRANCH_VERTEX: "branch vertex count is 2 mod 3; removing the joint preserves projective dimension",
}


class ReductionError(ValueError):
    """Precondition or replay failure in a reduction pass."""


@dataclass(frozen=True)
class TraceStep:
    rule: str
    edge: tuple[int, ...] | None = None
    vertex: int | None = None
    cite: str = ""

    def to_json_dict(self) -> dict:
        data: dict = {"rule": self.rule}
        if self.edge is not None:
            data["edge"] = list(self.edge)
        if self.vertex is not None:
            data["vertex"] = self.vertex
        data["cite"] = self.cite or _CITES.get(self.rule, "")
        return data


@dataclass
class ReductionTrace:
    steps: list[TraceStep] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def record(self, rule: str, edge=None, vertex=None):
        self.steps.append(
            TraceStep(rule, tuple(edge) if edge else None, vertex, _CITES[rule])
        )

    def extend(self, other: "ReductionTrace"):
        self.steps.extend(other.steps)
        self.notes.extend(other.notes)

    def to_jsonl(self) -> str:
        return "".join(
            json.dumps(s.to_json_dict(), sort_keys=True) + "\n" for s in self.steps
        )

    @classmethod
    def from_jsonl(cls, text: str) -> "ReductionTrace":
        steps = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            data = json.loads(line)
            steps.append(
                TraceStep(
                    data["rule"],
                    tuple(data["edge"]) if "edge" in data else None,
                    data.get("vertex"),
                    data.get("cite", ""),
                )
            )
        return cls(steps)


def replay_trace(H: Hypergraph, trace: ReductionTrace) -> Hypergraph:
    """Re-apply recorded steps; raises if any step no longer applies."""
    out = H
    for step in trace.steps:
        if step.rule in _EDGE_RULES:
            if step.edge is None:
                raise ReductionError(f"{step.rule} step lacks an edge")
            out = out.remove_edge(step.edge)
        elif step.rule in _VERTEX_RULES:
            if step.vertex is None:
                raise ReductionError(f"{step.rule} step lacks a vertex")
            out = out.remove_vertex(step.vertex)
        else:
            raise ReductionError(f"unknown trace rule {step.rule!r}")
    return out


@dataclass
class Preconditions:
    bush: bool
    higher_edges_same_joint: bool
    no_connected_closed: bool
    witnesses: dict[str, str] = field(default_factory=dict)

    @property
    def all_ok(self) -> bool:
        return self.bush and self.higher_edges_same_joint and self.no_connected_closed

    def to_json_dict(self) -> dict:
        data = {
            "bush": self.bush,
            "higher_edges_same_joint": self.higher_edges_same_joint,
            "no_connected_closed": self.no_connected_closed,
        }
        if self.witnesses:
            data["witnesses"] = dict(sorted(self.witnesses.items()))
        return data


def _branch_vertices_by_joint(H: Hypergraph) -> dict[int, set[int]]:
    """Joint -> set of vertices lying on that joint's branches."""
    shape = classify_shape(H)
    return {
        w: {v for path in paths for v in path}
        for w, paths in shape.branch_data.items()
    }


def check_preconditions(H: Hypergraph) -> Preconditions:
    """The three gates for the joint-removal pass, with witnesses.

    Aggregated over components when H is disconnected: every component
    must pass.
    """
    bush = True
    same_joint = True
    no_cc = True
    witnesses: dict[str, str] = {}
    for comp in H.components():
        shape = classify_shape(comp)
        if shape.kind not in ("string", "two_star", "bush"):
            bush = False
            witnesses.setdefault(
                "bush",
                f"component {list(comp.vertices)} has kind {shape.kind}",
            )
        on_branch = _branch_vertices_by_joint(comp)
        for e in comp.higher_edges():
            implicated = {
                w for w, verts in on_branch.items() if any(v in verts for v in e)
            }
            if len(implicated) > 1:
                same_joint = False
                witnesses.setdefault(
                    "higher_edges_same_joint",
                    f"edge {list(e)} meets branches of joints {sorted(implicated)}",
                )
        for e in comp.edges:
            if len(e) == 2 and comp.is_closed(e[0]) and comp.is_closed(e[1]):
                no_cc = False
                witnesses.setdefault(
                    "no_connected_closed",
                    f"pair edge {list(e)} joins two closed vertices",
                )
    return Preconditions(bush, same_joint, no_cc, witnesses)


def remove_union_edges(H: Hypergraph, strict: bool = False) -> tuple[Hypergraph, ReductionTrace]:
    """Strip every union edge of cardinality >= 3.

    Pair and singleton edges are never touched even when they are
    unions. Lenient mode leaves non-union higher edges in place and
    notes them; strict mode refuses.
    """
    trace = ReductionTrace()
    flagged = {e for e in union_edge_elements(H) if len(e) >= 3}
    survivors = [e for e in H.higher_edges() if e not in flagged]
    if survivors and strict:
        raise ReductionError(
            f"higher edge {list(survivors[0])} is not a union of other edges"
        )
    for e in survivors:
        trace.notes.append(f"higher edge {list(e)} kept: not a union of other edges")
    out = H
    for e in H.edges:
        if e in flagged:
            out = out.remove_edge(e)
            trace.record(RULE_UNION, edge=e)
    return out, trace


def remove_closed_vertex_edges(H: Hypergraph) -> tuple[Hypergraph, ReductionTrace]:
    """Strip every edge of two or more vertices all of which are closed."""
    trace = ReductionTrace()
    out = H
    for e in H.edges:
        if len(e) >= 2 and all(H.is_closed(v) for v in e):
            out = out.remove_edge(e)
            trace.record(RULE_CLOSED, edge=e)
    return out, trace


def _find_joint(H: Hypergraph, start: int | None) -> int | None:
    """First vertex >= start with pair-degree >= 3 and a degree-2
    neighbor whose other neighbor is a leaf (a branch of length 2)."""
    for i in sorted(H.vertices):
        if (start is not None and i < start) or H.pair_degree(i) < 3:
            continue
        for j in H.pair_neighbors(i):
            if H.pair_degree(j) != 2:
                continue
            k = next(n for n in H.pair_neighbors(j) if n != i)
            if H.pair_degree(k) == 1:
                return i
    return None


def remove_joints(H: Hypergraph) -> tuple[Hypergraph, ReductionTrace]:
    """Remove joints having a branch of length 2, ascending, until none
    qualify. Preconditions are checked once on entry."""
    pre = check_preconditions(H)
    if not pre.all_ok:
        failing = [k for k in ("bush", "higher_edges_same_joint", "no_connected_closed")
                   if not getattr(pre, k)]
        detail = "; ".join(pre.witnesses.get(k, k) for k in failing)
        raise ReductionError(f"joint removal preconditions violated: {detail}")
    trace = ReductionTrace()
    out = H
    while True:
        removed_this_sweep = False
        start: int | None = None
        while True:
            i = _find_joint(out, start)
            if i is None:
                break
            out = out.remove_vertex(i)
            trace.record(RULE_JOINT, vertex=i)
            removed_this_sweep = True
            start = i + 1
        if not removed_this_sweep:
            return out, trace


def branch_reduce(H: Hypergraph, w: int, branch) -> tuple[Hypergraph, ReductionTrace]:
    """Reduce along a branch by the vertex count mod 3: drop the
    connecting edge (1), remove the joint (2), or refuse (0)."""
    S = [int(v) for v in branch]
    if H.higher_edges():
        raise ReductionError("branch reduction needs a 1-dimensional hypergraph")
    if H.pair_degree(w) < 3:
        raise ReductionError(f"{w} is not a joint")
    if not S:
        raise ReductionError("empty branch")
    path = [w] + S
    for a, b in zip(path, path[1:]):
        if not H.has_edge((a, b)):
            raise ReductionError(f"{a} and {b} are not joined by a pair edge")
    for v in S[:-1]:
        if H.pair_degree(v) != 2:
            raise ReductionError(f"branch interior {v} has degree != 2")
        if H.is_closed(v):
            raise ReductionError(f"branch interior {v} is closed")
    if H.pair_degree(S[-1]) != 1:
        raise ReductionError(f"branch end {S[-1]} is not an endpoint")
    trace = ReductionTrace()
    n = len(S)
    if n % 3 == 1:
        out = H.remove_edge((w, S[0]))
        trace.record(RULE_BRANCH_COLON, edge=(w, S[0]))
    elif n % 3 == 2:
        out = H.remove_vertex(w)
        trace.record(RULE_BRANCH_VERTEX, vertex=w)
    else:
        raise ReductionError(
            "branch vertex count is divisible by 3; no reduction rule applies"
        )
    return out, trace


def full_reduce(H: Hypergraph) -> tuple[Hypergraph, ReductionTrace]:
    """Run joint removal (where the gates allow), union-edge removal,
    and closed-edge removal per component until nothing changes."""
    trace = ReductionTrace()
    out = H
    while True:
        before = (len(out.vertices), len(out.edges))
        for comp in out.components():
            if not check_preconditions(comp).all_ok:
                continue
            _, t = remove_joints(comp)
            for step in t.steps:
                out = out.remove_vertex(step.vertex)
            trace.extend(t)
        out, t = remove_union_edges(out)
        trace.extend(t)
        out, t = remove_closed_vertex_edges(out)
        trace.extend(t)
        if (len(out.vertices), len(out.edges)) == before:
            return out, trace
