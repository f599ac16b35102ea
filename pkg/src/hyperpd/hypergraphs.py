"""Dual hypergraphs of square-free monomial ideals.

Vertices are the generator indices 1..mu; each ring variable induces
the edge of generators it divides, and variables inducing the same
edge are merged with their names accumulated as the edge's label.

Vertex ids are stable across surgeries: removing a vertex leaves a gap
rather than renumbering, so reduction traces stay readable against the
input. Serialization renumbers 1..mu and records the original ids when
they differ.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .ideals import (
    IdealError,
    MonomialIdeal,
    make_ideal,
    monomial_from_indices,
)


class HypergraphError(ValueError):
    """Domain error for hypergraph construction and surgery."""


def _canon_edge(edge) -> tuple[int, ...]:
    t = tuple(sorted(set(int(v) for v in edge)))
    if not t:
        raise HypergraphError("empty edge")
    return t


class Hypergraph:
    """A finite hypergraph with stable integer vertex ids.

    Edges keep first-seen order (which is variable order for
    ideal-derived hypergraphs); equality compares vertex and edge sets
    only, since edge labels are provenance metadata.
    """

    __slots__ = ("vertices", "edges", "labels", "_edge_set")

    def __init__(self, edges, vertices=None, labels=None):
        seen = []
        for e in edges:
            t = _canon_edge(e)
            if t not in seen:
                seen.append(t)
        self.edges = tuple(seen)
        self._edge_set = frozenset(seen)
        covered = set()
        for e in seen:
            covered.update(e)
        if vertices is None:
            self.vertices = tuple(sorted(covered))
        else:
            self.vertices = tuple(sorted(set(int(v) for v in vertices)))
            if not covered <= set(self.vertices):
                raise HypergraphError("edge uses a vertex outside the vertex set")
        merged: dict[tuple[int, ...], set[str]] = {}
        if labels:
            for edge, names in labels.items():
                t = _canon_edge(edge)
                if t not in self._edge_set:
                    raise HypergraphError(f"label attached to missing edge {list(t)}")
                merged.setdefault(t, set()).update(names)
        self.labels = {e: tuple(sorted(ns)) for e, ns in merged.items() if ns}

    @property
    def mu(self) -> int:
        return len(self.vertices)

    def has_edge(self, edge) -> bool:
        return _canon_edge(edge) in self._edge_set

    def label_of(self, edge) -> tuple[str, ...]:
        return self.labels.get(_canon_edge(edge), ())

    def is_closed(self, v: int) -> bool:
        return (v,) in self._edge_set

    def is_open(self, v: int) -> bool:
        return not self.is_closed(v)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def pair_degree(self, v: int) -> int:
        """Degree within the 1-skeleton's two-vertex edges."""
        return sum(1 for e in self.edges if len(e) == 2 and v in e)

    def pair_neighbors(self, v: int) -> tuple[int, ...]:
        out = set()
        for e in self.edges:
            if len(e) == 2 and v in e:
                out.add(e[0] if e[1] == v else e[1])
        return tuple(sorted(out))

    def higher_edges(self) -> tuple[tuple[int, ...], ...]:
        return tuple(e for e in self.edges if len(e) >= 3)

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (
            set(self.vertices) == set(other.vertices)
            and self._edge_set == other._edge_set
        )

    def __hash__(self):
        return hash((frozenset(self.vertices), self._edge_set))

    def __repr__(self):
        return f"Hypergraph(vertices={list(self.vertices)}, edges={[list(e) for e in self.edges]})"

    # -- surgeries ---------------------------------------------------

    def remove_edge(self, edge) -> "Hypergraph":
        t = _canon_edge(edge)
        if t not in self._edge_set:
            raise HypergraphError(f"{list(t)} is not an edge")
        labels = {e: ns for e, ns in self.labels.items() if e != t}
        return Hypergraph(
            (e for e in self.edges if e != t), vertices=self.vertices, labels=labels
        )

    def remove_vertex(self, v: int) -> "Hypergraph":
        """Delete v everywhere: the hypergraph of the ideal without m_v.

        Edges shrink, empties vanish, duplicates merge with label
        union; a pair edge {u,v} collapses to the singleton {u}, so
        former neighbors of v come out closed.
        """
        if v not in self.vertices:
            raise HypergraphError(f"{v} is not a vertex")
        new_edges = []
        labels: dict[tuple[int, ...], set[str]] = {}
        for e in self.edges:
            t = tuple(u for u in e if u != v)
            if not t:
                continue
            if t not in labels:
                new_edges.append(t)
                labels[t] = set()
            labels[t].update(self.labels.get(e, ()))
        return Hypergraph(
            new_edges,
            vertices=(u for u in self.vertices if u != v),
            labels={e: ns for e, ns in labels.items() if ns},
        )

    def add_edge_vertex(self, edge) -> "Hypergraph":
        """Remove every vertex of the edge, then adjoin a fresh closed
        isolated vertex (in front, mirroring the ideal-level operation
        that prepends the edge's variable as a new generator)."""
        t = _canon_edge(edge)
        if t not in self._edge_set:
            raise HypergraphError(f"{list(t)} is not an edge")
        out = self
        for v in t:
            out = out.remove_vertex(v)
        fresh = min(out.vertices, default=1) - 1 if out.vertices else 1
        return Hypergraph(
            out.edges + ((fresh,),),
            vertices=out.vertices + (fresh,),
            labels=out.labels,
        )

    def skeleton(self, i: int) -> "Hypergraph":
        if i < 0:
            raise HypergraphError("skeleton dimension must be >= 0")
        keep = [e for e in self.edges if len(e) <= i + 1]
        labels = {e: ns for e, ns in self.labels.items() if len(e) <= i + 1}
        return Hypergraph(keep, vertices=self.vertices, labels=labels)

    def components(self) -> list["Hypergraph"]:
        """Connected components under shared-edge adjacency, ordered by
        smallest vertex; uncovered vertices count as singletons."""
        parent = {v: v for v in self.vertices}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in self.edges:
            for u in e[1:]:
                ra, rb = find(e[0]), find(u)
                if ra != rb:
                    parent[rb] = ra
        groups: dict[int, list[int]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        out = []
        for root in sorted(groups, key=lambda r: min(groups[r])):
            verts = set(groups[root])
            edges = [e for e in self.edges if verts.issuperset(e)]
            labels = {e: ns for e, ns in self.labels.items() if verts.issuperset(e)}
            out.append(Hypergraph(edges, vertices=verts, labels=labels))
        return out

    # -- serialization -----------------------------------------------

    def to_json_dict(self) -> dict:
        order = {v: i + 1 for i, v in enumerate(self.vertices)}
        edges = [[order[u] for u in e] for e in self.edges]
        data: dict = {"mu": len(self.vertices), "edges": edges}
        if self.labels:
            data["labels"] = {
                _edge_key([order[u] for u in e]): list(ns)
                for e, ns in sorted(self.labels.items())
            }
        if any(order[v] != v for v in self.vertices):
            data["vertex_labels"] = list(self.vertices)
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def to_dot(self) -> str:
        lines = ["graph hypergraph {", "  node [shape=circle];"]
        for v in self.vertices:
            style = ' [style=filled, fillcolor=gray]' if self.is_closed(v) else ""
            lines.append(f"  {v}{style};")
        for e in self.edges:
            if len(e) == 2:
                names = ",".join(self.label_of(e))
                attr = f' [label="{names}"]' if names else ""
                lines.append(f"  {e[0]} -- {e[1]}{attr};")
        for idx, e in enumerate(self.higher_edges()):
            names = ",".join(self.label_of(e)) or ",".join(str(v) for v in e)
            lines.append(
                f'  he{idx} [shape=box, style=dashed, label="{names}"];'
            )
            for v in e:
                lines.append(f"  he{idx} -- {v} [style=dotted];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _edge_key(edge) -> str:
    return json.dumps(sorted(edge), separators=(",", ":"))


def hypergraph_from_json_dict(data: dict) -> Hypergraph:
    try:
        mu = int(data["mu"])
        edges = data["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise HypergraphError(f"bad hypergraph JSON: {exc}")
    vertices = data.get("vertex_labels", range(1, mu + 1))
    if len(set(vertices)) != mu:
        raise HypergraphError("vertex_labels length disagrees with mu")
    rename = dict(zip(range(1, mu + 1), vertices))
    labels = {}
    for key, names in (data.get("labels") or {}).items():
        try:
            raw = json.loads(key)
        except json.JSONDecodeError:
            raise HypergraphError(f"bad edge key {key!r}")
        labels[tuple(rename[v] for v in raw)] = tuple(names)
    return Hypergraph(
        ([rename[v] for v in e] for e in edges),
        vertices=vertices,
        labels=labels,
    )


def dual_hypergraph(ideal: MonomialIdeal) -> Hypergraph:
    """The hypergraph whose vertices are generator indices and whose
    edges record, per variable, the set of generators it divides."""
    if ideal.is_zero():
        raise HypergraphError("the zero ideal has no hypergraph")
    if not ideal.is_squarefree():
        raise HypergraphError("dual hypergraph needs a square-free ideal")
    edges = []
    labels: dict[tuple[int, ...], set[str]] = {}
    for i, name in enumerate(ideal.ring):
        members = tuple(
            j for j, m in enumerate(ideal.generators, start=1) if m.exps[i]
        )
        if not members:
            continue
        if members not in labels:
            edges.append(members)
            labels[members] = set()
        labels[members].add(name)
    return Hypergraph(edges, vertices=range(1, ideal.mu + 1), labels=labels)


def ideal_from_hypergraph(H: Hypergraph, var_names=None) -> MonomialIdeal:
    """The standard ideal of a hypergraph: one fresh variable per edge,
    one generator per vertex (the product of its incident edges'
    variables). The generating set is NOT minimalized; a non-separated
    input can make it non-minimal, which MonomialIdeal rejects."""
    uncovered = [v for v in H.vertices if all(v not in e for e in H.edges)]
    if uncovered:
        raise HypergraphError(f"vertex {uncovered[0]} lies in no edge")
    if var_names is None:
        var_names = [f"x{k}" for k in range(1, len(H.edges) + 1)]
    if len(var_names) != len(H.edges):
        raise HypergraphError("need exactly one variable name per edge")
    ring = tuple(var_names)
    gens = []
    for v in H.vertices:
        indices = [k for k, e in enumerate(H.edges) if v in e]
        gens.append(monomial_from_indices(ring, indices))
    try:
        return MonomialIdeal(ring, tuple(gens))
    except IdealError as exc:
        raise HypergraphError(
            f"hypergraph has no ideal with one generator per vertex: {exc}"
        )


def is_separated(H: Hypergraph) -> bool:
    """Every ordered vertex pair is split by an edge containing the
    first but not the second."""
    for a in H.vertices:
        for b in H.vertices:
            if a == b:
                continue
            if not any(a in e and b not in e for e in H.edges):
                return False
    return True


@dataclass(frozen=True)
class VertexClass:
    vertex: int
    open: bool
    degree: int


def classify_vertices(H: Hypergraph) -> list[VertexClass]:
    return [VertexClass(v, H.is_open(v), H.degree(v)) for v in H.vertices]


@dataclass
class ShapeReport:
    kind: str
    joints: tuple[int, ...]
    branch_data: dict[int, list[tuple[int, ...]]] = field(default_factory=dict)

    def branch_lengths(self) -> list[int]:
        return [len(p) for paths in self.branch_data.values() for p in paths]


def _branches_from(H: Hypergraph, w: int, deg) -> list[tuple[int, ...]]:
    """Maximal degree-<=2 paths hanging off w that end at a leaf.

    Paths that run into another joint (connectors) or back to w are
    not branches and are skipped.
    """
    out = []
    for u in H.pair_neighbors(w):
        if deg[u] >= 3:
            continue
        path = [u]
        prev, cur = w, u
        while deg[cur] == 2:
            nxt = next(n for n in H.pair_neighbors(cur) if n != prev)
            if deg[nxt] >= 3 or nxt == w:
                path = None
                break
            path.append(nxt)
            prev, cur = cur, nxt
        if path is not None:
            out.append(tuple(path))
    return out


def classify_shape(H: Hypergraph) -> ShapeReport:
    """Shape of a connected hypergraph, by the strictest matching kind.

    string and cycle look at the whole edge family; two_star and bush
    are 1-skeleton conditions (higher edges allowed), with bush
    vacuously true when there is no joint at all.
    """
    if len(H.components()) != 1:
        raise HypergraphError("classify_shape needs a connected hypergraph")
    deg = {v: H.pair_degree(v) for v in H.vertices}
    pairs = [e for e in H.edges if len(e) == 2]
    higher = H.higher_edges()
    joints = tuple(v for v in H.vertices if deg[v] >= 3)
    branch_data = {w: _branches_from(H, w, deg) for w in joints}
    report = ShapeReport("other", joints, branch_data)
    mu = H.mu
    if not higher and not joints:
        if len(pairs) == mu - 1:
            report.kind = "string"
            return report
        if mu >= 3 and len(pairs) == mu and all(deg[v] == 2 for v in H.vertices):
            report.kind = "cycle"
            return report
    lengths = report.branch_lengths()
    if joints and all(n <= 2 for n in lengths):
        covered = len(joints) + sum(lengths)
        if len(joints) == 1 and covered == mu:
            report.kind = "two_star"
        else:
            report.kind = "bush"
        return report
    if not joints:
        # no joints and not a plain path or cycle: higher edges over a
        # degree-<=2 skeleton; vacuously a bush
        report.kind = "bush"
    return report
