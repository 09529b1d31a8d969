"""Exact-weighted directed graphs, reachability, and solution verification.

All weights are `fractions.Fraction` values, so arithmetic and comparisons
are exact; nothing in this package ever rounds. Graphs are immutable after
construction and all operations here are pure functions, so values can be
shared freely between threads.

Vertex ids are opaque strings. Gadget builders put their coordinates into
the `label` field using a documented grammar (see the gadget modules); the
core never inspects labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional

from .errors import (
    CostMismatch,
    CutlabError,
    EndpointDeleted,
    UnknownEdge,
    UnknownVertex,
    UnweightedMember,
)

Rational = Fraction

EdgeKey = tuple[str, str]


@dataclass(frozen=True)
class Vertex:
    id: str
    label: str
    weight: Optional[Fraction] = None


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    weight: Optional[Fraction] = None

    @property
    def key(self) -> EdgeKey:
        return (self.src, self.dst)


@dataclass(frozen=True, eq=True)
class WeightedDigraph:
    """A simple directed graph (no self-loops, no parallel arcs) with
    optional exact-rational weights on vertices and edges."""

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    metadata: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        ids = [v.id for v in self.vertices]
        id_set = set(ids)
        if len(ids) != len(id_set):
            raise CutlabError("duplicate vertex ids")
        seen: set[EdgeKey] = set()
        for e in self.edges:
            if e.src == e.dst:
                raise CutlabError(f"self-loop at {e.src!r}")
            if e.src not in id_set or e.dst not in id_set:
                raise UnknownVertex(f"edge {e.key} references a missing vertex")
            if e.key in seen:
                raise CutlabError(f"parallel edge {e.key}")
            seen.add(e.key)

    @cached_property
    def vertex_map(self) -> dict[str, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def edge_map(self) -> dict[EdgeKey, Edge]:
        return {e.key: e for e in self.edges}

    @cached_property
    def out_adj(self) -> dict[str, tuple[Edge, ...]]:
        adj: dict[str, list[Edge]] = {v.id: [] for v in self.vertices}
        for e in self.edges:
            adj[e.src].append(e)
        # Sorted out-neighbors keep every traversal deterministic.
        return {u: tuple(sorted(es, key=lambda e: e.dst)) for u, es in adj.items()}

    def has_vertex(self, vid: str) -> bool:
        return vid in self.vertex_map

    def has_edge(self, src: str, dst: str) -> bool:
        return (src, dst) in self.edge_map

    def vertex(self, vid: str) -> Vertex:
        try:
            return self.vertex_map[vid]
        except KeyError:
            raise UnknownVertex(vid) from None

    def weight_of_vertex(self, vid: str) -> Optional[Fraction]:
        return self.vertex(vid).weight

    def with_new_vertices(
        self,
        new_vertices: Iterable[Vertex],
        new_edges: Iterable[Edge],
        metadata: Optional[Mapping[str, str]] = None,
    ) -> "WeightedDigraph":
        """Return a new graph extending this one (this graph is untouched)."""
        return WeightedDigraph(
            vertices=self.vertices + tuple(new_vertices),
            edges=self.edges + tuple(new_edges),
            metadata=dict(metadata if metadata is not None else self.metadata),
        )

    def without_vertices(self, removed: Iterable[str]) -> "WeightedDigraph":
        gone = set(removed)
        return WeightedDigraph(
            vertices=tuple(v for v in self.vertices if v.id not in gone),
            edges=tuple(e for e in self.edges if e.src not in gone and e.dst not in gone),
            metadata=dict(self.metadata),
        )


class DemandMode(str, Enum):
    CUT_PAIRS = "CutPairs"
    CUT_MULTIWAY = "CutMultiway"
    NETWORK_PAIRS = "NetworkPairs"
    NETWORK_ALL = "NetworkAll"

    @property
    def is_cut(self) -> bool:
        return self in (DemandMode.CUT_PAIRS, DemandMode.CUT_MULTIWAY)

    @property
    def is_pairs(self) -> bool:
        return self in (DemandMode.CUT_PAIRS, DemandMode.NETWORK_PAIRS)


@dataclass(frozen=True)
class DemandSpec:
    """What "solved" means: terminal pairs or a terminal set, and whether the
    task is to cut vertices or to select edges."""

    mode: DemandMode
    pairs: tuple[tuple[str, str], ...] = ()
    terminals: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.mode.is_pairs:
            if not self.pairs:
                raise CutlabError("pair modes need at least one demand pair")
            if self.terminals:
                raise CutlabError("pair modes take pairs, not terminals")
            for s, t in self.pairs:
                if s == t:
                    raise CutlabError(f"demand pair with source = sink: {s!r}")
        else:
            if len(self.terminals) < 2:
                raise CutlabError("set modes need at least two terminals")
            if self.pairs:
                raise CutlabError("set modes take terminals, not pairs")
            if len(set(self.terminals)) != len(self.terminals):
                raise CutlabError("duplicate terminal")

    def ordered_pairs(self) -> tuple[tuple[str, str], ...]:
        """The demanded ordered pairs; set modes expand to all ordered pairs."""
        if self.mode.is_pairs:
            return self.pairs
        return tuple(
            (s, t) for s in self.terminals for t in self.terminals if s != t
        )

    def endpoints(self) -> frozenset[str]:
        if self.mode.is_pairs:
            return frozenset(x for pair in self.pairs for x in pair)
        return frozenset(self.terminals)

    def check_against(self, graph: WeightedDigraph) -> None:
        for vid in self.endpoints():
            if not graph.has_vertex(vid):
                raise UnknownVertex(vid)


class CertificateKind(str, Enum):
    VERTEX_CUT = "VertexCut"
    EDGE_NETWORK = "EdgeNetwork"


@dataclass(frozen=True)
class Certificate:
    """A vertex cut-set or an edge network together with its exact cost."""

    kind: CertificateKind
    members: frozenset
    cost: Fraction


def reaches(
    graph: WeightedDigraph,
    src: str,
    dst: str,
    removed: frozenset[str] | set[str] = frozenset(),
    allowed_edges: Optional[set[EdgeKey] | frozenset[EdgeKey]] = None,
) -> bool:
    """True iff a directed path src->dst survives deleting `removed` vertices,
    using only `allowed_edges` when that restriction is given."""
    if not graph.has_vertex(src):
        raise UnknownVertex(src)
    if not graph.has_vertex(dst):
        raise UnknownVertex(dst)
    if src in removed or dst in removed:
        return False
    if src == dst:
        return True
    return dst in _forward_closure(graph, (src,), removed, allowed_edges)


def _forward_closure(
    graph: WeightedDigraph,
    sources: Iterable[str],
    removed: frozenset[str] | set[str] = frozenset(),
    allowed_edges: Optional[set[EdgeKey] | frozenset[EdgeKey]] = None,
) -> set[str]:
    seen = set(s for s in sources if s not in removed)
    stack = list(seen)
    adj = graph.out_adj
    while stack:
        u = stack.pop()
        for e in adj[u]:
            if allowed_edges is not None and e.key not in allowed_edges:
                continue
            v = e.dst
            if v in removed or v in seen:
                continue
            seen.add(v)
            stack.append(v)
    return seen


def cost_of(graph: WeightedDigraph, members: Iterable, kind: CertificateKind) -> Fraction:
    """Exact total weight of a member set (vertex ids or edge keys)."""
    total = Fraction(0)
    if kind is CertificateKind.VERTEX_CUT:
        for vid in members:
            w = graph.vertex(vid).weight
            if w is None:
                raise UnweightedMember(f"vertex {vid!r} has no weight")
            total += w
    else:
        for key in members:
            edge = graph.edge_map.get(tuple(key))
            if edge is None:
                raise UnknownEdge(repr(key))
            if edge.weight is None:
                raise UnweightedMember(f"edge {key} has no weight")
            total += edge.weight
    return total


def verify_cut(graph: WeightedDigraph, demand: DemandSpec, cut: Certificate) -> bool:
    """Check that deleting `cut.members` severs every demanded ordered pair.

    Raises EndpointDeleted if the cut touches a demand endpoint and
    CostMismatch if the stored cost is not the recomputed exact cost.
    """
    if not demand.mode.is_cut:
        raise CutlabError("verify_cut needs a cut-mode demand")
    if cut.kind is not CertificateKind.VERTEX_CUT:
        raise CutlabError("verify_cut needs a VertexCut certificate")
    demand.check_against(graph)
    deleted_endpoints = cut.members & demand.endpoints()
    if deleted_endpoints:
        raise EndpointDeleted(", ".join(sorted(deleted_endpoints)))
    recomputed = cost_of(graph, cut.members, CertificateKind.VERTEX_CUT)
    if recomputed != cut.cost:
        raise CostMismatch(f"stored {cut.cost}, recomputed {recomputed}")
    removed = set(cut.members)
    # One closure per distinct source handles all its sinks.
    by_src: dict[str, list[str]] = {}
    for s, t in demand.ordered_pairs():
        by_src.setdefault(s, []).append(t)
    for s, sinks in by_src.items():
        reachable = _forward_closure(graph, (s,), removed)
        if any(t in reachable for t in sinks):
            return False
    return True


def verify_network(graph: WeightedDigraph, demand: DemandSpec, net: Certificate) -> bool:
    """Check that `net.members` (edge keys) connect every demanded ordered pair."""
    if demand.mode.is_cut:
        raise CutlabError("verify_network needs a network-mode demand")
    if net.kind is not CertificateKind.EDGE_NETWORK:
        raise CutlabError("verify_network needs an EdgeNetwork certificate")
    demand.check_against(graph)
    members = frozenset(tuple(k) for k in net.members)
    recomputed = cost_of(graph, members, CertificateKind.EDGE_NETWORK)
    if recomputed != net.cost:
        raise CostMismatch(f"stored {net.cost}, recomputed {recomputed}")
    by_src: dict[str, list[str]] = {}
    for s, t in demand.ordered_pairs():
        by_src.setdefault(s, []).append(t)
    for s, sinks in by_src.items():
        reachable = _forward_closure(graph, (s,), frozenset(), members)
        if not all(t in reachable for t in sinks):
            return False
    return True
