"""Budget-parameterized approximation for directed vertex multicut.

Given a budget p, demand pairs are grouped two at a time. For each group a
pair of fresh vertices (r, q) of weight p+1 is attached so that, in the
augmented graph, r reaches q exactly when the group's first pair is still
connected and q reaches r exactly when its second pair is. Cutting the
group then reduces to a two-terminal multiway cut at budget p, solved by the
exact oracle. If any group admits no cut of cost <= p, neither does the
whole instance, and the algorithm reports that; otherwise the union of the
group cuts (plus a min s-t cut for a leftover odd pair) is feasible and
costs at most ceil(k/2) * p.

Each group is solved on a graph augmented with only its own two fresh
vertices. Augmenting all groups at once would create spurious r->q routes
through the other groups' fresh vertices and break the reduction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from .errors import Infeasible, OddK
from .exact import min_vertex_st_cut, multiway_cut_within_budget
from .graph import (
    Certificate,
    CertificateKind,
    DemandMode,
    DemandSpec,
    Edge,
    Vertex,
    WeightedDigraph,
    cost_of,
    verify_cut,
)


class _NoSolutionAtBudget:
    """Returned when the algorithm has proved no multicut of cost <= p exists."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NoSolutionAtBudget"


NO_SOLUTION_AT_BUDGET = _NoSolutionAtBudget()

ApproxResult = Union[Certificate, _NoSolutionAtBudget]


def pair_terminals(
    graph: WeightedDigraph,
    pairs: Sequence[tuple[str, str]],
    p: Fraction,
) -> tuple[WeightedDigraph, list[tuple[str, str]]]:
    """Attach one fresh (r_j, q_j) pair of weight p+1 per group of two demand
    pairs, wired r_j -> s_{2j-1}, t_{2j-1} -> q_j, q_j -> s_{2j}, t_{2j} -> r_j.

    Raises OddK unless the number of pairs is even (the caller strips an odd
    final pair first). The input graph is untouched.
    """
    if len(pairs) % 2 != 0:
        raise OddK(f"{len(pairs)} demand pairs; strip the odd one first")
    w = Fraction(p) + 1
    new_vertices: list[Vertex] = []
    new_edges: list[Edge] = []
    rq: list[tuple[str, str]] = []
    for j in range(len(pairs) // 2):
        s1, t1 = pairs[2 * j]
        s2, t2 = pairs[2 * j + 1]
        r = f"aux/r/{j + 1}"
        q = f"aux/q/{j + 1}"
        new_vertices.append(Vertex(r, r, w))
        new_vertices.append(Vertex(q, q, w))
        new_edges.append(Edge(r, s1))
        new_edges.append(Edge(t1, q))
        new_edges.append(Edge(q, s2))
        new_edges.append(Edge(t2, r))
        rq.append((r, q))
    return graph.with_new_vertices(new_vertices, new_edges), rq


def approx_multicut(
    graph: WeightedDigraph,
    pairs: Sequence[tuple[str, str]],
    p: Fraction,
) -> ApproxResult:
    """Either a feasible multicut of cost <= ceil(k/2) * p, or
    NO_SOLUTION_AT_BUDGET when some two-pair group (or the leftover single
    pair) provably has no cut of cost <= p, which implies opt > p."""
    p = Fraction(p)
    pairs = list(pairs)
    k = len(pairs)
    endpoints = frozenset(x for pair in pairs for x in pair)
    for vid in endpoints:
        graph.vertex(vid)
    if k == 0:
        return Certificate(CertificateKind.VERTEX_CUT, frozenset(), Fraction(0))

    odd_pair = pairs.pop() if k % 2 == 1 else None
    members: set[str] = set()
    for j in range(len(pairs) // 2):
        group = pairs[2 * j : 2 * j + 2]
        augmented, [(r, q)] = pair_terminals(graph, group, p)
        cut = multiway_cut_within_budget(augmented, [r, q], p, protected=endpoints)
        if cut is None:
            return NO_SOLUTION_AT_BUDGET
        members |= cut.members
    if odd_pair is not None:
        s, t = odd_pair
        try:
            cut_cost, st_cut = min_vertex_st_cut(graph, s, t, protected=endpoints)
        except Infeasible:
            return NO_SOLUTION_AT_BUDGET
        if cut_cost > p:
            return NO_SOLUTION_AT_BUDGET
        members |= st_cut.members

    cost = cost_of(graph, members, CertificateKind.VERTEX_CUT)
    cert = Certificate(CertificateKind.VERTEX_CUT, frozenset(members), cost)
    demand = DemandSpec(DemandMode.CUT_PAIRS, tuple(pairs) + ((odd_pair,) if odd_pair else ()))
    assert verify_cut(graph, demand, cert), "returned cut must sever every pair"
    assert cost <= Fraction((k + 1) // 2) * p, "cost guarantee violated"
    return cert
