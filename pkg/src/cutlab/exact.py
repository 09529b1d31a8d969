"""Desk-scale exact oracles for cut and network problems.

Everything here is exact and deterministic:

* min-weight vertex s-t cut by node splitting + max-flow on integer-scaled
  capacities (multiply by the lcm of the weight denominators, so the flow
  value is an exact integer);
* budget-bounded vertex multicut / multiway cut by branching on the vertices
  of a surviving demanded path, memoizing visited cut-sets;
* budget-bounded edge-selection search (directed network design) by
  best-first search over edge subsets ordered by total cost.

Among minimum-cost solutions the lexicographically smallest member-id set is
returned, so golden tests reproduce bit-for-bit. Budget comparisons are exact
rational comparisons; no tolerances anywhere.

The branching searches are meant for instances with at most a dozen or so
deletable vertices; the edge-selection oracle refuses instances whose pruned
candidate edge set is larger than a configurable cap rather than running
forever.
"""

from __future__ import annotations

import heapq
from collections import deque
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

from .errors import CutlabError, Infeasible, Refused
from .graph import (
    Certificate,
    CertificateKind,
    DemandSpec,
    EdgeKey,
    WeightedDigraph,
    _forward_closure,
    cost_of,
)


class _Dinic:
    """Max-flow on integer capacities."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.adj: list[list[list[int]]] = [[] for _ in range(n)]  # [to, cap, rev]

    def add_edge(self, u: int, v: int, cap: int) -> None:
        self.adj[u].append([v, cap, len(self.adj[v])])
        self.adj[v].append([u, 0, len(self.adj[u]) - 1])

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            q = deque([s])
            while q:
                u = q.popleft()
                for e in self.adj[u]:
                    if e[1] > 0 and level[e[0]] < 0:
                        level[e[0]] = level[u] + 1
                        q.append(e[0])
            if level[t] < 0:
                return flow
            it = [0] * self.n

            def dfs(u: int, f: int) -> int:
                if u == t:
                    return f
                while it[u] < len(self.adj[u]):
                    e = self.adj[u][it[u]]
                    v = e[0]
                    if e[1] > 0 and level[v] == level[u] + 1:
                        d = dfs(v, min(f, e[1]))
                        if d > 0:
                            e[1] -= d
                            self.adj[v][e[2]][1] += d
                            return d
                    it[u] += 1
                return 0

            while True:
                pushed = dfs(s, 1 << 62)
                if pushed == 0:
                    break
                flow += pushed


def _deletable_vertices(
    graph: WeightedDigraph, undeletable: frozenset[str]
) -> dict[str, Fraction]:
    """Vertices that a cut may contain: weighted and not protected."""
    out: dict[str, Fraction] = {}
    for v in graph.vertices:
        if v.id in undeletable or v.weight is None:
            continue
        out[v.id] = v.weight
    return out


def _min_cut_value(
    graph: WeightedDigraph,
    s: str,
    t: str,
    deletable: dict[str, Fraction],
    scale: int,
) -> Optional[int]:
    """Scaled min vertex cut value between s and t, or None if no finite cut
    exists (some s->t path avoids every deletable vertex)."""
    ids = [v.id for v in graph.vertices]
    index = {vid: i for i, vid in enumerate(ids)}
    n = len(ids)
    # v_in = 2i, v_out = 2i + 1
    total = sum(int(w * scale) for w in deletable.values())
    inf = total + 1
    dinic = _Dinic(2 * n)
    for vid in ids:
        i = index[vid]
        cap = int(deletable[vid] * scale) if vid in deletable else inf
        dinic.add_edge(2 * i, 2 * i + 1, cap)
    for e in graph.edges:
        dinic.add_edge(2 * index[e.src] + 1, 2 * index[e.dst], inf)
    value = dinic.max_flow(2 * index[s] + 1, 2 * index[t])
    if value >= inf:
        return None
    return value


def min_vertex_st_cut(
    graph: WeightedDigraph,
    s: str,
    t: str,
    protected: frozenset[str] = frozenset(),
) -> tuple[Fraction, Certificate]:
    """Minimum-weight set of vertices (never s, t, or protected ones) whose
    removal kills every s->t path.

    Raises Infeasible when no vertex cut exists, in particular when the edge
    s->t is present.
    """
    if s == t:
        raise CutlabError("s and t must differ")
    if not graph.has_vertex(s) or not graph.has_vertex(t):
        from .errors import UnknownVertex

        raise UnknownVertex(s if not graph.has_vertex(s) else t)
    if graph.has_edge(s, t):
        raise Infeasible(f"direct edge {s!r}->{t!r}; no vertex cut can sever it")
    undeletable = protected | {s, t}
    deletable = _deletable_vertices(graph, undeletable)
    scale = lcm(*(w.denominator for w in deletable.values()), 1)
    best = _min_cut_value(graph, s, t, deletable, scale)
    if best is None:
        raise Infeasible("an s->t path avoids every deletable vertex")
    target = Fraction(best, scale)

    # Build the lexicographically smallest optimal cut: repeatedly fix the
    # smallest id whose forced inclusion still admits an optimal completion.
    chosen: list[str] = []
    chosen_weight = Fraction(0)
    candidates = sorted(deletable)
    pos = 0
    current = graph
    while True:
        residual = _min_cut_value(
            current, s, t, {v: deletable[v] for v in deletable if v not in chosen}, scale
        )
        if residual == 0:
            break
        while pos < len(candidates):
            v = candidates[pos]
            pos += 1
            if v in chosen:
                continue
            need = target - chosen_weight - deletable[v]
            if need < 0:
                continue
            reduced = current.without_vertices([v])
            rest = _min_cut_value(
                reduced,
                s,
                t,
                {u: deletable[u] for u in deletable if u not in chosen and u != v},
                scale,
            )
            if rest is not None and Fraction(rest, scale) == need:
                chosen.append(v)
                chosen_weight += deletable[v]
                current = reduced
                break
        else:  # pragma: no cover - the loop above always completes a cut
            raise CutlabError("failed to complete an optimal cut")
    cert = Certificate(CertificateKind.VERTEX_CUT, frozenset(chosen), target)
    return target, cert


def _surviving_path(
    graph: WeightedDigraph,
    pairs: Sequence[tuple[str, str]],
    removed: frozenset[str],
) -> Optional[list[str]]:
    """Shortest surviving path for the first still-connected demanded pair."""
    adj = graph.out_adj
    for s, t in pairs:
        if s in removed or t in removed:
            continue
        prev: dict[str, Optional[str]] = {s: None}
        q = deque([s])
        found = False
        while q and not found:
            u = q.popleft()
            for e in adj[u]:
                v = e.dst
                if v in removed or v in prev:
                    continue
                prev[v] = u
                if v == t:
                    found = True
                    break
                q.append(v)
        if found:
            path = [t]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])  # type: ignore[arg-type]
            path.reverse()
            return path
    return None


def multicut_within_budget(
    graph: WeightedDigraph,
    pairs: Sequence[tuple[str, str]],
    budget: Fraction,
    protected: frozenset[str] = frozenset(),
) -> Optional[Certificate]:
    """A minimum-cost vertex cut of total weight <= budget severing every
    listed ordered pair, or None if none exists.

    Exhaustive branching on the vertices of a surviving demanded path, with
    visited cut-sets memoized; intended for small instances (n <~ 12). Ties
    between optimal cuts break toward the lexicographically smallest id set
    (among inclusion-minimal cuts, which with positive weights covers every
    optimal cut).
    """
    endpoints = frozenset(x for pair in pairs for x in pair)
    for vid in endpoints:
        graph.vertex(vid)
    deletable = _deletable_vertices(graph, protected | endpoints)
    pairs = tuple(pairs)
    budget = Fraction(budget)

    best: Optional[tuple[Fraction, tuple[str, ...]]] = None
    visited: set[frozenset[str]] = set()

    stack: list[tuple[frozenset[str], Fraction]] = [(frozenset(), Fraction(0))]
    visited.add(frozenset())
    while stack:
        cut, cost = stack.pop()
        if best is not None and cost > best[0]:
            continue
        path = _surviving_path(graph, pairs, cut)
        if path is None:
            cand = (cost, tuple(sorted(cut)))
            if best is None or cand < best:
                best = cand
            continue
        for v in path:
            if v not in deletable or v in cut:
                continue
            ncost = cost + deletable[v]
            if ncost > budget:
                continue
            if best is not None and ncost > best[0]:
                continue
            ncut = cut | {v}
            if ncut in visited:
                continue
            visited.add(ncut)
            stack.append((ncut, ncost))
    if best is None:
        return None
    return Certificate(CertificateKind.VERTEX_CUT, frozenset(best[1]), best[0])


def multiway_cut_within_budget(
    graph: WeightedDigraph,
    terminals: Sequence[str],
    budget: Fraction,
    protected: frozenset[str] = frozenset(),
) -> Optional[Certificate]:
    """Budgeted vertex multiway cut: sever every ordered pair of terminals."""
    terms = tuple(terminals)
    if len(set(terms)) != len(terms):
        raise CutlabError("terminals must be pairwise distinct")
    pairs = tuple((a, b) for a in terms for b in terms if a != b)
    return multicut_within_budget(graph, pairs, budget, protected)


def min_multicut_exact(
    graph: WeightedDigraph,
    pairs: Sequence[tuple[str, str]],
    protected: frozenset[str] = frozenset(),
) -> tuple[Fraction, Certificate]:
    """Exact minimum-weight multicut for the listed ordered pairs.

    Raises Infeasible when a demanded pair is joined by a direct edge, or
    more generally when no cut of deletable vertices works.
    """
    for s, t in pairs:
        if graph.has_edge(s, t):
            raise Infeasible(f"direct edge {s!r}->{t!r}")
    endpoints = frozenset(x for pair in pairs for x in pair)
    deletable = _deletable_vertices(graph, protected | endpoints)
    total = sum(deletable.values(), Fraction(0))
    cert = multicut_within_budget(graph, pairs, total, protected)
    if cert is None:
        raise Infeasible("some demanded pair cannot be severed by deletable vertices")
    return cert.cost, cert


def min_network_within_budget(
    graph: WeightedDigraph,
    demand: DemandSpec,
    budget: Fraction,
    edge_cap: int = 24,
) -> Optional[Certificate]:
    """A feasible edge network of total weight <= budget, of minimum cost, or
    None if none exists.

    Edges lying on no demanded source->sink path are pruned first; if more
    than `edge_cap` candidate edges remain the oracle raises Refused instead
    of searching, signalling the caller to fall back to extraction-based
    checks.
    """
    if demand.mode.is_cut:
        raise CutlabError("min_network_within_budget needs a network-mode demand")
    demand.check_against(graph)
    for e in graph.edges:
        if e.weight is None:
            raise CutlabError("edge-selection search needs every edge weighted")
    pairs = demand.ordered_pairs()
    budget = Fraction(budget)

    fwd: dict[str, set[str]] = {}
    back_adj: dict[str, list[str]] = {v.id: [] for v in graph.vertices}
    for e in graph.edges:
        back_adj[e.dst].append(e.src)

    def backward_closure(t: str) -> set[str]:
        seen = {t}
        stack = [t]
        while stack:
            u = stack.pop()
            for w in back_adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    bwd: dict[str, set[str]] = {}
    for s, t in pairs:
        if s not in fwd:
            fwd[s] = _forward_closure(graph, (s,))
        if t not in bwd:
            bwd[t] = backward_closure(t)

    candidates: list[EdgeKey] = []
    weights: dict[EdgeKey, Fraction] = {}
    for e in graph.edges:
        if any(e.src in fwd[s] and e.dst in bwd[t] for s, t in pairs):
            candidates.append(e.key)
            weights[e.key] = e.weight  # type: ignore[assignment]
    if len(candidates) > edge_cap:
        raise Refused(
            f"{len(candidates)} candidate edges exceed the oracle cap of {edge_cap}"
        )

    out_by_src: dict[str, list[EdgeKey]] = {}
    for key in candidates:
        out_by_src.setdefault(key[0], []).append(key)

    def first_unsatisfied(selected: frozenset[EdgeKey]) -> Optional[tuple[str, set[str]]]:
        for s, t in pairs:
            reach = _forward_closure(graph, (s,), frozenset(), selected)
            if t not in reach:
                return s, reach
        return None

    start: frozenset[EdgeKey] = frozenset()
    heap: list[tuple[Fraction, tuple[EdgeKey, ...], frozenset[EdgeKey]]] = [
        (Fraction(0), (), start)
    ]
    seen_states: set[frozenset[EdgeKey]] = {start}
    while heap:
        cost, _, selected = heapq.heappop(heap)
        missing = first_unsatisfied(selected)
        if missing is None:
            return Certificate(CertificateKind.EDGE_NETWORK, selected, cost)
        _, reach = missing
        for u in reach:
            for key in out_by_src.get(u, ()):
                if key in selected or key[1] in reach:
                    continue
                ncost = cost + weights[key]
                if ncost > budget:
                    continue
                nstate = selected | {key}
                if nstate in seen_states:
                    continue
                seen_states.add(nstate)
                heapq.heappush(heap, (ncost, tuple(sorted(nstate)), nstate))
    return None
