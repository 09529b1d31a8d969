"""Colored subgraph selection instances, splitter families, and the pipelines
that turn a clique question into a batch of colored instances.

An instance is an undirected base graph whose vertices are partitioned into
color classes, plus a pattern graph ("supergraph") on the class indices. An
assignment picks one vertex per class; its value is the fraction of pattern
edges whose endpoint classes got adjacent vertices. The pipelines below
produce one instance per function of a splitter family, so a planted clique
survives as a value-1 instance in at least one of them.

Splitter families are built by verified greedy/random set cover over the
size-q subsets rather than any asymptotically optimal construction: at desk
scale only the coverage guarantee matters, and both builders check it
exhaustively before returning.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping, Optional, Sequence

from .errors import BadAssignment, BadShape, CutlabError, Refused

Assignment = Mapping[int, str]


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on vertex set {1, ..., n}."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                raise CutlabError(f"edge ({u}, {v}) out of range or unnormalized")

    @staticmethod
    def from_edges(n: int, edges) -> "SimpleGraph":
        norm = frozenset((min(u, v), max(u, v)) for u, v in edges if u != v)
        return SimpleGraph(n, norm)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges


PAD_PREFIX = "pad/"


@dataclass(frozen=True)
class McsiInstance:
    """Base graph + equal-size color classes + supergraph on class indices.

    `groups[i-1]` is the class of supernode i (1-based). When
    `biclique_split` is set, the first that many classes are the row side and
    the rest are the column side of a bipartite pattern; downstream builders
    read the two families through `v_side()` / `w_side()`.
    """

    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    groups: tuple[tuple[str, ...], ...]
    superedges: frozenset[tuple[int, int]]
    biclique_split: Optional[int] = None

    def __post_init__(self) -> None:
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise BadShape("duplicate base vertices")
        seen: set[str] = set()
        for grp in self.groups:
            for v in grp:
                if v not in vset:
                    raise BadShape(f"group vertex {v!r} missing from base graph")
                if v in seen:
                    raise BadShape(f"vertex {v!r} in two color classes")
                seen.add(v)
        sizes = {len(g) for g in self.groups}
        if len(sizes) > 1:
            raise BadShape(f"color classes must be padded to equal size, got {sorted(sizes)}")
        for u, v in self.edges:
            if u not in vset or v not in vset:
                raise BadShape(f"edge ({u!r}, {v!r}) off the vertex set")
            if u == v:
                raise BadShape("self-loop in base graph")
        ell = len(self.groups)
        for i, j in self.superedges:
            if not (1 <= i < j <= ell):
                raise BadShape(f"superedge ({i}, {j}) out of range or unnormalized")
        if self.biclique_split is not None and not (0 < self.biclique_split < ell):
            raise BadShape("biclique split out of range")

    @property
    def ell(self) -> int:
        return len(self.groups)

    @property
    def group_size(self) -> int:
        return len(self.groups[0])

    def group(self, supernode: int) -> tuple[str, ...]:
        return self.groups[supernode - 1]

    def has_edge(self, u: str, v: str) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def v_side(self) -> tuple[tuple[str, ...], ...]:
        if self.biclique_split is None:
            raise BadShape("instance has no bipartite split")
        return self.groups[: self.biclique_split]

    def w_side(self) -> tuple[tuple[str, ...], ...]:
        if self.biclique_split is None:
            raise BadShape("instance has no bipartite split")
        return self.groups[self.biclique_split :]


def _normalize_edge(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u < v else (v, u)


def make_instance(
    vertices: Sequence[str],
    edges,
    groups: Sequence[Sequence[str]],
    superedges,
    biclique_split: Optional[int] = None,
) -> McsiInstance:
    """Build an instance, padding unequal color classes with fresh isolated
    vertices (ids prefixed "pad/")."""
    vertices = list(vertices)
    groups = [list(g) for g in groups]
    size = max((len(g) for g in groups), default=0)
    size = max(size, 1)
    for i, grp in enumerate(groups, start=1):
        t = 0
        while len(grp) < size:
            pad = f"{PAD_PREFIX}{i}/{t}"
            grp.append(pad)
            vertices.append(pad)
            t += 1
    norm_edges = frozenset(_normalize_edge(u, v) for u, v in edges)
    norm_super = frozenset((min(i, j), max(i, j)) for i, j in superedges)
    return McsiInstance(
        vertices=tuple(vertices),
        edges=norm_edges,
        groups=tuple(tuple(g) for g in groups),
        superedges=norm_super,
        biclique_split=biclique_split,
    )


def assignment_value(inst: McsiInstance, phi: Assignment) -> Fraction:
    """Fraction of superedges (i, j) with phi(i) adjacent to phi(j), exact."""
    for i in range(1, inst.ell + 1):
        if i not in phi or phi[i] not in inst.group(i):
            raise BadAssignment(f"supernode {i} maps outside its class")
    if not inst.superedges:
        return Fraction(1)
    covered = sum(1 for i, j in inst.superedges if inst.has_edge(phi[i], phi[j]))
    return Fraction(covered, len(inst.superedges))


def max_value_bruteforce(
    inst: McsiInstance, cap: int = 10**6
) -> tuple[Fraction, dict[int, str]]:
    """Exact optimum by enumerating all assignments; canonical (first in the
    lexicographic class order) argmax. Refuses when the product of class
    sizes exceeds `cap`."""
    space = 1
    for g in inst.groups:
        space *= len(g)
    if space > cap:
        raise Refused(f"{space} assignments exceed the enumeration cap of {cap}")
    supernodes = list(range(1, inst.ell + 1))
    best_val = Fraction(-1)
    best: dict[int, str] = {}
    for choice in itertools.product(*(inst.group(i) for i in supernodes)):
        phi = dict(zip(supernodes, choice))
        val = assignment_value(inst, phi)
        if val > best_val:
            best_val = val
            best = phi
    return best_val, best


@dataclass(frozen=True)
class SplitterFamily:
    """Functions [n] -> [q] such that every size-q subset of [n] is mapped
    injectively by at least one of them. `functions[k][a-1]` is the image of
    element a under the k-th function."""

    n: int
    q: int
    functions: tuple[tuple[int, ...], ...]


def verify_splitter(family: SplitterFamily) -> bool:
    """Exhaustively check the coverage guarantee over all size-q subsets."""
    n, q = family.n, family.q
    if any(len(f) != n or not all(1 <= x <= q for x in f) for f in family.functions):
        return False
    for subset in itertools.combinations(range(1, n + 1), q):
        if not any(len({f[a - 1] for a in subset}) == q for f in family.functions):
            return False
    return True


def _balanced_interval_maps(n: int, q: int) -> list[tuple[int, ...]]:
    """All maps assigning consecutive blocks of near-equal size to 1..q."""
    base, extra = divmod(n, q)
    sizes = [base + 1] * extra + [base] * (q - extra)
    maps = []
    for arrangement in sorted(set(itertools.permutations(sizes))):
        values: list[int] = []
        for color, size in enumerate(arrangement, start=1):
            values.extend([color] * size)
        maps.append(tuple(values))
    return maps


def build_splitter(
    n: int,
    q: int,
    method: str = "greedy",
    seed: int = 0,
    cap: int = 10**6,
) -> SplitterFamily:
    """A verified splitter family for parameters (n, q).

    greedy: repeatedly add the candidate (from the balanced interval maps
    plus a seeded stream of random maps) covering the most still-uncovered
    size-q subsets. random: add sampled maps while they cover something new.
    Both verify the result exhaustively before returning. Refuses when there
    are more than `cap` subsets to track.
    """
    if not (n >= q >= 1):
        raise CutlabError(f"need n >= q >= 1, got n={n}, q={q}")
    if comb(n, q) > cap:
        raise Refused(f"C({n},{q}) exceeds the enumeration cap of {cap}")
    if n == q:
        family = SplitterFamily(n, q, (tuple(range(1, n + 1)),))
        assert verify_splitter(family)
        return family
    if q == 1:
        family = SplitterFamily(n, q, ((1,) * n,))
        assert verify_splitter(family)
        return family

    rng = random.Random(seed)
    uncovered = {
        subset: None for subset in itertools.combinations(range(1, n + 1), q)
    }

    def covered_by(f: tuple[int, ...]):
        return [s for s in uncovered if len({f[a - 1] for a in s}) == q]

    def random_map() -> tuple[int, ...]:
        return tuple(rng.randint(1, q) for _ in range(n))

    chosen: list[tuple[int, ...]] = []
    if method == "greedy":
        pool = _balanced_interval_maps(n, q) + [random_map() for _ in range(64)]
        while uncovered:
            best_f = None
            best_cov: list = []
            for f in pool:
                cov = covered_by(f)
                if len(cov) > len(best_cov):
                    best_f, best_cov = f, cov
            if best_f is None or not best_cov:
                pool.extend(random_map() for _ in range(64))
                continue
            chosen.append(best_f)
            for s in best_cov:
                del uncovered[s]
    elif method == "random":
        while uncovered:
            f = random_map()
            cov = covered_by(f)
            if cov:
                chosen.append(f)
                for s in cov:
                    del uncovered[s]
    else:
        raise CutlabError(f"unknown splitter method {method!r}")

    family = SplitterFamily(n, q, tuple(chosen))
    assert verify_splitter(family)
    return family


def _classes_from_function(f: tuple[int, ...], q: int) -> list[list[str]]:
    groups: list[list[str]] = [[] for _ in range(q)]
    for a, color in enumerate(f, start=1):
        groups[color - 1].append(str(a))
    return groups


def clique_to_mcsi_clique(
    g: SimpleGraph, ell: int, family: SplitterFamily
) -> list[McsiInstance]:
    """One complete-pattern instance per splitter function: class i is the
    preimage of i, and the pattern is the complete graph on [ell]."""
    if family.n != g.n or family.q != ell:
        raise BadShape(f"need an ({g.n},{ell},{ell}) splitter family")
    base_edges = [(str(u), str(v)) for u, v in sorted(g.edges)]
    superedges = [(i, j) for i in range(1, ell + 1) for j in range(i + 1, ell + 1)]
    instances = []
    for f in family.functions:
        instances.append(
            make_instance(
                vertices=[str(v) for v in range(1, g.n + 1)],
                edges=base_edges,
                groups=_classes_from_function(f, ell),
                superedges=superedges,
            )
        )
    return instances


def clique_to_mcsi_biclique(
    g: SimpleGraph, ell: int, family: SplitterFamily
) -> list[McsiInstance]:
    """Like clique_to_mcsi_clique but with a complete bipartite pattern
    between classes {1..ell/2} and {ell/2+1..ell}; the split is recorded so
    network-design builders can read the two families directly."""
    if ell % 2 != 0:
        raise BadShape("the bipartite pipeline needs an even class count")
    if family.n != g.n or family.q != ell:
        raise BadShape(f"need an ({g.n},{ell},{ell}) splitter family")
    half = ell // 2
    base_edges = [(str(u), str(v)) for u, v in sorted(g.edges)]
    superedges = [(i, half + j) for i in range(1, half + 1) for j in range(1, half + 1)]
    instances = []
    for f in family.functions:
        instances.append(
            make_instance(
                vertices=[str(v) for v in range(1, g.n + 1)],
                edges=base_edges,
                groups=_classes_from_function(f, ell),
                superedges=superedges,
                biclique_split=half,
            )
        )
    return instances
