"""Isomorphism of bi-Cayley graphs and the search for T = g S^alpha."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .bicayley import BiCayleyGraph, ConnectionSet, build, translate_and_map
from .group import Automorphism, Elem, TooLarge
from .spectra import bipartite_charpoly

DEFAULT_MAX_NODES = 200_000


class SearchLimit(TooLarge):
    """The backtracking search exceeded its node budget."""


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    mapping: Optional[tuple[int, ...]] = None  # vertex i of graph 1 -> mapping[i] of graph 2
    certificate: Optional[str] = None  # why non-isomorphic
    charpolys: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.isomorphic

    def to_json(self) -> dict:
        if self.isomorphic:
            return {"verdict": "isomorphic", "mapping": list(self.mapping)}
        out = {"verdict": "non-isomorphic", "certificate": self.certificate}
        if self.certificate == "spectral-mismatch":
            out["charpolys"] = [[str(c) for c in p] for p in self.charpolys]
        return out


@dataclass(frozen=True)
class EquivalenceWitness:
    g: Elem
    alpha: Automorphism

    def to_json(self, S: ConnectionSet) -> dict:
        r = S.group.render
        if self.alpha.is_sigma:
            alpha = {"r": self.alpha.r, "s": self.alpha.s}
        else:
            alpha = {"table": [r(x) for x in self.alpha.table]}
        return {"g": r(self.g), "alpha": alpha}


@lru_cache(maxsize=4096)
def cached_charpoly(S: ConnectionSet) -> tuple[int, ...]:
    return tuple(bipartite_charpoly(build(S).biadjacency))


def is_isomorphism(mapping, g1: BiCayleyGraph, g2: BiCayleyGraph) -> bool:
    """Edges go to edges and non-edges to non-edges."""
    perm = np.asarray(mapping)
    if sorted(perm.tolist()) != list(range(g1.num_vertices)):
        return False
    a1, a2 = g1.adjacency, g2.adjacency
    return bool(np.array_equal(a2[np.ix_(perm, perm)], a1))


def _component_profile(g: BiCayleyGraph) -> list[int]:
    return sorted(len(c) for c in g.components())


def _valency_profile(g: BiCayleyGraph) -> Counter:
    return Counter(len(nb) for nb in g.neighbors)


def graphs_isomorphic(g1: BiCayleyGraph, g2: BiCayleyGraph, *, spectral: bool = True,
                      max_nodes: int = DEFAULT_MAX_NODES) -> IsoResult:
    """Decide isomorphism exactly.

    Cheap invariants first, then the integer characteristic polynomials
    (a mismatch certifies non-isomorphism), then a backtracking search with
    colour refinement. ``spectral=False`` skips the polynomial comparison,
    which is how spectral certificates are audited.
    """
    if g1.num_vertices != g2.num_vertices:
        return IsoResult(False, certificate="order-mismatch")
    polys = None
    if spectral:
        polys = (cached_charpoly(g1.S), cached_charpoly(g2.S))
        if polys[0] != polys[1]:
            return IsoResult(False, certificate="spectral-mismatch", charpolys=polys)
    if _valency_profile(g1) != _valency_profile(g2) or _component_profile(g1) != _component_profile(g2):
        return IsoResult(False, certificate="invariant-mismatch", charpolys=polys)
    search = _Search(g1, g2, max_nodes)
    mapping = search.run()
    if mapping is None:
        return IsoResult(False, certificate="exhausted-search", charpolys=polys, nodes=search.nodes)
    if not is_isomorphism(mapping, g1, g2):
        raise AssertionError("search produced a map that is not an isomorphism")
    return IsoResult(True, mapping=mapping, charpolys=polys, nodes=search.nodes)


class _Search:
    """Individualisation-refinement search on the disjoint union of two graphs.

    Any isomorphism can be composed with a right translation of the second
    graph, which is transitive on each part, so the image of vertex (1, 0)
    may be fixed to (1, 0) when parts are kept and to (1, 1) when they are
    swapped. Every isomorphism keeps or swaps the parts globally up to
    such a choice because all components of a bi-Cayley graph are
    isomorphic, so the two alignments cover all cases.
    """

    def __init__(self, g1: BiCayleyGraph, g2: BiCayleyGraph, max_nodes: int):
        self.n = g1.num_vertices
        self.half = g1.order
        off = self.n
        self.adj = [list(nb) for nb in g1.neighbors] + [[v + off for v in nb] for nb in g2.neighbors]
        self.max_nodes = max_nodes
        self.nodes = 0

    def run(self) -> Optional[tuple[int, ...]]:
        n, h = self.n, self.half
        for swap in (False, True):
            colors = []
            for i in range(n):
                colors.append(0 if i < h else 1)
            for i in range(n):
                part = 0 if i < h else 1
                colors.append(part ^ 1 if swap else part)
            seed_target = n + (h if swap else 0)
            colors[0] = 2
            colors[seed_target] = 2
            found = self._search(colors)
            if found is not None:
                return found
        return None

    def _refine(self, colors: list[int]) -> Optional[list[int]]:
        n = self.n
        adj = self.adj
        ncol = len(set(colors))
        while True:
            sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(2 * n)]
            table = {s: i for i, s in enumerate(sorted(set(sigs)))}
            new = [table[s] for s in sigs]
            c1 = Counter(new[:n])
            c2 = Counter(new[n:])
            if c1 != c2:
                return None
            if len(table) == ncol:
                return new
            colors, ncol = new, len(table)

    def _search(self, colors: list[int]) -> Optional[tuple[int, ...]]:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise SearchLimit(f"isomorphism search exceeded {self.max_nodes} nodes")
        colors = self._refine(colors)
        if colors is None:
            return None
        n = self.n
        cells: dict[int, list[int]] = {}
        for v in range(n):
            cells.setdefault(colors[v], []).append(v)
        target = None
        for c, vs in sorted(cells.items(), key=lambda kv: (len(kv[1]), kv[0])):
            if len(vs) > 1:
                target = c
                break
        if target is None:
            pos = {colors[w]: w - n for w in range(n, 2 * n)}
            mapping = tuple(pos[colors[v]] for v in range(n))
            return mapping if self._check(mapping) else None
        v = cells[target][0]
        fresh = max(colors) + 1
        for w in range(n, 2 * n):
            if colors[w] != target:
                continue
            trial = list(colors)
            trial[v] = fresh
            trial[w] = fresh
            found = self._search(trial)
            if found is not None:
                return found
        return None

    def _check(self, mapping: tuple[int, ...]) -> bool:
        off = self.n
        for v in range(self.n):
            img = {mapping[u] for u in self.adj[v]}
            if img != {w - off for w in self.adj[mapping[v] + off]}:
                return False
        return True


def bcay_equivalent(S: ConnectionSet, T: ConnectionSet) -> Optional[EquivalenceWitness]:
    """The lexicographically first (g, alpha) with T = g S^alpha, if any.

    Candidates are ordered by g (canonical element order) and then by the
    automorphism enumeration order.
    """
    if S.ambient != T.ambient:
        raise ValueError("connection sets live in different groups")
    if len(S) != len(T):
        return None
    amb = S.ambient
    target = set(T.elements)
    images = [(alpha, [amb.apply(alpha, s) for s in S.elements]) for alpha in amb.automorphisms()]
    for g in amb.carrier:
        for alpha, img in images:
            if all(amb.mul(g, s) in target for s in img):
                witness = EquivalenceWitness(g, alpha)
                assert translate_and_map(S, g, alpha).elements == T.elements
                return witness
    return None


def reduced_iso_check(S: ConnectionSet, T: ConnectionSet, **kw) -> bool:
    """Isomorphism of BCay(<S S^-1>, S) and BCay(<T T^-1>, T).

    Both sets are normalized first, so that S lies inside <S S^-1>.
    """
    rs, rt = S.normalized().restricted(), T.normalized().restricted()
    if rs.ambient.order != rt.ambient.order:
        return False
    return graphs_isomorphic(build(rs), build(rt), **kw).isomorphic
