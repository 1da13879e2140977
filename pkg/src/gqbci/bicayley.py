"""Bi-Cayley graphs BCay(G, S) over Q_4n and its subgroups.

Vertices are ``(x, 0)`` and ``(x, 1)`` for ``x`` in the ambient group; the
edges are ``{(x, 0), (s*x, 1)}`` for ``s`` in ``S``. Vertex ``i`` of the full
adjacency matrix is ``(elements[i], 0)`` for ``i < |G|`` and
``(elements[i - |G|], 1)`` otherwise.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .group import GQ, IDENTITY, Automorphism, Elem, Subgroup, subgroup_of


@dataclass(frozen=True)
class ConnectionSet:
    ambient: Subgroup
    elements: tuple[Elem, ...]

    def __post_init__(self):
        els = tuple(sorted(self.elements))
        if not els:
            raise ValueError("connection set must be nonempty")
        if len(set(els)) != len(els):
            raise ValueError("connection set has duplicate elements")
        for x in els:
            if x not in self.ambient:
                raise ValueError(f"{self.ambient.render(x)} is not in the ambient group")
        object.__setattr__(self, "elements", els)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    @property
    def group(self) -> GQ:
        return self.ambient.group

    def render(self) -> str:
        return "{" + ",".join(self.group.render(x) for x in self.elements) + "}"

    def __repr__(self) -> str:
        return f"ConnectionSet(n={self.group.n}, |G|={self.ambient.order}, S={self.render()})"

    def key(self) -> tuple[int, ...]:
        """Lexicographic sort key over canonical element indices."""
        return tuple(self.group.index(x) for x in self.elements)

    def inverse(self) -> "ConnectionSet":
        return ConnectionSet(self.ambient, tuple(self.group.inv(x) for x in self.elements))

    def normalized(self) -> "ConnectionSet":
        """Left-translate by the inverse of the least element, so 1 is in S."""
        g = self.group
        return translate_and_map(self, g.inv(self.elements[0]))

    def is_normalized(self) -> bool:
        return IDENTITY in self.elements

    def difference_set(self) -> set[Elem]:
        g = self.group
        return {g.mul(s, g.inv(t)) for s in self.elements for t in self.elements}

    def restricted(self) -> "ConnectionSet":
        """The same set viewed inside <S S^-1> (the set must contain 1)."""
        if not self.is_normalized():
            raise ValueError("restriction to <SS^-1> requires 1 in S; normalize first")
        h = self.group.generated_subgroup(self.difference_set())
        return ConnectionSet(h, self.elements)


def connection_set(group: GQ | Subgroup, elements: Iterable[Elem] | str) -> ConnectionSet:
    amb = subgroup_of(group)
    if isinstance(elements, str):
        elements = amb.group.parse_set(elements)
    return ConnectionSet(amb, tuple(elements))


def translate_and_map(S: ConnectionSet, g: Elem = IDENTITY, alpha: Automorphism | None = None) -> ConnectionSet:
    """``g * S^alpha``."""
    amb = S.ambient
    if g not in amb:
        raise ValueError("translating element is outside the ambient group")
    imgs = S.elements if alpha is None else [amb.apply(alpha, s) for s in S.elements]
    return ConnectionSet(amb, tuple(amb.mul(g, s) for s in imgs))


@dataclass(frozen=True, eq=False)
class BiCayleyGraph:
    S: ConnectionSet
    biadjacency: np.ndarray  # B[x, z] = 1 iff z x^-1 in S; rows part 0, columns part 1

    @property
    def order(self) -> int:
        return self.S.ambient.order

    @property
    def elements(self) -> tuple[Elem, ...]:
        return self.S.ambient.carrier

    @property
    def num_vertices(self) -> int:
        return 2 * self.order

    @property
    def num_edges(self) -> int:
        return int(self.biadjacency.sum())

    def vertex(self, i: int) -> tuple[Elem, int]:
        n = self.order
        return (self.elements[i % n], i // n)

    def vertex_index(self, x: Elem, part: int) -> int:
        return part * self.order + self.S.ambient.index(x)

    @cached_property
    def adjacency(self) -> np.ndarray:
        n = self.order
        a = np.zeros((2 * n, 2 * n), dtype=np.int64)
        a[:n, n:] = self.biadjacency
        a[n:, :n] = self.biadjacency.T
        return a

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        a = self.adjacency
        return tuple(tuple(int(j) for j in np.flatnonzero(a[i])) for i in range(a.shape[0]))

    def edges(self) -> list[tuple[int, int]]:
        n = self.order
        xs, zs = np.nonzero(self.biadjacency)
        return sorted((int(x), int(z) + n) for x, z in zip(xs, zs))

    def edge_list_text(self) -> str:
        """One edge per line, ``(x,0)–(z,1)``, sorted by canonical vertex order."""
        r = self.S.group.render
        lines = []
        for u, v in self.edges():
            x, _ = self.vertex(u)
            z, _ = self.vertex(v)
            lines.append(f"({r(x)},0)–({r(z)},1)")
        return "\n".join(lines) + "\n"

    def bitmap_text(self) -> str:
        return "\n".join("".join("1" if v else "0" for v in row) for row in self.biadjacency) + "\n"

    def components(self) -> list[list[int]]:
        seen = [False] * self.num_vertices
        comps = []
        nb = self.neighbors
        for start in range(self.num_vertices):
            if seen[start]:
                continue
            seen[start] = True
            comp = [start]
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for v in nb[u]:
                    if not seen[v]:
                        seen[v] = True
                        comp.append(v)
                        queue.append(v)
            comps.append(sorted(comp))
        return comps


def build(S: ConnectionSet) -> BiCayleyGraph:
    amb = S.ambient
    n = amb.order
    B = np.zeros((n, n), dtype=np.int64)
    for x in amb.carrier:
        i = amb.index(x)
        for s in S.elements:
            B[i, amb.index(amb.mul(s, x))] = 1
    B.setflags(write=False)
    return BiCayleyGraph(S, B)


def is_connected(S: ConnectionSet) -> bool:
    """Connectivity by BFS, checked against the <S S^-1> = G criterion."""
    by_bfs = len(build(S).components()) == 1
    by_group = S.group.generated_subgroup(S.difference_set()).order == S.ambient.order
    if by_bfs != by_group:
        raise AssertionError(f"connectivity routes disagree for {S!r}")
    return by_bfs


def right_translation(g: Elem, graph: BiCayleyGraph) -> np.ndarray:
    """The vertex permutation R(g): (x, i) -> (x g, i), as an index array."""
    amb = graph.S.ambient
    if g not in amb:
        raise ValueError("element is outside the ambient group")
    n = graph.order
    perm = np.empty(2 * n, dtype=np.int64)
    for x in amb.carrier:
        i = amb.index(x)
        j = amb.index(amb.mul(x, g))
        perm[i] = j
        perm[n + i] = n + j
    return perm


def is_graph_automorphism(perm: np.ndarray, graph: BiCayleyGraph) -> bool:
    a = graph.adjacency
    return bool(np.array_equal(a[np.ix_(perm, perm)], a))


def normalized_sets(group: GQ | Subgroup, size: int) -> list[ConnectionSet]:
    """All connection sets of the given size containing 1, in lexicographic order."""
    from itertools import combinations

    amb = subgroup_of(group)
    rest = [x for x in amb.carrier if x != IDENTITY]
    return [ConnectionSet(amb, (IDENTITY,) + c) for c in combinations(rest, size - 1)]
