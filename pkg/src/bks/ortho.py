"""Orthogonality graph of a ray set and enumeration of its complete bases."""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .rays import RaySet, dot

Basis = tuple[int, ...]


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(indices: Sequence[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class OrthoGraph:
    """Vertex i is ray i of the source set; ``adj[i]`` is a neighbour bitmask."""

    adj: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.adj)

    def degree(self, i: int) -> int:
        return self.adj[i].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, a in enumerate(self.adj) for j in bits(a) if i < j]


def build_graph(rays: RaySet) -> OrthoGraph:
    n = len(rays)
    adj = [0] * n
    for i in range(n):
        ri = rays[i]
        for j in range(i + 1, n):
            if dot(ri, rays[j]) == 0:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return OrthoGraph(tuple(adj))


def cliques_of_size(adj: Sequence[int], size: int) -> list[Basis]:
    """All cliques with exactly ``size`` vertices, lexicographically ordered.

    Branches extend with higher-indexed common neighbours only, and a branch is
    cut as soon as too few candidates remain to reach ``size``.
    """
    out: list[Basis] = []
    if size <= 0:
        return out
    n = len(adj)

    def extend(clique: list[int], cand: int) -> None:
        need = size - len(clique)
        if need == 0:
            out.append(tuple(clique))
            return
        while cand and cand.bit_count() >= need:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            clique.append(v)
            extend(clique, cand & adj[v])
            clique.pop()

    extend([], (1 << n) - 1)
    return out


def enumerate_bases(rays: RaySet, graph: OrthoGraph | None = None) -> list[Basis]:
    """Every set of ``rays.dimension`` mutually orthogonal rays, as sorted index tuples."""
    graph = graph or build_graph(rays)
    return cliques_of_size(graph.adj, rays.dimension)


def incidence_stats(rays: RaySet, bases: Sequence[Basis] | None = None) -> list[int]:
    """Number of bases containing each ray."""
    if bases is None:
        bases = enumerate_bases(rays)
    counts = [0] * len(rays)
    for b in bases:
        for i in b:
            counts[i] += 1
    return counts


def exact_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by Gaussian elimination on fractions."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def to_json(rays: RaySet, bases: Sequence[Basis]) -> str:
    return json.dumps(
        {"dimension": rays.dimension, "rays": rays.rows(), "bases": [list(b) for b in bases]}
    )


def to_dot(rays: RaySet, graph: OrthoGraph | None = None) -> str:
    graph = graph or build_graph(rays)
    lines = ["graph orthogonality {"]
    for i, r in enumerate(rays):
        lines.append(f'  {i} [label="({",".join(map(str, r.coords))})"];')
    for i, j in graph.edges():
        lines.append(f"  {i} -- {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
