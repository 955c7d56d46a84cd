"""Simple undirected graphs on vertices 0..n-1 with bitmask vertex sets.

Graphs are loop-free and have no multiple edges.  Vertices are dense
integers so that vertex sets can be manipulated as arbitrary-precision
int bitmasks (bit v set = vertex v present), which is what makes the
exhaustive enumerations in :mod:`mwc.expansion` feasible.  Every type
here is immutable after construction and every operation is a pure
function, so concurrent use needs no locking.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import GraphInputError
from .rational import INFINITY

Vertices = tuple[int, ...]
Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Undirected graph: vertex count plus a canonical sorted edge tuple."""

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphInputError(f"negative vertex count {self.n}")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphInputError(f"loop edge ({u},{v}) not allowed")
            if not (0 <= u < v < self.n):
                raise GraphInputError(f"edge ({u},{v}) out of range for n={self.n}")
            if (u, v) in seen:
                raise GraphInputError(f"duplicate edge ({u},{v})")
            seen.add((u, v))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> "Graph":
        """Build a graph, normalizing each edge to (min, max) sorted order."""
        canon = sorted((min(u, v), max(u, v)) for u, v in edges)
        return cls(n, tuple(canon))

    @cached_property
    def adjacency(self) -> tuple[Vertices, ...]:
        """Per-vertex sorted neighbor tuples."""
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        """Per-vertex neighbor sets as int bitmasks."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    @property
    def m(self) -> int:
        """Edge count."""
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def to_edge_list_text(self) -> str:
        """Serialize to the "n m" / "u v" edge-list format."""
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list_text(cls, text: str) -> "Graph":
        """Parse the edge-list format; rejects loops, duplicates, u >= v."""
        tokens = text.split()
        if len(tokens) < 2:
            raise GraphInputError("edge list needs a header line 'n m'")
        try:
            n, m = int(tokens[0]), int(tokens[1])
        except ValueError as exc:
            raise GraphInputError(f"bad edge-list header: {exc}") from exc
        if len(tokens) != 2 + 2 * m:
            raise GraphInputError(
                f"expected {m} edges ({2 * m} numbers), got {len(tokens) - 2}"
            )
        edges = []
        for i in range(m):
            try:
                u, v = int(tokens[2 + 2 * i]), int(tokens[3 + 2 * i])
            except ValueError as exc:
                raise GraphInputError(f"bad edge on line {i + 2}: {exc}") from exc
            if not (0 <= u < v < n):
                raise GraphInputError(
                    f"edge line {i + 2}: need 0 <= u < v < n, got ({u},{v})"
                )
            edges.append((u, v))
        return cls.from_edges(n, edges)


def mask_of(g: Graph, vertices: Iterable[int]) -> int:
    """Bitmask of a vertex collection, validating membership in G."""
    mask = 0
    for v in vertices:
        if not (0 <= v < g.n):
            raise GraphInputError(f"vertex {v} out of range for n={g.n}")
        mask |= 1 << v
    return mask


def vertices_of(mask: int) -> Vertices:
    """Sorted vertex tuple of a bitmask."""
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def boundary_count(g: Graph, mask: int) -> int:
    """Number of edges with exactly one endpoint inside `mask`."""
    outside = g.full_mask & ~mask
    adj = g.adjacency_masks
    count = 0
    m = mask
    v = 0
    while m:
        if m & 1:
            count += (adj[v] & outside).bit_count()
        m >>= 1
        v += 1
    return count


def boundary_edges(g: Graph, subset: Iterable[int]) -> tuple[list[Edge], int]:
    """Edges connecting `subset` to its complement, with their count."""
    mask = mask_of(g, subset)
    edges = [
        (u, v)
        for u, v in g.edges
        if ((mask >> u) & 1) != ((mask >> v) & 1)
    ]
    return edges, len(edges)


def relative_boundary(g: Graph, inner: Iterable[int], outer: Iterable[int]) -> int:
    """Edges of the induced subgraph G[outer] crossing inner / outer-inner.

    Requires inner ⊆ outer ⊆ V.
    """
    inner_mask = mask_of(g, inner)
    outer_mask = mask_of(g, outer)
    if inner_mask & ~outer_mask:
        raise GraphInputError("inner set is not contained in outer set")
    rest = outer_mask & ~inner_mask
    adj = g.adjacency_masks
    count = 0
    m = inner_mask
    v = 0
    while m:
        if m & 1:
            count += (adj[v] & rest).bit_count()
        m >>= 1
        v += 1
    return count


def induced_subgraph(g: Graph, subset: Iterable[int]) -> tuple[Graph, Vertices]:
    """Induced subgraph on `subset` plus the new->old vertex map."""
    mask = mask_of(g, subset)
    if mask == 0:
        raise GraphInputError("induced subgraph needs a nonempty vertex set")
    old = vertices_of(mask)
    new_index = {o: i for i, o in enumerate(old)}
    edges = [
        (new_index[u], new_index[v])
        for u, v in g.edges
        if ((mask >> u) & 1) and ((mask >> v) & 1)
    ]
    return Graph.from_edges(len(old), edges), old


def complement_subgraph(g: Graph, subset: Iterable[int]) -> tuple[Graph, Vertices]:
    """Induced subgraph on V minus `subset` (subset must be proper)."""
    mask = mask_of(g, subset)
    rest = g.full_mask & ~mask
    if rest == 0:
        raise GraphInputError("complement of the full vertex set is empty")
    return induced_subgraph(g, vertices_of(rest))


def connected_components(g: Graph) -> list[Vertices]:
    """Maximal connected vertex sets, sorted by least vertex."""
    seen = [False] * g.n
    components = []
    for start in range(g.n):
        if seen[start]:
            continue
        queue = deque([start])
        seen[start] = True
        comp = []
        while queue:
            u = queue.popleft()
            comp.append(u)
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        components.append(tuple(sorted(comp)))
    return components


def component_masks(g: Graph) -> list[int]:
    masks = []
    for comp in connected_components(g):
        m = 0
        for v in comp:
            m |= 1 << v
        masks.append(m)
    return masks


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def bfs_distances(g: Graph, src: int) -> list[float]:
    """Path-metric distances from `src`; unreachable vertices get INFINITY."""
    if not (0 <= src < g.n):
        raise GraphInputError(f"source {src} out of range for n={g.n}")
    dist: list[float] = [INFINITY] * g.n
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] == INFINITY:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def max_degree(g: Graph) -> int:
    return max(g.degrees, default=0)


def validate_partition(g: Graph, blocks: Iterable[Iterable[int]]) -> list[int]:
    """Check disjointness/coverage/nonemptiness; return the block masks."""
    masks = []
    union = 0
    for block in blocks:
        mask = mask_of(g, block)
        if mask == 0:
            raise GraphInputError("partition block is empty")
        if mask & union:
            raise GraphInputError("partition blocks overlap")
        union |= mask
        masks.append(mask)
    if union != g.full_mask:
        raise GraphInputError("partition blocks do not cover all vertices")
    return masks
