"""Recursive minimum-expansion division of a graph into k pieces.

Starting from the whole graph, the procedure repeatedly selects the
undivided piece with the smallest expansion constant and splits it
into a minimizing cut set (child address suffix "0") and its complement
(suffix "1"), until k undivided pieces remain.  The full hierarchy,
division order, and cut witnesses are recorded in a PartitionTrace so
that the nested-boundary inequality behind the procedure's guarantees
can be audited edge-set by edge-set afterwards.

Two cut oracles are available: "exact" uses exhaustive enumeration on
the induced piece (all guarantees apply), "sweep" thresholds the
Fiedler vector (a standard spectral heuristic whose ratio is within
sqrt(2 * maxdeg * lambda_2) of optimal, asserted, but which carries no
further guarantees).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import GraphInputError, UnsplittableError
from .expansion import (
    DEFAULT_SUBSET_CAP,
    CutWitness,
    expansion_exact,
)
from .graphs import (
    Graph,
    Vertices,
    boundary_count,
    component_masks,
    induced_subgraph,
    is_connected,
    mask_of,
    vertices_of,
)
from .rational import INFINITY, Ratio
from .spectral import SPECTRAL_TOL, eigensystem


class CutMode(str, enum.Enum):
    """Cut oracle selection for the recursive procedure."""

    EXACT = "exact"
    SWEEP = "sweep"


def sweep_cut(g: Graph) -> CutWitness:
    """Best threshold cut of the Fiedler order (smaller side as the set).

    Vertices are sorted by Fiedler value (ties by index); every split
    point is scored as boundary / min(prefix, suffix) and the smaller
    side of the best split is returned.  On connected graphs the ratio
    is guaranteed within sqrt(2 * maxdeg * lambda_2); on disconnected
    graphs the smallest component is returned instead (ratio 0).
    """
    n = g.n
    if n < 2:
        raise GraphInputError("sweep cut needs at least 2 vertices")
    if not is_connected(g):
        comps = sorted(component_masks(g), key=lambda m: (m.bit_count(), m))
        mask = comps[0]
        return CutWitness(vertices_of(mask), 0, Fraction(0))

    values, vectors = eigensystem(g)
    fiedler = vectors[:, 1]
    order = sorted(range(n), key=lambda v: (fiedler[v], v))
    adj = g.adjacency_masks
    degs = g.degrees

    best: tuple[int, int, int] | None = None  # (boundary, denom, j)
    best_mask = 0
    mask = 0
    boundary = 0
    for j in range(1, n):
        v = order[j - 1]
        boundary += degs[v] - 2 * (adj[v] & mask).bit_count()
        mask |= 1 << v
        denom = min(j, n - j)
        entry = (boundary, denom, j)
        if best is None or entry[0] * best[1] < best[0] * entry[1]:
            best = entry
            best_mask = mask
    assert best is not None
    b, denom, j = best
    if 2 * j <= n:
        subset_mask = best_mask
    else:
        subset_mask = g.full_mask & ~best_mask
    ratio = Fraction(b, denom)
    bound = float(np.sqrt(2.0 * max(degs) * max(values[1], 0.0)))
    assert float(ratio) <= bound + SPECTRAL_TOL, (
        f"sweep ratio {ratio} above spectral bound {bound}"
    )
    return CutWitness(vertices_of(subset_mask), b, ratio)


def best_cut(
    g: Graph,
    piece: Vertices,
    mode: CutMode = CutMode.EXACT,
    *,
    subset_cap: int = DEFAULT_SUBSET_CAP,
) -> CutWitness:
    """Minimizing cut of the induced subgraph G[piece], in original indices.

    The returned set has at most floor(|piece|/2) vertices and its
    boundary/ratio are measured inside the piece.
    """
    if len(piece) < 2:
        raise UnsplittableError(f"piece of {len(piece)} vertex cannot be divided")
    sub, index_map = induced_subgraph(g, piece)
    if mode == CutMode.EXACT:
        local = expansion_exact(sub, subset_cap=subset_cap)
    elif mode == CutMode.SWEEP:
        local = sweep_cut(sub)
    else:
        raise GraphInputError(f"unknown cut mode {mode!r}")
    assert local.subset is not None
    subset = tuple(sorted(index_map[v] for v in local.subset))
    return CutWitness(subset, local.boundary, local.ratio)


@dataclass(frozen=True)
class TraceNode:
    """One induced subgraph in the division hierarchy."""

    address: str
    vertices: Vertices
    created: int
    score: Ratio  # exact expansion (exact mode) or sweep ratio / INF


@dataclass(frozen=True)
class Division:
    """One division step: which piece was split, where, and at what ratio."""

    step: int
    address: str
    witness: CutWitness
    piece_score: Ratio


@dataclass
class PartitionTrace:
    """Hierarchy and division order produced by recursive_partition."""

    mode: CutMode
    nodes: dict[str, TraceNode] = field(default_factory=dict)
    divisions: list[Division] = field(default_factory=list)
    leaf_addresses: list[str] = field(default_factory=list)

    def blocks(self) -> tuple[Vertices, ...]:
        return tuple(self.nodes[a].vertices for a in self.leaf_addresses)


def _piece_score(
    g: Graph, piece: Vertices, mode: CutMode, subset_cap: int
) -> Ratio:
    if len(piece) < 2:
        return INFINITY
    if mode == CutMode.EXACT:
        sub, _ = induced_subgraph(g, piece)
        return expansion_exact(sub, subset_cap=subset_cap).ratio
    sub, _ = induced_subgraph(g, piece)
    return sweep_cut(sub).ratio


def recursive_partition(
    g: Graph,
    k: int,
    mode: CutMode = CutMode.EXACT,
    *,
    subset_cap: int = DEFAULT_SUBSET_CAP,
) -> tuple[tuple[Vertices, ...], PartitionTrace]:
    """Divide G into k pieces by repeated minimum-expansion cuts.

    Selection among undivided pieces is by smallest score (exact
    expansion constant, or sweep ratio in sweep mode), ties broken by
    creation order.  Raises UnsplittableError if a single-vertex piece
    is selected while more pieces are still needed.
    """
    if k < 1 or k > g.n:
        raise GraphInputError(f"need 1 <= k <= n, got k={k}, n={g.n}")
    trace = PartitionTrace(mode=mode)
    root = TraceNode(
        "", tuple(range(g.n)), 0, _piece_score(g, tuple(range(g.n)), mode, subset_cap)
    )
    trace.nodes[""] = root
    undivided: list[TraceNode] = [root]
    created = 1

    for step in range(1, k):
        target = min(undivided, key=lambda node: (node.score, node.created))
        if len(target.vertices) < 2:
            raise UnsplittableError(
                f"{k - step + 1} pieces still needed but the minimum-score "
                f"piece {target.address!r} has a single vertex"
            )
        witness = best_cut(g, target.vertices, mode, subset_cap=subset_cap)
        assert witness.subset is not None
        child0_vertices = witness.subset
        child1_vertices = tuple(
            sorted(set(target.vertices) - set(child0_vertices))
        )
        undivided.remove(target)
        children = []
        for suffix, verts in (("0", child0_vertices), ("1", child1_vertices)):
            node = TraceNode(
                target.address + suffix,
                verts,
                created,
                _piece_score(g, verts, mode, subset_cap),
            )
            created += 1
            trace.nodes[node.address] = node
            undivided.append(node)
            children.append(node)
        trace.divisions.append(
            Division(step, target.address, witness, target.score)
        )

    undivided.sort(key=lambda node: node.created)
    trace.leaf_addresses = [node.address for node in undivided]
    return trace.blocks(), trace


@dataclass(frozen=True)
class NestedBoundaryEntry:
    """One audited instance of the nested-boundary inequality.

    For the hierarchy chain ending at `address` (depth s) and
    consecutive ancestors p, q = p+1 < s, compares
    |B(p,s) - B(q,s)|  <=  2 |B(q,s)| + 2 h(H_p) |V_s|
    where B(a, s) is the set of edges of the piece at depth a crossing
    between the depth-s piece and the rest of the depth-a piece.
    """

    address: str
    p: int
    q: int
    s: int
    lhs: int
    rhs: Fraction
    ok: bool


def _crossing_edge_set(
    g: Graph, outer_mask: int, inner_mask: int
) -> frozenset[tuple[int, int]]:
    edges = []
    for u, v in g.edges:
        if (outer_mask >> u) & 1 and (outer_mask >> v) & 1:
            if ((inner_mask >> u) & 1) != ((inner_mask >> v) & 1):
                edges.append((u, v))
    return frozenset(edges)


def nested_boundary_check(g: Graph, trace: PartitionTrace) -> list[NestedBoundaryEntry]:
    """Audit the nested-boundary inequality on every chain of a trace.

    Requires an exact-mode trace: the recorded piece scores are the exact
    expansion constants that appear on the right-hand side.  Entries with
    ok=False would indicate an implementation bug, since the inequality
    is proved for arbitrary hierarchies of minimum-expansion cuts.
    """
    if trace.mode != CutMode.EXACT:
        raise GraphInputError("nested boundary check needs an exact-mode trace")
    scores = {d.address: d.piece_score for d in trace.divisions}
    entries: list[NestedBoundaryEntry] = []
    for address in sorted(trace.nodes):
        s = len(address)
        if s < 2:
            continue
        chain_masks = [
            mask_of(g, trace.nodes[address[:r]].vertices) for r in range(s + 1)
        ]
        deep_mask = chain_masks[s]
        deep_size = trace.nodes[address].vertices.__len__()
        for p in range(0, s - 1):
            q = p + 1
            b_ps = _crossing_edge_set(g, chain_masks[p], deep_mask)
            b_qs = _crossing_edge_set(g, chain_masks[q], deep_mask)
            lhs = len(b_ps - b_qs)
            h_p = scores[address[:p]]
            rhs = 2 * len(b_qs) + 2 * Fraction(h_p) * deep_size
            entries.append(
                NestedBoundaryEntry(address, p, q, s, lhs, rhs, lhs <= rhs)
            )
    return entries


def max_block_ratio(g: Graph, blocks: tuple[Vertices, ...]) -> Fraction:
    """Largest boundary-in-G ratio over partition blocks."""
    return max(
        Fraction(boundary_count(g, mask_of(g, block)), len(block))
        for block in blocks
    )
