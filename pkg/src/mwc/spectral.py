"""Graph Laplacians, dense spectra, and explicit test-function bounds.

The Laplacian acts on vertex functions by (Lf)(x) = deg(x) f(x) - sum of
f over neighbors; its quadratic form is the sum of squared differences
across edges.  Eigenvalues come from numpy's dense symmetric solver
(LAPACK), which meets the 1e-9 accuracy contract; tiny negative values
are clamped to 0 since Laplacians are positive semidefinite.

Two certificate constructions turn partitions into eigenvalue bounds:

* `partition_certificate` builds the orthogonal integer step functions
  adapted to a k-partition and certifies that the (k+1)-th eigenvalue is
  at least the smallest block algebraic connectivity.
* `chain_upper_bound` builds normalized indicator functions on pairwise
  non-adjacent blocks and returns max ||df||^2, an upper bound for the
  m-th eigenvalue by the min-max characterization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import EigensolverError, GraphInputError
from .graphs import Graph, Vertices, induced_subgraph, mask_of, validate_partition, vertices_of

EIG_CLAMP = 1e-9
SPECTRAL_TOL = 1e-7
DEFAULT_DENSE_CAP = 2000


@dataclass(frozen=True)
class Spectrum:
    """All Laplacian eigenvalues in ascending order plus a residual bound."""

    values: np.ndarray
    residual: float

    def kth(self, k: int) -> float:
        """1-based eigenvalue access, matching the usual lambda_k notation."""
        if not (1 <= k <= len(self.values)):
            raise GraphInputError(
                f"eigenvalue index {k} out of range 1..{len(self.values)}"
            )
        return float(self.values[k - 1])


def laplacian(g: Graph) -> np.ndarray:
    """Dense Laplacian matrix: degrees on the diagonal, -1 per edge."""
    mat = np.zeros((g.n, g.n), dtype=np.float64)
    for u, v in g.edges:
        mat[u, v] = -1.0
        mat[v, u] = -1.0
        mat[u, u] += 1.0
        mat[v, v] += 1.0
    return mat


def eigensystem(g: Graph, *, dense_cap: int = DEFAULT_DENSE_CAP) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending, clamped at 0) and sign-fixed eigenvectors."""
    if g.n < 1:
        raise GraphInputError("eigensystem of an empty graph")
    if g.n > dense_cap:
        raise EigensolverError(f"n={g.n} exceeds dense solver cap {dense_cap}")
    mat = laplacian(g)
    try:
        values, vectors = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver failed to converge: {exc}") from exc
    values = values.copy()
    values[(values < 0) & (values >= -EIG_CLAMP)] = 0.0
    # Reproducible sign: first entry of magnitude > 1e-12 is positive.
    for j in range(vectors.shape[1]):
        col = vectors[:, j]
        nonzero = np.flatnonzero(np.abs(col) > 1e-12)
        if nonzero.size and col[nonzero[0]] < 0:
            vectors[:, j] = -col
    return values, vectors


def spectrum(g: Graph, *, dense_cap: int = DEFAULT_DENSE_CAP) -> Spectrum:
    values, vectors = eigensystem(g, dense_cap=dense_cap)
    mat = laplacian(g)
    residual = float(np.max(np.abs(mat @ vectors - vectors * values))) if g.n else 0.0
    return Spectrum(values, residual)


def rayleigh_quotient(g: Graph, f: Sequence[float]) -> float:
    """||df||^2 / ||f||^2 with df(xy) = |f(x) - f(y)| over edges."""
    vec = np.asarray(f, dtype=np.float64)
    if vec.shape != (g.n,):
        raise GraphInputError(f"test function must have length {g.n}")
    norm2 = float(vec @ vec)
    if norm2 == 0.0:
        raise GraphInputError("Rayleigh quotient of the zero function is undefined")
    diff2 = 0.0
    for u, v in g.edges:
        diff2 += (vec[u] - vec[v]) ** 2
    return diff2 / norm2


def fiedler_vector(g: Graph) -> np.ndarray:
    """Unit eigenvector for the second-smallest eigenvalue."""
    if g.n < 2:
        raise GraphInputError("Fiedler vector needs at least 2 vertices")
    _, vectors = eigensystem(g)
    return vectors[:, 1]


def algebraic_connectivity(g: Graph) -> float:
    return spectrum(g).kth(2)


@dataclass(frozen=True)
class PartitionCertificate:
    """Orthogonal step functions certifying an eigenvalue lower bound.

    functions[0] is constant 1; functions[i] takes value |B_{i+1}| on the
    union of the first i blocks, minus the size of that union on block
    i+1, and 0 elsewhere.  Pairwise orthogonality is exact in integer
    arithmetic; `bound` (the smallest block algebraic connectivity, with
    single-vertex blocks contributing 0) is a valid lower bound for the
    (k+1)-th Laplacian eigenvalue of the host graph.
    """

    functions: tuple[tuple[int, ...], ...]
    block_lambda2: tuple[float, ...]
    bound: float


def partition_step_functions(
    n: int, blocks: Sequence[Vertices]
) -> tuple[tuple[int, ...], ...]:
    """Integer step functions adapted to an ordered partition.

    Function 0 is constant 1.  Function i (1 <= i < k) equals |B_{i+1}|
    on B_1 .. B_i, minus |B_1| + .. + |B_i| on B_{i+1}, and 0 elsewhere;
    any two of them have an exactly zero integer dot product.
    """
    k = len(blocks)
    sizes = [len(b) for b in blocks]
    functions = [tuple([1] * n)]
    prefix = 0
    for i in range(1, k):
        psi = [0] * n
        for j in range(i):
            for v in blocks[j]:
                psi[v] = sizes[i]
        prefix += sizes[i - 1]
        for v in blocks[i]:
            psi[v] = -prefix
        functions.append(tuple(psi))
    return tuple(functions)


def partition_certificate(
    g: Graph, blocks: Sequence[Iterable[int]]
) -> PartitionCertificate:
    masks = validate_partition(g, blocks)
    block_vertices = [vertices_of(m) for m in masks]
    k = len(block_vertices)

    functions = partition_step_functions(g.n, block_vertices)

    for a in range(k):
        for b in range(a + 1, k):
            dot = sum(x * y for x, y in zip(functions[a], functions[b]))
            if dot != 0:
                raise AssertionError(
                    f"certificate functions {a} and {b} not orthogonal (dot={dot})"
                )

    lambda2s = []
    for bv in block_vertices:
        if len(bv) < 2:
            # A single vertex has no second eigenvalue; it contributes the
            # trivially safe lower bound 0.
            lambda2s.append(0.0)
        else:
            sub, _ = induced_subgraph(g, bv)
            lambda2s.append(spectrum(sub).kth(2))
    return PartitionCertificate(functions, tuple(lambda2s), min(lambda2s))


@dataclass(frozen=True)
class ChainBound:
    """Indicator test functions on selected blocks and their energy bound.

    `bound` = max of ||df_m||^2 over the selected blocks, an upper bound
    on the (m_count)-th Laplacian eigenvalue; `per_block` holds each
    exact ||df_m||^2 = boundary(B)/|B| as a fraction.
    """

    bound: float
    per_block: tuple[Fraction, ...]
    functions: tuple[tuple[float, ...], ...]


def chain_upper_bound(
    g: Graph, blocks: Sequence[Iterable[int]], m_count: int
) -> ChainBound:
    """Upper bound on the m_count-th eigenvalue from chained-block indicators.

    `blocks` are the chain blocks H_1..H_N in order; the test functions
    live on the even-indexed blocks H_2, H_4, ..., H_{2*m_count}.  Those
    blocks must be pairwise disjoint and non-adjacent so that the
    functions are orthonormal with edge-disjoint supports, making
    max ||df_m||^2 a genuine min-max bound.  Each ||df_m||^2 equals
    boundary(B)/|B| exactly and is checked against 2/|B|.
    """
    block_masks = [mask_of(g, b) for b in blocks]
    union = 0
    for m in block_masks:
        if m == 0:
            raise GraphInputError("empty chain block")
        if m & union:
            raise GraphInputError("chain blocks overlap")
        union |= m
    if m_count < 1 or 2 * m_count > len(block_masks):
        raise GraphInputError(
            f"m_count={m_count} needs at least {2 * m_count} blocks, "
            f"got {len(block_masks)}"
        )
    selected = [block_masks[2 * m - 1] for m in range(1, m_count + 1)]
    for i, a in enumerate(selected):
        for b in selected[i + 1 :]:
            for u, v in g.edges:
                if ((a >> u) & 1 and (b >> v) & 1) or ((b >> u) & 1 and (a >> v) & 1):
                    raise GraphInputError(
                        "selected chain blocks are adjacent; the indicator "
                        "functions would not have edge-disjoint supports"
                    )

    per_block = []
    functions = []
    for mask in selected:
        size = mask.bit_count()
        crossing = 0
        for u, v in g.edges:
            if ((mask >> u) & 1) != ((mask >> v) & 1):
                crossing += 1
        energy = Fraction(crossing, size)
        if energy > Fraction(2, size):
            raise AssertionError(
                f"block energy {energy} exceeds 2/|B|; not a chain-style block"
            )
        per_block.append(energy)
        height = 1.0 / np.sqrt(size)
        functions.append(
            tuple(height if (mask >> v) & 1 else 0.0 for v in range(g.n))
        )

    # Orthonormality is structural (disjoint supports, height 1/sqrt(size)),
    # but verify numerically for good measure.
    arr = np.array(functions)
    gram = arr @ arr.T
    if not np.allclose(gram, np.eye(len(functions)), atol=1e-12):
        raise AssertionError("chain test functions are not orthonormal")

    return ChainBound(float(max(per_block)), tuple(per_block), tuple(functions))
