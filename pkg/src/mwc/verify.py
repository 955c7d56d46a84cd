"""Machine checks for every inequality the library implements.

Each check computes its quantities (exact rationals for combinatorial
statements, floats with a 1e-7 tolerance for spectral ones) and returns
a CheckReport with a pass / fail / not-applicable verdict plus a
witness payload.  A failing gating check is always an implementation
defect: every gated statement is a proved theorem.  Non-gating checks
(the higher-order upper bound with its unknown constant, and anything
conditional on a user-supplied constant) record their quantities
without deciding the run's exit status.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import CapExceededError, GraphInputError
from .expansion import (
    DEFAULT_PARTITION_CAP,
    DEFAULT_SUBSET_CAP,
    KwayWitness,
    induced_expansion,
    kpartition_masks,
    kway_expansion_exact,
)
from .families import (
    chain,
    complete_graph,
    cycle_graph,
    disjoint_union,
    parse_family,
    random_regular,
)
from .graphs import (
    Graph,
    Vertices,
    boundary_edges,
    bfs_distances,
    connected_components,
    induced_subgraph,
    is_connected,
    mask_of,
    max_degree,
    vertices_of,
)
from .partition import (
    CutMode,
    max_block_ratio,
    nested_boundary_check,
    recursive_partition,
)
from .rational import INFINITY, Ratio, format_ratio, is_infinite, ratio_decimal
from .spectral import (
    SPECTRAL_TOL,
    Spectrum,
    chain_upper_bound,
    partition_step_functions,
    spectrum,
)

SUITE_NAMES = (
    "lemma1",
    "theorem2",
    "cheeger",
    "lgt",
    "components",
    "lemma2",
    "corollary4",
    "expander-split",
    "prop1",
    "prop2",
    "remark",
    "all",
)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one check on one graph."""

    check: str
    graph: str
    params: dict
    quantities: dict
    verdict: str  # "pass" | "fail" | "not-applicable"
    kind: str  # "exact" | "spectral"
    gating: bool
    witness: dict | None

    def to_json_dict(self) -> dict:
        return {
            "check": self.check,
            "graph": self.graph,
            "params": _jsonify(self.params),
            "quantities": _jsonify_quantities(self.quantities),
            "verdict": self.verdict,
            "kind": self.kind,
            "gating": self.gating,
            "witness": _jsonify(self.witness),
        }


def _jsonify(value):
    if isinstance(value, Fraction):
        return format_ratio(value)
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return value
    if isinstance(value, dict):
        return {k: _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if hasattr(value, "item"):  # numpy scalars
        return value.item()
    return value


def _jsonify_quantities(quantities: dict) -> dict:
    """Rationals become "p/q" strings with a convenience decimal sibling."""
    out = {}
    for key, value in quantities.items():
        if isinstance(value, Fraction) or (
            isinstance(value, float) and math.isinf(value)
        ):
            out[key] = format_ratio(value)
            out[key + "_decimal"] = ratio_decimal(value)
        else:
            out[key] = _jsonify(value)
    return out


class VerifyCache:
    """Per-run memoization of expansion values and spectra.

    One instance per verification run; never module-global, so that a
    deliberately corrupted implementation (mutation testing) cannot be
    masked by stale healthy values.
    """

    def __init__(
        self,
        subset_cap: int = DEFAULT_SUBSET_CAP,
        partition_cap: int = DEFAULT_PARTITION_CAP,
    ):
        self.subset_cap = subset_cap
        self.partition_cap = partition_cap
        self._h_memo: dict[Graph, dict[int, Ratio]] = {}
        self._kway: dict[tuple[Graph, int], KwayWitness] = {}
        self._spectrum: dict[Graph, Spectrum] = {}
        self._lambda2: dict[Graph, dict[int, float]] = {}

    def h_memo(self, g: Graph) -> dict[int, Ratio]:
        return self._h_memo.setdefault(g, {})

    def block_h(self, g: Graph, block: Vertices) -> Ratio:
        return induced_expansion(
            g, block, memo=self.h_memo(g), subset_cap=self.subset_cap
        )

    def h(self, g: Graph) -> Ratio:
        return self.block_h(g, tuple(range(g.n)))

    def kway(self, g: Graph, k: int) -> KwayWitness:
        key = (g, k)
        if key not in self._kway:
            self._kway[key] = kway_expansion_exact(
                g, k, partition_cap=self.partition_cap, subset_cap=self.subset_cap
            )
        return self._kway[key]

    def spectrum(self, g: Graph) -> Spectrum:
        if g not in self._spectrum:
            self._spectrum[g] = spectrum(g)
        return self._spectrum[g]

    def block_lambda2(self, g: Graph, mask: int) -> float:
        memo = self._lambda2.setdefault(g, {})
        if mask not in memo:
            verts = vertices_of(mask)
            if len(verts) < 2:
                memo[mask] = 0.0  # single vertex: no second eigenvalue
            else:
                sub, _ = induced_subgraph(g, verts)
                memo[mask] = spectrum(sub).kth(2)
        return memo[mask]


# ---------------------------------------------------------------------------
# Individual checks


def check_lemma1(
    name: str,
    g: Graph,
    k: int,
    cache: VerifyCache,
    *,
    max_partitions: int | None = None,
) -> CheckReport:
    """Every k-partition's smallest block expansion bounds h_{k+1} below."""
    if k + 1 > g.n:
        raise GraphInputError(f"need k+1 <= n, got k={k}, n={g.n}")
    h_k1 = cache.kway(g, k + 1).value
    checked = 0
    counterexample = None
    if g.n > cache.partition_cap:
        raise CapExceededError("partition", cache.partition_cap, g.n)
    for masks in kpartition_masks(g.n, k):
        if max_partitions is not None and checked >= max_partitions:
            break
        min_h = min(cache.block_h(g, vertices_of(m)) for m in masks)
        checked += 1
        if h_k1 < min_h:
            counterexample = {
                "partition": [vertices_of(m) for m in masks],
                "min_block_h": min_h,
                "h_k1": h_k1,
            }
            break
    verdict = "fail" if counterexample else "pass"
    return CheckReport(
        check="lemma1",
        graph=name,
        params={"k": k},
        quantities={"h_k1": h_k1, "partitions_checked": checked},
        verdict=verdict,
        kind="exact",
        gating=True,
        witness=counterexample,
    )


def _theorem2_hypothesis(h_k: Ratio, h_k1: Ratio, k: int) -> bool:
    if is_infinite(h_k1):
        return not is_infinite(h_k)
    if is_infinite(h_k):
        return False
    return h_k1 / 3 ** (k + 1) > h_k


def check_theorem2(name: str, g: Graph, k: int, cache: VerifyCache) -> CheckReport:
    """Recursive partition satisfies both conclusion inequalities exactly,
    whenever h_{k+1} / 3^{k+1} > h_k; the nested-boundary audit must also
    pass on the produced trace."""
    if not (1 <= k <= g.n - 1):
        raise GraphInputError(f"need 1 <= k <= n-1, got k={k}, n={g.n}")
    params = {"k": k, "mode": "exact"}
    try:
        h_k = cache.kway(g, k).value
        h_k1 = cache.kway(g, k + 1).value
    except CapExceededError as exc:
        return CheckReport(
            check="theorem2",
            graph=name,
            params=params,
            quantities={},
            verdict="not-applicable",
            kind="exact",
            gating=True,
            witness={"unmet": "cap", "detail": str(exc)},
        )
    threshold = h_k1 / 3 ** (k + 1) if not is_infinite(h_k1) else INFINITY
    quantities = {"h_k": h_k, "h_k1": h_k1, "threshold": threshold}
    if not _theorem2_hypothesis(h_k, h_k1, k):
        return CheckReport(
            check="theorem2",
            graph=name,
            params=params,
            quantities=quantities,
            verdict="not-applicable",
            kind="exact",
            gating=True,
            witness={"unmet": "hypothesis h_{k+1}/3^{k+1} > h_k"},
        )
    blocks, trace = recursive_partition(
        g, k, CutMode.EXACT, subset_cap=cache.subset_cap
    )
    min_block_h = min(cache.block_h(g, b) for b in blocks)
    max_ratio = max_block_ratio(g, blocks)
    ok_lower = threshold <= min_block_h
    ok_upper = max_ratio <= 3**k * h_k
    claim_entries = nested_boundary_check(g, trace)
    claim_ok = all(e.ok for e in claim_entries)
    quantities.update(
        {
            "min_block_h": min_block_h,
            "max_block_ratio": max_ratio,
            "upper_bound": 3**k * h_k,
            "claim_instances": len(claim_entries),
        }
    )
    verdict = "pass" if (ok_lower and ok_upper and claim_ok) else "fail"
    witness: dict = {"blocks": list(blocks)}
    if verdict == "fail":
        witness["failed"] = {
            "lower": not ok_lower,
            "upper": not ok_upper,
            "claim": [e.__dict__ for e in claim_entries if not e.ok],
        }
    return CheckReport(
        check="theorem2",
        graph=name,
        params=params,
        quantities=quantities,
        verdict=verdict,
        kind="exact",
        gating=True,
        witness=witness,
    )


def check_cheeger(name: str, g: Graph, cache: VerifyCache) -> CheckReport:
    """lambda_2 / 2  <=  h  <=  sqrt(2 * maxdeg * lambda_2), within 1e-7."""
    if g.n < 2:
        raise GraphInputError("Cheeger check needs n >= 2")
    h = cache.h(g)
    lam2 = cache.spectrum(g).kth(2)
    deg = max_degree(g)
    lower = lam2 / 2.0
    upper = math.sqrt(2.0 * deg * max(lam2, 0.0))
    h_float = float(h)
    ok = (lower - SPECTRAL_TOL <= h_float) and (h_float <= upper + SPECTRAL_TOL)
    return CheckReport(
        check="cheeger",
        graph=name,
        params={},
        quantities={"h": h, "lambda2": lam2, "lower": lower, "upper": upper},
        verdict="pass" if ok else "fail",
        kind="spectral",
        gating=True,
        witness=None if ok else {"h": h, "lower": lower, "upper": upper},
    )


def check_lgt(name: str, g: Graph, k: int, cache: VerifyCache) -> CheckReport:
    """Higher-order lower bound lambda_k / (2 maxdeg) <= h_k.

    The matching upper bound holds for some universal constant that is
    not pinned down numerically, so h_k / (k^2 * maxdeg * sqrt(lambda_k))
    is recorded as a monitored statistic (asserted finite when lambda_k
    is nonzero) and never asserted against a constant.
    """
    if not is_connected(g):
        return CheckReport(
            check="lgt",
            graph=name,
            params={"k": k},
            quantities={},
            verdict="not-applicable",
            kind="spectral",
            gating=True,
            witness={"unmet": "connected graph required"},
        )
    deg = max_degree(g)
    if deg == 0:
        return CheckReport(
            check="lgt",
            graph=name,
            params={"k": k},
            quantities={},
            verdict="not-applicable",
            kind="spectral",
            gating=True,
            witness={"unmet": "positive maximum degree required"},
        )
    h_k = cache.kway(g, k).value
    lam_k = cache.spectrum(g).kth(k)
    lower = lam_k / (2.0 * deg)
    h_float = float(h_k)
    ok = lower - SPECTRAL_TOL <= h_float
    upper_ratio = None
    if lam_k > SPECTRAL_TOL:
        upper_ratio = h_float / (k * k * deg * math.sqrt(lam_k))
        ok = ok and math.isfinite(upper_ratio)
    return CheckReport(
        check="lgt",
        graph=name,
        params={"k": k},
        quantities={
            "h_k": h_k,
            "lambda_k": lam_k,
            "lower": lower,
            "upper_ratio": upper_ratio,
        },
        verdict="pass" if ok else "fail",
        kind="spectral",
        gating=True,
        witness=None if ok else {"h_k": h_k, "lower": lower},
    )


def check_components(name: str, g: Graph, cache: VerifyCache) -> CheckReport:
    """h_c = 0 and, when defined, h_{c+1} > 0 equals the least component h."""
    comps = connected_components(g)
    c = len(comps)
    h_c = cache.kway(g, c).value
    ok = h_c == 0
    quantities: dict = {"components": c, "h_c": h_c}
    witness = None
    if c + 1 <= g.n:
        h_c1 = cache.kway(g, c + 1).value
        min_comp_h = min(cache.block_h(g, comp) for comp in comps)
        quantities["h_c1"] = h_c1
        quantities["min_component_h"] = min_comp_h
        ok = ok and h_c1 > 0 and h_c1 == min_comp_h
        if not ok:
            witness = {"components": [list(comp) for comp in comps]}
    return CheckReport(
        check="components",
        graph=name,
        params={},
        quantities=quantities,
        verdict="pass" if ok else "fail",
        kind="exact",
        gating=True,
        witness=witness,
    )


def _exact_orthogonality(n: int, blocks: Sequence[Vertices]) -> bool:
    functions = partition_step_functions(n, blocks)
    for a in range(len(functions)):
        for b in range(a + 1, len(functions)):
            if sum(x * y for x, y in zip(functions[a], functions[b])) != 0:
                return False
    return True


def check_lemma2(
    name: str, g: Graph, blocks: Sequence[Vertices], cache: VerifyCache
) -> CheckReport:
    """lambda_{k+1}(G) >= min over blocks of lambda_2(G[block]), within 1e-7.

    Single-vertex blocks contribute 0.  The orthogonal step functions
    behind the bound are also rebuilt and their pairwise orthogonality
    rechecked in exact integer arithmetic.
    """
    k = len(blocks)
    if k + 1 > g.n:
        raise GraphInputError(f"need k+1 <= n, got k={k}, n={g.n}")
    masks = [mask_of(g, b) for b in blocks]
    lam_k1 = cache.spectrum(g).kth(k + 1)
    block_l2 = [cache.block_lambda2(g, m) for m in masks]
    bound = min(block_l2)
    orth = _exact_orthogonality(g.n, [vertices_of(m) for m in masks])
    ok = (lam_k1 >= bound - SPECTRAL_TOL) and orth
    return CheckReport(
        check="lemma2",
        graph=name,
        params={"k": k},
        quantities={
            "lambda_k1": lam_k1,
            "bound": bound,
            "block_lambda2": block_l2,
            "orthogonal": orth,
        },
        verdict="pass" if ok else "fail",
        kind="spectral",
        gating=True,
        witness={"blocks": [list(b) for b in blocks]} if not ok else None,
    )


def check_lemma2_all(
    name: str,
    g: Graph,
    k: int,
    cache: VerifyCache,
    *,
    max_partitions: int | None = None,
) -> CheckReport:
    """check_lemma2 aggregated over every k-partition of the graph."""
    if k + 1 > g.n:
        raise GraphInputError(f"need k+1 <= n, got k={k}, n={g.n}")
    lam_k1 = cache.spectrum(g).kth(k + 1)
    checked = 0
    min_slack = None
    counterexample = None
    for masks in kpartition_masks(g.n, k):
        if max_partitions is not None and checked >= max_partitions:
            break
        blocks = [vertices_of(m) for m in masks]
        bound = min(cache.block_lambda2(g, m) for m in masks)
        slack = lam_k1 - bound
        if min_slack is None or slack < min_slack:
            min_slack = slack
        if slack < -SPECTRAL_TOL or not _exact_orthogonality(g.n, blocks):
            counterexample = {"partition": [list(b) for b in blocks], "bound": bound}
            break
        checked += 1
    return CheckReport(
        check="lemma2",
        graph=name,
        params={"k": k},
        quantities={
            "lambda_k1": lam_k1,
            "partitions_checked": checked,
            "min_slack": min_slack,
        },
        verdict="fail" if counterexample else "pass",
        kind="spectral",
        gating=True,
        witness=counterexample,
    )


def check_corollary4(
    name: str, g: Graph, k: int, C: float, cache: VerifyCache
) -> CheckReport:
    """Conditional spectral partition bounds for a user-supplied constant C.

    Not gating: with an understated C the hypothesis can hold while the
    conclusions genuinely fail, which is information about C, not a bug.
    """
    if C <= 0:
        raise GraphInputError(f"constant C must be positive, got {C}")
    if not (1 <= k <= g.n - 1):
        raise GraphInputError(f"need 1 <= k <= n-1, got k={k}, n={g.n}")
    spec = cache.spectrum(g)
    lam_k = spec.kth(k)
    lam_k1 = spec.kth(k + 1)
    deg = max_degree(g)
    params = {"k": k, "C": C}
    hyp_rhs = C * k * k * 3 ** (k + 2) * deg * deg * math.sqrt(max(lam_k, 0.0))
    quantities: dict = {"lambda_k": lam_k, "lambda_k1": lam_k1, "hyp_rhs": hyp_rhs}
    if lam_k1 < hyp_rhs:
        return CheckReport(
            check="corollary4",
            graph=name,
            params=params,
            quantities=quantities,
            verdict="not-applicable",
            kind="spectral",
            gating=False,
            witness={"unmet": "lambda_{k+1} >= C k^2 3^{k+2} deg^2 sqrt(lambda_k)"},
        )
    blocks, _ = recursive_partition(g, k, CutMode.EXACT, subset_cap=cache.subset_cap)
    max_ratio = float(max_block_ratio(g, blocks))
    ratio_bound = C * k * k * deg * math.sqrt(max(lam_k, 0.0))
    min_l2 = min(cache.block_lambda2(g, mask_of(g, b)) for b in blocks)
    eig_bound = 3 ** (k + 2) * deg**1.5 * math.sqrt(max(min_l2, 0.0))
    ok = (max_ratio <= ratio_bound + SPECTRAL_TOL) and (
        lam_k1 <= eig_bound + SPECTRAL_TOL
    )
    quantities.update(
        {
            "max_block_ratio": max_ratio,
            "ratio_bound": ratio_bound,
            "min_block_lambda2": min_l2,
            "eig_bound": eig_bound,
        }
    )
    return CheckReport(
        check="corollary4",
        graph=name,
        params=params,
        quantities=quantities,
        verdict="pass" if ok else "fail",
        kind="spectral",
        gating=False,
        witness={"blocks": [list(b) for b in blocks]},
    )


def check_expander_split(
    family: Sequence[tuple[str, Graph]],
    k: int,
    cache: VerifyCache,
    *,
    mode: CutMode = CutMode.EXACT,
    threshold: Ratio | None = None,
) -> list[CheckReport]:
    """Split family members with h_{k+1} above a threshold into k pieces.

    Exact mode asserts min block h >= threshold / 3^{k+1} for members
    that also satisfy the recursive-partition hypothesis (the assertion
    is only a theorem under that hypothesis) and records the block-size
    growth bound 1 / (3^k h_k) for connected members.  Sweep mode records
    quantities without asserting.
    """
    reports = []
    values: dict[str, Ratio] = {}
    if mode == CutMode.EXACT:
        for name, g in family:
            values[name] = cache.kway(g, k + 1).value
    else:
        for name, g in family:
            blocks, _ = recursive_partition(
                g, k + 1, CutMode.SWEEP, subset_cap=cache.subset_cap
            )
            values[name] = max_block_ratio(g, blocks)
    c = threshold if threshold is not None else min(values.values())
    for name, g in family:
        h_k1 = values[name]
        params = {"k": k, "mode": mode.value, "threshold": float(c)}
        if h_k1 < c:
            reports.append(
                CheckReport(
                    check="expander-split",
                    graph=name,
                    params=params,
                    quantities={"h_k1": h_k1},
                    verdict="not-applicable",
                    kind="exact" if mode == CutMode.EXACT else "spectral",
                    gating=False,
                    witness={"unmet": "h_{k+1} >= threshold"},
                )
            )
            continue
        blocks, _ = recursive_partition(g, k, mode, subset_cap=cache.subset_cap)
        bound = c / 3 ** (k + 1)
        quantities: dict = {
            "h_k1": h_k1,
            "block_bound": bound,
            "block_sizes": [len(b) for b in blocks],
        }
        witness: dict = {"blocks": [list(b) for b in blocks]}
        gating = False
        ok = True
        if mode == CutMode.EXACT:
            min_block_h = min(cache.block_h(g, b) for b in blocks)
            quantities["min_block_h"] = min_block_h
            h_k = cache.kway(g, k).value
            hypothesis = _theorem2_hypothesis(h_k, h_k1, k)
            quantities["hypothesis"] = hypothesis
            if hypothesis:
                gating = True
                ok = min_block_h >= bound
            if is_connected(g) and h_k > 0:
                growth_bound = 1 / (Fraction(3**k) * h_k)
                quantities["min_block_size"] = min(len(b) for b in blocks)
                quantities["growth_bound"] = growth_bound
                if hypothesis:
                    ok = ok and min(len(b) for b in blocks) >= growth_bound
        reports.append(
            CheckReport(
                check="expander-split",
                graph=name,
                params=params,
                quantities=quantities,
                verdict="pass" if ok else "fail",
                kind="exact" if mode == CutMode.EXACT else "spectral",
                gating=gating,
                witness=witness,
            )
        )
    return reports


# ---------------------------------------------------------------------------
# Metric / coarse-geometry diagnostics


def pair_spread(g: Graph, subset: Iterable[int], r: float) -> tuple[int, Fraction]:
    """Ordered pairs (x, y) in H^2 with d_G(x, y) > r, count and fraction.

    Unreachable pairs (infinite distance) always count.  The threshold
    is compared strictly and unrounded.
    """
    verts = vertices_of(mask_of(g, subset))
    if not verts:
        raise GraphInputError("pair spread of an empty set")
    count = 0
    for x in verts:
        dist = bfs_distances(g, x)
        count += sum(1 for y in verts if dist[y] > r)
    return count, Fraction(count, len(verts) ** 2)


def _geometric_sum(d: int, top: int) -> int:
    """sum of d^i for i = 0..top (0 when top < 0): the ball-volume bound."""
    if top < 0:
        return 0
    if d == 1:
        return top + 1
    return (d ** (top + 1) - 1) // (d - 1)


def check_prop1(name: str, g: Graph, subset: Iterable[int] | None = None) -> CheckReport:
    """Far-pair count against the exact ball-volume lower bound.

    With H the chosen vertex set (default all of V), d the maximum degree
    of G[H], and r = log_d(|H|)/2 - 1, at least
    |H| * (|H| - sum_{i<=floor(r)} d^i) ordered pairs of H are farther
    than r apart in the metric of G[H].  The same count in the ambient
    metric of G (the quantity of interest for embedding obstructions,
    equal to the intrinsic count when H = V) is reported alongside,
    together with whether it reaches |H|^2 / 2.
    """
    verts = (
        tuple(range(g.n)) if subset is None else vertices_of(mask_of(g, subset))
    )
    sub, _ = induced_subgraph(g, verts)
    d = max_degree(sub)
    params = {"H_size": len(verts)}
    if d < 2:
        return CheckReport(
            check="prop1",
            graph=name,
            params=params,
            quantities={"max_degree": d},
            verdict="not-applicable",
            kind="exact",
            gating=True,
            witness={"unmet": "induced max degree >= 2"},
        )
    size = len(verts)
    r = math.log(size, d) / 2.0 - 1.0
    # floor(r) computed exactly: largest t with d^(2t+2) <= |H|.
    t = -1
    while d ** (2 * (t + 1) + 2) <= size:
        t += 1
    ball = _geometric_sum(d, t)
    bound = size * max(size - ball, 0)
    intrinsic_count = 0
    for x in range(sub.n):
        dist = bfs_distances(sub, x)
        intrinsic_count += sum(1 for y in range(sub.n) if dist[y] > r)
    ambient_count, ambient_fraction = pair_spread(g, verts, r)
    ok = intrinsic_count >= bound
    return CheckReport(
        check="prop1",
        graph=name,
        params=params,
        quantities={
            "r": r,
            "floor_r": t,
            "ball_volume": ball,
            "bound": bound,
            "intrinsic_count": intrinsic_count,
            "ambient_count": ambient_count,
            "ambient_fraction": ambient_fraction,
            "reaches_half": ambient_count * 2 >= size * size,
        },
        verdict="pass" if ok else "fail",
        kind="exact",
        gating=True,
        witness=None if ok else {"H": list(verts)},
    )


def check_prop2(
    name: str,
    g: Graph,
    subset: Iterable[int],
    r: float | None = None,
) -> CheckReport:
    """Boundary-shell quantities for a proper induced subgraph.

    F is the set of H-endpoints of boundary edges; W(r) the vertices of H
    farther than r from every F vertex; W(r, z) the part of W(r) farther
    than r from z.  Checks, exactly: (i) W(r) is the same whether
    distances are measured in G or in G[H]; (ii) every |W(r, z)| is at
    least |H| - (|F|+1) * ball_volume(floor(r)), clamped at 0.  With an
    empty F (no boundary edges), W(r) is all of H by the empty
    intersection convention.  Default r is
    -(1/2) * log_d((|boundary|+1) / |H|) for d = maxdeg(G[H]) >= 2.
    """
    verts = vertices_of(mask_of(g, subset))
    params = {"H_size": len(verts)}
    if len(verts) == g.n:
        return CheckReport(
            check="prop2",
            graph=name,
            params=params,
            quantities={},
            verdict="not-applicable",
            kind="exact",
            gating=True,
            witness={"unmet": "H must be a proper subset (no boundary otherwise)"},
        )
    sub, index_map = induced_subgraph(g, verts)
    local = {o: i for i, o in enumerate(index_map)}
    d = max_degree(sub)
    bedges, bcount = boundary_edges(g, verts)
    in_h = set(verts)
    f_set = tuple(sorted({u if u in in_h else v for u, v in bedges}))
    size = len(verts)

    r_formula = None
    floor_r = None
    if d >= 2 and bcount + 1 <= size:
        r_formula = -0.5 * math.log((bcount + 1) / size, d)
        # floor of r_formula, exactly: largest t with d^(2t) * (|bd|+1) <= |H|.
        t = -1
        while (d ** (2 * (t + 1))) * (bcount + 1) <= size:
            t += 1
        floor_r = t
    elif d >= 2:
        r_formula = -0.5 * math.log((bcount + 1) / size, d)  # negative
        floor_r = None  # recomputed below from the generic floor

    if r is None:
        if r_formula is None:
            return CheckReport(
                check="prop2",
                graph=name,
                params=params,
                quantities={"max_degree": d, "boundary": bcount},
                verdict="not-applicable",
                kind="exact",
                gating=True,
                witness={"unmet": "induced max degree >= 2 for the default r"},
            )
        r_value = r_formula
    else:
        r_value = r
        floor_r = None
    if floor_r is None:
        floor_r = math.floor(r_value)

    dist_g = {x: bfs_distances(g, x) for x in verts}
    dist_h = {x: bfs_distances(sub, local[x]) for x in verts}

    w_ambient = [
        x for x in verts if all(dist_g[y][x] > r_value for y in f_set)
    ]
    w_intrinsic = [
        x for x in verts if all(dist_h[y][local[x]] > r_value for y in f_set)
    ]
    identity_ok = w_ambient == w_intrinsic

    ball = _geometric_sum(d, floor_r) if d >= 1 else 1
    bound = max(size - (len(f_set) + 1) * ball, 0)
    w_sizes = []
    for z in w_ambient:
        wz = sum(1 for w in w_ambient if dist_g[z][w] > r_value)
        w_sizes.append(wz)
    min_wz = min(w_sizes) if w_sizes else 0
    ball_ok = all(wz >= bound for wz in w_sizes)
    ok = identity_ok and ball_ok
    return CheckReport(
        check="prop2",
        graph=name,
        params=params,
        quantities={
            "boundary": bcount,
            "F_size": len(f_set),
            "r": r_value,
            "r_formula": r_formula,
            "floor_r": floor_r,
            "W_size": len(w_ambient),
            "min_Wz": min_wz,
            "bound": bound,
            "identity_ok": identity_ok,
        },
        verdict="pass" if ok else "fail",
        kind="exact",
        gating=True,
        witness={"F": list(f_set), "W": list(w_ambient)},
    )


def check_remark_decay(
    block_count: int,
    block_size: int,
    cache: VerifyCache,
    *,
    seed: int | None = None,
) -> CheckReport:
    """Chained blocks force small Laplacian eigenvalues.

    Builds a chain of `block_count` blocks (complete graphs of
    `block_size` vertices, or 3-regular random blocks when a seed is
    given), sets m = block_count // 4, and asserts that the m-th
    eigenvalue is below the indicator-function bound, itself at most
    max 2/|B| over the selected blocks.
    """
    if block_count < 4 or block_count % 2 != 0:
        raise GraphInputError("need an even block count >= 4")
    if seed is None:
        parts = [complete_graph(block_size) for _ in range(block_count)]
        descriptor = f"chain(k{block_size}*{block_count})"
    else:
        parts = [random_regular(block_size, 3, seed + i) for i in range(block_count)]
        descriptor = f"chain(rr(n={block_size},d=3,seed={seed})*{block_count})"
    g, blocks = chain(parts)
    m_count = block_count // 4
    cb = chain_upper_bound(g, blocks, m_count)
    lam = cache.spectrum(g).kth(m_count)
    simple_bound = float(
        max(Fraction(2, len(blocks[2 * m - 1])) for m in range(1, m_count + 1))
    )
    ok = (lam <= cb.bound + SPECTRAL_TOL) and (cb.bound <= simple_bound + SPECTRAL_TOL)
    return CheckReport(
        check="remark",
        graph=descriptor,
        params={"block_count": block_count, "block_size": block_size, "m": m_count},
        quantities={
            "lambda_m": lam,
            "bound": cb.bound,
            "simple_bound": simple_bound,
            "per_block": list(cb.per_block),
        },
        verdict="pass" if ok else "fail",
        kind="spectral",
        gating=True,
        witness=None,
    )


# ---------------------------------------------------------------------------
# Corpus and suite running


def default_corpus() -> list[tuple[str, Graph]]:
    """The stock graph list: every check has at least one applicable entry."""
    entries: list[tuple[str, Graph]] = []
    for n in range(2, 7):
        entries.append((f"path({n})", parse_family(f"path({n})")))
    for n in range(3, 9):
        entries.append((f"cycle({n})", parse_family(f"cycle({n})")))
    for n in range(2, 7):
        entries.append((f"complete({n})", parse_family(f"complete({n})")))
    for n in range(2, 5):
        entries.append((f"edgeless({n})", parse_family(f"edgeless({n})")))
    entries.append(("union(k3*2)", disjoint_union([complete_graph(3)] * 2)))
    entries.append(("union(k3*3)", disjoint_union([complete_graph(3)] * 3)))
    entries.append(("petersen", parse_family("petersen")))
    for n in (12, 16):
        for seed in (1, 2, 3):
            entries.append(
                (f"rr(n={n},d=3,seed={seed})", random_regular(n, 3, seed))
            )
    entries.append(("chain(k3*8)", parse_family("chain(k3*8)")))
    return entries


def corpus_from_spec(text: str) -> list[tuple[str, Graph]]:
    """Semicolon-separated family specs -> (descriptor, graph) list."""
    entries = []
    for part in text.split(";"):
        part = part.strip()
        if part:
            entries.append((part, parse_family(part)))
    if not entries:
        raise GraphInputError("empty corpus spec")
    return entries


def _expander_split_families() -> list[tuple[list[tuple[str, Graph]], int]]:
    fam2 = [
        (f"union(k{s}*2)", disjoint_union([complete_graph(s)] * 2)) for s in (3, 4, 5)
    ]
    fam3 = [
        (f"union(k{s}*3)", disjoint_union([complete_graph(s)] * 3)) for s in (3, 4)
    ]
    fam1 = [(f"rr(n={n},d=3,seed=1)", random_regular(n, 3, 1)) for n in (12, 16)]
    return [(fam2, 2), (fam3, 3), (fam1, 1)]


def _suite_tasks(
    suite: str,
    corpus: list[tuple[str, Graph]],
    cache: VerifyCache,
    *,
    C: float,
) -> list[Callable[[], list[CheckReport]]]:
    tasks: list[Callable[[], list[CheckReport]]] = []

    def one(fn, *args, **kwargs):
        tasks.append(lambda: [fn(*args, **kwargs)])

    if suite == "lemma1":
        for name, g in corpus:
            if g.n <= 8:
                for k in range(1, min(4, g.n - 1) + 1):
                    one(check_lemma1, name, g, k, cache)
    elif suite == "theorem2":
        for name, g in corpus:
            for k in range(1, min(3, g.n - 1) + 1):
                one(check_theorem2, name, g, k, cache)
    elif suite == "cheeger":
        for name, g in corpus:
            if 2 <= g.n <= min(16, cache.subset_cap):
                one(check_cheeger, name, g, cache)
    elif suite == "lgt":
        for name, g in corpus:
            if 2 <= g.n <= 12:
                for k in range(1, min(4, g.n) + 1):
                    one(check_lgt, name, g, k, cache)
    elif suite == "components":
        for name, g in corpus:
            if g.n <= cache.subset_cap:
                one(check_components, name, g, cache)
    elif suite == "lemma2":
        for name, g in corpus:
            if g.n <= 8:
                for k in range(1, min(3, g.n - 1) + 1):
                    one(check_lemma2_all, name, g, k, cache)
    elif suite == "corollary4":
        for name, g in corpus:
            for k in (2, 3):
                if k + 1 <= g.n and g.n <= cache.subset_cap:
                    one(check_corollary4, name, g, k, C, cache)
    elif suite == "expander-split":
        for family, k in _expander_split_families():
            fam = family
            kk = k
            tasks.append(lambda fam=fam, kk=kk: check_expander_split(fam, kk, cache))
    elif suite == "prop1":
        for name, g in corpus:
            one(check_prop1, name, g)
    elif suite == "prop2":
        chain2, blocks2 = chain([complete_graph(3)] * 2)
        chain8, blocks8 = chain([complete_graph(3)] * 8)
        apex8 = parse_family("apex(c8)")
        twok3 = disjoint_union([complete_graph(3)] * 2)
        one(check_prop2, "chain(k3*2)", chain2, blocks2[0])
        one(check_prop2, "chain(k3*8)", chain8, blocks8[0])
        one(check_prop2, "apex(c8)", apex8, tuple(range(8)))
        one(check_prop2, "union(k3*2)", twok3, (0, 1, 2))
    elif suite == "remark":
        sizes = (3, 6, 12)
        for size in sizes:
            one(check_remark_decay, 8, size, cache)

        def monotone() -> list[CheckReport]:
            bounds = []
            for size in sizes:
                parts = [complete_graph(size)] * 8
                g, blocks = chain(parts)
                bounds.append(chain_upper_bound(g, blocks, 2).bound)
            ok = all(a > b for a, b in zip(bounds, bounds[1:]))
            return [
                CheckReport(
                    check="remark",
                    graph=f"chain(k{{{','.join(map(str, sizes))}}}*8)",
                    params={"block_sizes": list(sizes)},
                    quantities={"bounds": bounds},
                    verdict="pass" if ok else "fail",
                    kind="spectral",
                    gating=True,
                    witness=None,
                )
            ]

        tasks.append(monotone)
    else:
        raise GraphInputError(f"unknown suite {suite!r}")
    return tasks


def run_suite(
    suite: str,
    corpus: list[tuple[str, Graph]] | None = None,
    *,
    C: float = 1.0,
    threads: int = 1,
    subset_cap: int = DEFAULT_SUBSET_CAP,
    partition_cap: int = DEFAULT_PARTITION_CAP,
) -> list[CheckReport]:
    """Run one suite (or "all") over a corpus; reports sorted for output.

    The result order is independent of thread count: reports sort by
    (check, graph, params).
    """
    if suite not in SUITE_NAMES:
        raise GraphInputError(
            f"unknown suite {suite!r}; valid: {', '.join(SUITE_NAMES)}"
        )
    if corpus is None:
        corpus = default_corpus()
    cache = VerifyCache(subset_cap=subset_cap, partition_cap=partition_cap)
    suites = [s for s in SUITE_NAMES if s != "all"] if suite == "all" else [suite]
    tasks: list[Callable[[], list[CheckReport]]] = []
    for s in suites:
        tasks.extend(_suite_tasks(s, corpus, cache, C=C))

    results: list[CheckReport] = []
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for batch in pool.map(lambda t: t(), tasks):
                results.extend(batch)
    else:
        for task in tasks:
            results.extend(task())
    results.sort(key=lambda rep: (rep.check, rep.graph, repr(sorted(rep.params.items()))))
    return results


def failed_gating(reports: Iterable[CheckReport]) -> list[CheckReport]:
    return [r for r in reports if r.gating and r.verdict == "fail"]
