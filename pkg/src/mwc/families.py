"""Deterministic generators for the graph families used by the suites.

Stock families (cycles, paths, complete, edgeless, Petersen), disjoint
unions, random regular graphs from the pairing model, the apex cone
construction, and chained graphs joined by single bridge edges.  All
randomness comes from an in-package SplitMix64 generator so that a
given seed produces the same graph on every platform.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .errors import GraphInputError
from .graphs import Graph, Vertices, is_connected

# SplitMix64 constants (Steele, Lea, Flood's published mixer).
_SM64_GAMMA = 0x9E3779B97F4A7C15
_SM64_MIX1 = 0xBF58476D1CE4E5B9
_SM64_MIX2 = 0x94D049BB133111EB
_U64 = (1 << 64) - 1


class SplitMix64:
    """Tiny deterministic RNG; enough for shuffles and index draws."""

    def __init__(self, seed: int):
        self.state = seed & _U64

    def next_u64(self) -> int:
        self.state = (self.state + _SM64_GAMMA) & _U64
        z = self.state
        z = ((z ^ (z >> 30)) * _SM64_MIX1) & _U64
        z = ((z ^ (z >> 27)) * _SM64_MIX2) & _U64
        return z ^ (z >> 31)

    def randrange(self, bound: int) -> int:
        # Rejection sampling keeps the draw unbiased.
        limit = _U64 - (_U64 % bound) if bound else 0
        while True:
            z = self.next_u64()
            if z < limit:
                return z % bound

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphInputError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise GraphInputError(f"path needs n >= 1, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GraphInputError(f"complete graph needs n >= 1, got {n}")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def edgeless_graph(n: int) -> Graph:
    if n < 1:
        raise GraphInputError(f"edgeless graph needs n >= 1, got {n}")
    return Graph(n, ())


def petersen_graph() -> Graph:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, edges)


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    """Concatenate vertex ranges; component i occupies a contiguous block."""
    if not graphs:
        raise GraphInputError("disjoint union of zero graphs")
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph.from_edges(offset, edges)


def random_regular(n: int, d: int, seed: int, max_retries: int = 1000) -> Graph:
    """Simple d-regular graph via the pairing model with rejection.

    Stubs (vertex copies) are shuffled and paired; a pairing containing a
    loop or repeated edge is rejected and redrawn, up to `max_retries`
    times.  Deterministic for a fixed seed.
    """
    if d >= n:
        raise GraphInputError(f"degree {d} must be below n={n}")
    if d < 0 or (n * d) % 2 != 0:
        raise GraphInputError(f"n*d must be even, got n={n} d={d}")
    rng = SplitMix64(seed)
    for _ in range(max_retries):
        stubs = [v for v in range(n) for _ in range(d)]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v:
                ok = False
                break
            e = (min(u, v), max(u, v))
            if e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return Graph.from_edges(n, edges)
    raise GraphInputError(
        f"pairing model failed to produce a simple graph in {max_retries} tries"
    )


def connected_random_regular(n: int, d: int, seed: int) -> tuple[Graph, int]:
    """random_regular, re-drawn with incremented seed until connected.

    Returns the graph and the number of extra draws that were needed.
    """
    retries = 0
    while True:
        g = random_regular(n, d, seed + retries)
        if is_connected(g):
            return g, retries
        retries += 1


def apex(h: Graph) -> Graph:
    """Add one new vertex (index |V_H|) adjacent to every vertex of H."""
    if h.n < 1:
        raise GraphInputError("apex needs a nonempty base graph")
    edges = list(h.edges) + [(v, h.n) for v in range(h.n)]
    return Graph.from_edges(h.n + 1, edges)


def chain(
    graphs: Sequence[Graph],
    anchors: Sequence[tuple[int, int]] | None = None,
    seed: int | None = None,
) -> tuple[Graph, tuple[Vertices, ...]]:
    """Join blocks H_1..H_N by one bridge per consecutive pair.

    Block m >= 2 contributes the bridge x_m -- y_{m-1} with x_m in H_m and
    y_{m-1} in H_{m-1}.  `anchors` gives (x, y) per block in local indices;
    the default is vertex 0 of each block, or seeded-random choices when
    `seed` is given.  Returns the chained graph and the block vertex sets.
    """
    if not graphs:
        raise GraphInputError("chain of zero graphs")
    if anchors is None:
        if seed is None:
            anchors = [(0, 0)] * len(graphs)
        else:
            rng = SplitMix64(seed)
            anchors = [(rng.randrange(g.n), rng.randrange(g.n)) for g in graphs]
    if len(anchors) != len(graphs):
        raise GraphInputError("need one (x, y) anchor pair per block")
    offsets = []
    total = 0
    for g in graphs:
        offsets.append(total)
        total += g.n
    for g, (x, y) in zip(graphs, anchors):
        if not (0 <= x < g.n and 0 <= y < g.n):
            raise GraphInputError(f"anchor ({x},{y}) out of range for block n={g.n}")
    edges = []
    for g, off in zip(graphs, offsets):
        edges.extend((u + off, v + off) for u, v in g.edges)
    for m in range(1, len(graphs)):
        x_m = offsets[m] + anchors[m][0]
        y_prev = offsets[m - 1] + anchors[m - 1][1]
        edges.append((min(x_m, y_prev), max(x_m, y_prev)))
    blocks = tuple(
        tuple(range(off, off + g.n)) for g, off in zip(graphs, offsets)
    )
    return Graph.from_edges(total, edges), blocks


# ---------------------------------------------------------------------------
# Textual family specs, e.g. "complete(4)", "rr(n=20,d=3,seed=1)",
# "chain(k3*8)", "apex(c8)", "union(k3*2)".  Short names: k3, c6, p4, e3.

_TOKEN_RE = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+|[(),*=])")

_SHORT_PREFIX = {"k": "complete", "c": "cycle", "p": "path", "e": "edgeless"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, int]] = []
        pos = 0
        while pos < len(text):
            match = _TOKEN_RE.match(text, pos)
            if match is None:
                raise GraphInputError(
                    f"family spec parse error at position {pos}: {text[pos:]!r}"
                )
            self.tokens.append((match.group(1), match.start(1)))
            pos = match.end()
        self.index = 0

    def peek(self) -> str | None:
        if self.index < len(self.tokens):
            return self.tokens[self.index][0]
        return None

    def take(self) -> str:
        if self.index >= len(self.tokens):
            raise GraphInputError(
                f"family spec parse error: unexpected end of {self.text!r}"
            )
        tok = self.tokens[self.index][0]
        self.index += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.take()
        if got != tok:
            where = self.tokens[self.index - 1][1]
            raise GraphInputError(
                f"family spec parse error at position {where}: "
                f"expected {tok!r}, got {got!r}"
            )


def _expand_short(name: str) -> tuple[str, list]:
    """Resolve short names like k3 -> ('complete', [3])."""
    m = re.fullmatch(r"([kcpe])(\d+)", name)
    if m:
        return _SHORT_PREFIX[m.group(1)], [int(m.group(2))]
    return name, []


def _parse_spec(p: _Parser):
    name = p.take()
    if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
        raise GraphInputError(f"family spec parse error: bad name {name!r}")
    args: list = []
    kwargs: dict[str, int] = {}
    if p.peek() == "(":
        p.take()
        if p.peek() != ")":
            while True:
                args_before = len(args) + len(kwargs)
                tok = p.peek()
                if tok is not None and tok.isdigit():
                    p.take()
                    args.append(int(tok))
                else:
                    inner_name = p.take()
                    if p.peek() == "=":
                        p.take()
                        val = p.take()
                        if not val.isdigit():
                            raise GraphInputError(
                                f"family spec parse error: {inner_name}= needs an "
                                f"integer, got {val!r}"
                            )
                        kwargs[inner_name] = int(val)
                    else:
                        # Nested spec, optionally repeated with *count.
                        p.index -= 1
                        sub = _build(*_parse_spec(p))
                        count = 1
                        if p.peek() == "*":
                            p.take()
                            cnt = p.take()
                            if not cnt.isdigit():
                                raise GraphInputError(
                                    "family spec parse error: * needs an integer"
                                )
                            count = int(cnt)
                        args.extend([sub] * count)
                assert len(args) + len(kwargs) > args_before
                if p.peek() == ",":
                    p.take()
                    continue
                break
        p.expect(")")
    return name, args, kwargs


def _build(name: str, args: list, kwargs: dict) -> Graph:
    short, short_args = _expand_short(name)
    if short_args:
        if args or kwargs:
            raise GraphInputError(f"short name {name!r} takes no arguments")
        name, args = short, short_args
    subgraphs = [a for a in args if isinstance(a, Graph)]
    ints = [a for a in args if isinstance(a, int)]

    def only_int(count: int) -> list[int]:
        if subgraphs or kwargs or len(ints) != count:
            raise GraphInputError(f"family {name!r}: expected {count} integer arg(s)")
        return ints

    if name == "cycle":
        return cycle_graph(only_int(1)[0])
    if name == "path":
        return path_graph(only_int(1)[0])
    if name == "complete":
        return complete_graph(only_int(1)[0])
    if name == "edgeless":
        return edgeless_graph(only_int(1)[0])
    if name == "petersen":
        only_int(0)
        return petersen_graph()
    if name == "union":
        if ints or kwargs or not subgraphs:
            raise GraphInputError("union(...) takes nested family specs")
        return disjoint_union(subgraphs)
    if name == "apex":
        if ints or kwargs or len(subgraphs) != 1:
            raise GraphInputError("apex(...) takes exactly one nested spec")
        return apex(subgraphs[0])
    if name == "chain":
        if ints or not subgraphs:
            raise GraphInputError("chain(...) takes nested family specs")
        seed = kwargs.pop("seed", None)
        if kwargs:
            raise GraphInputError(f"chain(...): unknown options {sorted(kwargs)}")
        return chain(subgraphs, seed=seed)[0]
    if name == "rr":
        if ints or subgraphs:
            raise GraphInputError("rr(...) takes n=, d=, seed= options")
        try:
            n, d, seed = kwargs.pop("n"), kwargs.pop("d"), kwargs.pop("seed")
        except KeyError as exc:
            raise GraphInputError(f"rr(...) missing option {exc}") from exc
        if kwargs:
            raise GraphInputError(f"rr(...): unknown options {sorted(kwargs)}")
        return random_regular(n, d, seed)
    raise GraphInputError(f"unknown family {name!r}")


def parse_family(text: str) -> Graph:
    """Build a graph from its textual family spec."""
    p = _Parser(text)
    name, args, kwargs = _parse_spec(p)
    if p.peek() is not None:
        where = p.tokens[p.index][1]
        raise GraphInputError(
            f"family spec parse error at position {where}: trailing input"
        )
    return _build(name, args, kwargs)


def chain_of(block_spec: str, count: int, seed: int | None = None):
    """Chain `count` copies of a family spec; returns (graph, blocks)."""
    blocks = [parse_family(block_spec) for _ in range(count)]
    return chain(blocks, seed=seed)
