"""Graph and vertex-ordering primitives, text I/O and random instances.

Vertices are dense integers ``0..n-1``.  Human-readable labels live in an
optional symbol table (``Graph.names``) that readers and writers go through.
"""
from __future__ import annotations

import io
import os
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Graph",
    "VertexOrdering",
    "GeneratedInstance",
    "GraphFormatError",
    "load_graph",
    "parse_graph",
    "save_graph",
    "format_graph",
    "graph_to_dot",
    "complement",
    "induced_subgraph",
    "random_cocomp_instance",
    "random_sparse_cocomp_instance",
    "load_ordering",
    "format_ordering",
]

# lazily built bitset adjacency is only offered up to this size
BITSET_LIMIT = 4096


class GraphFormatError(ValueError):
    """Malformed graph or ordering text; ``lineno`` is 1-based when known."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph stored as sorted adjacency tuples.

    Use :meth:`from_edges` rather than the raw constructor; it symmetrises,
    sorts and deduplicates.
    """

    adjacency: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = None

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        names: Sequence[str] | None = None,
        strict: bool = False,
    ) -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if v in nbrs[u]:
                if strict:
                    raise ValueError(f"duplicate edge ({u}, {v})")
                continue
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(tuple(tuple(sorted(s)) for s in nbrs), _names(names, n))

    @classmethod
    def from_edge_arrays(
        cls, n: int, us: np.ndarray, vs: np.ndarray, names: Sequence[str] | None = None
    ) -> "Graph":
        """Bulk constructor for large generated instances (no loops allowed)."""
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        if np.any(us == vs):
            raise ValueError("loops are not allowed")
        src = np.concatenate([us, vs])
        dst = np.concatenate([vs, us])
        key = np.unique(src * n + dst)
        src, dst = np.divmod(key, n)
        bounds = np.searchsorted(src, np.arange(n + 1))
        flat = dst.tolist()
        adjacency = tuple(
            tuple(flat[bounds[v] : bounds[v + 1]]) for v in range(n)
        )
        return cls(adjacency, _names(names, n))

    @classmethod
    def from_named_edges(
        cls, vertices: Sequence[str], edges: Iterable[tuple[str, str]]
    ) -> "Graph":
        index = {name: i for i, name in enumerate(vertices)}
        return cls.from_edges(
            len(vertices), ((index[a], index[b]) for a, b in edges), names=vertices
        )

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adjacency)

    @cached_property
    def adjacency_bits(self) -> tuple[int, ...]:
        """Per-vertex neighbourhood as an integer bitset (n <= 4096 only)."""
        if self.n > BITSET_LIMIT:
            raise ValueError(f"bitset adjacency is limited to n <= {BITSET_LIMIT}")
        out = []
        for nb in self.adjacency:
            bits = 0
            for u in nb:
                bits |= 1 << u
            out.append(bits)
        return tuple(out)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Each edge once, as ``(u, v)`` with ``u < v``."""
        for u, nb in enumerate(self.adjacency):
            for v in nb:
                if u < v:
                    yield (u, v)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges())

    def label(self, v: int) -> str:
        return self.names[v] if self.names is not None else str(v)

    def vertex(self, name: str | int) -> int:
        """Resolve a label (or an integer id) through the symbol table."""
        if self.names is not None:
            try:
                return self._name_index[str(name)]
            except KeyError:
                raise KeyError(f"unknown vertex {name!r}") from None
        v = int(name)
        if not 0 <= v < self.n:
            raise KeyError(f"unknown vertex {name!r}")
        return v

    @cached_property
    def _name_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names or ())}

    def vertices(self, names: Iterable[str | int]) -> list[int]:
        return [self.vertex(x) for x in names]

    def labels(self, vs: Iterable[int]) -> list[str]:
        return [self.label(v) for v in vs]

    def is_clique(self, vs: Iterable[int]) -> bool:
        vs = list(vs)
        nb = self.neighbor_sets
        return all(v in nb[u] for i, u in enumerate(vs) for v in vs[i + 1 :])

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        return Graph.from_edges(self.n, [*self.edges(), *extra], names=self.names)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash(self.adjacency)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _names(names: Sequence[str] | None, n: int) -> tuple[str, ...] | None:
    if names is None:
        return None
    names = tuple(str(x) for x in names)
    if len(names) != n:
        raise ValueError(f"{len(names)} names for {n} vertices")
    if len(set(names)) != n:
        raise ValueError("vertex names must be unique")
    return names


@dataclass(frozen=True, eq=False)
class VertexOrdering:
    """A permutation ``order`` of ``0..n-1`` with O(1) position lookup.

    ``provenance`` records where the ordering came from (``"cocomp"``,
    ``"lbfs+"``, ``"localmns+"``, ``"arbitrary"``...); it is informational.
    """

    order: tuple[int, ...]
    provenance: str = "arbitrary"
    position: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        order = tuple(int(v) for v in self.order)
        n = len(order)
        pos = [-1] * n
        for i, v in enumerate(order):
            if not 0 <= v < n or pos[v] != -1:
                raise ValueError("ordering is not a permutation of 0..n-1")
            pos[v] = i
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "position", tuple(pos))

    @classmethod
    def identity(cls, n: int, provenance: str = "arbitrary") -> "VertexOrdering":
        return cls(tuple(range(n)), provenance)

    @classmethod
    def from_labels(
        cls, g: Graph, labels: Iterable[str | int], provenance: str = "arbitrary"
    ) -> "VertexOrdering":
        return cls(tuple(g.vertices(labels)), provenance)

    def reversed(self) -> "VertexOrdering":
        return VertexOrdering(self.order[::-1], self.provenance)

    def before(self, u: int, v: int) -> bool:
        return self.position[u] < self.position[v]

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self) -> Iterator[int]:
        return iter(self.order)

    def __getitem__(self, i: int) -> int:
        return self.order[i]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, VertexOrdering):
            return self.order == other.order
        if isinstance(other, (tuple, list)):
            return self.order == tuple(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.order)


def check_sizes(g: Graph, *orderings: VertexOrdering) -> None:
    for o in orderings:
        if len(o) != g.n:
            raise ValueError(f"ordering has {len(o)} vertices, graph has {g.n}")


@dataclass(frozen=True)
class GeneratedInstance:
    """A random cocomparability graph with a known cocomp ordering."""

    graph: Graph
    witness: VertexOrdering
    generating_arcs: tuple[tuple[int, int], ...] = ()


# ---------------------------------------------------------------- text I/O


def parse_graph(text: str, fmt: str = "auto", strict: bool = False) -> Graph:
    """Parse the edge-list (``n m`` / ``u v``) or DIMACS-like format.

    ``fmt`` is ``"edgelist"``, ``"dimacs"`` or ``"auto"`` (DIMACS when a
    ``p`` line is present).  Duplicate edges are dropped unless ``strict``;
    loops are always rejected.
    """
    lines = text.splitlines()
    if fmt == "auto":
        fmt = "dimacs" if any(ln.lstrip().startswith("p ") for ln in lines) else "edgelist"
    if fmt == "edgelist":
        return _parse_edgelist(lines, strict)
    if fmt == "dimacs":
        return _parse_dimacs(lines, strict)
    raise ValueError(f"unknown graph format {fmt!r}")


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphFormatError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def _add_edge(nbrs, seen, u, v, n, lineno, strict):
    if not (0 <= u < n and 0 <= v < n):
        raise GraphFormatError(f"vertex out of range in edge {u} {v}", lineno)
    if u == v:
        raise GraphFormatError(f"loop at vertex {u}", lineno)
    key = (min(u, v), max(u, v))
    if key in seen:
        if strict:
            raise GraphFormatError(f"duplicate edge {u} {v}", lineno)
        return
    seen.add(key)
    nbrs[u].append(v)
    nbrs[v].append(u)


def _parse_edgelist(lines: list[str], strict: bool) -> Graph:
    header = None
    nbrs: list[list[int]] = []
    seen: set[tuple[int, int]] = set()
    count = 0
    n = 0
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError("expected two fields", lineno)
        a, b = _ints(tokens, lineno)
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("negative header value", lineno)
            header = (a, b)
            n = a
            nbrs = [[] for _ in range(n)]
            continue
        _add_edge(nbrs, seen, a, b, n, lineno, strict)
        count += 1
    if header is None:
        raise GraphFormatError("missing 'n m' header")
    if count != header[1]:
        raise GraphFormatError(f"header announces {header[1]} edges, found {count}")
    return Graph(tuple(tuple(sorted(x)) for x in nbrs))


def _parse_dimacs(lines: list[str], strict: bool) -> Graph:
    n = None
    nbrs: list[list[int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(lines, 1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "p":
            if n is not None:
                raise GraphFormatError("second 'p' line", lineno)
            if len(tokens) != 4:
                raise GraphFormatError("expected 'p edge n m'", lineno)
            n, _ = _ints(tokens[2:], lineno)
            nbrs = [[] for _ in range(n)]
        elif tokens[0] == "e":
            if n is None:
                raise GraphFormatError("edge before 'p' line", lineno)
            if len(tokens) != 3:
                raise GraphFormatError("expected 'e u v'", lineno)
            u, v = _ints(tokens[1:], lineno)
            _add_edge(nbrs, seen, u - 1, v - 1, n, lineno, strict)
        else:
            raise GraphFormatError(f"unknown line type {tokens[0]!r}", lineno)
    if n is None:
        raise GraphFormatError("missing 'p edge n m' line")
    names = [str(i + 1) for i in range(n)]
    return Graph(tuple(tuple(sorted(x)) for x in nbrs), tuple(names))


def _read_text(source) -> str:
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            data = fh.read()
    else:
        data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return data


def load_graph(source: str | os.PathLike | IO, fmt: str = "auto", strict: bool = False) -> Graph:
    """Read a graph from a path or an open (text or binary) stream."""
    return parse_graph(_read_text(source), fmt=fmt, strict=strict)


def format_graph(g: Graph, fmt: str = "edgelist") -> str:
    buf = io.StringIO()
    if fmt == "edgelist":
        buf.write(f"{g.n} {g.m}\n")
        for u, v in g.edges():
            buf.write(f"{u} {v}\n")
    elif fmt == "dimacs":
        buf.write(f"p edge {g.n} {g.m}\n")
        for u, v in g.edges():
            buf.write(f"e {u + 1} {v + 1}\n")
    else:
        raise ValueError(f"unknown graph format {fmt!r}")
    return buf.getvalue()


def save_graph(g: Graph, dest: str | os.PathLike | IO, fmt: str = "edgelist") -> None:
    text = format_graph(g, fmt)
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        dest.write(text)


def graph_to_dot(
    g: Graph,
    name: str = "G",
    dashed: Iterable[tuple[int, int]] = (),
) -> str:
    """Undirected DOT, one line per edge; edges listed in ``dashed`` get style=dashed."""
    dashed = {(min(u, v), max(u, v)) for u, v in dashed}
    out = [f"graph {name} {{"]
    for v in range(g.n):
        out.append(f'  {v} [label="{g.label(v)}"];')
    for u, v in g.edges():
        style = " [style=dashed]" if (u, v) in dashed else ""
        out.append(f"  {u} -- {v}{style};")
    out.append("}")
    return "\n".join(out) + "\n"


def load_ordering(g: Graph, source: str | os.PathLike | IO, provenance: str = "arbitrary") -> VertexOrdering:
    """Read whitespace-separated vertex labels (resolved via the symbol table)."""
    tokens = _read_text(source).split()
    try:
        order = VertexOrdering.from_labels(g, tokens, provenance)
    except KeyError as exc:
        raise GraphFormatError(str(exc)) from None
    except ValueError as exc:
        raise GraphFormatError(f"ordering: {exc}") from None
    if len(order) != g.n:
        raise GraphFormatError(f"ordering lists {len(order)} vertices, graph has {g.n}")
    return order


def format_ordering(g: Graph, order: VertexOrdering) -> str:
    return " ".join(g.label(v) for v in order) + "\n"


# -------------------------------------------------------------- operations


def complement(g: Graph) -> Graph:
    n = g.n
    nb = g.neighbor_sets
    adjacency = tuple(
        tuple(u for u in range(n) if u != v and u not in nb[v]) for v in range(n)
    )
    return Graph(adjacency, g.names)


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """``g[s]`` relabelled to ``0..|s|-1``; the list maps new ids to old ones."""
    keep = sorted(set(s))
    new_id = {v: i for i, v in enumerate(keep)}
    adjacency = tuple(
        tuple(new_id[u] for u in g.adjacency[v] if u in new_id) for v in keep
    )
    names = tuple(g.names[v] for v in keep) if g.names is not None else tuple(str(v) for v in keep)
    return Graph(adjacency, names), keep


def random_cocomp_instance(n: int, density: float, seed: int | None = None) -> GeneratedInstance:
    """Complement of the comparability graph of a random poset.

    A random DAG (arc i->j with probability ``density`` for i before j in a
    random permutation) is transitively closed; the permutation is a linear
    extension of the poset and therefore a cocomp ordering of the output.
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    arcs = []
    succ: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                arcs.append((perm[i], perm[j]))
                succ[perm[i]].append(perm[j])
    reach = [0] * n
    for i in range(n - 1, -1, -1):
        u = perm[i]
        bits = 0
        for w in succ[u]:
            bits |= (1 << w) | reach[w]
        reach[u] = bits
    comparable = [reach[v] for v in range(n)]
    for u in range(n):
        r = reach[u]
        while r:
            low = r & -r
            w = low.bit_length() - 1
            comparable[w] |= 1 << u
            r ^= low
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if not (comparable[u] >> v) & 1
    ]
    g = Graph.from_edges(n, edges)
    return GeneratedInstance(g, VertexOrdering(tuple(perm), "cocomp"), tuple(arcs))


def random_sparse_cocomp_instance(
    n: int, window: float, dim: int = 3, seed: int | None = None
) -> GeneratedInstance:
    """Sparse cocomparability graph from a ``dim``-dimensional point order.

    Point ``i`` sits at ``i + window * U`` in every coordinate; two points are
    adjacent iff neither dominates the other.  Only pairs closer than
    ``window`` can be adjacent, so generation is O(n * window).  Sorting by
    the first coordinate gives a linear extension, hence a cocomp ordering.
    """
    rng = np.random.default_rng(seed)
    coords = np.arange(n, dtype=float)[:, None] + window * rng.random((n, dim))
    us, vs = [], []
    for off in range(1, int(np.ceil(window)) + 1):
        if off >= n:
            break
        diff = coords[off:] - coords[:-off]
        above = np.all(diff > 0, axis=1)
        below = np.all(diff < 0, axis=1)
        idx = np.nonzero(~(above | below))[0]
        us.append(idx)
        vs.append(idx + off)
    us = np.concatenate(us) if us else np.zeros(0, dtype=np.int64)
    vs = np.concatenate(vs) if vs else np.zeros(0, dtype=np.int64)
    g = Graph.from_edge_arrays(n, us, vs)
    witness = VertexOrdering(tuple(np.argsort(coords[:, 0], kind="stable").tolist()), "cocomp")
    return GeneratedInstance(g, witness)
