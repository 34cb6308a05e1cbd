"""Greedy clique chains, the maximal interval subgraph pipeline and simplicial vertices."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, GraphFormatError, VertexOrdering, check_sizes, graph_to_dot
from .poset import MALattice, is_cocomp_ordering
from .report import PreconditionError
from .searches import lbfs_plus, local_mns_plus, mns_audit

__all__ = [
    "CliqueChain",
    "ChainIndex",
    "chainclique",
    "maximal_interval_subgraph",
    "maximal_chordal_subgraph",
    "chain_index",
    "simplicial_vertices",
    "simplicial_vertices_from_cocomp",
    "fully_comparable_cliques",
    "parse_chain",
]


@dataclass(frozen=True)
class CliqueChain:
    """Cliques ``C_1..C_k`` (sorted tuples) produced from ``source_ordering``."""

    cliques: tuple[tuple[int, ...], ...]
    source_ordering: VertexOrdering | None = None
    kind: str = "interval"

    def __len__(self) -> int:
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)

    def __getitem__(self, i):
        return self.cliques[i]

    def as_sets(self) -> list[frozenset[int]]:
        return [frozenset(c) for c in self.cliques]

    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(e for c in self.cliques for e in combinations(c, 2))

    @property
    def edge_count(self) -> int:
        return len(self.edges())

    def subgraph(self, g: Graph) -> Graph:
        """The spanning subgraph ``G_C``."""
        return Graph.from_edges(g.n, self.edges(), names=g.names)

    def discarded_edges(self, g: Graph) -> list[tuple[int, int]]:
        return sorted(g.edge_set() - self.edges())

    def to_text(self, g: Graph | None = None) -> str:
        lab = g.label if g is not None else str
        lines = [str(len(self.cliques))]
        lines += [f"{i}: " + " ".join(lab(v) for v in c) for i, c in enumerate(self.cliques, 1)]
        return "\n".join(lines) + "\n"

    def to_dot(self, g: Graph, name: str = "GC") -> str:
        """``g`` with the edges outside ``G_C`` drawn dashed."""
        return graph_to_dot(g, name, dashed=self.discarded_edges(g))


def parse_chain(text: str, g: Graph) -> CliqueChain:
    """Inverse of :meth:`CliqueChain.to_text`."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphFormatError("empty chain file", 1)
    try:
        k = int(lines[0])
    except ValueError:
        raise GraphFormatError("chain header must be the clique count", 1) from None
    if len(lines) - 1 != k:
        raise GraphFormatError(f"header announces {k} cliques, found {len(lines) - 1}", 1)
    cliques = []
    for lineno, ln in enumerate(lines[1:], 2):
        head, sep, body = ln.partition(":")
        if not sep or head.strip() != str(lineno - 1):
            raise GraphFormatError("expected 'i: v v v'", lineno)
        try:
            cliques.append(tuple(sorted(g.vertices(body.split()))))
        except KeyError as exc:
            raise GraphFormatError(str(exc), lineno) from None
    return CliqueChain(tuple(cliques))


def chainclique(g: Graph, sigma: VertexOrdering) -> CliqueChain:
    """Scan ``sigma``, growing the current clique while the next vertex is
    universal to it, otherwise starting ``{v} | (N(v) & C_prev)``.  O(n + m)."""
    check_sizes(g, sigma)
    n = g.n
    adj = g.adjacency
    member = [0] * n  # clique id (1-based) a vertex was last put in
    cliques: list[list[int]] = []
    current: list[int] = []
    cid = 0
    order = sigma.order
    i = 0
    while i < n:
        v = order[i]
        prev = cid
        cid += 1
        current = [v] + [u for u in adj[v] if member[u] == prev and prev]
        for u in current:
            member[u] = cid
        i += 1
        while i < n:
            w = order[i]
            hits = 0
            for u in adj[w]:
                if member[u] == cid:
                    hits += 1
            if hits != len(current):
                break
            current.append(w)
            member[w] = cid
            i += 1
        cliques.append(current)
    return CliqueChain(tuple(tuple(sorted(c)) for c in cliques), sigma)


def _require_cocomp(g: Graph, tau: VertexOrdering) -> None:
    report = is_cocomp_ordering(g, tau)
    if not report:
        raise PreconditionError("reference ordering is not a cocomp ordering (umbrella found)", report.witness)


def maximal_interval_subgraph(g: Graph, tau: VertexOrdering, trust: bool = False) -> CliqueChain:
    """LocalMNS+ from a cocomp ``tau`` followed by :func:`chainclique`.

    The result is a maximal chain of maximal cliques whose union is a
    maximal interval (and maximal chordal) spanning subgraph.
    """
    check_sizes(g, tau)
    if not trust:
        _require_cocomp(g, tau)
    return chainclique(g, local_mns_plus(g, tau))


def maximal_chordal_subgraph(g: Graph, tau: VertexOrdering, trust: bool = False) -> CliqueChain:
    chain = maximal_interval_subgraph(g, tau, trust)
    return CliqueChain(chain.cliques, chain.source_ordering, "chordal")


@dataclass(frozen=True)
class ChainIndex:
    """1-based clique indices per vertex."""

    first: tuple[int, ...]
    last: tuple[int, ...]
    forward: tuple[int, ...]
    backward: tuple[int, ...]

    def row(self, v: int) -> tuple[int, int, int, int]:
        return (self.first[v], self.last[v], self.forward[v], self.backward[v])

    def to_tsv(self, g: Graph | None = None) -> str:
        lab = g.label if g is not None else str
        lines = ["vertex\tfirst\tlast\tforward\tbackward"]
        for v in range(len(self.first)):
            lines.append("\t".join([lab(v), *map(str, self.row(v))]))
        return "\n".join(lines) + "\n"


def chain_index(chain: CliqueChain, g: Graph) -> ChainIndex:
    n = g.n
    first = [0] * n
    last = [0] * n
    for i, c in enumerate(chain.cliques, 1):
        for v in c:
            if not first[v]:
                first[v] = i
            last[v] = i
    if n and not all(first):
        missing = next(v for v in range(n) if not first[v])
        raise PreconditionError("chain does not span the graph", missing)
    forward = list(last)
    backward = list(first)
    for v in range(n):
        for u in g.adjacency[v]:
            if first[u] > forward[v]:
                forward[v] = first[u]
            if last[u] < backward[v]:
                backward[v] = last[u]
    return ChainIndex(tuple(first), tuple(last), tuple(forward), tuple(backward))


def simplicial_vertices(g: Graph, sigma: VertexOrdering, trust: bool = False) -> frozenset[int]:
    """Simplicial vertices from an MNS cocomp ordering: those with ``forward == backward``.

    Unless ``trust``, ``sigma`` is checked to be cocomp and MNS first.
    """
    check_sizes(g, sigma)
    if not trust:
        _require_cocomp(g, sigma)
        report = mns_audit(g, sigma)
        if not report:
            raise PreconditionError("ordering is not an MNS ordering", report.witness)
    idx = chain_index(chainclique(g, sigma), g)
    return frozenset(v for v in sigma if idx.forward[v] == idx.backward[v])


def simplicial_vertices_from_cocomp(g: Graph, tau: VertexOrdering, trust: bool = False) -> frozenset[int]:
    """Derive an MNS cocomp ordering as ``LBFS+(g, tau)`` and run :func:`simplicial_vertices`."""
    check_sizes(g, tau)
    if not trust:
        _require_cocomp(g, tau)
    return simplicial_vertices(g, lbfs_plus(g, tau), trust=True)


def fully_comparable_cliques(lattice: MALattice) -> list[frozenset[int]]:
    """Elements comparable to every other element of the lattice."""
    comp = lattice.leq | lattice.leq.T
    return [e for i, e in enumerate(lattice.elements) if comp[i].all()]

