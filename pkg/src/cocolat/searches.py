"""Tie-broken graph searches and label audits.

Every search takes a :class:`TieBreaker`.  ``first-index`` prefers the
smallest vertex id, ``plus`` prefers the rightmost tied vertex of a
reference ordering and ``any`` lets the engine pick whatever is cheapest
(used by the linear-time LocalMCS).
"""
from __future__ import annotations

import heapq
from collections import OrderedDict
from dataclasses import dataclass
from typing import Callable

from .graph import Graph, VertexOrdering, check_sizes
from .report import VerificationReport

__all__ = [
    "TieBreaker",
    "lbfs",
    "lbfs_plus",
    "ldfs",
    "ldfs_plus",
    "mcs",
    "local_mns",
    "local_mns_plus",
    "local_mcs",
    "flipping_check",
    "cocomp_order_multisweep",
    "lbfs_audit",
    "ldfs_audit",
    "mcs_audit",
    "mns_audit",
    "local_mns_audit",
    "run_search",
    "SEARCHES",
]


@dataclass(frozen=True)
class TieBreaker:
    mode: str = "first-index"
    reference: VertexOrdering | None = None

    def __post_init__(self):
        if self.mode not in ("first-index", "plus", "any"):
            raise ValueError(f"unknown tie-break mode {self.mode!r}")
        if self.mode == "plus" and self.reference is None:
            raise ValueError("plus tie-breaking needs a reference ordering")

    @classmethod
    def first_index(cls) -> "TieBreaker":
        return cls("first-index")

    @classmethod
    def plus(cls, tau: VertexOrdering) -> "TieBreaker":
        return cls("plus", tau)

    def rank(self, n: int) -> list[int]:
        """Per-vertex priority; among tied candidates the highest rank wins."""
        if self.mode == "plus":
            if len(self.reference) != n:
                raise ValueError(f"reference ordering has {len(self.reference)} vertices, graph has {n}")
            return list(self.reference.position)
        return [n - 1 - v for v in range(n)]


def _by_rank_desc(n: int, rank: list[int]) -> list[int]:
    out = [0] * n
    for v in range(n):
        out[n - 1 - rank[v]] = v
    return out


# ------------------------------------------------------------------ LBFS


class _Cell:
    __slots__ = ("items", "prev", "next", "stamp", "split")

    def __init__(self):
        self.items: OrderedDict[int, None] = OrderedDict()
        self.prev = self.next = None
        self.stamp = -1
        self.split = None


def lbfs(g: Graph, tb: TieBreaker | None = None) -> VertexOrdering:
    """Lexicographic BFS by partition refinement, O(n + m) after an O(n + m) presort.

    Cells are kept in decreasing label order; inside a cell vertices stay in
    decreasing tie-break rank, so the next vertex is always the head of the
    first cell.
    """
    tb = tb or TieBreaker.first_index()
    n = g.n
    rank = tb.rank(n)
    by_rank = _by_rank_desc(n, rank)
    # adjacency sorted by decreasing rank, built by bucketing
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for w in by_rank:
        for u in g.adjacency[w]:
            nbrs[u].append(w)
    head = _Cell()
    head.items.update((v, None) for v in by_rank)
    cell_of = [head] * n
    visited = [False] * n
    order = []
    for step in range(n):
        while not head.items:
            head = head.next
            head.prev = None
        v, _ = head.items.popitem(last=False)
        visited[v] = True
        order.append(v)
        for w in nbrs[v]:
            if visited[w]:
                continue
            c = cell_of[w]
            if c.stamp != step:
                c.stamp = step
                new = _Cell()
                new.next, new.prev = c, c.prev
                if c.prev is not None:
                    c.prev.next = new
                else:
                    head = new
                c.prev = new
                c.split = new
            del c.items[w]
            c.split.items[w] = None
            cell_of[w] = c.split
    return VertexOrdering(tuple(order), "lbfs+" if tb.mode == "plus" else "lbfs")


def lbfs_plus(g: Graph, tau: VertexOrdering) -> VertexOrdering:
    check_sizes(g, tau)
    return lbfs(g, TieBreaker.plus(tau))


# ------------------------------------------------------------------ LDFS


def ldfs(g: Graph, tb: TieBreaker | None = None) -> VertexOrdering:
    """Lexicographic DFS, O(n^2): unvisited neighbours of each visited vertex
    move to the front, keeping their previous relative order."""
    tb = tb or TieBreaker.first_index()
    n = g.n
    rank = tb.rank(n)
    cells: list[list[int]] = [_by_rank_desc(n, rank)] if n else []
    order = []
    nb = g.neighbor_sets
    for _ in range(n):
        v = cells[0].pop(0)
        order.append(v)
        front, back = [], []
        for cell in cells:
            moved = [w for w in cell if w in nb[v]]
            if moved:
                front.append(moved)
                rest = [w for w in cell if w not in nb[v]]
            else:
                rest = cell
            if rest:
                back.append(rest)
        cells = front + back
    return VertexOrdering(tuple(order), "ldfs+" if tb.mode == "plus" else "ldfs")


def ldfs_plus(g: Graph, tau: VertexOrdering) -> VertexOrdering:
    check_sizes(g, tau)
    return ldfs(g, TieBreaker.plus(tau))


# ------------------------------------------------------------------- MCS


def mcs(g: Graph, tb: TieBreaker | None = None) -> VertexOrdering:
    """Maximum cardinality search with a lazy heap, O((n + m) log n)."""
    tb = tb or TieBreaker.first_index()
    n = g.n
    rank = tb.rank(n)
    count = [0] * n
    visited = [False] * n
    heap = [(0, -rank[v], v) for v in range(n)]
    heapq.heapify(heap)
    order = []
    while heap:
        c, _, v = heapq.heappop(heap)
        if visited[v] or -c != count[v]:
            continue
        visited[v] = True
        order.append(v)
        for w in g.adjacency[v]:
            if not visited[w]:
                count[w] += 1
                heapq.heappush(heap, (-count[w], -rank[w], w))
    return VertexOrdering(tuple(order), "mcs")


# -------------------------------------------------------------- LocalMCS


def local_mcs(
    g: Graph,
    tb: TieBreaker | None = None,
    trace: Callable[[int, frozenset[int]], None] | None = None,
) -> VertexOrdering:
    """LocalMCS: pick an unvisited vertex with the most neighbours in ``D``.

    ``D`` starts empty and becomes ``{v} | (N(v) & D)`` after visiting ``v``.
    With ``tb.mode == "any"`` a bucket structure gives O(n + m); otherwise a
    lazily invalidated heap keyed by ``(score, rank)`` gives O(n + m log n).
    ``trace(i, D)`` is called after each step with the 1-based step index.
    """
    tb = tb or TieBreaker.first_index()
    if tb.mode == "any":
        order = _local_mcs_buckets(g, trace)
    else:
        order = _local_mcs_heap(g, tb.rank(g.n), trace)
    prov = "localmns+" if tb.mode == "plus" else "localmns"
    return VertexOrdering(tuple(order), prov)


def _local_mcs_heap(g: Graph, rank: list[int], trace) -> list[int]:
    n = g.n
    adj = g.adjacency
    score = [0] * n
    visited = [False] * n
    in_d = [False] * n
    evicted = [False] * n
    mark = [-1] * n
    d: list[int] = []
    heap = [(0, -rank[v], v) for v in range(n)]
    heapq.heapify(heap)
    push, pop = heapq.heappush, heapq.heappop
    order = []
    step = 0
    while heap:
        s, r, v = pop(heap)
        if visited[v]:
            continue
        if -s != score[v]:
            # stale entry left behind by a decrease; requeue at the true score
            push(heap, (-score[v], r, v))
            continue
        assert not evicted[v], "a vertex evicted from D re-entered it"
        visited[v] = True
        order.append(v)
        for w in adj[v]:
            mark[w] = step
        keep = [v]
        for x in d:
            if mark[x] == step:
                keep.append(x)
            else:
                in_d[x] = False
                evicted[x] = True
                for w in adj[x]:
                    if not visited[w]:
                        score[w] -= 1
        in_d[v] = True
        d = keep
        for w in adj[v]:
            if not visited[w]:
                score[w] += 1
                push(heap, (-score[w], -rank[w], w))
        step += 1
        if trace is not None:
            trace(step, frozenset(d))
    return order


def _local_mcs_buckets(g: Graph, trace) -> list[int]:
    n = g.n
    adj = g.adjacency
    score = [0] * n
    visited = [False] * n
    mark = [-1] * n
    buckets: list[set[int]] = [set() for _ in range(n + 1)]
    if n:
        buckets[0].update(range(n))
    top = 0
    d: list[int] = []
    order = []

    def move(w: int, delta: int) -> None:
        buckets[score[w]].discard(w)
        score[w] += delta
        buckets[score[w]].add(w)

    for step in range(n):
        while not buckets[top]:
            top -= 1
        v = buckets[top].pop()
        visited[v] = True
        order.append(v)
        for w in adj[v]:
            mark[w] = step
        keep = [v]
        for x in d:
            if mark[x] == step:
                keep.append(x)
            else:
                for w in adj[x]:
                    if not visited[w]:
                        move(w, -1)
        d = keep
        for w in adj[v]:
            if not visited[w]:
                move(w, +1)
                if score[w] > top:
                    top = score[w]
        if trace is not None:
            trace(step + 1, frozenset(d))
    return order


def local_mns(g: Graph, tb: TieBreaker | None = None, trace=None) -> VertexOrdering:
    """LocalMNS realised as LocalMCS (a cardinality-maximal choice is set-maximal)."""
    return local_mcs(g, tb, trace)


def local_mns_plus(g: Graph, tau: VertexOrdering, trace=None) -> VertexOrdering:
    check_sizes(g, tau)
    return local_mcs(g, TieBreaker.plus(tau), trace)


# ------------------------------------------------------- misc searches


def flipping_check(g: Graph, sigma: VertexOrdering, tau: VertexOrdering) -> VerificationReport:
    """Every non-adjacent pair appears in opposite relative order in ``sigma`` and ``tau``."""
    check_sizes(g, sigma, tau)
    ps, pt = sigma.position, tau.position
    nb = g.neighbor_sets
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if v not in nb[u] and (ps[u] < ps[v]) == (pt[u] < pt[v]):
                return VerificationReport(False, "flipping", (u, v))
    return VerificationReport(True, "flipping")


def cocomp_order_multisweep(g: Graph, max_rounds: int | None = None) -> tuple[VertexOrdering, bool]:
    """Repeated LBFS+ sweeps from a first-index LBFS; stops at the first umbrella-free ordering.

    A heuristic: the boolean reports whether the returned ordering passed
    the umbrella check, which it always does before being returned as true.
    """
    from .poset import is_cocomp_ordering

    rounds = g.n if max_rounds is None else max_rounds
    sigma = lbfs(g)
    for _ in range(rounds):
        if is_cocomp_ordering(g, sigma):
            return VertexOrdering(sigma.order, "cocomp"), True
        sigma = lbfs_plus(g, sigma)
    ok = bool(is_cocomp_ordering(g, sigma))
    return (VertexOrdering(sigma.order, "cocomp") if ok else sigma), ok


# --------------------------------------------------------------- audits


def _visited_positions(g: Graph, sigma: VertexOrdering):
    """Yield ``(i, v, unvisited, pos_lists)`` at each step; lists hold visited-neighbour positions."""
    n = g.n
    lists: list[list[int]] = [[] for _ in range(n)]
    unvisited = set(range(n))
    for i, v in enumerate(sigma):
        yield i, v, unvisited, lists
        unvisited.discard(v)
        for w in g.adjacency[v]:
            lists[w].append(i)


def _audit(g, sigma, name, key) -> VerificationReport:
    check_sizes(g, sigma)
    n = g.n
    for i, v, unvisited, lists in _visited_positions(g, sigma):
        kv = key(lists[v], n)
        for w in unvisited:
            if w != v and key(lists[w], n) > kv:
                return VerificationReport(False, name, (i + 1, v, w))
    return VerificationReport(True, name)


def lbfs_audit(g: Graph, sigma: VertexOrdering) -> VerificationReport:
    """Label simulation; witness ``(step, chosen, better)``."""
    return _audit(g, sigma, "lbfs", lambda ps, n: tuple(n - p for p in ps))


def ldfs_audit(g: Graph, sigma: VertexOrdering) -> VerificationReport:
    return _audit(g, sigma, "ldfs", lambda ps, n: tuple(reversed(ps)))


def mcs_audit(g: Graph, sigma: VertexOrdering) -> VerificationReport:
    return _audit(g, sigma, "mcs", lambda ps, n: len(ps))


def mns_audit(g: Graph, sigma: VertexOrdering) -> VerificationReport:
    """Each chosen vertex has an inclusion-maximal visited neighbourhood."""
    check_sizes(g, sigma)
    for i, v, unvisited, lists in _visited_positions(g, sigma):
        sv = set(lists[v])
        for w in unvisited:
            if w != v and sv < set(lists[w]):
                return VerificationReport(False, "mns", (i + 1, v, w))
    return VerificationReport(True, "mns")


def local_mns_audit(g: Graph, sigma: VertexOrdering) -> VerificationReport:
    """Replays ``D`` and checks set-maximality of ``N(v) & D`` at each step."""
    check_sizes(g, sigma)
    nb = g.neighbor_sets
    d: frozenset[int] = frozenset()
    unvisited = set(range(g.n))
    for i, v in enumerate(sigma):
        sv = nb[v] & d
        for w in unvisited:
            if w != v and sv < (nb[w] & d):
                return VerificationReport(False, "local-mns", (i + 1, v, w))
        unvisited.discard(v)
        d = frozenset({v}) | sv
    return VerificationReport(True, "local-mns")


# ------------------------------------------------------------- registry


def _plus(fn):
    def run(g: Graph, tau: VertexOrdering | None):
        if tau is None:
            raise ValueError("plus searches need a reference ordering")
        return fn(g, tau)

    return run


SEARCHES: dict[str, Callable[[Graph, VertexOrdering | None], VertexOrdering]] = {
    "lbfs": lambda g, tau: lbfs(g),
    "lbfs+": _plus(lbfs_plus),
    "ldfs": lambda g, tau: ldfs(g),
    "ldfs+": _plus(ldfs_plus),
    "mcs": lambda g, tau: mcs(g),
    "localmns": lambda g, tau: local_mns(g),
    "localmns+": _plus(local_mns_plus),
}


def run_search(name: str, g: Graph, tau: VertexOrdering | None = None) -> VertexOrdering:
    try:
        fn = SEARCHES[name]
    except KeyError:
        raise ValueError(f"unknown search {name!r}; choose from {', '.join(SEARCHES)}") from None
    return fn(g, tau)
