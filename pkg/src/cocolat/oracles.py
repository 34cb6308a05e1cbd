"""Slow, obviously-correct reference checks used to validate the fast code.

Every oracle has an explicit size guard: exceeding it raises
:class:`CapExceededError` instead of running for hours.
"""
from __future__ import annotations

from collections import deque
from itertools import combinations

import numpy as np

from .graph import Graph, VertexOrdering
from .report import CapExceededError, PreconditionError, VerificationReport

__all__ = [
    "bron_kerbosch",
    "is_chordal",
    "find_asteroidal_triple",
    "has_asteroidal_triple",
    "is_at_free",
    "is_interval_graph",
    "consecutive_clique_arrangement",
    "verify_maximal_chain",
    "verify_maximal_subgraph_exhaustive",
    "verify_sigma_maximal",
    "verify_interval_extension",
    "brute_force_simplicial",
    "is_cocomparability_bruteforce",
    "glb_lub_table_oracle",
    "chain_edges",
]


def _cliques_of(chain) -> list[frozenset[int]]:
    cliques = getattr(chain, "cliques", chain)
    return [frozenset(c) for c in cliques]


def chain_edges(chain) -> frozenset[tuple[int, int]]:
    """Edges covered by some clique of the chain, as ``(u, v)`` with ``u < v``."""
    out = set()
    for c in _cliques_of(chain):
        for u, v in combinations(sorted(c), 2):
            out.add((u, v))
    return frozenset(out)


# ------------------------------------------------------------ cliques


def bron_kerbosch(g: Graph, cap: int = 10**6) -> list[frozenset[int]]:
    """All maximal cliques (Tomita pivoting), sorted by their sorted member tuples.

    Raises :class:`CapExceededError` once more than ``cap`` cliques are found.
    The empty graph has no maximal cliques.
    """
    if g.n == 0:
        return []
    nb = g.neighbor_sets
    out: list[frozenset[int]] = []
    stack = [(frozenset(), frozenset(range(g.n)), frozenset())]
    while stack:
        r, p, x = stack.pop()
        if not p:
            if not x:
                out.append(r)
                if len(out) > cap:
                    raise CapExceededError(f"more than {cap} maximal cliques")
            continue
        pivot = max(p | x, key=lambda u: len(p & nb[u]))
        for v in sorted(p - nb[pivot]):
            stack.append((r | {v}, p & nb[v], x & nb[v]))
            p = p - {v}
            x = x | {v}
    out.sort(key=lambda c: tuple(sorted(c)))
    return out


# ---------------------------------------------------------- chordality


def _mcs_order(g: Graph) -> list[int]:
    n = g.n
    weight = [0] * n
    done = [False] * n
    order = []
    for _ in range(n):
        v = max((u for u in range(n) if not done[u]), key=lambda u: (weight[u], -u))
        done[v] = True
        order.append(v)
        for u in g.adjacency[v]:
            if not done[u]:
                weight[u] += 1
    return order


def _chordless_cycle(g: Graph) -> list[int] | None:
    # any chordless cycle of length >= 4 has a vertex v with non-adjacent
    # neighbours u, w joined by a path avoiding the rest of N[v]
    nb = g.neighbor_sets
    for v in range(g.n):
        for u, w in combinations(g.adjacency[v], 2):
            if w in nb[u]:
                continue
            blocked = (nb[v] | {v}) - {u, w}
            parent = {u: None}
            queue = deque([u])
            while queue and w not in parent:
                a = queue.popleft()
                for b in g.adjacency[a]:
                    if b not in parent and b not in blocked:
                        parent[b] = a
                        queue.append(b)
            if w in parent:
                path = [w]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return [v] + path[::-1]
    return None


def is_chordal(g: Graph) -> VerificationReport:
    """Perfect-elimination test on the reversed MCS order; witness is a chordless cycle."""
    order = _mcs_order(g)
    pos = {v: i for i, v in enumerate(order)}
    nb = g.neighbor_sets
    ok = True
    for v in order:
        earlier = [u for u in g.adjacency[v] if pos[u] < pos[v]]
        if len(earlier) < 2:
            continue
        parent = max(earlier, key=pos.__getitem__)
        if any(u != parent and u not in nb[parent] for u in earlier):
            ok = False
            break
    if ok:
        return VerificationReport(True, "chordal")
    cycle = _chordless_cycle(g)
    assert cycle is not None, "elimination check failed but no chordless cycle found"
    return VerificationReport(False, "chordal", tuple(cycle))


# --------------------------------------------------- asteroidal triples


def _component_labels(g: Graph, removed: set[int]) -> list[int]:
    label = [-1] * g.n
    comp = 0
    for s in range(g.n):
        if s in removed or label[s] != -1:
            continue
        label[s] = comp
        queue = deque([s])
        while queue:
            a = queue.popleft()
            for b in g.adjacency[a]:
                if b not in removed and label[b] == -1:
                    label[b] = comp
                    queue.append(b)
        comp += 1
    return label


def find_asteroidal_triple(g: Graph) -> tuple[int, int, int] | None:
    """First asteroidal triple in lexicographic order, or ``None``. O(n^3 + n(n+m))."""
    nb = g.neighbor_sets
    labels = [_component_labels(g, set(nb[v]) | {v}) for v in range(g.n)]
    for a, b, c in combinations(range(g.n), 3):
        if b in nb[a] or c in nb[a] or c in nb[b]:
            continue
        la, lb, lc = labels[a], labels[b], labels[c]
        if la[b] == la[c] and lb[a] == lb[c] and lc[a] == lc[b]:
            return (a, b, c)
    return None


def has_asteroidal_triple(g: Graph) -> tuple[int, int, int] | None:
    """Alias of :func:`find_asteroidal_triple`; truthy exactly when an AT exists."""
    return find_asteroidal_triple(g)


def is_at_free(g: Graph) -> VerificationReport:
    at = find_asteroidal_triple(g)
    return VerificationReport(at is None, "at-free", at)


# ---------------------------------------------------- interval graphs


def consecutive_clique_arrangement(g: Graph, max_cliques: int = 8) -> list[frozenset[int]] | None:
    """Backtracking search for an order of the maximal cliques in which every
    vertex occupies a contiguous run.  Returns the arrangement or ``None``."""
    cliques = bron_kerbosch(g)
    k = len(cliques)
    if k > max_cliques:
        raise CapExceededError(f"{k} maximal cliques exceeds the arrangement cap {max_cliques}")
    used = [False] * k
    arrangement: list[int] = []

    def extend(closed: frozenset[int], current: frozenset[int]) -> bool:
        if len(arrangement) == k:
            return True
        for i in range(k):
            if used[i] or cliques[i] & closed:
                continue
            used[i] = True
            arrangement.append(i)
            if extend(closed | (current - cliques[i]), cliques[i]):
                return True
            arrangement.pop()
            used[i] = False
        return False

    if extend(frozenset(), frozenset()):
        return [cliques[i] for i in arrangement]
    return None


def is_interval_graph(g: Graph, cross_check: bool = True) -> VerificationReport:
    """Chordal and AT-free.  The witness is ``("chordless-cycle", cycle)`` or
    ``("asteroidal-triple", triple)``.

    With ``cross_check`` the verdict is compared against the consecutive
    clique arrangement search whenever there are at most 8 maximal cliques;
    a disagreement raises ``AssertionError``.
    """
    chordal = is_chordal(g)
    if not chordal:
        report = VerificationReport(False, "interval-graph", ("chordless-cycle", chordal.witness))
    else:
        at = find_asteroidal_triple(g)
        report = VerificationReport(
            at is None, "interval-graph", None if at is None else ("asteroidal-triple", at)
        )
    if cross_check:
        try:
            arranged = consecutive_clique_arrangement(g) is not None
        except CapExceededError:
            return report
        if arranged != report.verdict:
            raise AssertionError("interval characterisations disagree")
    return report


# ---------------------------------------------------- chains and lattices


def verify_maximal_chain(p, chain) -> VerificationReport:
    """Maximal-chain test in MA(P): the first clique is the set of sources,
    the last is the set of sinks, and each clique covers its predecessor.

    Witnesses: ``("bottom", C1)``, ``("top", Ck)`` or ``("gap", i, i+1)``
    with 1-based clique indices.
    """
    from .poset import ma_covers

    cliques = _cliques_of(chain)
    for c in cliques:
        if not p.is_antichain(c):
            raise PreconditionError(f"{sorted(c)} is not an antichain", c)
    if p.n == 0:
        ok = not cliques
        return VerificationReport(ok, "maximal-chain", None if ok else ("top", cliques[0]))
    if not cliques:
        return VerificationReport(False, "maximal-chain", ("bottom", frozenset()))
    if cliques[0] != p.sources():
        return VerificationReport(False, "maximal-chain", ("bottom", cliques[0]))
    if cliques[-1] != p.sinks():
        return VerificationReport(False, "maximal-chain", ("top", cliques[-1]))
    for i in range(len(cliques) - 1):
        a, b = cliques[i], cliques[i + 1]
        if a == b or not ma_covers(p, a, b, check=False):
            return VerificationReport(False, "maximal-chain", ("gap", i + 1, i + 2))
    return VerificationReport(True, "maximal-chain")


def _bits_chordal(adj: list[int], alive: int) -> bool:
    # repeatedly strip simplicial vertices
    while alive:
        rest = alive
        found = False
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            nv = adj[v] & alive
            ok = True
            t = nv
            while t:
                lo = t & -t
                u = lo.bit_length() - 1
                t ^= lo
                if nv & ~adj[u] & ~lo:
                    ok = False
                    break
            if ok:
                alive ^= low
                found = True
                break
        if not found:
            return False
    return True


def _bits_at_free(adj: list[int], n: int) -> bool:
    full = (1 << n) - 1
    comp = []
    for v in range(n):
        alive = full & ~(adj[v] | (1 << v))
        lab = [-1] * n
        c = 0
        while alive:
            seed = alive & -alive
            reach = seed
            frontier = seed
            while frontier:
                nxt = 0
                t = frontier
                while t:
                    lo = t & -t
                    nxt |= adj[lo.bit_length() - 1]
                    t ^= lo
                frontier = nxt & alive & ~reach
                reach |= frontier
            alive &= ~reach
            t = reach
            while t:
                lo = t & -t
                lab[lo.bit_length() - 1] = c
                t ^= lo
            c += 1
        comp.append(lab)
    for a, b, c in combinations(range(n), 3):
        if (adj[a] >> b) & 1 or (adj[a] >> c) & 1 or (adj[b] >> c) & 1:
            continue
        if comp[a][b] == comp[a][c] and comp[b][a] == comp[b][c] and comp[c][a] == comp[c][b]:
            return False
    return True


def verify_maximal_subgraph_exhaustive(
    g: Graph, chain, kind: str = "interval", cap: int = 20
) -> VerificationReport:
    """Check that adding back any nonempty set of discarded edges breaks ``kind``.

    ``kind`` is ``"interval"`` or ``"chordal"``.  The discarded edges are
    ``E(g) - E(C)``; beyond ``cap`` of them the 2^k scan is refused.  The
    witness is the first restorable edge set found.  Subsets are walked in
    Gray-code order so each step toggles a single edge.
    """
    if kind not in ("interval", "chordal"):
        raise ValueError(f"unknown kind {kind!r}")
    kept = chain_edges(chain)
    missing = sorted(g.edge_set() - kept)
    k = len(missing)
    if k > cap:
        raise CapExceededError(f"{k} discarded edges exceeds the exhaustive cap {cap}")
    n = g.n
    adj = [0] * n
    for u, v in kept:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    full = (1 << n) - 1
    gray = 0
    for step in range(1, 1 << k):
        bit = (step & -step).bit_length() - 1
        gray ^= 1 << bit
        u, v = missing[bit]
        adj[u] ^= 1 << v
        adj[v] ^= 1 << u
        good = _bits_chordal(adj, full)
        if good and kind == "interval":
            good = _bits_at_free(adj, n)
        if good:
            witness = frozenset(missing[i] for i in range(k) if (gray >> i) & 1)
            return VerificationReport(False, f"maximal-{kind}-subgraph", witness)
    return VerificationReport(True, f"maximal-{kind}-subgraph")


def verify_sigma_maximal(g: Graph, chain, sigma: VertexOrdering) -> VerificationReport:
    """Single-edge form: restoring any one discarded edge breaks sigma as an interval ordering."""
    from .poset import is_interval_ordering

    kept = chain_edges(chain)
    base = Graph.from_edges(g.n, kept)
    if not is_interval_ordering(base, sigma):
        return VerificationReport(False, "sigma-maximal", ("not-interval", ()))
    for e in sorted(g.edge_set() - kept):
        if is_interval_ordering(base.with_edges([e]), sigma):
            return VerificationReport(False, "sigma-maximal", e)
    return VerificationReport(True, "sigma-maximal")


def verify_interval_extension(p, ext) -> VerificationReport:
    """``ext`` (an :class:`IntervalExtension`) contains P and is 2+2-free."""
    n = p.n
    for x in range(n):
        for y in range(n):
            if p.less(x, y) and not ext.less(x, y):
                return VerificationReport(False, "interval-extension", (x, y))
    rel = [(x, y) for x in range(n) for y in range(n) if ext.less(x, y)]
    for a, b in rel:
        for c, d in rel:
            if not ext.less(a, d) and not ext.less(c, b) and not ext.less(d, a) and not ext.less(b, c):
                if a != d and b != c:
                    return VerificationReport(False, "interval-extension", (a, b, c, d))
    return VerificationReport(True, "interval-extension")


# ---------------------------------------------------------- misc oracles


def brute_force_simplicial(g: Graph) -> frozenset[int]:
    return frozenset(v for v in range(g.n) if g.is_clique(g.adjacency[v]))


def is_cocomparability_bruteforce(g: Graph, limit: int = 10) -> VerificationReport:
    """Backtracking search for an umbrella-free ordering (n <= ``limit``).

    A found ordering is returned as the certificate; exhaustion yields the
    witness ``"no umbrella-free ordering"``.
    """
    n = g.n
    if n > limit:
        raise CapExceededError(f"brute-force cocomparability limited to n <= {limit}")
    nb = g.neighbor_sets
    prefix: list[int] = []
    placed = [False] * n

    def umbrella_free_with(z: int) -> bool:
        for i, x in enumerate(prefix):
            if z not in nb[x]:
                continue
            for y in prefix[i + 1 :]:
                if y not in nb[x] and y not in nb[z]:
                    return False
        return True

    def search() -> bool:
        if len(prefix) == n:
            return True
        for z in range(n):
            if not placed[z] and umbrella_free_with(z):
                placed[z] = True
                prefix.append(z)
                if search():
                    return True
                prefix.pop()
                placed[z] = False
        return False

    if search():
        return VerificationReport(True, "cocomparability", certificate=VertexOrdering(tuple(prefix), "cocomp"))
    return VerificationReport(False, "cocomparability", "no umbrella-free ordering")


def glb_lub_table_oracle(lattice) -> tuple[np.ndarray, np.ndarray]:
    """Meet and join tables read off the ``leq`` relation alone.

    Raises ``ValueError`` when some pair has no unique glb or lub.
    """
    leq = [[bool(x) for x in row] for row in np.asarray(lattice.leq)]
    k = len(leq)
    meet = np.zeros((k, k), dtype=np.int64)
    join = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            lower = [c for c in range(k) if leq[c][i] and leq[c][j]]
            glb = [c for c in lower if all(leq[d][c] for d in lower)]
            upper = [c for c in range(k) if leq[i][c] and leq[j][c]]
            lub = [c for c in upper if all(leq[c][d] for d in upper)]
            if len(glb) != 1 or len(lub) != 1:
                raise ValueError(f"pair ({i}, {j}) lacks a unique glb or lub")
            meet[i, j] = glb[0]
            join[i, j] = lub[0]
    return meet, join

