"""The poset induced by a cocomp ordering and its lattice of maximal antichains.

Given a graph ``G`` and an umbrella-free ordering ``sigma``, ``x < y`` in the
poset iff ``x`` precedes ``y`` in ``sigma`` and ``xy`` is not an edge.  This
is a transitive orientation of the complement of ``G``; its antichains are the
cliques of ``G``.  The relation is never materialised: comparisons go through
the position array and an edge query.

Antichains are plain ``frozenset[int]``.  Set algebra over them uses Python
integers as bitsets, so the lattice machinery is meant for small posets.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph, VertexOrdering, check_sizes
from .report import CapExceededError, NotMaximalError, PreconditionError, VerificationReport

Antichain = frozenset

__all__ = [
    "Antichain",
    "ImplicitPoset",
    "MALattice",
    "IntervalExtension",
    "LatticeConditions",
    "LatticeError",
    "is_cocomp_ordering",
    "is_interval_ordering",
    "poset_less",
    "max_of",
    "min_of",
    "inc_of",
    "s_min",
    "s_max",
    "ma_leq",
    "ma_meet",
    "ma_join",
    "ma_covers",
    "maximal_antichains",
    "build_lattice",
    "is_interval_order",
    "has_two_plus_two",
    "minimal_interval_extension",
    "check_lattice_conditions",
]

DEFAULT_ANTICHAIN_CAP = 10**6


class LatticeError(RuntimeError):
    """A relation expected to be a lattice violates a lattice axiom."""


# ------------------------------------------------------ ordering predicates


def is_cocomp_ordering(g: Graph, sigma: VertexOrdering) -> VerificationReport:
    """Umbrella scan: no ``x < y < z`` with ``xz`` an edge and ``xy, yz`` non-edges.

    On failure the witness is the umbrella ``(x, y, z)``.  Uses position-space
    bitsets when ``n <= 4096``; the fallback is a plain O(n*m) scan.
    """
    check_sizes(g, sigma)
    n = g.n
    order, pos = sigma.order, sigma.position
    if n <= 4096:
        adjpos = [0] * n
        for i, x in enumerate(order):
            bits = 0
            for u in g.adjacency[x]:
                bits |= 1 << pos[u]
            adjpos[i] = bits
        for i in range(n):
            later = (adjpos[i] >> (i + 1)) << (i + 1)
            if not later:
                continue
            zmax = later.bit_length() - 1
            row = adjpos[i]
            for p in range(i + 1, zmax):
                if (row >> p) & 1:
                    continue
                cand = (later >> (p + 1) << (p + 1)) & ~adjpos[p]
                if cand:
                    q = (cand & -cand).bit_length() - 1
                    return VerificationReport(False, "cocomp-ordering", (order[i], order[p], order[q]))
        return VerificationReport(True, "cocomp-ordering")
    nb = g.neighbor_sets
    for i, x in enumerate(order):
        later = [z for z in g.adjacency[x] if pos[z] > i]
        if not later:
            continue
        zmax = max(pos[z] for z in later)
        for p in range(i + 1, zmax):
            y = order[p]
            if y in nb[x]:
                continue
            for z in later:
                if pos[z] > p and z not in nb[y]:
                    return VerificationReport(False, "cocomp-ordering", (x, y, z))
    return VerificationReport(True, "cocomp-ordering")


def is_interval_ordering(g: Graph, sigma: VertexOrdering) -> VerificationReport:
    """No ``x < y < z`` with ``xz`` an edge and ``xy`` a non-edge; O(n + m)."""
    check_sizes(g, sigma)
    order, pos = sigma.order, sigma.position
    nb = g.neighbor_sets
    for i, x in enumerate(order):
        later = [pos[z] for z in g.adjacency[x] if pos[z] > i]
        if not later:
            continue
        r = max(later)
        if len(later) != r - i:
            for p in range(i + 1, r):
                if order[p] not in nb[x]:
                    return VerificationReport(False, "interval-ordering", (x, order[p], order[r]))
    return VerificationReport(True, "interval-ordering")


# ---------------------------------------------------------- implicit poset


def _bits(vs: Iterable[int]) -> int:
    b = 0
    for v in vs:
        b |= 1 << v
    return b


def _members(bits: int) -> frozenset[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return frozenset(out)


class ImplicitPoset:
    """``P_sigma``: the transitive orientation of the complement defined by ``sigma``.

    The constructor runs the umbrella scan unless ``trust`` is set; every
    lattice statement in this module silently relies on transitivity.
    """

    def __init__(self, graph: Graph, order: VertexOrdering, trust: bool = False):
        check_sizes(graph, order)
        if not trust:
            report = is_cocomp_ordering(graph, order)
            if not report:
                raise PreconditionError("ordering is not a cocomp ordering (umbrella found)", report.witness)
        self.graph = graph
        self.order = order
        self._pos = order.position
        self._nb = graph.neighbor_sets

    @property
    def n(self) -> int:
        return self.graph.n

    def less(self, x: int, y: int) -> bool:
        return x != y and self._pos[x] < self._pos[y] and y not in self._nb[x]

    def leq(self, x: int, y: int) -> bool:
        return x == y or self.less(x, y)

    def comparable(self, x: int, y: int) -> bool:
        return x != y and y not in self._nb[x]

    def reversed(self) -> "ImplicitPoset":
        """The dual poset, obtained by reversing the ordering."""
        return ImplicitPoset(self.graph, self.order.reversed(), trust=True)

    # bitset views, vertex-id indexed
    @property
    def up_bits(self) -> tuple[int, ...]:
        """Strict successors of each vertex."""
        if not hasattr(self, "_up"):
            self._build_bits()
        return self._up

    @property
    def down_bits(self) -> tuple[int, ...]:
        """Strict predecessors of each vertex."""
        if not hasattr(self, "_down"):
            self._build_bits()
        return self._down

    def _build_bits(self) -> None:
        adj = self.graph.adjacency_bits
        n = self.n
        up = [0] * n
        down = [0] * n
        seen = 0
        for x in self.order:
            down[x] = seen & ~adj[x]
            seen |= 1 << x
        seen = 0
        for x in reversed(self.order.order):
            up[x] = seen & ~adj[x]
            seen |= 1 << x
        self._up = tuple(up)
        self._down = tuple(down)

    def covers(self, x: int, y: int) -> bool:
        """``x`` is covered by ``y``: ``x < y`` with nothing strictly between."""
        if not self.less(x, y):
            return False
        return not (self.up_bits[x] & self.down_bits[y])

    def sources(self) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if not self.down_bits[v])

    def sinks(self) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if not self.up_bits[v])

    def is_antichain(self, s: Iterable[int]) -> bool:
        s = list(s)
        return all(not self.comparable(x, y) for x, y in combinations(s, 2))

    def is_maximal_antichain(self, s: Iterable[int]) -> bool:
        s = frozenset(s)
        if not self.is_antichain(s):
            return False
        sb = _bits(s)
        up, down = self.up_bits, self.down_bits
        return all((up[x] | down[x]) & sb for x in range(self.n) if x not in s)

    def require_maximal(self, *antichains: Iterable[int]) -> None:
        for a in antichains:
            if not self.is_maximal_antichain(a):
                raise NotMaximalError(f"{sorted(a)} is not a maximal antichain", frozenset(a))


def poset_less(p: ImplicitPoset, x: int, y: int) -> bool:
    return p.less(x, y)


def max_of(p: ImplicitPoset, s: Iterable[int]) -> frozenset[int]:
    """Maximal elements of the subposet induced by ``s``."""
    s = frozenset(s)
    sb = _bits(s)
    return frozenset(v for v in s if not p.up_bits[v] & sb)


def min_of(p: ImplicitPoset, s: Iterable[int]) -> frozenset[int]:
    s = frozenset(s)
    sb = _bits(s)
    return frozenset(v for v in s if not p.down_bits[v] & sb)


def inc_of(p: ImplicitPoset, s: Iterable[int]) -> frozenset[int]:
    """Elements outside ``s`` incomparable to every member of ``s``."""
    s = frozenset(s)
    sb = _bits(s)
    up, down = p.up_bits, p.down_bits
    return frozenset(x for x in range(p.n) if x not in s and not (up[x] | down[x]) & sb)


# ------------------------------------------------------ antichain algebra


def s_min(p: ImplicitPoset, a: Iterable[int], b: Iterable[int], check: bool = True) -> frozenset[int]:
    """Members of ``a - b`` lying below some member of ``b - a``."""
    a, b = frozenset(a), frozenset(b)
    if check:
        p.require_maximal(a, b)
    other = _bits(b - a)
    return frozenset(x for x in a - b if p.up_bits[x] & other)


def s_max(p: ImplicitPoset, a: Iterable[int], b: Iterable[int], check: bool = True) -> frozenset[int]:
    """Members of ``a - b`` lying above some member of ``b - a``."""
    a, b = frozenset(a), frozenset(b)
    if check:
        p.require_maximal(a, b)
    other = _bits(b - a)
    return frozenset(x for x in a - b if p.down_bits[x] & other)


def ma_leq(
    p: ImplicitPoset, a: Iterable[int], b: Iterable[int], form: str = "forward", check: bool = True
) -> bool:
    """``a <= b`` among maximal antichains.

    ``form="forward"``: every member of ``a`` is below-or-equal some member of
    ``b``.  ``form="reverse"``: every member of ``b`` is above-or-equal some
    member of ``a``.  The two agree on maximal antichains.
    """
    a, b = frozenset(a), frozenset(b)
    if check:
        p.require_maximal(a, b)
    if form == "forward":
        bb = _bits(b)
        return all(x in b or p.up_bits[x] & bb for x in a)
    if form == "reverse":
        ab = _bits(a)
        return all(y in a or p.down_bits[y] & ab for y in b)
    raise ValueError(f"unknown form {form!r}")


def ma_meet(p: ImplicitPoset, a: Iterable[int], b: Iterable[int], check: bool = True) -> frozenset[int]:
    """Greatest lower bound: the antichain meet completed by ``Max(Inc(.))``."""
    a, b = frozenset(a), frozenset(b)
    if check:
        p.require_maximal(a, b)
    core = (a & b) | s_min(p, a, b, check=False) | s_min(p, b, a, check=False)
    return core | max_of(p, inc_of(p, core))


def ma_join(p: ImplicitPoset, a: Iterable[int], b: Iterable[int], check: bool = True) -> frozenset[int]:
    """Least upper bound: the antichain join completed by ``Min(Inc(.))``."""
    a, b = frozenset(a), frozenset(b)
    if check:
        p.require_maximal(a, b)
    core = (a & b) | s_max(p, a, b, check=False) | s_max(p, b, a, check=False)
    return core | min_of(p, inc_of(p, core))


def ma_covers(p: ImplicitPoset, a: Iterable[int], b: Iterable[int], check: bool = True) -> bool:
    """``b`` covers ``a``: every element of ``a - b`` is covered by every element of ``b - a``."""
    a, b = frozenset(a), frozenset(b)
    if a == b:
        raise ValueError("covering is irreflexive; got equal antichains")
    if check:
        p.require_maximal(a, b)
    return all(p.covers(x, y) for x in a - b for y in b - a)


def maximal_antichains(p: ImplicitPoset, cap: int = DEFAULT_ANTICHAIN_CAP) -> list[frozenset[int]]:
    """All maximal antichains, i.e. the maximal cliques of the graph, sorted lexicographically."""
    from .oracles import bron_kerbosch

    return bron_kerbosch(p.graph, cap=cap)


# ---------------------------------------------------------------- lattice


@dataclass(frozen=True, eq=False)
class MALattice:
    """An explicit finite lattice on antichains.

    ``leq[i, j]`` is the order, ``meet``/``join`` are index tables and
    ``covers`` lists Hasse arcs ``(i, j)`` with ``j`` covering ``i``.
    """

    elements: tuple[frozenset[int], ...]
    leq: np.ndarray
    covers: tuple[tuple[int, int], ...]
    meet: np.ndarray
    join: np.ndarray
    bottom: int
    top: int

    @classmethod
    def from_order(cls, elements: Sequence[Iterable[int]], leq) -> "MALattice":
        """Build from an explicit order, deriving meets and joins from it.

        Raises :class:`LatticeError` when some pair lacks a unique glb or lub.
        """
        elements = tuple(frozenset(e) for e in elements)
        leq = np.asarray(leq, dtype=bool)
        _check_partial_order(leq)
        meet, join = _bounds_from_leq(leq)
        return cls._assemble(elements, leq, meet, join)

    @classmethod
    def _assemble(cls, elements, leq, meet, join) -> "MALattice":
        k = len(elements)
        covers = _transitive_reduction(leq)
        bottoms = [i for i in range(k) if leq[i].all()]
        tops = [i for i in range(k) if leq[:, i].all()]
        if k and (len(bottoms) != 1 or len(tops) != 1):
            raise LatticeError("lattice needs a unique bottom and top")
        return cls(
            elements,
            leq,
            covers,
            meet,
            join,
            bottoms[0] if k else -1,
            tops[0] if k else -1,
        )

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, antichain: Iterable[int]) -> int:
        return self.elements.index(frozenset(antichain))

    def less_equal(self, i: int, j: int) -> bool:
        return bool(self.leq[i, j])

    def comparable(self, i: int, j: int) -> bool:
        return bool(self.leq[i, j] or self.leq[j, i])

    def is_chain(self) -> bool:
        return bool((self.leq | self.leq.T).all())

    def to_text(self, graph: Graph | None = None) -> str:
        lines = [f"{i}: {_fmt_set(e, graph)}" for i, e in enumerate(self.elements)]
        lines += [f"{i} < {j}" for i, j in self.covers]
        return "\n".join(lines) + "\n"

    def to_dot(self, graph: Graph | None = None, name: str = "MA") -> str:
        out = [f"digraph {name} {{", "  rankdir=BT;"]
        for i, e in enumerate(self.elements):
            out.append(f'  {i} [label="{_fmt_set(e, graph)}"];')
        if len(self):
            out.append(f"  {{rank=min; {self.bottom};}}")
        for i, j in self.covers:
            out.append(f"  {i} -> {j};")
        out.append("}")
        return "\n".join(out) + "\n"


def _fmt_set(e: Iterable[int], graph: Graph | None) -> str:
    members = sorted(e)
    labels = graph.labels(members) if graph is not None else [str(v) for v in members]
    return "{" + ",".join(labels) + "}"


def _check_partial_order(leq: np.ndarray) -> None:
    if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
        raise LatticeError("order relation must be a square matrix")
    if not leq.diagonal().all():
        raise LatticeError("order relation is not reflexive")
    if (leq & leq.T & ~np.eye(len(leq), dtype=bool)).any():
        raise LatticeError("order relation is not antisymmetric")
    li = leq.astype(np.int64)
    if ((li @ li > 0) & ~leq).any():
        raise LatticeError("order relation is not transitive")


def _transitive_reduction(leq: np.ndarray) -> tuple[tuple[int, int], ...]:
    strict = leq & ~np.eye(len(leq), dtype=bool)
    si = strict.astype(np.int64)
    through = (si @ si) > 0
    red = strict & ~through
    return tuple((int(i), int(j)) for i, j in zip(*np.nonzero(red)))


def _bounds_from_leq(leq: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised glb/lub tables; each common lower bound must sit below the candidate."""
    k = len(leq)
    meet = np.full((k, k), -1, dtype=np.int64)
    join = np.full((k, k), -1, dtype=np.int64)
    for i in range(k):
        lower = leq[:, i][:, None] & leq  # lower[c, j]: c <= i and c <= j
        # the glb of (i, j) is the common lower bound lying above all others
        count = lower.sum(axis=0)
        score = (lower.astype(np.int64).T @ leq.astype(np.int64))  # [j, m]: #lower bounds c <= m
        ok = (score == count[:, None]) & lower.T
        if not (ok.sum(axis=1) == 1).all():
            raise LatticeError(f"element {i} lacks a unique meet with some element")
        meet[i] = ok.argmax(axis=1)
        upper = leq[i, :][:, None] & leq.T  # upper[c, j]: i <= c and j <= c
        count = upper.sum(axis=0)
        score = upper.astype(np.int64).T @ leq.T.astype(np.int64)  # [j, m]: #upper bounds c >= m
        ok = (score == count[:, None]) & upper.T
        if not (ok.sum(axis=1) == 1).all():
            raise LatticeError(f"element {i} lacks a unique join with some element")
        join[i] = ok.argmax(axis=1)
    return meet, join


def build_lattice(
    p: ImplicitPoset,
    cap: int = DEFAULT_ANTICHAIN_CAP,
    validate: bool | None = None,
    validate_limit: int = 512,
) -> MALattice:
    """Enumerate MA(P) and compute its order, covers, meets and joins.

    Meets and joins come from :func:`ma_meet`/:func:`ma_join`.  When
    ``validate`` (default: ``len <= validate_limit``) the result is checked
    against the order-derived glb/lub tables and for the consecutiveness
    property; a failure raises :class:`LatticeError`.
    """
    elements = tuple(maximal_antichains(p, cap=cap))
    k = len(elements)
    bits = [_bits(e) for e in elements]
    up = p.up_bits
    leq = np.zeros((k, k), dtype=bool)
    for i, a in enumerate(elements):
        for j in range(k):
            bb = bits[j]
            leq[i, j] = all((1 << x) & bb or up[x] & bb for x in a)
    index = {e: i for i, e in enumerate(elements)}
    meet = np.empty((k, k), dtype=np.int64)
    join = np.empty((k, k), dtype=np.int64)
    for i in range(k):
        meet[i, i] = join[i, i] = i
        for j in range(i + 1, k):
            if leq[i, j]:
                meet[i, j], join[i, j] = i, j
            elif leq[j, i]:
                meet[i, j], join[i, j] = j, i
            else:
                try:
                    meet[i, j] = index[ma_meet(p, elements[i], elements[j], check=False)]
                    join[i, j] = index[ma_join(p, elements[i], elements[j], check=False)]
                except KeyError:
                    raise LatticeError(f"meet/join of {i},{j} is not a maximal antichain") from None
            meet[j, i], join[j, i] = meet[i, j], join[i, j]
    if validate is None:
        validate = k <= validate_limit
    if validate:
        _check_partial_order(leq)
        m2, j2 = _bounds_from_leq(leq)
        if not (np.array_equal(m2, meet) and np.array_equal(j2, join)):
            raise LatticeError("antichain meet/join disagree with the order")
        bad = _consecutiveness_violation(elements, leq, p.n)
        if bad is not None:
            raise LatticeError(f"consecutiveness fails for vertex {bad}")
    return MALattice._assemble(elements, leq, meet, join)


def _membership(elements: Sequence[frozenset[int]], n: int) -> np.ndarray:
    mem = np.zeros((len(elements), n), dtype=bool)
    for i, e in enumerate(elements):
        mem[i, list(e)] = True
    return mem


def _consecutiveness_violation(elements, leq, n):
    # for each vertex, the elements containing it must form a convex set
    mem = _membership(elements, n)
    for x in range(n):
        has = mem[:, x]
        if not has.any():
            continue
        hull = leq[has].any(axis=0) & leq[:, has].any(axis=1)
        if (hull & ~has).any():
            return x
    return None


# ------------------------------------------------------ interval orders


def has_two_plus_two(p: ImplicitPoset) -> tuple[int, int, int, int] | None:
    """Brute-force search for ``a<b``, ``c<d`` with ``a, d`` and ``c, b`` incomparable.

    Returns ``(a, b, c, d)`` or ``None``.  O(n^4) in the worst case.
    """
    rel = [(x, y) for x in range(p.n) for y in range(p.n) if p.less(x, y)]
    for a, b in rel:
        for c, d in rel:
            if not p.comparable(a, d) and not p.comparable(c, b) and a != d and c != b:
                return (a, b, c, d)
    return None


def is_interval_order(p: ImplicitPoset, lattice_cap: int = 4096) -> bool:
    """Interval-order test by 2+2-freeness, cross-checked against MA(P) being a chain.

    The lattice side is skipped when MA(P) has more than ``lattice_cap``
    elements.  Disagreement between the two criteria raises ``AssertionError``.
    """
    two_plus_two = has_two_plus_two(p) is None
    try:
        elements = maximal_antichains(p, cap=lattice_cap)
    except CapExceededError:
        return two_plus_two
    up = p.up_bits
    bits = [_bits(e) for e in elements]

    def below(a, bb):
        return all((1 << x) & bb or up[x] & bb for x in a)

    chain = all(
        below(elements[i], bits[j]) or below(elements[j], bits[i])
        for i in range(len(elements))
        for j in range(i + 1, len(elements))
    )
    if chain != two_plus_two:
        raise AssertionError("2+2-freeness and chain-ness of MA(P) disagree")
    return chain


@dataclass(frozen=True)
class IntervalExtension:
    """Interval representation ``[first, last]`` (1-based clique indices) per vertex."""

    first: tuple[int, ...]
    last: tuple[int, ...]

    def less(self, x: int, y: int) -> bool:
        return self.last[x] < self.first[y]

    def interval(self, v: int) -> tuple[int, int]:
        return (self.first[v], self.last[v])

    def extends(self, p: ImplicitPoset) -> bool:
        n = len(self.first)
        return all(self.less(x, y) for x in range(n) for y in range(n) if p.less(x, y))


def minimal_interval_extension(p: ImplicitPoset, chain: Sequence[Iterable[int]]) -> IntervalExtension:
    """Interval extension of ``p`` attached to a maximal chain of MA(P).

    Vertex ``v`` gets the interval of clique indices containing it; ``x``
    precedes ``y`` in the extension iff ``x``'s interval ends before ``y``'s
    starts.  The chain is verified to be maximal first.
    """
    from .oracles import verify_maximal_chain

    cliques = [frozenset(c) for c in chain]
    report = verify_maximal_chain(p, cliques)
    if not report:
        raise PreconditionError("chain is not a maximal chain of MA(P)", report.witness)
    n = p.n
    first = [0] * n
    last = [0] * n
    for i, c in enumerate(cliques, 1):
        for v in c:
            if not first[v]:
                first[v] = i
            last[v] = i
    return IntervalExtension(tuple(first), tuple(last))


# ------------------------------------------------------ lattice conditions


@dataclass(frozen=True)
class LatticeConditions:
    """Per-condition verdicts, each with the first violating pair or triple."""

    cond_i: VerificationReport
    cond_ii: VerificationReport
    cond_iii: VerificationReport

    def __iter__(self):
        return iter((self.cond_i, self.cond_ii, self.cond_iii))

    @property
    def all(self) -> bool:
        return bool(self.cond_i and self.cond_ii and self.cond_iii)


def check_lattice_conditions(g: Graph, lattice: MALattice) -> LatticeConditions:
    """Check the three clique-lattice conditions on a lattice of maximal cliques of ``g``.

    (i) ``A <= B <= C`` implies ``A & C <= B``; (ii) ``A | B`` is covered by
    ``join | meet``; (iii) ``A & B`` lies in both ``join`` and ``meet``.
    Witnesses are element-index triples/pairs.
    """
    els = lattice.elements
    k = len(els)
    leq = lattice.leq
    w1 = None
    for a in range(k):
        for b in range(k):
            if not leq[a, b]:
                continue
            for c in range(k):
                if leq[b, c] and not (els[a] & els[c]) <= els[b]:
                    w1 = (a, b, c)
                    break
            if w1:
                break
        if w1:
            break
    w2 = w3 = None
    for a in range(k):
        for b in range(k):
            mt, jn = els[lattice.meet[a, b]], els[lattice.join[a, b]]
            if w2 is None and not (els[a] | els[b]) <= (mt | jn):
                w2 = (a, b)
            common = els[a] & els[b]
            if w3 is None and not (common <= mt and common <= jn):
                w3 = (a, b)
    return LatticeConditions(
        VerificationReport(w1 is None, "lattice-consecutiveness", w1),
        VerificationReport(w2 is None, "lattice-union-cover", w2),
        VerificationReport(w3 is None, "lattice-intersection", w3),
    )
