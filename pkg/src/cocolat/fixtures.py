"""Small named instances taken from the literature, plus two searched ones.

Hand-transcribed graphs are built here; the two searched fixtures (``p1``
and ``at_example``) are frozen JSON files produced by
``tools/build_fixtures.py``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations

import numpy as np

from .graph import Graph, VertexOrdering
from .poset import MALattice

__all__ = [
    "Fixture",
    "fig4",
    "fig4_diamond",
    "fig5_h",
    "fig6",
    "fig6_full",
    "p1",
    "at_example",
    "p3",
    "two_chains",
    "FIXTURES",
    "get",
]


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: Graph
    order: VertexOrdering  # a cocomp ordering of ``graph`` (or the ordering the example uses)
    extra: dict

    def ordering(self, labels: str | list[str]) -> VertexOrdering:
        if isinstance(labels, str):
            labels = labels.split()
        return VertexOrdering.from_labels(self.graph, labels)


def _named(name, vertices, edges, order, **extra) -> Fixture:
    g = Graph.from_named_edges(vertices, edges)
    return Fixture(name, g, VertexOrdering.from_labels(g, order, "cocomp"), extra)


FIG6_EDGES = "12 13 23 14 24 15 45 46 56".split()


def fig6() -> Fixture:
    """Six vertices ``1..6`` whose MA lattice is a four-element chain for the
    LocalMNS+ run from ``5 6 4 2 3 1``."""
    return _named(
        "fig6",
        list("123456"),
        [tuple(e) for e in FIG6_EDGES],
        "5 6 4 2 3 1".split(),
    )


def fig6_full() -> Fixture:
    """``fig6`` plus the edge 3-6; on this graph the quoted LBFS/LDFS orderings are legal."""
    return _named(
        "fig6_full",
        list("123456"),
        [tuple(e) for e in FIG6_EDGES + ["36"]],
        "5 6 4 2 3 1".split(),
    )


def fig4() -> Fixture:
    return _named(
        "fig4",
        list("abcdef"),
        [tuple(e) for e in "ae de ad ab bf ac cf bd bc".split()],
        list("edabcf"),
    )


def fig4_diamond(fx: Fixture | None = None) -> MALattice:
    """A diamond ordering of the four maximal cliques of :func:`fig4` that is not MA(P)."""
    fx = fx or fig4()
    g = fx.graph
    els = [frozenset(g.vertices(s)) for s in ("ade", "abd", "abc", "bcf")]
    leq = np.eye(4, dtype=bool)
    leq[0, :] = True
    leq[:, 3] = True
    return MALattice.from_order(els, leq)


H_CLIQUES = [
    (1, 2, 3), (2, 3, 4), (3, 4, 5), (5, 6), (6, 7, 8),
    (7, 8, 9), (8, 9, 10), (11, 12, 13), (11, 13, 14), (13, 14, 15),
]
H_EXTRA = [(7, 11), (4, 12)]


def fig5_h() -> Fixture:
    names = [f"v{i}" for i in range(1, 16)]
    edges = {tuple(sorted(e)) for c in H_CLIQUES for e in combinations(c, 2)} | set(H_EXTRA)
    return _named(
        "fig5_h",
        names,
        [(f"v{u}", f"v{v}") for u, v in sorted(edges)],
        names,
        cliques=[[f"v{i}" for i in c] for c in H_CLIQUES],
        discarded=[[f"v{u}", f"v{v}"] for u, v in H_EXTRA],
    )


def p3() -> Fixture:
    return _named("p3", list("uvw"), [("u", "v"), ("v", "w")], list("uvw"))


def two_chains(k: int) -> Fixture:
    """``k`` disjoint 2-chains ``a_i < b_i``; the graph is the complement of a perfect matching."""
    names = [f"a{i}" for i in range(1, k + 1)] + [f"b{i}" for i in range(1, k + 1)]
    comparable = {(f"a{i}", f"b{i}") for i in range(1, k + 1)}
    edges = [(x, y) for x, y in combinations(names, 2) if (x, y) not in comparable]
    return _named("two_chains", names, edges, names, k=k)


@lru_cache(maxsize=None)
def _data(name: str) -> dict:
    return json.loads(resources.files("cocolat").joinpath("data", f"{name}.json").read_text())


def p1() -> Fixture:
    """A height-one poset on ``a..i`` whose MA lattice is N5 (searched, then frozen)."""
    d = _data("p1")
    less = {tuple(pair) for pair in d["less"]}
    vs = d["vertices"]
    edges = [(x, y) for x, y in combinations(vs, 2) if (x, y) not in less and (y, x) not in less]
    return _named("p1", vs, edges, d["order"], less=sorted(less), lattice=d["lattice"])


def at_example() -> Fixture:
    """A 7-vertex cocomparability graph with a maximal chordal subgraph holding the AT ``(a, f, g)``."""
    d = _data("at_example")
    fx = _named("at_example", d["vertices"], [tuple(e) for e in d["edges"]], d["order"])
    sub = Graph.from_named_edges(d["vertices"], [tuple(e) for e in d["chordal_subgraph_edges"]])
    return Fixture(fx.name, fx.graph, fx.order, {"chordal_subgraph": sub, "asteroidal_triple": d["asteroidal_triple"]})


FIXTURES = {
    "fig4": fig4,
    "fig5_h": fig5_h,
    "fig6": fig6,
    "fig6_full": fig6_full,
    "p1": p1,
    "at_example": at_example,
    "p3": p3,
}


def get(name: str) -> Fixture:
    if name == "two_chains":
        return two_chains(2)
    if name.startswith("two_chains_"):
        return two_chains(int(name.rpartition("_")[2]))
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)} or two_chains_<k>") from None
