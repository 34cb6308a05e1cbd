"""Regenerate the searched fixtures in src/cocolat/data (P1 and the AT example)."""
from __future__ import annotations

import itertools
import json
import random
import sys
from pathlib import Path

from cocolat.graph import Graph, VertexOrdering, random_cocomp_instance
from cocolat.oracles import (
    bron_kerbosch,
    find_asteroidal_triple,
    is_chordal,
    is_interval_graph,
    verify_maximal_subgraph_exhaustive,
)
from cocolat.poset import ImplicitPoset, build_lattice, ma_join, ma_meet, s_max, s_min

DATA = Path(__file__).resolve().parents[1] / "src" / "cocolat" / "data"
MINIMA = "abcd"
MAXIMA = "efghi"


def p1_candidates():
    names = list(MINIMA + MAXIMA)
    pairs = [(x, y) for x in MINIMA for y in MAXIMA]
    for mask in range(1 << len(pairs)):
        rel = [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1]
        # every element is comparable to something (no isolated points)
        touched = {v for pair in rel for v in pair}
        if len(touched) != 9:
            continue
        less = set(rel)
        edges = [(x, y) for x, y in itertools.combinations(names, 2) if (x, y) not in less and (y, x) not in less]
        g = Graph.from_named_edges(names, edges)
        order = VertexOrdering(tuple(range(9)), "cocomp")
        p = ImplicitPoset(g, order, trust=True)
        A = frozenset(g.vertices("aghi"))
        B = frozenset(g.vertices("cdef"))
        if not (p.is_maximal_antichain(A) and p.is_maximal_antichain(B)):
            continue
        want = lambda s: frozenset(g.vertices(s))
        if (s_min(p, A, B), s_max(p, A, B), s_min(p, B, A), s_max(p, B, A)) != (
            want("a"), want("ghi"), want("cd"), want("ef")
        ):
            continue
        if ma_meet(p, A, B) != want("abcd") or ma_join(p, A, B) != want("efghi"):
            continue
        lat = build_lattice(p)
        if len(lat) != 5 or lat.is_chain():
            continue
        # N5: exactly one incomparable chain pair structure (2-chain vs 1-element)
        incomparable = sum(1 for i in range(5) for j in range(i + 1, 5) if not lat.comparable(i, j))
        if incomparable != 2:
            continue
        yield sorted(rel), g, lat


def build_p1():
    found = list(p1_candidates())
    print(f"P1: {len(found)} candidate posets", file=sys.stderr)
    rel, g, lat = min(found, key=lambda t: (len(t[0]), t[0]))
    return {
        "name": "p1",
        "vertices": list(g.names),
        "less": [list(pair) for pair in rel],
        "order": list(g.names),
        "lattice": [sorted(g.labels(e)) for e in lat.elements],
        "candidates": len(found),
    }


def maximal_chordal_subgraphs(g: Graph):
    edges = sorted(g.edge_set())
    m = len(edges)
    chordal = []
    for mask in range(1 << m):
        sub = Graph.from_edges(g.n, [edges[i] for i in range(m) if (mask >> i) & 1], names=g.names)
        if is_chordal(sub):
            chordal.append(mask)
    sets = set(chordal)
    for mask in chordal:
        if all((mask | (1 << i)) not in sets for i in range(m) if not (mask >> i) & 1):
            yield Graph.from_edges(g.n, [edges[i] for i in range(m) if (mask >> i) & 1], names=g.names)


def build_at_example(seed: int = 0):
    rng = random.Random(seed)
    best = None
    for _ in range(4000):
        inst = random_cocomp_instance(7, rng.uniform(0.15, 0.5), rng.randrange(1 << 30))
        g = inst.graph
        if g.m > 14 or is_interval_graph(g, cross_check=False):
            continue
        for sub in maximal_chordal_subgraphs(g):
            at = find_asteroidal_triple(sub)
            if at is None:
                continue
            cand = (g.m, sub.m, g, sub, at, inst.witness)
            if best is None or cand[:2] < best[:2]:
                best = cand
            break
    assert best is not None, "no example found"
    _, _, g, sub, at, witness = best
    # relabel so the asteroidal triple reads (a, f, g)
    rest = [v for v in range(7) if v not in at]
    letters = {at[0]: "a", at[1]: "f", at[2]: "g"}
    for v, name in zip(rest, "bcde"):
        letters[v] = name
    lab = lambda v: letters[v]
    return {
        "name": "at_example",
        "vertices": sorted(letters.values()),
        "edges": sorted(sorted((lab(u), lab(v))) for u, v in g.edges()),
        "chordal_subgraph_edges": sorted(sorted((lab(u), lab(v))) for u, v in sub.edges()),
        "asteroidal_triple": ["a", "f", "g"],
        "order": [lab(v) for v in witness],
    }


def dump(d: dict) -> str:
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in d.items())
    return "{\n" + body + "\n}\n"


if __name__ == "__main__":
    DATA.mkdir(exist_ok=True)
    (DATA / "p1.json").write_text(dump(build_p1()))
    (DATA / "at_example.json").write_text(dump(build_at_example()))
