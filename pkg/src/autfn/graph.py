"""Labelled graphs, their symmetries, and the induced automorphisms of pi_1.

A generator edge ``e`` from ``u`` to ``w`` gives the loop
``tree(v0 -> u) . e . tree(w -> v0)``; tree edges contribute no letters.
Pushing that loop through a symmetry and reading off the labels gives the
image of the generator.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Mapping

from .aut import Endo
from .freegroup import Word


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    tail: Hashable
    head: Hashable
    label: int | None = None  # generator index; None for tree edges


@dataclass(frozen=True)
class LabelledGraph:
    vertices: tuple
    edges: Mapping[Hashable, Edge]
    basepoint: Hashable

    def __post_init__(self):
        vs = set(self.vertices)
        if self.basepoint not in vs:
            raise GraphError("basepoint is not a vertex")
        for name, e in self.edges.items():
            if e.tail not in vs or e.head not in vs:
                raise GraphError(f"edge {name!r} has an endpoint outside the vertex set")
        labels = sorted(e.label for e in self.edges.values() if e.label is not None)
        if labels != list(range(1, len(labels) + 1)):
            raise GraphError("non-tree edge labels must be exactly 1..k")
        tree = [e for e in self.edges.values() if e.label is None]
        if len(tree) != len(vs) - 1:
            raise GraphError("unlabelled edges must form a maximal tree")
        if len(self._tree_paths()) != len(vs):
            raise GraphError("unlabelled edges do not span the graph")

    @property
    def rank(self) -> int:
        return sum(1 for e in self.edges.values() if e.label is not None)

    def _tree_paths(self) -> dict:
        """Path from the basepoint to each vertex as ``[(edge, +-1), ...]``."""
        paths = {self.basepoint: []}
        queue = deque([self.basepoint])
        while queue:
            v = queue.popleft()
            for name, e in self.edges.items():
                if e.label is not None:
                    continue
                for a, b, d in ((e.tail, e.head, 1), (e.head, e.tail, -1)):
                    if a == v and b not in paths:
                        paths[b] = paths[v] + [(name, d)]
                        queue.append(b)
        return paths

    def loop(self, edge) -> list[tuple[Hashable, int]]:
        e = self.edges[edge]
        paths = self._tree_paths()
        back = [(x, -d) for x, d in reversed(paths[e.head])]
        return paths[e.tail] + [(edge, 1)] + back

    def read(self, path) -> Word:
        return Word(self.rank, tuple(self.edges[x].label * d for x, d in path if self.edges[x].label is not None))


@dataclass(frozen=True)
class Symmetry:
    """Vertex map plus edge map ``edge -> (edge', flipped)``."""

    vertex_map: Mapping
    edge_map: Mapping

    def inverse(self) -> Symmetry:
        vm = {w: v for v, w in self.vertex_map.items()}
        em = {e2: (e, f) for e, (e2, f) in self.edge_map.items()}
        return Symmetry(vm, em)


def check_symmetry(g: LabelledGraph, s: Symmetry) -> None:
    vs = set(g.vertices)
    if set(s.vertex_map) != vs or set(s.vertex_map.values()) != vs:
        raise GraphError("vertex map is not a bijection")
    if set(s.edge_map) != set(g.edges) or {e for e, _ in s.edge_map.values()} != set(g.edges):
        raise GraphError("edge map is not a bijection")
    for name, e in g.edges.items():
        e2, flip = s.edge_map[name]
        t, h = s.vertex_map[e.tail], s.vertex_map[e.head]
        target = g.edges[e2]
        ends = (target.head, target.tail) if flip else (target.tail, target.head)
        if ends != (t, h):
            raise GraphError(f"edge {name!r} is not mapped compatibly with the vertex map")
    if s.vertex_map[g.basepoint] != g.basepoint:
        raise GraphError("symmetry moves the basepoint")


def _push(g: LabelledGraph, s: Symmetry) -> tuple[Word, ...]:
    images = {}
    for name, e in g.edges.items():
        if e.label is None:
            continue
        path = [(s.edge_map[x][0], -d if s.edge_map[x][1] else d) for x, d in g.loop(name)]
        images[e.label] = g.read(path)
    return tuple(images[k] for k in range(1, g.rank + 1))


def graph_induced(g: LabelledGraph, s: Symmetry, paired: bool = True) -> Endo:
    check_symmetry(g, s)
    images = _push(g, s)
    inv_images = _push(g, s.inverse())
    return Endo(g.rank, images, None, inv_images, paired)


# -- the graph realizing T -------------------------------------------------------------


def t_graph(m: int) -> LabelledGraph:
    """``m + 1`` vertices; three edges from each ``v_i`` to ``v_0``: one tree
    edge ``t_i`` and the generator edges ``a_i``, ``b_i``."""
    if m < 1:
        raise ValueError("m must be positive")
    edges = {}
    for i in range(1, m + 1):
        edges[f"t{i}"] = Edge(i, 0, None)
        edges[f"a{i}"] = Edge(i, 0, 2 * i - 1)
        edges[f"b{i}"] = Edge(i, 0, 2 * i)
    return LabelledGraph(tuple(range(m + 1)), edges, 0)


def t_rotation(m: int, i: int) -> Symmetry:
    """Order-3 symmetry at ``v_i``: ``a_i -> b_i -> t_i -> a_i``."""
    if not 1 <= i <= m:
        raise ValueError("rotation index out of range")
    em = {name: (name, False) for name in t_graph(m).edges}
    em[f"a{i}"] = (f"b{i}", False)
    em[f"b{i}"] = (f"t{i}", False)
    em[f"t{i}"] = (f"a{i}", False)
    return Symmetry({v: v for v in range(m + 1)}, em)


def identity_symmetry(g: LabelledGraph) -> Symmetry:
    return Symmetry({v: v for v in g.vertices}, {e: (e, False) for e in g.edges})


# -- JSON -------------------------------------------------------------------------------


def graph_from_json(doc: dict) -> tuple[LabelledGraph, dict[str, Symmetry]]:
    """``{"vertices", "basepoint", "edges": [{"id","tail","head","label"}],
    "symmetries": {name: {"vertices": {v: v'}, "edges": {id: [id', flipped]}}}}``."""
    edges = {e["id"]: Edge(e["tail"], e["head"], e.get("label")) for e in doc["edges"]}
    g = LabelledGraph(tuple(doc["vertices"]), edges, doc["basepoint"])
    vkey = {str(v): v for v in g.vertices}
    syms = {}
    for name, s in doc.get("symmetries", {}).items():
        vm = {vkey[str(k)]: vkey[str(v)] for k, v in s["vertices"].items()}
        em = {k: (v[0], bool(v[1])) for k, v in s["edges"].items()}
        syms[name] = Symmetry(vm, em)
    return g, syms


def graph_to_json(g: LabelledGraph, syms: Mapping[str, Symmetry] = ()) -> dict:
    return {
        "vertices": list(g.vertices),
        "basepoint": g.basepoint,
        "edges": [{"id": k, "tail": e.tail, "head": e.head, "label": e.label} for k, e in g.edges.items()],
        "symmetries": {
            name: {
                "vertices": {str(k): v for k, v in s.vertex_map.items()},
                "edges": {k: [v[0], v[1]] for k, v in s.edge_map.items()},
            }
            for name, s in dict(syms).items()
        },
    }


def load_graph(path: str) -> tuple[LabelledGraph, dict[str, Symmetry]]:
    with open(path) as fh:
        return graph_from_json(json.load(fh))
