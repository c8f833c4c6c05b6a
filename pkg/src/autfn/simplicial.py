"""Finite simplicial complexes, subdivision and simplicial group actions."""

from __future__ import annotations

import itertools
import json
import warnings
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

Simplex = tuple  # sorted tuple of vertex labels


class NonRegularAction(ValueError):
    """Some element fixes a simplex setwise but not vertexwise."""


class NotSimplicial(ValueError):
    pass


def _faces(s: Simplex):
    for k in range(1, len(s) + 1):
        yield from itertools.combinations(s, k)


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple[int, ...]
    simplices: frozenset  # every nonempty face, as sorted tuples

    @property
    def dim(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    def by_dim(self, k: int) -> list[Simplex]:
        return sorted(s for s in self.simplices if len(s) == k + 1)

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.by_dim(k)) for k in range(self.dim + 1))

    def maximal(self) -> list[Simplex]:
        out = []
        for s in sorted(self.simplices, key=lambda s: (-len(s), s)):
            ss = set(s)
            if not any(ss < set(t) for t in out):
                out.append(s)
        return sorted(out)

    def __contains__(self, s) -> bool:
        return tuple(sorted(s)) in self.simplices

    def is_empty(self) -> bool:
        return not self.vertices

    def subcomplex(self, vertices: Iterable[int]) -> SimplicialComplex:
        """Full subcomplex on ``vertices``."""
        vs = set(vertices)
        simp = frozenset(s for s in self.simplices if vs.issuperset(s))
        return SimplicialComplex(tuple(sorted(vs)), simp)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "maximal_simplices": [list(s) for s in self.maximal()]}


def from_maximal(maximal: Iterable[Iterable[int]], vertices: Iterable[int] = ()) -> SimplicialComplex:
    tops = [tuple(sorted(set(s))) for s in maximal]
    tops = [s for s in tops if s]
    sets = [set(s) for s in tops]
    if any(a < b for a in sets for b in sets):
        warnings.warn("a listed simplex is a face of another", stacklevel=2)
    simp = set()
    for s in tops:
        simp.update(_faces(s))
    for v in vertices:
        simp.add((v,))
    verts = tuple(sorted({v for s in simp for v in s}))
    return SimplicialComplex(verts, frozenset(simp))


EMPTY = SimplicialComplex((), frozenset())


def complex_from_json(doc: dict) -> SimplicialComplex:
    return from_maximal(doc.get("maximal_simplices", []), doc.get("vertices", []))


def load_complex(path: str) -> SimplicialComplex:
    with open(path) as fh:
        return complex_from_json(json.load(fh))


# -- catalog spaces -------------------------------------------------------------------


def cross_polytope_boundary(k: int) -> SimplicialComplex:
    """Boundary of the k-dimensional cross-polytope, a triangulated ``S^(k-1)``.

    Vertex ``2i`` is ``+e_(i+1)`` and ``2i+1`` is ``-e_(i+1)``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    return from_maximal(tuple(2 * i + c for i, c in enumerate(choice)) for choice in itertools.product((0, 1), repeat=k))


def simplex_boundary(d: int) -> SimplicialComplex:
    """Boundary of the d-simplex on vertices 0..d, a triangulated ``S^(d-1)``."""
    return from_maximal(itertools.combinations(range(d + 1), d))


def full_simplex(d: int) -> SimplicialComplex:
    return from_maximal([tuple(range(d + 1))])


def cone(K: SimplicialComplex, apex: int | None = None) -> SimplicialComplex:
    apex = (max(K.vertices) + 1 if K.vertices else 0) if apex is None else apex
    if apex in K.vertices:
        raise ValueError("apex must be a new vertex")
    return from_maximal([s + (apex,) for s in K.maximal()] or [(apex,)])


def octahedron() -> SimplicialComplex:
    return cross_polytope_boundary(3)


# -- maps -----------------------------------------------------------------------------


@dataclass(frozen=True)
class SimplicialMap:
    """Vertex map ``vmap[v]`` on a complex, required to send simplices to simplices."""

    complex: SimplicialComplex
    vmap: tuple[tuple[int, int], ...]
    name: str = ""

    @classmethod
    def of(cls, K: SimplicialComplex, mapping, name: str = "", check: bool = True) -> SimplicialMap:
        d = dict(mapping)
        if set(d) != set(K.vertices):
            raise NotSimplicial("vertex map must be defined on exactly the vertices")
        g = cls(K, tuple(sorted(d.items())), name)
        if check:
            g.validate()
        return g

    @property
    def table(self) -> dict:
        return dict(self.vmap)

    def __call__(self, s):
        t = self.table
        if isinstance(s, int):
            return t[s]
        return tuple(sorted({t[v] for v in s}))

    def validate(self) -> None:
        t = self.table
        for s in self.complex.simplices:
            if tuple(sorted({t[v] for v in s})) not in self.complex.simplices:
                raise NotSimplicial(f"{self.name or 'map'} sends {s} to a non-simplex")

    def is_automorphism(self) -> bool:
        t = self.table
        if len(set(t.values())) != len(t):
            return False
        return all(tuple(sorted(t[v] for v in s)) in self.complex.simplices for s in self.complex.simplices)

    def is_identity(self) -> bool:
        return all(a == b for a, b in self.vmap)

    def fixed_vertices(self) -> list[int]:
        return [a for a, b in self.vmap if a == b]

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialMap) and self.vmap == other.vmap and self.complex == other.complex

    def __hash__(self) -> int:
        return hash(self.vmap)


def compose_maps(g: SimplicialMap, h: SimplicialMap) -> SimplicialMap:
    """``g o h``: apply ``h`` first."""
    tg, th = g.table, h.table
    return SimplicialMap(h.complex, tuple((v, tg[th[v]]) for v in h.complex.vertices))


def identity_map(K: SimplicialComplex) -> SimplicialMap:
    return SimplicialMap(K, tuple((v, v) for v in K.vertices), "id")


def map_order(g: SimplicialMap, cap: int = 10**4) -> int:
    x, k = g, 1
    while not x.is_identity():
        x = compose_maps(g, x)
        k += 1
        if k > cap:
            raise ValueError("order exceeds cap")
    return k


@dataclass(frozen=True)
class ActionGroup:
    complex: SimplicialComplex
    elements: tuple[SimplicialMap, ...]

    @classmethod
    def generate(cls, K: SimplicialComplex, gens: Sequence[SimplicialMap], cap: int = 10**5) -> ActionGroup:
        for g in gens:
            if g.complex != K or not g.is_automorphism():
                raise NotSimplicial("generators must be automorphisms of the complex")
        one = identity_map(K)
        seen = {one}
        queue = deque([one])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = compose_maps(g, x)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise ValueError("action group exceeds cap")
                    queue.append(y)
        return cls(K, tuple(sorted(seen, key=lambda m: m.vmap)))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


# -- barycentric subdivision -------------------------------------------------------------


class Subdivision(NamedTuple):
    complex: SimplicialComplex
    simplex_of: tuple[Simplex, ...]  # new vertex k is the barycenter of simplex_of[k]
    source: SimplicialComplex

    def vertex_of(self) -> dict:
        return {s: k for k, s in enumerate(self.simplex_of)}


def barycentric_subdivide(K: SimplicialComplex) -> Subdivision:
    order = sorted(K.simplices, key=lambda s: (len(s), s))
    index = {s: k for k, s in enumerate(order)}
    tops = []
    for top in K.maximal():
        for flag in itertools.permutations(top):
            tops.append(tuple(sorted(index[tuple(sorted(flag[: k + 1]))] for k in range(len(flag)))))
    return Subdivision(from_maximal(tops, range(len(order))), tuple(order), K)


def induced_on_subdivision(g: SimplicialMap, sub: Subdivision) -> SimplicialMap:
    where = sub.vertex_of()
    return SimplicialMap(
        sub.complex,
        tuple((k, where[g(s)]) for k, s in enumerate(sub.simplex_of)),
        g.name,
    )


# -- regularity and fixed sets -------------------------------------------------------------


def _maps(G) -> list[SimplicialMap]:
    if isinstance(G, SimplicialMap):
        return [G]
    return list(G)


def nonregular_witness(G) -> tuple[SimplicialMap, Simplex] | None:
    for g in _maps(G):
        t = g.table
        for s in g.complex.simplices:
            if len(s) > 1 and tuple(sorted(t[v] for v in s)) == s and any(t[v] != v for v in s):
                return g, s
    return None


def is_regular(G) -> bool:
    """Every setwise-fixed simplex is fixed vertexwise, for every element."""
    return nonregular_witness(G) is None


def fixed_subcomplex(G, K: SimplicialComplex | None = None) -> SimplicialComplex:
    """Subcomplex of simplices fixed vertexwise by ``G`` (a map or a collection of maps)."""
    maps = _maps(G)
    if K is None:
        if not maps:
            raise ValueError("need the complex when no maps are given")
        K = maps[0].complex
    bad = nonregular_witness(maps)
    if bad is not None:
        g, s = bad
        raise NonRegularAction(f"{g.name or 'map'} fixes {s} setwise only; subdivide first")
    fixed = set(K.vertices)
    for g in maps:
        fixed &= set(g.fixed_vertices())
    return K.subcomplex(fixed)


def regularize(K: SimplicialComplex, maps: Sequence[SimplicialMap], max_rounds: int = 2):
    """Subdivide until the maps act regularly; returns ``(K', maps', rounds)``."""
    maps = list(maps)
    rounds = 0
    while not is_regular(maps):
        if rounds == max_rounds:
            raise NonRegularAction(f"still not regular after {max_rounds} subdivisions")
        sub = barycentric_subdivide(K)
        K = sub.complex
        maps = [induced_on_subdivision(g, sub) for g in maps]
        rounds += 1
    return K, maps, rounds


# -- action files -------------------------------------------------------------------------


def actions_from_json(doc: dict, K: SimplicialComplex) -> list[SimplicialMap]:
    """``{"vertex_maps": [{"name": "g", "map": [...]}]}``; entry ``i`` of ``map``
    is the image of the i-th vertex of ``K`` in sorted order."""
    out = []
    for item in doc["vertex_maps"]:
        images = item["map"]
        if len(images) != len(K.vertices):
            raise NotSimplicial(f"{item.get('name', 'map')}: need {len(K.vertices)} images")
        out.append(SimplicialMap.of(K, zip(K.vertices, images), item.get("name", "")))
    return out


def load_actions(path: str, K: SimplicialComplex) -> list[SimplicialMap]:
    with open(path) as fh:
        return actions_from_json(json.load(fh), K)


def actions_to_json(maps: Sequence[SimplicialMap]) -> dict:
    return {"vertex_maps": [{"name": g.name, "map": [b for _, b in g.vmap]} for g in maps]}
