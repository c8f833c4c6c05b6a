"""Standard spaces with their symmetry actions.

The cross-polytope boundary on ``2k`` vertices carries the signed
permutations of coordinates: vertex ``2i`` is ``+e_(i+1)``, ``2i+1`` is
``-e_(i+1)``.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .simplicial import (
    ActionGroup,
    SimplicialComplex,
    SimplicialMap,
    cone,
    cross_polytope_boundary,
    full_simplex,
    simplex_boundary,
)


def signed_perm(K: SimplicialComplex, perm: Sequence[int], signs: Sequence[int], name: str = "") -> SimplicialMap:
    """Coordinate ``i`` goes to ``signs[i] * e_perm[i]`` (0-based)."""
    mapping = {}
    for i, (j, s) in enumerate(zip(perm, signs)):
        flip = 0 if s > 0 else 1
        mapping[2 * i] = 2 * j + flip
        mapping[2 * i + 1] = 2 * j + 1 - flip
    extra = set(K.vertices) - set(mapping)
    mapping.update((v, v) for v in extra)  # cone apex and the like
    return SimplicialMap.of(K, mapping, name)


def hyperoctahedral(K: SimplicialComplex, k: int) -> ActionGroup:
    maps = [
        signed_perm(K, perm, signs)
        for perm in itertools.permutations(range(k))
        for signs in itertools.product((1, -1), repeat=k)
    ]
    return ActionGroup(K, tuple(sorted(set(maps), key=lambda m: m.vmap)))


def octahedron_actions(K: SimplicialComplex | None = None) -> dict[str, SimplicialMap]:
    K = cross_polytope_boundary(3) if K is None else K
    return {
        "refl_x": signed_perm(K, (0, 1, 2), (-1, 1, 1), "refl_x"),
        "refl_y": signed_perm(K, (0, 1, 2), (1, -1, 1), "refl_y"),
        "refl_z": signed_perm(K, (0, 1, 2), (1, 1, -1), "refl_z"),
        "rot_pi_z": signed_perm(K, (0, 1, 2), (-1, -1, 1), "rot_pi_z"),
        "antipodal": signed_perm(K, (0, 1, 2), (-1, -1, -1), "antipodal"),
        "rot3": signed_perm(K, (1, 2, 0), (1, 1, 1), "rot3"),
    }


def vertex_perm(K: SimplicialComplex, cycles: Sequence[Sequence[int]], name: str = "") -> SimplicialMap:
    mapping = {v: v for v in K.vertices}
    for c in cycles:
        for k, v in enumerate(c):
            mapping[v] = c[(k + 1) % len(c)]
    return SimplicialMap.of(K, mapping, name)


def catalog_spaces() -> dict[str, SimplicialComplex]:
    oct_ = cross_polytope_boundary(3)
    return {
        "S0": cross_polytope_boundary(1),
        "S1_square": cross_polytope_boundary(2),
        "octahedron": oct_,
        "tetrahedron_boundary": simplex_boundary(3),
        "simplex4_boundary": simplex_boundary(4),
        "cone_octahedron": cone(oct_),
        "simplex3": full_simplex(3),
    }


def catalog_instances() -> list[tuple[str, SimplicialComplex, SimplicialMap, int]]:
    """``(label, K, g, p)`` with ``g`` of order ``p``, for the fixed-point check."""
    out = []
    oct_ = cross_polytope_boundary(3)
    for name, g in octahedron_actions(oct_).items():
        out.append((f"octahedron/{name}", oct_, g, 3 if name == "rot3" else 2))
    c = cone(oct_)
    for name, g in octahedron_actions(c).items():
        out.append((f"cone_octahedron/{name}", c, g, 3 if name == "rot3" else 2))
    sq = cross_polytope_boundary(2)
    out.append(("S1_square/refl", sq, signed_perm(sq, (0, 1), (-1, 1), "refl"), 2))
    out.append(("S1_square/rot_pi", sq, signed_perm(sq, (0, 1), (-1, -1), "rot_pi"), 2))
    out.append(("S1_square/swap", sq, signed_perm(sq, (1, 0), (1, 1), "swap"), 2))
    t3 = simplex_boundary(3)
    out.append(("tetrahedron_boundary/(01)", t3, vertex_perm(t3, [(0, 1)], "(01)"), 2))
    out.append(("tetrahedron_boundary/(01)(23)", t3, vertex_perm(t3, [(0, 1), (2, 3)], "(01)(23)"), 2))
    out.append(("tetrahedron_boundary/(012)", t3, vertex_perm(t3, [(0, 1, 2)], "(012)"), 3))
    t4 = simplex_boundary(4)
    out.append(("simplex4_boundary/(01)", t4, vertex_perm(t4, [(0, 1)], "(01)"), 2))
    out.append(("simplex4_boundary/(012)", t4, vertex_perm(t4, [(0, 1, 2)], "(012)"), 3))
    out.append(("simplex4_boundary/(01234)", t4, vertex_perm(t4, [(0, 1, 2, 3, 4)], "(01234)"), 5))
    s3 = full_simplex(3)
    out.append(("simplex3/(012)", s3, vertex_perm(s3, [(0, 1, 2)], "(012)"), 3))
    return out


def borel_instances() -> list[tuple[str, SimplicialComplex, SimplicialMap, SimplicialMap, int]]:
    """``(label, K, a, b, p)`` with ``<a, b>`` a faithful ``(Z_p)^2`` with a global fixed point."""
    o = cross_polytope_boundary(3)
    acts = octahedron_actions(o)
    out = [
        ("octahedron/<refl_x,refl_y>", o, acts["refl_x"], acts["refl_y"], 2),
        ("octahedron/<refl_x,rot_pi_z>", o, acts["refl_x"], acts["rot_pi_z"], 2),
    ]
    c = cone(o)
    cacts = octahedron_actions(c)
    out.append(("cone_octahedron/<refl_x,refl_y>", c, cacts["refl_x"], cacts["refl_y"], 2))
    t3 = simplex_boundary(3)
    out.append(("tetrahedron_boundary/<(01),(23)>", t3, vertex_perm(t3, [(0, 1)], "(01)"),
                vertex_perm(t3, [(2, 3)], "(23)"), 2))
    t5 = simplex_boundary(5)
    out.append(("simplex5_boundary/<(012),(345)>", t5, vertex_perm(t5, [(0, 1, 2)], "(012)"),
                vertex_perm(t5, [(3, 4, 5)], "(345)"), 3))
    return out
