"""Fixed-point checks on simplicial actions and the rigidity verdicts.

Dimensions of fixed sets are simplicial dimensions of fixed subcomplexes of
regular actions; the actions are regularized by barycentric subdivision
(at most twice) before anything is measured.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field

from .homology import betti, is_acyclic_mod_p, sphere_dim
from .linear import is_prime
from .simplicial import (
    ActionGroup,
    SimplicialComplex,
    SimplicialMap,
    compose_maps,
    fixed_subcomplex,
    identity_map,
    map_order,
    regularize,
)


class PreconditionError(ValueError):
    """Inputs outside the hypotheses of a check (reported, never scored as a failure)."""


class EmptyFixedSet(PreconditionError):
    pass


@dataclass(frozen=True)
class SpaceKind:
    kind: str  # "sphere" or "acyclic"
    dim: int
    p: int = 2

    def __post_init__(self):
        if self.kind not in ("sphere", "acyclic"):
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.kind == "sphere" and self.dim < -1:
            raise ValueError("sphere dimension must be >= -1")
        if self.kind == "acyclic" and self.dim < 0:
            raise ValueError("acyclic dimension must be >= 0")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def m(self) -> int:
        """Sphere dimension, or one less than the dimension of an acyclic manifold."""
        return self.dim if self.kind == "sphere" else self.dim - 1


@dataclass
class SmithVerdict:
    claim: str
    inputs: dict
    expected: str
    observed: dict = field(default_factory=dict)
    passed: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def _classify(K: SimplicialComplex, p: int) -> tuple[str, int]:
    r = sphere_dim(betti(K, p))
    if r is not None:
        return "sphere", r
    if is_acyclic_mod_p(K, p):
        return "acyclic", K.dim
    raise PreconditionError(f"complex is neither a sphere nor acyclic mod {p}")


def _name(g: SimplicialMap) -> str:
    return g.name or "g"


def smith_fixed_check(K: SimplicialComplex, g: SimplicialMap, p: int, max_subdivisions: int = 2) -> SmithVerdict:
    """Fixed set of an order-``p`` automorphism of a mod-``p`` sphere or acyclic complex.

    Sphere ``S^m``: the fixed set is a mod-``p`` ``r``-sphere with ``-1 <= r <= m-1``,
    and for odd ``p`` also ``m - r`` even.  Acyclic: the fixed set is nonempty,
    acyclic, of dimension at most ``m - 1`` (``m - 2`` for odd ``p``).
    """
    if not g.is_automorphism():
        raise PreconditionError("map is not a simplicial automorphism")
    k = map_order(g)
    if k != p:
        raise PreconditionError(f"map has order {k}, not {p}")
    kind, _ = _classify(K, p)
    m = K.dim
    K2, (g2,), rounds = regularize(K, [g], max_subdivisions)
    F = fixed_subcomplex(g2, K2)
    bF = betti(F, p)
    obs = {"betti": list(bF.betti), "fixed_dim": F.dim, "subdivisions": rounds, "m": m}
    if kind == "sphere":
        r = sphere_dim(bF)
        obs["r"] = r
        expected = f"fixed set is an r-sphere mod {p} with -1 <= r <= {m - 1}"
        ok = r is not None and r == F.dim and -1 <= r <= m - 1
        if p != 2:
            expected += f", r <= {m - 2} and {m} - r even"
            ok = ok and r <= m - 2 and (m - r) % 2 == 0
    else:
        bound = m - 1 if p == 2 else m - 2
        expected = f"fixed set nonempty, acyclic mod {p}, dimension <= {bound}"
        ok = not F.is_empty() and is_acyclic_mod_p(F, p) and F.dim <= bound
    return SmithVerdict(
        "smith_fixed",
        {"space": kind, "dim": m, "map": _name(g), "p": p},
        expected,
        obs,
        ok,
    )


def _check_pair_group(a: SimplicialMap, b: SimplicialMap, p: int, faithful: bool = True) -> list[SimplicialMap]:
    """Images of ``(i, j) -> a^i b^j`` for ``(Z_p)^2``, in lexicographic order of ``(i, j)``.

    With ``faithful`` the map must be injective; otherwise ``a`` and ``b`` only
    need orders dividing ``p`` (a trivial action is allowed).
    """
    if p % map_order(a) or p % map_order(b):
        raise PreconditionError("generators must have order dividing p")
    if compose_maps(a, b) != compose_maps(b, a):
        raise PreconditionError("generators do not commute")
    els = []
    for i in range(p):
        for j in range(p):
            x = identity_map(a.complex)
            for _ in range(i):
                x = compose_maps(a, x)
            for _ in range(j):
                x = compose_maps(b, x)
            els.append(x)
    if faithful and len(set(els)) != p * p:
        raise PreconditionError("<a, b> is not (Z_p)^2")
    return els


def borel_check(K: SimplicialComplex, a: SimplicialMap, b: SimplicialMap, p: int,
                max_subdivisions: int = 2) -> SmithVerdict:
    """``n - r == sum over nontrivial cyclic C < A of (r_C - r)`` for ``A = <a, b>``."""
    els = _check_pair_group(a, b, p, faithful=False)
    K2, els2, rounds = regularize(K, els, max_subdivisions)
    F = fixed_subcomplex(els2, K2)
    if F.is_empty():
        raise EmptyFixedSet("Fix(A) is empty; the dimension formula needs a global fixed point")
    # the p + 1 nontrivial cyclic subgroups are generated by b and by a b^j
    n, r = K2.dim, F.dim
    terms = {}
    for i, j in [(0, 1)] + [(1, j) for j in range(p)]:
        terms[f"<a^{i} b^{j}>"] = fixed_subcomplex(els2[i * p + j], K2).dim
    rhs = sum(rc - r for rc in terms.values())
    return SmithVerdict(
        "borel_formula",
        {"dim": K.dim, "a": _name(a), "b": _name(b), "p": p},
        "n - r == sum(r_C - r)",
        {"n": n, "r": r, "r_C": terms, "lhs": n - r, "rhs": rhs, "subdivisions": rounds},
        n - r == rhs,
    )


def _is_involution(g: SimplicialMap) -> bool:
    return not g.is_identity() and compose_maps(g, g).is_identity()


def involution_pair_check(K: SimplicialComplex, a: SimplicialMap, b: SimplicialMap,
                          max_subdivisions: int = 2) -> SmithVerdict:
    """Commuting involutions with the same fixed set coincide."""
    if not (_is_involution(a) and _is_involution(b)):
        raise PreconditionError("both maps must have order 2")
    if compose_maps(a, b) != compose_maps(b, a):
        raise PreconditionError("maps do not commute")
    _classify(K, 2)
    K2, (a2, b2), rounds = _reg2(K, a, b, max_subdivisions)
    Fa, Fb = fixed_subcomplex(a2, K2), fixed_subcomplex(b2, K2)
    same = Fa == Fb
    return SmithVerdict(
        "involution_pair",
        {"a": _name(a), "b": _name(b)},
        "F_a == F_b implies a == b",
        {"same_fixed_set": same, "equal_maps": a == b, "subdivisions": rounds},
        (not same) or a == b,
    )


def _reg2(K, a, b, max_subdivisions):
    K2, maps, rounds = regularize(K, [a, b, compose_maps(a, b)], max_subdivisions)
    return K2, maps[:2], rounds


def _regularized_group(K: SimplicialComplex, G: ActionGroup, max_subdivisions: int):
    K2, maps, rounds = regularize(K, list(G.elements), max_subdivisions)
    return K2, dict(zip(G.elements, maps)), rounds


def involution_pair_scan(K: SimplicialComplex, G: ActionGroup, max_subdivisions: int = 2) -> SmithVerdict:
    """Every commuting pair of involutions in ``G``: equal fixed sets force equal maps."""
    _classify(K, 2)
    K2, lift, rounds = _regularized_group(K, G, max_subdivisions)
    invols = [g for g in G.elements if _is_involution(g)]
    fixed = {g: fixed_subcomplex(lift[g], K2) for g in invols}
    pairs, counterexamples = 0, []
    for a, b in itertools.combinations_with_replacement(invols, 2):
        if compose_maps(a, b) != compose_maps(b, a):
            continue
        pairs += 1
        if fixed[a] == fixed[b] and a != b:
            counterexamples.append([list(a.vmap), list(b.vmap)])
    return SmithVerdict(
        "involution_pair_scan",
        {"group_order": G.order},
        "no commuting involutions a != b with F_a == F_b",
        {"involutions": len(invols), "commuting_pairs": pairs, "counterexamples": counterexamples,
         "subdivisions": rounds},
        not counterexamples,
    )


def rank2_subgroups(G: ActionGroup, p: int) -> list[tuple[SimplicialMap, ...]]:
    """All subgroups of ``G`` isomorphic to ``(Z_p)^2``, each as its element tuple."""
    elts = [g for g in G.elements if not g.is_identity() and map_order(g) == p]
    seen, out = set(), []
    for a, b in itertools.combinations(elts, 2):
        if compose_maps(a, b) != compose_maps(b, a):
            continue
        try:
            sub = _check_pair_group(a, b, p)
        except PreconditionError:
            continue
        key = frozenset(sub)
        if key not in seen:
            seen.add(key)
            out.append(tuple(sorted(sub, key=lambda m: m.vmap)))
    return out


def no_free_rank2_check(K: SimplicialComplex, G: ActionGroup, p: int, max_subdivisions: int = 2) -> SmithVerdict:
    """No ``(Z_p)^2`` inside ``G`` acts freely: some nontrivial element has a fixed point."""
    kind, _ = _classify(K, p)
    if kind != "sphere":
        raise PreconditionError("complex must be a sphere mod p")
    subs = rank2_subgroups(G, p)
    free = []
    if subs:
        K2, lift, rounds = _regularized_group(K, G, max_subdivisions)
        for sub in subs:
            if all(fixed_subcomplex(lift[g], K2).is_empty() for g in sub if not g.is_identity()):
                free.append([list(g.vmap) for g in sub])
    else:
        rounds = 0
    return SmithVerdict(
        "no_free_rank2",
        {"group_order": G.order, "p": p},
        "every (Z_p)^2 subgroup has a nontrivial element with a fixed point",
        {"subgroups": len(subs), "free_subgroups": free, "subdivisions": rounds},
        not free,
    )


# -- verdicts on parameters --------------------------------------------------------------


@dataclass(frozen=True)
class EffectiveVerdict:
    ruled_out: bool
    clause: str

    @property
    def verdict(self) -> str:
        return "ruled_out" if self.ruled_out else "not_ruled_out"


def effective_bound(p: int, d: int, kind: SpaceKind) -> EffectiveVerdict:
    """Can ``(Z_p)^d`` act effectively?  ``m`` is the sphere dimension, or the
    acyclic manifold dimension minus one."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if d < 1:
        raise ValueError("rank d must be positive")
    m = kind.m
    if p == 2:
        if m < d - 1:
            return EffectiveVerdict(True, f"p = 2 and m < d - 1 ({m} < {d - 1})")
        return EffectiveVerdict(False, f"p = 2 and m >= d - 1 ({m} >= {d - 1})")
    if m < 2 * d - 1:
        return EffectiveVerdict(True, f"p odd and m < 2d - 1 ({m} < {2 * d - 1})")
    return EffectiveVerdict(False, f"p odd and m >= 2d - 1 ({m} >= {2 * d - 1})")


THEOREMS = {
    "sphere_Z2": "SAut(F_n), n >= 3, generalized d-sphere over Z_2, d < n - 1: every action is trivial; "
                 "Aut(F_n) acts through the determinant",
    "acyclic_Z2": "SAut(F_n), n >= 3, Z_2-acyclic homology d-manifold over Z_2, d < n: every action is trivial; "
                  "Aut(F_n) acts through the determinant",
    "sphere_Z3": "SAut(F_n), n > 3 even, generalized d-sphere over Z_3, d < n - 1: every action is trivial",
    "acyclic_Z3": "SAut(F_n), n > 3 even, Z_3-acyclic homology d-manifold over Z_3, d < n: every action is trivial",
    "sl_Z2": "SL(n,Z), n >= 3, d < n: no nontrivial action on a generalized (d-1)-sphere or a Z_2-acyclic "
             "homology d-manifold over Z_2; GL(n,Z) acts through the determinant",
}

GROUPS = ("saut", "aut", "sl", "gl")


@dataclass(frozen=True)
class OracleVerdict:
    verdict: str  # trivial_forced | determinant_only | not_ruled_out | not_covered
    theorem: str | None = None
    citation: str | None = None

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "theorem": self.theorem, "citation": self.citation}


def _threshold(kind: SpaceKind, n: int) -> bool:
    return kind.dim < n - 1 if kind.kind == "sphere" else kind.dim < n


def rigidity_oracle(group: str, n: int, kind: SpaceKind) -> OracleVerdict:
    """Whether the headline theorems force an action of ``group`` on the space to be trivial.

    ``NotRuledOut`` at the sharp boundary (sphere of dimension ``n - 1``,
    acyclic of dimension ``n``), where the linear action exists.  Parameter
    combinations no theorem addresses are ``not_covered``.
    """
    group = group.lower()
    if group not in GROUPS:
        raise ValueError(f"group must be one of {GROUPS}")
    if n < 2:
        raise ValueError("n must be at least 2")
    p = kind.p
    if p == 2:
        if n < 3 or not _threshold(kind, n):
            return OracleVerdict("not_ruled_out")
        if group in ("sl", "gl"):
            thm = "sl_Z2"
        else:
            thm = f"{kind.kind}_Z2"
        verdict = "trivial_forced" if group in ("saut", "sl") else "determinant_only"
        return OracleVerdict(verdict, thm, THEOREMS[thm])
    if p == 3:
        if group != "saut" or n % 2 or n <= 3:
            return OracleVerdict("not_covered")
        if not _threshold(kind, n):
            return OracleVerdict("not_ruled_out")
        thm = f"{kind.kind}_Z3"
        return OracleVerdict("trivial_forced", thm, THEOREMS[thm])
    return OracleVerdict("not_covered")


# report anchors: (reference, formula) per claim
ANCHORS = {
    "smith_fixed": (
        "fixed set of an order-p map of a mod-p sphere or acyclic space",
        r"F \sim_p S^r,\ -1\le r\le m-1;\ p \text{ odd}: r\le m-2,\ m-r \text{ even};"
        r"\ X \text{ acyclic} \Rightarrow F \text{ acyclic}",
    ),
    "borel_formula": ("Borel dimension formula", r"n-r=\sum_{1\ne C<A}(r_C-r)"),
    "involution_pair": ("commuting involutions with equal fixed sets", r"F_a=F_b \Rightarrow a=b"),
    "involution_pair_scan": ("commuting involutions with equal fixed sets", r"F_a=F_b \Rightarrow a=b"),
    "no_free_rank2": ("no free rank-two action on a sphere", r"\mathbb Z_p\times\mathbb Z_p \text{ not free on } S^m"),
}
