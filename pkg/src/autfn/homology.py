"""Simplicial homology with F_p coefficients."""

from __future__ import annotations

from dataclasses import dataclass

from .linear import NotPrime, is_prime
from .simplicial import SimplicialComplex


@dataclass(frozen=True)
class ChainComplex:
    p: int
    bases: tuple[tuple[tuple, ...], ...]  # bases[k]: sorted k-simplices
    boundaries: tuple  # boundaries[k-1] = d_k as rows indexed by (k-1)-simplices, k >= 1

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.bases)

    def boundary(self, k: int) -> list[list[int]]:
        """Dense matrix of ``d_k : C_k -> C_(k-1)`` (``k >= 1``)."""
        return self.boundaries[k - 1]


def chain_complex(K: SimplicialComplex, p: int) -> ChainComplex:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    bases = tuple(tuple(K.by_dim(k)) for k in range(K.dim + 1))
    mats = []
    for k in range(1, K.dim + 1):
        row_of = {s: r for r, s in enumerate(bases[k - 1])}
        m = [[0] * len(bases[k]) for _ in bases[k - 1]]
        for c, s in enumerate(bases[k]):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                m[row_of[face]][c] = (-1) ** i % p
        mats.append(m)
    return ChainComplex(p, bases, tuple(mats))


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    a = [r[:] for r in rows if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][c] % p), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        s = pow(a[rank][c], -1, p)
        prow = [x * s % p for x in a[rank]]
        a[rank] = prow
        for r in range(rank + 1, len(a)):
            f = a[r][c] % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], prow)]
        rank += 1
        if rank == len(a):
            break
    return rank


def matmul_mod_p(a, b, p: int):
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % p for col in cols] for row in a]


@dataclass(frozen=True)
class BettiVector:
    p: int
    betti: tuple[int, ...]

    def __iter__(self):
        return iter(self.betti)

    def __len__(self) -> int:
        return len(self.betti)

    def __getitem__(self, k):
        return self.betti[k]

    def to_json(self) -> dict:
        return {"p": self.p, "betti": list(self.betti)}


def betti(K: SimplicialComplex, p: int) -> BettiVector:
    """``b_k = dim ker d_k - rank d_(k+1)``; the empty complex gives ``()``."""
    cc = chain_complex(K, p)
    ranks = [0] + [rank_mod_p(m, p) for m in cc.boundaries] + [0]
    return BettiVector(p, tuple(cc.ranks[k] - ranks[k] - ranks[k + 1] for k in range(K.dim + 1)))


def _trim(b) -> tuple[int, ...]:
    b = list(b)
    while b and b[-1] == 0:
        b.pop()
    return tuple(b)


def sphere_dim(b: BettiVector | tuple) -> int | None:
    """``r`` when the betti numbers are those of ``S^r`` (``-1`` for empty), else None."""
    t = _trim(b)
    if not t:
        return -1
    if t == (2,):
        return 0
    if len(t) >= 2 and t[0] == 1 and t[-1] == 1 and not any(t[1:-1]):
        return len(t) - 1
    return None


def is_sphere_mod_p(K: SimplicialComplex, p: int) -> int | None:
    return sphere_dim(betti(K, p))


def is_acyclic_mod_p(K: SimplicialComplex, p: int) -> bool:
    return _trim(betti(K, p)) == (1,)


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** k * n for k, n in enumerate(K.f_vector()))
