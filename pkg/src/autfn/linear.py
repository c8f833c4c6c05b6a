"""Integer and mod-p matrices, abelianization, and finite matrix groups.

Row ``i`` of ``abelianize(f)`` holds the exponent sums of the image of
``a_i``, so ``abelianize(compose(f, g)) == abelianize(f) @ abelianize(g)``.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from operator import mul
from typing import Iterable, Sequence

from .aut import Endo

DEFAULT_CAP = 10**7


def default_cap(fallback: int = DEFAULT_CAP) -> int:
    env = os.environ.get("AUTFN_CAP")
    return int(env) if env else fallback


class CapExceeded(RuntimeError):
    pass


class NotPrime(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def _matmul(a, b, p=None):
    cols = tuple(zip(*b))
    if p is None:
        return tuple(tuple(sum(map(mul, row, col)) for col in cols) for row in a)
    return tuple(tuple(sum(map(mul, row, col)) % p for col in cols) for row in a)


def _ident_rows(n: int):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True, order=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(_ident_rows(n))

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> IntMatrix:
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        return IntMatrix(_matmul(self.rows, other.rows))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(tuple(tuple(-x for x in r) for r in self.rows))

    def __pow__(self, k: int) -> IntMatrix:
        base = self if k >= 0 else self.inverse()
        out = IntMatrix.identity(self.n)
        for _ in range(abs(k)):
            out = out @ base
        return out

    def inverse(self) -> IntMatrix:
        inv = _fraction_inverse(self.rows)
        if any(x.denominator != 1 for r in inv for x in r):
            raise ValueError("matrix is not invertible over Z")
        return IntMatrix(tuple(tuple(int(x) for x in r) for r in inv))

    def det(self) -> int:
        return det(self)

    def is_identity(self) -> bool:
        return self.rows == _ident_rows(self.n)

    def sign_normalized(self) -> IntMatrix:
        """Representative of ``{M, -M}`` whose first nonzero entry is positive."""
        for r in self.rows:
            for x in r:
                if x:
                    return self if x > 0 else -self
        return self

    def __str__(self) -> str:
        return format_matrix(self)


@dataclass(frozen=True, order=True)
class ModPMatrix:
    p: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if any(not 0 <= x < self.p for r in self.rows for x in r):
            object.__setattr__(self, "rows", tuple(tuple(x % self.p for x in r) for r in self.rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int, p: int) -> ModPMatrix:
        return cls(p, _ident_rows(n))

    def __matmul__(self, other: ModPMatrix) -> ModPMatrix:
        if other.p != self.p:
            raise ValueError("characteristic mismatch")
        return _mk(self.p, _matmul(self.rows, other.rows, self.p))

    def __pow__(self, k: int) -> ModPMatrix:
        base = self if k >= 0 else self.inverse()
        out = ModPMatrix.identity(self.n, self.p)
        for _ in range(abs(k)):
            out = out @ base
        return out

    def inverse(self) -> ModPMatrix:
        p, n = self.p, self.n
        a = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c]), None)
            if piv is None:
                raise ValueError("singular matrix")
            a[c], a[piv] = a[piv], a[c]
            s = pow(a[c][c], -1, p)
            a[c] = [x * s % p for x in a[c]]
            for r in range(n):
                if r != c and a[r][c]:
                    f = a[r][c]
                    a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
        return _mk(p, tuple(tuple(r[n:]) for r in a))

    def det(self) -> int:
        return det_p(self)

    def is_identity(self) -> bool:
        return self.rows == _ident_rows(self.n)

    def __str__(self) -> str:
        return format_matrix(self)


def _mk(p: int, rows) -> ModPMatrix:
    m = ModPMatrix.__new__(ModPMatrix)
    object.__setattr__(m, "p", p)
    object.__setattr__(m, "rows", rows)
    return m


def _fraction_inverse(rows):
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        s = a[c][c]
        a[c] = [x / s for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [r[n:] for r in a]


def abelianize(f: Endo) -> IntMatrix:
    return IntMatrix(tuple(im.exponent_sums() for im in f.images))


def det(m: IntMatrix) -> int:
    """Bareiss fraction-free elimination."""
    a = [list(r) for r in m.rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if a[r][k]), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_p(m: ModPMatrix) -> int:
    p = m.p
    a = [list(r) for r in m.rows]
    n = len(a)
    d = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d = d * a[c][c] % p
        s = pow(a[c][c], -1, p)
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] * s % p
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
    return d % p


def mod_p(m: IntMatrix, p: int) -> ModPMatrix:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return ModPMatrix(p, m.rows)


def elementary(i: int, j: int, n: int, p: int) -> ModPMatrix:
    """Identity plus 1 at (i, j), 1-based; equals ``mod_p(abelianize(lambda_ij), p)``."""
    if i == j:
        raise ValueError("elementary matrix needs i != j")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"indices out of range for n={n}")
    rows = [list(r) for r in _ident_rows(n)]
    rows[i - 1][j - 1] = 1
    return ModPMatrix(p, tuple(tuple(r) for r in rows))


def all_elementary(n: int, p: int) -> list[ModPMatrix]:
    return [elementary(i, j, n, p) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def sl_order(n: int, p: int) -> int:
    out = 1
    for k in range(n):
        out *= p**n - p**k
    return out // (p - 1)


# -- finite groups ----------------------------------------------------------------


@dataclass(frozen=True)
class FiniteMatrixGroup:
    p: int
    n: int
    elements: tuple[ModPMatrix, ...]
    generators: tuple[ModPMatrix, ...]
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, m: ModPMatrix) -> bool:
        if not self._index:
            self._index.update((e, k) for k, e in enumerate(self.elements))
        return m in self._index

    def __iter__(self):
        return iter(self.elements)


def _closure(gens: Sequence, one, cap: int) -> set:
    seen = {one}
    queue = deque([one])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x @ g
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceeded(f"group exceeds cap {cap}")
                queue.append(y)
    return seen


def enumerate_group(gens: Sequence[ModPMatrix], cap: int | None = None, *, n: int | None = None,
                    p: int | None = None) -> FiniteMatrixGroup:
    """Breadth-first closure of ``gens`` under right multiplication."""
    cap = default_cap() if cap is None else cap
    if gens:
        n, p = gens[0].n, gens[0].p
    elif n is None or p is None:
        raise ValueError("empty generator list needs n and p")
    for g in gens:
        if g.p != p or g.n != n:
            raise ValueError("generators must share n and p")
        if det_p(g) == 0:
            raise ValueError("generator is singular mod p")
    els = _closure(list(gens), ModPMatrix.identity(n, p), cap)
    return FiniteMatrixGroup(p, n, tuple(sorted(els)), tuple(gens))


def special_linear(n: int, p: int, cap: int | None = None) -> FiniteMatrixGroup:
    return enumerate_group(all_elementary(n, p), cap)


def _extend(elements: set, gens: list, new, cap: int) -> None:
    """Grow the subgroup ``elements`` (generated by ``gens``) by ``new`` in place."""
    gens.append(new)
    queue = deque(x @ new for x in list(elements))
    while queue:
        y = queue.popleft()
        if y in elements:
            continue
        elements.add(y)
        if len(elements) > cap:
            raise CapExceeded(f"group exceeds cap {cap}")
        queue.extend(y @ g for g in gens)


def normal_closure(seed: Iterable[ModPMatrix], G: FiniteMatrixGroup, cap: int | None = None) -> FiniteMatrixGroup:
    cap = default_cap() if cap is None else cap
    seed = list(seed)
    for s in seed:
        if s not in G:
            raise ValueError("seed element is not in the group")
    ginv = [(h.inverse(), h) for h in G.generators]
    one = ModPMatrix.identity(G.n, G.p)
    elements = {one}
    gens: list[ModPMatrix] = []
    todo = list(seed)
    while todo:
        x = todo.pop()
        if x in elements:
            continue
        _extend(elements, gens, x, cap)
        todo.extend(hi @ x @ h for hi, h in ginv)
    return FiniteMatrixGroup(G.p, G.n, tuple(sorted(elements)), tuple(gens))


def conjugacy_classes(G: FiniteMatrixGroup) -> list[tuple[ModPMatrix, ...]]:
    """Classes as sorted tuples, listed by their least element."""
    ginv = [(h.inverse(), h) for h in G.generators]
    seen: set = set()
    classes = []
    for x in G.elements:
        if x in seen:
            continue
        orbit = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for hi, h in ginv:
                z = hi @ y @ h
                if z not in orbit:
                    orbit.add(z)
                    queue.append(z)
        seen |= orbit
        classes.append(tuple(sorted(orbit)))
    return classes


def is_simple(G: FiniteMatrixGroup, exhaustive: bool = False) -> bool:
    """True iff every nontrivial element has normal closure ``G``.

    By default one representative per conjugacy class is tried; with
    ``exhaustive`` every nontrivial element is.
    """
    if G.order == 1:
        return False
    if exhaustive:
        candidates = [x for x in G.elements if not x.is_identity()]
    else:
        candidates = [c[0] for c in conjugacy_classes(G) if not c[0].is_identity()]
    return all(normal_closure([x], G).order == G.order for x in candidates)


@dataclass(frozen=True)
class NotElementaryAbelian:
    reason: str

    def __bool__(self) -> bool:
        return False


def elementary_abelian_rank(H: FiniteMatrixGroup, p: int) -> int | NotElementaryAbelian:
    gens = list(H.generators) or list(H.elements)
    for a in gens:
        if not (a**p).is_identity():
            return NotElementaryAbelian("a generator does not have order dividing p")
        for b in gens:
            if a @ b != b @ a:
                return NotElementaryAbelian("not abelian")
    r, size = 0, 1
    while size < H.order:
        size *= p
        r += 1
    if size != H.order:
        return NotElementaryAbelian("order is not a power of p")
    return r


def block_group(n: int, p: int = 2) -> FiniteMatrixGroup:
    """``<E_ij : i <= n/2 < j>``."""
    gens = [elementary(i, j, n, p) for i in range(1, n + 1) for j in range(1, n + 1) if i <= n / 2 < j]
    return enumerate_group(gens)


def first_column_group(n: int, p: int = 2) -> FiniteMatrixGroup:
    """``<E_j1 : j != 1>``."""
    return enumerate_group([elementary(j, 1, n, p) for j in range(2, n + 1)])


# -- integer matrices modulo sign -----------------------------------------------------


def sign_quotient_rank(gens: Sequence[IntMatrix], cap: int = 10**5) -> int | NotElementaryAbelian:
    """Rank of the image of ``<gens>`` in ``GL(n, Z)/{+-I}`` if that image is an
    elementary abelian 2-group."""
    n = gens[0].n
    pm = {IntMatrix.identity(n), -IntMatrix.identity(n)}
    for a in gens:
        if a @ a not in pm:
            return NotElementaryAbelian("a generator is not an involution modulo sign")
        for b in gens:
            if a @ b @ a.inverse() @ b.inverse() not in pm:
                return NotElementaryAbelian("generators do not commute modulo sign")
    els = {IntMatrix.identity(n)}
    queue = deque(els)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = (x @ g).sign_normalized()
            if y not in els:
                els.add(y)
                if len(els) > cap:
                    raise CapExceeded(f"group exceeds cap {cap}")
                queue.append(y)
    r = len(els).bit_length() - 1
    if 1 << r != len(els):
        return NotElementaryAbelian("order is not a power of 2")
    return r


# -- text format ----------------------------------------------------------------------


def format_matrix(m) -> str:
    return "; ".join(" ".join(str(x) for x in r) for r in m.rows)


def parse_matrix(text: str, p: int | None = None):
    rows = tuple(tuple(int(x) for x in r.split()) for r in text.split(";") if r.strip())
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("matrix must be square")
    return IntMatrix(rows) if p is None else ModPMatrix(p, rows)
