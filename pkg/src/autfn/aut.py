"""Automorphisms of a free group, composed on the right.

``compose(f, g)`` means "apply f, then g": the image of ``a_i`` under ``fg``
is the image of ``a_i`` under f with every letter pushed through g.  All the
named generators (Nielsen maps, inversions, permutations, the order-3 maps
``R_i`` and so on) carry a witness, which is what makes inverses, conjugates
and commutators available.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .freegroup import RankError, Word, format_word, substitute


class NotInvertible(ValueError):
    """The endomorphism carries neither a witness nor stored inverse images."""


class InconsistentInverse(RuntimeError):
    """A computed inverse failed the composed identity check."""


# -- generator names ------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Gen:
    """A named generator, e.g. ``Gen("lambda", (1, 2))`` or ``Gen("Delta")``.

    Kinds: ``rho``, ``lambda``, ``e``, ``epsilon``, ``perm``, ``R``, ``beta``,
    ``Delta``.  For ``perm`` the args are a tuple of cycles.
    """

    kind: str
    args: tuple = ()

    def __str__(self) -> str:
        return gen_name(self)


KINDS = ("rho", "lambda", "e", "epsilon", "perm", "R", "beta", "Delta")

_SHORT = {"rho": "P", "lambda": "L", "e": "E", "epsilon": "EPS", "R": "R", "beta": "B"}


def rho(i: int, j: int) -> Gen:
    return Gen("rho", (i, j))


def lam(i: int, j: int) -> Gen:
    return Gen("lambda", (i, j))


def inv(i: int) -> Gen:
    return Gen("e", (i,))


def eps(i: int, j: int) -> Gen:
    return Gen("epsilon", (i, j))


def perm(*cycles: Sequence[int]) -> Gen:
    return Gen("perm", tuple(tuple(c) for c in cycles))


def R(i: int) -> Gen:
    return Gen("R", (i,))


def beta(i: int) -> Gen:
    return Gen("beta", (i,))


DELTA = Gen("Delta")


def a_(i: int) -> int:
    """Plain index of ``a_i`` in the paired basis a1, b1, a2, b2, ..."""
    return 2 * i - 1


def b_(i: int) -> int:
    """Plain index of ``b_i`` in the paired basis."""
    return 2 * i


def gen_name(g: Gen) -> str:
    if g.kind == "Delta":
        return "DEL"
    if g.kind == "perm":
        return "PERM" + "".join("(" + " ".join(map(str, c)) + ")" for c in g.args)
    args = g.args
    if any(x >= 10 for x in args):
        return f"{_SHORT[g.kind]}({','.join(map(str, args))})"
    return _SHORT[g.kind] + "".join(map(str, args))


def perm_map(cycles: Iterable[Sequence[int]], n: int) -> tuple[int, ...]:
    """1-based image table ``s`` of a product of disjoint cycles: ``s[k-1] = sigma(k)``."""
    s = list(range(1, n + 1))
    seen: set[int] = set()
    for cyc in cycles:
        for x in cyc:
            if not 1 <= x <= n:
                raise RankError(f"cycle entry {x} out of range for n={n}")
            if x in seen:
                raise ValueError("cycles must be disjoint")
            seen.add(x)
        for k, x in enumerate(cyc):
            s[x - 1] = cyc[(k + 1) % len(cyc)]
    return tuple(s)


def _check_gen(g: Gen, n: int) -> None:
    if g.kind not in KINDS:
        raise ValueError(f"unknown generator kind {g.kind!r}")
    if g.kind in ("rho", "lambda", "epsilon"):
        i, j = g.args
        if i == j:
            raise ValueError(f"{g}: indices must differ")
        for x in (i, j):
            if not 1 <= x <= n:
                raise RankError(f"{g}: index out of range for n={n}")
    elif g.kind == "e":
        (i,) = g.args
        if not 1 <= i <= n:
            raise RankError(f"{g}: index out of range for n={n}")
    elif g.kind in ("R", "beta"):
        if n % 2:
            raise ValueError(f"{g} needs an even rank, got n={n}")
        (i,) = g.args
        if not 1 <= i <= n // 2:
            raise RankError(f"{g}: index out of range for n={n}")
    elif g.kind == "perm":
        perm_map(g.args, n)


def _gen_images(g: Gen, n: int, inverse: bool = False) -> tuple[Word, ...]:
    _check_gen(g, n)
    gens = [Word(n, (k,)) for k in range(1, n + 1)]
    im = list(gens)
    kind, args = g.kind, g.args
    if kind == "rho":
        i, j = args
        im[i - 1] = Word(n, (i, -j) if inverse else (i, j))
    elif kind == "lambda":
        i, j = args
        im[i - 1] = Word(n, (-j, i) if inverse else (j, i))
    elif kind == "e":
        (i,) = args
        im[i - 1] = Word(n, (-i,))
    elif kind == "epsilon":
        for i in args:
            im[i - 1] = Word(n, (-i,))
    elif kind == "Delta":
        im = [Word(n, (-k,)) for k in range(1, n + 1)]
    elif kind == "perm":
        s = perm_map(args, n)
        if inverse:
            t = [0] * n
            for k, v in enumerate(s, 1):
                t[v - 1] = k
            s = tuple(t)
        im = [Word(n, (s[k],)) for k in range(n)]
    elif kind == "R":
        a, b = a_(args[0]), b_(args[0])
        if inverse:
            im[a - 1] = Word(n, (-a, b))
            im[b - 1] = Word(n, (-a,))
        else:
            im[a - 1] = Word(n, (-b,))
            im[b - 1] = Word(n, (-b, a))
    elif kind == "beta":
        # involution
        a, b = a_(args[0]), b_(args[0])
        im[a - 1] = Word(n, (-a,))
        im[b - 1] = Word(n, (-a, -b, a))
    return tuple(im)


# -- endomorphisms --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Endo:
    """An endomorphism of ``F_rank`` given by the images of the basis.

    ``witness`` is a word in named generators, as ``((Gen, +-1), ...)`` read
    left to right, that evaluates to this map.  ``inverse_images`` is an
    alternative certificate of invertibility (used for graph-induced maps).
    Equality and hashing only look at the images.
    """

    rank: int
    images: tuple[Word, ...]
    witness: tuple[tuple[Gen, int], ...] | None = None
    inverse_images: tuple[Word, ...] | None = None
    paired: bool = False
    _inv: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        if len(self.images) != self.rank:
            raise RankError(f"need {self.rank} images, got {len(self.images)}")
        for im in self.images:
            if im.rank != self.rank:
                raise RankError("image rank differs from endomorphism rank")

    def __eq__(self, other) -> bool:
        return isinstance(other, Endo) and self.rank == other.rank and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def key(self) -> tuple[int, ...]:
        """Flattened letter encoding of the image tuple (0 separates images)."""
        out: list[int] = []
        for im in self.images:
            out.extend(im.letters)
            out.append(0)
        return tuple(out)

    @property
    def invertible(self) -> bool:
        return self.witness is not None or self.inverse_images is not None

    def __matmul__(self, other: Endo) -> Endo:
        return compose(self, other)

    def __call__(self, w: Word) -> Word:
        return substitute(w, self.images)

    def is_identity(self) -> bool:
        return all(im.letters == (k,) for k, im in enumerate(self.images, 1))

    def format(self, paired: bool | None = None) -> str:
        paired = self.paired if paired is None else paired
        gens = [Word(self.rank, (k,)) for k in range(1, self.rank + 1)]
        return ", ".join(
            f"{format_word(g, paired)} -> {format_word(im, paired)}" for g, im in zip(gens, self.images)
        )

    def __str__(self) -> str:
        return self.format()


def identity(n: int, paired: bool = False) -> Endo:
    return Endo(n, tuple(Word(n, (k,)) for k in range(1, n + 1)), witness=(), paired=paired)


def named(g: Gen, n: int, paired: bool | None = None) -> Endo:
    if paired is None:
        paired = g.kind in ("R", "beta")
    return Endo(n, _gen_images(g, n), witness=((g, 1),), paired=paired)


def _check_same(f: Endo, g: Endo) -> None:
    if f.rank != g.rank:
        raise RankError(f"rank mismatch: {f.rank} vs {g.rank}")


def compose(f: Endo, g: Endo) -> Endo:
    """``f`` followed by ``g``."""
    _check_same(f, g)
    images = tuple(substitute(im, g.images) for im in f.images)
    witness = None
    inv_images = None
    if f.witness is not None and g.witness is not None:
        witness = f.witness + g.witness
    elif f.invertible and g.invertible:
        fi, gi = inverse(f), inverse(g)
        inv_images = tuple(substitute(im, fi.images) for im in gi.images)
    return Endo(f.rank, images, witness, inv_images, f.paired or g.paired)


def product(factors: Sequence[Endo], n: int | None = None) -> Endo:
    if not factors:
        if n is None:
            raise ValueError("empty product needs a rank")
        return identity(n)
    out = factors[0]
    for f in factors[1:]:
        out = compose(out, f)
    return out


def equal(f: Endo, g: Endo) -> bool:
    _check_same(f, g)
    return f.images == g.images


def inverse(f: Endo) -> Endo:
    if f._inv:
        return f._inv[0]
    if f.witness is not None:
        out = identity(f.rank, f.paired)
        for g, e in reversed(f.witness):
            step = Endo(f.rank, _gen_images(g, f.rank, inverse=e > 0), witness=((g, -e),))
            out = compose(out, step)
        out = Endo(f.rank, out.images, out.witness, None, f.paired)
    elif f.inverse_images is not None:
        out = Endo(f.rank, f.inverse_images, None, f.images, f.paired)
    else:
        raise NotInvertible("no witness or inverse images stored")
    if not compose(Endo(f.rank, f.images), Endo(f.rank, out.images)).is_identity():
        raise InconsistentInverse(f"inverse check failed for {f}")
    f._inv.append(out)
    out._inv.append(f)
    return out


def power(f: Endo, k: int) -> Endo:
    base = f if k >= 0 else inverse(f)
    out = identity(f.rank, f.paired)
    for _ in range(abs(k)):
        out = compose(out, base)
    return out


def conjugate(x: Endo, c: Endo) -> Endo:
    """``x^c = c^-1 x c``.

    With this exponent convention ``x^(cd) = (x^c)^d``, and a permutation
    ``s`` relabels indices: ``lambda_ij^s = lambda_{s(i)s(j)}``.
    """
    _check_same(x, c)
    return compose(compose(inverse(c), x), c)


def commutator(x: Endo, y: Endo) -> Endo:
    """``[x, y] = x y x^-1 y^-1``."""
    _check_same(x, y)
    return product([x, y, inverse(x), inverse(y)])


@dataclass(frozen=True)
class Unknown:
    cap: int

    def __str__(self) -> str:
        return f"unknown(>{self.cap})"


def order(f: Endo, cap: int = 64) -> int | Unknown:
    g = f
    for k in range(1, cap + 1):
        if g.is_identity():
            return k
        g = Endo(f.rank, tuple(substitute(im, f.images) for im in g.images))
    return Unknown(cap)


# -- generator-word syntax -------------------------------------------------------

_TOK = re.compile(
    r"\s*(?:"
    r"(?P<perm>PERM(?:\(\s*\d+(?:\s+\d+)*\s*\))+)"
    r"|(?P<del>DEL)"
    r"|(?P<kind>EPS|L|P|E|R|B)(?P<args>\([^)]*\)|\d+)"
    r")(?P<exp>\^-?\d+)?"
)

_KIND_OF = {"EPS": "epsilon", "L": "lambda", "P": "rho", "E": "e", "R": "R", "B": "beta"}


def _parse_arg(tok: str) -> int:
    tok = tok.strip()
    if tok[0] in "ab":
        k = int(tok[1:])
        return a_(k) if tok[0] == "a" else b_(k)
    return int(tok)


def parse_gen_word(text: str) -> list[tuple[Gen, int]]:
    """Parse ``L12 P13^-1 EPS12 R1 B1 DEL PERM(1 2)(3 4)`` into ``[(Gen, exponent)]``.

    Two-index names take single digits (``L12``) or a parenthesised list,
    which also accepts paired letters: ``L(b1,a1)``.
    """
    out: list[tuple[Gen, int]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse generator word at {text[pos:]!r}")
        exp = int(m.group("exp")[1:]) if m.group("exp") else 1
        if m.group("perm"):
            cycles = re.findall(r"\(([^)]*)\)", m.group("perm"))
            g = perm(*[tuple(int(x) for x in c.split()) for c in cycles])
        elif m.group("del"):
            g = DELTA
        else:
            kind = _KIND_OF[m.group("kind")]
            raw = m.group("args")
            if raw.startswith("("):
                args = tuple(_parse_arg(t) for t in raw[1:-1].split(","))
            elif kind in ("e", "R", "beta"):
                args = (int(raw),)
            else:
                args = tuple(int(ch) for ch in raw)
            g = Gen(kind, args)
        out.append((g, exp))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def evaluate(word: Sequence[tuple[Gen, int]], n: int) -> Endo:
    out = identity(n)
    for g, e in word:
        out = compose(out, power(named(g, n), e))
    return out


def parse_endo(text: str, n: int) -> Endo:
    return evaluate(parse_gen_word(text), n)
