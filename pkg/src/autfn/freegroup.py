"""Reduced words in a free group of fixed rank.

A word is stored as a tuple of signed generator indices: ``3`` is ``a3`` and
``-3`` is ``a3^-1``.  Indices are 1-based.  Every :class:`Word` is freely
reduced on construction, so equality of words is tuple equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence


class RankError(ValueError):
    """Generator index out of range, or words of different ranks combined."""


class Letter(NamedTuple):
    index: int
    sign: int

    def signed(self) -> int:
        return self.index * self.sign


def _as_signed(x) -> int:
    if isinstance(x, Letter):
        if x.sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {x.sign}")
        return x.index * x.sign
    if isinstance(x, tuple) and len(x) == 2:
        return _as_signed(Letter(*x))
    x = int(x)
    if x == 0:
        raise ValueError("0 is not a letter")
    return x


def _free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


@dataclass(frozen=True, slots=True)
class Word:
    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise RankError(f"rank must be nonnegative, got {self.rank}")
        letters = tuple(_as_signed(x) for x in self.letters)
        for x in letters:
            if abs(x) > self.rank:
                raise RankError(f"generator a{abs(x)} out of range for rank {self.rank}")
        object.__setattr__(self, "letters", _free_reduce(letters))

    @classmethod
    def identity(cls, rank: int) -> Word:
        return cls(rank, ())

    @classmethod
    def gen(cls, rank: int, i: int) -> Word:
        return cls(rank, (i,))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return (Letter(abs(x), 1 if x > 0 else -1) for x in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: Word) -> Word:
        return concat(self, other)

    def __invert__(self) -> Word:
        return invert(self)

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else invert(self)
        out = Word.identity(self.rank)
        for _ in range(abs(k)):
            out = concat(out, base)
        return out

    def is_identity(self) -> bool:
        return not self.letters

    def exponent_sums(self) -> tuple[int, ...]:
        sums = [0] * self.rank
        for x in self.letters:
            sums[abs(x) - 1] += 1 if x > 0 else -1
        return tuple(sums)

    def __str__(self) -> str:
        return format_word(self)


def reduce(raw: Sequence, rank: int) -> Word:
    """Freely reduce a sequence of letters (signed ints, ``Letter`` or ``(index, sign)``)."""
    return Word(rank, tuple(raw))


def _check_rank(u: Word, v: Word) -> None:
    if u.rank != v.rank:
        raise RankError(f"rank mismatch: {u.rank} vs {v.rank}")


def concat(u: Word, v: Word) -> Word:
    _check_rank(u, v)
    a, b = u.letters, v.letters
    k = 0
    # only the junction can cancel, both halves are already reduced
    while k < len(a) and k < len(b) and a[-1 - k] == -b[k]:
        k += 1
    w = Word.__new__(Word)
    object.__setattr__(w, "rank", u.rank)
    object.__setattr__(w, "letters", a[: len(a) - k] + b[k:])
    return w


def invert(w: Word) -> Word:
    out = Word.__new__(Word)
    object.__setattr__(out, "rank", w.rank)
    object.__setattr__(out, "letters", tuple(-x for x in reversed(w.letters)))
    return out


def substitute(w: Word, images: Sequence[Word]) -> Word:
    """Replace ``a_i`` by ``images[i-1]`` (and ``a_i^-1`` by its inverse)."""
    if len(images) != w.rank:
        raise RankError(f"need {w.rank} images, got {len(images)}")
    if not images:
        return w
    m = images[0].rank
    if any(im.rank != m for im in images):
        raise RankError("images must share one rank")
    out: list[int] = []
    for x in w.letters:
        piece = images[x - 1].letters if x > 0 else tuple(-y for y in reversed(images[-x - 1].letters))
        for y in piece:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    res = Word.__new__(Word)
    object.__setattr__(res, "rank", m)
    object.__setattr__(res, "letters", tuple(out))
    return res


# -- text syntax --------------------------------------------------------------

_TOKEN = re.compile(r"^([ab])(\d+)(\^-1)?$")


def letter_name(x: int, paired: bool = False) -> str:
    i = abs(x)
    if paired:
        name = f"a{(i + 1) // 2}" if i % 2 else f"b{i // 2}"
    else:
        name = f"a{i}"
    return name if x > 0 else name + "^-1"


def format_word(w: Word, paired: bool = False) -> str:
    if not w.letters:
        return "1"
    return " ".join(letter_name(x, paired) for x in w.letters)


def parse_word(text: str, rank: int, paired: bool = False) -> Word:
    """Parse ``a1 a2^-1 a1``.  In paired mode ``a_k`` is index 2k-1 and ``b_k`` is 2k."""
    text = text.strip()
    if text in ("", "1"):
        return Word.identity(rank)
    letters = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad letter {tok!r}")
        kind, k, inv = m.group(1), int(m.group(2)), m.group(3)
        if paired:
            idx = 2 * k - 1 if kind == "a" else 2 * k
        elif kind == "b":
            raise ValueError(f"{tok!r}: b-letters need paired naming")
        else:
            idx = k
        if idx < 1:
            raise ValueError(f"bad index in {tok!r}")
        letters.append(-idx if inv else idx)
    return Word(rank, tuple(letters))
