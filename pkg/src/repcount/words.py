"""Free groups, freely reduced words, and homomorphisms between them.

Fundamental groups of surfaces with boundary and of handlebodies are free,
so all the splitting data downstream reduces to words and homomorphisms of
free groups.  Only the abelianization layer (signed exponent sums) is
consumed by the invariant pipelines; there is deliberately no word-problem,
Whitehead or Nielsen machinery here.

Generator indices are 1-based, matching the usual y_1, ..., y_N notation.
Words are stored run-length encoded as ``(generator_index, exponent)``
pairs, because input files use compact power notation, and are always
freely reduced.  The empty word is the identity.

All values are immutable and every operation is a pure function, so
everything in this module is safe for concurrent use.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .intlinalg import IntMat

__all__ = [
    "Word",
    "FreeHom",
    "MalformedWordError",
    "RankMismatchError",
    "free_reduce",
    "exponent_sum",
    "abelianize",
    "compose",
    "parse_word",
    "format_word",
]


class MalformedWordError(ValueError):
    """A letter uses a non-positive generator index or a bad exponent."""


class RankMismatchError(ValueError):
    """Homomorphisms combined with incompatible source/target ranks."""


@dataclass(frozen=True)
class Word:
    """A freely reduced word, as a tuple of ``(index, exponent)`` runs.

    Construct words through :func:`free_reduce` (or :func:`parse_word`);
    the constructor insists the letters are already reduced.

    >>> free_reduce([(1, 1), (1, 2)])
    Word('g1^3')
    """

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters",
                           tuple((g, e) for g, e in self.letters))
        prev = None
        for index, exponent in self.letters:
            if not isinstance(index, int) or not isinstance(exponent, int):
                raise MalformedWordError("letters must be pairs of ints")
            if index < 1:
                raise MalformedWordError(f"generator index {index} is not positive")
            if exponent == 0:
                raise MalformedWordError("zero exponent in a reduced word")
            if prev == index:
                raise MalformedWordError("adjacent letters share a generator; not reduced")
            prev = index

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def max_index(self) -> int:
        """Largest generator index used, 0 for the identity word."""
        return max((g for g, _ in self.letters), default=0)

    def length(self) -> int:
        """Number of single letters, counting multiplicity."""
        return sum(abs(e) for _, e in self.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return free_reduce(self.letters + other.letters)

    def __pow__(self, e: int) -> "Word":
        if e == 0:
            return Word()
        base = self if e > 0 else self.inverse()
        letters: list[tuple[int, int]] = []
        for _ in range(abs(e)):
            letters.extend(base.letters)
        return free_reduce(letters)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def __str__(self) -> str:
        return format_word(self)


def free_reduce(letters: Iterable[tuple[int, int]]) -> Word:
    """Freely reduce a raw letter sequence into a :class:`Word`.

    Adjacent letters with the same generator are merged, zero exponents
    deleted, and cancellations cascade:

    >>> free_reduce([(1, 1), (2, 1), (2, -1), (1, -1)])
    Word('')
    """
    stack: list[list[int]] = []
    for index, exponent in letters:
        if not isinstance(index, int) or not isinstance(exponent, int):
            raise MalformedWordError("letters must be pairs of ints")
        if index < 1:
            raise MalformedWordError(f"generator index {index} is not positive")
        if exponent == 0:
            continue
        if stack and stack[-1][0] == index:
            stack[-1][1] += exponent
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([index, exponent])
    return Word(tuple((g, e) for g, e in stack))


def exponent_sum(w: Word, k: int) -> int:
    """Total signed exponent of generator ``k`` in ``w``.

    Invariant under free reduction; a ``k`` beyond the ambient rank simply
    never occurs and gives 0.
    """
    if k < 1:
        raise MalformedWordError(f"generator index {k} is not positive")
    return sum(e for g, e in w.letters if g == k)


@dataclass(frozen=True)
class FreeHom:
    """Homomorphism of free groups, recorded by generator images.

    ``images[i]`` is the image of the (i+1)-st source generator, a word
    over the target generators.
    """

    source_rank: int
    target_rank: int
    images: tuple[Word, ...]

    def __post_init__(self):
        if self.source_rank < 0 or self.target_rank < 0:
            raise RankMismatchError("ranks must be nonnegative")
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.source_rank:
            raise RankMismatchError(
                f"{len(images)} images for source rank {self.source_rank}"
            )
        for w in images:
            if w.max_index() > self.target_rank:
                raise MalformedWordError(
                    f"image {w} uses generator beyond target rank {self.target_rank}"
                )

    @classmethod
    def identity(cls, n: int) -> "FreeHom":
        return cls(n, n, tuple(Word(((i, 1),)) for i in range(1, n + 1)))

    def apply(self, w: Word) -> Word:
        """Image of ``w``: substitute generator images and reduce."""
        if w.max_index() > self.source_rank:
            raise RankMismatchError(
                f"word uses generator beyond source rank {self.source_rank}"
            )
        letters: list[tuple[int, int]] = []
        for g, e in w.letters:
            image = self.images[g - 1]
            if e > 0:
                for _ in range(e):
                    letters.extend(image.letters)
            else:
                inv = image.inverse()
                for _ in range(-e):
                    letters.extend(inv.letters)
        return free_reduce(letters)


def compose(f: FreeHom, g: FreeHom) -> FreeHom:
    """The composite f o g, so (f o g)(y) = f(g(y)).

    >>> f = FreeHom(1, 1, (Word(((1, 2),)),))
    >>> g = FreeHom(1, 1, (Word(((1, 3),)),))
    >>> compose(f, g).images[0]
    Word('g1^6')
    """
    if g.target_rank != f.source_rank:
        raise RankMismatchError(
            f"cannot compose: inner target rank {g.target_rank} != outer source rank {f.source_rank}"
        )
    return FreeHom(g.source_rank, f.target_rank, tuple(f.apply(w) for w in g.images))


def abelianize(f: FreeHom) -> IntMat:
    """Matrix of the induced map on first homology, in the standard bases.

    The result has shape ``target_rank x source_rank`` with entry (k, i)
    equal to the exponent sum of target generator k in the image of source
    generator i; column i is the exponent vector of f(y_i).
    """
    return IntMat(
        [
            [exponent_sum(f.images[i], k) for i in range(f.source_rank)]
            for k in range(1, f.target_rank + 1)
        ],
        cols=f.source_rank,
    )


_TOKEN = re.compile(r"g([1-9][0-9]*)(?:\^(-?[0-9]+))?\Z")


def parse_word(text: str) -> Word:
    """Parse the word text syntax: whitespace-separated ``g3^-2`` tokens.

    ``g3`` means exponent +1 and the empty string is the identity word.
    """
    letters = []
    for token in text.split():
        m = _TOKEN.match(token)
        if m is None:
            raise MalformedWordError(f"bad word token {token!r}")
        exponent = int(m.group(2)) if m.group(2) is not None else 1
        letters.append((int(m.group(1)), exponent))
    return free_reduce(letters)


def format_word(w: Word) -> str:
    """Inverse of :func:`parse_word`; the identity word prints as ''."""
    return " ".join(f"g{g}" if e == 1 else f"g{g}^{e}" for g, e in w.letters)
