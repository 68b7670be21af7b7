"""Substitutions over integer alphabets and their fixed-point prefixes.

Words are plain Python strings: letter j is the character chr(48 + j), so a
binary word reads like "0001001".  That keeps factor enumeration at C speed
for the alphabet sizes that occur here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .beta_numeration import QuadraticParams, RenyiExpansion, parry_check
from .errors import InvalidInputError, InvalidParamsError, UnsupportedVariantError


def letter(index: int) -> str:
    return chr(ord("0") + index)


def letter_index(ch: str) -> int:
    return ord(ch) - ord("0")


def word_counts(word: str, alphabet_size: int) -> tuple[int, ...]:
    """Letter-count vector of a word."""
    return tuple(word.count(letter(j)) for j in range(alphabet_size))


def render_word(word: str, alphabet_size: int) -> str:
    """Digit string for alphabets up to 10 letters, comma indices above."""
    if alphabet_size <= 10:
        return word
    return ",".join(str(letter_index(c)) for c in word)


@dataclass(frozen=True)
class Substitution:
    """Letter-to-word morphism with a designated axiom letter.

    The axiom image must start with the axiom and be at least two letters
    long, so the fixed point lim phi^n(axiom) exists and is prefix-stable.
    """

    alphabet_size: int
    images: tuple[str, ...]
    axiom: int = 0

    def __post_init__(self):
        if self.alphabet_size < 1 or len(self.images) != self.alphabet_size:
            raise InvalidInputError("need one image per letter")
        for img in self.images:
            if len(img) == 0:
                raise InvalidInputError("images must be non-empty")
            if any(not 0 <= letter_index(c) < self.alphabet_size for c in img):
                raise InvalidInputError("image uses a letter outside the alphabet")
        ax = self.images[self.axiom]
        if len(ax) < 2 or letter_index(ax[0]) != self.axiom:
            raise InvalidInputError(
                "axiom image must start with the axiom and have length >= 2"
            )

    def apply(self, word: str) -> str:
        """phi(word), images applied letterwise."""
        images = self.images
        return "".join(images[letter_index(c)] for c in word)

    def incidence_matrix(self) -> list[list[int]]:
        """M[i][j] = number of occurrences of letter i in phi(j)."""
        k = self.alphabet_size
        return [[self.images[j].count(letter(i)) for j in range(k)] for i in range(k)]

    def to_json(self) -> dict:
        return {
            "alphabet": self.alphabet_size,
            "images": list(self.images),
            "axiom": self.axiom,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Substitution":
        return cls(obj["alphabet"], tuple(obj["images"]), obj["axiom"])


def quadratic_substitution(params: QuadraticParams) -> Substitution:
    """phi(0) = 0^a 1, phi(1) = 0^b 1 over {0, 1} with axiom 0."""
    return Substitution(
        alphabet_size=2,
        images=("0" * params.a + "1", "0" * params.b + "1"),
        axiom=0,
    )


def parry_substitution(renyi: RenyiExpansion) -> Substitution:
    """Canonical substitution of a non-simple Parry expansion.

    Over the alphabet {0, .., m+p-1}: letter j maps to 0^{t_{j+1}} (j+1) for
    j <= m+p-2, and the last letter maps to 0^{t_{m+p}} m, closing the cycle
    through the periodic part.
    """
    ok, shift = parry_check(renyi)
    if not ok:
        raise InvalidInputError(f"digits fail the Parry criterion at shift {shift}")
    if renyi.is_simple:
        raise UnsupportedVariantError(
            "simple Parry expansions have a different canonical substitution"
        )
    m, p = renyi.m, renyi.p
    k = m + p
    images = []
    for j in range(k - 1):
        images.append("0" * renyi.digit(j + 1) + letter(j + 1))
    images.append("0" * renyi.digit(k) + letter(m))
    return Substitution(alphabet_size=k, images=tuple(images), axiom=0)


class FixedPointStream:
    """Monotonically growing prefix buffer of the fixed point lim phi^n(axiom).

    Applying phi to a prefix of the fixed point yields a longer prefix, so the
    buffer is extended by repeated image application with truncation; no more
    than O(L + max image length) letters are ever materialized.
    """

    def __init__(self, substitution: Substitution):
        self.substitution = substitution
        self._buffer = letter(substitution.axiom)

    def prefix(self, length: int) -> str:
        if length < 0:
            raise InvalidInputError("length must be nonnegative")
        while len(self._buffer) < length:
            grown = self.substitution.apply(self._buffer)
            if len(grown) <= len(self._buffer):
                raise InvalidInputError("substitution does not grow from the axiom")
            self._buffer = grown[: max(length, len(self._buffer))]
        return self._buffer[:length]


def fixed_point_prefix(substitution: Substitution, length: int) -> str:
    """First `length` letters of the fixed point."""
    return FixedPointStream(substitution).prefix(length)


def is_primitive(substitution: Substitution) -> bool:
    """Some small power of the incidence matrix is entrywise positive.

    Powers are taken up to the Wielandt bound (k-1)^2 + 1, which decides
    primitivity for every k x k nonnegative matrix.
    """
    k = substitution.alphabet_size
    m = substitution.incidence_matrix()
    power = m
    for _ in range((k - 1) ** 2 + 1):
        if all(all(x > 0 for x in row) for row in power):
            return True
        power = _matmul(power, m)
    return False


def _matmul(x, y):
    n = len(x)
    return [
        [sum(x[i][t] * y[t][j] for t in range(n)) for j in range(n)]
        for i in range(n)
    ]
