"""Free-group words in run-length (syllable) form.

A letter is a nonzero int: ``g + 1`` stands for generator ``g`` and
``-(g + 1)`` for its inverse.  A :class:`Word` stores maximal runs of one
generator as ``(generator, exponent)`` syllables, so ``x**10**6`` is a single
syllable.

Text syntax: a lowercase letter is a generator, the uppercase letter its
inverse, whitespace is ignored.  ``"txTxtXTXX"`` is the Baumslag-Gersten
relator over the alphabet ``("x", "t")``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Tuple

Syllable = Tuple[int, int]

DEFAULT_ALPHABET = ("x", "t")
X, T = 0, 1


class AlphabetError(ValueError):
    pass


class Word:
    """Immutable freely reduced word."""

    __slots__ = ("syllables", "_len", "_hash")

    def __init__(self, syllables: Iterable[Syllable] = ()):
        self.syllables: Tuple[Syllable, ...] = _normalize(syllables)
        self._len = sum(abs(e) for _, e in self.syllables)
        self._hash = None

    @classmethod
    def from_letters(cls, letters: Iterable[int]) -> "Word":
        return cls(_letters_to_syllables(_free_reduce(letters)))

    @classmethod
    def gen(cls, g: int, exponent: int = 1) -> "Word":
        return cls([(g, exponent)]) if exponent else cls()

    def letters(self) -> Iterator[int]:
        for g, e in self.syllables:
            letter = g + 1 if e > 0 else -(g + 1)
            for _ in range(abs(e)):
                yield letter

    def letter_tuple(self) -> Tuple[int, ...]:
        return tuple(self.letters())

    def __len__(self) -> int:
        return self._len

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.syllables == other.syllables

    def __lt__(self, other: "Word") -> bool:
        return self.syllables < other.syllables

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.syllables)
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        return _join(self, other)

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return invert(self) ** (-k)
        out = Word()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __invert__(self) -> "Word":
        return invert(self)

    def __repr__(self) -> str:
        if all(g < len(DEFAULT_ALPHABET) for g, _ in self.syllables) and self._len <= 80:
            return f"Word({format_word(self)!r})"
        return f"Word({list(self.syllables)!r})"


def _join(left: Word, right: Word) -> Word:
    # both sides already reduced: only the junction can cancel or merge
    a, b = left.syllables, right.syllables
    length = left._len + right._len
    i, j = len(a), 0
    mid: Tuple[Syllable, ...] = ()
    while i > 0 and j < len(b) and a[i - 1][0] == b[j][0]:
        g, ea, eb = a[i - 1][0], a[i - 1][1], b[j][1]
        e = ea + eb
        length -= abs(ea) + abs(eb) - abs(e)
        i -= 1
        j += 1
        if e:
            mid = ((g, e),)
            break
    return _raw(a[:i] + mid + b[j:], length)


def _raw(syllables: Tuple[Syllable, ...], length: int) -> Word:
    w = Word.__new__(Word)
    w.syllables = syllables
    w._len = length
    w._hash = None
    return w


def _normalize(syllables: Iterable[Syllable]) -> Tuple[Syllable, ...]:
    # stack-based merge; cancellation can cascade across syllables
    stack: list = []
    for g, e in syllables:
        if g < 0:
            raise AlphabetError(f"negative generator index {g}")
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            e += stack.pop()[1]
            if e == 0:
                continue
        stack.append((g, e))
    return tuple(stack)


def _free_reduce(letters: Iterable[int]) -> list:
    stack: list = []
    for a in letters:
        if a == 0:
            raise AlphabetError("letter 0 is not a signed generator")
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return stack


def _letters_to_syllables(letters: Sequence[int]) -> list:
    out: list = []
    for a in letters:
        g, s = abs(a) - 1, (1 if a > 0 else -1)
        if out and out[-1][0] == g:
            out[-1][1] += s
        else:
            out.append([g, s])
    return [(g, e) for g, e in out]


def reduce(raw: Iterable[int] | str, alphabet: Sequence[str] = DEFAULT_ALPHABET) -> Word:
    """Freely reduce a letter sequence (ints, or text in the ASCII syntax)."""
    if isinstance(raw, str):
        return parse(raw, alphabet)
    letters = list(raw)
    for a in letters:
        if a == 0 or abs(a) > len(alphabet):
            raise AlphabetError(f"letter {a} outside alphabet of size {len(alphabet)}")
    return Word.from_letters(letters)


def parse(text: str, alphabet: Sequence[str] = DEFAULT_ALPHABET) -> Word:
    index = {name: i for i, name in enumerate(alphabet)}
    letters = []
    for ch in text:
        if ch.isspace():
            continue
        if ch in index:
            letters.append(index[ch] + 1)
        elif ch.lower() in index and ch != ch.lower():
            letters.append(-(index[ch.lower()] + 1))
        else:
            raise AlphabetError(f"unknown generator letter {ch!r} (alphabet {' '.join(alphabet)})")
    return Word.from_letters(letters)


def format_word(w: Word, alphabet: Sequence[str] = DEFAULT_ALPHABET) -> str:
    parts = []
    for g, e in w.syllables:
        if g >= len(alphabet):
            raise AlphabetError(f"generator {g} outside alphabet of size {len(alphabet)}")
        parts.append((alphabet[g] if e > 0 else alphabet[g].upper()) * abs(e))
    return "".join(parts)


def invert(w: Word) -> Word:
    return _raw(tuple((g, -e) for g, e in reversed(w.syllables)), w._len)


def conjugate(base: Word, by: Word) -> Word:
    """``by * base * by**-1``; the superscript convention ``a^b = b a b^-1``."""
    return by * base * invert(by)


def commutator(a: Word, b: Word) -> Word:
    return a * b * invert(a) * invert(b)


@lru_cache(maxsize=64)
def build_V(m: int) -> Word:
    """V_0 = x, V_{m+1} = x conjugated by (V_m conjugated by t).

    Represents x**E(m) in the Baumslag-Gersten group; ``len == 6 * 2**m - 5``.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    x, t = Word.gen(X), Word.gen(T)
    v = x
    for _ in range(m):
        v = conjugate(x, conjugate(v, t))
    return v


def build_v(n: int) -> Word:
    if n < 1:
        raise ValueError("n must be a positive integer")
    return build_V(n.bit_length() - 1)


def cyclic_reduce(w: Word) -> Word:
    letters = w.letter_tuple()
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    return Word.from_letters(letters[i:j])


def rotations(letters: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    n = len(letters)
    for i in range(n):
        yield tuple(letters[i:]) + tuple(letters[:i])


def invert_letters(letters: Sequence[int]) -> Tuple[int, ...]:
    return tuple(-a for a in reversed(letters))
