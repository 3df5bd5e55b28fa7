"""Finite presentations, the Baumslag-Gersten family, and Andrews-Curtis moves."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .words import (
    DEFAULT_ALPHABET,
    T,
    Word,
    X,
    build_V,
    conjugate,
    format_word,
    invert,
    invert_letters,
    parse,
)


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    alphabet: Tuple[str, ...]
    relators: Tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "relators", tuple(self.relators))
        n = len(self.alphabet)
        for r in self.relators:
            if r.syllables and max(g for g, _ in r.syllables) >= n:
                raise PresentationError(f"relator uses a generator outside the alphabet of size {n}")

    @property
    def balanced(self) -> bool:
        return len(self.alphabet) == len(self.relators)

    def __str__(self) -> str:
        return dumps(self)


def baumslag_gersten() -> Presentation:
    """B = <x, t | x^(x^t) = x^2>, relator txTxtXTXX."""
    x = Word.gen(X)
    return Presentation(DEFAULT_ALPHABET, (build_V(1) * x ** -2,))


def second_relator(n: int) -> Word:
    if n < 1:
        raise ValueError("n must be a positive integer")
    # v_n only depends on floor(log2 n)
    return _second_relator(n.bit_length() - 1)


@lru_cache(maxsize=64)
def _second_relator(m: int) -> Word:
    v = build_V(m)
    v_inv = invert(v)
    x = Word.gen(X)
    out = Word()
    for k in (3, 5, 7):
        out = out * v * x ** k * v_inv * x ** -k
    return out * Word.gen(T, -1)


def build_Pn(n: int) -> Presentation:
    if n < 1:
        raise ValueError("n must be a positive integer")
    r2 = second_relator(n)
    if not r2:
        raise PresentationError(f"second relator of P_{n} reduced to the empty word")
    return Presentation(DEFAULT_ALPHABET, baumslag_gersten().relators + (r2,))


def trivial_presentation(alphabet: Sequence[str] = DEFAULT_ALPHABET) -> Presentation:
    return Presentation(tuple(alphabet), tuple(Word.gen(g) for g in range(len(alphabet))))


# -- file format ---------------------------------------------------------------

def dumps(p: Presentation) -> str:
    lines = ["gens: " + " ".join(p.alphabet)]
    lines += ["rel: " + format_word(r, p.alphabet) for r in p.relators]
    return "\n".join(lines) + "\n"


def loads(text: str) -> Presentation:
    alphabet = None
    relators = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise PresentationError(f"line {lineno}: expected 'gens:' or 'rel:'")
        key = key.strip()
        if key == "gens":
            if alphabet is not None:
                raise PresentationError(f"line {lineno}: duplicate gens line")
            alphabet = tuple(rest.split())
            if not alphabet or any(len(a) != 1 or not a.islower() for a in alphabet):
                raise PresentationError(f"line {lineno}: generators must be single lowercase letters")
        elif key == "rel":
            if alphabet is None:
                raise PresentationError(f"line {lineno}: rel before gens")
            try:
                relators.append(parse(rest, alphabet))
            except ValueError as exc:
                raise PresentationError(f"line {lineno}: {exc}") from None
        else:
            raise PresentationError(f"line {lineno}: unknown key {key!r}")
    if alphabet is None:
        raise PresentationError("missing gens line")
    return Presentation(alphabet, tuple(relators))


# -- Andrews-Curtis moves ------------------------------------------------------

@dataclass(frozen=True)
class ACMove:
    """``kind`` is 'invert' (i), 'multiply' (r_i <- r_i r_j) or 'conjugate'
    (r_i <- g r_i g^-1, with ``letter`` the signed generator g)."""

    kind: str
    i: int
    j: int = -1
    letter: int = 0

    def __str__(self):
        if self.kind == "invert":
            return f"invert {self.i}"
        if self.kind == "multiply":
            return f"multiply {self.i} {self.j}"
        return f"conjugate {self.i} {self.letter}"


def ac_move(p: Presentation, move: ACMove) -> Presentation:
    rels = list(p.relators)
    n = len(rels)
    if not 0 <= move.i < n:
        raise IndexError(f"relator index {move.i} out of range")
    if move.kind == "invert":
        rels[move.i] = invert(rels[move.i])
    elif move.kind == "multiply":
        if not 0 <= move.j < n:
            raise IndexError(f"relator index {move.j} out of range")
        if move.i == move.j:
            raise ValueError("multiply needs two distinct relators")
        rels[move.i] = rels[move.i] * rels[move.j]
    elif move.kind == "conjugate":
        g = abs(move.letter) - 1
        if move.letter == 0 or g >= len(p.alphabet):
            raise IndexError(f"conjugating letter {move.letter} outside the alphabet")
        rels[move.i] = conjugate(rels[move.i], Word.gen(g, 1 if move.letter > 0 else -1))
    else:
        raise ValueError(f"unknown AC move {move.kind!r}")
    return Presentation(p.alphabet, tuple(rels))


def replay(p: Presentation, moves: Sequence[ACMove]) -> Presentation:
    for m in moves:
        p = ac_move(p, m)
    return p


def _cyc_reduce(letters: Sequence[int]) -> Tuple[int, ...]:
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    return tuple(letters[i:j])


def _letter_key(a: int) -> Tuple[int, int]:
    # x < X < t < T < ...
    return (abs(a), 0 if a > 0 else 1)


def cyclic_canonical(letters: Sequence[int]) -> Tuple[int, ...]:
    """Least rotation of the cyclic reduction or of its inverse."""
    c = _cyc_reduce(letters)
    if not c:
        return ()
    best = None
    for w in (c, invert_letters(c)):
        for i in range(len(w)):
            rot = w[i:] + w[:i]
            key = [_letter_key(a) for a in rot]
            if best is None or key < best[0]:
                best = (key, rot)
    return best[1]


def canonical_key(p: Presentation) -> Tuple[Tuple[int, ...], ...]:
    forms = [cyclic_canonical(r.letter_tuple()) for r in p.relators]
    return tuple(sorted(forms, key=lambda w: [_letter_key(a) for a in w]))


# A search step is the composite "rotate r_i, multiply by a rotation of
# r_j^eps, cyclically reduce"; it expands to elementary moves for replay.

def _rotate_moves(i: int, letters: Tuple[int, ...], k: int) -> List[ACMove]:
    # conjugating u v (|u| = k) by the letters of u reversed-inverted gives v u
    return [ACMove("conjugate", i, letter=-a) for a in letters[:k]]


def _reduce_cyclically_moves(i: int, letters: Tuple[int, ...]) -> List[ACMove]:
    moves = []
    a, b = 0, len(letters)
    while b - a >= 2 and letters[a] == -letters[b - 1]:
        moves.append(ACMove("conjugate", i, letter=-letters[a]))
        a += 1
        b -= 1
    return moves


@dataclass
class ACSearchResult:
    moves: Optional[List[ACMove]]
    depth: Optional[int]
    explored: int
    capped: bool

    @property
    def found(self) -> bool:
        return self.moves is not None


def ac_search(
    p: Presentation,
    target: Presentation,
    max_depth: int,
    max_len: int,
    max_states: int = 10 ** 6,
) -> ACSearchResult:
    """Breadth-first search for an AC sequence from ``p`` to ``target``.

    States are deduplicated by :func:`canonical_key`.  Success means the
    returned elementary moves, replayed on ``p``, reach a presentation with
    the same canonical key as ``target``.
    """
    if p.alphabet != target.alphabet or len(p.relators) != len(target.relators):
        raise PresentationError("AC search needs presentations over the same alphabet with equal relator counts")
    goal = canonical_key(target)
    start = tuple(_cyc_reduce(r.letter_tuple()) for r in p.relators)
    prefix = []
    for i, r in enumerate(p.relators):
        prefix += _reduce_cyclically_moves(i, r.letter_tuple())
    if canonical_key(p) == goal:
        return ACSearchResult([], 0, 1, False)

    parent = {_key_of(start): None}
    frontier = deque([(start, 0)])
    while frontier:
        state, depth = frontier.popleft()
        if depth >= max_depth:
            continue
        for moves, nxt in _composite_steps(state, max_len):
            key = _key_of(nxt)
            if key in parent:
                continue
            parent[key] = (_key_of(state), state, moves, nxt)
            if key == goal:
                path = _unwind(parent, key)
                return ACSearchResult(prefix + path, depth + 1, len(parent), False)
            if len(parent) >= max_states:
                return ACSearchResult(None, None, len(parent), True)
            frontier.append((nxt, depth + 1))
    # bounded search: a miss is never a disproof
    return ACSearchResult(None, None, len(parent), True)


def _key_of(state: Tuple[Tuple[int, ...], ...]):
    forms = [cyclic_canonical(r) for r in state]
    return tuple(sorted(forms, key=lambda w: [_letter_key(a) for a in w]))


def _unwind(parent, key) -> List[ACMove]:
    chunks = []
    while parent[key] is not None:
        prev_key, _, moves, _ = parent[key]
        chunks.append(moves)
        key = prev_key
    out: List[ACMove] = []
    for c in reversed(chunks):
        out += c
    return out


def _composite_steps(state, max_len):
    n = len(state)
    for i in range(n):
        ri = state[i]
        for j in range(n):
            if i == j:
                continue
            rj = state[j]
            for eps in (1, -1):
                base = rj if eps == 1 else invert_letters(rj)
                for b in range(max(len(base), 1)):
                    rot_j = base[b:] + base[:b]
                    for a in range(max(len(ri), 1)):
                        rot_i = ri[a:] + ri[:a]
                        prod = _free(rot_i + rot_j)
                        new = _cyc_reduce(prod)
                        if len(new) > max_len:
                            continue
                        moves = _rotate_moves(i, ri, a)
                        if eps == -1:
                            moves.append(ACMove("invert", j))
                        moves += _rotate_moves(j, base, b)
                        moves.append(ACMove("multiply", i, j))
                        # restore r_j
                        moves += _rotate_moves(j, rot_j, len(base) - b if b else 0)
                        if eps == -1:
                            moves.append(ACMove("invert", j))
                        moves += _reduce_cyclically_moves(i, prod)
                        yield moves, state[:i] + (new,) + state[i + 1:]


def _free(letters: Sequence[int]) -> Tuple[int, ...]:
    stack: list = []
    for a in letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)
