"""Combinatorial filling length on 2-complexes.

A loop is a cyclic word of signed edges.  One elementary homotopy either
inserts or deletes a backtrack ``e e^-1``, or swaps an arc of a 2-cell
boundary for the complementary arc (arcs of length 0 and the full boundary
included, so a whole cell can be pushed across).  The filling length of a
loop is the least, over contractions, of the longest intermediate loop; it
is found with a bottleneck-path Dijkstra over canonical loops.
"""
from __future__ import annotations

import csv
import heapq
import io
import itertools
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .presentations import Presentation, build_Pn
from .words import invert_letters

Loop = Tuple[int, ...]


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class TwoComplex:
    """``edges[e] = (tail, head)``; letter ``e + 1`` runs tail -> head and
    ``-(e + 1)`` back.  Each cell is a closed edge path (letter tuple)."""

    nvertices: int
    edges: Tuple[Tuple[int, int], ...]
    cells: Tuple[Loop, ...]
    edge_names: Tuple[str, ...] = ()

    def __post_init__(self):
        for k, c in enumerate(self.cells):
            if not c:
                raise ComplexError(f"cell {k} has an empty boundary")
            for a, b in zip(c, c[1:] + c[:1]):
                if self.head(a) != self.tail(b):
                    raise ComplexError(f"cell {k} boundary is not a closed edge path")

    def tail(self, letter: int) -> int:
        u, v = self.edges[abs(letter) - 1]
        return u if letter > 0 else v

    def head(self, letter: int) -> int:
        u, v = self.edges[abs(letter) - 1]
        return v if letter > 0 else u

    def letters_from(self, vertex: int) -> List[int]:
        out = []
        for e, (u, v) in enumerate(self.edges):
            if u == vertex:
                out.append(e + 1)
            if v == vertex:
                out.append(-(e + 1))
        return out

    def euler_characteristic(self) -> int:
        return self.nvertices - len(self.edges) + len(self.cells)

    def is_loop(self, word: Sequence[int]) -> bool:
        return all(self.head(a) == self.tail(b) for a, b in zip(word, tuple(word[1:]) + tuple(word[:1])))

    def parse_loop(self, text: str) -> Loop:
        if not self.edge_names:
            raise ComplexError("complex has no edge names")
        letters = []
        index = {n: i for i, n in enumerate(self.edge_names)}
        for ch in text:
            if ch.isspace():
                continue
            if ch in index:
                letters.append(index[ch] + 1)
            elif ch.lower() in index and ch != ch.lower():
                letters.append(-(index[ch.lower()] + 1))
            else:
                raise ComplexError(f"unknown edge letter {ch!r}")
        if not self.is_loop(letters):
            raise ComplexError(f"{text!r} is not a closed edge path")
        return canonical_loop(letters)

    def format_loop(self, loop: Sequence[int]) -> str:
        return "".join(
            self.edge_names[abs(a) - 1] if a > 0 else self.edge_names[abs(a) - 1].upper() for a in loop
        )


def presentation_complex(p: Presentation) -> TwoComplex:
    """One vertex, one edge per generator, one 2-cell per relator."""
    if any(not r for r in p.relators):
        raise ComplexError("empty relator has no 2-cell")
    return TwoComplex(
        nvertices=1,
        edges=tuple((0, 0) for _ in p.alphabet),
        cells=tuple(r.letter_tuple() for r in p.relators),
        edge_names=p.alphabet,
    )


def canonical_loop(word: Sequence[int]) -> Loop:
    w = tuple(word)
    if not w:
        return ()
    return min(w[i:] + w[:i] for i in range(len(w)))


def _arc_table(x: TwoComplex) -> Dict[Loop, List[Loop]]:
    """Arc of some cell-boundary rotation -> replacements (inverse complement)."""
    table: Dict[Loop, set] = {}
    for c in x.cells:
        for w in (c, invert_letters(c)):
            for i in range(len(w)):
                rho = w[i:] + w[:i]
                for a in range(len(rho) + 1):
                    table.setdefault(rho[:a], set()).add(invert_letters(rho[a:]))
    return {arc: sorted(reps) for arc, reps in table.items()}


class LoopSpace:
    """Neighbor generator for one complex (arc table built once)."""

    def __init__(self, x: TwoComplex):
        self.x = x
        arcs = _arc_table(x)
        self.inserts = arcs.pop((), [])
        self.arcs = arcs
        self.max_arc = max((len(a) for a in arcs), default=0)

    def neighbors(self, s: Loop, max_len: int) -> List[Loop]:
        x = self.x
        w = tuple(s)
        n = len(w)
        out = set()
        # backtrack removal (cyclically adjacent inverse pair)
        if n >= 2:
            for p in range(n):
                if w[p] == -w[(p + 1) % n]:
                    out.add(w[p + 2:] + w[:p] if p + 1 < n else w[1:n - 1])
        # backtrack insertion
        if n + 2 <= max_len:
            if n == 0:
                for v in range(x.nvertices):
                    for a in x.letters_from(v):
                        out.add((a, -a))
            else:
                for p in range(n):
                    v = x.tail(w[p])
                    for a in x.letters_from(v):
                        out.add(w[p:] + w[:p] + (a, -a))
        # whole-boundary insertion (empty arc)
        for rep in self.inserts:
            if n + len(rep) > max_len:
                continue
            if n == 0:
                out.add(rep)
            else:
                start = x.tail(rep[0])
                for p in range(n):
                    if x.tail(w[p]) == start:
                        out.add(rep + w[p:] + w[:p])
        # arc replacement
        if n:
            ww = w + w
            for p in range(n):
                for a in range(1, min(n, self.max_arc) + 1):
                    reps = self.arcs.get(ww[p:p + a])
                    if reps is None:
                        continue
                    rest = ww[p + a:p + n]
                    for rep in reps:
                        if n - a + len(rep) <= max_len:
                            out.add(rep + rest)
        return sorted(canonical_loop(o) for o in out)


def neighbors(s: Loop, x: TwoComplex, max_len: int) -> List[Loop]:
    return LoopSpace(x).neighbors(canonical_loop(s), max_len)


@dataclass
class FillResult:
    loop: Loop
    fl: Optional[int]
    lower_bound: int
    explored: int
    capped: bool
    path: List[Loop] = field(default_factory=list)


def filling_length(gamma: Sequence[int], x: TwoComplex, max_len: int, max_states: int,
                   space: Optional[LoopSpace] = None) -> FillResult:
    start = canonical_loop(gamma)
    if not x.is_loop(start):
        raise ComplexError("not a closed edge path")
    space = space or LoopSpace(x)
    if len(start) > max_len:
        return FillResult(start, None, len(start), 0, True)
    best = {start: len(start)}
    parent: Dict[Loop, Optional[Loop]] = {start: None}
    heap = [(len(start), start)]
    settled = set()
    level = len(start)
    while heap:
        b, s = heapq.heappop(heap)
        if s in settled:
            continue
        settled.add(s)
        level = b
        if not s:
            path = [s]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return FillResult(start, b, b, len(best), False, path[::-1])
        if len(best) >= max_states:
            return FillResult(start, None, level, len(best), True)
        for t in space.neighbors(s, max_len):
            nb = max(b, len(t))
            if nb < best.get(t, max_len + 1):
                best[t] = nb
                parent[t] = s
                heapq.heappush(heap, (nb, t))
    # every loop of length <= max_len reachable from gamma was settled
    return FillResult(start, None, max_len + 1, len(best), True)


def reduced_loops(x: TwoComplex, max_loop_len: int) -> List[Loop]:
    """Cyclically reduced closed edge paths, one per rotation class."""
    letters = sorted({a for e in range(len(x.edges)) for a in (e + 1, -(e + 1))})
    out = []
    for n in range(1, max_loop_len + 1):
        for w in itertools.product(letters, repeat=n):
            if any(w[i] == -w[(i + 1) % n] for i in range(n)):
                continue
            if canonical_loop(w) != w or not x.is_loop(w):
                continue
            out.append(w)
    return out


@dataclass
class RatioResult:
    ratio: Fraction
    witness: Optional[Loop]
    loops: int
    partial: bool


def Fl_ratio(x: TwoComplex, max_loop_len: int, max_len: int, max_states: int) -> RatioResult:
    """max fl(g)/len(g) over reduced loops of length <= ``max_loop_len``.

    A loop whose search is capped contributes its lower bound and marks the
    result partial; the value stays a lower bound on the true supremum.
    """
    space = LoopSpace(x)
    best, witness, partial = Fraction(0), None, False
    loops = reduced_loops(x, max_loop_len)
    for g in loops:
        r = filling_length(g, x, max_len, max_states, space)
        partial |= r.capped
        value = Fraction(r.fl if r.fl is not None else r.lower_bound, len(g))
        if witness is None or value > best:
            best, witness = value, g
    return RatioResult(best, witness, len(loops), partial)


@dataclass
class GrowthRow:
    n: int
    generator: str
    fl_or_bound: int
    states: int
    capped: bool


GROWTH_FIELDS = ["n", "generator", "fl_or_bound", "states", "capped"]


def growth_probe(n_list: Iterable[int], max_len: int, max_states: int) -> List[GrowthRow]:
    rows = []
    for n in n_list:
        x = presentation_complex(build_Pn(n))
        space = LoopSpace(x)
        for g, name in enumerate(x.edge_names):
            r = filling_length((g + 1,), x, max_len, max_states, space)
            value = r.fl if r.fl is not None else r.lower_bound
            rows.append(GrowthRow(n, name, value, r.explored, r.capped))
    return rows


def growth_csv(rows: Sequence[GrowthRow]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=GROWTH_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(asdict(r))
    return buf.getvalue()


def growth_json(rows: Sequence[GrowthRow]) -> str:
    return json.dumps([asdict(r) for r in rows], sort_keys=True)


def growth_from_json(text: str) -> List[GrowthRow]:
    return [GrowthRow(**d) for d in json.loads(text)]
