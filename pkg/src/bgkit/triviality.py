"""Coset enumeration and relator-application (Dehn) probes."""
from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import tower
from .presentations import Presentation, baumslag_gersten
from .words import Word, X, build_V, invert_letters


class CosetOverflow(RuntimeError):
    def __init__(self, stats: dict):
        super().__init__(f"coset table exceeded {stats['max_cosets']} cosets")
        self.stats = stats


@dataclass
class EnumerationResult:
    order: int
    defined: int
    max_live: int
    seconds: float
    table: List[List[int]] = field(repr=False, default_factory=list)


class CosetTable:
    """Felsch-style coset enumeration over the trivial subgroup (or ``subgroup``).

    Column ``2g`` is generator g, column ``2g + 1`` its inverse.  Coset 0 is
    the subgroup coset.  Coincidences go through a union-find forest.
    """

    def __init__(self, ngens: int, relators: Sequence[Sequence[int]], max_cosets: int,
                 subgroup: Sequence[Sequence[int]] = ()):
        self.ncols = 2 * ngens
        self.max_cosets = max_cosets
        rels = [tuple(_col(a) for a in r) for r in relators if r]
        self.rels = rels
        self.subgroup = [tuple(_col(a) for a in w) for w in subgroup if w]
        # cyclic conjugates of every relator and its inverse, keyed by first column
        self.conjugates: List[List[Tuple[int, ...]]] = [[] for _ in range(self.ncols)]
        seen = set()
        for r in rels:
            for w in (r, tuple(c ^ 1 for c in reversed(r))):
                for i in range(len(w)):
                    rot = w[i:] + w[:i]
                    if rot not in seen:
                        seen.add(rot)
                        self.conjugates[rot[0]].append(rot)
        self.table: List[List[int]] = [[-1] * self.ncols]
        self.parent = [0]
        self.deductions: List[Tuple[int, int]] = []
        self.queue: List[int] = []
        self.live = 1
        self.defined = 1
        self.max_live = 1

    # union-find
    def rep(self, c: int) -> int:
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def _merge(self, a: int, b: int) -> None:
        a, b = self.rep(a), self.rep(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            self.queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        table = self.table
        self._merge(a, b)
        i = 0
        while i < len(self.queue):
            g = self.queue[i]
            i += 1
            row = table[g]
            for x in range(self.ncols):
                d = row[x]
                if d < 0:
                    continue
                xi = x ^ 1
                if table[d][xi] == g:
                    table[d][xi] = -1
                mu, nu = self.rep(g), self.rep(d)
                if table[mu][x] >= 0:
                    self._merge(nu, table[mu][x])
                elif table[nu][xi] >= 0:
                    self._merge(mu, table[nu][xi])
                else:
                    table[mu][x] = nu
                    table[nu][xi] = mu
                    self.deductions.append((mu, x))
        self.live -= len(self.queue)
        self.queue.clear()

    def define(self, c: int, x: int) -> int:
        if self.defined >= self.max_cosets:
            raise CosetOverflow({
                "max_cosets": self.max_cosets,
                "defined": self.defined,
                "live": self.live,
                "max_live": self.max_live,
            })
        new = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(new)
        self.table[c][x] = new
        self.table[new][x ^ 1] = c
        self.defined += 1
        self.live += 1
        self.max_live = max(self.max_live, self.live)
        self.deductions.append((c, x))
        return new

    def scan(self, c: int, w: Tuple[int, ...], fill: bool = False) -> None:
        table = self.table
        f, i = c, 0
        b, j = c, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != c:
                    self.coincidence(f, c)
                return
            while j >= i and table[b][w[j] ^ 1] >= 0:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                self.deductions.append((f, w[i]))
                return
            if not fill:
                return
            self.define(f, w[i])

    def process_deductions(self) -> None:
        table, parent = self.table, self.parent
        while self.deductions:
            c, x = self.deductions.pop()
            if parent[c] != c:
                continue
            for w in self.conjugates[x]:
                self.scan(c, w)
                if parent[c] != c:
                    break
            if parent[c] != c:
                continue
            d = table[c][x]
            if d >= 0 and parent[d] == d:
                for w in self.conjugates[x ^ 1]:
                    self.scan(d, w)
                    if parent[d] != d:
                        break

    def run(self) -> int:
        for w in self.subgroup:
            self.scan(0, w, fill=True)
            self.process_deductions()
        # relators must hold at the subgroup coset even before any deduction
        for r in self.rels:
            self.scan(0, r, fill=True)
            self.process_deductions()
        c = 0
        table, parent = self.table, self.parent
        while c < len(table):
            if parent[c] == c:
                row = table[c]
                for x in range(self.ncols):
                    if parent[c] != c:
                        break
                    if row[x] < 0:
                        self.define(c, x)
                        self.process_deductions()
            c += 1
        return self.live

    def compact(self) -> List[List[int]]:
        live = [c for c in range(len(self.table)) if self.parent[c] == c]
        index = {c: i for i, c in enumerate(live)}
        return [[index[self.table[c][x]] for x in range(self.ncols)] for c in live]


def _col(letter: int) -> int:
    return 2 * (abs(letter) - 1) + (0 if letter > 0 else 1)


def coset_enumerate(p: Presentation, max_cosets: int = 10 ** 6) -> EnumerationResult:
    """Order of the group presented by ``p``; raises :class:`CosetOverflow`."""
    if not p.relators or any(not r for r in p.relators):
        raise ValueError("coset enumeration needs nonempty relators")
    start = time.perf_counter()
    ct = CosetTable(len(p.alphabet), [r.letter_tuple() for r in p.relators], max_cosets)
    order = ct.run()
    return EnumerationResult(order, ct.defined, ct.max_live, time.perf_counter() - start, ct.compact())


def relators_hold(table: List[List[int]], relators: Sequence[Sequence[int]]) -> bool:
    """Every relator traces a closed path from every coset of a complete table."""
    for c in range(len(table)):
        for r in relators:
            d = c
            for a in r:
                d = table[d][_col(a)]
                if d < 0:
                    return False
            if d != c:
                return False
    return True


# -- Dehn probe -----------------------------------------------------------------

@dataclass(frozen=True)
class Insertion:
    position: int
    relator: int
    rotation: int
    sign: int  # +1 inserts a rotation of r, -1 of r^-1


@dataclass
class DehnProbeResult:
    word: Word
    applications: Optional[int]
    explored: int
    capped: bool
    certificate: List[Insertion] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def found(self) -> bool:
        return self.applications is not None


def _free(letters) -> Tuple[int, ...]:
    stack: list = []
    for a in letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


def _cyc(letters: Tuple[int, ...]) -> Tuple[Tuple[int, ...], int]:
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    return letters[i:j], i


def _pieces(relators: Sequence[Tuple[int, ...]]):
    """(relator index, sign, rotation offset, letters) for every cyclic rotation."""
    out = []
    seen = set()
    for k, r in enumerate(relators):
        for sign, w in ((1, r), (-1, invert_letters(r))):
            for i in range(len(w)):
                rot = w[i:] + w[:i]
                if rot in seen:
                    continue
                seen.add(rot)
                out.append((k, sign, i, rot))
    return out


def apply_insertion(letters: Sequence[int], relators: Sequence[Tuple[int, ...]], ins: Insertion) -> Tuple[int, ...]:
    r = relators[ins.relator]
    w = r if ins.sign == 1 else invert_letters(r)
    rot = w[ins.rotation:] + w[:ins.rotation]
    return _free(tuple(letters[:ins.position]) + rot + tuple(letters[ins.position:]))


def replay_certificate(p: Presentation, w: Word, certificate: Sequence[Insertion]) -> bool:
    rels = [r.letter_tuple() for r in p.relators]
    u = w.letter_tuple()
    for ins in certificate:
        if not 0 <= ins.position <= len(u):
            return False
        u = apply_insertion(u, rels, ins)
    return u == ()


def dehn_probe(p: Presentation, w: Word, max_len: int, max_states: int) -> DehnProbeResult:
    """Fewest relator-rotation insertions (with free reduction) taking ``w`` to 1.

    Breadth-first over freely reduced words of length <= ``max_len``.  A word
    one insertion away from 1 is exactly a free conjugate of a relator or its
    inverse, which is tested directly instead of expanding that last layer.
    """
    start_time = time.perf_counter()
    rels = [r.letter_tuple() for r in p.relators]
    pieces = _pieces(rels)
    closing = {}
    for k, sign, off, rot in pieces:
        # inserting the inverse rotation closes a conjugate of rot
        closing.setdefault(rot, (k, -sign, off))
    start = w.letter_tuple()

    def done(result_apps, cert, explored, capped):
        return DehnProbeResult(w, result_apps, explored, capped, cert, time.perf_counter() - start_time)

    if not start:
        return done(0, [], 1, False)

    longest = max((len(rot) for *_, rot in pieces), default=0)
    parent: Dict[Tuple[int, ...], Optional[Tuple[Tuple[int, ...], Insertion]]] = {start: None}
    frontier = deque([start])
    pruned = False
    while frontier:
        u = frontier.popleft()
        core, depth_in = _cyc(u)
        hit = closing.get(core)
        if hit is not None:
            k, sign, off = hit
            r = rels[k] if sign == 1 else invert_letters(rels[k])
            # core is rot(r^-sign, off); its inverse is a rotation of r^sign
            inv_off = (len(r) - off) % len(r)
            last = Insertion(depth_in, k, inv_off, sign)
            cert = _unwind(parent, u) + [last]
            return done(len(cert), cert, len(parent), False)
        if len(u) - longest > max_len:
            # one insertion shortens by at most the longest rotation
            pruned = True
            continue
        for k, sign, off, rot in pieces:
            for pos in range(len(u) + 1):
                nxt = _free(u[:pos] + rot + u[pos:])
                if len(nxt) > max_len:
                    pruned = True
                    continue
                if nxt in parent:
                    continue
                parent[nxt] = (u, Insertion(pos, k, off, sign))
                if not nxt:
                    cert = _unwind(parent, nxt)
                    return done(len(cert), cert, len(parent), False)
                if len(parent) >= max_states:
                    return done(None, [], len(parent), True)
                frontier.append(nxt)
    return done(None, [], len(parent), pruned)


def _unwind(parent, u) -> List[Insertion]:
    out = []
    while parent[u] is not None:
        u, ins = parent[u]
        out.append(ins)
    return out[::-1]


def power_word(m: int) -> Word:
    """V_m * x^-E(m), trivial in the Baumslag-Gersten group."""
    e = tower.E(m)
    if not e.is_exact or e.exact > 1 << 24:
        raise OverflowError(f"E({m}) is too large to write as an explicit power")
    return build_V(m) * Word.gen(X, -e.exact)


def power_check(m: int, max_len: int = 32, max_states: int = 10 ** 6) -> DehnProbeResult:
    return dehn_probe(baumslag_gersten(), power_word(m), max_len, max_states)
