"""Brute-force reference implementations, kept independent of the package code."""
import itertools
from collections import deque

import numpy as np


# -- words: string based, letters are characters ------------------------------------

def naive_reduce(s: str) -> str:
    s = s.replace(" ", "")
    changed = True
    while changed:
        changed = False
        for i in range(len(s) - 1):
            a, b = s[i], s[i + 1]
            if a != b and a.lower() == b.lower():
                s = s[:i] + s[i + 2:]
                changed = True
                break
    return s


def naive_inverse(s: str) -> str:
    return "".join(c.swapcase() for c in reversed(s))


# -- relator insertion search (no closing shortcut) ----------------------------------

def brute_dehn(word: str, relators, max_len: int, max_depth: int):
    """Least number of relator-rotation insertions reducing ``word`` to ''."""
    pieces = set()
    for r in relators:
        for w in (r, naive_inverse(r)):
            for i in range(len(w)):
                pieces.add(w[i:] + w[:i])
    pieces = sorted(pieces)
    start = naive_reduce(word)
    if start == "":
        return 0
    seen = {start}
    layer = [start]
    for depth in range(1, max_depth + 1):
        nxt_layer = []
        for u in layer:
            for piece in pieces:
                for pos in range(len(u) + 1):
                    v = naive_reduce(u[:pos] + piece + u[pos:])
                    if v == "":
                        return depth
                    if len(v) <= max_len and v not in seen:
                        seen.add(v)
                        nxt_layer.append(v)
        layer = nxt_layer
    return None


# -- simplicial complexes --------------------------------------------------------------

_PERMS = {}


def brute_canonical(facets):
    """Least sorted facet list over *all* vertex relabelings onto 0..n-1."""
    verts = sorted({v for f in facets for v in f})
    n = len(verts)
    if n not in _PERMS:
        _PERMS[n] = np.array(list(itertools.permutations(range(n))), dtype=np.int16)
    perms = _PERMS[n]
    index = {v: i for i, v in enumerate(verts)}
    fa = np.array([[index[v] for v in f] for f in facets], dtype=np.int64)
    relabeled = np.sort(perms[:, fa].astype(np.int64), axis=2)
    base = n + 1
    codes = np.zeros(relabeled.shape[:2], dtype=np.int64)
    for k in range(relabeled.shape[2]):
        codes = codes * base + relabeled[:, :, k]
    codes.sort(axis=1)
    # pack consecutive codes into int64 words (radix base**width) for one lexsort
    width = base ** relabeled.shape[2]
    per_word = max(1, int(62 // np.log2(width + 1)))
    words = []
    for start in range(0, codes.shape[1], per_word):
        chunk = codes[:, start:start + per_word]
        packed = np.zeros(codes.shape[0], dtype=np.int64)
        for k in range(chunk.shape[1]):
            packed = packed * width + chunk[:, k]
        packed = packed * width ** (per_word - chunk.shape[1])
        words.append(packed)
    best = np.lexsort(words[::-1])[0]
    return tuple(codes[best].tolist())


def brute_link(facets, face):
    s = set(face)
    return sorted(tuple(sorted(set(f) - s)) for f in facets if s <= set(f))


def brute_moves(dim, facets):
    """All (A, B) with link(A) = boundary of B and B not a face; B excludes the
    fresh-vertex subdivisions, which are returned as facets separately."""
    verts = sorted({v for f in facets for v in f})
    fsets = [set(f) for f in facets]
    out = set()
    for k in range(1, dim + 1):  # |A| = k, i = dim + 1 - k >= 1
        for a in itertools.combinations(verts, k):
            lk = brute_link(facets, a)
            if not lk:
                continue
            i = dim + 1 - k
            bverts = sorted({v for f in lk for v in f})
            if len(bverts) != i + 1:
                continue
            boundary = sorted(tuple(c) for c in itertools.combinations(bverts, i))
            if lk != boundary:
                continue
            if any(set(bverts) <= f for f in fsets):
                continue
            out.add((tuple(a), tuple(bverts)))
    return out


# -- filling length ---------------------------------------------------------------------

def _rot(w):
    return [w[i:] + w[:i] for i in range(len(w))] or [()]


def _canon(w):
    return min(_rot(tuple(w)))


def _inv(w):
    return tuple(-a for a in reversed(w))


def naive_loop_neighbors(w, cells, ngens, max_len):
    w = tuple(w)
    out = set()
    letters = [a for g in range(1, ngens + 1) for a in (g, -g)]
    for r in _rot(w):
        if len(r) >= 2 and r[0] == -r[1]:
            out.add(_canon(r[2:]))
        if len(r) + 2 <= max_len:
            for a in letters:
                out.add(_canon((a, -a) + r))
    for c in cells:
        for cc in (tuple(c), _inv(c)):
            for rho in _rot(cc):
                for k in range(len(rho) + 1):
                    arc, rep = rho[:k], _inv(rho[k:])
                    if len(arc) > len(w):
                        continue
                    for r in _rot(w):
                        if r[:k] == arc and len(w) - k + len(rep) <= max_len:
                            out.add(_canon(rep + r[k:]))
    return out


def brute_fl(loop, cells, ngens, max_len):
    """Smallest threshold T for which the empty loop is reachable from ``loop``
    through loops of length <= T (plain BFS per threshold)."""
    start = _canon(loop)
    for thr in range(len(start), max_len + 1):
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            if u == ():
                return thr
            for v in naive_loop_neighbors(u, cells, ngens, thr):
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
    return None


# -- finite group evaluation ------------------------------------------------------------

S3 = list(itertools.permutations(range(3)))


def _compose(p, q):
    # apply q then p
    return tuple(p[q[i]] for i in range(len(q)))


def _perm_inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def evaluate(letters, images):
    result = tuple(range(3))
    for a in letters:
        g = images[abs(a) - 1]
        result = _compose(result, g if a > 0 else _perm_inverse(g))
    return result


def s3_satisfying(relators, ngens):
    """Assignments of generators into S3 under which every relator is trivial."""
    ident = tuple(range(3))
    sat = set()
    for images in itertools.product(S3, repeat=ngens):
        if all(evaluate(r, images) == ident for r in relators):
            sat.add(images)
    return sat
