"""Closed simplicial d-manifolds (d <= 4) given by facets, and bistellar moves.

A move is a pair (A, B): A is a face whose link is the boundary of the
simplex B, and B is not already a face.  Applying it swaps A * dB for
dA * B.  With |B| = i + 1 the move removes i + 1 facets and adds d + 1 - i.
For i = 0, B is a single fresh vertex (the 1 -> d+1 subdivision).
"""
from __future__ import annotations

import heapq
import itertools
import random
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

Facet = Tuple[int, ...]


class TriangulationError(ValueError):
    pass


class Triangulation:
    """Pure simplicial complex given by its facets (sorted vertex tuples)."""

    __slots__ = ("dim", "facets", "_faces", "_key")

    def __init__(self, dim: int, facets):
        self.dim = dim
        self.facets: Tuple[Facet, ...] = tuple(sorted(tuple(sorted(f)) for f in facets))
        self._faces = None
        self._key = None

    @property
    def key(self) -> FrozenSet[Facet]:
        if self._key is None:
            self._key = frozenset(self.facets)
        return self._key

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.dim == other.dim and self.facets == other.facets

    def __hash__(self):
        return hash((self.dim, self.facets))

    def __repr__(self):
        return f"Triangulation(dim={self.dim}, f={self.f_vector()})"

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(sorted({v for f in self.facets for v in f}))

    def faces(self) -> Dict[Facet, List[Facet]]:
        """Every nonempty face mapped to the facets containing it."""
        if self._faces is None:
            star: Dict[Facet, List[Facet]] = defaultdict(list)
            for f in self.facets:
                for k in range(1, len(f) + 1):
                    for a in itertools.combinations(f, k):
                        star[a].append(f)
            self._faces = dict(star)
        return self._faces

    def f_vector(self) -> Tuple[int, ...]:
        counts = Counter(len(a) for a in self.faces())
        return tuple(counts.get(k + 1, 0) for k in range(self.dim + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def link(self, face: Sequence[int]) -> Tuple[Facet, ...]:
        a = tuple(sorted(face))
        s = set(a)
        return tuple(sorted(tuple(v for v in f if v not in s) for f in self.faces().get(a, ())))

    def is_face(self, face: Sequence[int]) -> bool:
        return tuple(sorted(face)) in self.faces()

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "facets": [list(f) for f in self.facets],
            "f_vector": list(self.f_vector()),
            "euler_characteristic": self.euler_characteristic(),
        }


def dumps(t: Triangulation) -> str:
    return "".join([f"dim {t.dim}\n"] + [" ".join(map(str, f)) + "\n" for f in t.facets])


def loads(text: str) -> Triangulation:
    dim = None
    facets = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if dim is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "dim" or not parts[1].isdigit():
                raise TriangulationError(f"line {lineno}: expected 'dim <d>'")
            dim = int(parts[1])
            continue
        try:
            f = tuple(int(v) for v in line.split())
        except ValueError:
            raise TriangulationError(f"line {lineno}: facet vertices must be integers") from None
        if len(f) != dim + 1:
            raise TriangulationError(f"line {lineno}: facet needs {dim + 1} vertices, got {len(f)}")
        facets.append(f)
    if dim is None:
        raise TriangulationError("missing 'dim' line")
    return Triangulation(dim, facets)


def boundary_of_simplex(d_plus_1: int) -> Triangulation:
    """Boundary of the (d+1)-simplex on vertices 0..d+1, a d-sphere."""
    if d_plus_1 < 2:
        raise ValueError("need d + 1 >= 2")
    return Triangulation(d_plus_1 - 1, itertools.combinations(range(d_plus_1 + 1), d_plus_1))


# -- moves ----------------------------------------------------------------------

@dataclass(frozen=True)
class BistellarMove:
    A: Facet
    B: Facet

    @property
    def i(self) -> int:
        return len(self.B) - 1

    @property
    def removed(self) -> int:
        return len(self.B)

    @property
    def added(self) -> int:
        return len(self.A)

    def __str__(self):
        return f"{self.removed}->{self.added} A={list(self.A)} B={list(self.B)}"


def fresh_vertex(t: Triangulation) -> int:
    used = set(t.vertices)
    v = 0
    while v in used:
        v += 1
    return v


def _boundary_vertices(link: Sequence[Facet], i: int) -> Optional[Facet]:
    """Vertex set of B when ``link`` is the boundary of an i-simplex."""
    if len(link) != i + 1:
        return None
    verts = sorted({v for f in link for v in f})
    if len(verts) != i + 1 or any(len(f) != i for f in link) or len(set(link)) != i + 1:
        return None
    return tuple(verts)


def enumerate_moves(t: Triangulation, max_vertices: Optional[int] = None) -> List[BistellarMove]:
    d = t.dim
    faces = t.faces()
    moves = []
    allow_new = max_vertices is None or len(t.vertices) < max_vertices
    if allow_new:
        v = fresh_vertex(t)
        moves += [BistellarMove(f, (v,)) for f in t.facets]
    for a in sorted(faces, key=lambda a: (-len(a), a)):
        i = d + 1 - len(a)
        if i < 1:
            continue
        b = _boundary_vertices(t.link(a), i)
        if b is not None and b not in faces:
            moves.append(BistellarMove(a, b))
    return moves


def check_move(t: Triangulation, m: BistellarMove) -> Optional[str]:
    d = t.dim
    i = m.i
    if len(m.A) + len(m.B) != d + 2:
        return f"|A| + |B| must be {d + 2}"
    if set(m.A) & set(m.B):
        return "A and B share a vertex"
    if not t.is_face(m.A):
        return f"A={list(m.A)} is not a face"
    if i == 0:
        if m.B[0] in t.vertices:
            return f"vertex {m.B[0]} is not fresh"
        return None
    if t.is_face(m.B):
        return f"B={list(m.B)} is already a face"
    if _boundary_vertices(t.link(m.A), i) != tuple(sorted(m.B)):
        return f"link of A={list(m.A)} is not the boundary of B={list(m.B)}"
    return None


def apply_move(t: Triangulation, m: BistellarMove) -> Triangulation:
    problem = check_move(t, m)
    if problem:
        raise TriangulationError(f"invalid move {m}: {problem}")
    a, b = m.A, m.B
    remove = {tuple(sorted(a + s)) for s in itertools.combinations(b, len(b) - 1)}
    add = {tuple(sorted(s + b)) for s in itertools.combinations(a, len(a) - 1)}
    facets = [f for f in t.facets if f not in remove] + sorted(add)
    return Triangulation(t.dim, facets)


def inverse_move(t_after: Triangulation, m: BistellarMove) -> BistellarMove:
    """The move undoing ``m`` on the triangulation it produced."""
    if len(m.A) == 1:
        # (d+1) -> 1 removed a vertex; undo subdivides B with a fresh vertex
        return BistellarMove(tuple(sorted(m.B)), (fresh_vertex(t_after),))
    return BistellarMove(tuple(sorted(m.B)), tuple(sorted(m.A)))


# -- canonical form ---------------------------------------------------------------

def _refine(colors: Dict[int, int], star: Dict[int, List[Facet]]) -> Dict[int, int]:
    ncls = len(set(colors.values()))
    while True:
        sig = {}
        for v, c in colors.items():
            around = sorted(tuple(sorted(colors[u] for u in f if u != v)) for f in star[v])
            sig[v] = (c, tuple(around))
        order = {s: r for r, s in enumerate(sorted(set(sig.values())))}
        colors = {v: order[s] for v, s in sig.items()}
        if len(order) == ncls:
            return colors
        ncls = len(order)


def _canonical(dim: int, facets: Tuple[Facet, ...]) -> Tuple[Tuple[Facet, ...], Tuple[Tuple[int, int], ...]]:
    star: Dict[int, List[Facet]] = defaultdict(list)
    for f in facets:
        for v in f:
            star[v].append(f)
    verts = sorted(star)
    best: list = [None, ()]

    def search(colors):
        colors = _refine(colors, star)
        cells: Dict[int, List[int]] = defaultdict(list)
        for v, c in colors.items():
            cells[c].append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            form = tuple(sorted(tuple(sorted(colors[v] for v in f)) for f in facets))
            if best[0] is None or form < best[0]:
                best[0], best[1] = form, tuple(sorted(colors.items()))
            return
        for v in sorted(target):
            search({u: 2 * c + (0 if u == v else 1) for u, c in colors.items()})

    search({v: 0 for v in verts})
    return best[0] or (), best[1]


@lru_cache(maxsize=1 << 16)
def _canonical_cached(dim: int, facets: Tuple[Facet, ...]):
    return _canonical(dim, facets)


def canonical_form(t: Triangulation) -> Tuple[Facet, ...]:
    """Relabeling of ``t`` onto 0..n-1 that is identical for isomorphic inputs.

    The least sorted facet list over all labelings compatible with the
    refined vertex colouring (individualization-refinement backtracking).
    """
    return _canonical_cached(t.dim, t.facets)[0]


def canonical_labeling(t: Triangulation) -> Dict[int, int]:
    """Vertex map sending ``t`` onto :func:`canonical_form`."""
    return dict(_canonical_cached(t.dim, t.facets)[1])


def canonical_triangulation(t: Triangulation) -> Triangulation:
    return Triangulation(t.dim, canonical_form(t))


def isomorphic(a: Triangulation, b: Triangulation) -> bool:
    return a.dim == b.dim and canonical_form(a) == canonical_form(b)


# -- search ---------------------------------------------------------------------

@dataclass
class DistanceResult:
    distance: Optional[int]
    explored: int
    radius: int
    capped: bool
    path: List[Tuple[Facet, ...]] = field(default_factory=list)


def bfs_distance(a: Triangulation, b: Triangulation, max_vertices: int, max_states: int) -> DistanceResult:
    """Fewest bistellar moves between the isomorphism classes of ``a`` and ``b``,
    searching only through triangulations with at most ``max_vertices`` vertices."""
    if a.dim != b.dim:
        raise TriangulationError("triangulations have different dimensions")
    src, dst = canonical_form(a), canonical_form(b)
    if src == dst:
        return DistanceResult(0, 1, 0, False, [src])
    parent = {src: None}
    frontier = deque([(src, 0)])
    radius = 0
    while frontier:
        form, depth = frontier.popleft()
        radius = depth
        t = Triangulation(a.dim, form)
        for m in enumerate_moves(t, max_vertices):
            nxt = canonical_form(apply_move(t, m))
            if nxt in parent:
                continue
            parent[nxt] = form
            if nxt == dst:
                path = [nxt]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return DistanceResult(depth + 1, len(parent), depth + 1, False, path[::-1])
            if len(parent) >= max_states:
                return DistanceResult(None, len(parent), depth, True)
            frontier.append((nxt, depth + 1))
    # ball exhausted under the vertex cap
    return DistanceResult(None, len(parent), radius, True)


@dataclass
class WalkStep:
    move: BistellarMove
    f_vector: Tuple[int, ...]
    euler: int


@dataclass
class WalkResult:
    final: Triangulation
    steps: List[WalkStep]


def random_walk(t: Triangulation, steps: int, seed: int = 0, max_vertices: Optional[int] = None) -> WalkResult:
    rng = random.Random(seed)
    trace = []
    for _ in range(steps):
        moves = enumerate_moves(t, max_vertices)
        m = rng.choice(moves)
        t = apply_move(t, m)
        trace.append(WalkStep(m, t.f_vector(), t.euler_characteristic()))
    return WalkResult(t, trace)


# -- validation -------------------------------------------------------------------

@dataclass
class ValidationReport:
    ok: bool
    violations: List[Tuple[str, Tuple[int, ...]]] = field(default_factory=list)
    undetermined: List[Tuple[int, ...]] = field(default_factory=list)
    heuristic: bool = False

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [{"kind": k, "face": list(f)} for k, f in self.violations],
            "undetermined": [list(f) for f in self.undetermined],
            "heuristic": self.heuristic,
        }


def _pseudomanifold_violations(t: Triangulation) -> List[Tuple[str, Tuple[int, ...]]]:
    out = []
    d = t.dim
    for f, n in Counter(t.facets).items():
        if n > 1:
            out.append(("duplicate facet", f))
    for f in t.facets:
        if len(f) != d + 1 or len(set(f)) != d + 1:
            out.append(("facet is not a d-simplex", f))
    if out:
        return out
    if not t.facets:
        return [("empty complex", ())]
    ridges = Counter(r for f in t.facets for r in itertools.combinations(f, d))
    for r, n in sorted(ridges.items()):
        if n != 2:
            out.append((f"ridge in {n} facets", r))
    return out


def _connected(t: Triangulation) -> bool:
    if not t.facets:
        return False
    adj: Dict[int, set] = defaultdict(set)
    for f in t.facets:
        for v in f:
            adj[v].update(f)
    start = t.facets[0][0]
    seen = {start}
    stack = [start]
    while stack:
        for u in adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(t.vertices)


def recognize_sphere(t: Triangulation, max_states: int = 2000) -> Optional[bool]:
    """True / False when decided, None when the 3-sphere heuristic gives up."""
    d = t.dim
    if _pseudomanifold_violations(t):
        return False
    if d == 0:
        return len(t.facets) == 2
    if not _connected(t):
        return False
    for v in t.vertices:
        if recognize_sphere(Triangulation(d - 1, t.link((v,))), max_states) is False:
            return False
    expected = 1 + (-1) ** d
    if t.euler_characteristic() != expected:
        return False
    if d <= 2:
        return True
    if d > 3:
        return None
    # best-first descent toward the boundary of the 4-simplex, fewest
    # vertices then fewest facets first; giving up is not a verdict
    target = canonical_form(boundary_of_simplex(d + 1))
    start = canonical_form(t)
    seen = {start}
    heap = [(len(t.vertices), len(start), start)]
    cap = len(t.vertices)
    while heap and len(seen) < max_states:
        _, _, form = heapq.heappop(heap)
        if form == target:
            return True
        s = Triangulation(d, form)
        for m in enumerate_moves(s, cap):
            nxt = canonical_form(apply_move(s, m))
            if nxt not in seen:
                seen.add(nxt)
                nv = len({v for f in nxt for v in f})
                heapq.heappush(heap, (nv, len(nxt), nxt))
    return None


def validate(t: Triangulation, level: str = "pseudomanifold", max_states: int = 2000) -> ValidationReport:
    if level not in ("pseudomanifold", "links"):
        raise ValueError(f"unknown validation level {level!r}")
    violations = _pseudomanifold_violations(t)
    report = ValidationReport(not violations, violations)
    if violations or level == "pseudomanifold":
        return report
    d = t.dim
    if not _connected(t):
        report.violations.append(("complex is disconnected", ()))
    for v in t.vertices:
        lk = Triangulation(d - 1, t.link((v,)))
        status = recognize_sphere(lk, max_states)
        if status is False:
            report.violations.append((f"vertex link is not a {d - 1}-sphere", (v,)))
        elif status is None:
            report.undetermined.append((v,))
    report.heuristic = d >= 4
    report.ok = not report.violations
    return report


def facet_change(m: BistellarMove) -> int:
    """Net facet count change of ``m`` (6 - 2k in dimension 4)."""
    return m.added - m.removed


def expected_f_vector_of_boundary(d_plus_1: int) -> Tuple[int, ...]:
    return tuple(comb(d_plus_1 + 1, k + 1) for k in range(d_plus_1))
