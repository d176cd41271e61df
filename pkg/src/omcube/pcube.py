"""Partial-cube machinery on families embedded in Q_m.

A family is a partial cube when the graph it induces in Q_m (u ~ v iff
they differ in one coordinate) is connected and its shortest-path metric
equals Hamming distance.  Because everything stays embedded, the
Djokovic-Winkler classes are literally the non-constant coordinates; the
abstract relation only appears inside `is_partial_cube` as a cross-check
(convexity of both halfspaces of every class).
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, NamedTuple

import numpy as np

from .errors import PreconditionError
from .family import Family, mask_to_str, submasks

__all__ = [
    "PCube",
    "NotAntipodal",
    "is_partial_cube",
    "theta_and_halfspaces",
    "interval",
    "gate",
    "is_gated",
    "metric_projection",
    "antipodes",
    "contract_coordinate",
    "restrict_halfspace",
    "expand",
    "peripheral_expansion",
    "geodesic_gallery_exists",
]


def _distance_table(verts: tuple[int, ...]) -> np.ndarray:
    """All-pairs BFS distances over the induced Q_m subgraph (255 = unreachable)."""
    n = len(verts)
    index = {v: i for i, v in enumerate(verts)}
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for i, v in enumerate(verts):
        for j in range(i + 1, n):
            x = v ^ verts[j]
            if x & (x - 1) == 0:  # Hamming distance one
                nbrs[i].append(j)
                nbrs[j].append(i)
    dist = np.full((n, n), 255, dtype=np.uint8)
    for s in range(n):
        row = dist[s]
        row[s] = 0
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for i in frontier:
                for j in nbrs[i]:
                    if row[j] == 255:
                        row[j] = d
                        nxt.append(j)
            frontier = nxt
    return dist


def _isometry_defect(verts: tuple[int, ...], dist: np.ndarray):
    """None if BFS distance equals Hamming distance everywhere, else a witness."""
    arr = np.asarray(verts, dtype=np.uint32)
    ham = np.bitwise_count(arr[:, None] ^ arr[None, :]).astype(np.uint8)
    bad = np.argwhere(dist != ham)
    if bad.size:
        i, j = bad[0]
        return verts[i], verts[j]
    return None


class PCube:
    """A validated partial cube: family plus cached all-pairs distances."""

    def __init__(self, f: Family):
        if not f.vertices:
            raise PreconditionError("a partial cube needs at least one vertex")
        self.family = f
        self.m = f.m
        self.verts = f.sorted_vertices
        self.index = {v: i for i, v in enumerate(self.verts)}
        self.dist_table = _distance_table(self.verts)
        witness = _isometry_defect(self.verts, self.dist_table)
        if witness is not None:
            u, v = witness
            raise PreconditionError(
                f"not a partial cube: vertices {mask_to_str(u, f.m)} and "
                f"{mask_to_str(v, f.m)} are not joined by a geodesic"
            )

    @property
    def span(self) -> int:
        return self.family.span

    def theta_classes(self) -> tuple[int, ...]:
        """The non-constant coordinates, as 1-based element ids."""
        return self.family.spanning_elements()

    def dist(self, u: int, v: int) -> int:
        try:
            return int(self.dist_table[self.index[u], self.index[v]])
        except KeyError as exc:
            raise PreconditionError(f"vertex {exc.args[0]} not in the graph") from None

    def __len__(self):
        return len(self.verts)

    def __contains__(self, v):
        return v in self.index

    def __repr__(self):
        return f"PCube({self.family!r})"


def is_partial_cube(f: Family) -> bool:
    """Connectivity + metric check, cross-validated by halfspace convexity."""
    if not f.vertices:
        return False
    try:
        g = PCube(f)
    except PreconditionError:
        return False
    # Djokovic's criterion: both halfspaces of every class are convex.
    for e in g.theta_classes():
        b = 1 << (e - 1)
        for side in (0, b):
            half = [v for v in g.verts if v & b == side]
            assert _is_convex(g, set(half)), (
                f"halfspace of coordinate {e} is not convex despite the metric check"
            )
    return True


def _is_convex(g: PCube, subset: set[int]) -> bool:
    members = [g.index[v] for v in subset]
    dt = g.dist_table
    for i, j in combinations(members, 2):
        d = dt[i, j]
        for k, w in enumerate(g.verts):
            if dt[i, k] + dt[k, j] == d and w not in subset:
                return False
    return True


def theta_and_halfspaces(g: PCube) -> list[tuple[int, Family, Family]]:
    """(coordinate, negative halfspace, positive halfspace) per class."""
    out = []
    for e in g.theta_classes():
        b = 1 << (e - 1)
        lo = Family(g.m, [v for v in g.verts if not v & b])
        hi = Family(g.m, [v for v in g.verts if v & b])
        out.append((e, lo, hi))
    return out


def interval(g: PCube, u: int, v: int) -> Family:
    """Vertices on geodesics between u and v; asserted convex."""
    if u not in g or v not in g:
        missing = u if u not in g else v
        raise PreconditionError(f"vertex {missing} not in the graph")
    iu, iv = g.index[u], g.index[v]
    dt = g.dist_table
    d = dt[iu, iv]
    ivl = {w for k, w in enumerate(g.verts) if dt[iu, k] + dt[k, iv] == d}
    assert _is_convex(g, ivl), "interval is not convex (internal bug)"
    return Family(g.m, ivl)


def gate(g: PCube, v: int, h: Family) -> int | None:
    """The gate of v in h, or None when v has no gate.

    h must induce a nonempty connected subgraph of g.
    """
    _check_subfamily(g, h, require_connected=True)
    if v not in g:
        raise PreconditionError(f"vertex {v} not in the graph")
    iv = g.index[v]
    dt = g.dist_table
    members = [(int(dt[iv, g.index[x]]), x) for x in h]
    dmin = min(d for d, _ in members)
    nearest = [x for d, x in members if d == dmin]
    if len(nearest) != 1:
        return None
    x = nearest[0]
    ix = g.index[x]
    for d, y in members:
        if d != dmin + dt[ix, g.index[y]]:
            return None
    return x


def is_gated(g: PCube, h: Family) -> bool:
    _check_subfamily(g, h, require_connected=False)
    hv = h.vertices
    return all(gate(g, v, h) is not None for v in g.verts if v not in hv)


def _check_subfamily(g: PCube, h: Family, require_connected: bool):
    if h.m != g.m:
        raise PreconditionError(f"subfamily has m={h.m}, graph has m={g.m}")
    if not h.vertices:
        raise PreconditionError("empty subfamily")
    for v in h.vertices:
        if v not in g:
            raise PreconditionError(f"subfamily vertex {v} not in the graph")
    if require_connected:
        seen = {next(iter(h.vertices))}
        frontier = list(seen)
        hv = h.vertices
        while frontier:
            x = frontier.pop()
            for e in range(g.m):
                y = x ^ (1 << e)
                if y in hv and y not in seen:
                    seen.add(y)
                    frontier.append(y)
        if seen != hv:
            raise PreconditionError("subfamily does not induce a connected subgraph")


def metric_projection(g: PCube, a: Family, b: Family) -> tuple[Family, Family]:
    """Mutual metric projections (pr_b(a), pr_a(b)) of two gated subgraphs.

    Asserts the mutual-gate facts: equal sizes, and the nearest-point map
    is a distance-preserving bijection realizing d(a, b).
    """
    for name, h in (("a", a), ("b", b)):
        if not is_gated(g, h):
            raise PreconditionError(f"subgraph {name} is not gated")
    dt = g.dist_table
    ia = [g.index[v] for v in a]
    ib = [g.index[v] for v in b]
    dmat = dt[np.ix_(ia, ib)]
    dab = int(dmat.min())
    pr_on_a = [v for v, row in zip(a, dmat) if row.min() == dab]
    pr_on_b = [w for w, col in zip(b, dmat.T) if col.min() == dab]
    assert len(pr_on_a) == len(pr_on_b), "mutual projections differ in size"
    image = {}
    for v in pr_on_a:
        nearest = [w for w in pr_on_b if g.dist(v, w) == dab]
        assert len(nearest) == 1, f"nearest point of {v} in b is not unique"
        image[v] = nearest[0]
    assert sorted(image.values()) == sorted(pr_on_b), "nearest-point map is not onto"
    for v, w in combinations(pr_on_a, 2):
        assert g.dist(v, w) == g.dist(image[v], image[w]), (
            "nearest-point map is not an isometry"
        )
    return Family(g.m, pr_on_a), Family(g.m, pr_on_b)


class NotAntipodal(NamedTuple):
    """Returned by `antipodes` when some vertex has no antipode."""

    vertex: int


def antipodes(g: PCube) -> dict[int, int] | NotAntipodal:
    """The antipodal map v -> v ^ span, if I(v, -v) covers the graph."""
    span = g.span
    full = len(g)
    out = {}
    for v in g.verts:
        w = v ^ span
        if w not in g or len(interval(g, v, w)) != full:
            return NotAntipodal(v)
        out[v] = w
    return out


def contract_coordinate(g: PCube, e: int) -> PCube:
    """Contract the edges of coordinate e, renumbering the remaining ones."""
    b = 1 << (e - 1)
    if not g.span & b:
        raise PreconditionError(f"coordinate {e} is constant, not a theta class")
    low = b - 1
    verts = {(v & low) | ((v >> 1) & ~low) for v in g.verts}
    return PCube(Family(g.m - 1, verts))


def restrict_halfspace(g: PCube, e: int, side: int) -> PCube:
    """One halfspace of a theta class as a partial cube (same embedding)."""
    b = 1 << (e - 1)
    if not g.span & b:
        raise PreconditionError(f"coordinate {e} is constant, not a theta class")
    if side not in (-1, 1):
        raise PreconditionError(f"side must be +1 or -1, got {side!r}")
    want = b if side > 0 else 0
    return PCube(Family(g.m, [v for v in g.verts if v & b == want]))


def _isometric_in(g: PCube, sub: Family) -> bool:
    """A subset of a partial cube is isometric iff it is itself a partial cube."""
    try:
        PCube(sub)
        return True
    except PreconditionError:
        return False


def expand(g: PCube, g1: Family, g2: Family) -> PCube:
    """Isometric expansion along the cover (g1, g1 & g2, g2); new coordinate m+1.

    Vertices of g1 keep the new bit 0, vertices of g2 carry bit 1, so the
    shared part appears twice joined by a new theta class.
    """
    v1, v2 = g1.vertices, g2.vertices
    all_v = set(g.verts)
    problems = []
    if v1 | v2 != all_v:
        problems.append("union of the two parts misses vertices")
    if not v1 & v2:
        problems.append("parts have empty intersection")
    if not v1 <= all_v or not v2 <= all_v:
        problems.append("parts are not vertex subsets")
    if not problems:
        for v in all_v:
            for e in range(g.m):
                w = v ^ (1 << e)
                if w in all_v and not (
                    (v in v1 and w in v1) or (v in v2 and w in v2)
                ):
                    problems.append(
                        f"edge {mask_to_str(v, g.m)}-{mask_to_str(w, g.m)} "
                        "lies in neither part"
                    )
                    break
            if problems:
                break
        if not problems and not _isometric_in(g, g1):
            problems.append("first part is not isometric")
        if not problems and not _isometric_in(g, g2):
            problems.append("second part is not isometric")
    if problems:
        raise PreconditionError("not an isometric cover: " + "; ".join(problems))
    new_bit = 1 << g.m
    verts = set(v1) | {v | new_bit for v in v2}
    return PCube(Family(g.m + 1, verts))


def peripheral_expansion(g: PCube, g0: Family) -> PCube:
    """Expansion along (V, g0): the g0 copy carries the new coordinate."""
    return expand(g, Family(g.m, g.verts), g0)


def _cube_free_and_base(q: Family) -> tuple[int, int]:
    free = q.span
    if len(q) != 1 << free.bit_count():
        raise PreconditionError("not a full subcube")
    return free, q.base


def geodesic_gallery_exists(g: PCube, q1: Family, q2: Family) -> bool:
    """Can two parallel cubes be joined by d(q1, q2) single-coordinate slides?

    Cubes are adjacent when their union is again a cube of g; a geodesic
    gallery therefore flips one differing base coordinate per step, so the
    search only follows distance-decreasing moves.
    """
    f1, b1 = _cube_free_and_base(q1)
    f2, b2 = _cube_free_and_base(q2)
    if q1.m != g.m or q2.m != g.m:
        raise PreconditionError("cube families live in a different Q_m")
    if f1 != f2:
        raise PreconditionError("cubes are not parallel (different free sets)")
    free = f1
    gv = g.family.vertices
    for q in (q1, q2):
        if not q.vertices <= gv:
            raise PreconditionError("cube is not contained in the graph")

    subs = list(submasks(free))
    cube_cache: dict[int, bool] = {}

    def cube_at(base: int) -> bool:
        hit = cube_cache.get(base)
        if hit is None:
            hit = all(base | s in gv for s in subs)
            cube_cache[base] = hit
        return hit

    target = b2
    frontier = {b1}
    diff_total = (b1 ^ b2).bit_count()
    for _ in range(diff_total):
        nxt = set()
        for b in frontier:
            d = b ^ target
            while d:
                bit = d & -d
                nb = b ^ bit
                if nb not in nxt and cube_at(nb):
                    nxt.add(nb)
                d &= ~bit
        if not nxt:
            return False
        if target in nxt:
            return True
        frontier = nxt
    return b1 == b2
