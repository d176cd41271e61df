"""Set families on hypercube vertices: shattering, VC-dimension, ampleness.

A vertex of Q_m is a bitmask over the ground set {1, ..., m}: element e
corresponds to bit e-1.  In string form ("0110...") element 1 is the
leftmost character; see `mask_to_str` / `str_to_mask`.

Everything here is exact, exhaustive, and sized for desk-scale ground sets
(m <= 32 by construction, and the 3^m Lawrence scan is guarded at 12
non-constant coordinates).
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, NamedTuple

from .errors import PreconditionError, ResourceLimitError

__all__ = [
    "Family",
    "mask_to_str",
    "str_to_mask",
    "element_mask",
    "submasks",
    "vc_dim",
    "shattered_sets",
    "strongly_shattered_sets",
    "shattering_complexes",
    "phi",
    "SandwichReport",
    "sandwich_report",
    "is_ample",
    "fibers",
]


# ---------------------------------------------------------------------------
# bit conventions and helpers

def mask_to_str(mask: int, m: int) -> str:
    """Bitstring with element 1 leftmost ("msb_element_1" convention)."""
    return "".join("1" if mask >> i & 1 else "0" for i in range(m))


def str_to_mask(s: str, m: int | None = None, bit_order: str = "msb_element_1") -> int:
    """Parse a vertex bitstring.

    `bit_order` is "msb_element_1" (element 1 leftmost, the default used in
    every file format here) or "msb_element_m" (the string read as a plain
    binary numeral, element 1 rightmost).
    """
    if m is not None and len(s) != m:
        raise ValueError(f"bitstring {s!r} has length {len(s)}, expected {m}")
    if set(s) - {"0", "1"}:
        raise ValueError(f"bitstring {s!r} contains characters other than 0/1")
    if bit_order == "msb_element_1":
        return sum(1 << i for i, ch in enumerate(s) if ch == "1")
    if bit_order == "msb_element_m":
        return int(s, 2) if s else 0
    raise ValueError(f"unknown bit_order {bit_order!r}")


def element_mask(elements: int | Iterable[int], m: int) -> int:
    """Normalize an element set (mask, or iterable of 1-based ids) to a mask."""
    if isinstance(elements, int):
        mask = elements
    else:
        mask = 0
        for e in elements:
            if not 1 <= e <= m:
                raise ValueError(f"element {e} outside ground set 1..{m}")
            mask |= 1 << (e - 1)
    if mask >> m:
        raise ValueError(f"element mask {mask:#x} does not fit in {m} bits")
    return mask


def submasks(mask: int):
    """All submasks of `mask`, including 0 and `mask` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class Family:
    """An immutable, deduplicated set of vertices of Q_m."""

    def __init__(self, m: int, vertices: Iterable[int] = ()):
        if not 0 <= m <= 32:
            raise ValueError(f"ground set size {m} outside supported range 0..32")
        verts = frozenset(map(int, vertices))
        top = 1 << m
        for v in verts:
            if not 0 <= v < top:
                raise ValueError(f"vertex {v} does not fit in Q_{m}")
        self.m = m
        self.vertices = verts

    @cached_property
    def sorted_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.vertices))

    @cached_property
    def span(self) -> int:
        """Mask of non-constant coordinates."""
        if not self.vertices:
            return 0
        acc_or = 0
        acc_and = (1 << self.m) - 1
        for v in self.vertices:
            acc_or |= v
            acc_and &= v
        return acc_or & ~acc_and

    @cached_property
    def base(self) -> int:
        """Values of the constant coordinates (0 on the span)."""
        if not self.vertices:
            return 0
        return next(iter(self.vertices)) & ~self.span

    def spanning_elements(self) -> tuple[int, ...]:
        return tuple(e for e in range(1, self.m + 1) if self.span >> (e - 1) & 1)

    def normalized(self) -> "Family":
        """Project out constant coordinates, renumbering the rest."""
        bits = [i for i in range(self.m) if self.span >> i & 1]
        verts = []
        for v in self.vertices:
            w = 0
            for j, i in enumerate(bits):
                if v >> i & 1:
                    w |= 1 << j
            verts.append(w)
        return Family(len(bits), verts)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.sorted_vertices)

    def __contains__(self, v):
        return v in self.vertices

    def __eq__(self, other):
        return (
            isinstance(other, Family)
            and self.m == other.m
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.m, self.vertices))

    def __repr__(self):
        if self.m <= 8 and len(self) <= 10:
            body = ",".join(mask_to_str(v, self.m) for v in self.sorted_vertices)
            return f"Family(m={self.m}, [{body}])"
        return f"Family(m={self.m}, {len(self)} vertices)"


# ---------------------------------------------------------------------------
# shattering

def _shatters(vertices, x_mask: int, size: int) -> bool:
    return len({v & x_mask for v in vertices}) == 1 << size


def vc_dim(f: Family) -> int:
    """Largest |X| such that every subset of X appears as a trace.

    The empty family gets the sentinel -1, which keeps monotonicity under
    subfamilies total.
    """
    if not f.vertices:
        return -1
    verts = f.vertices
    bits = [i for i in range(f.m) if f.span >> i & 1]
    best = 0
    for k in range(1, len(bits) + 1):
        if (1 << k) > len(verts):
            break
        hit = False
        for combo in combinations(bits, k):
            x = 0
            for b in combo:
                x |= 1 << b
            if _shatters(verts, x, k):
                hit = True
                break
        if not hit:
            break  # shattered sets are downward closed
        best = k
    return best


def shattered_sets(f: Family) -> frozenset[int]:
    """All shattered element sets, as masks (a downward-closed complex)."""
    if not f.vertices:
        return frozenset()
    verts = f.vertices
    out = []
    for x in submasks(f.span):
        if _shatters(verts, x, x.bit_count()):
            out.append(x)
    return frozenset(out)


def strongly_shattered_sets(f: Family) -> frozenset[int]:
    """All X whose full X-cube appears: {Y | x : x submask of X} inside f."""
    if not f.vertices:
        return frozenset()
    verts = f.vertices
    out = []
    for x in submasks(f.span):
        full = 1 << x.bit_count()
        counts: dict[int, int] = {}
        hit = False
        for v in verts:
            b = v & ~x
            c = counts.get(b, 0) + 1
            if c == full:
                hit = True
                break
            counts[b] = c
        if hit:
            out.append(x)
    return frozenset(out)


def shattering_complexes(f: Family) -> tuple[frozenset[int], frozenset[int]]:
    """(shattered, strongly shattered) set complexes; the second refines the first."""
    shat = shattered_sets(f)
    strong = strongly_shattered_sets(f)
    assert strong <= shat, "strongly shattered sets must be shattered"
    return shat, strong


def phi(d: int, m: int) -> int:
    """Sauer-Shelah bound: number of subsets of an m-set of size at most d."""
    if d < 0 or m < 0:
        raise ValueError("phi(d, m) needs d, m >= 0")
    return sum(comb(m, i) for i in range(min(d, m) + 1))


class SandwichReport(NamedTuple):
    strong_count: int
    family_count: int
    shattered_count: int
    sauer_bound: int


def sandwich_report(f: Family) -> SandwichReport:
    """Cardinalities |strongly shattered| <= |f| <= |shattered| plus Phi_vcd(m).

    The two sandwich inequalities and the Sauer-Shelah bound are asserted;
    a violation would be an internal bug, not a property of the input.
    """
    shat, strong = shattering_complexes(f)
    d = vc_dim(f)
    bound = phi(d, f.m) if d >= 0 else 0
    rep = SandwichReport(len(strong), len(f), len(shat), bound)
    assert rep.strong_count <= rep.family_count <= rep.shattered_count or not f.vertices, (
        f"sandwich violated: {rep}"
    )
    assert rep.family_count <= rep.sauer_bound or not f.vertices, f"Sauer-Shelah violated: {rep}"
    return rep


# ---------------------------------------------------------------------------
# ampleness

def _ample_counting(f: Family) -> bool:
    return len(shattered_sets(f)) == len(f)


def _ample_complexes(f: Family) -> bool:
    shat, strong = shattering_complexes(f)
    return shat == strong


def _ample_lawrence(f: Family) -> bool:
    """Lawrence's criterion: antipodally closed subcube traces are empty or full.

    Scans the 3^k subcubes meeting the span, so it is guarded at 12
    non-constant coordinates.
    """
    k = f.span.bit_count()
    if k > 12:
        raise ResourceLimitError(
            f"lawrence criterion unavailable: 3^{k} subcubes exceed the desk-scale guard"
        )
    verts = f.vertices
    for free in submasks(f.span):
        groups: dict[int, list[int]] = {}
        for v in verts:
            groups.setdefault(v & ~free, []).append(v)
        full = 1 << free.bit_count()
        for members in groups.values():
            if len(members) == full:
                continue
            mset = set(members)
            if all(v ^ free in mset for v in members):
                return False
    return True


def _ample_gallery(f: Family) -> bool:
    from . import pcube  # local import; pcube depends on this module

    g = pcube.PCube(f)
    cubes = _cubes_by_free(f)
    for free, bases in cubes.items():
        if len(bases) < 2:
            continue
        for b1, b2 in combinations(bases, 2):
            q1 = Family(f.m, [b1 | s for s in submasks(free)])
            q2 = Family(f.m, [b2 | s for s in submasks(free)])
            if not pcube.geodesic_gallery_exists(g, q1, q2):
                return False
    return True


def _cubes_by_free(f: Family) -> dict[int, list[int]]:
    """For each free set, the bases of the full subcubes contained in f."""
    out: dict[int, list[int]] = {}
    verts = f.vertices
    for free in submasks(f.span):
        full = 1 << free.bit_count()
        counts: dict[int, int] = {}
        for v in verts:
            b = v & ~free
            counts[b] = counts.get(b, 0) + 1
        bases = sorted(b for b, c in counts.items() if c == full)
        if bases:
            out[free] = bases
    return out


def is_ample(f: Family, method: str = "all") -> bool:
    """Decide ampleness by one of four equivalent criteria.

    methods: "complexes" (shattered == strongly shattered), "counting"
    (|f| == number of shattered sets), "lawrence" (subcube antipodality
    scan), "gallery" (geodesic galleries between all parallel cubes; the
    input must be a partial cube), or "all" which runs every applicable
    criterion and asserts they agree.
    """
    if not f.vertices:
        return True
    if method == "counting":
        return _ample_counting(f)
    if method == "complexes":
        return _ample_complexes(f)
    if method == "lawrence":
        return _ample_lawrence(f)
    if method == "gallery":
        from . import pcube

        if not pcube.is_partial_cube(f):
            raise PreconditionError("gallery criterion needs a partial cube vertex set")
        return _ample_gallery(f)
    if method != "all":
        raise ValueError(f"unknown ampleness method {method!r}")

    results = {
        "counting": _ample_counting(f),
        "complexes": _ample_complexes(f),
    }
    if f.span.bit_count() <= 12:
        results["lawrence"] = _ample_lawrence(f)
    from . import pcube

    if pcube.is_partial_cube(f):
        results["gallery"] = _ample_gallery(f)
    else:
        # ample families induce partial cubes, so everything must agree on False
        assert not any(results.values()), f"ample criteria disagree on non-partial-cube: {results}"
    answers = set(results.values())
    assert len(answers) == 1, f"ampleness criteria disagree: {results}"
    return answers.pop()


# ---------------------------------------------------------------------------
# fibers

def fibers(f: Family, x: int | Iterable[int]) -> dict[int, Family]:
    """Partition of f by its trace on x; keys run over all submasks of x.

    x is shattered exactly when every fiber is nonempty, which is
    cross-checked against the shattering test.
    """
    x_mask = element_mask(x, f.m)
    parts: dict[int, list[int]] = {y: [] for y in submasks(x_mask)}
    for v in f.vertices:
        parts[v & x_mask].append(v)
    out = {y: Family(f.m, vs) for y, vs in parts.items()}
    all_nonempty = all(len(fam) > 0 for fam in out.values())
    if f.vertices:
        assert all_nonempty == _shatters(f.vertices, x_mask, x_mask.bit_count()), (
            "fiber partition disagrees with the shattering test"
        )
    return out
