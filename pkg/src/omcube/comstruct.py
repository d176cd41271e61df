"""Faces, facets, carriers, and classification of tope graphs.

A face of a tope family is recovered combinatorially: a candidate is the
trace of the family on a subcube (a tope plus a free coordinate set) that
is antipodally closed within the subcube, spans every free coordinate,
and induces a connected subgraph.  The covector of a face records the
fixed coordinates with their signs and is zero on the free ones.  COM
recognition is operational: the covectors reconstructed this way must
satisfy strong elimination and face symmetry.  For systems that really
are COMs this reproduces the covector set exactly (checked against the
arrangement generators in the test suite); for arbitrary partial cubes
the flags are best-effort and completeness of the face list is not
claimed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import PreconditionError, ResourceLimitError
from .family import (
    Family,
    is_ample,
    mask_to_str,
    submasks,
    vc_dim,
)
from .pcube import PCube, is_gated
from .signvec import SignVector, _check_se, _check_simple, compose, separator

__all__ = [
    "Face",
    "ClassReport",
    "enumerate_faces",
    "facets",
    "classify",
    "ZoneReport",
    "zones",
    "face_projection",
    "are_parallel",
    "parallel_gallery",
    "face_report",
]


@dataclass(frozen=True)
class Face:
    """A face: its covector, its tope set, and the free-coordinate mask."""

    covector: SignVector
    topes: Family
    free: int
    gated: bool = field(default=True, compare=False)

    @property
    def dim(self) -> int:
        return self.free.bit_count()

    def is_cube(self) -> bool:
        return len(self.topes) == 1 << self.dim

    def __le__(self, other: "Face") -> bool:
        """Face containment: F <= G iff G's covector lies below F's."""
        return other.covector <= self.covector

    def sort_key(self):
        return (self.covector.support, self.covector.plus, self.covector.minus)


def _candidate_faces(m: int, verts: frozenset[int], span: int):
    """(free, base, topes) triples passing the trace/antipode/span/connectivity tests."""
    out = []
    for free in submasks(span):
        groups: dict[int, list[int]] = {}
        for v in verts:
            groups.setdefault(v & ~free, []).append(v)
        if free == 0:
            out.extend((0, b, (b,)) for b in groups)
            continue
        k = free.bit_count()
        bits = [free & -free]
        rest = free & ~bits[0]
        while rest:
            bits.append(rest & -rest)
            rest &= ~bits[-1]
        for base, members in groups.items():
            if len(members) < 2 or len(members) > 1 << k:
                continue
            mset = frozenset(members)
            if any(v ^ free not in mset for v in members):
                continue  # not antipodally closed in the subcube
            acc_or = 0
            acc_and = free
            for v in members:
                acc_or |= v
                acc_and &= v
            if acc_or & free != free or acc_and & free:
                continue  # does not span every free coordinate
            # connectivity inside the subcube
            seen = {members[0]}
            stack = [members[0]]
            while stack:
                x = stack.pop()
                for b in bits:
                    y = x ^ b
                    if y in mset and y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != len(mset):
                continue
            out.append((free, base, tuple(sorted(members))))
    full = (1 << m) - 1
    out.sort(key=lambda t: (full & ~t[0], t[1]))  # (support mask, sign mask)
    return out


def _face_from_candidate(m: int, free: int, base: int, topes, gated=True) -> Face:
    full = (1 << m) - 1
    cov = SignVector(m, base, full & ~free & ~base)
    return Face(cov, Family(m, topes), free, gated)


def enumerate_faces(s: Family, *, verify_gated: bool = True) -> list[Face]:
    """All faces of a partial-cube family, each checked for gatedness.

    Candidates are antipodally closed connected subcube traces; free-set
    enumeration over the span is capped at 14 coordinates.
    """
    if s.span.bit_count() > 14:
        raise ResourceLimitError(
            f"face enumeration over 2^{s.span.bit_count()} free sets exceeds the guard"
        )
    g = PCube(s)  # raises PreconditionError when not a partial cube
    faces = []
    for free, base, topes in _candidate_faces(s.m, s.vertices, s.span):
        gated = is_gated(g, Family(s.m, topes)) if verify_gated else True
        faces.append(_face_from_candidate(s.m, free, base, topes, gated))
    faces.sort(key=Face.sort_key)
    return faces


def facets(s: Family) -> list[Face]:
    """The inclusion-maximal faces, in covector order.

    For an OM the unique maximal face is the whole family; otherwise the
    maximal faces are the facets in the usual sense.
    """
    faces = enumerate_faces(s)
    return _maximal_faces(faces)


def _maximal_faces(faces: list[Face]) -> list[Face]:
    out = []
    for f in faces:
        if not any(g is not f and f <= g for g in faces):
            out.append(f)
    out.sort(key=Face.sort_key)
    return out


@dataclass(frozen=True)
class ClassReport:
    simple: bool
    partial_cube: bool
    COM: bool
    OM: bool
    UOM: bool
    CUOM: bool
    AMP: bool
    vcd: int
    rank: int | None
    reasons: dict = field(default_factory=dict, compare=False)

    def as_dict(self) -> dict:
        return {
            "simple": self.simple,
            "partial_cube": self.partial_cube,
            "COM": self.COM,
            "OM": self.OM,
            "UOM": self.UOM,
            "CUOM": self.CUOM,
            "AMP": self.AMP,
            "vcd": self.vcd,
            "rank": self.rank,
            "reasons": dict(self.reasons),
        }


def _fail(reasons, flag, why):
    reasons.setdefault(flag, why)


@lru_cache(maxsize=8192)
def classify(s: Family) -> ClassReport:
    """Flags {simple, partial cube, COM, OM, UOM, CUOM, AMP} plus vcd and rank.

    COM recognition reconstructs covectors from the faces and checks
    (SE) and (FS) plus gatedness of every face; OM additionally needs the
    whole family to be a face; UOM needs every proper face to be a cube;
    CUOM needs every facet to be a UOM (cross-checked against the
    non-maximal-faces-are-cubes test and ample half-carriers).
    """
    reasons: dict[str, str] = {}
    d = vc_dim(s)
    amp = is_ample(s, "counting") if s.vertices else False
    try:
        g = PCube(s)
    except PreconditionError as exc:
        _fail(reasons, "partial_cube", str(exc))
        return ClassReport(False, False, False, False, False, False, False, d, None, reasons)

    cands = _candidate_faces(s.m, s.vertices, s.span)
    full = (1 << s.m) - 1
    covs = [_face_from_candidate(s.m, free, base, topes).covector
            for free, base, topes in cands]
    simple, why = _check_simple(covs, s.m)
    if not simple:
        _fail(reasons, "simple", why)

    cov_set = {(c.plus, c.minus) for c in covs}
    fs = True
    for x in covs:
        sx = x.plus | x.minus
        for y in covs:
            zp = x.plus | (y.minus & ~sx)
            zm = x.minus | (y.plus & ~sx)
            if (zp, zm) not in cov_set:
                fs = False
                _fail(reasons, "COM", f"face symmetry fails for {x} o -{y}")
                break
        if not fs:
            break
    se = True
    if fs:
        se, why = _check_se(covs, None)
        if not se:
            _fail(reasons, "COM", why)
    com = fs and se
    if com:
        for free, base, topes in cands:
            if not is_gated(g, Family(s.m, topes)):
                com = False
                _fail(reasons, "COM", f"face at free mask {free:#x} base {base:#x} is not gated")
                break

    whole_free = s.span
    whole_base = s.base
    om = com and any(free == whole_free and base == whole_base
                     for free, base, _ in cands)
    if com and not om:
        _fail(reasons, "OM", "the whole family is not a face (no antipodal map)")

    uom = False
    rank = None
    if om:
        uom = all(
            len(topes) == 1 << free.bit_count()
            for free, base, topes in cands
            if free != whole_free
        )
        if not uom:
            _fail(reasons, "UOM", "some proper face is not a hypercube")
        rank = _rank_from_covectors(covs)
        assert rank == d, f"OM rank {rank} disagrees with VC-dimension {d}"
    elif com:
        _fail(reasons, "UOM", "not an OM")

    cuom = False
    if com:
        if om:
            cuom = uom  # a single maximal face (the whole OM) must be uniform
        else:
            faces = [_face_from_candidate(s.m, fr, b, t) for fr, b, t in cands]
            maximal = _maximal_faces(faces)
            max_keys = {(f.covector.plus, f.covector.minus) for f in maximal}
            cuom = all(classify(f.topes).UOM for f in maximal)
            # cross-check: all non-maximal faces are hypercubes
            alt = all(
                f.is_cube()
                for f in faces
                if (f.covector.plus, f.covector.minus) not in max_keys
            )
            assert cuom == alt, "facet-UOM and non-maximal-face-cube tests disagree"
        if not cuom:
            _fail(reasons, "CUOM", "some facet is not a uniform OM")
        # independent cross-check via ample half-carriers
        assert cuom == _half_carriers_ample(s, cands), (
            "half-carrier ampleness disagrees with the facet test"
        )
    return ClassReport(simple, True, com, om, uom, cuom, amp, d, rank, reasons)


def _half_carriers_ample(s: Family, cands) -> bool:
    for e in range(1, s.m + 1):
        b = 1 << (e - 1)
        if not s.span & b:
            continue
        carrier = set()
        for free, base, topes in cands:
            if free & b:
                carrier.update(topes)
        for side in (0, b):
            half = Family(s.m, [v for v in carrier if v & b == side])
            if half.vertices and not is_ample(half, "counting"):
                return False
    return True


def _rank_from_covectors(covs) -> int:
    order = sorted(covs, key=lambda x: x.support.bit_count())
    height = {x: 0 for x in order}
    for i, x in enumerate(order):
        for y in order[:i]:
            if y < x and height[y] + 1 > height[x]:
                height[x] = height[y] + 1
    return max(height.values())


# ---------------------------------------------------------------------------
# zones: hyperplanes, carriers, half-carriers

@dataclass(frozen=True)
class ZoneReport:
    element: int
    hyperplane: tuple[Face, ...]
    carrier: Family
    half_carrier_minus: Family
    half_carrier_plus: Family
    halfspace_minus: Family
    halfspace_plus: Family


def zones(s: Family, e: int) -> ZoneReport:
    """Hyperplane (faces with e free), carrier, half-carriers, halfspaces.

    Asserts that all of them are COMs again, and that for OM input the
    half-carriers coincide with the halfspaces (the zero covector puts
    the whole family into every carrier).
    """
    rep = classify(s)
    if not rep.COM:
        raise PreconditionError(f"zones need a COM: {rep.reasons}")
    b = 1 << (e - 1)
    if not s.span & b:
        raise PreconditionError(f"coordinate {e} is constant, not a theta class")
    faces = enumerate_faces(s)
    hyper = tuple(f for f in faces if f.free & b)
    carrier_verts = set()
    for f in hyper:
        carrier_verts.update(f.topes.vertices)
    carrier = Family(s.m, carrier_verts)
    hs_minus = Family(s.m, [v for v in s.vertices if not v & b])
    hs_plus = Family(s.m, [v for v in s.vertices if v & b])
    hc_minus = Family(s.m, [v for v in carrier_verts if not v & b])
    hc_plus = Family(s.m, [v for v in carrier_verts if v & b])
    for name, fam in (("carrier", carrier), ("half-carrier-", hc_minus),
                      ("half-carrier+", hc_plus), ("halfspace-", hs_minus),
                      ("halfspace+", hs_plus)):
        if fam.vertices:
            assert classify(fam).COM, f"{name} of a COM failed to classify as a COM"
    # hyperplane covectors form a COM-like subsystem: (SE) and (FS) again
    hcovs = [f.covector for f in hyper]
    if hcovs:
        se, why = _check_se(hcovs, None)
        assert se, f"hyperplane subsystem fails SE: {why}"
    if rep.OM:
        assert hc_minus == hs_minus and hc_plus == hs_plus, (
            "for an OM the half-carriers must equal the halfspaces"
        )
    return ZoneReport(e, hyper, carrier, hc_minus, hc_plus, hs_minus, hs_plus)


# ---------------------------------------------------------------------------
# mutual projections between faces

def _faces_by_covector(s: Family) -> dict[tuple[int, int], Face]:
    return {(f.covector.plus, f.covector.minus): f for f in enumerate_faces(s)}


def _set_distance(a: Family, b: Family) -> int:
    return min((u ^ v).bit_count() for u in a.vertices for v in b.vertices)


def _project_onto(a: Family, b: Family) -> Family:
    d = _set_distance(a, b)
    keep = [u for u in a.vertices
            if min((u ^ v).bit_count() for v in b.vertices) == d]
    return Family(a.m, keep)


def _cube_projection(base_x: int, free_x: int, base_y: int, free_y: int, m: int) -> Family:
    """Metric projection of the cube C(X) toward C(Y) inside Q_m."""
    anchor = base_x | (base_y & free_x & ~free_y)
    return Family(m, [anchor | sub for sub in submasks(free_x & free_y)])


def are_parallel(fx: Face, fy: Face) -> bool:
    """Parallel faces have the same support (equivalently the same free set)."""
    return fx.covector.support == fy.covector.support


def face_projection(s: Family, fx: Face, fy: Face, *, assume_cuom: bool = False) -> Face:
    """The metric projection of face fx toward fy, which is the face of X o Y.

    Asserts the projection calculus: the distance between the faces equals
    the distance between their enclosing cubes and the separator size; the
    face projections are contained in the cube projections; and the two
    projections are parallel faces.  With `assume_cuom` the projections
    must additionally be cubes that coincide with the cube projections.
    """
    lookup = _faces_by_covector(s)
    for f in (fx, fy):
        if (f.covector.plus, f.covector.minus) not in lookup:
            raise PreconditionError(f"{f.covector} is not a face of the family")
    x, y = fx.covector, fy.covector
    z = compose(x, y)
    zkey = (z.plus, z.minus)
    if zkey not in lookup:
        raise PreconditionError(f"composition {z} is not a face; input is not a COM")
    proj = lookup[zkey]
    sep = separator(x, y)
    dff = _set_distance(fx.topes, fy.topes)
    dcc = ((x.plus ^ y.plus) & ~fx.free & ~fy.free).bit_count()
    assert dff == dcc == sep.bit_count(), (
        f"distance mismatch: faces {dff}, cubes {dcc}, separator {sep.bit_count()}"
    )
    pr_x_on = _project_onto(fx.topes, fy.topes)
    assert pr_x_on == proj.topes, "projection is not the face of the composition"
    cube_pr = _cube_projection(x.plus, fx.free, y.plus, fy.free, s.m)
    assert pr_x_on.vertices <= cube_pr.vertices, (
        "face projection is not inside the cube projection"
    )
    other = lookup[(compose(y, x).plus, compose(y, x).minus)]
    assert are_parallel(proj, other), "the two mutual projections are not parallel"
    if assume_cuom:
        assert proj.is_cube(), "projection between CUOM facets must be a cube"
        assert pr_x_on == cube_pr, (
            "for CUOM facets the face projection must equal the cube projection"
        )
    return proj


def parallel_gallery(s: Family, fx: Face, fy: Face) -> list[Face] | None:
    """A geodesic gallery of parallel faces from fx to fy, or None.

    Consecutive members are opposite facets of a common face, flipping one
    separator element per step; for COM input a gallery always exists.
    """
    if not are_parallel(fx, fy):
        raise PreconditionError("faces are not parallel (different supports)")
    lookup = _faces_by_covector(s)
    target = fy.covector

    def neighbors(face: Face):
        x = face.covector
        sep = separator(x, target)
        out = []
        rest = sep
        while rest:
            b = rest & -rest
            rest &= ~b
            # bridge face: zero out b, then the opposite facet flips b
            bridge = SignVector(s.m, x.plus & ~b, x.minus & ~b)
            flipped = SignVector(
                s.m,
                (x.plus & ~b) | (b if x.minus & b else 0),
                (x.minus & ~b) | (b if x.plus & b else 0),
            )
            if (bridge.plus, bridge.minus) in lookup and (flipped.plus, flipped.minus) in lookup:
                out.append(lookup[(flipped.plus, flipped.minus)])
        return out

    path = [fx]
    cur = fx
    steps = separator(fx.covector, target).bit_count()
    for _ in range(steps):
        nxt = neighbors(cur)
        if not nxt:
            return None
        cur = nxt[0]
        path.append(cur)
    return path if cur.covector == target else None


def face_report(face: Face, all_faces: list[Face] | None = None) -> dict:
    """JSON-ready face record: covector, topes, and {cube, uom, gated} flags."""
    uom = None
    if all_faces is not None:
        proper = [g for g in all_faces if g <= face and g != face]
        uom = all(g.is_cube() for g in proper)
    return {
        "covector": str(face.covector),
        "topes": [mask_to_str(v, face.topes.m) for v in face.topes],
        "flags": {
            "cube": face.is_cube(),
            "uom": uom,
            "gated": face.gated,
        },
    }
