"""Ample completions: UOM -> AMP, OM -> UOM, CUOM -> AMP, and an oracle.

The UOM completion is the contract/expand recursion: contract the lowest
theta class, complete the smaller uniform OM, then expand peripherally
along the (ample) projected halfspace.  The CUOM completion replaces each
facet by its ample completion through single gated extensions, which keep
the partial-cube property, the gates, and the VC-dimension.  The oracle
`min_ample_completion` decides the minimum VC-dimension of any ample
superset by exhaustive depth-first search with monotone pruning.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .comstruct import classify, facets
from .errors import (
    NoCompletionFound,
    NotCUOMError,
    PreconditionError,
    ResourceLimitError,
)
from .family import Family, is_ample, phi, submasks, vc_dim
from .pcube import PCube, gate, is_gated, is_partial_cube

__all__ = [
    "CompletionTrace",
    "single_gated_extension",
    "uom_to_amp",
    "om_to_uom",
    "om_to_amp",
    "uom_completions",
    "cuom_to_amp",
    "naive_facet_union",
    "min_ample_completion",
]


@dataclass(frozen=True)
class CompletionTrace:
    """Ordered record of a completion run: steps, result, assertion results."""

    steps: tuple[tuple[str, str, int, int], ...]
    result: Family
    checks: dict = field(default_factory=dict, compare=False)

    def as_dict(self) -> dict:
        from .family import mask_to_str

        return {
            "steps": [
                {"op": op, "detail": detail, "before": before, "after": after}
                for op, detail, before, after in self.steps
            ],
            "result": {
                "m": self.result.m,
                "vertices": [mask_to_str(v, self.result.m) for v in self.result],
            },
            "checks": dict(self.checks),
        }


# ---------------------------------------------------------------------------
# single gated extension

def single_gated_extension(g: PCube, h: Family, h_ext: Family) -> PCube:
    """Extend g by replacing the gated subgraph h with h <= h_ext <= C(h).

    The result is the induced subgraph on V(g) | h_ext.  Asserted facts:
    it is again a partial cube, h_ext is gated in it with the same gates
    as h, and its VC-dimension is max(vcd(g), vcd(h_ext)).
    """
    hv = h.vertices
    if not hv <= g.family.vertices:
        raise PreconditionError("h is not a vertex subset of g")
    if not is_gated(g, h):
        raise PreconditionError("h is not gated in g")
    if not hv <= h_ext.vertices:
        raise PreconditionError("h_ext does not contain h")
    span, base = h.span, h.base
    for v in h_ext.vertices:
        if v & ~span != base:
            raise PreconditionError("h_ext leaves the enclosing cube of h")
    try:
        PCube(h_ext)
    except PreconditionError as exc:
        raise PreconditionError(f"h_ext is not a partial cube: {exc}") from None

    merged = Family(g.m, g.family.vertices | h_ext.vertices)
    try:
        g2 = PCube(merged)
    except PreconditionError as exc:  # the proposition guarantees isometry
        raise AssertionError(f"gated extension broke isometry: {exc}") from None

    assert is_gated(g2, h_ext), "extended subgraph is not gated in the result"
    for v in g.verts:
        old_gate = gate(g, v, h)
        new_gate = gate(g2, v, h_ext)
        assert old_gate == new_gate, (
            f"gate of {v} changed from {old_gate} to {new_gate}"
        )
    d_new = vc_dim(merged)
    assert d_new == max(vc_dim(g.family), vc_dim(h_ext)), (
        "VC-dimension of the extension is not the max of the parts"
    )
    return g2


# ---------------------------------------------------------------------------
# UOM -> AMP

def _amp_recursion(fam: Family, steps: list) -> Family:
    span = fam.span
    if len(fam) == 1 << span.bit_count():
        return fam  # a cube (or single vertex) is already ample
    e_bit = span & -span
    e = e_bit.bit_length()
    lo_side = 0 if min(fam.vertices) & e_bit == 0 else e_bit
    hi_side = e_bit ^ lo_side
    plus_half = Family(fam.m, [v for v in fam.vertices if v & e_bit == hi_side])
    contracted = Family(fam.m, {v & ~e_bit for v in fam.vertices})
    steps.append(("contract", str(e), len(fam), len(contracted)))

    amp_sub = _amp_recursion(contracted, steps)

    periph = Family(fam.m, {v & ~e_bit for v in plus_half.vertices})
    assert periph.vertices <= amp_sub.vertices, "projected halfspace escaped the completion"
    assert is_ample(periph, "counting"), "projected halfspace of a UOM is not ample"
    result = Family(
        fam.m,
        {v | lo_side for v in amp_sub.vertices}
        | {v | hi_side for v in periph.vertices},
    )
    steps.append(("expand", str(e), len(amp_sub), len(result)))
    # peripheral expansion of an ample graph along an ample subgraph stays ample
    assert is_ample(result, "counting"), "peripheral expansion lost ampleness"
    assert vc_dim(result) == vc_dim(fam), "peripheral expansion changed the VC-dimension"
    assert fam.vertices <= result.vertices, "completion lost input vertices"
    return result


def uom_to_amp(g: PCube) -> CompletionTrace:
    """Complete a uniform OM to an ample partial cube inside its cube.

    Recursion: contract the lowest theta class, complete, then expand
    peripherally along the projected positive halfspace.  The negative
    side is the one containing the lexicographically smallest vertex.
    """
    rep = classify(g.family)
    if not rep.UOM:
        raise PreconditionError(f"input is not a UOM: {rep.reasons}")
    steps: list = []
    result = _amp_recursion(g.family, steps)
    span, base = g.family.span, g.family.base
    checks = {
        "contains_input": g.family.vertices <= result.vertices,
        "inside_enclosing_cube": all(v & ~span == base for v in result.vertices),
        "ample": is_ample(result, "all"),
        "vcd_preserved": vc_dim(result) == rep.vcd,
    }
    assert all(checks.values()), f"UOM completion checks failed: {checks}"
    return CompletionTrace(tuple(steps), result, checks)


# ---------------------------------------------------------------------------
# OM -> UOM

def _uom_search(fam: Family, r: int, target: int, *, find_all: bool) -> list[Family]:
    span, base = fam.span, fam.base
    missing = [base | sub for sub in submasks(span)
               if base | sub not in fam.vertices]
    pair_set = sorted({(min(w, w ^ span), max(w, w ^ span)) for w in missing})
    need = target - len(fam)
    if need < 0 or need % 2:
        return []
    solutions: list[Family] = []
    chosen: list[tuple[int, int]] = []

    def candidate() -> Family:
        verts = set(fam.vertices)
        for a, b in chosen:
            verts.add(a)
            verts.add(b)
        return Family(fam.m, verts)

    def rec(start: int):
        if len(chosen) * 2 == need:
            cand = candidate()
            rep = classify(cand)
            if rep.UOM and rep.vcd == r:
                solutions.append(cand)
            return
        for i in range(start, len(pair_set)):
            if (need // 2 - len(chosen)) > len(pair_set) - i:
                break
            chosen.append(pair_set[i])
            if vc_dim(candidate()) <= r:
                rec(i + 1)
                if solutions and not find_all:
                    chosen.pop()
                    return
            chosen.pop()

    rec(0)
    return solutions


def uom_completions(g: PCube) -> list[Family]:
    """Every UOM tope set of the same rank containing the given OM.

    Exhaustive backtracking over antipodal vertex pairs of the enclosing
    cube, in lexicographic order; sized for desk-scale inputs.
    """
    rep = classify(g.family)
    if not rep.OM:
        raise PreconditionError(f"input is not an OM: {rep.reasons}")
    r = rep.rank
    k = g.family.span.bit_count()
    target = 2 * phi(r - 1, k - 1)
    if rep.UOM:
        return [g.family]
    return _uom_search(g.family, r, target, find_all=True)


def om_to_uom(g: PCube, strategy: str = "search", data=None) -> PCube:
    """Complete an OM to a uniform OM of the same rank.

    `search` backtracks over antipodal pairs to the exact uniform tope
    count 2 * Phi_{r-1}(m-1).  `realization` perturbs an exact vector
    realization (passed as `data`, an Arrangement) until every maximal
    minor is nonzero, then re-extracts the topes.
    """
    rep = classify(g.family)
    if not rep.OM:
        raise PreconditionError(f"input is not an OM: {rep.reasons}")
    if rep.UOM:
        return g
    r = rep.rank
    k = g.family.span.bit_count()
    target = 2 * phi(r - 1, k - 1)
    if strategy == "search":
        sols = _uom_search(g.family, r, target, find_all=False)
        if not sols:
            raise NoCompletionFound(
                f"no uniform completion with {target} topes found by exhaustive search"
            )
        return PCube(sols[0])
    if strategy == "realization":
        from . import corpus

        if data is None:
            raise PreconditionError("realization strategy needs the Arrangement data")
        pert = corpus.perturb_to_uniform(data)
        topes = corpus.topes_of_arrangement(pert)
        if not g.family.vertices <= topes.vertices:
            raise AssertionError("perturbed realization lost input topes")
        rep2 = classify(topes)
        assert rep2.UOM and rep2.rank == r, "perturbed realization is not a UOM of the same rank"
        return PCube(topes)
    raise PreconditionError(f"unknown strategy {strategy!r}")


def om_to_amp(g: PCube) -> CompletionTrace:
    """Full pipeline for an OM: complete to a UOM, then to an ample set."""
    rep = classify(g.family)
    if not rep.OM:
        raise PreconditionError(f"input is not an OM: {rep.reasons}")
    u = om_to_uom(g)
    steps = [("uom_completion", "search", len(g.family), len(u.family))]
    trace = uom_to_amp(u)
    checks = dict(trace.checks)
    checks["contains_input"] = g.family.vertices <= trace.result.vertices
    checks["vcd_preserved"] = vc_dim(trace.result) == rep.vcd
    assert all(checks.values())
    return CompletionTrace(tuple(steps) + trace.steps, trace.result, checks)


# ---------------------------------------------------------------------------
# CUOM -> AMP

def cuom_to_amp(s: Family) -> CompletionTrace:
    """Complete a CUOM facet by facet through single gated extensions.

    Facets are processed in covector order; after every step the result
    is asserted to be a partial cube of unchanged VC-dimension in which
    all remaining facets are still gated.
    """
    rep = classify(s)
    if not rep.CUOM:
        raise NotCUOMError(f"input is not a CUOM: {rep.reasons}")
    d = rep.vcd
    face_list = facets(s)
    steps: list = []
    current = s
    completions: list[Family] = []
    for i, f in enumerate(face_list):
        sub_trace = uom_to_amp(PCube(f.topes))
        amp_f = sub_trace.result
        completions.append(amp_f)
        g_cur = PCube(current)
        assert is_gated(g_cur, f.topes), f"facet {f.covector} lost gatedness"
        g_new = single_gated_extension(g_cur, f.topes, amp_f)
        steps.append((
            "facet", str(f.covector), len(current), len(g_new.family),
        ))
        current = g_new.family
        assert vc_dim(current) == d, "intermediate completion changed the VC-dimension"
        for g_face in face_list[i + 1:]:
            assert is_gated(g_new, g_face.topes), (
                f"remaining facet {g_face.covector} is not gated after step {i}"
            )
    checks = {
        "contains_input": s.vertices <= current.vertices,
        "ample": is_ample(current, "all"),
        "vcd_preserved": vc_dim(current) == d,
        "union_of_facet_completions": current.vertices
        == set().union(*(c.vertices for c in completions)),
        "parallel_faces_diagnostic": _parallel_faces_diagnostic(s, current),
    }
    assert checks["contains_input"] and checks["ample"] and checks["vcd_preserved"]
    return CompletionTrace(tuple(steps), current, checks)


def _parallel_faces_diagnostic(s: Family, completed: Family) -> bool:
    """Optional check: parallel faces of s receive translate-identical completions.

    Reported in the trace, never asserted.
    """
    from .comstruct import enumerate_faces

    faces = enumerate_faces(s, verify_gated=False)
    by_support: dict[int, list] = {}
    for f in faces:
        by_support.setdefault(f.covector.support, []).append(f)
    done = set(completed.vertices)
    for group in by_support.values():
        for fa, fb in combinations(group, 2):
            shift = fa.covector.plus ^ fb.covector.plus
            ca = {v for v in done if v & ~fa.free == fa.covector.plus}
            cb = {v for v in done if v & ~fb.free == fb.covector.plus}
            if {v ^ shift for v in ca} != cb:
                return False
    return True


def naive_facet_union(
    s: Family,
    *,
    stage: str = "amp",
    facet_completions: list[Family] | None = None,
) -> tuple[Family, bool]:
    """Complete every maximal face independently and return the raw union.

    With stage="uom" each facet is only completed to a uniform OM; with
    stage="amp" the uniform completion is further completed to an ample
    set.  `facet_completions` can pin the per-facet completions (in facet
    order).  The second return value is the partial-cube verdict of the
    union, the diagnostic this operation exists for.
    """
    rep = classify(s)
    if not rep.COM:
        raise PreconditionError(f"input is not a COM: {rep.reasons}")
    face_list = facets(s)
    pieces: list[Family] = []
    if facet_completions is not None:
        if len(facet_completions) != len(face_list):
            raise PreconditionError(
                f"expected {len(face_list)} facet completions, got {len(facet_completions)}"
            )
        for f, comp in zip(face_list, facet_completions):
            if not f.topes.vertices <= comp.vertices:
                raise PreconditionError(f"completion of {f.covector} misses facet topes")
            span, base = f.topes.span, f.topes.base
            if any(v & ~span != base for v in comp.vertices):
                raise PreconditionError(f"completion of {f.covector} leaves its cube")
            pieces.append(comp)
    else:
        for f in face_list:
            u = om_to_uom(PCube(f.topes))
            if stage == "uom":
                pieces.append(u.family)
            elif stage == "amp":
                pieces.append(uom_to_amp(u).result)
            else:
                raise PreconditionError(f"unknown stage {stage!r}")
    union = Family(s.m, set(s.vertices).union(*(p.vertices for p in pieces)))
    return union, is_partial_cube(union)


# ---------------------------------------------------------------------------
# brute-force minimum ample completion

def _scatter(bits: list[int], w: int) -> int:
    out = 0
    for j, i in enumerate(bits):
        if w >> j & 1:
            out |= 1 << i
    return out


def _ample_superset_search(norm: Family, d: int) -> frozenset[int] | None:
    """Find any ample superset of vcd <= d inside the spanned cube, or None.

    Depth-first over the missing vertices in (distance-to-family, mask)
    order.  Pruning: adding a vertex may only raise the VC-dimension, so
    branches that shatter a (d+1)-set die; and any ample superset T of
    the current set satisfies |T| = |shattered(T)| >= |shattered(now)|,
    so too few remaining vertices also kills the branch.  The Sauer bound
    |T| <= Phi_d(k) is implied by the vcd prune.
    """
    k = norm.m
    nsub = 1 << k
    size = [x.bit_count() for x in range(nsub)]
    big = [x for x in range(nsub) if size[x] == d + 1]
    seen = [0] * nsub

    def add(v: int, log: list) -> None:
        for x in range(nsub):
            old = seen[x]
            new = old | (1 << (v & x))
            if new != old:
                seen[x] = new
                log.append((x, old))

    def shattered_count() -> int:
        return sum(1 for x in range(nsub) if seen[x].bit_count() == 1 << size[x])

    def vcd_ok(log) -> bool:
        return all(seen[x].bit_count() < 1 << (d + 1)
                   for x, _ in log if size[x] == d + 1)

    base_log: list = []
    for v in norm.vertices:
        add(v, base_log)
    if any(seen[x].bit_count() == 1 << (d + 1) for x in big):
        return None  # vcd(norm) already exceeds d

    chosen = set(norm.vertices)
    dist_to = {
        w: min((w ^ v).bit_count() for v in norm.vertices)
        for w in range(nsub)
        if w not in chosen
    }
    free = sorted(dist_to, key=lambda w: (dist_to[w], w))
    # vertices that individually blow the VC-dimension can never be added
    keep = []
    for w in free:
        log: list = []
        add(w, log)
        ok = vcd_ok(log)
        for x, old in reversed(log):
            seen[x] = old
        if ok:
            keep.append(w)
    free = keep

    def rec(i: int) -> frozenset[int] | None:
        if shattered_count() == len(chosen):
            return frozenset(chosen)
        if i == len(free):
            return None
        if len(chosen) + (len(free) - i) < shattered_count():
            return None
        v = free[i]
        log: list = []
        add(v, log)
        chosen.add(v)
        if vcd_ok(log):
            found = rec(i + 1)
            if found is not None:
                return found
        for x, old in reversed(log):
            seen[x] = old
        chosen.discard(v)
        return rec(i + 1)

    return rec(0)


def min_ample_completion(s: Family, d_cap: int) -> tuple[int, Family] | None:
    """Smallest d <= d_cap admitting an ample superset inside the span cube.

    Returns (d_min, witness) or None.  Restricting the search to the
    enclosing cube C(s) loses nothing: intersecting any ample superset
    with C(s) is again ample, still contains s, and has no larger
    VC-dimension.
    """
    if not s.vertices:
        raise PreconditionError("empty family has no completion")
    k = s.span.bit_count()
    if k > 6:
        raise ResourceLimitError(
            f"completion search over 2^{1 << k} supersets exceeds the desk-scale guard"
        )
    bits = [i for i in range(s.m) if s.span >> i & 1]
    norm = s.normalized()
    d0 = vc_dim(s)
    for d in range(d0, d_cap + 1):
        found = _ample_superset_search(norm, d)
        if found is not None:
            verts = {s.base | _scatter(bits, w) for w in found}
            witness = Family(s.m, verts)
            assert s.vertices <= witness.vertices
            assert is_ample(witness, "counting") and vc_dim(witness) == d
            return d, witness
    return None
