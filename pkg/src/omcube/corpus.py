"""Generators, exhaustive enumeration, canonical forms, and file I/O.

Realizability is decided exactly: a sign vector is a covector of a
central arrangement iff the corresponding system of linear equalities
and strict inequalities over the rationals is solvable, which is decided
by Gaussian elimination plus Fourier-Motzkin elimination on integer
rows.  No floating point is used anywhere; sign correctness is the whole
game.

Enumeration of partial cubes proceeds by isometric expansions from a
single vertex, deduplicating by a canonical form under signed coordinate
permutations (the hyperoctahedral group acting on the spanned cube).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import comb, gcd
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .errors import (
    GenerationError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
)
from .family import Family, mask_to_str, phi, str_to_mask, submasks
from .signvec import SignSystem, SignVector

__all__ = [
    "Arrangement",
    "fm_feasible",
    "fm_sample",
    "covectors_of_arrangement",
    "topes_of_arrangement",
    "generic_vectors",
    "gen_uniform_om",
    "gen_realizable_com",
    "perturb_to_uniform",
    "product",
    "even_cycle",
    "path",
    "named",
    "CanonicalKey",
    "canonical_form",
    "enumerate_partial_cubes",
    "isometric_covers",
    "load_family",
    "save_family",
    "load_signsystem",
    "save_signsystem",
    "save_trace",
    "export_dot",
]


# ---------------------------------------------------------------------------
# exact feasibility: Gaussian + Fourier-Motzkin elimination on integer rows

def _norm_row(coeffs: tuple[int, ...], rhs: int):
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    g = gcd(g, rhs)
    if g > 1:
        coeffs = tuple(c // g for c in coeffs)
        rhs = rhs // g
    return coeffs, rhs


def _eliminate_equalities(eqs, ineqs, nvars):
    """Row-reduce homogeneous equalities and substitute into the inequalities.

    Returns (new_ineqs, kept_vars, pivots) where pivots maps an eliminated
    variable to the integer row (coeffs over all nvars) forcing it, for
    back-substitution.
    """
    rows = [tuple(e) for e in eqs]
    pivots: list[tuple[int, tuple[int, ...]]] = []
    work = list(rows)
    used = set()
    for row in work:
        row = tuple(row)
        for var, prow in pivots:
            if row[var]:
                p = prow[var]
                row = tuple(p * a - row[var] * b for a, b in zip(row, prow))
        nz = [i for i, c in enumerate(row) if c and i not in used]
        if not nz:
            continue
        var = nz[-1]
        used.add(var)
        pivots.append((var, row))
    out = []
    for coeffs, rhs in ineqs:
        coeffs = tuple(coeffs)
        scale = 1
        for var, prow in pivots:
            if coeffs[var]:
                p = prow[var]
                mult = abs(p)
                sign = 1 if p > 0 else -1
                coeffs = tuple(
                    mult * a - sign * coeffs_var * b
                    for a, b, coeffs_var in zip(coeffs, prow, [coeffs[var]] * nvars)
                )
                rhs = mult * rhs
        out.append(_norm_row(coeffs, rhs))
    kept = [i for i in range(nvars) if i not in used]
    return out, kept, pivots


def _fm_core(ineqs, order, keep_stages=False):
    """Eliminate variables in `order`; rows are (coeffs, rhs) meaning c.z > rhs.

    Returns (feasible, stages) where stages[i] holds the rows present
    before eliminating order[i] (only when keep_stages).
    """
    rows = set()
    for coeffs, rhs in ineqs:
        coeffs, rhs = _norm_row(tuple(coeffs), rhs)
        if not any(coeffs):
            if rhs >= 0:
                return False, []
            continue
        rows.add((coeffs, rhs))
    stages = []
    for var in order:
        if keep_stages:
            stages.append((var, sorted(rows)))
        pos, neg, rest = [], [], set()
        for coeffs, rhs in rows:
            c = coeffs[var]
            if c > 0:
                pos.append((coeffs, rhs))
            elif c < 0:
                neg.append((coeffs, rhs))
            else:
                rest.add((coeffs, rhs))
        for cp, rp in pos:
            a = cp[var]
            for cn, rn in neg:
                b = -cn[var]
                coeffs = tuple(b * x + a * y for x, y in zip(cp, cn))
                rhs = b * rp + a * rn
                coeffs, rhs = _norm_row(coeffs, rhs)
                if not any(coeffs):
                    if rhs >= 0:
                        return False, stages
                    continue
                rest.add((coeffs, rhs))
        rows = rest
    return True, stages


def fm_feasible(eqs, ineqs, nvars: int) -> bool:
    """Is {z : e.z = 0 for all eqs, c.z > rhs for all ineqs} nonempty over Q?"""
    red, kept, _ = _eliminate_equalities(eqs, ineqs, nvars)
    ok, _ = _fm_core(red, list(reversed(kept)))
    return ok


def fm_sample(eqs, ineqs, nvars: int) -> tuple[Fraction, ...] | None:
    """A rational point of the system, or None; exact back-substitution."""
    red, kept, pivots = _eliminate_equalities(eqs, ineqs, nvars)
    order = list(reversed(kept))
    ok, stages = _fm_core(red, order, keep_stages=True)
    if not ok:
        return None
    value: dict[int, Fraction] = {}
    for var, rows in reversed(stages):
        lo, hi = None, None
        for coeffs, rhs in rows:
            c = coeffs[var]
            if c == 0:
                continue
            rest = Fraction(rhs) - sum(
                Fraction(coeffs[j]) * value[j] for j in value if coeffs[j]
            )
            bound = rest / c
            if c > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        if lo is not None and hi is not None:
            assert lo < hi, "Fourier-Motzkin back-substitution hit an empty interval"
            value[var] = (lo + hi) / 2
        elif lo is not None:
            value[var] = lo + 1
        elif hi is not None:
            value[var] = hi - 1
        else:
            value[var] = Fraction(0)
    for var, prow in reversed(pivots):
        rest = sum(Fraction(prow[j]) * value.get(j, Fraction(0))
                   for j in range(nvars) if j != var and prow[j])
        value[var] = -rest / prow[var]
    point = tuple(value.get(i, Fraction(0)) for i in range(nvars))
    for e in eqs:
        assert sum(Fraction(c) * z for c, z in zip(e, point)) == 0
    for coeffs, rhs in ineqs:
        assert sum(Fraction(c) * z for c, z in zip(coeffs, point)) > rhs
    return point


# ---------------------------------------------------------------------------
# arrangements

@dataclass(frozen=True)
class Arrangement:
    """Central hyperplane normals in Z^r plus an optional open region.

    region rows are strict integer inequalities (coeffs, rhs) meaning
    coeffs . z > rhs.
    """

    r: int
    vectors: tuple[tuple[int, ...], ...]
    region: tuple[tuple[tuple[int, ...], int], ...] = ()

    def __post_init__(self):
        for v in self.vectors:
            if len(v) != self.r:
                raise ValueError(f"vector {v} does not have {self.r} coordinates")
            if not any(v):
                raise ValueError("zero normal vector is not allowed")
        for coeffs, _ in self.region:
            if len(coeffs) != self.r:
                raise ValueError(f"region row {coeffs} does not have {self.r} coordinates")

    @property
    def m(self) -> int:
        return len(self.vectors)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "vectors": [list(v) for v in self.vectors],
            "region": [list(c) + [">", rhs] for c, rhs in self.region],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Arrangement":
        try:
            r = int(obj["r"])
            vectors = tuple(tuple(int(c) for c in v) for v in obj["vectors"])
            region = []
            for row in obj.get("region", ()):
                if row[-2] != ">":
                    raise ParseError(f"region row {row} must use the strict relation '>'")
                region.append((tuple(int(c) for c in row[:-2]), int(row[-1])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed arrangement object: {exc}") from None
        return cls(r, vectors, tuple(region))


def _sign_constraints(arr: Arrangement, signs: list[int]):
    eqs, ineqs = [], []
    for v, s in zip(arr.vectors, signs):
        if s == 0:
            eqs.append(tuple(v))
        elif s > 0:
            ineqs.append((tuple(v), 0))
        else:
            ineqs.append((tuple(-c for c in v), 0))
    ineqs.extend(arr.region)
    return eqs, ineqs


def _sign_dfs(arr: Arrangement, alphabet: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All realizable full sign assignments, pruning infeasible prefixes."""
    m = arr.m
    signs: list[int] = []

    def rec():
        if len(signs) == m:
            yield tuple(signs)
            return
        for s in alphabet:
            signs.append(s)
            eqs, ineqs = _sign_constraints(
                Arrangement(arr.r, arr.vectors[: len(signs)], arr.region), signs
            )
            if fm_feasible(eqs, ineqs, arr.r):
                yield from rec()
            signs.pop()

    yield from rec()


def covectors_of_arrangement(arr: Arrangement) -> SignSystem:
    """All sign vectors realized by points of the (region-restricted) space."""
    vecs = []
    for signs in _sign_dfs(arr, (1, -1, 0)):
        plus = minus = 0
        for i, s in enumerate(signs):
            if s > 0:
                plus |= 1 << i
            elif s < 0:
                minus |= 1 << i
        vecs.append(SignVector(arr.m, plus, minus))
    return SignSystem(arr.m, vecs)


def topes_of_arrangement(arr: Arrangement) -> Family:
    """Full-support sign vectors only, as Q_m vertices (+1 = element present)."""
    verts = []
    for signs in _sign_dfs(arr, (1, -1)):
        plus = 0
        for i, s in enumerate(signs):
            if s > 0:
                plus |= 1 << i
        verts.append(plus)
    return Family(arr.m, verts)


def _int_det(rows: list[tuple[int, ...]]) -> int:
    """Exact integer determinant by fraction-free Gaussian elimination."""
    n = len(rows)
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def generic_vectors(m: int, r: int, seed: int = 0, *, bound: int = 9, retries: int = 200):
    """m integer vectors in Z^r with every r x r minor nonzero."""
    if not 1 <= r <= m:
        raise PreconditionError(f"need 1 <= r <= m, got r={r}, m={m}")
    rng = random.Random(seed)
    for _ in range(retries):
        vecs = [tuple(rng.randint(-bound, bound) for _ in range(r)) for _ in range(m)]
        if any(not any(v) for v in vecs):
            continue
        if all(_int_det([vecs[i] for i in combo]) != 0
               for combo in _combinations(m, r)):
            return tuple(vecs)
    raise GenerationError(
        f"no generic configuration found for m={m}, r={r} after {retries} samples"
    )


def _combinations(m, r):
    from itertools import combinations as _c

    return _c(range(m), r)


def gen_uniform_om(m: int, r: int, seed: int = 0) -> tuple[SignSystem, Family]:
    """A realizable uniform OM of rank r on m elements, covectors and topes.

    Samples integer normals until every maximal minor is nonzero, then
    enumerates covectors exactly.  The result is asserted to classify as
    a UOM of rank r with 2 * Phi_{r-1}(m-1) topes.
    """
    if not 1 <= r <= m <= 8:
        raise PreconditionError(f"need 1 <= r <= m <= 8, got r={r}, m={m}")
    if r == 1 and m > 1:
        raise PreconditionError(
            "rank-1 systems on more than one element are never simple"
        )
    arr = Arrangement(r, generic_vectors(m, r, seed))
    system = covectors_of_arrangement(arr)
    topes = Family(m, [x.plus for x in system if x.is_tope()])
    assert len(topes) == 2 * phi(r - 1, m - 1), (
        f"uniform tope count {len(topes)} != 2*Phi_{r - 1}({m - 1})"
    )
    from .comstruct import classify

    rep = classify(topes)
    assert rep.UOM and rep.vcd == r, f"generated system is not a rank-{r} UOM: {rep.reasons}"
    return system, topes


def gen_realizable_com(arr: Arrangement) -> Family:
    """Topes of an arrangement restricted to an open region; must be a COM."""
    eqs, ineqs = [], list(arr.region)
    if not fm_feasible(eqs, ineqs, arr.r):
        raise GenerationError("the region is empty")
    topes = topes_of_arrangement(arr)
    from .comstruct import classify

    rep = classify(topes)
    assert rep.COM, f"realizable tope set failed to classify as a COM: {rep.reasons}"
    return topes


def perturb_to_uniform(arr: Arrangement, seed: int = 0, *, retries: int = 100) -> Arrangement:
    """Perturb a central arrangement into general position, keeping all topes.

    Every original tope cone contains an exact rational interior point z;
    scaling the original normals by K with K |v.z| > |u.z| for the random
    integer offset u keeps sign(v'.z) = sign(v.z) at every such z, so the
    perturbed tope set is a superset.
    """
    if arr.region:
        raise PreconditionError("perturbation applies to central arrangements only")
    samples = []
    for signs in _sign_dfs(arr, (1, -1)):
        eqs, ineqs = _sign_constraints(arr, list(signs))
        z = fm_sample(eqs, ineqs, arr.r)
        assert z is not None
        samples.append(z)
    rng = random.Random(seed)
    for _ in range(retries):
        offs = [tuple(rng.randint(-3, 3) for _ in range(arr.r)) for _ in range(arr.m)]
        k = 1
        for v, u in zip(arr.vectors, offs):
            for z in samples:
                vz = sum(Fraction(c) * x for c, x in zip(v, z))
                uz = sum(Fraction(c) * x for c, x in zip(u, z))
                if uz != 0:
                    k = max(k, int(abs(uz) / abs(vz)) + 1)
        new_vecs = tuple(
            tuple(k * c + d for c, d in zip(v, u)) for v, u in zip(arr.vectors, offs)
        )
        if any(not any(v) for v in new_vecs):
            continue
        if all(_int_det([new_vecs[i] for i in combo]) != 0
               for combo in _combinations(arr.m, arr.r)):
            return Arrangement(arr.r, new_vecs)
    raise GenerationError(f"no uniform perturbation found after {retries} samples")


# ---------------------------------------------------------------------------
# combinators

def product(f1: Family, f2: Family) -> Family:
    """Cartesian product, concatenating coordinates (f2 shifted up)."""
    verts = [v | (w << f1.m) for v in f1.vertices for w in f2.vertices]
    return Family(f1.m + f2.m, verts)


def even_cycle(k: int) -> Family:
    """The cycle C_{2k} isometrically embedded in Q_k (odd cycles are not
    partial cubes, so only even lengths exist here)."""
    if k < 2:
        raise PreconditionError(f"even_cycle needs k >= 2 (cycle length 2k), got {k}")
    verts = []
    v = 0
    for i in range(k):
        verts.append(v)
        v ^= 1 << i
    for i in range(k):
        verts.append(v)
        v ^= 1 << i
    return Family(k, verts)


def path(k: int) -> Family:
    """The path P_k on k vertices, embedded in Q_{k-1} as prefix masks."""
    if k < 1:
        raise PreconditionError(f"path needs k >= 1 vertices, got {k}")
    return Family(k - 1, [(1 << i) - 1 for i in range(k)])


_RD_SEED = 1  # fixed seed; 4 generic central planes in R^3, 14 regions


def named(name: str) -> Family:
    """Named families: "RD", "Qd", "C<2k>" (even cycle by length), "P<k>"."""
    if name == "RD":
        return gen_uniform_om(4, 3, _RD_SEED)[1]
    if name.startswith("Q") and name[1:].isdigit():
        d = int(name[1:])
        if d > 10:
            raise ResourceLimitError(f"Q_{d} has too many vertices for desk scale")
        return Family(d, range(1 << d))
    if name.startswith("C") and name[1:].isdigit():
        n = int(name[1:])
        if n % 2 or n < 4:
            raise PreconditionError(f"cycle C_{n} is not a partial cube")
        return even_cycle(n // 2)
    if name.startswith("P") and name[1:].isdigit():
        return path(int(name[1:]))
    raise PreconditionError(f"unknown named family {name!r}")


# ---------------------------------------------------------------------------
# canonical form under signed coordinate permutations

class CanonicalKey(NamedTuple):
    """Canonical vertex-set bitvector of the normalized family."""

    span: int
    code: int


_GROUP_TABLES: dict[int, np.ndarray] = {}


def _group_table(k: int) -> np.ndarray:
    """Vertex image table for the hyperoctahedral group on Q_k."""
    tab = _GROUP_TABLES.get(k)
    if tab is None:
        n = 1 << k
        verts = np.arange(n)
        bits = [(verts >> i) & 1 for i in range(k)]
        rows = []
        for perm in permutations(range(k)):
            permuted = np.zeros(n, dtype=np.int64)
            for i in range(k):
                permuted |= bits[i] << perm[i]
            for flip in range(n):
                rows.append(permuted ^ flip)
        tab = np.array(rows, dtype=np.int64)
        _GROUP_TABLES[k] = tab
    return tab


def canonical_form(f: Family) -> CanonicalKey:
    """Minimum vertex-set code over all signed coordinate permutations.

    The family is first normalized onto its non-constant coordinates, so
    equal keys mean: equivalent after relabeling and complementing the
    coordinates that actually occur.
    """
    norm = f.normalized()
    k = norm.m
    if k == 0:
        return CanonicalKey(0, 1 if f.vertices else 0)
    if k > 6:
        raise ResourceLimitError(f"canonical form over 2^{k} * {k}! transforms refused")
    tab = _group_table(k)
    n = 1 << k
    char = np.zeros(n, dtype=bool)
    char[list(norm.vertices)] = True
    images = np.zeros((tab.shape[0], n), dtype=bool)
    images[np.arange(tab.shape[0])[:, None], tab] = char[None, :]
    weights = np.uint64(1) << np.arange(n, dtype=np.uint64)
    codes = (images * weights).sum(axis=1, dtype=np.uint64)
    return CanonicalKey(k, int(codes.min()))


def family_from_key(key: CanonicalKey) -> Family:
    """The canonical representative family encoded by a key."""
    return Family(key.span, [v for v in range(1 << key.span) if key.code >> v & 1])


# ---------------------------------------------------------------------------
# enumeration of partial cubes by isometric expansions

def _step_masks(verts: tuple[int, ...]):
    """step[u][v] = bitmask of neighbors of u one step closer to v."""
    n = len(verts)
    nbr = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            x = verts[i] ^ verts[j]
            if x & (x - 1) == 0:
                nbr[i] |= 1 << j
                nbr[j] |= 1 << i
    # BFS distances
    dist = [[255] * n for _ in range(n)]
    for s in range(n):
        row = dist[s]
        row[s] = 0
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for i in frontier:
                mask = nbr[i]
                while mask:
                    b = mask & -mask
                    j = b.bit_length() - 1
                    mask &= ~b
                    if row[j] == 255:
                        row[j] = d
                        nxt.append(j)
            frontier = nxt
    step = [[0] * n for _ in range(n)]
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            target = dist[u][v] - 1
            mask = nbr[u]
            acc = 0
            while mask:
                b = mask & -mask
                w = b.bit_length() - 1
                mask &= ~b
                if dist[w][v] == target:
                    acc |= b
            step[u][v] = acc
    return nbr, step


def _isometric_subsets(verts: tuple[int, ...]) -> list[int]:
    """Index bitmasks of all isometric (hence connected) vertex subsets."""
    n = len(verts)
    nbr, step = _step_masks(verts)
    out = []
    for s in range(1, 1 << n):
        bits = []
        t = s
        ok = True
        while t:
            b = t & -t
            bits.append(b.bit_length() - 1)
            t &= ~b
        for u in bits:
            row = step[u]
            for v in bits:
                if u != v and not s & row[v]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(s)
    return out


def isometric_covers(f: Family) -> Iterator[tuple[Family, Family]]:
    """All isometric covers (g1, g2) of the family, as vertex families.

    A cover satisfies: both parts isometric, union everything, shared part
    nonempty, and every edge inside one of the parts.
    """
    verts = f.sorted_vertices
    n = len(verts)
    if n > 20:
        raise ResourceLimitError(f"cover enumeration over 2^{n} subsets refused")
    iso = _isometric_subsets(verts)
    nbr, _ = _step_masks(verts)
    full = (1 << n) - 1

    def closed_nbhd(mask: int) -> int:
        acc = mask
        t = mask
        while t:
            b = t & -t
            acc |= nbr[b.bit_length() - 1]
            t &= ~b
        return acc

    def to_family(mask: int) -> Family:
        return Family(f.m, [verts[i] for i in range(n) if mask >> i & 1])

    for s1 in iso:
        need = closed_nbhd(full & ~s1)
        for s2 in iso:
            if s2 & need == need and s2 & s1:
                yield to_family(s1), to_family(s2)


def _expansion(f: Family, g1: Family, g2: Family) -> Family:
    new_bit = 1 << f.m
    return Family(f.m + 1, set(g1.vertices) | {v | new_bit for v in g2.vertices})


def enumerate_partial_cubes(m: int, progress=None) -> Iterator[tuple[CanonicalKey, Family]]:
    """All partial cubes of isometric dimension <= m, one per equivalence class.

    Breadth-first isometric expansions from a single vertex, deduplicated
    by canonical form at every level; yields canonical representatives in
    key order, level by level.  `progress(level, done, total)` is called
    once per processed parent and may raise to abort.
    """
    if m > 5:
        raise ResourceLimitError("exhaustive enumeration is guarded at isometric dimension 5")
    level = {canonical_form(Family(0, [0])): Family(0, [0])}
    for key in sorted(level):
        yield key, level[key]
    for k in range(m):
        nxt: dict[CanonicalKey, Family] = {}
        parents = [level[key] for key in sorted(level)]
        for idx, fam in enumerate(parents):
            for g1, g2 in isometric_covers(fam):
                key = canonical_form(_expansion(fam, g1, g2))
                if key not in nxt:
                    nxt[key] = family_from_key(key)
            if progress is not None:
                progress(k + 1, idx + 1, len(parents))
        level = nxt
        for key in sorted(level):
            yield key, level[key]


# ---------------------------------------------------------------------------
# file I/O

def load_family(source) -> Family:
    """Family JSON: {"m": 5, "vertices": ["01101", ...], "bit_order": ...}.

    Vertices may be bitstrings (element 1 leftmost by default) or plain
    integer masks.
    """
    text = _read_text(source)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    try:
        m = int(obj["m"])
    except (KeyError, TypeError, ValueError):
        raise ParseError("family file needs an integer field 'm'") from None
    bit_order = obj.get("bit_order", "msb_element_1")
    if bit_order not in ("msb_element_1", "msb_element_m"):
        raise ParseError(f"unknown bit_order {bit_order!r}")
    verts = []
    for i, item in enumerate(obj.get("vertices", [])):
        if isinstance(item, str):
            try:
                verts.append(str_to_mask(item, m, bit_order))
            except ValueError as exc:
                raise ParseError(f"vertex {i}: {exc}") from None
        elif isinstance(item, int):
            verts.append(item)
        else:
            raise ParseError(f"vertex {i}: expected bitstring or integer, got {item!r}")
    try:
        return Family(m, verts)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def save_family(f: Family, target) -> None:
    obj = {
        "m": f.m,
        "bit_order": "msb_element_1",
        "vertices": [mask_to_str(v, f.m) for v in f],
    }
    _write_text(target, json.dumps(obj, indent=2) + "\n")


def load_signsystem(source) -> SignSystem:
    return SignSystem.from_text(_read_text(source))


def save_signsystem(sys: SignSystem, target) -> None:
    _write_text(target, sys.to_text())


def save_trace(trace, target) -> None:
    _write_text(target, json.dumps(trace.as_dict(), indent=2) + "\n")


def export_dot(f: Family) -> str:
    """DOT text of the induced graph; edges carry their coordinate label."""
    lines = ["graph partial_cube {", "  node [shape=box];"]
    for v in f:
        lines.append(f'  "{mask_to_str(v, f.m)}";')
    for v in f:
        for e in range(1, f.m + 1):
            w = v ^ (1 << (e - 1))
            if w > v and w in f:
                lines.append(
                    f'  "{mask_to_str(v, f.m)}" -- "{mask_to_str(w, f.m)}" [label="{e}"];'
                )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _read_text(source) -> str:
    if hasattr(source, "read"):
        return source.read()
    return Path(source).read_text(encoding="utf-8")


def _write_text(target, text: str) -> None:
    if hasattr(target, "write"):
        target.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")
