"""Sign vectors and systems of sign vectors.

A sign vector on the ground set {1, ..., m} is a pair of disjoint bitmasks
(plus, minus); element e corresponds to bit e-1.  The text form writes one
covector per line over {+,-,0} with element 1 leftmost, e.g. "+0-".

The axiom checks here are deliberately brute force: composition (C),
strong elimination (SE), symmetry (Sym), face symmetry (FS), ideal
composition (IC), and simplicity are each decided by exhaustive search
over covector pairs and elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import DimensionError, ParseError, PreconditionError
from .family import Family, element_mask

__all__ = [
    "SignVector",
    "SignSystem",
    "compose",
    "separator",
    "minor",
    "upset_closure",
    "AxiomReport",
    "axiom_report",
    "topes_and_cocircuits",
    "rank_of",
    "is_uom_by_cocircuits",
    "simplify",
]

_SIGN_CHARS = {"+": 1, "-": -1, "0": 0}


class SignVector:
    """Immutable element of {+1,-1,0}^m as disjoint (plus, minus) bitmasks."""

    __slots__ = ("m", "plus", "minus")

    def __init__(self, m: int, plus: int, minus: int):
        if not 0 <= m <= 32:
            raise ValueError(f"ground set size {m} outside supported range 0..32")
        if plus & minus:
            raise ValueError(f"plus and minus masks overlap on {plus & minus:#x}")
        top = 1 << m
        if not (0 <= plus < top and 0 <= minus < top):
            raise ValueError(f"masks do not fit in {m} bits")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)

    def __setattr__(self, *_):
        raise AttributeError("SignVector is immutable")

    @classmethod
    def from_string(cls, s: str) -> "SignVector":
        plus = minus = 0
        for i, ch in enumerate(s):
            sign = _SIGN_CHARS.get(ch)
            if sign is None:
                raise ValueError(f"invalid sign character {ch!r} in {s!r}")
            if sign > 0:
                plus |= 1 << i
            elif sign < 0:
                minus |= 1 << i
        return cls(len(s), plus, minus)

    @classmethod
    def zero(cls, m: int) -> "SignVector":
        return cls(m, 0, 0)

    @property
    def support(self) -> int:
        return self.plus | self.minus

    @property
    def zero_set(self) -> int:
        return ~(self.plus | self.minus) & ((1 << self.m) - 1)

    def is_tope(self) -> bool:
        return self.support == (1 << self.m) - 1

    def is_zero(self) -> bool:
        return self.plus == 0 and self.minus == 0

    def sign(self, e: int) -> int:
        """Sign at element e (1-based): +1, -1, or 0."""
        b = 1 << (e - 1)
        if self.plus & b:
            return 1
        if self.minus & b:
            return -1
        return 0

    def __neg__(self) -> "SignVector":
        return SignVector(self.m, self.minus, self.plus)

    def __le__(self, other: "SignVector") -> bool:
        """Product order with 0 below both signs."""
        return (
            self.m == other.m
            and self.plus & ~other.plus == 0
            and self.minus & ~other.minus == 0
        )

    def __lt__(self, other: "SignVector") -> bool:
        return self <= other and self != other

    def sort_key(self) -> tuple[int, int]:
        return (self.plus, self.minus)

    def __eq__(self, other):
        return (
            isinstance(other, SignVector)
            and self.m == other.m
            and self.plus == other.plus
            and self.minus == other.minus
        )

    def __hash__(self):
        return hash((self.m, self.plus, self.minus))

    def __str__(self):
        return "".join(
            "+" if self.plus >> i & 1 else "-" if self.minus >> i & 1 else "0"
            for i in range(self.m)
        )

    def __repr__(self):
        return f"SignVector({str(self)!r})"


def _check_same_ground(x: SignVector, y: SignVector):
    if x.m != y.m:
        raise DimensionError(f"sign vectors on different ground sets: {x.m} vs {y.m}")


def compose(x: SignVector, y: SignVector) -> SignVector:
    """x with its zeros filled from y; associative and idempotent."""
    _check_same_ground(x, y)
    s = x.support
    return SignVector(x.m, x.plus | (y.plus & ~s), x.minus | (y.minus & ~s))


def separator(x: SignVector, y: SignVector) -> int:
    """Mask of elements where x and y carry opposite nonzero signs."""
    _check_same_ground(x, y)
    return (x.plus & y.minus) | (x.minus & y.plus)


class SignSystem:
    """A deduplicated set of sign vectors on a common ground set.

    Covectors are stored sorted by their (plus, minus) masks so every
    derived report is byte-stable.
    """

    def __init__(self, m: int, covectors: Iterable[SignVector] = ()):
        if not 0 <= m <= 32:
            raise ValueError(f"ground set size {m} outside supported range 0..32")
        seen = set()
        for x in covectors:
            if x.m != m:
                raise DimensionError(f"covector {x} has {x.m} elements, system has {m}")
            seen.add(x)
        self.m = m
        self.covectors = tuple(sorted(seen, key=SignVector.sort_key))
        self._set = frozenset(seen)

    @classmethod
    def from_text(cls, text: str) -> "SignSystem":
        """Parse the one-covector-per-line format; '#' starts a comment."""
        vecs = []
        m = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            for col, ch in enumerate(line, start=1):
                if ch not in _SIGN_CHARS:
                    raise ParseError(
                        f"invalid sign character {ch!r}", line=lineno, column=col
                    )
            if m is None:
                m = len(line)
            elif len(line) != m:
                raise ParseError(
                    f"covector has {len(line)} elements, expected {m}", line=lineno
                )
            vecs.append(SignVector.from_string(line))
        if m is None:
            raise ParseError("no covectors found in input")
        return cls(m, vecs)

    def to_text(self) -> str:
        return "\n".join(str(x) for x in self.covectors) + "\n"

    def __len__(self):
        return len(self.covectors)

    def __iter__(self):
        return iter(self.covectors)

    def __contains__(self, x):
        return x in self._set

    def __eq__(self, other):
        return (
            isinstance(other, SignSystem)
            and self.m == other.m
            and self._set == other._set
        )

    def __hash__(self):
        return hash((self.m, self._set))

    def __repr__(self):
        return f"SignSystem(m={self.m}, {len(self)} covectors)"

    @cached_property
    def zero_in(self) -> bool:
        return SignVector.zero(self.m) in self._set


def minor(sys: SignSystem, delete: int | Iterable[int] = (), contract: int | Iterable[int] = ()) -> SignSystem:
    """Delete and/or contract element sets, renumbering the survivors.

    Deletion restricts every covector; contraction keeps only covectors
    whose support avoids the contracted set, then restricts.
    """
    dmask = element_mask(delete, sys.m)
    cmask = element_mask(contract, sys.m)
    if dmask & cmask:
        raise PreconditionError(
            f"delete and contract sets overlap on mask {dmask & cmask:#x}"
        )
    gone = dmask | cmask
    keep_bits = [i for i in range(sys.m) if not gone >> i & 1]
    new_m = len(keep_bits)

    def project(mask: int) -> int:
        out = 0
        for j, i in enumerate(keep_bits):
            if mask >> i & 1:
                out |= 1 << j
        return out

    vecs = []
    for x in sys.covectors:
        if x.support & cmask:
            continue
        vecs.append(SignVector(new_m, project(x.plus), project(x.minus)))
    return SignSystem(new_m, vecs)


def upset_closure(sys: SignSystem) -> SignSystem:
    """All sign vectors above some covector in the 0 <= +/- product order."""
    out = set(sys.covectors)
    frontier = list(out)
    while frontier:
        x = frontier.pop()
        zeros = x.zero_set
        b = zeros & -zeros
        while zeros:
            for filled in (
                SignVector(x.m, x.plus | b, x.minus),
                SignVector(x.m, x.plus, x.minus | b),
            ):
                if filled not in out:
                    out.add(filled)
                    frontier.append(filled)
            zeros &= ~b
            b = zeros & -zeros
    return SignSystem(sys.m, out)


# ---------------------------------------------------------------------------
# axioms

@dataclass(frozen=True)
class AxiomReport:
    C: bool
    SE: bool
    Sym: bool
    FS: bool
    IC: bool
    simple: bool
    is_COM: bool
    is_OM: bool
    is_AMP: bool
    failures: dict = field(default_factory=dict, compare=False)

    def as_dict(self) -> dict:
        return {
            "C": self.C, "SE": self.SE, "Sym": self.Sym, "FS": self.FS,
            "IC": self.IC, "simple": self.simple,
            "is_COM": self.is_COM, "is_OM": self.is_OM, "is_AMP": self.is_AMP,
            "failures": dict(self.failures),
        }


def _check_se(vecs, members) -> tuple[bool, str]:
    """(SE): for every pair and separating element, a witness Z exists.

    The quantifier order makes this an O(|L|^3 * m) scan; above ~150
    covectors the inner witness search is vectorized with numpy.
    """
    n = len(vecs)
    if n > 150:
        return _check_se_np(vecs)
    for i in range(n):
        x = vecs[i]
        for j in range(i + 1, n):
            y = vecs[j]
            sep = (x.plus & y.minus) | (x.minus & y.plus)
            if not sep:
                continue
            s = x.support
            wp = x.plus | (y.plus & ~s)
            wm = x.minus | (y.minus & ~s)
            covered = 0
            for z in vecs:
                if (z.plus ^ wp) & ~sep or (z.minus ^ wm) & ~sep:
                    continue
                covered |= ~(z.plus | z.minus) & sep
                if covered == sep:
                    break
            if covered != sep:
                missing = (sep & ~covered).bit_length()
                return False, f"SE fails for ({x}, {y}) at element {missing}"
    return True, ""


def _check_se_np(vecs) -> tuple[bool, str]:
    import numpy as np

    n = len(vecs)
    full = np.uint64((1 << vecs[0].m) - 1)
    p = np.array([x.plus for x in vecs], dtype=np.uint64)
    mi = np.array([x.minus for x in vecs], dtype=np.uint64)
    zero = ~(p | mi) & full
    for i in range(n):
        pi, mii = p[i], mi[i]
        si = pi | mii
        sep_row = (pi & mi) | (mii & p)
        wp_row = pi | (p & ~si)
        wm_row = mii | (mi & ~si)
        for j in range(i + 1, n):
            sep = sep_row[j]
            if not sep:
                continue
            keep = ~sep
            match = (((p ^ wp_row[j]) & keep) == 0) & (((mi ^ wm_row[j]) & keep) == 0)
            covered = np.bitwise_or.reduce(zero[match] & sep) if match.any() else np.uint64(0)
            if covered != sep:
                missing = int(sep & ~covered).bit_length()
                return False, f"SE fails for ({vecs[i]}, {vecs[j]}) at element {missing}"
    return True, ""


def _check_simple(vecs, m) -> tuple[bool, str]:
    if not vecs:
        return False, "empty system"
    full = (1 << m) - 1
    plus_seen = minus_seen = zero_seen = 0
    for x in vecs:
        plus_seen |= x.plus
        minus_seen |= x.minus
        zero_seen |= ~(x.plus | x.minus) & full
    all_vals = plus_seen & minus_seen & zero_seen
    if all_vals != full:
        e = (~all_vals & full).bit_length()
        return False, f"element {e} does not take all three sign values"
    for e in range(m):
        be = 1 << e
        for f in range(e + 1, m):
            bf = 1 << f
            same = diff = False
            for x in vecs:
                pe, me = x.plus & be, x.minus & be
                pf, mf = x.plus & bf, x.minus & bf
                if (pe and pf) or (me and mf):
                    same = True
                elif (pe and mf) or (me and pf):
                    diff = True
                if same and diff:
                    break
            if not (same and diff):
                return False, f"elements {e + 1} and {f + 1} are indistinguishable"
    return True, ""


def axiom_report(sys: SignSystem) -> AxiomReport:
    """Decide (C), (SE), (Sym), (FS), (IC) and simplicity by brute force.

    Derived flags: COM = SE & FS; OM = COM plus the zero vector (also
    cross-checked against SE & Sym & C); AMP = COM & IC.
    """
    vecs = sys.covectors
    members = sys._set
    failures: dict[str, str] = {}
    if not vecs:
        return AxiomReport(True, True, True, True, True, False, True, False, False,
                           {"simple": "empty system"})

    c = True
    for x in vecs:
        for y in vecs:
            if compose(x, y) not in members:
                c = False
                failures["C"] = f"{x} o {y} missing"
                break
        if not c:
            break

    sym = all(-x in members for x in vecs)
    if not sym:
        failures["Sym"] = next(f"-{x} missing" for x in vecs if -x not in members)

    fs = True
    for x in vecs:
        for y in vecs:
            if compose(x, -y) not in members:
                fs = False
                failures["FS"] = f"{x} o -{y} missing"
                break
        if not fs:
            break

    se, why = _check_se(vecs, members)
    if not se:
        failures["SE"] = why

    # closure under single zero-fills is equivalent to the full upset condition
    ic = True
    for x in vecs:
        zeros = x.zero_set
        while zeros and ic:
            b = zeros & -zeros
            if (SignVector(sys.m, x.plus | b, x.minus) not in members
                    or SignVector(sys.m, x.plus, x.minus | b) not in members):
                ic = False
                failures["IC"] = f"upset of {x} at element {b.bit_length()} missing"
            zeros &= ~b

    simple, why = _check_simple(vecs, sys.m)
    if not simple:
        failures["simple"] = why

    is_com = se and fs
    is_om = is_com and sys.zero_in
    alt_om = se and sym and c
    assert is_om == alt_om, "the two OM characterizations disagree (internal bug)"
    is_amp = is_com and ic
    return AxiomReport(c, se, sym, fs, ic, simple, is_com, is_om, is_amp, failures)


# ---------------------------------------------------------------------------
# topes, cocircuits, rank

def topes_and_cocircuits(sys: SignSystem) -> tuple[Family, tuple[SignVector, ...]]:
    """Full-support covectors as Q_m vertices, and the support-minimal ones.

    Tope T maps to the vertex whose element e is present exactly when
    T_e = +1.  The system must be simple.
    """
    simple, why = _check_simple(sys.covectors, sys.m)
    if not simple:
        raise PreconditionError(f"system is not simple: {why}")
    full = (1 << sys.m) - 1
    topes = [x.plus for x in sys.covectors if x.support == full]
    nonzero = [x for x in sys.covectors if x.support]
    cocircuits = tuple(
        x for x in nonzero
        if not any(y.support & ~x.support == 0 and y.support != x.support for y in nonzero)
    )
    return Family(sys.m, topes), cocircuits


def rank_of(sys: SignSystem) -> int:
    """Length of the longest chain from the zero vector to a tope.

    Cross-checked against the VC-dimension of the tope family, which must
    agree for oriented matroids.
    """
    rep = axiom_report(sys)
    if not rep.is_OM:
        raise PreconditionError(f"rank is defined for OMs only: {rep.failures}")
    order = sorted(sys.covectors, key=lambda x: x.support.bit_count())
    height = {x: 0 for x in order}
    for i, x in enumerate(order):
        for y in order[:i]:
            if y < x and height[y] + 1 > height[x]:
                height[x] = height[y] + 1
    rank = max(height.values())
    from .family import vc_dim

    topes, _ = topes_and_cocircuits(sys)
    assert rank == vc_dim(topes), (
        f"rank {rank} disagrees with tope VC-dimension {vc_dim(topes)}"
    )
    return rank


def is_uom_by_cocircuits(sys: SignSystem) -> bool:
    """Cocircuit test for uniformity: all (m-r+1)-subsets, signed both ways.

    Cross-checked against the face-based test on the tope graph (every
    proper face a hypercube).
    """
    rep = axiom_report(sys)
    if not rep.is_OM:
        raise PreconditionError(f"uniformity is defined for OMs only: {rep.failures}")
    r = rank_of(sys)
    topes, cocircuits = topes_and_cocircuits(sys)
    size = sys.m - r + 1
    by_support: dict[int, list[SignVector]] = {}
    for x in cocircuits:
        by_support.setdefault(x.support, []).append(x)
    from math import comb

    ok = (
        all(s.bit_count() == size for s in by_support)
        and len(by_support) == comb(sys.m, size)
        and all(len(v) == 2 and v[0] == -v[1] for v in by_support.values())
    )
    from . import comstruct  # local import to avoid a cycle

    face_ok = comstruct.classify(topes).UOM
    assert ok == face_ok, "cocircuit and face tests for uniformity disagree"
    return ok


def simplify(sys: SignSystem) -> tuple[SignSystem, tuple[int, ...]]:
    """Greedily delete redundant elements in index order until simple.

    For an indistinguishable pair the larger index is dropped, so the
    result can depend on the numbering; this is the documented policy.
    """
    cur = sys
    removed: list[int] = []
    # map current indices back to original element ids
    alive = list(range(1, sys.m + 1))
    while True:
        ok, why = _check_simple(cur.covectors, cur.m)
        if ok or cur.m == 0:
            return cur, tuple(removed)
        full = (1 << cur.m) - 1
        plus_seen = minus_seen = zero_seen = 0
        for x in cur.covectors:
            plus_seen |= x.plus
            minus_seen |= x.minus
            zero_seen |= ~(x.plus | x.minus) & full
        bad = ~(plus_seen & minus_seen & zero_seen) & full
        if bad:
            e = (bad & -bad).bit_length()  # smallest offending element, 1-based
        else:
            e = None
            for a in range(cur.m):
                for b in range(a + 1, cur.m):
                    ba, bb = 1 << a, 1 << b
                    same = diff = False
                    for x in cur.covectors:
                        pa, ma = x.plus & ba, x.minus & ba
                        pb, mb = x.plus & bb, x.minus & bb
                        if (pa and pb) or (ma and mb):
                            same = True
                        elif (pa and mb) or (ma and pb):
                            diff = True
                    if not (same and diff):
                        e = b + 1  # drop the later element of the pair
                        break
                if e is not None:
                    break
            assert e is not None
        removed.append(alive[e - 1])
        del alive[e - 1]
        cur = minor(cur, delete=(e,), contract=())
