"""Combinatorial geometry of levels and their product involutions.

Each level of a fan is an affine set of GF(2) functionals (those
sending the marked minus vector to 1).  Dependence of same-level
characters is the functional identity g = g1*...*gr with r odd, which
over GF(2) is linear dependence of the homogenized masks; all the basis
machinery reduces to elimination on those vectors.

Multiplying a level by two fixed characters of deeper zero-set is a
translation, hence an involution of the level.  verify_involution
checks the full property suite of that family on a concrete space.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import gf2
from .chains import ChainChar
from .spectral import FanSpace


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: tuple = ()


@dataclass
class PropertyReport:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: tuple = ()) -> None:
        self.checks.append(CheckResult(name, passed, witness))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]


def _level_of(space: FanSpace, chars) -> int:
    chars = tuple(chars)
    if not chars:
        raise ValueError("need at least one character")
    d = chars[0].depth
    if any(h.depth != d for h in chars):
        raise ValueError("characters come from mixed depths")
    return d


def _homogenized(space: FanSpace, chars) -> list[int]:
    d = _level_of(space, chars)
    k = space.dim(d)
    return [h.mask | (1 << k) for h in chars]


def is_dependent(space: FanSpace, chars) -> bool:
    """True when some member is a product of other (odd many) members."""
    chars = tuple(chars)
    if not chars:
        return False
    vectors = _homogenized(space, chars)
    return gf2.rank(vectors) < len(vectors)


def closure(space: FanSpace, chars) -> tuple[ChainChar, ...]:
    """All products of an odd number of members (the closed hull)."""
    chars = tuple(chars)
    if not chars:
        return ()
    d = _level_of(space, chars)
    masks = gf2.affine_span(h.mask for h in chars)
    return tuple(ChainChar(d, m) for m in sorted(masks))


def extend_basis(space: FanSpace, indep, target, order=None) -> tuple[ChainChar, ...]:
    """Grow an independent set to a basis of the span of indep plus target.

    Candidates are scanned in functional order unless an explicit order
    is supplied (used by seeded construction policies).
    """
    indep = tuple(indep)
    target = tuple(target)
    if indep and target:
        if _level_of(space, indep) != _level_of(space, target):
            raise ValueError("characters come from mixed depths")
    span = gf2.Span()
    for v in _homogenized(space, indep) if indep else []:
        if not span.add(v):
            raise ValueError("starting set is dependent")
    chosen = list(indep)
    scan = sorted(target) if order is None else list(order)
    for h in scan:
        d = h.depth
        if span.add(h.mask | (1 << space.dim(d))):
            chosen.append(h)
    return tuple(chosen)


def basis_of(space: FanSpace, chars, order=None) -> tuple[ChainChar, ...]:
    return extend_basis(space, (), chars, order)


def dimension(space: FanSpace, chars) -> int:
    """Matroid dimension; a closed set of size 2^(s-1) has dimension s."""
    return len(basis_of(space, chars))


def kappa(space: FanSpace, d: int, e: int) -> dict[ChainChar, ChainChar]:
    """The successor map from level e down to level d (d <= e)."""
    if not 1 <= d <= e <= space.length:
        raise ValueError(f"need 1 <= d <= e <= {space.length}")
    return {g: space.successor(g, d) for g in space.level(e)}


@dataclass(frozen=True)
class InvolutionHandle:
    """Two characters and a target level with both zero-sets below it."""

    g1: ChainChar
    g2: ChainChar
    level: int

    def __post_init__(self):
        if self.level > min(self.g1.depth, self.g2.depth):
            raise ValueError(
                f"target level {self.level} above the handle characters "
                f"(depths {self.g1.depth}, {self.g2.depth})")


def translation_mask(space: FanSpace, g1: ChainChar, g2: ChainChar, d: int) -> int:
    """The shift by which h -> h*g1*g2 acts on level d functionals."""
    return space.successor(g1, d).mask ^ space.successor(g2, d).mask


def involution(space: FanSpace, handle: InvolutionHandle, h: ChainChar) -> ChainChar:
    """Apply h -> h*g1*g2 on the handle's level."""
    if h.depth != handle.level:
        raise ValueError(f"character at depth {h.depth}, handle targets level {handle.level}")
    out = space.triple(h, handle.g1, handle.g2)
    assert out.depth == handle.level
    return out


def verify_involution(space: FanSpace, g1: ChainChar, g2: ChainChar) -> PropertyReport:
    """Check the whole involution family of a character pair.

    Per admissible level d (at or above both zero-sets): level
    automorphism, self-inverse, successor transport g1 -> g2, fixed
    common specializations, and permutation of every stratum.  Per level
    pair d' <= d: compatibility with specialization.
    """
    report = PropertyReport()
    dmin = min(g1.depth, g2.depth)
    shifts = {d: translation_mask(space, g1, g2, d) for d in range(1, dmin + 1)}

    for d in range(1, dmin + 1):
        level = space.level(d)
        members = {h.mask for h in level}
        shift = shifts[d]
        image = {m ^ shift for m in members}
        bijective = image == members
        preserves = space.translation_preserves_triples(d, shift)
        report.add(f"automorphism(level {d})", bijective and preserves, (shift,))
        report.add(
            f"involution(level {d})",
            all((m ^ shift) ^ shift == m for m in members), (shift,))
        s1, s2 = space.successor(g1, d), space.successor(g2, d)
        report.add(
            f"successor-transport(level {d})",
            ChainChar(d, s1.mask ^ shift) == s2, (s1, s2))
        if s1 == s2:
            report.add(
                f"fixed-common-specialization(level {d})",
                s1.mask ^ shift == s1.mask, (s1,))
        for j in range(d, dmin + 1):
            stratum = {h.mask for h in space.stratum_members("S", d, j)}
            report.add(
                f"stratum-permutation(S^{d}_{j})",
                {m ^ shift for m in stratum} == stratum, (shift,))
            # A C-stratum is the difference of two consecutive S-strata, so
            # its permutation needs the handle to reach below index j as
            # well (vacuous when j is the full length).  A depth-j handle
            # can swap a j-deep member with one reaching deeper.
            if j < dmin or j == space.length:
                stratum = {h.mask for h in space.stratum_members("C", d, j)}
                report.add(
                    f"stratum-permutation(C^{d}_{j})",
                    {m ^ shift for m in stratum} == stratum, (shift,))

    compat = True
    witness: tuple = ()
    for h1 in space.chars:
        if h1.depth > dmin or not compat:
            continue
        fh1 = ChainChar(h1.depth, h1.mask ^ shifts[h1.depth])
        for d in range(1, h1.depth):
            h2 = space.successor(h1, d)
            fh2 = ChainChar(d, h2.mask ^ shifts[d])
            if space.successor(fh1, d) != fh2:
                compat, witness = False, (h1, h2)
                break
    report.add("specialization-compat", compat, witness)
    return report


def predecessor_fan(space: FanSpace, h: ChainChar) -> tuple[ChainChar, ...]:
    """Everything specializing to h; closed under triple products."""
    preds = space.predecessors(h)
    pool = set(preds)
    assert all(space.triple(a, b, c) in pool for a in preds for b in preds for c in preds)
    return preds


def embed_predecessors(space: FanSpace, h1: ChainChar, h2: ChainChar, j: int,
                       u1: ChainChar | None = None, u2: ChainChar | None = None,
                       ) -> dict[ChainChar, ChainChar]:
    """Order-embedding of the predecessors of h1 into those of h2.

    Requires depth(h1) = depth(h2) = k with h1 in C^k_j and h2 in S^k_j.
    The map multiplies by a chosen depth-j predecessor of each; when not
    supplied these default to the least ones.  The image is exactly the
    depth <= j part of the predecessors of h2, so the map is onto them
    (an isomorphism) whenever h2 also lies in C^k_j.
    """
    k = h1.depth
    if h2.depth != k:
        raise ValueError("h1 and h2 must share a level")
    if space.deep(h1) != j:
        raise ValueError(f"h1 has predecessors down to depth {space.deep(h1)}, not exactly {j}")
    if space.deep(h2) < j:
        raise ValueError(f"h2 has no predecessor at depth {j}")

    def least_pred_at(h: ChainChar) -> ChainChar:
        cands = [g for g in space.predecessors(h) if g.depth == j]
        return min(cands)

    u1 = least_pred_at(h1) if u1 is None else u1
    u2 = least_pred_at(h2) if u2 is None else u2
    if not (space.specializes(u1, h1) and u1.depth == j):
        raise ValueError("u1 must be a depth-j predecessor of h1")
    if not (space.specializes(u2, h2) and u2.depth == j):
        raise ValueError("u2 must be a depth-j predecessor of h2")

    preds1 = space.predecessors(h1)
    preds2 = set(space.predecessors(h2))
    out = {g: space.triple(g, u1, u2) for g in preds1}
    assert len(set(out.values())) == len(preds1)
    assert set(out.values()) == {u for u in preds2 if u.depth <= j}
    return out
