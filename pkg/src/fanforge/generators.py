"""Stratum-compatible generating systems.

A generating system picks one basis per level so that, for every k <= j,
the part of the level-k basis reaching depth j is itself a basis of that
stratum, and so that basis members are closed under taking successors.
These two properties are what the constructive isomorphism engine needs.

The construction works top down: a tower of extensions inside level 1,
then per level a block of generators under one fixed deep basis element
plus a single lift for every other basis element that reaches deeper.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .chains import ChainChar
from .levels import PropertyReport, basis_of, closure, extend_basis, is_dependent
from .spectral import FanSpace


@dataclass(frozen=True)
class LevelStep:
    """Construction record for one level: the fixed deep element, the
    basis block chosen under it, and the lift chosen for each remaining
    basis element of the previous level."""

    h0: ChainChar | None
    block: tuple[ChainChar, ...]
    lifts: tuple[tuple[ChainChar, ChainChar], ...]  # (previous-level h, lift g_h)


@dataclass(frozen=True)
class GeneratingSystem:
    bases: tuple[tuple[ChainChar, ...], ...]
    steps: tuple[LevelStep, ...]
    provenance: tuple[tuple[ChainChar, tuple], ...] = ()

    def level_basis(self, k: int) -> tuple[ChainChar, ...]:
        return self.bases[k - 1]

    def members(self) -> tuple[ChainChar, ...]:
        return tuple(g for basis in self.bases for g in basis)

    def provenance_of(self, g: ChainChar) -> tuple:
        """Which construction branch produced g: ('tower', stage),
        ('block', h0) or ('lift', previous-level element)."""
        for member, record in self.provenance:
            if member == g:
                return record
        raise KeyError(g)


class _Policy:
    """Choice points: lexicographically least, or uniform draws under a seed."""

    def __init__(self, seed: int | None):
        self.rng = None if seed is None else random.Random(seed)

    def pick(self, candidates) -> ChainChar:
        candidates = sorted(candidates)
        if not candidates:
            raise ValueError("no candidate available")
        return candidates[0] if self.rng is None else self.rng.choice(candidates)

    def order(self, items) -> list[ChainChar]:
        items = sorted(items)
        if self.rng is not None:
            self.rng.shuffle(items)
        return items


def _under(space: FanSpace, members, h: ChainChar) -> list[ChainChar]:
    k = h.depth
    return [g for g in members if space.successor(g, k) == h]


def fiber_tower_basis(space: FanSpace, h0: ChainChar, level: int,
                      policy: "_Policy") -> tuple[ChainChar, ...]:
    """Basis of the level-`level` characters under h0, adapted to depth reach.

    For every j the members reaching depth j form a basis of that part
    of the fiber; built by extending upward from the deepest stratum.
    """
    n = space.length
    fiber = lambda j: _under(space, space.stratum_members("S", level, j), h0)
    basis = basis_of(space, fiber(n), order=policy.order(fiber(n)))
    for j in range(n - 1, level - 1, -1):
        members = fiber(j)
        basis = extend_basis(space, basis, members, order=policy.order(members))
    return basis


def choose_basis(space: FanSpace, stratum_members, level_basis, preds_basis,
                 lifts) -> tuple[ChainChar, ...]:
    """Assemble a basis of a stratum from one predecessor fan plus lifts.

    stratum_members is a closed subfan G of some level k+1; level_basis
    is a basis h1..hr of its depth-k successor fan; preds_basis is a
    basis of the part of G under h1; lifts are elements of G under
    h2..hr in order.  Requires the fiber counts over the successor fan
    to agree; the union is then a basis of G.
    """
    G = tuple(stratum_members)
    B = tuple(level_basis)
    C = tuple(preds_basis)
    lifts = tuple(lifts)
    if not G or not B:
        raise ValueError("stratum and successor basis must be nonempty")
    k = B[0].depth
    F = sorted({space.successor(g, k) for g in G})

    counts = {h: len(_under(space, G, h)) for h in F}
    if len(set(counts.values())) != 1:
        raise ValueError(f"fiber counts over the successor fan differ: {counts}")
    if set(closure(space, B)) != set(F) or is_dependent(space, B):
        raise ValueError("level_basis is not a basis of the successor fan")
    A1 = _under(space, G, B[0])
    if set(closure(space, C)) != set(A1) or is_dependent(space, C):
        raise ValueError("preds_basis is not a basis of the fan under h1")
    if len(lifts) != len(B) - 1:
        raise ValueError(f"need {len(B) - 1} lifts, got {len(lifts)}")
    for g, h in zip(lifts, B[1:]):
        if g not in G or space.successor(g, k) != h:
            raise ValueError(f"lift {g} does not sit under {h}")

    result = C + lifts
    if is_dependent(space, result):
        raise ValueError("assembled set is dependent")
    p = len(C)
    r = len(B)
    assert len(G) == 1 << (p + r - 2) and len(result) == p + r - 1
    return result


def standard_generating_system(space: FanSpace, seed: int | None = None) -> GeneratingSystem:
    """Build a generating system; deterministic without a seed.

    Seeded runs draw uniformly at every choice point and are reproducible
    for a fixed seed.
    """
    policy = _Policy(seed)
    n = space.length
    provenance: list[tuple[ChainChar, tuple]] = []

    basis = basis_of(space, space.stratum_members("S", 1, n),
                     order=policy.order(space.stratum_members("S", 1, n)))
    for j in range(n - 1, 0, -1):
        members = space.stratum_members("S", 1, j)
        basis = extend_basis(space, basis, members, order=policy.order(members))
    provenance += [(g, ("tower", space.deep(g))) for g in basis]
    bases = [basis]
    steps = [LevelStep(h0=None, block=basis, lifts=())]

    for k in range(1, n):
        prev = bases[k - 1]
        deep_part = [g for g in prev if space.deep(g) == n]
        h0 = policy.pick(deep_part)
        # Tower-adapted basis of the whole fiber under h0: start from the
        # deepest stratum and extend stage by stage, so the block meets
        # every stratum of the fiber in a basis.  (A basis of the deepest
        # stratum alone under-spans when part of the fiber stops higher.)
        block = fiber_tower_basis(space, h0, k + 1, policy)
        provenance += [(g, ("block", h0)) for g in block]
        lifts = []
        for h in prev:
            if h == h0 or space.deep(h) < k + 1:
                continue
            jh = space.deep(h)
            eligible = _under(space, space.stratum_members("C", k + 1, jh), h)
            lifts.append((h, policy.pick(eligible)))
        provenance += [(g, ("lift", h)) for h, g in lifts]
        bases.append(block + tuple(g for _, g in lifts))
        steps.append(LevelStep(h0=h0, block=block, lifts=tuple(lifts)))

    return GeneratingSystem(tuple(bases), tuple(steps), tuple(provenance))


def verify_sgs(space: FanSpace, gs: GeneratingSystem) -> PropertyReport:
    """Check stratum-compatibility, successor closure, and level spanning."""
    report = PropertyReport()
    n = space.length
    for k in range(1, n + 1):
        bk = gs.level_basis(k)
        report.add(f"spans-level({k})",
                   set(closure(space, bk)) == set(space.level(k))
                   and not is_dependent(space, bk))
        for j in range(k, n + 1):
            part = tuple(g for g in bk if space.deep(g) >= j)
            members = set(space.stratum_members("S", k, j))
            good = (set(closure(space, part)) == members
                    and (not part or not is_dependent(space, part)))
            report.add(f"stratum-basis({k},{j})", good,
                       tuple(part) if not good else ())
    all_members = {k: set(gs.level_basis(k)) for k in range(1, n + 1)}
    for m in range(1, n + 1):
        for k in range(1, m + 1):
            ok = all(space.successor(g, k) in all_members[k] for g in gs.level_basis(m))
            report.add(f"successor-closure({k},{m})", ok)
    return report
