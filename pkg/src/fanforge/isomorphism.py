"""Representation, morphism tests, forest codes, and constructive isomorphism.

The central fact driving this module: a finite fan is determined up to
isomorphism by its specialization forest.  Accordingly it provides the
canonical forest code, a constructive map builder that mirrors a
generating system level by level, an exhaustive searcher as independent
oracle, a necessary-condition checker for candidate forests, and a
bounded synthesizer that looks for a chain realizing a forest.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import gf2
from .chains import (
    ChainChar,
    FanChain,
    SliceElement,
    chain_elements,
    evaluate_element,
)
from .errors import OrderMismatchError, ResourceLimitError
from .generators import _Policy, fiber_tower_basis, standard_generating_system
from .levels import basis_of, extend_basis, is_dependent
from .spectral import FanSpace, Forest
from .ternary import SIGNS, Violation


# -- representation ---------------------------------------------------------


@dataclass(frozen=True)
class RepWitness:
    """Which representability condition failed, with the offending characters."""

    kind: str            # zero-monotone | specialization-agreement | four-element-product
    data: tuple


@dataclass(frozen=True)
class RepresentResult:
    element: SliceElement | None
    witness: RepWitness | None

    @property
    def ok(self) -> bool:
        return self.element is not None


def _check_values(space: FanSpace, f: dict[ChainChar, int]) -> None:
    if set(f) != set(space.chars):
        raise ValueError("map must be defined on exactly the characters of the space")
    if any(v not in SIGNS for v in f.values()):
        raise ValueError("map values must be +1, 0 or -1")


def preserves_triple_products(space: FanSpace, f: dict[ChainChar, int]) -> bool:
    _check_values(space, f)
    for a, b, c in itertools.combinations_with_replacement(space.chars, 3):
        if f[space.triple(a, b, c)] != f[a] * f[b] * f[c]:
            return False
    return True


def representation_witness(space: FanSpace, f: dict[ChainChar, int]) -> RepWitness | None:
    """First failed representability condition, or None when all hold.

    The three conditions: zeros propagate up the zero-set order; values
    agree along specialization where nonzero; on each level the product
    of evaluations over a dependent four-element set is 1.
    """
    _check_values(space, f)
    for x in space.chars:
        if f[x] != 0:
            continue
        for y in space.chars:
            if y.depth <= x.depth and f[y] != 0:
                return RepWitness("zero-monotone", (x, y))
    for y in space.chars:
        for d in range(1, y.depth + 1):
            x = space.successor(y, d)
            if f[x] != 0 and f[x] != f[y]:
                return RepWitness("specialization-agreement", (x, y))
    for d in range(1, space.length + 1):
        level = space.level(d)
        if all(f[x] == 0 for x in level):
            continue
        for x1, x2, x3 in itertools.combinations(level, 3):
            x4 = space.triple(x1, x2, x3)
            if x4 in (x1, x2, x3):
                continue
            if f[x1] * f[x2] * f[x3] * f[x4] != 1:
                return RepWitness("four-element-product", (x1, x2, x3, x4))
    return None


def evaluation(space: FanSpace, el: SliceElement) -> dict[ChainChar, int]:
    """The map h -> h(el) over the whole character space."""
    return {h: evaluate_element(space.chain, h, el) for h in space.chars}


def represent(space: FanSpace, f: dict[ChainChar, int]) -> RepresentResult:
    """Find the fan element whose evaluation is f, or say why none exists.

    Elements are scanned in the canonical order, so ties (impossible on
    separating fans) would resolve to the least element.
    """
    _check_values(space, f)
    for el in chain_elements(space.chain):
        if all(evaluate_element(space.chain, h, el) == f[h] for h in space.chars):
            return RepresentResult(el, None)
    witness = representation_witness(space, f)
    assert witness is not None, "unrepresentable map with no failed condition"
    return RepresentResult(None, witness)


# -- morphism predicate ------------------------------------------------------


@dataclass(frozen=True)
class MorphismReport:
    same_level_triples: bool
    monotone: bool
    global_triples: bool
    witness: tuple = ()

    @property
    def ok(self) -> bool:
        return self.same_level_triples and self.monotone


def is_ars_morphism(space1: FanSpace, space2: FanSpace,
                    mapping: dict[ChainChar, ChainChar]) -> MorphismReport:
    """Morphism test for a total map between two fan spaces.

    Checks same-level triple preservation and monotonicity, plus the
    global triple criterion; the report records that the two routes
    agree (they must, which is asserted).
    """
    if set(mapping) != set(space1.chars):
        raise ValueError("mapping must be total on the source characters")
    if any(v not in space2.chars for v in mapping.values()):
        raise ValueError("mapping has values outside the target space")

    witness: tuple = ()
    same_level = True
    for d in range(1, space1.length + 1):
        for a, b, c in itertools.combinations_with_replacement(space1.level(d), 3):
            lhs = mapping[space1.triple(a, b, c)]
            rhs = space2.triple(mapping[a], mapping[b], mapping[c])
            if lhs != rhs:
                same_level, witness = False, (a, b, c)
                break
        if not same_level:
            break

    monotone = True
    for g in space1.chars:
        for d in range(1, g.depth):
            h = space1.successor(g, d)
            if not space2.specializes(mapping[g], mapping[h]):
                monotone, witness = False, (g, h)
                break
        if not monotone:
            break

    global_ok = True
    for a, b, c in itertools.combinations_with_replacement(space1.chars, 3):
        lhs = mapping[space1.triple(a, b, c)]
        rhs = space2.triple(mapping[a], mapping[b], mapping[c])
        if lhs != rhs:
            global_ok = False
            break
    assert global_ok == (same_level and monotone)
    return MorphismReport(same_level, monotone, global_ok, witness)


# -- forest canonical form ---------------------------------------------------


def forest_canonical(forest: Forest) -> str:
    """Canonical code: per node the sorted concatenation of child codes."""
    order = sorted(range(len(forest)), key=lambda i: -forest.depths[i])
    codes = [""] * len(forest)
    for i in order:
        kids = sorted(codes[j] for j in forest.children[i])
        codes[i] = "(" + "".join(kids) + ")"
    return "".join(sorted(codes[r] for r in forest.roots))


def forests_isomorphic(f1: Forest, f2: Forest) -> bool:
    return forest_canonical(f1) == forest_canonical(f2)


# -- constructive isomorphism -------------------------------------------------


def _match_stages(space1: FanSpace, part1, space2: FanSpace, part2, fmap: dict) -> None:
    """Pair two tower-built bases stage by stage (members of equal reach)."""
    depths = sorted({space1.deep(g) for g in part1}, reverse=True)
    for j in depths:
        stage1 = [g for g in part1 if space1.deep(g) == j]
        stage2 = [g for g in part2 if space2.deep(g) == j]
        assert len(stage1) == len(stage2), f"stage {j} dimension mismatch"
        fmap.update(zip(stage1, stage2))
    assert len({space2.deep(g) for g in part2} - set(depths)) == 0


def build_isomorphism(space1: FanSpace, space2: FanSpace,
                      seed: int | None = None) -> dict[ChainChar, ChainChar]:
    """Construct an isomorphism of fans from their order data alone.

    Raises OrderMismatchError when the forests differ.  Otherwise a
    generating system of the source is mirrored onto the target level by
    level, each level bijection is extended linearly, and the resulting
    map is verified in both directions before being returned.
    """
    code1 = forest_canonical(space1.forest)
    code2 = forest_canonical(space2.forest)
    if code1 != code2:
        raise OrderMismatchError(code1, code2)

    policy = _Policy(seed)
    n = space1.length
    gs1 = standard_generating_system(space1, seed)
    fmap: dict[ChainChar, ChainChar] = {}

    members2 = space2.stratum_members("S", 1, n)
    basis2 = basis_of(space2, members2, order=policy.order(members2))
    for j in range(n - 1, 0, -1):
        members2 = space2.stratum_members("S", 1, j)
        basis2 = extend_basis(space2, basis2, members2, order=policy.order(members2))
    _match_stages(space1, gs1.level_basis(1), space2, basis2, fmap)

    for k in range(1, n):
        step = gs1.steps[k]
        h0_img = fmap[step.h0]
        block2 = fiber_tower_basis(space2, h0_img, k + 1, policy)
        assert len(block2) == len(step.block), f"block dimension mismatch at level {k + 1}"
        _match_stages(space1, step.block, space2, block2, fmap)
        for h, gh in step.lifts:
            jh = space1.deep(gh)
            eligible = [g for g in space2.stratum_members("C", k + 1, jh)
                        if space2.successor(g, k) == fmap[h]]
            fmap[gh] = policy.pick(eligible)

    full: dict[ChainChar, ChainChar] = {}
    for k in range(1, n + 1):
        b1 = gs1.level_basis(k)
        b2 = [fmap[g] for g in b1]
        assert not is_dependent(space2, b2), f"image of level-{k} basis is dependent"
        hom_bit = 1 << space1.dim(k)
        solver = gf2.Solver()
        for g in b1:
            solver.add(g.mask | hom_bit)
        for h in space1.level(k):
            combo = solver.solve(h.mask | hom_bit)
            assert combo is not None, f"level-{k} basis does not span its level"
            mask2 = 0
            for i in gf2.bits(combo):
                mask2 ^= b2[i].mask
            full[h] = ChainChar(k, mask2)

    assert is_ars_morphism(space1, space2, full).ok
    inverse = {v: k for k, v in full.items()}
    assert len(inverse) == len(full)
    assert is_ars_morphism(space2, space1, inverse).ok
    return full


def brute_force_isomorphism(space1: FanSpace, space2: FanSpace,
                            cap: int = 10) -> dict[ChainChar, ChainChar] | None:
    """Exhaustive search over depth-preserving bijections; independent oracle.

    Returns the first bijection (in per-level permutation order) passing
    the morphism test both ways, or None if none exists.
    """
    if len(space1) > cap or len(space2) > cap:
        raise ResourceLimitError(f"space cardinality exceeds brute-force cap {cap}")
    if len(space1) != len(space2) or space1.length != space2.length:
        return None
    levels1 = space1.levels()
    levels2 = space2.levels()
    if [len(l) for l in levels1] != [len(l) for l in levels2]:
        return None

    per_level = [itertools.permutations(l2) for l2 in levels2]
    for images in itertools.product(*per_level):
        mapping = {}
        for lvl, perm in zip(levels1, images):
            mapping.update(zip(lvl, perm))
        ok = True
        for g in space1.chars:
            if g.depth > 1:
                h = space1.successor(g, g.depth - 1)
                if space2.successor(mapping[g], g.depth - 1) != mapping[h]:
                    ok = False
                    break
        if not ok:
            continue
        for lvl in levels1:
            for a, b, c in itertools.combinations(lvl, 3):
                if mapping[space1.triple(a, b, c)] != space2.triple(
                        mapping[a], mapping[b], mapping[c]):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        if is_ars_morphism(space1, space2, mapping).ok:
            inverse = {v: k for k, v in mapping.items()}
            if is_ars_morphism(space2, space1, inverse).ok:
                return mapping
    return None


# -- candidate forests: necessary conditions and bounded synthesis -----------


def _power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


def check_forest(forest: Forest) -> list[Violation]:
    """Necessary realizability conditions for a candidate forest.

    RC1 every nonempty stratum has power-of-2 size; RC2 predecessor
    counts agree across a stratum; RC3 components agree level- and
    stratum-wise where both reach; RC4 a component is order-isomorphic
    to every deeper one truncated at its own lowest level.  An empty
    report is necessary, not sufficient, for realizability.
    """
    out: list[Violation] = []
    n = forest.length

    for k in range(1, n + 1):
        for j in range(k, n + 1):
            s = len(forest.stratum("S", k, j))
            if s and not _power_of_two(s):
                out.append(Violation(
                    "RC1", f"RC1 violated: card(S^{k}_{j})={s} not a power of 2",
                    (k, j, s)))

    for k in range(1, n + 1):
        for j in range(k, n + 1):
            for j1 in range(k, j + 1):
                for j2 in range(k, j1 + 1):
                    for kind, stratum_kind in (("B", "S"), ("A", "C")):
                        members = forest.stratum(stratum_kind, k, j)
                        counts = {h: len(forest.pred_nodes(h, j1, j2, kind))
                                  for h in members}
                        if len(set(counts.values())) > 1:
                            lo = min(counts, key=lambda h: counts[h])
                            hi = max(counts, key=lambda h: counts[h])
                            out.append(Violation(
                                "RC2",
                                f"RC2 violated: card({kind}^{{{j1},{j2}}}) over "
                                f"{stratum_kind}^{k}_{j} takes values "
                                f"{counts[lo]} and {counts[hi]}",
                                (kind, k, j, j1, j2, counts[lo], counts[hi])))

    comps = [forest.restrict(comp) for comp in forest.components]
    for a, b in itertools.combinations(range(len(comps)), 2):
        ka, kb = comps[a], comps[b]
        for j in range(1, min(ka.length, kb.length) + 1):
            for jp in range(1, j + 1):
                ca = len(ka.stratum("S", jp, j))
                cb = len(kb.stratum("S", jp, j))
                if ca != cb:
                    name = f"L_{j}" if jp == j else f"S^{jp}_{j}"
                    out.append(Violation(
                        "RC3",
                        f"RC3 violated: card({name}(K{a + 1}))={ca} != "
                        f"card({name}(K{b + 1}))={cb}",
                        (jp, j, a + 1, b + 1, ca, cb)))
        shallow, deep_idx = (a, b) if ka.length <= kb.length else (b, a)
        trunc = comps[deep_idx].truncate(comps[shallow].length)
        if forest_canonical(comps[shallow]) != forest_canonical(trunc):
            out.append(Violation(
                "RC4",
                f"RC4 violated: K{shallow + 1} is not order-isomorphic to "
                f"K{deep_idx + 1} truncated at depth {comps[shallow].length}",
                (shallow + 1, deep_idx + 1)))
    return out


def synthesize_chain(forest: Forest, dim_bound: int = 4,
                     count_bound: int = 4) -> FanChain | None:
    """Search for a chain whose specialization forest matches the candidate.

    Level dimensions are forced by the level sizes (non-powers of 2 fail
    immediately); transitions are enumerated depth-first in ascending
    row order with pruning against the truncated forest, so the returned
    witness is the least one.  None means the bounded search is
    exhausted; bound violations raise instead.
    """
    n = forest.length
    if n > count_bound:
        raise ResourceLimitError(f"forest has {n} levels, bound is {count_bound}")
    sizes = forest.level_sizes()
    dims = []
    for s in sizes:
        if not _power_of_two(s):
            return None
        dims.append(s.bit_length())  # 1 + log2(s)
    if any(k > dim_bound for k in dims):
        raise ResourceLimitError(f"forced dimensions {dims} exceed bound {dim_bound}")

    # Parent maps between consecutive levels of a chain are affine, so
    # their nonempty fibers are cosets of one subgroup: unequal nonzero
    # child counts at some depth rule out every candidate at once.
    for d in range(1, n):
        counts = {c for node in forest.level(d)
                  if (c := len(forest.children[node])) > 0}
        if len(counts) > 1:
            return None

    minus = tuple(1 for _ in range(n))
    targets = [forest_canonical(forest.truncate(d)) for d in range(1, n + 1)]

    def candidates(k_from: int, k_to: int):
        odd = [m for m in range(1 << k_from) if m & 1]
        even = [m for m in range(1 << k_from) if not m & 1]
        return itertools.product(odd, *([even] * (k_to - 1)))

    def search(taus: tuple[tuple[int, ...], ...]) -> FanChain | None:
        d = len(taus) + 1
        partial = FanChain(tuple(dims[:d]), minus[:d], taus)
        if forest_canonical(FanSpace(partial).forest) != targets[d - 1]:
            return None
        if d == n:
            return partial
        for rows in candidates(dims[d - 1], dims[d]):
            hit = search(taus + (tuple(rows),))
            if hit is not None:
                return hit
        return None

    return search(())
