"""Specialization order of a fan's character space.

The order is a root-system: a forest whose roots sit at depth 1 and in
which every up-set is a chain.  Forest is the pure order data (used both
for extracted root systems and for externally supplied candidates);
FanSpace wraps a chain with its characters and answers order queries in
chain coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import gf2
from .chains import ChainChar, FanChain, chain_characters, validate_chain
from .errors import StructuralError
from .ternary import Violation


@dataclass(frozen=True)
class Forest:
    depths: tuple[int, ...]
    parents: tuple[int | None, ...]

    def __post_init__(self):
        if len(self.depths) != len(self.parents):
            raise StructuralError("depths and parents must have equal length")
        for i, (d, p) in enumerate(zip(self.depths, self.parents)):
            if d < 1:
                raise StructuralError(f"node {i} has depth {d}")
            if p is None:
                if d != 1:
                    raise StructuralError(f"node {i} has no parent but depth {d}")
            else:
                if not 0 <= p < len(self.depths):
                    raise StructuralError(f"node {i} has parent {p} out of range")
                if self.depths[p] != d - 1:
                    raise StructuralError(f"node {i} at depth {d} has parent at depth {self.depths[p]}")

    def __len__(self) -> int:
        return len(self.depths)

    @property
    def length(self) -> int:
        return max(self.depths, default=0)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in self.depths]
        for i, p in enumerate(self.parents):
            if p is not None:
                kids[p].append(i)
        return tuple(tuple(k) for k in kids)

    @cached_property
    def deep(self) -> tuple[int, ...]:
        """Per node, the largest depth among its descendants (and itself)."""
        out = list(self.depths)
        for i in sorted(range(len(self)), key=lambda j: -self.depths[j]):
            p = self.parents[i]
            if p is not None and out[i] > out[p]:
                out[p] = out[i]
        return tuple(out)

    @cached_property
    def roots(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parents) if p is None)

    @cached_property
    def root_of(self) -> tuple[int, ...]:
        out = [0] * len(self)
        for i in sorted(range(len(self)), key=lambda j: self.depths[j]):
            p = self.parents[i]
            out[i] = i if p is None else out[p]
        return tuple(out)

    def ancestor(self, i: int, depth: int) -> int:
        """The unique node above i (or i itself) at the given depth."""
        if not 1 <= depth <= self.depths[i]:
            raise ValueError(f"node {i} has depth {self.depths[i]}, no ancestor at {depth}")
        while self.depths[i] > depth:
            i = self.parents[i]  # type: ignore[assignment]
        return i

    def descendants(self, i: int) -> tuple[int, ...]:
        """i together with everything below it, in index order."""
        keep = {i}
        for j in sorted(range(len(self)), key=lambda j: self.depths[j]):
            p = self.parents[j]
            if p in keep:
                keep.add(j)
        return tuple(sorted(keep))

    def level(self, d: int) -> tuple[int, ...]:
        return tuple(i for i, dep in enumerate(self.depths) if dep == d)

    def level_sizes(self) -> tuple[int, ...]:
        return tuple(len(self.level(d)) for d in range(1, self.length + 1))

    def stratum(self, kind: str, k: int, j: int) -> tuple[int, ...]:
        """Depth-k nodes whose deepest descendant reaches depth j (S) or
        exactly depth j (C)."""
        if kind not in ("S", "C"):
            raise ValueError(f"stratum kind must be 'S' or 'C', not {kind!r}")
        if not 1 <= k <= j <= self.length:
            raise ValueError(f"need 1 <= k <= j <= {self.length}, got k={k}, j={j}")
        if kind == "S":
            return tuple(i for i in self.level(k) if self.deep[i] >= j)
        return tuple(i for i in self.level(k) if self.deep[i] == j)

    def pred_nodes(self, h: int, j1: int, j2: int, kind: str) -> tuple[int, ...]:
        """Predecessors of h in the (j2, j1) stratum: depth-j2 nodes under h
        reaching depth j1 at least (kind 'B') or exactly (kind 'A')."""
        if kind not in ("B", "A"):
            raise ValueError(f"pred-set kind must be 'B' or 'A', not {kind!r}")
        if not self.depths[h] <= j2 <= j1 <= self.length:
            raise ValueError(
                f"need depth(h) <= j2 <= j1 <= {self.length}, got j2={j2}, j1={j1}")
        out = []
        for g in self.descendants(h):
            if self.depths[g] != j2:
                continue
            if (self.deep[g] >= j1) if kind == "B" else (self.deep[g] == j1):
                out.append(g)
        return tuple(out)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Classes of the common-upper-bound relation, grouped by root."""
        by_root: dict[int, list[int]] = {}
        for i in range(len(self)):
            by_root.setdefault(self.root_of[i], []).append(i)
        return tuple(tuple(by_root[r]) for r in self.roots)

    def truncate(self, max_depth: int) -> Forest:
        """Delete every node deeper than max_depth, keeping node order."""
        keep = [i for i, d in enumerate(self.depths) if d <= max_depth]
        renum = {old: new for new, old in enumerate(keep)}
        return Forest(
            tuple(self.depths[i] for i in keep),
            tuple(None if self.parents[i] is None else renum[self.parents[i]] for i in keep))

    def restrict(self, nodes: tuple[int, ...]) -> Forest:
        """Sub-forest on a downward-closed-from-above node set (e.g. a component)."""
        keep = sorted(nodes)
        renum = {old: new for new, old in enumerate(keep)}
        parents = []
        for i in keep:
            p = self.parents[i]
            parents.append(renum[p] if p in renum else None)
        return Forest(tuple(self.depths[i] for i in keep), tuple(parents))


def validate_forest(depths, parents) -> list[Violation]:
    """Structural report for candidate forest data (ids assumed dense)."""
    try:
        Forest(tuple(depths), tuple(parents))
    except StructuralError as exc:
        return [Violation("forest-structure", str(exc))]
    return []


@dataclass(frozen=True)
class Stratum:
    kind: str
    k: int
    j: int
    members: tuple[ChainChar, ...]


class FanSpace:
    """Character space of a valid chain, with order machinery.

    Characters are ChainChar pairs ordered by (depth, mask); that order
    is also the node order of the extracted forest.
    """

    def __init__(self, chain: FanChain):
        bad = validate_chain(chain)
        if bad:
            raise StructuralError(f"invalid chain: {bad[0].message}")
        self.chain = chain
        self.chars = chain_characters(chain)
        self._node = {h: i for i, h in enumerate(self.chars)}
        # successor masks for every character at every shallower depth
        self._succ: dict[tuple[ChainChar, int], ChainChar] = {}
        for h in self.chars:
            lam = h.mask
            self._succ[(h, h.depth)] = h
            for d in range(h.depth - 1, 0, -1):
                lam = gf2.pullback(lam, chain.taus[d - 1])
                self._succ[(h, d)] = ChainChar(d, lam)
        self._triple_ok: dict[tuple[int, int], bool] = {}

    # -- basic queries -------------------------------------------------

    @property
    def length(self) -> int:
        return self.chain.n

    def __len__(self) -> int:
        return len(self.chars)

    def dim(self, d: int) -> int:
        return self.chain.dims[d - 1]

    def minus(self, d: int) -> int:
        return self.chain.minus[d - 1]

    def depth(self, h: ChainChar) -> int:
        return h.depth

    def node(self, h: ChainChar) -> int:
        return self._node[h]

    def char(self, i: int) -> ChainChar:
        return self.chars[i]

    def level(self, d: int) -> tuple[ChainChar, ...]:
        if not 1 <= d <= self.length:
            raise ValueError(f"depth {d} out of range 1..{self.length}")
        return tuple(h for h in self.chars if h.depth == d)

    def levels(self) -> list[tuple[ChainChar, ...]]:
        return [self.level(d) for d in range(1, self.length + 1)]

    # -- order ---------------------------------------------------------

    def successor(self, g: ChainChar, d: int) -> ChainChar:
        """The unique character above g at depth d (d <= depth(g))."""
        if not 1 <= d <= g.depth:
            raise ValueError(f"no successor of a depth-{g.depth} character at depth {d}")
        return self._succ[(g, d)]

    def specializes(self, g: ChainChar, h: ChainChar) -> bool:
        return h.depth <= g.depth and self._succ[(g, h.depth)] == h

    def interpolate(self, g: ChainChar, h: ChainChar, d: int) -> ChainChar:
        """The unique f with g -> f -> h at depth d."""
        if not self.specializes(g, h):
            raise ValueError("g does not specialize to h")
        if not h.depth <= d <= g.depth:
            raise ValueError(f"depth {d} outside [{h.depth}, {g.depth}]")
        f = self.successor(g, d)
        assert self.specializes(g, f) and self.specializes(f, h)
        return f

    def triple(self, h1: ChainChar, h2: ChainChar, h3: ChainChar) -> ChainChar:
        """Pointwise product of three characters (always a character)."""
        d = min(h1.depth, h2.depth, h3.depth)
        mask = (self._succ[(h1, d)].mask ^ self._succ[(h2, d)].mask
                ^ self._succ[(h3, d)].mask)
        return ChainChar(d, mask)

    def odd_product(self, chars: tuple[ChainChar, ...]) -> ChainChar:
        if len(chars) % 2 == 0:
            raise ValueError("need an odd number of factors")
        d = min(h.depth for h in chars)
        mask = 0
        for h in chars:
            mask ^= self._succ[(h, d)].mask
        return ChainChar(d, mask)

    @cached_property
    def forest(self) -> Forest:
        depths = tuple(h.depth for h in self.chars)
        parents = tuple(
            None if h.depth == 1 else self._node[self.successor(h, h.depth - 1)]
            for h in self.chars)
        return Forest(depths, parents)

    def root_system(self) -> Forest:
        return self.forest

    def deep(self, h: ChainChar) -> int:
        """Deepest depth among the predecessors of h."""
        return self.forest.deep[self._node[h]]

    def predecessors(self, h: ChainChar) -> tuple[ChainChar, ...]:
        """Everything that specializes to h (h included)."""
        return tuple(self.chars[i] for i in self.forest.descendants(self._node[h]))

    # -- components and strata ------------------------------------------

    def components(self) -> list[tuple[ChainChar, ...]]:
        return [tuple(self.chars[i] for i in comp) for comp in self.forest.components]

    def component_lowest_level(self, comp: tuple[ChainChar, ...]) -> int:
        return max(h.depth for h in comp)

    def stratum(self, kind: str, k: int, j: int) -> Stratum:
        members = tuple(self.chars[i] for i in self.forest.stratum(kind, k, j))
        return Stratum(kind, k, j, members)

    def stratum_members(self, kind: str, k: int, j: int) -> tuple[ChainChar, ...]:
        return self.stratum(kind, k, j).members

    def pred_set(self, h: ChainChar, j1: int, j2: int, kind: str) -> tuple[ChainChar, ...]:
        """Predecessors of h inside the (j2, j1) stratum.

        kind 'B' collects those in S^j2_j1, kind 'A' those in C^j2_j1;
        the A set may legitimately be empty.
        """
        nodes = self.forest.pred_nodes(self._node[h], j1, j2, kind)
        return tuple(self.chars[i] for i in nodes)

    # -- memoized level facts -------------------------------------------

    def translation_preserves_triples(self, d: int, shift: int) -> bool:
        """Whether h -> h^shift preserves triple products on level d.

        Always true (the level product is affine), but checked honestly
        over all same-level triples and memoized per (depth, shift).
        """
        key = (d, shift)
        hit = self._triple_ok.get(key)
        if hit is None:
            members = [h.mask for h in self.level(d)]
            hit = all(
                (a ^ b ^ c) ^ shift == (a ^ shift) ^ (b ^ shift) ^ (c ^ shift)
                for a in members for b in members for c in members)
            self._triple_ok[key] = hit
        return hit


def space_from_chain(chain: FanChain) -> FanSpace:
    return FanSpace(chain)
