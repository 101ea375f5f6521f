"""Structured chain model of finite fans.

A fan is stored as a chain of exponent-2 groups: one GF(2) space per
depth, a marked nonzero "minus" vector in each, and a minus-preserving
linear transition from every depth to the next.  Depth 1 is the top of
the specialization order (the quotient by the maximal ideal); the last
depth is the faithful level.

Converters to and from raw multiplication tables live here too.  Table
elements produced by chain_to_table are ordered canonically: 0, then 1,
then -1, then the remaining slice elements grouped by depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from . import gf2
from .errors import NotAFanError, StructuralError
from .ternary import (
    Character,
    DEFAULT_ENUMERATION_CAP,
    TernaryTable,
    Violation,
    require_fan,
)


@dataclass(frozen=True)
class FanChain:
    dims: tuple[int, ...]                 # GF(2) dimension per depth, depth 1 first
    minus: tuple[int, ...]                # class of -1 per depth, as bitmasks
    taus: tuple[tuple[int, ...], ...]     # transition d -> d+1: rows over dims[d-1] bits

    def __post_init__(self):
        n = len(self.dims)
        if n == 0:
            raise StructuralError("chain needs at least one level")
        if len(self.minus) != n or len(self.taus) != n - 1:
            raise StructuralError("minus/taus lengths do not match level count")
        for d, k in enumerate(self.dims, start=1):
            if k < 1:
                raise StructuralError(f"depth {d} has dimension {k}")
            if self.minus[d - 1] >> k:
                raise StructuralError(f"minus vector at depth {d} out of range")
        for d, rows in enumerate(self.taus, start=1):
            if len(rows) != self.dims[d]:
                raise StructuralError(f"tau at depth {d} has wrong row count")
            for row in rows:
                if row >> self.dims[d - 1]:
                    raise StructuralError(f"tau at depth {d} has a row out of range")

    @property
    def n(self) -> int:
        return len(self.dims)


class ChainChar(NamedTuple):
    """A character in chain coordinates: depth plus a functional mask.

    The functional acts on the depth-d space and sends the minus vector
    to 1; characters of depth d vanish on every deeper slice.
    """

    depth: int
    mask: int


class SliceElement(NamedTuple):
    """A nonzero fan element: its slice depth and GF(2) vector there.

    depth 0 with vec 0 encodes the absorbing zero element.
    """

    depth: int
    vec: int


ZERO_ELEMENT = SliceElement(0, 0)


def validate_chain(c: FanChain) -> list[Violation]:
    """Empty iff every minus vector is nonzero and transitions preserve it."""
    out: list[Violation] = []
    for d in range(1, c.n + 1):
        if c.minus[d - 1] == 0:
            out.append(Violation("minus-nonzero", f"minus vector at depth {d} is zero", (d,)))
    for d in range(1, c.n):
        image = gf2.mat_vec(c.taus[d - 1], c.minus[d - 1])
        if image != c.minus[d]:
            out.append(Violation(
                "minus-transport", f"tau at depth {d} does not send -1 to -1", (d,)))
    return out


def _require_valid(c: FanChain) -> None:
    bad = validate_chain(c)
    if bad:
        raise StructuralError(f"invalid chain: {bad[0].message}")


def transition(c: FanChain, d: int, e: int) -> tuple[int, ...]:
    """Row matrix of the composite transition from depth d to depth e (d <= e)."""
    if not 1 <= d <= e <= c.n:
        raise ValueError(f"need 1 <= d <= e <= {c.n}, got d={d}, e={e}")
    rows = gf2.identity_rows(c.dims[d - 1])
    for step in range(d, e):
        rows = gf2.compose(c.taus[step - 1], rows)
    return rows


def pull_functional(c: FanChain, lam: int, e: int, d: int) -> int:
    """Functional at depth e pulled to depth d <= e (composition with taus)."""
    if not 1 <= d <= e <= c.n:
        raise ValueError(f"need 1 <= d <= e <= {c.n}, got d={d}, e={e}")
    for step in range(e - 1, d - 1, -1):
        lam = gf2.pullback(lam, c.taus[step - 1])
    return lam


def chain_characters(c: FanChain) -> tuple[ChainChar, ...]:
    """All characters: per depth d, the functionals sending minus_d to 1."""
    _require_valid(c)
    out = []
    for d, k in enumerate(c.dims, start=1):
        minus = c.minus[d - 1]
        out.extend(ChainChar(d, lam) for lam in range(1 << k) if gf2.dot(lam, minus))
    return tuple(out)


def cardinalities(c: FanChain) -> tuple[int, int]:
    """(card of the fan, card of its character space); the fan count is
    always twice the character count plus one."""
    _require_valid(c)
    card_f = 1 + sum(1 << k for k in c.dims)
    card_x = sum(1 << (k - 1) for k in c.dims)
    assert card_f == 2 * card_x + 1
    return card_f, card_x


def chain_elements(c: FanChain) -> tuple[SliceElement, ...]:
    """Canonical element order: zero, one, minus one, then slices by depth."""
    one = SliceElement(1, 0)
    minus = SliceElement(1, c.minus[0])
    out = [ZERO_ELEMENT, one, minus]
    for d, k in enumerate(c.dims, start=1):
        for vec in range(1 << k):
            el = SliceElement(d, vec)
            if el not in (one, minus):
                out.append(el)
    return tuple(out)


def multiply_elements(c: FanChain, a: SliceElement, b: SliceElement) -> SliceElement:
    """Product in the fan: transport into the deeper slice and add there."""
    if a == ZERO_ELEMENT or b == ZERO_ELEMENT:
        return ZERO_ELEMENT
    if a.depth > b.depth:
        a, b = b, a
    moved = gf2.mat_vec(transition(c, a.depth, b.depth), a.vec)
    return SliceElement(b.depth, moved ^ b.vec)


def evaluate_element(c: FanChain, h: ChainChar, el: SliceElement) -> int:
    """Value of the character h at a fan element."""
    if el == ZERO_ELEMENT or el.depth > h.depth:
        return 0
    moved = gf2.mat_vec(transition(c, el.depth, h.depth), el.vec)
    return -1 if gf2.dot(h.mask, moved) else 1


def chain_to_table(c: FanChain) -> TernaryTable:
    """Raw multiplication table of the chain's fan."""
    _require_valid(c)
    elements = chain_elements(c)
    index = {el: i for i, el in enumerate(elements)}
    # Cache composite transitions once; products only move shallower vectors down.
    trans = {(d, e): transition(c, d, e) for d in range(1, c.n + 1) for e in range(d, c.n + 1)}
    m = len(elements)
    mul = []
    for a in elements:
        row = []
        for b in elements:
            if a == ZERO_ELEMENT or b == ZERO_ELEMENT:
                row.append(0)
                continue
            lo, hi = (a, b) if a.depth <= b.depth else (b, a)
            moved = gf2.mat_vec(trans[(lo.depth, hi.depth)], lo.vec)
            row.append(index[SliceElement(hi.depth, moved ^ hi.vec)])
        mul.append(tuple(row))
    return TernaryTable(
        size=m, one_idx=index[SliceElement(1, 0)], zero_idx=0,
        minus_one_idx=index[SliceElement(1, c.minus[0])], mul=tuple(mul))


def chain_char_to_table_char(c: FanChain, t: TernaryTable, h: ChainChar) -> Character:
    """Value vector of a chain character on the table built by chain_to_table."""
    values = tuple(evaluate_element(c, h, el) for el in chain_elements(c))
    return Character(t, values)


def _congruence_classes(t: TernaryTable, members: list[int], ideal: frozenset[int]) -> list[list[int]]:
    """Classes of a ~ b iff a*z = b*z for some z outside the ideal.

    Computed as a union-find closure, merging per shared product column.
    """
    parent = {x: x for x in members}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    outside = [z for z in range(t.size) if z not in ideal]
    for z in outside:
        seen: dict[int, int] = {}
        for x in members:
            p = t.mul[x][z]
            if p in seen:
                ra, rb = find(seen[p]), find(x)
                if ra != rb:
                    parent[rb] = ra
            else:
                seen[p] = x
    groups: dict[int, list[int]] = {}
    for x in members:
        groups.setdefault(find(x), []).append(x)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def table_to_chain(t: TernaryTable, cap: int = DEFAULT_ENUMERATION_CAP,
                   chars: tuple[Character, ...] | None = None) -> FanChain:
    chain, _ = table_to_chain_with_map(t, cap, chars)
    return chain


def table_to_chain_with_map(t: TernaryTable, cap: int = DEFAULT_ENUMERATION_CAP,
                            chars: tuple[Character, ...] | None = None,
                            ) -> tuple[FanChain, dict[SliceElement, int]]:
    """Extract the chain model of a fan table.

    Also returns the slice-wise correspondence sending each element of
    the rebuilt chain (as a SliceElement) to the original table element,
    which is the round-trip isomorphism onto t.

    Raises NotAFanError when t fails the operative fan criterion, and on
    any downstream evidence that the quotients are not exponent-2 groups.
    """
    chars = require_fan(t, chars, cap)
    ideals = sorted({h.zero_set() for h in chars}, key=len, reverse=True)
    n = len(ideals)

    dims: list[int] = []
    minus: list[int] = []
    coords_per_depth: list[dict[int, int]] = []   # element -> GF(2) vector
    classes_per_depth: list[list[list[int]]] = []
    for d in range(1, n + 1):
        ideal = ideals[d - 1]
        members = [x for x in range(t.size) if x not in ideal]
        classes = _congruence_classes(t, members, ideal)
        count = len(classes)
        if count & (count - 1):
            raise NotAFanError(
                f"quotient at depth {d} has {count} classes, not a power of 2", (d,))
        class_id = {x: i for i, cls in enumerate(classes) for x in cls}
        reps = [cls[0] for cls in classes]

        def class_mul(i: int, j: int) -> int:
            return class_id[t.mul[reps[i]][reps[j]]]

        one_cls = class_id[t.one_idx]
        vec_of = {one_cls: 0}
        k = 0
        for i in range(count):
            if i in vec_of:
                continue
            bit = 1 << k
            k += 1
            for j, v in list(vec_of.items()):
                vec_of[class_mul(i, j)] = v | bit
        if len(vec_of) != count:
            raise NotAFanError(f"quotient at depth {d} is not a group", (d,))
        minus_vec = vec_of[class_id[t.minus_one_idx]]
        if minus_vec == 0:
            raise NotAFanError(f"1 = -1 in the quotient at depth {d}", (d,))
        dims.append(k)
        minus.append(minus_vec)
        coords_per_depth.append({x: vec_of[class_id[x]] for x in members})
        classes_per_depth.append(classes)

    taus = []
    for d in range(1, n):
        shallow, deep = coords_per_depth[d - 1], coords_per_depth[d]
        basis_vec_to_elem: dict[int, int] = {}
        for x, v in shallow.items():
            basis_vec_to_elem.setdefault(v, x)
        cols = []
        for i in range(dims[d - 1]):
            elem = basis_vec_to_elem[1 << i]
            cols.append(deep[elem])
        rows = tuple(
            sum(((cols[j] >> i) & 1) << j for j in range(dims[d - 1]))
            for i in range(dims[d]))
        taus.append(rows)

    chain = FanChain(tuple(dims), tuple(minus), tuple(taus))
    bad = validate_chain(chain)
    if bad:
        raise NotAFanError(f"extracted chain is invalid: {bad[0].message}", bad[0].witness)

    mapping: dict[SliceElement, int] = {ZERO_ELEMENT: t.zero_idx}
    for d in range(1, n + 1):
        above = ideals[d - 2] if d >= 2 else None
        coords = coords_per_depth[d - 1]
        for cls in classes_per_depth[d - 1]:
            in_slice = [x for x in cls if above is None or x in above]
            if len(in_slice) != 1:
                raise NotAFanError(
                    f"class at depth {d} meets its slice in {len(in_slice)} elements", (d,))
            mapping[SliceElement(d, coords[cls[0]])] = in_slice[0]
    return chain, mapping


def roundtrip_isomorphism(t: TernaryTable, cap: int = DEFAULT_ENUMERATION_CAP) -> dict[int, int]:
    """Explicit isomorphism chain_to_table(table_to_chain(t)) -> t.

    Returns new-index -> old-index and verifies it is a bijection
    preserving products and the three constants.
    """
    chain, elem_map = table_to_chain_with_map(t, cap)
    rebuilt = chain_to_table(chain)
    elements = chain_elements(chain)
    iso = {i: elem_map[el] for i, el in enumerate(elements)}
    if sorted(iso.values()) != list(range(t.size)):
        raise NotAFanError("round-trip map is not a bijection", ())
    if (iso[rebuilt.one_idx] != t.one_idx or iso[rebuilt.zero_idx] != t.zero_idx
            or iso[rebuilt.minus_one_idx] != t.minus_one_idx):
        raise NotAFanError("round-trip map moves a constant", ())
    for x in range(rebuilt.size):
        for y in range(rebuilt.size):
            if iso[rebuilt.mul[x][y]] != t.mul[iso[x]][iso[y]]:
                raise NotAFanError("round-trip map does not preserve products", (x, y))
    return iso
