import itertools

import pytest

from fanforge import ternary
from fanforge.chains import chain_char_to_table_char, chain_to_table
from fanforge.errors import ResourceLimitError, StructuralError
from fanforge.spectral import FanSpace
from fanforge.ternary import (
    TernaryTable,
    enumerate_characters,
    fan_report,
    pointwise_product,
    sign3_table,
    specializes,
    triple_product,
    validate_table,
    zero_set_order,
)

from conftest import E1


def table_characters(chain):
    table = chain_to_table(chain)
    space = FanSpace(chain)
    by_chain = {h: chain_char_to_table_char(chain, table, h) for h in space.chars}
    return table, space, by_chain


def test_sign3_is_valid():
    assert validate_table(sign3_table()) == []


def test_broken_identity_is_reported_with_witness():
    t = sign3_table()
    mul = [list(row) for row in t.mul]
    mul[t.one_idx][0] = t.one_idx  # 1*0 should be 0
    broken = TernaryTable(3, t.one_idx, t.zero_idx, t.minus_one_idx,
                          tuple(tuple(r) for r in mul))
    codes = {v.code for v in validate_table(broken)}
    assert "identity" in codes or "commutativity" in codes


def test_structurally_malformed_table_raises():
    with pytest.raises(StructuralError):
        TernaryTable(2, 0, 1, 2, ((0, 1), (1, 0)))
    with pytest.raises(StructuralError):
        TernaryTable(2, 0, 1, 1, ((0, 9), (1, 0)))


def test_chain_table_is_valid(corpus):
    assert validate_table(chain_to_table(E1)) == []
    for chain in corpus[:5]:
        assert validate_table(chain_to_table(chain)) == []


def test_sign3_has_exactly_the_identity_character():
    chars = enumerate_characters(sign3_table())
    assert len(chars) == 1
    (h,) = chars
    assert h.values[h.table.one_idx] == 1
    assert h.values[h.table.minus_one_idx] == -1
    assert h.values[h.table.zero_idx] == 0


def test_enumeration_matches_chain_route():
    table, space, by_chain = table_characters(E1)
    enumerated = enumerate_characters(table)
    assert len(enumerated) == 3
    assert {c.values for c in enumerated} == {c.values for c in by_chain.values()}


def test_enumeration_cap():
    with pytest.raises(ResourceLimitError):
        enumerate_characters(sign3_table(), cap=2)


def test_triple_product_examples():
    table, space, by_chain = table_characters(E1)
    from fanforge.chains import ChainChar
    r, c1, c2 = ChainChar(1, 1), ChainChar(2, 1), ChainChar(2, 3)
    tr, tc1, tc2 = by_chain[r], by_chain[c1], by_chain[c2]
    assert triple_product(tc1, tc2, tr).values == tr.values
    assert triple_product(tc1, tc1, tc1).values == tc1.values
    # h*h*g collapses to h when h is a specialization of g
    assert specializes(tc1, tr)
    assert triple_product(tr, tr, tc1).values == tr.values


def test_triple_product_rejects_mixed_tables():
    h1 = enumerate_characters(sign3_table())[0]
    table, _, by_chain = table_characters(E1)
    h2 = next(iter(by_chain.values()))
    with pytest.raises(ValueError):
        triple_product(h1, h1, h2)


def test_specializes_examples():
    _, _, by_chain = table_characters(E1)
    from fanforge.chains import ChainChar
    tr = by_chain[ChainChar(1, 1)]
    tc1 = by_chain[ChainChar(2, 1)]
    tc2 = by_chain[ChainChar(2, 3)]
    assert specializes(tc1, tr)
    assert specializes(tc1, tc1)
    assert not specializes(tc1, tc2)


def test_zero_set_order_examples():
    _, _, by_chain = table_characters(E1)
    from fanforge.chains import ChainChar
    tr = by_chain[ChainChar(1, 1)]
    tc1 = by_chain[ChainChar(2, 1)]
    assert zero_set_order(tc1, tr) == "subset"
    assert zero_set_order(tr, tc1) == "superset"
    assert zero_set_order(tr, tr) == "equal"


def test_enumeration_matches_exhaustive_assignment(corpus):
    # oracle: filter all 3^m value vectors for multiplicativity directly
    def brute(t):
        found = []
        for values in itertools.product((-1, 0, 1), repeat=t.size):
            if (values[t.one_idx] != 1 or values[t.minus_one_idx] != -1
                    or values[t.zero_idx] != 0):
                continue
            if all(values[t.mul[x][y]] == values[x] * values[y]
                   for x in range(t.size) for y in range(t.size)):
                found.append(values)
        return sorted(found)

    tables = [sign3_table()]
    tables += [chain_to_table(c) for c in corpus if chain_to_table(c).size <= 9][:4]
    assert len(tables) >= 3
    for t in tables:
        assert [h.values for h in enumerate_characters(t)] == brute(t)


def test_five_way_equivalence_on_sample(corpus):
    for chain in corpus[:10]:
        _, _, by_chain = table_characters(chain)
        chars = list(by_chain.values())
        for g in chars:
            for h in chars:
                answers = {
                    ternary.specializes(g, h),
                    ternary.specializes_by_units(g, h),
                    ternary.specializes_by_nonnegative_part(g, h),
                    ternary.specializes_by_zero_sets(g, h),
                    ternary.specializes_by_square_shift(g, h),
                }
                assert len(answers) == 1


def product_table(a: TernaryTable, b: TernaryTable) -> TernaryTable:
    pairs = list(itertools.product(range(a.size), range(b.size)))
    index = {p: i for i, p in enumerate(pairs)}
    mul = tuple(
        tuple(index[(a.mul[x1][x2], b.mul[y1][y2])] for (x2, y2) in pairs)
        for (x1, y1) in pairs)
    return TernaryTable(
        size=len(pairs),
        one_idx=index[(a.one_idx, b.one_idx)],
        zero_idx=index[(a.zero_idx, b.zero_idx)],
        minus_one_idx=index[(a.minus_one_idx, b.minus_one_idx)],
        mul=mul)


def test_product_of_sign3_is_not_a_fan():
    # A valid ternary semigroup whose character zero-sets are incomparable.
    square = product_table(sign3_table(), sign3_table())
    assert validate_table(square) == []
    report = fan_report(square)
    assert any(v.code == "zero-set-chain" for v in report)


def test_fan_report_clean_on_fan_tables(corpus):
    for chain in corpus[:5]:
        table = chain_to_table(chain)
        assert fan_report(table, cap=80) == []


def test_zero_set_transport_property(corpus_spaces):
    for space in corpus_spaces[:15]:
        chain = space.chain
        table = chain_to_table(chain)
        by_chain = {h: chain_char_to_table_char(chain, table, h) for h in space.chars}
        for u in space.chars:
            above = [space.successor(u, d) for d in range(1, u.depth + 1)]
            for g in above:
                for h in above:
                    contained = zero_set_order(by_chain[g], by_chain[h]) in ("subset", "equal")
                    assert contained == specializes(by_chain[g], by_chain[h])


def test_pointwise_product_matches_sign_arithmetic():
    _, _, by_chain = table_characters(E1)
    chars = list(by_chain.values())
    values = pointwise_product(chars[:3])
    for x in range(len(values)):
        assert values[x] == chars[0].values[x] * chars[1].values[x] * chars[2].values[x]
