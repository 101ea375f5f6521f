"""Aggregated property sweeps over generated corpora.

Each check function takes one chain (plus whatever configuration it
needs) and returns a list of failure strings, empty when the property
holds.  run_suite wires them all together over a corpus; the CLI `suite`
subcommand and the test suite both drive these.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import ternary
from .chains import (
    FanChain,
    chain_char_to_table_char,
    chain_characters,
    chain_to_table,
    cardinalities,
    roundtrip_isomorphism,
)
from .formats import parse_chain, serialize_chain
from .generators import standard_generating_system, verify_sgs
from .isomorphism import build_isomorphism, check_forest
from .levels import verify_involution
from .spectral import FanSpace
from .ternary import DEFAULT_ENUMERATION_CAP


def check_cardinality(chain: FanChain) -> list[str]:
    card_f, card_x = cardinalities(chain)
    if card_f != 2 * card_x + 1:
        return [f"cardinality identity fails: {card_f} != 2*{card_x}+1"]
    return []


def _table_characters(chain: FanChain):
    table = chain_to_table(chain)
    space = FanSpace(chain)
    pairs = [(h, chain_char_to_table_char(chain, table, h)) for h in space.chars]
    return table, space, pairs


def check_specialization_equivalence(chain: FanChain) -> list[str]:
    """The four specialization tests agree pairwise on the table model,
    and with the chain-coordinate order."""
    failures = []
    _, space, pairs = _table_characters(chain)
    for hc1, tc1 in pairs:
        for hc2, tc2 in pairs:
            answers = {
                "units": ternary.specializes_by_units(tc1, tc2),
                "nonneg": ternary.specializes_by_nonnegative_part(tc1, tc2),
                "zerosets": ternary.specializes_by_zero_sets(tc1, tc2),
                "identity": ternary.specializes(tc1, tc2),
                "square": ternary.specializes_by_square_shift(tc1, tc2),
            }
            if len(set(answers.values())) != 1:
                failures.append(f"criteria disagree on {hc1}, {hc2}: {answers}")
            elif answers["identity"] != space.specializes(hc1, hc2):
                failures.append(f"table and chain order disagree on {hc1}, {hc2}")
    return failures


def check_zero_set_transport(chain: FanChain) -> list[str]:
    """Among predecessors of a common character, zero-set containment is
    exactly specialization; incomparable zero-sets never occur."""
    failures = []
    _, space, pairs = _table_characters(chain)
    table_of = dict(pairs)
    for u in space.chars:
        above = [space.successor(u, d) for d in range(1, u.depth + 1)]
        for g in above:
            for h in above:
                order = ternary.zero_set_order(table_of[g], table_of[h])
                if order == "incomparable":
                    failures.append(f"incomparable zero-sets below {u}")
                elif (order in ("subset", "equal")) != ternary.specializes(
                        table_of[g], table_of[h]):
                    failures.append(f"zero-set transport fails for {g}, {h}")
    return failures


def check_fan_closure(chain: FanChain) -> list[str]:
    """Triple products of characters are characters (table model)."""
    _, space, pairs = _table_characters(chain)
    pool = {tc.values for _, tc in pairs}
    chars = [tc for _, tc in pairs]
    failures = []
    for i, a in enumerate(chars):
        for b in chars[i:]:
            for c in chars:
                if ternary.pointwise_product((a, b, c)) not in pool:
                    failures.append("triple product left the character space")
                    return failures
    return failures


def check_product_identities(chain: FanChain, rng: random.Random) -> list[str]:
    """Sampled product laws: replacing factors by successors above the
    pivot's zero-set keeps the product; odd products are monotone."""
    failures = []
    table, space, pairs = _table_characters(chain)
    table_of = dict(pairs)
    chars = space.chars
    for _ in range(10):
        h = rng.choice(chars)
        r = rng.choice((1, 2, 3))
        gs = [rng.choice([g for g in chars if g.depth >= h.depth]) for _ in range(r)]
        fs = [space.successor(g, rng.randint(h.depth, g.depth)) for g in gs]
        lhs = ternary.pointwise_product([table_of[h]] + [table_of[g] for g in gs])
        rhs = ternary.pointwise_product([table_of[h]] + [table_of[f] for f in fs])
        if lhs != rhs:
            failures.append(f"product not stable under successor replacement at {h}")
    for _ in range(10):
        r = rng.choice((1, 3))
        gs = [rng.choice(chars) for _ in range(r)]
        hs = [space.successor(g, rng.randint(1, g.depth)) for g in gs]
        prod_g = ternary.odd_product([table_of[g] for g in gs])
        prod_h = ternary.odd_product([table_of[h] for h in hs])
        if not ternary.specializes(prod_g, prod_h):
            failures.append("odd product is not monotone")
    return failures


def check_chain_table_agreement(chain: FanChain,
                                cap: int = DEFAULT_ENUMERATION_CAP) -> list[str]:
    """Backtracking enumeration and the chain character list agree."""
    table = chain_to_table(chain)
    if table.size > cap:
        return []
    failures = []
    enumerated = ternary.enumerate_characters(table, cap)
    from_chain = {chain_char_to_table_char(chain, table, h).values
                  for h in chain_characters(chain)}
    if {c.values for c in enumerated} != from_chain:
        failures.append("enumerated characters differ from chain characters")
    if len(enumerated) != len(from_chain):
        failures.append("character counts differ between the two routes")
    return failures


def check_forest_regularity(chain: FanChain) -> list[str]:
    """Root systems of actual fans pass every necessary condition."""
    report = check_forest(FanSpace(chain).forest)
    return [str(v) for v in report]


def check_involutions(chain: FanChain) -> list[str]:
    """Full involution property suite for every pair of characters."""
    failures = []
    space = FanSpace(chain)
    for g1 in space.chars:
        for g2 in space.chars:
            report = verify_involution(space, g1, g2)
            for bad in report.failures():
                failures.append(f"handle ({g1}, {g2}): {bad.name} fails")
    return failures


def check_sgs(chain: FanChain, seeds: tuple[int, ...] = (0,)) -> list[str]:
    failures = []
    space = FanSpace(chain)
    for seed in (None,) + tuple(seeds):
        gs = standard_generating_system(space, seed)
        report = verify_sgs(space, gs)
        for bad in report.failures():
            failures.append(f"seed {seed}: {bad.name} fails")
        if seed is not None:
            again = standard_generating_system(space, seed)
            if again.bases != gs.bases:
                failures.append(f"seed {seed}: construction is not reproducible")
    det = standard_generating_system(space)
    if det.bases != standard_generating_system(space).bases:
        failures.append("deterministic construction is not reproducible")
    return failures


def check_roundtrip(chain: FanChain, cap: int = DEFAULT_ENUMERATION_CAP) -> list[str]:
    failures = []
    text = serialize_chain(chain)
    if serialize_chain(parse_chain(text)) != text:
        failures.append("chain file serialization is not byte-identical")
    table = chain_to_table(chain)
    if table.size <= cap:
        try:
            roundtrip_isomorphism(table, cap)
        except Exception as exc:  # noqa: BLE001 - report, don't crash the sweep
            failures.append(f"table round-trip failed: {exc}")
    return failures


def check_self_isomorphism(chain: FanChain) -> list[str]:
    space = FanSpace(chain)
    try:
        build_isomorphism(space, space)
    except Exception as exc:  # noqa: BLE001
        return [f"self-isomorphism construction failed: {exc}"]
    return []


@dataclass
class SuiteReport:
    sections: dict[str, list[str]] = field(default_factory=dict)
    fans: int = 0

    @property
    def ok(self) -> bool:
        return all(not f for f in self.sections.values())

    def lines(self) -> list[str]:
        out = [f"suite over {self.fans} fans"]
        for name, failures in self.sections.items():
            if failures:
                out.append(f"{name}: {len(failures)} failure(s)")
                out.extend(f"  {f}" for f in failures[:10])
            else:
                out.append(f"{name}: ok")
        return out


def run_suite(chains: list[FanChain], seed: int = 0,
              cap: int = DEFAULT_ENUMERATION_CAP) -> SuiteReport:
    rng = random.Random(seed)
    report = SuiteReport(fans=len(chains))
    sections = {
        "cardinality": lambda c: check_cardinality(c),
        "specialization-equivalence": lambda c: check_specialization_equivalence(c),
        "zero-set-transport": lambda c: check_zero_set_transport(c),
        "fan-closure": lambda c: check_fan_closure(c),
        "product-identities": lambda c: check_product_identities(c, rng),
        "chain-table-agreement": lambda c: check_chain_table_agreement(c, cap),
        "forest-regularity": lambda c: check_forest_regularity(c),
        "involutions": lambda c: check_involutions(c),
        "generating-systems": lambda c: check_sgs(c, seeds=(seed,)),
        "round-trips": lambda c: check_roundtrip(c, cap),
        "self-isomorphism": lambda c: check_self_isomorphism(c),
    }
    for name, fn in sections.items():
        failures: list[str] = []
        for chain in chains:
            failures.extend(fn(chain))
        report.sections[name] = failures
    return report
