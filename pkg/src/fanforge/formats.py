"""Flat-file formats and DOT export.

Chain files carry one header line, one line per level, and one line per
transition; forest files carry one line per node with dense ids.  Bit
strings are little-endian 0/1 (first character is coordinate 0).
Serialization is canonical: parsing a canonical file and re-serializing
reproduces it byte for byte.
"""

from __future__ import annotations

import re

from .chains import ChainChar, FanChain
from .errors import StructuralError
from .spectral import Forest


class FormatError(ValueError):
    pass


def mask_to_bits(mask: int, width: int) -> str:
    return "".join("1" if mask >> i & 1 else "0" for i in range(width))


def bits_to_mask(bits: str, width: int | None = None) -> int:
    if not bits or any(ch not in "01" for ch in bits):
        raise FormatError(f"bad bit string {bits!r}")
    if width is not None and len(bits) != width:
        raise FormatError(f"bit string {bits!r} should have {width} bits")
    return sum(1 << i for i, ch in enumerate(bits) if ch == "1")


def serialize_chain(c: FanChain) -> str:
    lines = [f"fanchain n={c.n}"]
    for d in range(1, c.n + 1):
        k = c.dims[d - 1]
        lines.append(f"level d={d} dim={k} minus={mask_to_bits(c.minus[d - 1], k)}")
    for d in range(1, c.n):
        rows = c.taus[d - 1]
        body = ";".join(mask_to_bits(row, c.dims[d - 1]) for row in rows)
        lines.append(f"tau d={d} rows={len(rows)} {body}")
    return "\n".join(lines) + "\n"


_HEADER = re.compile(r"^fanchain n=(\d+)$")
_LEVEL = re.compile(r"^level d=(\d+) dim=(\d+) minus=([01]+)$")
_TAU = re.compile(r"^tau d=(\d+) rows=(\d+) ([01;]+)$")


def parse_chain(text: str) -> FanChain:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty chain file")
    head = _HEADER.match(lines[0])
    if not head:
        raise FormatError(f"bad header line {lines[0]!r}")
    n = int(head.group(1))
    if len(lines) != 1 + n + max(n - 1, 0):
        raise FormatError(f"expected {1 + n + max(n - 1, 0)} lines for n={n}, got {len(lines)}")

    dims, minus = [], []
    for d in range(1, n + 1):
        m = _LEVEL.match(lines[d])
        if not m or int(m.group(1)) != d:
            raise FormatError(f"bad level line {lines[d]!r} (expected depth {d})")
        k = int(m.group(2))
        dims.append(k)
        minus.append(bits_to_mask(m.group(3), k))
    taus = []
    for d in range(1, n):
        line = lines[n + d]
        m = _TAU.match(line)
        if not m or int(m.group(1)) != d:
            raise FormatError(f"bad tau line {line!r} (expected depth {d})")
        rows = m.group(3).split(";")
        if len(rows) != int(m.group(2)) or int(m.group(2)) != dims[d]:
            raise FormatError(f"tau at depth {d} should have {dims[d]} rows")
        taus.append(tuple(bits_to_mask(r, dims[d - 1]) for r in rows))
    return FanChain(tuple(dims), tuple(minus), tuple(taus))


def serialize_forest(f: Forest) -> str:
    lines = []
    for i, (d, p) in enumerate(zip(f.depths, f.parents)):
        parent = "none" if p is None else str(p)
        lines.append(f"node id={i} depth={d} parent={parent}")
    return "\n".join(lines) + "\n"


_NODE = re.compile(r"^node id=(\d+) depth=(\d+) parent=(none|\d+)$")


def parse_forest(text: str) -> Forest:
    entries: dict[int, tuple[int, int | None]] = {}
    for ln in text.splitlines():
        if not ln.strip():
            continue
        m = _NODE.match(ln)
        if not m:
            raise FormatError(f"bad node line {ln!r}")
        ident = int(m.group(1))
        if ident in entries:
            raise FormatError(f"duplicate node id {ident}")
        parent = None if m.group(3) == "none" else int(m.group(3))
        entries[ident] = (int(m.group(2)), parent)
    if not entries:
        raise FormatError("empty forest file")
    if sorted(entries) != list(range(len(entries))):
        raise FormatError("node ids are not dense from 0")
    depths = tuple(entries[i][0] for i in range(len(entries)))
    parents = tuple(entries[i][1] for i in range(len(entries)))
    try:
        return Forest(depths, parents)
    except StructuralError as exc:
        raise FormatError(f"inconsistent forest data: {exc}") from exc


def char_label(chain: FanChain, h: ChainChar) -> str:
    return f"d{h.depth}:{mask_to_bits(h.mask, chain.dims[h.depth - 1])}"


def root_system_dot(chain: FanChain, chars, parents) -> str:
    """DOT text for a root system; edges point from child to parent."""
    lines = ["digraph rootsystem {"]
    for h in chars:
        lines.append(f'  "{char_label(chain, h)}";')
    for h, p in parents.items():
        lines.append(f'  "{char_label(chain, h)}" -> "{char_label(chain, p)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
