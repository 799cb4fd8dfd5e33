"""Plain-text and JSON documents holding a ring, a ranking and polynomials.

Text form::

    # comment
    unknowns: u, v
    derivations: x, y
    conjugates: no
    ranking: orderly
    blocks: [u, v]
    u[0,2] - v[2,0] - v[1,1]
    ...

Header lines are ``key: value``; every other non-blank line is a
polynomial.  ``blocks`` is a comma list of names or bracketed groups,
highest block first.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from ..diffalg import DiffRing, LinDiffPoly, Ranking, parse_poly
from ..errors import ParseError

_HEADER = re.compile(r"^\s*(unknowns|derivations|conjugates|ranking|blocks)\s*:\s*(.*?)\s*$")
_DEFAULT_DERIVATIONS = ("x", "y", "z", "t")


@dataclass
class SystemDoc:
    ring: DiffRing
    kind: str
    blocks: list | None
    polys: list[LinDiffPoly]
    inconsistent: bool = False

    def ranking(self, kind: str | None = None, blocks: list | None = None) -> Ranking:
        return Ranking(self.ring, kind or self.kind, blocks if blocks is not None else self.blocks)


def parse_blocks(text: str) -> list:
    """``"u,v"`` gives two blocks, ``"[u,v],w"`` a grouped block then ``w``."""
    out: list = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        ch = text[pos]
        if ch in " ,":
            pos += 1
        elif ch == "[":
            end = text.find("]", pos)
            if end < 0:
                raise ParseError("unclosed '['", text, pos)
            names = [s.strip() for s in text[pos + 1:end].split(",") if s.strip()]
            if not names:
                raise ParseError("empty block", text, pos)
            out.append(names)
            pos = end + 1
        else:
            m = re.compile(r"[A-Za-z_]\w*").match(text, pos)
            if not m:
                raise ParseError(f"unexpected {ch!r} in block list", text, pos)
            out.append(m.group())
            pos = m.end()
    return out


def render_blocks(blocks: Sequence[Sequence[str]]) -> str:
    return ", ".join(b[0] if len(b) == 1 else "[" + ", ".join(b) + "]" for b in blocks)


def _names(value: str) -> list[str]:
    return [s for s in re.split(r"[,\s]+", value) if s]


def _flag(value: str, text: str, pos: int) -> bool:
    v = value.lower()
    if v in ("yes", "true", "1", "on"):
        return True
    if v in ("no", "false", "0", "off"):
        return False
    raise ParseError(f"expected yes or no, found {value!r}", text, pos)


_TOKEN = re.compile(r"bar\(\s*([A-Za-z_]\w*)\s*\)|([A-Za-z_]\w*)\s*(\[[^\]]*\])?")


def infer_ring(texts: Sequence[str], conjugates: bool = True) -> DiffRing:
    """Guess a ring from polynomial texts: names in order of appearance,
    derivation count from the first exponent list."""
    names: list[str] = []
    m = None
    for t in texts:
        for mt in _TOKEN.finditer(t):
            name = mt.group(1) or mt.group(2)
            if mt.group(2) == "i" and not mt.group(3):
                continue
            if name not in names:
                names.append(name)
            if m is None and mt.group(3):
                m = len([x for x in mt.group(3)[1:-1].split(",") if x.strip()])
    m = 1 if m is None else m
    ders = _DEFAULT_DERIVATIONS[:m] if m <= len(_DEFAULT_DERIVATIONS) else tuple(f"d{k + 1}" for k in range(m))
    return DiffRing(names, ders, conjugates)


def parse_system_text(text: str) -> SystemDoc:
    head: dict[str, tuple[str, int]] = {}
    lines: list[tuple[str, int]] = []
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.split("#", 1)[0]
        m = _HEADER.match(line)
        if m and not lines:
            head[m.group(1)] = (m.group(2), offset)
        elif line.strip():
            lines.append((line.strip(), offset + (len(line) - len(line.lstrip()))))
        offset += len(raw)
    conj = _flag(*head["conjugates"], text) if "conjugates" in head else True
    if "unknowns" in head:
        ders = _names(head["derivations"][0]) if "derivations" in head else None
        if not ders:
            raise ParseError("a 'derivations:' header is required with 'unknowns:'", text, 0)
        ring = DiffRing(_names(head["unknowns"][0]), ders, conj)
    else:
        ring = infer_ring([s for s, _ in lines], conj)
    kind = head["ranking"][0] if "ranking" in head else "orderly"
    blocks = parse_blocks(head["blocks"][0]) if "blocks" in head else None
    polys = []
    for s, pos in lines:
        try:
            polys.append(parse_poly(s, ring))
        except ParseError as e:
            # report positions relative to the whole document
            raise ParseError(e.msg, text, pos + _col_offset(e)) from None
    return SystemDoc(ring, kind, blocks, polys)


def _col_offset(e: ParseError) -> int:
    return e.column - 1


def render_system_text(ring: DiffRing, r: Ranking, polys: Sequence[LinDiffPoly]) -> str:
    primary = [u for u in ring.indeterminates if not u.is_barred]
    conj = [not u.self_conjugate for u in primary]
    if all(conj):
        cflag = "yes"
    elif not any(conj):
        cflag = "no"
    else:
        raise ValueError("mixed real and complex unknowns need the JSON form")
    lines = [
        f"unknowns: {', '.join(u.name for u in primary)}",
        f"derivations: {', '.join(ring.derivations)}",
        f"conjugates: {cflag}",
        f"ranking: {r.kind.value}",
    ]
    if [list(b) for b in r.blocks] != [[u.name] for u in primary]:
        lines.append(f"blocks: {render_blocks(r.blocks)}")
    lines += [p.to_text(r) for p in polys]
    return "\n".join(lines) + "\n"


def system_doc_from_json(doc: dict) -> SystemDoc:
    from .serialize import ring_from_json

    ring = ring_from_json(doc["ring"])
    rk = doc.get("ranking", {})
    polys = [parse_poly(t, ring) for t in doc.get("generators", doc.get("polynomials", []))]
    return SystemDoc(ring, rk.get("kind", "orderly"), rk.get("blocks"), polys,
                     bool(doc.get("inconsistent", False)))


def load_system(path: str | Path) -> SystemDoc:
    """Read a system from a text or JSON file (or a bundled fixture name)."""
    p = Path(path)
    if not p.exists():
        from importlib import resources

        fx = resources.files("craut").joinpath("data", "systems", f"{path}.txt")
        if not fx.is_file():
            raise FileNotFoundError(str(path))
        return parse_system_text(fx.read_text())
    text = p.read_text()
    if text.lstrip().startswith("{"):
        return system_doc_from_json(json.loads(text))
    return parse_system_text(text)
