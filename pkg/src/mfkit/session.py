"""Reading and writing session files.

Grammar (one declaration per line outside blocks; ``#`` starts a comment)::

    session     := decl* block*
    decl        := "field" FIELD | "ring" var ("," var)* | "f:" POLY
    var         := NAME [":" INT]                       # optional weight
    FIELD       := "Q" | "F<p>" | "GF(<p>)"
    block       := factorization | module | morphism | chainmap | homotopy
    factorization := "factorization" NAME "{" "d1:" MATRIX "d0:" MATRIX "}"
    module      := "module" NAME "over" ("R" | "S") "{" "relations:" MATRIX "}"
    morphism    := "morphism" NAME ":" NAME "->" NAME "{" "a0:" MATRIX "a1:" MATRIX "}"
    chainmap    := "chainmap" NAME ":" "T(" NAME ")" "->" "T(" NAME ")"
                   "{" "a2:" MATRIX "a1:" MATRIX "a0:" MATRIX "}"
    homotopy    := "homotopy" NAME ":" NAME "->" NAME "{" "s0:" MATRIX "s1:" MATRIX ["s2:" MATRIX] "}"
    MATRIX      := "[" [row ("," row)*] "]"
    row         := "[" [POLY ("," POLY)*] "]"

``[[]]`` is a 1 x 0 matrix and ``[]`` is 0 x 0.  Blocks may span lines freely.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import DuplicateName, ParseError, UndefinedName
from .matrix import PolyMatrix
from .ring import QQ, PolyRing, field_from_tag

_BLOCK_KEYS = {
    "factorization": ("d1", "d0"),
    "module": ("relations",),
    "morphism": ("a0", "a1"),
    "chainmap": ("a2", "a1", "a0"),
    "homotopy": ("s0", "s1", "s2"),
}
_OPTIONAL = {("homotopy", "s2")}


@dataclass
class Block:
    kind: str
    name: str
    matrices: dict
    source: str | None = None
    target: str | None = None
    over: str | None = None
    line: int = 0


@dataclass
class SessionFile:
    ring: PolyRing
    f: object = None
    blocks: dict = field(default_factory=dict)  # name -> Block, in file order

    def get(self, name, kinds=None):
        b = self.blocks.get(name)
        if b is None:
            raise UndefinedName(f"no object named {name!r}")
        if kinds is not None and b.kind not in kinds:
            raise UndefinedName(f"{name!r} is a {b.kind}, expected {' or '.join(kinds)}")
        return b


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def where(self, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def skip(self, newlines=True):
        t = self.text
        while self.pos < len(t):
            c = t[self.pos]
            if c == "#":
                while self.pos < len(t) and t[self.pos] != "\n":
                    self.pos += 1
            elif c in " \t\r" or (newlines and c == "\n"):
                self.pos += 1
            else:
                break

    def at_end(self):
        self.skip()
        return self.pos >= len(self.text)

    def peek_word(self):
        self.skip()
        m = re.compile(r"[A-Za-z_][A-Za-z0-9_]*").match(self.text, self.pos)
        return m.group(0) if m else None

    def fail(self, expected):
        self.skip()
        line, col = self.where()
        found = self.text[self.pos:self.pos + 12].split("\n")[0] or "end of input"
        raise ParseError(line, col, expected, found)

    def expect(self, lit):
        self.skip()
        if self.text.startswith(lit, self.pos):
            self.pos += len(lit)
            return
        self.fail(repr(lit))

    def accept(self, lit):
        self.skip()
        if self.text.startswith(lit, self.pos):
            self.pos += len(lit)
            return True
        return False

    def name(self, what="a name"):
        self.skip()
        m = re.compile(r"[A-Za-z_][A-Za-z0-9_]*").match(self.text, self.pos)
        if not m:
            self.fail(what)
        self.pos = m.end()
        return m.group(0)

    def rest_of_line(self):
        self.skip(newlines=False)
        start = self.pos
        end = self.text.find("\n", start)
        end = len(self.text) if end < 0 else end
        raw = self.text[start:end]
        cut = raw.find("#")
        if cut >= 0:
            raw = raw[:cut]
        self.pos = end
        return raw.rstrip(), start

    def poly_text(self):
        """Text of one matrix entry: up to a top-level ',' or ']'."""
        self.skip()
        start = self.pos
        depth = 0
        t = self.text
        while self.pos < len(t):
            c = t[self.pos]
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
            elif depth == 0 and c in ",]":
                break
            elif c in "[{}#":
                break
            self.pos += 1
        return t[start:self.pos].strip(), start


def _parse_matrix(sc: _Scanner, ring: PolyRing):
    sc.expect("[")
    rows = []
    if sc.accept("]"):
        return PolyMatrix(ring, [], (0, 0))
    while True:
        sc.expect("[")
        row = []
        if not sc.accept("]"):
            while True:
                txt, start = sc.poly_text()
                line, col = sc.where(start)
                if not txt:
                    raise ParseError(line, col, "a polynomial", sc.text[start:start + 1] or "end of input")
                row.append(ring.parse(txt, line, col))
                if sc.accept("]"):
                    break
                sc.expect(",")
        rows.append(row)
        if sc.accept("]"):
            break
        sc.expect(",")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        line, col = sc.where()
        raise ParseError(line, col, f"rows of length {width}", "a ragged matrix")
    return PolyMatrix(ring, rows, (len(rows), width))


def _parse_ring(text, start, sc):
    names, weights = [], []
    for part in text.split(","):
        part = part.strip()
        m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)\s*(?::\s*(\d+))?", part)
        if not m:
            line, col = sc.where(start)
            raise ParseError(line, col, "variable[:weight]", part)
        names.append(m.group(1))
        weights.append(int(m.group(2)) if m.group(2) else 1)
    if len(set(names)) != len(names):
        raise DuplicateName("repeated ring variable")
    return names, weights


def _shape_error(sc, pos, want, got):
    line, col = sc.where(pos)
    raise ParseError(line, col, f"a {want[0]}x{want[1]} matrix", f"{got[0]}x{got[1]}")


def parse_session(text: str, field_override=None) -> SessionFile:
    sc = _Scanner(text)
    field_tag = None
    ring = None
    f = None
    blocks = {}
    while not sc.at_end():
        word = sc.peek_word()
        if word == "field":
            sc.name()
            tag, start = sc.rest_of_line()
            try:
                field_tag = field_from_tag(tag)
            except ValueError:
                line, col = sc.where(start)
                raise ParseError(line, col, "Q, F<p> or GF(<p>)", tag) from None
        elif word == "ring":
            sc.name()
            txt, start = sc.rest_of_line()
            names, weights = _parse_ring(txt, start, sc)
            fld = field_override or field_tag or QQ
            ring = PolyRing(names, fld, weights)
        elif word == "f":
            sc.name()
            sc.expect(":")
            if ring is None:
                sc.fail("a ring declaration before f")
            txt, start = sc.rest_of_line()
            line, col = sc.where(start)
            f = ring.parse(txt, line, col)
        elif word in _BLOCK_KEYS:
            if ring is None:
                sc.fail("a ring declaration before the first block")
            blk = _parse_block(sc, word, ring, blocks, f)
            if blk.name in blocks:
                raise DuplicateName(f"{blk.name!r} is defined twice")
            blocks[blk.name] = blk
        else:
            sc.fail("field, ring, f: or a block keyword")
    if ring is None:
        raise ParseError(1, 1, "a ring declaration", "end of input")
    return SessionFile(ring, f, blocks)


def _rank_of(blocks, name, line):
    b = blocks.get(name)
    if b is None:
        raise UndefinedName(f"line {line}: {name!r} is not defined earlier")
    if b.kind != "factorization":
        raise UndefinedName(f"line {line}: {name!r} is a {b.kind}, not a factorization")
    return b.matrices["d1"].nrows


def _parse_block(sc, kind, ring, blocks, f):
    sc.name()
    start = sc.pos
    line, _ = sc.where(start)
    name = sc.name("an object name")
    blk = Block(kind, name, {}, line=line)
    if kind == "module":
        sc.expect("over")
        over = sc.name("R or S")
        if over not in ("R", "S"):
            sc.fail("R or S")
        if over == "R" and f is None:
            sc.fail("an f: declaration before an R-module")
        blk.over = over
    elif kind in ("morphism", "homotopy", "chainmap"):
        sc.expect(":")
        wrapped = kind == "chainmap"
        if wrapped:
            sc.expect("T(")
        blk.source = sc.name("a factorization name")
        if wrapped:
            sc.expect(")")
        sc.expect("->")
        if wrapped:
            sc.expect("T(")
        blk.target = sc.name("a factorization name")
        if wrapped:
            sc.expect(")")
    sc.expect("{")
    keys = _BLOCK_KEYS[kind]
    positions = {}
    for key in keys:
        if (kind, key) in _OPTIONAL:
            sc.skip()
            if not sc.text.startswith(key + ":", sc.pos):
                continue
        sc.expect(key + ":")
        sc.skip()
        positions[key] = sc.pos
        blk.matrices[key] = _parse_matrix(sc, ring)
    sc.expect("}")
    _check_shapes(sc, blk, blocks, positions)
    return blk


def _check_shapes(sc, blk, blocks, positions):
    m = blk.matrices
    if blk.kind == "factorization":
        n = m["d1"].nrows
        for key in ("d1", "d0"):
            if m[key].shape != (n, n):
                _shape_error(sc, positions[key], (n, n), m[key].shape)
    elif blk.kind in ("morphism", "chainmap", "homotopy"):
        n = _rank_of(blocks, blk.source, blk.line)
        k = _rank_of(blocks, blk.target, blk.line)
        for key, mat in m.items():
            if mat.shape != (k, n) and not (mat.shape == (0, 0) and k * n == 0):
                _shape_error(sc, positions[key], (k, n), mat.shape)


def _fmt_matrix(m: PolyMatrix):
    if m.nrows == 0:
        return "[]"
    return "[" + ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in m.rows) + "]"


def format_session(s: SessionFile) -> str:
    """Canonical text; parse(format(x)) formats back to the same string."""
    r = s.ring
    out = [f"field {r.field.tag()}"]
    if any(w != 1 for w in r.weights):
        out.append("ring " + ", ".join(f"{n}:{w}" for n, w in zip(r.names, r.weights)))
    else:
        out.append("ring " + ", ".join(r.names))
    if s.f is not None:
        out.append(f"f: {s.f}")
    for b in s.blocks.values():
        out.append("")
        if b.kind == "factorization":
            head = f"factorization {b.name}"
        elif b.kind == "module":
            head = f"module {b.name} over {b.over}"
        elif b.kind == "chainmap":
            head = f"chainmap {b.name} : T({b.source}) -> T({b.target})"
        else:
            head = f"{b.kind} {b.name} : {b.source} -> {b.target}"
        out.append(head + " {")
        for key in _BLOCK_KEYS[b.kind]:
            if key in b.matrices:
                out.append(f"  {key}: {_fmt_matrix(b.matrices[key])}")
        out.append("}")
    return "\n".join(out) + "\n"
