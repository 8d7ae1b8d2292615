"""Reading and writing the plain-text triple format.

Example::

    NAME = F5
    G = so(8) * so(3)
    H = so(7)[spin -> 1] * so(3)[id -> 2]
    V = phi(1)@1 (x) phi(1)@2

Factor indices are 1-based.  ``H = G`` gives the identity triple; leaving
``H`` out describes a bare linear group.  Trees use a separate line::

    TREE: 0:1 1:2 2:inf ; edges 0-1 1-2
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .groups import (KINDS, EmbeddingSpec, Factor, FactorMap, GroupSpec, ModelError, ModuleSpec, ModuleSummand,
                     TripleSpec, identity_triple)
from .lie import LieError
from .trees import TreeError, WeightedTree


class SpecError(ValueError):
    pass


class SpecSyntaxError(SpecError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class SpecSemanticError(SpecError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.message = message
        self.line = line


@dataclass
class SpecDocument:
    name: str = ""
    group: GroupSpec | None = None
    module: ModuleSpec | None = None
    triple: TripleSpec | None = None
    tree: WeightedTree | None = None

    @property
    def kind(self) -> str:
        if self.tree is not None:
            return "tree"
        return "triple" if self.triple is not None else "group"

    def as_triple(self) -> TripleSpec:
        if self.triple is not None:
            return self.triple
        if self.group is None or self.module is None:
            raise SpecSemanticError("document has no group and module")
        t = identity_triple(self.group, self.module)
        return TripleSpec(t.H, t.G, t.embedding, t.V, name=self.name)


# ----------------------------------------------------------------------
# scanner


class _Scanner:
    def __init__(self, text: str, line: int, col0: int):
        self.text = text
        self.pos = 0
        self.line = line
        self.col0 = col0

    def error(self, msg: str):
        raise SpecSyntaxError(msg, self.line, self.col0 + self.pos + 1)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        self.ws()
        return self.pos >= len(self.text)

    def peek(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.pos)

    def accept(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.accept(s):
            found = self.text[self.pos:self.pos + 1] or "end of line"
            self.error(f"expected {s!r}, found {found!r}")

    def word(self, extra: str = "") -> str:
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] in "_" + extra):
            self.pos += 1
        if start == self.pos:
            self.error("expected a name")
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos or self.text[start:self.pos] == "-":
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def int_list(self) -> list[int]:
        self.expect("(")
        out = [self.integer()]
        while self.accept(","):
            out.append(self.integer())
        self.expect(")")
        return out


# ----------------------------------------------------------------------
# statements


def _factor_atom(sc: _Scanner) -> Factor | int:
    """A factor or ``torus(k)`` (returned as the int ``k``)."""
    sc.ws()
    start = sc.pos
    kind = sc.word().lower()
    if kind == "torus":
        (k,) = sc.int_list()
        if k < 0:
            sc.error("torus rank must be >= 0")
        return k
    if kind not in KINDS:
        sc.pos = start
        sc.error(f"unknown group {kind!r}")
    if kind in ("sl", "so", "sp"):
        (n,) = sc.int_list()
        try:
            return Factor(kind, n)
        except ModelError as exc:
            raise SpecSemanticError(str(exc), sc.line) from None
    return Factor(kind)


def _parse_group(sc: _Scanner) -> GroupSpec:
    if sc.accept("1"):
        if not sc.at_end():
            sc.error("trailing text after trivial group")
        return GroupSpec()
    factors, torus = [], 0
    while True:
        a = _factor_atom(sc)
        if isinstance(a, int):
            torus += a
        else:
            factors.append(a)
        if not sc.accept("*"):
            break
    if not sc.at_end():
        sc.error("unexpected text")
    return GroupSpec(tuple(factors), torus)


def _parse_h(sc: _Scanner):
    factors, maps, torus = [], [], 0
    while True:
        a = _factor_atom(sc)
        if isinstance(a, int):
            torus += a
        else:
            sc.expect("[")
            label = sc.word(extra="+").lower()
            sc.expect("->")
            targets = [sc.integer()]
            while sc.accept(","):
                targets.append(sc.integer())
            sc.expect("]")
            factors.append(a)
            maps.append((label, [x - 1 for x in targets], sc.line))
        if not sc.accept("*"):
            break
    if not sc.at_end():
        sc.error("unexpected text")
    return factors, maps, torus


def _build_maps(raw) -> tuple[FactorMap, ...]:
    out = []
    parts: dict[int, int] = {}
    for label, targets, line in raw:
        try:
            if label == "diag":
                if len(targets) != 2:
                    raise ModelError("diag needs two targets")
                out.append(FactorMap.diagonal(*targets))
            else:
                if len(targets) != 1:
                    raise ModelError(f"{label} takes one target")
                part = 0
                if label == "tensor":
                    part = parts.get(targets[0], 0)
                    parts[targets[0]] = part + 1
                out.append(FactorMap.straight(targets[0], label, part))
        except ModelError as exc:
            raise SpecSemanticError(str(exc), line) from None
    return tuple(out)


def _parse_module(sc: _Scanner, g: GroupSpec) -> ModuleSpec:
    terms = []
    while True:
        terms.append(_parse_summand(sc, g))
        if not sc.accept("+"):
            break
    if not sc.at_end():
        sc.error("unexpected text")
    return ModuleSpec(tuple(terms))


def _parse_summand(sc: _Scanner, g: GroupSpec):
    mult = 1
    save = sc.pos
    sc.ws()
    if sc.pos < len(sc.text) and sc.text[sc.pos].isdigit():
        mult = sc.integer()
        if not sc.accept("*"):
            sc.pos = save
            sc.error("expected '*' after multiplicity")
        if mult < 1:
            sc.error("multiplicity must be >= 1")
    slots: list = [None] * len(g.factors)
    charges: tuple = ()
    while True:
        sc.ws()
        col = sc.pos
        head = sc.word().lower()
        if head == "triv":
            pass
        elif head == "charge":
            charges = tuple(sc.int_list())
            if len(charges) != g.torus_rank:
                sc.pos = col
                sc.error(f"charge needs {g.torus_rank} entries")
        elif head in ("phi", "w"):
            args = sc.int_list()
            sc.expect("@")
            idx = sc.integer() - 1
            if not 0 <= idx < len(g.factors):
                sc.pos = col
                sc.error(f"factor index {idx + 1} out of range")
            if slots[idx] is not None:
                sc.pos = col
                sc.error(f"factor {idx + 1} appears twice in one summand")
            f = g.factors[idx]
            try:
                if head == "phi":
                    if len(args) != 1:
                        raise ModelError("phi takes one index")
                    w = f.fundamental(args[0])
                else:
                    w = tuple(args)
                    f.irrep(w)
            except (ModelError, LieError) as exc:
                raise SpecSemanticError(str(exc), sc.line) from None
            slots[idx] = w
        else:
            sc.pos = col
            sc.error(f"unknown module term {head!r}")
        if not sc.accept("(x)"):
            break
    return ModuleSummand(tuple(slots), charges), mult


def _parse_tmap(sc: _Scanner):
    rest = sc.text[sc.pos:].strip()
    try:
        data = json.loads(rest)
    except json.JSONDecodeError as exc:
        raise SpecSyntaxError(f"bad matrix: {exc.msg}", sc.line, sc.col0 + sc.pos + exc.colno) from None
    if not isinstance(data, list) or not all(isinstance(r, list) and all(isinstance(x, int) for x in r)
                                             for r in data):
        sc.error("TMAP must be a list of integer rows")
    return tuple(tuple(r) for r in data)


def _parse_tree(sc: _Scanner) -> WeightedTree:
    weights: dict[int, int | None] = {}
    while not sc.peek(";"):
        if sc.at_end():
            sc.error("expected ';' before the edge list")
        v = sc.integer()
        sc.expect(":")
        if sc.accept("inf"):
            weights[v] = None
        else:
            weights[v] = sc.integer()
    sc.expect(";")
    if sc.word() != "edges":
        sc.error("expected 'edges'")
    edges = []
    while not sc.at_end():
        a = sc.integer()
        sc.expect("-")
        b = sc.integer()
        edges.append((a, b))
    if sorted(weights) != list(range(len(weights))):
        sc.error("vertices must be numbered 0..n-1")
    try:
        return WeightedTree(tuple(weights[i] for i in range(len(weights))), tuple(edges))
    except TreeError as exc:
        raise SpecSemanticError(str(exc), sc.line) from None


_KEYS = ("NAME", "G", "H", "V", "TMAP")


def _statements(text: str):
    """Yield (key, scanner) pairs; lines starting with '+' continue the previous one."""
    stmts: list = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.lstrip()
        if stripped.startswith("+") and stmts:
            stmts[-1][2].append((no, len(line) - len(stripped), " " + stripped))
            continue
        stmts.append([no, len(line) - len(stripped), [(no, 0, stripped)]])
    for no, indent, pieces in stmts:
        text_ = "".join(p for _, _, p in pieces)
        if text_.upper().startswith("TREE"):
            sc = _Scanner(text_, no, indent)
            sc.word()
            sc.expect(":")
            yield "TREE", sc
            continue
        if "=" not in text_:
            raise SpecSyntaxError("expected 'KEY = value'", no, indent + 1)
        key, _ = text_.split("=", 1)
        key = key.strip().upper()
        if key not in _KEYS:
            raise SpecSyntaxError(f"unknown key {key!r}", no, indent + 1)
        sc = _Scanner(text_, no, indent)
        sc.pos = text_.index("=") + 1
        yield key, sc


def parse_spec(text: str) -> SpecDocument:
    seen: dict = {}
    for key, sc in _statements(text):
        if key in seen:
            raise SpecSemanticError(f"{key} given twice", sc.line)
        seen[key] = sc
    doc = SpecDocument()
    if "NAME" in seen:
        doc.name = seen["NAME"].text[seen["NAME"].pos:].strip()
    if "TREE" in seen:
        if set(seen) - {"TREE", "NAME"}:
            raise SpecSemanticError("a tree document has no G, H or V")
        doc.tree = _parse_tree(seen["TREE"])
        return doc
    for key in ("G", "V"):
        if key not in seen:
            raise SpecSemanticError(f"missing {key}")
    g = _parse_group(seen["G"])
    v = _parse_module(seen["V"], g)
    doc.group, doc.module = g, v
    if "H" not in seen:
        if "TMAP" in seen:
            raise SpecSemanticError("TMAP without H", seen["TMAP"].line)
        return doc
    hs = seen["H"]
    try:
        if hs.text[hs.pos:].strip().upper() == "G":
            t = identity_triple(g, v)
            doc.triple = TripleSpec(t.H, t.G, t.embedding, t.V, name=doc.name)
            return doc
        if hs.text[hs.pos:].strip() == "1":
            factors, raw, torus = [], [], 0
        else:
            factors, raw, torus = _parse_h(hs)
        maps = _build_maps(raw)
        tmap: tuple = ()
        if "TMAP" in seen:
            tmap = _parse_tmap(seen["TMAP"])
        elif torus or g.torus_rank:
            if torus:
                raise SpecSemanticError("H has a torus but no TMAP is given", hs.line)
            tmap = tuple(() for _ in range(g.torus_rank))
        doc.triple = TripleSpec(GroupSpec(tuple(factors), torus), g, EmbeddingSpec(maps, tmap), v, name=doc.name)
    except (ModelError, LieError) as exc:
        raise SpecSemanticError(str(exc), hs.line) from None
    return doc


def parse_triple(text: str) -> TripleSpec:
    return parse_spec(text).as_triple()


def load_spec(path) -> SpecDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


# ----------------------------------------------------------------------
# printing


def format_weight(f: Factor, w) -> str:
    if f.kind == "so" and f.n == 3:
        if tuple(w) == (2,):
            return "phi(1)"
        return f"w({','.join(map(str, w))})"
    if sum(w) == 1:
        return f"phi({list(w).index(1) + 1})"
    return f"w({','.join(map(str, w))})"


def format_group(g: GroupSpec) -> str:
    return str(g)


def format_summand(g: GroupSpec, s: ModuleSummand) -> str:
    parts = [f"{format_weight(g.factors[i], s.slots[i])}@{i + 1}" for i in s.support]
    if s.charges:
        parts.append(f"charge({','.join(map(str, s.charges))})")
    return " (x) ".join(parts) if parts else "triv"


def format_module(g: GroupSpec, v: ModuleSpec) -> str:
    out = []
    for s, m in v.terms:
        body = format_summand(g, s)
        out.append(f"{m} * {body}" if m > 1 else body)
    return " + ".join(out)


def format_h(t: TripleSpec) -> str:
    parts = []
    for f, m in zip(t.H.factors, t.embedding.maps):
        targets = ",".join(str(x + 1) for x in m.targets)
        parts.append(f"{f}[{m.label} -> {targets}]")
    if t.H.torus_rank:
        parts.append(f"torus({t.H.torus_rank})")
    return " * ".join(parts) if parts else "1"


def _tensor_parts_in_order(t: TripleSpec) -> bool:
    counters: dict = {}
    for m in t.embedding.maps:
        if m.label == "tensor":
            want = counters.get(m.targets[0], 0)
            if m.part != want:
                return False
            counters[m.targets[0]] = want + 1
    return True


def format_triple(t: TripleSpec, name: str | None = None) -> str:
    if not _tensor_parts_in_order(t):
        order = sorted(range(len(t.H.factors)), key=lambda k: (t.embedding.maps[k].targets, t.embedding.maps[k].part))
        t = TripleSpec(GroupSpec(tuple(t.H.factors[k] for k in order), t.H.torus_rank), t.G,
                       EmbeddingSpec(tuple(t.embedding.maps[k] for k in order), t.embedding.torus_map), t.V,
                       name=t.name)
    lines = []
    name = t.name if name is None else name
    if name:
        lines.append(f"NAME = {name}")
    lines.append(f"G = {format_group(t.G)}")
    lines.append(f"H = {format_h(t)}")
    if t.H.torus_rank:
        lines.append(f"TMAP = {json.dumps([list(r) for r in t.embedding.torus_map])}")
    lines.append(f"V = {format_module(t.G, t.V)}")
    return "\n".join(lines) + "\n"


def format_group_module(g: GroupSpec, v: ModuleSpec, name: str = "") -> str:
    lines = [f"NAME = {name}"] if name else []
    lines += [f"G = {format_group(g)}", f"V = {format_module(g, v)}"]
    return "\n".join(lines) + "\n"


def format_tree(tree: WeightedTree, name: str = "") -> str:
    ws = " ".join(f"{i}:{'inf' if w is None else w}" for i, w in enumerate(tree.weights))
    es = " ".join(f"{a}-{b}" for a, b in tree.edges)
    head = f"NAME = {name}\n" if name else ""
    return f"{head}TREE: {ws} ; edges {es}\n"


def format_document(doc: SpecDocument) -> str:
    if doc.tree is not None:
        return format_tree(doc.tree, doc.name)
    if doc.triple is not None:
        return format_triple(doc.triple, doc.name)
    return format_group_module(doc.group, doc.module, doc.name)
