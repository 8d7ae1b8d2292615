"""The database of classified diagrams.

Each entry knows how to instantiate itself as a triple for given parameters
and how to recognise a triple of its shape.  Fixed-shape entries are matched
by comparing canonical keys against their instances; entries with arbitrary
"circle" parts (T8, T9, L5, A5, O) have hand-written matchers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from .castling import canonical_key
from .groups import Factor, GroupSpec, ModelError, ModuleSpec, ModuleSummand, TripleSpec, summand_dim
from .lie import dual_weight
from .specio import format_triple, parse_triple
from .trees import WeightedTree, join_trees, t9_parts, yak_predicate

SCHEMA = "extriples.diagrams/1"


@dataclass(frozen=True)
class DiagramEntry:
    id: str
    family: str
    summary: str
    nu: int | None = None
    nu_rule: str = "table"  # table | degrees | t8 | oracle
    degrees: tuple | None = None
    side_conditions: str = ""
    param_names: tuple[str, ...] = ()
    minimal: tuple[int, ...] = ()
    second: tuple[int, ...] | None = None
    texts: Callable[..., list[str]] | None = field(default=None, compare=False, repr=False)
    params_up_to: Callable[[int], Iterable[tuple]] | None = field(default=None, compare=False, repr=False)
    matcher: Callable[[TripleSpec], dict | None] | None = field(default=None, compare=False, repr=False)
    builder: Callable[..., TripleSpec] | None = field(default=None, compare=False, repr=False)

    def instance(self, *params) -> TripleSpec:
        params = params or self.minimal
        if self.builder is not None:
            t = self.builder(*params)
        else:
            t = parse_triple(self.texts(*params)[0])
        return TripleSpec(t.H, t.G, t.embedding, t.V, name=self.instance_name(params))

    def instance_name(self, params) -> str:
        if not self.param_names:
            return self.id
        return self.id + "(" + ",".join(f"{k}={v}" for k, v in zip(self.param_names, params)) + ")"

    def nu_value(self, params=()) -> int | None:
        if self.nu_rule == "degrees" and self.degrees is not None:
            return len(self.degrees)
        return self.nu

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "family": self.family,
            "summary": self.summary,
            "nu": self.nu_value(self.minimal) if self.nu_rule != "degrees" or self.id != "A5" else None,
            "nu_rule": self.nu_rule,
            "degrees": list(self.degrees) if self.degrees is not None else None,
            "side_conditions": self.side_conditions,
            "params": list(self.param_names),
            "minimal": list(self.minimal),
            "instance": format_triple(self.instance()),
        }


# ----------------------------------------------------------------------
# text templates


def _one(text: str) -> Callable[..., list[str]]:
    return lambda *p: [text]


def _lt(group: str, a: str, b: str) -> str:
    return f"G = {group} * {group}\nH = {group}[diag -> 1,2]\nV = {a} + {b}\n"


def _d4_pairs(mult_a: int) -> list[tuple[str, str]]:
    # the three 8-dimensional modules of so(8) are permuted by triality
    out = []
    for x, y in itertools.permutations((1, 3, 4), 2):
        a = f"{mult_a} * phi({x})@1" if mult_a > 1 else f"phi({x})@1"
        out.append((a, f"phi({y})@2"))
    return out


def _sf(g: str, h: str, v: str) -> str:
    return f"G = {g}\nH = {h}\nV = {v}\n"


def _range(lo: int, hi: int):
    return ((n,) for n in range(lo, hi + 1))


# ----------------------------------------------------------------------
# structural matchers


def _straight_pairs(t: TripleSpec):
    return list(zip(t.H.factors, t.embedding.maps))


def _is_defining(f: Factor, w) -> bool:
    if w is None:
        return False
    if w == f.defining_weight:
        return True
    return f.kind == "sl" and w == dual_weight(f.irrep(f.defining_weight)).weight


def match_t8(t: TripleSpec) -> dict | None:
    """so(8) diagonal pair; one copy carries a lone 8-dim module, the other meets an SO(3) circle."""
    if t.G.torus_rank:
        return None
    diag = [(k, m) for k, m in enumerate(t.embedding.maps) if m.mode == "diagonal"]
    if len(diag) != 1:
        return None
    k, m = diag[0]
    if t.H.factors[k] != Factor("so", 8):
        return None
    for kk, mm in enumerate(t.embedding.maps):
        if kk != k and not (mm.mode == "straight" and mm.label == "id"):
            return None
    eight = {(1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)}
    for a, b in (m.targets, m.targets[::-1]):
        on_a = [(s, mult) for s, mult in t.V.terms if s.acts(a)]
        on_b = [(s, mult) for s, mult in t.V.terms if s.acts(b)]
        if len(on_a) != 1 or len(on_b) != 1:
            continue
        (sa, ma), (sb, mb) = on_a[0], on_b[0]
        if ma != 1 or mb != 1 or sa.support != (a,) or sa.slots[a] not in eight:
            continue
        if len(sb.support) != 2 or sb.slots[b] not in eight or sb.slots[b] == sa.slots[a]:
            continue
        c = next(i for i in sb.support if i != b)
        if t.G.factors[c] != Factor("so", 3) or sb.slots[c] != (2,):
            continue
        rest = [i for i in range(len(t.G.factors)) if i not in (a, b, c)]
        # 1-based factor positions, as written in documents
        return {"a": a + 1, "b": b + 1, "so3": c + 1, "check": [i + 1 for i in rest]}
    return None


def match_t9(t: TripleSpec) -> dict | None:
    parts = t9_parts(t)
    if parts is None:
        return None
    a, b = parts
    if not (yak_predicate(a) or yak_predicate(b)):
        return None
    return {"left": _tree_text(a), "right": _tree_text(b)}


def _tree_text(tr: WeightedTree) -> str:
    ws = " ".join(f"{i}:{'inf' if w is None else w}" for i, w in enumerate(tr.weights))
    return f"{ws} ; edges " + " ".join(f"{x}-{y}" for x, y in tr.edges)


def _sl_times_x(t: TripleSpec):
    """Shape SL(n) x Y in SL(n) x X on C^n (x) W (one summand); returns (n, dim W, X, Y, label)."""
    if t.G.torus_rank or len(t.G.factors) != 2 or len(t.V.terms) != 1 or t.V.terms[0][1] != 1:
        return None
    s = t.V.terms[0][0]
    if s.support != (0, 1):
        return None
    for i, j in ((0, 1), (1, 0)):
        f = t.G.factors[i]
        if f.kind != "sl" or not _is_defining(f, s.slots[i]):
            continue
        maps = _straight_pairs(t)
        on_i = [(h, mm) for h, mm in maps if i in mm.targets]
        on_j = [(h, mm) for h, mm in maps if j in mm.targets]
        if len(on_i) != 1 or on_i[0][1].label != "id" or on_i[0][1].mode != "straight":
            continue
        if len(on_j) != 1 or on_j[0][1].mode != "straight" or on_j[0][1].label == "id":
            continue
        k = summand_dim(GroupSpec((t.G.factors[j],)), ModuleSummand((s.slots[j],)))
        return f.n, k, t.G.factors[j], on_j[0][0], on_j[0][1].label
    return None


def match_l5(t: TripleSpec) -> dict | None:
    r = _sl_times_x(t)
    if r is None:
        return None
    n, k, x, y, label = r
    if k < n:
        return {"n": n, "k": k, "X": str(x), "Y": f"{y}[{label}]"}
    return None


def match_a5(t: TripleSpec) -> dict | None:
    r = _sl_times_x(t)
    if r is None:
        return None
    n, k, x, y, label = r
    if k == n:
        return {"n": n, "X": str(x), "Y": f"{y}[{label}]", "degrees": [n]}
    return None


def o_count(t: TripleSpec) -> dict | None:
    """Spin(7) in one so(8) factor, identity elsewhere; returns t = number of so(8) vector copies."""
    if t.G.torus_rank:
        return None
    maps = _straight_pairs(t)
    odd = [(h, m) for h, m in maps if not (m.mode == "straight" and m.label == "id")]
    if len(odd) != 1:
        return None
    h, m = odd[0]
    if m.mode != "straight" or m.label != "spin" or h != Factor("so", 7):
        return None
    g1 = m.targets[0]
    if t.G.factors[g1] != Factor("so", 8):
        return None
    count = 0
    for s, mult in t.V.terms:
        if not s.acts(g1):
            continue
        if s.slots[g1] != (1, 0, 0, 0):
            return None
        rest = ModuleSummand(tuple(w if i != g1 else None for i, w in enumerate(s.slots)))
        count += mult * summand_dim(t.G, rest)
    return {"t": count, "so8": g1}


def match_o(t: TripleSpec) -> dict | None:
    r = o_count(t)
    if r is None or r["t"] > 3 or r["t"] < 1:
        return None
    return {"t": r["t"]}


def h_stk_shape(t: TripleSpec) -> bool:
    """SL(s) x SL(t) x X in SL(st) x X on C^{st} (x) C^k with st > k."""
    if t.G.torus_rank or len(t.G.factors) != 2 or len(t.V.terms) != 1 or t.V.terms[0][1] != 1:
        return False
    s = t.V.terms[0][0]
    for i, j in ((0, 1), (1, 0)):
        f = t.G.factors[i]
        if f.kind != "sl" or not _is_defining(f, s.slots[i]) or not s.acts(j):
            continue
        on_i = [m for m in t.embedding.maps if i in m.targets]
        on_j = [m for m in t.embedding.maps if j in m.targets]
        if len(on_i) == 2 and all(m.label == "tensor" for m in on_i) and len(on_j) == 1 \
                and on_j[0].label == "id":
            k = summand_dim(GroupSpec((t.G.factors[j],)), ModuleSummand((s.slots[j],)))
            return f.n > k
    return False


# ----------------------------------------------------------------------
# the entries


def _entries() -> list[DiagramEntry]:
    E = []
    lt_rows = [
        ("T1", 2, "sl(4)", [("phi(1)@1 + phi(3)@1", "phi(2)@2")], "SL4 diagonal; phi1+phi3 on one copy, phi2 on the other"),
        ("T2", 2, "so(7)", [("phi(1)@1", "phi(3)@2")], "SO7 diagonal; vector on one copy, spin on the other"),
        ("T3", 2, "so(8)", _d4_pairs(1), "SO8 diagonal; two different 8-dimensional modules"),
        ("T4", 2, "so(12)", [("phi(1)@1", "phi(5)@2"), ("phi(1)@1", "phi(6)@2")],
         "SO12 diagonal; vector on one copy, half-spin on the other"),
        ("T5", 4, "so(7)", [("2 * phi(1)@1", "phi(3)@2")], "SO7 diagonal; two vectors and a spin module"),
        ("T6", 4, "so(8)", _d4_pairs(2), "SO8 diagonal; two vectors and a half-spin module"),
        ("T7", 7, "so(8)", _d4_pairs(3), "SO8 diagonal; three vectors and a half-spin module"),
    ]
    for id_, nu, grp, pairs, summary in lt_rows:
        E.append(DiagramEntry(id_, "T", summary, nu=nu,
                              texts=(lambda grp=grp, pairs=pairs: lambda *p: [_lt(grp, a, b) for a, b in pairs])()))
    E.append(DiagramEntry(
        "T8", "T", "SO8 diagonal; half-spin on one copy, the other tensored with an SO3 circle that also meets U",
        nu=None, nu_rule="t8", side_conditions="nu = 4 + codimension of the remaining group on U",
        texts=_one("G = so(8) * so(8) * so(3) * so(3)\n"
                   "H = so(8)[diag -> 1,2] * so(3)[id -> 3] * so(3)[id -> 4]\n"
                   "V = phi(3)@1 + phi(1)@2 (x) phi(1)@3 + phi(1)@3 (x) phi(1)@4\n"),
        matcher=match_t8))
    E.append(DiagramEntry(
        "T9", "T", "SL2 diagonal in the roots of two trees of symplectic groups", nu=None, nu_rule="oracle",
        side_conditions="roots in different trees; one tree passes the root-projection criterion",
        builder=lambda: join_trees(WeightedTree((1, 2, None), ((0, 1), (1, 2))), WeightedTree((1, 1), ((0, 1),))),
        matcher=match_t9))

    E += [
        DiagramEntry("F1", "F", "G2 in SO7 on the vector module", nu=1,
                     texts=_one(_sf("so(7)", "g2[phi1 -> 1]", "phi(1)@1"))),
        DiagramEntry("F2", "F", "Spin7 in SO8 on the vector module", nu=1,
                     texts=_one(_sf("so(8)", "so(7)[spin -> 1]", "phi(1)@1"))),
        DiagramEntry("F3", "F", "Spin9 in SO16 on the vector module", nu=1,
                     texts=_one(_sf("so(16)", "so(9)[spin -> 1]", "phi(1)@1"))),
        DiagramEntry("F4", "F", "Sp(2n) x SL2 in SO(4n) on the vector module", nu=1, param_names=("n",),
                     minimal=(2,), second=(3,), side_conditions="n >= 2",
                     texts=lambda n: [_sf(f"so({4 * n})", f"sp({2 * n})[tensor -> 1] * sl(2)[tensor -> 1]",
                                          "phi(1)@1")],
                     params_up_to=lambda b: _range(2, b // 4)),
        DiagramEntry("F5", "F", "Spin7 x SO3 in SO8 x SO3 on the tensor product", nu=3,
                     texts=_one(_sf("so(8) * so(3)", "so(7)[spin -> 1] * so(3)[id -> 2]", "phi(1)@1 (x) phi(1)@2"))),
        DiagramEntry("F6", "F", "SL(n) in SO(2n) on the vector module", nu=1, param_names=("n",), minimal=(3,),
                     second=(4,), side_conditions="n >= 3",
                     texts=lambda n: [_sf(f"so({2 * n})", f"sl({n})[phi1+dual -> 1]", "phi(1)@1")],
                     params_up_to=lambda b: _range(3, b // 2)),
        DiagramEntry("F7", "F", "Sp(2n) in SL(2n) on the defining module plus its dual", nu=1, param_names=("n",),
                     minimal=(2,), second=(3,), side_conditions="n >= 2",
                     texts=lambda n: [_sf(f"sl({2 * n})", f"sp({2 * n})[phi1 -> 1]", f"phi(1)@1 + phi({2 * n - 1})@1")],
                     params_up_to=lambda b: _range(2, b // 2)),
        DiagramEntry("F8", "F", "G2 in SO7 on two vector modules", nu=3,
                     texts=_one(_sf("so(7)", "g2[phi1 -> 1]", "2 * phi(1)@1"))),
        DiagramEntry("F9", "F", "Spin7 in SO8 on two vector modules", nu=3,
                     texts=_one(_sf("so(8)", "so(7)[spin -> 1]", "2 * phi(1)@1"))),
        DiagramEntry("F10", "F", "Spin7 in SO8 on three vector modules", nu=6,
                     texts=_one(_sf("so(8)", "so(7)[spin -> 1]", "3 * phi(1)@1"))),
    ]
    E.append(DiagramEntry(
        "O", "O", "Spin7 in one SO8 factor whose module is t vector copies up to trivial parts", nu=None,
        nu_rule="oracle", side_conditions="t <= 3", param_names=("t",), minimal=(3,),
        texts=lambda t=3: [_sf("so(8) * so(3)", "so(7)[spin -> 1] * so(3)[id -> 2]",
                               "phi(1)@1 (x) phi(1)@2 + phi(1)@2")],
        matcher=match_o))

    E += [
        DiagramEntry("L1", "L", "Sp(2n) in SL(2n) on the defining module", nu=0, param_names=("n",), minimal=(2,),
                     second=(3,), texts=lambda n: [_sf(f"sl({2 * n})", f"sp({2 * n})[phi1 -> 1]", "phi(1)@1")],
                     params_up_to=lambda b: _range(2, b // 2)),
        DiagramEntry("L2", "L", "SL(2n+1) in SL(n(2n+1)) via the second exterior power", nu=0, param_names=("n",),
                     minimal=(2,), second=(3,),
                     texts=lambda n: [_sf(f"sl({n * (2 * n + 1)})", f"sl({2 * n + 1})[phi2 -> 1]", "phi(1)@1")],
                     params_up_to=lambda b: ((n,) for n in range(2, b + 1) if n * (2 * n + 1) <= b)),
        DiagramEntry("L3", "L", "Spin10 in SL16", nu=0,
                     texts=_one(_sf("sl(16)", "so(10)[spin -> 1]", "phi(1)@1"))),
        DiagramEntry("L4", "L", "SL(s) x SL(t) in SL(st)", nu=0, param_names=("s", "t"), minimal=(3, 2),
                     second=(4, 2), side_conditions="s > t >= 2",
                     texts=lambda s, t: [_sf(f"sl({s * t})", f"sl({s})[tensor -> 1] * sl({t})[tensor -> 1]",
                                             "phi(1)@1")],
                     params_up_to=lambda b: ((s, t) for t in range(2, b + 1) for s in range(t + 1, b + 1)
                                             if s * t <= b)),
        DiagramEntry("L5", "L", "SL(n) x Y in SL(n) x X on C^n (x) C^k with Y maximal in X", nu=0,
                     side_conditions="k < n; Y maximal in X",
                     texts=_one(_sf("sl(4) * sl(3)", "sl(4)[id -> 1] * so(3)[std -> 2]", "phi(1)@1 (x) phi(1)@2")),
                     matcher=match_l5),
        DiagramEntry("L6", "L", "Sp(2n) x SL(2k+1) in SL(2n) x SL(2k+1)", nu=0, param_names=("n", "k"),
                     minimal=(3, 1), second=(4, 1), side_conditions="2k < n",
                     texts=lambda n, k: [_sf(f"sl({2 * n}) * sl({2 * k + 1})",
                                             f"sp({2 * n})[phi1 -> 1] * sl({2 * k + 1})[id -> 2]",
                                             "phi(1)@1 (x) phi(1)@2")],
                     params_up_to=lambda b: ((n, k) for n in range(2, b // 2 + 1) for k in range(1, b)
                                             if 2 * k < n and 2 * k + 1 <= b)),
        DiagramEntry("L7", "L", "SL(2n+1) x SL2 in SL(n(2n+1)) x SL2", nu=0, param_names=("n",), minimal=(2,),
                     second=(3,),
                     texts=lambda n: [_sf(f"sl({n * (2 * n + 1)}) * sl(2)", f"sl({2 * n + 1})[phi2 -> 1] * sl(2)[id -> 2]",
                                          "phi(1)@1 (x) phi(1)@2")],
                     params_up_to=lambda b: ((n,) for n in range(2, b + 1) if n * (2 * n + 1) <= b)),
    ]
    E += [
        DiagramEntry("A1", "A", "G2 in SO7 on the vector module", nu_rule="degrees", degrees=(2,),
                     texts=_one(_sf("so(7)", "g2[phi1 -> 1]", "phi(1)@1"))),
        DiagramEntry("A2", "A", "Spin7 in SO8 on the vector module", nu_rule="degrees", degrees=(2,),
                     texts=_one(_sf("so(8)", "so(7)[spin -> 1]", "phi(1)@1"))),
        DiagramEntry("A3", "A", "Spin9 in SO16 on the vector module", nu_rule="degrees", degrees=(2,),
                     texts=_one(_sf("so(16)", "so(9)[spin -> 1]", "phi(1)@1"))),
        DiagramEntry("A4", "A", "SO11 in SO12 on a half-spin module", nu_rule="degrees", degrees=(4,),
                     texts=lambda: [_sf("so(12)", "so(11)[std -> 1]", "phi(5)@1"),
                                    _sf("so(12)", "so(11)[std -> 1]", "phi(6)@1")]),
        DiagramEntry("A5", "A", "SL(n) x Y in SL(n) x X on C^n (x) C^n", nu_rule="degrees", degrees=("n",),
                     side_conditions="X acts irreducibly on C^n; Y maximal in X",
                     texts=_one(_sf("sl(3) * sl(3)", "sl(3)[id -> 1] * so(3)[std -> 2]", "phi(1)@1 (x) phi(1)@2")),
                     matcher=match_a5),
        DiagramEntry("A6", "A", "Sp(2n) x SL2 in SO(4n) on the vector module", nu_rule="degrees", degrees=(2,),
                     param_names=("n",), minimal=(2,), second=(3,),
                     texts=lambda n: [_sf(f"so({4 * n})", f"sp({2 * n})[tensor -> 1] * sl(2)[tensor -> 1]",
                                          "phi(1)@1")],
                     params_up_to=lambda b: _range(2, b // 4)),
        DiagramEntry("A7", "A", "G2 x SL2 in SO7 x SL2", nu_rule="degrees", degrees=(4,),
                     texts=_one(_sf("so(7) * sl(2)", "g2[phi1 -> 1] * sl(2)[id -> 2]", "phi(1)@1 (x) phi(1)@2"))),
        DiagramEntry("A8", "A", "Spin7 x SL2 in SO8 x SL2", nu_rule="degrees", degrees=(4,),
                     texts=_one(_sf("so(8) * sl(2)", "so(7)[spin -> 1] * sl(2)[id -> 2]", "phi(1)@1 (x) phi(1)@2"))),
        DiagramEntry("A9", "A", "Spin7 x SO3 in SO8 x SO3", nu_rule="degrees", degrees=(2, 4, 6),
                     texts=_one(_sf("so(8) * so(3)", "so(7)[spin -> 1] * so(3)[id -> 2]", "phi(1)@1 (x) phi(1)@2"))),
        DiagramEntry("A10", "A", "Spin7 x SL3 in SO8 x SL3", nu_rule="degrees", degrees=(6,),
                     texts=_one(_sf("so(8) * sl(3)", "so(7)[spin -> 1] * sl(3)[id -> 2]", "phi(1)@1 (x) phi(1)@2"))),
    ]
    return E


ENTRIES: tuple[DiagramEntry, ...] = tuple(_entries())
BY_ID = {e.id: e for e in ENTRIES}
assert len(BY_ID) == len(ENTRIES)


def entry(id_: str) -> DiagramEntry:
    try:
        return BY_ID[id_.upper()]
    except KeyError:
        raise KeyError(f"no diagram {id_!r}") from None


def family(name: str) -> list[DiagramEntry]:
    return [e for e in ENTRIES if e.family == name]


# ----------------------------------------------------------------------
# matching


@lru_cache(maxsize=None)
def _instance_keys(id_: str, params: tuple) -> tuple:
    e = BY_ID[id_]
    out = []
    for text in e.texts(*params):
        try:
            t = parse_triple(text)
        except (ModelError, ValueError):
            continue
        out.append((t.G.dim, t.dim_V, canonical_key(t)))
    return tuple(out)


def _bound(t: TripleSpec) -> int:
    return max((f.n for f in t.G.factors), default=0)


def match_entry(e: DiagramEntry, t: TripleSpec) -> dict | None:
    """Parameters for which ``t`` has the shape of ``e`` (``None`` if it does not)."""
    if e.matcher is not None:
        return e.matcher(t)
    if e.texts is None:
        return None
    space = e.params_up_to(_bound(t)) if e.params_up_to else [()]
    key = None
    for params in space:
        for gdim, vdim, k in _instance_keys(e.id, tuple(params)):
            if gdim != t.G.dim or vdim != t.dim_V:
                continue
            if key is None:
                key = canonical_key(t)
            if k == key:
                return dict(zip(e.param_names, params))
    return None


def match_family(t: TripleSpec, families: str) -> tuple[DiagramEntry, dict] | None:
    for e in ENTRIES:
        if e.family in families:
            p = match_entry(e, t)
            if p is not None:
                return e, p
    return None


def corpus_instances(second: bool = False) -> list[tuple[DiagramEntry, tuple, TripleSpec]]:
    """Every entry at its minimal parameters (and second-smallest ones if asked)."""
    out = []
    for e in ENTRIES:
        out.append((e, e.minimal, e.instance(*e.minimal)))
        if second and e.second is not None:
            out.append((e, e.second, e.instance(*e.second)))
    return out


def export_tables() -> dict:
    return {"schema": SCHEMA, "entries": [e.as_dict() for e in ENTRIES]}
