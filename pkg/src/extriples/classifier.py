"""Decide whether a triple is exceptional and compute nu.

The decision follows the structure of the triple: tori are split off first,
then the triple is cut into indecomposable components, and each component is
routed by how H sits in G (diagonal, straight, or identity) and by whether
the module is orthogonal.  Table lookups decide the answer; the orbit oracle
supplies nu where the tables leave it open and cross-checks on request.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import diagrams
from .castling import castle_reduce
from .diagrams import DiagramEntry, h_stk_shape, match_entry, o_count
from .groups import (GroupSpec, ModelError, ModuleSpec, ModuleSummand, TripleSpec, decompose_components,
                     h_structure, identity_triple, is_locally_trivial, is_orthogonal_module, is_strongly_faithful,
                     is_trivial_triple)
from .linalg import rank
from .oracle import (DEFAULT_SAMPLES, OracleError, OracleVerdict, generic_orbit_dim, is_exceptional_oracle,
                     rep_build, torus_triviality_check)
from .realize import RealizationError

ROUTES = ("trivial", "components", "locally_trivial", "strongly_faithful", "mixed_O", "irreducible", "reductive_reduc", "oracle_only")
MAXIMALITY_NOTE = "H is assumed maximal in G; a non-maximal H can be replaced by a maximal subgroup containing it"


@dataclass
class Verdict:
    exceptional: str  # yes | no | unknown
    route: str
    nu: int | None = None
    matched: dict | None = None
    oracle: OracleVerdict | None = None
    warnings: list[str] = field(default_factory=list)
    components: list["Verdict"] = field(default_factory=list)

    def as_dict(self) -> dict:
        d = {
            "verdict": self.exceptional,
            "nu": self.nu,
            "matched": self.matched,
            "route": self.route,
            "oracle": self.oracle.as_dict() if self.oracle else None,
            "warnings": list(self.warnings),
        }
        if self.components:
            d["components"] = [c.as_dict() for c in self.components]
        return d


@dataclass(frozen=True)
class Options:
    verify: bool = False
    seed: int = 0
    samples: int = DEFAULT_SAMPLES
    dim_cap: int | None = None


_ORACLE_FAILURES = (OracleError, RealizationError, ModelError)


def _codim(g: GroupSpec, v: ModuleSpec, opt: Options) -> int:
    r = rep_build(g, v, opt.dim_cap)
    return r.dim - generic_orbit_dim(r, opt.seed, opt.samples)


def _oracle(t: TripleSpec, opt: Options) -> OracleVerdict:
    return is_exceptional_oracle(t, opt.seed, opt.samples, opt.dim_cap)


def _matched(e: DiagramEntry, params: dict) -> dict:
    out = {"id": e.id, "params": params}
    if e.degrees is not None:
        out["degrees"] = params.get("degrees", list(e.degrees))
    return out


# ----------------------------------------------------------------------
# nu


def nu_of(e: DiagramEntry, params: dict, t: TripleSpec, opt: Options = Options()) -> int:
    """Table nu, or the oracle's value for the parts the table leaves open."""
    if e.nu_rule == "table" and e.nu is not None:
        return e.nu
    if e.nu_rule == "degrees":
        if e.id == "A5":
            return 1
        return len(e.degrees)
    if e.nu_rule == "t8":
        rest = [i - 1 for i in params["check"]]
        so3 = params["so3"] - 1
        g = GroupSpec(tuple(t.G.factors[i] for i in rest))
        terms = []
        for s, mult in t.V.terms:
            if not set(s.support) <= set(rest) | {so3} or not s.support:
                continue
            if not any(s.acts(i) for i in rest):
                continue
            copies = mult
            if s.acts(so3):
                copies *= 3
            terms.append((ModuleSummand(tuple(s.slots[i] for i in rest)), copies))
        if not terms:
            return 4
        return 4 + _codim(g, ModuleSpec(tuple(terms)), opt)
    return _oracle(t, opt).codim


# ----------------------------------------------------------------------
# routes


def _decided(route: str, e: DiagramEntry, params: dict, t: TripleSpec, opt: Options) -> Verdict:
    v = Verdict("yes", route, matched=_matched(e, params))
    try:
        v.nu = nu_of(e, params, t, opt)
    except _ORACLE_FAILURES as exc:
        v.exceptional = "unknown"
        v.warnings.append(f"{e.id} matched but nu needs the oracle, which failed: {exc}")
    return v


def _first_match(t: TripleSpec, ids: list[str]):
    for id_ in ids:
        e = diagrams.entry(id_)
        p = match_entry(e, t)
        if p is not None:
            return e, p
    return None


_T_IDS = [f"T{i}" for i in range(1, 10)]
_F_IDS = [f"F{i}" for i in range(1, 11)]
_IRR_IDS = [f"L{i}" for i in range(1, 8)] + [f"A{i}" for i in range(1, 11)]


def _has_triality_presentation(t: TripleSpec) -> bool:
    """so(8) hit by a straight so(7) while the module uses a half-spin slot there."""
    for hf, m in zip(t.H.factors, t.embedding.maps):
        if m.mode != "straight" or hf.kind != "so" or hf.n != 7:
            continue
        g = t.G.factors[m.targets[0]]
        if (g.kind, g.n) != ("so", 8):
            continue
        if any(s.slots[m.targets[0]] in ((0, 0, 1, 0), (0, 0, 0, 1)) for s in t.V.summands):
            return True
    return False


def _classify_component(t: TripleSpec, opt: Options) -> Verdict:
    if is_trivial_triple(t):
        v = Verdict("yes", "trivial")
        try:
            v.nu = _codim(t.G, t.V, opt)
        except _ORACLE_FAILURES as exc:
            v.exceptional = "unknown"
            v.warnings.append(f"trivial triple; nu needs the oracle, which failed: {exc}")
        v.warnings.append("H and G have the same image: the triple is trivially exceptional")
        return v

    orthogonal = is_orthogonal_module(t.G, t.V)
    irreducible = len(t.V.terms) == 1 and t.V.terms[0][1] == 1
    kind, _ = h_structure(t)
    warnings: list[str] = []

    if not orthogonal and irreducible:
        return _irreducible_route(t, opt)
    if not orthogonal:
        if kind != "diagonal":
            return Verdict("unknown", "oracle_only",
                           warnings=["reducible module without an invariant symmetric form is outside the tables"])
        warnings.append("module is not orthogonal; the locally trivial tables are applied anyway")

    if kind == "diagonal":
        if not is_locally_trivial(t):
            v = Verdict("no", "locally_trivial", warnings=warnings)
            v.warnings.append("diagonal H with a summand on which H is not trivial")
            return v
        m = _first_match(t, _T_IDS)
        if m:
            v = _decided("locally_trivial", m[0], m[1], t, opt)
            v.warnings[:0] = warnings
            return v
        return Verdict("no", "locally_trivial", warnings=warnings + [MAXIMALITY_NOTE])

    if kind == "straight":
        if _has_triality_presentation(t):
            return Verdict("unknown", "oracle_only", warnings=[
                "so(7) in so(8) with half-spin slots: triality-equivalent presentations are not matched"])
        if is_strongly_faithful(t):
            m = _first_match(t, _F_IDS)
            if m:
                return _decided("strongly_faithful", m[0], m[1], t, opt)
            if irreducible:
                m = _first_match(t, _IRR_IDS)
                if m:
                    return _decided("irreducible", m[0], m[1], t, opt)
            return Verdict("no", "strongly_faithful", warnings=[MAXIMALITY_NOTE])
        r = o_count(t)
        if r is not None:
            if 1 <= r["t"] <= 3:
                return _decided("mixed_O", diagrams.entry("O"), {"t": r["t"]}, t, opt)
            return Verdict("no", "mixed_O", warnings=[f"so(8) module has t = {r['t']} vector copies; needs t <= 3"])
        return Verdict("no", "mixed_O", warnings=[MAXIMALITY_NOTE])

    return Verdict("unknown", "oracle_only", warnings=["H meets several factors of G in different ways"])


def _irreducible_route(t: TripleSpec, opt: Options) -> Verdict:
    reduced = castle_reduce(t)
    m = _first_match(reduced, _IRR_IDS)
    if m:
        v = _decided("irreducible", m[0], m[1], reduced, opt)
        if reduced != t:
            v.warnings.append("matched after castling")
        v.warnings.append("module is not orthogonal: equal orbit dimensions mean exceptional in the rational sense")
        return v
    if h_stk_shape(reduced):
        return Verdict("unknown", "irreducible",
                       warnings=["SL(s) x SL(t) x X family: exceptionality depends on s, t and X"])
    return Verdict("no", "irreducible", warnings=[MAXIMALITY_NOTE])


def _combine(parts: list[Verdict]) -> Verdict:
    states = {p.exceptional for p in parts}
    if "no" in states:
        ex = "no"
    elif states == {"yes"}:
        ex = "yes"
    else:
        ex = "unknown"
    routes = {p.route for p in parts}
    v = Verdict(ex, routes.pop() if len(routes) == 1 else "components", components=parts)
    if ex == "yes":
        v.nu = sum(p.nu for p in parts)
    return v


def _classify_semisimple(t: TripleSpec, opt: Options) -> Verdict:
    comps = decompose_components(t)
    if not comps:
        raise ModelError("module is empty")
    if len(comps) == 1:
        return _classify_component(comps[0], opt)
    return _combine([_classify_component(c, opt) for c in comps])


# ----------------------------------------------------------------------
# tori


def _complement_torus(t: TripleSpec) -> list[list[int]]:
    """Unit vectors of Z(G) completing the image of Z(H) to a full-rank lattice."""
    r = t.G.torus_rank
    image = [list(col) for col in zip(*t.embedding.torus_map)] if t.H.torus_rank else []
    image = [c for c in image if any(c)]
    out = []
    for j in range(r):
        e = [int(i == j) for i in range(r)]
        if rank(image + out + [e]) > rank(image + out):
            out.append(e)
    return out


def _derived(t: TripleSpec) -> TripleSpec:
    g = GroupSpec(t.G.factors)
    terms = [(ModuleSummand(s.slots), m) for s, m in t.V.terms]
    return TripleSpec(GroupSpec(t.H.factors), g, type(t.embedding)(t.embedding.maps), ModuleSpec(tuple(terms)).merged(),
                      name=t.name)


def reduc_combinator(t: TripleSpec, opt: Options = Options()) -> Verdict:
    """Split off tori: exceptional iff the derived triple is and the complement torus acts trivially on invariants."""
    if not t.G.torus_rank and not t.H.torus_rank:
        return _classify_semisimple(t, opt)
    derived = _derived(t)
    inner = _classify_semisimple(derived, opt)
    comp = _complement_torus(t)
    v = Verdict(inner.exceptional, "reductive_reduc", matched=inner.matched, components=[inner])
    v.warnings = list(inner.warnings)
    if not comp:
        v.nu = inner.nu
        return v
    try:
        trivial = torus_triviality_check(t.G, t.V, comp, opt.seed, opt.samples, opt.dim_cap)
    except _ORACLE_FAILURES as exc:
        v.exceptional = "unknown"
        v.matched = None
        v.warnings.append(f"torus check needs the oracle, which failed: {exc}")
        return v
    if not trivial:
        v.exceptional = "no"
        v.matched = None
        v.warnings.append("the complement torus moves the invariants of the derived group")
        return v
    v.nu = inner.nu
    return v


# ----------------------------------------------------------------------
# entry point


def classify(t: TripleSpec, verify: bool = False, seed: int = 0, samples: int = DEFAULT_SAMPLES,
             dim_cap: int | None = None) -> Verdict:
    opt = Options(verify, seed, samples, dim_cap)
    if t.G.torus_rank or t.H.torus_rank:
        v = reduc_combinator(t, opt)
    else:
        v = _classify_semisimple(t, opt)
    if verify or v.exceptional == "unknown":
        _attach_oracle(t, v, opt, fallback=verify)
    return v


def _attach_oracle(t: TripleSpec, v: Verdict, opt: Options, fallback: bool) -> None:
    try:
        o = _oracle(t, opt)
    except _ORACLE_FAILURES as exc:
        v.warnings.append(f"oracle not run: {exc}")
        return
    v.oracle = o
    oracle_says = "yes" if o.exceptional else "no"
    if v.exceptional == "unknown":
        if fallback:
            v.exceptional = oracle_says
            v.route = "oracle_only"
            v.matched = None if oracle_says == "no" else v.matched
            v.nu = o.codim if o.exceptional else None
            v.warnings.append("decided by the orbit oracle")
        return
    if v.exceptional != oracle_says:
        v.warnings.append(f"oracle disagrees: orbit dimensions G {o.g_orbit_dim}, H {o.h_orbit_dim}")
    elif v.exceptional == "yes" and v.nu is not None and v.nu != o.codim:
        v.warnings.append(f"oracle disagrees on nu: {o.codim}")


def classify_trivial(g: GroupSpec, v: ModuleSpec, **kw) -> Verdict:
    return classify(identity_triple(g, v), **kw)
