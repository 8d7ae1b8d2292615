"""Orbit dimensions and stabilizers from explicit matrices.

A triple is exceptional exactly when a generic H-orbit has the same dimension
as a generic G-orbit.  Both dimensions are ranks of the matrices whose rows
are ``X_k . v`` for a basis ``X_k`` of the Lie algebra image, evaluated at the
same random integer points.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .groups import FactorMap, GroupSpec, ModuleSpec, TripleSpec, module_dim
from .linalg import Coordinates, SMat, echelon, left_kernel_of_columns, rank
from .realize import RealizationError, factor_basis, invariant_forms, irrep_realizer, make_embedding

DEFAULT_DIM_CAP = 256
DEFAULT_SAMPLES = 3


def default_dim_cap() -> int:
    try:
        return int(os.environ.get("EXTRIPLES_DIM_CAP", DEFAULT_DIM_CAP))
    except ValueError:
        return DEFAULT_DIM_CAP


class OracleError(ValueError):
    pass


@dataclass
class MatrixRep:
    dim: int
    generators: list[SMat]
    factor_spans: dict = field(default_factory=dict)

    @property
    def algebra_dim(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class OracleVerdict:
    g_orbit_dim: int
    h_orbit_dim: int
    dim_V: int
    seed: int
    samples: int

    @property
    def codim(self) -> int:
        return self.dim_V - self.g_orbit_dim

    @property
    def exceptional(self) -> bool:
        return self.h_orbit_dim == self.g_orbit_dim

    def as_dict(self) -> dict:
        return {"g_orbit_dim": self.g_orbit_dim, "h_orbit_dim": self.h_orbit_dim,
                "codim": self.codim, "seed": self.seed, "samples": self.samples}


# ----------------------------------------------------------------------
# module actions

Element = tuple[Mapping[int, SMat], Sequence[int]]


class ModuleAction:
    """Turns Lie algebra elements of G (defining matrices plus torus vector) into matrices on V."""

    def __init__(self, g: GroupSpec, v: ModuleSpec, dim_cap: int | None = None):
        self.g = g
        self.v = v
        cap = default_dim_cap() if dim_cap is None else dim_cap
        self.dim = module_dim(g, v)
        if self.dim > cap:
            raise OracleError(f"module dimension {self.dim} exceeds the cap {cap}")
        self.blocks = []
        offset = 0
        for s, mult in v.terms:
            slots = []
            for i in s.support:
                slots.append((i, irrep_realizer(g.factors[i], s.slots[i])))
            charges = s.charges or (0,) * g.torus_rank
            size = 1
            for _, r in slots:
                size *= r.dim
            for _ in range(mult):
                self.blocks.append((offset, size, slots, charges))
                offset += size

    def __call__(self, elem: Mapping[int, SMat], torus: Sequence[int] = ()) -> SMat:
        out: dict = {}
        for offset, size, slots, charges in self.blocks:
            dims = [r.dim for _, r in slots]
            imgs = [r(elem[i]) if i in elem else None for i, r in slots]
            strides = [1] * len(dims)
            for k in range(len(dims) - 2, -1, -1):
                strides[k] = strides[k + 1] * dims[k + 1]
            for k, m in enumerate(imgs):
                if m is None:
                    continue
                d, st = dims[k], strides[k]
                outer = size // (d * st)
                for (a, b), val in m.data.items():
                    for hi in range(outer):
                        base = offset + hi * d * st
                        for lo in range(st):
                            key = (base + a * st + lo, base + b * st + lo)
                            out[key] = out.get(key, 0) + val
            c = sum(x * y for x, y in zip(charges, torus)) if torus else 0
            if c:
                for q in range(size):
                    key = (offset + q, offset + q)
                    out[key] = out.get(key, 0) + c
        return SMat(self.dim, self.dim, out)


def _unit(n: int, j: int) -> list[int]:
    return [int(k == j) for k in range(n)]


def g_elements(g: GroupSpec) -> tuple[list[Element], dict]:
    elems: list[Element] = []
    spans: dict = {}
    for i, f in enumerate(g.factors):
        start = len(elems)
        for x in factor_basis(f):
            elems.append(({i: x}, ()))
        spans[("factor", i)] = list(range(start, len(elems)))
    for j in range(g.torus_rank):
        spans[("torus", j)] = [len(elems)]
        elems.append(({}, _unit(g.torus_rank, j)))
    return elems, spans


def h_elements(t: TripleSpec) -> tuple[list[Element], dict]:
    """H's Lie algebra basis written as elements of G."""
    elems: list[Element] = []
    spans: dict = {}
    maps = t.embedding.maps
    for k, (hf, m) in enumerate(zip(t.H.factors, maps)):
        start = len(elems)
        emb = _embedding_for(t, k, m)
        for x in factor_basis(hf):
            if m.mode == "diagonal":
                elems.append(({m.targets[0]: x, m.targets[1]: x}, ()))
            else:
                elems.append(({m.targets[0]: emb(x)}, ()))
        spans[("factor", k)] = list(range(start, len(elems)))
    for j in range(t.H.torus_rank):
        vec = [t.embedding.torus_map[i][j] for i in range(t.G.torus_rank)]
        spans[("torus", j)] = [len(elems)]
        elems.append(({}, vec))
    return elems, spans


def _embedding_for(t: TripleSpec, k: int, m: FactorMap):
    if m.mode == "diagonal":
        return None
    target = m.targets[0]
    parts: tuple = ()
    if m.label == "tensor":
        sharing = sorted((t.embedding.maps[q].part, q) for q, mm in enumerate(t.embedding.maps)
                         if mm.mode == "straight" and mm.targets[0] == target)
        parts = tuple(t.H.factors[q] for _, q in sharing)
    return make_embedding(t.H.factors[k], t.G.factors[target], m.label, parts, m.part)


def rep_build(g: GroupSpec, v: ModuleSpec, dim_cap: int | None = None) -> MatrixRep:
    act = ModuleAction(g, v, dim_cap)
    elems, spans = g_elements(g)
    return MatrixRep(act.dim, [act(e, tv) for e, tv in elems], spans)


def embed_h(t: TripleSpec, dim_cap: int | None = None, action: ModuleAction | None = None) -> MatrixRep:
    act = action or ModuleAction(t.G, t.V, dim_cap)
    elems, spans = h_elements(t)
    return MatrixRep(act.dim, [act(e, tv) for e, tv in elems], spans)


def build_pair(t: TripleSpec, dim_cap: int | None = None) -> tuple[MatrixRep, MatrixRep]:
    act = ModuleAction(t.G, t.V, dim_cap)
    ge, gs = g_elements(t.G)
    g_rep = MatrixRep(act.dim, [act(e, tv) for e, tv in ge], gs)
    return g_rep, embed_h(t, action=act)


# ----------------------------------------------------------------------
# orbit computations


def sample_points(dim: int, seed: int, samples: int = DEFAULT_SAMPLES) -> list[list[int]]:
    rng = random.Random(seed)
    return [[rng.randint(-9, 9) for _ in range(dim)] for _ in range(samples)]


def tangent_rows(r: MatrixRep, v: Sequence) -> list[list]:
    if len(v) != r.dim:
        raise OracleError(f"vector has length {len(v)}, expected {r.dim}")
    return [x.apply(v) for x in r.generators]


def orbit_dim(r: MatrixRep, v: Sequence) -> int:
    if not r.generators:
        return 0
    return rank(tangent_rows(r, v))


def generic_orbit_dim(r: MatrixRep, seed: int = 0, samples: int = DEFAULT_SAMPLES) -> int:
    if samples < 1:
        raise OracleError("need at least one sample")
    return max(orbit_dim(r, v) for v in sample_points(r.dim, seed, samples))


def stabilizer_coefficients(r: MatrixRep, v: Sequence) -> list[list[int]]:
    """Coefficient vectors (over the generators) spanning the stabilizer of ``v``."""
    rows = tangent_rows(r, v)
    if not rows:
        return []
    return left_kernel_of_columns(rows)


def stabilizer_basis(r: MatrixRep, v: Sequence) -> list[SMat]:
    out = []
    for c in stabilizer_coefficients(r, v):
        m = SMat(r.dim)
        for coef, x in zip(c, r.generators):
            if coef:
                m = m + x.scale(coef)
        out.append(m)
    return out


def projection_dim(stab: Sequence[Sequence], coords: Sequence[int]) -> int:
    """Dimension of the coordinate projection of a span of coefficient vectors."""
    rows = [[vec[i] for i in coords] for vec in stab]
    rows = [r for r in rows if any(r)]
    return rank(rows) if rows else 0


def generic_stabilizer_dim(r: MatrixRep, seed: int = 0, samples: int = DEFAULT_SAMPLES) -> int:
    return r.algebra_dim - generic_orbit_dim(r, seed, samples)


def generic_point(r: MatrixRep, seed: int = 0, samples: int = DEFAULT_SAMPLES) -> list[int]:
    """The sample point of largest orbit dimension (first one on ties)."""
    best, best_dim = None, -1
    for v in sample_points(r.dim, seed, samples):
        d = orbit_dim(r, v)
        if d > best_dim:
            best, best_dim = v, d
    return best


def is_exceptional_oracle(t: TripleSpec, seed: int = 0, samples: int = DEFAULT_SAMPLES,
                          dim_cap: int | None = None) -> OracleVerdict:
    g_rep, h_rep = build_pair(t, dim_cap)
    g_dim = h_dim = 0
    for v in sample_points(g_rep.dim, seed, samples):
        g_dim = max(g_dim, orbit_dim(g_rep, v))
        h_dim = max(h_dim, orbit_dim(h_rep, v))
    if h_dim > g_dim:
        raise OracleError("H-orbit larger than G-orbit: embedding is inconsistent")
    return OracleVerdict(g_dim, h_dim, g_rep.dim, seed, samples)


def torus_triviality_check(g: GroupSpec, v: ModuleSpec, torus: Sequence[Sequence[int]] | None = None,
                           seed: int = 0, samples: int = DEFAULT_SAMPLES, dim_cap: int | None = None) -> bool:
    """Does adding the torus (given as G-torus vectors) keep the generic orbit dimension of G'?"""
    if g.torus_rank == 0:
        return True
    act = ModuleAction(g, v, dim_cap)
    semisimple = [act(e, tv) for e, tv in g_elements(GroupSpec(g.factors, 0))[0]]
    vecs = torus if torus is not None else [_unit(g.torus_rank, j) for j in range(g.torus_rank)]
    tor = [act({}, vec) for vec in vecs]
    base = MatrixRep(act.dim, semisimple)
    full = MatrixRep(act.dim, semisimple + tor)
    for p in sample_points(act.dim, seed, samples):
        if orbit_dim(base, p) != orbit_dim(full, p):
            return False
    return True


# ----------------------------------------------------------------------
# self-checks on builds


def bracket_closed(r: MatrixRep) -> bool:
    gens = r.generators
    if not gens:
        return True
    flat = [g.flat() for g in gens]
    _, piv = echelon(flat)
    if len(piv) != len(gens):
        return False
    coords = Coordinates(flat)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            b = gens[i].bracket(gens[j])
            if b.is_zero():
                continue
            try:
                coords(b.flat())
            except ValueError:
                return False
    return True


def preserves_form(r: MatrixRep, form: SMat) -> bool:
    return all((x.T @ form + form @ x).is_zero() for x in r.generators)


def symmetric_invariant_forms(r: MatrixRep) -> list[SMat]:
    return invariant_forms(r.generators, r.dim, symmetric=True)


__all__ = [
    "MatrixRep", "OracleVerdict", "OracleError", "ModuleAction", "rep_build", "embed_h", "build_pair",
    "orbit_dim", "generic_orbit_dim", "stabilizer_basis", "stabilizer_coefficients", "projection_dim",
    "generic_stabilizer_dim", "is_exceptional_oracle", "torus_triviality_check", "bracket_closed",
    "preserves_form", "sample_points", "generic_point", "RealizationError",
]
