"""Castling transforms and congruence of linear groups and triples.

A factor ``SL(W)`` acting by its defining module on exactly one summand
``U (x) W`` can be traded for ``SL(W')`` on ``U* (x) W'`` with
``dim W' = dim U - dim W``.  Generic stabilizers do not change.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .groups import (EmbeddingSpec, Factor, FactorMap, GroupSpec, ModelError, ModuleSpec, ModuleSummand,
                     TripleSpec, dual_summand, summand_dim)
from .lie import dual_weight


class CastlingError(ValueError):
    pass


@dataclass(frozen=True)
class CastlingMove:
    """Castle ``SL(W)`` (G factor ``factor``) on summand ``summand``.

    ``factor=None`` castles a summand against a virtual one-dimensional ``W``;
    the new ``SL(W')`` factor is appended.
    """

    summand: int
    factor: int | None
    dim_u: int
    dim_w: int

    @property
    def dim_w_check(self) -> int:
        return self.dim_u - self.dim_w


def _split(x) -> tuple[GroupSpec, ModuleSpec, TripleSpec | None]:
    if isinstance(x, TripleSpec):
        return x.G, x.V, x
    g, v = x
    return g, v, None


def _is_defining_slot(f: Factor, w) -> bool:
    if f.kind != "sl" or w is None:
        return False
    return w == f.defining_weight or w == dual_weight(f.irrep(f.defining_weight)).weight


def move_for(x, summand: int, factor: int | None) -> CastlingMove:
    g, v, t = _split(x)
    if not 0 <= summand < len(v.terms):
        raise CastlingError(f"no summand {summand}")
    s, mult = v.terms[summand]
    if mult != 1:
        raise CastlingError("castling needs a summand of multiplicity one")
    total = summand_dim(g, s)
    if factor is None:
        dim_w = 1
    else:
        if not 0 <= factor < len(g.factors):
            raise CastlingError(f"no factor {factor}")
        f = g.factors[factor]
        if not _is_defining_slot(f, s.slots[factor]):
            raise CastlingError(f"{f} does not act on summand {summand} by its defining module")
        for k, (other, _) in enumerate(v.terms):
            if k != summand and other.acts(factor):
                raise CastlingError(f"{f} acts on several summands")
        dim_w = f.n
        if t is not None:
            hs = [m for m in t.embedding.maps if factor in m.targets]
            if len(hs) != 1 or hs[0].mode != "straight" or hs[0].label != "id":
                raise CastlingError("the castled factor must belong to both H and G")
    dim_u = total // dim_w
    if dim_w > dim_u:
        raise CastlingError(f"dim W = {dim_w} exceeds dim U = {dim_u}")
    return CastlingMove(summand, factor, dim_u, dim_w)


def candidate_moves(x) -> list[CastlingMove]:
    g, v, _ = _split(x)
    out = []
    for k in range(len(v.terms)):
        for i in range(len(g.factors)):
            try:
                out.append(move_for(x, k, i))
            except CastlingError:
                pass
    return out


def apply_castle(x, m: CastlingMove):
    """Apply a move to ``(G, V)`` or simultaneously to H and G of a triple."""
    g, v, t = _split(x)
    check = move_for(x, m.summand, m.factor)
    if check != m:
        raise CastlingError("move does not match the input")
    new_dim = m.dim_w_check
    s, _ = v.terms[m.summand]
    factors = list(g.factors)
    if m.factor is None:
        if new_dim < 2:
            raise CastlingError("castling against a trivial W must create SL(W') with dim W' >= 2")
        factors.append(Factor("sl", new_dim))
        dual = dual_summand(g, s)
        new_s = ModuleSummand(dual.slots + (factors[-1].defining_weight,), dual.charges)
        others = [ModuleSummand(o.slots + (None,), o.charges) for o, _ in v.terms]
        terms = [(new_s if k == m.summand else others[k], mult) for k, (_, mult) in enumerate(v.terms)]
        new_g = GroupSpec(tuple(factors), g.torus_rank)
        new_v = ModuleSpec(tuple(terms))
        if t is None:
            return new_g, new_v
        maps = t.embedding.maps + (FactorMap.straight(len(factors) - 1),)
        new_h = GroupSpec(t.H.factors + (factors[-1],), t.H.torus_rank)
        return TripleSpec(new_h, new_g, EmbeddingSpec(maps, t.embedding.torus_map), new_v, name=t.name)

    i = m.factor
    keep = new_dim >= 2
    dual = dual_summand(g, s)
    if keep:
        factors[i] = Factor("sl", new_dim)
        slots = list(dual.slots)
        slots[i] = factors[i].defining_weight
        new_s = ModuleSummand(tuple(slots), dual.charges)
        terms = [((new_s if k == m.summand else o), mult) for k, (o, mult) in enumerate(v.terms)]
    else:
        del factors[i]
        terms = []
        for k, (o, mult) in enumerate(v.terms):
            if k == m.summand:
                if new_dim == 0:
                    continue
                slots = list(dual.slots)
                del slots[i]
                terms.append((ModuleSummand(tuple(slots), dual.charges), mult))
            else:
                slots = list(o.slots)
                del slots[i]
                terms.append((ModuleSummand(tuple(slots), o.charges), mult))
    new_g = GroupSpec(tuple(factors), g.torus_rank)
    if not terms:
        raise CastlingError("castling removed the whole module")
    new_v = ModuleSpec(tuple(terms))
    if t is None:
        return new_g, new_v
    hmaps = list(t.embedding.maps)
    hfac = list(t.H.factors)
    k = next(q for q, mm in enumerate(hmaps) if i in mm.targets)
    if keep:
        hfac[k] = factors[i]
    else:
        del hfac[k]
        del hmaps[k]

        def shift(tg):
            return tg - 1 if tg > i else tg

        hmaps = [FactorMap(mm.mode, tuple(shift(x) for x in mm.targets), mm.label, mm.part) for mm in hmaps]
    return TripleSpec(GroupSpec(tuple(hfac), t.H.torus_rank), new_g,
                      EmbeddingSpec(tuple(hmaps), t.embedding.torus_map), new_v, name=t.name)


def inverse_move(before, m: CastlingMove, after) -> CastlingMove:
    """The move that undoes ``m`` on its result ``after``."""
    g_after, v_after, _ = _split(after)
    if m.dim_w_check >= 2:
        return move_for(after, m.summand, m.factor if m.factor is not None else len(g_after.factors) - 1)
    if m.dim_w_check == 1:
        return move_for(after, m.summand, None)
    raise CastlingError("a move that drops the summand cannot be undone")


def module_total_dim(x) -> int:
    g, v, _ = _split(x)
    return sum(summand_dim(g, s) * mult for s, mult in v.terms)


def castle_reduce(x, max_steps: int = 1000):
    """Apply dimension-decreasing moves greedily, then normalize."""
    cur = x
    for _ in range(max_steps):
        moves = [mv for mv in candidate_moves(cur) if mv.dim_w_check < mv.dim_w and mv.dim_w_check >= 1]
        if not moves:
            break
        cur = apply_castle(cur, moves[0])
    return normalize(cur)


# ----------------------------------------------------------------------
# canonical forms


def _slot_key(w):
    return () if w is None else (1,) + tuple(w)


def _twist(f: Factor, w):
    if w is None:
        return None
    return dual_weight(f.irrep(w)).weight


def _fkey(f: Factor) -> tuple[str, int]:
    # sp(2) and sl(2) are the same group with the same weights
    return ("sl", 2) if (f.kind, f.n) == ("sp", 2) else (f.kind, f.n)


def _shape_key(g: GroupSpec, v: ModuleSpec, perm, twists):
    factors = tuple(_fkey(g.factors[p]) for p in perm)
    terms = []
    for s, mult in v.terms:
        slots = []
        for p in perm:
            w = s.slots[p]
            if p in twists:
                w = _twist(g.factors[p], w)
            slots.append(_slot_key(w))
        terms.append((tuple(slots), tuple(s.charges), mult))
    merged: dict = {}
    for sl, ch, mult in terms:
        merged[(sl, ch)] = merged.get((sl, ch), 0) + mult
    return factors, g.torus_rank, tuple(sorted((k[0], k[1], m) for k, m in merged.items()))


def _perms_within_classes(g: GroupSpec):
    order = sorted(range(len(g.factors)), key=lambda i: _fkey(g.factors[i]))
    classes: list[list[int]] = []
    for i in order:
        if classes and _fkey(g.factors[classes[-1][0]]) == _fkey(g.factors[i]):
            classes[-1].append(i)
        else:
            classes.append([i])
    for combo in itertools.product(*(itertools.permutations(c) for c in classes)):
        yield [i for c in combo for i in c]


def canonical_key(x, units: list[tuple[int, ...]] | None = None):
    """Key equal for isomorphic linear groups / triples.

    Factors are permuted within classes of equal factors, and every factor may
    be twisted by its diagram automorphism (diagonal pairs twist together).
    """
    g, v, t = _split(x)
    if units is None:
        units = [(i,) for i in range(len(g.factors))]
        if t is not None:
            units = []
            seen = set()
            for mm in t.embedding.maps:
                if mm.mode == "diagonal":
                    units.append(mm.targets)
                    seen.update(mm.targets)
            units += [(i,) for i in range(len(g.factors)) if i not in seen]
    units = [u for u in units if any(_twist(g.factors[i], s.slots[i]) != s.slots[i]
                                     for i in u for s in v.summands)]
    best = None
    for perm in _perms_within_classes(g):
        pos = {p: k for k, p in enumerate(perm)}
        for bits in itertools.product((False, True), repeat=len(units)):
            twists = {i for u, b in zip(units, bits) if b for i in u}
            key = _shape_key(g, v, perm, twists)
            if t is not None:
                hk = []
                for hf, mm in zip(t.H.factors, t.embedding.maps):
                    # tensor part order does not change the image group
                    hk.append((_fkey(hf), mm.mode, tuple(sorted(pos[x] for x in mm.targets)), mm.label))
                key = key + (tuple(sorted(hk)), t.H.torus_rank, t.embedding.torus_map)
            if best is None or key < best:
                best = key
    return best


def normalize(x):
    """Reorder factors and summands into a canonical order."""
    g, v, t = _split(x)
    perm = sorted(range(len(g.factors)), key=lambda i: (g.factors[i].kind, g.factors[i].n, i))
    pos = {p: k for k, p in enumerate(perm)}
    new_g = GroupSpec(tuple(g.factors[p] for p in perm), g.torus_rank)
    terms = [(ModuleSummand(tuple(s.slots[p] for p in perm), s.charges), mult) for s, mult in v.terms]
    new_v = ModuleSpec(tuple(terms)).canonical()
    if t is None:
        return new_g, new_v
    pairs = sorted(zip(t.H.factors, t.embedding.maps),
                   key=lambda hm: (min(pos[x] for x in hm[1].targets), hm[1].part))
    maps = tuple(FactorMap(mm.mode, tuple(pos[x] for x in mm.targets), mm.label, mm.part) for _, mm in pairs)
    return TripleSpec(GroupSpec(tuple(h for h, _ in pairs), t.H.torus_rank), new_g,
                      EmbeddingSpec(maps, t.embedding.torus_map), new_v, name=t.name)


def congruent(a, b) -> bool:
    try:
        return canonical_key(castle_reduce(a)) == canonical_key(castle_reduce(b))
    except ModelError:
        return False


def isomorphic(a, b) -> bool:
    return canonical_key(a) == canonical_key(b)
