"""Weighted trees of symplectic groups and the root-projection criterion.

A tree with vertex weights ``d(i)`` in ``{1, 2, ...} + {inf}`` describes the
group ``prod Sp(2 d(i))`` over the finite vertices acting on

* ``C^{2d(i)} (x) C^{2d(j)}`` for every edge between finite vertices, and
* the traceless part of ``Lambda^2 C^{2d(i)}`` for every edge from a finite
  vertex ``i`` to an ``inf`` vertex.

The question is whether the generic stabilizer projects onto the whole
``Sp(2 d(0)) = SL(2)`` of the root.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .groups import Factor, FactorMap, GroupSpec, ModelError, ModuleSpec, ModuleSummand, TripleSpec
from .oracle import DEFAULT_SAMPLES, generic_point, projection_dim, rep_build, stabilizer_coefficients

INF = None


class TreeError(ModelError):
    pass


@dataclass(frozen=True)
class WeightedTree:
    """Vertex weights (``None`` is infinity) and undirected edges; vertex 0 is the root."""

    weights: tuple[int | None, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "edges", tuple(tuple(sorted(e)) for e in self.edges))
        validate_tree(self)

    def degree(self, i: int) -> int:
        return sum(i in e for e in self.edges)

    def neighbours(self, i: int) -> list[int]:
        return [b if a == i else a for a, b in self.edges if i in (a, b)]

    def big(self, i: int) -> bool:
        w = self.weights[i]
        return w is None or w > 1

    @property
    def finite(self) -> list[int]:
        return [i for i, w in enumerate(self.weights) if w is not None]


def validate_tree(t: WeightedTree) -> None:
    n = len(t.weights)
    if n == 0:
        raise TreeError("empty tree")
    if t.weights[0] != 1:
        raise TreeError("the root must have weight 1")
    for w in t.weights:
        if w is not None and w < 1:
            raise TreeError("finite weights must be positive")
    seen = set()
    for a, b in t.edges:
        if not (0 <= a < n and 0 <= b < n) or a == b:
            raise TreeError(f"bad edge {a}-{b}")
        if (a, b) in seen:
            raise TreeError(f"repeated edge {a}-{b}")
        seen.add((a, b))
    for i, w in enumerate(t.weights):
        if w is None:
            if t.degree(i) != 1:
                raise TreeError("infinite vertices must be leaves")
            j = t.neighbours(i)[0]
            if t.weights[j] is None or t.weights[j] < 2:
                raise TreeError("an infinite leaf must hang off a vertex of weight > 1")
    # forest check: union-find must never close a cycle
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in t.edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            raise TreeError("edges contain a cycle")
        parent[ra] = rb


def is_connected(t: WeightedTree) -> bool:
    return len(t.edges) == len(t.weights) - 1


def _sp(d: int) -> Factor:
    return Factor("sp", 2 * d)


def _wedge2_traceless(f: Factor) -> tuple[int, ...]:
    w = [0] * f.rank
    w[1] = 1
    return tuple(w)


def tree_group(t: WeightedTree) -> tuple[GroupSpec, ModuleSpec]:
    fin = t.finite
    pos = {v: k for k, v in enumerate(fin)}
    factors = tuple(_sp(t.weights[v]) for v in fin)
    terms = []
    for a, b in t.edges:
        slots: list = [None] * len(fin)
        if t.weights[a] is not None and t.weights[b] is not None:
            slots[pos[a]] = factors[pos[a]].defining_weight
            slots[pos[b]] = factors[pos[b]].defining_weight
        else:
            v = a if t.weights[a] is not None else b
            slots[pos[v]] = _wedge2_traceless(factors[pos[v]])
        terms.append((ModuleSummand(tuple(slots)), 1))
    if not terms:
        raise TreeError("a tree without edges has no module")
    return GroupSpec(factors), ModuleSpec(tuple(terms))


def yak_predicate(t: WeightedTree) -> bool:
    """Combinatorial test for the generic stabilizer to project onto the root factor.

    (I) every vertex of weight > 1 has degree <= 2;
    (II) along every edge joining two vertices of weight > 1, one end is a leaf.
    """
    for i in range(len(t.weights)):
        if t.big(i) and t.degree(i) > 2:
            return False
    for a, b in t.edges:
        if t.big(a) and t.big(b) and t.degree(a) != 1 and t.degree(b) != 1:
            return False
    return True


def sgp_projection_full(t: WeightedTree, seed: int = 0, samples: int = DEFAULT_SAMPLES,
                        dim_cap: int | None = None) -> bool:
    """Oracle version: is the projection of the generic stabilizer onto the root 3-dimensional?"""
    g, v = tree_group(t)
    r = rep_build(g, v, dim_cap)
    p = generic_point(r, seed, samples)
    stab = stabilizer_coefficients(r, p)
    return projection_dim(stab, r.factor_spans[("factor", 0)]) == 3


def enumerate_trees(max_finite: int = 4, max_weight: int = 2, allow_inf: bool = True):
    """All connected admissible trees up to isomorphism fixing the root."""
    seen = set()
    for nf in range(2, max_finite + 1):
        for weights in itertools.product(range(1, max_weight + 1), repeat=nf - 1):
            fin_w = (1,) + weights
            # Pruefer-free enumeration: every vertex > 0 picks a parent with a smaller index
            for parents in itertools.product(*(range(k) for k in range(1, nf))):
                edges = [(p, k + 1) for k, p in enumerate(parents)]
                heavy = [i for i in range(nf) if fin_w[i] > 1]
                inf_choices = [()] if not allow_inf else \
                    [c for r in range(len(heavy) + 1) for c in itertools.combinations(heavy, r)]
                for leaves in inf_choices:
                    w = list(fin_w)
                    e = list(edges)
                    for v in leaves:
                        w.append(None)
                        e.append((v, len(w) - 1))
                    tree = WeightedTree(tuple(w), tuple(e))
                    key = _tree_key(tree)
                    if key in seen:
                        continue
                    seen.add(key)
                    yield tree


def _tree_key(t: WeightedTree, root: int = 0, parent: int | None = None):
    kids = sorted(_tree_key(t, c, root) for c in t.neighbours(root) if c != parent)
    w = t.weights[root]
    return (-1 if w is None else w, tuple(kids))


# ----------------------------------------------------------------------
# diagonal SL(2) joining two trees


def tree_shape_of(g: GroupSpec, v: ModuleSpec, root: int) -> WeightedTree | None:
    """Read a G-module back as a weighted tree rooted at factor ``root`` (or ``None``)."""
    def weight(f: Factor) -> int | None:
        if (f.kind, f.n) in (("sl", 2), ("sp", 2)):
            return 1
        if f.kind == "sp":
            return f.n // 2
        return None

    ws = [weight(f) for f in g.factors]
    if any(w is None for w in ws) or ws[root] != 1:
        return None
    order = [root] + [i for i in range(len(ws)) if i != root]
    pos = {v_: k for k, v_ in enumerate(order)}
    weights = [ws[i] for i in order]
    edges = []
    for s, mult in v.terms:
        if mult != 1:
            return None
        sup = s.support
        if len(sup) == 2:
            a, b = sup
            if s.slots[a] != g.factors[a].defining_weight or s.slots[b] != g.factors[b].defining_weight:
                return None
            edges.append((pos[a], pos[b]))
        elif len(sup) == 1:
            a = sup[0]
            f = g.factors[a]
            if f.kind != "sp" or f.n < 4 or s.slots[a] != _wedge2_traceless(f):
                return None
            weights.append(None)
            edges.append((pos[a], len(weights) - 1))
        else:
            return None
    try:
        return WeightedTree(tuple(weights), tuple(edges))
    except TreeError:
        return None


def _component_of(v: ModuleSpec, n: int, start: int) -> set[int]:
    comp = {start}
    changed = True
    while changed:
        changed = False
        for s in v.summands:
            sup = set(s.support)
            if sup & comp and not sup <= comp:
                comp |= sup
                changed = True
    return comp


def _restrict_group(g: GroupSpec, v: ModuleSpec, idx: Sequence[int]) -> tuple[GroupSpec, ModuleSpec]:
    terms = [(ModuleSummand(tuple(s.slots[i] for i in idx)), m) for s, m in v.terms
             if set(s.support) <= set(idx) and s.support]
    return GroupSpec(tuple(g.factors[i] for i in idx)), ModuleSpec(tuple(terms))


def t9_parts(t: TripleSpec) -> tuple[WeightedTree, WeightedTree] | None:
    """The two rooted trees of a diagonal SL(2) triple, or ``None`` if it is not of that shape."""
    diag = [m for m in t.embedding.maps if m.mode == "diagonal"]
    if len(diag) != 1 or t.G.torus_rank or t.H.torus_rank:
        return None
    a, b = diag[0].targets
    if t.G.factors[a].rank != 1:
        return None
    for m in t.embedding.maps:
        if m.mode == "straight" and m.label != "id":
            return None
    n = len(t.G.factors)
    ca = _component_of(t.V, n, a)
    cb = _component_of(t.V, n, b)
    if ca == cb:
        return None
    covered = ca | cb
    if any(not set(s.support) <= covered for s in t.V.summands):
        return None
    trees = []
    for root, comp in ((a, ca), (b, cb)):
        idx = sorted(comp)
        g, v = _restrict_group(t.G, t.V, idx)
        tree = tree_shape_of(g, v, idx.index(root))
        if tree is None or not is_connected(tree):
            return None
        trees.append(tree)
    return trees[0], trees[1]


def t9_exceptional(t: TripleSpec) -> bool:
    """SL(2) embedded diagonally into the roots of two trees.

    Exceptional iff the roots lie in different trees and at least one of them
    satisfies the root-projection criterion.
    """
    parts = t9_parts(t)
    if parts is None:
        return False
    return yak_predicate(parts[0]) or yak_predicate(parts[1])


def join_trees(a: WeightedTree, b: WeightedTree, name: str = "") -> TripleSpec:
    """Triple with SL(2) diagonal in the roots of ``a`` and ``b`` and identity elsewhere."""
    ga, va = tree_group(a)
    gb, vb = tree_group(b)
    na = len(ga.factors)
    factors = ga.factors + gb.factors
    terms = [(ModuleSummand(s.slots + (None,) * len(gb.factors)), m) for s, m in va.terms]
    terms += [(ModuleSummand((None,) * na + s.slots), m) for s, m in vb.terms]
    maps = [FactorMap.diagonal(0, na)]
    h = [factors[0]]
    for i in range(1, len(factors)):
        if i != na:
            maps.append(FactorMap.straight(i))
            h.append(factors[i])
    return TripleSpec(GroupSpec(tuple(h)), GroupSpec(factors), _emb(maps), ModuleSpec(tuple(terms)), name=name)


def _emb(maps):
    from .groups import EmbeddingSpec
    return EmbeddingSpec(tuple(maps))
