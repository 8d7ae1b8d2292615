"""Linear groups, modules, embeddings and triples.

A group is a product of simple factors (classical matrix groups plus G2 and
the other exceptional types) and a central torus.  A module is a sum of
tensor-product summands, each carrying an irrep (or nothing) per factor and a
vector of torus charges.  An embedding ``H -> G`` maps every simple factor of
``H`` either *straight* into one factor of ``G`` (via a catalog label) or
*diagonally* into two isomorphic factors.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .lie import FormType, Irrep, LieError, SimpleType, dim_irrep, dual_weight, form_type


class ModelError(ValueError):
    pass


KINDS = ("sl", "so", "sp", "g2", "f4", "e6", "e7", "e8")


@dataclass(frozen=True, order=True)
class Factor:
    """A simple factor named the way it is written, e.g. ``so(8)`` or ``g2``."""

    kind: str
    n: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ModelError(f"unknown group kind {self.kind!r}")
        try:
            self.type
        except LieError as exc:
            raise ModelError(str(exc)) from None

    @classmethod
    def matrix_only(cls, kind: str, n: int) -> "Factor":
        """A classical matrix algebra that need not be simple, such as ``so(4)``.

        Only ``kind``, ``n`` and ``defining_dim`` are meaningful on the result.
        """
        if kind not in ("sl", "so", "sp"):
            raise ModelError(f"{kind} is not a classical matrix algebra")
        f = object.__new__(cls)
        object.__setattr__(f, "kind", kind)
        object.__setattr__(f, "n", n)
        return f

    @property
    def type(self) -> SimpleType:
        k, n = self.kind, self.n
        if k == "sl":
            if n < 2:
                raise LieError(f"sl({n}) is not simple")
            return SimpleType("A", n - 1)
        if k == "so":
            if n == 3:
                return SimpleType("A", 1)
            if n < 5:
                raise LieError(f"so({n}) is not simple")
            return SimpleType("B", n // 2) if n % 2 else SimpleType("D", n // 2)
        if k == "sp":
            if n < 2 or n % 2:
                raise LieError(f"sp({n}) needs an even size")
            return SimpleType("A", 1) if n == 2 else SimpleType("C", n // 2)
        return {"g2": SimpleType("G", 2), "f4": SimpleType("F", 4), "e6": SimpleType("E", 6),
                "e7": SimpleType("E", 7), "e8": SimpleType("E", 8)}[k]

    @property
    def rank(self) -> int:
        return self.type.rank

    @property
    def dim(self) -> int:
        return self.type.dim

    @property
    def defining_weight(self) -> tuple[int, ...]:
        if self.kind == "so" and self.n == 3:
            return (2,)
        w = [0] * self.rank
        idx = {"f4": 3, "e7": 6, "e8": 7}.get(self.kind, 0)
        w[idx] = 1
        return tuple(w)

    @property
    def defining_dim(self) -> int:
        if self.kind in ("sl", "so", "sp"):
            return self.n
        return dim_irrep(Irrep(self.type, self.defining_weight))

    def fundamental(self, k: int) -> tuple[int, ...]:
        """Weight written ``phi(k)``; on ``so(3)`` phi(1) is the 3-dim module."""
        if self.kind == "so" and self.n == 3:
            if k != 1:
                raise ModelError("so(3) only has phi(1)")
            return (2,)
        if not 1 <= k <= self.rank:
            raise ModelError(f"phi({k}) out of range for {self}")
        w = [0] * self.rank
        w[k - 1] = 1
        return tuple(w)

    def irrep(self, weight: Sequence[int]) -> Irrep:
        return Irrep(self.type, tuple(weight))

    def __str__(self) -> str:
        return f"{self.kind}({self.n})" if self.kind in ("sl", "so", "sp") else self.kind


def parse_factor(text: str) -> Factor:
    text = text.strip().lower()
    if "(" in text:
        kind, rest = text.split("(", 1)
        return Factor(kind.strip(), int(rest.rstrip(")").strip()))
    return Factor(text)


@dataclass(frozen=True)
class GroupSpec:
    factors: tuple[Factor, ...] = ()
    torus_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if self.torus_rank < 0:
            raise ModelError("negative torus rank")

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors) + self.torus_rank

    @property
    def is_semisimple(self) -> bool:
        return self.torus_rank == 0

    def __str__(self) -> str:
        parts = [str(f) for f in self.factors]
        if self.torus_rank:
            parts.append(f"torus({self.torus_rank})")
        return " * ".join(parts) if parts else "1"


Weight = tuple[int, ...] | None


@dataclass(frozen=True, order=True)
class ModuleSummand:
    """One tensor-product summand; ``slots[i]`` is the weight for factor ``i``."""

    slots: tuple[Weight, ...]
    charges: tuple[int, ...] = ()

    def __post_init__(self):
        norm = []
        for w in self.slots:
            if w is not None:
                w = tuple(int(x) for x in w)
                if not any(w):
                    w = None
            norm.append(w)
        object.__setattr__(self, "slots", tuple(norm))
        object.__setattr__(self, "charges", tuple(int(c) for c in self.charges))

    def acts(self, i: int) -> bool:
        return self.slots[i] is not None

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.slots) if w is not None)

    @property
    def is_trivial(self) -> bool:
        return not self.support and not any(self.charges)

    def sort_key(self):
        return (tuple((0,) if w is None else (1,) + w for w in self.slots), self.charges)


@dataclass(frozen=True)
class ModuleSpec:
    """Sum of summands with explicit multiplicities."""

    terms: tuple[tuple[ModuleSummand, int], ...]

    def __post_init__(self):
        terms = tuple((s, int(m)) for s, m in self.terms)
        for _, m in terms:
            if m < 1:
                raise ModelError("multiplicities must be >= 1")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, *summands: ModuleSummand | tuple[ModuleSummand, int]) -> "ModuleSpec":
        out = []
        for s in summands:
            out.append(s if isinstance(s, tuple) else (s, 1))
        return cls(tuple(out))

    @property
    def summands(self) -> tuple[ModuleSummand, ...]:
        return tuple(s for s, _ in self.terms)

    @property
    def total_copies(self) -> int:
        return sum(m for _, m in self.terms)

    def merged(self) -> "ModuleSpec":
        c: Counter = Counter()
        order = []
        for s, m in self.terms:
            if s not in c:
                order.append(s)
            c[s] += m
        return ModuleSpec(tuple((s, c[s]) for s in order))

    def canonical(self) -> "ModuleSpec":
        m = self.merged()
        return ModuleSpec(tuple(sorted(m.terms, key=lambda t: (t[0].sort_key(), t[1]))))

    def expanded(self) -> list[ModuleSummand]:
        return [s for s, m in self.terms for _ in range(m)]


def summand_dim(g: GroupSpec, s: ModuleSummand) -> int:
    d = 1
    for f, w in zip(g.factors, s.slots):
        if w is not None:
            d *= dim_irrep(f.irrep(w))
    return d


def module_dim(g: GroupSpec, v: ModuleSpec) -> int:
    return sum(summand_dim(g, s) * m for s, m in v.terms)


def dual_summand(g: GroupSpec, s: ModuleSummand) -> ModuleSummand:
    slots = []
    for f, w in zip(g.factors, s.slots):
        slots.append(None if w is None else dual_weight(f.irrep(w)).weight)
    return ModuleSummand(tuple(slots), tuple(-c for c in s.charges))


def dual_module(g: GroupSpec, v: ModuleSpec) -> ModuleSpec:
    return ModuleSpec(tuple((dual_summand(g, s), m) for s, m in v.terms))


def summand_form_type(g: GroupSpec, s: ModuleSummand) -> FormType:
    if dual_summand(g, s) != s:
        return FormType.COMPLEX
    sign = 1
    for f, w in zip(g.factors, s.slots):
        if w is not None and form_type(f.irrep(w)) == FormType.SYMPLECTIC:
            sign = -sign
    return FormType.ORTHOGONAL if sign > 0 else FormType.SYMPLECTIC


def check_module_shape(g: GroupSpec, v: ModuleSpec) -> None:
    for s, _ in v.terms:
        if len(s.slots) != len(g.factors):
            raise ModelError("summand has the wrong number of factor slots")
        if len(s.charges) not in (0, g.torus_rank):
            raise ModelError("summand has the wrong number of torus charges")
        for f, w in zip(g.factors, s.slots):
            if w is not None:
                try:
                    f.irrep(w)
                except LieError as exc:
                    raise ModelError(str(exc)) from None


def _charges(g: GroupSpec, s: ModuleSummand) -> tuple[int, ...]:
    return s.charges if s.charges else (0,) * g.torus_rank


def is_orthogonal_module(g: GroupSpec, v: ModuleSpec) -> bool:
    """Does ``v`` carry a nondegenerate ``g``-invariant symmetric form?"""
    check_module_shape(g, v)
    counts: Counter = Counter()
    for s, m in v.terms:
        counts[ModuleSummand(s.slots, _charges(g, s))] += m
    for s, m in counts.items():
        d = dual_summand(g, s)
        if d == s:
            if summand_form_type(g, s) == FormType.SYMPLECTIC and m % 2:
                return False
        elif counts.get(d, 0) != m:
            return False
    return True


# ----------------------------------------------------------------------
# embeddings

STRAIGHT_LABELS = ("id", "spin", "phi1", "phi1+dual", "phi2", "tensor", "std")


@dataclass(frozen=True)
class FactorMap:
    """Where one simple factor of H goes.

    ``mode`` is ``"straight"`` (one target, catalog ``label``) or
    ``"diagonal"`` (two targets).  Factors sharing a ``tensor`` target are
    ordered by ``part``.
    """

    mode: str
    targets: tuple[int, ...]
    label: str = "id"
    part: int = 0

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        if self.mode == "straight":
            if len(self.targets) != 1:
                raise ModelError("straight maps have exactly one target")
            if self.label not in STRAIGHT_LABELS:
                raise ModelError(f"embedding label {self.label!r} is not in the catalog")
        elif self.mode == "diagonal":
            if len(self.targets) != 2 or self.targets[0] == self.targets[1]:
                raise ModelError("diagonal maps need two distinct targets")
            object.__setattr__(self, "label", "diag")
        else:
            raise ModelError(f"unknown map mode {self.mode!r}")

    @classmethod
    def straight(cls, target: int, label: str = "id", part: int = 0) -> "FactorMap":
        return cls("straight", (target,), label, part)

    @classmethod
    def diagonal(cls, a: int, b: int) -> "FactorMap":
        return cls("diagonal", (a, b))


@dataclass(frozen=True)
class EmbeddingSpec:
    maps: tuple[FactorMap, ...]
    torus_map: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        object.__setattr__(self, "torus_map", tuple(tuple(int(x) for x in r) for r in self.torus_map))


@dataclass(frozen=True)
class TripleSpec:
    H: GroupSpec
    G: GroupSpec
    embedding: EmbeddingSpec
    V: ModuleSpec
    name: str = field(default="", compare=False)

    def __post_init__(self):
        validate_triple(self)

    @property
    def dim_V(self) -> int:
        return module_dim(self.G, self.V)


def identity_triple(g: GroupSpec, v: ModuleSpec) -> TripleSpec:
    emb = EmbeddingSpec(tuple(FactorMap.straight(i) for i in range(len(g.factors))),
                        tuple(tuple(int(i == j) for j in range(g.torus_rank)) for i in range(g.torus_rank)))
    return TripleSpec(g, g, emb, v)


def direct_sum(a: TripleSpec, b: TripleSpec, name: str = "") -> TripleSpec:
    """``(H_a x H_b, G_a x G_b, V_a + V_b)`` with the factors of ``b`` placed after those of ``a``."""
    na, ra, rb = len(a.G.factors), a.G.torus_rank, b.G.torus_rank

    def pad(s: ModuleSummand, left: bool) -> ModuleSummand:
        if left:
            return ModuleSummand(s.slots + (None,) * len(b.G.factors), _charges(a.G, s) + (0,) * rb)
        return ModuleSummand((None,) * na + s.slots, (0,) * ra + _charges(b.G, s))

    terms = [(pad(s, True), m) for s, m in a.V.terms] + [(pad(s, False), m) for s, m in b.V.terms]
    maps = a.embedding.maps + tuple(
        FactorMap(m.mode, tuple(x + na for x in m.targets), m.label, m.part) for m in b.embedding.maps)
    ha, hb = a.H.torus_rank, b.H.torus_rank
    tm = tuple(tuple(r) + (0,) * hb for r in a.embedding.torus_map) + \
        tuple((0,) * ha + tuple(r) for r in b.embedding.torus_map)
    return TripleSpec(GroupSpec(a.H.factors + b.H.factors, ha + hb), GroupSpec(a.G.factors + b.G.factors, ra + rb),
                      EmbeddingSpec(maps, tm), ModuleSpec(tuple(terms)), name=name)


def validate_triple(t: TripleSpec) -> None:
    H, G, emb = t.H, t.G, t.embedding
    if not t.V.terms:
        raise ModelError("module is empty")
    check_module_shape(G, t.V)
    if len(emb.maps) != len(H.factors):
        raise ModelError("embedding must map every factor of H")
    hit: dict[int, list[int]] = {}
    for k, (hf, m) in enumerate(zip(H.factors, emb.maps)):
        for tg in m.targets:
            if not 0 <= tg < len(G.factors):
                raise ModelError(f"embedding target {tg + 1} out of range")
            hit.setdefault(tg, []).append(k)
        if m.mode == "diagonal":
            a, b = m.targets
            if G.factors[a] != G.factors[b] or G.factors[a] != hf:
                raise ModelError("diagonal pairs must target two copies of the same factor")
        elif m.label == "id" and G.factors[m.targets[0]] != hf:
            raise ModelError(f"id embedding of {hf} into {G.factors[m.targets[0]]}")
    for tg, ks in hit.items():
        if len(ks) > 1:
            if not all(emb.maps[k].mode == "straight" and emb.maps[k].label == "tensor" for k in ks):
                raise ModelError("a factor of G is hit by several factors of H")
            parts = sorted(emb.maps[k].part for k in ks)
            if parts != list(range(len(ks))):
                raise ModelError("tensor parts must be numbered 0..k-1")
    if H.torus_rank or G.torus_rank:
        tm = emb.torus_map
        if len(tm) != G.torus_rank or any(len(r) != H.torus_rank for r in tm):
            raise ModelError("torus map must be a G-torus x H-torus integer matrix")


def factor_maps_by_target(t: TripleSpec) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for k, m in enumerate(t.embedding.maps):
        for tg in m.targets:
            out.setdefault(tg, []).append(k)
    return out


def is_trivial_triple(t: TripleSpec) -> bool:
    """H and G have the same image in GL(V)."""
    hit = factor_maps_by_target(t)
    for i in range(len(t.G.factors)):
        acts = any(s.acts(i) for s in t.V.summands)
        if not acts:
            continue
        ks = hit.get(i, [])
        if len(ks) != 1:
            return False
        m = t.embedding.maps[ks[0]]
        if m.mode != "straight" or m.label != "id":
            return False
    if t.G.torus_rank:
        from .linalg import rank
        charges = [_charges(t.G, s) for s in t.V.summands]
        g_rank = rank([list(c) for c in zip(*charges)]) if charges and t.G.torus_rank else 0
        if t.H.torus_rank:
            img = [[sum(t.embedding.torus_map[i][j] * c[i] for i in range(t.G.torus_rank))
                    for c in charges] for j in range(t.H.torus_rank)]
            h_rank = rank(img)
        else:
            h_rank = 0
        if g_rank != h_rank:
            return False
    return True


# ----------------------------------------------------------------------
# structural predicates


def _restrict(t: TripleSpec, g_idx: Sequence[int], h_idx: Sequence[int],
              g_tor: Sequence[int], h_tor: Sequence[int], terms) -> TripleSpec:
    gpos = {g: i for i, g in enumerate(g_idx)}
    G = GroupSpec(tuple(t.G.factors[i] for i in g_idx), len(g_tor))
    H = GroupSpec(tuple(t.H.factors[i] for i in h_idx), len(h_tor))
    maps = []
    for k in h_idx:
        m = t.embedding.maps[k]
        maps.append(FactorMap(m.mode, tuple(gpos[x] for x in m.targets), m.label, m.part))
    tm = tuple(tuple(t.embedding.torus_map[i][j] for j in h_tor) for i in g_tor)
    new_terms = []
    for s, mult in terms:
        ch = _charges(t.G, s)
        new_terms.append((ModuleSummand(tuple(s.slots[i] for i in g_idx), tuple(ch[i] for i in g_tor)), mult))
    return TripleSpec(H, G, EmbeddingSpec(tuple(maps), tm), ModuleSpec(tuple(new_terms)), name=t.name)


def decompose_components(t: TripleSpec) -> list[TripleSpec]:
    """Split a triple into indecomposable direct summands."""
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    nG = len(t.G.factors)
    for i in range(nG):
        find(("g", i))
    for j in range(t.G.torus_rank):
        find(("gt", j))
    for k, m in enumerate(t.embedding.maps):
        for tg in m.targets:
            union(("h", k), ("g", tg))
    for j in range(t.H.torus_rank):
        find(("ht", j))
        for i in range(t.G.torus_rank):
            if t.embedding.torus_map[i][j]:
                union(("ht", j), ("gt", i))
    for idx, (s, _) in enumerate(t.V.terms):
        find(("v", idx))
        for i in s.support:
            union(("v", idx), ("g", i))
        for i, c in enumerate(_charges(t.G, s)):
            if c:
                union(("v", idx), ("gt", i))
    groups: dict = {}
    for node in list(parent):
        groups.setdefault(find(node), []).append(node)
    comps = []
    for nodes in groups.values():
        terms_idx = sorted(i for kind, i in nodes if kind == "v")
        if not terms_idx:
            # factors acting on nothing are dropped
            continue
        g_idx = sorted(i for kind, i in nodes if kind == "g")
        h_idx = sorted(i for kind, i in nodes if kind == "h")
        g_tor = sorted(i for kind, i in nodes if kind == "gt")
        h_tor = sorted(i for kind, i in nodes if kind == "ht")
        comps.append((min(terms_idx), _restrict(t, g_idx, h_idx, g_tor, h_tor,
                                                 [t.V.terms[i] for i in terms_idx])))
    comps.sort(key=lambda c: c[0])
    return [c for _, c in comps]


def h_structure(t: TripleSpec) -> tuple[str, list[int]]:
    """``("trivial" | "diagonal" | "straight" | "mixed", non-identity H-factor indices)``."""
    odd = [k for k, m in enumerate(t.embedding.maps) if not (m.mode == "straight" and m.label == "id")]
    if not odd:
        return "trivial", []
    modes = {t.embedding.maps[k].mode for k in odd}
    if modes == {"diagonal"} and len(odd) == 1:
        return "diagonal", odd
    if modes == {"straight"}:
        targets = {t.embedding.maps[k].targets[0] for k in odd}
        if len(targets) == 1:
            return "straight", odd
    return "mixed", odd


def _summand_trivial_restriction(t: TripleSpec, s: ModuleSummand) -> bool:
    hit = factor_maps_by_target(t)
    for i in s.support:
        ks = hit.get(i, [])
        if len(ks) != 1:
            return False
        m = t.embedding.maps[ks[0]]
        if m.mode == "straight" and m.label != "id":
            return False
        if m.mode == "diagonal":
            other = m.targets[1] if m.targets[0] == i else m.targets[0]
            if s.acts(other):
                return False
    return True


def is_locally_trivial(t: TripleSpec) -> bool:
    """Every G-irreducible summand restricts to a trivial triple.

    A triple with a single irreducible summand on which H is straight and
    proper is not counted as locally trivial (it is routed as strongly
    faithful); with a diagonal H the vacuous case does count.
    """
    return all(_summand_trivial_restriction(t, s) for s in t.V.summands)


def is_strongly_faithful(t: TripleSpec) -> bool:
    g = t.G
    for s in t.V.summands:
        if any(not s.acts(i) for i in range(len(g.factors))):
            return False
        if g.torus_rank > 1 or (g.torus_rank == 1 and not any(_charges(g, s))):
            return False
    return True


class SplitKind(str, enum.Enum):
    SOLID = "solid"
    HALF_SPLIT = "half_split"
    SPLIT = "split"
    OTHER = "other"


# (G kind, label, G-slot weight name) -> does the straight H-factor act irreducibly
# on that slot ("irr"), as U + U* ("dual_pair"), or otherwise ("other").
_RESTRICTION = {
    ("so", "spin"): {"phi1": "irr"},
    ("so", "phi1"): {"phi1": "irr"},  # G2 in SO7
    ("so", "tensor"): {"phi1": "irr"},
    ("so", "phi1+dual"): {"phi1": "dual_pair"},
    ("so", "std"): {"phi1": "other"},
    ("sl", "phi1"): {"phi1": "irr", "dual": "irr"},
    ("sl", "spin"): {"phi1": "irr", "dual": "irr"},
    ("sl", "phi2"): {"phi1": "irr", "dual": "irr"},
    ("sl", "tensor"): {"phi1": "irr", "dual": "irr"},
    ("sl", "std"): {"phi1": "other", "dual": "other"},
}


def _slot_behaviour(t: TripleSpec, i: int, w) -> str:
    hit = factor_maps_by_target(t).get(i, [])
    f = t.G.factors[i]
    if not hit:
        return "other"
    m = t.embedding.maps[hit[0]]
    if m.mode == "straight" and m.label == "id":
        return "irr"
    if m.mode == "diagonal":
        return "irr"
    table = _RESTRICTION.get((f.kind, m.label), {})
    if w == f.defining_weight:
        return table.get("phi1", "other")
    if f.kind == "sl" and w == dual_weight(f.irrep(f.defining_weight)).weight:
        return table.get("dual", "other")
    return "other"


def split_kind(t: TripleSpec, w: int | tuple[int, int]) -> SplitKind:
    """Classify a minimal orthogonal G-submodule given by summand index(es)."""
    G = t.G
    summands = t.V.summands
    if isinstance(w, int):
        s = summands[w]
        if summand_form_type(G, s) != FormType.ORTHOGONAL:
            raise ModelError("summand is not a minimal orthogonal submodule on its own")
        pair = False
    else:
        a, b = w
        s = summands[a]
        if dual_summand(G, s) != summands[b] or summand_form_type(G, s) != FormType.COMPLEX:
            raise ModelError("summands do not form a dual pair")
        pair = True
    behaviours = [_slot_behaviour(t, i, s.slots[i]) for i in s.support]
    for i in s.support:
        hit = factor_maps_by_target(t).get(i, [])
        if hit and t.embedding.maps[hit[0]].mode == "diagonal":
            m = t.embedding.maps[hit[0]]
            if all(s.acts(x) for x in m.targets):
                return SplitKind.OTHER
    if all(b == "irr" for b in behaviours):
        return SplitKind.SPLIT if pair else SplitKind.SOLID
    if not pair and behaviours.count("dual_pair") == 1 and all(b in ("irr", "dual_pair") for b in behaviours):
        return SplitKind.HALF_SPLIT
    return SplitKind.OTHER


def iter_permutations_within(classes: Iterable[list[int]]):
    """All permutations that only shuffle indices inside each class."""
    classes = list(classes)
    for combo in itertools.product(*(itertools.permutations(c) for c in classes)):
        perm = {}
        for cls, img in zip(classes, combo):
            for a, b in zip(cls, img):
                perm[a] = b
        yield perm
