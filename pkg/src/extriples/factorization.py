"""Factorizations ``g = h + s`` of reductive Lie algebras.

For simple ``g`` the nontrivial factorizations form a short list (``TABLE_O``)
of catalog-labelled subalgebra pairs.  The reductions for non-simple ``g``
only need that list plus the observation that factors of rank one never take
part in a nontrivial factorization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .groups import Factor, ModelError
from .linalg import SMat, rank
from .realize import defining_basis, factor_basis, make_embedding


class FactorizationUndecidable(ValueError):
    """The structural test cannot decide; use the numeric check instead."""


@dataclass(frozen=True)
class Subalgebra:
    """Simple parts of a subalgebra of a simple ``g`` with their catalog label.

    ``label="whole"`` means the subalgebra is all of ``g``.  ``center`` counts
    one-dimensional central summands.
    """

    parts: tuple[Factor, ...]
    label: str
    center: int = 0

    @property
    def dim(self) -> int:
        return sum(_dim(f) for f in self.parts) + self.center

    def __str__(self) -> str:
        body = " + ".join(str(f) for f in self.parts) or "0"
        return f"{body}[{self.label}]"


def _dim(f: Factor) -> int:
    k, n = f.kind, f.n
    if k == "sl":
        return n * n - 1
    if k == "so":
        return n * (n - 1) // 2
    if k == "sp":
        return n * (n + 1) // 2
    return f.dim


def whole(g: Factor) -> Subalgebra:
    return Subalgebra((g,), "whole")


def _is_whole(g: Factor, a: Subalgebra) -> bool:
    return a.label == "whole" or (a.label == "id" and a.parts == (g,))


def _sl2_like(f: Factor) -> bool:
    return (f.kind, f.n) in (("sl", 2), ("sp", 2))


@dataclass(frozen=True)
class TableORow:
    row: int
    description: str
    params: tuple[int, ...]
    build: Callable[[int], tuple[Factor, Subalgebra, Subalgebra]]


def _so(n):
    return Factor("so", n) if n == 3 or n >= 5 else Factor.matrix_only("so", n)


TABLE_O: tuple[TableORow, ...] = (
    TableORow(1, "sl(2n) = sp(2n) + sl(2n-1)", (2, 3),
              lambda n: (Factor("sl", 2 * n), Subalgebra((Factor("sp", 2 * n),), "phi1"),
                         Subalgebra((Factor("sl", 2 * n - 1),), "std"))),
    TableORow(2, "so(2n) = sl(n) + so(2n-1)", (2, 3),
              lambda n: (_so(2 * n), Subalgebra((Factor("sl", n),), "phi1+dual"),
                         Subalgebra((_so(2 * n - 1),), "std"))),
    TableORow(3, "so(4n) = sp(2n) + sl(2) + so(4n-1)", (2, 3),
              lambda n: (_so(4 * n), Subalgebra((Factor("sp", 2 * n), Factor("sl", 2)), "tensor"),
                         Subalgebra((_so(4 * n - 1),), "std"))),
    TableORow(4, "so(7) = g2 + so(6)", (),
              lambda n: (Factor("so", 7), Subalgebra((Factor("g2"),), "phi1"), Subalgebra((Factor("so", 6),), "std"))),
    TableORow(5, "so(7) = g2 + so(5)", (),
              lambda n: (Factor("so", 7), Subalgebra((Factor("g2"),), "phi1"), Subalgebra((Factor("so", 5),), "std"))),
    TableORow(6, "so(8) = so(7) + so(7)", (),
              lambda n: (Factor("so", 8), Subalgebra((Factor("so", 7),), "spin"), Subalgebra((Factor("so", 7),), "std"))),
    TableORow(7, "so(8) = so(7) + so(6)", (),
              lambda n: (Factor("so", 8), Subalgebra((Factor("so", 7),), "spin"), Subalgebra((Factor("so", 6),), "std"))),
    TableORow(8, "so(8) = so(7) + so(5)", (),
              lambda n: (Factor("so", 8), Subalgebra((Factor("so", 7),), "spin"), Subalgebra((Factor("so", 5),), "std"))),
    TableORow(9, "so(16) = so(9) + so(15)", (),
              lambda n: (Factor("so", 16), Subalgebra((Factor("so", 9),), "spin"), Subalgebra((Factor("so", 15),), "std"))),
)


def table_o_instances() -> list[tuple[int, int | None, Factor, Subalgebra, Subalgebra]]:
    """Every row at its two smallest parameters (or once if unparametrised)."""
    out = []
    for r in TABLE_O:
        for n in r.params or (None,):
            out.append((r.row, n, *r.build(n)))
    return out


def _std(a: Subalgebra, kind: str, n: int) -> bool:
    return a.label == "std" and a.parts == (Factor(kind, n),)


def _row_matches(g: Factor, h: Subalgebra, s: Subalgebra) -> int | None:
    k, n = g.kind, g.n
    if k == "sl" and n % 2 == 0 and n >= 4:
        if h.label == "phi1" and h.parts == (Factor("sp", n),) and _std(s, "sl", n - 1):
            return 1
    if k != "so":
        return None
    if n % 2 == 0 and n >= 6 and h.label == "phi1+dual" and h.parts == (Factor("sl", n // 2),) \
            and _std(s, "so", n - 1):
        return 2
    if n % 4 == 0 and n >= 8 and h.label == "tensor" and len(h.parts) == 2 and _std(s, "so", n - 1):
        a, b = h.parts
        if _sl2_like(a):
            a, b = b, a
        if a == Factor("sp", n // 2) and _sl2_like(b):
            return 3
    if n == 7 and h.label == "phi1" and h.parts == (Factor("g2"),):
        if _std(s, "so", 6):
            return 4
        if _std(s, "so", 5):
            return 5
    if n == 8 and h.label == "spin" and h.parts == (Factor("so", 7),):
        for m, row in ((7, 6), (6, 7), (5, 8)):
            if _std(s, "so", m):
                return row
    if n == 16 and h.label == "spin" and h.parts == (Factor("so", 9),) and _std(s, "so", 15):
        return 9
    return None


def table_o_row(g: Factor, h: Subalgebra, s: Subalgebra) -> int | None:
    return _row_matches(g, h, s) or _row_matches(g, s, h)


def is_factorization_simple(g: Factor, h: Subalgebra, s: Subalgebra) -> bool:
    """Is ``g = h + s`` for simple ``g`` and catalog-labelled proper or whole ``h``, ``s``?"""
    if _is_whole(g, h) or _is_whole(g, s):
        return True
    if h.dim + s.dim < _dim(g):
        return False
    if table_o_row(g, h, s) is not None:
        return True
    if g == Factor("so", 8) and h.label == s.label == "spin":
        # two spin images of so(7) factor so(8) exactly when they use different half-spin modules
        raise FactorizationUndecidable("the labels cannot tell the two half-spin embeddings of so(7) apart")
    return False


@dataclass(frozen=True)
class ReductiveQuery:
    """``g = h + s`` with ``g`` a product of simple factors plus a center.

    ``h`` and ``s`` are per-factor projections: ``h[i]`` is the projection
    onto ``g.factors[i]`` (``None`` for zero).
    """

    factors: tuple[Factor, ...]
    center: int
    h: tuple[Subalgebra | None, ...]
    s: tuple[Subalgebra | None, ...]
    h_center: int = 0
    s_center: int = 0


def semisimple_reduce(q: ReductiveQuery) -> tuple[ReductiveQuery, bool]:
    """Drop the centers; the bool says whether the centers of h and s can cover that of g."""
    ok = q.h_center + q.s_center >= q.center
    return ReductiveQuery(q.factors, 0, q.h, q.s), ok


def strong_split(q: ReductiveQuery) -> tuple[list[int], list[int]]:
    """Indices of factors of rank > 1 and of rank one."""
    big = [i for i, f in enumerate(q.factors) if _rank(f) > 1]
    small = [i for i, f in enumerate(q.factors) if _rank(f) <= 1]
    return big, small


def _rank(f: Factor) -> int:
    try:
        return f.rank
    except Exception:
        return f.n // 2


def straight_reduce(g1: Factor, h1: Subalgebra, projections: Sequence[Subalgebra | None]) -> bool:
    """A straight h1 in g1 factors together with s iff some projection of s onto g1 complements h1."""
    for p in projections:
        if p is None:
            continue
        if is_factorization_simple(g1, h1, p):
            return True
    return _is_whole(g1, h1)


def factorization_product(q: ReductiveQuery) -> bool:
    """Factor-by-factor test: valid when h and s are products of their projections."""
    q, centers_ok = semisimple_reduce(q)
    if not centers_ok:
        return False
    for i, f in enumerate(q.factors):
        h, s = q.h[i], q.s[i]
        if h is None and s is None:
            return False
        if h is None:
            if not _is_whole(f, s):
                return False
            continue
        if s is None:
            if not _is_whole(f, h):
                return False
            continue
        if not is_factorization_simple(f, h, s):
            return False
    return True


# ----------------------------------------------------------------------
# numeric check


def subalgebra_basis(g: Factor, a: Subalgebra) -> list[SMat]:
    if a.label == "whole":
        return defining_basis(g.kind, g.n) if g.kind in ("sl", "so", "sp") else factor_basis(g)
    out = []
    for k, f in enumerate(a.parts):
        emb = make_embedding(f, g, a.label, a.parts if a.label == "tensor" else (), k)
        out.extend(emb(x) for x in factor_basis(f))
    return out


def numeric_factorization_check(g_basis: Sequence[SMat], h_basis: Sequence[SMat],
                                s_basis: Sequence[SMat]) -> bool:
    """``rank(h + s) == dim g``; raises if h or s leaves g."""
    g_rows = [x.flat() for x in g_basis]
    dim_g = rank(g_rows)
    both = [x.flat() for x in h_basis] + [x.flat() for x in s_basis]
    if rank(g_rows + both) != dim_g:
        raise ModelError("subalgebra basis is not contained in g")
    return rank(both) == dim_g


def check_table_o(instances=None) -> list[dict]:
    """Numerically confirm every Table O row; one record per instance."""
    out = []
    for row, n, g, h, s in instances or table_o_instances():
        gb = subalgebra_basis(g, whole(g))
        hb, sb = subalgebra_basis(g, h), subalgebra_basis(g, s)
        out.append({"row": row, "n": n, "g": str(g), "h": str(h), "s": str(s), "dim_g": len(gb),
                    "rank": rank([x.flat() for x in hb + sb]),
                    "ok": numeric_factorization_check(gb, hb, sb)})
    return out
