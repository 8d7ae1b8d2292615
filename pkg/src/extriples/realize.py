"""Explicit matrix realizations of the catalog representations.

Every simple factor is realized in its defining representation with exact
rational matrices: ``so(n)`` preserves the anti-diagonal form ``J``,
``sp(n)`` the anti-diagonal alternating form, ``g2`` is the stabilizer in
``so(7)`` of a 3-form.  Other irreps are linear functors applied to defining
matrices (exterior and symmetric powers, spin via a Clifford algebra,
adjoint, duals).  Embeddings of the catalog turn a defining matrix of an H
factor into a defining matrix of the target G factor.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .groups import Factor
from .lie import Irrep, dim_irrep, dual_weight, height, highest_root
from .linalg import Coordinates, SMat, echelon, inverse, kron, kron_sum, nullspace, restrict


class RealizationError(ValueError):
    """The requested representation or embedding is outside the catalog."""


# ----------------------------------------------------------------------
# forms and defining bases


def split_form(kind: str, n: int) -> SMat:
    if kind == "so":
        return SMat(n, n, {(i, n - 1 - i): 1 for i in range(n)})
    if kind == "sp":
        return SMat(n, n, {(i, n - 1 - i): 1 if i < n // 2 else -1 for i in range(n)})
    raise RealizationError(f"no invariant form for {kind}")


def _so_basis(n: int) -> list[SMat]:
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            out.append(SMat(n, n, {(i, n - 1 - j): 1, (j, n - 1 - i): -1}))
    return out


def _sp_basis(n: int) -> list[SMat]:
    om = split_form("sp", n)
    out = []
    for i in range(n):
        for j in range(i, n):
            a = SMat(n, n, {(i, j): 1, (j, i): 1}) if i != j else SMat(n, n, {(i, i): 1})
            out.append(a @ om)
    return out


def _sl_basis(n: int) -> list[SMat]:
    out = [SMat.unit(n, i, j) for i in range(n) for j in range(n) if i != j]
    out += [SMat(n, n, {(i, i): 1, (i + 1, i + 1): -1}) for i in range(n - 1)]
    return out


@lru_cache(maxsize=None)
def _g2_data() -> tuple[tuple[SMat, ...], tuple[int, ...]]:
    """so(7) annihilator of a weight-zero 3-form; returns (basis, coefficients)."""
    so7 = _so_basis(7)
    # basis e1 e2 e3 e0 f3 f2 f1 at positions 0..6; f_i pairs with e_i
    mixed = [(0, 3, 6), (1, 3, 5), (2, 3, 4)]
    # the scaling e_i -> t e_i, f_i -> f_i / t leaves only the product of the
    # two pure coefficients and the mixed ones as invariants
    for pure, coeffs in itertools.product((1, 2, -1, -2, 4), itertools.product((1, -1, 2, -2), repeat=3)):
        form = {(0, 1, 2): 1, (4, 5, 6): pure}
        for t, c in zip(mixed, coeffs):
            form[t] = c
        rows = _three_form_action(so7, form)
        kernel = nullspace(rows, len(so7))
        if len(kernel) == 14:
            basis = []
            for vec in kernel:
                m = SMat(7)
                for c, b in zip(vec, so7):
                    if c:
                        m = m + b.scale(c)
                basis.append(m)
            return tuple(basis), (pure,) + coeffs
    raise RealizationError("could not build g2: no 3-form with a 14-dimensional stabilizer")


def _three_form_action(mats: Sequence[SMat], form: dict) -> list[list[int]]:
    """Rows: coordinates (over alternating triples) of X . form, one column per X."""
    triples = list(itertools.combinations(range(7), 3))
    index = {t: i for i, t in enumerate(triples)}
    cols = []
    for x in mats:
        out = [0] * len(triples)
        # (X.w)(u,v,w) = -w(Xu,v,w) - ...; act on the tensor e_a^e_b^e_c by X on each slot
        for (a, b, c), w in form.items():
            for pos, src in enumerate((a, b, c)):
                for (i, j), v in x.data.items():
                    if j != src:
                        continue
                    new = [a, b, c]
                    new[pos] = i
                    if len(set(new)) < 3:
                        continue
                    perm = sorted(range(3), key=lambda k: new[k])
                    sign = _perm_sign(perm)
                    out[index[tuple(sorted(new))]] += sign * w * v
        cols.append(out)
    return [[cols[k][r] for k in range(len(mats))] for r in range(len(triples))]


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def defining_basis(kind: str, n: int = 0) -> list[SMat]:
    """Basis of the Lie algebra in its defining representation."""
    if kind == "sl":
        return _sl_basis(n)
    if kind == "so":
        return _so_basis(n)
    if kind == "sp":
        return _sp_basis(n)
    if kind == "g2":
        return list(_g2_data()[0])
    raise RealizationError(f"no matrix realization for {kind}")


def factor_basis(f: Factor) -> list[SMat]:
    return defining_basis(f.kind, f.n)


def coroots(f: Factor) -> list[SMat]:
    """Chevalley coroots ``h_i`` in the defining realization (diagonal matrices)."""
    k, n = f.kind, f.n

    def diag(vals):
        return SMat(len(vals), len(vals), {(i, i): v for i, v in enumerate(vals) if v})

    def cartan(i, size):
        v = [0] * size
        v[i] = 1
        v[size - 1 - i] = -1
        return v

    if k == "sl":
        return [diag([1 if j == i else -1 if j == i + 1 else 0 for j in range(n)]) for i in range(n - 1)]
    if k in ("so", "sp"):
        m = n // 2
        hs = [[a - b for a, b in zip(cartan(i, n), cartan(i + 1, n))] for i in range(m - 1)]
        last = cartan(m - 1, n)
        if k == "so" and n % 2 == 1:
            hs.append([2 * x for x in last])
        elif k == "so":
            hs.append([a + b for a, b in zip(cartan(m - 2, n), last)])
        else:
            hs.append(last)
        if k == "so" and n == 3:
            return [diag([2 * x for x in cartan(0, 3)])]
        return [diag(h) for h in hs]
    if k == "g2":
        def t(v):
            a, b, c = v
            return diag([a, b, c, 0, -c, -b, -a])
        # Cartan of g2 is {t1 + t2 + t3 = 0}; alpha_1 = t1 short, alpha_2 = t2 - t1 long
        return [t((2, -1, -1)), t((-1, 1, 0))]
    raise RealizationError(f"no coroots for {f}")


# ----------------------------------------------------------------------
# functors on matrices


class Realizer:
    """A representation given as a linear Lie map on defining matrices."""

    def __init__(self, dim: int, fn: Callable[[SMat], SMat], name: str = ""):
        self.dim = dim
        self._fn = fn
        self.name = name

    def __call__(self, x: SMat) -> SMat:
        return self._fn(x)


def exterior_power(n: int, k: int) -> Realizer:
    subsets = list(itertools.combinations(range(n), k))
    index = {s: i for i, s in enumerate(subsets)}

    def act(x: SMat) -> SMat:
        by_col: dict[int, list] = {}
        for (i, j), v in x.data.items():
            by_col.setdefault(j, []).append((i, v))
        out: dict = {}
        for col, s in enumerate(subsets):
            for pos, src in enumerate(s):
                for i, v in by_col.get(src, ()):
                    if i != src and i in s:
                        continue
                    new = list(s)
                    new[pos] = i
                    perm = sorted(range(k), key=lambda q: new[q])
                    sign = _perm_sign(perm)
                    key = (index[tuple(sorted(new))], col)
                    out[key] = out.get(key, 0) + sign * v
        return SMat(len(subsets), len(subsets), out)

    return Realizer(len(subsets), act, f"L{k}")


def symmetric_power(n: int, a: int) -> Realizer:
    monos = list(itertools.combinations_with_replacement(range(n), a))
    index = {m: i for i, m in enumerate(monos)}

    def act(x: SMat) -> SMat:
        by_col: dict[int, list] = {}
        for (i, j), v in x.data.items():
            by_col.setdefault(j, []).append((i, v))
        out: dict = {}
        for col, m in enumerate(monos):
            for pos, src in enumerate(m):
                for i, v in by_col.get(src, ()):
                    new = list(m)
                    new[pos] = i
                    key = (index[tuple(sorted(new))], col)
                    out[key] = out.get(key, 0) + v
        return SMat(len(monos), len(monos), out)

    return Realizer(len(monos), act, f"S{a}")


def dual_of(r: Realizer) -> Realizer:
    return Realizer(r.dim, lambda x: -(r(x).T), f"{r.name}*")


def on_subspace(r: Realizer, basis: list[list]) -> Realizer:
    coords = Coordinates(basis)
    return Realizer(len(basis), lambda x: restrict(r(x), basis, coords), f"{r.name}|")


@lru_cache(maxsize=None)
def clifford_spin(n: int, half: int | None = None) -> Realizer:
    """Spin representation of so(n, J) on a Fock space.

    ``half`` selects the even (0) or odd (1) part when ``n`` is even.
    """
    m = n // 2
    subsets = [s for k in range(m + 1) for s in itertools.combinations(range(m), k)]
    if half is not None:
        subsets = [s for s in subsets if len(s) % 2 == half]
    full = [s for k in range(m + 1) for s in itertools.combinations(range(m), k)]
    findex = {s: i for i, s in enumerate(full)}
    size = len(full)

    def create(i):
        d = {}
        for s in full:
            if i not in s:
                sign = (-1) ** sum(1 for x in s if x < i)
                d[(findex[tuple(sorted(s + (i,)))], findex[s])] = sign
        return SMat(size, size, d)

    def annihilate(i):
        d = {}
        for s in full:
            if i in s:
                sign = (-1) ** sum(1 for x in s if x < i)
                d[(findex[tuple(x for x in s if x != i)], findex[s])] = sign
        return SMat(size, size, d)

    gamma: dict[int, SMat] = {}
    for i in range(m):
        gamma[i] = create(i).scale(2)
        gamma[n - 1 - i] = annihilate(i)
    if n % 2:
        gamma[m] = SMat(size, size, {(findex[s], findex[s]): (-1) ** len(s) for s in full})
    prods: dict[tuple[int, int], SMat] = {}

    def prod(i, j):
        if (i, j) not in prods:
            prods[(i, j)] = gamma[i] @ gamma[j]
        return prods[(i, j)]

    keep = [findex[s] for s in subsets]
    pos = {g: k for k, g in enumerate(keep)}

    def act(x: SMat) -> SMat:
        # A = X J^{-1}, J^{-1} = J; spin(X) = 1/4 sum A_ij gamma_i gamma_j
        out = SMat(size, size)
        for (i, j), v in x.data.items():
            jj = n - 1 - j
            out = out + prod(i, jj).scale(Fraction(v, 4))
        if half is None:
            return out
        d = {(pos[a], pos[b]): v for (a, b), v in out.data.items() if a in pos and b in pos}
        return SMat(len(keep), len(keep), d)

    return Realizer(len(subsets), act, "spin")


def adjoint(basis: list[SMat]) -> Realizer:
    coords = Coordinates([b.flat() for b in basis])

    def act(x: SMat) -> SMat:
        d = {}
        for j, b in enumerate(basis):
            for i, c in enumerate(coords(x.bracket(b).flat(), check=False)):
                if c:
                    d[(i, j)] = c
        return SMat(len(basis), len(basis), d)

    return Realizer(len(basis), act, "ad")


def _identity_realizer(n: int) -> Realizer:
    return Realizer(n, lambda x: x, "def")


def _weight_vec(f: Factor, k: int, mult: int = 1) -> tuple[int, ...]:
    w = [0] * f.rank
    w[k - 1] = mult
    return tuple(w)


@lru_cache(maxsize=None)
def irrep_realizer(f: Factor, weight: tuple[int, ...]) -> Realizer:
    """Realizer for the irrep of ``f`` with the given highest weight."""
    r = _direct_realizer(f, weight)
    if r is not None:
        return r
    dual = dual_weight(f.irrep(weight)).weight
    if dual != weight:
        r = _direct_realizer(f, dual)
        if r is not None:
            return dual_of(r)
    raise RealizationError(f"irrep {list(weight)} of {f} is not in the matrix catalog")


def _direct_realizer(f: Factor, weight: tuple[int, ...]) -> Realizer | None:
    k, n, rk = f.kind, f.n, f.rank
    if weight == f.defining_weight:
        return _identity_realizer(f.defining_dim)
    nz = [i for i, x in enumerate(weight) if x]
    if k == "sl":
        if len(nz) == 1 and weight[nz[0]] == 1:
            return exterior_power(n, nz[0] + 1)
        if nz == [0]:
            return symmetric_power(n, weight[0])
        if weight == highest_root(f.type):
            return adjoint(_sl_basis(n))
        return None
    if k == "so":
        if n == 3:
            if weight == (1,):
                return clifford_spin(3)
            return None
        m = n // 2
        if n % 2:
            if len(nz) == 1 and weight[nz[0]] == 1 and nz[0] < m - 1:
                return exterior_power(n, nz[0] + 1)
            if weight == _weight_vec(f, m):
                return clifford_spin(n)
            if weight == _weight_vec(f, m, 2):
                return exterior_power(n, m)
        else:
            if len(nz) == 1 and weight[nz[0]] == 1 and nz[0] < m - 2:
                return exterior_power(n, nz[0] + 1)
            if nz == [m - 2, m - 1] and weight[m - 2] == weight[m - 1] == 1:
                return exterior_power(n, m - 1)
            if weight in (_weight_vec(f, m - 1), _weight_vec(f, m)):
                return _half_spin(f, weight)
        if weight == highest_root(f.type):
            return exterior_power(n, 2)
        return None
    if k == "sp":
        if n == 2:
            return symmetric_power(2, weight[0])
        if weight == _weight_vec(f, 1, 2):
            return symmetric_power(n, 2)
        if weight == _weight_vec(f, 2):
            return _sp_traceless_wedge2(n)
        return None
    if k == "g2":
        if weight == (0, 1):
            return adjoint(defining_basis("g2"))
        return None
    return None


@lru_cache(maxsize=None)
def _half_spin(f: Factor, weight: tuple[int, ...]) -> Realizer:
    for half in (0, 1):
        r = clifford_spin(f.n, half)
        if highest_weight_of(f, r) == weight:
            return r
    raise RealizationError(f"half-spin {weight} of {f} not found")


@lru_cache(maxsize=None)
def _sp_traceless_wedge2(n: int) -> Realizer:
    """Kernel of the contraction with the symplectic form inside the exterior square."""
    wedge = exterior_power(n, 2)
    pairs = list(itertools.combinations(range(n), 2))
    om = split_form("sp", n)
    row = [om.data.get((a, b), 0) for a, b in pairs]
    basis = nullspace([row], len(pairs))
    return on_subspace(wedge, basis)


# ----------------------------------------------------------------------
# weights of a realization (for self-checks)


def weights_of(f: Factor, r: Realizer) -> list[tuple[int, ...]] | None:
    """Weights along the standard basis, or ``None`` if coroots are not diagonal."""
    hs = [r(h) for h in coroots(f)]
    out = []
    for i in range(r.dim):
        w = []
        for h in hs:
            if any(a != b for (a, b) in h.data):
                return None
            v = h.data.get((i, i), 0)
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    return None
                v = v.numerator
            w.append(v)
        out.append(tuple(w))
    return out


def highest_weight_of(f: Factor, r: Realizer) -> tuple[int, ...] | None:
    ws = weights_of(f, r)
    if ws is None:
        return None
    dom = [w for w in ws if all(x >= 0 for x in w)]
    if not dom:
        return None
    return max(dom, key=lambda w: height(f.type, w))


# ----------------------------------------------------------------------
# forms preserved by a representation


def invariant_forms(gens: Sequence[SMat], dim: int, symmetric: bool | None = None) -> list[SMat]:
    """Basis of bilinear forms ``B`` with ``X^T B + B X = 0`` for all generators."""
    unknowns = [(i, j) for i in range(dim) for j in range(dim)]
    if symmetric is not None:
        unknowns = [(i, j) for i in range(dim) for j in range(i if symmetric else i + 1, dim)]
    col = {u: k for k, u in enumerate(unknowns)}

    def var(i, j):
        if symmetric is None:
            return [(col[(i, j)], 1)]
        if i == j:
            return [(col[(i, i)], 1)] if symmetric else []
        if i < j:
            return [(col[(i, j)], 1)]
        return [(col[(j, i)], 1 if symmetric else -1)]

    rows = []
    for x in gens:
        xt_cols: dict[int, list] = {}
        for (c, a), v in x.data.items():
            xt_cols.setdefault(a, []).append((c, v))
        eqs: dict[tuple[int, int], dict] = {}
        # (X^T B)_{ab} = sum_c X_{ca} B_{cb};  (B X)_{ab} = sum_c B_{ac} X_{cb}
        for (c, a), v in x.data.items():
            for b in range(dim):
                e = eqs.setdefault((a, b), {})
                for idx, s in var(c, b):
                    e[idx] = e.get(idx, 0) + s * v
        for (c, b), v in x.data.items():
            for a in range(dim):
                e = eqs.setdefault((a, b), {})
                for idx, s in var(a, c):
                    e[idx] = e.get(idx, 0) + s * v
        for e in eqs.values():
            if any(e.values()):
                row = [0] * len(unknowns)
                for idx, v in e.items():
                    row[idx] = v
                rows.append(row)
        if rows:
            red, piv = echelon(rows)
            rows = red
    ker = nullspace(rows, len(unknowns)) if rows else [[int(k == i) for k in range(len(unknowns))] for i in range(len(unknowns))]
    out = []
    for vec in ker:
        d = {}
        for k, v in enumerate(vec):
            if not v:
                continue
            i, j = unknowns[k]
            d[(i, j)] = v
            if symmetric is not None and i != j:
                d[(j, i)] = v if symmetric else -v
        out.append(SMat(dim, dim, d))
    return out


def splitting_basis(form: SMat, kind: str) -> SMat:
    """Matrix ``P`` with ``P^T form P = c * (split form)`` for a monomial form."""
    n = form.rows
    partner: dict[int, tuple[int, object]] = {}
    for (i, j), v in form.data.items():
        if i in partner and partner[i][0] != j:
            raise RealizationError("form is not monomial")
        partner[i] = (j, v)
    if len(partner) != n:
        raise RealizationError("form is degenerate")
    diag = sorted(i for i, (j, _) in partner.items() if i == j)
    pairs = sorted((i, j) for i, (j, _) in partner.items() if i < j)
    cols: dict[int, dict[int, object]] = {}
    scale = None
    if kind == "so" and diag:
        if len(diag) > 1:
            raise RealizationError("form has several diagonal entries")
        scale = form.data[(diag[0], diag[0])]
        cols[n // 2] = {diag[0]: 1}
    elif diag:
        raise RealizationError("alternating form has diagonal entries")
    if scale is None:
        scale = 1
    for p, (i, j) in enumerate(pairs):
        v = form.data[(i, j)]
        cols[p] = {i: 1}
        cols[n - 1 - p] = {j: Fraction(scale) / v}
    d = {}
    for c, entries in cols.items():
        for r, v in entries.items():
            d[(r, c)] = v
    p_mat = SMat(n, n, d)
    target = split_form(kind, n).scale(scale)
    if p_mat.T @ form @ p_mat != target:
        raise RealizationError("could not split the form")
    return p_mat


# ----------------------------------------------------------------------
# embeddings


class Embedding:
    """Linear Lie map from defining matrices of an H factor to those of a G factor."""

    def __init__(self, fn: Callable[[SMat], SMat], name: str):
        self._fn = fn
        self.name = name

    def __call__(self, x: SMat) -> SMat:
        return self._fn(x)


def _conjugated(r: Realizer, p: SMat) -> Callable[[SMat], SMat]:
    pinv = inverse(p)
    return lambda x: pinv @ r(x) @ p


@lru_cache(maxsize=None)
def orthogonal_rep_in_split_form(h: Factor, weight: tuple[int, ...]) -> Callable[[SMat], SMat]:
    """Realize an orthogonal irrep of ``h`` inside ``so(N, J)``."""
    r = irrep_realizer(h, weight)
    gens = [r(x) for x in factor_basis(h)]
    forms = invariant_forms(gens, r.dim, symmetric=True)
    if len(forms) != 1:
        raise RealizationError(f"{h}{list(weight)} has {len(forms)} invariant symmetric forms")
    p = splitting_basis(forms[0], "so")
    return _conjugated(r, p)


def _spin_weight(h: Factor) -> tuple[int, ...]:
    w = [0] * h.rank
    w[-1] = 1
    return tuple(w)


def _std_isometry(m: int, n: int) -> SMat:
    """``psi`` (n x m) with ``psi^T J_n psi = J_m``."""
    d: dict = {}
    if (n - m) % 2 == 0:
        k = (n - m) // 2
        for i in range(m):
            d[(k + i, i)] = 1
    elif m % 2 == 1:
        a, b = m // 2, n // 2
        # first a vectors and their mirrors; the middle vector goes to the middle pair
        k = b - a - 1
        for i in range(a):
            d[(k + i, i)] = 1
            d[(n - 1 - (k + i), m - 1 - i)] = 1
        d[(b - 1, a)] = 1
        d[(b, a)] = Fraction(1, 2)
    else:
        a, b = m // 2, n // 2
        k = b - a
        for i in range(a):
            d[(k + i, i)] = 1
            d[(n - 1 - (k + i), m - 1 - i)] = 1
    return SMat(n, m, d)


def make_embedding(h: Factor, g: Factor, label: str, parts: Sequence[Factor] = (), part: int = 0) -> Embedding:
    """Catalog embedding of ``h`` into ``g``; ``parts`` lists all tensor parts."""
    key = (h, g, label, tuple(parts), part)
    if key not in _EMB_CACHE:
        _EMB_CACHE[key] = _build_embedding(h, g, label, tuple(parts), part)
    return _EMB_CACHE[key]


_EMB_CACHE: dict = {}


def _build_embedding(h: Factor, g: Factor, label: str, parts: tuple, part: int) -> Embedding:
    name = f"{h}->{g}[{label}]"
    if label == "id":
        if h != g:
            raise RealizationError(f"id embedding needs equal factors, got {name}")
        return Embedding(lambda x: x, name)
    if label == "spin":
        if h.kind != "so":
            raise RealizationError(f"spin embedding needs an so factor: {name}")
        w = _spin_weight(h)
        r = irrep_realizer(h, w)
        if r.dim != g.defining_dim:
            raise RealizationError(f"spin module of {h} has dim {r.dim}, not {g.defining_dim}")
        if g.kind == "so":
            return Embedding(orthogonal_rep_in_split_form(h, w), name)
        if g.kind == "sl":
            return Embedding(r, name)
        raise RealizationError(name)
    if label == "phi1":
        if (h.kind, g.kind) == ("g2", "so") and g.n == 7:
            return Embedding(lambda x: x, name)
        if (h.kind, g.kind) in (("sp", "sl"), ("so", "sl")) and h.n == g.n:
            return Embedding(lambda x: x, name)
        if h.kind == "sl" and g.kind == "sl" and h.n == g.n:
            return Embedding(lambda x: x, name)
        raise RealizationError(f"phi1 embedding {name} not in catalog")
    if label == "phi1+dual":
        if h.kind != "sl" or g.kind != "so" or g.n != 2 * h.n:
            raise RealizationError(f"phi1+dual embedding {name} not in catalog")
        n = h.n
        form = SMat(2 * n, 2 * n, {**{(i, n + i): 1 for i in range(n)}, **{(n + i, i): 1 for i in range(n)}})
        p = splitting_basis(form, "so")
        pinv = inverse(p)

        def block(x: SMat) -> SMat:
            d = dict(x.data)
            for (i, j), v in x.data.items():
                d[(n + j, n + i)] = -v
            return pinv @ SMat(2 * n, 2 * n, d) @ p

        return Embedding(block, name)
    if label == "phi2":
        if h.kind != "sl" or g.kind != "sl" or g.n != h.n * (h.n - 1) // 2:
            raise RealizationError(f"phi2 embedding {name} not in catalog")
        return Embedding(exterior_power(h.n, 2), name)
    if label == "std":
        if h.kind == "so" and g.kind == "so" and h.n <= g.n:
            psi = _std_isometry(h.n, g.n)
            jm, jn = split_form("so", h.n), split_form("so", g.n)
            back = jm @ psi.T @ jn
            return Embedding(lambda x: psi @ x @ back, name)
        if h.kind == g.kind and h.kind in ("sl", "sp") and h.n <= g.n:
            k = (g.n - h.n) // 2 if h.kind == "sp" else 0
            return Embedding(lambda x: SMat(g.n, g.n, {(i + k, j + k): v for (i, j), v in x.data.items()}), name)
        if h.kind in ("so", "sp") and g.kind == "sl" and h.n == g.n:
            return Embedding(lambda x: x, name)
        raise RealizationError(f"std embedding {name} not in catalog")
    if label == "tensor":
        dims = [p.defining_dim for p in parts]
        total = 1
        for d in dims:
            total *= d
        if total != g.defining_dim:
            raise RealizationError(f"tensor parts {dims} do not multiply to {g.defining_dim}")

        def slot(x: SMat) -> SMat:
            mats: list = [None] * len(parts)
            mats[part] = x
            return kron_sum(mats, dims)

        if g.kind == "sl":
            return Embedding(slot, name)
        if g.kind == "so":
            form = SMat.identity(1)
            for p in parts:
                if p.kind == "sl" and p.n == 2:
                    form = kron(form, split_form("sp", 2))
                    continue
                if p.kind not in ("sp", "so"):
                    raise RealizationError(f"tensor part {p} has no invariant form")
                form = kron(form, split_form(p.kind, p.n))
            pm = splitting_basis(form, "so")
            return Embedding(_conjugated(Realizer(total, slot), pm), name)
        raise RealizationError(name)
    raise RealizationError(f"unknown embedding label {label!r}")

