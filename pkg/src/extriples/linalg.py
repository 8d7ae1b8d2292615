"""Exact rational linear algebra.

Matrices are kept sparse (a dict keyed by ``(row, col)``) with
:class:`fractions.Fraction` or ``int`` entries.  Rank and kernel computations
clear denominators row by row and then run fraction-free elimination over the
integers, so nothing is ever rounded.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Number = int | Fraction


def _norm(x: Number) -> Number:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class SMat:
    """Square or rectangular sparse matrix with exact entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int | None = None, data: dict | None = None):
        self.rows = rows
        self.cols = rows if cols is None else cols
        self.data: dict[tuple[int, int], Number] = {}
        if data:
            for k, v in data.items():
                if v != 0:
                    self.data[k] = _norm(v)

    # construction -----------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "SMat":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def unit(cls, n: int, i: int, j: int, value: Number = 1) -> "SMat":
        return cls(n, n, {(i, j): value})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Number]]) -> "SMat":
        r = len(rows)
        c = len(rows[0]) if r else 0
        return cls(r, c, {(i, j): x for i, row in enumerate(rows) for j, x in enumerate(row) if x != 0})

    def to_dense(self) -> list[list[Number]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.data.items():
            out[i][j] = v
        return out

    def copy(self) -> "SMat":
        m = SMat(self.rows, self.cols)
        m.data = dict(self.data)
        return m

    # arithmetic -------------------------------------------------------
    def __add__(self, other: "SMat") -> "SMat":
        assert (self.rows, self.cols) == (other.rows, other.cols)
        out = dict(self.data)
        for k, v in other.data.items():
            s = out.get(k, 0) + v
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = _norm(s)
        m = SMat(self.rows, self.cols)
        m.data = out
        return m

    def __sub__(self, other: "SMat") -> "SMat":
        return self + other.scale(-1)

    def __neg__(self) -> "SMat":
        return self.scale(-1)

    def scale(self, c: Number) -> "SMat":
        m = SMat(self.rows, self.cols)
        if c != 0:
            m.data = {k: _norm(v * c) for k, v in self.data.items()}
        return m

    def __matmul__(self, other: "SMat") -> "SMat":
        assert self.cols == other.rows
        by_row: dict[int, list[tuple[int, Number]]] = {}
        for (k, j), v in other.data.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict[tuple[int, int], Number] = {}
        for (i, k), a in self.data.items():
            for j, b in by_row.get(k, ()):
                key = (i, j)
                out[key] = out.get(key, 0) + a * b
        return SMat(self.rows, other.cols, out)

    def bracket(self, other: "SMat") -> "SMat":
        return self @ other - other @ self

    def transpose(self) -> "SMat":
        return SMat(self.cols, self.rows, {(j, i): v for (i, j), v in self.data.items()})

    @property
    def T(self) -> "SMat":
        return self.transpose()

    def apply(self, vec: Sequence[Number]) -> list[Number]:
        out: list[Number] = [0] * self.rows
        for (i, j), v in self.data.items():
            x = vec[j]
            if x:
                out[i] += v * x
        return out

    def trace(self) -> Number:
        return sum((v for (i, j), v in self.data.items() if i == j), 0)

    def is_zero(self) -> bool:
        return not self.data

    def flat(self) -> list[Number]:
        out: list[Number] = [0] * (self.rows * self.cols)
        for (i, j), v in self.data.items():
            out[i * self.cols + j] = v
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SMat):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.data.items())))

    def __repr__(self) -> str:
        return f"SMat({self.rows}x{self.cols}, nnz={len(self.data)})"


def block_diag(blocks: Sequence[SMat]) -> SMat:
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    out: dict[tuple[int, int], Number] = {}
    r = c = 0
    for b in blocks:
        for (i, j), v in b.data.items():
            out[(r + i, c + j)] = v
        r += b.rows
        c += b.cols
    return SMat(n, m, out)


def kron(a: SMat, b: SMat) -> SMat:
    out = {}
    for (i, j), x in a.data.items():
        for (k, l), y in b.data.items():
            out[(i * b.rows + k, j * b.cols + l)] = x * y
    return SMat(a.rows * b.rows, a.cols * b.cols, out)


def kron_sum(mats: Sequence[SMat | None], dims: Sequence[int]) -> SMat:
    """Action of a Lie algebra element on a tensor product.

    ``mats[i]`` acts on the i-th tensor slot (``None`` means it acts by zero);
    the result is ``sum_i 1 (x) ... (x) mats[i] (x) ... (x) 1``.
    """
    total = 1
    for d in dims:
        total *= d
    out: dict[tuple[int, int], Number] = {}
    stride_after = [1] * len(dims)
    for i in range(len(dims) - 2, -1, -1):
        stride_after[i] = stride_after[i + 1] * dims[i + 1]
    for slot, m in enumerate(mats):
        if m is None or m.is_zero():
            continue
        d = dims[slot]
        s = stride_after[slot]
        blocks = total // (d * s)
        for (i, j), v in m.data.items():
            for hi in range(blocks):
                base = hi * d * s
                for lo in range(s):
                    key = (base + i * s + lo, base + j * s + lo)
                    out[key] = out.get(key, 0) + v
    return SMat(total, total, out)


# ----------------------------------------------------------------------
# integer row reduction


def _int_row(row: Iterable[Number]) -> list[int]:
    row = list(row)
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    out = [int(x * den) for x in row]
    g = 0
    for x in out:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if g > 1:
        out = [x // g for x in out]
    return out


def _reduce_gcd(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def echelon(rows: Sequence[Sequence[Number]], reduced: bool = False) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Returns the nonzero echelon rows (primitive integer vectors) together with
    their pivot columns.  With ``reduced=True`` the entries above each pivot
    are cleared as well.
    """
    work = [_int_row(r) for r in rows]
    work = [r for r in work if any(r)]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: list[int] = []
    done: list[list[int]] = []
    col = 0
    while work and col < ncols:
        idx = None
        best = None
        for k, r in enumerate(work):
            x = r[col]
            if x:
                ax = abs(x)
                if best is None or ax < best:
                    best, idx = ax, k
                    if ax == 1:
                        break
        if idx is None:
            col += 1
            continue
        piv = work.pop(idx)
        p = piv[col]
        nxt = []
        for r in work:
            f = r[col]
            if f:
                g = gcd(p, f)
                a, b = p // g, f // g
                r = [a * x - b * y for x, y in zip(r, piv)]
                if any(r):
                    nxt.append(_reduce_gcd(r))
            else:
                nxt.append(r)
        work = nxt
        done.append(piv)
        pivots.append(col)
        col += 1
    if reduced:
        for i in range(len(done) - 1, -1, -1):
            c = pivots[i]
            p = done[i][c]
            for k in range(i):
                f = done[k][c]
                if f:
                    g = gcd(p, f)
                    a, b = p // g, f // g
                    done[k] = _reduce_gcd([a * x - b * y for x, y in zip(done[k], done[i])])
    return done, pivots


def rank(rows: Sequence[Sequence[Number]]) -> int:
    return len(echelon(rows)[1])


def nullspace(rows: Sequence[Sequence[Number]], ncols: int | None = None) -> list[list[int]]:
    """Integer basis of ``{x : A x = 0}`` for the matrix with the given rows."""
    if ncols is None:
        ncols = len(rows[0])
    red, piv = echelon(rows, reduced=True)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        x: list[Fraction] = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, c in zip(red, piv):
            if r[f]:
                x[c] = Fraction(-r[f], r[c])
        basis.append(_int_row(x))
    return basis


def left_kernel_of_columns(vectors: Sequence[Sequence[Number]]) -> list[list[int]]:
    """Coefficient vectors ``c`` with ``sum_k c_k * vectors[k] = 0``."""
    if not vectors:
        return []
    n = len(vectors[0])
    cols = [[vectors[k][i] for k in range(len(vectors))] for i in range(n)]
    return nullspace(cols, len(vectors))


def solve(rows: Sequence[Sequence[Number]], rhs: Sequence[Number]) -> list[Fraction] | None:
    """One exact solution of ``A x = b`` or ``None`` when inconsistent."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = echelon(aug, reduced=True)
    if piv and piv[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for r, c in zip(red, piv):
        x[c] = Fraction(r[ncols], r[c])
    return x


class SpanReducer:
    """Incremental membership test for the span of a set of vectors."""

    def __init__(self, vectors: Iterable[Sequence[Number]] = ()):
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []
        for v in vectors:
            self.add(v)

    def _reduce(self, v: list[int]) -> list[int]:
        for r, c in zip(self.rows, self.pivots):
            f = v[c]
            if f:
                p = r[c]
                g = gcd(p, f)
                a, b = p // g, f // g
                v = _reduce_gcd([a * x - b * y for x, y in zip(v, r)])
        return v

    def contains(self, v: Sequence[Number]) -> bool:
        return not any(self._reduce(_int_row(v)))

    def add(self, v: Sequence[Number]) -> bool:
        """Add ``v``; returns True when it enlarged the span."""
        w = self._reduce(_int_row(v))
        for c, x in enumerate(w):
            if x:
                self.rows.append(w)
                self.pivots.append(c)
                return True
        return False

    @property
    def dim(self) -> int:
        return len(self.rows)


class Coordinates:
    """Coordinates of vectors with respect to a fixed independent list.

    A set of pivot positions is chosen once so that each later query only
    needs a small matrix-vector product.
    """

    def __init__(self, basis: Sequence[Sequence[Number]]):
        self.basis = [list(b) for b in basis]
        k = len(self.basis)
        _, pivots = echelon(self.basis)
        if len(pivots) != k:
            raise ValueError("basis vectors are dependent")
        self.pivots = pivots
        square = SMat(k, k, {(i, j): self.basis[j][p] for i, p in enumerate(pivots) for j in range(k)})
        self._inv = inverse(square)

    def __call__(self, vec: Sequence[Number], check: bool = True) -> list[Number]:
        rhs = [vec[p] for p in self.pivots]
        c = self._inv.apply(rhs)
        if check:
            n = len(vec)
            for i in range(n):
                s = sum((cj * b[i] for cj, b in zip(c, self.basis) if cj), 0)
                if s != vec[i]:
                    raise ValueError("vector is not in the span")
        return c


def restrict(mat: SMat, basis: Sequence[Sequence[Number]], coords: "Coordinates | None" = None) -> SMat:
    """Matrix of ``mat`` on the invariant subspace spanned by ``basis``.

    ``basis`` lists column vectors; raises ``ValueError`` if the subspace is
    not invariant.
    """
    coords = coords or Coordinates(basis)
    out: dict[tuple[int, int], Number] = {}
    for j, b in enumerate(basis):
        y = coords(mat.apply(b))
        for i, v in enumerate(y):
            if v:
                out[(i, j)] = v
    return SMat(len(basis), len(basis), out)


def inverse(m: SMat) -> SMat:
    n = m.rows
    dense = m.to_dense()
    aug = [[Fraction(x) for x in dense[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return SMat(n, n, {(i, j): aug[i][n + j] for i in range(n) for j in range(n) if aug[i][n + j] != 0})
