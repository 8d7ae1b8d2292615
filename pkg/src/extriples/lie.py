"""Root systems and highest-weight arithmetic for the simple types A-G.

Weights are given in the basis of fundamental weights with Bourbaki
numbering.  Everything is exact: the Weyl dimension formula is evaluated
with :class:`fractions.Fraction` over the positive roots generated from the
Cartan matrix.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class LieError(ValueError):
    pass


_VALID_RANKS = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 3,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _VALID_RANKS:
            raise LieError(f"unknown family {self.family!r}")
        if not _VALID_RANKS[self.family](self.rank):
            raise LieError(f"invalid rank {self.rank} for type {self.family}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def dim(self) -> int:
        return len(positive_roots(self)) * 2 + self.rank


class FormType(str, enum.Enum):
    ORTHOGONAL = "orthogonal"
    SYMPLECTIC = "symplectic"
    COMPLEX = "complex"


@dataclass(frozen=True, order=True)
class Irrep:
    algebra: SimpleType
    weight: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weight", tuple(int(x) for x in self.weight))
        if len(self.weight) != self.algebra.rank:
            raise LieError(f"weight {self.weight} has wrong length for {self.algebra}")
        if any(x < 0 for x in self.weight):
            raise LieError(f"weight {self.weight} is not dominant")

    @property
    def is_trivial(self) -> bool:
        return not any(self.weight)

    def __str__(self) -> str:
        return f"{self.algebra}{list(self.weight)}"


def fundamental(t: SimpleType, k: int) -> Irrep:
    """The k-th fundamental representation (1-based)."""
    w = [0] * t.rank
    w[k - 1] = 1
    return Irrep(t, tuple(w))


@lru_cache(maxsize=None)
def cartan_matrix(t: SimpleType) -> tuple[tuple[int, ...], ...]:
    """``A[i][j] = <alpha_i^vee, alpha_j>``."""
    r = t.rank
    a = [[0] * r for _ in range(r)]
    for i in range(r):
        a[i][i] = 2

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    f = t.family
    if f in "ABCD":
        for i in range(r - 1):
            link(i, i + 1)
        if f == "B":
            # alpha_r short
            link(r - 2, r - 1, aij=-1, aji=-2)
        elif f == "C":
            # alpha_r long
            link(r - 2, r - 1, aij=-2, aji=-1)
        elif f == "D":
            a[r - 2][r - 1] = a[r - 1][r - 2] = 0
            link(r - 3, r - 1)
    elif f == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, r - 1):
            link(i, i + 1)
    elif f == "F":
        link(0, 1)
        link(1, 2, aij=-1, aji=-2)
        link(2, 3)
    elif f == "G":
        # alpha_1 short
        link(0, 1, aij=-3, aji=-1)
    return tuple(tuple(row) for row in a)


@lru_cache(maxsize=None)
def root_lengths(t: SimpleType) -> tuple[int, ...]:
    """Squared lengths of the simple roots, normalised so short roots have 1 or 2."""
    f, r = t.family, t.rank
    if f in "ADE":
        return (2,) * r
    if f == "B":
        return (2,) * (r - 1) + (1,)
    if f == "C":
        return (1,) * (r - 1) + (2,)
    if f == "F":
        return (2, 2, 1, 1)
    return (2, 6)  # G2: alpha_1 short


def _ip(t: SimpleType, x, y) -> Fraction:
    a = cartan_matrix(t)
    ln = root_lengths(t)
    s = Fraction(0)
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if yj:
                s += xi * yj * Fraction(a[i][j] * ln[i], 2)
    return s


@lru_cache(maxsize=None)
def positive_roots(t: SimpleType) -> tuple[tuple[int, ...], ...]:
    """Positive roots as coefficient vectors in the simple roots."""
    r = t.rank
    a = cartan_matrix(t)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(r):
                pair = sum(beta[j] * a[i][j] for j in range(r))
                # p = largest p with beta - p alpha_i a root
                p = 0
                cur = list(beta)
                while True:
                    cur[i] -= 1
                    if tuple(cur) in roots:
                        p += 1
                    else:
                        break
                if p - pair > 0:
                    new = list(beta)
                    new[i] += 1
                    new = tuple(new)
                    if new not in roots:
                        roots.add(new)
                        nxt.append(new)
        layer = nxt
    return tuple(sorted(roots, key=lambda v: (sum(v), v)))


def _coroot_pairing(t: SimpleType, beta, lam) -> Fraction:
    """<lam, beta^vee> for lam in fundamental-weight coordinates."""
    ln = root_lengths(t)
    bl = _ip(t, beta, beta)
    return sum((Fraction(c * ln[j], 1) / bl * lam[j] for j, c in enumerate(beta)), Fraction(0))


def dim_irrep(r: Irrep) -> int:
    t = r.algebra
    num = Fraction(1)
    den = Fraction(1)
    shifted = [x + 1 for x in r.weight]
    rho = [1] * t.rank
    for beta in positive_roots(t):
        num *= _coroot_pairing(t, beta, shifted)
        den *= _coroot_pairing(t, beta, rho)
    d = num / den
    assert d.denominator == 1
    return int(d)


def _minus_w0(t: SimpleType) -> list[int]:
    r = t.rank
    perm = list(range(r))
    if t.family == "A":
        perm = perm[::-1]
    elif t.family == "D" and r % 2 == 1:
        perm[r - 2], perm[r - 1] = r - 1, r - 2
    elif t.family == "E" and r == 6:
        perm = [5, 1, 4, 3, 2, 0]
    return perm


def dual_weight(r: Irrep) -> Irrep:
    perm = _minus_w0(r.algebra)
    return Irrep(r.algebra, tuple(r.weight[perm[i]] for i in range(r.algebra.rank)))


def two_rho_check_pairing(r: Irrep) -> int:
    """<lambda, 2 rho^vee>: its parity decides the form type of a self-dual irrep."""
    t = r.algebra
    s = sum((_coroot_pairing(t, beta, r.weight) for beta in positive_roots(t)), Fraction(0))
    assert s.denominator == 1
    return int(s)


def form_type(r: Irrep) -> FormType:
    if dual_weight(r) != r:
        return FormType.COMPLEX
    if two_rho_check_pairing(r) % 2 == 0:
        return FormType.ORTHOGONAL
    return FormType.SYMPLECTIC


def highest_root(t: SimpleType) -> tuple[int, ...]:
    """Highest root in fundamental-weight coordinates (the adjoint weight)."""
    beta = positive_roots(t)[-1]
    a = cartan_matrix(t)
    return tuple(sum(beta[j] * a[i][j] for j in range(t.rank)) for i in range(t.rank))


def inverse_cartan(t: SimpleType) -> list[list[Fraction]]:
    a = cartan_matrix(t)
    n = t.rank
    aug = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def height(t: SimpleType, weight) -> Fraction:
    """Sum of the simple-root coordinates of a weight (used to order weights)."""
    # weight_i = sum_j A[i][j] c_j  =>  c = A^{-1} weight
    inv = inverse_cartan(t)
    n = t.rank
    return sum((inv[i][j] * weight[j] for i in range(n) for j in range(n)), Fraction(0))
