"""Finite crystallographic root systems in the simple-root basis.

Conventions: simple roots are labelled ``1..rank`` (Bourbaki numbering), a
root is a tuple of integer coordinates in the simple-root basis, and the
Cartan matrix entry ``A[i][j]`` is ``<alpha_j, alpha_i^vee>`` so that::

    s_i(r) = r - (sum_j A[i][j] * r_j) * alpha_i

The invariant form is the symmetrized Cartan matrix scaled so that short
roots have squared length 2.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import NotARoot, UnsupportedType

Root = tuple  # tuple[int, ...] in the simple-root basis

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
_EXCEPTIONAL_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}

# the grid on which exhaustive verification over W is promised; larger types
# still build and enumerate up to the |W| bound of relweyl.weyl_group
SUPPORTED_TYPES = tuple(
    [f"A{n}" for n in range(1, 7)] + [f"B{n}" for n in range(2, 7)]
    + [f"C{n}" for n in range(3, 7)] + [f"D{n}" for n in range(4, 7)] + ["E6", "F4", "G2"])


@dataclass(frozen=True, order=True)
class CartanType:
    series: str
    rank: int

    def __post_init__(self):
        if self.series not in "ABCDEFG" or len(self.series) != 1:
            raise UnsupportedType(f"unknown series {self.series!r}")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise UnsupportedType(f"bad rank {self.rank!r}")
        if self.series in _MIN_RANK:
            if self.rank < _MIN_RANK[self.series]:
                raise UnsupportedType(
                    f"{self.series}{self.rank}: rank must be >= {_MIN_RANK[self.series]}")
        elif self.rank not in _EXCEPTIONAL_RANKS[self.series]:
            raise UnsupportedType(f"{self.series}{self.rank} is not a Cartan type")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        """Parse strings such as ``"A3"``, ``"g2"`` or ``"B 4"``."""
        m = re.fullmatch(r"\s*([A-Za-z])\s*_?\s*(\d+)\s*", str(text))
        if m is None:
            raise UnsupportedType(f"cannot parse Cartan type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self):
        return f"{self.series}{self.rank}"


def _symmetric_form(ct: CartanType) -> list[list[int]]:
    """Gram matrix (alpha_i, alpha_j) with short roots of squared length 2."""
    n = ct.rank
    B = [[0] * n for _ in range(n)]

    def link(i, j, value):
        B[i - 1][j - 1] = B[j - 1][i - 1] = value

    s = ct.series
    if s == "A":
        for i in range(1, n + 1):
            B[i - 1][i - 1] = 2
        for i in range(1, n):
            link(i, i + 1, -1)
    elif s == "B":
        # alpha_n short
        for i in range(1, n):
            B[i - 1][i - 1] = 4
            if i < n - 1:
                link(i, i + 1, -2)
        B[n - 1][n - 1] = 2
        link(n - 1, n, -2)
    elif s == "C":
        # alpha_n long
        for i in range(1, n):
            B[i - 1][i - 1] = 2
            if i < n - 1:
                link(i, i + 1, -1)
        B[n - 1][n - 1] = 4
        link(n - 1, n, -2)
    elif s == "D":
        for i in range(1, n + 1):
            B[i - 1][i - 1] = 2
        for i in range(1, n - 1):
            link(i, i + 1, -1)
        link(n - 2, n, -1)
    elif s == "E":
        for i in range(1, n + 1):
            B[i - 1][i - 1] = 2
        link(1, 3, -1)
        link(2, 4, -1)
        for i in range(3, n):
            link(i, i + 1, -1)
    elif s == "F":
        B[0][0] = B[1][1] = 4
        B[2][2] = B[3][3] = 2
        link(1, 2, -2)
        link(2, 3, -2)
        link(3, 4, -1)
    elif s == "G":
        # alpha_1 short, alpha_2 long
        B[0][0], B[1][1] = 2, 6
        link(1, 2, -3)
    return B


def _leading_minors_positive(M) -> bool:
    n = len(M)
    for k in range(1, n + 1):
        if _det([row[:k] for row in M[:k]]) <= 0:
            return False
    return True


def _det(M) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                for k in range(c, n):
                    A[r][k] -= f * A[c][k]
    return det


@dataclass(frozen=True)
class RootSystem:
    cartan_type: CartanType
    cartan_matrix: tuple
    positive_roots: tuple
    bilinear_form: tuple
    _index: dict = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @cached_property
    def roots(self) -> tuple:
        """All roots: positive roots first, then their negatives in the same order."""
        return self.positive_roots + tuple(tuple(-c for c in r) for r in self.positive_roots)

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    def simple_root(self, i: int) -> Root:
        self._check_index(i)
        return tuple(int(k == i - 1) for k in range(self.rank))

    def index(self, r: Root) -> int:
        """Position of ``r`` in :attr:`roots`."""
        r = tuple(r)
        if r in self._index:
            return self._index[r]
        neg = tuple(-c for c in r)
        if neg in self._index:
            return self._index[neg] + self.num_positive
        raise NotARoot(f"{r} is not a root of {self.cartan_type}")

    def is_root(self, r) -> bool:
        try:
            self.index(r)
        except NotARoot:
            return False
        return True

    def pairing(self, r: Root, i: int) -> int:
        """<r, alpha_i^vee>."""
        row = self.cartan_matrix[i - 1]
        return sum(a * c for a, c in zip(row, r))

    def form(self, r: Root, q: Root) -> Fraction:
        B = self.bilinear_form
        return sum((B[a][b] * r[a] * q[b] for a in range(self.rank) for b in range(self.rank)),
                   Fraction(0))

    def height(self, r: Root) -> int:
        return sum(r)

    def parabolic_positive_roots(self, J) -> tuple:
        """Positive roots supported on the simple roots labelled by ``J``."""
        allowed = {j - 1 for j in J}
        return tuple(r for r in self.positive_roots
                     if all(c == 0 for k, c in enumerate(r) if k not in allowed))

    def exponents(self) -> list[int]:
        """Exponents read off from the height partition of the positive roots."""
        counts = {}
        for r in self.positive_roots:
            counts[sum(r)] = counts.get(sum(r), 0) + 1
        top = max(counts)
        out = []
        for m in range(1, top + 1):
            out += [m] * (counts.get(m, 0) - counts.get(m + 1, 0))
        return out

    def weyl_order(self) -> int:
        """|W| from the exponents, without enumerating the group."""
        return math.prod(m + 1 for m in self.exponents())

    def _check_index(self, i):
        if not (isinstance(i, int) and 1 <= i <= self.rank):
            raise IndexError(f"simple root index {i!r} out of range 1..{self.rank}")


def _reflect_coords(A, i0: int, r: tuple) -> tuple:
    c = sum(a * x for a, x in zip(A[i0], r))
    if c == 0:
        return r
    out = list(r)
    out[i0] -= c
    return tuple(out)


def build_root_system(ct) -> RootSystem:
    """Build the root system of ``ct`` (a :class:`CartanType` or a string like ``"A3"``)."""
    if not isinstance(ct, CartanType):
        ct = CartanType.parse(ct)
    n = ct.rank
    B = _symmetric_form(ct)
    A = tuple(tuple(2 * B[i][j] // B[i][i] for j in range(n)) for i in range(n))
    form = tuple(tuple(Fraction(x) for x in row) for row in B)
    if not _leading_minors_positive(B):
        raise UnsupportedType(f"form of {ct} is not positive definite")

    simple = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                q = _reflect_coords(A, i, r)
                if q not in found and all(c >= 0 for c in q):
                    found.add(q)
                    nxt.append(q)
        frontier = nxt
    # height, then descending lex: alpha_1..alpha_n occupy indices 0..n-1
    positive = tuple(sorted(found, key=lambda r: (sum(r), tuple(-c for c in r))))
    index = {r: k for k, r in enumerate(positive)}
    return RootSystem(ct, A, positive, form, index)


def reflect(rs: RootSystem, i: int, r: Root) -> Root:
    """Apply the simple reflection ``s_i`` to the root ``r``."""
    rs._check_index(i)
    r = tuple(r)
    rs.index(r)  # raises NotARoot
    return _reflect_coords(rs.cartan_matrix, i - 1, r)
