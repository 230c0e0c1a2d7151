"""Graded characters of H*(G/B) and H*(G/P) from Molien series.

Everything here is independent of :mod:`relweyl.coinvariants`: the graded
trace of ``w`` on the coinvariant algebra is

    prod_i (1 - t^{d_i}) / det(1 - t M_w)

with the fundamental degrees ``d_i`` recovered by factoring the length
generating function of W.  Series are lists of Fractions indexed by
polynomial degree (cohomological degree is twice the index).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import FactorizationFailure, NotMultiplicative, NotOneDimensional
from .root_system import RootSystem
from .weyl_group import (RelativeWeylGroup, WeylElement, parabolic_subgroup,
                         relative_weyl_group, weyl_group)


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def series_div(num, den, n_terms: int):
    """Power series num/den truncated to ``n_terms`` coefficients (den[0] == 1)."""
    if den[0] != 1:
        raise ZeroDivisionError("denominator must have constant term 1")
    num = list(num) + [0] * max(0, n_terms - len(num))
    out = []
    for k in range(n_terms):
        c = num[k] - sum(den[j] * out[k - j] for j in range(1, min(k, len(den) - 1) + 1))
        out.append(c)
    return out


def factor_degrees(length_poly, rank: int) -> list[int]:
    """Fundamental degrees from sum_W t^l(w) = prod_i [d_i]_t."""
    q = list(length_poly)
    for _ in range(rank):
        q = poly_mul(q, [1, -1])
    degrees = []
    while len(q) > 1 or q[0] != 1:
        while len(q) > 1 and q[-1] == 0:
            q.pop()
        if len(q) == 1:
            break
        d = next(k for k in range(1, len(q)) if q[k] != 0)
        if q[d] >= 0:
            raise FactorizationFailure(f"unexpected coefficient {q[d]} at t^{d}")
        if d < 2:
            raise FactorizationFailure("a fundamental degree of 1 means the rank is too large")
        # divide by 1 - t^d
        res = [0] * len(q)
        rem = list(q)
        for k in range(len(q) - d):
            res[k] = rem[k]
            rem[k + d] += rem[k]
            rem[k] = 0
        if any(rem):
            raise FactorizationFailure(f"1 - t^{d} does not divide the remaining product")
        q = res[:len(q) - d]
        degrees.append(d)
        if len(degrees) > rank:
            raise FactorizationFailure("more factors than the rank")
    if len(degrees) != rank or q != [1]:
        raise FactorizationFailure(f"degrees {degrees} do not account for the rank {rank}")
    return sorted(degrees)


@lru_cache(maxsize=64)
def fundamental_degrees(rs: RootSystem) -> tuple:
    return tuple(factor_degrees(weyl_group(rs).length_polynomial(), rs.rank))


def det_one_minus_t(M) -> list:
    """Coefficients of det(I - t M) via Faddeev-LeVerrier."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    c_prev = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I ; c_k = -tr(A M_k) / k
        Mk = [[sum(A[i][l] * Mk[l][j] for l in range(n)) + (c_prev if i == j else 0)
               for j in range(n)] for i in range(n)]
        AM_trace = sum(A[i][l] * Mk[l][i] for i in range(n) for l in range(n))
        c_prev = -AM_trace / k
        coeffs.append(c_prev)
    return coeffs


def molien_graded_trace(rs: RootSystem, w: WeylElement, max_degree: int | None = None) -> list:
    """Graded trace of ``w`` on the coinvariant algebra, t^k <-> degree 2k."""
    if max_degree is None:
        max_degree = rs.num_positive
    full = _molien(rs, w)
    return full[:max_degree + 1] + [Fraction(0)] * max(0, max_degree - rs.num_positive)


@lru_cache(maxsize=65536)
def _molien(rs: RootSystem, w: WeylElement) -> list:
    num = [1]
    for d in fundamental_degrees(rs):
        num = poly_mul(num, [1] + [0] * (d - 1) + [-1])
    series = series_div(num, det_one_minus_t(w.matrix), rs.num_positive + 1)
    return [Fraction(x) for x in series]


def partial_flag_character(rs: RootSystem, J, rwg: RelativeWeylGroup, w: WeylElement,
                           max_degree: int | None = None) -> list:
    """Graded trace of ``w`` in W(L) on H*(G/P) = H*(G/B)^{W_L}, by averaging over W_L."""
    W = weyl_group(rs)
    WL = parabolic_subgroup(rs, rwg.parent_J if J is None else J)
    N = rs.num_positive - len(rs.parabolic_positive_roots(rwg.parent_J))
    top = rs.num_positive if max_degree is None else max_degree
    total = [Fraction(0)] * (top + 1)
    for u in WL:
        s = molien_graded_trace(rs, W.mul(w, u), top)
        total = [a + b for a, b in zip(total, s)]
    out = [x / len(WL) for x in total]
    if any(out[N + 1:]):
        raise FactorizationFailure(f"character of {w.word_str()} nonzero above degree {2 * N}")
    return out[:N + 1] if max_degree is None else out


@dataclass
class GradedCharacter:
    """Traces of W(L) on H^{2k}(G/P), one row of degree-indexed values per class."""

    group: RelativeWeylGroup = field(repr=False)
    N: int
    rows: list  # rows[class][k]

    @property
    def values(self) -> dict:
        """{(cohomological degree, class index): trace}."""
        return {(2 * k, c): v for c, row in enumerate(self.rows) for k, v in enumerate(row)}

    def trace(self, degree: int, element: int) -> Fraction:
        """Trace of ``group.elements[element]`` on H^degree (degree even)."""
        if degree % 2 or degree < 0 or degree > 2 * self.N:
            return Fraction(0)
        return self.rows[self.group.class_of[element]][degree // 2]

    def dims(self) -> list[int]:
        return [int(x) for x in self.rows[self.group.class_of[0]]]


@lru_cache(maxsize=256)
def _graded_character(rs: RootSystem, J: tuple) -> GradedCharacter:
    rwg = relative_weyl_group(rs, J)
    N = rs.num_positive - len(rs.parabolic_positive_roots(rwg.parent_J))
    rows = [partial_flag_character(rs, J, rwg, rwg.elements[c[0]]) for c in rwg.conjugacy_classes]
    return GradedCharacter(rwg, N, rows)


def graded_character(rs: RootSystem, J) -> GradedCharacter:
    return _graded_character(rs, relative_weyl_group(rs, J).parent_J)


@dataclass
class EpsilonCharacter:
    """The character of W(L) on the top-degree line H^{2N}(G/P)."""

    group: RelativeWeylGroup = field(repr=False)
    values: list  # per conjugacy class

    def __call__(self, element: int) -> Fraction:
        return self.values[self.group.class_of[element]]


def epsilon_U(rs: RootSystem, J, rwg: RelativeWeylGroup | None = None,
              lattice=None) -> EpsilonCharacter:
    """epsilon_U from the top Molien coefficient; optionally checked on an explicit lattice.

    ``lattice`` is an :class:`~relweyl.coinvariants.InvariantLattice` whose
    top-degree traces must agree exactly.
    """
    rwg = rwg if rwg is not None else relative_weyl_group(rs, J)
    chi = graded_character(rs, rwg.parent_J)
    values = [row[chi.N] for row in chi.rows]
    if values[rwg.class_of[0]] != 1:
        raise NotOneDimensional(f"dim H^{2 * chi.N}(G/P) = {values[rwg.class_of[0]]}")
    eps = EpsilonCharacter(rwg, values)
    n = len(rwg)
    if n <= 400:
        table = rwg.mult_table
        pairs = ((a, b, table[a][b]) for a in range(n) for b in range(n))
    else:
        # checking generator x element pairs already proves multiplicativity
        pairs = ((g, x, rwg.mul(g, x)) for g in rwg.generators for x in range(n))
    for a, b, ab in pairs:
        if eps(ab) != eps(a) * eps(b):
            raise NotMultiplicative(f"eps(ab) != eps(a)eps(b) for {rwg.elements[a].word}, "
                                    f"{rwg.elements[b].word}")
    if any(v not in (1, -1) for v in values):
        raise NotMultiplicative(f"epsilon takes values outside +-1: {values}")
    if lattice is not None:
        for c in rwg.conjugacy_classes:
            explicit = lattice.traces(c[0])[chi.N]
            if explicit != eps(c[0]):
                raise NotMultiplicative(
                    f"Molien and lattice disagree on epsilon({rwg.elements[c[0]].word}): "
                    f"{eps(c[0])} vs {explicit}")
    return eps


@dataclass
class GroupAlgebraElement:
    """Finitely supported combination of W(L) elements, keyed by element index."""

    coefficients: dict

    @classmethod
    def basis(cls, index: int) -> "GroupAlgebraElement":
        return cls({index: Fraction(1)})

    def __add__(self, other):
        out = dict(self.coefficients)
        for k, v in other.coefficients.items():
            out[k] = out.get(k, 0) + v
        return GroupAlgebraElement({k: v for k, v in out.items() if v})

    def __eq__(self, other):
        return isinstance(other, GroupAlgebraElement) and (
            {k: v for k, v in self.coefficients.items() if v}
            == {k: v for k, v in other.coefficients.items() if v})


def lambda_U(eps: EpsilonCharacter, x: GroupAlgebraElement) -> GroupAlgebraElement:
    """w -> eps(w) w, extended linearly."""
    return GroupAlgebraElement({k: eps(k) * v for k, v in x.coefficients.items() if v})


def rational_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def character_json(rs: RootSystem, J) -> dict:
    chi = graded_character(rs, J)
    rwg = chi.group
    eps = epsilon_U(rs, rwg.parent_J, rwg)
    return {
        "type": str(rs.cartan_type),
        "J": list(rwg.parent_J),
        "degrees": [2 * k for k in range(chi.N + 1)],
        "classes": [[list(rwg.elements[i].word) for i in c] for c in rwg.conjugacy_classes],
        "graded_traces": [[rational_str(v) for v in row] for row in chi.rows],
        "epsilon": [rational_str(v) for v in eps.values],
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
