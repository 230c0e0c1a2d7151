"""Polynomials in fundamental-weight coordinates and the W-action on them.

Variables ``x_1..x_n`` are the fundamental weights, so a simple root is the
linear form ``alpha_i = sum_k A[k][i] x_k`` and the simple reflection acts by
``s_i(x_i) = x_i - alpha_i`` while fixing every other variable.  The kernels
below work on plain ``{exponent tuple: coefficient}`` dicts so that integer
and rational coefficients share one code path.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb


class Polynomial:
    """Sparse polynomial with rational coefficients; zero terms are never stored."""

    __slots__ = ("nvars", "terms")

    def __init__(self, terms=None, nvars: int | None = None):
        terms = dict(terms or {})
        if nvars is None:
            if not terms:
                raise ValueError("nvars is required for the zero polynomial")
            nvars = len(next(iter(terms)))
        self.nvars = nvars
        self.terms = {tuple(e): Fraction(c) for e, c in terms.items() if c != 0}

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        """The coordinate ``x_i`` (1-based)."""
        return cls({tuple(int(k == i - 1) for k in range(nvars)): 1}, nvars)

    @classmethod
    def linear(cls, coeffs) -> "Polynomial":
        n = len(coeffs)
        return cls({tuple(int(k == i) for k in range(n)): c for i, c in enumerate(coeffs)}, n)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.nvars)
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.nvars)
        return Polynomial(_add(self.terms, other.terms), self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Polynomial(_mul(self.terms, other.terms), self.nvars)
        return Polynomial({e: c * other for e, c in self.terms.items()}, self.nvars)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / Fraction(scalar))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)


def _add(f: dict, g: dict) -> dict:
    out = dict(f)
    for e, c in g.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mul(f: dict, g: dict) -> dict:
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                del out[e]
    return out


class WeightRing:
    """Divided differences and reflections for one Cartan matrix.

    ``cartan_matrix[i][j]`` is ``<alpha_j, alpha_i^vee>``; see
    :mod:`relweyl.root_system`.
    """

    def __init__(self, cartan_matrix):
        self.A = tuple(tuple(row) for row in cartan_matrix)
        self.n = len(self.A)
        self._dd_cache = {}
        self._refl_cache = {}

    def root_form(self, i: int) -> dict:
        """alpha_i (0-based ``i``) as a linear form in the weight coordinates."""
        n = self.n
        return {tuple(int(k == j) for k in range(n)): self.A[j][i]
                for j in range(n) if self.A[j][i]}

    def root_coords_form(self, coords) -> dict:
        """A root given in the simple-root basis, as a linear form."""
        n = self.n
        lin = [sum(coords[j] * self.A[k][j] for j in range(n)) for k in range(n)]
        return {tuple(int(k == m) for k in range(n)): c for m, c in enumerate(lin) if c}

    def _y(self, i: int) -> dict:
        # s_i(x_i) = y_i - x_i
        n = self.n
        return {tuple(int(k == j) for k in range(n)): -self.A[j][i]
                for j in range(n) if j != i and self.A[j][i]}

    def _power(self, f: dict, m: int) -> dict:
        out = {(0,) * self.n: 1}
        for _ in range(m):
            out = _mul(out, f)
        return out

    def reflected_power(self, i: int, m: int) -> dict:
        """(y_i - x_i)^m, the image of x_i^m under s_i."""
        key = (i, m)
        if key not in self._refl_cache:
            n = self.n
            base = _add(self._y(i), {tuple(int(k == i) for k in range(n)): -1})
            self._refl_cache[key] = self._power(base, m)
        return self._refl_cache[key]

    def dd_power(self, i: int, m: int) -> dict:
        """The divided difference of x_i^m along alpha_i."""
        key = (i, m)
        if key not in self._dd_cache:
            n = self.n
            xi = tuple(int(k == i) for k in range(n))
            out = {}
            for a in range(m):
                term = self.reflected_power(i, m - 1 - a)
                shift = {tuple(e[k] + a * xi[k] for k in range(n)): c for e, c in term.items()}
                out = _add(out, shift)
            self._dd_cache[key] = out
        return self._dd_cache[key]

    def divided_difference(self, i: int, f: dict) -> dict:
        """(f - s_i f) / alpha_i for 0-based ``i``."""
        out = {}
        for e, c in f.items():
            m = e[i]
            if m == 0:
                continue
            rest = e[:i] + (0,) + e[i + 1:]
            for e2, c2 in self.dd_power(i, m).items():
                key = tuple(a + b for a, b in zip(rest, e2))
                v = out.get(key, 0) + c * c2
                if v:
                    out[key] = v
                else:
                    del out[key]
        return out

    def reflect(self, i: int, f: dict) -> dict:
        """s_i applied to f (0-based ``i``)."""
        out = {}
        for e, c in f.items():
            m = e[i]
            if m == 0:
                out[e] = out.get(e, 0) + c
                if not out[e]:
                    del out[e]
                continue
            rest = e[:i] + (0,) + e[i + 1:]
            for e2, c2 in self.reflected_power(i, m).items():
                key = tuple(a + b for a, b in zip(rest, e2))
                v = out.get(key, 0) + c * c2
                if v:
                    out[key] = v
                else:
                    del out[key]
        return out

    def act_word(self, word, f: dict) -> dict:
        """(s_{w1} ... s_{wk}) f for a word of 1-based labels."""
        for i in reversed(word):
            f = self.reflect(i - 1, f)
        return f


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple:
    """All exponent vectors of the given total degree, in descending lex order."""
    if nvars == 1:
        return ((degree,),)
    out = []
    for a in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - a):
            out.append((a,) + rest)
    return tuple(out)


def num_monomials(nvars: int, degree: int) -> int:
    return comb(degree + nvars - 1, nvars - 1)
