"""Explicit integral model of H*(G/B) and H*(G/P) = H*(G/B)^{W_L}.

The coinvariant algebra is handled through its Schubert basis ``X_w``
(divided differences applied to ``prod(alpha)/|W|``) and the dual expansion
functionals ``f -> constant term of d_w f``.  Cohomological degree ``2k``
corresponds to polynomial degree ``k``; every list indexed "by degree" in this
module is indexed by ``k``.

Action matrices act on column vectors of Schubert coordinates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from . import linalg
from .errors import BraidInconsistency, DimensionMismatch, NonIntegralEntry, NotPrime
from .polynomial import Polynomial, WeightRing, _mul, monomials
from .root_system import RootSystem
from .weyl_group import (RelativeWeylGroup, WeylElement, parabolic_subgroup,
                         relative_weyl_group, weyl_group)


def divided_difference(rs: RootSystem, i: int, f: Polynomial) -> Polynomial:
    """(f - s_i f) / alpha_i, exactly."""
    rs._check_index(i)
    ring = _ring(rs)
    return Polynomial(ring.divided_difference(i - 1, f.terms), f.nvars)


def act(rs: RootSystem, w: WeylElement, f: Polynomial) -> Polynomial:
    """The natural action of ``w`` on polynomials in the weight coordinates."""
    return Polynomial(_ring(rs).act_word(w.word, f.terms), f.nvars)


@lru_cache(maxsize=32)
def _ring(rs: RootSystem) -> WeightRing:
    return WeightRing(rs.cartan_matrix)


def _as_array(rows) -> np.ndarray:
    arr = np.array(rows, dtype=object)
    if arr.size and max(abs(int(x)) for x in arr.flat) < (1 << 62):
        return arr.astype(np.int64)
    return arr


def _safe_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.size and B.size and A.dtype != object and B.dtype != object:
        bound = int(np.abs(A).max()) * int(np.abs(B).max()) * A.shape[1]
        if bound < (1 << 62):
            return A @ B
    return np.asarray(A, dtype=object) @ np.asarray(B, dtype=object)


class CoinvariantModule:
    """H*(G/B; ZZ) with its Schubert basis and W-action.

    Construction is lazy: Schubert representatives, expansion functionals and
    action matrices are built on first use and cached.
    """

    def __init__(self, rs: RootSystem, check_braids: bool = True):
        self.rs = rs
        self.W = weyl_group(rs)
        self.ring = _ring(rs)
        self.check_braids = check_braids
        self.top = self.W.longest.length
        by_len = [[] for _ in range(self.top + 1)]
        for k, w in enumerate(self.W.elements):
            by_len[w.length].append(k)
        self.basis_index = by_len
        self._slot = {}
        for ks in by_len:
            for pos, k in enumerate(ks):
                self._slot[k] = pos
        self._rows = {}
        self._simple = {}

    # -- grading ------------------------------------------------------------

    @property
    def degrees(self) -> list[int]:
        """Cohomological degrees 0, 2, ..., 2N'."""
        return [2 * k for k in range(self.top + 1)]

    @property
    def basis_labels(self) -> list[list[WeylElement]]:
        return [[self.W.elements[k] for k in ks] for ks in self.basis_index]

    def dims(self) -> list[int]:
        return [len(ks) for ks in self.basis_index]

    # -- Schubert representatives --------------------------------------------

    @cached_property
    def _scaled_reps(self) -> dict:
        """|W| * X_w for every w, keyed by index in W."""
        W, rs, ring = self.W, self.rs, self.ring
        M = rs.num_positive
        top = {(0,) * rs.rank: 1}
        for r in rs.positive_roots:
            top = _mul(top, ring.root_coords_form(r))
        reps = {W.index(W.longest): top}
        for w in reversed(W.elements):
            k = W.index(w)
            if k in reps:
                continue
            ascents = [i for i in range(rs.rank) if w.perm[i] < M]
            first = None
            for i in ascents:
                cand = ring.divided_difference(i, reps[W.index(W.mul(w, W.simple[i]))])
                if first is None:
                    first = cand
                    if not self.check_braids:
                        break
                elif cand != first:
                    raise BraidInconsistency(
                        f"X_{w.word_str()} depends on the reduced word (ascent s{i + 1})")
            reps[k] = first
        if reps[0] != {(0,) * rs.rank: len(W)}:
            raise BraidInconsistency("X_e != 1")
        return reps

    def schubert_polynomial(self, w: WeylElement) -> Polynomial:
        return Polynomial(self._scaled_reps[self.W.index(w)], self.rs.rank) / len(self.W)

    # -- expansion functional ------------------------------------------------

    def _dd_columns(self, i: int, k: int):
        prev = {e: j for j, e in enumerate(monomials(self.rs.rank, k - 1))}
        return [[(prev[e], c) for e, c in self.ring.divided_difference(i, {m: 1}).items()]
                for m in monomials(self.rs.rank, k)]

    def rows(self, k: int) -> np.ndarray:
        """Matrix of the functionals f -> const(d_u f), u of length k, on degree-k monomials."""
        if k not in self._rows:
            if k == 0:
                self._rows[0] = np.ones((1, 1), dtype=np.int64)
            else:
                prev = self.rows(k - 1)
                W = self.W
                cols = {}
                out = []
                for u_idx in self.basis_index[k]:
                    u = W.elements[u_idx]
                    i = u.word[-1] - 1
                    parent = self._slot[W.index(W.mul(u, W.simple[i]))]
                    if i not in cols:
                        cols[i] = self._dd_columns(i, k)
                    pr = [int(x) for x in prev[parent]]
                    out.append([sum(c * pr[j] for j, c in col) for col in cols[i]])
                self._rows[k] = _as_array(out)
        return self._rows[k]

    def expand(self, f: Polynomial, k: int | None = None) -> list:
        """Schubert coordinates of a homogeneous polynomial (degree mismatch gives 0)."""
        if k is None:
            k = f.degree()
        if k < 0 or k > self.top:
            return []
        mons = {e: j for j, e in enumerate(monomials(self.rs.rank, k))}
        vec = [0] * len(mons)
        for e, c in f.terms.items():
            if sum(e) == k:
                vec[mons[e]] += c
        R = self.rows(k)
        return [sum(int(r) * v for r, v in zip(row, vec)) for row in R]

    # -- action matrices -----------------------------------------------------

    def _matrix_from_images(self, images, k):
        """Columns |W| * (images) expanded and divided by |W|, asserted integral."""
        mons = {e: j for j, e in enumerate(monomials(self.rs.rank, k))}
        F = [[0] * len(images) for _ in mons]
        for col, f in enumerate(images):
            for e, c in f.items():
                F[mons[e]][col] = c
        prod = _safe_matmul(self.rows(k), _as_array(F))
        order = len(self.W)
        out = np.empty(prod.shape, dtype=object)
        for idx, v in np.ndenumerate(prod):
            q, r = divmod(int(v), order)
            if r:
                raise NonIntegralEntry(f"entry {idx} in degree {2 * k} is {int(v)}/{order}")
            out[idx] = q
        return _as_array(out.tolist()) if out.size else np.zeros(out.shape, dtype=np.int64)

    def simple_matrix(self, i: int, k: int) -> np.ndarray:
        """Matrix of s_i (1-based) on the degree-2k piece."""
        key = (i, k)
        if key not in self._simple:
            reps = self._scaled_reps
            images = [self.ring.reflect(i - 1, reps[u]) for u in self.basis_index[k]]
            self._simple[key] = self._matrix_from_images(images, k)
        return self._simple[key]

    def direct_matrix(self, g: WeylElement, k: int) -> np.ndarray:
        """Matrix of g on degree 2k by acting on representatives and re-expanding."""
        reps = self._scaled_reps
        images = [self.ring.act_word(g.word, reps[u]) for u in self.basis_index[k]]
        return self._matrix_from_images(images, k)

    def element_matrices(self, elements, k: int) -> list[np.ndarray]:
        """Matrices of many elements in degree 2k, as products of simple matrices."""
        cache = {(): np.eye(len(self.basis_index[k]), dtype=np.int64)}

        def mat(word):
            if word not in cache:
                cache[word] = _safe_matmul(mat(word[:-1]), self.simple_matrix(word[-1], k))
            return cache[word]

        return [mat(tuple(w.word)) for w in elements]

    def to_json(self, k: int, g: WeylElement | None = None) -> str:
        """Dump one graded piece: ``{"degree", "basis", "matrix"}``."""
        M = self.direct_matrix(g, k) if g is not None else np.eye(len(self.basis_index[k]), dtype=int)
        return json.dumps({
            "degree": 2 * k,
            "basis": [list(self.W.elements[u].word) for u in self.basis_index[k]],
            "matrix": [[int(x) for x in row] for row in M],
        })


@lru_cache(maxsize=16)
def coinvariant_module(rs: RootSystem) -> CoinvariantModule:
    return CoinvariantModule(rs)


def schubert_basis(rs: RootSystem) -> CoinvariantModule:
    """The G/B module with every Schubert representative built (and braid-checked)."""
    cm = coinvariant_module(rs)
    cm._scaled_reps
    return cm


def action_matrices(cm: CoinvariantModule, g: WeylElement) -> list[np.ndarray]:
    """Per-degree integer matrices of ``g`` in the Schubert basis."""
    return [cm.direct_matrix(g, k) for k in range(cm.top + 1)]


# -- H*(G/P) ------------------------------------------------------------------


def poincare_quotient(W_poly: list[int], WL_poly: list[int]) -> list[int]:
    """Exact division W(t) / W_L(t) of integer polynomials (coefficient lists)."""
    num = list(W_poly)
    out = [0] * (len(num) - len(WL_poly) + 1)
    lead = WL_poly[0]
    for d in range(len(out)):
        q, r = divmod(num[d], lead)
        if r:
            raise DimensionMismatch("W_L(t) does not divide W(t)")
        out[d] = q
        for j, c in enumerate(WL_poly):
            num[d + j] -= q * c
    if any(num):
        raise DimensionMismatch("W_L(t) does not divide W(t)")
    return out


@dataclass
class InvariantLattice:
    """Saturated W_L-invariant sublattice of H*(G/B; ZZ) with the W(L)-action.

    ``bases[k]`` has the lattice basis as columns (Schubert coordinates);
    ``matrices[k][a]`` is the matrix of ``rwg.elements[a]`` on it.
    """

    J: tuple
    rwg: RelativeWeylGroup = field(repr=False)
    module: CoinvariantModule = field(repr=False)
    N: int = 0
    _bases: dict = field(default_factory=dict, repr=False)
    _matrices: dict = field(default_factory=dict, repr=False)

    @property
    def degrees(self) -> list[int]:
        return [2 * k for k in range(self.N + 1)]

    def basis(self, k: int) -> np.ndarray:
        if k not in self._bases:
            cm = self.module
            n = len(cm.basis_index[k])
            if not self.J:
                self._bases[k] = np.eye(n, dtype=np.int64)
            else:
                rows = []
                for j in self.J:
                    M = cm.simple_matrix(j, k)
                    rows += [[int(M[a][b]) - (a == b) for b in range(n)] for a in range(n)]
                ker = linalg.integer_kernel(rows, ncols=n)
                self._bases[k] = (np.array(ker, dtype=np.int64).T if ker
                                  else np.zeros((n, 0), dtype=np.int64))
        return self._bases[k]

    def dim(self, k: int) -> int:
        return self.basis(k).shape[1] if k <= self.module.top else 0

    def dims(self) -> list[int]:
        return [self.dim(k) for k in range(self.N + 1)]

    def matrices(self, k: int) -> list[np.ndarray]:
        """Matrices of every W(L) element on the degree-2k invariant lattice."""
        if k not in self._matrices:
            full = self.module.element_matrices(self.rwg.elements, k)
            K = self.basis(k)
            d = K.shape[1]
            if not self.J:
                self._matrices[k] = full
            elif d == 0:
                self._matrices[k] = [np.zeros((0, 0), dtype=np.int64) for _ in full]
            else:
                self._matrices[k] = self._restrict(full, K, k)
        return self._matrices[k]

    @staticmethod
    def _restrict(full, K, k):
        """Solve K X = M K for every M at once, using the triangular pivot block of K."""
        n, d = K.shape
        # columns of K are Hermite rows: column j has its pivot in row piv[j], and
        # every later column vanishes in that row
        piv = [int(np.flatnonzero(K[:, j])[0]) for j in range(d)]
        T = K[piv]
        imgs = np.concatenate([_safe_matmul(M, K) for M in full], axis=1)[piv]
        X = np.zeros_like(imgs, dtype=object)
        for i in range(d):
            rhs = imgs[i] - (np.asarray(T[i, :i], dtype=object) @ X[:i] if i else 0)
            piv_val = int(T[i, i])
            qr = [divmod(int(v), piv_val) for v in np.asarray(rhs, dtype=object).ravel()]
            if any(r for _, r in qr):
                raise NonIntegralEntry(f"W(L) action on lattice not integral in degree {2 * k}")
            X[i] = [q for q, _ in qr]
        out = [_as_array(X[:, a * d:(a + 1) * d].tolist()) for a in range(len(full))]
        for M, Xa in zip(full, out):
            if not np.array_equal(_safe_matmul(K, Xa), _safe_matmul(M, K)):
                raise DimensionMismatch(f"lattice not W(L)-stable in degree {2 * k}")
        return out

    def traces(self, a: int) -> list[int]:
        return [int(np.trace(self.matrices(k)[a])) if self.dim(k) else 0 for k in range(self.N + 1)]


def invariant_lattice(cm: CoinvariantModule, J, rwg: RelativeWeylGroup | None = None,
                      check: bool = True) -> InvariantLattice:
    """H*(G/P; ZZ) as the saturated W_L-fixed lattice, checked against W(t)/W_L(t)."""
    rs = cm.rs
    rwg = rwg if rwg is not None else relative_weyl_group(rs, J)
    J = rwg.parent_J
    N = rs.num_positive - len(rs.parabolic_positive_roots(J))
    il = InvariantLattice(J, rwg, cm, N)
    if check:
        expected = expected_dims(rs, J)
        got = [il.dim(k) for k in range(cm.top + 1)]
        if got[:len(expected)] != expected or any(got[len(expected):]):
            raise DimensionMismatch(f"invariant dims {got} != W(t)/W_L(t) = {expected}")
    return il


def expected_dims(rs: RootSystem, J) -> list[int]:
    W = weyl_group(rs)
    WL_poly = [0] * (max(w.length for w in parabolic_subgroup(rs, J)) + 1)
    for w in parabolic_subgroup(rs, J):
        WL_poly[w.length] += 1
    return poincare_quotient(W.length_polynomial(), WL_poly)


# -- reduction mod p ----------------------------------------------------------


def is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


@dataclass
class ModularAction:
    """Action matrices reduced mod p, keyed by degree k then by group element."""

    p: int
    elements: list
    matrices: dict

    def acts_trivially(self, a: int, k: int) -> bool:
        M = self.matrices[k][a]
        return np.array_equal(M, np.eye(M.shape[0], dtype=M.dtype) % self.p)

    def kernel(self) -> list[int]:
        return [a for a in range(len(self.elements))
                if all(self.acts_trivially(a, k) for k in self.matrices)]


def _mod(M, p):
    return (np.asarray(M) % p).astype(np.int64)


def reduce_mod_p(obj, p: int, degrees=None) -> ModularAction:
    """Reduce the action of a CoinvariantModule (all of W) or InvariantLattice (W(L)) mod p."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if isinstance(obj, InvariantLattice):
        ks = range(obj.N + 1) if degrees is None else degrees
        mats = {k: [_mod(M, p) for M in obj.matrices(k)] for k in ks}
        return ModularAction(p, list(obj.rwg.elements), mats)
    if isinstance(obj, CoinvariantModule):
        ks = range(obj.top + 1) if degrees is None else degrees
        mats = {k: [_mod(M, p) for M in obj.element_matrices(obj.W.elements, k)] for k in ks}
        return ModularAction(p, list(obj.W.elements), mats)
    raise TypeError(f"cannot reduce {type(obj).__name__}")
