"""Weyl groups, parabolic subgroups, normalizers and relative Weyl groups.

Elements are canonicalized by the permutation they induce on the full root
list of a :class:`~relweyl.root_system.RootSystem` (positive roots first, then
negatives), so equality is permutation equality and no reduced-word normal
form is needed.  Words use the 1-based simple-root labels: ``(2, 1, 3, 2)``
is ``s_2 s_1 s_3 s_2``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from operator import itemgetter

from . import linalg
from .errors import TooLarge
from .root_system import RootSystem

DEFAULT_MAX_ORDER = 10**6


def max_order() -> int:
    """Enumeration bound on |W|; ``RELWEYL_MAX_ORDER`` overrides the default."""
    value = os.environ.get("RELWEYL_MAX_ORDER")
    return int(value) if value else DEFAULT_MAX_ORDER


@dataclass(frozen=True, eq=False)
class WeylElement:
    perm: tuple
    length: int
    word: tuple = ()
    roots: tuple = field(default=(), repr=False)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    @cached_property
    def matrix(self) -> tuple:
        """Integer matrix in the simple-root basis; column j is w(alpha_j)."""
        rank = len(self.roots[0])
        cols = [self.roots[self.perm[j]] for j in range(rank)]
        return tuple(tuple(cols[j][i] for j in range(rank)) for i in range(rank))

    def __call__(self, root):
        """Image of a root (given by coordinates)."""
        return self.roots[self.perm[self.roots.index(tuple(root))]]

    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    def word_str(self) -> str:
        return "".join(f"s{i}" for i in self.word) or "e"


class WeylGroup:
    """The full Weyl group of a root system, enumerated breadth-first by length.

    Within a length level the elements are ordered by their lexicographically
    smallest reduced word, which is also the word stored on each element.
    """

    def __init__(self, rs: RootSystem, bound: int | None = None):
        bound = max_order() if bound is None else bound
        if rs.weyl_order() > bound:
            raise TooLarge(f"|W({rs.cartan_type})| = {rs.weyl_order()} exceeds bound {bound}")
        self.rs = rs
        roots = rs.roots
        M = rs.num_positive
        self._M = M
        self.simple_perms = []
        for i in range(rs.rank):
            A = rs.cartan_matrix
            perm = []
            for r in roots:
                c = sum(a * x for a, x in zip(A[i], r))
                q = list(r)
                q[i] -= c
                perm.append(rs.index(tuple(q)))
            self.simple_perms.append(tuple(perm))
        self._getters = [itemgetter(*p) for p in self.simple_perms]

        ident = tuple(range(len(roots)))
        self.elements = [WeylElement(ident, 0, (), roots)]
        self._pos = {ident: 0}
        level = [self.elements[0]]
        while level:
            nxt = []
            for w in level:
                for i in range(rs.rank):
                    if w.perm[i] >= M:
                        continue  # w(alpha_i) < 0, so w s_i is shorter
                    p = self._getters[i](w.perm)
                    if p in self._pos:
                        continue
                    if len(self.elements) >= bound:
                        raise TooLarge(f"enumeration of W({rs.cartan_type}) exceeded {bound}")
                    x = WeylElement(p, w.length + 1, w.word + (i + 1,), roots)
                    self._pos[p] = len(self.elements)
                    self.elements.append(x)
                    nxt.append(x)
            level = nxt
        self.identity = self.elements[0]
        self.simple = [self.element(p) for p in self.simple_perms]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self, w: WeylElement) -> int:
        return self._pos[w.perm]

    def element(self, perm) -> WeylElement:
        return self.elements[self._pos[tuple(perm)]]

    def mul(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self.element(itemgetter(*b.perm)(a.perm))

    def inverse(self, a: WeylElement) -> WeylElement:
        inv = [0] * len(a.perm)
        for k, v in enumerate(a.perm):
            inv[v] = k
        return self.element(inv)

    def conjugate(self, g: WeylElement, x: WeylElement) -> WeylElement:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inverse(g))

    def from_word(self, word) -> WeylElement:
        perm = self.identity.perm
        for i in word:
            perm = self._getters[i - 1](perm)
        return self.element(perm)

    @cached_property
    def longest(self) -> WeylElement:
        return self.elements[-1]

    def length_polynomial(self) -> list[int]:
        """Coefficients of sum_w t^l(w)."""
        coeffs = [0] * (self.longest.length + 1)
        for w in self.elements:
            coeffs[w.length] += 1
        return coeffs

    def inversion_count(self, w: WeylElement) -> int:
        return sum(1 for k in range(self._M) if w.perm[k] >= self._M)

    def acts_on_form(self, w: WeylElement) -> bool:
        """Check that the matrix of ``w`` preserves the invariant form."""
        B = [list(row) for row in self.rs.bilinear_form]
        Mw = [list(r) for r in w.matrix]
        return linalg.matmul(linalg.matmul(linalg.transpose(Mw), B), Mw) == B


@lru_cache(maxsize=32)
def weyl_group(rs: RootSystem) -> WeylGroup:
    return WeylGroup(rs)


def enumerate_weyl(rs: RootSystem) -> list[WeylElement]:
    """All elements of W, identity first, breadth-first by length."""
    return list(weyl_group(rs).elements)


def _normalize_J(rs: RootSystem, J) -> tuple:
    J = tuple(sorted(set(int(j) for j in J)))
    for j in J:
        rs._check_index(j)
    return J


def _closure(W: WeylGroup, gens) -> list[WeylElement]:
    seen = {W.identity.perm}
    out = [W.identity]
    frontier = [W.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = W.mul(x, g)
                if y.perm not in seen:
                    seen.add(y.perm)
                    out.append(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(out, key=W.index)


def parabolic_subgroup(rs: RootSystem, J) -> list[WeylElement]:
    """The subgroup W_L generated by the simple reflections s_j, j in J."""
    W = weyl_group(rs)
    J = _normalize_J(rs, J)
    return _closure(W, [W.simple[j - 1] for j in J])


def normalizer(rs: RootSystem, J) -> list[WeylElement]:
    """N_W(W_L), by brute force over W."""
    W = weyl_group(rs)
    J = _normalize_J(rs, J)
    WL = {w.perm for w in parabolic_subgroup(rs, J)}
    gens = [W.simple[j - 1] for j in J]
    return [w for w in W if all(W.conjugate(w, s).perm in WL for s in gens)]


def preserves(w: WeylElement, root_indices) -> bool:
    idx = set(root_indices)
    return {w.perm[k] for k in idx} == idx


class RelativeWeylGroup:
    """W(L) = {s in N_W(W_L) : s(Phi_L^+) = Phi_L^+}, with its finite-group data.

    ``elements[0]`` is the identity; ``mult_table[a][b]`` is the index of
    ``elements[a] * elements[b]`` (built on first access).  ``generators`` is a
    greedy generating set (first elements in W-order not already generated)
    and ``word_lengths`` are the lengths with respect to it.
    """

    def __init__(self, parent_J: tuple, elements: list, weyl: WeylGroup):
        self.parent_J = parent_J
        self.elements = elements
        self.weyl = weyl
        self._pos = {w.perm: k for k, w in enumerate(elements)}
        self.inverse = [self._pos[weyl.inverse(w).perm] for w in elements]
        self.generators = self._greedy_generators()
        self.word_lengths = self._bfs_lengths(self.generators)
        self.conjugacy_classes, self.class_of = self._classes()

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return (f"RelativeWeylGroup(J={self.parent_J}, order={len(self)}, "
                f"generators={self.generator_words()})")

    def index(self, w: WeylElement) -> int:
        return self._pos[w.perm]

    def mul(self, a: int, b: int) -> int:
        return self._pos[self.weyl.mul(self.elements[a], self.elements[b]).perm]

    @cached_property
    def mult_table(self) -> list:
        return [[self.mul(a, b) for b in range(len(self))] for a in range(len(self))]

    def generator_words(self):
        return [self.elements[g].word for g in self.generators]

    def class_representatives(self) -> list[int]:
        return [c[0] for c in self.conjugacy_classes]

    def closure(self, gens) -> set:
        """Indices of the subgroup generated by the given element indices."""
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for y in frontier:
                for g in gens:
                    z = self.mul(y, g)
                    if z not in seen:
                        seen.add(z)
                        nxt.append(z)
            frontier = nxt
        return seen

    def _greedy_generators(self):
        gens = []
        generated = {0}
        for x in range(len(self)):
            if x in generated:
                continue
            gens.append(x)
            generated = self.closure(gens)
            if len(generated) == len(self):
                break
        return gens

    def _bfs_lengths(self, gens):
        dist = [-1] * len(self)
        dist[0] = 0
        frontier = [0]
        while frontier:
            nxt = []
            for y in frontier:
                for g in gens:
                    z = self.mul(y, g)
                    if dist[z] < 0:
                        dist[z] = dist[y] + 1
                        nxt.append(z)
            frontier = nxt
        return dist

    def _classes(self):
        # orbits under conjugation by the generators are the conjugacy classes
        n = len(self)
        class_of = [-1] * n
        classes = []
        W = self.weyl
        gens = [self.elements[g] for g in self.generators]
        for start in range(n):
            if class_of[start] >= 0:
                continue
            cid = len(classes)
            class_of[start] = cid
            orbit = [start]
            frontier = [start]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in gens:
                        y = self._pos[W.conjugate(g, self.elements[x]).perm]
                        if class_of[y] < 0:
                            class_of[y] = cid
                            orbit.append(y)
                            nxt.append(y)
                frontier = nxt
            classes.append(sorted(orbit))
        return classes, class_of


@lru_cache(maxsize=256)
def _relative_cached(rs: RootSystem, J: tuple) -> RelativeWeylGroup:
    W = weyl_group(rs)
    phi_L = [rs.index(r) for r in rs.parabolic_positive_roots(J)]
    elems = [w for w in normalizer(rs, J) if preserves(w, phi_L)]
    return RelativeWeylGroup(J, elems, W)


def relative_weyl_group(rs: RootSystem, J) -> RelativeWeylGroup:
    """The relative Weyl group W(L) for the standard Levi indexed by ``J``."""
    return _relative_cached(rs, _normalize_J(rs, J))


@dataclass
class SemidirectReport:
    passed: bool
    normalizer_order: int
    relative_order: int
    parabolic_order: int
    failure: str = ""
    counterexample: tuple = ()


def verify_semidirect(rs: RootSystem, J) -> SemidirectReport:
    """Check N_W(W_L) = W(L) ⋉ W_L: trivial intersection, product, normality."""
    W = weyl_group(rs)
    J = _normalize_J(rs, J)
    N = normalizer(rs, J)
    WL = parabolic_subgroup(rs, J)
    WLs = {w.perm for w in WL}
    Ns = {w.perm for w in N}
    rel = relative_weyl_group(rs, J).elements

    def report(ok, why="", witness=()):
        return SemidirectReport(ok, len(N), len(rel), len(WL), why, witness)

    for s in rel:
        if s.perm in WLs and s.perm != W.identity.perm:
            return report(False, "W(L) ∩ W_L is not trivial", s.word)
    products = {W.mul(s, u).perm for s in rel for u in WL}
    if products != Ns:
        extra = sorted(Ns ^ products)[0]
        return report(False, "W(L)·W_L differs from N_W(W_L)", W.element(extra).word)
    for n in N:
        for u in WL:
            c = W.conjugate(n, u)
            if c.perm not in WLs:
                return report(False, "W_L is not normal in N_W(W_L)", (n.word, u.word))
    return report(True)


@dataclass
class ReflectionClassification:
    """Action of W(L) on the W_L-fixed part of the reflection representation.

    This is a heuristic view of whether W(L) looks like a reflection group;
    it does not decide whether W(L) is a Coxeter group.
    """

    fixed_dimension: int
    codimensions: list
    reflections: list
    generated_by_reflections: bool
    restricted_matrices: list = field(repr=False, default_factory=list)
    note: str = "heuristic: reflection generation on V^{W_L}, not a Coxeter presentation test"


def fixed_subspace(rs: RootSystem, J) -> list[list[Fraction]]:
    """Basis (as columns) of V^{W_L} in the simple-root basis of V."""
    W = weyl_group(rs)
    rows = []
    for j in _normalize_J(rs, J):
        M = W.simple[j - 1].matrix
        rows += [[M[a][b] - (a == b) for b in range(rs.rank)] for a in range(rs.rank)]
    vecs = linalg.nullspace(rows, ncols=rs.rank)
    return linalg.transpose(vecs) if vecs else [[] for _ in range(rs.rank)]


def reflection_classification(rwg: RelativeWeylGroup, rs: RootSystem) -> ReflectionClassification:
    K = fixed_subspace(rs, rwg.parent_J)
    d = len(K[0]) if K and K[0] else 0
    codims, mats = [], []
    for w in rwg.elements:
        if d == 0:
            codims.append(0)
            mats.append([])
            continue
        MK = linalg.matmul([list(r) for r in w.matrix], K)
        X = linalg.solve_columns(K, MK)
        mats.append(X)
        codims.append(linalg.rank([[X[a][b] - (a == b) for b in range(d)] for a in range(d)]))
    refl = [k for k, c in enumerate(codims) if c == 1]
    reach = rwg.closure(refl) if refl else {0}
    return ReflectionClassification(d, codims, refl, len(reach) == len(rwg), mats)
