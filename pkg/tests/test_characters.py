import json
from fractions import Fraction
from math import prod

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import degrees_of, perm_from_word, poly_divide, symmetric_coinvariant_trace
from relweyl.characters import (EpsilonCharacter, GroupAlgebraElement, character_json,
                                det_one_minus_t, dumps, epsilon_U, factor_degrees,
                                fundamental_degrees, graded_character, lambda_U,
                                molien_graded_trace, partial_flag_character, rational_str)
from relweyl.coinvariants import coinvariant_module, invariant_lattice
from relweyl.errors import FactorizationFailure, NotMultiplicative
from relweyl.root_system import SUPPORTED_TYPES, build_root_system
from relweyl.theorems import all_subsets
from relweyl.weyl_group import parabolic_subgroup, relative_weyl_group, weyl_group

SMALL = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]


@pytest.mark.parametrize("name", SUPPORTED_TYPES)
def test_fundamental_degrees(name):
    rs = build_root_system(name)
    d = fundamental_degrees(rs)
    assert list(d) == degrees_of(name)
    assert prod(d) == rs.weyl_order()
    assert sum(x - 1 for x in d) == rs.num_positive


def test_factor_degrees_rejects_garbage():
    with pytest.raises(FactorizationFailure):
        factor_degrees([1, 3, 1], 2)
    with pytest.raises(FactorizationFailure):
        factor_degrees([1, 1], 2)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=9, max_size=9))
def test_det_one_minus_t_matches_characteristic_polynomial(entries):
    M = [entries[0:3], entries[3:6], entries[6:9]]
    # det(I - tM) has the coefficients of det(xI - M) in the same order
    ref = [int(round(c)) for c in np.poly(np.array(M, dtype=float))]
    assert det_one_minus_t(M) == ref


def test_molien_examples():
    a2 = build_root_system("A2")
    W = weyl_group(a2)
    assert molien_graded_trace(a2, W.identity, 3) == [1, 2, 2, 1]
    a1 = build_root_system("A1")
    assert molien_graded_trace(a1, weyl_group(a1).longest, 1) == [1, -1]
    # truncation pads with zeros past the top degree
    assert molien_graded_trace(a1, weyl_group(a1).identity, 4) == [1, 1, 0, 0, 0]


@pytest.mark.parametrize("name", SMALL + ["D4", "F4"])
def test_molien_constant_term_and_identity(name):
    rs = build_root_system(name)
    W = weyl_group(rs)
    assert molien_graded_trace(rs, W.identity) == W.length_polynomial()
    for w in W.elements[:200]:
        assert molien_graded_trace(rs, w)[0] == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_molien_type_a_matches_cycle_formula(n):
    rs = build_root_system(f"A{n}")
    for w in weyl_group(rs).elements:
        expected = symmetric_coinvariant_trace(perm_from_word(w.word, n + 1), rs.num_positive + 1)
        assert molien_graded_trace(rs, w) == expected


@pytest.mark.parametrize("name", SMALL)
def test_partial_flag_character(name):
    rs = build_root_system(name)
    W = weyl_group(rs)
    for J in all_subsets(rs.rank):
        rwg = relative_weyl_group(rs, J)
        WL = parabolic_subgroup(rs, J)
        WL_poly = [0] * (max(w.length for w in WL) + 1)
        for w in WL:
            WL_poly[w.length] += 1
        ident = partial_flag_character(rs, J, rwg, W.identity)
        assert ident == poly_divide(W.length_polynomial(), WL_poly)
        assert sum(ident) == len(W) // len(WL)
        assert all(x >= 0 and Fraction(x).denominator == 1 for x in ident)
        N = len(ident) - 1
        for w in rwg.elements:
            full = partial_flag_character(rs, J, rwg, w, rs.num_positive)
            assert full[0] == 1
            assert not any(full[N + 1:])
    # J empty reduces to the Molien series itself
    rwg = relative_weyl_group(rs, ())
    for w in rwg.elements:
        assert partial_flag_character(rs, (), rwg, w) == molien_graded_trace(rs, w)


def test_sl4_character():
    rs = build_root_system("A3")
    chi = graded_character(rs, (1, 3))
    assert chi.N == 4
    assert chi.dims() == [1, 1, 2, 1, 1]
    assert chi.rows == [[1, 1, 2, 1, 1], [1, -1, 0, -1, 1]]
    assert chi.trace(8, 1) == 1 and chi.trace(3, 1) == 0 and chi.trace(10, 0) == 0
    assert chi.values[(2, 1)] == -1


@pytest.mark.parametrize("name", SMALL)
def test_characters_are_class_functions(name):
    rs = build_root_system(name)
    for J in all_subsets(rs.rank):
        chi = graded_character(rs, J)
        rwg = chi.group
        for c in rwg.conjugacy_classes:
            rows = {tuple(partial_flag_character(rs, J, rwg, rwg.elements[a])) for a in c}
            assert len(rows) == 1


def test_epsilon_sl4():
    rs = build_root_system("A3")
    rwg = relative_weyl_group(rs, (1, 3))
    il = invariant_lattice(coinvariant_module(rs), (1, 3))
    eps = epsilon_U(rs, (1, 3), rwg, lattice=il)
    assert eps(0) == 1
    # the generator of length 4 acts trivially on the top class
    assert eps(1) == 1
    assert il.traces(1)[-1] == 1


@pytest.mark.parametrize("name", SMALL + ["A4", "D4"])
def test_epsilon_empty_J_is_sign(name):
    rs = build_root_system(name)
    rwg = relative_weyl_group(rs, ())
    eps = epsilon_U(rs, (), rwg)
    assert all(eps(a) == (-1) ** w.length for a, w in enumerate(rwg.elements))


@pytest.mark.parametrize("name", SMALL)
def test_epsilon_multiplicative_all_J(name):
    rs = build_root_system(name)
    for J in all_subsets(rs.rank):
        rwg = relative_weyl_group(rs, J)
        eps = epsilon_U(rs, J, rwg)
        assert eps(0) == 1
        for a in range(len(rwg)):
            for b in range(len(rwg)):
                assert eps(rwg.mul(a, b)) == eps(a) * eps(b)


def test_epsilon_lattice_disagreement_is_an_error():
    rs = build_root_system("A3")
    rwg = relative_weyl_group(rs, (1, 3))

    class Fake:
        def traces(self, a):
            return [1, 0, 0, 0, -1]

    with pytest.raises(NotMultiplicative):
        epsilon_U(rs, (1, 3), rwg, lattice=Fake())


def test_lambda_examples():
    rs = build_root_system("A2")
    rwg = relative_weyl_group(rs, ())
    eps = epsilon_U(rs, (), rwg)
    e = GroupAlgebraElement.basis(0)
    assert lambda_U(eps, e) == e
    total = GroupAlgebraElement({a: Fraction(1) for a in range(len(rwg))})
    signed = GroupAlgebraElement({a: Fraction((-1) ** w.length)
                                  for a, w in enumerate(rwg.elements)})
    assert lambda_U(eps, total) == signed


@settings(max_examples=50, deadline=None)
@given(st.dictionaries(st.integers(0, 47), st.fractions(max_denominator=5), max_size=10))
def test_lambda_is_an_involution(coeffs):
    rs = build_root_system("B3")
    eps = epsilon_U(rs, (), relative_weyl_group(rs, ()))
    x = GroupAlgebraElement(coeffs)
    assert lambda_U(eps, lambda_U(eps, x)) == x
    assert lambda_U(eps, x + x) == lambda_U(eps, x) + lambda_U(eps, x)


def test_epsilon_character_callable():
    rs = build_root_system("A1")
    rwg = relative_weyl_group(rs, ())
    eps = EpsilonCharacter(rwg, [Fraction(1), Fraction(-1)])
    assert eps(1) == -1


def test_character_json_sl4():
    out = character_json(build_root_system("A3"), (1, 3))
    assert out["J"] == [1, 3]
    assert out["degrees"] == [0, 2, 4, 6, 8]
    assert out["classes"] == [[[]], [[2, 1, 3, 2]]]
    assert out["graded_traces"] == [["1/1", "1/1", "2/1", "1/1", "1/1"],
                                    ["1/1", "-1/1", "0/1", "-1/1", "1/1"]]
    assert out["epsilon"] == ["1/1", "1/1"]
    text = dumps(out)
    assert dumps(json.loads(text)) == text


def test_rational_str():
    assert rational_str(Fraction(-3, 6)) == "-1/2"
    assert rational_str(4) == "4/1"
