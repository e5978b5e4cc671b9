import dataclasses
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import Q, rationals, vectors
from hyperspaces.fixtures import ECHO_WITNESS
from hyperspaces.hyperspace import (
    HyperVectorSpace,
    StarOp,
    check_hvs_axioms,
    check_negation_in_minus_one_star,
    check_combination_makes_dependent,
    coefficient_pool,
    cone_space,
    echo_space,
    is_basis,
    is_linearly_dependent,
    is_weak_linearly_independent,
    linear_combination,
    rational_space,
    trivial_space,
    vector_universe,
    zero_star_set,
)
from hyperspaces.hyperstructures import evaluate, krasner_hyperfield, replay
from hyperspaces.setalg import (
    BudgetExceededError,
    DomainError,
    FiniteCarrier,
    PreconditionError,
    extend_set_set,
)

T = trivial_space(2)
C = cone_space(2)
E = echo_space(2)
THETA = Q(0, 0)
SCALARS = [Fraction(x) for x in (0, 1, -1, 2, Fraction(1, 2), -3)]
VECTORS = [Q(0, 0), Q(1, 0), Q(0, 1), Q(1, -2), Q(Fraction(1, 3), 2)]


@pytest.mark.parametrize("W", [T, C])
def test_hyperspace_fixtures_pass(W):
    assert check_hvs_axioms(W, SCALARS, VECTORS) == []


def test_echo_breaks_scalar_associativity():
    holds, left, right = evaluate(E, "HVS.star_assoc", *ECHO_WITNESS)
    assert not holds
    assert left == {Q(6, 0), Q(1, 0)}
    assert right == {Q(6, 0), Q(3, 0), Q(2, 0), Q(1, 0)}
    found = check_hvs_axioms(E, [0, 1, 2, 3], [Q(1, 0)], max_violations=64)
    assert any(v.axiom == "HVS.star_assoc" for v in found)
    assert all(replay(E, v) for v in found)


def test_negation_lies_in_minus_one_star():
    assert check_negation_in_minus_one_star(T, [Q(1, 2), THETA]) == []
    assert check_negation_in_minus_one_star(C, [Q(1, 0), THETA]) == []
    assert C.star(-1, Q(1, 0)) == {Q(-1, 0), THETA}


def test_linear_combinations():
    assert linear_combination(T, [4, -1], [Q(1, 1), Q(1, -1)]) == {Q(3, 5)}
    assert linear_combination(C, [1, 1], [Q(1, 0), Q(0, 1)]) == {
        Q(1, 1), Q(1, 0), Q(0, 1), THETA}
    assert Q(2, 7) in linear_combination(E, [1], [Q(2, 7)])
    with pytest.raises(PreconditionError):
        linear_combination(T, [1, 2], [Q(1, 0)])


def test_dependence_examples():
    v = is_linearly_dependent(T, [Q(1, 0), Q(2, 0)], [-2, -1, 0, 1, 2])
    assert v.dependent and v.coefficients == (2, -1)
    assert not is_linearly_dependent(T, [Q(1, 0), Q(0, 1)], [-1, 0, 1]).dependent
    v = is_linearly_dependent(C, [Q(1, 0)], [0, 1])
    assert v.dependent and v.coefficients == (1,)


def test_weak_independence_examples():
    pool = coefficient_pool(T.scalars, [])
    universe = vector_universe(T, [Q(1, 0), Q(0, 1)])
    assert pool == (0, 1, -1)
    assert is_weak_linearly_independent(T, [Q(1, 0), Q(0, 1)], pool, universe).independent
    # cone: 0 * P is always {theta} while 1 * (1, 0) = {(1, 0), theta}; full
    # enumeration finds no witness
    v = is_weak_linearly_independent(C, [Q(1, 0)], [0, 1], [THETA, Q(1, 0)])
    assert v.independent
    with pytest.raises(BudgetExceededError):
        is_weak_linearly_independent(T, [Q(1, 0)], [0, 1], [Q(i, 0) for i in range(13)])


def test_zero_star_set():
    assert zero_star_set(C, [Q(1, 0), Q(0, 1)]) == {THETA}
    assert zero_star_set(E, [Q(1, 0)]) == {THETA, Q(1, 0)}


def test_basis_examples():
    A = [Q(1, 0), Q(0, 1)]
    v = is_basis(T, A, [Q(2, 3)], [0, 1, 2, 3])
    assert v.is_basis
    assert v.representations[Q(2, 3)] == ((0, 1), (2, 3))
    v = is_basis(T, A, [Q(5, 0)], [0, 1, 2])
    assert not v.is_basis and v.unreached == (Q(5, 0),)
    v = is_basis(C, A, [THETA], [0, 1])
    assert THETA in v.representations
    assert not v.independent   # theta in 1 * (1, 0) already


def test_adding_a_combination_makes_a_list_dependent():
    A = [Q(1, 0), Q(0, 1)]
    v = check_combination_makes_dependent(T, A, Q(2, 3), [2, 3], [0, 1])
    assert v.dependent and v.coefficients == (1, -2, -3)
    v = check_combination_makes_dependent(T, A, Q(1, 0), [1, 0], [0, 1])
    assert v.dependent and v.coefficients == (1, -1, 0)
    assert check_combination_makes_dependent(C, A, THETA, [0, 0], [0, 1]).dependent
    with pytest.raises(PreconditionError):
        check_combination_makes_dependent(T, A, Q(9, 9), [1, 1], [0, 1])


def test_finite_star_table():
    K = krasner_hyperfield()
    V = dataclasses.replace(K.additive, neg={0: 0, 1: 1})
    star = StarOp(K.carrier, FiniteCarrier([0, 1]),
                  table={(a, v): ((a * v),) for a in (0, 1) for v in (0, 1)})
    W = HyperVectorSpace(K, V, star)
    assert check_hvs_axioms(W) == []


def test_rational_space_rejects_unknown_rule():
    with pytest.raises(DomainError):
        rational_space(2, "twist")


# ---------------------------------------------------------------------------
# Properties


@given(st.lists(rationals, min_size=1, max_size=3), st.data())
def test_trivial_combination_is_the_classical_sum(coeffs, data):
    vs = [data.draw(vectors(2)) for _ in coeffs]
    expected = tuple(sum((c * v[i] for c, v in zip(coeffs, vs)), Fraction(0)) for i in range(2))
    assert linear_combination(T, coeffs, vs) == {expected}


@given(st.lists(vectors(2), min_size=1, max_size=3))
def test_dependence_witnesses_are_sound(vs):
    v = is_linearly_dependent(T, vs, [0, 1, -1, 2, -2])
    if v.dependent:
        assert oracles.rank(vs) < len(vs)
        assert THETA in linear_combination(T, v.coefficients, vs)
        assert any(c != 0 for c in v.coefficients)


@given(vectors(2), st.sampled_from([-2, -1, 1, 2]))
def test_scaled_pairs_are_found_dependent(u, c):
    scaled = tuple(c * x for x in u)
    assert is_linearly_dependent(T, [u, scaled], [0, 1, -1, 2, -2]).dependent


@given(rationals, rationals, vectors(2))
def test_cone_star_is_scalar_associative(a, b, v):
    assert evaluate(C, "HVS.star_assoc", a, b, v)[0]
    assert evaluate(C, "HVS.star_dist_scalars", a, b, v)[0]


@given(rationals, vectors(2), vectors(2))
def test_trivial_star_distributes(a, u, v):
    assert evaluate(T, "HVS.star_dist_vectors", a, u, v)[0]
    assert evaluate(T, "HVS.star_neg", a, u)[0]


def _all_folds(op, sets):
    """Every parenthesization of ``S1 # S2 # ... # Sn``."""
    if len(sets) == 1:
        return [sets[0]]
    out = []
    for k in range(1, len(sets)):
        for left in _all_folds(op, sets[:k]):
            for right in _all_folds(op, sets[k:]):
                out.append(extend_set_set(op, left, right))
    return out


@pytest.mark.parametrize("W", [T, C, E])
@given(st.data())
def test_combination_does_not_depend_on_bracketing(W, data):
    n = data.draw(st.integers(1, 4))
    coeffs = data.draw(st.lists(st.sampled_from([0, 1, -1, 2, Fraction(1, 2)]),
                                min_size=n, max_size=n))
    vs = data.draw(st.lists(st.sampled_from(VECTORS), min_size=n, max_size=n))
    expected = linear_combination(W, coeffs, vs)
    folds = _all_folds(W.add, [W.star(c, v) for c, v in zip(coeffs, vs)])
    assert all(f == expected for f in folds)


@pytest.mark.parametrize("W", [T, C, E])
@given(st.lists(vectors(2), min_size=1, max_size=4))
def test_all_zero_combination_contains_theta(W, vs):
    assert THETA in linear_combination(W, [0] * len(vs), vs)


@given(st.lists(vectors(2), min_size=1, max_size=3),
       st.lists(st.sampled_from([2, -2, 3, Fraction(1, 2), Fraction(-1, 3)]), max_size=3))
def test_larger_pools_never_undo_dependence(vs, extra):
    small = [0, 1, -1]
    if is_linearly_dependent(T, vs, small).dependent:
        assert is_linearly_dependent(T, vs, small + extra).dependent


@given(vectors(2), vectors(2), st.sampled_from([0, 1, -1, 2, -2]),
       st.sampled_from([0, 1, -1, 2, -2]))
def test_classically_dependent_with_pool_witness_is_found(u, v, a, b):
    # a u + b v = w, so (a, b, -1) is a witness inside the pool
    w = tuple(a * x + b * y for x, y in zip(u, v))
    verdict = is_linearly_dependent(T, [u, v, w], [0, 1, -1, 2, -2])
    assert verdict.dependent
    assert oracles.rank([u, v, w]) < 3
