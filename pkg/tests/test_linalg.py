from fractions import Fraction

import pytest

from gsptri.laurent import FractionElement, LaurentElement
from gsptri.linalg import (
    EchelonTracker,
    ExactMatrix,
    membership_with_monomial_clearance,
    rank_over_fraction_field,
    solve_in_span,
    verify_membership_witness,
)
from gsptri.rng import SplitMix64

from oracles import rational_rank, remultiply_witness, substituted_rank


def const(x, nvars=0):
    return LaurentElement.constant(x, nvars)


def random_laurent_matrix(rng, rows, cols, nvars):
    out = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            terms = {}
            for _ in range(rng.next_int(1, 2)):
                exps = tuple(rng.next_int(-2, 2) for _ in range(nvars))
                terms[exps] = rng.next_nonzero_rational()
            row.append(LaurentElement(nvars, terms))
        out.append(row)
    return out


def test_rank_identity():
    rows = [[const(int(i == j)) for j in range(3)] for i in range(3)]
    assert rank_over_fraction_field(rows) == 3


def test_rank_proportional_rows():
    t0, t1 = LaurentElement.variable(0, 2), LaurentElement.variable(1, 2)
    assert rank_over_fraction_field([[t0, t1], [2 * t0, 2 * t1]]) == 1


def test_rank_random_rational_vs_oracle():
    rng = SplitMix64(20240817)
    rows = [[const(rng.next_nonzero_rational()) for _ in range(5)] for _ in range(5)]
    assert rank_over_fraction_field(rows) == 5
    assert rational_rank([[x.constant_value() for x in row] for row in rows]) == 5


def test_rank_empty_and_fraction_entries():
    assert rank_over_fraction_field([]) == 0
    t0 = LaurentElement.variable(0, 1)
    f = FractionElement(LaurentElement.one(1), t0 + 1)
    rows = [[f, f], [FractionElement(t0), FractionElement(t0)]]
    assert rank_over_fraction_field(rows) == 1


@pytest.mark.parametrize("seed", range(50))
def test_rank_invariances(seed):
    """Row permutation, monomial scaling, transposition; Bareiss vs oracle.

    Multivariate entries make Bareiss minors dense, so the largest sizes use
    one variable (minor term counts stay linear in the degree span there).
    """
    rng = SplitMix64(900 + seed)
    rows = rng.next_int(1, 8)
    cols = rng.next_int(1, 8)
    nvars = 1 if max(rows, cols) > 5 else rng.next_int(1, 2)
    m = random_laurent_matrix(rng, rows, cols, nvars)
    base = rank_over_fraction_field(m)

    order = list(range(rows))
    for i in range(rows - 1, 0, -1):
        j = rng.next_below(i + 1)
        order[i], order[j] = order[j], order[i]
    assert rank_over_fraction_field([m[i] for i in order]) == base

    scaled = []
    for row in m:
        exps = tuple(rng.next_int(-2, 2) for _ in range(nvars))
        mono = LaurentElement.monomial(exps, rng.next_nonzero_rational())
        scaled.append([mono * x for x in row])
    assert rank_over_fraction_field(scaled) == base

    transposed = [[m[i][j] for i in range(rows)] for j in range(cols)]
    assert rank_over_fraction_field(transposed) == base

    # dual route: substitution specializes, so it can only drop the rank
    assert substituted_rank(m) <= base
    assert rational_rank([[x.evaluate([2, 3][:nvars]) for x in row] for row in m]) <= base


@pytest.mark.parametrize("seed", range(12))
def test_bareiss_agrees_with_substitution_on_generic(seed):
    rng = SplitMix64(7000 + seed)
    m = random_laurent_matrix(rng, 4, 4, 1)
    assert rank_over_fraction_field(m) >= substituted_rank(m)


def test_echelon_tracker_matches_bareiss():
    rng = SplitMix64(31337)
    m = random_laurent_matrix(rng, 7, 5, 2)
    tracker = EchelonTracker(5)
    for row in m:
        tracker.add(row)
    assert tracker.rank == rank_over_fraction_field(m)


def test_membership_verbatim():
    one = LaurentElement.one(1)
    zero = LaurentElement.zero(1)
    v = [one, zero]
    mu, coeffs = membership_with_monomial_clearance(v, [v, [zero, one]])
    assert mu == one
    assert coeffs[0] == one and not coeffs[1]


def test_membership_monomial_clearance():
    t = LaurentElement.variable(0, 1)
    one, zero = LaurentElement.one(1), LaurentElement.zero(1)
    mu, coeffs = membership_with_monomial_clearance([one, zero], [[t, zero]])
    assert mu == t and coeffs == [one]


def test_membership_two_vector_solve():
    t = LaurentElement.variable(0, 1)
    one, zero = LaurentElement.one(1), LaurentElement.zero(1)
    span = [[t, one], [zero, one]]
    mu, coeffs = membership_with_monomial_clearance([one, zero], span)
    assert mu == t
    assert coeffs == [one, -one]
    assert remultiply_witness([one, zero], span, mu, coeffs)


def test_membership_no_witness():
    t = LaurentElement.variable(0, 1)
    one, zero = LaurentElement.one(1), LaurentElement.zero(1)
    # 1/(t+1) is the only solution and its denominator is not a monomial
    assert membership_with_monomial_clearance([one], [[t + 1]]) is None
    # target outside the fraction-field span
    assert membership_with_monomial_clearance([one, zero], [[zero, one]]) is None


def test_membership_dimension_mismatch():
    one = LaurentElement.one(1)
    with pytest.raises(ValueError):
        membership_with_monomial_clearance([one], [[one, one]])


@pytest.mark.parametrize("seed", range(15))
def test_membership_witness_reverifies(seed):
    """Random in-span targets: the returned witness re-multiplies correctly."""
    rng = SplitMix64(5150 + seed)
    nvars = 2
    dim = rng.next_int(2, 4)
    span = random_laurent_matrix(rng, rng.next_int(2, 5), dim, nvars)
    coeffs = [
        LaurentElement.monomial(
            tuple(rng.next_int(0, 2) for _ in range(nvars)), rng.next_nonzero_rational()
        )
        for _ in span
    ]
    target = [LaurentElement.zero(nvars)] * dim
    for c, vec in zip(coeffs, span):
        target = [a + c * x for a, x in zip(target, vec)]
    result = membership_with_monomial_clearance(target, span)
    assert result is not None
    mu, got = result
    assert remultiply_witness(target, span, mu, got)
    assert verify_membership_witness(target, span, mu, got)


def test_solve_in_span_unsolvable():
    one, zero = LaurentElement.one(1), LaurentElement.zero(1)
    assert solve_in_span([[one, zero]], [zero, one]) is None


def test_exact_matrix_shape_validation():
    with pytest.raises(ValueError):
        ExactMatrix([[Fraction(1)], [Fraction(1), Fraction(2)]])
    m = ExactMatrix([[Fraction(1), Fraction(2)]])
    assert (m.rows, m.cols) == (1, 2)
    with pytest.raises(ValueError):
        m * m
