from fractions import Fraction

import pytest

from gsptri.errors import ResourceLimitError
from gsptri.laurent import LaurentElement
from gsptri.linalg import EchelonTracker, ExactMatrix
from gsptri.weyl import (
    compose,
    form_matrix,
    gsp_lie_basis,
    is_symplectic_permutation,
    similitude,
    symplectic_generators,
    symplectic_lie_scalar,
    torus_embed,
    weyl_group,
    weyl_group_closure,
    weyl_representative,
)

from oracles import all_symplectic_perms


def test_form_matrix_examples():
    j1 = form_matrix(1)
    assert j1.entries == [[Fraction(0), Fraction(1)], [Fraction(-1), Fraction(0)]]
    j2 = form_matrix(2)
    anti = [j2.entries[i][3 - i] for i in range(4)]
    assert anti == [1, 1, -1, -1]
    j3 = form_matrix(3)
    assert j3.transpose() == -j3
    with pytest.raises(ValueError):
        form_matrix(0)


def test_similitude_examples():
    assert similitude(ExactMatrix.identity(2)) == 1
    diag = ExactMatrix([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(2)]])
    assert similitude(diag) == 2
    perm = [1, 3, 2, 4]  # (2,3) as a plain permutation matrix
    mat = ExactMatrix(
        [[Fraction(int(perm[j] == i + 1)) for j in range(4)] for i in range(4)]
    )
    assert similitude(mat) is None
    with pytest.raises(ValueError):
        similitude(ExactMatrix.identity(3))


def test_torus_embed():
    te = torus_embed([Fraction(1), Fraction(2), Fraction(3)])
    diag = [te.entries[i][i] for i in range(4)]
    assert diag == [1, 2, Fraction(3, 2), 3]
    assert similitude(te) == 3
    te_id = torus_embed([Fraction(1), Fraction(1)])
    assert te_id == ExactMatrix.identity(2)
    assert similitude(te_id) == 1
    te4 = torus_embed([Fraction(1), Fraction(1), Fraction(4)])
    assert [te4.entries[i][i] for i in range(4)] == [1, 1, 4, 4]
    assert similitude(te4) == 4
    with pytest.raises(ValueError):
        torus_embed([Fraction(0), Fraction(1)])


def test_torus_embed_symbolic_similitude():
    ts = [LaurentElement.variable(i, 3) for i in range(3)]
    assert similitude(torus_embed(ts)) == LaurentElement.variable(2, 3)


def test_weyl_group_sizes():
    for n in range(1, 5):
        assert len(weyl_group(n)) == 2**n * _fact(n)


def _fact(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def test_weyl_group_small_contents():
    els = weyl_group(1)
    assert [e.sigma for e in els] == [(1, 2), (2, 1)]
    assert len(weyl_group(2)) == 8


def test_weyl_group_bound():
    with pytest.raises(ResourceLimitError):
        weyl_group(6)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_closure_equals_symplectic_condition(n):
    closure = {e.sigma for e in weyl_group(n)}
    assert closure == set(all_symplectic_perms(n))


def test_representative_examples():
    ident = weyl_representative((1, 2, 3, 4))
    assert ident.matrix() == ExactMatrix.identity(4)
    flip = weyl_representative((2, 1))
    assert flip.matrix().entries == [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    assert similitude(flip.matrix()) == -1
    w23 = weyl_representative((1, 3, 2, 4))
    mat = w23.matrix()
    assert similitude(mat) == -1
    assert sum(1 for row in mat.entries for x in row if x < 0) == 1
    with pytest.raises(ValueError):
        weyl_representative((2, 3, 1, 4))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_representative_similitude_multiplicative(n):
    els = weyl_group(n)
    for a in els[: 2**n]:
        for b in els[: 2**n]:
            prod = a.matrix() * b.matrix()
            assert similitude(prod) == similitude(a.matrix()) * similitude(b.matrix())
            assert is_symplectic_permutation(compose(a.sigma, b.sigma))


def test_generators_match_contract():
    assert symplectic_generators(1) == [(2, 1)]
    gens = symplectic_generators(2)
    assert (2, 1, 4, 3) in gens and (1, 3, 2, 4) in gens


def test_lie_basis_counts():
    assert len(gsp_lie_basis(1)) == 4
    assert len(gsp_lie_basis(2)) == 11
    assert len(gsp_lie_basis(3)) == 22


def test_lie_basis_independent_and_in_algebra():
    for n in (1, 2, 3):
        basis = gsp_lie_basis(n)
        tracker = EchelonTracker((2 * n) ** 2)
        for mat in basis:
            assert symplectic_lie_scalar(mat) is not None
            assert tracker.add([LaurentElement.constant(x, 0) for x in mat.flatten()])
        assert tracker.rank == 2 * n * n + n + 1


def test_gl2_case_spans_everything():
    tracker = EchelonTracker(4)
    for mat in gsp_lie_basis(1):
        tracker.add([LaurentElement.constant(x, 0) for x in mat.flatten()])
    assert tracker.rank == 4


def test_identity_in_algebra():
    assert symplectic_lie_scalar(ExactMatrix.identity(4)) == 2


@pytest.mark.parametrize("n", [1, 2, 3])
def test_bracket_closure(n):
    basis = gsp_lie_basis(n)
    tracker = EchelonTracker((2 * n) ** 2)
    for mat in basis:
        tracker.add([LaurentElement.constant(x, 0) for x in mat.flatten()])
    dim = tracker.rank
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            comm = basis[i] * basis[j] - basis[j] * basis[i]
            vec = [LaurentElement.constant(x, 0) for x in comm.flatten()]
            assert not tracker.add(vec)
    assert tracker.rank == dim


def test_closure_rounds_reported():
    _, rounds = weyl_group_closure(2)
    assert rounds >= 2
