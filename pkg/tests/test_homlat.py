import pytest

from twistlab.homlat import (
    GenusContext,
    InvalidInputError,
    InvariantError,
    LatticeCovector,
    LatticeMatrix,
    NotUnimodularError,
    basis_vector,
    canonicalize,
    identity,
    integer_det,
    is_involution_matrix,
    mat_apply,
    mat_compose,
    mat_det,
    mat_inverse,
    pair,
)


def test_genus_context_fields():
    assert (GenusContext(14).r, GenusContext(14).parity) == (7, "even")
    assert (GenusContext(17).r, GenusContext(17).parity, GenusContext(17).dim) == (8, "odd", 16)


@pytest.mark.parametrize("bad", [1, 0, -3, 2.0, True])
def test_genus_context_rejects(bad):
    with pytest.raises(InvalidInputError):
        GenusContext(bad)


@pytest.mark.parametrize(
    "g, raw, canon",
    [(4, (1, 1, 1, 1), (0, 0, 0)), (4, (0, 0, 0, 1), (-1, -1, -1)), (3, (2, 3, 1), (1, 2))],
)
def test_canonicalize_examples(g, raw, canon):
    v = canonicalize(raw, GenusContext(g))
    assert v.canon == canon
    assert v.raw == raw


def test_canonicalize_length_mismatch():
    with pytest.raises(InvalidInputError):
        canonicalize((1, 2), GenusContext(3))


def test_basis_vector_last_is_minus_sum():
    assert basis_vector(4, GenusContext(4)).canon == (-1, -1, -1)


@pytest.mark.parametrize(
    "phi, raw, expected",
    [((1, -1, 0), (2, 3, 1), -1), ((1, -1, 0), (3, 4, 2), -1), ((1, 1, -1, -1), (1, 1, 1, 1), 0)],
)
def test_pair_examples(phi, raw, expected):
    ctx = GenusContext(len(raw))
    assert pair(LatticeCovector(phi), canonicalize(raw, ctx)) == expected


def test_covector_must_sum_to_zero():
    with pytest.raises(InvariantError):
        LatticeCovector((1, 0, 0))


def test_pair_genus_mismatch():
    with pytest.raises(InvalidInputError):
        pair(LatticeCovector((1, -1, 0)), canonicalize((1, 0, 0, 0), GenusContext(4)))


def test_identity_det_and_involution():
    for g in (2, 3, 7):
        i = identity(GenusContext(g))
        assert mat_det(i) == 1
        assert is_involution_matrix(i)


def test_det_of_twist_example():
    assert mat_det(LatticeMatrix(((2, -1), (1, 0)))) == 1


def test_non_unimodular_rejected():
    with pytest.raises(NotUnimodularError):
        LatticeMatrix(((2, 0), (0, 1)))
    with pytest.raises(InvalidInputError):
        LatticeMatrix(((1, 0),))


def test_inverse_and_compose():
    a = LatticeMatrix(((2, -1), (1, 0)))
    assert mat_compose(mat_inverse(a), a) == identity(GenusContext(3))
    assert mat_inverse(a).entries == ((0, 1), (-1, 2))


def test_integer_det_needs_pivoting():
    assert integer_det([[0, 1], [1, 0]]) == -1
    assert integer_det([[0, 0], [1, 0]]) == 0
    assert integer_det([]) == 1


def test_mat_apply():
    ctx = GenusContext(3)
    a = LatticeMatrix(((2, -1), (1, 0)))
    assert mat_apply(a, canonicalize((1, 0, 0), ctx)).canon == (2, 1)


def test_big_entries_stay_exact():
    a = LatticeMatrix(((1, 2**70), (0, 1)))
    assert mat_compose(a, a).entries[0][1] == 2**71
    assert mat_inverse(a).entries[0][1] == -(2**70)
