import pytest

from twistlab.homlat import GenusContext, InvalidInputError, InvariantError, identity, mat_compose, mat_inverse
from twistlab.mcggen import (
    REMARK_D_NOTE,
    CrosscapInvolution,
    SlideSpec,
    d_hom,
    make_record,
    pair_slide_matrix,
    perm_matrix,
    record_key,
    record_relation,
    slide_matrix,
    transform_record,
    twist_matrix,
)
from twistlab.presets import standard_curve


def test_twist_a1_genus3():
    ctx = GenusContext(3)
    a1 = make_record("a1", (1, 1, 0), (1, -1, 0), ctx)
    assert twist_matrix(a1, ctx).to_lists() == [[2, -1], [1, 0]]


def test_twist_with_zero_functional_is_identity():
    ctx = GenusContext(5)
    rec = make_record("z", (1, 1, 0, 0, 0), (0, 0, 0, 0, 0), ctx)
    assert twist_matrix(rec, ctx) == identity(ctx)


def test_twist_sign_conventions():
    ctx = GenusContext(6)
    b = standard_curve("b", ctx)
    t = twist_matrix(b, ctx)
    assert d_hom(t) == 1
    assert twist_matrix(b.negated(), ctx) == t
    assert twist_matrix(b.inverse(), ctx) == mat_inverse(t)


def test_record_must_vanish_on_itself():
    with pytest.raises(InvariantError):
        make_record("bad", (1, 0, 0), (1, -1, 0), GenusContext(3))


def test_slide_genus3():
    assert slide_matrix(SlideSpec(1), GenusContext(3)).to_lists() == [[-1, 2], [0, 1]]


def test_slide_genus4_last():
    # e4 = -(e1+e2+e3) goes to -e1-e2+e3
    assert slide_matrix(SlideSpec(3), GenusContext(4)).to_lists() == [[1, 0, 0], [0, 1, 0], [0, 0, -1]]


@pytest.mark.parametrize("g", [3, 4, 7, 12])
def test_slides_square_to_identity_and_have_d_minus_one(g):
    ctx = GenusContext(g)
    for j in range(1, g):
        y = slide_matrix(SlideSpec(j), ctx)
        assert mat_compose(y, y) == identity(ctx)
        assert d_hom(y) == -1


def test_slide_index_range():
    with pytest.raises(InvalidInputError):
        slide_matrix(SlideSpec(4), GenusContext(4))
    with pytest.raises(InvalidInputError):
        slide_matrix(SlideSpec(0), GenusContext(4))


def test_pair_slide_generalises_adjacent_slide():
    ctx = GenusContext(6)
    assert pair_slide_matrix(2, 3, ctx) == slide_matrix(SlideSpec(2), ctx)
    with pytest.raises(InvalidInputError):
        pair_slide_matrix(2, 2, ctx)


def test_perm_matrix_genus4_example():
    c = CrosscapInvolution.from_cycles(4, [(1, 2), (3, 4)])
    m = perm_matrix(c, GenusContext(4))
    assert m.to_lists() == [[0, 1, -1], [1, 0, -1], [0, 0, -1]]
    assert m.det == 1


def test_perm_matrix_identity():
    ctx = GenusContext(6)
    assert perm_matrix(CrosscapInvolution(tuple(range(1, 7))), ctx) == identity(ctx)


def test_perm_matrix_genus14_all_pairs_det_minus_one():
    c = CrosscapInvolution.from_cycles(14, [(i, i + 1) for i in range(1, 14, 2)])
    assert perm_matrix(c, GenusContext(14)).det == -1


def test_perm_det_formula():
    for g in range(3, 9):
        ctx = GenusContext(g)
        for pairs in ([], [(1, 2)], [(1, g)], [(1, 2), (3, g)]):
            for sign in (1, -1):
                c = CrosscapInvolution.from_cycles(g, pairs, sign)
                assert perm_matrix(c, ctx).det == sign ** (g - 1) * (-1) ** c.transpositions()


def test_crosscap_involution_validation():
    with pytest.raises(InvariantError):
        CrosscapInvolution((2, 3, 1))
    with pytest.raises(InvalidInputError):
        CrosscapInvolution((1, 1, 3))
    with pytest.raises(InvalidInputError):
        CrosscapInvolution((1, 2, 3), sign=2)


def test_transform_identity_keeps_record():
    ctx = GenusContext(8)
    a3 = standard_curve("a3", ctx)
    out = transform_record(identity(ctx), a3)
    assert (out.cls, out.fnl) == (a3.cls, a3.fnl)


def _all_pairs_14():
    ctx = GenusContext(14)
    c = CrosscapInvolution.from_cycles(14, [(i, i + 1) for i in range(1, 14, 2)])
    return ctx, perm_matrix(c, ctx)


def test_transform_a1_gives_inverse_twist_record():
    ctx, a = _all_pairs_14()
    a1 = standard_curve("a1", ctx)
    out = transform_record(a, a1)
    assert out.cls == a1.cls
    assert out.fnl == -a1.fnl
    assert record_relation(out, a1) == -1


def test_transform_a3_index_chase():
    ctx, a = _all_pairs_14()
    a3 = standard_curve("a3", ctx)
    out = transform_record(a, a3)
    assert out.cls == a3.cls
    assert out.fnl == -a3.fnl


def test_record_key_identifies_sign_pairs():
    ctx = GenusContext(5)
    a2 = standard_curve("a2", ctx)
    assert record_key(a2) == record_key(a2.negated())
    assert record_key(a2) != record_key(a2.inverse())
    assert record_relation(a2.negated(), a2) == 1


def test_remark_note_mentions_the_typo():
    assert "D(y) = 1" in REMARK_D_NOTE
