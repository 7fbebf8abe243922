import pytest

from twistlab.homlat import GenusContext, mat_inverse
from twistlab.mcggen import CrosscapInvolution, SlideSpec, perm_matrix, slide_matrix, twist_matrix
from twistlab.orbit import orbit_bfs
from twistlab.presets import UnsupportedGenusError, omori_curves, standard_curve
from twistlab.verify import (
    CAVEAT,
    Mod2State,
    build_presets,
    check_preset,
    drop_preset,
    full_report,
    mod2_closure,
    mod2_oracle,
    reduce_mod2,
    replace_correction,
    slide_relations,
    small_genus_six,
    synthesize_omori_words,
)
from twistlab.wordalg import evaluate, parse_word

from conftest import presets


def test_check_preset_rho1_and_sigma():
    assert check_preset(presets(14, "six"), "rho1").passed
    assert check_preset(presets(16, "six"), "sigma").passed


def test_wrong_correction_fails_named_check():
    p = replace_correction(presets(14, "six"), "sigma", 5)
    c = check_preset(p, "sigma")
    assert not c.passed and not c.involution


def test_orbit_with_no_generators():
    p = presets(14, "six")
    a = [c for c in p.curves if c.name.startswith("a")]
    res = orbit_bfs(p.ctx, [], a[0], a)
    assert list(res.witnesses) == ["a1"]
    assert len(res.unreached) == 12


def test_orbit_needs_upsilon():
    p = presets(14, "six")
    a = [c for c in p.curves if c.name.startswith("a")]
    full = orbit_bfs(p.ctx, [(n, p.matrix(n)) for n in ("sigma", "tau", "upsilon")], a[0], a)
    part = orbit_bfs(p.ctx, [(n, p.matrix(n)) for n in ("sigma", "tau")], a[0], a)
    assert full.complete
    assert part.unreached


def test_orbit_witness_lengths_do_not_depend_on_generator_order():
    p = presets(14, "six")
    a = [c for c in p.curves if c.name.startswith("a")]
    one = orbit_bfs(p.ctx, [(n, p.matrix(n)) for n in ("sigma", "tau", "upsilon")], a[0], a)
    two = orbit_bfs(p.ctx, [(n, p.matrix(n)) for n in ("upsilon", "sigma", "tau")], a[0], a)
    assert {k: len(w) for k, w in one.witnesses.items()} == {k: len(w) for k, w in two.witnesses.items()}


def test_omori_words_at_14():
    p = presets(14, "six")
    rows = {r.target: r for r in synthesize_omori_words(p)}
    assert rows["ta1"].word == "sigma rho1" and rows["ta1"].sign == 1
    assert rows["tb"].word == "sigma rho2"
    assert rows["te"].word == "tau rho3"
    assert rows["ta5"].verified
    assert all(r.verified for r in rows.values())


def test_report_words_recheck_with_a_fresh_table():
    report = full_report(GenusContext(14), "six")
    fresh = build_presets(GenusContext(14), "six")
    for w in report.witnesses:
        m = evaluate(parse_word(w.word), fresh.table, fresh.ctx)
        t = twist_matrix(fresh.curve(w.target[1:]), fresh.ctx)
        assert m == (t if w.sign == 1 else mat_inverse(t))


def test_missing_witness_names_the_curve():
    p = drop_preset(presets(14, "six"), "upsilon")
    rows = synthesize_omori_words(p)
    assert any(r.target == "ta2" and not r.verified for r in rows)


def test_mod2_twist_a1_at_genus4():
    ctx = GenusContext(4)
    a1 = standard_curve("a1", ctx)
    assert Mod2State.twist(4, a1.cls.raw).quotient() == reduce_mod2(twist_matrix(a1, ctx))


def test_mod2_slide_at_genus5():
    ctx = GenusContext(5)
    assert Mod2State.slide(5).quotient() == reduce_mod2(slide_matrix(SlideSpec(2), ctx))


def test_mod2_permutation():
    ctx = GenusContext(6)
    c = CrosscapInvolution.from_cycles(6, [(1, 4), (2, 6)], -1)
    assert Mod2State.permutation(c).quotient() == reduce_mod2(perm_matrix(c, ctx))


def test_mod2_twist_is_an_involution():
    st = Mod2State.twist(6, (1, 1, 0, 1, 1, 0))
    assert st.compose(st) == Mod2State.identity(6)


def test_mod2_closure_of_omori_at_genus4():
    ctx = GenusContext(4)
    group = mod2_closure((reduce_mod2(twist_matrix(c, ctx)) for c in omori_curves(ctx)), 3)
    assert len(group) == 24


@pytest.mark.parametrize("g", [5, 6])
def test_small_genus_closure(g):
    res = mod2_oracle(small_genus_six(GenusContext(g)), closure=True)
    assert res.passed and res.closure_size > 1


def test_slide_relations_all_pass():
    ctx = GenusContext(9)
    refl = [CrosscapInvolution.from_cycles(9, [(1, 9), (3, 4)], -1)]
    assert all(c.passed for c in slide_relations(ctx, refl))


def test_full_report_unsupported():
    with pytest.raises(UnsupportedGenusError, match="g >= 16 or g = 14"):
        full_report(GenusContext(15), "six")


def test_full_report_passes_and_has_caveat():
    r = full_report(GenusContext(8), "eight")
    assert r.passed
    d = r.to_dict()
    assert d["schema"] == 1 and d["caveat"] == CAVEAT and d["verdict"] == "pass"
    assert any("D(y) = 1" in n for n in d["notes"])


def test_negative_controls_at_14():
    p = presets(14, "six")
    assert "orbit.a2" in full_report(p.ctx, "six", pset=drop_preset(p, "upsilon")).failures()
    assert "preset.sigma.d_value" in full_report(p.ctx, "six", pset=replace_correction(p, "sigma", None)).failures()


@pytest.mark.parametrize("g", [16, 18])
def test_negative_controls_other_even_genera(g):
    p = presets(g, "six")
    assert full_report(p.ctx, "six", pset=drop_preset(p, "upsilon")).failures()
    for pre in p.presets:
        if pre.y_correction is not None:
            assert full_report(p.ctx, "six", pset=replace_correction(p, pre.name, None)).failures()
