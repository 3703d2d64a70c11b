import itertools
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from duality_kit.modular import Segment, affine_apply
from duality_kit.neoriemann import (
    ROOT,
    S3,
    TI,
    cohn_group,
    cohn_op,
    consonant_domain,
    contextual_inversion,
    dihedral_certificate,
    dihedral_order_census,
    enchaining,
    extended_plr,
    extended_plr_group,
    factorize,
    octatonic_restriction,
    plr_group,
    plr_root_form,
    plr_word,
    rho_affine,
    rho_perm,
    rich,
    rich_cycle_census,
    rich_not_in_dual_group,
    rich_table,
    table,
    triad_groups,
)
from duality_kit.perms import permute_segment


def s(*v):
    return Segment(v)


triads = st.sampled_from(consonant_domain().points)


def test_factorization_unique_and_total():
    assert len(consonant_domain()) == 144
    for y in consonant_domain():
        f = factorize(y)
        assert permute_segment(f.sigma, affine_apply(f.affine, ROOT)) == y
    with pytest.raises(ValueError):
        factorize(s(0, 4, 8))


def test_plr_root_form_values():
    assert plr_root_form("P", ROOT) == s(7, 3, 0)
    assert plr_root_form("L", ROOT) == s(11, 7, 4)
    assert plr_root_form("R", ROOT) == s(4, 0, 9)


def test_plr_closed_formulas():
    for y in (affine_apply(g, ROOT) for g in TI):
        y1, y2, y3 = y
        assert plr_root_form("P", y) == s(y3, -y2 + y1 + y3, y1)
        assert plr_root_form("L", y) == s(-y1 + y2 + y3, y3, y2)
        assert plr_root_form("R", y) == s(y2, y1, -y3 + y1 + y2)


def test_plr_root_form_refuses_inversions():
    with pytest.raises(ValueError):
        plr_root_form("P", s(4, 7, 0))
    with pytest.raises(ValueError):
        plr_root_form("Q", ROOT)


def test_plr_common_tones_swap_positions():
    for y in (affine_apply(g, ROOT) for g in TI):
        for op in "PLR":
            z = plr_root_form(op, y)
            common = set(y) & set(z)
            assert len(common) == 2
            pos_y = [i for i, v in enumerate(y) if v in common]
            assert all(z[i] in common for i in pos_y)
            assert [y[i] for i in pos_y] == [z[i] for i in pos_y][::-1]


def test_extended_plr_examples():
    assert extended_plr("R", s(7, 0, 4)) == s(9, 4, 0)
    assert extended_plr("R", ROOT) == s(4, 0, 9)
    assert all(extended_plr("PP", y) == y for y in consonant_domain())


@given(triads, st.sampled_from(S3), st.sampled_from("PLR"))
def test_extended_plr_commutes_with_permutations(y, sigma, op):
    assert extended_plr(op, permute_segment(sigma, y)) == permute_segment(sigma, extended_plr(op, y))


def test_extended_plr_group_is_rho_ti():
    ext = extended_plr_group()
    assert len(ext) == 24
    assert ext.same_elements(triad_groups().rho_ti())


def test_rho_s3_with_plr_generates_dual_group():
    from duality_kit.actions import FiniteGroup

    gens = list(extended_plr_group().generators) + [table(lambda y, p=p: rho_perm(p, y)) for p in S3]
    assert FiniteGroup.generate(consonant_domain(), gens).same_elements(triad_groups().rho_all())


def test_cohn_values():
    assert cohn_op("L'", s(4, 7, 0)) == s(4, 7, 11)
    assert cohn_op("P'", ROOT) == s(0, 3, 7)
    assert all(cohn_op("P'", cohn_op("P'", y)) == y for y in consonant_domain())


def voice_preserving(op):
    """P/L/R applied to the pitch-class set, new note written into the vacated voice."""
    sets = {affine_apply(g, ROOT).underlying_set: affine_apply(g, ROOT) for g in TI}

    def f(y):
        new = plr_root_form(op, sets[y.underlying_set]).underlying_set
        (missing,) = new - set(y)
        return Segment(tuple(v if v in new else missing for v in y))

    return f


def test_cohn_ops_keep_common_tones_in_place():
    for op in "PLR":
        oracle = voice_preserving(op)
        for y in consonant_domain():
            z = cohn_op(op + "'", y)
            assert z == oracle(y)
            assert sum(a == b for a, b in zip(y, z)) == 2


def test_cohn_group_structure():
    g = cohn_group()
    lp = table(lambda y: cohn_op("L'", y))
    rp = table(lambda y: cohn_op("R'", y))
    assert (lp * rp).order() == 12
    # P'R' is the voice-held PR cycle: 8 chords, but voices come back rotated
    pp = table(lambda y: cohn_op("P'", y))
    assert (pp * rp).order() == 12
    assert len(g) == 72


def test_dihedral_census_oracle():
    assert dihedral_order_census(12) == {1: 1, 2: 13, 3: 2, 4: 2, 6: 2, 12: 4}
    assert sum(dihedral_order_census(5).values()) == 10


def test_dihedral_certificate_on_plr():
    cert = dihedral_certificate(plr_group())
    assert cert.ok and cert.rotation.order() == 12
    assert plr_group().order_census() == dihedral_order_census(12)


def test_contextual_inversion():
    assert contextual_inversion(2, 3, ROOT) == s(11, 7, 4)
    assert contextual_inversion(1, 3, ROOT) == s(7, 3, 0)
    with pytest.raises(ValueError):
        contextual_inversion(1, 4, ROOT)
    with pytest.raises(ValueError):
        contextual_inversion(2, 2, ROOT)


@given(st.tuples(*[st.integers(0, 11)] * 4), st.permutations([1, 2, 3, 4]))
def test_contextual_inversion_involution(v, idx):
    y = Segment(v)
    q, r = idx[:2]
    assert contextual_inversion(q, r, contextual_inversion(q, r, y)) == y


def test_j_agrees_with_plr_only_on_root_forms():
    ext = table(lambda y: extended_plr("P", y))
    j13 = table(lambda y: contextual_inversion(1, 3, y))
    assert ext != j13
    for y in (affine_apply(g, ROOT) for g in TI):
        assert ext(y) == j13(y)


def test_rich_examples():
    assert rich(s(4, 7, 11)) == s(7, 11, 2)
    assert rich(ROOT) == s(4, 7, 11)
    assert rich(s(0, 7, 3)) == s(7, 3, 10)
    assert enchaining(2, 3, 1, ROOT) == rich(ROOT)
    with pytest.raises(ValueError):
        enchaining(1, 1, 2, ROOT)
    with pytest.raises(ValueError):
        rich(s(0, 4))


@given(st.tuples(*[st.integers(0, 11)] * 3))
def test_rich_starts_with_last_two(v):
    y = Segment(v)
    z = rich(y)
    assert (z[0], z[1]) == (y[1], y[2])


def test_rich_census():
    census = rich_cycle_census()
    assert Counter(len(c) for c in census) == {24: 2, 8: 6, 6: 8}
    assert {c.kind for c in census if len(c) == 8} == {"PR"}
    target = next(c for c in census if s(1, 6, 10) in c.cycle)
    k = target.cycle.index(s(1, 6, 10))
    rotated = target.cycle[k:] + target.cycle[:k]
    assert rotated == tuple(s(*v) for v in [(1, 6, 10), (6, 10, 3), (10, 3, 7), (3, 7, 0),
                                             (7, 0, 4), (0, 4, 9), (4, 9, 1), (9, 1, 6)])


def test_rich_powers():
    r = rich_table()
    six = {y for c in rich_cycle_census() if len(c) == 6 for y in c.cycle}
    eight = {y for c in rich_cycle_census() if len(c) == 8 for y in c.cycle}
    assert set((r ** 6).fixed_points()) == six and len(six) == 48
    assert set((r ** 8).fixed_points()) == eight and len(eight) == 48
    assert (r ** 24).is_identity
    assert r.order() == 24


def test_rich_not_in_dual_group():
    w = rich_not_in_dual_group()
    assert not w.in_dual_group and w.proven
    six = {y for c in rich_cycle_census() if len(c) == 6 for y in c.cycle}
    assert w.fixed_point_of_6th_power in six


def test_octatonic_restriction():
    res = octatonic_restriction([0, 1, 3, 4, 6, 7, 9, 10])
    assert [len(c) for c in res.cycles] == [8, 8]
    assert len(res.support) == 16
    assert not res.closed and len(res.segments) == 48
    res = octatonic_restriction([2, 3, 5, 6, 8, 9, 11, 0])
    assert any(s(2, 6, 11) in c.cycle for c in res.cycles)
    full = octatonic_restriction(range(12))
    assert full.closed and len(full.cycles) == 16


def test_octatonic_restriction_as_listed():
    res = octatonic_restriction([0, 2, 3, 4, 6, 7, 9, 10])
    assert res.cycles == []
    assert len(res.segments) == 42


def test_plr_words_are_shortest_and_least():
    roots = [affine_apply(g, ROOT) for g in TI]
    for h in TI:
        word = plr_word(h)
        target = [rho_affine(h, y) for y in roots]
        assert [extended_plr(word, y) for y in roots] == target
        for k in range(len(word) + 1):
            hits = ["".join(w) for w in itertools.product("PLR", repeat=k)
                    if [extended_plr("".join(w), y) for y in roots] == target]
            if k < len(word):
                assert not hits
            else:
                assert min(hits, key=lambda w: ["PLR".index(c) for c in w]) == word
