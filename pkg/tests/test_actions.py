import itertools
import json

import pytest

from duality_kit.actions import (
    Domain,
    FiniteGroup,
    MappingTable,
    asymmetry_check,
    block_of,
    centralizer_of_simply_transitive,
    internal_direct_product_check,
    is_simply_transitive,
    lambda_embed,
    orbit,
    orbit_partition,
    rho_basepoint_independence,
    rho_construct,
    rho_map,
    verify_dual,
)
from duality_kit.modular import I, Segment, T, affine_apply, ti_group
from duality_kit.neoriemann import ROOT, plr_root_form, triad_groups
from duality_kit.perms import parse_cycles, permute_segment

X = ROOT


def p3(text):
    return parse_cycles(text, 3)


def perm_action(text):
    p = p3(text)
    return lambda y: permute_segment(p, y)


def aff_action(f):
    return lambda y: affine_apply(f, y)


S3_GENS = [perm_action("(123)"), perm_action("(23)")]
TI_GENS = [aff_action(T(1)), aff_action(I(0))]


@pytest.fixture(scope="module")
def s3_on_x():
    points = orbit(S3_GENS, X)
    return lambda_embed(S3_GENS, points, ["(123)", "(23)"])


@pytest.fixture(scope="module")
def ti_on_s():
    return lambda_embed(TI_GENS, orbit(TI_GENS, X), ["T1", "I0"])


def named(text):
    return permute_segment(p3(text), X)


def test_orbit_examples():
    s3x = orbit(S3_GENS, X)
    expected = {named(t) for t in ("id", "(123)", "(132)", "(23)", "(13)", "(12)")}
    assert set(s3x) == expected and len(s3x) == 6
    assert {Segment((0, 4, 7)), Segment((7, 0, 4)), Segment((4, 7, 0))} <= set(s3x)
    assert len(orbit(TI_GENS, X)) == 24
    assert len(orbit(S3_GENS + TI_GENS, X)) == 144
    assert orbit(S3_GENS, X)[0] == X


def test_orbit_rejects_collisions():
    squash = lambda y: Segment((y[0], y[0], y[2]))  # noqa: E731
    with pytest.raises(ValueError):
        orbit([squash], Segment((0, 4, 7)))


def test_simple_transitivity(s3_on_x, ti_on_s):
    assert is_simply_transitive(ti_on_s)
    assert is_simply_transitive(s3_on_x)
    bad = lambda_embed(S3_GENS, orbit(S3_GENS, Segment((0, 0, 7))))
    result = is_simply_transitive(bad)
    assert not result
    _, _, witnesses = result.witness
    assert len(witnesses) == 2


def test_lambda_golden_cycles(s3_on_x):
    lam123 = MappingTable.from_function(s3_on_x.domain, perm_action("(123)"))
    cycles = {frozenset(_rotations(c)) for c in lam123.cycles()}
    assert cycles == {
        frozenset(_rotations((named("id"), named("(123)"), named("(132)")))),
        frozenset(_rotations((named("(23)"), named("(12)"), named("(13)")))),
    }
    assert MappingTable.from_function(s3_on_x.domain, aff_action(T(0))).is_identity


def _rotations(c):
    return [tuple(c[k:]) + tuple(c[:k]) for k in range(len(c))]


def test_rho_golden(s3_on_x):
    rmap = rho_map(s3_on_x, X)
    lam123 = MappingTable.from_function(s3_on_x.domain, perm_action("(123)"))
    lam23 = MappingTable.from_function(s3_on_x.domain, perm_action("(23)"))
    rho123 = rmap[lam123]
    got = {frozenset(_rotations(c)) for c in rho123.cycles()}
    assert got == {
        frozenset(_rotations((named("id"), named("(132)"), named("(123)")))),
        frozenset(_rotations((named("(23)"), named("(12)"), named("(13)")))),
    }
    assert rmap[lam23](named("(123)")) == named("(12)")


def test_rho_of_ti_contains_r(ti_on_s):
    rho = rho_construct(ti_on_s, X)
    r = MappingTable.from_function(ti_on_s.domain, lambda y: plr_root_form("R", y))
    assert r in rho
    assert r(X) == Segment((4, 0, 9))
    assert len(rho) == 24


def test_rho_requires_basepoint_and_simple_transitivity(s3_on_x):
    with pytest.raises(ValueError):
        rho_map(s3_on_x, Segment((1, 2, 3)))
    bad = lambda_embed(S3_GENS, orbit(S3_GENS, Segment((0, 0, 7))))
    with pytest.raises(ValueError):
        rho_map(bad, Segment((0, 0, 7)))


def brute_force_centralizer(G: FiniteGroup) -> set[MappingTable]:
    """Every bijection of the domain, filtered by commutation (feasible for |S| <= 7)."""
    n = len(G.domain)
    out = set()
    for images in itertools.permutations(range(n)):
        c = MappingTable(G.domain, images)
        if all(c.commutes_with(g) for g in G.generators):
            out.add(c)
    return out


def test_centralizer_against_brute_force(s3_on_x):
    cent = centralizer_of_simply_transitive(s3_on_x)
    assert set(cent.element_set) == brute_force_centralizer(s3_on_x)
    assert cent.same_elements(rho_construct(s3_on_x, X))
    assert len(cent) == 6


def test_centralizer_of_ti_equals_rho(ti_on_s):
    cent = centralizer_of_simply_transitive(ti_on_s)
    assert cent.same_elements(rho_construct(ti_on_s, X))


def test_centralizer_trivial():
    d = Domain([Segment((0,))])
    trivial = FiniteGroup.generate(d, [MappingTable.identity(d)])
    assert len(centralizer_of_simply_transitive(trivial)) == 1


def test_centralizer_rejects_non_simply_transitive():
    bad = lambda_embed(S3_GENS, orbit(S3_GENS, Segment((0, 0, 7))))
    with pytest.raises(ValueError):
        centralizer_of_simply_transitive(bad)


def test_verify_dual(ti_on_s):
    rho = rho_construct(ti_on_s, X)
    assert verify_dual(ti_on_s, rho)
    assert verify_dual(rho, ti_on_s)
    tg = triad_groups()
    assert verify_dual(tg.lam_all(), tg.rho_all())
    report = verify_dual(tg.lam_s3(), tg.rho_s3())
    assert not report
    assert report.clauses["G simply transitive"] is False
    swapped = verify_dual(tg.rho_s3(), tg.lam_s3())
    assert bool(swapped) == bool(report)


def test_verify_dual_wrong_partner(ti_on_s):
    report = verify_dual(ti_on_s, ti_on_s)  # T/I is not abelian, so not its own centralizer
    assert not report
    assert report.clauses["C(G) == H"] is False


def test_basepoint_independence(ti_on_s, s3_on_x):
    res = rho_basepoint_independence(ti_on_s, X, Segment((7, 11, 2)))
    assert res.same_image
    res = rho_basepoint_independence(s3_on_x, X, named("(123)"))
    assert res.same_image and res.differing_elements > 0
    d = Domain([X])
    one = FiniteGroup.generate(d, [MappingTable.identity(d)])
    assert rho_basepoint_independence(one, X, X)


def test_internal_direct_product():
    tg = triad_groups()
    lam = internal_direct_product_check(tg.lam_s3(), tg.lam_ti(), whole=tg.lam_all())
    assert lam and lam.product_order == 144
    rho = internal_direct_product_check(tg.rho_s3(), tg.rho_ti(), whole=tg.rho_all())
    assert rho and rho.product_order == 144
    same = internal_direct_product_check(tg.lam_s3(), tg.lam_s3())
    assert not same and not same.clauses["trivial intersection"]


def test_asymmetry():
    assert asymmetry_check(Segment((0, 4, 7)), ti_group())
    res = asymmetry_check(Segment((0, 4, 8)), ti_group())
    assert not res and res.offending == T(4)
    res = asymmetry_check(Segment((0, 6)), [T(0), T(6)])
    assert not res and res.offending == T(6)


def test_orbit_partition():
    blocks = orbit_partition(X, ti_group())
    assert len(blocks) == 24 and all(len(b.points) == 6 for b in blocks)
    points = [p for b in blocks for p in b.points]
    assert len(set(points)) == 144
    assert block_of(Segment((7, 0, 4)), blocks).affine == T(0)
    one = orbit_partition(X, [T(0)])
    assert len(one) == 1 and len(one[0].points) == 6
    with pytest.raises(ValueError):
        orbit_partition(Segment((0, 4, 8)), ti_group())
    with pytest.raises(ValueError):
        orbit_partition(Segment((0, 0, 7)), ti_group())


def test_lambda_rho_commute_everywhere():
    tg = triad_groups()
    lam, rho = list(tg.lam.values()), list(tg.rho.values())
    assert all(a * b == b * a for a in lam for b in rho)


def test_rho_is_homomorphism():
    tg = triad_groups()
    for (s1, g1), (s2, g2) in itertools.product(tg.lam, repeat=2):
        assert tg.rho[(s1 * s2, g1 * g2)] == tg.rho[(s1, g1)] * tg.rho[(s2, g2)]


def test_lambda_rho_orders_match_orbit():
    tg = triad_groups()
    assert len(tg.lam_all()) == len(tg.rho_all()) == 144
    assert len(tg.rho_all().element_set) == 144


def test_json_round_trip(ti_on_s):
    t = ti_on_s.generators[0]
    again = MappingTable.from_json(json.loads(json.dumps(t.to_json())), ti_on_s.domain)
    assert again == t
    data = ti_on_s.to_json()
    assert len(data["elements"]) == 24 and len(data["domain"]) == 24


def test_group_closure_cap():
    tg = triad_groups()
    with pytest.raises(RuntimeError):
        FiniteGroup.generate(tg.lam_all().domain, list(tg.lam.values())[:4], cap=10)


def test_words_are_shortest(ti_on_s):
    assert ti_on_s.words[ti_on_s.generators[0]] == "T1"
    assert all(len(w) <= 12 * 2 for w in ti_on_s.words.values())
    assert ti_on_s.is_closed()
