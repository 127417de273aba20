import random
from fractions import Fraction

import pytest

from helpers import random_double_suspension, random_invertible
from modrep.exactla import RationalMatrix, matrix_power
from modrep.reps import symplectic_rep
from modrep.surface import Surface
from modrep.suspension import dual_unit_tangent_rep, unit_tangent_rep
from modrep.transvective import (
    DISPLAYED,
    DegenerateChain,
    NotTransvective,
    TransvectionData,
    _normalized_chain_frame,
    braid_identity,
    chain_block,
    disjoint_identity,
    displayed_generator,
    displayed_pattern_one,
    displayed_pattern_two,
    extract_transvection,
    generator_block_mismatches,
    is_normalized_pattern,
    normalize_chain,
    pairing_table,
    separating_twist_check,
)

CHAIN = ["a1", "a2", "a3", "a4"]


def models(g):
    s = Surface(g)
    return [symplectic_rep(s), unit_tangent_rep(s), dual_unit_tangent_rep(s)]


def test_extract_transvection():
    m = RationalMatrix([[1, 2, -4], [0, 1, 0], [0, 0, 1]])
    d = extract_transvection(m)
    assert RationalMatrix.identity(3) + d.outer() == m
    assert d.vector.col_tuple(0)[0] == 1
    with pytest.raises(NotTransvective):
        extract_transvection(RationalMatrix.scalar(3, 2))
    with pytest.raises(NotTransvective):
        extract_transvection(RationalMatrix([[1, 1, 0], [0, 1, 1], [0, 0, 1]]))
    with pytest.raises(NotTransvective):
        TransvectionData(RationalMatrix.column([1, 0]), RationalMatrix.row([1, 0]))


def test_rescale_keeps_outer_product():
    d = extract_transvection(RationalMatrix([[1, 3], [0, 1]]))
    assert d.rescale(Fraction(2, 7)).outer() == d.outer()


@pytest.mark.parametrize("g", [3, 4])
def test_braid_and_disjoint_identities(g):
    for rep in models(g):
        ds = {s: extract_transvection(m) for s, m in rep.images.items()}
        from modrep.surface import generator_curve_system

        cs = generator_curve_system(rep.surface)
        for a, b in cs.pairs(1):
            assert braid_identity(ds[a], ds[b]) == -1
        for a, b in cs.pairs(0):
            assert disjoint_identity(ds[a], ds[b]) == (0, 0)


def test_identities_survive_conjugation():
    rng = random.Random(41)
    rep = unit_tangent_rep(Surface(3)).conjugate(random_invertible(rng, 7))
    da, db = extract_transvection(rep.images["a1"]), extract_transvection(rep.images["a2"])
    assert braid_identity(da, db) == -1


@pytest.mark.parametrize("g", [3, 4])
def test_normalized_pairing_table(g):
    for rep in models(g):
        chain = [f"a{i}" for i in range(1, 2 * g + 1)]
        datas = normalize_chain([extract_transvection(rep.images[s]) for s in chain])
        assert is_normalized_pattern(pairing_table(datas))


def test_degenerate_chain():
    rep = symplectic_rep(Surface(3))
    with pytest.raises(DegenerateChain):
        normalize_chain([extract_transvection(rep.images[s]) for s in ("a1", "a3")])


@pytest.mark.parametrize("g", [3, 4])
def test_separating_twists_act_trivially(g):
    for rep in models(g):
        report = separating_twist_check(rep, CHAIN, patterns=False)
        assert report.passed
        assert report.genus_two_identity


def test_random_double_suspensions_pass():
    rng = random.Random(42)
    for _ in range(5):
        rep, _, _ = random_double_suspension(rng, Surface(3))
        assert separating_twist_check(rep, CHAIN, patterns=False).passed


def test_non_transvective_rep_rejected():
    s = Surface(3)
    rep = symplectic_rep(s)
    images = {k: m.scale(-1) for k, m in rep.images.items()}
    from modrep.reps import Representation

    with pytest.raises(NotTransvective):
        separating_twist_check(Representation(s, images), CHAIN)


def test_generator_displays_match():
    for rep in models(3):
        assert generator_block_mismatches(rep, CHAIN) == []


def test_displayed_generators_multiply_to_computed_powers():
    """Products of the displayed generator matrices reproduce the computed powers exactly."""
    al = [Fraction(2), Fraction(-3), Fraction(5), Fraction(7, 2)]
    ta, tb, tc, td = (displayed_generator(i, al) for i in range(4))
    one = ta @ ta @ tb
    two = ta @ ta @ tb @ tc @ td
    assert matrix_power(one, 4).is_identity()
    assert matrix_power(two, 8).is_identity()
    # entries that agree with the displays
    assert two == displayed_pattern_two(1, al)
    assert matrix_power(two, 4) == displayed_pattern_two(4, al)
    # the three known discrepancies, each a single entry
    assert (one[0, 2], displayed_pattern_one(1, al)[0, 2]) == (2, 0)
    sq = matrix_power(one, 2)
    assert (sq[1, 2], displayed_pattern_one(2, al)[1, 2]) == (0, 2)
    sq2 = matrix_power(two, 2)
    assert (sq2[0, 2], displayed_pattern_two(2, al)[0, 2]) == (-2, 2)
    for got, want, bad in ((one, displayed_pattern_one(1, al), (0, 2)), (sq, displayed_pattern_one(2, al), (1, 2)), (sq2, displayed_pattern_two(2, al), (0, 2))):
        diffs = [(i, j) for i in range(5) for j in range(5) if got[i, j] != want[i, j]]
        assert diffs == [bad]


def test_chain_blocks_agree_with_generator_products():
    rep = unit_tangent_rep(Surface(3))
    datas, extras = _normalized_chain_frame(rep, CHAIN)
    report = separating_twist_check(rep, CHAIN)
    for x in extras:
        al = [d.alpha(x) for d in datas]
        gens = [displayed_generator(i, al) for i in range(4)]
        one = gens[0] @ gens[0] @ gens[1]
        two = one @ gens[2] @ gens[3]
        assert chain_block(report.powers["g1^1"], datas, x) == one
        assert chain_block(report.powers["g2^2"], datas, x) == two @ two


def test_pattern_report_lists_only_known_display_errors():
    report = separating_twist_check(unit_tangent_rep(Surface(3)), CHAIN)
    bad = {k: {(i, j) for i, j, _, _ in v} for k, v in report.pattern_mismatches.items()}
    assert bad == {"g1^1": {(0, 2)}, "g1^2": {(1, 2)}, "g2^1": set(), "g2^2": {(0, 2)}, "g2^4": set(), "g1^4": set(), "g2^8": set()}
    assert not report.patterns_match
    assert {k for k, _, _ in DISPLAYED} <= set(report.powers)
