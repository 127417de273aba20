import random

import pytest

from helpers import CONSTRUCTIONS, random_construction, random_invertible, random_unimodular, swap
from modrep.classify import (
    DUAL_UNIT_TANGENT,
    NOT_VERIFIED,
    OUT_OF_RANGE,
    SYMPLECTIC,
    TRIVIAL,
    UNIT_TANGENT,
    augmentation_span,
    biaffine_flag,
    certificate_is_sound,
    classify_representation,
    commutant_basis,
    conjugates_to,
    fixed_space,
    intertwiner,
    model_representation,
)
from modrep.exactla import RationalMatrix, generalized_eigenspace, is_unipotent
from modrep.reps import Representation, direct_sum, direct_sum_with_trivial, dual_rep, symplectic_rep, trivial_rep
from modrep.surface import Surface, generator_curve_system
from modrep.suspension import dual_unit_tangent_rep, unit_tangent_rep


@pytest.mark.parametrize("g", [3, 4])
def test_fixed_space_dims(g):
    s = Surface(g)
    assert fixed_space(symplectic_rep(s)).dim == 0
    assert fixed_space(unit_tangent_rep(s)).dim == 1
    assert fixed_space(dual_unit_tangent_rep(s)).dim == 0
    assert fixed_space(trivial_rep(s, 3)).dim == 3


@pytest.mark.parametrize("verdict,f,q", [(SYMPLECTIC, 2, 2), (UNIT_TANGENT, 3, 2), (DUAL_UNIT_TANGENT, 2, 3)])
def test_model_invariants(verdict, f, q):
    rep = model_representation(verdict, 3, 2)
    assert fixed_space(rep).dim == f
    assert rep.dimension - augmentation_span(rep).dim == q


def test_flag_is_invariant_and_core_is_h():
    rep = model_representation(UNIT_TANGENT, 3, 1)
    v1, v2 = biaffine_flag(rep)
    assert v1 <= v2
    for m in rep.images.values():
        assert v1.is_invariant(m) and v2.is_invariant(m)
    assert v2.dim - v1.dim == 6


def test_flag_of_trivial_rep_is_none():
    assert biaffine_flag(trivial_rep(Surface(3), 2)) is None


def test_trivial_quotient_flag_is_trivial_action():
    """ρ acts trivially on V1 and on V/V2."""
    rng = random.Random(51)
    rep, _, _ = random_construction(rng, 5, "double")
    v1, v2 = biaffine_flag(rep)
    for m in rep.images.values():
        for v in v1.vectors():
            col = RationalMatrix.column(v)
            assert m @ col == col
        for j in range(rep.dimension):
            e = RationalMatrix.column([int(i == j) for i in range(rep.dimension)])
            assert v2.contains((m @ e - e).col_tuple(0))


def test_commutant_of_h_is_scalars():
    h = symplectic_rep(Surface(3))
    basis = commutant_basis(h, h)
    assert len(basis) == 1
    assert basis[0] == RationalMatrix.scalar(6, basis[0][0, 0])


def test_intertwiner_between_non_isomorphic_models():
    s = Surface(3)
    assert intertwiner(unit_tangent_rep(s), dual_unit_tangent_rep(s)) is None
    assert intertwiner(unit_tangent_rep(s), direct_sum_with_trivial(symplectic_rep(s), 1)) is None


def test_intertwiner_recovers_conjugation():
    rng = random.Random(52)
    model = model_representation(DUAL_UNIT_TANGENT, 3, 0)
    rep = model.conjugate(random_invertible(rng, 7))
    x = intertwiner(rep, model)
    assert conjugates_to(rep, model, x)


@pytest.mark.parametrize("kind", CONSTRUCTIONS)
def test_constructions_classify(kind):
    rng = random.Random(500 + CONSTRUCTIONS.index(kind))
    for g in (4, 5):
        rep, verdict, k = random_construction(rng, g, kind)
        rep = rep.conjugate(random_unimodular(rng, rep.dimension))
        report = classify_representation(rep)
        assert (report.verdict, report.trivial_dim) == (verdict, k), report.notes
        assert certificate_is_sound(rep, report)
        dual = classify_representation(dual_rep(rep))
        assert (dual.verdict, dual.trivial_dim) == (swap(verdict), k)


def test_trivial_and_unverified():
    s = Surface(3)
    assert classify_representation(trivial_rep(s, 4)).verdict == TRIVIAL
    images = dict(trivial_rep(s, 2).images)
    images["a1"] = RationalMatrix.scalar(2, 2)
    report = classify_representation(Representation(s, images))
    assert report.verdict == NOT_VERIFIED
    assert report.notes


def test_out_of_range_policy():
    s = Surface(3)
    big = direct_sum_with_trivial(symplectic_rep(s), 4)
    report = classify_representation(big)
    assert report.verdict == SYMPLECTIC and not report.in_range
    assert "exceeds" in report.summary()
    two = direct_sum(symplectic_rep(s), symplectic_rep(s))
    assert classify_representation(two).verdict == OUT_OF_RANGE


def test_report_json_keys():
    report = classify_representation(unit_tangent_rep(Surface(3)))
    doc = report.to_json()
    assert doc["verdict"] == UNIT_TANGENT and doc["trivial_dim"] == 0
    assert [f["dim"] for f in doc["flag"]] == [1, 7]


@pytest.mark.parametrize("verdict", [SYMPLECTIC, UNIT_TANGENT, DUAL_UNIT_TANGENT])
def test_twists_unipotent_with_codim_one_eigenspace(verdict):
    rep = model_representation(verdict, 3, 1)
    for m in rep.images.values():
        assert is_unipotent(m)
        assert rep.dimension - generalized_eigenspace(m, 1, 1).dim == 1


def test_eigenspaces_invariant_under_commuting_twists():
    s = Surface(3)
    cs = generator_curve_system(s)
    rep = model_representation(UNIT_TANGENT, 3, 0).conjugate(random_invertible(random.Random(53), 7))
    for b, c in cs.pairs(0):
        for k in (1, 2):
            e = generalized_eigenspace(rep.images[b], 1, k)
            assert e.is_invariant(rep.images[c])


def test_equal_eigenspaces_of_meeting_twists_are_invariant():
    rng = random.Random(54)
    s = Surface(4)
    cs = generator_curve_system(s)
    reps = [model_representation(v, 4, 1) for v in (SYMPLECTIC, UNIT_TANGENT, DUAL_UNIT_TANGENT)]
    reps.append(random_construction(rng, 4, "double")[0])
    checked = 0
    for rep in reps:
        for b, c in cs.pairs(1):
            for k in (1, 2):
                eb = generalized_eigenspace(rep.images[b], 1, k)
                if eb == generalized_eigenspace(rep.images[c], 1, k):
                    checked += 1
                    assert all(eb.is_invariant(m) for m in rep.images.values())
    assert checked


def test_symplectic_is_self_dual():
    h = symplectic_rep(Surface(3))
    x = intertwiner(h, dual_rep(h))
    assert x is not None and conjugates_to(h, dual_rep(h), x)
    assert classify_representation(dual_rep(h)).verdict == SYMPLECTIC


def test_absent_flag_means_trivial():
    rng = random.Random(55)
    for kind in CONSTRUCTIONS:
        rep = random_construction(rng, 4, kind)[0]
        assert (biaffine_flag(rep) is None) == rep.is_trivial()
