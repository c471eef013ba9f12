import pytest

from braceforge.brace import almost_trivial_from_group, trivial_from_group
from braceforge.errors import CapacityError, DomainError
from braceforge.groups import commutator_subgroup, dihedral_group, generated_subgroup, make_cyclic
from braceforge.harness import (
    verify_group_ito,
    verify_lemma_product,
    verify_lemma_suite,
    verify_prop_gen,
    verify_star_factors,
    verify_theorem,
)

R, S = 1, 4  # rotation and reflection in the D4 encoding


def by_name(reports):
    return {r.theorem: r for r in reports}


def test_lemmas_trivial(triv_z9):
    report = verify_lemma_suite(triv_z9)
    assert report.passed
    assert "two_sided_star" in {c.name for c in report.checks}


def test_lemmas_ex1(ex1_brace):
    assert verify_lemma_suite(ex1_brace).passed


def test_lemma_cap(ex1_brace):
    with pytest.raises(CapacityError):
        verify_lemma_suite(ex1_brace, cap=30)


def test_prop_gen_trivial(triv_z9):
    reports = verify_prop_gen(triv_z9, {0, 3, 6}, range(9), [3], [1])
    assert all(r.applicable and r.conclusion.passed for r in reports if r.theorem != "cor_gen")
    assert all(r.conclusion.passed for r in reports)


def test_prop_gen_s3(atriv_s3, s3_perms):
    cyc = s3_perms.index((1, 2, 0))
    swap = s3_perms.index((1, 0, 2))
    a3 = generated_subgroup(atriv_s3.dot, [cyc])
    cor = by_name(verify_prop_gen(atriv_s3, a3, a3, [cyc], [cyc]))["cor_gen"]
    assert cor.applicable and cor.conclusion.passed
    part_a = by_name(verify_prop_gen(atriv_s3, {0, swap}, a3, [swap], [cyc]))["prop_gen_a"]
    assert not part_a.applicable
    assert atriv_s3.star(swap, cyc) != atriv_s3.identity


def test_prop_gen_bad_generators(atriv_s3, s3_perms):
    cyc = s3_perms.index((1, 2, 0))
    with pytest.raises(DomainError):
        verify_prop_gen(atriv_s3, range(6), range(6), [cyc], [cyc])


def test_lemma_product_bicrossed(ex1_data, ex1_brace):
    reports = by_name(verify_lemma_product(ex1_brace, ex1_data.b_factor(), ex1_data.c_factor()))
    a = reports["lem_product_a"]
    assert a.applicable and a.conclusion.passed
    assert not any(r.red_alert for r in reports.values())


def test_lemma_product_non_factorizing(triv_z9):
    reports = verify_lemma_product(triv_z9, {0, 3, 6}, {0})
    assert not any(r.applicable for r in reports)


def test_section3_bicrossed(ex1_data, ex1_brace):
    r = by_name(verify_star_factors(ex1_brace, ex1_data.b_factor(), ex1_data.c_factor()))["prop_a_prime"]
    assert r.applicable and r.conclusion.passed


def test_section3_trivial(triv_z9):
    reports = verify_star_factors(triv_z9, {0, 3, 6}, range(9))
    assert all(r.conclusion.passed for r in reports)


def test_section3_d4_commutators():
    d4 = dihedral_group(4)
    br = almost_trivial_from_group(d4)
    H, K = generated_subgroup(d4, [R]), generated_subgroup(d4, [S])
    r = by_name(verify_star_factors(br, H, K))["prop_a_prime"]
    assert r.conclusion.passed
    assert commutator_subgroup(d4) == commutator_subgroup(d4, H, K) == {0, 2}


def test_ito_almost_trivial_d4():
    d4 = dihedral_group(4)
    br = almost_trivial_from_group(d4)
    rep = verify_theorem(br, "ito", generated_subgroup(d4, [R]), generated_subgroup(d4, [S]))
    assert rep.applicable and rep.conclusion.passed


def test_trivial_all_theorems(triv_z9):
    for which in ("left", "right", "ito"):
        rep = verify_theorem(triv_z9, which, range(9), {0})
        assert rep.applicable and rep.conclusion.passed


def test_ito_sharpness_ex1(ex1_data, ex1_brace):
    rep = verify_theorem(ex1_brace, "ito", ex1_data.b_factor(), ex1_data.c_factor())
    failed = {h.name for h in rep.hypotheses if not h.passed}
    assert "B right ideal in A^op" in failed
    assert not rep.applicable and not rep.conclusion.passed and not rep.red_alert
    d = rep.to_dict()
    assert d["conclusion"]["status"] == "fail" and "witness" in d["conclusion"]


def test_unknown_theorem(triv_z9):
    with pytest.raises(ValueError):
        verify_theorem(triv_z9, "middle", range(9), {0})


def test_group_ito_s3(s3, s3_perms):
    H = generated_subgroup(s3, [s3_perms.index((1, 2, 0))])
    K = generated_subgroup(s3, [s3_perms.index((1, 0, 2))])
    meta = by_name(verify_group_ito(s3, H, K))["prop_metabelian"]
    assert meta.applicable and meta.conclusion.passed


def test_group_ito_d4():
    d4 = dihedral_group(4)
    reports = by_name(verify_group_ito(d4, generated_subgroup(d4, [R]), generated_subgroup(d4, [S])))
    assert reports["prop_metabelian"].applicable and reports["prop_metabelian"].conclusion.passed
    assert not reports["prop_class2"].red_alert


def test_group_ito_abelian():
    z = make_cyclic(10)
    for r in verify_group_ito(z, range(10), {0}):
        assert r.applicable and r.conclusion.passed
