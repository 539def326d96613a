import itertools

import pytest

from twodet.blowup import (FAMILIES, BlowupPresentation, RelationError, RelationId, all_relations,
                           bidegree, expected_lm, family_counts, fiber_kernel_oracle, fiber_relations,
                           fiber_type_check, ideals_equal, kernel_membership, leading_monomial_of,
                           rees_kernel_oracle, rees_relations, relation, second_syzygy_check,
                           verify_fiber_theorem, verify_rees_theorem)
from twodet.fields import GF, QQ
from twodet.orders import mdeg1

GRID8 = [(d, c + 1 - d) for c in range(2, 9) for d in range(0, c + 2)]


def _pres(d, e, field=QQ):
    return BlowupPresentation(d, e, field)


def test_t_variable_count():
    for d, e in [(0, 3), (1, 4), (3, 3)]:
        p = _pres(d, e)
        assert len(p.t_names) == (p.c + 1) * p.c // 2


def test_plucker_display():
    p = _pres(1, 3)
    assert relation(p, RelationId("PLU", (1, 2, 3, 4))) == p.ring.parse(
        "T[1,2]*T[3,4] - T[1,3]*T[2,4] + T[1,4]*T[2,3]")


def test_lower_en_reads_second_row():
    p = _pres(1, 4)
    assert relation(p, RelationId("LEN", (1, 2, 3))) == p.ring.parse(
        "y2_1*T[2,3] - x2*T[1,3] + x3*T[1,2]")


def test_laplace_last_column_display():
    # the three-term case instantiated with delta = c + 1
    p = _pres(0, 5)
    assert relation(p, RelationId("LAP", (1, 2, 3, 5))) == p.ring.parse(
        "T[1,5]*T[3,4] - T[2,5]*T[2,4] + T[3,5]*T[2,3]")


def test_laplace_needs_four_jordan_columns():
    with pytest.raises(RelationError):
        relation(_pres(1, 3), RelationId("LAP", (2, 3, 4, 4)))
    assert family_counts(2, 3)["LAP"] == 0


def test_out_of_range_indices():
    with pytest.raises(RelationError):
        relation(_pres(1, 3), RelationId("UEN", (1, 2, 9)))


def test_expected_lm_examples():
    p = _pres(1, 4)
    assert expected_lm(RelationId("PLU", (1, 2, 3, 4)), 1, 4, p.ring) == p.ring.parse("T[1,3]*T[2,4]")
    assert expected_lm(RelationId("LEN", (1, 2, 3)), 1, 4, p.ring) == p.ring.parse("y2_1*T[2,3]")
    assert expected_lm(RelationId("UEN", (1, 2, 4)), 1, 4, p.ring) == p.ring.parse("x1*T[1,4]")


@pytest.mark.parametrize("d,e,counts", [
    (1, 3, {"UEN": 4, "LEN": 4, "PLU": 1, "LAP": 0}),
    (0, 4, {"UEN": 4, "LEN": 4, "PLU": 1, "LAP": 1}),
    (1, 4, {"UEN": 10, "LEN": 10, "PLU": 5, "LAP": 1}),
])
def test_family_counts(d, e, counts):
    assert family_counts(d, e) == counts
    rels, _ = all_relations(_pres(d, e, GF()))
    got = {f: sum(1 for rid, _ in rels if rid.family == f) for f in FAMILIES}
    assert got == counts


@pytest.mark.slow
@pytest.mark.parametrize("d,e", GRID8)
def test_leading_monomials_exhaustive(d, e):
    p = _pres(d, e, GF())
    _, report = all_relations(p)
    assert all(ok for _, ok in report)


@pytest.mark.parametrize("d,e", [(0, 4), (1, 4), (2, 3), (3, 3)])
def test_bidegrees(d, e):
    p = _pres(d, e, GF())
    for rid, f in rees_relations(p):
        want = (1, 1) if rid.family in ("UEN", "LEN") else (0, 2)
        assert bidegree(p, f) == {want}, rid


def _mdeg1_homogeneous(p, f):
    return len({mdeg1(p.ring.monomial(m)) for m in f.terms}) == 1


@pytest.mark.parametrize("d,e", [(1, 4), (2, 4), (0, 5)])
def test_mdeg1_homogeneity(d, e):
    p = _pres(d, e, GF())
    rels = rees_relations(p)
    for rid, f in rels:
        if rid.family in ("UEN", "PLU"):
            assert _mdeg1_homogeneous(p, f), rid
    # LEN and LAP have witnesses of mixed mdeg_1
    assert any(not _mdeg1_homogeneous(p, f) for rid, f in rels if rid.family == "LEN")
    assert any(not _mdeg1_homogeneous(p, f) for rid, f in rels if rid.family == "LAP")


def test_kernel_oracle_d0_e3_zero():
    assert fiber_kernel_oracle(_pres(0, 3, GF())).gens == []


def test_kernel_oracle_1_3_principal():
    K = fiber_kernel_oracle(_pres(1, 3, QQ))
    assert len(K.gens) == 1 and len(K.gens[0].terms) == 3


def test_rees_oracle_equals_families_1_4():
    p = _pres(1, 4, GF())
    K = rees_kernel_oracle(p)
    assert ideals_equal([f for _, f in rees_relations(p)], K.gens, p.order)


def test_fiber_certificate_2_2():
    cert = verify_fiber_theorem(2, 2, GF())
    assert cert["ok"] and cert["counts"] == {"PLU": 1, "LAP": 0}
    assert cert["oracle_size"] == 1


@pytest.mark.parametrize("d,e", [(d, c + 1 - d) for c in range(2, 6) for d in range(0, c + 2)])
def test_fiber_certificates_up_to_c5(d, e):
    assert verify_fiber_theorem(d, e, GF(), oracle=d + e <= 5)["ok"]


def test_rees_certificate_1_4():
    cert = verify_rees_theorem(1, 4, GF())
    assert cert["groebner"] and cert["oracle_lm_equal"]


@pytest.mark.parametrize("d,e", [(1, 3), (0, 4), (2, 2)])
def test_rees_certificates_small(d, e):
    assert verify_rees_theorem(d, e, GF())["ok"]


def test_fiber_type_1_3():
    rep = fiber_type_check(_pres(1, 3, GF()))
    assert rep["fiber_type"] and rep["fiber_part_matches"]


def test_second_syzygy_examples():
    assert second_syzygy_check(_pres(2, 3), (1, 2, 3, 4))
    assert second_syzygy_check(_pres(1, 4), (1, 2, 4, 5))


def test_second_syzygy_literal_sign_fails():
    assert not second_syzygy_check(_pres(2, 3), (1, 2, 3, 4), literal=True)


@pytest.mark.parametrize("d,e", [(1, 4), (2, 3), (0, 5)])
def test_second_syzygy_all_sigma(d, e):
    p = _pres(d, e)
    for sigma in itertools.combinations(range(1, p.c + 2), 4):
        assert second_syzygy_check(p, sigma)


@pytest.mark.parametrize("d,e", [(1, 3), (0, 4), (1, 4), (2, 4)])
def test_kernel_membership(d, e):
    rep = kernel_membership(_pres(d, e))
    assert rep["ok"], rep["failures"][:1]


def test_leading_monomial_helper():
    p = _pres(1, 4)
    f = relation(p, RelationId("PLU", (2, 3, 4, 5)))
    assert leading_monomial_of(f, p.order) == p.ring.parse("T[2,4]*T[3,5]")


def test_fiber_relations_live_in_t_ring():
    p = _pres(1, 4)
    for _, f in fiber_relations(p):
        assert f.ring == p.fiber_ring
