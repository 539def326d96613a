import pytest
from hypothesis import given, settings, strategies as st

from twodet.blowup import BlowupPresentation, RelationId, fiber_kernel_oracle, fiber_relations, relation
from twodet.complexes import build_delta_F, build_delta_R, squarefree_exps
from twodet.fields import GF, QQ
from twodet.groebner import (Ideal, buchberger, division, eliminate, is_groebner, normal_form,
                             reduced_gb_equal)
from twodet.hilbert import hilbert_from_exps, hilbert_function
from twodet.orders import GrevLex, Lex
from twodet.ring import Ring


@pytest.fixture
def xy():
    return Ring(["x", "y"], QQ)


def test_normal_form_kills_generator(xy):
    x = xy.var("x")
    assert normal_form(x ** 2, [x], Lex()).is_zero()


def test_normal_form_leaves_remainder(xy):
    x, y = xy.var("x"), xy.var("y")
    assert normal_form(x ** 2 * y + x, [x ** 2], Lex()) == x


def test_plucker_times_t_reduces_in_fiber_basis():
    p = BlowupPresentation(1, 4, GF())
    G = [f for _, f in fiber_relations(p)]
    plu = relation(p, RelationId("PLU", (1, 2, 3, 4)), p.fiber_ring)
    assert normal_form(plu * p.fiber_ring.var("T[1,5]"), G, p.order).is_zero()


def test_buchberger_on_variables(xy):
    gb = buchberger(Ideal(xy, [xy.var("x"), xy.var("y")]), Lex())
    assert sorted(map(str, gb.polys)) == ["x", "y"]


def test_minors_of_small_matrix_have_codim_two():
    R = Ring(["x1", "x2", "x3"], QQ)
    x1, x2, x3 = (R.var(n) for n in R.names)
    rows = [[x1, x2, x3], [x2, x3, R.zero()]]
    minors = [rows[0][a] * rows[1][b] - rows[0][b] * rows[1][a] for a in range(3) for b in range(a + 1, 3)]
    gb = buchberger(Ideal(R, minors), GrevLex())
    H = hilbert_from_exps(gb.leading_exps(), 3)
    assert 3 - H.dimension == 2


def test_fiber_family_is_already_a_basis():
    p = BlowupPresentation(1, 4, GF())
    G = [f for _, f in fiber_relations(p)]
    gb = buchberger(Ideal(p.fiber_ring, G), p.order)
    lead = {max(f.terms, key=p.order.key_fn(p.fiber_ring)) for f in G}
    assert set(gb.leading_exps()) == lead


def test_is_groebner_witness(xy):
    x, y = xy.var("x"), xy.var("y")
    cert = is_groebner([x ** 2, x * y + y ** 2], Lex())
    assert not cert.ok
    assert str(cert.remainder).lstrip("-") == "y^3"


@pytest.mark.parametrize("c", [3, 4, 5, 6])
def test_plucker_alone_is_basis_for_d0_small(c):
    # below four Jordan columns there are no Laplace relations
    for d in range(0, c + 2):
        e = c + 1 - d
        if e >= 4 or d + e < 3:
            continue
        p = BlowupPresentation(d, e, GF())
        G = [f for _, f in fiber_relations(p)]
        assert is_groebner(G, p.order).ok


def test_full_family_basis_1_4():
    p = BlowupPresentation(1, 4, GF())
    cert = is_groebner([f for _, f in fiber_relations(p)], p.order)
    assert cert.ok and cert.failing_pair is None


def test_eliminate_identity_graph():
    R = Ring(["x", "T"], QQ)
    K = eliminate(Ideal(R, [R.var("x") - R.var("T")]), ["x"], Lex())
    assert K.gens == [] or all(g.is_zero() for g in K.gens)


def test_fiber_oracle_d0_e3_is_zero():
    assert fiber_kernel_oracle(BlowupPresentation(0, 3, GF())).gens == []


@pytest.mark.parametrize("field", [GF(), QQ])
def test_fiber_oracle_1_3_is_plucker(field):
    p = BlowupPresentation(1, 3, field)
    K = fiber_kernel_oracle(p)
    assert len(K.gens) == 1
    plu = relation(p, RelationId("PLU", (1, 2, 3, 4)), p.fiber_ring)
    g = K.gens[0]
    lc = g.terms[max(g.terms, key=p.order.key_fn(p.fiber_ring))]
    lp = plu.terms[max(plu.terms, key=p.order.key_fn(p.fiber_ring))]
    assert g * field.div(lp, lc) == plu


def test_hilbert_of_square():
    H = hilbert_from_exps([(2,)], 1)
    assert H.multiplicity == 2 and H.dimension == 0


def test_hilbert_delta_F_0_4():
    K = build_delta_F(0, 4)
    H = hilbert_from_exps(squarefree_exps(K), len(K.vertices))
    assert (H.dimension, H.multiplicity) == (4, 4)


def test_hilbert_delta_R_1_4():
    K = build_delta_R(1, 4)
    H = hilbert_from_exps(squarefree_exps(K), len(K.vertices))
    assert (H.dimension, H.multiplicity) == (7, 36)


def test_hilbert_function_of_free_ring(xy):
    assert hilbert_function(Ideal(xy, []), degree_bound=3) == [1, 2, 3, 4]


def test_reduced_basis_is_unique_under_generator_shuffle():
    p = BlowupPresentation(1, 4, GF())
    G = [f for _, f in fiber_relations(p)]
    a = buchberger(Ideal(p.fiber_ring, G), p.order)
    b = buchberger(Ideal(p.fiber_ring, list(reversed(G))), p.order)
    assert reduced_gb_equal(a, b)


@st.composite
def polys(draw, ring, n=4):
    terms = st.dictionaries(st.tuples(*[st.integers(0, 3)] * ring.nvars), st.integers(-4, 4), max_size=n)
    return ring.from_dict(draw(terms))


R3 = Ring(["x", "y", "z"], GF(101))


@given(polys(R3), st.lists(polys(R3, 3), min_size=1, max_size=3))
def test_division_identity(f, G):
    G = [g for g in G if not g.is_zero()] or [R3.var("x")]
    qs, r = division(f, G, GrevLex())
    total = r
    for q, g in zip(qs, G):
        total = total + q * g
    assert total == f
    key = GrevLex().key_fn(R3)
    lms = [max(g.terms, key=key) for g in G]
    for m in r.terms:
        assert not any(all(a <= b for a, b in zip(lm, m)) for lm in lms)


@settings(max_examples=25)
@given(st.lists(polys(R3, 3), min_size=1, max_size=3), polys(R3, 3))
def test_membership_of_combinations(G, h):
    G = [g for g in G if not g.is_zero()] or [R3.var("y")]
    gb = buchberger(Ideal(R3, G), GrevLex())
    assert gb.contains(h * G[0])
    assert is_groebner(gb.polys, GrevLex()).ok
