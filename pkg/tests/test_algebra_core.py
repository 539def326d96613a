from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from twodet.blowup import BlowupPresentation
from twodet.fields import GF, QQ, FieldError, field_from_descriptor
from twodet.orders import (CompositePreceq, GrevLex, Lex, OrderError, compare, mdeg1, mdeg2,
                           order_from_descriptor)
from twodet.ring import Ring, RingError, t_name


# ------------------------------------------------------------------ fields

def test_rationals_lowest_terms():
    assert QQ.convert("6/4") == Fraction(3, 2)
    assert QQ.to_str(QQ.convert("-2/4")) == "-1/2"


def test_prime_field_symmetric_print():
    F = GF(7)
    assert F.convert(-1) == 6
    assert F.to_str(6) == "-1"
    assert F.inv(3) * 3 % 7 == 1
    with pytest.raises((ZeroDivisionError, FieldError)):
        F.inv(0)


def test_field_descriptors_roundtrip():
    for F in (QQ, GF(), GF(2)):
        assert field_from_descriptor(F.descriptor()) == F


@given(st.integers(-50, 50), st.integers(1, 50), st.integers(-50, 50), st.integers(1, 50))
def test_prime_field_matches_rationals(a, b, c, d):
    F = GF(32003)
    x, y = Fraction(a, b), Fraction(c, d)
    assert F.convert(x * y) == F.norm(F.convert(x) * F.convert(y))
    assert F.convert(x + y) == F.norm(F.convert(x) + F.convert(y))


# ------------------------------------------------------------------- rings

@pytest.fixture
def R():
    return Ring(["x", "y", "z"], QQ)


def test_difference_of_squares(R):
    x, y = R.var("x"), R.var("y")
    assert (x + y) * (x - y) == x ** 2 - y ** 2


def test_substitute_zero(R):
    x, y = R.var("x"), R.var("y")
    assert (x * y + y).subs({"x": R.zero()}) == y


def test_plucker_maps_to_zero():
    p = BlowupPresentation(0, 4, QQ)
    S = p.s_ring
    plu = p.ring.parse("T[1,4]*T[2,3] - T[1,3]*T[2,4] + T[1,2]*T[3,4]").to_ring(p.fiber_ring)
    img = plu.subs({t_name(a, b): p.minor(a, b, S) for a in range(1, 5) for b in range(a + 1, 5)}, S)
    assert img.is_zero()


def test_substitute_missing_target_variable(R):
    other = Ring(["y"], QQ)
    with pytest.raises(RingError):
        R.var("x").subs({}, other)


def test_parse_print_roundtrip_examples():
    ring = Ring(["y1_1", "y2_1", "x1", "x2", "T[1,2]", "T[1,3]", "T[2,3]", "t", "tau"], QQ)
    for s in ["T[1,3]*T[2,3] - 3/2*x1^2*t + 7", "-y2_1*tau", "0", "x2^3 + y1_1*x1"]:
        p = ring.parse(s)
        assert ring.parse(str(p)) == p


def test_t_pairs_must_be_complete():
    with pytest.raises(RingError):
        Ring(["T[1,2]", "T[1,3]"], QQ)


def test_duplicate_names_rejected():
    with pytest.raises(RingError):
        Ring(["x", "x"])


# ------------------------------------------------------------------ orders

def _mono(ring, text):
    return ring.parse(text)


def test_unit_is_minimum():
    ring = BlowupPresentation(1, 4).ring
    assert compare(CompositePreceq(1, 4), ring.one(), ring.var("x1")) == -1


def test_preceq_plucker_step_four():
    ring = BlowupPresentation(1, 4).ring
    o = CompositePreceq(1, 4)
    u, v = _mono(ring, "T[1,3]*T[2,4]"), _mono(ring, "T[1,4]*T[2,3]")
    assert mdeg1(u) == mdeg1(v) and mdeg2(u) == mdeg2(v)
    assert compare(o, u, v) == 1


def test_preceq_x1_against_x2():
    ring = BlowupPresentation(1, 4).ring
    assert compare(CompositePreceq(1, 4), _mono(ring, "x1*T[1,3]"), _mono(ring, "x2*T[1,2]")) == 1


def test_mdeg_examples():
    ring = BlowupPresentation(2, 3).ring
    assert mdeg1(ring.var("T[1,3]")) == (1, 0, 1, 0, 0)
    assert mdeg1(ring.var("y2_2")) == (0,) * 5
    assert mdeg2(ring.var("T[2,4]")) == (0, 1, 0, 0, 0)
    assert mdeg2(ring.var("x3")) == (0,) * 5
    ring1 = BlowupPresentation(1, 4).ring
    assert mdeg1(_mono(ring1, "x2*T[1,2]")) == (1, 1, 1, 0, 0)
    assert mdeg2(_mono(ring1, "T[1,2]*T[2,3]")) == (1, 1, 0, 0, 0)


def test_preceq_rejects_plain_ring():
    with pytest.raises(OrderError):
        CompositePreceq(1, 4).key_fn(Ring(["a", "b"]))


def test_order_descriptor_roundtrip():
    for o in (Lex(), GrevLex(["z", "y", "x"]), CompositePreceq(2, 3)):
        assert order_from_descriptor(o.descriptor()) == o


# independent oracle: the four tie-breaking steps written out as comparisons

def _grevlex_cmp(u, v, ranking_high_to_low):
    if sum(u) != sum(v):
        return 1 if sum(u) > sum(v) else -1
    for i in reversed(ranking_high_to_low):
        if u[i] != v[i]:
            return 1 if u[i] < v[i] else -1
    return 0


def _preceq_oracle(ring, d, e, u, v):
    c = d + e - 1
    names = ring.names
    pos = {n: i for i, n in enumerate(names)}

    def at(m, n):
        return m[pos[n]] if n in pos else 0

    for j in range(1, d + 1):  # step 1: lex on y2
        a, b = at(u, f"y2_{j}"), at(v, f"y2_{j}")
        if a != b:
            return 1 if a > b else -1

    def md1(m):
        out = [0] * (c + 1)
        for n, a in zip(names, m):
            if n.startswith("T["):
                x, y = map(int, n[2:-1].split(","))
                out[x - 1] += a
                out[y - 1] += a
            elif n.startswith("y1_"):
                out[int(n[3:]) - 1] += a
            elif n.startswith("x"):
                out[int(n[1:]) + d - 1] += a
        return out

    def md2(m):
        out = [0] * (c + 1)
        for n, a in zip(names, m):
            if n.startswith("T["):
                out[int(n[2:-1].split(",")[0]) - 1] += a
        return out

    r = _grevlex_cmp(md1(u), md1(v), list(range(c, -1, -1)))
    if r:
        return r
    r = _grevlex_cmp(md2(u), md2(v), list(range(c + 1)))
    if r:
        return r
    step4 = [f"y2_{j}" for j in range(1, d + 1)] + [f"y1_{j}" for j in range(1, d + 1)] + ["x1"]
    step4 += [t_name(a, b) for a in range(1, c + 2) for b in range(a + 1, c + 2)]
    step4 += [f"x{h}" for h in range(2, e + 1)]
    for n in step4:
        if at(u, n) != at(v, n):
            return 1 if at(u, n) > at(v, n) else -1
    return 0


DE = [(1, 3), (0, 4), (2, 2), (1, 4), (2, 3)]


@st.composite
def mono_triples(draw):
    d, e = draw(st.sampled_from(DE))
    ring = BlowupPresentation(d, e).ring
    n = ring.nvars
    ex = st.lists(st.integers(0, 2), min_size=n, max_size=n).map(tuple)
    return d, e, ring, draw(ex), draw(ex), draw(ex)


@given(mono_triples())
def test_preceq_matches_oracle(args):
    d, e, ring, u, v, _ = args
    assert CompositePreceq(d, e).compare_exps(ring, u, v) == _preceq_oracle(ring, d, e, u, v)


@given(mono_triples(), st.sampled_from(["lex", "grevlex", "preceq"]))
def test_order_axioms(args, kind):
    d, e, ring, u, v, w = args
    o = {"lex": Lex(), "grevlex": GrevLex(), "preceq": CompositePreceq(d, e)}[kind]
    cmp = lambda a, b: o.compare_exps(ring, a, b)  # noqa: E731
    add = lambda a, b: tuple(x + y for x, y in zip(a, b))  # noqa: E731
    assert cmp(u, v) == -cmp(v, u)
    assert (cmp(u, v) == 0) == (u == v)
    if cmp(u, v) < 0 and cmp(v, w) < 0:
        assert cmp(u, w) < 0
    assert cmp(add(u, w), add(v, w)) == cmp(u, v)
    zero = (0,) * ring.nvars
    if u != zero:
        assert cmp(zero, u) < 0


@given(mono_triples())
def test_mdeg_additive(args):
    d, e, ring, u, v, _ = args
    mu, mv = ring.monomial(u), ring.monomial(v)
    s = tuple(a + b for a, b in zip(mdeg1(mu), mdeg1(mv)))
    assert mdeg1(mu * mv) == s
    s2 = tuple(a + b for a, b in zip(mdeg2(mu), mdeg2(mv)))
    assert mdeg2(mu * mv) == s2


@given(mono_triples())
def test_preceq_restricted_to_t_variables(args):
    d, e, ring, u, v, _ = args
    p = BlowupPresentation(d, e)
    T = p.fiber_ring
    keep = [ring.index[n] for n in T.names]
    a, b = tuple(u[i] for i in keep), tuple(v[i] for i in keep)
    o = CompositePreceq(d, e)
    assert o.compare_exps(T, a, b) == _preceq_oracle(T, d, e, a, b)


@st.composite
def poly_triples(draw):
    F = draw(st.sampled_from([QQ, GF(101)]))
    ring = Ring(["x", "y", "z"], F)
    terms = st.dictionaries(st.tuples(*[st.integers(0, 2)] * 3), st.integers(-5, 5), max_size=4)
    return ring, *[ring.from_dict(draw(terms)) for _ in range(3)]


@given(poly_triples())
def test_ring_axioms(args):
    _, a, b, c = args
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@given(poly_triples())
def test_print_parse_roundtrip(args):
    ring, a, _, _ = args
    assert ring.parse(str(a)) == a
