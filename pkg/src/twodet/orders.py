"""Monomial orders as sort keys.

Every order compiles, for a given ring, to a function sending an exponent
tuple to a flat tuple of ints; a larger tuple means a larger monomial.
Compiled keys are memoized per (order, ring).
"""

from __future__ import annotations

from typing import Callable, Iterable

from .ring import Polynomial, Ring, RingError


class OrderError(ValueError):
    pass


class MonomialOrder:
    kind = "abstract"

    def __init__(self):
        self._cache: dict = {}

    def _build(self, ring: Ring) -> Callable:
        raise NotImplementedError

    def key_fn(self, ring: Ring) -> Callable:
        fn = self._cache.get(ring)
        if fn is None:
            raw = self._build(ring)
            memo: dict = {}

            def fn(exps, _raw=raw, _memo=memo):
                k = _memo.get(exps)
                if k is None:
                    k = _memo[exps] = _raw(exps)
                return k

            self._cache[ring] = fn
        return fn

    def rkey_fn(self, ring: Ring) -> Callable:
        """Negated key: the smallest rkey is the largest monomial (heap friendly)."""
        rk = self._cache.get(("r", ring))
        if rk is None:
            key = self.key_fn(ring)
            memo: dict = {}

            def rk(exps, _key=key, _memo=memo):
                k = _memo.get(exps)
                if k is None:
                    k = _memo[exps] = tuple(-x for x in _key(exps))
                return k

            self._cache[("r", ring)] = rk
        return rk

    def compare_exps(self, ring: Ring, u, v) -> int:
        k = self.key_fn(ring)
        a, b = k(tuple(u)), k(tuple(v))
        return (a > b) - (a < b)

    def descriptor(self) -> dict:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(repr(self.descriptor()))

    def __repr__(self):
        return f"{type(self).__name__}({self.descriptor()})"


def _ranking_positions(ring: Ring, ranking) -> list:
    if ranking is None:
        return list(range(ring.nvars))
    pos = []
    for name in ranking:
        if name not in ring.index:
            raise OrderError(f"ranking names unknown variable {name}")
        pos.append(ring.index[name])
    if sorted(pos) != list(range(ring.nvars)):
        raise OrderError("ranking must list every ring variable exactly once")
    return pos


class Lex(MonomialOrder):
    kind = "lex"

    def __init__(self, ranking: Iterable[str] | None = None):
        super().__init__()
        self.ranking = None if ranking is None else tuple(ranking)

    def _build(self, ring):
        pos = _ranking_positions(ring, self.ranking)
        return lambda e: tuple(e[i] for i in pos)

    def descriptor(self):
        return {"type": "lex", "ranking": list(self.ranking) if self.ranking else None}


class GrevLex(MonomialOrder):
    """Degree first, then the smaller exponent on the lowest-ranked variable wins."""

    kind = "grevlex"

    def __init__(self, ranking: Iterable[str] | None = None):
        super().__init__()
        self.ranking = None if ranking is None else tuple(ranking)

    def _build(self, ring):
        rev = _ranking_positions(ring, self.ranking)[::-1]
        return lambda e: (sum(e),) + tuple(-e[i] for i in rev)

    def descriptor(self):
        return {"type": "grevlex", "ranking": list(self.ranking) if self.ranking else None}


def blowup_params(ring: Ring, d: int | None = None, e: int | None = None):
    """Recover (d, e, c) for a ring carrying blowup roles."""
    if not ring.has_blowup_roles():
        raise OrderError("ring lacks blowup roles")
    if d is None:
        if any(v.role in ("Y1", "Y2") for v in ring.variables):
            d = ring.d
        elif ring.c is not None and any(v.role == "X" for v in ring.variables):
            d = ring.c + 1 - ring.e
        else:
            raise OrderError("cannot infer d from ring; pass it explicitly")
    if e is None:
        if ring.c is not None:
            e = ring.c + 1 - d
        else:
            e = ring.e
    return d, e, d + e - 1


def _mdeg_tables(ring: Ring, d: int, c: int):
    t1, t2 = [], []
    for v in ring.variables:
        if v.role == "T":
            a, b = v.index
            t1.append(((a - 1, 1), (b - 1, 1)))
            t2.append(((a - 1, 1),))
        elif v.role == "Y1":
            t1.append(((v.index[0] - 1, 1),))
            t2.append(())
        elif v.role == "Y2":
            t1.append(())
            t2.append(())
        elif v.role == "X":
            t1.append(((v.index[0] + d - 1, 1),))
            t2.append(())
        else:
            raise OrderError(f"variable {v.name} has no multidegree")
    for tab in (t1, t2):
        for contrib in tab:
            for k, _ in contrib:
                if not 0 <= k <= c:
                    raise OrderError("variable index outside the column range")
    return t1, t2


def _mdeg(exps, table, c):
    out = [0] * (c + 1)
    for a, contrib in zip(exps, table):
        if a:
            for k, _ in contrib:
                out[k] += a
    return tuple(out)


def mdeg1(m: Polynomial, d: int | None = None) -> tuple:
    """Column multidegree of a monomial: T_ab -> e_a+e_b, y1_a -> e_a, y2 -> 0, x_h -> e_{h+d}."""
    if not m.is_monomial():
        raise RingError("mdeg1 expects a monomial")
    d, _, c = blowup_params(m.ring, d)
    t1, _ = _mdeg_tables(m.ring, d, c)
    return _mdeg(next(iter(m.terms)), t1, c)


def mdeg2(m: Polynomial, d: int | None = None) -> tuple:
    """T_ab -> e_a, all other variables -> 0."""
    if not m.is_monomial():
        raise RingError("mdeg2 expects a monomial")
    d, _, c = blowup_params(m.ring, d)
    _, t2 = _mdeg_tables(m.ring, d, c)
    return _mdeg(next(iter(m.terms)), t2, c)


class CompositePreceq(MonomialOrder):
    """The four-step tie-breaking order on the presentation ring of the blowup.

    (1) lex on y2 exponents; (2) grevlex on mdeg1 with e_{c+1} ranked highest;
    (3) grevlex on mdeg2 with e_1 ranked highest; (4) lex with
    y2 > y1 > x1 > T (lex in the index pair) > x2 > ... > xe.
    Works on any subring of the presentation ring (for example T-only).
    """

    kind = "preceq"

    def __init__(self, d: int, e: int):
        super().__init__()
        if d < 0 or e < 0 or d + e < 2:
            raise OrderError("need d, e >= 0 with d + e >= 2")
        self.d, self.e, self.c = d, e, d + e - 1

    def _build(self, ring):
        d, e, c = self.d, self.e, self.c
        if not ring.has_blowup_roles():
            raise OrderError("composite order needs a ring with blowup roles")
        if ring.c is not None and ring.c != c:
            raise OrderError(f"ring has c={ring.c}, order expects c={c}")
        t1, t2 = _mdeg_tables(ring, d, c)
        vs = ring.variables
        for v in vs:
            if v.role in ("Y1", "Y2") and not 1 <= v.index[0] <= d:
                raise OrderError("y index out of range")
            if v.role == "X" and not 1 <= v.index[0] <= e:
                raise OrderError("x index out of range")
        y2 = sorted((v.index[0], i) for i, v in enumerate(vs) if v.role == "Y2")
        y1 = sorted((v.index[0], i) for i, v in enumerate(vs) if v.role == "Y1")
        xs = sorted((v.index[0], i) for i, v in enumerate(vs) if v.role == "X")
        ts = sorted((v.index, i) for i, v in enumerate(vs) if v.role == "T")
        y2pos = [i for _, i in y2]
        step4 = y2pos + [i for _, i in y1]
        step4 += [i for h, i in xs if h == 1] + [i for _, i in ts] + [i for h, i in xs if h > 1]
        n1 = c + 1

        def key(ex):
            v1 = [0] * n1
            v2 = [0] * n1
            for a, c1, c2 in zip(ex, t1, t2):
                if a:
                    for k, _ in c1:
                        v1[k] += a
                    for k, _ in c2:
                        v2[k] += a
            return (
                tuple(ex[i] for i in y2pos)
                + (sum(v1),) + tuple(-x for x in v1)
                + (sum(v2),) + tuple(-x for x in reversed(v2))
                + tuple(ex[i] for i in step4)
            )

        return key

    def descriptor(self):
        return {"type": "preceq", "d": self.d, "e": self.e}


class Elimination(MonomialOrder):
    """Block order: killed variables first (grevlex), then ``inner`` on survivors.

    With ``weights`` (a dict name -> positive int) the weighted total degree
    is compared before everything; this is still an elimination order for
    ideals homogeneous in that grading, and it keeps intermediate degrees low.
    """

    kind = "elim"

    def __init__(self, kill: Iterable[str], inner: MonomialOrder, weights: dict | None = None):
        super().__init__()
        self.kill = tuple(sorted(set(kill)))
        self.inner = inner
        self.weights = dict(weights) if weights else None

    def survivors(self, ring: Ring) -> list:
        ks = set(self.kill)
        return [n for n in ring.names if n not in ks]

    def _build(self, ring):
        missing = set(self.kill) - set(ring.index)
        if missing:
            raise OrderError(f"killed variables not in ring: {sorted(missing)}")
        kpos = [ring.index[n] for n in ring.names if n in set(self.kill)]
        spos = [ring.index[n] for n in self.survivors(ring)]
        sub = ring.subring(self.survivors(ring))
        inner = self.inner.key_fn(sub)
        kr = kpos[::-1]
        w = None
        if self.weights:
            w = [self.weights.get(n, 1) for n in ring.names]
            if any(x <= 0 for x in w):
                raise OrderError("weights must be positive")

        def key(ex):
            head = (sum(a * b for a, b in zip(ex, w)),) if w else ()
            kb = (sum(ex[i] for i in kpos),) + tuple(-ex[i] for i in kr)
            return head + kb + inner(tuple(ex[i] for i in spos))

        return key

    def descriptor(self):
        return {"type": "elim", "kill": list(self.kill), "inner": self.inner.descriptor(),
                "weights": self.weights}


def compare(order: MonomialOrder, u: Polynomial, v: Polynomial) -> int:
    """-1, 0, 1 for u < v, u == v, u > v (monomials of one ring)."""
    if u.ring != v.ring:
        raise RingError("ring mismatch")
    if not (u.is_monomial() and v.is_monomial()):
        raise RingError("compare expects monomials")
    return order.compare_exps(u.ring, next(iter(u.terms)), next(iter(v.terms)))


def order_from_descriptor(desc: dict) -> MonomialOrder:
    t = desc["type"]
    if t == "lex":
        return Lex(desc.get("ranking"))
    if t == "grevlex":
        return GrevLex(desc.get("ranking"))
    if t == "preceq":
        return CompositePreceq(desc["d"], desc["e"])
    if t == "elim":
        return Elimination(desc["kill"], order_from_descriptor(desc["inner"]), desc.get("weights"))
    raise OrderError(f"unknown order type {t}")


def leading_exps(p: Polynomial, order: MonomialOrder):
    if p.is_zero():
        raise RingError("zero polynomial has no leading monomial")
    k = order.key_fn(p.ring)
    return max(p.terms, key=k)


def leading_monomial(p: Polynomial, order: MonomialOrder) -> Polynomial:
    return p.ring.monomial(leading_exps(p, order))


def leading_term(p: Polynomial, order: MonomialOrder) -> Polynomial:
    m = leading_exps(p, order)
    return Polynomial(p.ring, {m: p.terms[m]})
