"""Division, Buchberger's algorithm, certificates and elimination.

The kernel works on plain dicts ``{exponents: coeff}`` and keeps basis
elements monic.  Reduction pops the leading monomial from a heap keyed by
negated order keys (lazy deletion) and screens reducers with support
bitmasks before the exact divisibility test.
"""

from __future__ import annotations

import heapq
import json
import logging
from dataclasses import dataclass, field
from operator import add, le, sub
from typing import Iterable

from .orders import Elimination, MonomialOrder
from .ring import Polynomial, Ring, RingError

log = logging.getLogger(__name__)


class CapExceeded(RuntimeError):
    pass


class Ideal:
    def __init__(self, ring: Ring, gens: Iterable[Polynomial]):
        self.ring = ring
        gs = []
        for g in gens:
            if g.ring != ring:
                raise RingError("generator over a different ring")
            if not g.is_zero():
                gs.append(g)
        self.gens = gs

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def is_homogeneous(self, weights=None) -> bool:
        return all(g.is_homogeneous(weights) for g in self.gens)

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"


class _Ctx:
    """Per (ring, order) caches: negated keys and support masks."""

    def __init__(self, ring: Ring, order: MonomialOrder):
        self.ring = ring
        self.order = order
        self.rkey = order.rkey_fn(ring)
        self.norm = ring.field.norm
        self.inv = ring.field.inv
        self._mask: dict = {}

    def mask(self, m):
        v = self._mask.get(m)
        if v is None:
            v = 0
            for i, a in enumerate(m):
                if a:
                    v |= 1 << i
            self._mask[m] = v
        return v

    def lm(self, terms: dict):
        return min(terms, key=self.rkey)

    def monic(self, terms: dict) -> dict:
        lm = self.lm(terms)
        c = self.inv(terms[lm])
        if c == 1:
            return dict(terms)
        norm = self.norm
        return {m: norm(a * c) for m, a in terms.items()}


class _Elem:
    __slots__ = ("terms", "lm", "mask", "tail", "deg")

    def __init__(self, ctx: _Ctx, terms: dict, weights):
        self.terms = terms  # monic
        self.lm = ctx.lm(terms)
        self.mask = ctx.mask(self.lm)
        self.tail = [(m, c) for m, c in terms.items() if m != self.lm]
        self.deg = sum(map(lambda a, w: a * w, self.lm, weights))


def _reduce(ctx: _Ctx, terms: dict, basis: list, full: bool = True, used: set | None = None) -> dict:
    """Normal form of ``terms`` modulo the monic elements ``basis``."""
    if not terms or not basis:
        return dict(terms)
    rkey, mask, norm = ctx.rkey, ctx.mask, ctx.norm
    h = dict(terms)
    heap = [(rkey(m), m) for m in h]
    heapq.heapify(heap)
    rem: dict = {}
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        _, m = pop(heap)
        c = h.pop(m, None)
        if c is None:
            continue
        mm = mask(m)
        g = None
        for idx, b in enumerate(basis):
            if b.mask & ~mm == 0 and all(map(le, b.lm, m)):
                g = b
                if used is not None:
                    used.add(idx)
                break
        if g is None:
            rem[m] = c
            if not full:
                # top-reducible part done; keep the rest as is
                for _, m2 in heap:
                    if m2 in h:
                        rem[m2] = h.pop(m2)
                break
            continue
        q = tuple(map(sub, m, g.lm))
        for gm, gc in g.tail:
            nm = tuple(map(add, gm, q))
            old = h.get(nm)
            if old is None:
                h[nm] = norm(-c * gc)
                push(heap, (rkey(nm), nm))
            else:
                v = norm(old - c * gc)
                if v:
                    h[nm] = v
                else:
                    del h[nm]
    return rem


def _lcm(a, b):
    return tuple(map(max, a, b))


def _divides(a, b):
    return all(map(le, a, b))


def _coprime(a, b):
    return not any(x and y for x, y in zip(a, b))


def _spoly(a: _Elem, b: _Elem, norm) -> dict:
    lcm = _lcm(a.lm, b.lm)
    qa = tuple(map(sub, lcm, a.lm))
    qb = tuple(map(sub, lcm, b.lm))
    out: dict = {}
    for m, c in a.tail:
        out[tuple(map(add, m, qa))] = c
    for m, c in b.tail:
        nm = tuple(map(add, m, qb))
        v = norm(out.get(nm, 0) - c)
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out


def _weights_for(ring: Ring, order: MonomialOrder, weights=None):
    if weights is not None:
        return [weights.get(n, 1) for n in ring.names] if isinstance(weights, dict) else list(weights)
    if isinstance(order, Elimination) and order.weights:
        return [order.weights.get(n, 1) for n in ring.names]
    return [1] * ring.nvars


@dataclass
class GroebnerBasis:
    ring: Ring
    order: MonomialOrder
    polys: list
    verified: bool = True
    capped: bool = False
    stats: dict = field(default_factory=dict)

    def leading_exps(self) -> list:
        k = self.order.key_fn(self.ring)
        return [max(p.terms, key=k) for p in self.polys]

    def leading_monomials(self) -> list:
        return [self.ring.monomial(m) for m in self.leading_exps()]

    def initial_ideal(self) -> Ideal:
        return Ideal(self.ring, self.leading_monomials())

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.polys, self.order)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def __len__(self):
        return len(self.polys)


def normal_form(f: Polynomial, G: list, order: MonomialOrder) -> Polynomial:
    """Fully reduced remainder of ``f`` modulo ``G``."""
    ring = f.ring
    for g in G:
        if g.ring != ring:
            raise RingError("ring mismatch in normal_form")
    ctx = _Ctx(ring, order)
    w = [1] * ring.nvars
    basis = [_Elem(ctx, ctx.monic(g.terms), w) for g in G if not g.is_zero()]
    return Polynomial(ring, _reduce(ctx, f.terms, basis))


def division(f: Polynomial, G: list, order: MonomialOrder):
    """Checked division: returns (quotients, remainder) with f = sum q_i g_i + r."""
    ring = f.ring
    key = order.key_fn(ring)
    field_ = ring.field
    qs = [ring.zero() for _ in G]
    lms = [max(g.terms, key=key) if g.terms else None for g in G]
    p, r = f, ring.zero()
    while not p.is_zero():
        m = max(p.terms, key=key)
        c = p.terms[m]
        for i, g in enumerate(G):
            if lms[i] is not None and _divides(lms[i], m):
                q = ring.monomial(tuple(map(sub, m, lms[i])), field_.div(c, g.terms[lms[i]]))
                qs[i] = qs[i] + q
                p = p - q * g
                break
        else:
            r = r + ring.monomial(m, c)
            p = p - ring.monomial(m, c)
    return qs, r


def buchberger(I: Ideal, order: MonomialOrder, degree_cap: int | None = None,
               weights=None, strict_cap: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis with Gebauer-Moeller pair pruning.

    Pairs are processed by increasing (weighted) lcm degree, ties broken by the
    order key of the lcm and then by pair index. With a cap, pairs above it are
    skipped and the result is flagged ``capped``; ``strict_cap`` raises instead.
    """
    ring = I.ring
    ctx = _Ctx(ring, order)
    w = _weights_for(ring, order, weights)
    norm = ctx.norm
    elems: list = []
    G: list = []
    heap: list = []
    live: set = set()
    capped = False
    stats = {"pairs": 0, "zero": 0}

    def wdeg(m):
        return sum(map(lambda a, b: a * b, m, w))

    def update(h: int):
        nonlocal G
        lmh = elems[h].lm
        C = list(G)
        D: list = []
        while C:
            g1 = C.pop()
            l1 = _lcm(lmh, elems[g1].lm)
            if _coprime(lmh, elems[g1].lm):
                D.append(g1)
                continue
            if any(_divides(_lcm(lmh, elems[g2].lm), l1) for g2 in C):
                continue
            if any(_divides(_lcm(lmh, elems[g2].lm), l1) for g2 in D):
                continue
            D.append(g1)
        E = [g for g in D if not _coprime(lmh, elems[g].lm)]
        for pr in list(live):
            a, b = pr
            l12 = _lcm(elems[a].lm, elems[b].lm)
            if _divides(lmh, l12) and _lcm(elems[a].lm, lmh) != l12 and _lcm(elems[b].lm, lmh) != l12:
                live.discard(pr)
        for g in sorted(E):
            pr = (g, h)
            lcm = _lcm(elems[g].lm, lmh)
            live.add(pr)
            heapq.heappush(heap, (wdeg(lcm), lcm, pr))
        G = [g for g in G if not _divides(lmh, elems[g].lm)] + [h]

    def add_elem(terms):
        elems.append(_Elem(ctx, ctx.monic(terms), w))
        update(len(elems) - 1)

    gens = sorted((g.terms for g in I.gens), key=lambda t: (min(wdeg(m) for m in t), len(t)))
    for t in gens:
        r = _reduce(ctx, t, [elems[g] for g in G])
        if r:
            add_elem(r)

    while heap:
        dg, _, pr = heapq.heappop(heap)
        if pr not in live:
            continue
        live.discard(pr)
        if degree_cap is not None and dg > degree_cap:
            capped = True
            if strict_cap:
                raise CapExceeded(f"S-pair degree {dg} above cap {degree_cap}")
            continue
        stats["pairs"] += 1
        s = _spoly(elems[pr[0]], elems[pr[1]], norm)
        r = _reduce(ctx, s, [elems[g] for g in G])
        if r:
            add_elem(r)
        else:
            stats["zero"] += 1

    # interreduce
    basis = [elems[g] for g in G]
    basis.sort(key=lambda e: ctx.rkey(e.lm))
    out = []
    for i, e in enumerate(basis):
        others = basis[:i] + basis[i + 1:]
        tail = _reduce(ctx, dict(e.tail), others)
        tail[e.lm] = ring.field.one
        out.append(Polynomial(ring, tail))
    if capped:
        log.warning("Groebner computation capped at degree %s", degree_cap)
    return GroebnerBasis(ring, order, out, verified=not capped, capped=capped, stats=stats)


@dataclass
class Certificate:
    ok: bool
    basis: list
    order: MonomialOrder
    log: list
    failing_pair: tuple | None = None
    remainder: Polynomial | None = None

    def to_json(self) -> str:
        return json.dumps({
            "schema": 1,
            "ok": self.ok,
            "basis": [str(p) for p in self.basis],
            "order": self.order.descriptor(),
            "spairs": self.log,
            "failing_pair": list(self.failing_pair) if self.failing_pair else None,
            "remainder": str(self.remainder) if self.remainder is not None else None,
        }, indent=1)


def is_groebner(G: list, order: MonomialOrder, stop_early: bool = True) -> Certificate:
    """Buchberger criterion over all pairs, skipping those with coprime leading monomials."""
    if not G:
        raise ValueError("empty generating set")
    ring = G[0].ring
    ctx = _Ctx(ring, order)
    w = [1] * ring.nvars
    elems = [_Elem(ctx, ctx.monic(g.terms), w) for g in G]
    entries = []
    for j in range(len(elems)):
        for i in range(j):
            a, b = elems[i], elems[j]
            if _coprime(a.lm, b.lm):
                entries.append({"pair": [i, j], "status": "coprime"})
                continue
            used: set = set()
            r = _reduce(ctx, _spoly(a, b, ctx.norm), elems, used=used)
            entries.append({"pair": [i, j], "reducers": sorted(used),
                            "status": "zero" if not r else "nonzero"})
            if r and stop_early:
                return Certificate(False, list(G), order, entries, (i, j), Polynomial(ring, r))
    bad = [e for e in entries if e["status"] == "nonzero"]
    if bad:
        i, j = bad[0]["pair"]
        return Certificate(False, list(G), order, entries, (i, j), None)
    return Certificate(True, list(G), order, entries)


def eliminate(I: Ideal, kill: Iterable[str], inner_order: MonomialOrder,
              weights: dict | None = None, degree_cap: int | None = None) -> Ideal:
    """Contraction of I to the subring without ``kill``.

    The returned generators are the reduced Groebner basis of the contraction
    for the block order restricted to the survivors.  When ``weights`` is given
    the input must be homogeneous for them (checked).
    """
    kill = list(kill)
    ring = I.ring
    if weights is not None and not I.is_homogeneous([weights.get(n, 1) for n in ring.names]):
        raise ValueError("weighted elimination requires homogeneous input")
    order = Elimination(kill, inner_order, weights)
    gb = buchberger(I, order, degree_cap=degree_cap, strict_cap=degree_cap is not None)
    kidx = [ring.index[n] for n in kill]
    sub_ring = ring.subring(order.survivors(ring))
    out = []
    for p in gb.polys:
        if all(m[i] == 0 for m in p.terms for i in kidx):
            out.append(p.to_ring(sub_ring))
    res = Ideal(sub_ring, out)
    res.gb_order = inner_order
    return res


def reduced_gb_equal(a: GroebnerBasis, b: GroebnerBasis) -> bool:
    return set(a.polys) == set(b.polys)
