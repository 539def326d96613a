"""Hilbert series of monomial ideals and the invariants read off from them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .groebner import Ideal, buchberger
from .orders import GrevLex, MonomialOrder


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _shift(a, k):
    return [0] * k + list(a)


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _numerator(gens, memo):
    """K-polynomial numerator of S/I by pivot recursion on a variable."""
    gens = _minimalize(gens)
    key = frozenset(gens)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if not gens:
        res = [1]
    else:
        n = len(gens[0])
        linear = [g for g in gens if sum(g) == 1]
        if linear:
            lin_vars = {g.index(1) for g in linear}
            rest = [g for g in gens if not any(g[i] for i in lin_vars)]
            res = _numerator(rest, memo)
            for _ in linear:
                res = _pmul(res, [1, -1])
        else:
            used = [0] * n
            overlap = False
            for g in gens:
                for i, a in enumerate(g):
                    if a:
                        if used[i]:
                            overlap = True
                        used[i] += 1
            if not overlap:
                res = [1]
                for g in gens:
                    res = _pmul(res, [1] + [0] * (sum(g) - 1) + [-1])
            else:
                piv = max(range(n), key=lambda i: used[i])
                e = [0] * n
                e[piv] = 1
                plus = [g for g in gens if not g[piv]] + [tuple(e)]
                colon = [tuple(a - 1 if i == piv and a else a for i, a in enumerate(g)) for g in gens]
                res = _padd(_numerator(plus, memo), _shift(_numerator(colon, memo), 1))
    memo[key] = res
    return res


@dataclass
class HilbertData:
    numerator: list  # coefficients of t^k
    nvars: int

    def _reduced(self):
        q, k = list(self.numerator), 0
        while True:
            if sum(q) != 0:
                return q, k
            # divide by (1 - t)
            out, acc = [], 0
            for a in q[:-1]:
                acc += a
                out.append(acc)
            q, k = out or [0], k + 1

    @property
    def dimension(self) -> int:
        q, k = self._reduced()
        return self.nvars - k

    @property
    def multiplicity(self) -> int:
        q, _ = self._reduced()
        return sum(q)

    def series(self, bound: int) -> list:
        """Hilbert function values in degrees 0..bound."""
        n = self.nvars
        out = []
        for k in range(bound + 1):
            s = 0
            for i, a in enumerate(self.numerator):
                if a and i <= k:
                    s += a * (comb(k - i + n - 1, n - 1) if n else (1 if k == i else 0))
            out.append(s)
        return out

    def hilbert_polynomial_value(self, h: int) -> int:
        q, _ = self._reduced()
        D = self.dimension
        if D == 0:
            return 0
        return sum(a * comb(h - i + D - 1, D - 1) for i, a in enumerate(q)) if h >= len(q) else \
            sum(a * _binom_poly(h - i + D - 1, D - 1) for i, a in enumerate(q))

    def hilbert_polynomial(self) -> list:
        """Coefficients (constant first) of the Hilbert polynomial as Fractions."""
        D = self.dimension
        if D == 0:
            return [Fraction(0)]
        q, _ = self._reduced()
        pts = list(range(len(q) + 1, len(q) + D + 1))
        vals = [Fraction(self.hilbert_polynomial_value(h)) for h in pts]
        return _interpolate(pts, vals)

    def leading_coefficient_check(self) -> bool:
        D = self.dimension
        if D == 0:
            return True
        hp = self.hilbert_polynomial()
        return hp[-1] * factorial(D - 1) == self.multiplicity


def _binom_poly(x: int, k: int) -> int:
    # generalized binomial, valid for negative x
    num = 1
    for i in range(k):
        num *= x - i
    return num // factorial(k)


def _interpolate(xs, ys) -> list:
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j != i:
                basis = _pmul(basis, [Fraction(-xs[j]), Fraction(1)])
                denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / denom
    return coeffs


def hilbert_from_exps(exps_list, nvars: int) -> HilbertData:
    return HilbertData(_numerator([tuple(m) for m in exps_list], {}), nvars)


def hilbert(I: Ideal) -> HilbertData:
    """Hilbert series of S/I for a monomial ideal I (standard grading)."""
    if not I.is_monomial():
        raise ValueError("hilbert expects monomial generators")
    return hilbert_from_exps([next(iter(g.terms)) for g in I.gens], I.ring.nvars)


def hilbert_function(I: Ideal, order: MonomialOrder | None = None, degree_bound: int = 5) -> list:
    """HF(S/I; k) for k = 0..degree_bound via the initial ideal."""
    if not I.is_homogeneous():
        raise ValueError("hilbert_function needs a homogeneous ideal")
    order = order or GrevLex()
    if not I.gens:
        return hilbert_from_exps([], I.ring.nvars).series(degree_bound)
    gb = buchberger(I, order)
    return hilbert_from_exps(gb.leading_exps(), I.ring.nvars).series(degree_bound)
