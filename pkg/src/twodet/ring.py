"""Ring signatures with role-tagged variables, and polynomials over them.

Monomials are dense exponent tuples aligned with the ring's variable list.
A polynomial is an immutable wrapper around a dict ``{exponents: coeff}``
holding only nonzero coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .fields import QQ, Field, PrimeField

ROLES = ("Y1", "Y2", "X", "T", "Tau", "Param", "Generic")


class RingError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Variable:
    name: str
    role: str = "Generic"
    index: tuple = ()

    def __post_init__(self):
        if self.role not in ROLES:
            raise RingError(f"unknown role {self.role}")


_NAME_RULES = [
    (re.compile(r"^y1_(\d+)$"), "Y1"),
    (re.compile(r"^y2_(\d+)$"), "Y2"),
    (re.compile(r"^x(\d+)$"), "X"),
    (re.compile(r"^T\[(\d+),(\d+)\]$"), "T"),
]


def var_from_name(name: str) -> Variable:
    """Infer the role of a variable from the naming conventions."""
    for rx, role in _NAME_RULES:
        m = rx.match(name)
        if m:
            return Variable(name, role, tuple(int(g) for g in m.groups()))
    if name == "tau":
        return Variable(name, "Tau")
    if name == "t":
        return Variable(name, "Param")
    return Variable(name, "Generic")


def t_name(a: int, b: int) -> str:
    return f"T[{a},{b}]"


class Ring:
    """Polynomial ring over an exact field with an ordered list of variables."""

    def __init__(self, variables: Iterable, field: Field = QQ):
        vs = []
        for v in variables:
            vs.append(v if isinstance(v, Variable) else var_from_name(v))
        self.variables = tuple(vs)
        self.field = field
        self.names = tuple(v.name for v in vs)
        if len(set(self.names)) != len(self.names):
            raise RingError("variable names must be unique")
        self.index = {n: i for i, n in enumerate(self.names)}
        self.nvars = len(vs)
        self._hash = hash((self.variables, field))
        self._check_roles()

    def _check_roles(self):
        ys1 = [v.index[0] for v in self.variables if v.role == "Y1"]
        ys2 = [v.index[0] for v in self.variables if v.role == "Y2"]
        xs = [v.index[0] for v in self.variables if v.role == "X"]
        ts = [v.index for v in self.variables if v.role == "T"]
        self.d = max(ys1 + ys2, default=0)
        self.e = max(xs, default=0)
        self.c = None
        if ts:
            top = max(b for _, b in ts)
            want = {(a, b) for a in range(1, top + 1) for b in range(a + 1, top + 1)}
            if set(ts) != want or len(ts) != len(want):
                raise RingError("T variables must cover all pairs 1 <= a < b <= c+1 exactly once")
            self.c = top - 1
            if (ys1 or xs) and self.c != self.d + self.e - 1:
                raise RingError("T indices inconsistent with c = d + e - 1")
        elif ys1 or xs:
            self.c = self.d + self.e - 1

    def has_blowup_roles(self) -> bool:
        return any(v.role in ("Y1", "Y2", "X", "T") for v in self.variables)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._hash == other._hash and \
            self.variables == other.variables and self.field == other.field

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Ring({', '.join(self.names)}; {self.field!r})"

    # construction helpers
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field.convert(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        i = self.index.get(name)
        if i is None:
            raise RingError(f"no variable {name!r} in ring")
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self) -> list:
        return [self.var(n) for n in self.names]

    def monomial(self, exps, coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise RingError("exponent vector length mismatch")
        c = self.field.convert(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def from_dict(self, terms: Mapping) -> "Polynomial":
        conv, out = self.field.convert, {}
        for m, c in terms.items():
            c = conv(c)
            if c:
                out[tuple(m)] = c
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(self, text)

    def with_field(self, field: Field) -> "Ring":
        return Ring(self.variables, field)

    def subring(self, names: Iterable[str]) -> "Ring":
        keep = set(names)
        return Ring([v for v in self.variables if v.name in keep], self.field)

    def extend(self, variables: Iterable) -> "Ring":
        return Ring(list(self.variables) + list(variables), self.field)


def _display_key(exps):
    # grevlex in declared variable order; used only for printing
    return (sum(exps), tuple(-x for x in reversed(exps)))


class Polynomial:
    """Immutable sparse polynomial."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # basic protocol
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingError("ring mismatch")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        norm = self.ring.field.norm
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = norm(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.norm
        return Polynomial(self.ring, {m: norm(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        norm = self.ring.field.norm
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = norm(out.get(m, 0) + c1 * c2)
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, s) -> "Polynomial":
        f = self.ring.field
        s = f.convert(s)
        if not s:
            return self.ring.zero()
        return Polynomial(self.ring, {m: f.norm(c * s) for m, c in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out, base = self.ring.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # inspection
    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self, weights=None) -> bool:
        if not self.terms:
            return True
        w = weights or [1] * self.ring.nvars
        degs = {sum(a * b for a, b in zip(m, w)) for m in self.terms}
        return len(degs) == 1

    def support_vars(self) -> set:
        used = set()
        for m in self.terms:
            used.update(i for i, a in enumerate(m) if a)
        return {self.ring.names[i] for i in used}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.ring.field.zero)

    def linear_coefficients(self) -> list:
        """Coefficient vector of a linear form (rejects other terms)."""
        n = self.ring.nvars
        out = [self.ring.field.zero] * n
        for m, c in self.terms.items():
            s = sum(m)
            if s != 1:
                raise RingError(f"not a linear form: {self}")
            out[m.index(1)] = c
        return out

    def subs(self, mapping: Mapping, target: Ring | None = None) -> "Polynomial":
        """Ring homomorphism sending each variable to a polynomial of ``target``.

        Variables not in ``mapping`` go to the same-named variable of the target.
        """
        target = target or self.ring
        if target.field != self.ring.field:
            raise RingError("substitution target must share the coefficient field")
        images = []
        for i, name in enumerate(self.ring.names):
            img = mapping.get(name)
            if img is None:
                img = target.var(name) if name in target.index else None
            elif not isinstance(img, Polynomial):
                img = target.const(img)
            elif img.ring != target:
                raise RingError("substitution image outside the target ring")
            images.append(img)
        out = target.zero()
        powcache: dict = {}
        for m, c in self.terms.items():
            term = target.const(c)
            for i, a in enumerate(m):
                if not a:
                    continue
                if images[i] is None:
                    raise RingError(f"no image for variable {self.ring.names[i]}")
                key = (i, a)
                if key not in powcache:
                    powcache[key] = images[i] ** a
                term = term * powcache[key]
            out = out + term
        return out

    def to_ring(self, target: Ring) -> "Polynomial":
        """Re-embed into a ring containing all used variables (by name)."""
        out = {}
        idx = [target.index.get(n) for n in self.ring.names]
        conv = target.field.convert
        for m, c in self.terms.items():
            e = [0] * target.nvars
            for i, a in enumerate(m):
                if a:
                    if idx[i] is None:
                        raise RingError(f"variable {self.ring.names[i]} missing in target")
                    e[idx[i]] = a
            if isinstance(self.ring.field, PrimeField) and not isinstance(target.field, PrimeField):
                c = self.ring.field.signed(c)
            c = conv(c)
            if c:
                out[tuple(e)] = c
        return Polynomial(target, out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _display_key(t[0]), reverse=True)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


# ---------------------------------------------------------------- text format

def _format_monomial(ring: Ring, m) -> str:
    parts = []
    for name, a in zip(ring.names, m):
        if a == 1:
            parts.append(name)
        elif a > 1:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def format_poly(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    f = p.ring.field
    out = []
    for m, c in p.sorted_terms():
        s = f.to_str(c)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        mono = _format_monomial(p.ring, m)
        if mono:
            body = mono if s == "1" else f"{s}*{mono}"
        else:
            body = s
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>T\[\s*\d+\s*,\s*\d+\s*\]|[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*^]))"
)


def parse_poly(ring: Ring, text: str) -> Polynomial:
    """Parse the term grammar ``[coeff][*var[^exp]...]`` joined by + and -."""
    toks = []
    pos, text = 0, text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise RingError(f"cannot parse {text!r} at position {pos}")
        pos = m.end()
        if m.group("num"):
            toks.append(("num", m.group("num")))
        elif m.group("var"):
            toks.append(("var", re.sub(r"\s+", "", m.group("var"))))
        elif m.group("op"):
            toks.append(("op", m.group("op")))
    if not toks:
        raise RingError("empty polynomial text")
    f = ring.field
    result: dict = {}
    i, n = 0, len(toks)
    first = True
    while i < n:
        sign = 1
        if toks[i][0] == "op" and toks[i][1] in "+-":
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        elif not first:
            raise RingError("expected + or - between terms")
        first = False
        coeff = Fraction(sign)
        exps = [0] * ring.nvars
        expect_factor = True
        while i < n and expect_factor:
            kind, val = toks[i]
            if kind == "num":
                coeff *= Fraction(val)
                i += 1
            elif kind == "var":
                j = ring.index.get(val)
                if j is None:
                    raise RingError(f"unknown variable {val!r}")
                i += 1
                a = 1
                if i < n and toks[i] == ("op", "^"):
                    if i + 1 >= n or toks[i + 1][0] != "num" or "/" in toks[i + 1][1]:
                        raise RingError("exponent must be a nonnegative integer")
                    a = int(toks[i + 1][1])
                    i += 2
                exps[j] += a
            else:
                raise RingError(f"unexpected token {val!r}")
            if i < n and toks[i] == ("op", "*"):
                i += 1
            else:
                expect_factor = False
        c = f.convert(coeff)
        key = tuple(exps)
        v = f.norm(result.get(key, 0) + c)
        if v:
            result[key] = v
        else:
            result.pop(key, None)
    return Polynomial(ring, result)
