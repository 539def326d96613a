"""2 x (c+1) matrices of linear forms and their Kronecker-Weierstrass data.

A matrix M gives a pencil through its two coefficient slices A (top row) and
B (bottom row), each of shape (columns of M) x (variables).  Scroll blocks
correspond to right minimal indices, nilpotent blocks to left minimal indices
and Jordan blocks to elementary divisors, located at the point where B - eps*A
drops rank.

Invariants are read off from ranks only:
  * minimal indices from block Toeplitz matrices T_k,
    dim ker T_k = sum over indices eps <= k of (k - eps + 1);
  * Jordan sizes at a point from the jet matrices W_j,
    j*r - rank W_j = sum over blocks of min(j, size);
  * finite eigenvalues from the gcd of determinants of random compressions.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Sequence

import sympy

from . import linalg
from .fields import GF, Field, PrimeField, field_from_descriptor
from .groebner import Ideal, buchberger, eliminate
from .orders import GrevLex
from .ring import Polynomial, Ring, RingError, Variable, var_from_name


class PencilError(ValueError):
    pass


class NonSplitEigenvalues(PencilError):
    pass


class NotMaximalCodim(PencilError):
    pass


class ConeDetected(PencilError):
    def __init__(self, msg, deficiency=0):
        super().__init__(msg)
        self.deficiency = deficiency


# ----------------------------------------------------------------- data types

@dataclass(frozen=True)
class Block:
    kind: str  # "scroll" | "jordan" | "nilpotent"
    size: int
    eigenvalue: object = None

    def __post_init__(self):
        if self.kind not in ("scroll", "jordan", "nilpotent"):
            raise PencilError(f"unknown block kind {self.kind}")
        if self.size < 1:
            raise PencilError("block size must be positive")
        if self.kind == "jordan" and self.eigenvalue is None:
            raise PencilError("Jordan block needs an eigenvalue")

    @property
    def ncols(self) -> int:
        return self.size + 1 if self.kind == "nilpotent" else self.size

    @property
    def nvars(self) -> int:
        return self.size + 1 if self.kind == "scroll" else self.size

    def to_json(self) -> dict:
        d = {"kind": self.kind, "size": self.size}
        if self.kind == "jordan":
            d["eigenvalue"] = str(self.eigenvalue)
        return d


def Scroll(p: int) -> Block:
    return Block("scroll", p)


def Jordan(p: int, eps) -> Block:
    return Block("jordan", p, eps)


def Nilpotent(p: int) -> Block:
    return Block("nilpotent", p)


def blocks_from_json(data, field: Field) -> list:
    out = []
    for b in data:
        ev = field.convert(b["eigenvalue"]) if b.get("eigenvalue") is not None else None
        out.append(Block(b["kind"], int(b["size"]), ev))
    return out


def _exp_notation(parts) -> str:
    if not parts:
        return "∅"
    out = []
    for v, k in sorted(Counter(parts).items(), reverse=True):
        out.append(str(v) if k == 1 else f"{v}^{k}")
    return ",".join(out)


@dataclass(frozen=True, order=True)
class KWType:
    lam: tuple
    mu: tuple

    def __post_init__(self):
        if any(x <= 0 for x in self.lam + self.mu):
            raise PencilError("partition parts must be positive")
        if list(self.lam) != sorted(self.lam, reverse=True) or list(self.mu) != sorted(self.mu, reverse=True):
            raise PencilError("partitions must be weakly decreasing")

    @property
    def c(self) -> int:
        return sum(self.lam) + sum(self.mu) - 1

    @property
    def d(self) -> int:
        return len(self.lam)

    def label(self) -> str:
        return f"({_exp_notation(self.lam)};{_exp_notation(self.mu)})"

    def plain(self) -> str:
        return f"({','.join(map(str, self.lam))};{','.join(map(str, self.mu))})"

    def __str__(self):
        return self.label()


@dataclass(frozen=True)
class NilpotentType:
    size: int

    def label(self) -> str:
        return f"nilpotent({self.size})"

    def __str__(self):
        return self.label()


@dataclass
class KroneckerData:
    right: list
    left: list
    divisors: list  # (point, size) with point (u, v): (eps, 1) finite, (1, 0) infinite
    normal_rank: int = 0

    def points(self) -> dict:
        out: dict = {}
        for pt, s in self.divisors:
            out.setdefault(pt, []).append(s)
        return out


# --------------------------------------------------------------- the matrices

class LinearMatrix2:
    """Two rows of linear forms over a common ring."""

    def __init__(self, ring: Ring, rows: Sequence[Sequence[Polynomial]]):
        if len(rows) != 2 or len(rows[0]) != len(rows[1]):
            raise PencilError("need two rows of equal length")
        for row in rows:
            for p in row:
                if p.ring != ring:
                    raise RingError("entry over a different ring")
                if any(sum(m) != 1 for m in p.terms):
                    raise PencilError(f"entry {p} is not a linear form")
        self.ring = ring
        self.rows = (tuple(rows[0]), tuple(rows[1]))

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def entry(self, i: int, j: int) -> Polynomial:
        """1-based entry l_{i,j}."""
        return self.rows[i - 1][j - 1]

    def __eq__(self, other):
        return isinstance(other, LinearMatrix2) and self.ring == other.ring and self.rows == other.rows

    def __repr__(self):
        return "[" + "; ".join(", ".join(map(str, r)) for r in self.rows) + "]"

    def minor(self, a: int, b: int) -> Polynomial:
        return self.entry(1, a) * self.entry(2, b) - self.entry(1, b) * self.entry(2, a)

    def row_op(self, R) -> "LinearMatrix2":
        r0 = [p.scale(R[0][0]) + p2.scale(R[0][1]) for p, p2 in zip(*self.rows)]
        r1 = [p.scale(R[1][0]) + p2.scale(R[1][1]) for p, p2 in zip(*self.rows)]
        return LinearMatrix2(self.ring, [r0, r1])

    def col_op(self, C) -> "LinearMatrix2":
        n = self.ncols
        out = []
        for row in self.rows:
            new = []
            for j in range(n):
                acc = self.ring.zero()
                for i in range(n):
                    if C[i][j]:
                        acc = acc + row[i].scale(C[i][j])
                new.append(acc)
            out.append(new)
        return LinearMatrix2(self.ring, out)

    def substitute(self, mapping: dict, target: Ring | None = None) -> "LinearMatrix2":
        target = target or self.ring
        return LinearMatrix2(target, [[p.subs(mapping, target) for p in row] for row in self.rows])

    def to_json(self) -> dict:
        return {"schema": 1, "field": self.ring.field.descriptor(),
                "variables": [{"name": v.name, "role": v.role} for v in self.ring.variables],
                "rows": [[str(p) for p in row] for row in self.rows]}

    @classmethod
    def from_json(cls, data: dict, field: Field | None = None) -> "LinearMatrix2":
        if field is None:
            field = field_from_descriptor(data.get("field", "GF(32003)"))
        vs = []
        for v in data["variables"]:
            if isinstance(v, str):
                vs.append(var_from_name(v))
            else:
                guess = var_from_name(v["name"])
                role = v.get("role", guess.role)
                vs.append(Variable(v["name"], role, guess.index if role == guess.role else ()))
        ring = Ring(vs, field)
        rows = [[ring.parse(s) for s in row] for row in data["rows"]]
        return cls(ring, rows)


def build_matrix(blocks: Sequence[Block], field: Field | None = None) -> LinearMatrix2:
    """Concatenate blocks on fresh variables.

    Naming: size-1 scroll blocks use y1_k, y2_k; larger scroll blocks s{k}_j;
    a lone Jordan or nilpotent block uses x1..xp, several Jordan blocks z{k}_j.
    """
    if not blocks:
        raise PencilError("empty block list")
    field = field or GF()
    jordans = [b for b in blocks if b.kind != "scroll"]
    lone = len(jordans) == 1
    names_per_block = []
    ky = ks = kz = 0
    for b in blocks:
        if b.kind == "scroll":
            if b.size == 1:
                ky += 1
                names_per_block.append([f"y1_{ky}", f"y2_{ky}"])
            else:
                ks += 1
                names_per_block.append([f"s{ks}_{j}" for j in range(1, b.size + 2)])
        else:
            kz += 1
            if lone:
                names_per_block.append([f"x{j}" for j in range(1, b.size + 1)])
            else:
                names_per_block.append([f"z{kz}_{j}" for j in range(1, b.size + 1)])
    ring = Ring([n for ns in names_per_block for n in ns], field)
    top, bot = [], []
    zero = ring.zero()
    for b, ns in zip(blocks, names_per_block):
        v = [ring.var(n) for n in ns]
        p = b.size
        if b.kind == "scroll":
            top += v[:p]
            bot += v[1:]
        elif b.kind == "jordan":
            eps = field.convert(b.eigenvalue)
            top += v
            bot += [v[j + 1] + v[j].scale(eps) for j in range(p - 1)] + [v[p - 1].scale(eps)]
        else:
            top += [zero] + v
            bot += v + [zero]
    return LinearMatrix2(ring, [top, bot])


def slices(M: LinearMatrix2):
    """(A, B): A[j][k] = coefficient of variable k in l_{1,j+1}; B likewise for row 2."""
    out = []
    for row in M.rows:
        out.append([p.linear_coefficients() for p in row])
    return out[0], out[1]


def from_slices(ring: Ring, A, B) -> LinearMatrix2:
    gens = ring.gens()
    rows = []
    for S in (A, B):
        row = []
        for coeffs in S:
            acc = ring.zero()
            for c, g in zip(coeffs, gens):
                if c:
                    acc = acc + g.scale(c)
            row.append(acc)
        rows.append(row)
    return LinearMatrix2(ring, rows)


def minors_ideal(M: LinearMatrix2) -> Ideal:
    n = M.ncols
    return Ideal(M.ring, [M.minor(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)])


def linear_ideal(M: LinearMatrix2) -> Ideal:
    return Ideal(M.ring, [p for row in M.rows for p in row])


# ------------------------------------------------------------ pencil structure

def _toeplitz(A, B, k, field):
    """Block rows 0..k+1, block columns 0..k; B on the diagonal, -A below it."""
    m, n = len(A), len(A[0]) if A else 0
    norm = field.norm
    negA = [[norm(-x) for x in row] for row in A]
    rows = []
    for bi in range(k + 2):
        for r in range(m):
            row = [field.zero] * ((k + 1) * n)
            if bi <= k:
                row[bi * n:(bi + 1) * n] = B[r]
            if bi >= 1:
                row[(bi - 1) * n:bi * n] = negA[r]
            rows.append(row)
    return rows


def _normal_rank(A, B, field, rng) -> int:
    best = 0
    for _ in range(4):
        lam = field.random_element(rng)
        P = [[field.norm(b - lam * a) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]
        best = max(best, linalg.rank(P, field))
    return best


def _minimal_indices(A, B, field, r) -> list:
    m = len(A)
    n = len(A[0]) if A else 0
    total = n - r
    if total == 0:
        return []
    out = []
    prev_z = 0
    prev_cnt = 0
    for k in range(0, m + 1):
        z = (k + 1) * n - linalg.rank(_toeplitz(A, B, k, field), field)
        cnt = z - prev_z
        out += [k] * (cnt - prev_cnt)
        prev_z, prev_cnt = z, cnt
        if cnt == total:
            return out
    raise PencilError("minimal index computation did not stabilize")


def _jet_deficits(D, E, r, field, limit):
    """Sizes of Jordan blocks of the pencil D - t E at t = 0 (D is the value, E the derivative)."""
    m, n = len(D), len(D[0]) if D else 0
    sizes = []
    prev_def = 0
    prev_cnt = None
    for j in range(1, limit + 2):
        W = []
        for bi in range(j):
            for rr in range(m):
                row = [field.zero] * (j * n)
                row[bi * n:(bi + 1) * n] = D[rr]
                if bi >= 1:
                    row[(bi - 1) * n:bi * n] = E[rr]
                W.append(row)
        dfc = j * r - linalg.rank(W, field)
        cnt = dfc - prev_def  # number of blocks of size >= j
        if prev_cnt is not None:
            sizes += [j - 1] * (prev_cnt - cnt)
        if cnt == 0:
            return sorted(sizes, reverse=True)
        prev_def, prev_cnt = dfc, cnt
    raise PencilError("Jordan size computation did not stabilize")


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b, field):
    a = list(a)
    out = [field.zero] * max(len(a) - len(b) + 1, 1)
    inv = field.inv(b[-1])
    while len(a) >= len(b) and any(a):
        k = len(a) - len(b)
        q = field.norm(a[-1] * inv)
        out[k] = q
        for i, c in enumerate(b):
            a[i + k] = field.norm(a[i + k] - q * c)
        _poly_trim(a)
    return out, a


def _poly_gcd(a, b, field):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        _, r = _poly_divmod(a, b, field)
        a, b = b, r
    if not a:
        return a
    inv = field.inv(a[-1])
    return [field.norm(x * inv) for x in a]


def _interpolate(xs, ys, field):
    n = len(xs)
    coeffs = [field.zero] * n
    for i in range(n):
        basis = [field.one]
        denom = field.one
        for j in range(n):
            if j != i:
                nb = [field.zero] * (len(basis) + 1)
                for k, c in enumerate(basis):
                    nb[k] = field.norm(nb[k] - xs[j] * c)
                    nb[k + 1] = field.norm(nb[k + 1] + c)
                basis = nb
                denom = field.norm(denom * (xs[i] - xs[j]))
        f = field.norm(ys[i] * field.inv(denom))
        for k in range(n):
            coeffs[k] = field.norm(coeffs[k] + f * basis[k])
    return _poly_trim(coeffs)


def _det_poly(X, Y, field, r):
    """det(X - lam Y) as a coefficient list."""
    xs = [field.convert(i) for i in range(r + 1)]
    ys = []
    for lam in xs:
        P = [[field.norm(x - lam * y) for x, y in zip(rx, ry)] for rx, ry in zip(X, Y)]
        ys.append(linalg.det(P, field))
    return _interpolate(xs, ys, field)


def _roots(poly, field: Field) -> list:
    """Roots with multiplicity of a split polynomial; raises if a factor has degree >= 2."""
    lam = sympy.Symbol("lam")
    if isinstance(field, PrimeField):
        P = sympy.Poly([int(c) for c in reversed(poly)], lam, modulus=field.p)
    else:
        P = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(poly)], lam, domain="QQ")
    _, facs = P.factor_list()
    out = []
    for f, k in facs:
        if f.degree() >= 2:
            raise NonSplitEigenvalues(f"irreducible factor {f.as_expr()} of degree {f.degree()}")
        a, b = f.all_coeffs()
        if isinstance(field, PrimeField):
            root = field.norm(-int(b) * field.inv(int(a)))
        else:
            q = -sympy.Rational(b) / sympy.Rational(a)
            root = field.convert(f"{q.p}/{q.q}")
        out.append((root, k))
    return out


def kronecker_structure(A, B, field: Field, seed: int = 0) -> KroneckerData:
    """Complete strict-equivalence invariants of the pencil (A, B)."""
    rng = random.Random(seed)
    m = len(A)
    n = len(A[0]) if A else 0
    r = _normal_rank(A, B, field, rng)
    right = _minimal_indices(A, B, field, r)
    At, Bt = linalg.transpose(A), linalg.transpose(B)
    left = _minimal_indices(At, Bt, field, r) if m else []
    N = n - sum(e + 1 for e in right) - sum(left)
    divisors = []
    if N > 0:
        inf_sizes = _jet_deficits(A, B, r, field, N)
        for s in inf_sizes:
            divisors.append(((field.one, field.zero), s))
        n_fin = N - sum(inf_sizes)
        if n_fin > 0:
            D = None
            for _ in range(12):
                U = linalg.random_matrix(r, m, field, rng)
                V = linalg.random_matrix(n, r, field, rng)
                X = linalg.matmul(linalg.matmul(U, B, field), V, field)
                Y = linalg.matmul(linalg.matmul(U, A, field), V, field)
                p = _det_poly(X, Y, field, r)
                if not p:
                    continue
                D = p if D is None else _poly_gcd(D, p, field)
                if len(D) - 1 == n_fin:
                    break
            if D is None or len(D) - 1 != n_fin:
                raise PencilError("could not isolate the finite elementary divisors")
            for root, mult in _roots(D, field):
                P0 = [[field.norm(b - root * a) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]
                sizes = _jet_deficits(P0, A, r, field, mult)
                if sum(sizes) != mult:
                    raise PencilError("inconsistent Jordan data")
                for s in sizes:
                    divisors.append(((root, field.one), s))
    return KroneckerData(sorted(right, reverse=True), sorted(left, reverse=True), divisors, r)


def classify_detailed(M: LinearMatrix2):
    field = M.ring.field
    A, B = slices(M)
    n = M.ring.nvars
    span = linalg.rank(A + B, field) if A else 0
    if span < n:
        raise ConeDetected(f"entries span {span} of {n} variables", n - span)
    kd = kronecker_structure(A, B, field)
    if 0 in kd.right:
        raise ConeDetected("right minimal index 0", kd.right.count(0))
    if kd.left:
        if len(kd.left) == 1 and kd.left[0] >= 1 and not kd.right and not kd.divisors:
            return NilpotentType(kd.left[0]), kd
        raise NotMaximalCodim(f"left minimal indices {kd.left} with right {kd.right}, divisors {kd.divisors}")
    pts = kd.points()
    for pt, sizes in pts.items():
        if len(sizes) > 1:
            raise NotMaximalCodim(f"point {pt} carries several elementary divisors {sizes}")
    lam = tuple(sorted(kd.right, reverse=True))
    mu = tuple(sorted((s for _, s in kd.divisors), reverse=True))
    return KWType(lam, mu), kd


def classify(M: LinearMatrix2):
    """KW type (lambda; mu), or NilpotentType."""
    return classify_detailed(M)[0]


def kw_type_of_blocks(blocks) -> KWType | NilpotentType:
    if any(b.kind == "nilpotent" for b in blocks):
        if len(blocks) == 1:
            return NilpotentType(blocks[0].size)
        raise NotMaximalCodim("nilpotent block in a concatenation")
    lam = tuple(sorted((b.size for b in blocks if b.kind == "scroll"), reverse=True))
    mu = tuple(sorted((b.size for b in blocks if b.kind == "jordan"), reverse=True))
    return KWType(lam, mu)


def nilpotent_oracle(M: LinearMatrix2) -> bool:
    """I_2(M) equals the square of the linear ideal of its entries."""
    lin = linear_ideal(M).gens
    sq = Ideal(M.ring, [a * b for i, a in enumerate(lin) for b in lin[i:]])
    order = GrevLex()
    g1 = buchberger(minors_ideal(M), order)
    g2 = buchberger(sq, order)
    return set(g1.polys) == set(g2.polys)


def normal_form_blocks(t: KWType, eigenvalues=None, field: Field | None = None) -> list:
    """Scroll blocks followed by Jordan blocks with distinct eigenvalues (default 0, 1, 2, ...)."""
    field = field or GF()
    eigenvalues = list(eigenvalues) if eigenvalues is not None else list(range(len(t.mu)))
    if len(set(field.convert(e) for e in eigenvalues)) != len(t.mu):
        raise PencilError("need distinct eigenvalues")
    return [Scroll(p) for p in t.lam] + [Jordan(p, field.convert(e)) for p, e in zip(t.mu, eigenvalues)]


# ------------------------------------------------------ translation and primes

def gb_of(ideal: Ideal):
    return buchberger(ideal, GrevLex())


def same_ideal(I: Ideal, J: Ideal) -> bool:
    return set(gb_of(I).polys) == set(gb_of(J).polys)


def translate_eigenvalues(blocks: Sequence[Block], delta, field: Field | None = None):
    """Return (blocks', M', phi, certified) with phi(I_2(M)) = I_2(M').

    phi only moves the variables of scroll blocks: it is the inverse of the
    substitution restoring the scroll shape after the row operation R2 += delta*R1.
    """
    field = field or GF()
    if any(b.kind == "nilpotent" for b in blocks):
        raise PencilError("translation undefined with a nilpotent block")
    delta = field.convert(delta)
    M = build_matrix(blocks, field)
    new_blocks = [Jordan(b.size, field.norm(field.convert(b.eigenvalue) + delta)) if b.kind == "jordan" else b
                  for b in blocks]
    Mp = build_matrix(new_blocks, field)
    ring = M.ring
    phi: dict = {}
    col = 0
    norm = field.norm
    for b in blocks:
        if b.kind == "scroll":
            # variables of the block, read off the matrix
            xs = [M.entry(1, col + j + 1) for j in range(b.size)] + [M.entry(2, col + b.size)]
            for k in range(b.size + 1):
                img = ring.zero()
                for i in range(k + 1):
                    coef = norm(comb(k, i) * pow(-delta, k - i, field.p) if isinstance(field, PrimeField)
                                else comb(k, i) * (-delta) ** (k - i))
                    if coef:
                        img = img + xs[i].scale(coef)
                name = next(iter(xs[k].support_vars()))
                phi[name] = img
        col += b.ncols
    imgs = minors_ideal(M).gens
    phiI = Ideal(ring, [g.subs(phi, ring) for g in imgs])
    certified = same_ideal(phiI, minors_ideal(Mp))
    return new_blocks, Mp, phi, certified


def _linear_span_ideal(ring: Ring, forms) -> Ideal:
    """Ideal generated by a set of linear forms, given by a reduced echelon basis."""
    field = ring.field
    vecs = [p.linear_coefficients() for p in forms if not p.is_zero()]
    if not vecs:
        return Ideal(ring, [])
    R, piv = linalg.rref(vecs, field)
    gens = ring.gens()
    out = []
    for row in R[:len(piv)]:
        acc = ring.zero()
        for c, g in zip(row, gens):
            if c:
                acc = acc + g.scale(c)
        out.append(acc)
    return Ideal(ring, out)


def primary_components(blocks: Sequence[Block], field: Field | None = None) -> list:
    """Minimal primes with multiplicities: [(p_0, sum a_i), (p_1, b_1), ...]."""
    field = field or GF()
    t = kw_type_of_blocks(blocks)
    if isinstance(t, NilpotentType):
        raise PencilError("nilpotent type has a single non-reduced component")
    eigs = [field.convert(b.eigenvalue) for b in blocks if b.kind == "jordan"]
    if len(set(eigs)) != len(eigs):
        raise NotMaximalCodim("repeated eigenvalues")
    M = build_matrix(blocks, field)
    ring = M.ring
    scroll_cols, jordan_vars = [], []
    col = 0
    for b in blocks:
        cols = list(range(col + 1, col + b.ncols + 1))
        if b.kind == "scroll":
            scroll_cols += cols
        else:
            jordan_vars += [M.entry(1, j) for j in cols]
        col += b.ncols
    p0 = [M.minor(a, b) for i, a in enumerate(scroll_cols) for b in scroll_cols[i + 1:]]
    p0 = Ideal(ring, [g for g in p0 if not g.is_zero()] + jordan_vars)
    a = sum(b.size for b in blocks if b.kind == "scroll")
    # without scroll blocks p_0 is the irrelevant ideal and carries multiplicity 0
    out = [(p0, a)] if a else []
    for b in blocks:
        if b.kind != "jordan":
            continue
        eps = field.convert(b.eigenvalue)
        direct = _linear_span_ideal(ring, [p - q.scale(eps) for p, q in zip(M.rows[1], M.rows[0])])
        # construction through translation: eigenvalue eps -> 0, second row span, pull back
        _, Mp, phi, ok = translate_eigenvalues(blocks, field.norm(-eps), field)
        if not ok:
            raise PencilError("translation certificate failed")
        span = _linear_span_ideal(ring, list(Mp.rows[1]))
        pulled = Ideal(ring, [g.subs(_invert_linear(phi, ring), ring) for g in span.gens])
        if not same_ideal(pulled, direct):
            raise PencilError("translated prime disagrees with the direct construction")
        out.append((direct, b.size))
    return out


def _invert_linear(phi: dict, ring: Ring) -> dict:
    """Inverse of a linear substitution given on a subset of variables."""
    names = list(phi)
    idx = [ring.index[n] for n in names]
    field = ring.field
    Mx = [[phi[n].linear_coefficients()[i] for i in idx] for n in names]
    inv = linalg.inverse(Mx, field)
    out = {}
    for r, n in enumerate(names):
        acc = ring.zero()
        for c, m in zip(inv[r], names):
            if c:
                acc = acc + ring.var(m).scale(c)
        out[n] = acc
    return out


def intersect_ideals(I: Ideal, J: Ideal) -> Ideal:
    """I cap J by eliminating t from tI + (1-t)J."""
    ring = I.ring
    big = ring.extend([Variable("_t", "Generic")])
    t = big.var("_t")
    gens = [g.to_ring(big) * t for g in I.gens] + [g.to_ring(big) * (1 - t) for g in J.gens]
    K = eliminate(Ideal(big, gens), ["_t"], GrevLex())
    return Ideal(ring, [g.to_ring(ring) for g in K.gens])


def codim(I: Ideal) -> int:
    from .hilbert import hilbert_from_exps
    gb = gb_of(I)
    if not gb.polys:
        return 0
    return I.ring.nvars - hilbert_from_exps(gb.leading_exps(), I.ring.nvars).dimension


def multiplicity(I: Ideal) -> int:
    from .hilbert import hilbert_from_exps
    gb = gb_of(I)
    return hilbert_from_exps(gb.leading_exps(), I.ring.nvars).multiplicity


# ------------------------------------------------------------ random scrambles

def scramble(M: LinearMatrix2, rng: random.Random) -> LinearMatrix2:
    """Random GL(2) row mix, GL(c+1) column mix and linear change of variables."""
    field = M.ring.field
    R = linalg.random_invertible(2, field, rng)
    C = linalg.random_invertible(M.ncols, field, rng)
    G = linalg.random_invertible(M.ring.nvars, field, rng)
    gens = M.ring.gens()
    mapping = {}
    for i, n in enumerate(M.ring.names):
        acc = M.ring.zero()
        for c, g in zip(G[i], gens):
            if c:
                acc = acc + g.scale(c)
        mapping[n] = acc
    return M.row_op(R).col_op(C).substitute(mapping)


def random_kw_type(rng: random.Random, cmax: int = 6, cmin: int = 1) -> KWType:
    c = rng.randint(cmin, cmax)
    total = c + 1
    parts = []
    rest = total
    while rest:
        p = rng.randint(1, rest)
        parts.append(p)
        rest -= p
    lam, mu = [], []
    for p in parts:
        (lam if rng.random() < 0.5 else mu).append(p)
    return KWType(tuple(sorted(lam, reverse=True)), tuple(sorted(mu, reverse=True)))


def matrix_example_e(eps, field: Field | None = None) -> LinearMatrix2:
    """The (1,1;1^n) example: columns (x1;x2), (x3;x4), (y_i; eps_i y_i)."""
    field = field or GF()
    n = len(eps)
    ring = Ring([f"x{i}" for i in range(1, 5)] + [f"y{i}" for i in range(1, n + 1)], field)
    x = [ring.var(f"x{i}") for i in range(1, 5)]
    y = [ring.var(f"y{i}") for i in range(1, n + 1)]
    top = [x[0], x[2]] + y
    bot = [x[1], x[3]] + [yi.scale(e) for yi, e in zip(y, eps)]
    return LinearMatrix2(ring, [top, bot])


def load_matrix(path: str, field: Field | None = None) -> LinearMatrix2:
    with open(path) as fh:
        return LinearMatrix2.from_json(json.load(fh), field)
