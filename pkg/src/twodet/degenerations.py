"""Degenerations between Kronecker-Weierstrass strata of H_{c,d}.

A stratum is a KWType (lam; mu) with d scroll parts and |lam| + |mu| = c + 1.
Three moves generate degenerations: peel a column off a scroll block, merge
two Jordan blocks, and rebalance the scroll partition (Harris).  The closed
criterion in terms of a-vectors is evaluated independently and compared with
the move closure.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .fields import Field, GF
from .hilbert import hilbert_function
from .pencil import (Block, Jordan, KWType, LinearMatrix2, Scroll, build_matrix, classify,
                     minors_ideal, translate_eigenvalues)
from .ring import Ring, Variable

Stratum = KWType


class DegenerationError(ValueError):
    pass


# ------------------------------------------------------------- partitions

def partitions(n: int, max_part: int | None = None):
    """Partitions of n in weakly decreasing order, largest first."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def partitions_with_parts(n: int, k: int, max_part: int | None = None):
    if max_part is None:
        max_part = n
    if k == 0:
        if n == 0:
            yield ()
        return
    for first in range(min(n - (k - 1), max_part), 0, -1):
        for rest in partitions_with_parts(n - first, k - 1, first):
            yield (first,) + rest


def _sorted(parts) -> tuple:
    return tuple(sorted(parts, reverse=True))


def strata(c: int, d: int) -> list:
    if c < 2 or not 0 <= d <= c + 1:
        raise DegenerationError(f"no strata for (c,d)=({c},{d})")
    out = []
    for s in range(c + 1, d - 1, -1):
        for lam in partitions_with_parts(s, d):
            for mu in partitions(c + 1 - s):
                out.append(KWType(lam, mu))
    return out


# ------------------------------------------------------------------ moves

def _check_same(s: Stratum, t: Stratum):
    if (s.c, s.d) != (t.c, t.d):
        raise DegenerationError("move changed (c,d)")


def move_peel(s: Stratum, j: int) -> Stratum:
    """Lower the j-th scroll part (1-based) by one and add a Jordan part 1."""
    if not 1 <= j <= s.d or s.lam[j - 1] <= 1:
        raise DegenerationError(f"cannot peel part {j} of {s.label()}")
    lam = list(s.lam)
    lam[j - 1] -= 1
    t = KWType(_sorted(lam), _sorted(s.mu + (1,)))
    _check_same(s, t)
    return t


def move_merge(s: Stratum, h: int, k: int) -> Stratum:
    """Replace Jordan parts h and k (1-based) by their sum."""
    n = len(s.mu)
    if h == k or not (1 <= h <= n and 1 <= k <= n):
        raise DegenerationError(f"invalid merge indices ({h},{k}) for {s.label()}")
    mu = [m for i, m in enumerate(s.mu, 1) if i not in (h, k)] + [s.mu[h - 1] + s.mu[k - 1]]
    t = KWType(s.lam, _sorted(mu))
    _check_same(s, t)
    return t


def harris_leq(lam, lam2) -> bool:
    """True iff lam is more balanced than lam2 (tail sums of lam dominate)."""
    lam, lam2 = _sorted(lam), _sorted(lam2)
    if len(lam) != len(lam2) or sum(lam) != sum(lam2):
        raise DegenerationError("Harris comparison needs equal part counts and sums")
    a = b = 0
    for x, y in zip(reversed(lam), reversed(lam2)):
        a += x
        b += y
        if a < b:
            return False
    return True


def move_harris(s: Stratum, lam2) -> Stratum:
    lam2 = _sorted(lam2)
    if not harris_leq(s.lam, lam2):
        raise DegenerationError(f"{s.lam} is not more balanced than {lam2}")
    return KWType(lam2, s.mu)


def neighbours(s: Stratum) -> set:
    """All strata reachable by one move."""
    out = set()
    for j in range(1, s.d + 1):
        if s.lam[j - 1] > 1:
            out.add(move_peel(s, j))
    for h in range(1, len(s.mu) + 1):
        for k in range(h + 1, len(s.mu) + 1):
            out.add(move_merge(s, h, k))
    if s.d:
        for lam2 in partitions_with_parts(sum(s.lam), s.d):
            if lam2 != s.lam and harris_leq(s.lam, lam2):
                out.add(KWType(lam2, s.mu))
    return out


# -------------------------------------------------------------- criterion

@lru_cache(maxsize=None)
def refines(items: tuple, targets: tuple) -> bool:
    """Can the multiset `items` be split into blocks whose sums are `targets`?"""
    if sum(items) != sum(targets):
        return False
    if not targets:
        return not items
    t, rest_t = targets[0], targets[1:]
    # choose a sub-multiset of items summing to t; items sorted decreasing
    for sub in _subsums(items, t):
        remaining = list(items)
        for x in sub:
            remaining.remove(x)
        if refines(tuple(remaining), rest_t):
            return True
    return False


def _subsums(items: tuple, t: int):
    """Distinct sub-multisets (as sorted tuples) of items with sum t."""
    counts: dict = {}
    for x in items:
        counts[x] = counts.get(x, 0) + 1
    vals = sorted(counts, reverse=True)

    def rec(i, left):
        if left == 0:
            yield ()
            return
        if i == len(vals):
            return
        v = vals[i]
        for m in range(min(counts[v], left // v), -1, -1):
            for tail in rec(i + 1, left - m * v):
                yield (v,) * m + tail

    yield from rec(0, t)


def degenerates(A: Stratum, B: Stratum) -> bool:
    """The a-vector criterion: does a type-A ideal degenerate to type B?"""
    if (A.c, A.d) != (B.c, B.d):
        raise DegenerationError("strata from different H_{c,d}")
    a_total = sum(A.lam) - sum(B.lam)
    if a_total < 0:
        return False
    ranges = [range(0, l) for l in A.lam]
    tried = set()
    for a in itertools.product(*ranges):
        if sum(a) != a_total:
            continue
        lam2 = _sorted(l - x for l, x in zip(A.lam, a))
        if lam2 in tried:
            continue
        tried.add(lam2)
        if not harris_leq(lam2, B.lam):
            continue
        if refines(_sorted(A.mu + (1,) * a_total), _sorted(B.mu)):
            return True
    return False


# ------------------------------------------------------------------ poset

def move_closure(c: int, d: int) -> dict:
    nodes = strata(c, d)
    reach = {}
    for s in nodes:
        seen = {s}
        stack = [s]
        while stack:
            for t in neighbours(stack.pop()):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        reach[s] = seen
    return reach


@dataclass
class Poset:
    c: int
    d: int
    nodes: list
    below: dict  # node -> set of nodes it degenerates to (reflexive)
    hasse: list  # (upper, lower) covering pairs
    closure_agrees: bool
    disagreements: list = field(default_factory=list)

    def minimal(self) -> list:
        return [s for s in self.nodes if self.below[s] == {s}]

    def maximal(self) -> list:
        return [s for s in self.nodes if not any(s in self.below[t] for t in self.nodes if t != s)]

    def to_dot(self) -> str:
        lines = [f'digraph "H_{self.c}_{self.d}" {{', "  rankdir=TB;", "  node [shape=plaintext];"]
        ident = {s: f"n{i}" for i, s in enumerate(self.nodes)}
        for s in self.nodes:
            lines.append(f'  {ident[s]} [label="{s.label()}"];')
        by_rank: dict = {}
        for s in self.nodes:
            by_rank.setdefault(sum(s.lam), []).append(ident[s])
        for r in sorted(by_rank, reverse=True):
            lines.append("  { rank=same; " + " ".join(by_rank[r]) + "; }")
        for u, v in self.hasse:
            lines.append(f"  {ident[u]} -> {ident[v]};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({"schema": 1, "c": self.c, "d": self.d,
                           "nodes": [s.label() for s in self.nodes],
                           "hasse_edges": [[u.label(), v.label()] for u, v in self.hasse],
                           "minimal": [s.label() for s in self.minimal()],
                           "maximal": [s.label() for s in self.maximal()],
                           "closure_agrees": self.closure_agrees,
                           "disagreements": [[u.label(), v.label(), how] for u, v, how in self.disagreements]},
                          indent=1, ensure_ascii=False)


def poset(c: int, d: int) -> Poset:
    nodes = strata(c, d)
    below = {s: {t for t in nodes if degenerates(s, t)} for s in nodes}
    reach = move_closure(c, d)
    dis = []
    for s in nodes:
        for t in below[s] - reach[s]:
            dis.append((s, t, "criterion only"))
        for t in reach[s] - below[s]:
            dis.append((s, t, "moves only"))
    hasse = []
    for s in nodes:
        lower = below[s] - {s}
        for t in lower:
            if not any(t in below[u] for u in lower - {t}):
                hasse.append((s, t))
    order = {s: i for i, s in enumerate(nodes)}
    hasse.sort(key=lambda e: (order[e[0]], order[e[1]]))
    return Poset(c, d, nodes, below, hasse, not dis, dis)


def parse_stratum(text: str) -> Stratum:
    """Parse "(3,2^2;∅)" or "(3,2,2;)" style labels."""
    text = text.strip().strip("()")
    left, right = text.split(";")

    def parts(s):
        out = []
        for tok in s.replace("∅", "").split(","):
            tok = tok.strip()
            if not tok:
                continue
            if "^" in tok:
                v, k = tok.split("^")
                out += [int(v)] * int(k)
            else:
                out.append(int(tok))
        return _sorted(out)

    return KWType(parts(left), parts(right))


# ---------------------------------------------------------------- families

@dataclass
class ParametricMatrix:
    """Two rows of forms over base[t], linear in the base variables."""

    base: Ring
    ring: Ring
    rows: tuple
    kind: str
    source: KWType
    target: KWType
    excluded: tuple = ()
    meta: dict = field(default_factory=dict)

    def specialize(self, t0) -> LinearMatrix2:
        F = self.base.field
        tval = self.ring.const(F.convert(t0))
        rows = [[p.subs({"t": tval}, self.ring).to_ring(self.base) for p in row] for row in self.rows]
        return LinearMatrix2(self.base, rows)

    def expected_type(self, t0) -> KWType:
        F = self.base.field
        return self.target if F.convert(t0) == F.zero else self.source


def _with_param(ring: Ring) -> Ring:
    return ring.extend([Variable("t", "Param")])


def _jordan_eigs(blocks, field) -> list:
    return [field.convert(b.eigenvalue) for b in blocks if b.kind == "jordan"]


def family_peel(blocks: Sequence[Block], j: int, eps, field: Field | None = None) -> ParametricMatrix:
    """Deform the last column of the j-th scroll block (1-based) to (t x_p + eps x_{p+1}; x_{p+1})."""
    field = field or GF()
    eps = field.convert(eps)
    scrolls = [i for i, b in enumerate(blocks) if b.kind == "scroll"]
    if not 1 <= j <= len(scrolls):
        raise DegenerationError("no such scroll block")
    bj = blocks[scrolls[j - 1]]
    if bj.size <= 1:
        raise DegenerationError("peeling needs a scroll block of size > 1")
    if eps == field.zero:
        raise DegenerationError("eps must be nonzero")
    if field.inv(eps) in _jordan_eigs(blocks, field):
        raise DegenerationError("1/eps coincides with an eigenvalue")
    M = build_matrix(blocks, field)
    R = _with_param(M.ring)
    rows = [[p.to_ring(R) for p in row] for row in M.rows]
    col = sum(b.ncols for b in blocks[:scrolls[j - 1]]) + bj.size - 1
    xp, xp1 = rows[0][col], rows[1][col]
    rows[0][col] = R.var("t") * xp + xp1.scale(eps)
    src = KWType(_sorted(b.size for b in blocks if b.kind == "scroll"),
                 _sorted(b.size for b in blocks if b.kind != "scroll"))
    return ParametricMatrix(M.ring, R, (tuple(rows[0]), tuple(rows[1])), "peel", src, move_peel(src, j),
                            (), {"j": j, "eps": field.to_str(eps)})


def family_merge(blocks: Sequence[Block], h: int, k: int, field: Field | None = None) -> ParametricMatrix:
    """Couple Jordan blocks h and k (1-based among Jordan blocks); block h is translated to eigenvalue 0."""
    field = field or GF()
    jpos = [i for i, b in enumerate(blocks) if b.kind == "jordan"]
    if h == k or not (1 <= h <= len(jpos) and 1 <= k <= len(jpos)):
        raise DegenerationError("invalid Jordan indices")
    shift = field.norm(-field.convert(blocks[jpos[h - 1]].eigenvalue))
    if shift != field.zero:
        blocks, _, _, ok = translate_eigenvalues(blocks, shift, field)
        if not ok:
            raise DegenerationError("eigenvalue translation failed to certify")
    blocks = list(blocks)
    eps = field.convert(blocks[jpos[k - 1]].eigenvalue)
    M = build_matrix(blocks, field)
    R = _with_param(M.ring)
    t = R.var("t")
    rows = [[p.to_ring(R) for p in row] for row in M.rows]
    ch = sum(b.ncols for b in blocks[:jpos[h - 1]])
    ck = sum(b.ncols for b in blocks[:jpos[k - 1]])
    p, q = blocks[jpos[h - 1]].size, blocks[jpos[k - 1]].size
    ys = [rows[0][ck + i] for i in range(q)]
    rows[1][ch + p - 1] = (R.one() - t) * ys[0]
    for i in range(q):
        nxt = ys[i + 1] if i + 1 < q else R.zero()
        rows[1][ck + i] = nxt + t * ys[i].scale(eps)
    others = [field.convert(blocks[i].eigenvalue) for n, i in enumerate(jpos, 1) if n not in (h, k)]
    excluded = [field.zero] + [field.div(e, eps) for e in others]
    src = KWType(_sorted(b.size for b in blocks if b.kind == "scroll"),
                 _sorted(b.size for b in blocks if b.kind != "scroll"))
    return ParametricMatrix(M.ring, R, (tuple(rows[0]), tuple(rows[1])), "merge", src,
                            move_merge(src, h, k), tuple(excluded[1:]),
                            {"h": h, "k": k, "eps": field.to_str(eps)})


@dataclass
class FlatnessReport:
    ok: bool
    samples: list
    hilbert: list
    types: list
    types_ok: bool
    witness_degree: int | None = None

    def to_json(self) -> dict:
        return {"schema": 1, "ok": self.ok, "samples": [str(s) for s in self.samples],
                "hilbert": self.hilbert, "types": [str(t) for t in self.types],
                "types_ok": self.types_ok, "witness_degree": self.witness_degree}


def flatness_check(fam: ParametricMatrix, samples, degree_bound: int = 6) -> FlatnessReport:
    F = fam.base.field
    for s in samples:
        if F.convert(s) in fam.excluded:
            raise DegenerationError(f"sample t={s} is an excluded parameter value")
    hfs, types = [], []
    for s in samples:
        M = fam.specialize(s)
        hfs.append(hilbert_function(minors_ideal(M), degree_bound=degree_bound))
        types.append(classify(M))
    witness = None
    for k in range(degree_bound + 1):
        if len({h[k] for h in hfs}) > 1:
            witness = k
            break
    types_ok = all(ty == fam.expected_type(s) for ty, s in zip(types, samples))
    return FlatnessReport(witness is None, list(samples), hfs, types, types_ok, witness)


def admissible_eps(blocks, field: Field, rng: random.Random | None = None):
    eigs = set(_jordan_eigs(blocks, field))
    cand = 2
    while True:
        e = field.convert(rng.randrange(1, 1000) if rng else cand)
        if e != field.zero and field.inv(e) not in eigs:
            return e
        cand += 1


def random_family(rng: random.Random, cmax: int = 5, kind: str | None = None, field: Field | None = None):
    """A seeded peel or merge instance on a random normal form with c <= cmax."""
    field = field or GF()
    kind = kind or rng.choice(["peel", "merge"])
    while True:
        c = rng.randint(2, cmax)
        d = rng.randint(0, c + 1)
        cands = strata(c, d)
        if kind == "peel":
            cands = [s for s in cands if any(l > 1 for l in s.lam)]
        else:
            cands = [s for s in cands if len(s.mu) >= 2]
        if cands:
            break
    s = rng.choice(cands)
    eigs = rng.sample(range(0, 50), len(s.mu))
    blocks = [Scroll(p) for p in s.lam] + [Jordan(p, field.convert(e)) for p, e in zip(s.mu, eigs)]
    if kind == "peel":
        j = rng.choice([i for i, l in enumerate(s.lam, 1) if l > 1])
        return family_peel(blocks, j, admissible_eps(blocks, field, rng), field)
    h, k = rng.sample(range(1, len(s.mu) + 1), 2)
    return family_merge(blocks, h, k, field)


def admissible_samples(fam: ParametricMatrix, rng: random.Random, n: int = 3) -> list:
    """0 and 1 first, then random admissible values."""
    F = fam.base.field
    out = [0, 1]
    while len(out) < n:
        s = rng.randrange(2, 10_000)
        if s not in out and F.convert(s) not in fam.excluded:
            out.append(s)
    return out[:n]
