"""Initial simplicial complexes of the fiber and Rees presentations.

Vertices are variable names (``T[a,b]``, ``x3``, ``y2_1`` ...).  Both
complexes are flag: a set of vertices is a face iff it contains no forbidden
pair.  Facets come from maximal-clique enumeration on the compatibility graph;
for the fiber complex a second engine generates them directly as binary trees
of intervals.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass
from math import comb
from typing import Iterable

import networkx as nx

from .blowup import BlowupPresentation, expected_lm
from .fields import Field, PrimeField, QQ
from .hilbert import HilbertData
from .ring import t_name


class ComplexError(ValueError):
    pass


class CapExceeded(ComplexError):
    pass


@dataclass(frozen=True, order=True)
class IntervalVertex:
    a: int
    b: int

    def name(self) -> str:
        return t_name(self.a, self.b)

    def crosses(self, other: "IntervalVertex") -> bool:
        (a, b), (c, d) = sorted([(self.a, self.b), (other.a, other.b)])
        return a < c < b < d

    def contains(self, other: "IntervalVertex") -> bool:
        return self.a <= other.a and other.b <= self.b and self != other


def parse_t(name: str):
    if not name.startswith("T["):
        return None
    a, b = name[2:-1].split(",")
    return int(a), int(b)


class SimplicialComplex:
    """A complex given by its facets, optionally flag with known non-edges."""

    def __init__(self, vertices: Iterable, facets: Iterable, nonedges: Iterable | None = None):
        self.vertices = list(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        fs = {frozenset(self.index[v] for v in f) for f in facets}
        fs = [f for f in fs if not any(f < g for g in fs)]
        self._facets = sorted(fs, key=lambda f: (len(f), sorted(f)))
        self.nonedges = None
        if nonedges is not None:
            self.nonedges = {frozenset((self.index[u], self.index[v])) for u, v in nonedges}
        self._nbr = None

    # flag structure
    @classmethod
    def flag(cls, vertices: Iterable, forbidden: Iterable) -> "SimplicialComplex":
        vertices = list(vertices)
        forbidden = [tuple(p) for p in forbidden]
        G = nx.Graph()
        G.add_nodes_from(range(len(vertices)))
        idx = {v: i for i, v in enumerate(vertices)}
        bad = {frozenset((idx[u], idx[v])) for u, v in forbidden}
        for i in range(len(vertices)):
            for j in range(i + 1, len(vertices)):
                if frozenset((i, j)) not in bad:
                    G.add_edge(i, j)
        cliques = list(nx.find_cliques(G)) if vertices else [[]]
        K = cls(vertices, [[vertices[i] for i in c] for c in cliques], forbidden)
        return K

    def is_flag_known(self) -> bool:
        return self.nonedges is not None

    def neighbor_masks(self) -> list:
        """Bitmask of vertices adjacent (compatible) to each vertex."""
        if self._nbr is None:
            n = len(self.vertices)
            if self.nonedges is not None:
                full = (1 << n) - 1
                nbr = [full & ~(1 << i) for i in range(n)]
                for e in self.nonedges:
                    i, j = tuple(e)
                    nbr[i] &= ~(1 << j)
                    nbr[j] &= ~(1 << i)
            else:
                nbr = [0] * n
                for f in self._facets:
                    m = 0
                    for i in f:
                        m |= 1 << i
                    for i in f:
                        nbr[i] |= m & ~(1 << i)
            self._nbr = nbr
        return self._nbr

    @property
    def facets(self) -> list:
        return [tuple(sorted((self.vertices[i] for i in f), key=self._vkey)) for f in self._facets]

    def _vkey(self, v):
        return self.index[v]

    def facet_sets(self) -> list:
        return [frozenset(self.vertices[i] for i in f) for f in self._facets]

    def dimension(self) -> int:
        return max((len(f) for f in self._facets), default=0) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self._facets}) <= 1

    def __len__(self):
        return len(self._facets)

    # faces
    def faces(self):
        """All faces as sorted index tuples, including the empty face."""
        if self.nonedges is not None:
            nbr = self.neighbor_masks()
            n = len(self.vertices)

            def rec(face, cand):
                yield face
                while cand:
                    low = cand & -cand
                    v = low.bit_length() - 1
                    cand ^= low
                    yield from rec(face + (v,), cand & nbr[v])

            yield from rec((), (1 << n) - 1)
        else:
            seen = set()
            for f in self._facets:
                fl = sorted(f)
                for k in range(len(fl) + 1):
                    for s in itertools.combinations(fl, k):
                        if s not in seen:
                            seen.add(s)
                            yield s

    def f_vector(self) -> list:
        """[f_{-1}, f_0, f_1, ...]"""
        counts: dict = {}
        for s in self.faces():
            counts[len(s)] = counts.get(len(s), 0) + 1
        top = max(counts)
        return [counts.get(k, 0) for k in range(top + 1)]

    def contains_face(self, face) -> bool:
        ids = {self.index[v] for v in face}
        return any(ids <= f for f in self._facets)

    def induced(self, vertex_subset) -> "SimplicialComplex":
        keep = set(vertex_subset)
        vs = [v for v in self.vertices if v in keep]
        if self.nonedges is not None:
            forb = [(self.vertices[i], self.vertices[j]) for i, j in map(tuple, self.nonedges)
                    if self.vertices[i] in keep and self.vertices[j] in keep]
            return SimplicialComplex.flag(vs, forb)
        return SimplicialComplex(vs, [[v for v in f if v in keep] for f in self.facets])

    def to_json(self) -> str:
        return json.dumps({"schema": 1, "vertices": list(map(str, self.vertices)),
                           "facets": [list(map(str, f)) for f in self.facets]}, indent=1)


# ------------------------------------------------------------- constructions

def delta_F_forbidden(d: int, e: int) -> list:
    c = d + e - 1
    pairs = []
    for a, b, g, dl in itertools.combinations(range(1, c + 2), 4):
        pairs.append((t_name(a, g), t_name(b, dl)))
    for a in range(d + 2, c + 2):
        for b in range(a + 1, c + 2):
            for g in range(b, c + 2):
                for dl in range(g + 1, c + 2):
                    pairs.append((t_name(a, b), t_name(g, dl)))
    return pairs


def build_delta_F(d: int, e: int) -> SimplicialComplex:
    if d + e < 3:
        raise ComplexError("need d + e >= 3")
    c = d + e - 1
    verts = [t_name(a, b) for a in range(1, c + 2) for b in range(a + 1, c + 2)]
    return SimplicialComplex.flag(verts, delta_F_forbidden(d, e))


def delta_R_forbidden(d: int, e: int) -> list:
    p = BlowupPresentation(d, e)
    pairs = []
    for rid in p.relation_ids():
        m = expected_lm(rid, d, e, p.ring)
        ex = next(iter(m.terms))
        names = [p.ring.names[i] for i, a in enumerate(ex) if a]
        if len(names) != 2:
            raise ComplexError(f"leading monomial of {rid} is not a squarefree quadric")
        pairs.append(tuple(names))
    return sorted(set(pairs))


def build_delta_R(d: int, e: int) -> SimplicialComplex:
    if d + e < 3:
        raise ComplexError("need d + e >= 3")
    p = BlowupPresentation(d, e)
    return SimplicialComplex.flag(list(p.ring.names), delta_R_forbidden(d, e))


def printed_delta_R_d1(e: int) -> set:
    """The displayed generator list of I(Delta_R) for d = 1, with y1 = y1_1, y2 = y2_1."""
    T = t_name
    out = set()
    E = e + 1
    for a, b, g, dl in itertools.combinations(range(1, E + 1), 4):
        out.add(frozenset((T(a, g), T(b, dl))))
    for a in range(3, E + 1):
        for b in range(a + 1, E + 1):
            for g in range(b, E + 1):
                for dl in range(g + 1, E + 1):
                    out.add(frozenset((T(a, b), T(g, dl))))
    for a in range(1, e + 1):
        for b in range(max(a + 1, 3), e + 1):
            for g in range(b, e + 1):
                out.add(frozenset((f"x{g}", T(a, b))))
    for g in range(3, E + 1):
        out.add(frozenset(("x1", T(1, g))))
    for b in range(2, E + 1):
        for g in range(b + 1, E + 1):
            out.add(frozenset(("y2_1", T(b, g))))
    for a in range(2, E + 1):
        for b in range(a + 1, E + 1):
            for g in range(b + 1, E + 1):
                out.add(frozenset((f"x{a}", T(b, g))))
    return out


# --------------------------------------------------------- facet engine B

def _full_binary_trees(a: int, b: int, memo: dict) -> list:
    key = (a, b)
    if key in memo:
        return memo[key]
    if b == a + 1:
        res = [frozenset([(a, b)])]
    else:
        res = []
        for g in range(a + 1, b):
            for L in _full_binary_trees(a, g, memo):
                for R in _full_binary_trees(g, b, memo):
                    res.append(L | R | {(a, b)})
    memo[key] = res
    return res


def _constrained_trees(a: int, b: int, k: int, d: int, memo: dict) -> list:
    """Trees rooted at (a,b) whose leaves are every unit interval (i,i+1) in [a,b] with
    i <= d+1, plus exactly k unit intervals with i >= d+2; one-child nodes drop an end column."""
    key = (a, b, k)
    if key in memo:
        return memo[key]
    res = []
    if b == a + 1:
        high = a >= d + 2
        if (k == 1) == high:
            res = [frozenset([(a, b)])]
    else:
        for g in range(a + 1, b):
            for k1 in range(k + 1):
                for L in _constrained_trees(a, g, k1, d, memo):
                    for R in _constrained_trees(g, b, k - k1, d, memo):
                        res.append(L | R | {(a, b)})
        if a >= d + 2:
            res += [t | {(a, b)} for t in _constrained_trees(a + 1, b, k, d, memo)]
        if b - 1 >= d + 2:
            res += [t | {(a, b)} for t in _constrained_trees(a, b - 1, k, d, memo)]
        res = list(dict.fromkeys(res))
    memo[key] = res
    return res


def facets_tree_engine(d: int, e: int) -> list:
    """Facets of Delta_F generated as interval trees (the combinatorial description)."""
    c = d + e - 1
    if e <= 3:
        trees = _full_binary_trees(1, c + 1, {})
    else:
        trees = _constrained_trees(1, c + 1, 1, d, {})
    return [frozenset(t_name(a, b) for a, b in t) for t in trees]


def facets(K: SimplicialComplex, engine: str = "cliques", d: int | None = None, e: int | None = None) -> list:
    if engine == "cliques":
        return K.facet_sets()
    if engine == "trees":
        if d is None or e is None:
            raise ComplexError("tree engine needs (d, e)")
        return facets_tree_engine(d, e)
    raise ComplexError(f"unknown engine {engine}")


def engines_agree(d: int, e: int) -> bool:
    K = build_delta_F(d, e)
    a = set(K.facet_sets())
    b = set(facets_tree_engine(d, e))
    if a != b:
        raise ComplexError(f"facet engines disagree at (d,e)=({d},{e}): {len(a)} vs {len(b)}")
    return True


# ------------------------------------------------------------ counting

def count_formula(which: str, d: int, e: int) -> int:
    c = d + e - 1
    if which == "F":
        if d + e < 3:
            raise ComplexError("need d + e >= 3")
        if e <= 3:
            return comb(2 * c - 2, c - 1) - comb(2 * c - 2, c)
        return sum(comb(c + d, h + d) for h in range(1, c - d)) - (c - d - 1) * comb(c + d, d)
    if which == "R":
        if d != 1 or e < 4:
            raise ComplexError("Rees facet formula stated for d = 1, e >= 4")
        return 2 ** (e + 2) - (e + 1) ** 2 - 3
    raise ComplexError(f"unknown complex {which}")


def facet_size_formula(which: str, d: int, e: int) -> int:
    c = d + e - 1
    if which == "F":
        return 2 * c - 1 if e <= 3 else c + d + 1
    return e + 3


def rees_d1_cases(e: int, K: SimplicialComplex | None = None) -> dict:
    """Split the facets of Delta_R(1,e) into the five cases of the counting argument."""
    K = K or build_delta_R(1, e)
    cases = {1: 0, 2: 0, 3: 0, 4: 0, 5: 0}
    for f in K.facet_sets():
        xs = {v for v in f if v.startswith("x")}
        if "y2_1" in f:
            cases[1] += 1
        elif not xs:
            cases[2] += 1
        elif xs == {"x1"}:
            cases[3] += 1
        elif "x1" not in xs:
            cases[4] += 1
        else:
            cases[5] += 1
    return cases


def rees_d1_case_formulas(e: int) -> dict:
    return {1: e, 2: 2 ** (e + 1) - 2 - e * (e + 1), 3: 2 ** (e - 1) - e,
            4: 2 ** e - e - 1, 5: 2 ** (e - 1) - 1}


# ------------------------------------------------------- Stanley-Reisner data

def sr_hilbert(K: SimplicialComplex) -> HilbertData:
    """Hilbert series of k[K] from the f-vector, over the full vertex set."""
    f = K.f_vector()
    n = len(K.vertices)
    num = [0] * (n + 1)
    for i, fi in enumerate(f):  # f[i] counts faces with i vertices
        if not fi:
            continue
        # t^i (1-t)^(n-i)
        for k in range(n - i + 1):
            num[i + k] += fi * comb(n - i, k) * (-1) ** k
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return HilbertData(num, n)


def sr_generators(K: SimplicialComplex) -> list:
    """Minimal non-faces (for flag complexes the forbidden pairs)."""
    if K.nonedges is not None:
        return sorted(tuple(sorted(K.vertices[i] for i in e)) for e in K.nonedges)
    out = []
    n = len(K.vertices)
    for k in range(1, n + 1):
        for s in itertools.combinations(K.vertices, k):
            if not K.contains_face(s) and all(K.contains_face(t) for t in itertools.combinations(s, k - 1)):
                out.append(s)
    return out


# ---------------------------------------------------------------- homology

def _rank_f2(rows: list) -> int:
    pivots: dict = {}
    for r in rows:
        while r:
            h = r.bit_length() - 1
            p = pivots.get(h)
            if p is None:
                pivots[h] = r
                break
            r ^= p
    return len(pivots)


def _rank_sparse(rows: list, field: Field) -> int:
    """Rank of sparse rows {col: value}; fraction-free integer elimination over QQ."""
    pivots: dict = {}
    if isinstance(field, PrimeField):
        p = field.p
        for r in rows:
            r = {k: v % p for k, v in r.items() if v % p}
            while r:
                c = min(r)
                piv = pivots.get(c)
                if piv is None:
                    pivots[c] = r
                    break
                f = r[c] * pow(piv[c], -1, p) % p
                for k, v in piv.items():
                    nv = (r.get(k, 0) - f * v) % p
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        return len(pivots)
    from math import gcd
    for r in rows:
        r = {k: int(v) for k, v in r.items() if v}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = r
                break
            a, b = piv[c], r[c]
            new = {}
            for k in set(r) | set(piv):
                v = a * r.get(k, 0) - b * piv.get(k, 0)
                if v:
                    new[k] = v
            g = 0
            for v in new.values():
                g = gcd(g, v)
            r = {k: v // g for k, v in new.items()} if g > 1 else new
    return len(pivots)


def _homology_from_faces(faces_by_size: dict, field: Field, top: int | None = None) -> list:
    """Reduced Betti numbers [h_{-1}, h_0, ..., h_top] from faces grouped by size."""
    maxsize = max(faces_by_size) if faces_by_size else 0
    if top is None:
        top = maxsize - 1
    index = {k: {f: i for i, f in enumerate(fs)} for k, fs in faces_by_size.items()}
    ranks = {}
    f2 = isinstance(field, PrimeField) and field.p == 2
    for k in range(1, maxsize + 1):
        # boundary from faces of size k to size k-1
        rows = []
        low = index.get(k - 1, {})
        for f in faces_by_size.get(k, []):
            if f2:
                r = 0
                for i in range(len(f)):
                    r |= 1 << low[f[:i] + f[i + 1:]]
            else:
                r = {}
                for i in range(len(f)):
                    r[low[f[:i] + f[i + 1:]]] = -1 if i % 2 else 1
            rows.append(r)
        ranks[k] = _rank_f2(rows) if f2 else _rank_sparse(rows, field)
    out = []
    for k in range(0, top + 2):  # faces of size k -> homology in dimension k-1
        ck = len(faces_by_size.get(k, []))
        out.append(ck - ranks.get(k, 0) - ranks.get(k + 1, 0))
    return out


def reduced_homology(K: SimplicialComplex, field: Field = QQ) -> list:
    """[dim H~_{-1}, dim H~_0, ..., dim H~_{dim K}]."""
    by: dict = {}
    for f in K.faces():
        by.setdefault(len(f), []).append(f)
    return _homology_from_faces(by, field, K.dimension())


def _clique_faces(nbr: list, mask: int) -> dict:
    by: dict = {}

    def rec(face, cand):
        by.setdefault(len(face), []).append(face)
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            rec(face + (v,), cand & nbr[v])

    rec((), mask)
    return by


def link(K: SimplicialComplex, face) -> SimplicialComplex:
    ids = {K.index[v] for v in face}
    if not K.contains_face(face):
        raise ComplexError("face not in complex")
    fs = [[K.vertices[i] for i in f - ids] for f in K._facets if ids <= f]
    keep = sorted({v for f in fs for v in f}, key=K.index.get)
    nonedges = None
    if K.nonedges is not None:
        ks = set(keep)
        nonedges = [(K.vertices[i], K.vertices[j]) for i, j in map(tuple, K.nonedges)
                    if K.vertices[i] in ks and K.vertices[j] in ks]
    return SimplicialComplex(keep, fs, nonedges)


@dataclass
class ReisnerCertificate:
    ok: bool
    field: str
    faces_checked: int
    distinct_links: int
    witness: tuple | None = None
    homology: list | None = None


def reisner_cm(K: SimplicialComplex, field: Field = QQ, cap: int = 2_000_000) -> ReisnerCertificate:
    """Cohen-Macaulay test: every link has vanishing reduced homology below its dimension."""
    nbr = K.neighbor_masks()
    n = len(K.vertices)
    facet_masks = []
    for f in K._facets:
        m = 0
        for i in f:
            m |= 1 << i
        facet_masks.append(m)
    memo: dict = {}
    checked = 0
    for face in K.faces():
        checked += 1
        if checked > cap:
            raise CapExceeded("too many faces for the Reisner check")
        fm = 0
        for i in face:
            fm |= 1 << i
        if K.nonedges is not None:
            common = (1 << n) - 1
            for i in face:
                common &= nbr[i]
            lk_nbr = nbr
        else:
            common = 0
            for m in facet_masks:
                if m & fm == fm:
                    common |= m & ~fm
            lk_nbr = None
        if common in memo:
            continue
        if lk_nbr is not None:
            by = _clique_faces(lk_nbr, common)
        else:
            by = {}
            seen = set()
            for m in facet_masks:
                if m & fm == fm:
                    rest = [i for i in range(n) if (m & ~fm) >> i & 1]
                    for k in range(len(rest) + 1):
                        for s in itertools.combinations(rest, k):
                            if s not in seen:
                                seen.add(s)
                                by.setdefault(k, []).append(s)
        dim = max(by) - 1
        h = _homology_from_faces(by, field, dim)
        memo[common] = h
        if any(h[i] for i in range(0, dim + 1)):  # indices -1 .. dim-1
            return ReisnerCertificate(False, field.descriptor(), checked, len(memo),
                                      tuple(K.vertices[i] for i in face), h)
    return ReisnerCertificate(True, field.descriptor(), checked, len(memo))


# --------------------------------------------------------- Betti numbers

def hochster_betti(K: SimplicialComplex, field: Field = QQ, max_vertices: int = 20) -> dict:
    """beta_{i,j}(I_K) = sum over |W| = j of dim H~_{j-i-2}(K_W)."""
    n = len(K.vertices)
    if n > max_vertices:
        raise CapExceeded(f"{n} vertices exceeds the Hochster cap {max_vertices}")
    nbr = K.neighbor_masks()
    table: dict = {}
    for mask in range(1, 1 << n):
        j = bin(mask).count("1")
        if K.nonedges is not None:
            by = _clique_faces([x & mask for x in nbr], mask)
        else:
            by = {}
            sub = [i for i in range(n) if mask >> i & 1]
            for k in range(j + 1):
                for s in itertools.combinations(sub, k):
                    if K.contains_face([K.vertices[i] for i in s]):
                        by.setdefault(k, []).append(s)
        h = _homology_from_faces(by, field, j - 1)
        for dim_idx, val in enumerate(h):
            if val:
                hd = dim_idx - 1
                i = j - hd - 2
                if i >= 0:
                    table[(i, j)] = table.get((i, j), 0) + val
    return table


def taylor_betti(gens: list, field: Field = QQ) -> dict:
    """Graded Betti numbers of a monomial ideal from the Taylor complex, multidegree by multidegree."""
    g = len(gens)
    if g > 16:
        raise CapExceeded("Taylor oracle limited to 16 generators")
    by_lcm: dict = {}
    for mask in range(1, 1 << g):
        idx = tuple(i for i in range(g) if mask >> i & 1)
        lcm = tuple(map(max, *[gens[i] for i in idx])) if len(idx) > 1 else tuple(gens[idx[0]])
        by_lcm.setdefault(lcm, []).append(idx)
    table: dict = {}
    for lcm, sets in by_lcm.items():
        j = sum(lcm)
        groups: dict = {}
        for s in sets:
            groups.setdefault(len(s), []).append(s)
        pos = {k: {s: i for i, s in enumerate(v)} for k, v in groups.items()}
        ranks = {}
        for k, ss in groups.items():
            if k == 1:
                ranks[k] = 0
                continue
            rows = []
            for s in ss:
                r = {}
                for t in range(k):
                    sub = s[:t] + s[t + 1:]
                    if sub in pos.get(k - 1, {}):
                        r[pos[k - 1][sub]] = -1 if t % 2 else 1
                rows.append(r)
            ranks[k] = _rank_sparse(rows, field)
        for k, ss in groups.items():
            b = len(ss) - ranks.get(k, 0) - ranks.get(k + 1, 0)
            if b:
                table[(k - 1, j)] = table.get((k - 1, j), 0) + b
    return table


def squarefree_exps(K: SimplicialComplex) -> list:
    n = len(K.vertices)
    out = []
    for gset in sr_generators(K):
        e = [0] * n
        for v in gset:
            e[K.index[v]] = 1
        out.append(tuple(e))
    return out


def betti_tsv(table: dict) -> str:
    if not table:
        return "i\\j\n"
    js = sorted({j for _, j in table})
    is_ = sorted({i for i, _ in table})
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(["i\\j"] + js)
    for i in is_:
        w.writerow([i] + [table.get((i, j), 0) for j in js])
    return buf.getvalue()


def f_vector_csv(f: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["dim", "faces"])
    for k, v in enumerate(f):
        w.writerow([k - 1, v])
    return buf.getvalue()


# ------------------------------------------------------------ link lemma

def _shift_T(name: str, s: int) -> str:
    ab = parse_t(name)
    return t_name(ab[0] + s, ab[1] + s) if ab else name


def verify_link_iso(e: int) -> bool:
    """Link of {x1, T[2,e+1]} in Delta_R(1,e) versus Delta_R(0,e) with columns shifted by one.

    After the shift T[a,b] -> T[a+1,b+1], the relabeling sends x1 -> y1_1 and
    T[2,e+1] -> T[1,2].
    """
    big = build_delta_R(1, e)
    face = ["x1", t_name(2, e + 1)]
    small = build_delta_R(0, e)
    swap = {"x1": "y1_1", t_name(2, e + 1): t_name(1, 2)}
    lk = link(big, face)
    image = {frozenset(swap.get(_shift_T(v, 1), _shift_T(v, 1)) for v in f) for f in small.facet_sets()}
    return image == set(lk.facet_sets())


def f_vector(K: SimplicialComplex) -> list:
    return K.f_vector()
