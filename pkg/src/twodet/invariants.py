"""Closed-form dimensions and multiplicities of the blowup algebras, with cross-checks.

Dimensions are Krull dimensions (degree of the Hilbert polynomial plus one)
throughout.  For d = 0 the printed fiber dimension is c; the report carries
it as a separate field next to the uniform value.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from math import comb

from .blowup import BlowupPresentation, fiber_kernel_oracle, rees_kernel_oracle
from .complexes import build_delta_F, build_delta_R, sr_hilbert
from .fields import Field, GF
from .hilbert import hilbert_from_exps
from .groebner import buchberger
from .orders import CompositePreceq


class InvariantError(ValueError):
    pass


def _check(c: int, d: int):
    if c < 2 or not 0 <= d <= c + 1:
        raise InvariantError(f"(c,d)=({c},{d}) out of range")


def fiber_mult(c: int, d: int) -> int:
    _check(c, d)
    if d == 0:
        return 2 ** c - c - 1
    if c - d <= 2:
        return comb(2 * c - 2, c - 1) - comb(2 * c - 2, c)
    return sum(comb(c + d, c + 1 - j) for j in range(2, c - d + 1)) - (c - d - 1) * comb(c + d, c)


def fiber_dim(c: int, d: int) -> int:
    """Krull dimension of the special fiber ring."""
    _check(c, d)
    if d == 0:
        return c + 1
    return min(2 * c - 1, c + d + 1)


def fiber_dim_printed(c: int, d: int) -> int:
    """The dimension as stated for d = 0 (projective convention)."""
    return c if d == 0 else fiber_dim(c, d)


def rees_mult_d1(c: int) -> int:
    if c < 3:
        raise InvariantError("Rees multiplicity formula needs c >= 3")
    return 2 ** (c + 2) - (c + 1) ** 2 - 3


def rees_dim(c: int, d: int) -> int:
    """dim S + 1 with S in c + d + 1 variables."""
    return c + d + 2


def conca_e0(n: int, h: int) -> int:
    return n * comb(n + h - 2, n - 1)


def conca_e1(n: int, h: int) -> int:
    return (n - 1) * (n + 2) * comb(n + h - 2, n) + (n - 1) * comb(n + h - 2, n - 1)


def beta0_curve_power(n: int, h: int) -> int:
    """Number of generators of the h-th power of the rational normal curve ideal (n >= 4)."""
    return comb(n + 2 * h, n) - (2 * n + 1) * comb(n + h - 1, n) - (n * n - 3 * n + 1) * comb(n + h - 2, n)


def betan_curve_power(n: int, h: int) -> int:
    return comb(n + 2 * h - 1, n) - 2 * h * conca_e0(n, h) + conca_e1(n, h)


def fiber_hp_d0(n: int, h: int) -> int:
    """Hilbert polynomial of the d = 0 fiber ring at h, n = c + 1 columns."""
    return comb(n + 2 * h - 1, n - 1) - n * comb(n + h - 2, n - 1)


def fiber_hp_d0_route(n: int, h: int) -> int:
    """Same value assembled from generator and last Betti counts."""
    return beta0_curve_power(n, h) - betan_curve_power(n, h)


@dataclass
class InvariantReport:
    c: int
    d: int
    fiber_formula: dict
    fiber_census: dict
    fiber_sr: dict
    fiber_oracle: dict | None
    rees_formula: dict | None = None
    rees_census: dict | None = None
    rees_sr: dict | None = None
    rees_oracle: dict | None = None
    notes: list = field(default_factory=list)
    disagreements: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_json(self) -> str:
        d = asdict(self)
        d["ok"] = self.ok
        return json.dumps({"schema": 1, **d}, indent=1)


def _census(K) -> dict:
    sizes = {len(f) for f in K.facet_sets()}
    return {"mult": len(K), "dim": max(sizes), "pure": len(sizes) == 1}


def _hd(H) -> dict:
    return {"mult": H.multiplicity, "dim": H.dimension}


def _oracle_hilbert(K, ring, order) -> dict:
    if not K.gens:
        return {"mult": 1, "dim": ring.nvars}
    gb = buchberger(K, order)
    return _hd(hilbert_from_exps(gb.leading_exps(), ring.nvars))


def cross_check(c: int, d: int, oracle: bool | None = None, field: Field | None = None) -> InvariantReport:
    """Formula vs facet census vs Stanley-Reisner Hilbert data vs the elimination oracle."""
    _check(c, d)
    e = c + 1 - d
    if d + e < 3:
        raise InvariantError("need d + e >= 3")
    if oracle is None:
        oracle = c <= 4
    field = field or GF()
    order = CompositePreceq(d, e)
    KF = build_delta_F(d, e)
    rep = InvariantReport(c, d, {"mult": fiber_mult(c, d), "dim": fiber_dim(c, d),
                                 "dim_printed": fiber_dim_printed(c, d)},
                          _census(KF), _hd(sr_hilbert(KF)), None)
    if d == 0:
        rep.notes.append(f"printed fiber dimension {c} is the projective dimension; Krull dimension {c + 1}")
    p = BlowupPresentation(d, e, field) if oracle else None
    if oracle:
        rep.fiber_oracle = _oracle_hilbert(fiber_kernel_oracle(p), p.fiber_ring, order)
    if d == 1 and c >= 3:
        KR = build_delta_R(1, e)
        rep.rees_formula = {"mult": rees_mult_d1(c), "dim": rees_dim(c, d)}
        rep.rees_census = _census(KR)
        rep.rees_sr = _hd(sr_hilbert(KR))
        if oracle:
            rep.rees_oracle = _oracle_hilbert(rees_kernel_oracle(p), p.ring, order)
    for name, ref, others in (
            ("fiber", rep.fiber_formula, [("census", rep.fiber_census), ("sr", rep.fiber_sr),
                                          ("oracle", rep.fiber_oracle)]),
            ("rees", rep.rees_formula, [("census", rep.rees_census), ("sr", rep.rees_sr),
                                        ("oracle", rep.rees_oracle)])):
        if ref is None:
            continue
        for src, val in others:
            if val is None:
                continue
            for key in ("mult", "dim"):
                if val[key] != ref[key]:
                    rep.disagreements.append(f"{name} {key}: formula {ref[key]} vs {src} {val[key]}")
    return rep


def summary_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["c", "d", "fiber_mult", "fiber_dim", "fiber_dim_printed", "rees_mult", "rees_dim", "ok"])
    for r in reports:
        w.writerow([r.c, r.d, r.fiber_formula["mult"], r.fiber_formula["dim"], r.fiber_formula["dim_printed"],
                    r.rees_formula["mult"] if r.rees_formula else "", r.rees_formula["dim"] if r.rees_formula else "",
                    r.ok])
    return buf.getvalue()
