"""Command line entry point.

Data goes to stdout, logs to stderr.  Exit codes: 0 verified, 2 certificate
failure, 3 input error, 4 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys

from . import blowup, complexes, degenerations, invariants, pencil
from .fields import GF, QQ, field_from_descriptor
from .groebner import CapExceeded as GBCapExceeded

log = logging.getLogger("twodet")

EXIT_OK, EXIT_CERT, EXIT_INPUT, EXIT_CAP = 0, 2, 3, 4


class InputError(ValueError):
    pass


def _field(text: str | None):
    text = text or os.environ.get("TWODET_FIELD") or "fp:32003"
    t = text.strip().lower()
    if t in ("rational", "qq", "q"):
        return QQ
    if t.startswith("fp:"):
        return GF(int(t[3:]))
    try:
        return field_from_descriptor(text)
    except (ValueError, KeyError) as exc:
        raise InputError(f"unknown field {text!r}") from exc


def _cap(value):
    if value is not None:
        return value
    env = os.environ.get("TWODET_DEGREE_CAP")
    return int(env) if env else None


def _emit(obj, args):
    text = obj if isinstance(obj, str) else json.dumps(obj, indent=1, ensure_ascii=False, sort_keys=False)
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _pair(args):
    if args.d is None or args.e is None:
        raise InputError("--d and --e are required")
    if args.d < 0 or args.e < 0 or args.d + args.e < 3:
        raise InputError("need d, e >= 0 and d + e >= 3")
    return args.d, args.e


# ---------------------------------------------------------------- commands

def cmd_classify(args) -> int:
    F = _field(args.field)
    M = pencil.load_matrix(args.matrix, F)
    t = pencil.classify(M)
    _emit({"schema": 1, "type": t.label(), "plain": t.plain() if hasattr(t, "plain") else str(t)}, args)
    return EXIT_OK


def cmd_normal_form(args) -> int:
    F = _field(args.field)
    with open(args.blocks, encoding="utf-8") as fh:
        data = json.load(fh)
    blocks = pencil.blocks_from_json(data["blocks"] if isinstance(data, dict) else data, F)
    _emit(pencil.build_matrix(blocks, F).to_json(), args)
    return EXIT_OK


def cmd_relations(args) -> int:
    d, e = _pair(args)
    p = blowup.BlowupPresentation(d, e, _field(args.field))
    fams = tuple(args.family) if args.family else blowup.FAMILIES
    rels, _ = blowup.all_relations(p, fams, verify=False)
    out = []
    ok = True
    for rid, f in rels:
        want = blowup.expected_lm(rid, d, e, p.ring)
        got = blowup.leading_monomial_of(f, p.order)
        ok &= got == want
        out.append({"id": str(rid), "poly": str(f), "expected_lm": str(want), "lm_ok": got == want})
    _emit({"schema": 1, "d": d, "e": e, "families": list(fams), "relations": out, "lm_ok": ok}, args)
    return EXIT_OK if ok else EXIT_CERT


def cmd_gb_verify(args) -> int:
    d, e = _pair(args)
    F = _field(args.field)
    if args.rees:
        cert = blowup.verify_rees_theorem(d, e, F, oracle=args.oracle)
    else:
        cert = blowup.verify_fiber_theorem(d, e, F, oracle=args.oracle)
    cert = {"schema": 1, "kind": "rees" if args.rees else "fiber", **cert}
    _emit(cert, args)
    return EXIT_OK if cert["ok"] else EXIT_CERT


def cmd_kernel(args) -> int:
    d, e = _pair(args)
    p = blowup.BlowupPresentation(d, e, _field(args.field))
    cap = _cap(args.degree_cap)
    K = blowup.rees_kernel_oracle(p, cap) if args.rees else blowup.fiber_kernel_oracle(p, cap)
    _emit({"schema": 1, "kind": "rees" if args.rees else "fiber", "d": d, "e": e,
           "generators": [str(g) for g in K.gens]}, args)
    return EXIT_OK


def cmd_complex(args) -> int:
    d, e = _pair(args)
    K = complexes.build_delta_F(d, e) if args.which == "F" else complexes.build_delta_R(d, e)
    action = args.action
    if action == "count":
        n = len(K)
        _emit(json.dumps({"schema": 1, "count": n}) if args.format == "json" else str(n), args)
    elif action == "facets":
        _emit(K.to_json(), args)
    elif action == "fvector":
        f = K.f_vector()
        _emit(complexes.f_vector_csv(f) if args.format != "json" else {"schema": 1, "f_vector": f}, args)
    elif action == "betti":
        tab = complexes.hochster_betti(K, _field(args.field))
        if args.format == "json":
            _emit({"schema": 1, "betti": [[i, j, v] for (i, j), v in sorted(tab.items())]}, args)
        else:
            _emit(complexes.betti_tsv(tab), args)
    elif action == "cm":
        F = _field(args.field)
        cert = complexes.reisner_cm(K, F)
        _emit({"schema": 1, "ok": cert.ok, "field": cert.field, "faces_checked": cert.faces_checked,
               "distinct_links": cert.distinct_links, "witness": cert.witness}, args)
        return EXIT_OK if cert.ok else EXIT_CERT
    return EXIT_OK


def cmd_poset(args) -> int:
    P = degenerations.poset(args.c, args.d)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(P.to_dot())
    _emit(P.to_json(), args)
    return EXIT_OK if P.closure_agrees else EXIT_CERT


def cmd_family(args) -> int:
    F = _field(args.field)
    t = degenerations.parse_stratum(args.type)
    eigs = [int(x) for x in args.eigenvalues.split(",")] if args.eigenvalues else list(range(len(t.mu)))
    blocks = pencil.normal_form_blocks(t, eigs, F)
    if args.move == "peel":
        eps = args.eps if args.eps is not None else degenerations.admissible_eps(blocks, F)
        fam = degenerations.family_peel(blocks, args.j, eps, F)
    else:
        fam = degenerations.family_merge(blocks, args.h, args.k, F)
    if args.samples:
        samples = [int(x) for x in args.samples.split(",")]
    else:
        samples = degenerations.admissible_samples(fam, random.Random(args.seed))
    rep = degenerations.flatness_check(fam, samples, args.bound)
    out = {"move": fam.kind, "source": fam.source.label(), "target": fam.target.label(), **rep.to_json()}
    _emit(out, args)
    return EXIT_OK if rep.ok and rep.types_ok else EXIT_CERT


def cmd_invariants(args) -> int:
    rep = invariants.cross_check(args.c, args.d, field=_field(args.field))
    _emit(rep.to_json(), args)
    return EXIT_OK if rep.ok else EXIT_CERT


# ------------------------------------------------------------------ parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stdout.write(json.dumps({"schema": 1, "error": "usage", "message": message}) + "\n")
        sys.exit(EXIT_INPUT)


def _common(p, suppress: bool):
    dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--field", default=dflt(None), help="rational | fp:p (default fp:32003, env TWODET_FIELD)")
    p.add_argument("--seed", type=int, default=dflt(0))
    p.add_argument("--output", "-o", default=dflt(None), help="write data here instead of stdout")
    p.add_argument("--format", choices=["json", "text", "csv", "dot"], default=dflt(None))
    g = p.add_mutually_exclusive_group()
    g.add_argument("--quiet", action="store_true", default=dflt(False))
    g.add_argument("--verbose", action="store_true", default=dflt(False))


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="twodet", description="2-determinantal ideals: certificates and censuses")
    _common(ap, False)
    shared = _Parser(add_help=False)
    _common(shared, True)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, **kw):
        return sub.add_parser(name, parents=[shared], **kw)

    s = add("classify", help="KW type of a matrix file")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_classify)

    s = add("normal-form", help="matrix file from a block list")
    s.add_argument("blocks")
    s.set_defaults(func=cmd_normal_form)

    def de(p):
        p.add_argument("--d", type=int)
        p.add_argument("--e", type=int)

    s = add("relations", help="relation families with expected leading monomials")
    de(s)
    s.add_argument("--family", action="append", choices=list(blowup.FAMILIES))
    s.set_defaults(func=cmd_relations)

    for name, fn, hp in (("gb-verify", cmd_gb_verify, "Groebner certificate"),
                         ("kernel", cmd_kernel, "elimination oracle kernel")):
        s = add(name, help=hp)
        de(s)
        k = s.add_mutually_exclusive_group()
        k.add_argument("--fiber", action="store_true")
        k.add_argument("--rees", action="store_true")
        if name == "gb-verify":
            s.add_argument("--oracle", action="store_true", help="also compare with the elimination kernel")
        else:
            s.add_argument("--degree-cap", type=int)
        s.set_defaults(func=fn)

    s = add("complex", help="initial complexes")
    s.add_argument("--which", choices=["F", "R"], required=True)
    de(s)
    s.add_argument("action", choices=["facets", "fvector", "cm", "betti", "count"])
    s.set_defaults(func=cmd_complex)

    s = add("poset", help="degeneration poset of H_{c,d}")
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--dot")
    s.set_defaults(func=cmd_poset)

    s = add("family", help="flatness of a peel or merge family")
    s.add_argument("--move", choices=["peel", "merge"], required=True)
    s.add_argument("--type", required=True, help='KW type, e.g. "(2,1;1)"')
    s.add_argument("--eigenvalues", help="comma separated Jordan eigenvalues")
    s.add_argument("--j", type=int, default=1)
    s.add_argument("--h", type=int, default=1)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--eps", type=int)
    s.add_argument("--samples", help="comma separated t values")
    s.add_argument("--bound", type=int, default=6)
    s.set_defaults(func=cmd_family)

    s = add("invariants", help="closed forms against censuses")
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(func=cmd_invariants)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    level = logging.ERROR if args.quiet else logging.DEBUG if args.verbose else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (GBCapExceeded, complexes.CapExceeded) as exc:
        sys.stdout.write(json.dumps({"schema": 1, "error": "cap_exceeded", "message": str(exc)}) + "\n")
        return EXIT_CAP
    except (InputError, pencil.PencilError, blowup.RelationError, complexes.ComplexError,
            degenerations.DegenerationError, invariants.InvariantError, OSError, json.JSONDecodeError,
            KeyError, ValueError) as exc:
        log.debug("input error", exc_info=True)
        sys.stdout.write(json.dumps({"schema": 1, "error": type(exc).__name__, "message": str(exc)}) + "\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
