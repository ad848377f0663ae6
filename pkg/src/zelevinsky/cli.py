"""
Command line entry point.

    zelevinsky poset MS [--dot | --json]
    zelevinsky mult MS [--format text|csv|json] [--q-check 4,9] [--lower-set]
    zelevinsky langlands MS
    zelevinsky param MS
    zelevinsky hecke MS [--q 4]
    zelevinsky relations N [--q 4]

MS is a multisegment in the text format, or a path to a file holding one.
Settings resolve as: command-line flag, then environment variable, then
built-in default.

    ZELEVINSKY_THREADS      worker threads (default 1)
    ZELEVINSKY_MAX_POSET    poset size cap (default 20000)
    ZELEVINSKY_PRIMES       comma-separated primes for the fibre cross-check
    ZELEVINSKY_HECKE_BOUND  largest n handed to the Hecke oracle (default 4)

Exit codes: 0 success, 1 unusable input, 2 parse error, 3 size cap exceeded, 4 internal
cross-check mismatch.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import geometry, hecke, multiplicity, params
from .dsl import ParseError, parse_multisegment
from .multiseg import (DEFAULT_MAX_POSET, Multisegment, PosetTooLarge, Segment,
                       inertial_decompose, intervals, langlands_triple, lower_set)

EXIT_INPUT = 1
EXIT_PARSE = 2
EXIT_TOO_LARGE = 3
EXIT_MISMATCH = 4


def _int_list(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _frac_list(text):
    return [Fraction(x) for x in text.split(",") if x.strip()]


def _setting(value, env, default, convert):
    if value is not None:
        return value
    raw = os.environ.get(env)
    if raw is not None and raw.strip():
        return convert(raw)
    return default


def read_input(text, path=None):
    if path is not None:
        with open(path) as fh:
            return fh.read().strip()
    if text is None:
        return ""
    if text and os.path.isfile(text):
        with open(text) as fh:
            return fh.read().strip()
    return text


def packet_top(a):
    """The multisegment of singletons with the same content: top of the whole packet."""
    return Multisegment(tuple(Segment(s.rho, p, p) for s in a for p in s.points()))


# --- commands -----------------------------------------------------------------------

def cmd_poset(a, args, out):
    poset = geometry.hasse(a, max_size=args.max_poset)
    if args.dot:
        out.write(geometry.to_dot(poset))
    elif args.json:
        out.write(json.dumps(geometry.poset_json(poset), indent=2) + "\n")
    else:
        for i, e in enumerate(poset.elements):
            covers = " ".join(str(j) for j in poset.covers[i])
            out.write("%d\t%s\tdim=%d\tcovers=[%s]\n" % (i, str(e) or "()", poset.dims[i], covers))
    return 0


def _cross_check_fibres(a, primes, side, max_size):
    """Compare closed-form fibre counts with brute-force interpolation over the given primes."""
    bad = []
    checked = 0
    for part in inertial_decompose(a):
        ivs = intervals(params.simple_normalize(part))
        elements = lower_set(geometry._ms(ivs), max_size=max_size)
        for b in elements:
            L = multiplicity.layer_sequence(b, side)
            for c in elements:
                if not geometry.closure_leq(b, c):
                    continue
                closed = multiplicity.fiber_count(L, c).poly
                brute = multiplicity.fiber_count_interpolated(L, c, primes)
                checked += 1
                if closed != brute:
                    bad.append((str(b), str(c), str(closed), str(brute)))
    return checked, bad


def _q_check(mat, q, bound, threads):
    def row(i):
        try:
            factors = hecke.oracle_factors(mat.elements[i], q, bound)
        except hecke.Undecided:
            return ["UNDECIDED"] * len(mat.elements)
        cells = []
        for j, e in enumerate(mat.elements):
            cells.append("ok" if factors.get(e, 0) == mat.rows[i][j] else "MISMATCH")
        if sum(factors.values()) != sum(mat.rows[i]):
            cells = ["MISMATCH" if c == "ok" else c for c in cells]
        return cells

    with ThreadPoolExecutor(max_workers=threads) as pool:
        cells = list(pool.map(row, range(len(mat.elements))))
    flat = [c for r in cells for c in r]
    return {
        "agree": "MISMATCH" not in flat,
        "undecided_rows": sum(1 for r in cells if r and r[0] == "UNDECIDED"),
        "cells": cells,
    }


def cmd_mult(a, args, out):
    top = a if args.lower_set else packet_top(a)
    mat = multiplicity.multiplicity_matrix(top, side=args.side, max_size=args.max_poset)
    status = 0
    report = {}
    if args.primes:
        checked, bad = _cross_check_fibres(a, args.primes, args.side, args.max_poset)
        report["fibre_check"] = {"pairs": checked, "mismatches": bad}
        print("fibre cross-check: %d pairs, %d mismatches" % (checked, len(bad)), file=sys.stderr)
        if bad:
            status = EXIT_MISMATCH
    if args.q_check:
        report["q_check"] = {}
        for q in args.q_check:
            res = _q_check(mat, q, args.hecke_bound, args.threads)
            report["q_check"][str(q)] = res
            print("q=%s: %s (%d undecided rows)" % (q, "agree" if res["agree"] else "MISMATCH",
                                                    res["undecided_rows"]), file=sys.stderr)
            if not res["agree"]:
                status = EXIT_MISMATCH
    fmt = args.format
    if fmt == "json":
        payload = mat.to_json()
        payload.update(report)
        out.write(json.dumps(payload, indent=2) + "\n")
    elif fmt == "csv":
        out.write(mat.to_csv())
    else:
        names = [str(e) or "()" for e in mat.elements]
        width = max(len(n) for n in names)
        for name, row in zip(names, mat.rows):
            out.write("%s  %s\n" % (name.ljust(width), " ".join(str(x) for x in row)))
    return status


def cmd_langlands(a, args, out):
    blocks = []
    for m, block in langlands_triple(a):
        shifted = Multisegment(tuple(s.shifted(m.re) for s in block))
        blocks.append({
            "midpoint": str(m),
            "centred": [str(Multisegment((s,))) for s in block],
            "segments": [str(Multisegment((s,))) for s in shifted],
        })
    out.write(json.dumps({"multisegment": str(a), "blocks": blocks}, indent=2) + "\n")
    return 0


def cmd_param(a, args, out):
    lam = params.infinitesimal_parameter(a)
    payload = {
        "multisegment": str(a),
        "infinitesimal_parameter": [{"label": rho.id, "d": rho.d, "exponent": str(e)}
                                    for rho, e in lam.summands],
        "dimension": lam.dimension,
        "vogan": params.vogan_descriptor(lam).to_json(),
        "nilpotent_orbit": str(a),
        "central_character_trivial": params.central_character_trivial(a),
    }
    try:
        data = params.hecke_parameter_data(a)
        payload["hecke"] = {"n_vec": list(data.n_vec),
                            "z_vec": [p.format("v") for p in data.z_vec]}
    except ValueError:
        payload["hecke"] = None
    out.write(json.dumps(payload, indent=2) + "\n")
    return 0


def cmd_hecke(a, args, out):
    norm = params.simple_normalize(a) if len(a.classes()) == 1 else a
    M = hecke.standard_module(norm, args.q, max(args.hecke_bound, hecke.DEFAULT_MODULE_BOUND))
    try:
        factors = hecke.composition_multiplicities(M, args.hecke_bound)
    except hecke.Undecided as exc:
        print("composition factors undecided: %s" % exc, file=sys.stderr)
        factors = None
    out.write(json.dumps(M.to_json(factors), indent=2) + "\n")
    return 0


def cmd_relations(n, args, out):
    rep = hecke.relation_check(n, args.q)
    for name in sorted(rep):
        out.write("%s\t%s\n" % ("PASS" if rep[name] else "FAIL", name))
    return 0 if all(rep.values()) else EXIT_MISMATCH


# --- parser ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help="worker threads")
    common.add_argument("--max-poset", type=int, default=None, help="poset size cap")
    common.add_argument("--primes", type=_int_list, default=None,
                        help="comma-separated primes: cross-check fibre counts by brute force")
    common.add_argument("--hecke-bound", type=int, default=None, help="largest n for the Hecke oracle")

    ms_args = argparse.ArgumentParser(add_help=False)
    ms_args.add_argument("multisegment", nargs="?", default=None,
                         help="multisegment text, or a path to a file containing it")
    ms_args.add_argument("-f", "--file", default=None, help="read the multisegment from a file")

    parser = argparse.ArgumentParser(prog="zelevinsky",
                                     description="Multiplicities of standard representations of GL_n.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poset", parents=[common, ms_args], help="lower set and Hasse diagram")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--dot", action="store_true")
    g.add_argument("--json", action="store_true")

    p = sub.add_parser("mult", parents=[common, ms_args], help="multiplicity matrix")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.add_argument("--csv", dest="format", action="store_const", const="csv")
    p.add_argument("--json", dest="format", action="store_const", const="json")
    p.add_argument("--q-check", type=_frac_list, default=None,
                   help="comma-separated q values for the Hecke oracle comparison")
    p.add_argument("--lower-set", action="store_true",
                   help="restrict to the lower set of the input instead of its whole packet")
    p.add_argument("--side", choices=["kernel", "image"], default="kernel",
                   help="which small resolution to count fibres on")

    sub.add_parser("langlands", parents=[common, ms_args], help="Langlands triple as JSON")
    sub.add_parser("param", parents=[common, ms_args], help="parameter and Vogan data as JSON")

    p = sub.add_parser("hecke", parents=[common, ms_args], help="standard Hecke module as JSON")
    p.add_argument("--q", type=Fraction, default=Fraction(4))

    p = sub.add_parser("relations", parents=[common], help="check the Hecke algebra relations")
    p.add_argument("n", type=int)
    p.add_argument("--q", type=Fraction, default=Fraction(4))
    return parser


def _resolve(args):
    args.threads = _setting(args.threads, "ZELEVINSKY_THREADS", 1, int)
    args.max_poset = _setting(args.max_poset, "ZELEVINSKY_MAX_POSET", DEFAULT_MAX_POSET, int)
    args.primes = _setting(args.primes, "ZELEVINSKY_PRIMES", None, _int_list)
    args.hecke_bound = _setting(args.hecke_bound, "ZELEVINSKY_HECKE_BOUND",
                                hecke.DEFAULT_ORACLE_BOUND, int)


COMMANDS = {
    "poset": cmd_poset,
    "mult": cmd_mult,
    "langlands": cmd_langlands,
    "param": cmd_param,
    "hecke": cmd_hecke,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    _resolve(args)
    try:
        if args.command == "relations":
            return cmd_relations(args.n, args, out)
        text = read_input(args.multisegment, args.file)
        a = parse_multisegment(text)
        return COMMANDS[args.command](a, args, out)
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    except (PosetTooLarge, hecke.HeckeBoundExceeded) as exc:
        print("size cap exceeded: %s" % exc, file=sys.stderr)
        return EXIT_TOO_LARGE
    except multiplicity.InterpolationError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_TOO_LARGE
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
