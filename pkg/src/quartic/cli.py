"""Command-line front end: ``quartic <group> <action> [flags]``.

Exit status is 0 when everything passed, 1 when a check failed (the witness
is printed to stdout as JSON) and 2 for usage errors. Progress for sweeps
goes to stderr. Relative ``--output`` paths are resolved against
``$QUARTIC_OUTPUT_DIR`` when it is set.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import alphabeta, concavity, core, identities, qanalogs, quadrature, tree, valuation
from .emit import FORMATS, FormatError, emit, jsonable
from .kernel import binomial, nu_int
from .poly import LaurentPoly
from .report import Report

__all__ = ["main", "build_parser"]

OUTPUT_DIR_ENV = "QUARTIC_OUTPUT_DIR"


class UsageError(ValueError):
    pass


# argument types


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _pos(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _seq(text: str) -> list:
    try:
        return [Fraction(t) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a comma-separated list of rationals: {text!r}") from None


def _ids(text: str) -> list:
    names = [t.strip() for t in text.split(",") if t.strip()]
    unknown = [n for n in names if n not in identities.IDENTITIES]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown identity ids: {', '.join(unknown)}")
    return names


# parallel helpers (top level so they pickle)


def _run_map(fn, items, jobs: int, label: str, quiet: bool) -> list:
    items = list(items)
    out = []
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for i, r in enumerate(pool.map(fn, items)):
                out.append(r)
                _progress(label, i + 1, len(items), quiet)
    else:
        for i, item in enumerate(items):
            out.append(fn(item))
            _progress(label, i + 1, len(items), quiet)
    return out


def _progress(label: str, done: int, total: int, quiet: bool) -> None:
    if not quiet:
        print(f"[{label}] {done}/{total}", file=sys.stderr)


def _identity_task(arg):
    name, m_max = arg
    return identities.check_identity(name, m_max)


def _nu2_task(arg):
    l_max, m = arg
    row = core.a_row(m)
    for l in range(1, min(l_max, m) + 1):
        direct = nu_int(2, row[l])
        formula = valuation.nu2_a(l, m)
        if direct != formula:
            return Report("nu2_formula", {"m": m}, False, witness={"l": l, "m": m, "direct": direct, "formula": formula})
    return Report("nu2_formula", {"m": m}, True)


def _block_task(l):
    b = valuation.block_structure(l)
    if b.passed:
        return Report("block_structure", {"l": l}, True, details={"s": b.predicted_s, "window": b.verified_window})
    return Report("block_structure", {"l": l}, False, witness={"s_simple": b.is_s_simple_on_window, "larger_refuted": b.refuted_larger_s})


def _reduce_task(arg):
    l, source = arg
    t = valuation.reduce_sequence(l, source=source)
    comp = valuation.composition(l)
    if t.omega == comp:
        return Report("reduction", {"l": l, "source": source}, True, details={"omega": t.omega})
    return Report("reduction", {"l": l, "source": source}, False, witness={"omega": t.omega, "composition": comp})


def _tree_task(arg):
    l, count, spacing = arg
    r = tree.verify_piecewise(l, count, spacing=spacing)
    t = tree.build_tree(l, spacing=spacing)
    shape_ok = t.shape_matches_theory()
    params = {"l": l, "count": count, "spacing": spacing}
    if r.passed and shape_ok:
        return Report("tree", params, True, details={"terminal_counts": t.terminal_counts()})
    witness = {"piecewise": r.witness, "terminal_counts": t.terminal_counts(), "level_sizes": t.level_sizes()}
    return Report("tree", params, False, witness=witness)


def _pascal_task(arg):
    n, max_depth = arg
    row = [binomial(n, k) for k in range(n + 1)]
    depth = concavity.r_factor_depth(row, max_depth)
    if depth is None:
        return Report("pascal_r_factor", {"n": n}, False, witness={"n": n, "max_depth": max_depth})
    return Report("pascal_r_factor", {"n": n}, True, details={"depth": depth})


def _roots_task(arg):
    l, family = arg
    ok = alphabeta.critical_line_certify(l, family)
    if ok:
        return Report("critical_line", {"l": l, "family": family}, True)
    return Report("critical_line", {"l": l, "family": family}, False, witness={"l": l, "family": family})


# command handlers: each returns a payload and the list of reports that decide the exit code


def cmd_dlm_table(a):
    return core.d_table(a.m_max, a.method), []


def cmd_dlm_value(a):
    v = core.d_coeff(a.l, a.m, a.method)
    return {"l": a.l, "m": a.m, "method": a.method, "value": v}, []


def cmd_verify_identities(a):
    names = a.ids or list(identities.IDENTITIES)
    reports = _run_map(_identity_task, [(n, a.m_max) for n in names], a.jobs, "identities", a.quiet)
    return reports, reports


def cmd_verify_valuations(a):
    reports = _run_map(_nu2_task, [(a.l_max, m) for m in range(1, a.m_max + 1)], a.jobs, "nu2", a.quiet)
    reports.append(valuation.b_recurrence_check(min(a.m_max, 100)))
    reports += _run_map(_block_task, range(1, a.l_max + 1), a.jobs, "blocks", a.quiet)
    reports += _run_map(_reduce_task, [(l, "direct") for l in range(1, a.l_max + 1)], a.jobs, "reduce", a.quiet)
    return reports, reports


def cmd_verify_trees(a):
    items = [(l, a.count, a.spacing) for l in range(1, a.l_max + 1)]
    reports = _run_map(_tree_task, items, a.jobs, "trees", a.quiet)
    return reports, reports


def cmd_valuation_series(a):
    return valuation.nup_series(a.p, a.l, a.m_max), []


def cmd_valuation_blocks(a):
    b = valuation.block_structure(a.l, a.window, a.source)
    rep = Report("block_structure", {"l": a.l}, b.passed, witness=None if b.passed else {"s": b.predicted_s})
    return b, [rep]


def cmd_valuation_reduce(a):
    t = valuation.reduce_sequence(a.l, a.window, a.source)
    return t, []


def cmd_tree_build(a):
    return tree.build_tree(a.l, a.probe, a.spacing), []


def cmd_tree_formula(a):
    return tree.piecewise_formula(a.l), []


def cmd_tree_verify(a):
    r = tree.verify_piecewise(a.l, a.count, a.source, a.spacing)
    return r, [r]


def _input_seq(a) -> tuple:
    if a.seq is not None:
        return a.seq, "sequence"
    if a.row is not None:
        return core.d_row(a.row), f"d_row({a.row})"
    if a.nice_a is not None:
        return list(core.nice_a(a.nice_a).coeffs), f"nice_a({a.nice_a})"
    raise UsageError("one of --seq, --row, --nice-a is required")


def cmd_concavity_classify(a):
    seq, _ = _input_seq(a)
    return concavity.classify(seq), []


def cmd_concavity_probe(a):
    seq, label = _input_seq(a)
    r = concavity.inf_lc_probe(seq, a.depth, label)
    # conjecture evidence: reported, never a failure exit
    return r, []


def cmd_concavity_pascal(a):
    reports = _run_map(_pascal_task, [(n, a.max_depth) for n in range(2, a.n_max + 1)], a.jobs, "pascal", a.quiet)
    return reports, reports


def cmd_concavity_fisk(a):
    rng = random.Random(a.seed)
    polys = [concavity.random_real_rooted(rng, a.max_degree) for _ in range(a.samples)]
    reports = [concavity.fisk_probe(p) for p in polys]
    bad = [r for r in reports if not r.passed]
    summary = Report(
        "fisk_sweep",
        {"samples": a.samples, "seed": a.seed, "max_degree": a.max_degree},
        not bad,
        witness=bad[0].witness if bad else None,
        details={"violations": len(bad)},
    )
    return summary, []


def cmd_concavity_shift(a):
    if a.seq is not None:
        ok, coeffs = concavity.shift_unimodal_check(a.seq)
        r = Report("shift_unimodal", {"seq": a.seq}, ok, witness=None if ok else {"shifted": coeffs}, details={"shifted": coeffs})
        return r, [r]
    rng = random.Random(a.seed)
    for i in range(a.samples):
        s = concavity.random_nondecreasing(rng)
        ok, coeffs = concavity.shift_unimodal_check(s)
        if not ok:
            r = Report("shift_unimodal", {"samples": a.samples, "seed": a.seed}, False, witness={"sample": i, "seq": s, "shifted": coeffs})
            return r, [r]
    r = Report("shift_unimodal", {"samples": a.samples, "seed": a.seed}, True)
    return r, [r]


def cmd_q_gaussian(a):
    return LaurentPoly.from_poly(qanalogs.gaussian_binomial(a.n, a.k)), []


def cmd_q_quantum(a):
    return qanalogs.quantum_binomial(a.n, a.k), []


def cmd_q_probe(a):
    r = qanalogs.quantum_conjecture_probe(a.family, a.n, a.depth, a.bound, a.u, a.v)
    return r, []


def cmd_q_witness(a):
    r = qanalogs.gaussian_depth2_witness(a.n_max)
    return r, []


def cmd_q_lowdeg(a):
    e, c = qanalogs.lowest_term(a.n, a.u, a.v)
    return {"n": a.n, "u": a.u, "v": a.v, "lowest_exponent": e, "lowest_coefficient": c}, []


def cmd_integral_check(a):
    num = quadrature.quadrature_n04(a.a, a.m, a.tol)
    closed = quadrature.closed_form_n04(a.a, a.m)
    rel = abs(num - closed) / abs(closed)
    params = {"a": a.a, "m": a.m, "tol": a.tol}
    details = {"numeric": num, "closed_form": closed, "relative_error": rel}
    quad = Report("integral_closed_form", params, rel <= a.rel_tol, witness=None if rel <= a.rel_tol else details, details=details)
    landen = quadrature.landen_q1_check(a.a, a.m, a.tol)
    return [quad, landen], [quad, landen]


def cmd_roots_certify(a):
    lo = 1 if a.family == "alpha" else 2
    ls = [a.l] if a.l is not None else range(lo, a.l_max + 1)
    reports = _run_map(_roots_task, [(l, a.family) for l in ls], a.jobs, "roots", a.quiet)
    return reports, reports


# parser


def _common(fmt_default: str) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=FORMATS, default=fmt_default)
    p.add_argument("--output", "-o", help="write the payload here instead of stdout")
    p.add_argument("--quiet", "-q", action="store_true", help="suppress progress on stderr")
    return p


def _jobs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--jobs", type=_pos, default=1, help="worker processes for the sweep")


def _seq_inputs(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--seq", type=_seq, help="comma-separated rationals, e.g. 1,3/2,1")
    g.add_argument("--row", type=_nonneg, help="use the row d_{0,m}..d_{m,m}")
    g.add_argument("--nice-a", type=_nonneg, help="use the coefficients of A(x) for this m")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quartic", description="Exact experiments on the quartic integral coefficients.")
    groups = parser.add_subparsers(dest="group", required=True)

    def action(group, name, fn, fmt="json", help=None):
        p = group.add_parser(name, parents=[_common(fmt)], help=help)
        p.set_defaults(func=fn, jobs=1)
        return p

    g = groups.add_parser("dlm", help="the coefficients d_{l,m}").add_subparsers(dest="action", required=True)
    p = action(g, "table", cmd_dlm_table, "csv")
    p.add_argument("--m-max", type=_nonneg, required=True)
    p.add_argument("--method", choices=core.METHODS, default="single")
    p = action(g, "value", cmd_dlm_value, "json")
    p.add_argument("--l", type=_nonneg, required=True)
    p.add_argument("--m", type=_nonneg, required=True)
    p.add_argument("--method", choices=core.METHODS, default="single")

    g = groups.add_parser("verify", help="verification sweeps").add_subparsers(dest="action", required=True)
    p = action(g, "identities", cmd_verify_identities, "text")
    p.add_argument("--ids", type=_ids)
    p.add_argument("--m-max", type=_nonneg)
    _jobs(p)
    p = action(g, "valuations", cmd_verify_valuations, "text")
    p.add_argument("--l-max", type=_pos, default=16)
    p.add_argument("--m-max", type=_pos, default=100)
    _jobs(p)
    p = action(g, "trees", cmd_verify_trees, "text")
    p.add_argument("--l-max", type=_pos, default=40)
    p.add_argument("--count", type=_pos, default=256)
    p.add_argument("--spacing", choices=tree.SPACINGS, default="block")
    _jobs(p)

    g = groups.add_parser("valuation", help="valuations of A_{l,m}").add_subparsers(dest="action", required=True)
    p = action(g, "series", cmd_valuation_series, "csv")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--l", type=_nonneg, required=True)
    p.add_argument("--m-max", type=_nonneg, required=True)
    p = action(g, "blocks", cmd_valuation_blocks, "json")
    p.add_argument("--l", type=_pos, required=True)
    p.add_argument("--window", type=_pos)
    p.add_argument("--source", choices=("formula", "direct"), default="formula")
    p = action(g, "reduce", cmd_valuation_reduce, "json")
    p.add_argument("--l", type=_pos, required=True)
    p.add_argument("--window", type=_pos)
    p.add_argument("--source", choices=("formula", "direct"), default="formula")

    g = groups.add_parser("tree", help="decision trees and piecewise formulas").add_subparsers(dest="action", required=True)
    p = action(g, "build", cmd_tree_build, "dot")
    p.add_argument("--l", type=_pos, required=True)
    p.add_argument("--probe", type=_pos, default=64)
    p.add_argument("--spacing", choices=tree.SPACINGS, default="block")
    p = action(g, "formula", cmd_tree_formula, "text")
    p.add_argument("--l", type=_pos, required=True)
    p = action(g, "verify", cmd_tree_verify, "json")
    p.add_argument("--l", type=_pos, required=True)
    p.add_argument("--count", type=_pos, default=256)
    p.add_argument("--source", choices=("formula", "direct"), default="formula")
    p.add_argument("--spacing", choices=tree.SPACINGS, default="block")

    g = groups.add_parser("concavity", help="unimodality and log-concavity").add_subparsers(dest="action", required=True)
    p = action(g, "classify", cmd_concavity_classify, "json")
    _seq_inputs(p)
    p = action(g, "probe", cmd_concavity_probe, "json")
    _seq_inputs(p)
    p.add_argument("--depth", type=_pos, default=5)
    p = action(g, "pascal", cmd_concavity_pascal, "text")
    p.add_argument("--n-max", type=_pos, default=100)
    p.add_argument("--max-depth", type=_nonneg, default=8)
    _jobs(p)
    p = action(g, "fisk", cmd_concavity_fisk, "json")
    p.add_argument("--samples", type=_pos, default=500)
    p.add_argument("--max-degree", type=_pos, default=8)
    p.add_argument("--seed", type=int, default=0)
    p = action(g, "shift", cmd_concavity_shift, "json")
    p.add_argument("--seq", type=_seq)
    p.add_argument("--samples", type=_pos, default=500)
    p.add_argument("--seed", type=int, default=0)

    g = groups.add_parser("q", help="Gaussian and quantum binomials").add_subparsers(dest="action", required=True)
    for name, fn in (("gaussian", cmd_q_gaussian), ("quantum", cmd_q_quantum)):
        p = action(g, name, fn, "text")
        p.add_argument("--n", type=_nonneg, required=True)
        p.add_argument("--k", type=_nonneg, required=True)
    p = action(g, "probe", cmd_q_probe, "json")
    p.add_argument("--family", choices=qanalogs.FAMILIES, required=True)
    p.add_argument("--n", type=_nonneg, default=0)
    p.add_argument("--depth", type=_pos, default=3)
    p.add_argument("--bound", type=_nonneg, default=12)
    p.add_argument("--u", type=_nonneg, default=0)
    p.add_argument("--v", type=_nonneg, default=1)
    p = action(g, "witness", cmd_q_witness, "json")
    p.add_argument("--n-max", type=_nonneg, default=12)
    p = action(g, "lowdeg", cmd_q_lowdeg, "json")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--u", type=_pos, required=True)
    p.add_argument("--v", type=_pos, required=True)

    g = groups.add_parser("integral", help="numeric check of the closed form").add_subparsers(dest="action", required=True)
    p = action(g, "check", cmd_integral_check, "json")
    p.add_argument("--a", type=_rat, required=True)
    p.add_argument("--m", type=_nonneg, required=True)
    p.add_argument("--tol", type=float, default=quadrature.MIN_TOL)
    p.add_argument("--rel-tol", type=float, default=1e-10)

    g = groups.add_parser("roots", help="zeros of alpha_l and beta_l").add_subparsers(dest="action", required=True)
    p = action(g, "certify", cmd_roots_certify, "text")
    p.add_argument("--family", choices=("alpha", "beta"), default="alpha")
    p.add_argument("--l", type=_pos)
    p.add_argument("--l-max", type=_pos, default=16)
    _jobs(p)

    return parser


def _resolve_output(path: str) -> Path:
    out = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not out.is_absolute():
        out = Path(base) / out
    return out


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        payload, checks = args.func(args)
        data = emit(payload, args.format)
    except (UsageError, FormatError, ValueError) as e:
        print(f"quartic: error: {e}", file=sys.stderr)
        return 2
    if args.output:
        out = _resolve_output(args.output)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_bytes(data)
    failed = [r for r in checks if not r.passed]
    if failed:
        if args.output or args.format != "json":
            witness = [{"id": r.id, "range": r.params, "witness": r.witness} for r in failed]
            sys.stdout.write(json.dumps(jsonable(witness), indent=2) + "\n")
        else:
            sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return 1
    if not args.output:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
