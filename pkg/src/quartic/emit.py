"""Serialization of results to CSV, JSON, DOT and plain text.

Every writer returns bytes and is deterministic: CSV uses "\\n" line endings
and writes rationals as "num/den"; JSON keeps the key order in which fields
are listed here and is indented by two spaces.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict
from fractions import Fraction
from functools import singledispatch

from .concavity import Classification
from .core import DTable
from .poly import LaurentPoly, Poly
from .report import Report
from .tree import DecisionTree, PiecewiseFormula, TreeNode
from .valuation import BlockReport, ReductionTrace, ValuationSeries

__all__ = ["FORMATS", "FormatError", "emit", "rational", "jsonable"]

FORMATS = ("csv", "json", "dot", "text")


class FormatError(ValueError):
    """The requested format does not apply to this kind of payload."""


def rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def jsonable(obj):
    """Recursively replace Fractions by "num/den" strings and tuples by lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return int(obj)
    if isinstance(obj, Fraction):
        return rational(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    if isinstance(obj, Report):
        return jsonable(obj.to_dict())
    return str(obj)


def _json(obj) -> bytes:
    return (json.dumps(jsonable(obj), indent=2, ensure_ascii=False) + "\n").encode()


def _csv(header, rows) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([rational(v) if isinstance(v, Fraction) else v for v in r])
    return buf.getvalue().encode()


def _text(lines) -> bytes:
    return ("\n".join(lines) + "\n").encode()


def _dispatch(payload, fmt: str, writers: dict) -> bytes:
    if fmt not in writers:
        kind = type(payload).__name__
        raise FormatError(f"format {fmt!r} is not available for {kind}; use one of {sorted(writers)}")
    return writers[fmt](payload)


@singledispatch
def emit(payload, fmt: str) -> bytes:
    if isinstance(payload, dict):
        return _dispatch(payload, fmt, {"json": _json, "text": lambda d: _text(f"{k}: {jsonable(v)}" for k, v in d.items())})
    raise FormatError(f"no writer for {type(payload).__name__}")


@emit.register
def _(payload: Report, fmt: str) -> bytes:
    def text(r: Report):
        head = f"{'PASS' if r.passed else 'FAIL'} {r.id} {json.dumps(jsonable(r.params))}"
        lines = [head]
        if r.witness is not None:
            lines.append(f"  witness: {json.dumps(jsonable(r.witness))}")
        return _text(lines)

    return _dispatch(payload, fmt, {"json": lambda r: _json(r.to_dict()), "text": text})


@emit.register
def _(payload: list, fmt: str) -> bytes:
    if not all(isinstance(r, Report) for r in payload):
        raise FormatError("only lists of reports can be emitted")

    def text(rs):
        return b"".join(emit(r, "text") for r in rs)

    def as_csv(rs):
        rows = [(r.id, str(r.passed).lower(), json.dumps(jsonable(r.params)), json.dumps(jsonable(r.witness))) for r in rs]
        return _csv(("id", "passed", "range", "witness"), rows)

    return _dispatch(payload, fmt, {"json": lambda rs: _json([r.to_dict() for r in rs]), "text": text, "csv": as_csv})


@emit.register
def _(payload: DTable, fmt: str) -> bytes:
    def rows(t):
        for m, row in enumerate(t.entries):
            for l, v in enumerate(row):
                yield m, l, Fraction(v)

    def text(t):
        return _text(" ".join(rational(v) for v in row) for row in t.entries)

    return _dispatch(
        payload,
        fmt,
        {
            "csv": lambda t: _csv(("m", "l", "d"), rows(t)),
            "json": lambda t: _json({"m_max": t.m_max, "method": t.method, "rows": [list(r) for r in t.entries]}),
            "text": text,
        },
    )


@emit.register
def _(payload: ValuationSeries, fmt: str) -> bytes:
    s = payload
    name = s.index_name

    def as_csv(s):
        if s.errors is None:
            return _csv((name, "nu"), zip(s.indices(), s.values))
        rows = ((i, v, e.numerator, e.denominator) for i, v, e in zip(s.indices(), s.values, s.errors))
        return _csv((name, "nu", "err_num", "err_den"), rows)

    def as_json(s):
        out = {"p": s.p, "l": s.l, "start": s.start_m, "index": name, "values": s.values}
        if s.errors is not None:
            out["errors"] = s.errors
        return _json(out)

    def text(s):
        return _text(f"{i} {v}" for i, v in zip(s.indices(), s.values))

    return _dispatch(s, fmt, {"csv": as_csv, "json": as_json, "text": text})


@emit.register
def _(payload: BlockReport, fmt: str) -> bytes:
    def text(b):
        verdict = "PASS" if b.passed else "FAIL"
        return _text([f"{verdict} l={b.l} s={b.predicted_s} window={b.verified_window} "
                      f"s_simple={b.is_s_simple_on_window} larger_refuted={b.refuted_larger_s}"])

    return _dispatch(payload, fmt, {"json": lambda b: _json({**asdict(b), "passed": b.passed}), "text": text})


@emit.register
def _(payload: ReductionTrace, fmt: str) -> bytes:
    def as_json(t):
        return _json({"l": t.l, "omega": t.omega, "length": t.length, "window": t.window,
                      "source": t.source, "cycles": t.cycles})

    def text(t):
        lines = [f"l={t.l} omega={t.omega} window={t.window}"]
        lines += [f"  X_{i + 1}: {c}" for i, c in enumerate(t.cycles)]
        return _text(lines)

    return _dispatch(payload, fmt, {"json": as_json, "text": text})


def _case_text(l: int, c) -> str:
    inner = "m" if c.shift == 0 else f"(m+{c.shift})"
    return f"nu_2(C_{{{l},m}}) = {c.constant} + nu_2({inner}/{c.modulus})  if m = {c.residue} mod {c.modulus}"


@emit.register
def _(payload: PiecewiseFormula, fmt: str) -> bytes:
    f = payload
    return _dispatch(
        f,
        fmt,
        {
            "text": lambda f: _text(_case_text(f.l, c) for c in f.cases),
            "json": lambda f: _json({"l": f.l, "cases": [asdict(c) for c in f.cases]}),
            "csv": lambda f: _csv(("modulus", "residue", "constant", "shift"), (c.as_tuple() for c in f.cases)),
        },
    )


def _node_json(n: TreeNode) -> dict:
    out = {"level": n.level, "residue": n.residue, "label": n.label(), "terminal": n.terminal}
    if n.terminal:
        out["gamma"] = n.gamma
    else:
        out["children"] = [_node_json(c) for c in n.children]
    return out


def _dot(t: DecisionTree) -> bytes:
    lines = [f"digraph T{t.l} {{"]
    ids = {}
    for i, n in enumerate(t.nodes()):
        ids[id(n)] = f"n{i}"
        attrs = [f'label="{n.label()}"']
        if n.terminal:
            attrs += [f"gamma={n.gamma}", f'xlabel="γ={n.gamma}"', "shape=box"]
        lines.append(f"  n{i} [{', '.join(attrs)}];")
    for n in t.nodes():
        for c in n.children:
            lines.append(f"  {ids[id(n)]} -> {ids[id(c)]};")
    lines.append("}")
    return _text(lines)


@emit.register
def _(payload: DecisionTree, fmt: str) -> bytes:
    def text(t):
        lines = []
        for n in t.nodes():
            tag = f"gamma={n.gamma}" if n.terminal else "split"
            lines.append(f"{'  ' * n.level}{n.label()} {tag}")
        return _text(lines)

    def as_json(t):
        return _json({"l": t.l, "probe": t.probe, "spacing": t.spacing,
                      "terminal_counts": t.terminal_counts(), "root": _node_json(t.root)})

    return _dispatch(payload, fmt, {"dot": _dot, "json": as_json, "text": text})


@emit.register
def _(payload: Poly, fmt: str) -> bytes:
    return _dispatch(payload, fmt, {"text": lambda p: _text([str(p)]), "json": lambda p: _json({"coeffs": list(p.coeffs)})})


def _q_text(items) -> str:
    parts = []
    for e, c in sorted(items):
        mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
        coef = str(c) if (c != 1 or not mono) else ""
        parts.append(coef + ("*" if coef and mono else "") + mono)
    return " + ".join(parts).replace("+ -", "- ") or "0"


@emit.register
def _(payload: LaurentPoly, fmt: str) -> bytes:
    return _dispatch(
        payload,
        fmt,
        {"text": lambda p: _text([_q_text(p.items())]), "json": lambda p: _json({"terms": {e: c for e, c in sorted(p.items())}})},
    )


@emit.register
def _(payload: Classification, fmt: str) -> bytes:
    return _dispatch(
        payload,
        fmt,
        {"json": lambda c: _json(asdict(c)), "text": lambda c: _text([f"unimodal={c.unimodal} log_concave={c.log_concave}"])},
    )
