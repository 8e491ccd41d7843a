"""JSON and CSV forms of the library objects.

Exact scalars are written as ``"p/q"`` strings, floats as JSON numbers.
:func:`dumps` is the single serializer used by the command line, so a CLI
result is byte-identical to ``dumps(library_call(...))``.
"""
from __future__ import annotations

import csv
import io
import json
import math

from .cholesky import CholeskyFactors, SymJacobi
from .errors import ShapeMismatch
from .gjm import GJM, GJMBlock, GramMatrix
from .moments import MeasureSpec, MomentSequence, NormalIndexReport
from .numeric import Backend, RationalFn, as_scalar, format_scalar
from .orthopoly import MonicJacobi
from .pade import DiagnosticsReport, ScanRow
from .transforms import BlockFactors, FactorEntry


def _scalar(v, backend):
    if v is None:
        return None
    return as_scalar(v, backend)


def _fmt(v):
    return format_scalar(v)


# ------------------------------------------------------------------- to JSON


def to_json(obj):
    if isinstance(obj, MomentSequence):
        out = {"s": [_fmt(x) for x in obj.s]}
        if obj.s_minus1 is not None:
            out["s_minus1"] = _fmt(obj.s_minus1)
        return out
    if isinstance(obj, MeasureSpec):
        out = {"atoms": [{"t": _fmt(t), "a": _fmt(a)} for t, a in obj.atoms]}
        if obj.named is not None:
            out["named"] = obj.named
        if obj.region is not None:
            out["region"] = [[float(a), float(b)] for a, b in obj.region]
        return out
    if isinstance(obj, MonicJacobi):
        out = {"b": [_fmt(x) for x in obj.b], "c": [_fmt(x) for x in obj.c]}
        if obj.terminal:
            out["terminal"] = True
        return out
    if isinstance(obj, SymJacobi):
        return {"diag": [_fmt(x) for x in obj.diag], "offdiag": [_fmt(x) for x in obj.offdiag]}
    if isinstance(obj, GJM):
        blocks = []
        for b in obj.blocks:
            d = {"k": b.k, "p0": _fmt(b.p0)}
            if b.k == 2:
                d["p1"] = _fmt(b.p1)
            d["c"] = _fmt(b.c)
            d["eps"] = b.eps
            blocks.append(d)
        return {"blocks": blocks, "scale": _fmt(obj.scale)}
    if isinstance(obj, BlockFactors):
        payload = []
        for e in obj.payload:
            d = {"u0": _fmt(e.u0)}
            if e.u1 is not None:
                d["u1"] = _fmt(e.u1)
            d["l"] = _fmt(e.l)
            payload.append(d)
        return {
            "kind": obj.kind.value,
            "kseq": list(obj.kseq),
            "payload": payload,
            "param": _fmt(obj.param),
            "eps0": obj.eps0,
            "scale": _fmt(obj.scale),
            "k_next": obj.k_next,
        }
    if isinstance(obj, CholeskyFactors):
        payload = []
        for (a, b), l in zip(obj.blocks, obj.lhat):
            d = {"lambda0": _fmt(a)}
            if b is not None:
                d["lambda1"] = _fmt(b)
            d["l"] = _fmt(l)
            payload.append(d)
        return {"kind": "cholesky", "kseq": list(obj.kseq), "payload": payload}
    if isinstance(obj, RationalFn):
        meta = {k: (_fmt(v) if k == "tau" else v) for k, v in obj.meta.items()}
        return {"num": [_fmt(x) for x in obj.num.coeffs], "den": [_fmt(x) for x in obj.den.coeffs], "meta": meta}
    if isinstance(obj, NormalIndexReport):
        return {
            "indices": list(obj.indices),
            "gaps": list(obj.gaps),
            "flagged": obj.flagged,
            "hankel_dets": [[n, _fmt(d)] for n, d in obj.hankel_dets],
        }
    if isinstance(obj, GramMatrix):
        return {"blocks": [[[_fmt(x) for x in row] for row in b] for b in obj.blocks]}
    if isinstance(obj, DiagnosticsReport):
        return {
            "kind": obj.kind,
            "threshold": obj.threshold,
            "exceeded": obj.exceeded,
            "rows": [
                {"j": r.j, "n_j": r.n_j, "ratio": _fmt(r.ratio), "running_max": _fmt(r.running_max),
                 "max_pole_radius": r.max_pole_radius}
                for r in obj.rows
            ],
        }
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (list, tuple)):
        return [to_json(x) for x in obj]
    if isinstance(obj, dict):
        return {k: to_json(v) for k, v in obj.items()}
    return _fmt(obj) if not isinstance(obj, (str, bool)) else obj


def dumps(obj) -> str:
    return json.dumps(to_json(obj), indent=2) + "\n"


# ----------------------------------------------------------------- from JSON


def measure_from_json(d, backend=Backend.EXACT) -> MeasureSpec:
    atoms = tuple((_scalar(a["t"], backend), _scalar(a["a"], backend)) for a in d.get("atoms", []))
    region = d.get("region")
    if region is not None:
        region = tuple((float(a), float(b)) for a, b in region)
    return MeasureSpec(atoms, d.get("named"), region)


def moments_from_json(d, backend=Backend.EXACT) -> MomentSequence:
    sm = d.get("s_minus1")
    return MomentSequence(tuple(_scalar(x, backend) for x in d["s"]), _scalar(sm, backend))


def jacobi_from_json(d, backend=Backend.EXACT) -> MonicJacobi:
    """``{"b": [...], "c": [...]}``; with ``"repeat": N`` the patterns are tiled to N rows."""
    b = [_scalar(x, backend) for x in d["b"]]
    c = [_scalar(x, backend) for x in d["c"]]
    if "repeat" in d:
        return MonicJacobi.periodic(b, c, int(d["repeat"]))
    return MonicJacobi(tuple(b), tuple(c), bool(d.get("terminal", False)))


def gjm_from_json(d, backend=Backend.EXACT) -> GJM:
    blocks = []
    for b in d["blocks"]:
        blocks.append(GJMBlock(int(b["k"]), _scalar(b["p0"], backend), _scalar(b.get("p1"), backend),
                               _scalar(b.get("c"), backend), int(b.get("eps", 1))))
    return GJM(tuple(blocks), _scalar(d.get("scale", "1"), backend))


def factors_from_json(d, backend=Backend.EXACT) -> BlockFactors:
    payload = tuple(FactorEntry(_scalar(e["u0"], backend), _scalar(e.get("u1"), backend), _scalar(e.get("l"), backend))
                    for e in d["payload"])
    return BlockFactors(d["kind"], tuple(d["kseq"]), payload, _scalar(d.get("param"), backend),
                        int(d.get("eps0", 1)), _scalar(d.get("scale", "1"), backend), d.get("k_next"))


def load(d, backend=Backend.EXACT):
    """Build the object described by a parsed JSON document, by its keys."""
    if "blocks" in d:
        return gjm_from_json(d, backend)
    if "payload" in d:
        return factors_from_json(d, backend)
    if "b" in d and "c" in d:
        return jacobi_from_json(d, backend)
    if "s" in d:
        return moments_from_json(d, backend)
    if "atoms" in d or "named" in d:
        return measure_from_json(d, backend)
    raise ShapeMismatch("unrecognized input document")


# ----------------------------------------------------------------------- CSV

SCAN_COLUMNS = ["j", "n_j", "lambda_re", "lambda_im", "approx_re", "approx_im", "abs_error", "max_pole_radius"]
DIAGNOSTIC_COLUMNS = ["j", "n_j", "ratio", "running_max", "max_pole_radius"]


def _csv_value(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return "nan" if math.isnan(v) else repr(v)
    return str(v)


def scan_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCAN_COLUMNS)
    for r in rows:
        w.writerow([_csv_value(x) for x in (r.j, r.n_j, r.lam.real, r.lam.imag, r.approx.real, r.approx.imag,
                                            r.abs_error, r.max_pole_radius)])
    return buf.getvalue()


def diagnostics_csv(report: DiagnosticsReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(DIAGNOSTIC_COLUMNS)
    for r in report.rows:
        w.writerow([_csv_value(x) for x in (r.j, r.n_j, _fmt_csv(r.ratio), _fmt_csv(r.running_max), r.max_pole_radius)])
    return buf.getvalue()


def _fmt_csv(v):
    f = format_scalar(v)
    return f if isinstance(f, str) else float(f)


def scan_to_json(rows):
    return [
        {"j": r.j, "n_j": r.n_j, "lambda": [r.lam.real, r.lam.imag], "approx": [r.approx.real, r.approx.imag],
         "abs_error": r.abs_error, "max_pole_radius": r.max_pole_radius, "pole_collision": r.pole_collision}
        for r in rows
    ]
