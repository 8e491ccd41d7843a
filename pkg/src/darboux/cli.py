"""Command line interface.

    darboux moments --input measure.json
    darboux normal-indices --input moments.json --depth 8
    darboux factor {lu,ul,cholesky} --input m.json --depth 4 [--param S]
    darboux transform {christoffel,geronimus,inv-christoffel,inv-geronimus} --input m.json --depth 4
    darboux pade {eval,poles,scan,diagnose} --input m.json --depth 8 ...

Exit status: 0 on success, 2 on a domain error (a JSON object describing it
is written to stderr), 1 on bad usage.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import serialize
from .cholesky import generalized_cholesky, symmetrize
from .errors import DarbouxError, ShapeMismatch
from .gjm import GJM, jacobi_from_moments
from .moments import MeasureSpec, MomentSequence, moments_from_jacobi, moments_from_measure, normal_indices
from .numeric import Backend, as_scalar
from .orthopoly import MonicJacobi
from .pade import boundedness_diagnostic, convergence_scan, diagonal_pade, poles
from .transforms import christoffel, geronimus, inverse_christoffel, inverse_geronimus, lu_gjm, lu_jacobi, ul_gjm, ul_jacobi


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def build_parser():
    p = _Parser(prog="darboux", description="Darboux transforms of Jacobi matrices and Pade approximants.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--input", required=True, help="JSON file ('-' for stdin)")
        sp.add_argument("--output", help="write here instead of stdout")
        sp.add_argument("--backend", choices=["exact", "float"], default="exact")
        sp.add_argument("--format", choices=["json", "csv"], default=None)
        sp.add_argument("--tau-zero", type=float, default=None, help="relative zero tolerance for floats")

    sp = sub.add_parser("moments", help="moments of a measure or Jacobi matrix")
    common(sp)
    sp.add_argument("--depth", type=int, help="number of moments (overrides 'count' in the input)")

    sp = sub.add_parser("normal-indices", help="normal indices of a moment sequence")
    common(sp)
    sp.add_argument("--depth", type=int, required=True, help="largest index tested")

    sp = sub.add_parser("factor", help="block LU/UL or generalized Cholesky factors")
    sp.add_argument("which", choices=["lu", "ul", "cholesky"])
    common(sp)
    sp.add_argument("--depth", type=int, required=True, help="number of blocks")
    sp.add_argument("--param", help="s_minus1 for ul factorizations")

    sp = sub.add_parser("transform", help="Christoffel/Geronimus transforms and inverses")
    sp.add_argument("which", choices=["christoffel", "geronimus", "inv-christoffel", "inv-geronimus"])
    common(sp)
    sp.add_argument("--depth", type=int, required=True, help="number of blocks")
    sp.add_argument("--param", help="s_minus1 (geronimus) or s_0 (inv-christoffel, default 1)")

    sp = sub.add_parser("pade", help="Pade approximants and diagnostics")
    sp.add_argument("which", choices=["eval", "poles", "scan", "diagnose"])
    common(sp)
    sp.add_argument("--depth", type=int, required=True, help="approximant index / number of blocks")
    sp.add_argument("--lambda", dest="lam", action="append", help="evaluation point (repeatable, complex allowed)")
    sp.add_argument("--grid", help="real grid a:b:n")
    sp.add_argument("--kind", choices=["C", "G"], default="C", help="diagnostic kind")
    sp.add_argument("--param", help="s_minus1 for kind G")
    sp.add_argument("--threshold", type=float, default=10.0)
    return p


# ------------------------------------------------------------------ helpers


def _read(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _load(args):
    doc = _read(args.input)
    try:
        return doc, serialize.load(doc, Backend(args.backend))
    except ShapeMismatch as exc:
        # malformed input documents are usage errors, not domain errors
        raise UsageError(str(exc)) from None


def _param(args, default=None):
    if args.param is None:
        if default is None:
            raise UsageError("--param is required")
        return as_scalar(default, Backend(args.backend))
    return as_scalar(args.param, Backend(args.backend))


def _moments(doc, obj, count):
    if isinstance(obj, MomentSequence):
        return obj
    if isinstance(obj, MeasureSpec):
        return moments_from_measure(obj, count)
    if isinstance(obj, MonicJacobi):
        return moments_from_jacobi(obj, count)
    raise UsageError("input must describe moments, a measure or a Jacobi matrix")


def _jacobi(doc, obj, rows):
    """A Jacobi matrix with at least ``rows`` rows when the input allows it."""
    if isinstance(obj, MonicJacobi):
        return obj
    return jacobi_from_moments(_moments(doc, obj, 2 * rows + 2), rows)


def _gjm(obj):
    if not isinstance(obj, GJM):
        raise UsageError("input must be a generalized Jacobi matrix")
    return obj


def _lambdas(args):
    out = []
    for v in args.lam or []:
        z = complex(v.replace(" ", ""))
        out.append(z.real if z.imag == 0 else z)
    if args.grid:
        try:
            a, b, n = args.grid.split(":")
            out.extend(float(x) for x in np.linspace(float(a), float(b), int(n)))
        except ValueError:
            raise UsageError(f"bad --grid {args.grid!r}") from None
    if not out:
        raise UsageError("give --lambda or --grid")
    return out


# ----------------------------------------------------------------- commands


def run(args) -> str:
    if getattr(args, "depth", None) is not None and args.depth < 1:
        raise UsageError("--depth must be at least 1")
    if args.tau_zero is not None and not args.tau_zero > 0:
        raise UsageError("--tau-zero must be positive")
    doc, obj = _load(args)
    tau = args.tau_zero
    cmd = args.command
    if cmd == "moments":
        count = args.depth if args.depth is not None else int(doc.get("count", 16))
        return serialize.dumps(_moments(doc, obj, count))
    if cmd == "normal-indices":
        s = _moments(doc, obj, 2 * args.depth - 1)
        return serialize.dumps(normal_indices(s, args.depth, tau))
    if cmd == "factor":
        rows = 2 * args.depth + 2
        if args.which == "lu":
            if isinstance(obj, GJM):
                return serialize.dumps(lu_gjm(obj, args.depth, tau))
            return serialize.dumps(lu_jacobi(_jacobi(doc, obj, rows), args.depth, tau))
        if args.which == "ul":
            if isinstance(obj, GJM):
                return serialize.dumps(ul_gjm(obj, _param(args), args.depth, tau))
            return serialize.dumps(ul_jacobi(_jacobi(doc, obj, rows), _param(args), args.depth, tau))
        Js, _ = symmetrize(_jacobi(doc, obj, rows))
        return serialize.dumps(generalized_cholesky(Js, args.depth, tau))
    if cmd == "transform":
        rows = 2 * args.depth + 2
        if args.which == "christoffel":
            return serialize.dumps(christoffel(_jacobi(doc, obj, rows), args.depth, tau))
        if args.which == "geronimus":
            return serialize.dumps(geronimus(_jacobi(doc, obj, rows), _param(args), args.depth, tau))
        if args.which == "inv-christoffel":
            return serialize.dumps(inverse_christoffel(_gjm(obj), _param(args, "1"), args.depth, tau))
        return serialize.dumps(inverse_geronimus(_gjm(obj), args.depth, tau))
    if cmd == "pade":
        return _pade(args, doc, obj, tau)
    raise UsageError(f"unknown command {cmd}")


def _pade(args, doc, obj, tau):
    j = args.depth
    if args.which == "diagnose":
        J = _jacobi(doc, obj, 2 * j + 2)
        s_m1 = _param(args) if args.kind == "G" else None
        report = boundedness_diagnostic(J, args.kind, j, s_m1, args.threshold, tau=tau)
        if args.format == "json":
            return serialize.dumps(report)
        return serialize.diagnostics_csv(report)
    if args.which == "scan":
        if not isinstance(obj, MeasureSpec):
            raise UsageError("scan needs a measure input (the reference values come from it)")
        s = moments_from_measure(obj, 4 * j + 4)
        rows = convergence_scan(obj.stieltjes, s, _lambdas(args), j, obj.support_region(), tau)
        if args.format == "json":
            return serialize.dumps(serialize.scan_to_json(rows))
        return serialize.scan_csv(rows)
    s = _moments(doc, obj, 4 * j + 4)
    f = diagonal_pade(s, j, tau)
    if args.which == "poles":
        return serialize.dumps({"approximant": f, "poles": [complex(z) for z in poles(f)]})
    values = [{"lambda": lam, "value": f(lam)} for lam in _lambdas(args)]
    return serialize.dumps({"approximant": f, "values": values})


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = run(args)
    except DarbouxError as exc:
        sys.stderr.write(json.dumps(exc.to_dict()) + "\n")
        return 2
    except (UsageError, OSError, json.JSONDecodeError, KeyError) as exc:
        sys.stderr.write(f"darboux: error: {exc}\n")
        return 1
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
