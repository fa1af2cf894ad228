"""Command-line interface.

Exit status is 0 on success, 1 when an input fails validation or a check
fails, and 2 on usage errors. The default output format may be set with the
``COMBMAN_FORMAT`` environment variable (``text``, ``json`` or its alias
``structured``, ``dot``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import diffgeo as dg
from .classify import automorphism_orbits, are_equivalent, GraphTooLarge
from .invariants import InvariantError, euler_characteristic, fundamental_group_rank
from .model import ModelError, load_model, render_model, validate_model
from .series import SeriesError, load_series_map, model_enufunction, series_to_dict
from .skeleton import (GraphError, build_graph, derive_next, edge_drop_set, export_dot,
                       load_graph, realize_model, render_graph,
                       validate_labelled_graph)

FORMAT_ENV = "COMBMAN_FORMAT"


class CheckFailed(Exception):
    """Raised to end a command with exit status 1 after output was written."""


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _fmt(args) -> str:
    fmt = args.format or os.environ.get(FORMAT_ENV, "text")
    return "json" if fmt == "structured" else fmt


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ModelError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None


# -- combinatorial commands ------------------------------------------------

def cmd_validate(args, out):
    model = load_model(args.model)
    report = validate_model(model)
    if _fmt(args) == "json":
        out.write(_dump({"ok": report.ok,
                         "violations": [vars(v) | {"ids": list(v.ids)} for v in report.violations],
                         "advisories": [vars(v) | {"ids": list(v.ids)} for v in report.advisories]}) + "\n")
    else:
        out.write("ok\n" if report.ok else "invalid\n")
        for v in report.violations:
            out.write(f"  {v}\n")
        for v in report.advisories:
            out.write(f"  advisory {v}\n")
    if not report.ok:
        raise CheckFailed


def cmd_graph(args, out):
    g = build_graph(load_model(args.model), args.d)
    if args.dot or _fmt(args) == "dot":
        out.write(export_dot(g))
    elif _fmt(args) == "json":
        out.write(render_graph(g))
    else:
        out.write(f"G^{g.d}: {len(g.vertices)} vertices, {len(g.edges)} edges\n")
        for v in sorted(g.vertices, key=lambda v: v.id):
            out.write(f"  {v.id} [{v.label}]\n")
        for u, w in g.sorted_edges():
            out.write(f"  {u} -- {w}\n")


def cmd_recursion_check(args, out):
    model = load_model(args.model)
    top = max(model.dims)
    rows = []
    for d in range(1, top + 1):
        g = build_graph(model, d)
        ok = derive_next(g, edge_drop_set(model, d)) == build_graph(model, d + 1)
        rows.append({"d": d, "dropped": len(edge_drop_set(model, d)), "ok": ok})
    if _fmt(args) == "json":
        out.write(_dump({"ok": all(r["ok"] for r in rows), "levels": rows}) + "\n")
    else:
        for r in rows:
            out.write(f"d={r['d']} dropped={r['dropped']} {'ok' if r['ok'] else 'MISMATCH'}\n")
    if not all(r["ok"] for r in rows):
        raise CheckFailed


def cmd_euler(args, out):
    chi = euler_characteristic(load_model(args.model))
    out.write(_dump({"euler": chi}) + "\n" if _fmt(args) == "json" else f"{chi}\n")


def cmd_pi(args, out):
    res = fundamental_group_rank(load_model(args.model), args.d)
    if _fmt(args) == "json":
        out.write(_dump(res.to_dict()) + "\n")
    else:
        out.write(f"{res.total}\n")


def cmd_equiv(args, out):
    same = are_equivalent(load_graph(args.g1), load_graph(args.g2))
    out.write(_dump({"equivalent": same}) + "\n" if _fmt(args) == "json"
              else ("true\n" if same else "false\n"))


def cmd_orbits(args, out):
    rep = automorphism_orbits(load_graph(args.graph))
    if _fmt(args) == "json":
        out.write(_dump(rep.to_dict()) + "\n")
    else:
        out.write(f"pi0 {rep.pi0}\n")
        for orb in rep.orbits:
            out.write("  " + " ".join(map(str, orb)) + "\n")


def cmd_enum(args, out):
    g = load_graph(args.graph)
    res = model_enufunction(g, load_series_map(args.series), args.truncate)
    if _fmt(args) == "json":
        doc = {"series": series_to_dict(res.series), "pi0": res.pi0,
               "pi0_factor": res.pi0_factor, "clause": res.clause,
               "clause_factor": res.clause_factor}
        out.write(_dump(doc) + "\n")
    else:
        out.write(f"{res.series}\n")
        if res.clause is not None and not res.factors_agree:
            out.write(f"note: {res.clause} closed form uses factor {res.clause_factor}, "
                      f"orbit count gives {res.pi0_factor}\n")


def cmd_realize(args, out):
    g = load_graph(args.graph)
    report = validate_labelled_graph(g)
    if not report.ok:
        for v in report.violations:
            out.write(f"  {v}\n")
        raise CheckFailed
    text = render_model(realize_model(g, args.d))
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


# -- geometry commands -----------------------------------------------------

def _poly(dim, entry) -> dg.Polynomial:
    if isinstance(entry, (int, float, str)):
        return dg.constant(dim, Fraction(entry))
    return dg.Polynomial.from_terms(dim, entry)


def load_metric(path) -> dg.MetricField:
    """Metric file: ``{"dim": D, "g": [[entry, ...], ...]}``.

    Each entry is a number or a polynomial term list.
    """
    doc = _read_json(path)
    dim = int(doc["dim"])
    rows = doc["g"]
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise dg.MetricError(f"metric must be {dim} x {dim}")
    polys = np.empty((dim, dim), dtype=object)
    for a in range(dim):
        for b in range(dim):
            polys[a, b] = _poly(dim, rows[a][b])
    return dg.MetricField.from_polynomials(polys)


def load_norm(path) -> dg.MinkowskiNorm:
    """Norm file: ``{"kind": ..., "dim": D, ...}``.

    Kinds: ``euclidean``; ``scaled`` (``scale``); ``quadratic`` (``matrix``, gives
    ``sqrt(v^T A v)``); ``lp`` (``p``); ``abs-difference`` (``|v0| - |v1|``).
    """
    doc = _read_json(path)
    kind, dim = doc.get("kind"), int(doc["dim"])
    if kind == "euclidean":
        return dg.euclidean_norm(dim)
    if kind == "scaled":
        return dg.euclidean_norm(dim, float(doc["scale"]))
    if kind == "quadratic":
        A = np.asarray(doc["matrix"], dtype=float)
        if A.shape != (dim, dim):
            raise dg.NormError("quadratic norm matrix has wrong shape")
        return dg.MinkowskiNorm(dim, lambda v: float(np.sqrt(max(v @ A @ v, 0.0))))
    if kind == "lp":
        p = float(doc["p"])
        return dg.MinkowskiNorm(dim, lambda v: float(np.sum(np.abs(v) ** p) ** (1 / p)))
    if kind == "abs-difference":
        if dim < 2:
            raise dg.NormError("abs-difference needs dim >= 2")
        return dg.MinkowskiNorm(dim, lambda v: float(abs(v[0]) - abs(v[1])))
    raise dg.NormError(f"unknown norm kind {kind!r}")


def cmd_geom_dim(args, out):
    chart = dg.ChartSpec.from_dict(_read_json(args.chart))
    D = dg.tangent_dimension(chart)
    out.write(_dump({"D": D, **chart.to_dict()}) + "\n" if _fmt(args) == "json" else f"{D}\n")


def cmd_geom_dform(args, out):
    alpha = dg.form_from_dict(_read_json(args.form))
    d_alpha = dg.exterior_derivative(alpha)
    if _fmt(args) == "json":
        out.write(_dump(dg.form_to_dict(d_alpha)) + "\n")
    elif d_alpha.is_zero():
        out.write("0\n")
    else:
        for idx, coeff in d_alpha.terms.items():
            out.write(f"({coeff}) " + "^".join(f"dx{i}" for i in idx) + "\n")


def cmd_geom_christoffel(args, out):
    metric = load_metric(args.metric)
    # with --fd the coefficients come from differenced g; the residual is
    # still scored against the exact partials
    source = metric.without_partials() if args.fd else metric
    point = np.array([float(x) for x in args.at.split(",")])
    if point.size != metric.dim:
        raise dg.MetricError(f"point has {point.size} coordinates, metric has {metric.dim}")
    gamma = dg.christoffel_from_metric(source, point, args.step)
    residual = dg.metric_compatibility_residual(metric, gamma, point, args.step)
    nonzero = [(c, a, b, float(gamma[c, a, b])) for c, a, b in np.ndindex(gamma.shape)
               if abs(gamma[c, a, b]) > args.zero_tol]
    if _fmt(args) == "json":
        out.write(_dump({"point": point.tolist(), "gamma": gamma.tolist(),
                         "compatibility_residual": residual,
                         "torsion_max": float(np.max(np.abs(dg.torsion(gamma))))}) + "\n")
    else:
        for c, a, b, v in nonzero:
            out.write(f"Gamma^{c}_{a}{b} = {v:.12g}\n")
        if not nonzero:
            out.write("all zero\n")
        out.write(f"compatibility residual {residual:.3g}\n")


def cmd_geom_norm_check(args, out):
    F = load_norm(args.norm)
    rng = np.random.default_rng(args.seed)
    samples = []
    while len(samples) < args.samples:
        v = rng.standard_normal(F.dim)
        if np.any(v):
            samples.append(v)
    rep = dg.minkowski_check(F, samples, tol=args.tol, h=args.step)
    if _fmt(args) == "json":
        out.write(_dump(rep.to_dict()) + "\n")
    else:
        out.write(("pass" if rep.ok else "fail") + "\n")
        out.write(f"  nonnegative {rep.nonnegative} (min {rep.min_value:.6g})\n")
        out.write(f"  homogeneous {rep.homogeneous} (margin {rep.homogeneity_margin:.3g})\n")
        out.write(f"  positive_definite {rep.positive_definite} (min eig {rep.min_eigenvalue:.6g})\n")
    if not rep.ok:
        raise CheckFailed


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "structured", "dot"], default=None,
                        help=f"output format (default: ${FORMAT_ENV} or text)")

    p = argparse.ArgumentParser(prog="combman", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("validate", cmd_validate, "check a model file")
    sp.add_argument("model")
    sp = add("graph", cmd_graph, "skeleton graph of a model")
    sp.add_argument("model")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    sp = add("recursion-check", cmd_recursion_check, "check G^(d+1) = G^d - E^d at every level")
    sp.add_argument("model")
    sp = add("euler", cmd_euler, "Euler characteristic")
    sp.add_argument("model")
    sp = add("pi", cmd_pi, "rank of the fundamental d-group")
    sp.add_argument("model")
    sp.add_argument("--d", type=int, required=True)
    sp = add("equiv", cmd_equiv, "label-preserving isomorphism test")
    sp.add_argument("g1")
    sp.add_argument("g2")
    sp = add("orbits", cmd_orbits, "orbits of label classes under automorphisms")
    sp.add_argument("graph")
    sp = add("enum", cmd_enum, "enumeration series of a skeleton")
    sp.add_argument("graph")
    sp.add_argument("--series", required=True, help="JSON map from dimension to series")
    sp.add_argument("--truncate", type=int, default=None)
    sp = add("realize", cmd_realize, "build a model with the given skeleton")
    sp.add_argument("graph")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("-o", "--output", default=None)

    geom = sub.add_parser("geom", help="chart-level geometry")
    gsub = geom.add_subparsers(dest="geom_command", required=True, metavar="command")

    def gadd(name, func, help_):
        sp = gsub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = gadd("dim", cmd_geom_dim, "tangent-space dimension of a chart")
    sp.add_argument("chart")
    sp = gadd("dform", cmd_geom_dform, "exterior derivative of a form")
    sp.add_argument("form")
    sp = gadd("christoffel", cmd_geom_christoffel, "Levi-Civita coefficients at a point")
    sp.add_argument("metric")
    sp.add_argument("--at", required=True, help="comma-separated coordinates")
    sp.add_argument("--fd", action="store_true", help="use finite-difference partials")
    sp.add_argument("--step", type=_positive, default=dg.DEFAULT_METRIC_STEP)
    sp.add_argument("--zero-tol", type=_positive, default=1e-12)
    sp = gadd("norm-check", cmd_geom_norm_check, "Minkowski-norm checks on random samples")
    sp.add_argument("norm")
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=_positive, default=dg.HOMOGENEITY_TOL)
    sp.add_argument("--step", type=_positive, default=dg.HESSIAN_STEP)
    return p


def _positive(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text}") from None
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except CheckFailed:
        return 1
    except (ModelError, GraphError, InvariantError, SeriesError, GraphTooLarge,
            dg.ChartError, dg.FormError, dg.MetricError, dg.NormError,
            KeyError, ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
