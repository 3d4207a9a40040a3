"""Command-line front end: kernel, series, verify, scan and count."""
from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from ..domains import (DomainPoint, FockLattice, InvalidPointError, UnsupportedDomainError, WeightError,
                       bergman_kernel, fock_kernel, log_h)
from ..domains.actions import SingularActionError
from ..groups import (GroupInvariantError, NotLoxodromicError, PresetError, count_lattice, element, fit_growth,
                      load_preset, orbit_distances)
from ..groups.counting import COUNT_TOLERANCE
from ..groups.elements import matrix_size
from ..groups.presets import PICARD_LOXODROMIC
from ..numerics.precision import working_precision
from ..series import (PreconditionError, halfplane_grid, nonvanishing_scan, point_factory, point_series,
                      relative_factory, relative_series_hyperbolic, relative_series_loxodromic,
                      relative_series_torus, set_default_workers)
from . import verify as V
from .config import DOMAINS, InputError, RunConfig, parse_matrix, parse_point, parse_radii, parse_reals, parse_weights
from .report import Report, sum_record, value_fields
from .svg import write_plot

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _add_common(sp, depth: int | None = None):
    sp.add_argument("--json", action="store_true", help="emit one JSON document instead of CSV")
    sp.add_argument("--output", "-o", help="write the report here instead of stdout")
    sp.add_argument("--workers", type=int, default=1, help="threads for series evaluation (speed only)")
    sp.add_argument("--precision", type=int, default=53, choices=(53, 128, 256), help="working precision in bits")
    sp.add_argument("--tol", type=float, default=1e-10, help="quadrature / verification tolerance")
    sp.add_argument("--seed", type=int, default=0)
    if depth is not None:
        sp.add_argument("--depth", type=int, default=depth, help="word-ball depth (lattice radius for fock)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bergman-poincare",
                                 description="Bergman kernels and Poincare series on symmetric domains")
    sub = ap.add_subparsers(dest="command", required=True)

    k = sub.add_parser("kernel", help="evaluate the Bergman kernel of L^p on a model domain")
    k.add_argument("--domain", default="h", choices=sorted(DOMAINS))
    k.add_argument("--n", type=int, default=1, help="complex dimension / genus")
    k.add_argument("--p", required=True, help="weight(s): 6, 4,6,8 or 4:12")
    k.add_argument("--z", action="append", required=True, help="point as re,im pairs (repeatable)")
    k.add_argument("--w", action="append", help="second point(s); default: same as --z")
    k.add_argument("--tau", default="0,1", help="Fock lattice parameter as re,im (fixes the covolume)")
    _add_common(k)

    s = sub.add_parser("series", help="truncated Poincare or relative Poincare series")
    s.add_argument("kind", choices=("point", "geodesic", "loxodromic", "torus"))
    s.add_argument("--group", default="sl2z", help="preset name, JSON file or inline JSON")
    s.add_argument("--g0", help="loxodromic element, row-major entries")
    s.add_argument("--p", required=True)
    s.add_argument("--l", type=int, default=1, help="torus exponent l >= 1")
    s.add_argument("--z", action="append", required=True)
    s.add_argument("--w", action="append")
    _add_common(s, depth=8)

    v = sub.add_parser("verify", help="run a verification suite; exit 1 on failure")
    v.add_argument("suite", choices=("chain", "equivariance", "reproducing", "theta", "period", "holonomy",
                                     "counting"))
    v.add_argument("--group", default="sl2z", help="preset, or 'fock' for the lattice Z + Z tau")
    v.add_argument("--g0", action="append", help="hyperbolic element(s) for period / holonomy")
    v.add_argument("--p", help="weight(s)")
    v.add_argument("--trials", type=int)
    v.add_argument("--tau", default="0,1")
    v.add_argument("--z", default="0,1", help="base point for counting")
    v.add_argument("--projective", action="store_true")
    _add_common(v, depth=None)
    v.add_argument("--depth", type=int)

    c = sub.add_parser("scan", help="non-vanishing scan over weights and a grid of points")
    c.add_argument("--group", default="sl2z")
    c.add_argument("--kind", choices=("geodesic", "point"), help="default: geodesic if --g0 is given")
    c.add_argument("--g0")
    c.add_argument("--p", required=True)
    c.add_argument("--w", default="0,1", help="fixed second point of the point series")
    c.add_argument("--plot", help="write an SVG of magnitude and uncertainty against p")
    _add_common(c, depth=14)

    n = sub.add_parser("count", help="orbit counting N(r) and its exponential growth rate")
    n.add_argument("--group", default="sl2z")
    n.add_argument("--z", default="0,1")
    n.add_argument("--r", default="0:8:0.5", help="radii lo:hi:step or comma list")
    n.add_argument("--fit", default="2,8", help="fitting window r_min,r_max")
    n.add_argument("--projective", action="store_true")
    _add_common(n, depth=22)
    return ap


def _preset(text):
    try:
        return load_preset(text)
    except (PresetError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def _element(preset, text):
    size = matrix_size(preset.group, preset.n)
    return element(preset, parse_matrix(text, size, preset.ring.dim))


def _fock_lattice(text) -> FockLattice:
    re_im = parse_reals(text)
    if len(re_im) != 2:
        raise InputError("--tau takes re,im")
    return FockLattice(complex(*re_im))


# -- commands --------------------------------------------------------------------------------------
def cmd_kernel(args, rep: Report) -> int:
    kind = DOMAINS[args.domain]
    zs = [parse_point(t, kind, args.n) for t in args.z]
    ws = [parse_point(t, kind, args.n) for t in (args.w or args.z)]
    area = _fock_lattice(args.tau).covolume if kind == "fock" else 1.0
    for p in parse_weights(args.p):
        for i, z in enumerate(zs):
            for j, w in enumerate(ws):
                K = fock_kernel(z, w, p, area) if kind == "fock" else bergman_kernel(z, w, p)
                rec = {"id": f"kernel-p{p}-z{i}-w{j}", "domain": kind, "n": args.n, "p": p,
                       "z": args.z[i], "w": (args.w or args.z)[j], **value_fields(K.value),
                       "value_re": complex(K).real, "value_im": complex(K).imag,
                       "normalized": math.exp(K.pointwise_log_norm(z, w, area)), "tail_estimate": 0.0,
                       "flags": []}
                rep.add(rec)
    return EXIT_OK


def cmd_series(args, rep: Report) -> int:
    preset = _preset(args.group)
    kind, n = preset.domain
    zs = [parse_point(t, kind, n) for t in args.z]
    for p in parse_weights(args.p):
        for i, z in enumerate(zs):
            if args.kind == "point":
                ws = [parse_point(t, kind, n) for t in (args.w or args.z)]
                for j, w in enumerate(ws):
                    s = point_series(preset, p, z, w, args.depth)
                    rep.add(_series_rec(f"point-p{p}-z{i}-w{j}", args, p, z, s, w=(args.w or args.z)[j]))
                continue
            if args.kind == "geodesic":
                g0 = _element(preset, args.g0 or "2,1,1,1")
                s = relative_series_hyperbolic(preset, g0, p, z, args.depth)
            else:
                g0 = _element(preset, args.g0) if args.g0 else element(preset, PICARD_LOXODROMIC)
                if args.kind == "loxodromic":
                    s = relative_series_loxodromic(preset, g0, p, z, args.depth)
                else:
                    s = relative_series_torus(preset, g0, args.l, p, z, args.depth)
            rep.add(_series_rec(f"{args.kind}-p{p}-z{i}", args, p, z, s))
    return EXIT_OK


def _series_rec(rid, args, p, z, s, **extra):
    c = complex(s)
    weight = s.info.get("weight", p)
    lm = s.value.log_mag
    norm = math.exp(lm + 0.5 * weight * log_h(z)) if lm > -math.inf else 0.0
    return sum_record(rid, {"kind": args.kind, "group": args.group, "p": p, "weight": weight,
                            "z": _fmt(z), **extra,
                            "depth": args.depth}, s, value_re=c.real, value_im=c.imag, normalized=norm)


def _fmt(z: DomainPoint) -> str:
    return ";".join(f"{complex(c).real:.17g},{complex(c).imag:.17g}" for c in z.coords)


def cmd_verify(args, rep: Report) -> int:
    ps = parse_weights(args.p) if args.p else None
    suite = args.suite
    if args.group == "fock":
        group = _fock_lattice(args.tau)
    else:
        group = _preset(args.group)
    if suite == "chain":
        checks = V.chain_rule(group, args.trials or 1000, args.seed)
    elif suite == "equivariance":
        checks = V.equivariance(group, ps[0] if ps else None, args.trials or 200, args.seed)
    elif suite == "reproducing":
        checks = V.reproducing(ps[0] if ps else 8, args.trials or 5, args.seed)
    elif suite == "theta":
        lat = _fock_lattice(args.tau)
        checks = V.theta(ps or (1, 2, 3, 4, 5, 6), args.trials or 50, args.seed, lat.tau, args.depth or 8)
    elif suite == "period":
        g0 = _element(group, (args.g0 or ["2,1,1,1"])[0])
        checks = V.period(group, g0, ps[0] if ps else 6, args.trials or 10, args.seed, args.depth or 16)
    elif suite == "holonomy":
        size = matrix_size(group.group, group.n)
        g0s = [parse_matrix(t, size, group.ring.dim) for t in (args.g0 or ["2,1,1,1"])]
        checks = V.holonomy_check(group, g0s, ps[0] if ps else 6)
    else:
        z = parse_point(args.z, *group.domain)
        checks = V.counting(group, z, args.depth or 22, projective=args.projective)
    for c in checks:
        rep.add({"id": f"{suite}", "check": c.name, "residual": c.residual, "tolerance": c.tolerance,
                 "status": "PASS" if c.passed else "FAIL", **{k: v for k, v in c.info.items()},
                 "tail_estimate": 0.0, "flags": [] if c.passed else ["FAIL"]})
    ok = all(c.passed for c in checks)
    rep.summary["result"] = "PASS" if ok else "FAIL"
    if not args.json:
        for c in checks:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: residual {c.residual:.3e} (tol {c.tolerance:g})",
                  file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_scan(args, rep: Report) -> int:
    preset = _preset(args.group)
    kind = args.kind or ("geodesic" if args.g0 else "point")
    ps = parse_weights(args.p)
    if preset.domain != ("halfplane", 1):
        raise InputError("scan evaluates on a grid of H; use a group acting on the upper half plane")
    if kind == "geodesic":
        factory = relative_factory(preset, _element(preset, args.g0 or "2,1,1,1"))
    else:
        factory = point_factory(preset, parse_point(args.w, "halfplane", 1))
    report = nonvanishing_scan(factory, ps, halfplane_grid(), args.depth)
    for r in report.rows:
        rep.add({"id": f"scan-p{r.p}", "p": r.p, "weight": r.weight, "max_normalized": r.max_normalized,
                 "uncertainty": r.uncertainty, "tail_margin": r.margin, "argmax": str(r.argmax),
                 "verdict": r.verdict, "tail_estimate": r.uncertainty,
                 "flags": [] if r.converged else ["UNCONVERGED"]})
    rep.summary["threshold_p"] = report.threshold
    rep.summary["grid_points"] = report.grid_size
    if args.plot:
        xs = [r.weight for r in report.rows]
        write_plot(args.plot, xs, {"max |s| h^(w/2)": [r.max_normalized for r in report.rows],
                                   "uncertainty": [r.uncertainty for r in report.rows]},
                   title=f"non-vanishing scan ({args.group}, depth {args.depth})", xlabel="weight",
                   ylabel="normalized magnitude")
    return EXIT_OK


def cmd_count(args, rep: Report) -> int:
    preset = _preset(args.group)
    z = parse_point(args.z, *preset.domain)
    radii = parse_radii(args.r)
    if preset.generators:
        d = orbit_distances(preset, z, z, args.depth, args.projective)
        ds = np.sort(d)
        counts = [int(np.searchsorted(ds, r + COUNT_TOLERANCE * (1 + r), side="right")) for r in radii]
    else:
        counts = [count_lattice(preset, z, z, r, args.depth) for r in radii]
        d = None
    for r, c in zip(radii, counts):
        rep.add({"id": f"count-r{r:g}", "r": r, "N": c, "tail_estimate": 0.0, "flags": []})
    lo, hi = parse_reals(args.fit)
    if d is not None and len(d) > 1:
        fit = fit_growth(d, lo, hi)
        rep.summary["slope"] = fit.rate
    else:
        rep.summary["slope"] = 0.0
    return EXIT_OK


COMMANDS = {"kernel": cmd_kernel, "series": cmd_series, "verify": cmd_verify, "scan": cmd_scan,
            "count": cmd_count}


def _config(args) -> RunConfig:
    pts = [x for x in (getattr(args, "z", None) or []) if x] if isinstance(getattr(args, "z", None), list) \
        else ([args.z] if getattr(args, "z", None) else [])
    return RunConfig(command=args.command, group=getattr(args, "group", None),
                     p=parse_weights(args.p) if getattr(args, "p", None) else [], points=pts,
                     depth=getattr(args, "depth", None) or 0, tolerance=args.tol, precision=args.precision,
                     output=args.output, workers=args.workers, seed=args.seed,
                     extra={k: v for k, v in vars(args).items()
                            if k not in ("command", "group", "p", "z", "depth", "tol", "precision", "output",
                                         "workers", "seed", "json")})


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        set_default_workers(max(1, args.workers))
        rep = Report(cfg.echo(), environment={"precision": cfg.precision, "depth": cfg.depth, "seed": cfg.seed})
        t0 = time.perf_counter()
        with working_precision(cfg.precision):
            code = COMMANDS[args.command](args, rep)
        rep.wall_time = time.perf_counter() - t0
    except (InputError, InvalidPointError, WeightError, PresetError, GroupInvariantError, NotLoxodromicError,
            PreconditionError, UnsupportedDomainError, SingularActionError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = rep.to_json() if args.json else rep.to_csv()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
