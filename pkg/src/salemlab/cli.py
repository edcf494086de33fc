"""Experiment runner: build stage sets, compare them, fit dimension reports.

Exit codes: 0 success, 2 spec/argument parse error, 3 numeric or fit error.
One experiment per invocation; identical arguments (including --seed) give
byte-identical output files.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from pathlib import Path

from . import constructions as cons
from . import dimension as dim
from .bitseq import BitMatrix, BitSequence
from .geometry import GeometryError, IntervalUnion, format_fraction, hausdorff_metric
from .measures import MeasureError


class SpecParseError(ValueError):
    pass


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def parse_bits(text: str) -> BitSequence:
    try:
        return BitSequence.from_string(text)
    except ValueError as e:
        raise SpecParseError(str(e)) from None


def parse_rows(text: str) -> BitMatrix:
    rows = [parse_bits(part) for part in text.split(";") if part != ""]
    return BitMatrix.from_rows(rows)


def parse_scheme(spec: str) -> cons.Scheme:
    """Scheme mini-grammar.

    cantor:<n> | gcantor:<p> | interval | jarnik:<alpha> | salpha:<alpha>
    | fp:<p>:x=<bits> | pi03:<p>:rows=<r;...> | salemgap:<p>:rows=<r;...>
    | weihrauch:xs=<r;...>

    Bits: '110' (then zeros), '11(01)' (prefix + period), '(10)'.
    """
    parts = spec.split(":")
    kind = parts[0]
    try:
        if kind == "cantor":
            if len(parts) != 2:
                raise SpecParseError("usage: cantor:<n>")
            return cons.CantorScheme(int(parts[1]))
        if kind == "gcantor":
            if len(parts) != 2:
                raise SpecParseError("usage: gcantor:<p>")
            return cons.GeneralizedCantorScheme.for_dimension(float(parts[1]))
        if kind == "interval":
            return cons.IntervalScheme()
        if kind == "jarnik":
            if len(parts) != 2:
                raise SpecParseError("usage: jarnik:<alpha>")
            return cons.JarnikScheme(float(parts[1]))
        if kind == "salpha":
            if len(parts) != 2:
                raise SpecParseError("usage: salpha:<alpha>")
            return cons.SAlphaScheme(float(parts[1]))
        if kind == "fp":
            if len(parts) != 3 or not parts[2].startswith("x="):
                raise SpecParseError("usage: fp:<p>:x=<bits>")
            return cons.FpScheme(float(parts[1]), parse_bits(parts[2][2:]))
        if kind in ("pi03", "salemgap"):
            if len(parts) != 3 or not parts[2].startswith("rows="):
                raise SpecParseError(f"usage: {kind}:<p>:rows=<bits;bits;...>")
            mat = parse_rows(parts[2][5:])
            cls = cons.Pi03Scheme if kind == "pi03" else cons.SalemGapScheme
            return cls(float(parts[1]), mat)
        if kind == "weihrauch":
            if len(parts) != 2 or not parts[1].startswith("xs="):
                raise SpecParseError("usage: weihrauch:xs=<bits;bits;...>")
            xs = [parse_bits(p) for p in parts[1][3:].split(";") if p != ""]
            return cons.WeihrauchScheme(xs)
    except (ValueError, cons.ConstructionError) as e:
        raise SpecParseError(f"bad scheme spec {spec!r} (at {kind!r}): {e}") from None
    raise SpecParseError(f"unknown scheme kind {kind!r} in {spec!r}")


def config_hash(args: argparse.Namespace, keys: list[str]) -> str:
    blob = ";".join(f"{k}={getattr(args, k, None)}" for k in sorted(keys))
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def _write_stage_csv(path: Path, reports, cfg: str) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["stage", "pieces", "min_diam", "max_diam", "config"])
        for r in reports:
            w.writerow([r.stage, r.piece_count, format_fraction(r.min_diam),
                        format_fraction(r.max_diam), cfg])


def cmd_build(args: argparse.Namespace) -> int:
    scheme = parse_scheme(args.spec)
    stage_set = scheme.stage(args.stage)
    cfg = config_hash(args, ["spec", "stage"])
    out = Path(args.out)
    out.with_suffix(".json").write_text(stage_set.to_json())
    _write_stage_csv(out.with_suffix(".csv"), scheme.reports(1, args.stage), cfg)
    print(f"wrote {out.with_suffix('.json')} ({len(stage_set)} pieces) and {out.with_suffix('.csv')}")
    return 0


def cmd_metric(args: argparse.Namespace) -> int:
    A = IntervalUnion.from_json(Path(args.file_a).read_text())
    B = IntervalUnion.from_json(Path(args.file_b).read_text())
    d = hausdorff_metric(A, B)
    if args.format == "json":
        print(json.dumps({"value": float(d), "exact": format_fraction(d.value) if d.exact else None}))
    else:
        print(_fmt(float(d)))
    return 0


def cmd_reduce(args: argparse.Namespace) -> int:
    if args.map == "phi":
        mat = parse_rows(args.rows)
        out = cons.phi_transform(mat)
        top = out.max_row
        rows = [str(out.row(m)) for m in range(top + 1)]
        print(json.dumps({"rows": rows, "tail": str(out.tail)}))
        return 0
    if args.map == "fp":
        scheme = cons.FpScheme(args.p, parse_bits(args.x or "0"))
    elif args.map == "pi03":
        scheme = cons.Pi03Scheme(args.p, parse_rows(args.rows or ""))
    else:
        raise SpecParseError(f"unknown reduction map {args.map!r}")
    stage_set = scheme.stage(args.stage)
    Path(args.out).with_suffix(".json").write_text(stage_set.to_json())
    print(f"wrote {Path(args.out).with_suffix('.json')} ({len(stage_set)} pieces)")
    return 0


_REPORT_COLUMNS = [
    "scheme", "stage", "pieces", "min_diam", "hdim_est", "frostman_est",
    "fourier_raw", "fourier_dim", "salem_defect", "r2_box", "r2_fourier", "config",
]


def cmd_report(args: argparse.Namespace) -> int:
    scheme = parse_scheme(args.spec)
    cfg = config_hash(args, ["spec", "stage", "xi_max", "bands", "samples", "seed", "fit_lo"])
    rep = dim.salem_report(
        scheme, args.stage, xi_max=args.xi_max, bands=args.bands,
        samples_per_band=args.samples, seed=args.seed, fit_lo=args.fit_lo,
    )
    out = Path(args.out)
    row = [rep.scheme, rep.stage, rep.piece_count, _fmt(rep.min_diam),
           _fmt(rep.hdim_est), _fmt(rep.frostman_est), _fmt(rep.fourier_raw),
           _fmt(rep.fourier_dim), _fmt(rep.salem_defect),
           _fmt(rep.box_fit.r_squared), _fmt(rep.fourier_fit.r_squared), cfg]
    if args.format == "json":
        out.with_suffix(".json").write_text(
            json.dumps(dict(zip(_REPORT_COLUMNS, row)), indent=2)
        )
    else:
        with out.with_suffix(".csv").open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(_REPORT_COLUMNS)
            w.writerow(row)
    _write_sweep(out.parent / (out.stem + "_sweep.csv"), scheme, args, cfg)
    print(
        f"{rep.scheme} stage {rep.stage}: hdim_est={_fmt(rep.hdim_est)} "
        f"fourier_dim={_fmt(rep.fourier_dim)} defect={_fmt(rep.salem_defect)}"
    )
    return 0


def _write_sweep(path: Path, scheme: cons.Scheme, args: argparse.Namespace, cfg: str) -> None:
    mu = scheme.decay_measure(args.stage)
    n = max(args.samples * 4, 256)
    xis = [args.xi_max ** (i / n) for i in range(1, n + 1)]
    if hasattr(mu, "fourier_eval_many"):
        import numpy as np

        vals = mu.fourier_eval_many(np.array(xis))
    else:
        vals = [mu.fourier_eval(xi) for xi in xis]
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["xi", "re", "im", "modulus", "config"])
        for xi, v in zip(xis, vals):
            v = complex(v)
            w.writerow([_fmt(xi), _fmt(v.real), _fmt(v.imag), _fmt(abs(v)), cfg])


def cmd_sweep(args: argparse.Namespace) -> int:
    scheme = parse_scheme(args.spec)
    cfg = config_hash(args, ["spec", "stage", "xi_max", "samples", "seed"])
    _write_sweep(Path(args.out), scheme, args, cfg)
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="salemlab",
        description="Finite-stage fractal constructions and dimension estimators.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a stage set and its stage report CSV")
    b.add_argument("spec")
    b.add_argument("--stage", type=int, default=4)
    b.add_argument("--out", default="stage")
    b.set_defaults(fn=cmd_build)

    m = sub.add_parser("metric", help="Hausdorff distance between two set files")
    m.add_argument("file_a")
    m.add_argument("file_b")
    m.add_argument("--format", choices=("text", "json"), default="text")
    m.set_defaults(fn=cmd_metric)

    r = sub.add_parser("reduce", help="drive the reduction maps (fp, phi, pi03)")
    r.add_argument("--map", choices=("fp", "phi", "pi03"), required=True)
    r.add_argument("--p", type=float, default=0.5)
    r.add_argument("--x", help="bit sequence for fp")
    r.add_argument("--rows", help="semicolon-separated rows for phi/pi03")
    r.add_argument("--stage", type=int, default=4)
    r.add_argument("--out", default="reduced")
    r.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("report", help="full dimension report for a scheme")
    p.add_argument("spec")
    p.add_argument("--stage", type=int, default=8)
    p.add_argument("--fit-lo", dest="fit_lo", type=int, default=1)
    p.add_argument("--xi-max", dest="xi_max", type=float, default=2.0**16)
    p.add_argument("--bands", type=int, default=10)
    p.add_argument("--samples", type=int, default=128)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default="report")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(fn=cmd_report)

    s = sub.add_parser("sweep", help="Fourier transform sweep CSV")
    s.add_argument("spec")
    s.add_argument("--stage", type=int, default=8)
    s.add_argument("--xi-max", dest="xi_max", type=float, default=2.0**16)
    s.add_argument("--samples", type=int, default=128)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out", default="sweep.csv")
    s.set_defaults(fn=cmd_sweep)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (SpecParseError, GeometryError, cons.ConstructionError, MeasureError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2 if isinstance(e, SpecParseError) else 3
    except (dim.FitError, ArithmeticError) as e:
        print(f"numeric error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
