"""Command-line entry point: ``rollphase [options]`` or ``python -m rollphase``.

Exit codes: 0 success, 2 invalid configuration or motion, 3 a route failed
or a cross-check exceeded its tolerance while ``--strict`` is set.
"""
from __future__ import annotations

import argparse
import glob
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .errors import RollPhaseError
from .report import EMIT_CHOICES, TOL_KEYS, format_report, load_config, parse_angle, parse_tolerance, run, write_outputs

EXIT_OK, EXIT_INVALID, EXIT_ROUTE = 0, 2, 3
CONFIG_PATTERNS = ("*.cfg", "*.conf", "*.ini")


def _emit_list(text):
    items = tuple(p.strip() for p in text.split(",") if p.strip())
    bad = [p for p in items if p not in EMIT_CHOICES]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown emit target(s) {bad}; choose from {','.join(EMIT_CHOICES)}")
    return items


def _ladder(text):
    return tuple(parse_angle(p) for p in text.replace(",", " ").split())


def _tolerance(text):
    try:
        return parse_tolerance(text)
    except RollPhaseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rollphase",
        description="Rotation angle of a disc rolling on the rim of a fixed disc, split into "
                    "dynamical and geometric phases and cross-checked along independent routes.",
        epilog="Angles are radians; append 'deg' for degrees (e.g. --beta0 60deg).")
    p.add_argument("--config", help="flat 'key = value' config file; flags override its values")
    p.add_argument("--family", choices=("constant_tilt", "wobble", "tilt_sweep", "piecewise_linear_table"))
    p.add_argument("--beta0", type=parse_angle, help="base tilt")
    p.add_argument("--amplitude", type=parse_angle, help="wobble amplitude")
    p.add_argument("--m", type=int, help="wobble frequency")
    p.add_argument("--beta1", type=parse_angle, help="tilt at mid-cycle for tilt_sweep")
    p.add_argument("--n", type=int, help="number of turns around the fixed disc")
    p.add_argument("--a", type=float, help="radius of the fixed disc")
    p.add_argument("--b", type=float, help="radius of the rolling disc")
    p.add_argument("--table", help="motion table file with 't theta beta' lines")
    p.add_argument("--grid", type=int, help="number of grid intervals N (default 8192)")
    p.add_argument("--eps-ladder", type=_ladder, help="decreasing regularization ladder, comma separated")
    p.add_argument("--out-dir", help="directory for report/CSV/SVG files")
    p.add_argument("--emit", type=_emit_list, help="comma list of report,csv,svg (default report)")
    p.add_argument("--tol", type=_tolerance, action="append", metavar="NAME=VALUE",
                   help=f"override a cross-check tolerance; NAME is one of {', '.join(TOL_KEYS)}")
    p.add_argument("--strict", action="store_true", default=None,
                   help="exit with status 3 when a route errors or a cross-check fails")
    p.add_argument("--batch", metavar="DIR", help="run every config file in DIR (one thread per run)")
    p.add_argument("--workers", type=int, default=None, help="threads for --batch")
    return p


def _overrides(ns) -> dict:
    keys = ("family", "beta0", "amplitude", "m", "beta1", "n", "a", "b", "table", "grid",
            "eps_ladder", "out_dir", "emit", "strict")
    out = {k: getattr(ns, k) for k in keys}
    out["tolerances"] = dict(ns.tol) if ns.tol else None
    return out


def _one(config_path, overrides, out):
    """Run one configuration; returns ``(exit_code, text)``."""
    try:
        cfg = load_config(config_path, overrides)
        rep = run(cfg)
    except RollPhaseError as exc:
        return EXIT_INVALID, f"error: {exc}\n"
    except OSError as exc:
        return EXIT_INVALID, f"error: {exc}\n"
    text = format_report(rep) if "report" in cfg.emit else ""
    if cfg.out_dir:
        try:
            for p in write_outputs(rep, cfg.out_dir):
                out.append(p)
        except OSError as exc:
            return EXIT_INVALID, text + f"error: {exc}\n"
    elif any(e in cfg.emit for e in ("csv", "svg")):
        return EXIT_INVALID, text + "error: csv/svg output needs --out-dir\n"
    if cfg.strict and rep.failures:
        return EXIT_ROUTE, text + "".join(f"route failure: {f}\n" for f in rep.failures)
    return EXIT_OK, text


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad flags, which matches the validation code
        return int(exc.code or 0)
    overrides = _overrides(ns)
    written = []
    if ns.batch:
        if not os.path.isdir(ns.batch):
            print(f"error: batch directory not found: {ns.batch}", file=sys.stderr)
            return EXIT_INVALID
        files = sorted(f for pat in CONFIG_PATTERNS for f in glob.glob(os.path.join(ns.batch, pat)))
        if not files:
            print(f"error: no config files ({', '.join(CONFIG_PATTERNS)}) in {ns.batch}", file=sys.stderr)
            return EXIT_INVALID
        per_run = []
        for f in files:
            o = dict(overrides)
            if ns.out_dir:
                o["out_dir"] = os.path.join(ns.out_dir, os.path.splitext(os.path.basename(f))[0])
            per_run.append(o)
        with ThreadPoolExecutor(max_workers=ns.workers) as pool:
            results = list(pool.map(lambda args: _one(args[0], args[1], written), zip(files, per_run)))
        code = EXIT_OK
        for f, (c, text) in zip(files, results):
            sys.stdout.write(f"== {f} (exit {c})\n{text}")
            code = max(code, c)
        return code
    code, text = _one(ns.config, overrides, written)
    stream = sys.stdout if code == EXIT_OK else sys.stderr
    if code == EXIT_ROUTE:
        report, _, tail = text.partition("route failure")
        sys.stdout.write(report)
        sys.stderr.write("route failure" + tail if tail else "")
    else:
        stream.write(text)
    for p in written:
        print(f"wrote {p}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
