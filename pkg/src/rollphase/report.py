"""Run configuration, the cross-route pipeline, and report/CSV/SVG output.

A run samples one motion and computes the geometric phase along every
available route: the line integral, its regularized limit, the area-index
formula, the fiber coordinate of the horizontal lift and the curvature
index formula.  Holonomy and Levi-Civita transport only determine the
phase modulo 2 pi and are compared after reduction.
"""
from __future__ import annotations

import cmath
import dataclasses
import itertools
import math
import os
import warnings
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import tolerances as tol
from .curvature import arclength, corollary_check, geodesic_curvature
from .errors import ConfigError, RollPhaseError
from .lift import holonomy, horizontal_lift, transport_oracle
from .motion import FAMILIES, MotionSpec, lipschitz_estimate, make_motion, read_table, sample, table_motion
from .phase import phase
from .regularize import clamp, regularized_phase, richardson_limit
from .topology import ChartedCurve, main_theorem_check, pole_indices

ROUTES = ("line_integral", "regularized_limit", "area_index", "fiber_coordinate", "curvature_corollary")
EMIT_CHOICES = ("report", "csv", "svg")
ANGLE_KEYS = ("beta0", "amplitude", "beta1")

# acceptance tolerance for each route against the line integral
ROUTE_TOL = {
    "regularized_limit": tol.REGULARIZED_TOL,
    "area_index": tol.MAIN_THEOREM_TOL,
    "fiber_coordinate": tol.FIBER_TOL,
    "curvature_corollary": tol.COROLLARY_TOL,
}
# congruence checks of the mod-2pi routes
CONGRUENCE_TOL = {"holonomy": tol.HOLONOMY_TOL, "transport": tol.TRANSPORT_TOL}
TOL_KEYS = tuple(ROUTE_TOL) + tuple(CONGRUENCE_TOL)


def parse_angle(text) -> float:
    """Parse an angle in radians, or in degrees with an explicit ``deg`` suffix.

    Examples
    --------
    >>> parse_angle("0.5"), round(parse_angle("90deg"), 12)
    (0.5, 1.570796326795)
    """
    if isinstance(text, (int, float)):
        return float(text)
    s = str(text).strip().lower()
    try:
        if s.endswith("deg"):
            return math.radians(float(s[:-3]))
        return float(s)
    except ValueError:
        raise ConfigError(f"cannot parse angle {text!r} (radians, or degrees with a 'deg' suffix)") from None


@dataclass
class RunConfig:
    family: str = "constant_tilt"
    beta0: float = math.pi / 2
    amplitude: float = 0.0
    m: int = 1
    beta1: float = 0.0
    n: int = 1
    a: float = 1.0
    b: float = 1.0
    table: Optional[str] = None
    grid: int = tol.DEFAULT_GRID
    eps_ladder: tuple = tol.DEFAULT_EPS_LADDER
    out_dir: Optional[str] = None
    emit: tuple = ("report",)
    strict: bool = False
    name: str = "run"
    tolerances: dict = field(default_factory=dict)

    def tolerance(self, key: str) -> float:
        """Tolerance for a route or congruence check, with overrides applied."""
        default = ROUTE_TOL.get(key, CONGRUENCE_TOL.get(key, 0.0))
        return float(self.tolerances.get(key, default))

    def validate(self) -> "RunConfig":
        if self.family not in FAMILIES:
            raise ConfigError(f"family must be one of {', '.join(FAMILIES)}; got {self.family!r}")
        if self.family == "piecewise_linear_table":
            if not self.table:
                raise ConfigError("family piecewise_linear_table needs a 'table' file")
            if not os.path.isfile(self.table):
                raise ConfigError(f"table file not found: {self.table}")
        if not (self.a > 0 and self.b > 0):
            raise ConfigError(f"radii must be positive (a={self.a}, b={self.b})")
        if int(self.grid) != self.grid or self.grid < tol.MIN_GRID:
            raise ConfigError(f"grid must be an integer >= {tol.MIN_GRID}, got {self.grid}")
        eps = tuple(self.eps_ladder)
        if not eps or any(not (0 < e < tol.EPS_MAX) for e in eps):
            raise ConfigError(f"eps-ladder values must lie in (0, pi/8), got {eps}")
        if any(b >= a for a, b in zip(eps[:-1], eps[1:])):
            raise ConfigError(f"eps-ladder must be strictly decreasing, got {eps}")
        bad = [e for e in self.emit if e not in EMIT_CHOICES]
        if bad:
            raise ConfigError(f"unknown emit target(s) {bad}; choose from {EMIT_CHOICES}")
        for k, v in self.tolerances.items():
            if k not in TOL_KEYS:
                raise ConfigError(f"unknown tolerance {k!r}; choose from {', '.join(TOL_KEYS)}")
            if not (isinstance(v, (int, float)) and v > 0 and math.isfinite(v)):
                raise ConfigError(f"tolerance {k} must be a positive number, got {v!r}")
        return self


_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(RunConfig)}


def parse_tolerance(text: str) -> tuple:
    """Parse ``name=value`` (command line) into ``(name, float)``."""
    name, sep, value = str(text).partition("=")
    if not sep:
        raise ConfigError(f"tolerance must look like name=value, got {text!r}")
    try:
        return name.strip().replace("-", "_"), float(value)
    except ValueError:
        raise ConfigError(f"tolerance {name.strip()} must be a number, got {value.strip()!r}") from None


def _convert(key: str, value: str):
    key = key.strip().replace("-", "_")
    if key.startswith("tol_") or key.startswith("tol."):
        return "tolerances", parse_tolerance(f"{key[4:]}={value}")
    if key not in _FIELD_TYPES or key == "tolerances":
        raise ConfigError(f"unknown key {key!r}")
    v = value.strip()
    if key in ANGLE_KEYS:
        return key, parse_angle(v)
    if key in ("a", "b"):
        try:
            return key, float(v)
        except ValueError:
            raise ConfigError(f"{key} must be a number, got {v!r}") from None
    if key in ("m", "n", "grid"):
        try:
            return key, int(v)
        except ValueError:
            raise ConfigError(f"{key} must be an integer, got {v!r}") from None
    if key == "eps_ladder":
        return key, tuple(parse_angle(p) for p in v.replace(",", " ").split())
    if key == "emit":
        return key, tuple(p.strip() for p in v.split(",") if p.strip())
    if key == "strict":
        if v.lower() in ("1", "true", "yes", "on"):
            return key, True
        if v.lower() in ("0", "false", "no", "off"):
            return key, False
        raise ConfigError(f"strict must be a boolean, got {v!r}")
    return key, v


def load_config(path, overrides: Optional[dict] = None) -> RunConfig:
    """Read a flat ``key = value`` config file; ``overrides`` win over file values.

    Blank lines and ``#`` comments are ignored.  Relative table paths are
    resolved against the config file's directory.

    Raises
    ------
    ConfigError
        With the file name and line number of the offending entry.
    """
    values = {}
    if path is not None:
        try:
            fh = open(path)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
        with fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
                k, v = line.split("=", 1)
                try:
                    k, v = _convert(k, v)
                except ConfigError as exc:
                    raise ConfigError(f"{path}:{lineno}: {exc}") from None
                if k == "tolerances":
                    values.setdefault("tolerances", {})[v[0]] = v[1]
                else:
                    values[k] = v
        if "table" in values and not os.path.isabs(values["table"]):
            values["table"] = os.path.join(os.path.dirname(os.path.abspath(path)), values["table"])
        values.setdefault("name", os.path.splitext(os.path.basename(path))[0])
    for k, v in (overrides or {}).items():
        if k == "tolerances" and v:
            values["tolerances"] = {**values.get("tolerances", {}), **dict(v)}
        elif v is not None:
            values[k] = v
    return RunConfig(**values).validate()


def build_motion(config: RunConfig) -> MotionSpec:
    """Motion described by ``config``.

    Raises
    ------
    ConfigError
        If the motion table cannot be read or parsed.
    """
    if config.family == "piecewise_linear_table":
        try:
            t, th, be = read_table(config.table)
            return table_motion(t, th, be, a=config.a, b=config.b)
        except RollPhaseError:
            raise
        except (OSError, ValueError) as exc:
            raise ConfigError(f"bad motion table: {exc}") from None
    return make_motion(MotionSpec(config.family, beta0=config.beta0, amplitude=config.amplitude,
                                  m=config.m, beta1=config.beta1, n=config.n, a=config.a, b=config.b))


@dataclass
class RouteResult:
    value: Optional[float] = None
    status: str = "ok"

    @property
    def ok(self) -> bool:
        return self.status == "ok"


@dataclass
class Residual:
    a: str
    b: str
    value: float
    tolerance: float
    congruence: bool = False

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tolerance)


@dataclass
class PhaseReport:
    config: RunConfig
    delta_d: float
    delta: float
    routes: dict
    tau: complex
    transport_angle: Optional[float]
    n: int
    I_plus: Optional[int]
    I_minus: Optional[int]
    A_plus: Optional[float]
    A_minus: Optional[float]
    length: Optional[float]
    simple: bool
    residuals: list
    warnings: list
    table: dict = field(repr=False)
    curve: np.ndarray = field(repr=False)
    epsilon: float = 0.0

    @property
    def delta_g(self) -> float:
        return self.routes["line_integral"].value

    @property
    def failures(self) -> list:
        """Routes that crashed and cross-checks over tolerance (skips do not count)."""
        out = [f"{k}: {r.status}" for k, r in self.routes.items() if r.status.startswith("error")]
        out += [f"{r.a} vs {r.b}: {r.value:.3e} > {r.tolerance:.1e}" for r in self.residuals if not r.passed]
        return out


def _attempt(fn):
    try:
        return fn(), None
    except RollPhaseError as exc:
        # a precondition of the route does not hold for this curve
        return None, f"skipped: {type(exc).__name__}"
    except (ArithmeticError, ValueError, FloatingPointError) as exc:
        return None, f"error: {type(exc).__name__}: {exc}"


def _wrap(x: float) -> float:
    return (x + math.pi) % (2 * math.pi) - math.pi


def run(config: RunConfig) -> PhaseReport:
    """Execute every route for one configuration and collect the cross-checks."""
    config.validate()
    motion = build_motion(config)
    eps = min(config.eps_ladder)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        path = sample(motion, config.grid)
        lipschitz_estimate(path)
        ph = phase(path, config.a, config.b)
        routes = {"line_integral": RouteResult(ph.delta_g)}

        reg, why = _attempt(lambda: regularized_phase(path, config.eps_ladder))
        routes["regularized_limit"] = RouteResult(reg.limit if reg else None, why or "ok")

        # index routes live on the clamped curve; extrapolate them in eps like
        # the regularized line integral
        ladder = tuple(config.eps_ladder)[-3:]
        mts, why = _attempt(lambda: [main_theorem_check(path, e) for e in ladder])
        if mts is not None:
            topo = mts[-1].topology
            vals = [m.topology.A_plus - 2 * math.pi * m.topology.I_plus for m in mts]
            routes["area_index"] = RouteResult(richardson_limit(ladder, vals)[0])
        else:
            topo = None
            routes["area_index"] = RouteResult(None, why)

        lifted = horizontal_lift(path)
        routes["fiber_coordinate"] = RouteResult(float(lifted.phi[-1] - lifted.phi[0]))
        tau = holonomy(path, lifted)

        cors, why = _attempt(lambda: [corollary_check(path, e) for e in ladder])
        if cors is not None:
            vals = [2 * math.pi * (c.I_plus - 1) + c.total_curvature for c in cors]
            routes["curvature_corollary"] = RouteResult(richardson_limit(ladder, vals)[0])
        else:
            routes["curvature_corollary"] = RouteResult(None, why)

        transport, why_t = _attempt(lambda: transport_oracle(path))

        reg_path = clamp(path, eps).as_sampled()
        curve = reg_path.gauss()
        cc = ChartedCurve(curve)
        simple = topo.simple if topo is not None else cc.is_simple()
        ip_im, _ = _attempt(lambda: pole_indices(curve))
        al, _ = _attempt(lambda: arclength(path))
        # per-node profiles for the CSV, taken on the regularized curve when
        # the raw one is degenerate
        prof, _ = _attempt(lambda: geodesic_curvature(path))
        if prof is None:
            prof, _ = _attempt(lambda: geodesic_curvature(reg_path))
        s_col = al.s if al is not None else np.full(path.t.size, np.nan)
        nanc = np.full(path.t.size, np.nan)

    residuals = []
    done = {k: r.value for k, r in routes.items() if r.ok}
    for x, y in itertools.combinations(ROUTES, 2):
        if x in done and y in done:
            t = config.tolerance(y) if x == "line_integral" else max(config.tolerance(x), config.tolerance(y))
            residuals.append(Residual(x, y, abs(done[x] - done[y]), t))
    dg = ph.delta_g
    residuals.append(Residual("holonomy", "exp(i line_integral)", abs(tau - cmath.exp(1j * dg)),
                              config.tolerance("holonomy"), True))
    if transport is not None:
        residuals.append(Residual("transport", "line_integral mod 2pi", abs(_wrap(transport - dg)),
                                  config.tolerance("transport"), True))
    msgs = [f"{w.category.__name__}: {w.message}" for w in caught]
    if transport is None:
        msgs.append(f"transport oracle {why_t}")
    table = {
        "t": path.t, "theta": path.theta, "beta": path.beta,
        "running_delta_g": ph.running_delta_g, "phi_fiber": lifted.phi,
        "phi_compass": prof.phi_c if prof is not None else nanc,
        "s": s_col,
        "kappa_g": prof.kappa_g if prof is not None else nanc,
    }
    return PhaseReport(
        config=config, delta_d=ph.delta_d, delta=ph.delta_total, routes=routes, tau=tau,
        transport_angle=transport, n=path.turns,
        I_plus=ip_im[0] if ip_im else None, I_minus=ip_im[1] if ip_im else None,
        A_plus=topo.A_plus if topo is not None else None, A_minus=topo.A_minus if topo is not None else None,
        length=al.L if al is not None else None, simple=bool(simple), residuals=residuals,
        warnings=msgs, table=table, curve=curve, epsilon=eps)


def _fmt(x, digits=12):
    if x is None:
        return "n/a"
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{x:.{digits}g}"


def format_report(rep: PhaseReport) -> str:
    """Aligned human-readable summary followed by ``key=value`` lines."""
    c = rep.config
    lines = [f"rolling disc phase report: {c.name}",
             f"  motion        {c.family}  beta0={_fmt(c.beta0)}  n={c.n}  a={_fmt(c.a)}  b={_fmt(c.b)}  N={c.grid}",
             f"  rotation      delta = delta_d + delta_g = {_fmt(rep.delta_d)} + {_fmt(rep.delta_g)} = {_fmt(rep.delta)}",
             f"  holonomy      tau = {_fmt(rep.tau.real)} {'+' if rep.tau.imag >= 0 else '-'} {_fmt(abs(rep.tau.imag))}i",
             f"  topology      simple={_fmt(rep.simple)}  I+={_fmt(rep.I_plus)}  I-={_fmt(rep.I_minus)}"
             f"  A+={_fmt(rep.A_plus, 9)}  A-={_fmt(rep.A_minus, 9)}  L={_fmt(rep.length, 9)}  eps={_fmt(rep.epsilon)}",
             "", "  geometric phase by route"]
    w = max(len(k) for k in rep.routes)
    for k, r in rep.routes.items():
        lines.append(f"    {k:<{w}}  {_fmt(r.value) if r.ok else r.status}")
    lines.append(f"    {'transport (mod 2pi)':<{w}}  {_fmt(rep.transport_angle)}")
    lines += ["", "  cross-checks"]
    w2 = max(len(f"{r.a} vs {r.b}") for r in rep.residuals)
    for r in rep.residuals:
        tag = "congruence" if r.congruence else "equality"
        lines.append(f"    {r.a + ' vs ' + r.b:<{w2}}  {r.value:10.3e}  tol {r.tolerance:7.1e}  "
                     f"{'pass' if r.passed else 'FAIL'}  ({tag})")
    if rep.warnings:
        lines += ["", "  warnings"] + [f"    {m}" for m in rep.warnings]
    lines += ["", "[values]"]
    kv = {"family": c.family, "n": rep.n, "a": c.a, "b": c.b, "grid": c.grid, "epsilon": rep.epsilon,
          "delta_d": rep.delta_d, "delta_g": rep.delta_g, "delta": rep.delta,
          "tau_re": rep.tau.real, "tau_im": rep.tau.imag, "transport_angle": rep.transport_angle,
          "I_plus": rep.I_plus, "I_minus": rep.I_minus, "A_plus": rep.A_plus, "A_minus": rep.A_minus,
          "L": rep.length, "simple": rep.simple}
    for k, r in rep.routes.items():
        kv[f"route.{k}"] = r.value if r.ok else r.status
    for r in rep.residuals:
        kv[f"residual.{r.a}.{r.b}".replace(" ", "_")] = r.value
    kv["status"] = "ok" if not rep.failures else "fail"
    for k, v in kv.items():
        lines.append(f"{k}={v if isinstance(v, str) else _fmt(v, 17)}")
    return "\n".join(lines) + "\n"


CSV_COLUMNS = ("t", "theta", "beta", "running_delta_g", "phi_fiber", "phi_compass", "s", "kappa_g")


def emit_csv(rep: PhaseReport, path) -> None:
    """Write the per-node table with full-precision decimals."""
    cols = [np.asarray(rep.table[c], dtype=float) for c in CSV_COLUMNS]
    try:
        with open(path, "w", newline="") as fh:
            fh.write(",".join(CSV_COLUMNS) + "\n")
            for row in zip(*cols):
                fh.write(",".join(repr(float(v)) for v in row) + "\n")
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write CSV: {exc.strerror}", str(path)) from None


def _arrowhead(p, d, size):
    d = d / abs(d)
    n = 1j * d
    pts = [p + d * size, p - d * size * 0.6 + n * size * 0.5, p - d * size * 0.6 - n * size * 0.5]
    return " ".join(f"{z.real:.6f},{-z.imag:.6f}" for z in pts)


def emit_svg(curve, path, simple: bool = True, arrows: int = 6) -> None:
    """Draw the curve in the orientation-preserving chart ``(a + ib)/(1 + c)``.

    The north pole sits at the origin and the south pole at infinity.  When
    the curve is simple, the region on its left is shaded.
    """
    pts = np.asarray(curve, dtype=float)
    z = (pts[:, 0] + 1j * pts[:, 1]) / (1 + pts[:, 2])
    R = max(1.0, float(np.max(np.abs(z)))) * 1.15
    size = R * 0.03
    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", width="600", height="600",
                     viewBox=f"{-R:.6f} {-R:.6f} {2 * R:.6f} {2 * R:.6f}")
    ET.SubElement(svg, "title").text = "Gauss curve, stereographic chart centred at the north pole"
    poly = " ".join(f"{c.real:.6f},{-c.imag:.6f}" for c in z)
    if simple:
        ccw = np.sum(z.real * np.roll(z.imag, -1) - np.roll(z.real, -1) * z.imag) > 0
        d = "M " + " L ".join(f"{c.real:.6f},{-c.imag:.6f}" for c in z) + " Z"
        if not ccw:
            # left side is the outside: frame minus the enclosed region
            d = f"M {-R:.6f},{-R:.6f} H {R:.6f} V {R:.6f} H {-R:.6f} Z " + d
        ET.SubElement(svg, "path", d=d, fill="#9ecae1", attrib={"fill-opacity": "0.5", "fill-rule": "evenodd"})
    ET.SubElement(svg, "circle", cx="0", cy="0", r="1", fill="none", stroke="#bbbbbb",
                  attrib={"stroke-width": f"{size * 0.1:.6f}", "stroke-dasharray": f"{size:.6f}"})
    ET.SubElement(svg, "polyline", points=poly, fill="none", stroke="#08519c",
                  attrib={"stroke-width": f"{size * 0.25:.6f}"})
    M = len(z)
    for k in range(arrows):
        i = int(k * M / arrows) % max(M - 1, 1)
        d = z[(i + 1) % M] - z[i]
        if abs(d) > 0:
            ET.SubElement(svg, "polygon", points=_arrowhead(z[i], d, size), fill="#08519c")
    ET.SubElement(svg, "circle", cx="0", cy="0", r=f"{size * 0.4:.6f}", fill="#d62728")
    label = ET.SubElement(svg, "text", x=f"{size * 0.6:.6f}", y=f"{-size * 0.6:.6f}",
                          attrib={"font-size": f"{size * 1.5:.6f}"})
    label.text = "N"
    note = ET.SubElement(svg, "text", x=f"{-R * 0.97:.6f}", y=f"{R * 0.95:.6f}",
                         attrib={"font-size": f"{size * 1.2:.6f}"})
    note.text = "S at infinity"
    try:
        ET.ElementTree(svg).write(path, encoding="utf-8", xml_declaration=True)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write SVG: {exc.strerror}", str(path)) from None


def write_outputs(rep: PhaseReport, out_dir: str) -> list:
    """Write the selected outputs into ``out_dir``; returns the written paths."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    name = rep.config.name
    if "report" in rep.config.emit:
        p = os.path.join(out_dir, f"{name}_report.txt")
        with open(p, "w") as fh:
            fh.write(format_report(rep))
        written.append(p)
    if "csv" in rep.config.emit:
        p = os.path.join(out_dir, f"{name}.csv")
        emit_csv(rep, p)
        written.append(p)
    if "svg" in rep.config.emit:
        p = os.path.join(out_dir, f"{name}.svg")
        emit_svg(rep.curve, p, rep.simple)
        written.append(p)
    return written
