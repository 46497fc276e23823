"""
Command-line entry point.

    hqsf surface   --f1 z --f2 "exp(z)" --g "z^2" --c -1 --u1 0.2:1.2:21 --u2 0:1:21 --out ex1.obj
    hqsf verify    (same inputs; adds finite-difference checks of the forms)
    hqsf rotation  --c 1 --c1 0 --c2 1 --z1 -1/2 --coeffs 2,-1/3 --interval -3:3
    hqsf examples  ex6 --outdir out/

Numeric inputs accept constant expressions in the expression grammar
(``-1/3``, ``3-(1/3)*i``).  ``--config FILE`` reads a JSON object whose keys
are the long flag names with ``_`` for ``-``; flags given on the command
line win.

Exit codes: 0 all checks passed, 2 bad input, 3 a check exceeded its
tolerance, 4 file I/O failed.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
import warnings
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from . import fd
from .catalog import EXAMPLE_NAMES, ROTATION_EXAMPLES, SURFACE_EXAMPLES, RotationExample
from .errors import DegeneratePoint, SurfaceError
from .geometry_core import gauss_map
from .holo_expr import Const, DomainError, ParseError, differentiate, evaluate, parse, to_string
from .hqsf import (HQSFData, defining_residual, evaluate_point, geometry, identity_suite,
                   immersion_generic, qsf_residual)
from .meshio import (GridSpec, SurfaceMesh, VertexSample, export_obj, export_profile_csv,
                     revolve_profile, sample_surface)
from .rotation import (Case, RadialField, RotationParams, ScanEdgeWarning, discriminant,
                       immersion_rotation, profile, scan_profile)
from .rotation import immersion_generic as rotation_immersion_generic

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_IO = 0, 2, 3, 4
MODES = ("surface", "verify", "rotation", "examples")

FD_STEP = 1e-4
MU_FD_STEP = 1e-3
# points closer than this (Newton estimate |W / W'|) to a zero of W are left
# out of the mu-harmonicity check
MU_EXCLUSION = 0.02
ROTATION_PROBE_U2 = 0.7


class InputError(ValueError):
    """Configuration problem reported with exit code 2."""


@dataclass
class RunConfig:
    """Everything one invocation needs.  Field names double as JSON config keys."""

    mode: str = "surface"
    f1: str | None = None
    f2: str | None = None
    g: str | None = None
    c: str | None = None
    c1: str | None = None
    c2: str | None = None
    z1: str | None = None
    coeffs: str = "1,1"
    family: int | None = None
    source: str = "constructive"
    u1: str = "0.2:1.2:21"
    u2: str = "0:1:21"
    interval: str = "-3:3"
    n: int = 4000
    nu1: int = 121
    nu2: int = 37
    name: str | None = None
    tol_residual: float = 1e-8
    tol_identity: float = 1e-9
    tol_fd: float = 1e-5
    out: str | None = None
    profile_out: str | None = None
    outdir: str = "."
    report_json: str | None = None

    def validate(self) -> None:
        if self.mode not in MODES:
            raise InputError(f"mode must be one of {', '.join(MODES)}, got {self.mode!r}")
        for tol in ("tol_residual", "tol_identity", "tol_fd"):
            value = getattr(self, tol)
            if not (isinstance(value, (int, float)) and value > 0):
                raise InputError(f"{tol} must be positive, got {value!r}")
        required = {
            "surface": ("f1", "f2", "g", "c"),
            "verify": ("f1", "f2", "g", "c"),
            "rotation": ("c", "c1", "c2", "z1"),
            "examples": ("name",),
        }[self.mode]
        missing = [k for k in required if getattr(self, k) is None]
        if missing:
            raise InputError(f"{self.mode} needs " + ", ".join("--" + k.replace("_", "-") for k in missing))
        if self.source not in ("constructive", "closed_form"):
            raise InputError(f"source must be constructive or closed_form, got {self.source!r}")
        if self.family not in (None, 1, 2, 3):
            raise InputError(f"family must be 1, 2 or 3, got {self.family!r}")
        if self.n < 2 or self.nu1 < 2 or self.nu2 < 2:
            raise InputError("sample counts must be at least 2")


# ---------------------------------------------------------------------------
# Input helpers
# ---------------------------------------------------------------------------

def constant(value, what: str) -> complex:
    """A number or a constant expression such as ``"-1/3"`` or ``"2+i"``."""
    if isinstance(value, (int, float, complex)) and not isinstance(value, bool):
        return complex(value)
    try:
        e = parse(str(value))
    except ParseError as exc:
        raise InputError(f"{what}: {exc}") from exc
    if not isinstance(e, Const):
        raise InputError(f"{what} must be a constant, got {value!r}")
    return complex(e.value)


def real_constant(value, what: str) -> float:
    v = constant(value, what)
    if v.imag != 0:
        raise InputError(f"{what} must be real, got {value!r}")
    return v.real


def parse_interval(text: str) -> tuple[float, float]:
    parts = str(text).split(":")
    if len(parts) != 2:
        raise InputError(f"interval must look like lo:hi, got {text!r}")
    lo, hi = (real_constant(p, "interval") for p in parts)
    if not lo < hi:
        raise InputError(f"interval must satisfy lo < hi, got {text!r}")
    return lo, hi


def parse_grid(u1: str, u2: str) -> GridSpec:
    try:
        return GridSpec.parse(u1, u2)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# ---------------------------------------------------------------------------
# Checks and reports
# ---------------------------------------------------------------------------

@dataclass
class Check:
    """Running maximum of one residual over the points that entered it."""

    name: str
    tol: float
    value: float = 0.0
    count: int = 0
    skipped: int = 0
    note: str = ""

    def add(self, r: float) -> None:
        self.count += 1
        if math.isnan(self.value) or not r <= self.value:    # a nan sticks
            self.value = r if not math.isnan(self.value) else self.value

    @property
    def passed(self) -> bool:
        return self.count > 0 and self.value <= self.tol

    def line(self) -> str:
        extra = f", {self.skipped} skipped" if self.skipped else ""
        note = f"  [{self.note}]" if self.note else ""
        return (f"{'PASS' if self.passed else 'FAIL'}  {self.name:<24} max {self.value:.3e}"
                f"  tol {self.tol:.0e}  ({self.count} points{extra}){note}")


@dataclass
class Report:
    title: str
    info: list[str] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    artifacts: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def text(self) -> str:
        lines = [self.title, *("  " + s for s in self.info)]
        lines += ["  " + c.line() for c in self.checks]
        lines += [f"  wrote {a}" for a in self.artifacts]
        lines.append(f"  result: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return _jsonable({
            "title": self.title,
            "info": self.info,
            "checks": [dict(asdict(c), passed=c.passed) for c in self.checks],
            "data": self.data,
            "artifacts": self.artifacts,
            "passed": self.passed,
        })


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, complex):
        return [_jsonable(x.real), _jsonable(x.imag)]
    return x


def _matrix_rel(approx: np.ndarray, exact: np.ndarray) -> float:
    return float(np.max(np.abs(approx - exact)) / (np.max(np.abs(exact)) + 1e-300))


# ---------------------------------------------------------------------------
# Surface / verify
# ---------------------------------------------------------------------------

def _wronskian_distance(d: HQSFData, z: complex) -> float:
    w = evaluate(d.wronskian, z)
    dw = evaluate(differentiate(d.wronskian), z)
    return math.inf if dw == 0 else abs(w / dw)


def _form_residuals(d: HQSFData, z: complex, G) -> tuple[float, float, float]:
    """FD first form, second form and third form against the analytic values."""
    def X(a, b):
        return immersion_generic(d, complex(a, b))

    def N(a, b):
        return gauss_map(evaluate(d.g, complex(a, b)))

    X1, X2 = fd.partials(X, z.real, z.imag, FD_STEP)
    N1, N2 = fd.partials(N, z.real, z.imag, FD_STEP)
    first = np.array([[X1 @ X1, X1 @ X2], [X2 @ X1, X2 @ X2]])
    second = -np.array([[N1 @ X1, N1 @ X2], [N2 @ X1, N2 @ X2]])
    third = np.array([[N1 @ N1, N1 @ N2], [N2 @ N1, N2 @ N2]])
    return (_matrix_rel(first, G.first_form),
            _matrix_rel(second, G.second_form),
            _matrix_rel(third, np.diag([G.L11, G.L22])))


def surface_report(d: HQSFData, grid: GridSpec, cfg: RunConfig, forms: bool,
                   title: str) -> tuple[Report, SurfaceMesh]:
    tol_r, tol_i, tol_fd = cfg.tol_residual, cfg.tol_identity, cfg.tol_fd
    relation = "qsf_residual" if d.c == 0 else "defining_residual"
    residual = Check(relation, tol_r)
    points = {}

    def evaluator(u1: float, u2: float) -> VertexSample:
        z = complex(u1, u2)
        rep = evaluate_point(d, z)
        ok = rep.ok
        if ok:
            residual.add(rep.residual)
            ok = rep.residual <= tol_r
            points[z] = rep
        return VertexSample(rep.X, rep.N, ok, {"status": rep.status, "P": rep.P,
                                              "residual": rep.residual})

    mesh = sample_surface(evaluator, grid)

    psi = Check("psi_identity", tol_i)
    lam = Check("lambda_identity", tol_i)
    analytic = Check("analytic_identities", tol_i)
    mu_lap = Check("mu_laplacian", tol_fd)
    form_checks = [Check(n, tol_fd) for n in ("first_form_fd", "second_form_fd", "third_form_fd")]
    H_vals, K_vals = [], []
    for z, rep in points.items():
        H_vals.append(rep.H)
        K_vals.append(rep.K)
        psi.add(abs(rep.psi - rep.X @ rep.N) / (np.linalg.norm(rep.X) + 1e-300))
        lam.add(abs(rep.lam - rep.X @ rep.X) / (abs(rep.lam) + 1e-300))
        ids = identity_suite(d, z, MU_FD_STEP)
        analytic.add(ids.max_analytic())
        if d.c == 0 or d.degenerate_wronskian or _wronskian_distance(d, z) < MU_EXCLUSION:
            mu_lap.skipped += 1
        elif math.isnan(ids.mu_laplacian):
            mu_lap.skipped += 1
        else:
            mu_lap.add(ids.mu_laplacian)
        if forms:
            G = geometry(d, z)
            for chk, r in zip(form_checks, _form_residuals(d, z, G)):
                chk.add(r)

    checks = [residual, analytic, psi, lam]
    if d.c != 0:
        checks.append(mu_lap)
    if forms:
        checks += form_checks

    statuses: dict[str, int] = {}
    for diag, masked in zip(mesh.diagnostics, mesh.mask):
        if masked:
            key = diag["status"] if diag["status"] != "ok" else "residual_gate"
            statuses[key] = statuses.get(key, 0) + 1
    by_status = ", ".join(f"{k} {v}" for k, v in sorted(statuses.items()))
    info = [
        f"f1 = {to_string(d.f1)}   f2 = {to_string(d.f2)}   g = {to_string(d.g)}   c = {d.c:g}",
        f"grid u1 [{grid.u1[0]:g}, {grid.u1[1]:g}] x {grid.nu1}, u2 [{grid.u2[0]:g}, {grid.u2[1]:g}]"
        f" x {grid.nu2}: {len(mesh.vertices)} vertices, {len(mesh.faces)} quads",
        f"masked vertices: {mesh.masked_count}" + (f" ({by_status})" if by_status else ""),
    ]
    if H_vals:
        info.append(f"H in [{min(H_vals):.12g}, {max(H_vals):.12g}]   "
                    f"K in [{min(K_vals):.12g}, {max(K_vals):.12g}]")
    if d.degenerate_wronskian:
        info.append("f1*f2' - f2*f1' vanishes identically; mu undefined")
    data = {
        "f1": to_string(d.f1), "f2": to_string(d.f2), "g": to_string(d.g), "c": d.c,
        "grid": {"u1": list(grid.u1), "u2": list(grid.u2), "nu1": grid.nu1, "nu2": grid.nu2},
        "vertices": len(mesh.vertices), "faces": len(mesh.faces),
        "masked": mesh.masked_count, "masked_by_status": statuses,
        "H_range": [min(H_vals), max(H_vals)] if H_vals else None,
        "K_range": [min(K_vals), max(K_vals)] if K_vals else None,
    }
    return Report(title, info, checks, data), mesh


def _surface_data(f1, f2, g, c) -> HQSFData:
    return HQSFData(parse(f1), parse(f2), parse(g), real_constant(c, "c"))


def cmd_surface(cfg: RunConfig) -> Report:
    d = _surface_data(cfg.f1, cfg.f2, cfg.g, cfg.c)
    grid = parse_grid(cfg.u1, cfg.u2)
    report, mesh = surface_report(d, grid, cfg, forms=cfg.mode == "verify", title=cfg.mode)
    if cfg.out:
        export_obj(mesh, cfg.out, comment=report.info[0])
        report.artifacts.append(cfg.out)
    return report


# ---------------------------------------------------------------------------
# Rotation
# ---------------------------------------------------------------------------

def _rotation_params(cfg: RunConfig) -> RotationParams:
    parts = str(cfg.coeffs).split(",")
    if len(parts) != 2:
        raise InputError(f"coeffs must look like a1,a2, got {cfg.coeffs!r}")
    coeffs = tuple(real_constant(p, "coeffs") for p in parts)
    try:
        return RotationParams(real_constant(cfg.c, "c"), real_constant(cfg.c1, "c1"),
                              real_constant(cfg.c2, "c2"), constant(cfg.z1, "z1"), coeffs)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _scan(sample, interval, n):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ScanEdgeWarning)
        events = scan_profile(sample, interval, n)
    return events, [str(w.message) for w in caught if issubclass(w.category, ScanEdgeWarning)]


def rotation_report(params: RotationParams, family: int | None, cfg: RunConfig,
                    interval: tuple[float, float], title: str):
    tag = discriminant(params)
    rf = RadialField(params, family)
    d = rf.data

    def sample(u1):
        try:
            return profile(rf, u1, cfg.source)
        except ValueError as exc:
            raise InputError(str(exc)) from exc

    # constructive route is the one the checks run on
    relation = Check("qsf_residual" if d.degenerate_wronskian else "defining_residual",
                     cfg.tol_residual)
    symmetry = Check("radial_symmetry", cfg.tol_identity)
    agreement = Check("immersion_agreement", cfg.tol_identity)
    closed = Check("closed_vs_constructive", cfg.tol_identity)
    default_family = {Case.POSITIVE: 1, Case.NEGATIVE: 2, Case.ZERO: 3}[tag.case]
    compare_closed = family in (None, default_family)
    rows = np.linspace(interval[0], interval[1], cfg.nu1)
    row_ok, rows_degenerate = [], 0
    for u1 in rows:
        u1 = float(u1)
        z = complex(u1, 0.0)
        try:
            r = qsf_residual(d, z) if d.degenerate_wronskian else defining_residual(d, z)
        except DegeneratePoint:
            rows_degenerate += 1
            row_ok.append(False)
            continue
        relation.add(r)
        row_ok.append(r <= cfg.tol_residual)
        h, h1, _, h2 = rf.constructive(u1, ROTATION_PROBE_U2)
        symmetry.add(abs(h2) / (abs(h) + abs(h1) + 1e-300))
        Xr = immersion_rotation(rf, u1, ROTATION_PROBE_U2)
        Xg = rotation_immersion_generic(rf, u1, ROTATION_PROBE_U2)
        agreement.add(float(np.max(np.abs(Xr - Xg)) / (np.max(np.abs(Xg)) + 1e-300)))
        if compare_closed:
            hc = rf.closed_form(u1)[0]
            closed.add(abs(hc - h) / (abs(h) + 1e-300))
    if not compare_closed:
        closed.note = f"family {family} differs from the case; informational only"

    profile_rows = [sample(float(u)) for u in rows]
    mesh = revolve_profile(profile_rows, cfg.nu2, row_ok=row_ok)
    events, edge = _scan(sample, interval, cfg.n)

    info = [
        f"case {tag.case.value}   Omega = {tag.omega:.17g}",
        f"c = {params.c:g}  c1 = {params.c1:g}  c2 = {params.c2:g}  z1 = {params.z1:g}"
        f"  coeffs = {params.coeffs[0]:g},{params.coeffs[1]:g}",
        f"f1 = {to_string(d.f1)}",
        f"f2 = {to_string(d.f2)}",
        f"profile source {cfg.source}, interval [{interval[0]:g}, {interval[1]:g}], n = {cfg.n}",
        f"mesh {len(mesh.vertices)} vertices, {len(mesh.faces)} quads, "
        f"{mesh.masked_count} masked ({rows_degenerate} degenerate rows)",
    ]
    if d.degenerate_wronskian:
        info.append("f1*f2' - f2*f1' vanishes identically; the c-term drops out and "
                    "the c = 0 relation is checked instead")
    kinds = {k: sum(e.kind == k for e in events) for k in ("axis_crossing", "profile_singular")}
    info.append(f"events: {kinds['axis_crossing']} axis crossings, "
                f"{kinds['profile_singular']} singular profile points")
    info += ["  " + e.describe() for e in events]
    info += [f"warning: {w}" for w in edge]
    checks = [relation, symmetry, agreement]
    if compare_closed:
        checks.append(closed)
    data = {
        "case": tag.case.value, "omega": tag.omega,
        "params": {"c": params.c, "c1": params.c1, "c2": params.c2, "z1": params.z1,
                   "coeffs": list(params.coeffs)},
        "f1": to_string(d.f1), "f2": to_string(d.f2),
        "degenerate_wronskian": d.degenerate_wronskian,
        "source": cfg.source, "interval": list(interval), "n": cfg.n,
        "events": [asdict(e) for e in events],
        "event_counts": kinds,
        "masked": mesh.masked_count,
    }
    if not compare_closed:
        info.append(closed.note)
        data["closed_vs_constructive"] = closed.note
    return Report(title, info, checks, data), mesh, rf


def _profile_samples(sample, interval, n):
    return [sample(float(u)) for u in np.linspace(interval[0], interval[1], n)]


def cmd_rotation(cfg: RunConfig) -> Report:
    params = _rotation_params(cfg)
    interval = parse_interval(cfg.interval)
    report, mesh, rf = rotation_report(params, cfg.family, cfg, interval, "rotation")
    if cfg.profile_out:
        export_profile_csv(_profile_samples(lambda u: profile(rf, u, cfg.source), interval, cfg.n),
                           cfg.profile_out)
        report.artifacts.append(cfg.profile_out)
    if cfg.out:
        export_obj(mesh, cfg.out, comment=report.info[0])
        report.artifacts.append(cfg.out)
    return report


# ---------------------------------------------------------------------------
# Examples
# ---------------------------------------------------------------------------

def _printed_fixture(ex: RotationExample, cfg: RunConfig, report: Report) -> list:
    samples = _profile_samples(ex.printed_sample, ex.interval, cfg.n)
    events, edge = _scan(ex.printed_sample, ex.interval, cfg.n)
    s0 = ex.printed_sample(0.0)
    kinds = {k: sum(e.kind == k for e in events) for k in ("axis_crossing", "profile_singular")}
    report.info.append(f"printed profile: A(0) = {s0.A:.17g}   B(0) = {s0.B:.17g}")
    report.info.append(f"printed profile events: {kinds['axis_crossing']} axis crossings, "
                       f"{kinds['profile_singular']} singular profile points  ({ex.note})")
    report.info += [f"warning: {w}" for w in edge]
    report.data["printed"] = {"A0": s0.A, "B0": s0.B, "events": [asdict(e) for e in events],
                              "event_counts": kinds, "note": ex.note}
    if ex.at_zero is not None:
        for label, got, want in (("A", s0.A, ex.at_zero[0]), ("B", s0.B, ex.at_zero[1])):
            chk = Check(f"printed_{label}(0)", 1e-12)
            chk.add(abs(got - want))
            chk.note = f"expected {want:.17g}"
            report.checks.append(chk)
    return samples


def cmd_examples(cfg: RunConfig) -> Report:
    name = cfg.name
    if name not in EXAMPLE_NAMES:
        raise InputError(f"unknown example {name!r}; choose from {', '.join(EXAMPLE_NAMES)}")
    outdir = Path(cfg.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    if name in SURFACE_EXAMPLES:
        ex = SURFACE_EXAMPLES[name]
        grid = GridSpec(ex.u1[:2], ex.u2[:2], ex.u1[2], ex.u2[2])
        d = _surface_data(ex.f1, ex.f2, ex.g, ex.c)
        report, mesh = surface_report(d, grid, cfg, forms=True, title=f"examples {name}")
        path = outdir / f"{name}.obj"
        export_obj(mesh, path, comment=f"{name}: {report.info[0]}")
        report.artifacts.append(str(path))
        return report

    ex = ROTATION_EXAMPLES[name]
    report, mesh, rf = rotation_report(ex.params, ex.family, cfg, ex.interval, f"examples {name}")
    obj = outdir / f"{name}.obj"
    csv = outdir / f"{name}_profile.csv"
    printed_csv = outdir / f"{name}_printed_profile.csv"
    export_obj(mesh, obj, comment=f"{name}: {report.info[0]}")
    export_profile_csv(_profile_samples(lambda u: profile(rf, u, cfg.source), ex.interval, cfg.n), csv)
    export_profile_csv(_printed_fixture(ex, cfg, report), printed_csv)
    report.artifacts += [str(obj), str(csv), str(printed_csv)]
    return report


COMMANDS = {"surface": cmd_surface, "verify": cmd_surface,
            "rotation": cmd_rotation, "examples": cmd_examples}


# ---------------------------------------------------------------------------
# Argument handling
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hqsf", description=__doc__.split("\n\n")[0].strip())
    # let "-1/2" and "-3:3" through as values; no option starts with a digit
    parser._negative_number_matcher = re.compile(r"^-\.?\d")
    sub = parser.add_subparsers(dest="mode", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common._negative_number_matcher = parser._negative_number_matcher
    common.add_argument("--config", help="JSON file with RunConfig keys")
    common.add_argument("--report-json", help="also write the report as JSON")
    common.add_argument("--tol-residual", type=float, help="relation residual tolerance (1e-8)")
    common.add_argument("--tol-identity", type=float, help="analytic identity tolerance (1e-9)")
    common.add_argument("--tol-fd", type=float, help="finite-difference tolerance (1e-5)")

    surf = argparse.ArgumentParser(add_help=False)
    surf.add_argument("--f1")
    surf.add_argument("--f2")
    surf.add_argument("--g")
    surf.add_argument("--c", help="real constant")
    surf.add_argument("--u1", help="lo:hi:n (default 0.2:1.2:21)")
    surf.add_argument("--u2", help="lo:hi:n (default 0:1:21)")
    surf.add_argument("--out", help="OBJ output path")

    rot = argparse.ArgumentParser(add_help=False)
    rot.add_argument("--c")
    rot.add_argument("--c1")
    rot.add_argument("--c2")
    rot.add_argument("--z1", help="complex constant, e.g. 3-(1/3)*i")
    rot.add_argument("--coeffs", help="a1,a2 (default 1,1)")
    rot.add_argument("--family", type=int, choices=(1, 2, 3),
                     help="closed-form family for --source closed_form")
    rot.add_argument("--source", choices=("constructive", "closed_form"))
    rot.add_argument("--interval", help="lo:hi (default -3:3)")
    rot.add_argument("--n", type=int, help="profile samples for CSV and scan (default 4000)")
    rot.add_argument("--nu1", type=int, help="mesh rows (default 121)")
    rot.add_argument("--nu2", type=int, help="mesh samples around the axis (default 37)")
    rot.add_argument("--out", help="OBJ output path")
    rot.add_argument("--profile-out", help="profile CSV output path")

    for p in (parser, common, surf, rot):
        p._negative_number_matcher = parser._negative_number_matcher
    for mode, parents, text in (("surface", [common, surf], "sample a surface and check it"),
                                ("verify", [common, surf], "surface plus finite-difference checks"),
                                ("rotation", [common, rot], "classify and sample a rotation surface")):
        sp = sub.add_parser(mode, parents=parents, help=text)
        sp._negative_number_matcher = parser._negative_number_matcher
    ex = sub.add_parser("examples", parents=[common], help="run a built-in parameter set")
    ex.add_argument("name", nargs="?", help=", ".join(EXAMPLE_NAMES))
    ex.add_argument("--outdir", help="directory for artifacts (default .)")
    ex.add_argument("--n", type=int, help="profile samples for CSV and scan (default 4000)")
    ex.add_argument("--nu1", type=int)
    ex.add_argument("--nu2", type=int)
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then the JSON config, then explicit flags."""
    merged: dict = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            try:
                loaded = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InputError(f"config {args.config}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise InputError("config must be a JSON object")
        known = {f.name for f in fields(RunConfig)}
        unknown = sorted(set(loaded) - known)
        if unknown:
            raise InputError(f"unknown config keys: {', '.join(unknown)}")
        if "mode" in loaded and loaded["mode"] != args.mode:
            raise InputError(f"config mode {loaded['mode']!r} conflicts with command {args.mode!r}")
        merged.update(loaded)
    for f in fields(RunConfig):
        value = getattr(args, f.name, None)
        if value is not None:
            merged[f.name] = value
    merged["mode"] = args.mode
    cfg = RunConfig(**merged)
    cfg.validate()
    return cfg


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        report = COMMANDS[cfg.mode](cfg)
        if cfg.report_json:
            with open(cfg.report_json, "w", encoding="utf-8", newline="\n") as fh:
                json.dump(report.to_json(), fh, indent=2, sort_keys=True)
                fh.write("\n")
    except (InputError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SurfaceError, DomainError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(report.text())
    return EXIT_OK if report.passed else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
