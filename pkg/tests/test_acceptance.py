"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""
import math
import time

import numpy as np

from hqsf_surfaces import fd
from hqsf_surfaces.catalog import ROTATION_EXAMPLES, SURFACE_EXAMPLES
from hqsf_surfaces.cli import main
from hqsf_surfaces.errors import DegeneratePoint
from hqsf_surfaces.geometry_core import gauss_map
from hqsf_surfaces.holo_expr import (
    derivatives, differentiate, eval_jet, evaluate, parse, real_inner, to_string,
)
from hqsf_surfaces.hqsf import (
    HQSFData, defining_residual, evaluate_point, geometry, identity_suite,
    immersion_closed, immersion_generic, qsf_residual,
)
from hqsf_surfaces import rotation as rot
from hqsf_surfaces.rotation import Case, RadialField, RotationParams, sample_params

from helpers import derivative_mismatch, random_corpus, random_disk_points

SPHERE_F = 2 ** -0.25
ZERO_CASE = RotationParams(-1, 0, -2, 1, (1, 0.5))


def example(name) -> HQSFData:
    ex = SURFACE_EXAMPLES[name]
    return HQSFData.from_strings(ex.f1, ex.f2, ex.g, ex.c)


def grid_points(name, n=21):
    ex = SURFACE_EXAMPLES[name]
    for u1 in np.linspace(ex.u1[0], ex.u1[1], n):
        for u2 in np.linspace(ex.u2[0], ex.u2[1], n):
            yield complex(u1, u2)


def regular_reports(name):
    d = example(name)
    for z in grid_points(name):
        rep = evaluate_point(d, z)
        if rep.ok:
            yield z, rep


# -- 1 ---------------------------------------------------------------------

def test_unit_sphere_end_to_end(verdict):
    d = HQSFData(parse(repr(SPHERE_F)), parse(f"{SPHERE_F!r}*z"), parse("z"), 1)
    t0 = time.perf_counter()
    reps = [evaluate_point(d, complex(a, b))
            for a in np.linspace(-1, 1, 21) for b in np.linspace(-1, 1, 21)]
    elapsed = time.perf_counter() - t0
    assert all(r.ok for r in reps)
    radius = max(abs(np.linalg.norm(r.X) - 1) for r in reps)
    curv = max(max(abs(r.H + 1), abs(r.K - 1)) for r in reps)
    support = max(max(abs(r.psi - 1), abs(r.lam - 1)) for r in reps)
    resid = max(r.residual for r in reps)
    ok = radius <= 1e-12 and curv <= 1e-10 and support <= 1e-10 and resid <= 1e-12 and elapsed < 1
    assert verdict("[1] unit sphere", ok,
                   f"||X|-1| {radius:.1e}, H/K {curv:.1e}, psi/lambda {support:.1e}, "
                   f"residual {resid:.1e}, {elapsed:.2f} s for 441 points")


# -- 2 ---------------------------------------------------------------------

def test_relation_on_example_grids(verdict):
    parts, worst = [], 0.0
    for name in sorted(SURFACE_EXAMPLES):
        d = example(name)
        counted, masked = 0, {}
        for z in grid_points(name):
            rep = evaluate_point(d, z)
            if rep.ok:
                counted += 1
                worst = max(worst, rep.residual)
            else:
                masked[rep.status] = masked.get(rep.status, 0) + 1
        assert counted > 0
        parts.append(f"{name} {counted} ok" + "".join(f", {k} {v}" for k, v in sorted(masked.items())))
    assert verdict("[2] relation on 21x21 example grids", worst <= 1e-8,
                   f"max residual {worst:.1e}; " + "; ".join(parts))


# -- 3 ---------------------------------------------------------------------

def test_closed_immersion_matches_generic(verdict):
    rng = np.random.default_rng(2026)
    worst = 0.0
    for name, ex in sorted(SURFACE_EXAMPLES.items()):
        d = example(name)
        found = 0
        while found < 100:
            z = complex(rng.uniform(*ex.u1[:2]), rng.uniform(*ex.u2[:2]))
            if not evaluate_point(d, z).ok:
                continue
            Xc, Xg = immersion_closed(d, z), immersion_generic(d, z)
            worst = max(worst, float(np.max(np.abs(Xc - Xg)) / np.max(np.abs(Xg))))
            found += 1
    assert verdict("[3] closed vs generic immersion", worst <= 1e-10,
                   f"max relative difference {worst:.1e} over 5 x 100 regular points")


# -- 4 ---------------------------------------------------------------------

def test_support_and_squared_norm_identities(verdict):
    worst, count = 0.0, 0
    for name in sorted(SURFACE_EXAMPLES):
        for _, rep in regular_reports(name):
            worst = max(worst,
                        abs(rep.psi - rep.X @ rep.N) / np.linalg.norm(rep.X),
                        abs(rep.lam - rep.X @ rep.X) / abs(rep.lam))
            count += 1
    assert verdict("[4] psi = <X,N>, lambda = <X,X>", worst <= 1e-9,
                   f"max relative error {worst:.1e} at {count} regular points")


# -- 5 ---------------------------------------------------------------------

def _rel(approx, exact):
    return float(np.max(np.abs(approx - exact)) / np.max(np.abs(exact)))


def test_differential_identities(verdict):
    analytic = forms_err = third_err = mu_err = 0.0
    mu_count = mu_skipped = 0
    for name in sorted(SURFACE_EXAMPLES):
        d = example(name)
        dW = differentiate(d.wronskian)
        for z in grid_points(name, 11):
            if not evaluate_point(d, z).ok:
                continue
            ids = identity_suite(d, z)
            analytic = max(analytic, ids.max_analytic())
            w, w1 = evaluate(d.wronskian, z), evaluate(dW, z)
            if w1 != 0 and abs(w / w1) < 0.02 or math.isnan(ids.mu_laplacian):
                mu_skipped += 1
            else:
                mu_err = max(mu_err, ids.mu_laplacian)
                mu_count += 1

            G = geometry(d, z)
            X1, X2 = fd.partials(lambda a, b: immersion_generic(d, complex(a, b)), z.real, z.imag)
            N1, N2 = fd.partials(lambda a, b: gauss_map(eval_jet(d.g, complex(a, b))),
                                 z.real, z.imag)
            first = np.array([[X1 @ X1, X1 @ X2], [X2 @ X1, X2 @ X2]])
            second = -np.array([[N1 @ X1, N1 @ X2], [N2 @ X1, N2 @ X2]])
            third = np.array([[N1 @ N1, N1 @ N2], [N2 @ N1, N2 @ N2]])
            forms_err = max(forms_err, _rel(first, G.first_form), _rel(second, G.second_form))
            third_err = max(third_err, _rel(third, np.diag([G.L11, G.L22])))
    ok = analytic <= 1e-9 and forms_err <= 1e-5 and third_err <= 1e-5 and mu_err <= 1e-5
    assert mu_count > 0
    assert verdict("[5] differential identities", ok,
                   f"analytic {analytic:.1e}, first/second forms FD {forms_err:.1e}, "
                   f"third form FD {third_err:.1e}, mu Laplacian {mu_err:.1e} "
                   f"({mu_count} points, {mu_skipped} near W = 0 skipped)")


# -- 6 ---------------------------------------------------------------------

def _ode_residual(p, f1, z):
    f, d1, d2 = (evaluate(e, z) for e in derivatives(f1))
    terms = (p.c * d2, (p.c * p.c1 + p.c2) * d1, (p.c1 * p.c2 - abs(p.z1) ** 2) * f)
    return abs(terms[0] - terms[1] + terms[2]) / sum(map(abs, terms))


def _rotation_condition(p, f1, f2, z):
    a = [evaluate(e, z) for e in derivatives(f1)[:2]]
    b = [evaluate(e, z) for e in derivatives(f2)[:2]]
    t1, t2 = real_inner(a[0], 1j * a[1]), p.c * real_inner(b[0], 1j * b[1])
    return abs(t1 + t2) / (abs(a[0] * a[1]) + abs(p.c * b[0] * b[1]))


def _cancellation(rf, z):
    # |f1|^2 + c|f2|^2 loses this factor of relative accuracy to cancellation
    j1, j2, _ = rf.data.jets(z)
    big = abs(j1.v) ** 2 + abs(rf.data.c) * abs(j2.v) ** 2
    return big / abs(abs(j1.v) ** 2 + rf.data.c * abs(j2.v) ** 2)


def test_rotation_consistency(verdict):
    rng = np.random.default_rng(7)
    ode = cond_r = radial = raw = imm = rel = 0.0
    n_params = 0
    for case in Case:
        params = [sample_params(case, rng) for _ in range(10)]
        if case is Case.ZERO:
            params[0] = ZERO_CASE
        for p in params:
            assert rot.discriminant(p).case is case
            n_params += 1
            f1, f2 = rot.solve_profile_functions(p)
            rf = RadialField(p)
            for u1, u2 in rng.uniform(-1.5, 1.5, (10, 2)):
                z = complex(u1, u2)
                ode = max(ode, _ode_residual(p, f1, z))
                cond_r = max(cond_r, _rotation_condition(p, f1, f2, z))
                h, h1, _, h2 = rf.constructive(u1, u2)
                cond = max(_cancellation(rf, z), _cancellation(rf, complex(u1, 0)))
                radial = max(radial, abs(h2) / (max(1.0, abs(h), abs(h1)) * cond))
                raw = max(raw, abs(h2) / max(1.0, abs(h), abs(h1)))
                X, Y = rot.immersion_rotation(rf, u1, u2), rot.immersion_generic(rf, u1, u2)
                imm = max(imm, float(np.max(np.abs(X - Y)) / max(1.0, np.max(np.abs(Y)))))
                try:
                    r = (qsf_residual(rf.data, z) if rf.data.degenerate_wronskian
                         else defining_residual(rf.data, z))
                except DegeneratePoint:
                    continue
                rel = max(rel, r)
    ok = ode <= 1e-12 and cond_r <= 1e-12 and radial <= 1e-12 and imm <= 1e-10 and rel <= 1e-8
    assert verdict("[6] rotation consistency", ok,
                   f"{n_params} parameter sets: ODE {ode:.1e}, rotation condition {cond_r:.1e}, "
                   f"h_2 {radial:.1e} per unit cancellation ({raw:.1e} raw), immersions {imm:.1e}, "
                   f"relation {rel:.1e}")


# -- 7 ---------------------------------------------------------------------

def test_fixtures(verdict):
    s = ROTATION_EXAMPLES["ex12"].printed_sample(0.0)
    errA, errB = abs(s.A - 2 / 81), abs(s.B + 4 / 81)
    events = rot.singularity_scan(ROTATION_EXAMPLES["ex6"].params, (-3, 3), 4000)
    crossings = [e.u1 for e in events if e.kind == "axis_crossing"]
    ok = errA <= 1e-12 and errB <= 1e-12 and len(crossings) == 2
    assert verdict("[7] fixtures", ok,
                   f"ex12 A(0) err {errA:.1e}, B(0) err {errB:.1e}; ex6 axis crossings "
                   f"{len(crossings)} at " + ", ".join(f"{u:.4f}" for u in crossings))


# -- 8 ---------------------------------------------------------------------

def test_expression_corpus(verdict):
    rng = np.random.default_rng(8)
    worst, round_trip = 0.0, 0
    corpus = random_corpus()
    for text in corpus:
        e = parse(text)
        round_trip += parse(to_string(e)) == e and to_string(parse(to_string(e))) == to_string(e)
        _, d1, d2 = derivatives(e)
        for z in random_disk_points(rng, 5):
            worst = max(worst, derivative_mismatch(e, evaluate(d1, z), evaluate(d2, z), z))
    ok = worst <= 1e-7 and round_trip == len(corpus)
    assert verdict("[8] expression corpus", ok,
                   f"max derivative FD mismatch {worst:.1e}; exact round trips "
                   f"{round_trip}/{len(corpus)}")


# -- 9 ---------------------------------------------------------------------

def test_cli_determinism(tmp_path, verdict, capsys):
    runs = {
        "surface": ["surface", "--f1", "z", "--f2", "exp(z)", "--g", "z^2", "--c", "-1",
                    "--out", "{d}/s.obj"],
        "rotation": ["rotation", "--c", "1", "--c1", "0", "--c2", "1", "--z1", "-1/2",
                     "--coeffs", "2,-1/3", "--n", "400", "--nu1", "41", "--nu2", "13",
                     "--out", "{d}/r.obj", "--profile-out", "{d}/r.csv"],
        "examples": ["examples", "ex7", "--n", "400", "--nu1", "41", "--nu2", "13",
                     "--outdir", "{d}"],
    }
    compared = 0
    for argv in runs.values():
        outputs = []
        for k in (1, 2):
            d = tmp_path / f"{argv[0]}{k}"
            d.mkdir()
            assert main([a.format(d=d) for a in argv]) == 0
            outputs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
        assert outputs[0] and outputs[0].keys() == outputs[1].keys()
        for name in outputs[0]:
            assert outputs[0][name] == outputs[1][name], name
            compared += 1
    capsys.readouterr()
    assert verdict("[9] CLI determinism", True,
                   f"{compared} OBJ/CSV files byte-identical across two runs of "
                   + ", ".join(runs))
