import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from hqsf_surfaces import fd
from hqsf_surfaces.catalog import SURFACE_EXAMPLES
from hqsf_surfaces.errors import DegeneratePoint, DegenerateWronskian, SurfaceError
from hqsf_surfaces.geometry_core import intermediate_forms
from hqsf_surfaces.holo_expr import DomainError, derivatives, evaluate, parse, real_inner
from hqsf_surfaces.hqsf import (
    HQSFData, build_scalar_field, defining_residual, evaluate_point, geometry,
    gradient_closed, identity_suite, immersion_closed, immersion_generic, mu, qsf_residual,
)

SPHERE_F = 2 ** -0.25
HOLO = ["z", "exp(z)", "z^2+1", "cosh(z)", "sin(z)", "z^3-z", "exp(-z)", "1/(z+3)"]
G_CHOICES = ["z", "z^2", "exp(z)", "z^3+2*z", "sin(z)"]


def sphere() -> HQSFData:
    return HQSFData(parse(repr(SPHERE_F)), parse(f"{SPHERE_F!r}*z"), parse("z"), 1)


def example(name) -> HQSFData:
    ex = SURFACE_EXAMPLES[name]
    return HQSFData.from_strings(ex.f1, ex.f2, ex.g, ex.c)


def _well_separated(d, z, tol=1e-2):
    """|g'| and, for c != 0, the Wronskian bounded away from zero at *z*."""
    j1, j2, jg = d.jets(z)
    if abs(jg.d1) < tol:
        return False
    if d.c == 0:
        return True
    W = j1.v * j2.d1 - j2.v * j1.d1
    return abs(W) >= tol * (abs(j1.v * j2.d1) + abs(j2.v * j1.d1))


def _regular_geometry(d, z, cond=1e-3):
    try:
        G = geometry(d, z)
    except (SurfaceError, DomainError):
        return None
    f = intermediate_forms(d.jets(z)[2], build_scalar_field(d, z))
    if abs(f.P) < cond * (1 + f.A1 ** 2 + f.A2 ** 2):
        return None
    return G


# -- the scalar field ------------------------------------------------------

def test_sphere_field_is_closed_form():
    d = sphere()
    for z in [0, 0.3 + 0.4j, -0.9 + 0.2j]:
        j = build_scalar_field(d, z)
        assert j.h == pytest.approx((1 + abs(z) ** 2) / 2, abs=1e-15)
        assert (j.g1, j.g2) == pytest.approx((z.real, z.imag), abs=1e-15)
        assert (j.h11, j.h12, j.h22) == pytest.approx((1, 0, 1), abs=1e-15)


@pytest.mark.parametrize("name", sorted(SURFACE_EXAMPLES))
def test_scalar_field_matches_finite_differences(name):
    d = example(name)
    rng = np.random.default_rng(3)
    for _ in range(5):
        u1, u2 = rng.uniform(0.25, 1.0), rng.uniform(0.1, 0.9)
        j = build_scalar_field(d, complex(u1, u2))

        def h(a, b):
            return build_scalar_field(d, complex(a, b)).h

        def grad(a, b):
            g = build_scalar_field(d, complex(a, b))
            return np.array([g.g1, g.g2])

        g1, g2 = fd.partials(h, u1, u2)
        (h11, h21), (h12, h22) = fd.partials(grad, u1, u2)
        scale = max(1.0, abs(j.h), abs(j.grad), abs(j.h11) + abs(j.h22) + abs(j.h12))
        assert abs(g1 - j.g1) + abs(g2 - j.g2) <= 1e-8 * scale
        assert max(abs(h11 - j.h11), abs(h12 - j.h12), abs(h21 - j.h12),
                   abs(h22 - j.h22)) <= 1e-8 * scale
        assert gradient_closed(d, complex(u1, u2)) == pytest.approx(j.grad, rel=1e-12)


@given(st.sampled_from(HOLO), st.complex_numbers(max_magnitude=1.5, allow_nan=False))
def test_squared_modulus_rules(text, z):
    # derivatives of |f|^2 through <f, f'> and <f, f''>
    e = parse(text)
    f, fp, fpp = (evaluate(x, z) for x in derivatives(e))

    def mod(a, b):
        return abs(evaluate(e, complex(a, b))) ** 2

    g1, g2 = fd.partials(mod, z.real, z.imag)
    scale = max(1.0, abs(f) ** 2, abs(f * fp), abs(fp) ** 2 + abs(f * fpp))
    assert abs(g1 - 2 * real_inner(f, fp)) <= 1e-8 * scale
    assert abs(g2 - 2 * real_inner(f, 1j * fp)) <= 1e-8 * scale
    lap = fd.laplacian(mod, z.real, z.imag)
    assert abs(lap - 4 * abs(fp) ** 2) <= 1e-5 * scale


# -- the defining relation -------------------------------------------------

@pytest.mark.parametrize("name", sorted(SURFACE_EXAMPLES))
def test_examples_satisfy_relation_and_identities(name):
    d = example(name)
    ex = SURFACE_EXAMPLES[name]
    for u1 in np.linspace(*ex.u1[:2], 6):
        for u2 in np.linspace(*ex.u2[:2], 6):
            z = complex(u1, u2)
            rep = evaluate_point(d, z)
            if not rep.ok:
                continue
            assert rep.residual <= 1e-12
            ids = identity_suite(d, z)
            assert ids.max_analytic() <= 1e-12
            assert ids.mu_laplacian <= 1e-5


@given(st.sampled_from(HOLO), st.sampled_from(HOLO), st.sampled_from(G_CHOICES),
       st.floats(-3, 3).filter(lambda c: abs(c) > 0.05),
       st.complex_numbers(max_magnitude=1.2, allow_nan=False))
@settings(max_examples=150, deadline=None)
def test_relation_holds_for_any_holomorphic_data(f1, f2, g, c, z):
    assume(f1 != f2)
    try:
        d = HQSFData.from_strings(f1, f2, g, c)
    except DegenerateWronskian:
        assume(False)
    G = _regular_geometry(d, z)
    assume(G is not None)
    try:
        # arbitrary data can make all three terms vanish together; measure
        # against the elementary products there
        r = defining_residual(d, z, conditioned=True)
    except SurfaceError:
        assume(False)
    assert r <= 1e-9
    assert np.max(np.abs(immersion_closed(d, z) - immersion_generic(d, z))) <= \
        1e-10 * np.max(np.abs(immersion_generic(d, z)))


@given(st.sampled_from(HOLO), st.sampled_from(HOLO), st.sampled_from(G_CHOICES),
       st.floats(-3, 3), st.complex_numbers(max_magnitude=1.2, allow_nan=False))
@settings(max_examples=100, deadline=None)
def test_analytic_identities(f1, f2, g, c, z):
    assume(f1 != f2)
    try:
        d = HQSFData.from_strings(f1, f2, g, c)
        assume(_well_separated(d, z))
        ids = identity_suite(d, z)
    except (DegenerateWronskian, SurfaceError, DomainError):
        assume(False)
    assert ids.gauss_term <= 1e-12
    assert ids.gradient <= 1e-12
    assert ids.max_analytic() <= 1e-9


def test_mu_is_the_log_of_the_ratio():
    d = example("ex1")
    z = 0.5 + 0.5j
    W = evaluate(d.wronskian, z)
    assert mu(d, z) == pytest.approx(math.log(2 * abs(W) / abs(2 * z)))


def test_c_zero_is_the_qsf_relation():
    d = HQSFData.from_strings("z", "exp(z)", "z^2", 0)
    for z in [0.5 + 0.2j, 0.9 - 0.3j]:
        assert qsf_residual(d, z) <= 1e-12
        assert defining_residual(d, z) == qsf_residual(d, z)


# -- failures and masks ----------------------------------------------------

def test_identical_functions_have_degenerate_wronskian():
    with pytest.raises(DegenerateWronskian):
        HQSFData.from_strings("z", "z", "z", 1)
    d = HQSFData(parse("z"), parse("2*z"), parse("z"), 1, strict=False)
    assert d.degenerate_wronskian
    with pytest.raises(DegenerateWronskian):
        mu(d, 0.5 + 0j)


def test_point_statuses():
    d = example("ex1")
    assert evaluate_point(d, 0).status == "singular"          # g' = 0
    assert evaluate_point(d, 1).status == "wronskian"         # W = (z - 1) e^z
    assert evaluate_point(d, 0.5 + 0.5j).status == "ok"
    d0 = HQSFData(parse("0"), parse("0"), parse("z"), 1, strict=False)
    rep = evaluate_point(d0, 0.3 + 0.1j)
    assert rep.status == "degenerate" and rep.P == 0


def test_domain_status_at_poles():
    d = HQSFData.from_strings("1/(z-0.5)", "z", "z", 1)
    assert evaluate_point(d, 0.5).status == "domain"


def test_geometry_raises_at_degenerate_points():
    d0 = HQSFData(parse("0"), parse("0"), parse("z"), 1, strict=False)
    with pytest.raises(DegeneratePoint):
        geometry(d0, 0.2 + 0.2j)
