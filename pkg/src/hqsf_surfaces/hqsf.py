"""
Surfaces built from three holomorphic functions ``f1, f2, g`` and a real ``c``.

The scalar field is ``h = (|f1|^2 + c|f2|^2)^2 / (1 + |g|^2)`` and the surface
satisfies

    2 psi H + (c psi exp(2 mu) + lam - psi^2) K = 0,
    mu = log(2 |f1 f2' - f2 f1'| / |g'|),

where psi is the support function and lam the squared distance to the origin.
Second derivatives of ``h`` are assembled analytically from the jets of the
holomorphic data; no finite differences enter the residuals except the
harmonicity check of ``mu``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import fd
from .errors import DegeneratePoint, DegenerateWronskian, SingularGaussMap, SurfaceError
from .geometry_core import (
    DEGENERACY_RTOL, ScalarJet2, SurfaceGeometry, gauss_map, immersion, surface_geometry,
)
from .holo_expr import (
    ComplexJet, DomainError, HoloExpr, derivatives, evaluate, parse, real_inner,
)

# |W| below WRONSKIAN_RTOL * (|f1||f2'| + |f2||f1'|) counts as a zero of W
WRONSKIAN_RTOL = 1e-12
_PROBE_POINTS = (0.37 + 0.21j, -0.83 + 0.55j, 1.21 - 0.44j, -0.12 - 1.07j,
                 0.64 + 1.33j, 2.03 + 0.17j, -1.49 - 0.38j)


@dataclass(frozen=True)
class HQSFData:
    """Holomorphic input ``(f1, f2, g, c)`` with cached derivative trees.

    With ``strict=False`` an identically vanishing Wronskian is recorded in
    ``degenerate_wronskian`` instead of raising; ``h`` and the immersion stay
    defined, only ``mu`` does not.
    """

    f1: HoloExpr
    f2: HoloExpr
    g: HoloExpr
    c: float
    strict: bool = field(default=True, compare=False)
    degenerate_wronskian: bool = field(init=False, default=False, compare=False)
    _d_f1: tuple = field(init=False, repr=False, compare=False)
    _d_f2: tuple = field(init=False, repr=False, compare=False)
    _d_g: tuple = field(init=False, repr=False, compare=False)
    wronskian: HoloExpr = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "c", float(self.c))
        d1, d2, dg = derivatives(self.f1), derivatives(self.f2), derivatives(self.g)
        object.__setattr__(self, "_d_f1", d1)
        object.__setattr__(self, "_d_f2", d2)
        object.__setattr__(self, "_d_g", dg)
        object.__setattr__(self, "wronskian", self.f1 * d2[1] - self.f2 * d1[1])
        self._check_wronskian()

    @classmethod
    def from_strings(cls, f1: str, f2: str, g: str, c: float) -> "HQSFData":
        return cls(parse(f1), parse(f2), parse(g), c)

    def _check_wronskian(self):
        seen = 0
        for z in _PROBE_POINTS:
            try:
                j1, j2, _ = self.jets(z)
            except (DomainError, OverflowError, ZeroDivisionError):
                continue
            seen += 1
            if not _wronskian_vanishes(j1, j2):
                return
        if seen:
            if self.strict:
                raise DegenerateWronskian(
                    f"f1*f2' - f2*f1' vanishes identically for f1={self.f1}, f2={self.f2}")
            object.__setattr__(self, "degenerate_wronskian", True)

    def jets(self, z: complex) -> tuple[ComplexJet, ComplexJet, ComplexJet]:
        """Second-order jets of f1, f2 and g at *z*."""
        return tuple(
            ComplexJet(evaluate(e0, z), evaluate(e1, z), evaluate(e2, z))
            for e0, e1, e2 in (self._d_f1, self._d_f2, self._d_g)
        )


def _wronskian(j1: ComplexJet, j2: ComplexJet) -> complex:
    return j1.v * j2.d1 - j2.v * j1.d1


def _wronskian_vanishes(j1: ComplexJet, j2: ComplexJet) -> bool:
    scale = abs(j1.v) * abs(j2.d1) + abs(j2.v) * abs(j1.d1)
    return abs(_wronskian(j1, j2)) <= WRONSKIAN_RTOL * scale


def _modulus_jet(j: ComplexJet) -> tuple[float, float, float, float, float, float]:
    """``|f|^2`` with its gradient and Hessian in (u1, u2)."""
    f, f1, f2 = j.v, j.d1, j.d2
    p = abs(f1) ** 2
    q = real_inner(f, f2)
    return (abs(f) ** 2,
            2 * real_inner(f, f1), 2 * real_inner(f, 1j * f1),
            2 * (p + q), 2 * real_inner(f, 1j * f2), 2 * (p - q))


def _require_gprime(jg: ComplexJet):
    if jg.d1 == 0:
        raise SingularGaussMap(f"g'(z) = 0 (g = {jg.v})")


def _support_parts(d: HQSFData, z: complex):
    j1, j2, jg = d.jets(z)
    _require_gprime(jg)
    m1, m2 = _modulus_jet(j1), _modulus_jet(j2)
    A = tuple(a + d.c * b for a, b in zip(m1, m2))
    mg = _modulus_jet(jg)
    T = (1.0 + mg[0],) + mg[1:]
    return j1, j2, jg, A, T


def _quotient_jet(A, T) -> ScalarJet2:
    """Jet of ``A^2 / T`` from the jets of A and T."""
    a, a1, a2, a11, a12, a22 = A
    t, t1, t2, t11, t12, t22 = T
    h = a * a / t

    def first(ai, ti):
        return 2 * a * ai / t - a * a * ti / t ** 2

    def second(ai, aj, aij, ti, tj, tij):
        return (2 * (ai * aj + a * aij) / t
                - 2 * a * (ai * tj + aj * ti) / t ** 2
                - a * a * tij / t ** 2
                + 2 * a * a * ti * tj / t ** 3)

    return ScalarJet2(
        h=h, g1=first(a1, t1), g2=first(a2, t2),
        h11=second(a1, a1, a11, t1, t1, t11),
        h12=second(a1, a2, a12, t1, t2, t12),
        h22=second(a2, a2, a22, t2, t2, t22),
    )


def build_scalar_field(d: HQSFData, z: complex) -> ScalarJet2:
    """Jet of ``h = (|f1|^2 + c|f2|^2)^2 / (1 + |g|^2)`` at *z*."""
    _, _, _, A, T = _support_parts(d, z)
    return _quotient_jet(A, T)


def gradient_closed(d: HQSFData, z: complex) -> complex:
    """``grad h`` as a complex number from the direct product formula.

    Written as ``(2A/T)(2(f1 conj f1' + c f2 conj f2') - A g conj g' / T)``,
    which stays finite on the zero set of ``A``.
    """
    j1, j2, jg = d.jets(z)
    A = abs(j1.v) ** 2 + d.c * abs(j2.v) ** 2
    T = 1.0 + abs(jg.v) ** 2
    S = j1.v * j1.d1.conjugate() + d.c * j2.v * j2.d1.conjugate()
    return (2 * A / T) * (2 * S - A * jg.v * jg.d1.conjugate() / T)


def mu(d: HQSFData, z: complex) -> float:
    """``log(2 |f1 f2' - f2 f1'| / |g'|)``."""
    j1, j2, jg = d.jets(z)
    _require_gprime(jg)
    if _wronskian_vanishes(j1, j2):
        raise DegenerateWronskian(f"f1*f2' - f2*f1' = 0 at z = {z}")
    return math.log(2 * abs(_wronskian(j1, j2)) / abs(jg.d1))


def immersion_closed(d: HQSFData, z: complex) -> np.ndarray:
    """Surface point directly from ``f1, f2, g`` without forming ``grad h``."""
    j1, j2, jg = d.jets(z)
    _require_gprime(jg)
    g, gp = jg.v, jg.d1
    A = abs(j1.v) ** 2 + d.c * abs(j2.v) ** 2
    T = 1.0 + abs(g) ** 2
    cross = j1.v * (j1.d1 / gp).conjugate() + d.c * j2.v * (j2.d1 / gp).conjugate()
    planar = (2 * A / T ** 2) * (2 * T * cross - g * A)
    F = j1.v.conjugate() * j1.d1 + d.c * j2.v.conjugate() * j2.d1
    R = (A / T ** 2) * (4 * T * real_inner(1, F * g / gp) - (3 * abs(g) ** 2 + 1) * A)
    w = planar - (2 * R / T) * g
    return np.array([w.real, w.imag, -2 * R / T])


def immersion_generic(d: HQSFData, z: complex) -> np.ndarray:
    """Surface point through the general Gauss-map representation."""
    _, _, jg = d.jets(z)
    return immersion(jg, build_scalar_field(d, z))


def geometry(d: HQSFData, z: complex, rtol: float = DEGENERACY_RTOL) -> SurfaceGeometry:
    _, _, jg = d.jets(z)
    return surface_geometry(jg, build_scalar_field(d, z), rtol)


def _residual(G: SurfaceGeometry, hj: ScalarJet2, jg: ComplexJet, c_term: float,
              conditioned: bool = False) -> float:
    """``|2 psi H + (c_term + lam - psi^2) K|`` relative to the size of its terms.

    By default the scale is ``|2 psi H| + |c_term K| + |(lam - psi^2) K| + 1e-30``.
    With ``conditioned`` the scale is the size of the elementary products
    instead: H and lam are themselves differences of larger quantities, so it
    expands them as ``|2 psi| (T |lap h| / |g'|^2 + 4 |R|) / |P|`` and
    ``(|grad h|^2 / |g'|^2 + 4 |R h| / T + psi^2) |K|``.  Near points where
    the three terms all vanish this keeps the residual a measure of roundoff
    rather than of cancellation.
    """
    terms = (2 * G.psi * G.H, c_term * G.K, (G.lam - G.psi ** 2) * G.K)
    if not conditioned:
        return abs(sum(terms)) / (sum(map(abs, terms)) + 1e-30)
    gp2 = abs(jg.d1) ** 2
    T = 1.0 + abs(jg.v) ** 2
    R = real_inner(hj.grad, jg.v / jg.d1) - hj.h
    scale = (abs(2 * G.psi) * (T * abs(hj.laplacian) / gp2 + 4 * abs(R)) / abs(G.P)
             + abs(terms[1])
             + (abs(hj.grad) ** 2 / gp2 + 4 * abs(R * hj.h) / T + G.psi ** 2) * abs(G.K))
    return abs(sum(terms)) / (scale + 1e-300)


def _relation(d: HQSFData, z: complex, rtol: float, with_c: bool, conditioned: bool) -> float:
    _, _, jg = d.jets(z)
    hj = build_scalar_field(d, z)
    G = surface_geometry(jg, hj, rtol)
    c_term = d.c * G.psi * math.exp(2 * mu(d, z)) if with_c and d.c != 0 else 0.0
    return _residual(G, hj, jg, c_term, conditioned)


def defining_residual(d: HQSFData, z: complex, rtol: float = DEGENERACY_RTOL,
                      conditioned: bool = False) -> float:
    """Relative residual of ``2 psi H + (c psi e^{2 mu} + lam - psi^2) K``.

    See :func:`_residual` for the two normalizations.  With ``c == 0`` the mu
    term is absent and W may vanish.
    """
    return _relation(d, z, rtol, with_c=True, conditioned=conditioned)


def qsf_residual(d: HQSFData, z: complex, rtol: float = DEGENERACY_RTOL,
                 conditioned: bool = False) -> float:
    """Residual of the ``c = 0`` relation ``2 psi H + (lam - psi^2) K = 0``."""
    return _relation(d, z, rtol, with_c=False, conditioned=conditioned)


def _rel(lhs: float, rhs: float, *terms: float) -> float:
    scale = sum(abs(t) for t in terms) + abs(rhs) + 1e-300
    return abs(lhs - rhs) / scale


@dataclass(frozen=True)
class IdentityReport:
    """Relative residuals of the analytic identities at one point.

    ``mu_laplacian`` is the absolute finite-difference Laplacian of mu
    (``nan`` when mu is undefined near the point).
    """

    gauss_term: float       # T lap T - |grad T|^2 = 4 |g'|^2
    support_term: float     # A lap A - |grad A|^2 = 4c |W|^2
    harmonic_term: float    # (A lap A - |grad A|^2) / |g'|^2 = c e^{2 mu}
    log_laplacian: float    # h lap h - |grad h|^2 split into A and T parts
    gradient: float         # jet gradient of h vs the product formula
    mu_laplacian: float

    def max_analytic(self) -> float:
        return max(self.gauss_term, self.support_term, self.harmonic_term,
                   self.log_laplacian, self.gradient)


def identity_suite(d: HQSFData, z: complex, fd_step: float = 1e-3) -> IdentityReport:
    j1, j2, jg, A, T = _support_parts(d, z)
    gp2 = abs(jg.d1) ** 2
    a, lapA, gradA2 = A[0], A[3] + A[5], A[1] ** 2 + A[2] ** 2
    t, lapT, gradT2 = T[0], T[3] + T[5], T[1] ** 2 + T[2] ** 2
    W2 = abs(_wronskian(j1, j2)) ** 2

    # lap A is a sum of Hessian entries that cancel; scale by the entries
    a_lap_scale = abs(a) * (abs(A[3]) + abs(A[5]))
    gauss = _rel(t * lapT - gradT2, 4 * gp2, t * lapT, gradT2)
    support = _rel(a * lapA - gradA2, 4 * d.c * W2, a_lap_scale, gradA2)
    c_e2mu = 4 * d.c * W2 / gp2
    harmonic = _rel((a * lapA - gradA2) / gp2, c_e2mu, a_lap_scale / gp2, gradA2 / gp2)

    hj = _quotient_jet(A, T)
    lhs = hj.h * hj.laplacian - abs(hj.grad) ** 2
    pa = 2 * a * a / t ** 2 * (a * lapA - gradA2)
    pt = a ** 4 / t ** 4 * (t * lapT - gradT2)
    log_lap = _rel(lhs, pa - pt, abs(hj.h) * (abs(hj.h11) + abs(hj.h22)), abs(hj.grad) ** 2, pa, pt)

    gc = gradient_closed(d, z)
    grad_res = abs(hj.grad - gc) / (abs(gc) + abs(hj.grad) + 1e-300)

    try:
        lap_mu = abs(fd.laplacian(lambda x, y: mu(d, complex(x, y)),
                                  z.real, z.imag, fd_step))
    except (SurfaceError, DomainError, ValueError):
        lap_mu = float("nan")
    return IdentityReport(gauss, support, harmonic, log_lap, grad_res, lap_mu)


@dataclass
class PointReport:
    """Everything the mesh and report layers need at one grid vertex."""

    z: complex
    status: str                      # ok | singular | degenerate | wronskian | domain
    X: np.ndarray | None = None
    N: np.ndarray | None = None
    H: float = math.nan
    K: float = math.nan
    P: float = math.nan
    psi: float = math.nan
    lam: float = math.nan
    residual: float = math.nan
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def evaluate_point(d: HQSFData, z: complex, rtol: float = DEGENERACY_RTOL) -> PointReport:
    """Geometry plus defining residual, with failures recorded instead of raised."""
    try:
        return _evaluate_point(d, z, rtol)
    except OverflowError as exc:
        return PointReport(z, "domain", message=f"overflow: {exc}")


def _evaluate_point(d: HQSFData, z: complex, rtol: float) -> PointReport:
    try:
        j1, j2, jg = d.jets(z)
    except (DomainError, OverflowError, ZeroDivisionError) as exc:
        return PointReport(z, "domain", message=str(exc))
    N = gauss_map(jg)
    try:
        X = immersion_generic(d, z)
    except SingularGaussMap as exc:
        return PointReport(z, "singular", N=N, message=str(exc))
    hj = build_scalar_field(d, z)
    try:
        G = surface_geometry(jg, hj, rtol)
    except DegeneratePoint as exc:
        return PointReport(z, "degenerate", X=X, N=N, P=exc.P, message=str(exc))
    rep = PointReport(z, "ok", X=G.X, N=G.N, H=G.H, K=G.K, P=G.P, psi=G.psi, lam=G.lam)
    if d.c != 0 and _wronskian_vanishes(j1, j2):
        rep.status = "wronskian"
        rep.message = f"f1*f2' - f2*f1' = 0 at z = {z}"
        return rep
    c_term = 0.0 if d.c == 0 else d.c * G.psi * math.exp(2 * mu(d, z))
    rep.residual = _residual(G, hj, jg, c_term)
    return rep
