"""
Rotation surfaces of the family.

With ``g = exp(z)`` the surface is rotational exactly when ``h`` depends on
``u1`` only.  That forces ``f1`` to solve the constant-coefficient ODE

    c f1'' - (c c1 + c2) f1' + (c1 c2 - |z1|^2) f1 = 0

and ``f2 = i (c1 f1 - f1') / conj(z1)``.  The sign of
``Omega = (c c1 - c2)^2 + 4 c |z1|^2`` selects the form of ``f1``.  From ``h``
the profile curve is

    A = ((1 - e^{2u}) h' + 2 e^{2u} h) / (e^u (1 + e^{2u})),
    B = -2 (h' - h) / (1 + e^{2u}),

and the surface is ``(A cos u2, A sin u2, B)``.

The constructive path (ODE -> f1, f2 -> h) is authoritative.  The closed
forms for ``h`` per case are kept as independent evaluators.
"""
from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .geometry_core import immersion
from .hqsf import HQSFData, build_scalar_field
from .holo_expr import ComplexJet, Const, HoloExpr, Z, differentiate, eval_jet, func

ZERO_OMEGA_RTOL = 1e-12


class Case(enum.Enum):
    POSITIVE = "PositiveDiscriminant"
    NEGATIVE = "NegativeDiscriminant"
    ZERO = "ZeroDiscriminant"


@dataclass(frozen=True)
class CaseTag:
    case: Case
    omega: float

    def __str__(self):
        return f"{self.case.value} (Omega = {self.omega:.17g})"


@dataclass(frozen=True)
class RotationParams:
    """Constants of the rotational family.

    ``coeffs`` is ``(a1, a2)`` when Omega >= 0 and ``(b1, b2)`` when Omega < 0.
    """

    c: float
    c1: float
    c2: float
    z1: complex
    coeffs: tuple[float, float] = (1.0, 1.0)

    def __post_init__(self):
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "c1", float(self.c1))
        object.__setattr__(self, "c2", float(self.c2))
        object.__setattr__(self, "z1", complex(self.z1))
        object.__setattr__(self, "coeffs", tuple(float(a) for a in self.coeffs))
        if self.c == 0:
            raise ValueError("c = 0 gives the QSF reduction (c*psi*e^{2mu} term vanishes); "
                             "rotation classification needs c != 0")
        if self.z1 == 0:
            raise ValueError("z1 must be nonzero (f2 divides by conj(z1))")
        if len(self.coeffs) != 2:
            raise ValueError("coeffs must be a pair")

    @property
    def d(self) -> float:
        """``c c1 - c2``."""
        return self.c * self.c1 - self.c2

    @property
    def k(self) -> float:
        """Real part shared by both characteristic roots, ``(c c1 + c2) / 2c``."""
        return (self.c * self.c1 + self.c2) / (2 * self.c)


def discriminant(p: RotationParams) -> CaseTag:
    omega = p.d ** 2 + 4 * p.c * abs(p.z1) ** 2
    scale = p.d ** 2 + 4 * abs(p.c) * abs(p.z1) ** 2
    if abs(omega) <= ZERO_OMEGA_RTOL * scale:
        return CaseTag(Case.ZERO, omega)
    return CaseTag(Case.POSITIVE if omega > 0 else Case.NEGATIVE, omega)


def _exp(a: complex) -> HoloExpr:
    return func("exp", Const(a) * Z)


def solve_profile_functions(p: RotationParams) -> tuple[HoloExpr, HoloExpr]:
    """``(f1, f2)`` solving the characteristic ODE and the rotation condition."""
    tag = discriminant(p)
    a1, a2 = p.coeffs
    k = p.k
    if tag.case is Case.POSITIVE:
        s = math.sqrt(tag.omega) / (2 * p.c)
        f1 = _exp(k) * (a1 * _exp(-s) + a2 * _exp(s))
    elif tag.case is Case.NEGATIVE:
        s = math.sqrt(-tag.omega) / (2 * p.c)
        f1 = _exp(k) * (a1 * func("cos", Const(s) * Z) + a2 * func("sin", Const(s) * Z))
    else:
        f1 = _exp(k) * (a1 + a2 * Z)
    f2 = Const(1j / p.z1.conjugate()) * (p.c1 * f1 - differentiate(f1))
    return f1, f2


def hqsf_data(p: RotationParams, strict: bool = False) -> HQSFData:
    """Holomorphic data with ``g = exp(z)``.

    Coefficient choices such as ``a2 = 0`` make ``f2`` proportional to ``f1``;
    unless *strict*, that is flagged on the result rather than raised.
    """
    f1, f2 = solve_profile_functions(p)
    return HQSFData(f1, f2, func("exp", Z), p.c, strict=strict)


_FAMILY = {Case.POSITIVE: 1, Case.NEGATIVE: 2, Case.ZERO: 3}


def closed_form_h_expr(p: RotationParams, family: int | None = None) -> HoloExpr:
    """Closed form of ``h(u1)`` as an expression in ``z = u1``.

    *family* 1, 2, 3 picks the exponential, trigonometric or repeated-root
    formula; by default it follows the sign of Omega.  Only meaningful on the
    real axis.  Family 2 uses the principal complex square root of Omega, so
    it is real-valued only when Omega > 0.
    """
    tag = discriminant(p)
    c, d, om = p.c, p.d, tag.omega
    family = _FAMILY[tag.case] if family is None else family
    z1_4 = abs(p.z1) ** 4
    e2 = func("exp", 2 * Z) + 1
    x1, x2 = p.coeffs
    if family == 1:
        r = cmath.sqrt(om)
        inner = (x1 ** 2 * (om + d * r)
                 + x2 ** 2 * _exp(2 * r / c) * (om - d * r))
        return _exp(2 * (c * p.c1 + p.c2 - r) / c) * inner ** 2 / (4 * c ** 2 * z1_4 * e2)
    if family == 2:
        r = cmath.sqrt(om)
        q = x1 ** 2 - x2 ** 2
        inner = ((q * d + 2 * x1 * x2 * r) * func("sin", Const(r / c) * Z)
                 + (q * r - 2 * x1 * x2 * d) * func("cos", Const(r / c) * Z))
        return (om * _exp(2 * (p.c2 / c + p.c1)) * inner ** 2
                / (16 * c ** 2 * z1_4 * e2))
    if family != 3:
        raise ValueError(f"family must be 1, 2 or 3, got {family!r}")
    inner = x2 * ((x1 + x2 * Z) * (p.c2 - c * p.c1) + x2 * c)
    return _exp(2 * (p.c2 / c + p.c1)) * inner ** 2 / (z1_4 * e2)


def _real(w: complex, what: str) -> float:
    if abs(w.imag) > 1e-9 * max(abs(w.real), 1e-300):
        raise ValueError(f"{what} is not real-valued here ({w})")
    return w.real


@dataclass
class RadialField:
    """``h`` of a rotational surface with both evaluation routes attached."""

    params: RotationParams
    family: int | None = None
    data: HQSFData = field(init=False)
    closed: HoloExpr = field(init=False)

    def __post_init__(self):
        self.data = hqsf_data(self.params)
        self.closed = closed_form_h_expr(self.params, self.family)

    def constructive(self, u1: float, u2: float = 0.0) -> tuple[float, float, float, float]:
        """``(h, h_1, h_11, h_2)`` from the holomorphic data at ``u1 + i u2``."""
        j = build_scalar_field(self.data, complex(u1, u2))
        return j.h, j.g1, j.h11, j.g2

    def closed_form(self, u1: float) -> tuple[float, float, float]:
        j = eval_jet(self.closed, complex(u1, 0.0))
        return (_real(j.v, "closed-form h"), _real(j.d1, "closed-form h'"),
                _real(j.d2, "closed-form h''"))

    def jet(self, u1: float, source: str = "constructive") -> tuple[float, float, float]:
        if source == "constructive":
            return self.constructive(u1)[:3]
        if source == "closed_form":
            return self.closed_form(u1)
        raise ValueError(f"unknown source {source!r}")


def radial_h(p: RotationParams | RadialField, u1: float, u2: float = 0.0,
             source: str = "constructive") -> tuple[float, float]:
    """``(h, dh/du1)``.  The constructive route is evaluated at ``u1 + i u2``."""
    rf = p if isinstance(p, RadialField) else RadialField(p)
    if source == "constructive":
        h, h1, _, _ = rf.constructive(u1, u2)
        return h, h1
    h, h1, _ = rf.closed_form(u1)
    return h, h1


@dataclass(frozen=True)
class ProfileSample:
    u1: float
    A: float
    B: float
    dA: float
    dB: float

    @property
    def regular(self) -> bool:
        return self.dA ** 2 + self.dB ** 2 > 0

    @property
    def on_axis(self) -> bool:
        return self.A == 0


def profile_from_jet(u1: float, h: float, h1: float, h2: float) -> ProfileSample:
    """Profile point and velocity from ``h, h', h''`` at ``u1``."""
    E = math.exp(2 * u1)
    eu = math.exp(u1)
    num = (1 - E) * h1 + 2 * E * h
    dnum = (1 - E) * h2 + 4 * E * h
    den = eu * (1 + E)
    dden = eu * (1 + 3 * E)
    A = num / den
    dA = (dnum * den - num * dden) / den ** 2
    B = -2 * (h1 - h) / (1 + E)
    dB = -2 * ((h2 - h1) * (1 + E) - (h1 - h) * 2 * E) / (1 + E) ** 2
    return ProfileSample(u1, A, B, dA, dB)


def profile(p: RotationParams | RadialField, u1: float,
            source: str = "constructive") -> ProfileSample:
    rf = p if isinstance(p, RadialField) else RadialField(p)
    return profile_from_jet(u1, *rf.jet(u1, source))


def immersion_rotation(p: RotationParams | RadialField, u1: float, u2: float,
                       source: str = "constructive") -> np.ndarray:
    s = profile(p, u1, source)
    return np.array([s.A * math.cos(u2), s.A * math.sin(u2), s.B])


def immersion_generic(p: RotationParams | RadialField, u1: float, u2: float) -> np.ndarray:
    """Same point through the general Gauss-map representation with ``g = exp(z)``."""
    rf = p if isinstance(p, RadialField) else RadialField(p)
    z = complex(u1, u2)
    gz = cmath.exp(z)
    return immersion(ComplexJet(gz, gz, gz), build_scalar_field(rf.data, z))


# ---------------------------------------------------------------------------
# Singularity scan
# ---------------------------------------------------------------------------

class ScanEdgeWarning(UserWarning):
    """An event lies within two grid steps of the scan interval ends."""


@dataclass(frozen=True)
class SingularityEvent:
    u1: float
    kind: str           # "axis_crossing" or "profile_singular"
    residual: float     # |A| at an axis crossing, profile speed at a singular point
    A: float
    B: float
    regular: bool       # profile regular at the event

    def describe(self) -> str:
        if self.kind == "axis_crossing":
            what = "isolated singularity" if self.regular else "axis crossing at a singular profile point"
        else:
            what = "circle of singularities" if self.A != 0 else "singular profile point on the axis"
        return f"u1 = {self.u1:.12f}  {self.kind:16s} {what}  (residual {self.residual:.2e})"


def _bisect(f, lo: float, hi: float, flo: float, tol: float = 1e-12,
            maxiter: int = 200) -> float:
    for _ in range(maxiter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def singularity_scan(p: RotationParams | RadialField, interval: tuple[float, float],
                     n: int, source: str = "constructive",
                     speed_rtol: float = 1e-6) -> list[SingularityEvent]:
    """Axis crossings and singular points of the profile on *interval*."""
    rf = p if isinstance(p, RadialField) else RadialField(p)
    return scan_profile(lambda t: profile(rf, t, source), interval, n, speed_rtol)


def scan_profile(sample: Callable[[float], ProfileSample], interval: tuple[float, float],
                 n: int, speed_rtol: float = 1e-6) -> list[SingularityEvent]:
    """Scan any profile given as ``u1 -> ProfileSample``.

    Roots of ``A`` are bracketed on an ``n``-point grid and bisected.  Local
    minima of ``dA^2 + dB^2`` are bracketed through sign changes of its
    central-difference derivative; a minimum counts as a singular point when
    the speed there is below ``speed_rtol`` times the speed at the bracketing
    grid points.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    lo, hi = map(float, interval)
    if not lo < hi:
        raise ValueError("interval must satisfy lo < hi")
    u = np.linspace(lo, hi, n)
    step = (hi - lo) / (n - 1)
    delta = min(1e-6, step / 10)

    def speed2(t):
        s = sample(t)
        return s.dA ** 2 + s.dB ** 2

    def dspeed2(t):
        return (speed2(t + delta) - speed2(t - delta)) / (2 * delta)

    samples = [sample(float(t)) for t in u]
    A = np.array([s.A for s in samples])
    dS = np.array([dspeed2(float(t)) for t in u])

    events: list[SingularityEvent] = []
    for i in range(n - 1):
        if A[i] == 0 or A[i] * A[i + 1] < 0:
            r = u[i] if A[i] == 0 else _bisect(lambda t: sample(t).A, u[i], u[i + 1], A[i])
            s = sample(float(r))
            events.append(SingularityEvent(float(r), "axis_crossing", abs(s.A), s.A, s.B, s.regular))
        if dS[i] < 0 <= dS[i + 1]:
            r = _bisect(dspeed2, u[i], u[i + 1], dS[i])
            s = sample(float(r))
            speed = math.hypot(s.dA, s.dB)
            ref = max(math.hypot(samples[i].dA, samples[i].dB),
                      math.hypot(samples[i + 1].dA, samples[i + 1].dB))
            if speed <= speed_rtol * ref:
                events.append(SingularityEvent(float(r), "profile_singular", speed, s.A, s.B, False))
    if A[-1] == 0:
        s = samples[-1]
        events.append(SingularityEvent(hi, "axis_crossing", 0.0, s.A, s.B, s.regular))

    events.sort(key=lambda e: e.u1)
    near = [e for e in events if min(e.u1 - lo, hi - e.u1) < 2 * step]
    if near:
        warnings.warn(f"{len(near)} event(s) within two grid steps of the interval ends; "
                      "events just outside may be missed", ScanEdgeWarning, stacklevel=2)
    return events


def sample_params(case: Case, rng: np.random.Generator) -> RotationParams:
    """Random valid parameters whose discriminant falls in *case*."""
    while True:
        c1, c2 = rng.uniform(-2, 2, 2)
        phase = rng.uniform(0, 2 * math.pi)
        coeffs = tuple(rng.choice([-1, 1], 2) * rng.uniform(0.3, 2, 2))
        if case is Case.POSITIVE:
            c = rng.uniform(0.3, 3) * rng.choice([-1, 1])
            r = rng.uniform(0.3, 2)
        else:
            c = -rng.uniform(0.3, 3)
            d = c * c1 - c2
            r0 = math.sqrt(d * d / (-4 * c))
            if case is Case.ZERO:
                r = r0
            else:
                r = r0 + rng.uniform(0.3, 1.5)
        if case is Case.POSITIVE and (c * c1 - c2) ** 2 + 4 * c * r * r <= 0.1:
            continue
        if r < 0.2:
            continue
        p = RotationParams(c, c1, c2, r * cmath.exp(1j * phase), coeffs)
        if discriminant(p).case is case:
            return p
