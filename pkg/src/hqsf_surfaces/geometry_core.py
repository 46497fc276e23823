"""
Surfaces parametrized through their Gauss map.

The unit normal is the inverse stereographic image of a holomorphic function
``g`` and the surface is recovered from a real scalar field ``h`` on the
parameter domain.  Everything here works on point jets: a :class:`ComplexJet`
for ``g`` and a :class:`ScalarJet2` (value, gradient, Hessian) for ``h``.

The gradient of ``h`` is identified with the complex number
``h_1 + i h_2`` and every plane inner product uses :func:`real_inner`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePoint, SingularGaussMap
from .holo_expr import ComplexJet, real_inner

# |P| < DEGENERACY_RTOL * (1 + A1^2 + A2^2) marks a non-regular point
DEGENERACY_RTOL = 1e-10


@dataclass(frozen=True)
class ScalarJet2:
    """Value, gradient and Hessian of a real field at one parameter point."""

    h: float
    g1: float
    g2: float
    h11: float
    h12: float
    h22: float

    @property
    def grad(self) -> complex:
        return complex(self.g1, self.g2)

    @property
    def laplacian(self) -> float:
        return self.h11 + self.h22


@dataclass(frozen=True)
class IntermediateForms:
    T: float
    R: float
    V11: float
    V12: float
    V22: float
    A1: float
    A2: float
    P: float

    def is_degenerate(self, rtol: float = DEGENERACY_RTOL) -> bool:
        return abs(self.P) < rtol * (1.0 + self.A1 * self.A1 + self.A2 * self.A2)


@dataclass(frozen=True, eq=False)
class SurfaceGeometry:
    """All pointwise quantities of the surface at one parameter value."""

    X: np.ndarray
    N: np.ndarray
    a11: float
    a12: float
    a22: float
    b11: float
    b12: float
    b22: float
    L11: float
    L22: float
    H: float
    K: float
    P: float
    psi: float
    lam: float

    @property
    def first_form(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a12, self.a22]])

    @property
    def second_form(self) -> np.ndarray:
        return np.array([[self.b11, self.b12], [self.b12, self.b22]])

    def mean_curvature_from_forms(self) -> float:
        det = self.a11 * self.a22 - self.a12 ** 2
        return (self.a22 * self.b11 - 2 * self.a12 * self.b12 + self.a11 * self.b22) / (2 * det)


def gauss_map(g_jet: ComplexJet | complex) -> np.ndarray:
    """Unit normal ``(2g, 1 - |g|^2) / (1 + |g|^2)``."""
    g = g_jet.v if isinstance(g_jet, ComplexJet) else complex(g_jet)
    m = abs(g) ** 2
    T = 1.0 + m
    return np.array([2 * g.real / T, 2 * g.imag / T, (1.0 - m) / T])


def _gprime_squared(g_jet: ComplexJet) -> float:
    gp2 = abs(g_jet.d1) ** 2
    if gp2 == 0.0:
        raise SingularGaussMap(f"g'(z) = 0 (g = {g_jet.v})")
    return gp2


def intermediate_forms(g_jet: ComplexJet, h_jet: ScalarJet2) -> IntermediateForms:
    gp2 = _gprime_squared(g_jet)
    g, gp, gpp = g_jet.v, g_jet.d1, g_jet.d2
    grad = h_jet.grad
    T = 1.0 + abs(g) ** 2
    R = real_inner(grad, g / gp) - h_jet.h
    q = gpp / gp
    V11 = (h_jet.h11 - real_inner(q, grad)) / gp2
    V12 = (h_jet.h12 - real_inner(1j * q, grad)) / gp2
    V22 = (h_jet.h22 + real_inner(q, grad)) / gp2
    A1 = 2 * R - T * V11
    A2 = 2 * R - T * V22
    P = A1 * A2 - (T * V12) * (T * V12)
    if not all(map(math.isfinite, (T, R, V11, V12, V22, P))):
        raise SingularGaussMap(f"forms overflow; g'(z) = {gp} is numerically zero")
    return IntermediateForms(T, R, V11, V12, V22, A1, A2, P)


def immersion(g_jet: ComplexJet, h_jet: ScalarJet2) -> np.ndarray:
    """Surface point ``(g' grad h / |g'|^2 - 2R g / T, -2R / T)``."""
    gp2 = _gprime_squared(g_jet)
    g, gp = g_jet.v, g_jet.d1
    T = 1.0 + abs(g) ** 2
    R = real_inner(h_jet.grad, g / gp) - h_jet.h
    w = gp * h_jet.grad / gp2 - (2 * R / T) * g
    X = np.array([w.real, w.imag, -2 * R / T])
    if not np.isfinite(X).all():
        raise SingularGaussMap(f"immersion overflows; g'(z) = {gp} is numerically zero")
    return X


def surface_geometry(g_jet: ComplexJet, h_jet: ScalarJet2,
                     rtol: float = DEGENERACY_RTOL) -> SurfaceGeometry:
    """Immersion, normal, the three fundamental forms, H, K, support and distance.

    Raises :class:`DegeneratePoint` where the regularity quantity P vanishes
    (relative to *rtol*).
    """
    f = intermediate_forms(g_jet, h_jet)
    if f.is_degenerate(rtol):
        raise DegeneratePoint(f"P = {f.P:.3e} below regularity threshold", f.P)
    gp2 = abs(g_jet.d1) ** 2
    T, R, V12, A1, A2, P = f.T, f.R, f.V12, f.A1, f.A2, f.P

    s = gp2 / T ** 2
    a11 = s * (A1 ** 2 + (T * V12) ** 2)
    a12 = -(gp2 / T) * V12 * (A1 + A2)
    a22 = s * (A2 ** 2 + (T * V12) ** 2)
    b11 = 2 * s * A1
    b12 = -2 * (gp2 / T) * V12
    b22 = 2 * s * A2
    L = 4 * s

    H = -(T * h_jet.laplacian / gp2 - 4 * R) / P
    K = 4.0 / P
    psi = 2 * h_jet.h / T
    lam = abs(h_jet.grad) ** 2 / gp2 - 4 * R * h_jet.h / T

    return SurfaceGeometry(
        X=immersion(g_jet, h_jet), N=gauss_map(g_jet),
        a11=a11, a12=a12, a22=a22, b11=b11, b12=b12, b22=b22,
        L11=L, L22=L, H=H, K=K, P=P, psi=psi, lam=lam,
    )
