"""
Built-in parameter sets ``ex1`` .. ``ex12``.

``ex1``-``ex5`` are surfaces given by ``(f1, f2, g, c)``; ``ex6``-``ex12`` are
rotation surfaces given by ``(c, c1, c2, z1, coeffs)`` together with a
reference closed-form profile ``(A(u1), B(u1))``, written in the expression
grammar with ``z`` standing for ``u1`` (the "printed" profile).

Printed profiles are fixtures only.  For ``ex9``-``ex12`` the listed
constants do not lead to the printed profile through the constructive path
(the discriminant has the wrong sign or is nonzero), so no agreement between
the two is assumed.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from .holo_expr import HoloExpr, eval_jet, parse
from .rotation import ProfileSample, RotationParams

GridRange = tuple[float, float, int]


@dataclass(frozen=True)
class SurfaceExample:
    name: str
    f1: str
    f2: str
    g: str
    c: float
    u1: GridRange
    u2: GridRange


@dataclass(frozen=True)
class RotationExample:
    name: str
    params: RotationParams
    family: int                 # 1: Omega > 0 form, 2: Omega < 0 form, 3: Omega = 0 form
    profile_A: str
    profile_B: str
    note: str
    interval: tuple[float, float] = (-3.0, 3.0)
    at_zero: tuple[float, float] | None = None   # known (A(0), B(0)) of the printed profile

    def printed_profile(self) -> tuple[HoloExpr, HoloExpr]:
        return _parse(self.profile_A), _parse(self.profile_B)

    def printed_sample(self, u1: float) -> ProfileSample:
        """Printed profile and its derivative at *u1*."""
        A, B = self.printed_profile()
        ja, jb = eval_jet(A, complex(u1)), eval_jet(B, complex(u1))
        return ProfileSample(u1, ja.v.real, jb.v.real, ja.d1.real, jb.d1.real)


_parse = functools.lru_cache(maxsize=None)(parse)


def _fill(template: str, **consts: float) -> str:
    out = template
    for key, value in consts.items():
        out = out.replace(key, f"({value!r})")
    return out


SURFACE_EXAMPLES: dict[str, SurfaceExample] = {
    "ex1": SurfaceExample("ex1", "z", "exp(z)", "z^2", -1.0, (0.2, 1.2, 21), (0.0, 1.0, 21)),
    "ex2": SurfaceExample("ex2", "cosh(z)", "sinh(z)", "z^3", 2.0, (0.2, 1.2, 21), (0.0, 1.0, 21)),
    "ex3": SurfaceExample("ex3", "z^3", "z^4", "z^5", -1.0, (0.2, 1.2, 21), (0.0, 1.0, 21)),
    "ex4": SurfaceExample("ex4", "sin(z)", "cos(z)", "exp(2*z)", -1.0, (0.0, 1.0, 21), (0.0, math.pi, 21)),
    "ex5": SurfaceExample("ex5", "exp(z)", "-exp(-z)", "z", -1.0, (0.2, 1.2, 21), (-1.0, 1.0, 21)),
}

_R2 = math.sqrt(2.0)
_R41 = math.sqrt(41.0)
_R9393 = math.sqrt(9393.0)
_R3131_3 = math.sqrt(3131.0 / 3.0)
_R10 = math.sqrt(10.0)

_CUBE = "(exp(2*z)+1)^3"

ROTATION_EXAMPLES: dict[str, RotationExample] = {
    "ex6": RotationExample(
        "ex6", RotationParams(1, 0, 1, -0.5, (2, -1 / 3)), 1,
        _fill("8*exp((1-2*S2)*z)*((S2+2)*exp(2*S2*z)-36*S2+72)/(81*" + _CUBE + ")"
              "*(36*S2*exp(4*z)-S2*exp(2*(S2+2)*z)+(3*S2+4)*exp(2*S2*z)-108*S2+144)", S2=_R2),
        _fill("8*exp(-2*(S2-1)*z)*((S2+2)*exp(2*S2*z)-36*S2+72)/(81*" + _CUBE + ")"
              "*(36*(3*S2-2)*exp(2*z)-(3*S2+2)*exp(2*(S2+1)*z)-(5*S2+6)*exp(2*S2*z)"
              "-36*(6-5*S2))", S2=_R2),
        "regular profile meeting the axis twice: two isolated singularities",
    ),
    "ex7": RotationExample(
        "ex7", RotationParams(2, 0, -0.5, 1j / 3, (1, -1)), 1,
        _fill("41*exp(-(R41+9)*z/6)/(384*" + _CUBE + ")"
              "*(-48*exp(R41*z/6)+432*exp((R41+24)*z/6)+(17*R41-99)*exp(R41*z/3)"
              "+(53*R41+399)*exp(4*z)+(399-53*R41)*exp((R41+12)*z/3)-17*R41-99)", R41=_R41),
        _fill("41*exp(-z/2)/(48*" + _CUBE + ")"
              "*(84*exp(2*z)-R41*(22*exp(2*z)+13)*sinh(R41*z/6)"
              "+3*(54*exp(2*z)+29)*cosh(R41*z/6)+36)", R41=_R41),
        "regular profile meeting the axis once: one isolated singularity",
    ),
    "ex8": RotationExample(
        "ex8", RotationParams(6, -1, 0.5, 3 - 1j / 3, (1, 1)), 1,
        _fill("3131*exp(-(S+51)*z/18)/(7746048*" + _CUBE + ")"
              "*(137760*exp((S+72)*z/18)-43296*exp(Q*z/6)+(227*S+34443)*exp(4*z)"
              "+(695*S+31041)*exp(Q*z/3)+(34443-227*S)*exp((S+36)*z/9)-695*S+31041)",
              S=_R9393, Q=_R3131_3),
        # the exponent "2u-1" inside 29e^{2u-1} is read as 2u
        _fill("3131*exp(-11*z/6)/(968256*" + _CUBE + ")"
              "*(984*(29*exp(2*z)+17)-S*(172*exp(2*z)+289)*sinh(Q*z/6)"
              "+9*(1004*exp(2*z)-815)*cosh(Q*z/6))", S=_R9393, Q=_R3131_3),
        "profile singular at one point: one isolated singularity and a circle of singularities",
    ),
    "ex9": RotationExample(
        "ex9", RotationParams(4, 1, 0.5, 3, (1, 0)), 2,
        "625*exp(5*z/4)*(7*sin(25*z/8)+25*cos(25*z/8))"
        "*((337*exp(4*z)-281)*sin(25*z/8)+200*cos(25*z/8))/(663552*" + _CUBE + ")",
        "-625*exp(9*z/4)/(331776*" + _CUBE + ")*(7*sin(25*z/8)+25*cos(25*z/8))"
        "*(50*(exp(2*z)+3)*cos(25*z/8)-(323*exp(2*z)+295)*sin(25*z/8))",
        "profile singular at nine points: nine circles and three isolated singularities",
    ),
    "ex10": RotationExample(
        "ex10", RotationParams(4, -1, -2, -1, (0, 2)), 2,
        _fill("exp(-z)*(96*exp(4*z)-16*S2*(5*exp(4*z)-1)*sin(2*S2*z)"
              "+32*(exp(4*z)-2)*cos(2*S2*z))/" + _CUBE, S2=_R2),
        _fill("16*(9*exp(2*z)-4*S2*(2*exp(2*z)+1)*sin(2*S2*z)"
              "+(5*exp(2*z)+7)*cos(2*S2*z)+3)/" + _CUBE, S2=_R2),
        "profile singular at two points: two circles and three isolated singularities",
    ),
    "ex11": RotationExample(
        "ex11", RotationParams(3, 1, -1, 1 - 1j, (1, -1)), 2,
        _fill("40*exp(z/3)*(14*exp(4*z)-R10*(7*exp(4*z)-1)*sin(4*R10*z/3)"
              "+(14*exp(4*z)-23)*cos(4*R10*z/3)+7)/(27*" + _CUBE + ")", R10=_R10),
        _fill("20*exp(4*z/3)*(35*exp(2*z)-2*R10*(11*exp(2*z)+5)*sin(4*R10*z/3)"
              "+(65*exp(2*z)+83)*cos(4*R10*z/3)-7)/(27*" + _CUBE + ")", R10=_R10),
        "profile singular at six points: six circles and three isolated singularities",
    ),
    "ex12": RotationExample(
        "ex12", RotationParams(2, 1, 2, 3, (1, 1)), 3,
        "16*exp(3*z)/(81*" + _CUBE + ")",
        "-8*exp(4*z)*(exp(2*z)+3)/(81*" + _CUBE + ")",
        "regular profile off the axis: complete surface",
        at_zero=(2 / 81, -4 / 81),
    ),
}

EXAMPLE_NAMES = tuple(SURFACE_EXAMPLES) + tuple(ROTATION_EXAMPLES)
