"""Finite-difference oracles: central differences with one Richardson step."""
from __future__ import annotations

from typing import Callable

import numpy as np

DEFAULT_STEP = 1e-4


def central(f: Callable[[float], np.ndarray | float], x: float,
            step: float = DEFAULT_STEP):
    """First derivative of *f* at *x*, O(step^4) after extrapolation."""
    def d(hh):
        return (np.asarray(f(x + hh)) - np.asarray(f(x - hh))) / (2 * hh)
    return (4 * d(step / 2) - d(step)) / 3


def partials(F: Callable[[float, float], np.ndarray], u1: float, u2: float,
             step: float = DEFAULT_STEP) -> tuple[np.ndarray, np.ndarray]:
    """``(F_1, F_2)`` of a function of two real parameters."""
    F1 = central(lambda t: F(t, u2), u1, step)
    F2 = central(lambda t: F(u1, t), u2, step)
    return F1, F2


def laplacian(f: Callable[[float, float], float], u1: float, u2: float,
              step: float = 1e-3) -> float:
    """Five-point Laplacian with Richardson extrapolation."""
    f0 = f(u1, u2)

    def lap(hh):
        return (f(u1 + hh, u2) + f(u1 - hh, u2) + f(u1, u2 + hh) + f(u1, u2 - hh)
                - 4 * f0) / hh ** 2
    return (4 * lap(step / 2) - lap(step)) / 3
