"""Shared generators and oracles for the test suite."""
from __future__ import annotations

import numpy as np

from hqsf_surfaces.holo_expr import DomainError, evaluate

_LEAVES = ["z", "z", "z", "1", "2", "3", "0.5", "2*i", "(1+i)", "(2-0.5*i)"]
_FUNCS = ["exp", "sin", "cos", "sinh", "cosh"]
# denominators and log arguments that stay away from zeros / the cut on |z| <= 1
_SAFE_DEN = ["(z+3)", "(2-z)", "cosh(z/2)", "(z^2+4)", "exp(z)"]
_SAFE_LOG = ["log(z+3)", "log(2-0.5*z)", "log(4+z^2)"]


def random_expr_text(rng: np.random.Generator, depth: int = 4) -> str:
    """Random expression in the grammar, holomorphic on the closed unit disk."""
    if depth == 0 or rng.random() < 0.25:
        return str(rng.choice(_LEAVES))
    kind = rng.integers(0, 9)
    a = random_expr_text(rng, depth - 1)
    if kind <= 1:
        return f"({a})+({random_expr_text(rng, depth - 1)})"
    if kind == 2:
        return f"({a})-({random_expr_text(rng, depth - 1)})"
    if kind == 3:
        return f"({a})*({random_expr_text(rng, depth - 1)})"
    if kind == 4:
        return f"({a})/{rng.choice(_SAFE_DEN)}"
    if kind == 5:
        return f"({a})^{rng.integers(0, 4)}"
    if kind == 6:
        return f"-({a})"
    if kind == 7:
        return f"{rng.choice(_SAFE_LOG)}*({a})"
    return f"{rng.choice(_FUNCS)}(({a})/2)"


def random_corpus(n: int = 100, seed: int = 20261016, depth: int = 4) -> list[str]:
    rng = np.random.default_rng(seed)
    return [random_expr_text(rng, depth) for _ in range(n)]


def random_disk_points(rng: np.random.Generator, n: int, radius: float = 0.9) -> list[complex]:
    r = radius * np.sqrt(rng.random(n))
    t = 2 * np.pi * rng.random(n)
    return [complex(x) for x in r * np.exp(1j * t)]


def fd_derivatives(e, z: complex, step: float = 1e-3) -> tuple[complex, complex]:
    """First and second derivatives from central differences along the real axis.

    One Richardson step each.  Raises :class:`DomainError` like ``evaluate``.
    """
    def f(x):
        return evaluate(e, z + x)

    def d1(hh):
        return (f(hh) - f(-hh)) / (2 * hh)

    def d2(hh):
        return (f(hh) - 2 * f(0) + f(-hh)) / hh ** 2

    return (4 * d1(step / 2) - d1(step)) / 3, (4 * d2(step / 2) - d2(step)) / 3


def derivative_mismatch(e, d1, d2, z: complex) -> float:
    """Largest FD mismatch of ``(d1, d2)`` relative to the size of the jet."""
    f0 = evaluate(e, z)
    fd1, fd2 = fd_derivatives(e, z)
    scale = max(1.0, abs(f0), abs(fd1), abs(fd2))
    return max(abs(d1 - fd1), abs(d2 - fd2)) / scale


__all__ = ["DomainError", "random_corpus", "random_disk_points", "random_expr_text",
           "fd_derivatives", "derivative_mismatch"]
