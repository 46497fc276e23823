"""
Parameter-grid sampling and plain-text export (Wavefront OBJ, profile CSV).

Vertices are stored row-major over ``(u1, u2)``; quads follow the grid.
Vertices where the evaluator reports a failure are kept (so indices stay
stable) but every quad touching them is dropped.
"""
from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .rotation import ProfileSample


@dataclass(frozen=True)
class GridSpec:
    u1: tuple[float, float]
    u2: tuple[float, float]
    nu1: int
    nu2: int
    skip_degenerate: bool = True

    def __post_init__(self):
        if self.nu1 < 2 or self.nu2 < 2:
            raise ValueError("grid needs at least 2 samples per axis")
        if not (self.u1[0] < self.u1[1] and self.u2[0] < self.u2[1]):
            raise ValueError("grid ranges must satisfy lo < hi")

    @classmethod
    def parse(cls, u1: str, u2: str, skip_degenerate: bool = True) -> "GridSpec":
        """Build from two ``lo:hi:n`` range strings."""
        (a, b, n), (c, d, m) = parse_range(u1), parse_range(u2)
        return cls((a, b), (c, d), n, m, skip_degenerate)

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return (np.linspace(self.u1[0], self.u1[1], self.nu1),
                np.linspace(self.u2[0], self.u2[1], self.nu2))


def parse_range(text: str) -> tuple[float, float, int]:
    """``"lo:hi:n"`` with inclusive endpoints."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"range must look like lo:hi:n, got {text!r}")
    lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    return lo, hi, n


@dataclass
class VertexSample:
    """What an evaluator returns for one parameter point."""

    X: np.ndarray | None
    N: np.ndarray | None
    ok: bool
    diagnostics: dict = field(default_factory=dict)


@dataclass
class SurfaceMesh:
    vertices: np.ndarray            # (n, 3), nan where undefined
    normals: np.ndarray             # (n, 3)
    faces: list[tuple[int, int, int, int]]
    mask: np.ndarray                # True where the vertex is degenerate/singular
    diagnostics: list[dict] = field(default_factory=list)

    @property
    def masked_count(self) -> int:
        return int(self.mask.sum())


def _grid_faces(V: np.ndarray, mask: np.ndarray, n1: int, n2: int,
                skip_masked: bool = True) -> list[tuple[int, int, int, int]]:
    finite = np.isfinite(V).all(axis=1)
    faces = []
    for i in range(n1 - 1):
        for j in range(n2 - 1):
            q = (i * n2 + j, (i + 1) * n2 + j, (i + 1) * n2 + j + 1, i * n2 + j + 1)
            if skip_masked and mask[list(q)].any():
                continue
            if not finite[list(q)].all():
                continue
            faces.append(q)
    return faces


def sample_surface(evaluator: Callable[[float, float], VertexSample],
                   spec: GridSpec) -> SurfaceMesh:
    a1, a2 = spec.axes()
    n = spec.nu1 * spec.nu2
    V = np.full((n, 3), np.nan)
    Nrm = np.full((n, 3), np.nan)
    mask = np.zeros(n, dtype=bool)
    diags = []
    for i, u1 in enumerate(a1):
        for j, u2 in enumerate(a2):
            k = i * spec.nu2 + j
            s = evaluator(float(u1), float(u2))
            if s.X is not None:
                V[k] = s.X
            if s.N is not None:
                Nrm[k] = s.N
            mask[k] = not s.ok
            diags.append(dict(s.diagnostics, u1=float(u1), u2=float(u2)))
    faces = _grid_faces(V, mask, spec.nu1, spec.nu2, spec.skip_degenerate)
    return SurfaceMesh(V, Nrm, faces, mask, diags)


def _g(x: float) -> str:
    return format(float(x), ".17g")


def _open_target(destination):
    if isinstance(destination, (str, os.PathLike)):
        return open(destination, "w", encoding="ascii", newline="\n"), True
    return destination, False


def export_obj(mesh: SurfaceMesh, destination, comment: str | None = None) -> None:
    """Write ASCII OBJ (``v``, ``vn``, ``f a//a ...``; 1-based) to a path or text stream."""
    out, close = _open_target(destination)
    try:
        if comment:
            for line in comment.splitlines():
                out.write(f"# {line}\n")
        for v in mesh.vertices:
            out.write(f"v {_g(v[0])} {_g(v[1])} {_g(v[2])}\n")
        for v in mesh.normals:
            out.write(f"vn {_g(v[0])} {_g(v[1])} {_g(v[2])}\n")
        for q in mesh.faces:
            out.write("f " + " ".join(f"{k + 1}//{k + 1}" for k in q) + "\n")
    finally:
        if close:
            out.close()


def obj_bytes(mesh: SurfaceMesh, comment: str | None = None) -> bytes:
    buf = io.StringIO(newline="\n")
    export_obj(mesh, buf, comment)
    return buf.getvalue().encode("ascii")


def read_obj(source) -> tuple[np.ndarray, np.ndarray, list[tuple[int, ...]]]:
    """Minimal reader for files written by :func:`export_obj` (0-based faces)."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="ascii") as fh:
            lines = fh.read().splitlines()
    else:
        lines = source.read().splitlines()
    verts, norms, faces = [], [], []
    for line in lines:
        parts = line.split()
        if not parts or parts[0] == "#":
            continue
        if parts[0] == "v":
            verts.append([float(x) for x in parts[1:4]])
        elif parts[0] == "vn":
            norms.append([float(x) for x in parts[1:4]])
        elif parts[0] == "f":
            faces.append(tuple(int(p.split("/")[0]) - 1 for p in parts[1:]))
    return np.array(verts).reshape(-1, 3), np.array(norms).reshape(-1, 3), faces


PROFILE_HEADER = "u1,A,B,dA,dB,regular"


def export_profile_csv(samples: Iterable[ProfileSample], destination) -> None:
    out, close = _open_target(destination)
    try:
        out.write(PROFILE_HEADER + "\n")
        for s in samples:
            out.write(",".join([_g(s.u1), _g(s.A), _g(s.B), _g(s.dA), _g(s.dB),
                                "1" if s.regular else "0"]) + "\n")
    finally:
        if close:
            out.close()


def profile_csv_bytes(samples: Sequence[ProfileSample]) -> bytes:
    buf = io.StringIO(newline="\n")
    export_profile_csv(samples, buf)
    return buf.getvalue().encode("ascii")


def revolve_profile(samples: Sequence[ProfileSample], nu2: int,
                    u2: tuple[float, float] = (0.0, 2 * math.pi),
                    row_ok: Sequence[bool] | None = None) -> SurfaceMesh:
    """Surface of revolution from profile samples; normals from the profile tangent.

    Vertices at singular profile points get a nan normal and are masked, as
    are whole rows where *row_ok* is false.
    """
    if nu2 < 2:
        raise ValueError("nu2 must be at least 2")
    t = np.linspace(u2[0], u2[1], nu2)
    ca, sa = np.cos(t), np.sin(t)
    V, Nrm, mask, diags = [], [], [], []
    if row_ok is None:
        row_ok = [True] * len(samples)
    for s, row in zip(samples, row_ok, strict=True):
        speed = math.hypot(s.dA, s.dB)
        regular = speed > 0 and math.isfinite(speed)
        ok = bool(row) and regular
        # unit profile normal (dB, -dA) carried around the axis
        nx, nz = (s.dB / speed, -s.dA / speed) if regular else (math.nan, math.nan)
        for c_, s_ in zip(ca, sa):
            V.append((s.A * c_, s.A * s_, s.B))
            Nrm.append((nx * c_, nx * s_, nz))
            mask.append(not ok)
            diags.append({"u1": s.u1, "speed": speed})
    V, Nrm, mask = np.array(V).reshape(-1, 3), np.array(Nrm).reshape(-1, 3), np.array(mask, dtype=bool)
    return SurfaceMesh(V, Nrm, _grid_faces(V, mask, len(samples), nu2), mask, diags)
