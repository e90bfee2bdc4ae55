"""Nodal-surface point clouds: marching-grid sign-change detection with
per-edge bisection on the zero loci of eigenfunction polynomials."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyLocusWarning
from .poly import Polynomial, poly_divexact


@dataclass
class NodalComponent:
    label: str
    polynomial: Polynomial
    points: list  # (x, y, z) floats


@dataclass
class NodalMesh:
    polynomial: Polynomial
    components: list
    bbox: tuple
    resolution: int
    tolerance: float

    @property
    def points(self):
        out = []
        for comp in self.components:
            out.extend(comp.points)
        return out

    def write_csv(self, path):
        with open(path, "w") as fh:
            fh.write("x,y,z,component\n")
            for comp in self.components:
                for (x, y, z) in comp.points:
                    fh.write(f"{x:.12g},{y:.12g},{z:.12g},{comp.label}\n")

    def write_obj(self, path):
        with open(path, "w") as fh:
            fh.write(f"# nodal point cloud of {self.polynomial}\n")
            for comp in self.components:
                fh.write(f"o {comp.label}\n")
                for (x, y, z) in comp.points:
                    fh.write(f"v {x:.12g} {y:.12g} {z:.12g}\n")


def split_components(poly: Polynomial):
    """Labeled zero-locus components: per-variable monomial content (each
    coordinate factor is its own plane) plus the remaining primitive part."""
    comps = []
    rest = poly
    for vi, vname in enumerate("xyz"):
        emin = min(e[vi] for e in rest.terms)
        if emin > 0:
            comps.append((vname, Polynomial.variable(vname)))
            divisor = Polynomial.monomial(tuple(emin if k == vi else 0 for k in range(3)))
            rest = poly_divexact(rest, divisor)
    if not rest.is_constant:
        comps.append((str(rest), rest))
    return comps


def emit_nodal_mesh(poly: Polynomial, bbox, resolution, tolerance=1e-8) -> NodalMesh:
    """Sample each component on a grid over bbox, bisect sign changes along
    grid edges, and collect points with |poly(point)| < tolerance."""
    if resolution < 2:
        raise ValueError("resolution must be >= 2 per axis")
    lo, hi = float(bbox[0]), float(bbox[1])
    axes = [lo + (hi - lo) * t / (resolution - 1) for t in range(resolution)]
    components = []
    for label, comp in split_components(poly):
        pts = _component_points(comp, poly, axes, tolerance)
        components.append(NodalComponent(label=label, polynomial=comp, points=pts))
    mesh = NodalMesh(
        polynomial=poly,
        components=components,
        bbox=(lo, hi),
        resolution=resolution,
        tolerance=tolerance,
    )
    if not mesh.points:
        warnings.warn(f"no sign change of {poly} found on the grid", EmptyLocusWarning)
    return mesh


def _component_points(comp: Polynomial, full: Polynomial, axes, tol):
    n = len(axes)
    vals = {}

    def value(i, j, k):
        key = (i, j, k)
        v = vals.get(key)
        if v is None:
            v = comp.eval((axes[i], axes[j], axes[k]))
            vals[key] = v
        return v

    pts = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                v0 = value(i, j, k)
                if v0 == 0.0:
                    pt = (axes[i], axes[j], axes[k])
                    if abs(full.eval(pt)) < tol:
                        pts.append(pt)
                    continue
                for (di, dj, dk) in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                    i2, j2, k2 = i + di, j + dj, k + dk
                    if i2 >= n or j2 >= n or k2 >= n:
                        continue
                    v1 = value(i2, j2, k2)
                    if v0 * v1 < 0:
                        a = (axes[i], axes[j], axes[k])
                        b = (axes[i2], axes[j2], axes[k2])
                        pt = _bisect_edge(comp, a, b)
                        if abs(full.eval(pt)) < tol:
                            pts.append(pt)
    return pts


def _bisect_edge(comp, a, b, width=1e-13):
    fa = comp.eval(a)
    lo, hi = a, b
    while max(abs(hi[c] - lo[c]) for c in range(3)) > width:
        mid = tuple((lo[c] + hi[c]) / 2 for c in range(3))
        fm = comp.eval(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (fa > 0):
            lo = mid
        else:
            hi = mid
    return tuple((lo[c] + hi[c]) / 2 for c in range(3))
