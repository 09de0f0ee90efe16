"""Two-dipole configuration and the scalar invariants derived from it.

Every closed-form expression in this package depends on the geometry only
through three scalar contractions of the dipole orientations d1_hat, d2_hat
and the interdipole axis r_hat:

    a = d2_hat . d1_hat
    b = (d2_hat . r_hat)(r_hat . d1_hat)
    c = (d2_hat x d1_hat) . r_hat

The axis convention is r_hat = (r1 - r2)/R, pointing from dipole 2 to
dipole 1.  Flipping r_hat flips the sign of c (and thereby swaps the roles
of the two circular polarizations in the cross terms) while leaving a and b
unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .errors import InvalidGeometry, InvalidSeparation

_UNIT_TOL = 1e-12


def _unit(v: ArrayLike, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (3,) or not np.all(np.isfinite(v)):
        raise InvalidGeometry(f"{name} must be a finite 3-vector, got {v!r}")
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise InvalidGeometry(f"{name} must be nonzero")
    return v / norm


@dataclass(frozen=True)
class DipoleGeometry:
    """Unit orientations of the two dipoles, unit interdipole axis, and
    dimensionless separation x = k0*R."""

    d1_hat: np.ndarray
    d2_hat: np.ndarray
    r_hat: np.ndarray
    x: float

    def __post_init__(self):
        for name in ("d1_hat", "d2_hat", "r_hat"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (3,) or abs(np.linalg.norm(v) - 1.0) > _UNIT_TOL:
                raise InvalidGeometry(f"{name} must be a unit 3-vector")
            object.__setattr__(self, name, v)
        if not (np.isfinite(self.x) and self.x > 0.0):
            raise InvalidSeparation(f"separation x must be > 0, got {self.x}")


@dataclass(frozen=True)
class GeometryInvariants:
    """The three scalar contractions a, b, c; each lies in [-1, 1]."""

    a: float
    b: float
    c: float


def normalize_geometry(d1: ArrayLike, d2: ArrayLike, axis: ArrayLike,
                       x: float) -> DipoleGeometry:
    """Build a DipoleGeometry from unnormalized vectors.

    Raises InvalidGeometry for zero/non-finite vectors and
    InvalidSeparation for x <= 0.
    """
    if not (np.isfinite(x) and x > 0.0):
        raise InvalidSeparation(f"separation x must be > 0, got {x}")
    return DipoleGeometry(_unit(d1, "d1"), _unit(d2, "d2"),
                          _unit(axis, "axis"), float(x))


def geometry_factors(g: DipoleGeometry) -> GeometryInvariants:
    """Reduce a geometry to the invariants (a, b, c).

    Invariant under simultaneous rotation of all three vectors; swapping
    the dipoles or flipping the axis flips the sign of c only.
    """
    a = float(g.d2_hat @ g.d1_hat)
    b = float((g.d2_hat @ g.r_hat) * (g.r_hat @ g.d1_hat))
    c = float(np.cross(g.d2_hat, g.d1_hat) @ g.r_hat)
    return GeometryInvariants(a, b, c)
