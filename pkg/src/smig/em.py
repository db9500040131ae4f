"""Background medium, complex wavenumber, antenna geometry, incident field.

The propagation model is the two-dimensional one: a line source at d
radiates E_inc(d, r) = -(i/4) H_0^(1)(k |d - r|) into a homogeneous lossy
background with wavenumber k = sqrt(w^2 mu_b (eps_b + i sigma_b / w)),
principal branch.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, SingularityError
from .specfun import hankel1_0

VACUUM_PERMITTIVITY = 8.8541878128e-12  # F/m
VACUUM_PERMEABILITY = 4e-7 * math.pi  # H/m


@dataclass(frozen=True)
class MediumParams:
    """Homogeneous background constants.

    eps_b is the absolute permittivity (relative value times the vacuum
    permittivity); the permeability is constant everywhere.
    """

    eps_b: float
    sigma_b: float
    omega: float
    mu_b: float = VACUUM_PERMEABILITY

    def __post_init__(self):
        if not self.eps_b > 0:
            raise ConfigError("medium eps_b must be > 0, got %r" % (self.eps_b,))
        if self.sigma_b < 0:
            raise ConfigError("medium sigma_b must be >= 0, got %r" % (self.sigma_b,))
        if not self.mu_b > 0:
            raise ConfigError("medium mu_b must be > 0, got %r" % (self.mu_b,))
        if not self.omega > 0:
            raise ConfigError("medium omega must be > 0, got %r" % (self.omega,))

    @classmethod
    def from_relative(cls, permittivity_rel, conductivity, frequency_hz):
        return cls(
            eps_b=permittivity_rel * VACUUM_PERMITTIVITY,
            sigma_b=conductivity,
            omega=2.0 * math.pi * frequency_hz,
        )

    @property
    def frequency_hz(self):
        return self.omega / (2.0 * math.pi)


@dataclass(frozen=True)
class ComplexWavenumber:
    """Principal-branch wavenumber of a passive medium: Re k > 0, Im k >= 0."""

    k: complex

    def __post_init__(self):
        if not self.k.real > 0:
            raise ConfigError("wavenumber must have Re k > 0, got %r" % (self.k,))
        if self.k.imag < 0:
            raise ConfigError("wavenumber must have Im k >= 0, got %r" % (self.k,))


@dataclass(frozen=True, eq=False)
class AntennaArray:
    """N antennas on a circle of radius R, angles 3pi/2 - 2pi(n-1)/N."""

    count: int
    radius: float
    angles: np.ndarray = field(repr=False)
    positions: np.ndarray = field(repr=False)

    @property
    def directions(self):
        """Unit vectors d_n / |d_n|, one row per antenna."""
        return self.positions / self.radius


def antenna_array(count, radius):
    """Canonical circular array constructor."""
    if count < 2:
        raise ConfigError("antenna count must be >= 2 (imaging needs off-diagonal data), got %d" % count)
    if not radius > 0:
        raise ConfigError("array radius must be > 0, got %r" % (radius,))
    n = np.arange(count)
    angles = 3.0 * math.pi / 2.0 - 2.0 * math.pi * n / count
    positions = radius * np.stack([np.cos(angles), np.sin(angles)], axis=1)
    return AntennaArray(count=count, radius=float(radius), angles=angles, positions=positions)


def wavenumber(medium):
    """k = principal sqrt of w^2 mu_b (eps_b + i sigma_b / w)."""
    k2 = medium.omega ** 2 * medium.mu_b * complex(medium.eps_b, medium.sigma_b / medium.omega)
    return ComplexWavenumber(k=complex(np.sqrt(k2)))


def lossless_wavenumber(medium):
    """Real phase constant of the same medium with the conductivity dropped."""
    return ComplexWavenumber(k=complex(medium.omega * math.sqrt(medium.mu_b * medium.eps_b)))


def wavelength(k):
    """lambda = 2 pi / Re k."""
    return 2.0 * math.pi / k.k.real


def incident_field(d, r, k):
    """Line-source field -(i/4) H_0^(1)(k |d - r|); symmetric in (d, r)."""
    d = np.asarray(d, dtype=float)
    r = np.asarray(r, dtype=float)
    dist = float(np.hypot(d[0] - r[0], d[1] - r[1]))
    if dist == 0.0:
        raise SingularityError("incident_field is singular at d = r")
    return -0.25j * hankel1_0(k.k * dist)


def incident_field_many(points, positions, k, exclude_coincident=False):
    """Incident field from every antenna to every point, shape (npts, N).

    Bulk path used by the imaging grid sweep.  Exact coincidence of a
    point with an antenna raises, unless exclude_coincident is set, in
    which case the return value is (fields, bad_rows) and the caller is
    expected to drop the flagged points.
    """
    points = np.asarray(points, dtype=float)
    diff = points[:, None, :] - positions[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    bad = dist == 0.0
    if bad.any():
        if not exclude_coincident:
            raise SingularityError("a search point coincides with an antenna position")
        dist = np.where(bad, 1.0, dist)
    w = -0.25j * hankel1_0(k.k * dist)
    if exclude_coincident:
        return w, bad.any(axis=1)
    return w


def smallness_index(anomaly_radius, eps_star, medium):
    """Refractive contrast times diameter; compare with the wavelength."""
    if not anomaly_radius > 0 or not eps_star > 0:
        raise ConfigError("smallness_index expects positive radius and permittivity")
    return math.sqrt(eps_star / medium.eps_b) * 2.0 * anomaly_radius
