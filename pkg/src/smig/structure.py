"""Closed-form structure of the imaging maps and its validation harness.

For a circular array the projection maps reduce, through the plane-wave
expansion into integer-order Bessel harmonics, to explicit series:

  full matrix      |(J_0(k|r-r*|) + Psi1_avg + artifact terms)^2|
  zero diagonal    N/(N-1) |(J_0(k|r-r*|) + Psi1_avg)^2
                            - (1/N)(J_0(2k|r-r*|) + Psi1_avg(2k))|

where Psi1_avg averages the two-sided harmonic series over the antennas.
The harness cross-checks the series against brute-force double sums of
plane-wave phases, which are the independent oracle: they involve nothing
but complex exponentials.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .forward import KIND_FULL, KIND_ZERO_DIAGONAL, ScatteringMatrix
from .specfun import SeriesTruncation, _j_sequence


class ValidityMarginWarning(UserWarning):
    """A point sits closer to an antenna than the far-field margin allows."""


@dataclass(frozen=True)
class StructureConfig:
    """Truncation, optional artifact centers, and the wavenumber convention."""

    trunc: SeriesTruncation = SeriesTruncation()
    artifact_locations: tuple = ()
    use_lossless_k: bool = True

    def with_artifacts(self, locations):
        return StructureConfig(self.trunc, tuple(np.asarray(p, float) for p in locations),
                               self.use_lossless_k)


def psi1(k_real, theta_n, r, r_center, trunc=SeriesTruncation()):
    """Two-sided harmonic series sum_{0<|s|<=S} i^s J_s(k|r-rc|) e^{is(theta_n - phi)}.

    phi is the polar angle of r - r_center; the value is 0 when r equals
    r_center because every J_s vanishes there.
    """
    delta = np.asarray(r, float) - np.asarray(r_center, float)
    dist = float(np.hypot(delta[0], delta[1]))
    if dist == 0.0:
        return 0.0 + 0.0j
    phi = math.atan2(delta[1], delta[0])
    seq = _j_sequence(k_real * dist, trunc.max_order)
    s = np.arange(1, trunc.max_order + 1)
    return complex(2.0 * np.sum((1j ** s) * seq[1:] * np.cos(s * (theta_n - phi))))


def _psi1_avg(k_real, array, r, r_center, trunc):
    """(1/N) sum_n Psi1(k, n), evaluated with one shared J batch."""
    delta = np.asarray(r, float) - np.asarray(r_center, float)
    dist = float(np.hypot(delta[0], delta[1]))
    if dist == 0.0:
        return 0.0 + 0.0j
    phi = math.atan2(delta[1], delta[0])
    seq = _j_sequence(k_real * dist, trunc.max_order)
    s = np.arange(1, trunc.max_order + 1)
    cos_avg = np.mean(np.cos(np.outer(array.angles - phi, s)), axis=0)
    return complex(2.0 * np.sum((1j ** s) * seq[1:] * cos_avg))


def _j0(k_real, r, r_center, trunc):
    delta = np.asarray(r, float) - np.asarray(r_center, float)
    dist = float(np.hypot(delta[0], delta[1]))
    return complex(_j_sequence(k_real * dist, 1)[0]) if dist > 0 else 1.0 + 0.0j


def _check_margin(r, array, k_real, r_star):
    margin = 10.0 * 0.25 / k_real
    pts = array.positions
    d_r = np.hypot(pts[:, 0] - r[0], pts[:, 1] - r[1]).min()
    d_s = np.hypot(pts[:, 0] - r_star[0], pts[:, 1] - r_star[1]).min()
    if min(d_r, d_s) < margin:
        warnings.warn(
            "point within %.4g m of an antenna; far-field structure may degrade" % margin,
            ValidityMarginWarning,
            stacklevel=3,
        )


def structure_full(r, array, k_real, r_star, config=StructureConfig()):
    """Closed-form value of the full-matrix map, artifact terms included."""
    r_star = np.asarray(r_star, float)
    _check_margin(np.asarray(r, float), array, k_real, r_star)
    acc = _j0(k_real, r, r_star, config.trunc) + _psi1_avg(k_real, array, r, r_star, config.trunc)
    for rm in config.artifact_locations:
        if np.hypot(*(np.asarray(rm, float) - r_star)) == 0.0:
            raise ConfigError("artifact locations must differ from the anomaly center")
        acc += _j0(k_real, r, rm, config.trunc) + _psi1_avg(k_real, array, r, rm, config.trunc)
    return float(abs(acc * acc))


def structure_diag(r, array, k_real, r_star, config=StructureConfig()):
    """Closed-form value of the diagonal-free map."""
    _check_margin(np.asarray(r, float), array, k_real, np.asarray(r_star, float))
    n = array.count
    g = _j0(k_real, r, r_star, config.trunc) + _psi1_avg(k_real, array, r, r_star, config.trunc)
    h = _j0(2.0 * k_real, r, r_star, config.trunc) + _psi1_avg(
        2.0 * k_real, array, r, r_star, config.trunc
    )
    return float(n / (n - 1) * abs(g * g - h / n))


def plane_wave_test_vector(r, array, k_real):
    """Unit steering vector of the far-field (plane-wave) limit."""
    phases = array.directions @ np.asarray(r, dtype=float)
    w = np.exp(-1j * k_real * phases)
    return w / math.sqrt(array.count)


def ideal_plane_wave_matrix(array, k_real, r_star, kind=KIND_FULL, frequency_hz=0.0):
    """Rank-one plane-wave data (1/N) e^{-ik(theta_m + theta_n) . r*}.

    With kind=zero_diagonal the diagonal is dropped, reproducing the ideal
    diagonal-free matrix of the far-field limit.
    """
    phases = array.directions @ np.asarray(r_star, dtype=float)
    v = np.exp(-1j * k_real * phases)
    entries = np.outer(v, v) / array.count
    if kind == KIND_ZERO_DIAGONAL:
        np.fill_diagonal(entries, 0.0)
    elif kind != KIND_FULL:
        raise ConfigError("unknown matrix kind %r" % (kind,))
    return ScatteringMatrix(entries, kind, "ideal_plane_wave", frequency_hz)


def migration_response(s_matrix, array, k_real, points):
    """|W(r)* S conj(W(r))| with plane-wave steering, one value per point.

    This is the bilinear form the far-field derivation actually bounds:
    the data matrix sandwiched between steering vectors, singular pairs
    weighted by their singular values.  On ideal plane-wave data it equals
    tau_1 times the closed-form diagonal-free series.
    """
    pts = np.asarray(points, dtype=float)
    phases = pts @ array.directions.T
    w = np.exp(-1j * k_real * phases) / math.sqrt(array.count)
    return np.abs(np.einsum("pi,ij,pj->p", w.conj(), s_matrix.entries, w.conj()))


def validate_diag_identity(points, array, k_real, r_star, trunc=SeriesTruncation()):
    """Max deviation of the closed-form series from the brute-force double sum.

    For each point the oracle value

        (1/(N-1)) | (1/N) sum_{m != n} e^{ik theta_m.(r-r*)} e^{ik theta_n.(r-r*)} |

    is computed directly from complex exponentials and compared with the
    series value; the maximum absolute difference over the points comes
    back.
    """
    r_star = np.asarray(r_star, dtype=float)
    config = StructureConfig(trunc=trunc)
    n = array.count
    worst = 0.0
    for r in np.asarray(points, dtype=float):
        phases = array.directions @ (r - r_star)
        e = np.exp(1j * k_real * phases)
        total = np.sum(e) ** 2 - np.sum(e * e)
        direct = abs(total / n) / (n - 1)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ValidityMarginWarning)
            series = structure_diag(r, array, k_real, r_star, config)
        worst = max(worst, abs(direct - series))
    return worst
