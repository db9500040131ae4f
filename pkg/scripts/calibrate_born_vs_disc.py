#!/usr/bin/env python3
"""Calibration record: point model vs exact disc solution.

Sweeps disc radius and contrast, recording the entrywise relative gap
between the two generators.  The small/weak corner anchors the foundation
of both imaging routes (the generators must coincide there); the large
corner documents where the point model stops being data-faithful.  The
achieved numbers are committed in calibration_record.txt next to this
script.

    python scripts/calibrate_born_vs_disc.py
"""

import os

import numpy as np

from smig import em, forward

RECORD = os.path.join(os.path.dirname(__file__), "calibration_record.txt")


def main():
    medium = em.MediumParams.from_relative(20.0, 0.2, 1.0e9)
    array = em.antenna_array(16, 0.09)
    lam = em.wavelength(em.wavenumber(medium))

    lines = [
        "Point model vs exact penetrable-disc series, Table-1 background,",
        "N=16, R=0.09 m, f=1 GHz, anomaly centered (0.01, 0.03) m.",
        "Entrywise max |S_disc - S_point| / |S_point|:",
        "",
        "radius      eps_rel  sigma   max_rel_gap",
    ]
    cases = [
        (lam / 50.0, 22.0, 0.25),
        (lam / 50.0, 25.0, 0.30),
        (lam / 25.0, 22.0, 0.25),
        (lam / 10.0, 30.0, 0.60),
        (0.010, 55.0, 1.2),
        (0.050, 15.0, 0.5),
    ]
    for radius, eps_rel, sigma in cases:
        anomaly = forward.Anomaly.from_relative((0.01, 0.03), radius, eps_rel, sigma)
        s_point = forward.born_smatrix(array, [anomaly], medium)
        s_disc = forward.exact_disc_smatrix(array, anomaly, medium)
        gap = float(np.max(np.abs(s_disc.entries - s_point.entries) / np.abs(s_point.entries)))
        lines.append("%.6f    %5.1f    %4.2f    %.6f" % (radius, eps_rel, sigma, gap))

    lines += [
        "",
        "The lam/50 weak-contrast corner is the acceptance anchor (gap must",
        "stay below 0.10); the Table-1 rows document why small-anomaly runs",
        "may use either generator while extended runs need the disc series.",
        "",
    ]

    # Extended-scenario imaging metrics backing the outline-recovery
    # thresholds (argmax within disc + lam/4, >= 70% of half-max points
    # within lam/2 of the disc).
    from smig import imaging

    anomaly = forward.Anomaly.from_relative((0.01, 0.02), 0.050, 15.0, 0.5)
    k = em.wavenumber(medium)
    grid = imaging.ImagingGrid(-0.1, 0.1, -0.1, 0.1, 0.001)
    data = forward.exact_disc_smatrix(array, anomaly, medium)
    image = imaging.image_diag(imaging.zero_diagonal(data), grid, array, k)
    loc, peak = imaging.argmax(image)
    xs, ys = grid.x_axis(), grid.y_axis()
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    dist_from_disc = np.maximum(
        0.0, np.hypot(gx - anomaly.center[0], gy - anomaly.center[1]) - anomaly.radius
    )
    hot = image.values >= 0.5 * peak
    coverage = float(np.sum(hot & (dist_from_disc <= lam / 2.0))) / max(1, int(hot.sum()))
    lines += [
        "Extended disc scenario (radius 0.050 m at (0.01, 0.02) m), disc-series",
        "data, diagonal-free map on the 201x201 grid:",
        "  argmax offset from center: %.4f m (allowance radius + lam/4 = %.4f m)"
        % (float(np.hypot(*(loc - anomaly.center))), anomaly.radius + lam / 4.0),
        "  half-max points within lam/2 of the disc: %.1f%% (threshold 70%%)"
        % (100.0 * coverage),
    ]

    text = "\n".join(lines) + "\n"
    with open(RECORD, "w") as fh:
        fh.write(text)
    print(text)
    print("written to %s" % RECORD)


if __name__ == "__main__":
    main()
