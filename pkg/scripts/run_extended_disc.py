#!/usr/bin/env python3
"""Extended-anomaly imaging with the exact penetrable-disc generator.

The Table-1 extended scenario (radius 0.05 m, contrast below background)
is outside the point-model regime, so the data come from the
separation-of-variables disc solution.  Only the outline of the disc is
recoverable; the script reports how the half-max region covers it.

    python scripts/run_extended_disc.py [outdir]
"""

import sys

import numpy as np

from smig import em, fileio, forward, imaging

OUT = sys.argv[1] if len(sys.argv) > 1 else "out_extended"


def main():
    import os

    os.makedirs(OUT, exist_ok=True)
    medium = em.MediumParams.from_relative(20.0, 0.2, 1.0e9)
    array = em.antenna_array(16, 0.09)
    anomaly = forward.Anomaly.from_relative((0.01, 0.02), 0.050, 15.0, 0.5)
    k = em.wavenumber(medium)
    lam = em.wavelength(k)
    grid = imaging.ImagingGrid(-0.1, 0.1, -0.1, 0.1, 0.001)

    print("smallness index %.4f vs lambda %.4f -> extended"
          % (em.smallness_index(anomaly.radius, anomaly.eps_star, medium), lam))

    data = forward.exact_disc_smatrix(array, anomaly, medium)
    diag_map = imaging.image_diag(imaging.zero_diagonal(data), grid, array, k)
    full_map = imaging.image_full(data, grid, array, k)

    xs, ys = grid.x_axis(), grid.y_axis()
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    dist_from_disc = np.maximum(
        0.0, np.hypot(gx - anomaly.center[0], gy - anomaly.center[1]) - anomaly.radius
    )
    for name, image in (("diag", diag_map), ("full", full_map)):
        loc, peak = imaging.argmax(image)
        hot = image.values >= 0.5 * peak
        covered = np.sum(hot & (dist_from_disc <= lam / 2.0)) / max(1, hot.sum())
        fileio.write_map(image, "%s/map_%s.pgm" % (OUT, name), "pgm")
        fileio.write_map(image, "%s/map_%s.csv" % (OUT, name), "csv")
        print("%s map: argmax (%.4f, %.4f), %.4f m from center, peak %.4f, "
              "%.0f%% of half-max points within lambda/2 of the disc"
              % (name, loc[0], loc[1], np.hypot(*(loc - anomaly.center)), peak,
                 100 * covered))


if __name__ == "__main__":
    main()
