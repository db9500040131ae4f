"""S-parameter, map, and spectrum files.

S-parameters travel as CSV with a one-line header:

    # smig-sparams v1, N=16, f_hz=1000000000.0
    m,n,re,im

Values are written with the shortest round-trip decimal representation,
so write -> read is bit-exact.  Maps go out as x,y,value CSV or as binary
P5 PGM (row 0 = y_max) with a metadata sidecar; spectra as m,tau,ratio
CSV.  Writers accept an optional meta mapping whose entries (seed, config
hash, ...) land in a sidecar next to the file.
"""

import re
from dataclasses import dataclass

import numpy as np

from .errors import DataError, SmigError
from .forward import KIND_FULL, KIND_ZERO_DIAGONAL, ScatteringMatrix

_HEADER_RE = re.compile(r"#\s*smig-sparams\s+v1,\s*N=(\d+),\s*f_hz=([^\s,]+)")


@dataclass(frozen=True)
class SParamRecord:
    """One file row: 1-based antenna pair and the complex value's parts."""

    m: int
    n: int
    re: float
    im: float


def _fmt(x):
    return repr(float(x))


def write_sidecar(path, fields):
    with open(str(path) + ".meta.txt", "w") as fh:
        for key, value in fields.items():
            fh.write("%s = %s\n" % (key, value))


def write_sparams(s_matrix, path, meta=None):
    """Write an N x N matrix as the v1 CSV format."""
    n = s_matrix.size
    with open(path, "w") as fh:
        fh.write("# smig-sparams v1, N=%d, f_hz=%s\n" % (n, _fmt(s_matrix.frequency_hz)))
        fh.write("m,n,re,im\n")
        for m in range(n):
            for j in range(n):
                v = s_matrix.entries[m, j]
                fh.write("%d,%d,%s,%s\n" % (m + 1, j + 1, _fmt(v.real), _fmt(v.imag)))
    if meta is not None:
        write_sidecar(path, meta)


def read_sparams(path):
    """Read a v1 CSV file; demands complete N x N coverage, no duplicates."""
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines or not (match := _HEADER_RE.match(lines[0])):
        raise DataError("%s: missing smig-sparams v1 header" % path)
    n = int(match.group(1))
    f_hz = float(match.group(2))
    entries = np.full((n, n), np.nan + 0j, dtype=complex)
    seen = set()
    for raw in lines[1:]:
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("m,"):
            continue
        parts = line.split(",")
        if len(parts) != 4:
            raise DataError("%s: malformed row %r" % (path, raw))
        rec = SParamRecord(int(parts[0]), int(parts[1]), float(parts[2]), float(parts[3]))
        if not (1 <= rec.m <= n and 1 <= rec.n <= n):
            raise DataError("%s: index (%d,%d) outside 1..%d" % (path, rec.m, rec.n, n))
        if (rec.m, rec.n) in seen:
            raise DataError("%s: duplicate entry (%d,%d)" % (path, rec.m, rec.n))
        seen.add((rec.m, rec.n))
        if not (np.isfinite(rec.re) and np.isfinite(rec.im)):
            raise DataError("%s: non-finite value at (%d,%d)" % (path, rec.m, rec.n))
        entries[rec.m - 1, rec.n - 1] = complex(rec.re, rec.im)
    if len(seen) != n * n:
        missing = [(m + 1, j + 1) for m in range(n) for j in range(n) if (m + 1, j + 1) not in seen]
        raise DataError("%s: missing entries %s" % (path, missing[:8]))
    kind = KIND_ZERO_DIAGONAL if np.all(np.diag(entries) == 0) else KIND_FULL
    return ScatteringMatrix(entries, kind, "file", f_hz)


def write_map(image, path, fmt="csv", meta=None):
    """Write an image map as CSV (full precision) or 8-bit P5 PGM."""
    if fmt == "csv":
        _write_map_csv(image, path, meta)
    elif fmt == "pgm":
        _write_map_pgm(image, path, meta)
    else:
        raise SmigError("unknown map format %r" % (fmt,))


def _write_map_csv(image, path, meta):
    xs = image.grid.x_axis()
    ys = image.grid.y_axis()
    with open(path, "w") as fh:
        fh.write("x,y,value\n")
        for ix in range(xs.size):
            for iy in range(ys.size):
                fh.write("%s,%s,%s\n" % (_fmt(xs[ix]), _fmt(ys[iy]), _fmt(image.values[ix, iy])))
    if meta is not None:
        write_sidecar(path, meta)


def _write_map_pgm(image, path, meta):
    values = image.values
    vmax = float(values.max())
    scaled = np.zeros_like(values) if vmax == 0 else values / vmax
    # Image convention: first pixel row is y_max, columns run x_min -> x_max.
    pixels = np.rint(255.0 * scaled[:, ::-1].T).astype(np.uint8)
    height, width = pixels.shape
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (width, height))
        fh.write(pixels.tobytes())
    fields = {
        "frequency_hz": _fmt(image.frequency_hz),
        "matrix_kind": image.matrix_kind,
        "rank_used": image.rank_used,
        "normalization_max": _fmt(vmax),
    }
    if meta:
        fields.update(meta)
    write_sidecar(path, fields)


def write_spectrum(svd_result, path, meta=None):
    """Write rows m, tau_m, tau_m/tau_1."""
    tau = svd_result.singular_values
    top = float(tau[0]) if tau.size else 0.0
    with open(path, "w") as fh:
        fh.write("m,tau,ratio\n")
        for m, value in enumerate(tau, start=1):
            ratio = float(value) / top if top > 0 else 0.0
            fh.write("%d,%s,%s\n" % (m, _fmt(value), _fmt(ratio)))
    if meta is not None:
        write_sidecar(path, meta)
