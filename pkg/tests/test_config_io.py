import math

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from smig import config as cfgmod
from smig import fileio, forward, imaging
from smig.errors import ConfigError, DataError


def test_empty_config_gives_table_defaults():
    cfg = cfgmod.parse_config("# nothing but a comment\n")
    assert cfg == cfgmod.RunConfig()
    assert cfg.medium.permittivity_rel == 20.0
    assert cfg.medium.conductivity_s_per_m == 0.2
    assert cfg.medium.frequency_hz == 1.0e9
    assert cfg.array.count == 16
    assert cfg.array.radius_m == 0.09
    a = cfg.anomalies[0]
    assert (a.center_x_m, a.center_y_m) == (0.01, 0.03)
    assert a.radius_m == 0.010
    assert a.permittivity_rel == 55.0
    assert a.conductivity_s_per_m == 1.2
    assert cfg.grid.step_m == 0.001


def test_zero_step_rejected():
    with pytest.raises(ConfigError):
        cfgmod.parse_config("grid.step_m = 0.0\n")


def test_unknown_key_rejected():
    with pytest.raises(ConfigError, match="array.radius_furlongs"):
        cfgmod.parse_config("array.radius_furlongs = 1\n")


def test_duplicate_key_rejected():
    with pytest.raises(ConfigError, match="duplicate"):
        cfgmod.parse_config("array.count = 8\narray.count = 9\n")


def test_type_mismatch_rejected():
    with pytest.raises(ConfigError, match="array.count"):
        cfgmod.parse_config("array.count = sixteen\n")


def test_enum_value_rejected():
    with pytest.raises(ConfigError, match="matrix_kind"):
        cfgmod.parse_config("imaging.matrix_kind = diagonal_free\n")


def test_anomaly_index_gap_rejected():
    with pytest.raises(ConfigError, match="contiguous"):
        cfgmod.parse_config("anomaly.3.radius_m = 0.01\n")


def test_array_round_trip():
    cfg = cfgmod.parse_config("array.count = 16\narray.radius_m = 0.09\n")
    again = cfgmod.parse_config(cfgmod.serialize_config(cfg))
    assert again == cfg


def test_override_application():
    cfg = cfgmod.apply_overrides(cfgmod.RunConfig(), ["medium.frequency_hz=0.8e9"])
    assert cfg.medium.frequency_hz == 0.8e9
    with pytest.raises(ConfigError):
        cfgmod.apply_overrides(cfgmod.RunConfig(), ["medium.frequency_hz"])


def test_noise_snr_inf_round_trip():
    cfg = cfgmod.RunConfig()
    assert math.isinf(cfg.synthesis.noise_snr_db)
    again = cfgmod.parse_config(cfgmod.serialize_config(cfg))
    assert math.isinf(again.synthesis.noise_snr_db)


def test_config_hash_tracks_content():
    base = cfgmod.RunConfig()
    other = cfgmod.apply_overrides(base, ["array.count=8"])
    assert cfgmod.config_hash(base) == cfgmod.config_hash(cfgmod.RunConfig())
    assert cfgmod.config_hash(base) != cfgmod.config_hash(other)


_cfg_strategy = st.builds(
    cfgmod.RunConfig,
    medium=st.builds(
        cfgmod.MediumConfig,
        permittivity_rel=st.floats(min_value=1.0, max_value=100.0),
        conductivity_s_per_m=st.floats(min_value=0.0, max_value=5.0),
        frequency_hz=st.floats(min_value=1e8, max_value=5e9),
    ),
    array=st.builds(
        cfgmod.ArrayConfig,
        count=st.integers(min_value=2, max_value=64),
        radius_m=st.floats(min_value=0.01, max_value=1.0),
    ),
    anomalies=st.lists(
        st.builds(
            cfgmod.AnomalyConfig,
            center_x_m=st.floats(min_value=-0.05, max_value=0.05),
            center_y_m=st.floats(min_value=-0.05, max_value=0.05),
            radius_m=st.floats(min_value=1e-3, max_value=0.05),
            permittivity_rel=st.floats(min_value=1.0, max_value=100.0),
            conductivity_s_per_m=st.floats(min_value=0.0, max_value=5.0),
        ),
        min_size=1, max_size=3,
    ).map(tuple),
    imaging=st.builds(
        cfgmod.ImagingConfig,
        matrix_kind=st.sampled_from(["full", "zero_diagonal"]),
        rank_mode=st.just("relative_threshold"),
        rank_threshold=st.floats(min_value=1e-4, max_value=0.5),
        lossless_k=st.booleans(),
    ),
    synthesis=st.builds(
        cfgmod.SynthesisConfig,
        generator=st.sampled_from(["born", "exact_disc"]),
        contamination_amplitude_rel=st.floats(min_value=0.0, max_value=10.0),
        contamination_mode=st.sampled_from(["constant", "random"]),
        contamination_seed=st.integers(min_value=0, max_value=2**31),
        noise_snr_db=st.one_of(st.just(math.inf), st.floats(min_value=-10, max_value=60)),
        noise_seed=st.integers(min_value=0, max_value=2**31),
    ),
)


@settings(max_examples=100)
@given(cfg=_cfg_strategy)
def test_config_round_trip_property(cfg):
    assert cfgmod.parse_config(cfgmod.serialize_config(cfg)) == cfg


def test_sparams_round_trip(tmp_path, born_fixture):
    path = tmp_path / "s.csv"
    fileio.write_sparams(born_fixture, path)
    back = fileio.read_sparams(path)
    assert np.array_equal(back.entries, born_fixture.entries)
    assert back.frequency_hz == born_fixture.frequency_hz
    assert back.kind == forward.KIND_FULL


def test_sparams_zero_diag_detection(tmp_path, born_fixture):
    path = tmp_path / "d.csv"
    fileio.write_sparams(imaging.zero_diagonal(born_fixture), path)
    assert fileio.read_sparams(path).kind == forward.KIND_ZERO_DIAGONAL


def test_sparams_missing_entry(tmp_path, born_fixture):
    path = tmp_path / "s.csv"
    fileio.write_sparams(born_fixture, path)
    lines = path.read_text().splitlines()
    kept = [ln for ln in lines if not ln.startswith("3,7,")]
    path.write_text("\n".join(kept) + "\n")
    with pytest.raises(DataError, match=r"\(3, 7\)"):
        fileio.read_sparams(path)


def test_sparams_duplicate_entry(tmp_path, born_fixture):
    path = tmp_path / "s.csv"
    fileio.write_sparams(born_fixture, path)
    with open(path, "a") as fh:
        fh.write("2,2,0.0,0.0\n")
    with pytest.raises(DataError, match=r"\(2,2\)"):
        fileio.read_sparams(path)


def test_sparams_non_finite(tmp_path):
    path = tmp_path / "s.csv"
    path.write_text(
        "# smig-sparams v1, N=2, f_hz=1.0\nm,n,re,im\n"
        "1,1,0.0,0.0\n1,2,nan,0.0\n2,1,0.0,0.0\n2,2,0.0,0.0\n"
    )
    with pytest.raises(DataError, match=r"\(1,2\)"):
        fileio.read_sparams(path)


def test_sparams_header_required(tmp_path):
    path = tmp_path / "s.csv"
    path.write_text("m,n,re,im\n1,1,0,0\n")
    with pytest.raises(DataError, match="header"):
        fileio.read_sparams(path)


def test_paired_files_reproduce_fixture(tmp_path, born_fixture, paper_array, paper_medium):
    inc = forward.incident_coupling_smatrix(paper_array, paper_medium)
    tot = forward.ScatteringMatrix(
        inc.entries + born_fixture.entries, forward.KIND_FULL, "file",
        paper_medium.frequency_hz,
    )
    p_tot, p_inc = tmp_path / "tot.csv", tmp_path / "inc.csv"
    fileio.write_sparams(tot, p_tot)
    fileio.write_sparams(inc, p_inc)
    back = forward.subtract(fileio.read_sparams(p_tot), fileio.read_sparams(p_inc))
    scale = np.abs(born_fixture.entries).max()
    assert np.abs(back.entries - born_fixture.entries).max() <= 1e-9 * scale


def test_map_csv_round_trip(tmp_path, default_grid):
    rng = np.random.default_rng(5)
    values = rng.random(default_grid.shape)
    image = imaging.ImageMap(default_grid, values, 1, 1e9, "full")
    path = tmp_path / "map.csv"
    fileio.write_map(image, path, "csv")
    xs, ys = default_grid.x_axis(), default_grid.y_axis()
    rows = path.read_text().splitlines()[1:]
    assert len(rows) == values.size
    for idx in (0, 1234, 20000, values.size - 1):
        x, y, v = (float(t) for t in rows[idx].split(","))
        ix, iy = divmod(idx, ys.size)
        assert x == xs[ix] and y == ys[iy] and v == values[ix, iy]


def test_map_pgm_constant_saturates(tmp_path, coarse_grid):
    image = imaging.ImageMap(coarse_grid, np.full(coarse_grid.shape, 0.37), 1, 1e9, "full")
    path = tmp_path / "map.pgm"
    fileio.write_map(image, path, "pgm")
    blob = path.read_bytes()
    header_end = blob.index(b"255\n") + 4
    assert blob[:3] == b"P5\n"
    assert set(blob[header_end:]) == {255}
    sidecar = (tmp_path / "map.pgm.meta.txt").read_text()
    assert "normalization_max = 0.37" in sidecar


def test_map_pgm_brightest_pixel(tmp_path, coarse_grid):
    xs, ys = coarse_grid.x_axis(), coarse_grid.y_axis()
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    values = np.exp(-((gx - 0.01) ** 2 + (gy - 0.03) ** 2) / 1e-4)
    image = imaging.ImageMap(coarse_grid, values, 1, 1e9, "zero_diagonal")
    path = tmp_path / "map.pgm"
    fileio.write_map(image, path, "pgm")
    blob = path.read_bytes()
    header, rest = blob.split(b"\n", 1)
    dims, rest = rest.split(b"\n", 1)
    width, height = (int(t) for t in dims.split())
    pixels = np.frombuffer(rest.split(b"\n", 1)[1], dtype=np.uint8).reshape(height, width)
    row, col = np.unravel_index(np.argmax(pixels), pixels.shape)
    # Row 0 is y_max; brightest pixel must sit at the map argmax cell.
    ix, iy = np.unravel_index(np.argmax(values), values.shape)
    assert col == ix
    assert row == ys.size - 1 - iy


def test_spectrum_file(tmp_path, born_fixture, contaminated_fixture):
    decomp = imaging.svd(born_fixture)
    path = tmp_path / "spec.csv"
    fileio.write_spectrum(decomp, path)
    rows = [line.split(",") for line in path.read_text().splitlines()[1:]]
    taus = [float(r[1]) for r in rows]
    ratios = [float(r[2]) for r in rows]
    assert ratios[1] <= 1e-10
    assert all(taus[i + 1] <= taus[i] for i in range(len(taus) - 1))

    fileio.write_spectrum(imaging.svd(contaminated_fixture), path)
    ratios = [float(line.split(",")[2]) for line in path.read_text().splitlines()[1:]]
    assert sum(r >= 0.02 for r in ratios) >= 3


def test_sidecar_records_seed_and_hash(tmp_path, born_fixture):
    path = tmp_path / "s.csv"
    fileio.write_sparams(born_fixture, path, meta={"config_sha256": "abc", "seed": 7})
    sidecar = (tmp_path / "s.csv.meta.txt").read_text()
    assert "config_sha256 = abc" in sidecar
    assert "seed = 7" in sidecar


@settings(max_examples=100, deadline=None,
          suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(seed=st.integers(min_value=0, max_value=10_000))
def test_sparams_round_trip_property(tmp_path, seed):
    # Safe with one shared tmp_path: each example writes its own file.
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 9))
    entries = rng.standard_normal((n, n)) * 10.0 ** rng.integers(-9, 3)
    entries = entries + 1j * rng.standard_normal((n, n))
    s = forward.ScatteringMatrix(entries, forward.KIND_FULL, "file", float(rng.integers(1, 5)) * 1e9)
    path = tmp_path / ("s%d.csv" % seed)
    fileio.write_sparams(s, path)
    back = fileio.read_sparams(path)
    assert np.array_equal(back.entries, s.entries)
    assert back.frequency_hz == s.frequency_hz
