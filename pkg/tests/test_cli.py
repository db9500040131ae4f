import numpy as np
import pytest

from smig import fileio, forward
from smig.cli import main

FAST = [
    "--override", "grid.x_min_m=-0.05", "--override", "grid.x_max_m=0.05",
    "--override", "grid.y_min_m=-0.05", "--override", "grid.y_max_m=0.05",
    "--override", "grid.step_m=0.005",
]


def test_image_defaults_prints_argmax(tmp_path, capsys):
    rc = main(["image", "--out", str(tmp_path)] + FAST)
    out = capsys.readouterr().out
    assert rc == 0
    x = float(out.split("argmax_x_m=")[1].split()[0])
    y = float(out.split("argmax_y_m=")[1].split()[0])
    assert abs(x - 0.01) <= 1e-12 and abs(y - 0.03) <= 1e-12
    assert (tmp_path / "map.csv").exists()
    assert (tmp_path / "map.csv.meta.txt").exists()


def test_image_formats(tmp_path, capsys):
    rc = main(["image", "--out", str(tmp_path), "--format", "both"] + FAST)
    assert rc == 0
    assert (tmp_path / "map.csv").exists()
    assert (tmp_path / "map.pgm").exists()


def test_validate_reports_small_deviation(capsys):
    rc = main(["validate"])
    out = capsys.readouterr().out
    assert rc == 0
    deviation = float(out.split("max_identity_deviation=")[1].split()[0])
    spread = float(out.split("ratio_spread=")[1].split()[0])
    assert deviation <= 1e-8
    assert spread <= 1e-6


def test_spectrum_writes_file(tmp_path, capsys):
    rc = main(["spectrum", "--out", str(tmp_path),
               "--override", "imaging.matrix_kind=full"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "rank_selected=" in out
    assert (tmp_path / "spectrum.csv").exists()


def test_simulate_then_measured_image_matches_synthetic(tmp_path, capsys):
    sim_dir = tmp_path / "sim"
    rc = main(["simulate", "--out", str(sim_dir),
               "--override", "synthesis.contamination_amplitude_rel=0.0"])
    assert rc == 0
    capsys.readouterr()

    scat = fileio.read_sparams(sim_dir / "sparams_scat.csv")
    zero = forward.ScatteringMatrix(
        np.zeros_like(scat.entries), forward.KIND_FULL, "file", scat.frequency_hz
    )
    p_zero = tmp_path / "zero.csv"
    fileio.write_sparams(zero, p_zero)

    out_syn = tmp_path / "syn"
    out_meas = tmp_path / "meas"
    args = ["--override", "synthesis.contamination_amplitude_rel=0.0"] + FAST
    assert main(["image", "--out", str(out_syn)] + args) == 0
    synthetic = capsys.readouterr().out
    assert main([
        "image", "--out", str(out_meas),
        "--stot", str(sim_dir / "sparams_scat.csv"), "--sinc", str(p_zero),
    ] + args) == 0
    measured = capsys.readouterr().out
    assert synthetic.split("files=")[0] == measured.split("files=")[0]
    assert (out_syn / "map.csv").read_text() == (out_meas / "map.csv").read_text()


def test_measured_needs_both_files(tmp_path, capsys):
    rc = main(["image", "--out", str(tmp_path), "--stot", "only.csv"] + FAST)
    err = capsys.readouterr().err
    assert rc == 1
    assert err.startswith("error:")
    assert err.count("\n") == 1


def test_unknown_subcommand_usage(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_bad_override_is_one_line_error(tmp_path, capsys):
    rc = main(["image", "--out", str(tmp_path), "--override", "array.count=two"] + FAST)
    err = capsys.readouterr().err
    assert rc == 1
    assert err.startswith("error: ConfigError")


def test_seed_reproducibility(tmp_path, capsys):
    a, b, c = (tmp_path / name for name in ("a", "b", "c"))
    args = ["spectrum", "--override", "imaging.matrix_kind=full"]
    assert main(args + ["--out", str(a), "--seed", "42"]) == 0
    assert main(args + ["--out", str(b), "--seed", "42"]) == 0
    assert main(args + ["--out", str(c), "--seed", "43"]) == 0
    capsys.readouterr()
    spec_a = (a / "spectrum.csv").read_text()
    assert spec_a == (b / "spectrum.csv").read_text()
    assert spec_a != (c / "spectrum.csv").read_text()


def test_sidecar_has_config_hash(tmp_path, capsys):
    rc = main(["spectrum", "--out", str(tmp_path), "--seed", "5"])
    assert rc == 0
    sidecar = (tmp_path / "spectrum.csv.meta.txt").read_text()
    assert "config_sha256 = " in sidecar
    assert "contamination_seed = 5" in sidecar
