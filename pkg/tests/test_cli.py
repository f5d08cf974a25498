import subprocess
import sys

import numpy as np
import pytest

from conftest import gaussian_bimodal_pixels, jittered_two_population
from thfcm.cli import run, sidecar_path
from thfcm.histogram import GrayImage
from thfcm.io_formats import read_pgm, write_pgm
from thfcm.segmentation import apply_global_threshold, mean_threshold


@pytest.fixture
def bimodal_pgm(tmp_path):
    path = tmp_path / "in.pgm"
    path.write_bytes(write_pgm(GrayImage(gaussian_bimodal_pixels())))
    return path


@pytest.fixture
def two_pop_pgm(tmp_path):
    path = tmp_path / "two.pgm"
    path.write_bytes(write_pgm(GrayImage(jittered_two_population(64))))
    return path


def test_segment_writes_mask(bimodal_pgm, tmp_path):
    out = tmp_path / "mask.pgm"
    assert run(["segment", str(bimodal_pgm), "-o", str(out)]) == 0
    mask = read_pgm(out.read_bytes())
    assert set(np.unique(mask.pixels).tolist()) == {0, 255}


def test_segment_diagnostics_and_sidecar(bimodal_pgm, tmp_path):
    csv, svg = tmp_path / "d.csv", tmp_path / "d.svg"
    code = run(["segment", str(bimodal_pgm), "-o", str(tmp_path / "m.pgm"), "--csv", str(csv), "--svg", str(svg), "--window", "7"])
    assert code == 0
    assert len(csv.read_text().splitlines()) == 257
    assert "<svg" in svg.read_text()
    echo = dict(line.split("=", 1) for line in sidecar_path(csv).read_text().splitlines())
    assert echo == {
        "cluster_count": "3",
        "fuzzifier": "2.0",
        "tolerance": "1e-06",
        "max_iterations": "300",
        "smoothing_window": "7",
        "init": "quantile",
        "seed": "0",
    }


def test_segment_is_deterministic(bimodal_pgm, tmp_path):
    outs = []
    for k in range(2):
        files = [tmp_path / f"m{k}.pgm", tmp_path / f"d{k}.csv", tmp_path / f"d{k}.svg"]
        run(["segment", str(bimodal_pgm), "-o", str(files[0]), "--csv", str(files[1]), "--svg", str(files[2])])
        outs.append([f.read_bytes() for f in files])
    assert outs[0] == outs[1]


def test_missing_input(tmp_path):
    out = tmp_path / "out.pgm"
    assert run(["segment", str(tmp_path / "missing.pgm"), "-o", str(out)]) == 2
    assert not out.exists()


def test_bad_format(tmp_path):
    src = tmp_path / "color.ppm"
    src.write_bytes(b"P6\n1 1\n255\n\x00\x00\x00")
    assert run(["segment", str(src), "-o", str(tmp_path / "o.pgm")]) == 2


def test_degenerate(tmp_path):
    src = tmp_path / "flat.pgm"
    src.write_bytes(write_pgm(GrayImage(np.full((4, 4), 9))))
    out = tmp_path / "o.pgm"
    assert run(["segment", str(src), "-o", str(out), "--csv", str(tmp_path / "d.csv")]) == 3
    assert list(tmp_path.iterdir()) == [src]


def test_existing_output_untouched_on_error(tmp_path):
    out = tmp_path / "o.pgm"
    out.write_bytes(b"keep")
    src = tmp_path / "bad.pgm"
    src.write_bytes(b"P5\n2 2\n255\n\x00")
    assert run(["segment", str(src), "-o", str(out)]) == 2
    assert out.read_bytes() == b"keep"


@pytest.mark.parametrize(
    "extra",
    [["--window", "4"], ["--clusters", "0"], ["--fuzzifier", "1"], ["--tol", "0"], ["--max-iter", "0"], ["--init", "kmeans"], ["--bogus"], ["--clusters", "x"]],
)
def test_usage_errors(bimodal_pgm, tmp_path, extra):
    out = tmp_path / "o.pgm"
    assert run(["segment", str(bimodal_pgm), "-o", str(out), *extra]) == 1
    assert not out.exists()


def test_usage_error_checked_before_io(tmp_path):
    assert run(["segment", str(tmp_path / "missing.pgm"), "-o", str(tmp_path / "o"), "--window", "2"]) == 1


def test_no_subcommand():
    assert run([]) == 1


def test_threshold_passthrough(two_pop_pgm, tmp_path):
    out = tmp_path / "t.pgm"
    assert run(["threshold", str(two_pop_pgm), "-o", str(out), "--t", "127"]) == 0
    image = read_pgm(two_pop_pgm.read_bytes())
    assert read_pgm(out.read_bytes()) == apply_global_threshold(image, 127)


def test_threshold_mean(two_pop_pgm, tmp_path):
    out = tmp_path / "t.pgm"
    assert run(["threshold", str(two_pop_pgm), "-o", str(out), "--t", "mean"]) == 0
    image = read_pgm(two_pop_pgm.read_bytes())
    assert read_pgm(out.read_bytes()) == apply_global_threshold(image, mean_threshold(image))


@pytest.mark.parametrize("t", ["256", "-1", "abc"])
def test_threshold_bad_t(two_pop_pgm, tmp_path, t):
    assert run(["threshold", str(two_pop_pgm), "-o", str(tmp_path / "t.pgm"), "--t", t]) == 1


def test_histogram_subcommand(two_pop_pgm, tmp_path):
    out = tmp_path / "h.csv"
    assert run(["histogram", str(two_pop_pgm), "-o", str(out), "--window", "3"]) == 0
    rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
    assert len(rows) == 256
    assert all(r[3:] == ["-1", "0", "0"] for r in rows)
    assert sum(int(r[1]) for r in rows) == 64 * 64
    assert sidecar_path(out).read_text() == "smoothing_window=3\n"


def test_module_entry_point_help():
    proc = subprocess.run([sys.executable, "-m", "thfcm", "segment", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "exit codes" in proc.stdout and "--window" in proc.stdout
