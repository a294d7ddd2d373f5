"""Tests of the result store."""

import json

import numpy as np
import pytest

from models.probe import FrequencyGrid, ProbeConfig
from models.spectra import MeasuredSpectrum
from models.spectral_density import SpectralDensity, SpectralDensityKind
from physics.forward import forward_spectrum
from utils.errors import SpectrumFileError
from utils.storage import ResultStore, finite_or_none, format_float


@pytest.fixture
def store(tmp_path):
    return ResultStore(str(tmp_path / "results"))


def test_store_creates_output_directory(tmp_path):
    store = ResultStore(str(tmp_path / "a" / "b"))
    assert store.output_dir.is_dir()


def test_store_uses_environment_default(tmp_path, monkeypatch):
    monkeypatch.setenv("SDPROBE_OUT", str(tmp_path / "from_env"))
    assert ResultStore().output_dir == tmp_path / "from_env"


@pytest.mark.parametrize("name", ["", "../escape.csv", "a/b.csv", ".hidden", "x" * 129])
def test_invalid_file_names_are_rejected(store, name):
    with pytest.raises(ValueError):
        store.path(name)


def test_floats_keep_full_precision():
    assert float(format_float(0.1 + 0.2)) == 0.1 + 0.2
    assert format_float(np.float64(1.5)) == "1.5"
    assert finite_or_none(float("nan")) is None
    assert finite_or_none(2.5) == 2.5


def test_forward_spectrum_file_reads_back_as_measurement(store, unit_probe):
    spectrum = forward_spectrum(SpectralDensity.lorentzian(1.0, 0.5, 0.0), unit_probe)
    path = store.write_spectrum("spectrum.csv", spectrum)
    with open(path, encoding="utf-8") as handle:
        assert handle.readline().strip() == "omega,re_r,im_r,re_t,im_t,R,T,A"

    measured = ResultStore.read_measured_spectrum(path)
    assert not measured.has_uncertainty
    np.testing.assert_array_equal(measured.grid.omega, unit_probe.grid.omega)
    np.testing.assert_array_equal(measured.reflectance, spectrum.reflectance)
    np.testing.assert_array_equal(measured.transmittance, spectrum.transmittance)


def test_measured_spectrum_keeps_uncertainties(store):
    grid = FrequencyGrid.linspace(0.0, 1.0, 3)
    ms = MeasuredSpectrum(grid, [0.5, 0.4, 0.3], [0.3, 0.3, 0.3], sigma_r=0.01, sigma_t=0.02)
    again = ResultStore.read_measured_spectrum(store.write_measured("measured.csv", ms))
    np.testing.assert_array_equal(again.sigma_r, ms.sigma_r)
    np.testing.assert_array_equal(again.sigma_t, ms.sigma_t)


def test_writes_are_byte_identical(tmp_path, unit_probe):
    spectrum = forward_spectrum(SpectralDensity.ohmic(0.05, 2.0), unit_probe)
    first = ResultStore(str(tmp_path / "one")).write_spectrum("spectrum.csv", spectrum)
    second = ResultStore(str(tmp_path / "two")).write_spectrum("spectrum.csv", spectrum)
    assert first.read_bytes() == second.read_bytes()


def test_json_is_sorted_and_terminated(store):
    path = store.write_json("summary.json", {"b": 1, "a": [1.5, None]})
    text = path.read_text(encoding="utf-8")
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')
    assert ResultStore.read_json(path) == {"a": [1.5, None], "b": 1}


def test_density_files(store):
    sd = SpectralDensity.flat(0.1, (-1.0, 1.0))
    assert json.loads(store.write_sd("sd.json", sd).read_text(encoding="utf-8"))["kind"] == "flat"

    table = SpectralDensity.tabulated([0.0, 1.0, 2.0], [0.0, 0.5, 0.0])
    again = ResultStore.read_tabulated_sd(store.write_sd("sd.csv", table))
    assert again.kind is SpectralDensityKind.TABULATED
    np.testing.assert_array_equal(again.evaluate([0.5, 1.0]), [0.25, 0.5])


@pytest.mark.parametrize(
    "content",
    [
        "omega,R\n0,0.1\n1,0.2\n",
        "omega,R,T\n0,0.1,0.2\n",
        "omega,R,T\n0,0.1,0.2\n1,oops,0.2\n",
        "omega,R,T\n0,0.1,0.2\n1,nan,0.2\n",
        "omega,R,T\n0,0.1,0.2\n1,1.5,0.2\n",
        "omega,R,T\n1,0.1,0.2\n0,0.1,0.2\n",
    ],
    ids=["missing_column", "one_row", "non_numeric", "non_finite", "out_of_range", "unsorted"],
)
def test_malformed_spectrum_files(tmp_path, content):
    path = tmp_path / "bad.csv"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(SpectrumFileError):
        ResultStore.read_measured_spectrum(path)


def test_missing_file(tmp_path):
    with pytest.raises(SpectrumFileError):
        ResultStore.read_measured_spectrum(tmp_path / "absent.csv")


def test_probe_without_grid_cannot_simulate():
    with pytest.raises(ValueError):
        forward_spectrum(SpectralDensity.zero(), ProbeConfig(0.0, 1.0, 1.0))
