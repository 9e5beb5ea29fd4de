"""Tests for sequence and report files."""

import json
import tempfile
from pathlib import Path

import pytest

from gcyclo.errors import ParameterError
from gcyclo.services.cyclotomy import build_params
from gcyclo.services.lc_engine import measure
from gcyclo.services.sequence_gen import BinarySequence, generate
from gcyclo.services.storage import StorageService


class TestStorageService:
    """Test storage service functionality."""

    def test_sequence_path(self):
        """Default names carry every parameter."""
        with tempfile.TemporaryDirectory() as temp_dir:
            storage = StorageService(Path(temp_dir))
            path = storage.sequence_path(build_params(7, 2, 3, b=5), "hex")
            assert path.name == "seq_p7_n2_e3_b5_g3.hex"
            assert path.parent == Path(temp_dir)
            with pytest.raises(ParameterError):
                storage.sequence_path(build_params(5, 1, 2), "xml")

    def test_creates_output_dir(self):
        """The base directory is created on construction."""
        with tempfile.TemporaryDirectory() as temp_dir:
            base = Path(temp_dir) / "nested" / "outputs"
            StorageService(base)
            assert base.is_dir()

    def test_bits_file(self):
        """Header lines, then the bits."""
        with tempfile.TemporaryDirectory() as temp_dir:
            storage = StorageService(Path(temp_dir))
            seq = generate(build_params(5, 1, 2))
            path = storage.save_sequence(seq, "bits")
            assert path.read_text().splitlines() == ["# p,n,e,b,g: 5,1,2,0,2", "# period: 5", "11001"]

            loaded = storage.load_sequence(path)
            assert loaded == seq
            assert loaded.params == seq.params

    @pytest.mark.parametrize("fmt", ["bits", "hex", "csv", "json"])
    def test_formats_reload(self, fmt):
        """Every format reads back the same period and parameters."""
        with tempfile.TemporaryDirectory() as temp_dir:
            storage = StorageService(Path(temp_dir))
            seq = generate(build_params(7, 2, 3, b=4))
            loaded = storage.load_sequence(storage.save_sequence(seq, fmt))
            assert loaded == seq
            assert loaded.params == seq.params

    def test_hex_content(self):
        """11001 packs to 13."""
        with tempfile.TemporaryDirectory() as temp_dir:
            storage = StorageService(Path(temp_dir))
            path = storage.save_sequence(generate(build_params(5, 1, 2)), "hex")
            assert path.read_text().splitlines()[-1] == "13"

    def test_sequence_without_params(self):
        """Plain sequences need an explicit path and still get a period header."""
        with tempfile.TemporaryDirectory() as temp_dir:
            storage = StorageService(Path(temp_dir))
            seq = BinarySequence.from_ascii("1110100")
            with pytest.raises(ParameterError):
                storage.save_sequence(seq, "bits")
            path = storage.save_sequence(seq, "hex", Path(temp_dir) / "plain.hex")
            loaded = storage.load_sequence(path)
            assert loaded == seq
            assert loaded.params is None

    def test_unknown_suffix(self):
        """The format must follow from the suffix."""
        with tempfile.TemporaryDirectory() as temp_dir:
            storage = StorageService(Path(temp_dir))
            path = Path(temp_dir) / "seq.txt"
            path.write_text("11001")
            with pytest.raises(ParameterError):
                storage.load_sequence(path)

    @pytest.mark.parametrize("fmt,suffix", [("json", ".json"), ("csv", ".csv")])
    def test_reports(self, fmt, suffix):
        """Reports read back as CSV-style rows."""
        with tempfile.TemporaryDirectory() as temp_dir:
            storage = StorageService(Path(temp_dir))
            reports = [measure(build_params(5, 1, 2)), measure(build_params(7, 1, 3), methods=("bm",))]
            path = storage.save_reports(reports, Path(temp_dir) / f"reports{suffix}", fmt)
            assert storage.load_reports(path) == [r.to_row() for r in reports]

    def test_dump_classes_file(self):
        """The class dump is plain JSON."""
        with tempfile.TemporaryDirectory() as temp_dir:
            storage = StorageService(Path(temp_dir))
            path = storage.dump_classes_file(build_params(5, 1, 2), Path(temp_dir) / "classes.json")
            assert json.loads(path.read_text()) == {"1,0": [1, 4], "1,1": [2, 3], "c0": [2, 3], "c1": [0, 1, 4]}

    def test_format_file_size(self):
        """Test file size formatting."""
        with tempfile.TemporaryDirectory() as temp_dir:
            storage = StorageService(Path(temp_dir))

            assert storage.format_file_size(0) == "0 B"
            assert storage.format_file_size(1024) == "1.0 KB"
            assert storage.format_file_size(1024 * 1024) == "1.0 MB"
            assert storage.format_file_size(1024 * 1024 * 1024) == "1.0 GB"

    def test_run_summary(self):
        """Summary counts the files written so far."""
        with tempfile.TemporaryDirectory() as temp_dir:
            storage = StorageService(Path(temp_dir))
            storage.save_sequence(generate(build_params(5, 1, 2)), "bits")
            storage.save_sequence(generate(build_params(5, 1, 2)), "json")

            summary = storage.get_run_summary()

            assert summary["total_files"] == 2
            assert {f["type"] for f in summary["files"]} == {".bits", ".json"}
            assert summary["total_size"] > 0
