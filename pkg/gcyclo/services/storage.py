"""Storage utilities for sequence, report and class-dump files."""

import io
import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Iterable, List, Optional

import pandas as pd

from ..errors import ParameterError
from .cyclotomy import CyclotomicParams, build_params, dump_classes
from .lc_engine import LcReport, parse_report_csv, report_rows
from .sequence_gen import BinarySequence

logger = logging.getLogger(__name__)

SEQUENCE_FORMATS = {"bits": ".bits", "hex": ".hex", "csv": ".csv", "json": ".json"}
REPORT_FORMATS = ("json", "csv")

PARAMS_HEADER = "# p,n,e,b,g:"
PERIOD_HEADER = "# period:"


def _params_from_echo(echo: str) -> CyclotomicParams:
    try:
        p, n, e, b, g = (int(v) for v in echo.split(","))
    except ValueError as exc:
        raise ParameterError(f"malformed parameter header: {echo!r}") from exc
    return build_params(p, n, e, b, g)


class StorageService:
    """Service for writing and reading run artifacts under one output directory."""

    def __init__(self, base_output_dir: Path):
        self.base_output_dir = Path(base_output_dir)
        self.base_output_dir.mkdir(parents=True, exist_ok=True)

    def sequence_path(self, params: CyclotomicParams, fmt: str = "bits") -> Path:
        """Default file name for a sequence: seq_p{p}_n{n}_e{e}_b{b}_g{g}.{ext}."""
        if fmt not in SEQUENCE_FORMATS:
            raise ParameterError(f"unknown sequence format {fmt!r}")
        name = f"seq_p{params.p}_n{params.n}_e{params.e}_b{params.b}_g{params.g}{SEQUENCE_FORMATS[fmt]}"
        return self.base_output_dir / name

    def save_sequence(self, seq: BinarySequence, fmt: str = "bits", path: Optional[Path] = None) -> Path:
        """Write one period; text formats carry `# p,n,e,b,g:` and `# period:` header lines."""
        if fmt not in SEQUENCE_FORMATS:
            raise ParameterError(f"unknown sequence format {fmt!r}")
        if path is None:
            if seq.params is None:
                raise ParameterError("a path is required for sequences without parameters")
            path = self.sequence_path(seq.params, fmt)
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)

        if fmt == "json":
            payload = {
                "params": seq.params.model_dump() if seq.params else None,
                "period": seq.period,
                "bits": seq.to_ascii(),
            }
            path.write_text(json.dumps(payload), encoding="utf-8")
        else:
            header = []
            if seq.params is not None:
                header.append(f"{PARAMS_HEADER} {seq.params.echo()}")
            header.append(f"{PERIOD_HEADER} {seq.period}")
            if fmt == "bits":
                body = seq.to_ascii() + "\n"
            elif fmt == "hex":
                body = seq.to_hex() + "\n"
            else:
                body = seq.to_csv_frame().to_csv(index=False)
            path.write_text("\n".join(header) + "\n" + body, encoding="utf-8")

        logger.info(f"Saved {fmt} sequence of period {seq.period} to {path} ({self.format_file_size(self.get_file_size(path))})")
        return path

    def load_sequence(self, path: Path) -> BinarySequence:
        """Read a file written by save_sequence; the format follows the suffix."""
        path = Path(path)
        fmt = next((name for name, ext in SEQUENCE_FORMATS.items() if ext == path.suffix.lower()), None)
        if fmt is None:
            raise ParameterError(f"cannot infer sequence format from {path.name}")
        text = path.read_text(encoding="utf-8")

        if fmt == "json":
            payload = json.loads(text)
            params = CyclotomicParams.model_validate(payload["params"]) if payload.get("params") else None
            return BinarySequence.from_ascii(payload["bits"], params)

        params = None
        period = None
        body_lines = []
        for line in text.splitlines():
            if line.startswith(PARAMS_HEADER):
                params = _params_from_echo(line[len(PARAMS_HEADER):].strip())
            elif line.startswith(PERIOD_HEADER):
                period = int(line[len(PERIOD_HEADER):].strip())
            elif not line.startswith("#"):
                body_lines.append(line)
        body = "\n".join(body_lines)

        if fmt == "bits":
            return BinarySequence.from_ascii(body, params)
        if fmt == "hex":
            if period is None:
                raise ParameterError("hex sequence file has no period header")
            return BinarySequence.from_hex(body, period, params)
        frame = pd.read_csv(io.StringIO(body))
        frame = frame.sort_values("index")
        return BinarySequence.from_bits(frame["value"].to_numpy(), params)

    def save_reports(self, reports: Iterable[LcReport], path: Path, fmt: str = "json") -> Path:
        """Write reports as a JSON list or as CSV rows."""
        if fmt not in REPORT_FORMATS:
            raise ParameterError(f"unknown report format {fmt!r}")
        reports = list(reports)
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "json":
            path.write_text(json.dumps([r.model_dump(mode="json") for r in reports], indent=2), encoding="utf-8")
        else:
            report_rows(reports).to_csv(path, index=False)
        logger.info(f"Saved {len(reports)} reports to {path}")
        return path

    def load_reports(self, path: Path) -> List[dict]:
        """Read saved reports back as row dicts (CSV column names)."""
        path = Path(path)
        text = path.read_text(encoding="utf-8")
        if path.suffix.lower() == ".json":
            return [LcReport.model_validate(item).to_row() for item in json.loads(text)]
        return parse_report_csv(text)

    def dump_classes_file(self, params: CyclotomicParams, path: Path) -> Path:
        """Write every cyclotomic class and C_0 / C_1 as JSON."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(dump_classes(params)), encoding="utf-8")
        logger.info(f"Dumped cyclotomic classes for {params.echo()} to {path}")
        return path

    def list_run_files(self) -> List[Path]:
        """List all files in the output directory."""
        if not self.base_output_dir.exists():
            return []
        return sorted(f for f in self.base_output_dir.iterdir() if f.is_file())

    def get_file_size(self, file_path: Path) -> int:
        """Get file size in bytes."""
        return file_path.stat().st_size if file_path.exists() else 0

    def format_file_size(self, size_bytes: int) -> str:
        """Format file size in human readable format."""
        if size_bytes == 0:
            return "0 B"

        size_names = ["B", "KB", "MB", "GB"]
        i = 0
        while size_bytes >= 1024 and i < len(size_names) - 1:
            size_bytes /= 1024.0
            i += 1

        return f"{size_bytes:.1f} {size_names[i]}"

    def get_run_summary(self) -> dict:
        """Summary of the files currently in the output directory."""
        files = self.list_run_files()
        total_size = sum(self.get_file_size(f) for f in files)
        return {
            "output_dir": str(self.base_output_dir),
            "total_files": len(files),
            "total_size": total_size,
            "total_size_formatted": self.format_file_size(total_size),
            "files": [
                {
                    "name": f.name,
                    "size_formatted": self.format_file_size(self.get_file_size(f)),
                    "type": f.suffix.lower(),
                    "modified": datetime.fromtimestamp(f.stat().st_mtime).isoformat(),
                }
                for f in files
            ],
        }
