"""
JSON Reporter — deterministic JSON and JSON-lines output.

Keys are sorted and every number that could be rational is already a
string, so identical inputs give byte-identical output.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, TextIO

from chromatic_forge.utils.logger import get_logger

logger = get_logger("reporters")


def dumps(payload: Any, indent: Optional[int] = 2) -> str:
    return json.dumps(payload, indent=indent, sort_keys=True, ensure_ascii=False)


def dumps_line(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


class JSONReporter:
    """Writes command results to a stream or into the report directory."""

    def __init__(self, output_dir: str = "./reports", indent: int = 2) -> None:
        self.output_dir = Path(output_dir)
        self.indent = indent

    def emit(self, payload: Any, stream: TextIO) -> None:
        stream.write(dumps(payload, self.indent) + "\n")

    def emit_lines(self, records: Iterable[Any], stream: TextIO) -> int:
        count = 0
        for record in records:
            stream.write(dumps_line(record) + "\n")
            count += 1
        return count

    def generate(self, payload: Any, filename: str) -> str:
        """
        Write one JSON report file.

        Args:
            payload: A JSON-ready object.
            filename: File name (or absolute path) for the report.

        Returns:
            Path to the generated report file.
        """
        filepath = self._resolve(filename)
        with open(filepath, "w") as f:
            self.emit(payload, f)
        logger.info(f"JSON report saved to {filepath}")
        return str(filepath)

    def generate_lines(self, records: Iterable[Any], filename: str) -> str:
        """Write a JSON-lines report file, one record per line."""
        filepath = self._resolve(filename)
        with open(filepath, "w") as f:
            count = self.emit_lines(records, f)
        logger.info(f"JSONL report with {count} records saved to {filepath}")
        return str(filepath)

    def _resolve(self, filename: str) -> Path:
        path = Path(filename)
        if not path.is_absolute() and path.parent == Path("."):
            path = self.output_dir / path
        path.parent.mkdir(parents=True, exist_ok=True)
        return path
