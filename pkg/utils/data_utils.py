# utils/data_utils.py
import json
import os
from datetime import datetime, timezone
from typing import List, Optional

from models.reports import ReportRecord


def utc_timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _ensure_parent(filename: str) -> None:
    directory = os.path.dirname(filename)
    if directory:
        os.makedirs(directory, exist_ok=True)


class ReportWriter:
    """Single appender for the JSON-lines report stream."""

    def __init__(self, filename: str):
        self.filename = filename
        self.written = 0

    def append(self, record: ReportRecord) -> None:
        _ensure_parent(self.filename)
        with open(self.filename, "a", encoding="utf-8") as f:
            f.write(record.model_dump_json() + "\n")
        self.written += 1


def load_report_records(filename: str, kind: Optional[str] = None) -> List[ReportRecord]:
    if not os.path.exists(filename):
        return []
    records = []
    with open(filename, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            record = ReportRecord.model_validate_json(line)
            if kind is None or record.kind == kind:
                records.append(record)
    return records


def save_records_to_json(records: List[ReportRecord], filename: str) -> None:
    _ensure_parent(filename)
    with open(filename, "w", encoding="utf-8") as f:
        json.dump([r.model_dump(mode="json") for r in records], f, indent=2)
