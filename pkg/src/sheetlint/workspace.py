"""On-disk workspace: scenarios, workbooks, runs and ratings as files.

Everything the service persists lives under one root directory in four
subdirectories of plain JSON (plus uploaded workbook files), so state
survives restarts, diffs cleanly and needs no database:

    scenarios/<id>.scenario.json
    workbooks/<id>            (uploaded bytes, id keeps the extension)
    runs/<run_id>.report.json
    ratings/<workbook_id>.ratings.json

All writes go through a temp file in the target directory followed by
an atomic rename, so a crashed writer never leaves a torn file behind.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import tempfile
from pathlib import Path

from filelock import FileLock

from .engine import Scenario, scenario_from_json, scenario_to_json
from .evaluation import ExpertRating, parse_ratings, ratings_to_json
from .ingest import load_workbook
from .model import Workbook
from .report import Report, deserialize_report, serialize_report

__all__ = ["Workspace", "slugify"]

_SLUG_RE = re.compile(r"[^a-z0-9]+")


def slugify(text: str) -> str:
    """Lower-case, dash-separated file-name-safe id."""
    slug = _SLUG_RE.sub("-", text.lower()).strip("-")
    if not slug:
        raise ValueError(f"cannot derive an id from {text!r}")
    return slug


def _atomic_write(path: Path, data: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


class Workspace:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        for name in ("scenarios", "workbooks", "runs", "ratings"):
            (self.root / name).mkdir(parents=True, exist_ok=True)

    # -- scenarios ---------------------------------------------------------

    def _scenario_path(self, scenario_id: str) -> Path:
        return self.root / "scenarios" / f"{scenario_id}.scenario.json"

    def scenario_lock(self, scenario_id: str) -> FileLock:
        """Advisory lock serializing writers of one scenario id."""
        return FileLock(str(self._scenario_path(scenario_id)) + ".lock")

    def save_scenario(self, scenario_id: str, scenario: Scenario) -> None:
        if slugify(scenario_id) != scenario_id:
            raise ValueError(f"scenario id {scenario_id!r} is not a slug")
        doc = json.dumps(scenario_to_json(scenario), indent=2, sort_keys=True)
        _atomic_write(self._scenario_path(scenario_id), doc.encode() + b"\n")

    def load_scenario(self, scenario_id: str) -> Scenario:
        path = self._scenario_path(scenario_id)
        if not path.is_file():
            raise FileNotFoundError(f"no scenario {scenario_id!r}")
        return scenario_from_json(json.loads(path.read_text()))

    def delete_scenario(self, scenario_id: str) -> None:
        path = self._scenario_path(scenario_id)
        if not path.is_file():
            raise FileNotFoundError(f"no scenario {scenario_id!r}")
        path.unlink()

    def list_scenarios(self) -> list[str]:
        return sorted(
            p.name.removesuffix(".scenario.json")
            for p in (self.root / "scenarios").glob("*.scenario.json")
        )

    # -- workbooks ---------------------------------------------------------

    def save_workbook(self, filename: str, data: bytes) -> str:
        """Store uploaded bytes; returns the workbook id (slug + extension).

        Re-uploading identical content reuses the id; different content
        under a taken name gets a content-digest suffix instead of
        silently replacing what existing runs were built from.
        """
        stem, ext = _split_upload_name(filename, data)
        workbook_id = f"{stem}{ext}"
        path = self.root / "workbooks" / workbook_id
        if path.is_file() and path.read_bytes() != data:
            digest = hashlib.sha1(data).hexdigest()[:8]
            workbook_id = f"{stem}-{digest}{ext}"
            path = self.root / "workbooks" / workbook_id
        _atomic_write(path, data)
        return workbook_id

    def load_workbook(self, workbook_id: str) -> Workbook:
        path = self.root / "workbooks" / workbook_id
        if not path.is_file():
            raise FileNotFoundError(f"no workbook {workbook_id!r}")
        return load_workbook(path)

    def has_workbook(self, workbook_id: str) -> bool:
        return (self.root / "workbooks" / workbook_id).is_file()

    def list_workbooks(self) -> list[str]:
        return sorted(p.name for p in (self.root / "workbooks").iterdir() if p.is_file())

    # -- runs ----------------------------------------------------------------

    def save_run(self, report: Report) -> str:
        run_id = report.run.run_id
        path = self.root / "runs" / f"{run_id}.report.json"
        _atomic_write(path, serialize_report(report, format="json"))
        return run_id

    def load_run(self, run_id: str) -> Report:
        path = self.root / "runs" / f"{run_id}.report.json"
        if not path.is_file():
            raise FileNotFoundError(f"no run {run_id!r}")
        return deserialize_report(path.read_bytes())

    def list_runs(self) -> list[str]:
        return sorted(
            p.name.removesuffix(".report.json")
            for p in (self.root / "runs").glob("*.report.json")
        )

    # -- ratings -------------------------------------------------------------

    def save_ratings(self, workbook_id: str, ratings: list[ExpertRating]) -> None:
        doc = json.dumps(ratings_to_json(ratings), indent=2)
        path = self.root / "ratings" / f"{workbook_id}.ratings.json"
        _atomic_write(path, doc.encode() + b"\n")

    def load_ratings(self, workbook_id: str) -> list[ExpertRating]:
        path = self.root / "ratings" / f"{workbook_id}.ratings.json"
        if not path.is_file():
            return []
        return parse_ratings(path.read_text())

    def ratings_for(self, workbook_ids: list[str]) -> list[ExpertRating]:
        ratings: list[ExpertRating] = []
        for workbook_id in workbook_ids:
            ratings.extend(self.load_ratings(workbook_id))
        return ratings


def _split_upload_name(filename: str, data: bytes) -> tuple[str, str]:
    name = Path(filename).name
    ext = "".join(Path(name).suffixes[-2:]).lower()
    if ext not in (".xlsx", ".json", ".sheet.json"):
        ext = ".xlsx" if data[:4] == b"PK\x03\x04" else ".json"
        stem = name
    else:
        stem = name[: -len(ext)]
    return slugify(stem), ext
