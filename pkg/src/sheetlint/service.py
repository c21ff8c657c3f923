"""HTTP+JSON service exposing the workbench over a disk workspace.

Thin transport layer: every number it serves comes from the core
modules, every write lands in the workspace as an atomic file replace.
Scenario writes are serialized per scenario id through an advisory
file lock so concurrent editors get a clean 409 instead of a torn file.
"""

from __future__ import annotations

import json
import logging
import os
import threading
import uuid
from typing import Any

from anyio import to_thread
from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse, Response
from filelock import Timeout

from .checkers import builtin_registry
from .checkers.base import CheckerDescriptor
from .decimals import decimal_to_json
from .engine import (
    ValidationIssue,
    list_checkers,
    run_scenario,
    scenario_from_json,
    scenario_to_json,
    validate_scenario,
)
from .errors import (
    EvaluationInputError,
    InvalidScenario,
    SheetlintError,
)
from .evaluation import (
    evaluate_rules,
    evaluation_to_json,
    parse_ratings,
    ratings_to_json,
)
from .report import (
    build_report,
    parse_filter_args,
    parse_group_key,
    report_to_json,
)
from .workspace import Workspace, slugify

__all__ = ["create_app", "DEFAULT_MAX_UPLOAD"]

DEFAULT_MAX_UPLOAD = 20 * 1024 * 1024  # bytes

log = logging.getLogger("sheetlint.service")


def _issue_json(issue: ValidationIssue) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "code": issue.code,
        "checker_id": issue.checker_id,
        "detail": issue.detail,
    }
    if issue.param is not None:
        doc["param"] = issue.param
    return doc


def _validation_error(issues: list[dict[str, Any]]) -> JSONResponse:
    return JSONResponse(
        status_code=400, content={"error": "validation-failed", "issues": issues}
    )


def _bad_request(detail: str, field: str | None = None) -> JSONResponse:
    issue: dict[str, Any] = {"detail": detail}
    if field is not None:
        issue["field"] = field
    return _validation_error([issue])


def _not_found(detail: str) -> JSONResponse:
    return JSONResponse(status_code=404, content={"error": "not-found", "detail": detail})


def _conflict(detail: str) -> JSONResponse:
    return JSONResponse(status_code=409, content={"error": "conflict", "detail": detail})


def _descriptor_json(descriptor: CheckerDescriptor) -> dict[str, Any]:
    return {
        "id": descriptor.id,
        "display_name": descriptor.display_name,
        "summary": descriptor.summary,
        "params": [
            {
                "name": spec.name,
                "type": spec.type.value,
                "default": _default_json(spec.default),
                "description": spec.description,
            }
            for spec in descriptor.param_schema
        ],
    }


def _default_json(value: object) -> object:
    from decimal import Decimal

    if isinstance(value, Decimal):
        return decimal_to_json(value)
    if isinstance(value, tuple):
        return list(value)
    return value


async def _json_body(request: Request) -> Any:
    try:
        return json.loads(await request.body())
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ValueError(f"request body is not valid JSON: {exc}") from exc


def create_app(
    workspace_root: str, max_upload: int | None = None, analysis_workers: int = 4
) -> FastAPI:
    workspace = Workspace(workspace_root)
    registry = builtin_registry()
    if max_upload is None:
        max_upload = int(os.environ.get("WORKBENCH_MAX_UPLOAD", DEFAULT_MAX_UPLOAD))
    # bounds concurrent analyses; requests queue on it in worker threads
    analysis_gate = threading.BoundedSemaphore(analysis_workers)

    app = FastAPI(title="sheetlint workbench", docs_url=None, redoc_url=None)

    @app.exception_handler(Exception)
    async def _internal_error(request: Request, exc: Exception) -> JSONResponse:
        incident = uuid.uuid4().hex[:12]
        log.exception("incident %s on %s %s", incident, request.method, request.url)
        return JSONResponse(
            status_code=500, content={"error": "internal", "incident": incident}
        )

    @app.get("/health")
    def health() -> dict[str, str]:
        return {"status": "ok"}

    # -- checkers -----------------------------------------------------------

    @app.get("/checkers")
    def get_checkers() -> dict[str, Any]:
        return {
            "checkers": [_descriptor_json(d) for d in list_checkers(registry)]
        }

    # -- scenarios ----------------------------------------------------------

    @app.get("/scenarios")
    def get_scenarios() -> dict[str, Any]:
        return {"scenarios": workspace.list_scenarios()}

    @app.get("/scenarios/{scenario_id}")
    def get_scenario(scenario_id: str):
        try:
            scenario = workspace.load_scenario(scenario_id)
        except FileNotFoundError as exc:
            return _not_found(str(exc))
        return {"id": scenario_id, "scenario": scenario_to_json(scenario)}

    @app.put("/scenarios/{scenario_id}")
    async def put_scenario(scenario_id: str, request: Request):
        if slugify(scenario_id) != scenario_id:
            return _bad_request(
                f"scenario id {scenario_id!r} must be a lower-case slug", field="id"
            )
        try:
            doc = await _json_body(request)
        except ValueError as exc:
            return _bad_request(str(exc))
        try:
            scenario = scenario_from_json(doc)
        except InvalidScenario as exc:
            return _validation_error([_issue_json(i) for i in exc.issues])
        issues = validate_scenario(scenario, registry)
        if issues:
            return _validation_error([_issue_json(i) for i in issues])
        lock = workspace.scenario_lock(scenario_id)
        try:
            with lock.acquire(timeout=0):
                created = scenario_id not in workspace.list_scenarios()
                await to_thread.run_sync(workspace.save_scenario, scenario_id, scenario)
        except Timeout:
            return _conflict(
                f"scenario {scenario_id!r} is being written by another request"
            )
        return JSONResponse(
            status_code=201 if created else 200,
            content={"id": scenario_id, "scenario": scenario_to_json(scenario)},
        )

    @app.delete("/scenarios/{scenario_id}")
    def delete_scenario(scenario_id: str):
        try:
            workspace.delete_scenario(scenario_id)
        except FileNotFoundError as exc:
            return _not_found(str(exc))
        return Response(status_code=204)

    # -- workbooks ----------------------------------------------------------

    @app.get("/workbooks")
    def get_workbooks() -> dict[str, Any]:
        return {"workbooks": workspace.list_workbooks()}

    @app.post("/workbooks")
    async def post_workbook(request: Request):
        filename = request.headers.get("x-filename", "")
        if not filename:
            return _bad_request("missing X-Filename header", field="X-Filename")
        data = await request.body()
        if not data:
            return _bad_request("empty upload")
        if len(data) > max_upload:
            return JSONResponse(
                status_code=413,
                content={
                    "error": "too-large",
                    "detail": f"upload exceeds {max_upload} bytes",
                },
            )
        try:
            workbook_id = workspace.save_workbook(filename, data)
            workbook = workspace.load_workbook(workbook_id)
        except ValueError as exc:
            return _bad_request(str(exc), field="X-Filename")
        except SheetlintError as exc:
            return _bad_request(f"workbook does not parse: {exc}")
        return JSONResponse(
            status_code=201,
            content={
                "workbook_id": workbook_id,
                "sheets": [sheet.name for sheet in workbook.sheets],
            },
        )

    # -- runs -----------------------------------------------------------------

    @app.get("/runs")
    def get_runs() -> dict[str, Any]:
        return {"runs": workspace.list_runs()}

    @app.post("/runs")
    async def post_run(request: Request):
        try:
            doc = await _json_body(request)
        except ValueError as exc:
            return _bad_request(str(exc))
        if not isinstance(doc, dict) or set(doc) - {"scenario_id", "workbook_ids"}:
            return _bad_request(
                'body must be {"scenario_id": ..., "workbook_ids": [...]}'
            )
        scenario_id = doc.get("scenario_id")
        workbook_ids = doc.get("workbook_ids")
        if not isinstance(scenario_id, str):
            return _bad_request("scenario_id must be a string", field="scenario_id")
        if (
            not isinstance(workbook_ids, list)
            or not workbook_ids
            or not all(isinstance(w, str) for w in workbook_ids)
        ):
            return _bad_request(
                "workbook_ids must be a non-empty string array", field="workbook_ids"
            )
        try:
            scenario = workspace.load_scenario(scenario_id)
        except FileNotFoundError as exc:
            return _not_found(str(exc))
        except InvalidScenario as exc:
            return _validation_error([_issue_json(i) for i in exc.issues])
        workbooks = []
        for workbook_id in workbook_ids:
            try:
                workbooks.append(workspace.load_workbook(workbook_id))
            except FileNotFoundError as exc:
                return _not_found(str(exc))
            except SheetlintError as exc:
                return _bad_request(f"workbook {workbook_id!r} does not parse: {exc}")

        def _execute():
            with analysis_gate:
                run = run_scenario(scenario, workbooks, registry)
                return build_report(run)

        try:
            report = await to_thread.run_sync(_execute)
        except InvalidScenario as exc:
            return _validation_error([_issue_json(i) for i in exc.issues])
        except SheetlintError as exc:
            return _bad_request(str(exc))
        workspace.save_run(report)
        return JSONResponse(
            status_code=201,
            content={"run_id": report.run.run_id, "report": report_to_json(report)},
        )

    @app.get("/runs/{run_id}")
    def get_run(
        run_id: str,
        group: str = "by_checker",
        filter: list[str] = Query(default=[]),  # noqa: B008 - FastAPI idiom
    ):
        try:
            stored = workspace.load_run(run_id)
        except FileNotFoundError as exc:
            return _not_found(str(exc))
        try:
            group_key = parse_group_key(group)
            spec = parse_filter_args(list(filter))
        except ValueError as exc:
            return _bad_request(str(exc))
        report = build_report(stored.run, spec, group_key)
        return report_to_json(report)

    # -- ratings ---------------------------------------------------------------

    @app.get("/ratings/{workbook_id}")
    def get_ratings(workbook_id: str):
        if not workspace.has_workbook(workbook_id):
            return _not_found(f"no workbook {workbook_id!r}")
        return {
            "workbook_id": workbook_id,
            "ratings": ratings_to_json(workspace.load_ratings(workbook_id)),
        }

    @app.put("/ratings/{workbook_id}")
    async def put_ratings(workbook_id: str, request: Request):
        if not workspace.has_workbook(workbook_id):
            return _not_found(f"no workbook {workbook_id!r}")
        try:
            body = await request.body()
            ratings = parse_ratings(body.decode())
        except (EvaluationInputError, SheetlintError, UnicodeDecodeError) as exc:
            return _bad_request(str(exc))
        for i, rating in enumerate(ratings):
            if rating.workbook_id != workbook_id:
                return _bad_request(
                    f"ratings[{i}] is for workbook {rating.workbook_id!r}, "
                    f"not {workbook_id!r}",
                    field=f"ratings[{i}].workbook_id",
                )
        workspace.save_ratings(workbook_id, ratings)
        return {"workbook_id": workbook_id, "count": len(ratings)}

    # -- evaluation --------------------------------------------------------------

    @app.get("/evaluation")
    def get_evaluation(run_ids: str = ""):
        ids = [part for part in run_ids.split(",") if part]
        if not ids:
            return _bad_request("run_ids query parameter is required", field="run_ids")
        runs = []
        for run_id in ids:
            try:
                runs.append(workspace.load_run(run_id).run)
            except FileNotFoundError as exc:
                return _not_found(str(exc))
        workbook_ids = [wb for run in runs for wb in run.workbook_ids]
        ratings = workspace.ratings_for(workbook_ids)
        try:
            result = evaluate_rules(runs, ratings)
        except (EvaluationInputError, SheetlintError) as exc:
            return _bad_request(str(exc))
        return {"run_ids": ids, "evaluation": evaluation_to_json(result)}

    return app
