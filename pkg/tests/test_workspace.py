"""Workspace tests: layout, atomic persistence, ids, locking."""

from __future__ import annotations

import json

import pytest
from filelock import Timeout

from sheetlint.engine import CheckerConfig, Scenario, run_scenario
from sheetlint.evaluation import ExpertRating, Rating
from sheetlint.report import build_report
from sheetlint.workspace import Workspace, slugify

from util import build_workbook

SCENARIO = Scenario(name="audit", checkers=(CheckerConfig("blank-only-cells"),))


@pytest.fixture
def ws(tmp_path):
    return Workspace(tmp_path / "space")


def fixture_bytes(cells):
    doc = {"sheets": [{"name": "Calc", "cells": cells}]}
    return json.dumps(doc).encode()


# --- slugs ---


@pytest.mark.parametrize(
    ("text", "slug"),
    [
        ("Quarterly Financial Reports", "quarterly-financial-reports"),
        ("  spaced  out  ", "spaced-out"),
        ("Already-a-slug", "already-a-slug"),
        ("Ümläute & Co.", "ml-ute-co"),
        ("x", "x"),
        ("A__B", "a-b"),
    ],
)
def test_slugify(text, slug):
    assert slugify(text) == slug
    assert slugify(slug) == slug  # idempotent


@pytest.mark.parametrize("text", ["", "---", "!!!", " "])
def test_slugify_rejects_empty_results(text):
    with pytest.raises(ValueError):
        slugify(text)


# --- layout and scenarios ---


def test_workspace_creates_its_directories(tmp_path):
    root = tmp_path / "fresh"
    Workspace(root)
    assert {p.name for p in root.iterdir()} == {
        "scenarios",
        "workbooks",
        "runs",
        "ratings",
    }
    # re-opening an existing workspace is fine
    Workspace(root)


def test_scenario_crud(ws):
    ws.save_scenario("audit", SCENARIO)
    assert ws.list_scenarios() == ["audit"]
    assert ws.load_scenario("audit") == SCENARIO
    ws.delete_scenario("audit")
    assert ws.list_scenarios() == []
    with pytest.raises(FileNotFoundError):
        ws.load_scenario("audit")
    with pytest.raises(FileNotFoundError):
        ws.delete_scenario("audit")


def test_scenario_id_must_be_a_slug(ws):
    with pytest.raises(ValueError):
        ws.save_scenario("Not A Slug", SCENARIO)


def test_scenario_file_is_pretty_json(ws):
    ws.save_scenario("audit", SCENARIO)
    path = ws.root / "scenarios" / "audit.scenario.json"
    text = path.read_text()
    assert text.endswith("\n")
    assert json.loads(text)["name"] == "audit"


def test_scenario_lock_conflicts(ws):
    lock = ws.scenario_lock("audit")
    lock.acquire(timeout=0)
    try:
        other = ws.scenario_lock("audit")
        with pytest.raises(Timeout):
            other.acquire(timeout=0)
        # a different id is unrelated
        unrelated = ws.scenario_lock("elsewhere")
        unrelated.acquire(timeout=0)
        unrelated.release()
    finally:
        lock.release()
    # released: acquirable again
    reacquired = ws.scenario_lock("audit")
    reacquired.acquire(timeout=0)
    reacquired.release()


# --- workbooks ---


def test_workbook_upload_and_load(ws):
    data = fixture_bytes({"A1": {"value": 1}})
    workbook_id = ws.save_workbook("My Book.json", data)
    assert workbook_id == "my-book.json"
    assert ws.has_workbook(workbook_id)
    assert ws.list_workbooks() == ["my-book.json"]
    wb = ws.load_workbook(workbook_id)
    assert wb.id == "my-book.json"


def test_workbook_identical_reupload_reuses_id(ws):
    data = fixture_bytes({"A1": {"value": 1}})
    first = ws.save_workbook("book.json", data)
    second = ws.save_workbook("book.json", data)
    assert first == second
    assert ws.list_workbooks() == [first]


def test_workbook_name_collision_gets_digest_suffix(ws):
    first = ws.save_workbook("book.json", fixture_bytes({"A1": {"value": 1}}))
    second = ws.save_workbook("book.json", fixture_bytes({"A1": {"value": 2}}))
    assert first == "book.json"
    assert second != first
    assert second.startswith("book-") and second.endswith(".json")
    assert len(ws.list_workbooks()) == 2


def test_workbook_extension_sniffed_when_odd(ws):
    # unknown extension: json content keeps the whole name as the stem
    workbook_id = ws.save_workbook("mystery.dat", fixture_bytes({}))
    assert workbook_id == "mystery-dat.json"
    # zip magic means a spreadsheet archive
    workbook_id = ws.save_workbook("archive.bin", b"PK\x03\x04junk")
    assert workbook_id == "archive-bin.xlsx"


def test_workbook_sheet_json_extension_preserved(ws):
    workbook_id = ws.save_workbook("Budget.sheet.json", fixture_bytes({}))
    assert workbook_id == "budget.sheet.json"


def test_workbook_missing_raises(ws):
    with pytest.raises(FileNotFoundError):
        ws.load_workbook("nope.json")
    assert not ws.has_workbook("nope.json")


# --- runs ---


def test_run_round_trip(ws):
    wb = build_workbook({"A1": " "}, workbook_id="w.json")
    report = build_report(run_scenario(SCENARIO, [wb]))
    run_id = ws.save_run(report)
    assert run_id == report.run.run_id
    assert ws.list_runs() == [run_id]
    assert ws.load_run(run_id) == report
    with pytest.raises(FileNotFoundError):
        ws.load_run("deadbeef")


def test_saving_same_run_overwrites_in_place(ws):
    wb = build_workbook({"A1": " "}, workbook_id="w.json")
    report = build_report(run_scenario(SCENARIO, [wb]))
    assert ws.save_run(report) == ws.save_run(report)
    assert len(ws.list_runs()) == 1


# --- ratings ---


def test_ratings_round_trip_and_default_empty(ws):
    assert ws.load_ratings("unrated.json") == []
    ratings = [
        ExpertRating(
            workbook_id="w.json",
            rating=Rating.POOR,
            expert_id="e1",
            error_cells=(("", "A1"), ("My Sheet", "B2")),
            notes="checked twice",
        )
    ]
    ws.save_ratings("w.json", ratings)
    assert ws.load_ratings("w.json") == ratings


def test_ratings_for_concatenates(ws):
    r1 = ExpertRating(workbook_id="a.json", rating=Rating.GOOD, expert_id="e1")
    r2 = ExpertRating(workbook_id="b.json", rating=Rating.POOR, expert_id="e1")
    ws.save_ratings("a.json", [r1])
    ws.save_ratings("b.json", [r2])
    assert ws.ratings_for(["a.json", "b.json", "c.json"]) == [r1, r2]


# --- atomicity ---


def test_writes_leave_no_temp_files(ws):
    ws.save_scenario("audit", SCENARIO)
    ws.save_workbook("book.json", fixture_bytes({}))
    leftovers = [
        p
        for p in ws.root.rglob("*")
        if p.is_file() and p.suffix == ".tmp"
    ]
    assert leftovers == []


def test_save_replaces_previous_content_atomically(ws):
    ws.save_scenario("audit", SCENARIO)
    updated = Scenario(name="audit v2", checkers=SCENARIO.checkers)
    ws.save_scenario("audit", updated)
    assert ws.load_scenario("audit") == updated
    assert ws.list_scenarios() == ["audit"]
