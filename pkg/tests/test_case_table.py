import io
import json
import os
import tempfile

import pytest

import classification
from errors import SpecError
from odring import od_ring

FIXTURE = os.path.join(os.path.dirname(__file__), "fixtures", "case_table.json")


def load_expected():
    with open(FIXTURE, encoding="utf-8") as f:
        return json.load(f)


class TestCaseTable:

    def setup_method(self):
        self.expected = load_expected()
        self.tables = classification.case_table()

    def test_subsets(self):
        assert [t["D"] for t in self.tables] == [e["D"] for e in self.expected]
        assert len(self.tables) == 26

    def test_rows(self):
        for got, want in zip(self.tables, self.expected):
            rows = [{"e": r["e"], "eta": r["eta"], "label": r["label"]} for r in got["rows"]]
            assert rows == want["rows"], f"D={want['D']}"

    def test_pivots(self):
        for got, want in zip(self.tables, self.expected):
            assert got["pivot"] == want["pivot"], f"D={want['D']}"

    def test_flagged_rows_are_fallback(self):
        for table in self.tables:
            for row in table["rows"]:
                assert row["flagged"] == (row["tag"] == "Fallback")


def test_classify_needs_two_components():
    with pytest.raises(SpecError):
        classification.classify_ring(od_ring((4,)))


def test_csv_and_markdown():
    tables = [classification.classify_ring(od_ring((1, 2, 3)))]
    buf = io.StringIO()
    classification.write_classification_csv(buf, tables)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0] == "D,e,eta,tag,pivot,flagged"
    assert len(lines) == 4
    assert lines[1] == "1 2 3,1,6,Fallback,False,True"

    md = classification.markdown_table(tables)
    assert "| {1,2,3} | 1 | [6] | **Fallback** |  |" in md
    assert "| {1,2,3} | 3 | [-2, -1] | OneMinusZetaPow(1) | * |" in md

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "table.md")
        classification.write_classification_markdown(path, tables)
        with open(path, encoding="utf-8") as f:
            assert f.read() == md
