import json
import os
import tempfile

import pytest

import cli
from cli import EXIT_BUDGET, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE, EXIT_VERIFICATION, run
from errors import BudgetExceeded
from ge2 import random_um_pair
from ge_types import Command
from zcge_io import codec

KLEIN = '{"type": "od", "D": [1, 2]}'
INTEGERS = '{"type": "cyclo", "d": 1}'
Z4 = '{"type": "finite", "f": [0, 1], "m": 4}'


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestReduce:

    def test_od_pair(self, capsys):
        code, doc = run_json(capsys, ["reduce", "--ring", KLEIN, "--pair", "[[2, 1], [1, 1]]"])
        assert code == EXIT_OK
        assert doc["verified"] is True
        assert doc["length"] == len(doc["word"])
        assert doc["fallback_used"] is False

    def test_integers(self, capsys):
        code, doc = run_json(capsys, ["reduce", "--ring", INTEGERS, "--pair", "[5, 3]"])
        assert code == EXIT_OK
        assert doc["verified"] is True
        assert all(op["kind"] in ("L", "U") for op in doc["word"])

    def test_finite(self, capsys):
        code, doc = run_json(capsys, ["reduce", "--ring", Z4, "--pair", "[2, 1]"])
        assert code == EXIT_OK
        assert doc["verified"] is True

    def test_not_unimodular(self, capsys):
        code, doc = run_json(capsys, ["reduce", "--ring", KLEIN, "--pair", "[[1, -1], [1, 1]]"])
        assert code == EXIT_PRECONDITION
        assert doc["error"] == "NotUnimodular"

    def test_zero_budget(self, capsys):
        code, doc = run_json(capsys, ["reduce", "--ring", KLEIN, "--pair", "[[2, 1], [1, 1]]", "--budget", "0"])
        assert code == EXIT_USAGE

    def test_budget_exceeded(self, capsys, monkeypatch):
        def exhausted(*args, **kwargs):
            raise BudgetExceeded(10, 11, "reduction")

        monkeypatch.setattr(cli, "reduce_pair", exhausted)
        code, doc = run_json(capsys, ["reduce", "--ring", KLEIN, "--pair", "[[2, 1], [1, 1]]"])
        assert code == EXIT_BUDGET
        assert doc["error"] == "BudgetExceeded"

    def test_bad_ring(self, capsys):
        code, doc = run_json(capsys, ["reduce", "--ring", '{"type": "torus"}', "--pair", "[1, 0]"])
        assert code == EXIT_USAGE
        assert doc["error"] == "SpecError"

    def test_unit_pair(self, capsys):
        code, doc = run_json(capsys, ["reduce", "--ring", KLEIN, "--pair", "[1, 0]"])
        assert code == EXIT_OK
        assert doc["word"] == []

    def test_missing_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(["reduce", "--pair", "[1, 0]"])
        assert exc.value.code == EXIT_USAGE


class TestFactor:

    def test_rotation(self, capsys):
        code, doc = run_json(capsys, ["factor", "--ring", INTEGERS, "--matrix", "[[0, -1], [1, 0]]"])
        assert code == EXIT_OK
        assert doc["length"] == 3

    def test_rotation_over_singleton_od(self, capsys):
        code, doc = run_json(capsys, ["factor", "--ring", '{"type": "od", "D": [1]}', "--matrix", "[[0, -1], [1, 0]]"])
        assert code == EXIT_OK
        assert doc["length"] == 3

    def test_identity(self, capsys):
        code, doc = run_json(capsys, ["factor", "--ring", KLEIN, "--matrix", "[[1, 0], [0, 1]]"])
        assert code == EXIT_OK
        assert doc["word"] == []

    def test_det_not_one(self, capsys):
        code, doc = run_json(capsys, ["factor", "--ring", INTEGERS, "--matrix", "[[2, 0], [0, 1]]"])
        assert code == EXIT_PRECONDITION
        assert doc["error"] == "DetNotOne"

    def test_finite(self, capsys):
        code, doc = run_json(capsys, ["factor", "--ring", Z4, "--matrix", "[[3, 0], [0, 3]]"])
        assert code == EXIT_OK
        assert doc["diag"] == [{"rep": [1]}, {"rep": [1]}]
        assert all({"i", "j", "entry"} <= set(op) for op in doc["word"])

    def test_finite_not_invertible(self, capsys):
        code, doc = run_json(capsys, ["factor", "--ring", Z4, "--matrix", "[[2, 0], [0, 1]]"])
        assert code == EXIT_PRECONDITION
        assert doc["error"] == "NotInvertible"


class TestGenAndVerify:

    def test_gen_is_deterministic(self, capsys):
        argv = ["gen", "--ring", KLEIN, "--seed", "4", "--len", "8"]
        _, first = run_json(capsys, argv)
        _, second = run_json(capsys, argv)
        assert first == second
        assert first["ring"] == {"type": "od", "D": [1, 2]}

    def test_pipeline(self, capsys):
        _, gen = run_json(capsys, ["gen", "--ring", KLEIN, "--seed", "9", "--len", "8"])
        pair = json.dumps(gen["pair"])
        _, reduced = run_json(capsys, ["reduce", "--ring", KLEIN, "--pair", pair])
        word = json.dumps(reduced["word"])

        code, doc = run_json(capsys, ["verify", "--ring", KLEIN, "--word", word, "--start", pair])
        assert code == EXIT_OK and doc["verified"] is True

        code, doc = run_json(capsys, ["verify", "--ring", KLEIN, "--word", word, "--start", "[[7], [1]]"])
        assert code == EXIT_VERIFICATION and doc["verified"] is False

    def test_mutated_word(self, capsys):
        pair = "[[2, 1], [1, 1]]"
        _, reduced = run_json(capsys, ["reduce", "--ring", KLEIN, "--pair", pair])
        word = reduced["word"]
        rep = word[0]["entry"]["rep"] or [0]
        word[0]["entry"]["rep"] = [rep[0] + 1] + rep[1:]
        code, doc = run_json(capsys, ["verify", "--ring", KLEIN, "--word", json.dumps(word), "--start", pair])
        assert code == EXIT_VERIFICATION
        assert doc["verified"] is False

    def test_verify_matrix(self, capsys):
        _, gen = run_json(capsys, ["gen", "--ring", INTEGERS, "--seed", "2", "--len", "6", "--matrix"])
        matrix = json.dumps(gen["matrix"])
        _, factored = run_json(capsys, ["factor", "--ring", INTEGERS, "--matrix", matrix])
        code, doc = run_json(capsys, ["verify", "--ring", INTEGERS, "--word", json.dumps(factored["word"]),
                                      "--matrix", matrix])
        assert code == EXIT_OK and doc["verified"] is True

    def test_files_as_arguments(self, capsys):
        with tempfile.TemporaryDirectory() as tmp:
            ring_path = os.path.join(tmp, "ring.json")
            with open(ring_path, "w") as f:
                f.write(KLEIN)
            code, doc = run_json(capsys, ["reduce", "--ring", ring_path, "--pair", "[[2, 1], [1, 1]]"])
        assert code == EXIT_OK


class TestClassifyAndDemo:

    def test_classify(self, capsys):
        code, doc = run_json(capsys, ["classify", "--ring", '{"type": "od", "D": [1, 2, 3]}'])
        assert code == EXIT_OK
        assert doc["pivot"] == 3
        assert [row["label"] for row in doc["rows"]] == ["Fallback", "TwoIdeal", "OneMinusZetaPow(1)"]

    def test_classify_group_ring_outputs(self, capsys):
        with tempfile.TemporaryDirectory() as tmp:
            csv_path = os.path.join(tmp, "table.csv")
            md_path = os.path.join(tmp, "table.md")
            code = run(["classify", "--ring", '{"type": "group_ring", "n": 4}', "--output", csv_path,
                        "--output-md", md_path, "--human"])
            out = capsys.readouterr().out
            assert code == EXIT_OK
            assert out.startswith("# Case Classification")
            assert os.path.exists(csv_path) and os.path.exists(md_path)

    def test_classify_singleton(self, capsys):
        code, doc = run_json(capsys, ["classify", "--ring", '{"type": "od", "D": [4]}'])
        assert code == EXIT_USAGE

    def test_classify_needs_od(self, capsys):
        code, doc = run_json(capsys, ["classify", "--ring", INTEGERS])
        assert code == EXIT_USAGE

    def test_demo(self, capsys):
        with tempfile.TemporaryDirectory() as tmp:
            out_path = os.path.join(tmp, "reports", "demo.json")
            code, doc = run_json(capsys, ["demo", "2", "--k", "2", "--workers", "2", "--no-progress", "--out", out_path])
            assert code == EXIT_OK
            assert doc["all_verified"] is True
            assert [s["D"] for s in doc["subsets"]] == [[1], [2], [1, 2]]
            assert os.path.exists(out_path)
            assert os.path.exists(out_path + ".schema.json")

    def test_demo_unsupported(self, capsys):
        code, doc = run_json(capsys, ["demo", "23", "--no-progress"])
        assert code == EXIT_USAGE
        assert doc["error"] == "SpecError"


class TestJobSpec:

    def setup_method(self):
        self.parser = cli.build_parser()

    def test_payload_follows_command(self):
        job = cli.job_from_args(self.parser.parse_args(["reduce", "--ring", KLEIN, "--pair", "[[2, 1], [1, 1]]"]))
        assert job.command is Command.REDUCE
        assert job.payload == [[2, 1], [1, 1]]
        assert job.ring == {"type": "od", "D": [1, 2]}

    def test_verify_payload_is_the_word(self):
        args = self.parser.parse_args(["verify", "--ring", INTEGERS, "--word", "[]", "--matrix", "[[1, 0], [0, 1]]"])
        assert cli.job_from_args(args).payload == []

    def test_gen_has_no_payload(self):
        job = cli.job_from_args(self.parser.parse_args(["gen", "--ring", KLEIN, "--seed", "3", "--bound", "1"]))
        assert job.payload is None
        assert (job.seed, job.bound) == (3, 1)

    def test_gen_uses_seed_and_bound(self, capsys):
        _, doc = run_json(capsys, ["gen", "--ring", KLEIN, "--seed", "4", "--len", "8", "--bound", "1"])
        ring = codec.parse_ring(json.loads(KLEIN))
        assert doc["pair"] == codec.pair_to_json(ring, random_um_pair(ring, 4, 8, 1))

    def test_bad_payload_is_a_usage_error(self, capsys):
        code, doc = run_json(capsys, ["reduce", "--ring", KLEIN, "--pair", "[[2, 1"])
        assert code == EXIT_USAGE
