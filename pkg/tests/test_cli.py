import json

from click.testing import CliRunner

from atoric.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args))


class TestWedgeCommands:
    def test_wedge_text(self):
        r = run("wedge", "2,1,1,1,3,3/2")
        assert r.exit_code == 0
        assert "sigma=3" in r.output and "Delta=11" in r.output and "Omega=3" in r.output

    def test_wedge_json(self):
        r = run("--json", "wedge", "1,0,5,3,1,1/10")
        assert r.exit_code == 0
        body = json.loads(r.output)
        assert body["invariants"]["sigma"] == -3
        assert body["wedge"]["a"] == "1/10"

    def test_invalid_wedge_exit_2(self):
        assert run("wedge", "4,2,5,3,1,1").exit_code == 2
        assert run("wedge", "1,2,3").exit_code == 2

    def test_classify(self):
        r = run("classify", "1,0,5,3,1,1", "--side", "right")
        assert r.exit_code == 0
        assert "mutable" in r.output

    def test_mutate_ok(self):
        r = run("--json", "mutate", "1,0,5,3,1,1", "--side", "right")
        assert r.exit_code == 0
        body = json.loads(r.output)
        assert body["result"]["p2"] == 14

    def test_mutate_precondition_exit_3(self):
        assert run("mutate", "1,0,5,3,1,1", "--side", "left").exit_code == 3


class TestMoriAndFlip:
    def test_mori_sequence(self):
        r = run("mori", "--seed", "2,1,7,5", "--n", "5")
        assert r.exit_code == 0
        assert "(131,97)" in r.output.replace(" ", "").replace("(131,97)", "(131,97)")
        assert "delta=3" in r.output

    def test_mori_budget(self):
        r = run("--json", "mori", "--seed", "1,0,5,3", "--n", "3", "--budget", "1", "--a-minus", "1")
        assert r.exit_code == 0
        body = json.loads(r.output)
        assert body["budget"]["verdict"] == "FitsForever"

    def test_antiflip(self):
        r = run("--json", "antiflip", "2,1,1,1,3,3/2", "--a-minus", "1/10")
        assert r.exit_code == 0
        body = json.loads(r.output)
        assert body["result"]["minus"]["p2"] == 5

    def test_antiflip_in_bounds(self):
        r = run("--json", "antiflip", "2,1,1,1,3,3/2", "--a-minus", "1/10", "--l1", "1", "--l2", "1")
        assert r.exit_code == 0
        body = json.loads(r.output)
        assert body["bounds"] == ["5/2", "9/10"]
        assert body["certificate"]["verdict"] == "FitsForever"

    def test_flip(self):
        r = run("--json", "flip", "1,0,5,3,1,1/10", "--a-plus", "3/2")
        assert r.exit_code == 0
        body = json.loads(r.output)
        assert body["kind"] == "FlipTo"
        assert body["plus"]["c"] == 3

    def test_flip_on_k_positive_exit_2(self):
        assert run("flip", "2,1,1,1,3,3/2", "--a-plus", "1").exit_code == 2

    def test_cohomology(self):
        r = run("--json", "cohomology", "2,1,1,1,3,3/2", "--a-minus", "1/10", "--l2", "1")
        assert r.exit_code == 0
        body = json.loads(r.output)
        assert body["start"] == "3/1"
        assert body["end"] == "-1/2"
        assert body["affine_distance"] == "7/2"


class TestChainCommands:
    def test_eval(self):
        r = run("chain", "eval", "2,2,6,1,3,5,2")
        assert r.exit_code == 0
        assert "181/126" in r.output

    def test_expand(self):
        r = run("--json", "chain", "expand", "11/3")
        assert json.loads(r.output)["chain"] == [4, 3]

    def test_blowup_blowdown(self):
        r = run("--json", "chain", "blowup", "4,3", "--at", "0")
        assert json.loads(r.output)["chain"] == [1, 5, 3]
        r = run("--json", "chain", "blowdown", "1,5,3", "--at", "0")
        assert json.loads(r.output)["chain"] == [4, 3]

    def test_replay(self):
        script = json.dumps([{"op": "up", "at": 0, "expect": [1, 5, 3]}])
        r = run("--json", "chain", "replay", "4,3", "--script", script)
        assert r.exit_code == 0
        assert json.loads(r.output)["chain"] == [1, 5, 3]

    def test_replay_mismatch_exit_2(self):
        script = json.dumps([{"op": "up", "at": 0, "expect": [9, 9]}])
        assert run("chain", "replay", "4,3", "--script", script).exit_code == 2

    def test_splits(self):
        r = run("--json", "chain", "splits", "2,5,3,1,2,3,2,2,7,3")
        body = json.loads(r.output)
        assert len(body["splits"]) == 1
        assert body["splits"][0]["left_pq"] == [5, 3]
        assert body["splits"][0]["right_pq"] == [14, 9]


class TestScenarioAndRender:
    def test_scenario_all(self):
        r = run("scenario", "--all")
        assert r.exit_code == 0
        assert r.output.count("PASS") >= 5
        assert "FAIL" not in r.output

    def test_scenario_single_json(self):
        r = run("--json", "scenario", "quintic")
        body = json.loads(r.output)
        assert body["reports"][0]["passed"] is True

    def test_unknown_scenario_exit_2(self):
        assert run("scenario", "nope").exit_code == 2

    def test_render_to_file(self, tmp_path):
        target = tmp_path / "w.svg"
        r = run("--out", str(target), "render", "1,0,5,3,1,1")
        assert r.exit_code == 0
        text = target.read_text()
        assert text.startswith("<svg ") and text.rstrip().endswith("</svg>")

    def test_out_file_json(self, tmp_path):
        target = tmp_path / "w.json"
        r = run("--json", "--out", str(target), "wedge", "1,0,5,3,1,1")
        assert r.exit_code == 0
        assert json.loads(target.read_text())["invariants"]["Delta"] == 11
