"""CLI golden tests: determinism, exit codes, round trips."""

import json
import os

import pytest

from orthocusp.cli import main
from orthocusp.reportio import dumps_canonical


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def run_to_file(tmp_path, argv, name="out.json"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out)])
    return code, out.read_bytes() if out.exists() else b""


HYP = {"gram": [["0", "1"], ["1", "0"]]}
ATILDE4 = {
    "gram": [
        ["0", "0", "1", "0"],
        ["0", "0", "0", "1"],
        ["1", "0", "0", "0"],
        ["0", "1", "0", "0"],
    ]
}
P2_FAN = {"rank": 2, "cones": [
    {"rays": [[1, 0], [0, 1]]},
    {"rays": [[0, 1], [-1, -1]]},
    {"rays": [[-1, -1], [1, 0]]},
    {"rays": [[1, 0]]},
    {"rays": [[0, 1]]},
    {"rays": [[-1, -1]]},
    {"rays": []},
]}


class TestInvariants:
    def test_hyperbolic_plane_report(self, tmp_path):
        gram = write(tmp_path, "g.json", HYP)
        code, blob = run_to_file(tmp_path, ["invariants", "--gram", gram,
                                            "--primes", "2,3"])
        assert code == 0
        rep = json.loads(blob)
        assert rep["results"]["disc"] == "-1"
        assert rep["results"]["signature"] == [1, 1]
        assert rep["results"]["hasse"] == {"oo": 1, "2": 1, "3": 1}
        assert "conventions" in rep

    def test_missing_gram_is_usage_error(self, tmp_path, capsys):
        assert main(["invariants"]) == 2

    def test_bad_prime_list(self, tmp_path):
        gram = write(tmp_path, "g.json", HYP)
        assert main(["invariants", "--gram", gram, "--primes", "2,x"]) == 2


class TestMapPoint:
    def test_tube_to_projective_example(self, tmp_path):
        # the (i, 0)-style example in the Atilde frame: tube coords (i, i)
        # is the base point; map and check the quadric condition via re-parse
        point = {
            "model": "tube",
            "coords": [["0", "1"], ["0", "1"]],
            "frame": ATILDE4,
        }
        pf = write(tmp_path, "p.json", point)
        code, blob = run_to_file(tmp_path, ["map-point", "--point", pf,
                                            "--from", "tube", "--to", "projective"])
        assert code == 0
        rep = json.loads(blob)
        assert rep["results"]["model"] == "projective"
        assert rep["results"]["coords"] == [["1", "0"], ["0", "1"], ["1", "0"], ["0", "1"]]

    def test_round_trip_bounded(self, tmp_path):
        point = {
            "model": "bounded",
            "coords": [["1/8", "1/9"], ["-1/7", "0"]],
            "frame": ATILDE4,
        }
        pf = write(tmp_path, "p.json", point)
        code, blob = run_to_file(tmp_path, ["map-point", "--point", pf,
                                            "--from", "bounded", "--to", "tube"])
        assert code == 0
        tube = json.loads(blob)["results"]
        pf2 = write(tmp_path, "p2.json", tube)
        code, blob2 = run_to_file(tmp_path, ["map-point", "--point", pf2,
                                             "--from", "tube", "--to", "bounded"],
                                  name="out2.json")
        assert code == 0
        back = json.loads(blob2)["results"]
        assert back["coords"] == point["coords"]

    def test_model_mismatch_is_usage_error(self, tmp_path):
        point = {"model": "tube", "coords": [["0", "1"], ["0", "1"]], "frame": ATILDE4}
        pf = write(tmp_path, "p.json", point)
        assert main(["map-point", "--point", pf, "--from", "bounded",
                     "--to", "tube"]) == 2

    def test_spec_example_diag_frame(self, tmp_path):
        # tube point (i, 0) over U = diag(1,-1), q(e2) = 0 -> [1/2 : 1 : i : 0]
        frame = {
            "gram": [["0", "1", "0", "0"], ["1", "0", "0", "0"],
                     ["0", "0", "1", "0"], ["0", "0", "0", "-1"]],
            "e1": ["1", "0", "0", "0"],
            "e2": ["0", "1", "0", "0"],
            "u_basis": [["0", "0", "1", "0"], ["0", "0", "0", "1"]],
        }
        point = {"model": "tube", "coords": [["0", "1"], ["0", "0"]], "frame": frame}
        pf = write(tmp_path, "p.json", point)
        code, blob = run_to_file(tmp_path, ["map-point", "--point", pf,
                                            "--from", "tube", "--to", "projective"])
        assert code == 0
        out = json.loads(blob)["results"]
        assert out["coords"] == [["1/2", "0"], ["1", "0"], ["0", "1"], ["0", "0"]]


class TestCusp:
    def test_rank1_report(self, tmp_path):
        gram = write(tmp_path, "g.json", ATILDE4)
        code, blob = run_to_file(tmp_path, ["cusp", "--gram", gram, "--flag", "rank1"])
        assert code == 0
        rep = json.loads(blob)["results"]
        assert rep["u_dim"] == 2 and rep["v_dim"] == 0 and rep["f_dim"] == 0
        assert rep["dimension_check"] is True

    def test_rank2_report(self, tmp_path):
        gram = write(tmp_path, "g.json", ATILDE4)
        code, blob = run_to_file(tmp_path, ["cusp", "--gram", gram, "--flag", "rank2"])
        rep = json.loads(blob)["results"]
        assert rep["u_dim"] == 1 and rep["f_dim"] == 1
        assert "elliptic curve" in rep["fibration"]

    def test_non_atilde_is_domain_error(self, tmp_path):
        gram = write(tmp_path, "g.json", {"gram": [["1", "0"], ["0", "1"]]})
        assert main(["cusp", "--gram", gram, "--flag", "rank1"]) == 1


class TestFan:
    def test_validate_p2(self, tmp_path):
        fan = write(tmp_path, "f.json", P2_FAN)
        code, blob = run_to_file(tmp_path, ["fan", "validate", "--fan", fan])
        assert code == 0
        assert json.loads(blob)["results"]["valid"] is True

    def test_complete_p2(self, tmp_path):
        fan = write(tmp_path, "f.json", P2_FAN)
        code, blob = run_to_file(tmp_path, ["fan", "complete", "--fan", fan])
        assert json.loads(blob)["results"]["complete"] is True

    def test_chart_needs_cone(self, tmp_path):
        fan = write(tmp_path, "f.json", P2_FAN)
        assert main(["fan", "chart", "--fan", fan]) == 2

    def test_subdivide_emits_fan(self, tmp_path):
        fan = write(tmp_path, "f.json", P2_FAN)
        code, blob = run_to_file(tmp_path, ["fan", "subdivide", "--fan", fan])
        assert code == 0
        out = json.loads(blob)["results"]
        assert out["rank"] == 2
        assert len(out["cones"]) > len(P2_FAN["cones"])


class TestDeterminism:
    CASES = None

    def cases(self, tmp_path):
        gram = write(tmp_path, "g.json", HYP)
        gram3 = write(tmp_path, "g3.json",
                      {"gram": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "-1"]]})
        atilde = write(tmp_path, "at.json", ATILDE4)
        fan = write(tmp_path, "f.json", P2_FAN)
        corevec = write(tmp_path, "core.json", HYP)
        return [
            ["invariants", "--gram", gram, "--primes", "2,3,5"],
            ["cusp", "--gram", atilde, "--flag", "rank2"],
            ["fan", "validate", "--fan", fan],
            ["fan", "chart", "--fan", fan, "--cone", "0"],
            ["chern", "td", "--degree", "3"],
            ["chern", "q-poly", "--dim", "2", "--rank", "1"],
            ["hilbert-poly", "--n", "3"],
            ["local-density", "--gram", write(tmp_path, "one.json", {"gram": [["1"]]}),
             "--p", "3"],
            ["hm-volume", "--gram", gram3, "--alpha-inf", "1"],
            ["dim-leading", "--gram", gram3, "--ell", "3", "--alpha-inf", "1"],
            ["ramify", "--gram", write(tmp_path, "gram_a2.json",
                                       {"gram": [["2", "1"], ["1", "2"]]}),
             "--bound", "1"],
            ["core-decompose", "--gram", corevec, "--positivity", "1,1",
             "--variant", "central", "--height", "4"],
        ]

    def test_byte_identical_reports(self, tmp_path):
        for i, argv in enumerate(self.cases(tmp_path)):
            code1, b1 = run_to_file(tmp_path, argv, name=f"a{i}.json")
            code2, b2 = run_to_file(tmp_path, argv, name=f"b{i}.json")
            assert code1 == code2 == 0, argv
            assert b1 == b2, argv
            assert b1.endswith(b"\n")
            rep = json.loads(b1)
            assert "conventions" in rep
            # canonical form: re-dumping reproduces the bytes
            assert dumps_canonical(rep).encode() == b1

    def test_reports_always_have_conventions_array(self, tmp_path):
        gram = write(tmp_path, "g.json", HYP)
        code, blob = run_to_file(tmp_path, ["invariants", "--gram", gram])
        rep = json.loads(blob)
        assert isinstance(rep["conventions"], list)


class TestReportNormalization:
    def test_minus_zero_normalized(self):
        from orthocusp.reportio import normalize_value

        assert normalize_value(-0.0) == "0.0"
        assert normalize_value(0.0) == "0.0"
        assert normalize_value(complex(-0.0, -0.0)) == ["0.0", "0.0"]

    def test_float_mode_flag_parses(self, tmp_path):
        point = {
            "model": "bounded",
            "coords": [["0", "0"], ["0", "0"]],
            "frame": ATILDE4,
        }
        pf = write(tmp_path, "p.json", point)
        code, blob = run_to_file(tmp_path, ["map-point", "--point", pf,
                                            "--from", "bounded", "--to", "tube",
                                            "--mode", "float", "--tol", "1e-9"])
        assert code == 0
        rep = json.loads(blob)
        assert any("1e-09" in c or "1e-9" in c for c in rep["conventions"])
        # float outputs are tagged as float reprs, not rational strings
        assert rep["results"]["coords"][0] == ["0.0", "1.0"]


class TestThreadCap:
    def test_env_var_validated(self, tmp_path, monkeypatch):
        gram = write(tmp_path, "g.json", HYP)
        monkeypatch.setenv("ORTHOCUSP_THREADS", "not-a-number")
        assert main(["invariants", "--gram", gram]) == 2
        monkeypatch.setenv("ORTHOCUSP_THREADS", "0")
        assert main(["invariants", "--gram", gram]) == 2
        monkeypatch.setenv("ORTHOCUSP_THREADS", "4")
        assert main(["invariants", "--gram", gram, "--out",
                     str(tmp_path / "ok.json")]) == 0


class TestRamifyCLI:
    def test_a2_table(self, tmp_path):
        gram = write(tmp_path, "a2.json", {"gram": [["2", "1"], ["1", "2"]]})
        code, blob = run_to_file(tmp_path, ["ramify", "--gram", gram, "--bound", "1"])
        assert code == 0
        rep = json.loads(blob)["results"]
        assert rep["group_size"] == 12
        classes = {r["classification"] for r in rep["elements"]}
        assert "interior_unramified" in classes
        assert "minus_identity" in classes
