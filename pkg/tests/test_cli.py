import json
import subprocess
import sys

import pytest

from conevol.cli import EXIT_INPUT, EXIT_OK, EXIT_VIOLATION, UsageError, main, parse
from conevol.docs import polytope_doc, polytope_from_doc
from conevol.generator import canonical


def call(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, json.loads(out)


@pytest.fixture
def doc_path(tmp_path):
    def write(doc, name="in.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return write


class TestParse:
    def test_defaults(self):
        a = parse(["audit", "x.json"])
        assert (a.verb, a.mode, a.allow_noncentered, a.max_atoms) == ("audit", "affine", False, 20)

    def test_track(self):
        assert parse(["lift", "x.json", "--track", "0,2,5"]).track == [0, 2, 5]

    def test_bad_mode(self):
        with pytest.raises(UsageError):
            parse(["audit", "x.json", "--mode", "radial"])

    def test_missing_verb(self):
        with pytest.raises(UsageError):
            parse([])


class TestVerbs:
    def test_gen_canonical_round_trip(self, capsys, doc_path):
        status, doc = call(capsys, "gen", "--canonical", "cube_2")
        assert status == EXIT_OK and doc == polytope_doc(canonical("cube_2"))
        status, again = call(capsys, "hull", doc_path(doc))
        assert again == doc

    def test_gen_random_deterministic(self, capsys):
        a = call(capsys, "gen", "--dim", "3", "--vertices", "7", "--seed", "5")
        b = call(capsys, "gen", "--dim", "3", "--vertices", "7", "--seed", "5")
        assert a == b and polytope_from_doc(a[1]).dim == 3

    def test_conevol(self, capsys, doc_path):
        status, doc = call(capsys, "conevol", doc_path(polytope_doc(canonical("cube_2"))))
        assert status == EXIT_OK
        assert doc["total"] == "4" and [x["w"] for x in doc["atoms"]] == ["1"] * 4

    def test_center_and_polar(self, capsys, doc_path):
        _, c = call(capsys, "center", doc_path(polytope_doc(canonical("noncentered_triangle"))))
        assert not any(polytope_from_doc(c).centroid)
        _, q = call(capsys, "polar", doc_path(polytope_doc(canonical("cube_2"))))
        assert polytope_from_doc(q) == canonical("crosspolytope_2")

    def test_audit_pass(self, capsys, doc_path):
        status, doc = call(capsys, "audit", doc_path(polytope_doc(canonical("centered_simplex_2"))))
        assert status == EXIT_OK and doc["pass"] and doc["max_ratio"] == "1" and len(doc["tight"]) == 6

    def test_audit_violation(self, capsys, doc_path):
        path = doc_path(polytope_doc(canonical("noncentered_triangle")))
        status, doc = call(capsys, "audit", path)
        assert status == EXIT_INPUT and doc["error"] == "CenteringRequired"
        status, doc = call(capsys, "audit", path, "--allow-noncentered")
        assert status == EXIT_VIOLATION and not doc["pass"]
        assert any(v["lhs"] == "1/2" and v["rhs"] == "1/3" for v in doc["violations"])

    def test_diagnose(self, capsys, doc_path):
        status, doc = call(capsys, "diagnose", doc_path(polytope_doc(canonical("cube_3"))), "--mode", "linear")
        assert status == EXIT_OK
        assert {d["diagnosis"]["case"] for d in doc["diagnoses"]} == {"complementary_subspace"}
        assert all(d["diagnosis"]["confirmed"] for d in doc["diagnoses"])

    def test_lift(self, capsys, doc_path):
        status, doc = call(capsys, "lift", doc_path(polytope_doc(canonical("cube_2"))), "--levels", "3")
        assert status == EXIT_OK
        assert [lv["cone_volume"] for lv in doc["levels"]] == ["1"] * 4
        assert [lv["bound"] for lv in doc["levels"][1:]] == ["16/9", "5/3", "8/5"]
        assert doc["limit_bound"] == "4/3"

    def test_lift_bad_track(self, capsys, doc_path):
        status, doc = call(capsys, "lift", doc_path(polytope_doc(canonical("cube_2"))), "--track", "9")
        assert status == EXIT_INPUT and doc["error"] == "usage"


class TestInputErrors:
    def test_malformed_json(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        status, doc = call(capsys, "hull", str(path))
        assert status == EXIT_INPUT and doc["error"] == "DocumentError"

    def test_missing_file(self, capsys, tmp_path):
        status, doc = call(capsys, "hull", str(tmp_path / "nope.json"))
        assert status == EXIT_INPUT and doc["error"] == "usage"

    @pytest.mark.parametrize("doc", [
        {"dim": 2, "vertices": [["0", "0"], ["1", "0"], ["0", "1"]]},  # origin on the boundary
        {"dim": 2, "vertices": [[0.5, 0], [-1, 1], [0, -1]]},
        {"dim": 2, "vertices": [["0.5", "0"], ["1", "0"], ["0", "1"]]},
        {"dim": 2, "vertices": [["0", "0"], ["1", "0"]]},
        {"dim": 2, "vertices": [["0", "0", "1"]]},
        [1, 2],
    ])
    def test_bad_documents(self, capsys, doc_path, doc):
        status, out = call(capsys, "hull", doc_path(doc))
        assert status == EXIT_INPUT and "error" in out

    def test_mismatched_facets(self, capsys, doc_path):
        doc = polytope_doc(canonical("cube_2"))
        doc["facets"][0]["a"] = ["2", "0"]
        status, out = call(capsys, "hull", doc_path(doc))
        assert status == EXIT_INPUT and out["error"] == "DocumentError"

    def test_unknown_canonical(self, capsys):
        status, out = call(capsys, "gen", "--canonical", "dodecahedron")
        assert status == EXIT_INPUT


def test_module_entry_point(tmp_path):
    path = tmp_path / "sq.json"
    path.write_text(json.dumps(polytope_doc(canonical("cube_2"))))
    proc = subprocess.run([sys.executable, "-m", "conevol", "audit", str(path), "--mode", "linear"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["pass"] is True
