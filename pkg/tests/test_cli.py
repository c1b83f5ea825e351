import json

import pytest

from braidset.catalog import CATALOG
from braidset.cli import main

DATA = {k: e.document() for k, e in CATALOG.items()}


@pytest.fixture
def files(tmp_path):
    out = {}
    for key in ("trivial_ab", "rho_cycle", "twelve", "six", "l1r1_nonbraided", "sqfree_three"):
        p = tmp_path / f"{key}.json"
        p.write_text(json.dumps(DATA[key]))
        out[key] = p
    for key in ("ext_r1", "ext_r2"):
        doc = dict(DATA[key])
        ground = {k: v for k, v in doc.items() if k not in ("x_solution", "y_solution")}
        (tmp_path / f"{key}_ground.json").write_text(json.dumps(ground))
        out[f"{key}_ground"] = tmp_path / f"{key}_ground.json"
        doc["x_solution"], doc["y_solution"] = "twelve.json", "six.json"
        (tmp_path / f"{key}.json").write_text(json.dumps(doc))
        out[key] = tmp_path / f"{key}.json"
    return out


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_holds(capsys, files):
    code, out, _ = run(capsys, "check", files["trivial_ab"], "--conditions", "ybe")
    assert code == 0 and "ybe: holds" in out


def test_check_fails_with_witness(capsys, files):
    code, out, _ = run(capsys, "check", files["rho_cycle"], "--conditions", "2cancellative")
    assert code == 1 and "r(x,x)=(y,x)" in out


def test_check_full_profile(capsys, files):
    code, out, _ = run(capsys, "check", files["twelve"])
    assert code == 0 and "FAILS" not in out


def test_check_json(capsys, files):
    code, out, _ = run(capsys, "check", files["rho_cycle"], "--conditions", "ybe,involutive", "--json")
    data = json.loads(out)
    assert data["ybe"]["holds"] and not data["involutive"]["holds"] and code == 1


def test_monoid_all_pass(capsys, files):
    code, out, _ = run(capsys, "monoid", files["sqfree_three"], "--degree", "3")
    assert code == 0 and "all pass" in out


def test_monoid_non_involutive_note(capsys, files):
    code, out, _ = run(capsys, "monoid", files["rho_cycle"], "--degree", "3")
    assert code == 0
    assert "base not involutive: involutivity check skipped" in out


def test_monoid_non_braided_fails(capsys, files):
    code, out, _ = run(capsys, "monoid", files["l1r1_nonbraided"], "--degree", "3")
    assert code == 1 and "FAILS" in out


def test_monoid_cancellation_experiment(capsys, files):
    code, out, _ = run(capsys, "monoid", files["twelve"], "--degree", "3", "--verify", "cancellation", "--json")
    data = json.loads(out)
    assert code == 0 and set(data["checks"]) >= {"cancellation_2", "cancellation_3"}


def test_monoid_budget_exit_code(capsys, files):
    code, _, err = run(capsys, "monoid", files["twelve"], "--degree", "5", "--budget", "1000")
    assert code == 3 and "budget" in err


def test_extend_summary_line(capsys, files):
    code, out, _ = run(capsys, "extend", files["twelve"], files["six"], files["ext_r1_ground"], "--degree", "2")
    assert out.splitlines()[0] == "YBE: true; stu: false; orbits: 3"
    assert code == 0


def test_iso_not_isomorphic(capsys, files):
    code, out, _ = run(capsys, "iso", files["ext_r1"], files["ext_r2"])
    assert code == 1 and out.strip() == "not isomorphic"


def test_iso_isomorphic(capsys, files):
    code, out, _ = run(capsys, "iso", files["trivial_ab"], "trivial_ab")
    assert code == 0 and out.startswith("isomorphic")


def test_catalog_list_and_check(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and "rho_cycle" in out
    code, out, _ = run(capsys, "catalog", "rho_cycle")
    assert code == 0 and out.strip() == "profile matches"
    code, _, err = run(capsys, "catalog", "nope")
    assert code == 2


def test_graph_output_file(capsys, files, tmp_path):
    target = tmp_path / "g.dot"
    code, _, _ = run(capsys, "graph", files["sqfree_three"], "-o", target, "--self-loops")
    assert code == 0 and target.read_text().startswith("digraph G {")


def test_enumerate_counts(capsys):
    code, out, _ = run(capsys, "enumerate", "trivial_ab", "trivial_c", "--filter", "ybe", "--limit", "5")
    assert code == 0 and out.strip().endswith("2 extension(s)")


def test_enumerate_family_json(capsys):
    code, out, _ = run(capsys, "enumerate", "twelve", "six", "--mode", "permutation_family", "--family", "admissible", "--limit", "2", "--json")
    assert code == 0 and len(json.loads(out)) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "/no/such/file.json"],
        ["check", "trivial_ab", "--conditions", "bogus"],
        ["monoid", "trivial_ab", "--verify", "bogus"],
        ["enumerate", "trivial_ab", "trivial_c", "--filter", "bogus"],
        ["enumerate", "trivial_ab", "trivial_c", "--mode", "permutation_family"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_malformed_json_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    code, _, _ = run(capsys, "check", p)
    assert code == 2
    p.write_text(json.dumps({"elements": ["a", "b"], "r": []}))
    code, _, _ = run(capsys, "check", p)
    assert code == 2
