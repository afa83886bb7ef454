import json

import pytest

import golden
from hyperzeta.cli import main

LOOP_HYPERGRAPH = {"vertices": ["a", "b"],
                   "edges": {"e1": ["a", "b"], "e2": ["a"], "e3": ["a", "b"]}}

S2_REP_FILE = {
    "group": {"k": 2, "elements": [[1, 2], [2, 1]]},
    "irreps": [
        {"name": "trivial", "degree": 1, "matrices": [[[1]], [[1]]]},
        {"name": "sign", "degree": 1, "matrices": [[[1]], [[-1]]]},
    ],
}


@pytest.fixture()
def files(tmp_path):
    def write(name, payload, raw=None):
        path = tmp_path / name
        path.write_text(raw if raw is not None else json.dumps(payload))
        return str(path)
    return write, tmp_path


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_zeta_success_and_reciprocal(files, capsys):
    write, _ = files
    h = write("h.json", golden.BASE_HYPERGRAPH)
    code, report = run_json(capsys, ["zeta", h, "--json"])
    assert code == 0
    from hyperzeta.algebra import collapse_to_t
    want = collapse_to_t(golden.base_zeta_s())
    assert report["reciprocal"]["coefficients"] == want.to_coeff_map()
    assert report["mode"] == "exact"


def test_zeta_ihara_flag(files, capsys):
    write, _ = files
    h = write("h.json", golden.BASE_HYPERGRAPH)
    code, report = run_json(capsys, ["zeta", h, "--ihara", "--json"])
    assert code == 0
    assert all(key.startswith("0,")
               for key in report["reciprocal"]["coefficients"])


def test_parse_error_exit_2(files, capsys):
    write, _ = files
    bad = write("bad.json", None, raw="{broken")
    assert main(["zeta", bad]) == 2
    assert main(["zeta", "/nonexistent/path.json"]) == 2
    capsys.readouterr()


def test_precondition_exit_3(files, capsys):
    write, _ = files
    h = write("loop.json", LOOP_HYPERGRAPH)
    assert main(["zeta", h]) == 3
    assert "loop" in capsys.readouterr().err


def test_cover_and_bad_voltage_exit_4(files, capsys):
    write, _ = files
    h = write("h.json", golden.BASE_HYPERGRAPH)
    good = write("v.json", golden.VOLTAGE)
    code, report = run_json(capsys, ["cover", h, good, "--json"])
    assert code == 0
    assert report["fold"] == 2 and report["group_order"] == 2
    assert report["kronecker_identity"] is True
    assert len(report["cover"]["vertices"]) == 6
    assert len(report["cover"]["edges"]) == 6

    bad = write("badv.json", {"k": 2, "assignments": {"v9|e1": [2, 1]}})
    assert main(["cover", h, bad]) == 4
    assert "v9" in capsys.readouterr().err
    notperm = write("np.json", {"k": 2, "assignments": {"v1|e1": [1, 1]}})
    assert main(["cover", h, notperm]) == 4
    capsys.readouterr()


def test_cover_identity_voltages_components(files, capsys):
    write, _ = files
    h = write("h.json", golden.BASE_HYPERGRAPH)
    v = write("v.json", {"k": 3, "assignments": {}})
    code, report = run_json(capsys, ["cover", h, v, "--json"])
    assert code == 0
    assert report["cover_components"] == 3


def test_lfun_trivial_matches_zeta(files, capsys):
    write, _ = files
    h = write("h.json", golden.BASE_HYPERGRAPH)
    v = write("v.json", golden.VOLTAGE)
    code, lfun = run_json(capsys, ["lfun", h, v, "--irrep", "1", "--json"])
    assert code == 0 and lfun["routes_agree"]
    code, zeta = run_json(capsys, ["zeta", h, "--json"])
    assert lfun["reciprocal"] == zeta["reciprocal"]


def test_lfun_sign_matches_reference(files, capsys):
    write, _ = files
    h = write("h.json", golden.BASE_HYPERGRAPH)
    v = write("v.json", golden.VOLTAGE)
    code, report = run_json(capsys, ["lfun", h, v, "--irrep", "2", "--json"])
    assert code == 0
    from hyperzeta.algebra import collapse_to_t
    assert report["reciprocal"]["coefficients"] \
        == collapse_to_t(golden.sign_lfun_s()).to_coeff_map()


def test_lfun_rep_file_and_exit_6(files, capsys):
    write, _ = files
    h = write("h.json", golden.BASE_HYPERGRAPH)
    v = write("v.json", golden.VOLTAGE)
    rep = write("rep.json", S2_REP_FILE)
    assert main(["lfun", h, v, "--rep", rep, "--irrep", "2", "--json"]) == 0
    capsys.readouterr()

    corrupt = dict(S2_REP_FILE)
    corrupt["irreps"] = [S2_REP_FILE["irreps"][0],
                         {"name": "sign", "degree": 1,
                          "matrices": [[[1]], [[2]]]}]
    bad = write("badrep.json", corrupt)
    assert main(["lfun", h, v, "--rep", bad, "--irrep", "2"]) == 6
    assert main(["lfun", h, v, "--irrep", "9"]) == 6
    capsys.readouterr()


def test_lfun_sampled_mode(files, capsys):
    write, _ = files
    h = write("h.json", golden.BASE_HYPERGRAPH)
    v = write("v3.json", {"k": 3, "assignments": {"v1|e1": [2, 3, 1]}})
    code, report = run_json(capsys, ["lfun", h, v, "--irrep", "2", "--json"])
    assert code == 0
    assert report["mode"] == "sampled" and report["routes_agree"]
    assert report["max_residual"] < 1e-8


def test_verify_example(files, capsys):
    write, _ = files
    h = write("h.json", golden.BASE_HYPERGRAPH)
    v = write("v.json", golden.VOLTAGE)
    code, report = run_json(capsys, ["verify", h, v, "--json"])
    assert code == 0 and report["ok"]
    assert report["multiplicities"] == [1, 1]
    assert report["kronecker_identity"] and report["factored_identity_ok"]
    from hyperzeta.algebra import collapse_to_t
    assert report["cover_reciprocal"]["coefficients"] \
        == collapse_to_t(golden.cover_zeta_s()).to_coeff_map()


def test_verify_requires_inputs(capsys):
    assert main(["verify"]) == 2
    capsys.readouterr()


def test_verify_random_deterministic(files, capsys):
    write, tmp = files
    out1, out2 = str(tmp / "r1.json"), str(tmp / "r2.json")
    assert main(["verify", "--random", "3", "--seed", "5",
                 "--out", out1]) == 0
    assert main(["verify", "--random", "3", "--seed", "5",
                 "--out", out2]) == 0
    capsys.readouterr()
    b1 = open(out1, "rb").read()
    assert b1 == open(out2, "rb").read()
    report = json.loads(b1)
    assert report["ok"] and len(report["results"]) == 3


def test_series_match_and_explosion(files, capsys):
    write, _ = files
    h = write("h.json", golden.BASE_HYPERGRAPH)
    code, report = run_json(capsys, ["series", h, "--order", "6", "--json"])
    assert code == 0 and report["match"]
    assert report["order_completed"] == 6

    code, report = run_json(capsys, ["series", h, "--order", "8",
                                     "--class-cap", "40", "--json"])
    assert code == 7
    assert report["order_completed"] < 8 and report["match"]


def test_series_order_zero(files, capsys):
    write, _ = files
    h = write("h.json", golden.BASE_HYPERGRAPH)
    code, report = run_json(capsys, ["series", h, "--order", "1", "--json"])
    assert code == 0
    assert report["table"][0]["determinant"] == "1"
    assert report["table"][0]["euler_product"] == "1"


def test_out_file_written(files, capsys):
    write, tmp = files
    h = write("h.json", golden.BASE_HYPERGRAPH)
    out = str(tmp / "report.json")
    assert main(["zeta", h, "--out", out]) == 0
    capsys.readouterr()
    data = json.loads(open(out).read())
    assert data["command"] == "zeta" and "reciprocal" in data
