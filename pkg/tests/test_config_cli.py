import json
import math
from fractions import Fraction

import pytest

import rsentropy as rs
from rsentropy import cli
from rsentropy.errors import BadScalarLiteral, SchemaViolation, UnreadableFile

Z23_CONFIG = {
    "space": "P1",
    "generators": [
        {"num": ["1", "0", "0"], "den": ["0", "0", "1"]},
        {"num": ["1", "0", "0", "0"], "den": ["0", "0", "0", "1"]},
    ],
}


def write_config(tmp_path, data, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_parse_scalar_forms():
    assert rs.parse_scalar(3) == rs.GaussianRational(3)
    assert rs.parse_scalar("2/5") == rs.GaussianRational(Fraction(2, 5))
    s = rs.parse_scalar({"re": "1/2", "im": "-3/4"})
    assert s == rs.GaussianRational(Fraction(1, 2), Fraction(-3, 4))
    with pytest.raises(BadScalarLiteral):
        rs.parse_scalar("one half")


def test_minimal_config_defaults(tmp_path):
    cfg = rs.parse_config(write_config(tmp_path, {
        "generators": [{"num": ["1", "0", "0"], "den": ["0", "0", "1"]}],
    }))
    assert cfg.seed == 0
    assert cfg.multiplicities == (1,)
    assert cfg.estimator["epsilon_grid"] == [0.02, 0.05, 0.1, 0.2]
    assert cfg.degrees == (2,)
    echo = cfg.echo()
    assert echo["seed"] == 0 and echo["estimator"]["nu_max"] == 12


def test_config_common_factor_points_at_generator(tmp_path):
    bad = {"generators": [{"num": ["0", "1", "0"], "den": ["0", "0", "1"]}]}
    with pytest.raises(SchemaViolation) as err:
        rs.parse_config(write_config(tmp_path, bad))
    assert err.value.pointer == "/generators/0"


def test_config_schema_pointer(tmp_path):
    bad = {"generators": [{"num": ["1", "0"], "den": ["0", "1"]}], "seed": -3}
    with pytest.raises(SchemaViolation) as err:
        rs.parse_config(write_config(tmp_path, bad))
    assert err.value.pointer == "/seed"


def test_config_exact_scalar_objects(tmp_path):
    cfg = rs.parse_config(write_config(tmp_path, {
        "generators": [{
            "num": [{"re": "1"}, {"re": "1/2", "im": "-3/4"}],
            "den": ["0", "1"],
        }],
    }))
    c = cfg.generators[0].num[1]
    assert c == rs.GaussianRational(Fraction(1, 2), Fraction(-3, 4))


def test_config_unreadable():
    with pytest.raises(UnreadableFile):
        rs.parse_config("/nonexistent/path.json")


def test_cli_exact_values(tmp_path, capsys):
    path = write_config(tmp_path, Z23_CONFIG)
    assert cli.main(["exact", "--config", path]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["exact"]["h_top_exact"] == math.log(5)
    assert report["exact"]["d_top"] == 5

    mobius = {
        "generators": [
            {"num": ["1", "1"], "den": ["0", "1"]},   # z + 1
            {"num": ["2", "0"], "den": ["0", "1"]},   # 2z
        ],
    }
    assert cli.main(["exact", "--config", write_config(tmp_path, mobius, "m.json")]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["exact"]["h_top_exact"] == math.log(2)


def test_cli_error_json(tmp_path, capsys):
    bad = {"generators": [{"num": ["0", "1", "0"], "den": ["0", "0", "1"]}]}
    code = cli.main(["exact", "--config", write_config(tmp_path, bad)])
    assert code == 1
    err = json.loads(capsys.readouterr().out)
    assert err["error"]["type"] == "SchemaViolation"
    assert err["error"]["pointer"] == "/generators/0"


def test_cli_relations(tmp_path, capsys):
    z24 = {
        "generators": [
            {"num": ["1", "0", "0"], "den": ["0", "0", "1"]},
            {"num": ["1", "0", "0", "0", "0"], "den": ["0", "0", "0", "0", "1"]},
        ],
    }
    assert cli.main(["relations", "--config", write_config(tmp_path, z24),
                     "--word-length", "2"]) == 0
    report = json.loads(capsys.readouterr().out)
    rel = report["relations"]
    assert rel["relations"] == 1
    assert rel["relation_witnesses"] == [[[1, 2], [2, 1]]]


def test_cli_estimate_deterministic_csv(tmp_path):
    cfg = dict(Z23_CONFIG)
    cfg["estimator"] = {"nu_min": 2, "nu_max": 4, "epsilon_grid": [0.1, 0.2]}
    path = write_config(tmp_path, cfg)
    outs = []
    for run in (1, 2):
        report = tmp_path / f"r{run}.json"
        csv = tmp_path / f"c{run}.csv"
        assert cli.main(["estimate", "--config", path, "--method", "ds",
                         "--seed", "42", "--report", str(report),
                         "--csv", str(csv)]) == 0
        outs.append((report.read_bytes(), csv.read_bytes()))
    assert outs[0] == outs[1]
    header = outs[0][1].decode().splitlines()[0]
    assert header == "method,epsilon,nu,count,exact_flag,pool_size"


def test_cli_symbolic_dimension_run(tmp_path, capsys):
    cfg = {"space": "Pn", "n": 2, "degrees": [2, 2]}
    assert cli.main(["exact", "--config", write_config(tmp_path, cfg)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["exact"]["h_top_exact"] == math.log(8)
    assert report["exact"]["dynamical_degrees"] == [2, 4, 8]
    assert "d_top" not in report["exact"]


def test_cli_report_subcommand(tmp_path, capsys):
    cfg = dict(Z23_CONFIG)
    cfg["estimator"] = {"nu_min": 2, "nu_max": 4, "epsilon_grid": [0.1, 0.2]}
    path = write_config(tmp_path, cfg)
    assert cli.main(["report", "--config", path]) == 0
    report = json.loads(capsys.readouterr().out)
    assert set(report["estimates"]) == {"dinh_sibony", "friedland", "per_word"}
    pw = report["estimates"]["per_word"]
    assert pw["available"] and pw["sum_matches_joint"]
    assert report["coincidence"]["friedland_bounds"]["upper"] == math.log(5)
    assert report["relations"]["relations"] == 1  # monomials commute
    assert report["flags"] == []


def test_cli_coincidence_section(tmp_path, capsys):
    translations = {
        "generators": [
            {"num": ["1", "1"], "den": ["0", "1"]},
            {"num": ["1", {"re": "0", "im": "1"}], "den": ["0", "1"]},
        ],
    }
    path = write_config(tmp_path, translations)
    assert cli.main(["friedland-bounds", "--config", path]) == 0
    report = json.loads(capsys.readouterr().out)
    pts = report["coincidence"]["points"]
    assert [p["point"] for p in pts] == ["inf"]
    assert pts[0]["recurrent"] and pts[0]["exact"]
    fb = report["coincidence"]["friedland_bounds"]
    assert fb["lower"] == 0.0 and fb["upper"] == math.log(2)

    # the plain coincidence subcommand reports points without the bounds
    assert cli.main(["coincidence", "--config", path]) == 0
    report = json.loads(capsys.readouterr().out)
    assert "friedland_bounds" not in report["coincidence"]
    assert [p["point"] for p in report["coincidence"]["points"]] == ["inf"]
