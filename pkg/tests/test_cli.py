import json

import pytest

from rankcodes.cli import main


@pytest.fixture
def config_path(tmp_path):
    cfg = {
        "field": {"q": 2, "n": 4},
        "code": {"k": 2},
        "parts": [[1, 2], [4, 8]],
        "channel": {"t_values": [1, 2], "trials": 2000, "seed": 9,
                    "mode": "uniform-matrix"},
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    return str(path)


def _read_jsonl(path):
    with open(path) as fh:
        return [json.loads(line) for line in fh]


def test_count_subcommand(capsys):
    assert main(["count", "2", "2", "2", "1"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["count"] == "9"


def test_count_large_values_stay_exact(capsys):
    assert main(["count", "2", "64", "64", "32"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert int(record["count"]) > 10**300  # far beyond any float


def test_code_info(config_path, capsys):
    assert main(["code-info", "--config", config_path]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["d"] == 3 and record["capability"] == 1
    assert record["generator_rank"] == 4 and record["parity_rank"] == 4


def test_code_info_explicit_vectors(tmp_path, capsys):
    cfg = {"field": {"q": 2, "n": 4}, "code": {"k": 2, "g": [1, 2, 4, 8]}}
    path = tmp_path / "g.json"
    path.write_text(json.dumps(cfg))
    assert main(["code-info", "--config", str(path)]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["g"] == [1, 2, 4, 8]


def test_roundtrip_success(config_path, capsys):
    assert main(["roundtrip", "--config", config_path, "--seed", "4",
                 "--trials", "25", "--t", "1"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["successes"] == 25
    assert record["field_mul_count"] > 0


def test_roundtrip_requires_seed(config_path, capsys):
    assert main(["roundtrip", "--config", config_path]) == 2


def test_roundtrip_rejects_t_beyond_capability(config_path):
    assert main(["roundtrip", "--config", config_path, "--seed", "1",
                 "--t", "2"]) == 2


def test_simulate_records(config_path, tmp_path):
    out = tmp_path / "out.jsonl"
    assert main(["simulate", "--config", config_path,
                 "--output", str(out)]) == 0
    records = _read_jsonl(out)
    assert len(records) == 2
    by_t = {r["params"]["t"]: r for r in records}
    assert by_t[1]["exact_probability"] == 1.0
    assert by_t[2]["exact_probability"] == 0.390625
    assert abs(by_t[2]["empirical"] - 0.390625) <= 3 * by_t[2]["half_width"]
    assert by_t[2]["params"]["seed"] == 9
    assert by_t[2]["decode_successes"] is None


def test_simulate_with_decode_trials(tmp_path):
    cfg = {
        "field": {"q": 2, "n": 6},
        "code": {"k": 4},
        "parts": [[1, 2, 4], [8, 16, 32]],
        "channel": {"t_values": [2], "trials": 500, "seed": 3,
                    "decode_trials": 50},
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    out = tmp_path / "out.jsonl"
    assert main(["simulate", "--config", str(path), "--output", str(out)]) == 0
    (record,) = _read_jsonl(out)
    assert record["decode_successes"] == record["decode_event_successes"]
    assert record["field_mul_count"] > 0


def test_simulate_flag_overrides(config_path, tmp_path):
    out = tmp_path / "out.jsonl"
    assert main(["simulate", "--config", config_path, "--output", str(out),
                 "--trials", "100", "--seed", "77", "--t", "2"]) == 0
    (record,) = _read_jsonl(out)
    assert record["params"]["trials"] == 100
    assert record["params"]["seed"] == 77


def test_simulate_reproducible(config_path, tmp_path):
    out1, out2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert main(["simulate", "--config", config_path, "--output", str(out1)]) == 0
    assert main(["simulate", "--config", config_path, "--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_simulate_requires_seed(tmp_path):
    cfg = {"field": {"q": 2, "n": 4}, "code": {"k": 2}, "parts": [[1, 2]],
           "channel": {"t_values": [1], "trials": 10}}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    assert main(["simulate", "--config", str(path)]) == 2


def test_simulate_missing_config_file(config_path):
    assert main(["simulate", "--config", config_path.replace("cfg", "missing")]) == 2


def test_simulate_empty_t_list_in_config(tmp_path):
    cfg = {"field": {"q": 2, "n": 4}, "code": {"k": 2},
           "parts": [[1, 2], [4, 8]],
           "channel": {"t_values": [], "trials": 10, "seed": 1}}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    out = tmp_path / "out.jsonl"
    assert main(["simulate", "--config", str(path), "--output", str(out)]) == 0
    assert out.read_text() == ""


def test_simulate_overlapping_parts_rejected(tmp_path):
    cfg = {"field": {"q": 2, "n": 4}, "code": {"k": 2},
           "parts": [[1, 2], [2, 4]],
           "channel": {"t_values": [1], "trials": 10, "seed": 1}}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    assert main(["simulate", "--config", str(path)]) == 2


def test_subfield_subcommand(tmp_path, capsys):
    cfg = {"field": {"q": 2, "n": 6}, "code": {"k": 4}, "subfield": {"s": 3}}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    assert main(["subfield", "--config", str(path)]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["s"] == 3 and record["unique"] is True
    assert len(record["S"]) == 6 and len(record["A"]) == 2
    assert len(record["H_qs"]) == 4


def test_subfield_invalid_s(tmp_path):
    cfg = {"field": {"q": 2, "n": 6}, "code": {"k": 4}}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    assert main(["subfield", "--config", str(path), "--s", "4"]) == 2
    assert main(["subfield", "--config", str(path)]) == 2  # s missing


def test_config_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["code-info", "--config", str(bad)]) == 2
    nofield = tmp_path / "nofield.json"
    nofield.write_text(json.dumps({"code": {"k": 2}}))
    assert main(["code-info", "--config", str(nofield)]) == 2
    composite = tmp_path / "composite.json"
    composite.write_text(json.dumps({"field": {"q": 6, "n": 2},
                                     "code": {"k": 1}}))
    assert main(["code-info", "--config", str(composite)]) == 2


def test_csv_projection(config_path, tmp_path):
    out = tmp_path / "out.jsonl"
    csv_path = tmp_path / "out.csv"
    assert main(["simulate", "--config", config_path, "--output", str(out),
                 "--csv", str(csv_path)]) == 0
    lines = csv_path.read_text().strip().splitlines()
    assert len(lines) == 3  # header + 2 records
    assert "empirical" in lines[0]
