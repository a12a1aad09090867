import csv
import json

import pytest
import yaml

from qgnsa.cli import main, render_report
from qgnsa.config import ConfigError, RunConfig, dump_config, load_config


def small_config(tmp_path, **protocol):
    cfg = {
        "seed": 3,
        "output_dir": str(tmp_path / "out"),
        "dataset": {"synthetic": {"m": 5, "n_self": 60, "n_nonself": 30, "separation": 0.5}},
        "protocol": {"folds": 3, "repetitions": 2, **protocol},
        "runs": [
            {"algorithm": "quantum", "config": {"precision": 4, "threshold": 0.5}},
            {"algorithm": "classical", "config": {"threshold": 0.5}},
        ],
    }
    path = tmp_path / "run.yaml"
    path.write_text(yaml.safe_dump(cfg))
    return path, cfg


def test_synth_writes_manifest(tmp_path, capsys):
    assert main(["synth", "--features", "4", "--self", "30", "--nonself", "10", "--output", str(tmp_path)]) == 0
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert (manifest["self_rows"], manifest["nonself_rows"], manifest["features"]) == (30, 10, 4)
    assert "config_hash" in manifest
    assert (tmp_path / "self.csv").exists() and (tmp_path / "nonself.csv").exists()


def test_synth_is_deterministic(tmp_path):
    for d in ("a", "b"):
        main(["synth", "--features", "3", "--self", "20", "--nonself", "5", "--seed", "4", "--output", str(tmp_path / d)])
    for name in ("self.csv", "nonself.csv", "manifest.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_synth_zero_separation_is_noted(tmp_path):
    main(["synth", "--separation", "0", "--self", "10", "--nonself", "10", "--output", str(tmp_path)])
    assert json.loads((tmp_path / "manifest.json").read_text())["notes"]


def test_synth_invalid_parameters(tmp_path):
    assert main(["synth", "--separation", "-1", "--output", str(tmp_path)]) == 1
    assert main(["synth", "--self", "0", "--output", str(tmp_path)]) == 1


def test_preprocess_fixture(fixtures, tmp_path, capsys):
    assert main(["preprocess", "--input", str(fixtures / "metaverse_sample.csv"),
                 "--spec", "metaverse", "--output", str(tmp_path)]) == 0
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert (manifest["self_rows"], manifest["nonself_rows"], manifest["features"]) == (14, 6, 12)
    assert "self rows: 14" in capsys.readouterr().out


def test_preprocess_header_only_fails(fixtures, tmp_path):
    assert main(["preprocess", "--input", str(fixtures / "header_only.csv"), "--output", str(tmp_path)]) == 2


def test_preprocess_malformed_and_missing(fixtures, tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"label_column": "label", "nonself_labels": ["x"]}))
    assert main(["preprocess", "--input", str(fixtures / "malformed.csv"), "--spec", str(spec),
                 "--output", str(tmp_path / "o")]) == 2
    assert "line 3" in capsys.readouterr().err
    assert main(["preprocess", "--input", str(tmp_path / "none.csv"), "--output", str(tmp_path)]) == 2
    assert main(["preprocess", "--input", "x.csv", "--spec", "nosuch", "--output", str(tmp_path)]) == 1


def test_run_writes_all_artifacts(tmp_path):
    path, _ = small_config(tmp_path)
    assert main(["run", "--config", str(path), "--jobs", "1"]) == 0
    out = tmp_path / "out"
    report = json.loads((out / "report.json").read_text())
    assert set(report["results"]) == {"quantum", "classical"}
    assert all(len(r["runs"]) == 6 for r in report["results"].values())
    for algo in ("quantum", "classical"):
        for f in range(3):
            for r in range(2):
                rows = list(csv.DictReader(open(out / "runs" / algo / f"{f}_{r}" / "confusion.csv")))
                assert rows[0]["config_hash"] == report["config_hash"]
    long = list(csv.DictReader(open(out / "metrics_long.csv")))
    assert len(long) == 2 * 6 * 7
    assert {row["config_hash"] for row in long} == {report["config_hash"]}


def test_run_is_byte_identical(tmp_path):
    path, _ = small_config(tmp_path)
    main(["run", "--config", str(path), "--output", str(tmp_path / "a"), "--jobs", "1"])
    main(["run", "--config", str(path), "--output", str(tmp_path / "b"), "--jobs", "2"])
    for name in ("report.json", "metrics_long.csv", "runs/quantum/2_1/confusion.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_run_paper_test_four_config(tmp_path):
    path, cfg = small_config(tmp_path)
    cfg["runs"] = [
        {"name": "q4", "algorithm": "quantum", "config": {"max_gen": 5, "population_size": 5, "precision": 4, "threshold": 1.2}},
        {"name": "c4", "algorithm": "classical", "config": {"max_gen": 5, "population_size": 5, "threshold": 1.2}},
    ]
    path.write_text(yaml.safe_dump(cfg))
    assert main(["run", "--config", str(path), "--jobs", "1"]) == 0
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    assert report["results"]["q4"]["config"]["precision"] == 4


@pytest.mark.parametrize(
    "mutate, where",
    [
        (lambda c: c["runs"][0].update(algorithm="annealing"), "config.runs[0].algorithm"),
        (lambda c: c["runs"][1]["config"].update(crossover_prob="high"), "config.runs[1].config.crossover_prob"),
        (lambda c: c["dataset"].update(csv={"path": "x.csv", "preset": "metaverse"}), "config.dataset"),
        (lambda c: c["protocol"].update(folds=0), "config.protocol.folds"),
        (lambda c: c.update(colour="red"), "config.colour"),
        (lambda c: c["runs"][0]["config"].update(adj=9.0), "config.runs[0].config"),
    ],
)
def test_invalid_config_reports_field_path(tmp_path, capsys, mutate, where):
    path, cfg = small_config(tmp_path)
    mutate(cfg)
    path.write_text(yaml.safe_dump(cfg))
    assert main(["run", "--config", str(path)]) == 1
    assert where in capsys.readouterr().err


def test_missing_config_file(tmp_path):
    assert main(["run", "--config", str(tmp_path / "nope.json")]) == 1


def test_config_round_trip(tmp_path):
    path, _ = small_config(tmp_path)
    parsed = load_config(path)
    again = RunConfig.from_dict(json.loads(dump_config(parsed)))
    assert again == parsed
    assert dump_config(again) == dump_config(parsed)


def test_csv_source_config(fixtures, tmp_path):
    cfg = {
        "dataset": {"csv": {"path": str(fixtures / "metaverse_sample.csv"), "preset": "metaverse"}},
        "protocol": {"folds": 2, "repetitions": 1},
        "runs": [{"algorithm": "quantum", "config": {"precision": 2}}],
        "output_dir": str(tmp_path / "out"),
    }
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cfg))
    assert main(["run", "--config", str(path), "--jobs", "1"]) == 0
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    assert report["dataset"]["features"] == 12


def test_report_table_and_csv(tmp_path, capsys):
    path, _ = small_config(tmp_path)
    main(["run", "--config", str(path), "--jobs", "1"])
    capsys.readouterr()
    assert main(["report", "--input", str(tmp_path / "out" / "report.json")]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2 + 7
    assert "quantum std" in lines[0] and "classical mean" in lines[0]
    assert main(["report", "--input", str(tmp_path / "out" / "report.json"), "--format", "csv"]) == 0
    rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
    assert len(rows) == 14 and "std" in rows[0]


def test_report_single_run_and_undefined(tmp_path):
    run = {"fold": 0, "repetition": 0, "seed": 1, "train_fitness": 0.0, "detectors": 1,
           "confusion": {"tp": 0, "tn": 4, "fp": 0, "fn": 2},
           "metrics": {"fpr": 0.0, "fnr": 1.0, "accuracy": 4 / 6, "precision": None,
                       "recall": 0.0, "f1": None, "specificity": 1.0}}
    agg = {"algorithm": "quantum", "config": {}, "config_hash": "x", "folds": 1, "repetitions": 1,
           "master_seed": 0, "holdout_nonself": True, "runs": [run]}
    text = render_report({"results": {"quantum": agg}})
    assert "std" not in text
    assert "n/a" in [line.split()[1] for line in text.splitlines() if line.startswith("precision")]


def test_report_malformed(tmp_path):
    bad = tmp_path / "r.json"
    bad.write_text("{not json")
    assert main(["report", "--input", str(bad)]) == 2
    bad.write_text(json.dumps({"results": {"q": {"runs": []}}}))
    assert main(["report", "--input", str(bad)]) == 2
    assert main(["report", "--input", str(tmp_path / "missing.json")]) == 1


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 1
