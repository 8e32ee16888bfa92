"""Tests for the command-line pipeline and config parsing."""

import numpy as np
import pytest

from mammoscope import cli
from mammoscope.config import load_config, parse_config
from mammoscope.errors import ConfigError

SMALL_CONFIG = """\
# desk-scale run
wavelet.filter = haar
wavelet.levels = 2
cv.k = 2
cv.seed = 11
phantom.size = 48
phantom.count_per_class = 6
phantom.seed = 77
phantom.mass_radius = 8
"""


@pytest.fixture()
def workdir(tmp_path):
    cfg = tmp_path / "pipeline.cfg"
    cfg.write_text(SMALL_CONFIG)
    return tmp_path, str(cfg)


def run(argv):
    return cli.main(argv)


class TestConfig:
    def test_defaults_when_no_file(self):
        cfg = load_config(None)
        assert cfg.preprocess.threshold == 0.1
        assert cfg.features.filter == "daub4"
        assert cfg.features.levels == 3
        assert cfg.cv_folds == 5

    def test_parse_and_override(self):
        cfg = parse_config(SMALL_CONFIG)
        assert cfg.features.filter == "haar"
        assert cfg.features.levels == 2
        assert cfg.phantom.count_per_class == 6

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="unknown key"):
            parse_config("wavelet.depth = 3")

    def test_bad_value(self):
        with pytest.raises(ConfigError):
            parse_config("wavelet.filter = sym8")
        with pytest.raises(ConfigError):
            parse_config("preprocess.orient = yes")
        with pytest.raises(ConfigError):
            parse_config("classifier.threshold = 1.5")

    def test_duplicate_key(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config("cv.k = 2\ncv.k = 3")

    def test_missing_file_is_exit_2(self, tmp_path):
        status = run(["phantom", "--config", str(tmp_path / "nope.cfg"),
                      "--out", str(tmp_path / "out")])
        assert status == 2


class TestPhantomCommand:
    def test_generates_files(self, workdir):
        tmp_path, cfg = workdir
        out = tmp_path / "images"
        assert run(["phantom", "--config", cfg, "--out", str(out)]) == 0
        assert (out / "manifest.csv").exists()
        assert len(list(out.glob("*.pgm"))) == 12

    def test_unwritable_out_dir_is_exit_2(self, workdir, capsys):
        tmp_path, cfg = workdir
        blocker = tmp_path / "blocker"
        blocker.write_text("not a directory")
        status = run(["phantom", "--config", cfg, "--out", str(blocker / "sub")])
        assert status == 2
        assert "error" in capsys.readouterr().err


class TestExtractCommand:
    def test_extract_and_determinism(self, workdir):
        tmp_path, cfg = workdir
        out = tmp_path / "images"
        run(["phantom", "--config", cfg, "--out", str(out)])
        feats_a = tmp_path / "a.csv"
        feats_b = tmp_path / "b.csv"
        assert run(["extract", "--config", cfg, "--manifest", str(out / "manifest.csv"),
                    "--out", str(feats_a)]) == 0
        assert run(["extract", "--config", cfg, "--manifest", str(out / "manifest.csv"),
                    "--out", str(feats_b)]) == 0
        text = feats_a.read_text()
        assert text == feats_b.read_text()
        lines = text.strip().splitlines()
        assert len(lines) == 13  # header + 12 rows
        assert lines[0].startswith("id,label,wll_mean")

    def test_missing_image_partial_failure(self, workdir, capsys):
        tmp_path, cfg = workdir
        out = tmp_path / "images"
        run(["phantom", "--config", cfg, "--out", str(out)])
        manifest = out / "manifest.csv"
        manifest.write_text(manifest.read_text() + "missing.pgm,normal\n")
        feats = tmp_path / "f.csv"
        status = run(["extract", "--config", cfg, "--manifest", str(manifest),
                      "--out", str(feats)])
        assert status == 1
        assert "missing.pgm" in capsys.readouterr().err
        assert len(feats.read_text().strip().splitlines()) == 13  # failed row dropped

    def test_bad_manifest_is_exit_2(self, workdir):
        tmp_path, cfg = workdir
        bad = tmp_path / "bad.csv"
        bad.write_text("file,class\nx.pgm,normal\n")
        assert run(["extract", "--config", cfg, "--manifest", str(bad),
                    "--out", str(tmp_path / "f.csv")]) == 2

    def test_jobs_flag_matches_serial(self, workdir):
        tmp_path, cfg = workdir
        out = tmp_path / "images"
        run(["phantom", "--config", cfg, "--out", str(out)])
        serial = tmp_path / "serial.csv"
        parallel = tmp_path / "parallel.csv"
        run(["extract", "--config", cfg, "--manifest", str(out / "manifest.csv"),
             "--out", str(serial)])
        run(["extract", "--config", cfg, "--manifest", str(out / "manifest.csv"),
             "--out", str(parallel), "--jobs", "2"])
        assert serial.read_text() == parallel.read_text()


def _pipeline_to_features(workdir):
    tmp_path, cfg = workdir
    out = tmp_path / "images"
    feats = tmp_path / "features.csv"
    run(["phantom", "--config", cfg, "--out", str(out)])
    run(["extract", "--config", cfg, "--manifest", str(out / "manifest.csv"),
         "--out", str(feats)])
    return feats


class TestTrainPredict:
    def test_train_then_predict(self, workdir):
        tmp_path, cfg = workdir
        feats = _pipeline_to_features(workdir)
        model = tmp_path / "model.txt"
        assert run(["train", "--config", cfg, "--features", str(feats),
                    "--out", str(model)]) == 0
        assert model.read_text().startswith("nbmodel v1\n")
        pred = tmp_path / "pred.csv"
        assert run(["predict", "--features", str(feats), "--model", str(model),
                    "--out", str(pred)]) == 0
        lines = pred.read_text().strip().splitlines()
        assert lines[0] == "id,score,label"
        assert len(lines) == 13
        for line in lines[1:]:
            _, score, label = line.rsplit(",", 2)
            assert 0.0 < float(score) < 1.0
            assert label in ("normal", "suspicious")

    def test_selection_recorded_in_model(self, workdir, tmp_path):
        _, cfg_path = workdir
        feats = _pipeline_to_features(workdir)
        cfg_select = tmp_path / "sel.cfg"
        cfg_select.write_text(SMALL_CONFIG + "select.k = 3\n")
        model = tmp_path / "model_sel.txt"
        assert run(["train", "--config", str(cfg_select), "--features", str(feats),
                    "--out", str(model)]) == 0
        gauss_lines = [l for l in model.read_text().splitlines() if l.startswith("gauss")]
        assert len(gauss_lines) == 2 * 3  # two classes, three selected features

    def test_train_single_class_is_exit_2(self, workdir, tmp_path):
        _, cfg = workdir
        feats = _pipeline_to_features(workdir)
        lines = feats.read_text().splitlines()
        only_normal = [lines[0]] + [l for l in lines[1:] if ",normal," in l]
        bad = tmp_path / "one_class.csv"
        bad.write_text("\n".join(only_normal) + "\n")
        assert run(["train", "--config", cfg, "--features", str(bad),
                    "--out", str(tmp_path / "m.txt")]) == 2


class TestEvaluateCommand:
    def test_full_report_and_roc(self, workdir, capsys, tmp_path):
        _, cfg = workdir
        feats = _pipeline_to_features(workdir)
        roc_csv = tmp_path / "roc.csv"
        roc_svg = tmp_path / "roc.svg"
        status = run(["evaluate", "--config", cfg, "--features", str(feats),
                      "--roc-csv", str(roc_csv), "--roc-svg", str(roc_svg)])
        assert status == 0
        report = capsys.readouterr().out
        for key in ("confusion", "sensitivity", "specificity", "auc"):
            assert key in report
        assert roc_csv.read_text().startswith("threshold,fpr,tpr")
        assert roc_svg.read_text().startswith("<svg")

    def test_deterministic_report(self, workdir, capsys):
        _, cfg = workdir
        feats = _pipeline_to_features(workdir)
        capsys.readouterr()  # drop pipeline chatter
        run(["evaluate", "--config", cfg, "--features", str(feats)])
        first = capsys.readouterr().out
        run(["evaluate", "--config", cfg, "--features", str(feats)])
        second = capsys.readouterr().out
        assert first == second

    def test_single_class_is_exit_2(self, workdir, tmp_path):
        _, cfg = workdir
        feats = _pipeline_to_features(workdir)
        lines = feats.read_text().splitlines()
        only_normal = [lines[0]] + [l for l in lines[1:] if ",normal," in l]
        bad = tmp_path / "one_class.csv"
        bad.write_text("\n".join(only_normal) + "\n")
        assert run(["evaluate", "--config", cfg, "--features", str(bad)]) == 2
