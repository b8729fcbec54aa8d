import json

import pytest

from braidspectra.explab import cli, read_csv, read_words, write_csv
from braidspectra.explab.suites import SuiteResult, run_on_words
from braidspectra.braid import BraidWord
from braidspectra.sampling import SamplerMode, WordSampler, make_rng, sample_knot, sample_word


def test_csv_round_trip(tmp_path):
    p = write_csv(tmp_path / "x" / "t.csv", ["a", "b", "c"], [(1, 0.1, True), (2, -3e-17, "z")], {"seed": 4})
    meta, header, rows = read_csv(p)
    assert meta["seed"] == 4 and meta["version"].startswith("braidspectra ")
    assert header == ["a", "b", "c"]
    assert rows[0] == {"a": "1", "b": "0.1", "c": "1"}
    assert float(rows[1]["b"]) == -3e-17


def test_read_csv_rejects_missing_meta(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError):
        read_csv(p)


def test_read_words_comments(tmp_path):
    p = tmp_path / "w.txt"
    p.write_text("# corpus\nabab  # trefoil-like\n\n  aabB\n#only a comment\n")
    assert read_words(p) == ["abab", "aabB"]


def test_sampling_streams():
    a = make_rng(3, 7).integers(0, 1 << 30, 5)
    b = make_rng(3, 7).integers(0, 1 << 30, 5)
    c = make_rng(3, 8).integers(0, 1 << 30, 5)
    assert (a == b).all() and (a != c).any()
    w = sample_word(WordSampler(SamplerMode.UNIFORM_FOUR, length=50), make_rng(1))
    assert len(w) == 50 and set(w.letters) <= {1, 2, -1, -2}
    k = sample_knot(WordSampler(length=40), make_rng(2))
    assert k.closure_components() == 1 and k.is_positive() and not k.is_generator_power()
    with pytest.raises(ValueError):
        sample_knot(WordSampler(length=41), make_rng(2))
    k = sample_knot(WordSampler(SamplerMode.FIXED_LENGTH_DISTRIBUTION, mean=30, std=5), make_rng(5))
    assert k.closure_components() == 1


def test_run_on_words():
    res = run_on_words([BraidWord.parse("abab"), BraidWord.parse("aBAb"), BraidWord.parse("aaaa")])
    assert [r.name for r in res] == ["det_identity", "possign", "root_free_T"]
    assert all(r.ok for r in res)
    assert res[2].checked == 1


def run(tmp_path, *argv):
    out = tmp_path / "out"
    return cli.main([*argv, "--out", str(out)]), out


def test_root_cloud(tmp_path):
    code, out = run(tmp_path, "root-cloud", "--count", "4", "--length-mean", "40", "--length-std", "8")
    assert code == 0
    for f in ("roots.csv", "words.csv", "circle_hist.csv", "arc_hist.csv", "root_cloud.png", "root_cloud_summary.json"):
        assert (out / f).exists(), f
    meta, _, rows = read_csv(out / "words.csv")
    assert meta["command"] == "root-cloud" and len(rows) == 4
    summary = json.loads((out / "root_cloud_summary.json").read_text())
    assert 0 < summary["mean_circle_fraction"] <= 1


def test_root_cloud_from_words(tmp_path):
    wf = tmp_path / "w.txt"
    wf.write_text("ababbbbb\nabab\n")
    code, out = run(tmp_path, "root-cloud", "--words", str(wf), "--no-plot")
    assert code == 0 and not (out / "root_cloud.png").exists()
    _, _, rows = read_csv(out / "words.csv")
    assert [r["degree"] for r in rows] == ["6", "2"]
    assert float(rows[0]["circle_fraction"]) == 1.0


def test_determinism_and_threads(tmp_path):
    args = ("drift", "--n-steps", "200", "--samples", "300", "--seed", "9", "--no-plot")
    c1, o1 = run(tmp_path / "a", *args)
    c2, o2 = run(tmp_path / "b", *args, "--threads", "3")
    assert c1 == c2 == 0
    assert (o1 / "drift.csv").read_text() == (o2 / "drift.csv").read_text()
    c3, o3 = run(tmp_path / "c", *args[:5], "--seed", "10", "--no-plot")
    assert (o3 / "drift.csv").read_text() != (o1 / "drift.csv").read_text()


@pytest.mark.parametrize(
    "argv, files",
    [
        (("drift", "--n-steps", "100", "--samples", "100"), ("drift.csv", "drift.png", "drift_summary.json")),
        (("hitting", "--n-steps", "200", "--samples", "200"), ("hitting.csv", "hitting.png")),
        (("clt", "--lengths", "50,100", "--samples", "100"), ("clt.csv", "clt_hist.csv", "clt.png")),
        (
            ("lyapunov-grid", "--grid=-1.5,1.5,-1.5,1.5,12,12", "--walks", "30", "--walk-length", "30"),
            ("lyapunov.csv", "lyapunov_contour.csv", "lyapunov_chi.png", "lyapunov_density.png"),
        ),
        (("rh-scan", "--count", "5", "--max-length", "20"), ("rh.csv", "rh_summary.json")),
    ],
)
def test_commands_write_outputs(tmp_path, argv, files):
    code, out = run(tmp_path, *argv)
    assert code == 0
    for f in files:
        assert (out / f).exists(), f


def test_lyapunov_grid_custom_measure(tmp_path):
    code, out = run(tmp_path, "lyapunov-grid", "--grid=-1,1,-1,1,8,8", "--walks", "10",
                    "--walk-length", "10", "--mu", "a:1/4,b:1/4,ab:1/2", "--no-plot")
    assert code == 0
    meta, header, rows = read_csv(out / "lyapunov.csv")
    assert header == ["x", "y", "lambda_hat", "stderr", "chi", "density"] and len(rows) == 64
    assert meta["params"]["mu"] == [["a", "1/4"], ["b", "1/4"], ["ab", "1/2"]]


def test_verify_words(tmp_path):
    wf = tmp_path / "w.txt"
    wf.write_text("abab\naBAbab\n")
    code, out = run(tmp_path, "verify", "--words", str(wf))
    assert code == 0
    _, _, rows = read_csv(out / "verify.csv")
    assert all(r["violations"] == "0" for r in rows)


def test_verify_reports_violations(tmp_path, monkeypatch):
    bad = SuiteResult("det_identity", 1, ["abab"])
    monkeypatch.setattr(cli, "run_on_words", lambda words: [bad])
    wf = tmp_path / "w.txt"
    wf.write_text("abab\n")
    code, out = run(tmp_path, "verify", "--words", str(wf))
    assert code == 1
    assert (out / "violations.txt").read_text() == "det_identity\tabab\n"


@pytest.mark.parametrize(
    "argv",
    [
        ("drift", "--n-steps", "0"),
        ("clt", "--lengths", "10,x"),
        ("lyapunov-grid", "--grid=1,2,3"),
        ("lyapunov-grid", "--grid=-1,1,-1,1,8,8", "--mu", "a:1/2,b:1/3"),
        ("drift", "--threads", "0"),
    ],
)
def test_bad_input_exit_code(tmp_path, argv):
    code, _ = run(tmp_path, *argv)
    assert code == 2


def test_bad_word_file(tmp_path):
    wf = tmp_path / "w.txt"
    wf.write_text("abxq\n")
    code, _ = run(tmp_path, "verify", "--words", str(wf))
    assert code == 2
