import json

import pytest

from bbcount.cli import main

COMPLETE_2X2 = "0 0 1\n0 1 1\n1 0 1\n1 1 1\n"


@pytest.fixture
def graph_file(tmp_path):
    def write(text, name="g.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_convert_explicit(graph_file, tmp_path, capsys):
    inp = graph_file("a x 1\na y -1\nb x 1\n")
    out = str(tmp_path / "norm.txt")
    code, stdout, _ = run(capsys, ["convert", "--input", inp, "--output", out])
    assert code == 0
    assert "edges=3" in stdout
    lines = (tmp_path / "norm.txt").read_text().splitlines()
    assert lines == ["0 0 1", "0 1 -1", "1 0 1"]


def test_convert_seeded_random_is_reproducible(graph_file, tmp_path, capsys):
    inp = graph_file("".join(f"u{i} v{i % 7}\n" for i in range(60)))
    out1, out2 = str(tmp_path / "a.txt"), str(tmp_path / "b.txt")
    for out in (out1, out2):
        code, _, _ = run(capsys, ["convert", "--input", inp, "--output", out,
                                  "--policy", "random", "--p-pos", "0.7",
                                  "--seed", "42"])
        assert code == 0
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()


def test_convert_rating_strict_boundary(graph_file, tmp_path, capsys):
    inp = graph_file("a x 6\na y 7\n")
    out = str(tmp_path / "norm.txt")
    code, _, _ = run(capsys, ["convert", "--input", inp, "--output", out,
                              "--policy", "rating", "--threshold", "6", "--strict"])
    assert code == 0
    assert (tmp_path / "norm.txt").read_text() == "0 0 -1\n0 1 1\n"


@pytest.mark.parametrize("algo,extra", [
    ("oracle", []),
    ("bb2k", []),
    ("parallel", ["--threads", "2"]),
    ("tiled", ["--tile-size", "1", "--blocks", "2"]),
    ("dynamic", ["--blocks", "2"]),
])
def test_count_complete_2x2_all_engines(graph_file, capsys, algo, extra):
    inp = graph_file(COMPLETE_2X2)
    code, stdout, _ = run(capsys, ["count", "--input", inp, "--algo", algo] + extra)
    assert code == 0
    result = json.loads(stdout)
    assert result["balanced_count"] == 1
    assert result["algo"] == algo
    assert result["k"] == 2
    assert result["graph_stats"]["n_min"] == 2


def test_count_engines_agree_on_random_file(graph_file, capsys):
    import random
    rng = random.Random(8080)
    lines = [f"{u} {v} {rng.choice((1, -1))}"
             for u in range(12) for v in range(12) if rng.random() < 0.4]
    inp = graph_file("\n".join(lines) + "\n")
    counts = set()
    for algo in ("oracle", "bb2k", "parallel", "tiled", "dynamic"):
        code, stdout, _ = run(capsys, ["count", "--input", inp, "--algo", algo])
        assert code == 0
        counts.add(json.loads(stdout)["balanced_count"])
    assert len(counts) == 1


def test_count_oracle_reports_total(graph_file, capsys):
    inp = graph_file(COMPLETE_2X2)
    code, stdout, _ = run(capsys, ["count", "--input", inp, "--algo", "oracle"])
    assert code == 0
    result = json.loads(stdout)
    assert result["total_butterflies"] == 1
    # optional fields are omitted, never null
    assert "schedule" not in result


def test_count_expectation(graph_file, capsys):
    inp = graph_file(COMPLETE_2X2)
    code, _, _ = run(capsys, ["count", "--input", inp, "--algo", "bb2k",
                              "--expect", "1"])
    assert code == 0
    code, _, err = run(capsys, ["count", "--input", inp, "--algo", "bb2k",
                                "--expect", "2"])
    assert code == 3
    assert "expected 2" in err


def test_count_2k_engines(graph_file, capsys):
    inp = graph_file("0 0 1\n0 1 1\n0 2 1\n1 0 1\n1 1 1\n1 2 1\n")
    for algo in ("oracle", "bb2k"):
        code, stdout, _ = run(capsys, ["count", "--input", inp, "--algo", algo,
                                       "--k", "3"])
        assert code == 0
        assert json.loads(stdout)["balanced_count"] == 1


def test_count_dynamic_report_file(graph_file, tmp_path, capsys):
    inp = graph_file(COMPLETE_2X2)
    report_path = str(tmp_path / "schedule.json")
    code, stdout, _ = run(capsys, ["count", "--input", inp, "--algo", "dynamic",
                                   "--blocks", "2", "--report", report_path])
    assert code == 0
    payload = json.loads((tmp_path / "schedule.json").read_text())
    assert sum(payload["regime_histogram"].values()) == 2  # n_min anchors
    assert json.loads(stdout)["schedule"]["per_block_work"] == payload["per_block_work"]


@pytest.mark.parametrize("argv", [
    ["count", "--input", "x", "--algo", "parallel", "--k", "3"],
    ["count", "--input", "x", "--algo", "bb2k", "--k", "1"],
    ["count", "--input", "x", "--algo", "nope"],
    ["count", "--input", "x", "--algo", "bb2k", "--policy", "rating"],
    ["count", "--input", "x", "--algo", "parallel", "--threads", "0"],
    ["count", "--input", "x", "--algo", "tiled", "--tile-size", "0"],
    ["count", "--input", "x", "--algo", "dynamic", "--warp-max", "600"],
])
def test_usage_errors_exit_1(graph_file, capsys, argv):
    if argv[2] == "x":
        argv[2] = graph_file(COMPLETE_2X2)
    with pytest.raises(SystemExit) as err:
        main(argv)
    assert err.value.code == 1


def test_data_errors_exit_2(graph_file, capsys):
    bad = graph_file("a\n", "bad.txt")
    code, _, err = run(capsys, ["count", "--input", bad, "--algo", "bb2k"])
    assert code == 2 and "line 1" in err
    missing_value = graph_file("a b\n", "nv.txt")
    code, _, _ = run(capsys, ["count", "--input", missing_value, "--algo", "bb2k"])
    assert code == 2
    code, _, _ = run(capsys, ["count", "--input", "/nonexistent/file",
                              "--algo", "bb2k"])
    assert code == 2


def test_classify_all_positive(graph_file, capsys):
    inp = graph_file(COMPLETE_2X2)
    code, stdout, _ = run(capsys, ["classify", "--input", inp])
    assert code == 0
    result = json.loads(stdout)
    assert result["coherent_pp_pp"] == 1
    assert result["total"] == 1
    assert sum(result[k] for k in result if k.startswith(("coherent", "incoherent",
                                                          "mixed"))) == 1


def test_classify_incoherent_shape(graph_file, capsys):
    # one U row all positive, the other all negative on two shared targets
    inp = graph_file("0 0 1\n0 1 1\n1 0 -1\n1 1 -1\n")
    code, stdout, _ = run(capsys, ["classify", "--input", inp])
    assert code == 0
    assert json.loads(stdout)["incoherent_pm_pm"] == 1


def test_classify_partition_on_random_file(graph_file, capsys):
    import random
    rng = random.Random(4242)
    lines = [f"{u} {v} {rng.choice((1, -1))}"
             for u in range(10) for v in range(10) if rng.random() < 0.5]
    inp = graph_file("\n".join(lines) + "\n")
    code, stdout, _ = run(capsys, ["classify", "--input", inp])
    assert code == 0
    result = json.loads(stdout)
    classes = [v for k, v in result.items()
               if k.startswith(("coherent", "incoherent", "mixed"))]
    assert sum(classes) == result["total"]


def test_stats_output(graph_file, capsys):
    inp = graph_file(COMPLETE_2X2)
    code, stdout, _ = run(capsys, ["stats", "--input", inp])
    assert code == 0
    result = json.loads(stdout)
    assert result["n_min"] == 2
    assert result["density"] == 1.0
    assert result["d_min_avg_4sf"] == "2"


def test_bench_rows_and_agreement(graph_file, capsys):
    inp = graph_file(COMPLETE_2X2)
    code, stdout, _ = run(capsys, ["bench", "--input", inp,
                                   "--algos", "bb2k,parallel",
                                   "--threads-list", "1,2", "--repeat", "2"])
    assert code == 0
    lines = stdout.strip().splitlines()
    assert lines[0] == "algo,workers,wall_seconds,count"
    assert len(lines) == 1 + 2 * 2  # |algos| * |worker settings|
    counts = {line.split(",")[3] for line in lines[1:]}
    assert counts == {"1"}
