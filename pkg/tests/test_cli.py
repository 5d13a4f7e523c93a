import io

import pytest

from compactsearch.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_enumerate_list_matches_listing():
    code, text = run("enumerate", "--max-comp", "7", "--list")
    assert code == 0
    lines = text.splitlines()
    assert lines[1] == "q=1 count=2 [{A}, {B}]"
    assert lines[3] == "q=3 count=0 []"
    assert lines[7] == "q=7 count=6 [{G}, {H}, {I}, {J}, {K}, {L}]"


def test_enumerate_uniform_counts():
    code, text = run("enumerate", "--alphabet", "uniform12")
    assert code == 0
    assert "q=6 count=924" in text
    assert "total=4095" in text


def test_enumerate_file(tmp_path):
    f = tmp_path / "a.txt"
    f.write_text("x 1\ny 2\n# z\nz 3\n", encoding="utf-8")
    code, text = run("enumerate", "--alphabet", str(f))
    assert code == 0
    assert "q=3 count=2" in text


def test_enumerate_missing_file(capsys):
    code, _ = run("enumerate", "--alphabet", "/nonexistent/alpha.txt")
    assert code == 2
    assert "not found" in capsys.readouterr().err


def test_enumerate_bad_file(tmp_path, capsys):
    f = tmp_path / "a.txt"
    f.write_text("x 1\nx 2\n")
    assert run("enumerate", "--alphabet", str(f))[0] == 2
    assert "line 2" in capsys.readouterr().err


def test_usage_errors(capsys):
    assert run()[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("enumerate", "--max-comp", "0")[0] == 2
    assert run("discover", "--waves", "2")[0] == 2


def test_discover_expect_maxwell():
    code, text = run("discover", "--expect-maxwell")
    assert code == 0
    assert "MAXWELL OK" in text
    assert 'q=11 theory={F,G} eq="dB/dt + curl E = 0"' in text


def test_discover_fd():
    assert run("discover", "--mode", "fd", "--expect-maxwell")[0] == 0


def test_discover_mismatch_exit_1():
    code, text = run("discover", "--monochromatic", "--expect-maxwell")
    assert code == 1
    assert "MISMATCH unexpected {A,I}@8" in text


def test_discover_no_prune_same_set():
    # full-support rejection already removes every superset on vacuum data
    assert run("discover", "--no-prune", "--expect-maxwell")[0] == 0
    assert run("discover", "--no-prune", "--monochromatic", "--expect-maxwell")[0] == 1


@pytest.mark.parametrize("seed", range(10))
def test_discover_seed_sweep(seed):
    assert run("discover", "--seed", str(seed), "--expect-maxwell")[0] == 0


def test_oracle_paper():
    code, text = run("oracle")
    assert code == 0 and text.rstrip().endswith("EQUIVALENT")


def test_oracle_random():
    code, text = run("oracle", "--random", "20", "--symbols", "10", "--max-weight", "5", "--seed", "1")
    assert code == 0
    assert text.count(": EQUIVALENT") == 20


def test_bench_writes_files(tmp_path):
    csv_path, plot_path = tmp_path / "b.csv", tmp_path / "p.py"
    code, text = run("bench", "--repetitions", "1", "--csv", str(csv_path), "--plot", str(plot_path))
    assert code == 0
    assert len(csv_path.read_text().splitlines()) == 27
    assert "elapsed_seconds" in plot_path.read_text()
    assert "weighted_unions=1327" in text


def test_bench_stdout():
    code, text = run("bench", "--repetitions", "1")
    assert code == 0 and text.startswith("alphabet,q,")


def test_bench_compare_backends():
    code, text = run("bench", "--compare-backends", "--repetitions", "1")
    assert code == 0 and "python" in text
