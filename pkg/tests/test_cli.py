import json
import subprocess
import sys

import pytest

from mlstp.cli import main
from mlstp.instances import greedy_trap, read_instance, read_optimum, write_instance
from mlstp.graph import build_graph


@pytest.fixture
def trap_file(tmp_path):
    path = tmp_path / "trap.mlst"
    write_instance(greedy_trap(), path)
    return path


@pytest.fixture
def mono_file(tmp_path):
    path = tmp_path / "mono.mlst"
    write_instance(build_graph(4, 2, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]), path)
    return path


def test_gen(tmp_path, capsys):
    out = tmp_path / "inst"
    assert main(["gen", "--n", "20", "--l", "20", "--d", "0.8", "--count", "10", "--out-dir", str(out)]) == 0
    files = sorted(out.glob("*.mlst"))
    assert len(files) == 10
    assert all(read_instance(f).m == 152 for f in files)
    assert "20_0.8_1.mlst" in capsys.readouterr().out
    first = {f.name: f.read_bytes() for f in files}
    manifest = (out / "manifest.txt").read_text()
    main(["gen", "--n", "20", "--l", "20", "--d", "0.8", "--count", "10", "--out-dir", str(out)])
    assert {f.name: f.read_bytes() for f in out.glob("*.mlst")} == first
    assert (out / "manifest.txt").read_text() == manifest


def test_gen_invalid(tmp_path, capsys):
    assert main(["gen", "--n", "3", "--l", "2", "--d", "0.1", "--out-dir", str(tmp_path)]) == 1
    assert "n-1" in capsys.readouterr().err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--algo", "A"])
    assert exc.value.code == 1


@pytest.mark.parametrize("algo", ["mvca", "mvca-rev", "A", "A1", "A2", "A12", "pilot:first=all,rec=greedy"])
def test_solve_monochromatic(mono_file, capsys, algo):
    assert main(["solve", "--instance", str(mono_file), "--algo", algo]) == 0
    assert capsys.readouterr().out.startswith("objective=1 colors=1 feasible=yes")


def test_solve_mvca_infeasible(trap_file, capsys):
    assert main(["solve", "--instance", str(trap_file), "--algo", "mvca"]) == 2
    assert "feasible=no" in capsys.readouterr().out


def test_solve_repeatable(trap_file, capsys):
    outs = []
    for _ in range(2):
        main(["solve", "--instance", str(trap_file), "--algo", "A12", "--seed", "8"])
        outs.append(capsys.readouterr().out.split(" ms=")[0])
    assert outs[0] == outs[1]


def test_solve_errors(tmp_path, trap_file):
    assert main(["solve", "--instance", str(trap_file), "--algo", "B7"]) == 1
    assert main(["solve", "--instance", str(tmp_path / "missing.mlst"), "--algo", "A"]) == 1
    assert main(["solve", "--instance", str(trap_file), "--algo", "pilot:first=x"]) == 1


def test_exact(trap_file, capsys, tmp_path):
    def run(*extra):
        assert main(["exact", "--instance", str(trap_file), *extra]) == 0
        return dict(kv.split("=") for kv in capsys.readouterr().out.split())

    base = run()
    assert base["objective"] == "2" and base["colors"] == "1,2"
    assert run("--no-freq-prune")["objective"] == "2"
    assert int(run("--ub-from", "mvca-rev")["nodes_expanded"]) <= int(run("--ub-from", "none")["nodes_expanded"])
    run("--annotate")
    assert read_optimum(trap_file) == 2


def test_exact_monochromatic(mono_file, capsys):
    assert main(["exact", "--instance", str(mono_file)]) == 0
    out = dict(kv.split("=") for kv in capsys.readouterr().out.split())
    assert out["objective"] == "1" and int(out["nodes_expanded"]) <= 2


def test_bench_and_compare(tmp_path, capsys):
    inst = tmp_path / "inst"
    for d in ("0.8", "0.5"):
        main(["gen", "--n", "20", "--d", d, "--count", "3", "--out-dir", str(inst)])
    capsys.readouterr()
    args = ["bench", "--manifest", str(inst / "manifest.txt"), "--reps", "10", "--with-optimum", "--no-timing"]
    assert main(args + ["--out", str(tmp_path / "o1")]) == 0
    assert main(args + ["--out", str(tmp_path / "o2"), "--jobs", "2"]) == 0
    csv1 = (tmp_path / "o1" / "bench.csv").read_bytes()
    assert csv1 == (tmp_path / "o2" / "bench.csv").read_bytes()
    assert len(csv1.decode().splitlines()) == 1 + 6 * 5
    capsys.readouterr()
    assert main(["compare", "--bench-csv", str(tmp_path / "o1" / "bench.csv"), "--alphas", "0.05,0.01"]) == 0
    text = capsys.readouterr().out
    assert "Friedman" in text and "mean ranks" in text
    report = json.loads((tmp_path / "o1" / "compare.json").read_text())
    assert report["N"] == 6 and report["k"] == 5
    assert list(report["mean_ranks"])[0] == "A*"


def test_bench_pilot_roster(tmp_path):
    inst = tmp_path / "inst"
    main(["gen", "--n", "20", "--d", "0.8", "--count", "2", "--out-dir", str(inst)])
    algos = "A12;pilot:first=frac0.1,rec=greedy;pilot:first=minimizers,rec=all"
    assert main(["bench", "--manifest", str(inst / "manifest.txt"), "--algos", algos, "--reps", "3",
                 "--out", str(tmp_path / "o")]) == 0
    lines = (tmp_path / "o" / "bench.csv").read_text().splitlines()
    assert len(lines) == 7 and "pilot:first=frac0.1" in lines[2]


def test_compare_errors(tmp_path):
    bad = tmp_path / "b.csv"
    bad.write_text("n,d,index,algorithm,mean\n20,0.8,1,A,3\n20,0.8,2,B,3\n")
    assert main(["compare", "--bench-csv", str(bad)]) == 1


def test_module_entry_point(trap_file):
    proc = subprocess.run(
        [sys.executable, "-m", "mlstp", "solve", "--instance", str(trap_file), "--algo", "mvca"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2 and "feasible=no" in proc.stdout
