import io
import subprocess
import sys

from decpi.batch import ip_all
from decpi.cli import main
from decpi.families import chain, gadget, path_cnf


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_check(capsys, data, tmp_path):
    assert run(capsys, "check", data / "fig1.dnnf") == (0, "valid reduced dec-dnnf, 5 vars\n", "")
    bad = tmp_path / "bad.dnnf"
    bad.write_text("dec-dnnf 1 0\nQ\n")
    assert run(capsys, "check", bad)[0] == 1
    shared = tmp_path / "shared.dnnf"
    shared.write_text("dec-dnnf 2 1\nvars x\nL x\nA 0 0\n")
    code, _, err = run(capsys, "check", shared)
    assert code == 2 and "decomposability" in err
    assert run(capsys, "check", tmp_path / "missing.dnnf")[0] == 1


def test_pi_all_is_sorted_and_stable(capsys, data):
    code, out, _ = run(capsys, "pi", data / "fig1.dnnf", "--all", "--verify")
    assert code == 0
    lines = out.splitlines()
    assert lines == sorted(lines) and len(lines) == 8
    assert run(capsys, "pi", data / "fig1.dnnf")[1] == out


def test_pi_incremental_limits(capsys, data):
    assert run(capsys, "pi", data / "fig1.dnnf", "--limit", 0, "--mode", "incremental") == (0, "", "")
    code, out, _ = run(capsys, "pi", data / "v3.dnnf", "--limit", 2, "--mode", "incremental", "--verify")
    assert (code, out) == (0, "-s\np\n")


def test_pi_from_stdin(capsys, data, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO((data / "v3.dnnf").read_text()))
    assert run(capsys, "pi", "-")[1] == "-s\np\n"


def test_pi_c2d_input(capsys, data):
    assert run(capsys, "pi", "--format", "c2d", data / "v3.nnf")[1] == "-2\n1\n"


def test_sr(capsys, data):
    code, out, _ = run(capsys, "sr", data / "fig1_dt.dnnf", "--instance", "h=1,b=0,p=1,s=1,e=1", "--all")
    assert code == 0
    assert {"e h p", "e h s"} <= set(out.splitlines())
    code, one, _ = run(capsys, "sr", data / "fig1_dt.dnnf", "--instance", "h=1,b=0,p=1,s=1,e=1", "--one")
    assert code == 0 and one.strip() in out.splitlines()
    assert run(capsys, "sr", data / "fig1.dnnf", "--instance", "h=1")[0] == 1
    code, _, err = run(capsys, "sr", data / "fig1.dnnf", "--instance", "h=1,b=0,p=1,s=1,e=1")
    assert code == 3 and "negation" in err


def test_abduce(capsys, data):
    assert run(capsys, "abduce", data / "fig1.dnnf", "--hyp", "h,b,p,s", "--manifest", "e") == (0, "-h p\n", "")
    assert run(capsys, "abduce", data / "fig1.dnnf", "--hyp", "h,b,p,s", "--manifest", "e", "--cap", 2)[0] == 3


def test_transversals(capsys, data):
    assert run(capsys, "transversals", data / "path.hg") == (0, "2\n1 3\n", "")


def test_reduce_cnf(capsys, data):
    code, out, _ = run(capsys, "reduce-cnf", data / "small.cnf")
    assert code == 0 and out.startswith("dec-dnnf ")
    assert run(capsys, "reduce-cnf", data / "small.cnf", "--solve")[1] == "implicant -1 2 -3\n"


def test_count(capsys, tmp_path, data):
    f = tmp_path / "one.dnnf"
    f.write_text("dec-dnnf 1 3\nvars x y z\nT\n")
    assert run(capsys, "count", f) == (0, "8\n", "")
    assert run(capsys, "count", data / "fig1.dnnf")[1] == "12\n"


def test_oracle(capsys, data):
    assert run(capsys, "oracle", data / "fig1.dnnf")[1] == run(capsys, "pi", data / "fig1.dnnf")[1]
    code, out, _ = run(capsys, "--seed", 5, "oracle", "--random", 6)
    assert code == 0 and out == run(capsys, "--seed", 5, "oracle", "--random", 6)[1]


def metrics(out):
    return dict(line.split("=", 1) for line in out.splitlines())


def test_bench(capsys):
    m = metrics(run(capsys, "bench", "--family", "gadget", "--n", 4, "--k", 1000000)[1])
    assert m["items"] == "16"
    assert {"first_s", "median_s", "max_s"} <= set(m)
    m = metrics(run(capsys, "bench", "--k", 0)[1])
    assert m == {"family": "gadget", "n": "20", "k": "0", "items": "0"}
    m = metrics(run(capsys, "bench", "--family", "chain", "--n", 5, "--k", 10)[1])
    assert m["items"] == "10"


def test_families():
    assert len(ip_all(gadget(5))) == 32
    assert path_cnf(3).clauses == ((1, 2), (2, 3))
    assert chain(4).is_decision_diagram


def test_module_entry_point(data):
    proc = subprocess.run([sys.executable, "-m", "decpi", "check", str(data / "v3.dnnf")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "valid reduced dec-dnnf, 2 vars\n"
