import json

import pytest

from digitop.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path, capsys):
    def gen(name, *args):
        p = tmp_path / name
        assert main(["image", "gen", *args, "-o", str(p)]) == 0
        capsys.readouterr()
        return str(p)

    def write(name, text):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)

    return gen, write


def test_image_gen_stdout_is_digimg(capsys):
    code, out, _ = run(capsys, "image", "gen", "rect", "1", "1", "--adj", "c1")
    assert code == 0
    assert out == "digimg 1\ndim 2\nadjacency c1\npoint 0 0\npoint 0 1\npoint 1 0\npoint 1 1\n"


def test_image_validate(capsys, files):
    gen, _ = files
    f = gen("sq.digimg", "rect", "2", "2", "--adj", "c2")
    code, out, _ = run(capsys, "image", "validate", f)
    assert code == 0
    assert out == "valid=true dim=2 points=9 adjacency=c2 edges=20 connected=true\n"


def test_maps_enumerate_count(capsys, files):
    gen, _ = files
    f = gen("i01.digimg", "interval", "0", "1")
    code, out, _ = run(capsys, "maps", "enumerate", f, "--continuous", "--count-only")
    assert code == 0 and out.startswith("count=4 ") and "status=COMPLETE" in out
    code, out, _ = run(capsys, "maps", "enumerate", gen("i02.digimg", "interval", "0", "2"),
                       "--continuous", "--count-only")
    assert out.startswith("count=17 ")


def test_maps_enumerate_lists_maps(capsys, files):
    gen, _ = files
    code, out, _ = run(capsys, "maps", "enumerate", gen("i.digimg", "interval", "0", "1"), "--continuous")
    lines = out.splitlines()
    assert len(lines) == 5 and lines[0].startswith("map (0)->")
    code, out, _ = run(capsys, "maps", "enumerate", gen("j.digimg", "interval", "0", "1"), "--continuous", "--onto")
    assert "count=2 " in out


def test_maps_budget_exit(capsys, files):
    gen, _ = files
    code, out, _ = run(capsys, "maps", "enumerate", gen("s.digimg", "rect", "2", "2"), "--continuous",
                       "--count-only", "--budget", "10")
    assert code == 3 and "status=BUDGET_EXCEEDED" in out


def test_freezing_verify_minimal(capsys, files):
    gen, write = files
    img = gen("sq22.digimg", "rect", "2", "2", "--adj", "c2")
    bd = write("bd.pts", "".join(f"point {x} {y}\n" for x in range(3) for y in range(3) if (x, y) != (1, 1)))
    code, out, _ = run(capsys, "freezing", "verify", img, "--set", bd, "--minimal")
    assert code == 0 and out.startswith("verdict=FREEZING minimal=true nodes=")
    assert "ms=" not in out


def test_freezing_verify_witness(capsys, files, tmp_path):
    gen, write = files
    img = gen("i.digimg", "interval", "0", "2")
    a = write("a.pts", "point 0\n")
    code, out, _ = run(capsys, "freezing", "verify", img, "--set", a)
    assert code == 1
    assert out.splitlines()[1] == "witness=(0)->(0) (1)->(0) (2)->(0)"
    w = tmp_path / "w.digmap"
    code, out, _ = run(capsys, "freezing", "verify", img, "--set", a, "--witness-out", str(w))
    assert code == 1 and f"witness={w}" in out and w.read_text().startswith("digimap 1")
    code, out, _ = run(capsys, "freezing", "verify", img, "--set", write("e.pts", "point 0\npoint 2\n"),
                       "--timing")
    assert code == 0 and " ms=" in out


def test_freezing_not_minimal_exit(capsys, files):
    gen, write = files
    img = gen("i.digimg", "interval", "0", "2")
    code, out, _ = run(capsys, "freezing", "verify", img, "--set", write("a.pts", "point 0\npoint 1\npoint 2\n"),
                       "--minimal")
    assert code == 1 and "minimal=false redundant=(1)" in out


def test_freezing_search(capsys, files):
    gen, _ = files
    code, out, _ = run(capsys, "freezing", "search", gen("i.digimg", "interval", "0", "2"), "--max-size", "3")
    assert code == 0 and out.splitlines()[0] == "set (0) (2)" and "found=1 complete=true" in out


def test_classify(capsys, files):
    gen, write = files
    img = gen("i.digimg", "interval", "0", "2")
    m = write("f.digmap", "digimap 1\ndim 1\nmap 0 -> 0\nmap 1 -> 0\nmap 2 -> 1\n")
    code, out, _ = run(capsys, "classify", img, m, "--metric", "lp:1", "--classes", "contraction,quasi")
    assert code == 1
    assert out.splitlines() == ["class=contraction satisfied=false qstar=1 witness=(1),(2)",
                                "class=quasi satisfied=true qstar=1/2 witness=(0),(2)"]
    code, out, err = run(capsys, "classify", img, m, "--classes", "banach")
    assert code == 2 and "unknown class" in err


def test_compat(capsys, files):
    gen, write = files
    img = gen("i.digimg", "interval", "0", "2")
    s = write("s.digmap", "digimap 1\ndim 1\nmap 0 -> 1\nmap 1 -> 2\nmap 2 -> 2\n")
    t = write("t.digmap", "digimap 1\ndim 1\nmap 0 -> 1\nmap 1 -> 0\nmap 2 -> 2\n")
    code, out, _ = run(capsys, "compat", img, s, t, "--metric", "lp:1")
    assert code == 1
    assert out == ("wc=false compat=false typeA=false typeP=false owc=true coincidence=0;2\n"
                   "failing_witness=(0) distance=2\n")
    code, out, _ = run(capsys, "compat", img, s, s)
    assert code == 0


def test_audit_list_and_run(capsys):
    code, out, _ = run(capsys, "audit", "list")
    assert code == 0 and len(out.splitlines()) >= 20 and out.startswith("ALMU-2.4 verdict=DUPLICATE")
    code, out, _ = run(capsys, "audit", "run", "SUG-3.1")
    assert code == 0 and out.startswith("id=SUG-3.1 verdict=REFUTED status=CONFIRMED")
    code, out, _ = run(capsys, "audit", "run", "SUG-3.1", "--json")
    assert json.loads(out)["status"] == "CONFIRMED"
    code, out, _ = run(capsys, "audit", "run", "GH-3.2")
    assert code == 0 and "SKIPPED_DOC_ONLY" in out


def test_audit_usage_errors(capsys):
    assert run(capsys, "audit", "run")[0] == 2
    assert run(capsys, "audit", "run", "SUG-3.1", "--all")[0] == 2
    code, _, err = run(capsys, "audit", "run", "BOGUS-9")
    assert code == 2 and "unknown assertion" in err


def test_audit_budget_exit(capsys):
    code, out, _ = run(capsys, "audit", "run", "GH-C3.1", "--budget", "5")
    assert code in (1, 3) and "status=FAILED" in out


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["image"], ["maps", "enumerate"],
                                  ["image", "gen", "rect", "2", "--adj", "x2"], ["maps", "enumerate", "x", "--budget", "0"]])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_help_exits_0(capsys):
    assert run(capsys, "--help")[0] == 0


def test_malformed_file_names_line(capsys, files):
    _, write = files
    bad = write("bad.digimg", "digimg 1\ndim 1\nadjacency c1\npoint 0\npoint zz\n")
    code, _, err = run(capsys, "image", "validate", bad)
    assert code == 2 and "bad.digimg:5:" in err
    assert run(capsys, "image", "validate", "/nonexistent/x.digimg")[0] == 2


def test_env_budget(capsys, files, monkeypatch):
    gen, _ = files
    img = gen("s.digimg", "rect", "2", "2")
    monkeypatch.setenv("DIGITOP_BUDGET", "10")
    assert run(capsys, "maps", "enumerate", img, "--continuous", "--count-only")[0] == 3
    monkeypatch.setenv("DIGITOP_BUDGET", "lots")
    assert run(capsys, "maps", "enumerate", img, "--continuous", "--count-only")[0] == 2


def test_determinism(capsys, files):
    gen, write = files
    img = gen("r.digimg", "rect", "2", "1", "--adj", "c2")
    a = write("a.pts", "point 0 0\n")
    outs = {run(capsys, "freezing", "verify", img, "--set", a)[1] for _ in range(3)}
    outs2 = {run(capsys, "maps", "enumerate", img, "--continuous")[1] for _ in range(2)}
    assert len(outs) == 1 and len(outs2) == 1
    serial = run(capsys, "maps", "enumerate", img, "--continuous", "--count-only")[1]
    parallel = run(capsys, "maps", "enumerate", img, "--continuous", "--count-only", "--jobs", "2")[1]
    assert serial == parallel
