import subprocess
import sys

import pytest

from gridforge.braids import braid, serialize_braid
from gridforge.cli import main
from gridforge.gridcore import parse_grid, serialize_grid, trivial_diagram
from gridforge.moves import classify_stabilization, destabilizations
from gridforge.paths import elementary_bypass, serialize_theta, theta_from_bypass
from gridforge.simplify import canonical_form, scramble

T2_TEXT = serialize_grid(trivial_diagram())


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text + "\n", encoding="utf-8")
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_invariants_of_t2(capsys, files):
    code, out, _ = run(capsys, "invariants", files("t2.grid", T2_TEXT))
    assert code == 0
    assert out == "tb=-1 tbbar=-1 c=2 writhe=0 cusps=2 ok=true\n"


def test_inline_input(capsys):
    code, out, _ = run(capsys, "validate", "n=2\\nX=1 0\\nO=0 1")
    assert (code, out) == (0, "ok n=2 components=1\n")


def test_domain_error_exit_code(capsys, files):
    code, out, err = run(capsys, "validate", files("bad.grid", "n=2\nX=0 0\nO=1 1"))
    assert code == 1 and out == ""
    assert err.startswith("error: NotAPermutation:")
    assert "Traceback" not in err


def test_usage_errors(capsys, files):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "invariants", files("t2.grid", T2_TEXT), "--bogus")[0] == 2
    assert run(capsys, "scramble", files("t2.grid", T2_TEXT))[0] == 2
    assert run(capsys, "invariants", "/no/such/file")[0] == 2
    assert run(capsys)[0] == 2


def test_moves_and_apply(capsys, files):
    g = files("t2.grid", T2_TEXT)
    code, out, _ = run(capsys, "moves", g)
    lines = out.splitlines()
    assert code == 0 and len(lines) == 4 + 16
    code, out, _ = run(capsys, "apply", g, files("m.txt", "stab 0 1 NE\ncyc L"))
    assert code == 0 and parse_grid(out).n == 3
    code, _, err = run(capsys, "apply", g, files("bad.txt", "destab 0 1"))
    assert code == 1 and "IllegalMove" in err


def test_render(capsys, files):
    code, out, _ = run(capsys, "render", files("t2.grid", T2_TEXT))
    assert code == 0 and "X" in out and "O" in out


def test_simplify_trailer(capsys, files):
    g = files("s.grid", serialize_grid(scramble(trivial_diagram(), 3, 20, 4)))
    code, out, _ = run(capsys, "simplify", g, "--budget", "1000000")
    lines = out.splitlines()
    assert code == 0 and lines[-1].endswith("result=ok")
    steps = files("steps.txt", "\n".join(lines[:-1]))
    code, end, _ = run(capsys, "apply", g, steps)
    assert parse_grid(end) == canonical_form(trivial_diagram()).diagram


def test_simplify_trefoil_is_exhausted(capsys, files):
    code, out, _ = run(capsys, "from-braid", files("t.braid", serialize_braid(braid(2, 1, 1, 1))))
    g = files("trefoil.grid", out.strip())
    code, out, _ = run(capsys, "simplify", g)
    assert code == 0 and out.splitlines()[-1].endswith("result=exhausted")


def test_find_destab_type_filter(capsys, files):
    g = files("s.grid", serialize_grid(scramble(trivial_diagram(), 2, 10, 9)))
    code, out, _ = run(capsys, "find-destab", g, "--type", "II")
    assert code == 0 and out.splitlines()[-1].startswith("nodes=")
    assert run(capsys, "find-destab", g, "--type", "III")[0] == 2


def test_braid_round_trip(capsys, files):
    b = files("b.braid", serialize_braid(braid(3, 1, -2, 1)))
    code, grid_text, _ = run(capsys, "from-braid", b)
    code, out, _ = run(capsys, "to-braid", files("g.grid", grid_text.strip()))
    assert out == "n=3\n1 -2 1\n"


def test_jones(capsys, files):
    code, out, _ = run(capsys, "jones", "--min", files("a.braid", "n=2\n1 1 1"),
                       "--other", files("b.braid", "n=3\n1 1 1 2"))
    assert code == 0
    assert out.strip() == "m=2 n=3 cmin=3 c=4 lhs=1 rhs=1 holds=true p=3 integral=true p_ge_m=true"


def test_bypass_check(capsys, files):
    d = scramble(trivial_diagram(), 3, 6, 2)
    m = next(m for m in destabilizations(d) if classify_stabilization(d, m)[0] == "II")
    alpha, beta = elementary_bypass(d, m)
    th = files("t.theta", serialize_theta(theta_from_bypass(d, alpha, beta)))
    code, out, _ = run(capsys, "bypass-check", th)
    assert code == 0 and out.startswith("candidate=true weight=1 ")
    assert "necessaryOnly=true" in out


def test_scramble_is_reproducible(capsys, files):
    g = files("t2.grid", T2_TEXT)
    first = run(capsys, "scramble", g, "--seed", "5", "--stabs", "3", "--flats", "10")
    second = run(capsys, "scramble", g, "--seed", "5", "--stabs", "3", "--flats", "10")
    assert first == second and parse_grid(first[1]).n == 5


def test_bw_chain(capsys, files):
    code, out, _ = run(capsys, "bw-chain", files("a", "n=2\n1"), files("b", "n=2\n1"), "--sign", "-")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5
    assert [ln.split()[0] for ln in lines].count("stab") == 1


def test_out_option(capsys, files, tmp_path):
    target = tmp_path / "report.txt"
    code, out, _ = run(capsys, "invariants", files("t2.grid", T2_TEXT), "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == "tb=-1 tbbar=-1 c=2 writhe=0 cusps=2 ok=true\n"


def test_console_script_module(files):
    g = files("t2.grid", T2_TEXT)
    r = subprocess.run([sys.executable, "-m", "gridforge.cli", "invariants", g],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and r.stdout.startswith("tb=-1")
