import io
import json

import pytest

from krqt import cache
from krqt.cli import main, tsystem_grid
from krqt.tableaux import KrLabel, q_character


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path))
    return tmp_path


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def lines(text):
    return [json.loads(x) for x in text.splitlines()]


@pytest.mark.parametrize(
    "args,count",
    [(("3", "3", "1", "0"), 4), (("1", "1", "2", "0"), 3), (("1", "1", "0", "0"), 1)],
)
def test_char_counts(args, count):
    r, i, k, j = args
    code, out = run("char", "--rank", r, "--i", i, "--k", k, "--j", j)
    assert code == 0
    assert lines(out)[0]["count"] == count


def test_char_pretty():
    code, out = run("char", "--rank", "3", "--i", "3", "--k", "1", "--j", "0", "--format", "pretty")
    assert code == 0
    assert set(out.split("\n")[:-1]) == {"Y[3,0]", "Y[2,1] Y[3,2]^-1", "Y[1,2] Y[2,3]^-1", "Y[1,4]^-1"}
    code, out = run("char", "--rank", "1", "--i", "1", "--k", "0", "--j", "0", "--format", "pretty")
    assert out.strip() == "1"


def test_char_usage_errors():
    assert run("char", "--rank", "1")[0] == 2
    assert run("char", "--rank", "1", "--i", "1", "--k", "1", "--j", "1")[0] == 2
    assert run("char", "--rank", "2", "--i", "3", "--k", "1", "--j", "0")[0] == 2
    assert run("bogus")[0] == 2


def test_char_is_deterministic_and_cached(isolated_cache):
    a = run("char", "--rank", "2", "--i", "1", "--k", "2", "--j", "0")[1]
    assert cache.entry_path(KrLabel(2, 1, 0, 2)).exists()
    b = run("char", "--rank", "2", "--i", "1", "--k", "2", "--j", "0")[1]
    c = run("char", "--rank", "2", "--i", "1", "--k", "2", "--j", "0", "--no-cache")[1]
    assert a == b == c


def test_verify_counterexample():
    code, out = run("verify", "counterexample")
    rep = lines(out)[0]
    assert code == 0 and rep["pass"]
    assert (rep["witness"]["forward_constant_exponent"], rep["witness"]["reverse_constant_exponent"]) == (-1, 1)


def test_verify_compat():
    code, out = run("verify", "compat", "--rank", "1", "--kmax", "6")
    rep = lines(out)[0]
    assert code == 0 and rep["witness"]["lambda_b_diagonal"] == [2]
    assert run("verify", "compat", "--rank", "1", "--kmax", "1")[0] == 2


def test_verify_commute_alpha_is_two_epsilon():
    code, out = run("verify", "commute", "--rank", "2", "--kmax", "3", "--jobs", "1")
    reports = lines(out)
    assert code == 0
    assert reports[-1] == {"failed": 0, "summary": "commute", "total": 15}
    assert all(r["witness"]["alpha"] == r["witness"]["lambda"] for r in reports[:-1])


def test_parallel_sweep_is_ordered_and_identical():
    serial = run("verify", "tsystem", "--rank", "2", "--kmax", "1", "--jwindow", "2", "--jobs", "1")
    parallel = run("verify", "tsystem", "--rank", "2", "--kmax", "1", "--jwindow", "2", "--jobs", "2")
    assert serial == parallel
    assert serial[0] == 0


def test_timing_is_opt_in():
    out = run("verify", "counterexample")[1]
    assert "wall_time" not in out
    out = run("verify", "counterexample", "--timing")[1]
    assert "wall_time" in lines(out)[0]


def test_verify_pairing_policies():
    code, _ = run("verify", "thm31", "--rank", "2", "--kmax", "2")
    assert code == 0
    code, out = run("verify", "thm31", "--rank", "2", "--kmax", "2", "--policy", "minimal")
    assert code == 1
    assert lines(out)[-1]["failed"] == 2


def test_verify_mutation_small():
    code, out = run("verify", "mutation", "--rank", "1", "--kmax", "1", "--jwindow", "2")
    assert code == 0
    assert {r["params"]["j"] for r in lines(out)[:-1]} == {-2, 0, 2}


def test_tables():
    code, out = run("tables", "--rank", "1", "--n", "2")
    data = lines(out)[0]
    assert code == 0
    assert data["B"] == [[0, 1], [-1, 0]] and data["epsilon"] == [[0, -1], [1, 0]]
    assert data["B_minus_closed_form"] == [[0, 0], [0, 0]]
    assert run("tables", "--rank", "2", "--n", "3")[0] == 2
    assert run("tables", "--rank", "1", "--n", "1")[0] == 2


def test_tsystem_grid_parity():
    grid = list(tsystem_grid(3, 2, 4))
    assert all((1 - i - j) % 2 == 0 for i, _, j in grid)
    assert len(grid) == 28
    assert sum(len(list(tsystem_grid(r, 2, 4))) for r in (1, 2, 3)) == 56


def test_cache_roundtrip_and_corruption(isolated_cache):
    label = KrLabel(3, 2, -1, 2)
    chi = cache.cached_character(label)
    assert chi == q_character(label)
    assert cache.verify_entry(label)
    path = cache.entry_path(label)
    path.write_text("{not json")
    assert cache.load(label) is None
    assert cache.cached_character(label) == q_character(label)
    assert cache.verify_entry(label)


def test_cache_schema_directory(tmp_path, monkeypatch):
    label = KrLabel(1, 1, 0, 1)
    first = cache.entry_path(label)
    monkeypatch.setattr(cache, "SCHEMA_VERSION", "krqt-character/next")
    assert cache.entry_path(label).parent != first.parent
    assert first.parent.parent == tmp_path
