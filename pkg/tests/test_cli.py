"""Command line behaviour: exit codes, CSV/JSON shapes, determinism
across thread counts, cache environment variable, plot emission."""

import json

import pytest

from quaddiv import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ----- rho -----

def test_rho_sum(capsys):
    code, out, _ = run(capsys, "rho", "--delta", "1", "--limit", "10")
    assert code == 0
    assert out == "delta,limit,sum\n1,10,20\n"


def test_rho_per_term(capsys):
    code, out, _ = run(capsys, "rho", "--delta", "1", "--limit", "10", "--per-term")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "lambda,rho"
    assert len(lines) == 11
    assert lines[1] == "1,1"
    assert lines[-1] == "10,2"


def test_rho_from_pair(capsys):
    code, out, _ = run(capsys, "rho", "--b", "-2", "--c", "2", "--limit", "10")
    assert code == 0
    assert out.splitlines()[1] == "4,10,18"


def test_rho_bad_delta(capsys):
    code, _, err = run(capsys, "rho", "--delta", "2", "--limit", "10")
    assert code == 2
    assert "delta" in err


def test_rho_needs_a_discriminant(capsys):
    code, _, _ = run(capsys, "rho", "--limit", "10")
    assert code == 2
    code, _, err = run(capsys, "rho", "--delta", "1", "--b", "-1", "--c", "1",
                       "--limit", "5")
    assert code == 2
    assert "mutually exclusive" in err


# ----- tausum -----

def test_tausum_values(capsys):
    code, out, _ = run(capsys, "tausum", "--b", "-1", "--c", "1", "--limit", "5")
    assert code == 0
    assert out == ("b,c,limit,sum_factorization,sum_hyperbola\n"
                   "-1,1,5,18,18\n")
    code, out, _ = run(capsys, "tausum", "--b", "1", "--c", "3", "--limit", "6")
    assert code == 0
    assert out.splitlines()[1] == "1,3,6,10,10"


def test_tausum_parity_rejected(capsys):
    code, _, err = run(capsys, "tausum", "--b", "0", "--c", "1", "--limit", "9")
    assert code == 2
    assert err


def test_tausum_identical_across_threads(capsys):
    outputs = set()
    for k in ("1", "2", "3", "8"):
        code, out, _ = run(capsys, "tausum", "--b", "0", "--c", "6",
                           "--limit", "2000", "--threads", k)
        assert code == 0
        outputs.add(out)
    assert len(outputs) == 1


def test_tausum_uses_cache_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("QUADDIV_SPF_CACHE", str(tmp_path))
    code, _, _ = run(capsys, "tausum", "--b", "-1", "--c", "1", "--limit", "50")
    assert code == 0
    cached = list(tmp_path.glob("spf-*.bin"))
    assert cached
    # second run must reuse the file rather than rewrite it
    stamp = cached[0].stat().st_mtime_ns
    code, _, _ = run(capsys, "tausum", "--b", "-1", "--c", "1", "--limit", "50")
    assert code == 0
    assert cached[0].stat().st_mtime_ns == stamp


# ----- bound -----

def test_bound_json(capsys):
    code, out, _ = run(capsys, "bound", "--b", "-1", "--c", "1",
                       "--limit", "100", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    for key in ("bound", "exact", "dominates", "X", "C_omega"):
        assert key in doc
    assert doc["dominates"] is True
    assert doc["exact"] == 1758
    assert doc["bound"] > doc["exact"]
    assert doc["corollary_bound"] > doc["exact"]


def test_bound_hypothesis_exit(capsys):
    code, out, err = run(capsys, "bound", "--b", "0", "--c", "18", "--limit", "100")
    assert code == 3
    assert "condition sigma_{-1}(Omega) <= 4/3 fails" in err
    assert out == ""


def test_bound_empty_range(capsys):
    code, out, _ = run(capsys, "bound", "--b", "-1", "--c", "1", "--limit", "1")
    assert code == 0
    header, row = out.splitlines()
    assert header.startswith("b,c,N,")
    cells = dict(zip(header.split(","), row.split(",")))
    assert cells["exact"] == "0"
    assert cells["dominates"] == "true"


def test_bound_plot_written(capsys, tmp_path):
    target = tmp_path / "bounds.png"
    code, out, err = run(capsys, "bound", "--b", "-1", "--c", "1",
                         "--limit", "500", "--plot", str(target))
    assert code == 0
    assert target.exists() and target.stat().st_size > 0
    assert str(target) in err
    assert "plot" not in out  # stdout stays pure CSV


# ----- scan -----

def test_scan_linear_rows_and_fit(capsys):
    code, out, _ = run(capsys, "scan", "--b", "-1", "--c", "1",
                       "--from", "10", "--to", "100",
                       "--grid", "linear", "--step", "10", "--fit")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "N,S,ratio"
    assert len(lines) == 12
    assert lines[1].startswith("10,54,")
    assert lines[10].startswith("100,1758,")
    assert lines[11].startswith("a=")


def test_scan_geometric(capsys):
    code, out, _ = run(capsys, "scan", "--b", "-1", "--c", "1",
                       "--from", "1024", "--to", "4096")
    assert code == 0
    lines = out.splitlines()
    assert [row.split(",")[0] for row in lines[1:]] == ["1024", "2048", "4096"]


def test_scan_bad_ranges(capsys):
    code, _, _ = run(capsys, "scan", "--b", "-1", "--c", "1",
                     "--from", "100", "--to", "10", "--grid", "linear", "--step", "10")
    assert code == 2
    code, _, err = run(capsys, "scan", "--b", "-1", "--c", "1",
                       "--from", "10", "--to", "100", "--grid", "linear")
    assert code == 2
    assert "--step" in err


def test_scan_plot_written(capsys, tmp_path):
    target = tmp_path / "scan.png"
    code, _, _ = run(capsys, "scan", "--b", "0", "--c", "6",
                     "--from", "512", "--to", "2048", "--fit",
                     "--plot", str(target))
    assert code == 0
    assert target.exists() and target.stat().st_size > 0


def test_scan_repeat_is_byte_identical(capsys):
    argv = ("scan", "--b", "-3", "--c", "3", "--from", "100", "--to", "1000",
            "--grid", "linear", "--step", "100", "--fit")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


# ----- verify -----

def test_verify_euler(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "euler")
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("ok") for line in lines[:-1])
    assert lines[-1].startswith("suite euler (quick): PASS")


def test_verify_convolution_quick(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "convolution", "--level", "quick")
    assert code == 0
    assert "PASS" in out.splitlines()[-1]


def test_verify_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--suite", "nonsense"])
    assert exc.value.code == 2
    capsys.readouterr()
