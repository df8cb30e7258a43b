import io
import json
import subprocess
import sys

from kmvir.cli import main


def _run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_verify_json_passes():
    code, text = _run("verify", "lie")
    assert code == 0
    report = json.loads(text)
    assert report["aggregate"] == {"pass": True, "total": len(report["checks"]), "failed": 0}
    assert report["config"]["algebra"] == "sl2"


def test_verify_negative_control_exits_one():
    code, text = _run("verify", "lie", "--negative-control", "--format", "text")
    assert code == 1
    assert "witness:" in text
    assert text.splitlines()[-1].startswith("FAIL")


def test_usage_and_config_errors_exit_two(capsys):
    assert _run("verify", "no-such-suite")[0] == 2
    assert _run("verify", "sugawara", "--set", "k=-2")[0] == 2
    assert _run("verify", "critical", "--set", "k=1")[0] == 2
    assert _run("verify", "lie", "--set", "k")[0] == 2
    assert _run("verify", "lie", "--algebra", "so5")[0] == 2
    assert _run("verify", "lie", "--workers", "0")[0] == 2
    assert "critical level" in capsys.readouterr().err


def test_out_file(tmp_path):
    target = tmp_path / "report.json"
    code, text = _run("verify", "dimensions", "--out", str(target))
    assert code == 0
    assert "report in" in text
    assert json.loads(target.read_text())["suite"] == "dimensions"


def test_dims_table():
    code, text = _run("dims", "--degree", "4")
    assert code == 0
    assert "MISMATCH" not in text
    assert any(line.split()[:5] == ["KacMoody", "0", "2", "9", "9"] for line in text.splitlines())


def test_sugawara_table_uses_cache(tmp_path):
    args = ("table", "sugawara", "--degree", "2", "--mode-range", "2", "--cache", str(tmp_path))
    code, first = _run(*args)
    assert code == 0
    assert any(tmp_path.iterdir())
    code, second = _run(*args)
    assert code == 0 and first == second
    assert "L^S_-2:" in first


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kmvir.cli", "verify", "lie", "--format", "text"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1].startswith("PASS")
