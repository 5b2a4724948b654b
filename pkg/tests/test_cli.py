import subprocess
import sys

import pytest

from aglab.canonical_fields import vortex_center
from aglab.cli import main
from aglab.cli.config import ConfigError, RunConfig, load_config, parse_config, parse_grid_flag
from aglab.cli.main import export_columns
from aglab.field_lab import GridSpec, ProductionReport, read_field
from aglab.identity_verifier import parse_suite_csv
from aglab.inclusion_map import parse_singular_csv

FAST = "[verify]\ngrids = 32,64\n"


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


# config


def test_default_config():
    cfg = load_config(None)
    assert cfg == RunConfig(seed=0, jobs=1, grids=(64, 128, 256), identities=(), nx=128, ny=128, h=2 / 127)


def test_config_parsing_and_validation():
    cfg = parse_config("[run]\nseed = 5\njobs = 3\n[verify]\ngrids = 16, 32\nidentities = jin_kohn, hilbert\n")
    assert (cfg.seed, cfg.jobs, cfg.grids, cfg.identities) == (5, 3, (16, 32), ("jin_kohn", "hilbert"))
    for bad in ("[grid]\nnx = 4\n", "[verify]\ngrids = 64\n", "[run]\nseed = x\n", "[run\n", "[verify]\ngrids = a,b\n"):
        with pytest.raises(ConfigError):
            parse_config(bad)
    with pytest.raises(ConfigError):
        load_config("/nonexistent/cfg.ini")


def test_grid_flag():
    assert parse_grid_flag("64,32,0.1") == (64, 32, 0.1)
    for bad in ("64,32", "a,b,c"):
        with pytest.raises(ConfigError):
            parse_grid_flag(bad)


# verify


def test_verify_default_suite_passes(tmp_path):
    assert main(["--out-dir", str(tmp_path), "verify"]) == 0
    rep = parse_suite_csv((tmp_path / "suite.csv").read_text())
    assert rep.passed
    per_grid = {}
    for r in rep.rows:
        if r.grid_h is not None:
            per_grid[r.grid_h] = per_grid.get(r.grid_h, 0) + 1
    assert len(per_grid) == 3 and min(per_grid.values()) >= 6


def test_verify_coarse_grid_exits_2(tmp_path, capsys):
    cfg = write(tmp_path, "c.ini", "[grid]\nnx = 4\nny = 4\nh = 0.5\n")
    assert main(["--config", cfg, "--out-dir", str(tmp_path), "verify"]) == 2
    assert "at least 8" in capsys.readouterr().err


def test_verify_single_identity(tmp_path):
    cfg = write(tmp_path, "c.ini", FAST + "identities = jin_kohn\n")
    assert main(["--config", cfg, "--out-dir", str(tmp_path), "verify"]) == 0
    ids = {r.identity_id for r in parse_suite_csv((tmp_path / "suite.csv").read_text()).rows}
    assert ids == {"jin_kohn:affine", "jin_kohn:trig"}
    assert main(["verify", "--only", "hilbert", "--out-dir", str(tmp_path)]) == 0
    ids = {r.identity_id for r in parse_suite_csv((tmp_path / "suite.csv").read_text()).rows}
    assert ids == {"hilbert:unbounded"}


def test_verify_unknown_identity_exits_2(tmp_path):
    assert main(["--out-dir", str(tmp_path), "verify", "--only", "bogus"]) == 2


def test_verify_failure_exits_1(tmp_path, monkeypatch):
    from aglab.identity_verifier import SuiteReport, SuiteRow

    monkeypatch.setattr(
        sys.modules["aglab.cli.main"],
        "run_suite",
        lambda *a, **k: SuiteReport((SuiteRow("x:y", 0.1, 1.0, 0.5, False),)),
    )
    assert main(["--out-dir", str(tmp_path), "verify"]) == 1


def test_same_seed_gives_identical_bytes(tmp_path):
    cfg = write(tmp_path, "c.ini", FAST)
    outs = []
    for k, jobs in enumerate(("1", "4")):
        d = tmp_path / f"run{k}"
        assert main(["--config", cfg, "--seed", "11", "--jobs", jobs, "--out-dir", str(d), "verify"]) == 0
        outs.append((d / "suite.csv").read_bytes())
    assert outs[0] == outs[1]
    assert b"\r\n" not in outs[0]


# field


def test_gen_vortex_and_analyze(tmp_path, capsys):
    d = str(tmp_path)
    assert main(["--grid", "128,128,0.015748031496062992", "--out-dir", d, "field", "gen", "vortex"]) == 0
    assert "max ||m|-1|" in capsys.readouterr().err
    m = read_field(tmp_path / "vortex.field")
    assert m.spec.shape == (128, 128) and m.unit_defect() < 1e-14
    assert main(["--out-dir", d, "field", "analyze", str(tmp_path / "vortex.field"), "--entropy", "1"]) == 0
    rep = ProductionReport.from_csv((tmp_path / "vortex_production.csv").read_text())
    assert len(rep.tests) > 0 and rep.max_abs <= 1e-3
    summary = (tmp_path / "vortex_summary.txt").read_text().splitlines()
    keys = [line.split()[0] for line in summary]
    assert keys[:3] == ["tests", "max_abs_pairing", "besov"]
    assert "p_eps_max_eps4h" in keys and "max_abs_divergence_off_singular" in keys


def test_scan_two_vortices(tmp_path):
    d = str(tmp_path)
    h = 2 / 63
    args = ["--grid", f"64,64,{h}", "--out-dir", d, "field", "gen", "vortex", "--output", "two.field"]
    args += [f"--center={-10 * h + 0.001},0.002", f"--center={10 * h + 0.001},0.002"]
    assert main(args) == 0
    assert main(["--out-dir", d, "field", "scan", str(tmp_path / "two.field")]) == 0
    pts = parse_singular_csv((tmp_path / "two_singular.csv").read_text())
    assert len(pts) == 2 and all(p.winding == 1 for p in pts)


@pytest.mark.parametrize(
    "gen,extra",
    [
        ("jump", ["--beta", "0.7", "--nu-angle", "0.3"]),
        ("from-u", ["--center", "3,0"]),
        ("from-u", ["--profile", "affine", "--slope", "1.0"]),
    ],
)
def test_other_generators_round_trip(tmp_path, gen, extra):
    d = str(tmp_path)
    assert main(["--grid", "32,32,0.0625", "--out-dir", d, "field", "gen", gen, *extra]) == 0
    path = tmp_path / f"{gen}.field"
    m = read_field(path)
    # round trip: re-reading and re-writing gives identical bytes
    assert main(["--out-dir", str(tmp_path / "again"), "field", "scan", str(path)]) == 0
    from aglab.field_lab import format_field

    assert format_field(m) == path.read_text()


def test_gen_minimize_writes_trace(tmp_path):
    d = str(tmp_path)
    args = ["--grid", "16,16,0.0666", "--out-dir", d, "field", "gen", "minimize", "--steps", "20", "--boundary", "free"]
    assert main(args) == 0
    trace = (tmp_path / "energy_trace.csv").read_text().splitlines()
    assert trace[0] == "step,energy,step_size" and len(trace) == 22
    energies = [float(line.split(",")[1]) for line in trace[1:]]
    assert all(b <= a for a, b in zip(energies, energies[1:]))
    assert read_field(tmp_path / "minimize.field").role == "scalar"


def test_gen_minimize_rejects_zero_step(tmp_path):
    args = ["--grid", "16,16,0.0666", "--out-dir", str(tmp_path), "field", "gen", "minimize", "--step-size", "0"]
    assert main(args) == 2


def test_unknown_generator_is_a_usage_error(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["--out-dir", str(tmp_path), "field", "gen", "spiral"])
    assert exc.value.code == 2


def test_malformed_field_file_reports_line(tmp_path, capsys):
    bad = write(tmp_path, "bad.field", "8 8 0.1 0 0 vector\n0 0 1.0\n")
    assert main(["--out-dir", str(tmp_path), "field", "scan", bad]) == 2
    assert "line 2" in capsys.readouterr().err


def test_flags_after_subcommand(tmp_path):
    assert main(["field", "gen", "vortex", "--grid", "16,16,0.125", "--out-dir", str(tmp_path)]) == 0
    assert read_field(tmp_path / "vortex.field").spec.h == 0.125


def test_singular_mask_survives_the_file(tmp_path):
    main(["--grid", "16,16,0.125", "--out-dir", str(tmp_path), "field", "gen", "vortex"])
    m = read_field(tmp_path / "vortex.field")
    c = vortex_center((0.0, 0.0), GridSpec.centered(16, 16, 0.125))
    assert m.singular.sum() == 4
    i, j = m.spec.cell_of(c)
    assert m.singular[i, j]


# export-plot


def test_export_suite_columns(tmp_path, capsys):
    cfg = write(tmp_path, "c.ini", FAST + "identities = jin_kohn,multiplier\n")
    main(["--config", cfg, "--out-dir", str(tmp_path), "verify"])
    assert main(["export-plot", str(tmp_path / "suite.csv")]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "# jin_kohn:affine"
    assert "# jin_kohn:trig" in out
    body = [line for line in out if line and not line.startswith("#")]
    assert len(body) == 4 and all(len(line.split()) == 2 for line in body)


def test_export_trace_and_empty(tmp_path, capsys):
    trace = write(tmp_path, "t.csv", "step,energy,step_size\n0,1.5,0.0\n1,1.25,0.01\n")
    out_file = tmp_path / "cols.txt"
    assert main(["export-plot", trace, "--output", str(out_file)]) == 0
    assert out_file.read_text() == "# step energy\n0 1.5\n1 1.25\n"
    empty = write(tmp_path, "e.csv", "")
    assert main(["export-plot", empty]) == 0
    assert capsys.readouterr().out == ""


def test_export_errors(tmp_path):
    assert main(["export-plot", str(tmp_path / "missing.csv")]) == 2
    assert main(["export-plot", write(tmp_path, "b.csv", "what,is,this\n")]) == 2
    with pytest.raises(ValueError, match="line 2"):
        export_columns("x,y,winding\n1,2\n")


def test_module_entry_point(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "aglab", "export-plot", write(tmp_path, "e.csv", "")], capture_output=True
    )
    assert res.returncode == 0 and res.stdout == b""
    res = subprocess.run([sys.executable, "-m", "aglab", "--grid", "4,4,0.1", "verify"], capture_output=True)
    assert res.returncode == 2
