import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from extralab import cli
from extralab.cutoff import Cutoff
from extralab.errors import ConfigError
from extralab.scenarios import CATALOG, parse_tgrid, scenario_from_mapping


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# --- scenario files -------------------------------------------------------------------

def test_yaml_full_scenario():
    sc = scenario_from_mapping("""
name: custom
domain: {shape: bidisc, nodes: [40, 36]}
submanifold: coordinate_line
cutoff: {kind: hinge, K: 3}
degree: 6
f: [1, [0, 2]]
t_grid: "0:2:0.5"
tolerances: {rho: 1.0e-5}
""")
    assert sc.domain.n_radial == 40 and sc.domain.n_angular == 36
    assert sc.cutoff == Cutoff("hinge", 3.0, 0.1)
    assert sc.f == (1 + 0j, 2j)
    assert sc.t_grid == (0.0, 0.5, 1.0, 1.5, 2.0)
    assert sc.tolerances.rho == 1e-5


def test_yaml_base_and_override():
    sc = scenario_from_mapping("base: bidisc-diagonal\ndegree: 6\n")
    assert sc.degree == 6 and sc.submanifold.kind == "diagonal"


@pytest.mark.parametrize("text,line,col", [
    ("base: disc-point\ncutof: hinge,2\n", 2, 1),
    ("base: disc-point\ndegree: -3\n", 2, 9),
    ("base: disc-point\nt_grid: [0, 1\n", 3, 1),
    ("base: nowhere\n", 1, 7),
    ("base: disc-point\ndomain: {shape: torus}\n", 2, 9),
    ("base: disc-point\ntolerances: {rh0: 1}\n", 2, 13),
])
def test_yaml_errors_carry_position(text, line, col):
    with pytest.raises(ConfigError) as exc:
        scenario_from_mapping(text, "s.yaml")
    assert exc.value.line == line and exc.value.column == col
    assert str(exc.value).startswith(f"s.yaml:{line}:{col}:")


def test_yaml_infeasible_data_points_at_f():
    with pytest.raises(ConfigError) as exc:
        scenario_from_mapping("base: disc-point\nf: [1, 2]\n", "s.yaml")
    assert exc.value.line == 2 and "single value" in str(exc.value)


def test_yaml_missing_keys():
    with pytest.raises(ConfigError, match="missing keys"):
        scenario_from_mapping("degree: 3\n")


@given(st.floats(-0.5, 3), st.floats(0.5, 5), st.sampled_from([0.125, 0.25, 0.5]))
def test_tgrid_parsing(a, span, step):
    b = a + span
    grid = parse_tgrid(f"{a!r}:{b!r}:{step!r}")
    assert grid[0] == pytest.approx(a)
    assert np.allclose(np.diff(grid), step)
    assert grid[-1] <= b + 1e-9 and grid[-1] > b - step


# --- subcommands ----------------------------------------------------------------------

def test_lambda_prints_one(capsys):
    code, out, _ = run(capsys, "lambda", "--catalog", "zsq", "--center", "0")
    assert code == 0 and out.strip() == "1.0"


def test_psh_exit_codes(capsys):
    assert run(capsys, "psh", "--catalog", "log_shifted")[0] == 0
    assert run(capsys, "psh", "--catalog", "neg_zsq")[0] == 1


def test_curvature_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "curvature", "--family", "gaussian", "--points", "0.5;1+1j",
                       "--out", str(tmp_path))
    assert code == 0 and "0.5" in out
    assert (tmp_path / "tables" / "curvature.csv").exists()
    assert run(capsys, "curvature", "--family", "anti_gauss_re", "--certificate",
               "extrapolation")[0] == 1
    assert run(capsys, "curvature", "--operator", "padded_flat")[0] == 0


def test_extend_disc_point(capsys, tmp_path):
    code, out, _ = run(capsys, "extend", "--scenario", "disc-point", "--out", str(tmp_path))
    assert code == 0
    rep = json.loads((tmp_path / "report.json").read_text())
    assert abs(rep["rho"] - 1) <= 1e-6
    for key in ("n_radial", "n_angular", "degree", "jitter"):
        assert key in rep["provenance"]
    for name in ("p_t.dat", "p_dual_t.dat", "tables/p_t.csv", "tables/extension.csv"):
        assert (tmp_path / name).exists()
    rows = (tmp_path / "p_t.dat").read_text().splitlines()
    assert rows[0].startswith("#") and len(rows[1].split()) == 2


def test_infeasible_data_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "extend", "--scenario", "bidisc-diagonal", "--degree", "2",
                       "--data", "0,0,0,0,0,0,0,0,1", "--out", str(tmp_path))
    assert code == 2 and "needs degree >= 4" in err


def test_config_error_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("base: disc-point\ncutof: hinge,2\n")
    code, _, err = run(capsys, "extend", "--scenario", str(bad), "--out", str(tmp_path))
    assert code == 2 and "bad.yaml:2:1" in err


def test_resolution_error_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, "extrapolate", "--scenario", "disc-point", "--tgrid", "0:80:10",
                       "--out", str(tmp_path))
    assert code == 2 and "t_max" in err


def test_prop41_cli(capsys, tmp_path):
    code, out, _ = run(capsys, "prop41", "--scenario", "disc-point", "--cutoffs",
                       "sharp;hinge,2", "--out", str(tmp_path))
    assert code == 0
    data = np.loadtxt(tmp_path / "prop41_ratio.dat")
    assert data.shape[1] == 3
    assert data[-1, 1] == pytest.approx(1.0, abs=1e-3)
    assert data[-1, 2] == pytest.approx(2.0, abs=1e-2)


def test_outputs_are_deterministic(capsys, tmp_path):
    for k in (1, 2):
        assert run(capsys, "extrapolate", "--scenario", "bidisc-line", "--out",
                   str(tmp_path / str(k)))[0] == 0
    for name in ("tables/p_t.csv", "tables/p_dual_t.csv", "p_t.dat", "report.json"):
        assert (tmp_path / "1" / name).read_bytes() == (tmp_path / "2" / name).read_bytes()


def test_catalog_defaults_documented():
    from extralab.scenarios import CATALOG_NOTES
    assert set(CATALOG_NOTES) == set(CATALOG)
