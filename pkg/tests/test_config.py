import pytest

from nlac.config import RunConfig, load_config, parse_config_text, with_overrides

FULL_TEXT = """
# full example exercising every key
grid.L = 1.0
grid.N = 64

kernel.delta = 0.05
potential.kind = flory-huggins
potential.theta = 0.8
potential.theta_c = 1.6

scheme.order = 1
scheme.tau = 0.005
scheme.eps = 0.05
scheme.predictor = extrapolation
scheme.kappa_override = 8.02

init.kind = rings
init.R1 = 0.7
init.R2 = 0.5
init.center_x = 0.1
init.center_y = -0.1
init.amplitude = 0.2
init.seed = 11
init.scale = 0.9575

run.T_final = 2.0
run.snapshot_times = 0, 1.0, 2.0
run.steady_stop = yes
run.steady_threshold = 1e-7
run.output_dir = results
run.strict_mbp_tau = true
"""


def test_defaults():
    cfg = RunConfig()
    assert cfg.N == 128
    assert cfg.potential_kind == "double-well"
    assert cfg.order == 2
    assert cfg.snapshot_times == ()
    assert not cfg.steady_stop
    assert cfg.kappa_override is None
    assert cfg.scale == 1.0


def test_parse_every_key():
    cfg = parse_config_text(FULL_TEXT)
    assert cfg.L == 1.0 and cfg.N == 64
    assert cfg.delta == 0.05
    assert cfg.potential_kind == "flory-huggins"
    assert cfg.theta == 0.8 and cfg.theta_c == 1.6
    assert cfg.order == 1
    assert cfg.tau == 0.005 and cfg.eps == 0.05
    assert cfg.predictor == "extrapolation"
    assert cfg.kappa_override == 8.02
    assert cfg.init_kind == "rings"
    assert cfg.R1 == 0.7 and cfg.R2 == 0.5
    assert cfg.center_x == 0.1 and cfg.center_y == -0.1
    assert cfg.amplitude == 0.2 and cfg.seed == 11
    assert cfg.scale == 0.9575
    assert cfg.T_final == 2.0
    assert cfg.snapshot_times == (0.0, 1.0, 2.0)
    assert cfg.steady_stop is True
    assert cfg.steady_threshold == 1e-7
    assert cfg.output_dir == "results"
    assert cfg.strict_mbp_tau is True


def test_comments_and_blank_lines_ignored():
    cfg = parse_config_text("\n# comment\ngrid.N = 32  # trailing comment\n\n")
    assert cfg.N == 32


def test_unknown_key_reports_line():
    with pytest.raises(ValueError, match=r"<string>:2: unknown config key 'grid\.M'"):
        parse_config_text("grid.N = 32\ngrid.M = 4\n")


def test_missing_equals_reports_line():
    with pytest.raises(ValueError, match="<string>:1: expected 'key = value'"):
        parse_config_text("grid.N 32\n")


def test_bad_value_reports_key_and_line():
    with pytest.raises(ValueError, match="<string>:1: bad value for scheme.tau"):
        parse_config_text("scheme.tau = fast\n")
    with pytest.raises(ValueError, match="bad value for run.steady_stop"):
        parse_config_text("run.steady_stop = maybe\n")


def test_validation_rejects_bad_combinations():
    with pytest.raises(ValueError, match="tau must be positive"):
        parse_config_text("scheme.tau = -0.1\n")
    with pytest.raises(ValueError, match="N must be at least 4"):
        parse_config_text("grid.N = 2\n")
    with pytest.raises(ValueError, match="order must be 1 or 2"):
        parse_config_text("scheme.order = 3\n")
    with pytest.raises(ValueError, match="outside the run interval"):
        parse_config_text("run.T_final = 1.0\nrun.snapshot_times = 0.5, 1.5\n")


def test_empty_snapshot_times():
    cfg = parse_config_text("run.snapshot_times =\n")
    assert cfg.snapshot_times == ()


def test_load_config_uses_filename_in_errors(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("grid.N = 32\nnope = 1\n")
    with pytest.raises(ValueError, match=r"bad\.cfg:2"):
        load_config(path)
    path.write_text("grid.N = 32\n")
    assert load_config(path).N == 32


def test_with_overrides():
    cfg = RunConfig()
    out = with_overrides(cfg, N=64, output_dir="elsewhere", tau=None)
    assert out.N == 64
    assert out.output_dir == "elsewhere"
    assert out.tau == cfg.tau  # None means keep
    assert with_overrides(cfg) is cfg
