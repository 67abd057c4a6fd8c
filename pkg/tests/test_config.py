"""Tests for configuration module."""

from pathlib import Path

import pytest

from simfiber.core.config import load_config, load_config_file
from simfiber.core.exceptions import ConfigurationError
from simfiber.core.types import CapacityFormula, ExperimentKind, PathGainConvention


class TestConfigDefaults:
    """Tests for the simulation parameter defaults."""

    def test_link_budget_defaults(self) -> None:
        config = load_config()

        assert config.pt_dbm == 20.0
        assert config.n0_dbm == -110.0
        assert config.streams == 4
        assert config.distance_m == 150.0
        assert config.path_loss_exponent == 3.5
        assert config.wavelength_m == pytest.approx(0.0107)

    def test_architecture_defaults(self) -> None:
        config = load_config()

        assert config.m_atoms == config.n_atoms == 25
        assert config.tx_layers == config.rx_layers == 7
        assert config.tx_layer_atoms == config.rx_layer_atoms == 100
        assert config.sweep_side == "both"

    def test_solver_defaults(self) -> None:
        config = load_config()

        assert config.max_iterations == 20
        assert config.initialization == "identity"
        assert config.threshold_mode == "normalized"

    def test_provenance_defaults(self) -> None:
        config = load_config()

        assert config.path_gain_convention == PathGainConvention.FREE_SPACE_GAIN
        assert config.capacity_formula == CapacityFormula.EQ37_CONSISTENT


class TestConfigEnvVars:
    """Tests for loading config from environment variables."""

    def test_loads_from_env_vars(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("SIMFIBER_SEED", "42")
        monkeypatch.setenv("SIMFIBER_KIND", "heatmap")

        config = load_config()

        assert config.seed == 42
        assert config.kind == ExperimentKind.HEATMAP

    def test_env_prefix_is_simfiber(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("SEED", "7")
        monkeypatch.setenv("SIMFIBER_TRIALS", "3")

        config = load_config()

        assert config.seed == 0
        assert config.trials == 3


class TestConfigProgrammaticOverride:
    """Tests for programmatic configuration override."""

    def test_programmatic_override_wins_over_env(
        self, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        monkeypatch.setenv("SIMFIBER_SEED", "5")
        monkeypatch.setenv("SIMFIBER_WORKERS", "3")

        config = load_config(seed=9)

        assert config.seed == 9
        assert config.workers == 3

    def test_config_is_frozen(self) -> None:
        config = load_config()

        with pytest.raises(ValueError):
            config.seed = 3  # type: ignore[misc]


class TestConfigValidation:
    """Tests for configuration validation."""

    def test_zero_trials_raises_configuration_error(self) -> None:
        with pytest.raises(ConfigurationError) as exc_info:
            load_config(trials=0)

        assert exc_info.value.field_name == "trials"

    def test_unknown_key_is_rejected(self) -> None:
        with pytest.raises(ConfigurationError) as exc_info:
            load_config(not_a_field=1)

        assert exc_info.value.field_name == "not_a_field"

    def test_non_square_layer_grid_is_rejected(self) -> None:
        with pytest.raises(ConfigurationError) as exc_info:
            load_config(tx_layer_atoms=50)

        assert exc_info.value.field_name == "tx_layer_atoms"

    def test_attenuation_ratio_must_be_below_one(self) -> None:
        with pytest.raises(ConfigurationError) as exc_info:
            load_config(attenuation_ratio=1.0)

        assert exc_info.value.field_name == "attenuation_ratio"

    def test_fractional_atom_sweep_is_rejected(self) -> None:
        with pytest.raises(ConfigurationError) as exc_info:
            load_config(kind="sweep_atoms", sweep_values=[1, 2.5])

        assert exc_info.value.field_name == "sweep_values"

    def test_unknown_sweep_side_is_rejected(self) -> None:
        with pytest.raises(ConfigurationError) as exc_info:
            load_config(kind="sweep_atoms", sweep_side="left")

        assert exc_info.value.field_name == "sweep_side"

    def test_empty_bench_grid_is_rejected(self) -> None:
        with pytest.raises(ConfigurationError):
            load_config(bench_atoms=[])

    def test_unknown_kind_is_rejected(self) -> None:
        with pytest.raises(ConfigurationError) as exc_info:
            load_config(kind="fig_42")

        assert exc_info.value.field_name == "kind"


class TestConfigFile:
    """Tests for TOML experiment files."""

    def test_reads_flat_toml(self, tmp_path: Path) -> None:
        path = tmp_path / "exp.toml"
        path.write_text(
            'kind = "sweep_distance"\ntrials = 2\nsweep_values = [50, 100]\n'
        )

        config = load_config_file(path)

        assert config.kind == ExperimentKind.SWEEP_DISTANCE
        assert config.trials == 2
        assert config.sweep_values == [50.0, 100.0]

    def test_overrides_win_and_none_is_ignored(self, tmp_path: Path) -> None:
        path = tmp_path / "exp.toml"
        path.write_text("seed = 1\nworkers = 2\n")

        config = load_config_file(path, seed=8, workers=None)

        assert config.seed == 8
        assert config.workers == 2

    def test_missing_file_is_configuration_error(self, tmp_path: Path) -> None:
        with pytest.raises(ConfigurationError) as exc_info:
            load_config_file(tmp_path / "absent.toml")

        assert exc_info.value.field_name == "config"

    def test_malformed_toml_is_configuration_error(self, tmp_path: Path) -> None:
        path = tmp_path / "bad.toml"
        path.write_text("kind = \n")

        with pytest.raises(ConfigurationError) as exc_info:
            load_config_file(path)

        assert "invalid TOML" in exc_info.value.reason

    def test_unknown_key_in_file_is_rejected(self, tmp_path: Path) -> None:
        path = tmp_path / "exp.toml"
        path.write_text("sead = 3\n")

        with pytest.raises(ConfigurationError) as exc_info:
            load_config_file(path)

        assert exc_info.value.field_name == "sead"


class TestConfigErrorMessages:
    """Tests for helpful error messages."""

    def test_error_message_includes_field_name(self) -> None:
        with pytest.raises(ConfigurationError) as exc_info:
            load_config(streams=0)

        error_msg = str(exc_info.value)
        assert "ConfigurationError" in error_msg
        assert "streams" in error_msg

    def test_error_message_includes_reason(self) -> None:
        with pytest.raises(ConfigurationError) as exc_info:
            load_config(distance_m=-1.0)

        assert exc_info.value.reason is not None
        assert len(exc_info.value.reason) > 0
