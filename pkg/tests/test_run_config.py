"""Tests for configuration loading and precedence."""

import json

import pytest
from pydantic import ValidationError

from classes.manifold_tag import FrontGluing
from classes.run_config import CONFIG_FILE, Command, RunConfig, parse_resolution


@pytest.mark.usefixtures("isolated_config")
class TestLoad:
    def test_defaults(self):
        config = RunConfig.load(Command.T2_COUNT)
        assert config.threads == 1
        assert config.y_max == 2.0
        assert config.m is None
        assert config.front_gluing is FrontGluing.OVERLAP

    def test_environment_is_read(self, monkeypatch):
        monkeypatch.setenv("KK_NODAL_THREADS", "3")
        monkeypatch.setenv("KK_NODAL_YMAX", "2.5")
        config = RunConfig.load(Command.T2_COUNT)
        assert config.threads == 3
        assert config.y_max == 2.5

    def test_file_beats_environment(self, monkeypatch):
        monkeypatch.setenv("KK_NODAL_THREADS", "3")
        CONFIG_FILE.write_text(json.dumps({"threads": 5, "command": "index", "unknown": 1}))
        config = RunConfig.load(Command.T2_COUNT)
        assert config.threads == 5
        assert config.command is Command.T2_COUNT

    def test_cli_beats_file(self):
        CONFIG_FILE.write_text(json.dumps({"threads": 5, "seed": 9}))
        config = RunConfig.load(Command.INDEX, threads=7, seed=None)
        assert config.threads == 7
        assert config.seed == 9

    def test_broken_file_is_ignored(self):
        CONFIG_FILE.write_text("{not json")
        assert RunConfig.load(Command.INDEX).threads == 1

    def test_invalid_environment_value(self, monkeypatch):
        monkeypatch.setenv("KK_NODAL_YMAX", "0.5")
        with pytest.raises(ValidationError):
            RunConfig.load(Command.MODULAR_COUNT)


class TestResolution:
    def test_parse(self):
        assert parse_resolution("96x96x192") == (96, 96, 192)
        assert parse_resolution("16X16") == (16, 16)

    def test_text_is_parsed_by_the_model(self):
        config = RunConfig(command=Command.TORUS_COUNT, resolution="12x12x24")
        assert config.resolution == (12, 12, 24)

    @pytest.mark.parametrize("value", ["4x8x8", "axb", "8x"])
    def test_rejected(self, value):
        with pytest.raises(ValidationError):
            RunConfig(command=Command.TORUS_COUNT, resolution=value)


class TestDefaults:
    def test_with_defaults_fills_only_unset_fields(self):
        config = RunConfig(command=Command.GRAPH_COUNT, m=2)
        filled = config.with_defaults(m=3, samples=50, resolution=(64, 64))
        assert filled.m == 2
        assert filled.samples == 50
        assert filled.resolution == (64, 64)

    def test_params_leave_out_paths_and_flags(self, tmp_path):
        config = RunConfig(command=Command.INDEX, out=tmp_path / "s.json", threads=4)
        params = config.params()
        assert not {"command", "out", "csv", "omit_timing", "threads"} & set(params)
        assert params["front_gluing"] == "overlap"
