"""
Unit tests for configuration, JSON reporting and logging setup.
"""

from __future__ import annotations

import io
import json
import logging
from fractions import Fraction

import pytest
import yaml
from pydantic import ValidationError

from chromatic_forge.config import Command, ForgeConfig, RunConfig
from chromatic_forge.reporters.json_reporter import JSONReporter, dumps, dumps_line
from chromatic_forge.utils.logger import get_logger, setup_logging


def _write_yaml(path, data) -> str:
    path.write_text(yaml.safe_dump(data))
    return str(path)


# ── ForgeConfig ────────────────────────────────────────────────────────


class TestForgeConfig:
    """Test defaults, sources and their precedence."""

    def test_defaults(self):
        config = ForgeConfig.load()
        assert config.limits.automorphism_vertex_limit == 16
        assert config.limits.subgroup_order_limit == 48
        assert config.limits.corpus_vertex_limit == 9
        assert config.roots.width == Fraction(1, 1024)
        assert config.forge.s_max == 64
        assert config.forge.gadget == "hns"
        assert config.engine.workers == 1
        assert config.log_level == "INFO"

    def test_yaml_file(self, tmp_path):
        path = _write_yaml(tmp_path / "c.yaml", {"forge": {"s_max": 8}, "roots": {"isolation_width": "1/64"}})
        config = ForgeConfig.load(path)
        assert config.forge.s_max == 8
        assert config.forge.gadget == "hns"
        assert config.roots.width == Fraction(1, 64)

    def test_env_beats_yaml(self, tmp_path, monkeypatch):
        path = _write_yaml(tmp_path / "c.yaml", {"forge": {"s_max": 8, "gadget": "hns"}})
        monkeypatch.setenv("CHROMFORGE_FORGE__S_MAX", "16")
        config = ForgeConfig.load(path)
        assert config.forge.s_max == 16
        assert config.forge.gadget == "hns"

    def test_overrides_beat_env(self, monkeypatch):
        monkeypatch.setenv("CHROMFORGE_LOG_LEVEL", "WARNING")
        assert ForgeConfig.load().log_level == "WARNING"
        assert ForgeConfig.load(log_level="DEBUG").log_level == "DEBUG"

    def test_bad_width(self):
        with pytest.raises(ValidationError):
            ForgeConfig(roots={"isolation_width": "wide"})
        with pytest.raises(ValidationError):
            ForgeConfig(roots={"isolation_width": "0"})

    def test_corpus_cap_bounded(self):
        with pytest.raises(ValidationError):
            ForgeConfig(limits={"corpus_vertex_limit": 13})

    def test_save_and_load(self, tmp_path):
        config = ForgeConfig(forge={"s_max": 5}, engine={"workers": 3})
        path = config.save(str(tmp_path / "saved.yaml"))
        assert ForgeConfig.load(str(path)).model_dump() == config.model_dump()

    def test_run_config(self):
        rc = RunConfig(command="check-bound", input="cycle:6", options={"partition": "pairs"})
        assert rc.command is Command.CHECK_BOUND


# ── JSON reporter ──────────────────────────────────────────────────────


class TestJSONReporter:
    """Test deterministic JSON output."""

    def test_keys_sorted(self):
        assert dumps({"b": 1, "a": 2}, None) == '{"a": 2, "b": 1}'
        assert dumps_line({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'

    def test_emit_lines(self):
        stream = io.StringIO()
        count = JSONReporter().emit_lines([{"x": 1}, {"x": 2}], stream)
        assert count == 2
        assert stream.getvalue() == '{"x":1}\n{"x":2}\n'

    def test_generate_into_output_dir(self, tmp_path):
        reporter = JSONReporter(str(tmp_path / "reports"))
        path = reporter.generate({"ok": True}, "result.json")
        assert path == str(tmp_path / "reports" / "result.json")
        assert json.loads(open(path).read()) == {"ok": True}

    def test_generate_lines(self, tmp_path):
        reporter = JSONReporter(str(tmp_path))
        path = reporter.generate_lines([{"graph_id": 0}, {"summary": True}], str(tmp_path / "run.jsonl"))
        with open(path) as f:
            records = [json.loads(line) for line in f]
        assert records[-1] == {"summary": True}


# ── Logging ────────────────────────────────────────────────────────────


class TestLogging:
    """Test the logger tree and its JSON file handler."""

    def test_json_log_file(self, tmp_path):
        log_file = tmp_path / "logs" / "run.jsonl"
        logger = setup_logging("DEBUG", log_file=str(log_file), json_log=True)
        try:
            get_logger("verify").info("checked", extra={"graph_id": 3, "stage": "verify"})
            entry = json.loads(log_file.read_text().splitlines()[-1])
            assert entry["level"] == "INFO"
            assert entry["logger"] == "chromatic-forge.verify"
            assert entry["message"] == "checked"
            assert entry["graph_id"] == 3
            assert entry["stage"] == "verify"
        finally:
            logger.handlers.clear()

    def test_level_applies(self):
        logger = setup_logging("WARNING")
        try:
            assert logger.level == logging.WARNING
            assert len(logger.handlers) == 1
        finally:
            logger.handlers.clear()

    def test_get_logger_is_under_root(self):
        root = setup_logging("INFO")
        try:
            child = get_logger("forge")
            assert child.name == "chromatic-forge.forge"
            assert child.parent is root
        finally:
            root.handlers.clear()
