"""
Configuration management for chromatic-forge.

Supports loading from YAML config files, environment variables, and CLI args.
Uses Pydantic Settings for validation and type coercion.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


# ── Sections ───────────────────────────────────────────────────────────


class LimitsConfig(BaseModel):
    """Size caps; exceeding any of them raises ResourceLimitError."""

    automorphism_vertex_limit: int = Field(default=16, ge=1, description="Max vertices for automorphism search")
    subgroup_order_limit: int = Field(
        default=48, ge=1, description="Max group order for full subgroup enumeration"
    )
    corpus_vertex_limit: int = Field(default=9, ge=1, le=12, description="Max vertices for the outerplanar corpus")


class RootsConfig(BaseModel):
    """Real-root isolation settings."""

    isolation_width: str = Field(default="1/1024", description="Max isolating interval width, as p/q")

    @field_validator("isolation_width")
    @classmethod
    def _positive_rational(cls, v: str) -> str:
        try:
            value = Fraction(v)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"isolation_width must be a rational like 1/1024: {e}") from e
        if value <= 0:
            raise ValueError("isolation_width must be positive")
        return v

    @property
    def width(self) -> Fraction:
        return Fraction(self.isolation_width)


class ForgeSection(BaseModel):
    """Counterexample construction settings."""

    s_max: int = Field(default=64, ge=1, description="Largest gadget parameter s to try")
    gadget: str = Field(default="hns", description="Registered gadget family")


class EngineConfig(BaseModel):
    """Chromatic engine and parallelism settings."""

    chromatic_cache: bool = Field(default=False, description="Memoize chromatic polynomials across calls")
    workers: int = Field(default=1, ge=1, description="Worker processes for corpus verification")


class ReportingConfig(BaseModel):
    """Output settings."""

    indent: int = Field(default=2, ge=0, description="JSON indentation for single reports")
    output_dir: str = Field(default="./reports", description="Directory for --output files")


# ── Run description ────────────────────────────────────────────────────


class Command(str, Enum):
    CHROM = "chrom"
    ORBITAL = "orbital"
    QUOTIENT = "quotient"
    AUT = "aut"
    ROOTS = "roots"
    FORGE = "forge"
    CHECK_BOUND = "check-bound"
    OUTERPLANAR = "outerplanar"
    VERIFY_OUTERPLANAR = "verify-outerplanar"
    FAMILIES = "families"


class RunConfig(BaseModel):
    """One CLI invocation: a command, its input and its options."""

    command: Command
    input: Optional[str] = Field(default=None, description="Graph JSON, file path or family shorthand")
    options: Dict[str, Any] = Field(default_factory=dict)


# ── Root Config ────────────────────────────────────────────────────────


DEFAULT_CONFIG_DIR = Path.home() / ".chromatic-forge"
DEFAULT_CONFIG_FILE = DEFAULT_CONFIG_DIR / "config.yaml"


def _explicit(model: BaseModel) -> Dict[str, Any]:
    """Only the fields that were actually set, recursively."""
    out: Dict[str, Any] = {}
    for name in model.model_fields_set:
        value = getattr(model, name)
        out[name] = _explicit(value) if isinstance(value, BaseModel) else value
    return out


def _deep_merge(base: Dict[str, Any], top: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in top.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class ForgeConfig(BaseSettings):
    """Root configuration for chromatic-forge."""

    model_config = SettingsConfigDict(
        env_prefix="CHROMFORGE_",
        env_nested_delimiter="__",
        case_sensitive=False,
    )

    limits: LimitsConfig = Field(default_factory=LimitsConfig)
    roots: RootsConfig = Field(default_factory=RootsConfig)
    forge: ForgeSection = Field(default_factory=ForgeSection)
    engine: EngineConfig = Field(default_factory=EngineConfig)
    reporting: ReportingConfig = Field(default_factory=ReportingConfig)
    log_level: str = Field(default="INFO", description="Log level: DEBUG, INFO, WARNING, ERROR")

    @classmethod
    def load(cls, config_path: Optional[str] = None, **overrides: Any) -> "ForgeConfig":
        """
        Load configuration from YAML file, env vars, and overrides.

        Priority (highest to lowest):
        1. Explicit overrides (CLI args)
        2. Environment variables (CHROMFORGE_*)
        3. YAML config file
        4. Defaults
        """
        yaml_data: Dict[str, Any] = {}
        path = Path(config_path) if config_path else DEFAULT_CONFIG_FILE
        if path.exists():
            with open(path) as f:
                yaml_data = yaml.safe_load(f) or {}

        from_env = _explicit(cls())
        merged = _deep_merge(_deep_merge(yaml_data, from_env), overrides)
        return cls(**merged)

    def save(self, config_path: Optional[str] = None) -> Path:
        """Save current configuration to YAML file."""
        path = Path(config_path) if config_path else DEFAULT_CONFIG_FILE
        path.parent.mkdir(parents=True, exist_ok=True)

        data = self.model_dump(exclude_none=True)
        with open(path, "w") as f:
            yaml.dump(data, f, default_flow_style=False, sort_keys=False)

        return path

