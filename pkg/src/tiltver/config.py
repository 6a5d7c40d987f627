from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from .errors import ConfigurationError, UnsupportedType
from .rootdata import Weight, format_weight, parse_type_label

DEFAULT_DATA_ROOT = Path(__file__).resolve().parent / "data"
OUTPUT_FORMATS = {"text", "json"}


@dataclass
class Settings:
    log_level: str = "INFO"  # DEBUG, INFO, WARNING, ERROR, CRITICAL
    output_format: str = "text"  # 'text' or 'json'
    data_root: Path = DEFAULT_DATA_ROOT
    builtin_overrides: bool = True
    decomp_tables: list[Path] = field(default_factory=list)
    tilting_tables: list[Path] = field(default_factory=list)
    ext_facts: Optional[Path] = None
    enumeration_limit: int = 4096  # JSF resolution candidates tried per weight
    weight_spaces: bool = True  # settle what the sum formula leaves open from weight multiplicities

    @property
    def ext_facts_path(self) -> Path:
        return self.ext_facts or self.data_root / "ext_facts.yaml"


def _path_list(value: Optional[str]) -> list[Path]:
    if not value:
        return []
    return [Path(part).expanduser() for part in value.split(os.pathsep) if part.strip()]


def load_settings() -> Settings:
    load_dotenv()

    output_format = os.getenv("TILTVER_OUTPUT_FORMAT", "text").lower()
    if output_format not in OUTPUT_FORMATS:
        raise ConfigurationError("TILTVER_OUTPUT_FORMAT must be 'text' or 'json'")

    data_root_env = os.getenv("TILTVER_DATA_ROOT")
    data_root = Path(data_root_env).expanduser().resolve() if data_root_env else DEFAULT_DATA_ROOT
    if not data_root.is_dir():
        raise ConfigurationError(f"TILTVER_DATA_ROOT is not a directory: {data_root}")

    limit_raw = os.getenv("TILTVER_ENUMERATION_LIMIT", "4096")
    try:
        enumeration_limit = int(limit_raw)
    except ValueError as exc:
        raise ConfigurationError("TILTVER_ENUMERATION_LIMIT must be an integer") from exc
    if enumeration_limit < 1:
        raise ConfigurationError("TILTVER_ENUMERATION_LIMIT must be positive")

    ext_facts_env = os.getenv("TILTVER_EXT_FACTS")

    return Settings(
        log_level=os.getenv("TILTVER_LOG_LEVEL", "INFO"),
        output_format=output_format,
        data_root=data_root,
        builtin_overrides=os.getenv("TILTVER_BUILTIN_OVERRIDES", "true").lower() == "true",
        decomp_tables=_path_list(os.getenv("TILTVER_DECOMP_TABLE")),
        tilting_tables=_path_list(os.getenv("TILTVER_TILTING_TABLE")),
        ext_facts=Path(ext_facts_env).expanduser() if ext_facts_env else None,
        enumeration_limit=enumeration_limit,
        weight_spaces=os.getenv("TILTVER_WEIGHT_SPACES", "true").lower() == "true",
    )


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


@dataclass
class CaseConfig:
    """One verification case: a root system, a prime and the data to use."""

    type_label: str
    p: int
    r: int = 1
    weights: Optional[list[Weight]] = None  # None means all of X_1
    decomp_tables: list[Path] = field(default_factory=list)
    tilting_tables: list[Path] = field(default_factory=list)
    output_format: str = "text"
    builtin_overrides: bool = True
    enumeration_limit: int = 4096
    weight_spaces: bool = True
    data_root: Path = DEFAULT_DATA_ROOT

    @property
    def family(self) -> str:
        return parse_type_label(self.type_label)[0]

    @property
    def rank(self) -> int:
        return parse_type_label(self.type_label)[1]

    def validate(self) -> "CaseConfig":
        try:
            family, rank = parse_type_label(self.type_label)
        except UnsupportedType as exc:
            raise ConfigurationError(str(exc)) from exc
        self.type_label = f"{family}{rank}"
        if not is_prime(self.p):
            raise ConfigurationError(f"p must be prime, got {self.p}")
        if self.r != 1:
            raise ConfigurationError("only Frobenius level r = 1 is supported for these checks")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigurationError(f"unknown output format {self.output_format!r}")
        for weight in self.weights or []:
            if len(weight) != rank:
                raise ConfigurationError(
                    f"weight {format_weight(weight)} does not have rank {rank}"
                )
            if any(x < 0 or x >= self.p for x in weight):
                raise ConfigurationError(
                    f"weight {format_weight(weight)} is not {self.p}-restricted"
                )
        for path in [*self.decomp_tables, *self.tilting_tables]:
            if not Path(path).is_file():
                raise ConfigurationError(f"table file not found: {path}")
        return self

    @classmethod
    def from_settings(cls, settings: Settings, type_label: str, p: int, **overrides) -> "CaseConfig":
        values = dict(
            type_label=type_label,
            p=p,
            decomp_tables=list(settings.decomp_tables),
            tilting_tables=list(settings.tilting_tables),
            output_format=settings.output_format,
            builtin_overrides=settings.builtin_overrides,
            enumeration_limit=settings.enumeration_limit,
            weight_spaces=settings.weight_spaces,
            data_root=settings.data_root,
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values).validate()
