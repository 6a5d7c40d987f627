from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Optional

from .config import DEFAULT_DATA_ROOT
from .logging_config import get_logger

logger = get_logger("tiltver.data")


@dataclass(frozen=True, slots=True)
class PackLine:
    source: str
    number: int
    text: str


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise
    except OSError as exc:
        raise OSError(f"Failed reading data pack: {path}") from exc


@lru_cache(maxsize=64)
def _read_lines_cached(path: str) -> tuple[PackLine, ...]:
    text = _read_text(Path(path))
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append(PackLine(source=path, number=number, text=stripped))
    logger.debug(f"Read {len(lines)} data lines from {path}")
    return tuple(lines)


def read_pack_lines(path: Path, *, refresh: bool = False) -> tuple[PackLine, ...]:
    """Non-blank, comment-stripped lines of a line-oriented pack, with line numbers."""
    if refresh:
        _read_lines_cached.cache_clear()
    return _read_lines_cached(str(Path(path).resolve()))


def builtin_data_path(*parts: str, data_root: Optional[Path] = None) -> Path:
    return (data_root or DEFAULT_DATA_ROOT).joinpath(*parts)


def builtin_decomp_packs(data_root: Optional[Path] = None) -> list[Path]:
    folder = builtin_data_path("decomp", data_root=data_root)
    if not folder.is_dir():
        logger.debug(f"No built-in decomposition packs under {folder}")
        return []
    return sorted(folder.glob("*.txt"))
