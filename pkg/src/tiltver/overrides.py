"""Loader for decomposition-number override files.

One line per composition factor::

    G2 7 : nabla=2,0 : factor=0,0 mult=1

Lines for another (type, p) are skipped; anything that does not parse is an error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Union

from .datapacks import builtin_decomp_packs, read_pack_lines
from .errors import LinkageViolation, MalformedOverride, UnsupportedType
from .linkage import AlcoveContext, is_strongly_linked
from .logging_config import get_logger
from .rootdata import Weight, format_weight, parse_type_label, parse_weight

logger = get_logger("tiltver.data")

_LINE = re.compile(
    r"^(?P<type>[A-Za-z]\d+)\s+(?P<p>\d+)\s*:\s*nabla=(?P<nabla>-?\d+(?:,-?\d+)*)\s*:"
    r"\s*factor=(?P<factor>-?\d+(?:,-?\d+)*)\s+mult=(?P<mult>\d+)$"
)


@dataclass
class DecompTable:
    """Multiplicities [nabla(lambda) : L(mu)] for one (type, p)."""

    type_label: str
    p: int
    entries: dict[Weight, dict[Weight, int]] = field(default_factory=dict)
    provenance: dict[Weight, str] = field(default_factory=dict)

    def __contains__(self, weight: object) -> bool:
        return weight in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, weight: Weight) -> Optional[dict[Weight, int]]:
        key = tuple(weight)
        row = self.entries.get(key)
        if row is None:
            return None
        return {**row, key: 1}

    def add(self, nabla: Weight, factor: Weight, mult: int, provenance: str) -> None:
        row = self.entries.setdefault(nabla, {})
        previous = row.get(factor)
        if previous is not None and previous != mult:
            raise MalformedOverride(
                f"conflicting multiplicities {previous} and {mult} for "
                f"[nabla({format_weight(nabla)}) : L({format_weight(factor)})]"
            )
        row[factor] = mult
        self.provenance[nabla] = provenance

    def merge(self, other: "DecompTable") -> "DecompTable":
        """Rows of ``other`` replace rows of this table with the same highest weight."""
        for nabla, row in other.entries.items():
            if nabla in self.entries:
                logger.info(
                    f"Decomposition row for nabla({format_weight(nabla)}) from {other.provenance[nabla]} "
                    f"replaces {self.provenance[nabla]}"
                )
            self.entries[nabla] = dict(row)
            self.provenance[nabla] = other.provenance[nabla]
        return self


def _parse_into(table: DecompTable, source: Path, ctx: AlcoveContext, provenance: str) -> None:
    rank = ctx.datum.rank
    for line in read_pack_lines(source):
        match = _LINE.match(line.text)
        if match is None:
            raise MalformedOverride(f"cannot parse {line.text!r}", line.source, line.number)
        try:
            family, type_rank = parse_type_label(match["type"])
        except UnsupportedType as exc:
            raise MalformedOverride(str(exc), line.source, line.number) from exc
        if f"{family}{type_rank}" != table.type_label or int(match["p"]) != table.p:
            continue
        try:
            nabla = parse_weight(match["nabla"], rank)
            factor = parse_weight(match["factor"], rank)
        except ValueError as exc:
            raise MalformedOverride(str(exc), line.source, line.number) from exc
        mult = int(match["mult"])
        if not ctx.datum.is_dominant(nabla) or not ctx.datum.is_dominant(factor):
            raise MalformedOverride("weights must be dominant", line.source, line.number)
        if mult < 1:
            raise MalformedOverride("multiplicities must be positive", line.source, line.number)
        if factor == nabla and mult != 1:
            raise MalformedOverride(
                f"[nabla({format_weight(nabla)}) : L({format_weight(nabla)})] must be 1, got {mult}",
                line.source,
                line.number,
            )
        if not is_strongly_linked(factor, nabla, ctx):
            raise LinkageViolation(
                f"{line.source}:{line.number}: L({format_weight(factor)}) cannot be a "
                f"composition factor of nabla({format_weight(nabla)}) at p={ctx.p}"
            )
        try:
            table.add(nabla, factor, mult, provenance)
        except MalformedOverride as exc:
            raise MalformedOverride(str(exc), line.source, line.number) from exc


def load_decomp_overrides(
    sources: Union[Path, str, Iterable[Union[Path, str]], None],
    ctx: AlcoveContext,
    *,
    include_builtin: bool = False,
    data_root: Optional[Path] = None,
) -> DecompTable:
    """Build the decomposition table for ``ctx`` from override files.

    Built-in packs are read first when requested; rows from explicit files
    replace built-in rows for the same highest weight.
    """
    table = DecompTable(type_label=ctx.datum.label, p=ctx.p)
    if include_builtin:
        for pack in builtin_decomp_packs(data_root):
            builtin = DecompTable(type_label=ctx.datum.label, p=ctx.p)
            _parse_into(builtin, pack, ctx, f"builtin:{pack.name}")
            table.merge(builtin)

    if sources is None:
        paths: list[Path] = []
    elif isinstance(sources, (str, Path)):
        paths = [Path(sources)]
    else:
        paths = [Path(s) for s in sources]

    for path in paths:
        loaded = DecompTable(type_label=ctx.datum.label, p=ctx.p)
        _parse_into(loaded, path, ctx, f"override:{path.name}")
        table.merge(loaded)
        logger.info(f"Loaded {len(loaded)} decomposition rows for {ctx.datum.label} p={ctx.p} from {path}")
    return table
