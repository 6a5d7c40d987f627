"""Ingested tilting-character tables.

One line per Weyl-character summand::

    A2 2 : T=2,1 : chi=0,2 mult=1
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Union

from ..datapacks import read_pack_lines
from ..errors import MalformedOverride, UnsupportedType
from ..linkage import AlcoveContext
from ..logging_config import get_logger
from ..rootdata import Weight, format_weight, parse_type_label, parse_weight

logger = get_logger("tiltver.data")

_LINE = re.compile(
    r"^(?P<type>[A-Za-z]\d+)\s+(?P<p>\d+)\s*:\s*T=(?P<top>-?\d+(?:,-?\d+)*)\s*:"
    r"\s*chi=(?P<chi>-?\d+(?:,-?\d+)*)\s+mult=(?P<mult>\d+)$"
)


@dataclass
class TiltingTable:
    type_label: str
    p: int
    entries: dict[Weight, dict[Weight, int]] = field(default_factory=dict)
    provenance: dict[Weight, str] = field(default_factory=dict)

    def __contains__(self, weight: object) -> bool:
        return weight in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, weight: Weight) -> Optional[dict[Weight, int]]:
        row = self.entries.get(tuple(weight))
        return dict(row) if row is not None else None

    def add(self, top: Weight, chi: Weight, mult: int, provenance: str) -> None:
        row = self.entries.setdefault(top, {})
        if chi in row and row[chi] != mult:
            raise MalformedOverride(
                f"conflicting multiplicities {row[chi]} and {mult} for "
                f"[T({format_weight(top)}) : nabla({format_weight(chi)})]"
            )
        row[chi] = mult
        self.provenance[top] = provenance

    def discard(self, weight: Weight) -> None:
        self.entries.pop(weight, None)
        self.provenance.pop(weight, None)


def load_tilting_table(
    sources: Union[Path, str, Iterable[Union[Path, str]], None], ctx: AlcoveContext
) -> TiltingTable:
    table = TiltingTable(type_label=ctx.datum.label, p=ctx.p)
    if sources is None:
        return table
    paths = [Path(sources)] if isinstance(sources, (str, Path)) else [Path(s) for s in sources]
    rank = ctx.datum.rank
    for path in paths:
        before = len(table)
        for line in read_pack_lines(path):
            match = _LINE.match(line.text)
            if match is None:
                raise MalformedOverride(f"cannot parse {line.text!r}", line.source, line.number)
            try:
                family, type_rank = parse_type_label(match["type"])
                top = parse_weight(match["top"], rank) if f"{family}{type_rank}" == table.type_label else None
                chi = parse_weight(match["chi"], rank) if top is not None else None
            except (UnsupportedType, ValueError) as exc:
                raise MalformedOverride(str(exc), line.source, line.number) from exc
            if top is None or chi is None or int(match["p"]) != table.p:
                continue
            mult = int(match["mult"])
            if mult < 1:
                raise MalformedOverride("multiplicities must be positive", line.source, line.number)
            if not ctx.datum.is_dominant(top) or not ctx.datum.is_dominant(chi):
                raise MalformedOverride("weights must be dominant", line.source, line.number)
            try:
                table.add(top, chi, mult, f"ingested:{path.name}")
            except MalformedOverride as exc:
                raise MalformedOverride(str(exc), line.source, line.number) from exc
        logger.info(f"Loaded {len(table) - before} tilting characters for {table.type_label} p={table.p} from {path}")
    return table
