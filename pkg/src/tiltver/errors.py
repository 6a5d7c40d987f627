"""Exception hierarchy for tiltver."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence


def _fmt(weight: Sequence[int]) -> str:
    return ",".join(str(x) for x in weight)


class TiltverError(Exception):
    """Base class for every error raised by the engine."""


class ConfigurationError(TiltverError):
    """Bad settings, case configuration or command-line input."""


class UnsupportedType(TiltverError):
    """Root system label or rank outside the supported finite types."""


class DatumMismatch(TiltverError):
    """Two characters built over different root data were combined."""


class NotDominant(TiltverError):
    def __init__(self, weight: Sequence[int], what: str = "weight") -> None:
        self.weight = tuple(weight)
        super().__init__(f"{what} {_fmt(weight)} is not dominant")


class NotDivisible(TiltverError):
    """Exact division left a nonzero remainder."""


class NotInvariant(TiltverError):
    """A character expected to be Weyl-invariant is not."""


class Underdetermined(TiltverError):
    def __init__(self, weight: Sequence[int], ambiguous: Iterable[Sequence[int]]) -> None:
        self.weight = tuple(weight)
        self.ambiguous = [tuple(w) for w in ambiguous]
        listed = "; ".join(_fmt(w) for w in self.ambiguous)
        super().__init__(
            f"decomposition of nabla({_fmt(weight)}) is not pinned down by the sum formula; "
            f"supply an override for: {listed}"
        )


class MalformedOverride(TiltverError):
    def __init__(self, message: str, source: Optional[str] = None, line: Optional[int] = None):
        self.source = source
        self.line = line
        where = ""
        if source is not None:
            where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(f"{where}{message}")


class LinkageViolation(TiltverError):
    """Data places a weight outside the strong linkage class it must lie in."""


class NegativeMultiplicity(TiltverError):
    """An elimination produced a negative multiplicity for a module character."""


class TiltingDataMissing(TiltverError):
    def __init__(self, weight: Sequence[int], hint: str) -> None:
        self.weight = tuple(weight)
        self.hint = hint
        super().__init__(f"no tilting character for T({_fmt(weight)}): {hint}")
