"""Runs per-weight work items one at a time and captures their failures."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Optional

from ..logging_config import get_logger


@dataclass
class SweepResult:
    item_id: str
    success: bool
    value: Any = None
    error: Optional[str] = None
    duration_seconds: float = 0.0


class SweepRunner:
    """Sequential sweep over independent work items."""

    def __init__(self, name: str) -> None:
        self.name = name
        self.logger = get_logger("tiltver.verify")

    def run_item(self, item_id: str, work: Callable[[], Any]) -> SweepResult:
        """Execute a single work item."""
        self.logger.debug(f"Running {self.name} item {item_id}")
        start = time.perf_counter()
        try:
            value = work()
        except Exception as e:
            self.logger.error(f"{self.name} item {item_id} failed: {e}", exc_info=True)
            return SweepResult(
                item_id=item_id,
                success=False,
                error=f"{type(e).__name__}: {e}",
                duration_seconds=time.perf_counter() - start,
            )
        return SweepResult(
            item_id=item_id,
            success=True,
            value=value,
            duration_seconds=time.perf_counter() - start,
        )

    def run_all(self, items: Iterable[tuple[str, Callable[[], Any]]]) -> list[SweepResult]:
        results = [self.run_item(item_id, work) for item_id, work in items]
        successful = sum(1 for r in results if r.success)
        self.logger.info(f"{self.name} sweep complete: {successful}/{len(results)} items succeeded")
        return results
