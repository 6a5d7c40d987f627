"""Ordered registry of tilting-character strategies."""

from __future__ import annotations

from typing import Any, Iterator, Optional

from ..logging_config import get_logger
from .base import TiltingStrategy


class StrategyRegistry:
    """Strategies are tried in registration order."""

    def __init__(self) -> None:
        self.strategies: dict[str, TiltingStrategy] = {}
        self.logger = get_logger("tiltver.engine")

    def register(self, strategy: TiltingStrategy) -> None:
        strategy_id = strategy.strategy_id
        if strategy_id in self.strategies:
            self.logger.warning(f"Strategy {strategy_id} already registered, replacing")
        self.strategies[strategy_id] = strategy
        self.logger.debug(f"Registered tilting strategy {strategy_id}")

    def unregister(self, strategy_id: str) -> bool:
        if strategy_id in self.strategies:
            del self.strategies[strategy_id]
            self.logger.debug(f"Unregistered tilting strategy {strategy_id}")
            return True
        return False

    def get_strategy(self, strategy_id: str) -> Optional[TiltingStrategy]:
        return self.strategies.get(strategy_id)

    def list_strategies(self) -> list[dict[str, Any]]:
        return [strategy.get_metadata() for strategy in self.strategies.values()]

    def __iter__(self) -> Iterator[TiltingStrategy]:
        return iter(list(self.strategies.values()))

    def __len__(self) -> int:
        return len(self.strategies)
