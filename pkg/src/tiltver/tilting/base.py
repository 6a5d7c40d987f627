"""Base class for all tilting-character strategies."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Optional

from ..rootdata import Weight


class TiltingStrategy(ABC):
    """One way of producing ch T(nu) as a Weyl-character expansion."""

    @property
    @abstractmethod
    def strategy_id(self) -> str:
        """Unique identifier for this strategy."""

    @property
    @abstractmethod
    def provenance(self) -> str:
        """Provenance tag attached to characters this strategy produces."""

    @property
    def independent(self) -> bool:
        """Whether results are derived without reference to injective hulls."""
        return True

    @abstractmethod
    def resolve(self, weight: Weight) -> Optional[dict[Weight, int]]:
        """Return the chi-expansion of ch T(weight), or None when not applicable."""

    def get_metadata(self) -> dict[str, Any]:
        return {
            "strategy_id": self.strategy_id,
            "provenance": self.provenance,
            "independent": self.independent,
        }
