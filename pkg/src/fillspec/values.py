"""Tagged extended reals.

Profile arithmetic needs +infinity as a first-class value (empty face set,
relator-free presentations) with the convention 1/inf == 0.  A float sentinel
would silently survive JSON round-trips and comparisons, so infinity is a tag.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=False)
class ExtendedValue:
    """A finite float or the infinity marker."""

    finite: float | None  # None encodes +infinity

    @staticmethod
    def of(x: float) -> "ExtendedValue":
        x = float(x)
        if x != x or x in (float("inf"), float("-inf")):
            raise ValueError("ExtendedValue.of requires a finite float")
        return ExtendedValue(x)

    @staticmethod
    def infinity() -> "ExtendedValue":
        return ExtendedValue(None)

    @property
    def is_infinite(self) -> bool:
        return self.finite is None

    def unwrap(self) -> float:
        if self.finite is None:
            raise ValueError("infinite value has no finite part")
        return self.finite

    def reciprocal(self) -> "ExtendedValue":
        if self.finite is None:
            return ExtendedValue.of(0.0)
        if self.finite == 0.0:
            return ExtendedValue.infinity()
        return ExtendedValue.of(1.0 / self.finite)

    def __float__(self) -> float:
        return float("inf") if self.finite is None else self.finite

    def __le__(self, other: "ExtendedValue | float") -> bool:
        return float(self) <= float(other)

    def __lt__(self, other: "ExtendedValue | float") -> bool:
        return float(self) < float(other)

    def __ge__(self, other: "ExtendedValue | float") -> bool:
        return float(self) >= float(other)

    def __gt__(self, other: "ExtendedValue | float") -> bool:
        return float(self) > float(other)

    def to_json(self) -> float | str:
        return "inf" if self.finite is None else self.finite

    @staticmethod
    def from_json(obj: object) -> "ExtendedValue":
        if obj == "inf":
            return ExtendedValue.infinity()
        if isinstance(obj, (int, float)):
            return ExtendedValue.of(float(obj))
        raise ValueError(f"not an extended value: {obj!r}")

    def __str__(self) -> str:
        return "inf" if self.finite is None else repr(self.finite)
