"""Block-size regimes shared by every module."""

from __future__ import annotations

import math
from dataclasses import dataclass

CLASSICAL = "classical"
RESTRICTED = "restricted"
ASSOCIATED = "associated"

KINDS = (CLASSICAL, RESTRICTED, ASSOCIATED)


@dataclass(frozen=True)
class Variant:
    """Which set partitions are counted.

    ``restricted`` keeps partitions whose blocks have at most ``m`` elements,
    ``associated`` those whose blocks have at least ``m`` elements, and
    ``classical`` keeps all of them.
    """

    kind: str
    m: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown variant kind {self.kind!r}")
        if self.kind == CLASSICAL:
            if self.m is not None:
                raise ValueError("classical variant takes no m")
        elif not isinstance(self.m, int) or isinstance(self.m, bool) or self.m < 1:
            raise ValueError(f"{self.kind} variant needs an integer m >= 1, got {self.m!r}")

    @classmethod
    def classical(cls) -> Variant:
        return cls(CLASSICAL)

    @classmethod
    def restricted(cls, m: int) -> Variant:
        return cls(RESTRICTED, m)

    @classmethod
    def associated(cls, m: int) -> Variant:
        return cls(ASSOCIATED, m)

    @classmethod
    def parse(cls, kind: str, m: int | None = None) -> Variant:
        kind = kind.lower()
        if kind == CLASSICAL:
            return cls.classical()
        return cls(kind, m)

    @property
    def min_block(self) -> int:
        return self.m if self.kind == ASSOCIATED else 1

    @property
    def max_block(self) -> float:
        return self.m if self.kind == RESTRICTED else math.inf

    def __str__(self):
        if self.kind == CLASSICAL:
            return CLASSICAL
        return f"{self.kind}({self.m})"
