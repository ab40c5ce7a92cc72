"""The three-valued boolean domain {Y, N, ⊥}."""

from __future__ import annotations

from enum import IntEnum


class BoolVal(IntEnum):
    """Truth values ordered with ⊥ below the incomparable Y and N."""

    BOT = 0
    Y = 1
    N = 2

    def __str__(self) -> str:
        return _SYMBOLS[self]

    def meet(self, other: "BoolVal") -> "BoolVal":
        return self if self == other else BoolVal.BOT

    def leq(self, other: "BoolVal") -> bool:
        return self == BoolVal.BOT or self == other

    def bar(self) -> "BoolVal":
        return _BAR[self]

    @classmethod
    def parse(cls, text: str) -> "BoolVal":
        try:
            return _PARSE[text.strip()]
        except KeyError:
            raise ValueError(f"not a boolean-domain value: {text!r}") from None


_SYMBOLS = {BoolVal.BOT: "⊥", BoolVal.Y: "Y", BoolVal.N: "N"}
_BAR = {BoolVal.BOT: BoolVal.BOT, BoolVal.Y: BoolVal.N, BoolVal.N: BoolVal.Y}
_PARSE = {"⊥": BoolVal.BOT, "bot": BoolVal.BOT, "BOT": BoolVal.BOT, "Y": BoolVal.Y, "N": BoolVal.N}

# Plain-int tables for inner loops (indices are BoolVal values).
BAR_TABLE = (0, 2, 1)
MEET_TABLE = ((0, 0, 0), (0, 1, 0), (0, 0, 2))
LEQ_TABLE = ((True, True, True), (False, True, False), (False, False, True))
# x•Y = x, x•N = N, ⊥•⊥ = ⊥
BULLET_TABLE = ((0, 0, 2), (0, 1, 2), (2, 2, 2))


def bool_meet(u: BoolVal, v: BoolVal) -> BoolVal:
    return BoolVal(MEET_TABLE[u][v])


def bullet(u: BoolVal, v: BoolVal) -> BoolVal:
    """The commutative monoid law with unit Y and absorbing N."""
    return BoolVal(BULLET_TABLE[u][v])
