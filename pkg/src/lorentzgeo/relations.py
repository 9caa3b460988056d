"""Causal relation labels for point pairs."""

from enum import Enum


class Relation(Enum):
    SAME = "same"
    CHRONO_FUTURE = "chronological-future"
    CHRONO_PAST = "chronological-past"
    NULL_FUTURE = "null-future"
    NULL_PAST = "null-past"
    SPACELIKE = "spacelike"

    @property
    def chronological(self) -> bool:
        return self in (Relation.CHRONO_FUTURE, Relation.CHRONO_PAST)

    @property
    def causal(self) -> bool:
        return self is not Relation.SPACELIKE

    @property
    def future_directed(self) -> bool:
        return self in (Relation.CHRONO_FUTURE, Relation.NULL_FUTURE)

    def reversed(self) -> "Relation":
        flip = {
            Relation.CHRONO_FUTURE: Relation.CHRONO_PAST,
            Relation.CHRONO_PAST: Relation.CHRONO_FUTURE,
            Relation.NULL_FUTURE: Relation.NULL_PAST,
            Relation.NULL_PAST: Relation.NULL_FUTURE,
        }
        return flip.get(self, self)
