"""Exception types shared across the package."""


class PureILError(Exception):
    """Base class for all domain errors raised by this package."""


class LevelMismatchError(PureILError):
    """Two objects live on languages with different predicate counts."""


class CapExceededError(PureILError):
    """A configured resource cap would be exceeded by an exact computation.

    Raised instead of silently truncating: a "pass" from a checker must mean
    the stated window was searched exhaustively.
    """


class FormulaSyntaxError(PureILError):
    """Malformed formula text.  `position` is the 1-based offset of the error."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class NotPredicateSymmetricError(PureILError):
    """A simplex point is not invariant under predicate renaming.

    `atom_pair` holds 1-based indices of two atoms with equal negation count
    but different weights.
    """

    def __init__(self, atom_pair: tuple[int, int], values: tuple):
        i, j = atom_pair
        super().__init__(
            f"entries for atoms {i} and {j} differ ({values[0]} vs {values[1]}) "
            f"but both atoms have the same negation count"
        )
        self.atom_pair = atom_pair
        self.values = values
