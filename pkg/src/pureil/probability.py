"""Probability functions on state descriptions, in exact rational arithmetic.

A function here is determined by its values on state descriptions: the empty
description gets 1, and extending a description by one constant splits its
value additively over the atoms.  Concrete classes:

* ``ProductFunction`` -- independent constants, value prod_i x_i^{n_i};
* ``SymmetrizedFunction`` -- the average of product functions over all
  predicate renamings, hence invariant under them;
* ``MixtureFunction`` -- finite convex combination with rational weights;
* ``RestrictedFunction`` -- a higher-level function marginalized down by
  summing over atom refinements.

All values are `fractions.Fraction`; evaluation is pure and memoized per
instance (idempotent cache writes, safe under concurrent reads).
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm

from .errors import LevelMismatchError, PureILError
from .formulas import QfFormula, mentioned_constants, satisfying_descriptions
from .language import (
    StateDescription,
    all_pred_permutations,
    refinement_indices,
)

ONE = Fraction(1)
ZERO = Fraction(0)

# Restriction enumerates 2^((r-q)*n) refinements per description.
MAX_LEVEL_DROP = 8
MAX_RESTRICT_CONSTANTS = 8


def _as_fraction_tuple(values) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class SimplexPoint:
    """A point of the 2^q-simplex: nonnegative rationals summing to 1."""

    q: int
    x: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", _as_fraction_tuple(self.x))
        if len(self.x) != 2 ** self.q:
            raise PureILError(f"need {2 ** self.q} entries at level {self.q}, got {len(self.x)}")
        if any(v < 0 for v in self.x):
            raise PureILError("simplex entries must be nonnegative")
        if sum(self.x) != 1:
            raise PureILError(f"simplex entries sum to {sum(self.x)}, not 1")


def uniform_point(q: int) -> SimplexPoint:
    return SimplexPoint(q, (Fraction(1, 2 ** q),) * 2 ** q)


class ProbabilityFunction:
    """Base class: a level and an exact value on every state description."""

    tag = "abstract"

    def __init__(self, q: int):
        self.q = q
        self._cache: dict[tuple[int, ...], Fraction] = {}

    def eval_sd(self, theta: StateDescription) -> Fraction:
        if theta.q != self.q:
            raise LevelMismatchError(
                f"description at level {theta.q}, function at level {self.q}"
            )
        return self._value(theta.h)

    def _value(self, h: tuple[int, ...]) -> Fraction:
        """Memoized value on a bare atom-index tuple (no level check)."""
        if not h:
            return ONE
        value = self._cache.get(h)
        if value is None:
            value = self._eval(h)
            self._cache[h] = value
        return value

    def _eval(self, h: tuple[int, ...]) -> Fraction:
        raise NotImplementedError

    def eval_sentence(self, phi: QfFormula, constants=None) -> Fraction:
        """Sum of eval_sd over the satisfying descriptions of phi.

        The window defaults to the constants mentioned in phi; widening it
        does not change the value.
        """
        if constants is None:
            constants = sorted(mentioned_constants(phi))
        models = satisfying_descriptions(phi, self.q, list(constants))
        return sum((self.eval_sd(theta) for theta in models), start=ZERO)


class _ConvexOfProducts(ProbabilityFunction):
    """Finite convex combination of product functions, stored explicitly.

    Values are computed as integer numerators over the fixed denominator
    weight_den * entry_den^n, reducing once at the end; the integer form is
    also what restriction sums over refinements.
    """

    def __init__(self, q: int, components: tuple[tuple[Fraction, tuple[Fraction, ...]], ...]):
        super().__init__(q)
        self.components = components
        entry_den = 1
        weight_den = 1
        for weight, x in components:
            weight_den = lcm(weight_den, weight.denominator)
            for v in x:
                entry_den = lcm(entry_den, v.denominator)
        self._entry_den = entry_den
        self._weight_den = weight_den
        self._scaled = tuple(
            (int(weight * weight_den), tuple(int(v * entry_den) for v in x))
            for weight, x in components
        )
        self._int_cache: dict[tuple[int, ...], int] = {}

    def _int_value(self, h: tuple[int, ...]) -> int:
        """Numerator of the value over denominator weight_den * entry_den^n."""
        total = self._int_cache.get(h)
        if total is None:
            total = 0
            for weight, x in self._scaled:
                term = weight
                for a in h:
                    term *= x[a - 1]
                    if not term:
                        break
                total += term
            self._int_cache[h] = total
        return total

    def _denominator(self, n: int) -> int:
        return self._weight_den * self._entry_den ** n

    def _eval(self, h: tuple[int, ...]) -> Fraction:
        return Fraction(self._int_value(h), self._denominator(len(h)))


class ProductFunction(_ConvexOfProducts):
    """Constants are independent draws from a fixed atom distribution."""

    tag = "product"

    def __init__(self, x: SimplexPoint):
        super().__init__(x.q, ((ONE, x.x),))
        self.x = x


class SymmetrizedFunction(_ConvexOfProducts):
    """Average of the product function over all q! predicate renamings."""

    tag = "symmetrized"

    def __init__(self, c: SimplexPoint):
        orbit: Counter[tuple[Fraction, ...]] = Counter()
        for sigma in all_pred_permutations(c.q):
            amap = sigma.atom_map()
            image = [ZERO] * len(c.x)
            for i, value in enumerate(c.x):
                image[amap[i] - 1] = value
            orbit[tuple(image)] += 1
        total = factorial(c.q)
        super().__init__(
            c.q,
            tuple((Fraction(count, total), x) for x, count in sorted(orbit.items())),
        )
        self.c = c


class MixtureFunction(ProbabilityFunction):
    """Finite mixture with rational weights summing to 1."""

    tag = "mixture"

    def __init__(self, parts: list[tuple[Fraction, ProbabilityFunction]]):
        parts = [(Fraction(w), f) for w, f in parts]
        if not parts:
            raise PureILError("a mixture needs at least one component")
        levels = {f.q for _, f in parts}
        if len(levels) != 1:
            raise LevelMismatchError(f"mixture components at mixed levels {sorted(levels)}")
        if any(w < 0 for w, _ in parts):
            raise PureILError("mixture weights must be nonnegative")
        total = sum(w for w, _ in parts)
        if total != 1:
            raise PureILError(f"mixture weights sum to {total}, not 1")
        super().__init__(levels.pop())
        self.parts = tuple(parts)

    def _eval(self, h: tuple[int, ...]) -> Fraction:
        return sum((w * f._value(h) for w, f in self.parts), start=ZERO)


class RestrictedFunction(ProbabilityFunction):
    """A level-r function viewed at level q < r via refinement sums."""

    tag = "restricted"

    def __init__(self, base: ProbabilityFunction, q: int):
        if q > base.q:
            raise PureILError(f"cannot restrict level {base.q} up to level {q}")
        if base.q - q > MAX_LEVEL_DROP:
            raise PureILError(f"level drop {base.q - q} exceeds cap {MAX_LEVEL_DROP}")
        super().__init__(q)
        self.base = base
        self._refine = refinement_indices(q, base.q)

    def _eval(self, h: tuple[int, ...]) -> Fraction:
        if len(h) > MAX_RESTRICT_CONSTANTS:
            raise PureILError(
                f"restriction evaluates {len(h)} constants, cap is {MAX_RESTRICT_CONSTANTS}"
            )
        refinements = itertools.product(*(self._refine[a - 1] for a in h))
        if isinstance(self.base, _ConvexOfProducts):
            # all refined tuples share one denominator: sum plain integers
            base_int = self.base._int_value
            return Fraction(
                sum(base_int(refined) for refined in refinements),
                self.base._denominator(len(h)),
            )
        total = ZERO
        base_value = self.base._value
        for refined in refinements:
            total += base_value(refined)
        return total


def product_function(x: SimplexPoint) -> ProductFunction:
    return ProductFunction(x)


def symmetrized(c: SimplexPoint) -> SymmetrizedFunction:
    return SymmetrizedFunction(c)


def restrict(w: ProbabilityFunction, q: int) -> ProbabilityFunction:
    """Marginalize `w` down to level q; q == w.q returns `w` itself."""
    if q > w.q:
        raise PureILError(f"target level {q} above function level {w.q}")
    if q == w.q:
        return w
    return RestrictedFunction(w, q)
