from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from src.app.errors import InvalidInputError


CLOSED_FORMS = ("A_linear", "A1_top", "D_top")


def catalan(n: int) -> int:
    if n < 0:
        raise InvalidInputError(f"Catalan number needs n >= 0, got {n}")
    return comb(2 * n, n) // (n + 1)


def _exact(value: Fraction, name: str) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"{name} evaluated to the non-integer {value}")
    return value.numerator


def closed_form(family: str, n: int, s: int | None = None) -> int:
    """Exact counts of support tau-tilting modules from the closed formulas.

    ``A_linear(n, s)``: support-rank ``s`` pairs of the linear ``A_n`` quiver,
    ``(n-s+1)/(n+1) * C(n+s, s)``. ``A1_top(n)``: tau-tilting modules of the
    linear quiver with one zero relation, ``(5n-6)(2n-4)! / ((n-2)! n!)``.
    ``D_top(n)``: tau-tilting modules of type D, ``(3n-4)/(2n-2) * C(2n-2, n-2)``.
    """
    if family == "A_linear":
        if s is None:
            raise InvalidInputError("A_linear needs a support-rank s")
        if n < 0 or not 0 <= s <= n:
            raise InvalidInputError(f"A_linear needs 0 <= s <= n, got n={n}, s={s}")
        return _exact(Fraction(n - s + 1, n + 1) * comb(n + s, s), family)
    if s is not None:
        raise InvalidInputError(f"{family} takes no support-rank")
    if family == "A1_top":
        if n < 2:
            raise InvalidInputError(f"A1_top needs n >= 2, got {n}")
        return _exact(Fraction((5 * n - 6) * factorial(2 * n - 4), factorial(n - 2) * factorial(n)), family)
    if family == "D_top":
        if n < 3:
            raise InvalidInputError(f"D_top needs n >= 3, got {n}")
        return _exact(Fraction(3 * n - 4, 2 * n - 2) * comb(2 * n - 2, n - 2), family)
    raise InvalidInputError(f"unknown closed form {family!r}; expected one of {', '.join(CLOSED_FORMS)}")
