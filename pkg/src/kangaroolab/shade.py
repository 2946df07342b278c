"""Coefficient-ideal orders and the shade of purely inseparable forms.

For ``f = x^c + F(y)`` with ``c = p^e`` the only coordinate changes that can
raise the order of the coefficient ideal are ``x -> x + h(y)``; they shift
``F`` by ``h^c``.  Over a prime field every residue is its own ``c``-th root,
so the maximum is reached by dropping the ``c``-th power monomials of ``F``
that sit below the order of the rest.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .fpoly import INFINITY, Poly, divide_exact, order, strip_c_power_monomials

if TYPE_CHECKING:
    from .blowup import InseparableForm


@dataclass(frozen=True)
class ShadeResult:
    shade: int | float
    residual: Poly
    witness: Poly
    stripped: Poly

    @property
    def bold_regular(self) -> bool:
        return self.shade == INFINITY

    def __str__(self) -> str:
        return "bold-regular" if self.bold_regular else str(self.shade)


class Jump(str, enum.Enum):
    DROP = "drop"
    CONSTANT = "constant"
    KANGAROO = "kangaroo-jump"


def coeff_order(f: Poly, x: str, o: int) -> int | float:
    """Order at 0 of the coefficient ideal of ``f`` in the hypersurface ``x = 0``.

    With ``f = sum_i a_i(y) x^i`` this is ``min_{i<o} o!/(o-i) * ord a_i``.
    """
    if o <= 0:
        raise ValueError("the order o must be positive")
    ix = f.index(x)
    best: int | float = INFINITY
    lowest: dict[int, int] = {}
    for e, _ in f.items():
        i = e[ix]
        if i < o:
            d = sum(e) - i
            if i not in lowest or d < lowest[i]:
                lowest[i] = d
    fact = math.factorial(o)
    for i, d in lowest.items():
        best = min(best, fact // (o - i) * d)
    return best


def shade(form: "InseparableForm") -> ShadeResult:
    stripped, witness = strip_c_power_monomials(form.F, form.c)
    if stripped.is_zero():
        return ShadeResult(INFINITY, stripped, witness, stripped)
    residual = divide_exact(stripped, form.r)
    return ShadeResult(order(residual), residual, witness, stripped)


def shade_jump(before: tuple[int, int | float], after: tuple[int, int | float]) -> Jump:
    """Classify one blowup from ``(order, shade)`` before and after."""
    order_before, shade_before = before
    order_after, shade_after = after
    if order_after < order_before:
        return Jump.DROP
    if order_after > order_before:
        raise ValueError("the order cannot increase under a permissible blowup")
    # bold regular after the step: locally resolved
    if shade_after == INFINITY:
        return Jump.DROP
    if shade_after > shade_before:
        return Jump.KANGAROO
    if shade_after < shade_before:
        return Jump.DROP
    return Jump.CONSTANT
