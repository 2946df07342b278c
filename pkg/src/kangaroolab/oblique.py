"""Oblique and hybrid polynomials.

A homogeneous ``P = y^r g(y)`` with ``deg g = k`` is oblique when its
translate ``P(y + t*y_main)`` has order at least ``k + 1`` in the non-main
variables once the p-th power monomials are deleted, and ``P`` carries no
p-th power factor up to addition of p-th power monomials.  For surfaces
there are two closed forms (a binomial "hybrid" sum and an integral), and in
any dimension a jet construction through the dehomogenized polynomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .fpoly import (
    INFINITY,
    FieldElement,
    Poly,
    binom_residue,
    delete_c_power_monomials,
    divide_exact,
    format_factored,
    inverse_series,
    order,
    pow_mod_inverse,
    truncate_jet,
)
from .univariate import max_multiplicity

SURFACE_VARS = ("y", "z")


class MohCeilingError(AssertionError):
    """The translated order exceeded k + 1, which Moh's bound forbids."""


class Disqualified(ValueError):
    """The polynomial has a p-th power factor and cannot be oblique."""


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ObliqueParams:
    p: int
    r: tuple[int, ...]
    k: int
    t: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", tuple(self.r))
        if self.t is not None:
            t = tuple(self.t)
            if len(t) != len(self.r) or t[0] != 0 or any(a % self.p == 0 for a in t[1:]):
                raise ValueError("t must look like (0, t_l, ..., t_1) with nonzero t_i")
            object.__setattr__(self, "t", t)

    @property
    def admissible(self) -> bool:
        from .kangaroo import condition1, condition2
        return condition1(self.r, self.k, self.p) and condition2(self.r, self.p)


# ---------------------------------------------------------------------------
# closed forms for surfaces

def hybrid(r: int, k: int, p: int, vars: Sequence[str] = ("y", "w")) -> Poly:
    """``H_r^k(y, w) = sum_i C(k+r, i+r) y^i w^(k-i)``."""
    terms = {}
    for i in range(k + 1):
        c = binom_residue(k + r, i + r, p)
        if c:
            terms[(i, k - i)] = c
    return Poly(p, vars, terms)


def hybrid_oblique(r: int, s: int, k: int, t: int, p: int) -> Poly:
    """``y^r z^s H_r^k(y, t z - y)`` in the variables (y, z)."""
    if t % p == 0:
        raise ValueError("t must be nonzero in F_p")
    y = Poly.var("y", p, SURFACE_VARS)
    z = Poly.var("z", p, SURFACE_VARS)
    H = hybrid(r, k, p, SURFACE_VARS)
    return Poly.monomial((r, s), p, SURFACE_VARS) * H.substitute({"y": y, "z": z.scale(t) - y})


def hybrid_is_degenerate(r: int, k: int, p: int) -> bool:
    """The hybrid form collapses to a p-th power exactly when C(k+r, k+1) = 0 mod p."""
    return binom_residue(k + r, k + 1, p) == 0


def integral_oblique(s: int, r: int, k: int, t: int, p: int) -> Poly:
    """``z^s * integral of y^(r-1) (y - t z)^k dy``, dropping the terms with p | r+i."""
    if t % p == 0:
        raise ValueError("t must be nonzero in F_p")
    terms = {}
    for i in range(k + 1):
        if (r + i) % p == 0:
            continue
        c = binom_residue(k, i, p) * pow(-t, k - i, p) * pow_mod_inverse(r + i, p) % p
        if c:
            terms[(r + i, s + k - i)] = c
    return Poly(p, SURFACE_VARS, terms)


def wagner_scalar(r: int, k: int, p: int) -> FieldElement:
    """``(-1)^k C(k+r, k+1) (k+1)`` mod p."""
    v = binom_residue(k + r, k + 1, p) * (k + 1) % p
    return FieldElement(p, -v if k % 2 else v)


# ---------------------------------------------------------------------------
# recognition

def pth_power_factor_test(P: Poly, p: int) -> bool:
    """True when the non-monomial part of a bivariate homogeneous P has a factor of multiplicity >= p."""
    if len(P.vars) != 2:
        raise NotImplementedError("p-th power factor detection is implemented for two variables only")
    if P.is_zero() or not P.is_homogeneous():
        raise ValueError("P must be a nonzero homogeneous polynomial")
    g = divide_exact(P, P.monomial_content())
    # g has no factor y_main, so setting the first variable to 1 loses nothing
    dense = [0] * (g.degree() + 1)
    for (a, b), c in g.items():
        dense[b] = c
    while dense and dense[-1] == 0:
        dense.pop()
    return max_multiplicity(dense, p) >= p


def translate(P: Poly, main: str, t: Mapping[str, int] | None = None) -> Poly:
    """``P(y + t*y_main)``; t defaults to 1 on every non-main variable."""
    y = Poly.var(main, P.p, P.vars)
    images = {}
    for v in P.vars:
        tv = 1 if t is None else t.get(v, 0)
        images[v] = Poly.var(v, P.p, P.vars) + y.scale(tv) if v != main else y
    return P.substitute(images)


def oblique_order(P: Poly, main: str, t: Mapping[str, int] | None = None) -> int | float:
    """Order of the translate of P modulo p-th power monomials in the non-main variables."""
    rest, _ = delete_c_power_monomials(translate(P, main, t), P.p)
    others = [v for v in P.vars if v != main]
    return order(rest, others)


def power_monomial_shifts(P: Poly, r: Sequence[int]) -> list[tuple[int, ...]]:
    """p-th power monomials of degree deg P divisible by y^r."""
    d, p = P.degree(), P.p
    if d % p:
        return []
    out = []
    for b in _compositions(d // p, len(P.vars)):
        e = tuple(p * a for a in b)
        if all(x >= y for x, y in zip(e, r)):
            out.append(e)
    return out


def class_admits_factor_free(P: Poly, r: Sequence[int]) -> bool:
    """Some P + (p-th power monomials divisible by y^r) has no p-th power factor."""
    p = P.p
    if delete_c_power_monomials(P, p)[0].is_zero():
        return False
    shifts = power_monomial_shifts(P, r)
    for coeffs in itertools.product(range(p), repeat=len(shifts)):
        Q = P + Poly(p, P.vars, {e: c for e, c in zip(shifts, coeffs) if c})
        if not Q.is_zero() and not pth_power_factor_test(Q, p):
            return True
    return False


def split_exceptional(P: Poly, r: Sequence[int] | None) -> tuple[tuple[int, ...], int]:
    if P.is_zero() or not P.is_homogeneous():
        raise ValueError("P must be a nonzero homogeneous polynomial")
    r = tuple(r) if r is not None else P.monomial_content()
    divide_exact(P, r)
    return r, P.degree() - sum(r)


def obliqueness_test(P: Poly, p: int | None = None, t: Mapping[str, int] | None = None,
                     main: str | None = None, r: Sequence[int] | None = None, *,
                     literal_factor_check: bool = False) -> bool:
    """Decide whether ``P = y^r g`` is oblique at the translation ``t`` (default all ones).

    ``main`` is the untranslated variable (default: the first one).  The
    factor condition is read up to addition of p-th power monomials
    divisible by y^r; ``literal_factor_check`` applies it to P itself.
    Raises ``Disqualified`` when the factor condition fails.
    """
    if p is not None and p != P.p:
        raise ValueError(f"P lives over F_{P.p}, not F_{p}")
    main = main or P.vars[0]
    r, k = split_exceptional(P, r)
    if len(P.vars) == 2:
        bad = pth_power_factor_test(P, P.p) if literal_factor_check else not class_admits_factor_free(P, r)
        if bad:
            raise Disqualified(f"{P} has a p-th power factor")
    elif delete_c_power_monomials(P, P.p)[0].is_zero():
        raise Disqualified(f"{P} is a p-th power")
    o = oblique_order(P, main, t)
    generic = t is None or all(t.get(v, 0) % P.p for v in P.vars if v != main)
    # the ceiling only applies off the coordinate hyperplanes
    if generic and o >= k + 2:
        raise MohCeilingError(f"translated order {o} of {P} exceeds k + 1 = {k + 1}")
    return o >= k + 1


# ---------------------------------------------------------------------------
# construction from a jet

def jet_construction(s: Sequence[int], k: int, v: Poly, p: int, r_m: int = 0,
                     main: str | None = None) -> Poly:
    """Oblique candidate from ``h(z + 1) = [(z + 1)^(-s) v(z)^p]_k``.

    The result is ``y_main^(r_m) * homogenization of z^s h(z)`` of degree
    ``r_m + |s| + k``; ``main`` defaults to ``y{l+1}``.
    """
    if v.is_zero():
        raise ValueError("v must be nonzero")
    if v.p != p:
        raise ValueError("v must live over F_p")
    zvars = v.vars
    if len(s) != len(zvars):
        raise ValueError("s needs one entry per z-variable")
    one = Poly.const(1, p, zvars)
    base = one
    for name, a in zip(zvars, s):
        base = base * (Poly.var(name, p, zvars) + 1) ** a
    jet = truncate_jet(inverse_series(base, k) * v ** p, k)
    h = jet.substitute({name: Poly.var(name, p, zvars) - 1 for name in zvars})
    Q = Poly.monomial(tuple(s), p, zvars) * h
    main = main or f"y{len(zvars) + 1}"
    deg = sum(s) + k
    out = {}
    for e, c in Q.items():
        out[(r_m + deg - sum(e),) + e] = c
    return Poly(p, (main,) + zvars, out)


# ---------------------------------------------------------------------------
# exhaustive classification

@dataclass(frozen=True)
class ObliqueClass:
    representative: Poly
    members: int
    admitted: bool

    def __str__(self) -> str:
        return format_factored(self.representative)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for a in range(total, -1, -1):
        for rest in _compositions(total - a, parts - 1):
            yield (a,) + rest


def class_key(P: Poly) -> Poly:
    """Canonical member of P's class: p-th power monomials deleted, leading coefficient 1."""
    rest, _ = delete_c_power_monomials(P, P.p)
    if rest.is_zero():
        return rest
    _, lead = rest.leading_term()
    return rest.scale(pow_mod_inverse(lead, P.p))


def uniqueness_search(params: ObliqueParams, m: int | None = None, vars: Sequence[str] | None = None,
                      budget: int = 1 << 20) -> list[ObliqueClass]:
    """All oblique classes with parameters ``p, r, k`` by exhaustive enumeration of g.

    The main variable is the first one; ``t`` comes from ``params`` (default all
    ones).  Classes are taken modulo p-th power monomials and scalars; a class
    is returned when some member is free of p-th power factors.
    """
    p, r, k = params.p, params.r, params.k
    m = m if m is not None else len(r)
    if len(r) != m:
        raise ValueError("r must have m entries")
    vars = tuple(vars) if vars is not None else (SURFACE_VARS if m == 2 else tuple(f"y{m - i}" for i in range(m)))
    main = vars[0]
    t = None if params.t is None else dict(zip(vars, params.t))
    monos = list(_compositions(k, m))
    if p ** len(monos) > budget:
        raise BudgetExceeded(f"{p}^{len(monos)} candidates exceed the budget {budget}")
    yr = Poly.monomial(r, p, vars)
    found: dict[Poly, int] = {}
    for coeffs in itertools.product(range(p), repeat=len(monos)):
        if not any(coeffs):
            continue
        g = Poly(p, vars, {e: c for e, c in zip(monos, coeffs) if c})
        P = yr * g
        key = class_key(P)
        if key.is_zero():
            continue
        if oblique_order(P, main, t) >= k + 1:
            found[key] = found.get(key, 0) + 1
    out = []
    for key in sorted(found, key=lambda q: [(e, c) for e, c in q.sorted_terms()]):
        if len(vars) == 2:
            admitted = class_admits_factor_free(key, r)
        else:
            admitted = True
        if admitted:
            out.append(ObliqueClass(key, found[key], admitted))
    for cls in out:
        o = oblique_order(cls.representative, main, t)
        if o >= k + 2 and o != INFINITY:
            raise MohCeilingError(f"translated order {o} of {cls.representative} exceeds k + 1")
    return out


@dataclass(frozen=True)
class AtlasRecord:
    p: int
    r: tuple[int, int]
    k: int
    classes: int
    representative: str
    degenerate: bool
    wagner: int

    def line(self) -> str:
        return (f"p={self.p} r={self.r[0]},{self.r[1]} k={self.k} classes={self.classes} "
                f"representative={self.representative} hybrid_degenerate={str(self.degenerate).lower()} "
                f"wagner={self.wagner}")


def atlas(p: int, rmax: int, kmax: int) -> list[AtlasRecord]:
    """Surface oblique classes for every r = (r_y, r_z) <= rmax and k <= kmax.

    The main variable is z, matching the closed forms.
    """
    out = []
    for ry in range(rmax + 1):
        for rz in range(rmax + 1):
            for k in range(kmax + 1):
                params = ObliqueParams(p, (rz, ry), k)
                classes = uniqueness_search(params, 2, ("z", "y"))
                rep = "-" if not classes else format_factored(classes[0].representative.with_vars(SURFACE_VARS))
                out.append(AtlasRecord(p, (ry, rz), k, len(classes), rep,
                                       hybrid_is_degenerate(ry, k, p), int(wagner_scalar(ry, k, p))))
    return out
