"""Sparse multivariate polynomials over a prime field F_p.

A polynomial is a map from exponent tuples to residues in ``[1, p)``; the
zero polynomial has no terms.  Variables are named and ordered, the order
fixes both the exponent layout and the printing order (graded lex).

    >>> f = parse("x^2 + y^3*z^3*(y^2+z^2)", 2)
    >>> str(f)
    'y^5*z^3+y^3*z^5+x^2'
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

Exponent = tuple[int, ...]

INFINITY = math.inf


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"modulus {p!r} is not a prime")


def p_power_exponent(c: int, p: int) -> int:
    """Return e with c == p**e, e >= 1; raise if c is not such a power."""
    if c < p:
        raise ValueError(f"{c} is not a positive power of {p}")
    e = 0
    n = c
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise ValueError(f"{c} is not a positive power of {p}")
    return e


@dataclass(frozen=True)
class FieldElement:
    """Residue class of ``value`` modulo the prime ``p``."""

    p: int
    value: int

    def __post_init__(self) -> None:
        _check_prime(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other: object) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ValueError("field elements over different primes")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> FieldElement:
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.p, self.value + v)

    __radd__ = __add__

    def __sub__(self, other: object) -> FieldElement:
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.p, self.value - v)

    def __rsub__(self, other: object) -> FieldElement:
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.p, v - self.value)

    def __mul__(self, other: object) -> FieldElement:
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.p, self.value * v)

    __rmul__ = __mul__

    def __neg__(self) -> FieldElement:
        return FieldElement(self.p, -self.value)

    def __pow__(self, n: int) -> FieldElement:
        if n < 0:
            return self.inverse() ** (-n)
        return FieldElement(self.p, pow(self.value, n, self.p))

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElement(self.p, pow(self.value, -1, self.p))

    def __truediv__(self, other: object) -> FieldElement:
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return self * FieldElement(self.p, v).inverse()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.value))

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"FieldElement({self.p}, {self.value})"

    def __str__(self) -> str:
        return str(self.value)


class PolyError(ValueError):
    """Modulus or variable mismatch between polynomials."""


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = "") -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


class DivisionError(ArithmeticError):
    def __init__(self, exponent: Exponent, message: str = "") -> None:
        super().__init__(message or f"term with exponent {exponent} is not divisible")
        self.exponent = exponent


def _grlex_key(exp: Exponent) -> tuple:
    return (-sum(exp), tuple(-a for a in exp))


class Poly:
    """Immutable sparse polynomial over F_p in the ordered variables ``vars``."""

    __slots__ = ("p", "vars", "_terms", "_hash")

    def __init__(self, p: int, vars: Sequence[str], terms: Mapping[Exponent, int] | None = None,
                 *, _trusted: bool = False) -> None:
        if not _trusted:
            _check_prime(p)
            vars = tuple(vars)
            if len(set(vars)) != len(vars):
                raise PolyError(f"duplicate variable names in {vars}")
            clean: dict[Exponent, int] = {}
            n = len(vars)
            for exp, coeff in (terms or {}).items():
                exp = tuple(int(a) for a in exp)
                if len(exp) != n:
                    raise PolyError(f"exponent {exp} does not match {n} variables")
                if any(a < 0 for a in exp):
                    raise PolyError(f"negative exponent {exp}")
                c = int(coeff) % p
                if c:
                    clean[exp] = (clean.get(exp, 0) + c) % p
                    if not clean[exp]:
                        del clean[exp]
            terms = clean
        self.p = p
        self.vars = vars
        self._terms = terms
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, p: int, vars: Sequence[str]) -> Poly:
        return cls(p, tuple(vars))

    @classmethod
    def const(cls, value: int, p: int, vars: Sequence[str]) -> Poly:
        vars = tuple(vars)
        return cls(p, vars, {(0,) * len(vars): value})

    @classmethod
    def var(cls, name: str, p: int, vars: Sequence[str]) -> Poly:
        vars = tuple(vars)
        if name not in vars:
            raise PolyError(f"unknown variable {name!r}")
        exp = tuple(1 if v == name else 0 for v in vars)
        return cls(p, vars, {exp: 1})

    @classmethod
    def monomial(cls, exp: Exponent, p: int, vars: Sequence[str], coeff: int = 1) -> Poly:
        return cls(p, tuple(vars), {tuple(exp): coeff})

    def _new(self, terms: dict[Exponent, int]) -> Poly:
        return Poly(self.p, self.vars, terms, _trusted=True)

    # basic access -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, int]:
        return self._terms

    def items(self) -> Iterator[tuple[Exponent, int]]:
        return iter(self._terms.items())

    def coeff(self, exp: Exponent) -> int:
        return self._terms.get(tuple(exp), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.index(name)
        return max((e[i] for e in self._terms), default=-1)

    def index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise PolyError(f"unknown variable {name!r} (variables: {', '.join(self.vars)})") from None

    def constant_term(self) -> int:
        return self._terms.get((0,) * len(self.vars), 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]))

    def leading_term(self) -> tuple[Exponent, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return min(self._terms.items(), key=lambda t: _grlex_key(t[0]))

    # comparison ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.p == other.p and self.vars == other.vars and self._terms == other._terms
        if isinstance(other, int):
            if other % self.p == 0:
                return not self._terms
            return self._terms == {(0,) * len(self.vars): other % self.p}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self.vars, frozenset(self._terms.items())))
        return self._hash

    # arithmetic ---------------------------------------------------------

    def _compatible(self, other: Poly) -> None:
        if other.p != self.p:
            raise PolyError(f"modulus mismatch: {self.p} vs {other.p}")
        if other.vars != self.vars:
            raise PolyError(f"variable mismatch: {self.vars} vs {other.vars}")

    def _lift(self, other: object) -> Poly:
        if isinstance(other, Poly):
            self._compatible(other)
            return other
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise PolyError(f"modulus mismatch: {self.p} vs {other.p}")
            return Poly.const(other.value, self.p, self.vars)
        if isinstance(other, int):
            return Poly.const(other, self.p, self.vars)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> Poly:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.p
        out = dict(self._terms)
        for exp, c in o._terms.items():
            v = (out.get(exp, 0) + c) % p
            if v:
                out[exp] = v
            else:
                out.pop(exp, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        p = self.p
        return self._new({e: p - c for e, c in self._terms.items()})

    def __sub__(self, other: object) -> Poly:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> Poly:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def scale(self, k: int) -> Poly:
        k %= self.p
        if not k:
            return self._new({})
        p = self.p
        return self._new({e: c * k % p for e, c in self._terms.items()})

    def __mul__(self, other: object) -> Poly:
        if isinstance(other, (int, FieldElement)) and not isinstance(other, bool):
            if isinstance(other, FieldElement) and other.p != self.p:
                raise PolyError(f"modulus mismatch: {self.p} vs {other.p}")
            return self.scale(int(other))
        if not isinstance(other, Poly):
            return NotImplemented
        self._compatible(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return self._new({})
        if len(a) < len(b):
            a, b = b, a
        p = self.p
        out: dict[Exponent, int] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return self._new({e: c % p for e, c in out.items() if c % p})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"exponent must be a natural number, got {n!r}")
        result = Poly.const(1, self.p, self.vars)
        base = self
        # Frobenius shortcut: (sum a m)^p = sum a m^p in characteristic p
        while n and n % self.p == 0:
            base = base._frobenius()
            n //= self.p
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _frobenius(self) -> Poly:
        p = self.p
        return self._new({tuple(a * p for a in e): c for e, c in self._terms.items()})

    # structural operations ---------------------------------------------

    def map_terms(self, fn) -> Poly:
        """Rebuild from ``fn(exp, coeff) -> (exp, coeff) | None`` applied to each term."""
        out: dict[Exponent, int] = {}
        p = self.p
        for e, c in self._terms.items():
            r = fn(e, c)
            if r is None:
                continue
            e2, c2 = r
            v = (out.get(e2, 0) + c2) % p
            if v:
                out[e2] = v
            else:
                out.pop(e2, None)
        return self._new(out)

    def filter_terms(self, keep) -> Poly:
        return self._new({e: c for e, c in self._terms.items() if keep(e, c)})

    def with_vars(self, new_vars: Sequence[str]) -> Poly:
        """Re-express over ``new_vars``; variables absent from ``new_vars`` must not occur."""
        new_vars = tuple(new_vars)
        if len(set(new_vars)) != len(new_vars):
            raise PolyError(f"duplicate variable names in {new_vars}")
        idx = []
        for v in new_vars:
            idx.append(self.vars.index(v) if v in self.vars else None)
        for i, v in enumerate(self.vars):
            if v not in new_vars and any(e[i] for e in self._terms):
                raise PolyError(f"variable {v!r} occurs and cannot be dropped")
        out = {tuple(e[i] if i is not None else 0 for i in idx): c for e, c in self._terms.items()}
        return Poly(self.p, new_vars, out, _trusted=True)

    def monomial_content(self) -> Exponent:
        """Componentwise minimum exponent (the largest monomial dividing self)."""
        if not self._terms:
            return (0,) * len(self.vars)
        return tuple(min(col) for col in zip(*self._terms))

    def homogeneous_part(self, d: int) -> Poly:
        return self.filter_terms(lambda e, c: sum(e) == d)

    def evaluate(self, values: Mapping[str, int]) -> Poly:
        """Set the named variables to field values, keeping the variable list."""
        idx = {self.index(v): int(a) % self.p for v, a in values.items()}
        p = self.p

        def fn(e, c):
            for i, a in idx.items():
                if e[i]:
                    if not a:
                        return None
                    c = c * pow(a, e[i], p)
            return tuple(0 if i in idx else x for i, x in enumerate(e)), c

        return self.map_terms(fn)

    # library operations as methods -------------------------------------

    def order(self, subset: Iterable[str] | None = None) -> float | int:
        return order(self, subset)

    def weighted_order(self, weights: Mapping[str, int] | Sequence[int]) -> float | int:
        return weighted_order(self, weights)

    def substitute(self, images: Mapping[str, Poly]) -> Poly:
        return substitute(self, images)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, p={self.p}, vars={self.vars})"


# ---------------------------------------------------------------------------
# parsing and printing

_SINGLE = set("+-*^()")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch in _SINGLE:
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i, text)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, p: int, vars: tuple[str, ...]) -> None:
        self.text = text
        self.p = p
        self.vars = vars
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            want = {"int": "integer", "name": "variable", "end": "end of input"}.get(kind, repr(kind))
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, got {got}", tok[2], self.text)
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        result = self.expr()
        self.take("end")
        return result

    def expr(self) -> Poly:
        acc = self.term()
        while self.peek()[0] in "+-":
            op = self.tokens[self.pos][0]
            self.pos += 1
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Poly:
        acc = self.unary()
        while self.peek()[0] == "*":
            self.pos += 1
            acc = acc * self.unary()
        kind, _, at = self.peek()
        if kind in ("name", "int", "("):
            raise ParseError("implicit multiplication is not allowed; use '*'", at, self.text)
        return acc

    def unary(self) -> Poly:
        if self.peek()[0] == "-":
            self.pos += 1
            return -self.unary()
        if self.peek()[0] == "+":
            self.pos += 1
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.pos += 1
            _, digits, _ = self.take("int")
            base = base ** int(digits)
            if self.peek()[0] == "^":
                raise ParseError("chained exponents are ambiguous; add parentheses", self.peek()[2], self.text)
        return base

    def atom(self) -> Poly:
        kind, value, at = self.peek()
        if kind == "int":
            self.pos += 1
            return Poly.const(int(value), self.p, self.vars)
        if kind == "name":
            self.pos += 1
            if value not in self.vars:
                raise ParseError(f"unknown variable {value!r}", at, self.text)
            return Poly.var(value, self.p, self.vars)
        if kind == "(":
            self.pos += 1
            inner = self.expr()
            self.take(")")
            return inner
        got = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"expected a number, variable or '(', got {got}", at, self.text)


def variables_in(text: str) -> list[str]:
    """Identifiers occurring in ``text``, in order of first appearance."""
    seen: list[str] = []
    for kind, value, _ in _tokenize(text):
        if kind == "name" and value not in seen:
            seen.append(value)
    return seen


def parse(text: str, p: int, vars: Sequence[str] | None = None) -> Poly:
    """Parse ``text`` into a polynomial over F_p.

    Without ``vars`` the variables are the identifiers of ``text`` in sorted order.
    """
    _check_prime(p)
    if vars is None:
        vars = sorted(variables_in(text))
    return _Parser(text, p, tuple(vars)).parse()


def format_monomial(exp: Exponent, vars: Sequence[str]) -> str:
    parts = []
    for v, a in zip(vars, exp):
        if a == 1:
            parts.append(v)
        elif a > 1:
            parts.append(f"{v}^{a}")
    return "*".join(parts)


def format_poly(f: Poly) -> str:
    """Canonical text: graded lex order, residues in ``[1, p)``, no spaces."""
    if not f._terms:
        return "0"
    out = []
    for exp, c in f.sorted_terms():
        mono = format_monomial(exp, f.vars)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return "+".join(out)


def format_factored(f: Poly) -> str:
    """Print with the monomial content pulled out, e.g. ``y^3*z^3*(y^2+z^2)``."""
    content = f.monomial_content()
    if len(f) <= 1 or not any(content):
        return format_poly(f)
    rest = divide_exact(f, content)
    return f"{format_monomial(content, f.vars)}*({format_poly(rest)})"


# ---------------------------------------------------------------------------
# ring operations (function forms)

def add(a: Poly, b: Poly) -> Poly:
    return a + b


def mul(a: Poly, b: Poly) -> Poly:
    return a * b


def power(a: Poly, n: int) -> Poly:
    return a ** n


def substitute(f: Poly, images: Mapping[str, Poly]) -> Poly:
    """Compose ``f`` with the substitution ``v -> images[v]``.

    Every variable of ``f`` needs an image; images share one variable list,
    which becomes the variable list of the result.
    """
    missing = [v for v in f.vars if v not in images]
    if missing:
        raise PolyError(f"substitution has no image for {missing}")
    extra = [v for v in images if v not in f.vars]
    if extra:
        raise PolyError(f"substitution names unknown variables {extra}")
    targets = [images[v] for v in f.vars]
    ref = targets[0] if targets else None
    for t in targets:
        if t.p != f.p:
            raise PolyError(f"modulus mismatch: {f.p} vs {t.p}")
        if ref is not None and t.vars != ref.vars:
            raise PolyError("substitution images use different variable lists")
    if ref is None:
        return f
    out_vars = ref.vars
    result = Poly.zero(f.p, out_vars)
    if not f._terms:
        return result
    one = Poly.const(1, f.p, out_vars)
    caches: list[dict[int, Poly]] = [{0: one, 1: t} for t in targets]

    def power_of(i: int, a: int) -> Poly:
        cache = caches[i]
        if a not in cache:
            cache[a] = targets[i] ** a
        return cache[a]

    acc: dict[Exponent, int] = {}
    p = f.p
    for exp, c in f._terms.items():
        term = one.scale(c)
        for i, a in enumerate(exp):
            if a:
                term = term * power_of(i, a)
        for e, v in term._terms.items():
            acc[e] = acc.get(e, 0) + v
    return Poly(p, out_vars, {e: v % p for e, v in acc.items() if v % p}, _trusted=True)


def order(f: Poly, subset: Iterable[str] | None = None) -> float | int:
    """Minimum over terms of the exponent sum restricted to ``subset``; inf for 0."""
    if subset is None:
        idx = range(len(f.vars))
    else:
        idx = [f.index(v) for v in subset]
    if not f._terms:
        return INFINITY
    return min(sum(e[i] for i in idx) for e in f._terms)


def weighted_order(f: Poly, weights: Mapping[str, int] | Sequence[int]) -> float | int:
    if isinstance(weights, Mapping):
        for v in weights:
            f.index(v)
        w = [int(weights.get(v, 1)) for v in f.vars]
    else:
        w = [int(a) for a in weights]
        if len(w) != len(f.vars):
            raise PolyError(f"{len(w)} weights for {len(f.vars)} variables")
    if not f._terms:
        return INFINITY
    return min(sum(a * b for a, b in zip(e, w)) for e in f._terms)


def is_weighted_homogeneous(f: Poly, weights: Sequence[int]) -> bool:
    return len({sum(a * b for a, b in zip(e, weights)) for e in f._terms}) <= 1


def initial_form(f: Poly) -> Poly:
    """Sum of the terms of minimal total degree (the tangent cone)."""
    if not f._terms:
        raise ValueError("the zero polynomial has no initial form")
    d = order(f)
    return f.filter_terms(lambda e, c: sum(e) == d)


def _is_c_power(exp: Exponent, c: int) -> bool:
    return all(a % c == 0 for a in exp)


def delete_c_power_monomials(f: Poly, c: int) -> tuple[Poly, Poly]:
    """Remove every term whose exponent is divisible by ``c`` componentwise.

    Returns ``(rest, root)`` with ``root**c == f - rest``.  Over a prime field
    every residue is its own ``c``-th root, so the root carries the removed
    coefficients unchanged on exponents divided by ``c``.
    """
    p_power_exponent(c, f.p)
    kept: dict[Exponent, int] = {}
    root: dict[Exponent, int] = {}
    for e, v in f._terms.items():
        if _is_c_power(e, c):
            root[tuple(a // c for a in e)] = v
        else:
            kept[e] = v
    return f._new(kept), f._new(root)


def strip_c_power_monomials(f: Poly, c: int) -> tuple[Poly, Poly]:
    """Remove the ``c``-th power monomials that sit below the order of the rest.

    The order of the result equals the order of the non-``c``-power part of
    ``f``, which is the best any shift ``f + h**c`` can reach; ``c``-power terms
    at or above that order are left alone so the witness is minimal.  When
    every term is a ``c``-th power the result is zero.

    Returns ``(stripped, witness)`` with ``witness**c == f - stripped``.
    """
    p_power_exponent(c, f.p)
    floor = min((sum(e) for e in f._terms if not _is_c_power(e, c)), default=None)
    kept: dict[Exponent, int] = {}
    root: dict[Exponent, int] = {}
    for e, v in f._terms.items():
        if _is_c_power(e, c) and (floor is None or sum(e) < floor):
            root[tuple(a // c for a in e)] = v
        else:
            kept[e] = v
    return f._new(kept), f._new(root)


def divide_exact(f: Poly, m: Exponent | Poly) -> Poly:
    """Quotient of ``f`` by the monomial ``m`` (exponent tuple or monomial Poly)."""
    if isinstance(m, Poly):
        if not m.is_monomial():
            raise ValueError("divisor must be a single monomial")
        f._compatible(m)
        (exp, coeff), = m._terms.items()
        inv = pow_mod_inverse(coeff, f.p)
    else:
        exp, inv = tuple(m), 1
        if len(exp) != len(f.vars):
            raise PolyError(f"monomial {exp} does not match {len(f.vars)} variables")
    out = {}
    for e, c in f._terms.items():
        q = tuple(a - b for a, b in zip(e, exp))
        if any(a < 0 for a in q):
            raise DivisionError(e, f"term {format_monomial(e, f.vars) or '1'} is not divisible by "
                                   f"{format_monomial(exp, f.vars) or '1'}")
        out[q] = c * inv % f.p
    return f._new(out)


def exact_quotient(a: Poly, b: Poly) -> Poly:
    """``a / b`` when ``b`` divides ``a``; raises ``DivisionError`` otherwise.

    Plain division by leading terms in graded lex order; when ``b`` divides
    ``a`` every remainder stays divisible, so no remainder bookkeeping is needed.
    """
    a._compatible(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lead_b, cb = b.leading_term()
    inv = pow_mod_inverse(cb, a.p)
    quotient: dict[Exponent, int] = {}
    rest = a
    while not rest.is_zero():
        lead, c = rest.leading_term()
        shift = tuple(x - y for x, y in zip(lead, lead_b))
        if any(s < 0 for s in shift):
            raise DivisionError(lead, "polynomial division is not exact")
        coeff = c * inv % a.p
        quotient[shift] = coeff
        rest = rest - b * Poly.monomial(shift, a.p, a.vars, coeff)
    return a._new(quotient)


def pow_mod_inverse(a: int, p: int) -> int:
    a %= p
    if not a:
        raise ZeroDivisionError(f"0 has no inverse modulo {p}")
    return pow(a, -1, p)


def truncate_jet(u: Poly, k: int) -> Poly:
    """Keep the terms of total degree <= k."""
    return u.filter_terms(lambda e, c: sum(e) <= k)


def inverse_series(base: Poly, degree: int) -> Poly:
    """Multiplicative inverse of ``base`` modulo terms of total degree > ``degree``."""
    c0 = base.constant_term()
    if not c0:
        raise ZeroDivisionError("power series with zero constant term is not invertible")
    inv0 = pow_mod_inverse(c0, base.p)
    # u = c0 (1 - n) with n of positive order; 1/u = inv0 * sum n^i
    n = Poly.const(1, base.p, base.vars) - base.scale(inv0)
    result = Poly.const(1, base.p, base.vars)
    power = result
    for _ in range(degree):
        power = truncate_jet(power * n, degree)
        if power.is_zero():
            break
        result = result + power
    return result.scale(inv0)


# ---------------------------------------------------------------------------
# binomial coefficients

def _binom_nonneg_mod(n: int, k: int, p: int) -> int:
    """C(n, k) mod p for n, k >= 0 via Lucas' theorem."""
    result = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        result = result * math.comb(ni, ki) % p
        n //= p
        k //= p
    return result


def binom_residue(n: int, k: int, p: int) -> int:
    """C(n, k) mod p as an int; negative ``n`` via C(n,k) = (-1)^k C(k-n-1, k)."""
    if k < 0:
        return 0
    if n >= 0:
        return _binom_nonneg_mod(n, k, p)
    v = _binom_nonneg_mod(k - n - 1, k, p)
    return (-v) % p if k % 2 else v


def binom_mod_p(n: int, k: int, p: int) -> FieldElement:
    if k < 0:
        raise ValueError("lower index must be a natural number")
    return FieldElement(p, binom_residue(n, k, p))


def multi_binom(alpha: Sequence[int], delta: Sequence[int]) -> int:
    """Integer product of C(alpha_i, delta_i); zero when any delta_i is out of range."""
    out = 1
    for a, d in zip(alpha, delta):
        if d < 0 or d > a:
            return 0
        out *= math.comb(a, d)
    return out
