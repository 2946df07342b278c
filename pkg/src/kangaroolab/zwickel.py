"""Zwickels and the coefficient transformation of a weighted homogeneous f.

Exponent vectors are written ``(y_m, ..., y_1)``: position 0 is ``y_m``, the
variable that absorbs the translation ``y -> y + t*y_m``.  A weighted
homogeneous ``f`` of weighted degree ``deg`` for weights ``(w, 1, ..., 1)`` has
its coefficients on the layer ``w*k + |alpha| = deg``; the coordinate change
``f(x + sum h_g y^g, y + t*y_m)`` acts on that coefficient vector by a matrix
whose entries are polynomials in the translation variables ``t_i``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

from .fpoly import Poly, binom_residue
from .linalg import SingularMatrix, bareiss_det, det_mod_p, solve_mod_p


@dataclass(frozen=True, order=True)
class LatticePoint:
    k: int
    alpha: tuple[int, ...]

    def __str__(self) -> str:
        return f"({self.k};{','.join(map(str, self.alpha))})"


@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    """All vectors of ``parts`` naturals summing to ``total``, lex descending."""
    if parts == 0:
        return ((),) if total == 0 else ()
    if parts == 1:
        return ((total,),)
    return tuple((a,) + rest for a in range(total, -1, -1) for rest in _compositions(total - a, parts - 1))


def project(pt: LatticePoint, c: int) -> tuple[Fraction, ...]:
    """``c/(c-k) * alpha``, the projection from the point (c, 0)."""
    if pt.k >= c:
        raise ValueError(f"projection needs k < c, got k = {pt.k}")
    s = Fraction(c, c - pt.k)
    return tuple(s * a for a in pt.alpha)


@dataclass(frozen=True)
class ZwickelContext:
    m: int
    w: int
    deg: int
    q: tuple[int, ...]
    j: int
    p: int = 2
    h: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", tuple(self.q))
        if self.m < 1 or self.w < 1:
            raise ValueError("m and w must be positive")
        if self.deg % self.w:
            raise ValueError(f"w = {self.w} does not divide deg = {self.deg}")
        if len(self.q) != self.m or any(a < 0 for a in self.q):
            raise ValueError("q must be a natural vector with m entries")
        if sum(self.q) > self.deg:
            raise ValueError("|q| must not exceed deg")
        if not 0 <= self.j <= self.m - 1:
            raise ValueError("j must lie between 0 and m - 1")
        if self.h is not None:
            h = tuple(int(v) % self.p for v in self.h)
            if len(h) != len(self.gamma):
                raise ValueError(f"h needs {len(self.gamma)} entries")
            object.__setattr__(self, "h", h)

    @property
    def c(self) -> int:
        return self.deg // self.w

    @property
    def split(self) -> int:
        """Positions below this index carry r, the others carry l."""
        return self.m - self.j

    @property
    def r(self) -> tuple[int, ...]:
        return tuple(a if i < self.split else 0 for i, a in enumerate(self.q))

    @property
    def ell(self) -> tuple[int, ...]:
        return tuple(a if i >= self.split else 0 for i, a in enumerate(self.q))

    @property
    def t_positions(self) -> tuple[int, ...]:
        """Positions whose translation is a free variable: t_{m-1}, ..., t_{j+1}."""
        return tuple(range(1, self.split))

    @cached_property
    def tvars(self) -> tuple[str, ...]:
        return tuple(f"t{self.m - i}" for i in self.t_positions)

    @cached_property
    def gamma(self) -> tuple[tuple[int, ...], ...]:
        """Exponents of degree w, lex ascending."""
        return tuple(sorted(_compositions(self.w, self.m)))

    @property
    def shape(self) -> ZwickelContext:
        """The context without its shift family; the zwickels depend only on this."""
        return self if self.h is None else ZwickelContext(self.m, self.w, self.deg, self.q, self.j, self.p)

    def with_h(self, h: Sequence[int]) -> ZwickelContext:
        return ZwickelContext(self.m, self.w, self.deg, self.q, self.j, self.p, tuple(h))

    def random_h(self, rng: random.Random) -> ZwickelContext:
        return self.with_h([rng.randrange(self.p) for _ in self.gamma])

    def yvars(self) -> tuple[str, ...]:
        return tuple(f"y{self.m - i}" for i in range(self.m))

    def layer(self) -> list[LatticePoint]:
        out = []
        for k in range(self.c + 1):
            for alpha in _compositions(self.deg - self.w * k, self.m):
                out.append(LatticePoint(k, alpha))
        return out

    def __str__(self) -> str:
        return (f"m={self.m} w={self.w} deg={self.deg} c={self.c} q={','.join(map(str, self.q))} "
                f"j={self.j} p={self.p}")


def _scaled_ceils(vec: Sequence[int], c: int, k: int) -> tuple[int, ...]:
    """``ceil((c-k)/c * a)`` for each entry, in integer arithmetic."""
    return tuple(-(-(c - k) * a // c) for a in vec)


def _geq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x >= y for x, y in zip(a, b))


def upper_zwickel(ctx: ZwickelContext) -> list[LatticePoint]:
    """Z(q): ``alpha >= ceil((c-k)/c * q)`` on the layer."""
    return list(_zwickels(ctx.shape)[0])


def lower_zwickel(ctx: ZwickelContext) -> list[LatticePoint]:
    """Y(r, l): ``beta >= ceil((c-k)/c * (|r|, 0, ..., 0, q_j, ..., q_1))``."""
    return list(_zwickels(ctx.shape)[1])


def y_star(ctx: ZwickelContext) -> list[LatticePoint]:
    """Y*(r, l): points of Y with ``beta^- >= ceil(... l^-)`` and a capped ``|beta^-|``.

    The cap subtracts the sum of the componentwise ceilings of the r-part, which
    makes every slice exactly as large as the slice of Z(q).
    """
    return list(_zwickels(ctx.shape)[2])


@lru_cache(maxsize=1 << 10)
def _zwickels(shape: ZwickelContext) -> tuple[tuple[LatticePoint, ...], ...]:
    ctx = shape
    upper, lower, star = [], [], []
    bound = (sum(ctx.r),) + ctx.ell[1:]
    for pt in ctx.layer():
        if _geq(pt.alpha, _scaled_ceils(ctx.q, ctx.c, pt.k)):
            upper.append(pt)
        if _geq(pt.alpha, _scaled_ceils(bound, ctx.c, pt.k)):
            lower.append(pt)
        ce_r = _scaled_ceils(ctx.r, ctx.c, pt.k)
        ce_l = _scaled_ceils(ctx.ell, ctx.c, pt.k)
        rest = pt.alpha[1:]
        if sum(rest) <= ctx.deg - ctx.w * pt.k - sum(ce_r) and _geq(rest, ce_l[1:]):
            star.append(pt)
    return tuple(upper), tuple(lower), tuple(star)


def slices(points: Iterable[LatticePoint]) -> dict[int, int]:
    out: dict[int, int] = {}
    for pt in points:
        out[pt.k] = out.get(pt.k, 0) + 1
    return out


# ---------------------------------------------------------------------------
# binomials and the transformation matrix

def alt_binom(k: int, lam: Sequence[int] | Mapping, p: int | None) -> int:
    """Product over gamma (lex ascending) of C(k - |lam|^gamma, lam_gamma), mod p unless p is None.

    ``lam`` is a sequence aligned with the ordered index set, or a mapping from
    index vectors to counts (ordered lex ascending by key).
    """
    if isinstance(lam, Mapping):
        lam = [lam[g] for g in sorted(lam)]
    if p is None:
        out, used = 1, 0
        for n in lam:
            if n < 0 or k - used < n:
                return 0
            out *= math.comb(k - used, n)
            used += n
        return out
    return _alt_binom(k, tuple(lam), p)


@lru_cache(maxsize=1 << 16)
def _alt_binom(k: int, lam: tuple[int, ...], p: int) -> int:
    out = 1
    used = 0
    for n in lam:
        if n < 0 or k - used < n:
            return 0
        out = out * binom_residue(k - used, n, p) % p
        used += n
    return out % p


Matrix = dict[LatticePoint, dict[LatticePoint, Poly]]


@lru_cache(maxsize=1 << 12)
def _lambda_terms(n: int, gamma: tuple[tuple[int, ...], ...], p: int) -> tuple:
    """``(lam, alt_binom, lam.Gamma)`` for every lam with |lam| = n and a nonzero binomial."""
    out = []
    m = len(gamma[0])
    for lam in _compositions(n, len(gamma)):
        ab = _alt_binom(n, lam, p)
        if ab:
            lg = tuple(sum(a * g[i] for a, g in zip(lam, gamma)) for i in range(m))
            out.append((lam, ab, lg))
    return tuple(out)


def _tpoly(ctx: ZwickelContext, terms: Mapping[tuple[int, ...], int]) -> Poly:
    return Poly(ctx.p, ctx.tvars, terms)


def transform_matrix(ctx: ZwickelContext, rows: Iterable[LatticePoint] | None = None) -> Matrix:
    """Rows ``(k, alpha)`` to columns ``(l, beta)`` of the coefficient map, entries in F_p[t].

    Uses the closed formula: a sum over lambda in N^Gamma with |lambda| = k - l of
    C(k,l) [k-l choose lambda] C(alpha, delta) h^lambda t^(alpha - delta), with
    ``delta = (alpha_m, beta^- - (lambda.Gamma)^-)``.
    """
    if ctx.h is None:
        raise ValueError("the context needs a shift family h")
    rows = tuple(ctx.layer() if rows is None else rows)
    return _transform_matrix(ctx, rows)


@lru_cache(maxsize=8)
def _transform_matrix(ctx: ZwickelContext, rows: tuple[LatticePoint, ...]) -> Matrix:
    # cached: a sweep asks for the same matrix from the oracle check, the
    # determinant and the reconstruction; callers must not mutate the result
    p, m = ctx.p, ctx.m
    tpos = set(ctx.t_positions)
    tindex = {pos: i for i, pos in enumerate(ctx.t_positions)}
    out: Matrix = {}
    for row in rows:
        k, alpha = row.k, row.alpha
        acc: dict[LatticePoint, dict[tuple[int, ...], int]] = {}
        # delta^- ranges over a box: free below alpha_i where t_i is a variable, pinned elsewhere
        ranges = [range(alpha[i] + 1) if i in tpos else (alpha[i],) for i in range(1, m)]
        deltas = list(itertools.product(*ranges))
        for l in range(k + 1):
            ckl = math.comb(k, l) % p
            if not ckl:
                continue
            for lam, ab, lg in _lambda_terms(k - l, ctx.gamma, p):
                hl = 1
                for hv, n in zip(ctx.h, lam):
                    if n:
                        hl = hl * pow(hv, n, p) % p
                if not hl:
                    continue
                base = ckl * ab * hl % p
                for delta in deltas:
                    coeff = base
                    for i, d in enumerate(delta, start=1):
                        coeff = coeff * binom_residue(alpha[i], d, p) % p
                    if not coeff:
                        continue
                    beta_rest = tuple(d + lg[i] for i, d in enumerate(delta, start=1))
                    beta0 = ctx.deg - ctx.w * l - sum(beta_rest)
                    col = LatticePoint(l, (beta0,) + beta_rest)
                    texp = [0] * len(tindex)
                    for i, d in enumerate(delta, start=1):
                        if i in tindex:
                            texp[tindex[i]] = alpha[i] - d
                    cell = acc.setdefault(col, {})
                    key = tuple(texp)
                    cell[key] = (cell.get(key, 0) + coeff) % p
        out[row] = {col: _tpoly(ctx, terms) for col, terms in acc.items() if any(terms.values())}
        out[row] = {col: poly for col, poly in out[row].items() if not poly.is_zero()}
    return out


def oracle_matrix(ctx: ZwickelContext, rows: Iterable[LatticePoint] | None = None) -> Matrix:
    """The same matrix read off from a direct expansion of each transformed monomial."""
    if ctx.h is None:
        raise ValueError("the context needs a shift family h")
    p, m = ctx.p, ctx.m
    yv = ctx.yvars()
    vars = ("x",) + yv + ctx.tvars
    x = Poly.var("x", p, vars)
    ys = [Poly.var(v, p, vars) for v in yv]
    shift = Poly.zero(p, vars)
    for hv, g in zip(ctx.h, ctx.gamma):
        shift = shift + Poly.monomial((0,) + g + (0,) * len(ctx.tvars), p, vars, hv)
    xs = x + shift
    images = [ys[0]]
    for i in range(1, m):
        if i in ctx.t_positions:
            images.append(ys[i] + ys[0] * Poly.var(ctx.tvars[ctx.t_positions.index(i)], p, vars))
        else:
            images.append(ys[i])
    rows = ctx.layer() if rows is None else list(rows)
    xpow = {0: Poly.const(1, p, vars)}
    out: Matrix = {}
    nt = len(ctx.tvars)
    for row in rows:
        if row.k not in xpow:
            xpow[row.k] = xs ** row.k
        g = xpow[row.k]
        for img, a in zip(images, row.alpha):
            if a:
                g = g * img ** a
        cells: dict[LatticePoint, dict[tuple[int, ...], int]] = {}
        for e, coeff in g.items():
            col = LatticePoint(e[0], tuple(e[1:m + 1]))
            cells.setdefault(col, {})[tuple(e[m + 1:m + 1 + nt])] = coeff
        out[row] = {col: _tpoly(ctx, terms) for col, terms in cells.items()}
    return out


def matrices_equal(a: Matrix, b: Matrix) -> bool:
    if set(a) != set(b):
        return False
    for row in a:
        ra = {c: v for c, v in a[row].items() if not v.is_zero()}
        rb = {c: v for c, v in b[row].items() if not v.is_zero()}
        if ra != rb:
            return False
    return True


def square_submatrix(A: Matrix, rows: Sequence[LatticePoint], cols: Sequence[LatticePoint],
                     ctx: ZwickelContext) -> list[list[Poly]]:
    zero = Poly.zero(ctx.p, ctx.tvars)
    return [[A[r].get(col, zero) for col in cols] for r in rows]


# ---------------------------------------------------------------------------
# determinant of the square part

@dataclass
class DetReport:
    is_monomial: bool
    rho: tuple[int, ...]
    coefficient: int
    h_independent: bool
    square: bool
    triangular: bool
    sizes: tuple[int, int, int]
    determinant: Poly | None = None

    def line(self) -> str:
        return (f"|Z|={self.sizes[0]} |Y*|={self.sizes[1]} |Y|={self.sizes[2]} "
                f"rho={','.join(map(str, self.rho))} coeff={self.coefficient} "
                f"monomial={str(self.is_monomial).lower()} h_independent={str(self.h_independent).lower()}")


def ordered_sets(ctx: ZwickelContext) -> tuple[list[LatticePoint], list[LatticePoint]]:
    return sorted(upper_zwickel(ctx)), sorted(y_star(ctx))


def block_determinant(ctx: ZwickelContext, A: Matrix, rows: list[LatticePoint],
                      cols: list[LatticePoint]) -> tuple[int, tuple[int, ...], bool]:
    """Determinant of the square part through its diagonal blocks.

    Columns with l > k never occur in row k (|lambda| = k - l), so with rows and
    columns sorted by the x-exponent the matrix is block lower triangular.  A
    diagonal block has entries ``C(alpha^-, beta^-) t^(alpha^- - beta^-)``, whose
    determinant is ``det(C) * t^(sum alpha^- - sum beta^-)``.

    Returns ``(coefficient mod p, rho over all m positions, triangular)``.
    """
    p, m = ctx.p, ctx.m
    col_index = {col: i for i, col in enumerate(cols)}
    triangular = all(col.k <= row.k for row in rows for col in A[row] if col in col_index)
    coeff = 1
    rho = [0] * m
    for k in range(ctx.c + 1):
        rk = [r for r in rows if r.k == k]
        ck = [c for c in cols if c.k == k]
        if len(rk) != len(ck):
            raise SingularMatrix(f"slice {k} is not square: {len(rk)} x {len(ck)}")
        if not rk:
            continue
        N = []
        for r in rk:
            row = []
            for col in ck:
                entry = A[r].get(col)
                row.append(_block_entry(entry, r, col, ctx))
            N.append(row)
        coeff = coeff * det_mod_p(N, p) % p
        for i in range(m):
            rho[i] += sum(r.alpha[i] for r in rk) - sum(col.alpha[i] for col in ck)
    rho[0] = 0
    return coeff, tuple(rho), triangular


def _block_entry(entry: Poly | None, row: LatticePoint, col: LatticePoint, ctx: ZwickelContext) -> int:
    """Numeric part of a diagonal-block entry, checking it is the expected monomial."""
    if entry is None or entry.is_zero():
        return 0
    if not entry.is_monomial():
        raise AssertionError(f"diagonal-block entry {entry} at {row}, {col} is not a monomial")
    (exp, value), = entry.items()
    want = tuple(row.alpha[i] - col.alpha[i] for i in ctx.t_positions)
    if exp != want:
        raise AssertionError(f"diagonal-block entry {entry} at {row}, {col} has exponent {exp}, expected {want}")
    return value


def det_monomiality_check(ctx: ZwickelContext, h2: Sequence[int] | None = None, *,
                          exact: bool = False) -> DetReport:
    """Monomiality of det of the square part, its exponent rho and h-independence.

    ``exact`` also computes the determinant by fraction-free elimination over F_p[t].
    """
    if ctx.h is None:
        ctx = ctx.with_h([0] * len(ctx.gamma))
    rows, cols = ordered_sets(ctx)
    size_y = len(lower_zwickel(ctx))
    square = len(rows) == len(cols) and all(
        v == slices(cols).get(k, 0) for k, v in slices(rows).items())
    if not square:
        return DetReport(False, (), 0, False, False, False, (len(rows), len(cols), size_y))
    A = transform_matrix(ctx, rows)
    coeff, rho, tri = block_determinant(ctx, A, rows, cols)
    h_ind = True
    if h2 is not None:
        ctx2 = ctx.with_h(h2)
        A2 = transform_matrix(ctx2, rows)
        coeff2, rho2, tri2 = block_determinant(ctx2, A2, rows, cols)
        h_ind = (coeff2, rho2) == (coeff, rho) and tri2
        for r in rows:
            # diagonal blocks are read off directly and must not see h
            d1 = {c: v for c, v in A[r].items() if c.k == r.k}
            d2 = {c: v for c, v in A2[r].items() if c.k == r.k}
            if d1 != d2:
                h_ind = False
    det = None
    if exact:
        det = bareiss_det(square_submatrix(A, rows, cols, ctx)) if rows else Poly.const(1, ctx.p, ctx.tvars)
    report = DetReport(coeff != 0 and tri, rho, coeff, h_ind, True, tri, (len(rows), len(cols), size_y), det)
    return report


def expected_determinant(ctx: ZwickelContext, report: DetReport) -> Poly:
    exp = tuple(report.rho[i] for i in ctx.t_positions)
    return Poly.monomial(exp, ctx.p, ctx.tvars, report.coefficient)


# ---------------------------------------------------------------------------
# coefficients of f and of the transformed f

def transform_coefficients(ctx: ZwickelContext, a: Mapping[LatticePoint, int],
                           t: Mapping[str, int]) -> dict[LatticePoint, int]:
    """Coefficients of ``f(x + sum h y^g, y + t y_m)`` by direct substitution."""
    p, m = ctx.p, ctx.m
    yv = ctx.yvars()
    vars = ("x",) + yv
    x = Poly.var("x", p, vars)
    ys = [Poly.var(v, p, vars) for v in yv]
    shift = Poly.zero(p, vars)
    for hv, g in zip(ctx.h, ctx.gamma):
        shift = shift + Poly.monomial((0,) + g, p, vars, hv)
    images = {"x": x + shift, yv[0]: ys[0]}
    for i in range(1, m):
        tv = t.get(f"t{m - i}", 0) if i in ctx.t_positions else 0
        images[yv[i]] = ys[i] + ys[0].scale(tv)
    f = Poly(p, vars, {(pt.k,) + pt.alpha: v for pt, v in a.items()})
    g = f.substitute(images)
    return {LatticePoint(e[0], tuple(e[1:])): v for e, v in g.items()}


def reconstruct_coefficients(ctx: ZwickelContext, b: Mapping[LatticePoint, int],
                             t: Mapping[str, int]) -> dict[LatticePoint, int]:
    """Recover f supported in Z(q) from the coefficients of the transform on Y*(r, l)."""
    for name in ctx.tvars:
        if t.get(name, 0) % ctx.p == 0:
            raise ValueError(f"{name} must be nonzero for the reconstruction")
    rows, cols = ordered_sets(ctx)
    if len(rows) != len(cols):
        raise SingularMatrix("the zwickels have different sizes")
    A = transform_matrix(ctx, rows)
    values = {v: t[v] for v in ctx.tvars}
    # b_col = sum_row a_row A[row][col]: solve with the transposed numeric matrix
    M = [[_evaluate(A[r].get(col), values, ctx.p) for r in rows] for col in cols]
    rhs = [b.get(col, 0) for col in cols]
    sol = solve_mod_p(M, rhs, ctx.p)
    return {r: v for r, v in zip(rows, sol) if v}


def _evaluate(entry: Poly | None, values: Mapping[str, int], p: int) -> int:
    if entry is None:
        return 0
    total = 0
    names = entry.vars
    for e, c in entry.items():
        term = c
        for name, a in zip(names, e):
            term = term * pow(values[name], a, p) % p
        total += term
    return total % p


def random_supported(ctx: ZwickelContext, rng: random.Random) -> dict[LatticePoint, int]:
    """Random coefficients on Z(q) with the x^c coefficient equal to 1."""
    out = {}
    for pt in upper_zwickel(ctx):
        if pt.k == ctx.c:
            out[pt] = 1
        else:
            v = rng.randrange(ctx.p)
            if v:
                out[pt] = v
    return out


# ---------------------------------------------------------------------------
# coefficient ideal

def coefficient_ideal_divisible(a: Mapping[LatticePoint, int], c: int, q: Sequence[int]) -> bool:
    """Whether y^((c-1)! q) divides the coefficient ideal generated by a_k^(c!/(c-k)), k < c."""
    fact = math.factorial(c)
    scale = math.factorial(c - 1)
    for pt, v in a.items():
        if not v or pt.k >= c:
            continue
        power = fact // (c - pt.k)
        if any(power * x < scale * y for x, y in zip(pt.alpha, q)):
            return False
    return True


def supported_in(a: Mapping[LatticePoint, int], points: Iterable[LatticePoint]) -> bool:
    allowed = set(points)
    return all(pt in allowed for pt, v in a.items() if v)


# ---------------------------------------------------------------------------
# sweep

def contexts(mmax: int = 3, cmax: int = 4, degmax: int = 12, p: int = 2,
             qmax: int | None = None) -> list[ZwickelContext]:
    """Every context with m <= mmax, c <= cmax, deg <= degmax, |q| <= min(deg, qmax), all j."""
    out = []
    for m in range(2, mmax + 1):
        for c in range(1, cmax + 1):
            for w in range(1, degmax // c + 1):
                deg = w * c
                top = deg if qmax is None else min(deg, qmax)
                for total in range(top + 1):
                    for q in _compositions(total, m):
                        for j in range(m):
                            out.append(ZwickelContext(m, w, deg, q, j, p))
    return out


@dataclass
class SweepRecord:
    ctx: ZwickelContext
    slices_ok: bool
    oracle_ok: bool | None
    det: DetReport
    rho_ok: bool
    roundtrip_ok: bool | None
    exact_ok: bool | None = None

    @property
    def ok(self) -> bool:
        return (self.slices_ok and self.oracle_ok is not False and self.det.is_monomial
                and self.det.h_independent and self.rho_ok and self.roundtrip_ok is not False
                and self.exact_ok is not False)

    def line(self) -> str:
        flag = lambda v: "-" if v is None else str(v).lower()
        return (f"{self.ctx} {self.det.line()} slices={flag(self.slices_ok)} oracle={flag(self.oracle_ok)} "
                f"rho_zero={flag(self.rho_ok)} roundtrip={flag(self.roundtrip_ok)} "
                f"exact={flag(self.exact_ok)} {'PASS' if self.ok else 'FAIL'}")


def check_context(ctx: ZwickelContext, seed: int, *, oracle: bool = True, roundtrip: bool = True,
                  exact: bool = False) -> SweepRecord:
    rng = random.Random(seed)
    ctx1 = ctx.random_h(rng)
    h2 = [rng.randrange(ctx.p) for _ in ctx.gamma]
    Z, Ys, Y = upper_zwickel(ctx), y_star(ctx), lower_zwickel(ctx)
    sz, ss, sy = slices(Z), slices(Ys), slices(Y)
    slices_ok = set(Ys) <= set(Y) and all(
        sz.get(k, 0) == ss.get(k, 0) <= sy.get(k, 0) for k in range(ctx.c + 1))
    oracle_ok = None
    if oracle:
        Zs = sorted(Z)
        oracle_ok = matrices_equal(transform_matrix(ctx1, Zs), oracle_matrix(ctx1, Zs))
    det = det_monomiality_check(ctx1, h2, exact=exact)
    exact_ok = None
    if exact and det.determinant is not None:
        exact_ok = det.determinant == expected_determinant(ctx1, det)
    rho_ok = det.square and det.rho[0] == 0 and all(det.rho[i] == 0 for i in range(ctx.split, ctx.m))
    rt = None
    if roundtrip and det.square:
        a = random_supported(ctx1, rng)
        t = {name: rng.randrange(1, ctx.p) for name in ctx.tvars}
        b = transform_coefficients(ctx1, a, t)
        try:
            rt = reconstruct_coefficients(ctx1, b, t) == a
        except SingularMatrix:
            rt = False
    return SweepRecord(ctx1, slices_ok, oracle_ok, det, rho_ok, rt, exact_ok)
