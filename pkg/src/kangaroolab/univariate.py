"""Dense univariate polynomials over F_p and squarefree decomposition.

Coefficient lists run from the constant term upward, with no trailing zeros;
``[]`` is the zero polynomial.
"""

from __future__ import annotations

Dense = list[int]


def trim(a: Dense) -> Dense:
    while a and a[-1] == 0:
        a.pop()
    return a


def normalize(a: list[int], p: int) -> Dense:
    return trim([c % p for c in a])


def sub(a: Dense, b: Dense, p: int) -> Dense:
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def mul(a: Dense, b: Dense, p: int) -> Dense:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return normalize(out, p)


def monic(a: Dense, p: int) -> Dense:
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def divmod_(a: Dense, b: Dense, p: int) -> tuple[Dense, Dense]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        factor = r[-1] * inv % p
        q[shift] = factor
        for i, c in enumerate(b):
            r[shift + i] = (r[shift + i] - factor * c) % p
        trim(r)
    return trim(q), r


def gcd(a: Dense, b: Dense, p: int) -> Dense:
    a, b = list(a), list(b)
    while b:
        a, b = b, divmod_(a, b, p)[1]
    return monic(a, p)


def derivative(a: Dense, p: int) -> Dense:
    return normalize([i * c for i, c in enumerate(a)][1:], p)


def pth_root(a: Dense, p: int) -> Dense:
    """Inverse Frobenius for a polynomial whose derivative vanishes."""
    if any(c for i, c in enumerate(a) if i % p):
        raise ValueError("polynomial is not a p-th power")
    # coefficients of F_p are fixed by Frobenius
    return a[::p]


def squarefree_decomposition(a: Dense, p: int) -> list[tuple[Dense, int]]:
    """Monic squarefree factors with multiplicities, ``a = lc * prod f_i^m_i``.

    Musser's algorithm with the characteristic-p step for factors whose
    multiplicity is divisible by p.
    """
    a = monic(a, p)
    if len(a) <= 1:
        return []
    out: dict[int, Dense] = {}
    _sqf(a, p, 1, out)
    return sorted(((f, m) for m, f in out.items()), key=lambda t: t[1])


def _sqf(a: Dense, p: int, scale: int, out: dict[int, Dense]) -> None:
    da = derivative(a, p)
    if not da:
        _sqf(pth_root(a, p), p, scale * p, out)
        return
    c = gcd(a, da, p)
    w = divmod_(a, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if len(z) > 1:
            prev = out.get(i * scale)
            out[i * scale] = mul(prev, z, p) if prev else monic(z, p)
        w = y
        c = divmod_(c, y, p)[0]
        i += 1
    if len(c) > 1:
        _sqf(pth_root(c, p), p, scale * p, out)


def max_multiplicity(a: Dense, p: int) -> int:
    return max((m for _, m in squarefree_decomposition(a, p)), default=0)
