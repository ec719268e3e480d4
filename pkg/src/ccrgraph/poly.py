"""Univariate polynomials over an exact field (coefficient lists, low degree
first) and factorisation into irreducibles.

Finite fields use square-free decomposition followed by Berlekamp's
algorithm; the rationals defer to sympy.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import Field, Rationals
from .linalg import Matrix, identity, mat_add, mat_scale, matmul, nullspace, zeros

Poly = list


def trim(F: Field, p: Poly) -> Poly:
    p = list(p)
    while p and p[-1] == F.zero:
        p.pop()
    return p


def deg(p: Poly) -> int:
    return len(p) - 1


def monic(F: Field, p: Poly) -> Poly:
    p = trim(F, p)
    if not p:
        return p
    inv = F.inv(p[-1])
    return [F.mul(inv, a) for a in p]


def padd(F: Field, a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    a = list(a) + [F.zero] * (n - len(a))
    b = list(b) + [F.zero] * (n - len(b))
    return trim(F, [F.add(x, y) for x, y in zip(a, b)])


def psub(F: Field, a: Poly, b: Poly) -> Poly:
    return padd(F, a, [F.neg(y) for y in b])


def pmul(F: Field, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x != F.zero:
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(F, out)


def pdivmod(F: Field, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    b = trim(F, b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(F, a)
    q = [F.zero] * max(len(r) - len(b) + 1, 0)
    inv = F.inv(b[-1])
    while len(r) >= len(b):
        c = F.mul(r[-1], inv)
        shift = len(r) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] = F.sub(r[shift + i], F.mul(c, y))
        r = trim(F, r)
    return trim(F, q), r


def pmod(F: Field, a: Poly, b: Poly) -> Poly:
    return pdivmod(F, a, b)[1]


def pgcd(F: Field, a: Poly, b: Poly) -> Poly:
    a, b = trim(F, a), trim(F, b)
    while b:
        a, b = b, pmod(F, a, b)
    return monic(F, a)


def ppowmod(F: Field, a: Poly, n: int, m: Poly) -> Poly:
    result = [F.one]
    a = pmod(F, a, m)
    while n:
        if n & 1:
            result = pmod(F, pmul(F, result, a), m)
        a = pmod(F, pmul(F, a, a), m)
        n >>= 1
    return result


def derivative(F: Field, p: Poly) -> Poly:
    return trim(F, [F.mul(F.from_int(i), c) for i, c in enumerate(p)][1:])


def eval_matrix(F: Field, p: Poly, A: Matrix) -> Matrix:
    """``p(A)`` by Horner's rule."""
    n = len(A)
    out = zeros(F, n)
    I = identity(F, n)
    for c in reversed(p):
        out = mat_add(F, matmul(F, out, A), mat_scale(F, c, I))
    return out


def _pth_root(F: Field, p: Poly) -> Poly:
    """``p`` is a polynomial in ``x^char``; return its ``char``-th root."""
    c = F.characteristic
    e = F.order // c  # a -> a^(q/p) inverts Frobenius on GF(q)
    return [F.pow(p[i], e) for i in range(0, len(p), c)]


def squarefree_decomposition(F: Field, f: Poly) -> list[tuple[Poly, int]]:
    """Monic ``f`` as a product of ``g_i ** m_i`` with ``g_i`` squarefree and
    pairwise coprime (finite fields)."""
    f = monic(F, f)
    if deg(f) < 1:
        return []
    out: list[tuple[Poly, int]] = []
    df = derivative(F, f)
    if not df:
        return [(g, m * F.characteristic) for g, m in squarefree_decomposition(F, _pth_root(F, f))]
    c = pgcd(F, f, df)
    w = pdivmod(F, f, c)[0]
    i = 1
    while deg(w) > 0:
        y = pgcd(F, w, c)
        z = pdivmod(F, w, y)[0]
        if deg(z) > 0:
            out.append((monic(F, z), i))
        i += 1
        w = y
        c = pdivmod(F, c, y)[0]
    if deg(c) > 0:
        out += [(g, m * F.characteristic) for g, m in squarefree_decomposition(F, _pth_root(F, c))]
    return out


def berlekamp(F: Field, f: Poly) -> list[Poly]:
    """Irreducible factors of a monic squarefree ``f`` over a finite field."""
    n = deg(f)
    if n <= 1:
        return [monic(F, f)]
    q = F.order
    xq = ppowmod(F, [F.zero, F.one], q, f)
    cols = []
    r = [F.one]
    for i in range(n):
        col = r + [F.zero] * (n - len(r))
        col[i] = F.sub(col[i], F.one)
        cols.append(col)
        r = pmod(F, pmul(F, r, xq), f)
    M = [[cols[i][j] for i in range(n)] for j in range(n)]
    kernel = nullspace(F, M, n)
    target = len(kernel)
    factors = [monic(F, f)]
    for h in kernel:
        if len(factors) == target:
            break
        h = trim(F, h)
        if deg(h) < 1:
            continue
        split = []
        for u in factors:
            if deg(u) <= 1:
                split.append(u)
                continue
            # u divides prod_c (h - c) and the h - c are pairwise coprime
            rest = u
            for c in F.elements():
                d = pgcd(F, rest, psub(F, h, [c]))
                if deg(d) > 0:
                    split.append(d)
                    rest = pdivmod(F, rest, d)[0]
                    if deg(rest) < 1:
                        break
        factors = split
    return sorted(factors, key=lambda p: (deg(p), p))


def factor(F: Field, f: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicity."""
    f = trim(F, f)
    if deg(f) < 1:
        return []
    if isinstance(F, Rationals):
        return _factor_rational(f)
    out = []
    for g, m in squarefree_decomposition(F, f):
        for h in berlekamp(F, g):
            out.append((h, m))
    merged: dict[tuple, int] = {}
    for h, m in out:
        merged[tuple(h)] = merged.get(tuple(h), 0) + m
    return sorted(((list(h), m) for h, m in merged.items()), key=lambda t: (deg(t[0]), t[0]))


def _factor_rational(f: Poly) -> list[tuple[Poly, int]]:
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** i
               for i, c in enumerate(map(Fraction, f)))
    _, parts = sympy.factor_list(expr, x, domain="QQ")
    out = []
    for g, m in parts:
        coeffs = sympy.Poly(g, x).all_coeffs()[::-1]
        lead = coeffs[-1]
        out.append(([Fraction(int(sympy.fraction(c / lead)[0]), int(sympy.fraction(c / lead)[1]))
                     for c in coeffs], int(m)))
    return sorted(out, key=lambda t: (deg(t[0]), t[0]))
