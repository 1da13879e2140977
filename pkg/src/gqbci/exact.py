"""Exact integer polynomial helpers.

Polynomials are plain lists of Python ints, constant term first.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


def bareiss_det_batch(mats: np.ndarray) -> list[int]:
    """Determinants of a stack of integer matrices by fraction-free elimination.

    ``mats`` has shape ``(P, N, N)``. Every matrix must have all leading
    principal minors nonzero (true for strictly diagonally dominant input);
    a zero pivot raises ``ZeroDivisionError`` instead of pivoting.
    """
    m = np.array(mats, dtype=np.int64)
    p, n, _ = m.shape
    if n == 0:
        return [1] * p
    prev = np.ones(p, dtype=np.int64)
    small = True
    for k in range(n - 1):
        if small and np.abs(m[:, k:, k:]).max() >= 2 ** 31:
            # x*piv - col*row could overflow int64 from here on
            m = m.astype(object)
            prev = prev.astype(object)
            small = False
        piv = m[:, k, k].copy()
        if (piv == 0).any():
            raise ZeroDivisionError("zero pivot in fraction-free elimination")
        sub = m[:, k + 1:, k + 1:]
        col = m[:, k + 1:, k][:, :, None]
        row = m[:, k, k + 1:][:, None, :]
        m[:, k + 1:, k + 1:] = (sub * piv[:, None, None] - col * row) // prev[:, None, None]
        prev = piv
    return [int(x) for x in m[:, n - 1, n - 1]]


def bareiss_det(mat: Sequence[Sequence[int]]) -> int:
    """Determinant of one integer matrix, with row pivoting."""
    a = [list(map(int, r)) for r in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            ri[k + 1:] = [(x * akk - aik * y) // prev for x, y in zip(ri[k + 1:], rk[k + 1:])]
        prev = akk
    return sign * a[n - 1][n - 1]


def interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Coefficients of the unique polynomial of degree < len(xs) through the points.

    Newton divided differences over ``Fraction``, expanded to the monomial basis.
    """
    n = len(xs)
    dd = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    coeffs = [Fraction(0)] * n
    # Horner on the Newton form: c = dd[n-1]; c = c*(x - xs[i]) + dd[i]
    coeffs[0] = dd[n - 1]
    deg = 0
    for i in range(n - 2, -1, -1):
        new = [Fraction(0)] * n
        for t in range(deg + 1):
            new[t + 1] += coeffs[t]
            new[t] -= coeffs[t] * xs[i]
        new[0] += dd[i]
        coeffs = new
        deg += 1
    return coeffs


def to_int_poly(coeffs: Sequence[Fraction]) -> list[int]:
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ArithmeticError(f"non-integer coefficient {c}")
        out.append(int(c))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def poly_mul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def poly_eval(p: Sequence[int], x: int | Fraction) -> int | Fraction:
    acc: int | Fraction = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def root_multiplicity(p: Sequence[int], r: int) -> int:
    """Exact multiplicity of the integer root ``r`` of a nonzero integer polynomial."""
    q = list(p)
    if not any(q):
        raise ValueError("zero polynomial")
    mult = 0
    while len(q) > 1:
        # synthetic division by (x - r), highest degree first
        hi = q[::-1]
        out = [hi[0]]
        for c in hi[1:]:
            out.append(c + out[-1] * r)
        if out[-1] != 0:
            break
        mult += 1
        q = out[:-1][::-1]
    return mult


def power_sums(p: Sequence[int], kmax: int) -> list[int]:
    """Newton power sums p_1..p_kmax of the roots of a monic integer polynomial."""
    deg = len(p) - 1
    if p[-1] != 1:
        raise ValueError("polynomial must be monic")
    # e_k with sign: coefficient of x^(deg-k) is (-1)^k e_k
    e = [1] + [(-1) ** k * p[deg - k] for k in range(1, deg + 1)]
    sums: list[int] = []
    for k in range(1, kmax + 1):
        s = (-1) ** (k - 1) * k * (e[k] if k <= deg else 0)
        for i in range(1, k):
            s += (-1) ** (i - 1) * (e[i] if i <= deg else 0) * sums[k - i - 1]
        sums.append(s)
    return sums
