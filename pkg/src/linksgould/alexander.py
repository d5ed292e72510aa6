"""Alexander polynomial of a braid closure from the reduced Burau representation.

This is independent of the state-model engine and serves as its oracle for
LG^{1,1}.  Polynomials in ``t`` are returned as ``{exponent: coeff}`` dicts,
symmetric under ``t -> 1/t`` and normalized by ``Delta(1) = 1``.
"""
from __future__ import annotations

import sympy as sp

from .braids import BraidWord, closure_components, parse_braid_word
from .laurent import LaurentPoly2

__all__ = ["alexander_oracle", "reduced_burau", "lg11_to_alexander", "normalize_alexander"]

t = sp.Symbol("t")


def reduced_burau(n: int, letter: int) -> sp.Matrix:
    """Reduced Burau matrix (size ``n-1``) of ``sigma_|letter|^sign(letter)``."""
    i = abs(letter)
    if n == 2:
        M = sp.Matrix([[-t]])
    else:
        M = sp.eye(n - 1)
        k = i - 1  # 0-based row of the generator
        if i == 1:
            M[0, 0] = -t
            M[1, 0] = 1
        elif i == n - 1:
            M[k - 1, k] = t
            M[k, k] = -t
        else:
            M[k - 1, k] = t
            M[k, k] = -t
            M[k + 1, k] = 1
    if letter < 0:
        M = M.inv().applyfunc(sp.cancel)
    return M


def normalize_alexander(poly: dict[int, int]) -> dict[int, int]:
    """Shift to a ``t <-> 1/t`` symmetric form and fix the sign by ``Delta(1) = 1``."""
    poly = {e: c for e, c in poly.items() if c}
    if not poly:
        return {}
    lo, hi = min(poly), max(poly)
    if (lo + hi) % 2:
        raise ValueError("polynomial cannot be made symmetric (not a knot?)")
    shift = (lo + hi) // 2
    out = {e - shift: c for e, c in poly.items()}
    if sum(out.values()) < 0:
        out = {e: -c for e, c in out.items()}
    return dict(sorted(out.items()))


def alexander_oracle(b: BraidWord | str) -> dict[int, int]:
    """Alexander polynomial of the knot closing ``b``.

    Uses ``Delta(t) = det(I - B(b)) (1 - t) / (1 - t^n)`` with ``B`` the reduced
    Burau image.

    >>> alexander_oracle("1,1,1")
    {-1: 1, 0: -1, 1: 1}
    """
    if isinstance(b, str):
        b = parse_braid_word(b)
    if closure_components(b) != 1:
        raise ValueError("the closure is not a knot")
    n = b.strands
    if n == 1:
        return {0: 1}
    M = sp.eye(n - 1)
    for x in b.letters:
        M = (M * reduced_burau(n, x)).applyfunc(sp.expand)
    det = sp.expand((sp.eye(n - 1) - M).det())
    num = sp.cancel(det * (1 - t) / (1 - t**n))
    num, den = sp.fraction(sp.together(num))
    num_p, den_p = sp.Poly(num, t), sp.Poly(den, t)
    if len(den_p.terms()) != 1:
        raise ValueError("Burau quotient is not a Laurent polynomial")
    ((dexp,), dcoef), = den_p.terms()
    poly = {}
    for (e,), c in num_p.terms():
        c = sp.Rational(c, dcoef)
        if c.q != 1:
            raise ValueError("non-integral Alexander coefficient")
        poly[e - dexp] = int(c)
    return normalize_alexander(poly)


def lg11_to_alexander(f: LaurentPoly2) -> dict[int, int]:
    """Read an LG^{1,1} value as a polynomial in ``t = p^2`` and normalize it."""
    poly = {}
    for ep, eq, c in f.terms():
        if eq != 0 or ep % 2:
            raise ValueError("LG^{1,1} value is not a polynomial in p^2")
        poly[ep // 2] = c
    return normalize_alexander(poly)
