"""Exact univariate polynomial arithmetic on ascending coefficient tuples.

A polynomial is a tuple of field elements in ascending degree with no trailing
zeros; the zero polynomial is the empty tuple ``()``.  The variable is either
the global affine coordinate x or a local parameter f = x − t; which one is a
matter of bookkeeping by the caller.

All helpers are pure functions and work uniformly over any field whose
elements support ``+ - * /`` and truthiness (see :mod:`parabtk.fields`).
"""

from __future__ import annotations

from typing import Sequence, Tuple

from .fields import FieldConfig, Scalar

Poly = Tuple[Scalar, ...]

__all__ = [
    "Poly", "pnormal", "pconst", "pdeg", "pval", "padd", "pneg", "psub",
    "pscale", "pmul", "pdivmod", "pdiv_exact", "pgcd", "pmonic", "peval",
    "pshift", "ptrunc", "pstr", "x_poly", "parse_poly",
]


def pnormal(coeffs: Sequence[Scalar]) -> Poly:
    """Trim trailing zeros."""
    cs = list(coeffs)
    while cs and not cs[-1]:
        cs.pop()
    return tuple(cs)


def pconst(c: Scalar) -> Poly:
    return (c,) if c else ()


def pdeg(p: Poly) -> int:
    """Degree; −1 for the zero polynomial."""
    return len(p) - 1


def pval(p: Poly) -> int | None:
    """Order of vanishing at 0; None for the zero polynomial."""
    for i, c in enumerate(p):
        if c:
            return i
    return None


def padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return pnormal(out)


def pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def psub(a: Poly, b: Poly) -> Poly:
    return padd(a, pneg(b))


def pscale(c: Scalar, a: Poly) -> Poly:
    if not c:
        return ()
    return pnormal([c * x for x in a])


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [a[0] * b[0] - a[0] * b[0]] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    return pnormal(out)


def pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division ``a = q·b + r`` with deg r < deg b."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [b[0] - b[0]] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = r[i + len(b) - 1] * inv_lead
        if c:
            q[i] = c
            for j, cb in enumerate(b):
                r[i + j] = r[i + j] - c * cb
    return pnormal(q), pnormal(r)


def pdiv_exact(a: Poly, b: Poly) -> Poly:
    q, r = pdivmod(a, b)
    if r:
        raise ValueError("inexact polynomial division")
    return q


def pgcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a)


def pmonic(a: Poly) -> Poly:
    if not a:
        return a
    return pscale(1 / a[-1], a)


def peval(p: Poly, c: Scalar) -> Scalar:
    acc = c - c
    for coeff in reversed(p):
        acc = acc * c + coeff
    return acc


def pshift(p: Poly, t: Scalar) -> Poly:
    """Re-expand ``p(x)`` in powers of ``f = x − t`` (Taylor shift).

    Returns the coefficient tuple of ``p(f + t)``; exact synthetic division.
    """
    out = []
    cur = list(p)
    for _ in range(len(p)):
        # divide cur by (x − t): remainder is cur evaluated at t
        rem = cur[-1]
        for i in range(len(cur) - 2, -1, -1):
            rem = rem * t + cur[i]
        out.append(rem)
        # synthetic quotient
        quot = []
        carry = None
        for c in reversed(cur):
            carry = c if carry is None else carry * t + c
            quot.append(carry)
        quot.pop()
        cur = list(reversed(quot))
        if not cur:
            break
    return pnormal(out)


def ptrunc(p: Poly, n: int) -> Poly:
    """Reduce mod the n-th power of the variable."""
    return pnormal(p[:n])


def x_poly(field: FieldConfig, *roots: Scalar) -> Poly:
    """The monic polynomial ∏(x − r) over the given field."""
    acc: Poly = (field.one(),)
    for r in roots:
        acc = pmul(acc, (-field.of(r), field.one()))
    return acc


def pstr(p: Poly, var: str = "x") -> str:
    if not p:
        return "0"
    terms = []
    for i, c in enumerate(p):
        if not c:
            continue
        if i == 0:
            terms.append(f"{c}")
        elif i == 1:
            terms.append(f"{c}*{var}" if c != 1 else var)
        else:
            terms.append(f"{c}*{var}^{i}" if c != 1 else f"{var}^{i}")
    return " + ".join(terms)


def parse_poly(field: FieldConfig, coeffs: Sequence) -> Poly:
    """Build a polynomial from raw coefficients (ints, strings, elements)."""
    return pnormal([field.of(c) for c in coeffs])
