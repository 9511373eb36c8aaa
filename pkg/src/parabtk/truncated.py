"""Truncated local rings O_n = k[f]/(fⁿ) and submodules of O_n².

The restriction of a rank-2 bundle to the n-th infinitesimal neighbourhood of
a point is a free module O_n² over the truncated local ring; the levels of a
refined parabolic structure are O_n-submodules of it.  This module provides:

  * :class:`TruncElement` — an element of O_n², a pair of truncated
    polynomials in the local parameter f;
  * :class:`TruncSubmodule` — a submodule in a canonical internal echelon
    form, with the normalized two-generator presentation (v₁, v₂) where
    length⟨v₁⟩ ≥ length⟨v₂⟩ and the leading-valuation reductions of v₁, v₂
    are linearly independent when v₂ ≠ 0;
  * :class:`YoungType` — the two-column type (1^{a₁}, 2^{a₂}) of a submodule;
  * the operations ``trunc_arith``, ``submodule_from_generators``,
    ``submodule_length`` and ``submodule_type``.

Internal canonical form.  Every submodule M ⊆ O_n² is stored as the echelon
triple (α₁, h, β₂): α₁ is the valuation of the ideal of first coordinates
(α₁ = n when it is zero), g₁ = (f^{α₁}, h) is the unique element of M with
first coordinate exactly f^{α₁} and h reduced modulo f^{β₂}, and
M ∩ (0 ⊕ O_n) = 0 ⊕ f^{β₂}O_n.  The triple is unique, so equality and
hashing are structural.  Lengths satisfy length(M) = (n−α₁) + (n−β₂).
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .fields import FieldConfig, Scalar
from .poly import (
    Poly, padd, pdeg, pmul, pnormal, pscale, psub, ptrunc, pval, pstr,
)

__all__ = [
    "TruncElement", "TruncSubmodule", "YoungType",
    "trunc_arith", "submodule_from_generators", "submodule_length",
    "submodule_type", "series_inverse",
]


def series_inverse(u: Poly, k: int) -> Poly:
    """Inverse of a unit power series mod f^k."""
    if not u or pval(u) != 0:
        raise ValueError("not a unit: nonzero constant term required")
    inv0 = 1 / u[0]
    out = [inv0]
    for m in range(1, k):
        acc = None
        for j in range(1, min(m, len(u) - 1) + 1):
            term = u[j] * out[m - j]
            acc = term if acc is None else acc + term
        out.append(-inv0 * acc if acc is not None else u[0] - u[0])
    return pnormal(out)


class TruncElement:
    """An element of O_n² = (k[f]/(fⁿ))², stored as two polynomials mod fⁿ."""

    __slots__ = ("field", "n", "a", "b")

    def __init__(self, field: FieldConfig, n: int, a, b):
        if n < 1:
            raise ValueError("truncation order must be ≥ 1")
        self.field = field
        self.n = n
        self.a: Poly = ptrunc(pnormal([field.of(c) for c in a]), n)
        self.b: Poly = ptrunc(pnormal([field.of(c) for c in b]), n)

    # -- queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.a and not self.b

    def valuation(self) -> int:
        """min f-adic valuation of the two components; n for the zero element."""
        va = pval(self.a)
        vb = pval(self.b)
        va = self.n if va is None else va
        vb = self.n if vb is None else vb
        return min(va, vb)

    def coordinates(self) -> list:
        """Coefficients as a flat vector (a₀, b₀, a₁, b₁, …) of length 2n."""
        zero = self.field.zero()
        out = []
        for j in range(self.n):
            out.append(self.a[j] if j < len(self.a) else zero)
            out.append(self.b[j] if j < len(self.b) else zero)
        return out

    def leading_vector(self) -> tuple[Scalar, Scalar]:
        """The pair of f^v-coefficients at v = valuation (zero element → (0,0))."""
        v = self.valuation()
        zero = self.field.zero()
        ca = self.a[v] if v < len(self.a) else zero
        cb = self.b[v] if v < len(self.b) else zero
        return (ca, cb)

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "TruncElement"):
        if self.n != other.n:
            raise ValueError(f"incompatible local rings O_{self.n} and O_{other.n}")
        if self.field != other.field:
            raise ValueError("incompatible base fields")

    def __add__(self, other: "TruncElement") -> "TruncElement":
        self._check(other)
        return TruncElement(self.field, self.n, padd(self.a, other.a), padd(self.b, other.b))

    def __sub__(self, other: "TruncElement") -> "TruncElement":
        self._check(other)
        return TruncElement(self.field, self.n, psub(self.a, other.a), psub(self.b, other.b))

    def __neg__(self) -> "TruncElement":
        return TruncElement(self.field, self.n, [-c for c in self.a], [-c for c in self.b])

    def scale(self, g) -> "TruncElement":
        """Module action of g ∈ O_n (a polynomial in f, or a scalar)."""
        if isinstance(g, tuple):
            gp: Poly = g
        elif isinstance(g, list):
            gp = pnormal([self.field.of(c) for c in g])
        else:
            gp = pnormal([self.field.of(g)])
        return TruncElement(self.field, self.n,
                            ptrunc(pmul(gp, self.a), self.n),
                            ptrunc(pmul(gp, self.b), self.n))

    def f_shift(self, j: int) -> "TruncElement":
        """Multiply by f^j."""
        if j == 0:
            return self
        pad = (self.field.zero(),) * j
        return TruncElement(self.field, self.n, pad + self.a, pad + self.b)

    # -- identity ---------------------------------------------------------
    def key(self):
        return (self.n, self.a, self.b)

    def __eq__(self, other):
        return isinstance(other, TruncElement) and self.field == other.field \
            and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"({pstr(self.a, 'f')}, {pstr(self.b, 'f')})"


class YoungType:
    """The type (1^{a₁}, 2^{a₂}) of a submodule of O_n²: a two-column diagram.

    ``a1`` counts parts equal to 1, ``a2`` parts equal to 2; the encoded
    partition has total size a₁ + 2a₂ ≤ 2n and at most n parts.
    """

    __slots__ = ("a1", "a2", "n")

    def __init__(self, a1: int, a2: int, n: int):
        if a1 < 0 or a2 < 0 or a1 + a2 > n:
            raise ValueError(f"invalid type (1^{a1},2^{a2}) in O_{n}²")
        self.a1 = a1
        self.a2 = a2
        self.n = n

    @property
    def length(self) -> int:
        return self.a1 + 2 * self.a2

    def parts(self) -> tuple[int, ...]:
        """λ = (λ₁ ≥ λ₂ ≥ … ≥ λ_n) with entries in {0,1,2}."""
        return (2,) * self.a2 + (1,) * self.a1 + (0,) * (self.n - self.a1 - self.a2)

    def add_box_column1(self) -> "YoungType":
        return YoungType(self.a1 + 1, self.a2, self.n)

    def add_box_column2(self) -> "YoungType":
        if self.a1 == 0:
            raise ValueError("cannot add a column-2 box to a type with a₁ = 0")
        return YoungType(self.a1 - 1, self.a2 + 1, self.n)

    def key(self):
        return (self.a1, self.a2, self.n)

    def __eq__(self, other):
        return isinstance(other, YoungType) and self.key() == other.key()

    def __hash__(self):
        return hash(("YoungType",) + self.key())

    def __repr__(self):
        return f"(1^{self.a1},2^{self.a2})"


class TruncSubmodule:
    """An O_n-submodule of O_n² in canonical echelon form (see module docs)."""

    __slots__ = ("field", "n", "alpha1", "h", "beta2")

    def __init__(self, field: FieldConfig, n: int, alpha1: int, h: Poly, beta2: int):
        self.field = field
        self.n = n
        self.alpha1 = alpha1
        self.h = h
        self.beta2 = beta2

    # -- basic data -------------------------------------------------------
    @property
    def length(self) -> int:
        return (self.n - self.alpha1) + (self.n - self.beta2)

    def is_zero(self) -> bool:
        return self.length == 0

    def smith_exponents(self) -> tuple[int, int]:
        """(c₁ ≤ c₂) with M ≅ f^{c₁}O_n ⊕ f^{c₂}O_n (cₖ = n for an absent factor)."""
        vh = pval(self.h)
        vh = self.n if vh is None else vh
        c1 = min(self.alpha1, vh, self.beta2)
        c2 = self.alpha1 + self.beta2 - c1
        return c1, c2

    def type(self) -> YoungType:
        c1, c2 = self.smith_exponents()
        return YoungType(c2 - c1, self.n - c2, self.n)

    # -- normalized two-generator presentation ----------------------------
    def generators(self) -> tuple[TruncElement, "TruncElement | None"]:
        """Normalized pair (v₁, v₂): lengths descending, independent leading vectors.

        v₂ is None when the submodule is cyclic or zero.
        """
        F, n = self.field, self.n
        c1, c2 = self.smith_exponents()
        if c1 >= n:
            return TruncElement(F, n, (), ()), None
        fpow = lambda k: (F.zero(),) * k + (F.one(),) if k < n else ()
        vh = pval(self.h)
        vh = n if vh is None else vh
        if self.alpha1 == c1:
            v1 = TruncElement(F, n, fpow(self.alpha1), self.h)
            v2 = TruncElement(F, n, (), fpow(self.beta2)) if self.beta2 < n else None
        elif not self.h and self.beta2 == c1:
            v1 = TruncElement(F, n, (), fpow(self.beta2))
            v2 = TruncElement(F, n, fpow(self.alpha1), ()) if self.alpha1 < n else None
        else:
            # minimal valuation in the second coordinate of g₁ = (f^{α₁}, h)
            mu_inv = series_inverse(self.h[vh:], n - vh)
            first = ptrunc(pmul(mu_inv, fpow(self.alpha1)), n)
            v1 = TruncElement(F, n, first, fpow(vh))
            v2 = TruncElement(F, n, fpow(c2), ()) if c2 < n else None
        return v1, v2

    # -- membership and comparisons ----------------------------------------
    def contains(self, v: TruncElement) -> bool:
        if v.n != self.n or v.field != self.field:
            raise ValueError("element from an incompatible module")
        a, b = v.a, v.b
        if a:
            va = pval(a)
            if va is None or va < self.alpha1:
                return False
            s = a[self.alpha1:]
            b = psub(b, ptrunc(pmul(s, self.h), self.n))
        vb = pval(b)
        return vb is None or vb >= self.beta2

    def contains_submodule(self, other: "TruncSubmodule") -> bool:
        v1, v2 = other.generators()
        if not self.contains(v1):
            return False
        return v2 is None or self.contains(v2)

    def f_multiple(self, j: int) -> "TruncSubmodule":
        v1, v2 = self.generators()
        gens = [v1.f_shift(j)]
        if v2 is not None:
            gens.append(v2.f_shift(j))
        return submodule_from_generators(gens, self.n, self.field)

    def constraint_rows(self) -> list:
        """Linear functionals cutting out the submodule of O_n² ≅ k^{2n}.

        Coordinates are ordered (a₀, b₀, a₁, b₁, …); an element w lies in
        the submodule iff every returned row pairs to zero with w.  There
        are exactly ``2n − length`` rows: the first α₁ coefficients of the
        first component vanish, and the first β₂ coefficients of
        ``b − (a/f^{α₁})·h`` vanish.
        """
        F, n = self.field, self.n
        zero, one = F.zero(), F.one()
        rows = []
        for j in range(self.alpha1):
            r = [zero] * (2 * n)
            r[2 * j] = one
            rows.append(r)
        for j in range(self.beta2):
            r = [zero] * (2 * n)
            r[2 * j + 1] = one
            for u in range(j + 1):
                if u + self.alpha1 < n and j - u < len(self.h):
                    r[2 * (u + self.alpha1)] = -self.h[j - u]
            rows.append(r)
        return rows

    def key(self):
        return (self.n, self.alpha1, self.h, self.beta2)

    def __eq__(self, other):
        return isinstance(other, TruncSubmodule) and self.field == other.field \
            and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        v1, v2 = self.generators()
        if v1.is_zero():
            return "⟨0⟩"
        if v2 is None:
            return f"⟨{v1}⟩"
        return f"⟨{v1}, {v2}⟩"


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def trunc_arith(op: str, a: TruncElement, b) -> TruncElement:
    """Componentwise arithmetic in O_n²: ``add``, ``mul`` or ``scale``.

    ``add``/``mul`` take two elements (mul is componentwise); ``scale`` takes
    an element and a polynomial in f (the module action).
    """
    if op == "add":
        return a + b
    if op == "mul":
        a._check(b)
        return TruncElement(a.field, a.n, ptrunc(pmul(a.a, b.a), a.n),
                            ptrunc(pmul(a.b, b.b), a.n))
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown operation {op!r}")


def submodule_from_generators(gens: Iterable[TruncElement], n: int,
                              field: FieldConfig) -> TruncSubmodule:
    """Canonical echelon form of the submodule of O_n² spanned by ``gens``."""
    items = [g for g in gens if not g.is_zero()]
    for g in items:
        if g.n != n or g.field != field:
            raise ValueError("generator from an incompatible module")
    # valuation of the first-coordinate ideal
    alpha1 = n
    pivot = None
    for g in items:
        va = pval(g.a)
        if va is not None and va < alpha1:
            alpha1 = va
            pivot = g
    second: list[Poly] = []
    h: Poly = ()
    if pivot is not None:
        u = pivot.a[alpha1:]
        u_inv = series_inverse(u, n - alpha1)
        h = ptrunc(pmul(u_inv, pivot.b), n)
        for g in items:
            if g is pivot:
                continue
            if g.a:
                s = g.a[alpha1:]
                second.append(psub(g.b, ptrunc(pmul(s, h), n)))
            else:
                second.append(g.b)
        # wrap-around: f^{n−α₁}·g₁ lies in M ∩ (0 ⊕ O)
        second.append(ptrunc((field.zero(),) * (n - alpha1) + h, n))
    else:
        second = [g.b for g in items]
    beta2 = n
    for s in second:
        vs = pval(s)
        if vs is not None and vs < beta2:
            beta2 = vs
    h = ptrunc(h, beta2)
    return TruncSubmodule(field, n, alpha1, h, beta2)


def submodule_length(l: TruncSubmodule) -> int:
    """Base-field dimension of the spanned subspace of O_n² (≅ k^{2n})."""
    return l.length


def submodule_type(l: TruncSubmodule) -> YoungType:
    """The two-column type (1^{a₁}, 2^{a₂}) of the submodule."""
    return l.type()


def full_module(field: FieldConfig, n: int) -> TruncSubmodule:
    """O_n² itself."""
    return TruncSubmodule(field, n, 0, (), 0)


def zero_module(field: FieldConfig, n: int) -> TruncSubmodule:
    return TruncSubmodule(field, n, n, (), n)


def element(field: FieldConfig, n: int, a, b) -> TruncElement:
    """Convenience constructor accepting raw coefficient sequences."""
    return TruncElement(field, n, a, b)
