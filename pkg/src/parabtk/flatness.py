"""Residue data of connections and the flatness test for parabolic bundles.

A meromorphic connection with polar divisor D is prescribed, up to local
gauge, by two local exponents per marked point.  This module stores only
what the existence question needs: the polar coefficients of the
*difference* of the two exponents together with their residues, checks
the genericity conditions that make the question well posed, and decides
existence through a residue pairing — a parabolic bundle with free top
modules carries a compatible connection exactly when it is undecomposable
and the pairing vanishes against every square-zero endomorphism.

For the two divisor degrees where non-simple examples survive the
undecomposable+admissible sieve (degree 4 with even bundle degree,
degree 5 with odd bundle degree), the solution set inside each of the
six one- or two-dimensional families of such bundles is a single linear
condition on the family parameters; ``nonsimple_flat_locus`` returns it
in closed form.

Everything is exact over the rationals; residue data is deliberately not
supported over finite fields, where the non-integrality conditions lose
their meaning.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence, Tuple

from .bundle import (
    TOP_ONLY,
    EndoMatrix,
    LineSubbundle,
    MarkedDivisor,
    RefinedParabolicBundle,
    _column_subbundle,
    endomorphism_space,
    is_decomposable,
)
from .fields import FieldConfig
from .linalg import nullspace
from .poly import Poly, padd, pmul, pnormal, ptrunc, pval
from .truncated import TruncElement, series_inverse

__all__ = [
    "FormalData",
    "validate_formal_data",
    "NilpotentEndo",
    "nilpotent_parabolic_endos",
    "residue_pairing",
    "is_lambda_flat",
    "FlatLocus",
    "nonsimple_flat_locus",
]


class FormalData:
    """Polar data of a difference of two local exponents, over ℚ.

    ``parts[i]`` lists the coefficients ``(a_{i,1}, …, a_{i,n_i})`` of
    the difference one-form ``Σ_j a_{i,j} dx/(x−t_i)^j`` at the i-th
    marked point, deepest coefficient last; ``res_plus[i]`` and
    ``res_minus[i]`` are the residues of the two exponents themselves,
    so ``a_{i,1} = res_plus[i] − res_minus[i]`` is enforced.  ``degree``
    is the bundle degree the data is meant for.
    """

    __slots__ = ("parts", "res_plus", "res_minus", "degree")

    def __init__(self, parts: Sequence[Sequence], res_plus: Sequence,
                 res_minus: Sequence, degree: int):
        parts = tuple(tuple(Fraction(a) for a in row) for row in parts)
        rp = tuple(Fraction(r) for r in res_plus)
        rm = tuple(Fraction(r) for r in res_minus)
        if not (len(parts) == len(rp) == len(rm)):
            raise ValueError("one coefficient row and residue pair per point")
        if any(not row for row in parts):
            raise ValueError("every point needs at least its residue coefficient")
        for row, p, m in zip(parts, rp, rm):
            if row[0] != p - m:
                raise ValueError(
                    "the first coefficient must equal the residue difference")
        self.parts = parts
        self.res_plus = rp
        self.res_minus = rm
        self.degree = int(degree)

    @property
    def orders(self) -> Tuple[int, ...]:
        return tuple(len(row) for row in self.parts)

    def coefficient(self, i: int, j: int) -> Fraction:
        """The coefficient a_{i,j} (j = 1 is the residue level)."""
        return self.parts[i][j - 1]

    def key(self):
        return (self.parts, self.res_plus, self.res_minus, self.degree)

    def __eq__(self, other):
        if not isinstance(other, FormalData):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"FormalData(parts={self.parts}, res_plus={self.res_plus}, "
                f"res_minus={self.res_minus}, degree={self.degree})")


#: names of the genericity conditions checked by validate_formal_data
POLE_ORDER = "pole-order"
RESIDUE_SUM = "residue-sum"
INTEGRAL_SIGN_SUM = "integral-sign-sum"
RESONANCE = "resonance"


def validate_formal_data(fd: FormalData, D: MarkedDivisor) -> List[str]:
    """Names of the genericity conditions the data violates (empty = valid).

    Exact rational checks:
      - ``pole-order``: the deepest coefficient is nonzero at every point,
      - ``residue-sum``: the residues of the two exponents sum to the degree,
      - ``integral-sign-sum``: no choice of one residue per point has an
        integral total,
      - ``resonance``: at simple points the residue difference is not an
        integer.

    A shape mismatch between the data and the divisor is a usage error,
    not a violation.
    """
    if fd.orders != tuple(n_i for _, n_i in D):
        raise ValueError(
            f"data orders {fd.orders} do not match the divisor multiplicities")
    bad = []
    if any(row[-1] == 0 for row in fd.parts):
        bad.append(POLE_ORDER)
    if sum(fd.res_plus) + sum(fd.res_minus) != fd.degree:
        bad.append(RESIDUE_SUM)
    for choice in product(*zip(fd.res_plus, fd.res_minus)):
        if sum(choice).denominator == 1:
            bad.append(INTEGRAL_SIGN_SUM)
            break
    for row, (_, n_i) in zip(fd.parts, D):
        if n_i == 1 and row[0].denominator == 1:
            bad.append(RESONANCE)
            break
    return bad


class NilpotentEndo:
    """A square-zero endomorphism preserving the top modules.

    Carries the matrix itself, the saturated invariant line (kernel =
    image), and the polynomial giving the induced map from the quotient
    by the line back into the line.
    """

    __slots__ = ("matrix", "line", "f")

    def __init__(self, matrix: EndoMatrix, line: LineSubbundle, f: Poly):
        self.matrix = matrix
        self.line = line
        self.f = pnormal(tuple(f))

    def __repr__(self):
        return f"NilpotentEndo({self.matrix!r}, line={self.line!r})"


def _combine(mats: Sequence[EndoMatrix], coeffs: Sequence) -> EndoMatrix:
    out = None
    for c, m in zip(coeffs, mats):
        if not c:
            continue
        term = m.scale_by(c)
        out = term if out is None else out + term
    assert out is not None
    return out


def _polar(x: EndoMatrix, y: EndoMatrix):
    """The symmetric bilinear form polarizing the determinant."""
    return (x + y).det() - x.det() - y.det()


def _square_zero_subspace(field: FieldConfig,
                          space: List[EndoMatrix]) -> List[EndoMatrix]:
    """The linear subspace of square-zero elements of a traceless space.

    A traceless 2×2 matrix is square-zero exactly when its determinant
    vanishes.  Whenever the determinant-zero elements of the span form a
    linear subspace, that subspace is polar-orthogonal to the whole
    span, so intersecting with the radical of the polarized form finds
    it; one re-check suffices since the radical is polar-isotropic.
    """
    while space:
        gram = [[_polar(u, v) for u in space] for v in space]
        if all(not entry for row in gram for entry in row):
            break
        sols = nullspace(field, gram, len(space))
        space = [_combine(space, z) for z in sols]
    assert all(m.det() == field.zero() for m in space)
    return space


def _square_zero_brute(field: FieldConfig,
                       space: List[EndoMatrix]) -> List[EndoMatrix]:
    """Exhaustive variant over a finite field (polarization can degenerate
    in small characteristic): keep the coefficient vectors whose combo has
    zero determinant, provided they form a linear space."""
    from .linalg import rref
    zero, vecs = field.zero(), []
    for coeffs in product(list(field.elements()), repeat=len(space)):
        if not any(coeffs):
            continue
        if _combine(space, coeffs).det() == zero:
            vecs.append(list(coeffs))
    if not vecs:
        return []
    basis, _ = rref(field, vecs)
    for x in basis:
        for y in basis:
            pair = [a + b for a, b in zip(x, y)]
            if any(pair) and _combine(space, pair).det() != zero:
                raise ValueError(
                    "square-zero endomorphisms do not form a linear space")
    return [_combine(space, z) for z in basis]


def _nilpotent_parts(bundle, m: EndoMatrix) -> Tuple[LineSubbundle, Poly]:
    """Invariant line and induced polynomial of a square-zero matrix."""
    line = _column_subbundle(bundle, m.a, m.c) or \
        _column_subbundle(bundle, m.b, m.d)
    assert line is not None
    if bundle.d1 < bundle.d2:
        # the off-diagonal degree bounds force strict lower-triangularity
        assert not m.a and not m.b and not m.d
        return line, m.c
    # constant matrix: evaluate on a constant complement of the line
    w = ((m.field.one(),), ()) if line.q else ((), (m.field.one(),))
    image = (padd(pmul(m.a, w[0]), pmul(m.b, w[1])),
             padd(pmul(m.c, w[0]), pmul(m.d, w[1])))
    if line.q:
        f = image[1][0] / line.q[0]
    else:
        f = image[0][0] / line.p[0]
    return line, (f,)


def nilpotent_parabolic_endos(B: RefinedParabolicBundle) -> List[NilpotentEndo]:
    """Basis of the square-zero endomorphisms preserving the top modules.

    The top modules must be free.  Every such endomorphism is traceless
    with vanishing determinant; as soon as one marked direction exists,
    these elements form a linear subspace of the traceless part of the
    top-level endomorphism space, and a basis of it is returned.  A
    simple bundle yields the empty list.
    """
    field = B.field
    basis = endomorphism_space(B, TOP_ONLY)
    traces = [[m.trace() for m in basis]]
    combos = nullspace(field, traces, len(basis))
    space = [_combine(basis, z) for z in combos]
    if field.is_finite:
        space = _square_zero_brute(field, space)
    else:
        space = _square_zero_subspace(field, space)
    out = []
    for m in space:
        line, f = _nilpotent_parts(B.bundle, m)
        out.append(NilpotentEndo(m, line, f))
    return out


def _multiplier(field: FieldConfig, v: TruncElement, w: TruncElement,
                n: int) -> Poly:
    """The truncated series μ with w = μ·v, for v with a unit coordinate."""
    if v.a and pval(v.a) == 0:
        mu = ptrunc(pmul(w.a, series_inverse(v.a, n)), n)
        other, ref = w.b, v.b
    elif v.b and pval(v.b) == 0:
        mu = ptrunc(pmul(w.b, series_inverse(v.b, n)), n)
        other, ref = w.a, v.a
    else:
        raise ValueError("free module generator must have a unit coordinate")
    if pnormal(ptrunc(pmul(mu, ref), n)) != pnormal(ptrunc(other, n)):
        raise ValueError("endomorphism does not act on the module by "
                         "multiplication")
    return mu


def residue_pairing(B: RefinedParabolicBundle, N, fd: FormalData) -> Fraction:
    """Sum over the poles of the induced action paired with the polar data.

    At each point the endomorphism acts on the free top module as
    multiplication by a truncated series μ, and the point contributes
    ``Σ_j μ_{j−1}·a_{i,j}`` — the residue of the product of μ with the
    difference one-form.  ``N`` may be a :class:`NilpotentEndo` or a raw
    :class:`EndoMatrix`.  Raises when the endomorphism fails to preserve
    some top module.
    """
    if B.field.is_finite:
        raise ValueError("residue data is defined over the rationals")
    if fd.orders != tuple(n_i for _, n_i in B.divisor):
        raise ValueError("data orders do not match the divisor")
    mat = N.matrix if isinstance(N, NilpotentEndo) else N
    total = Fraction(0)
    for i, (t, n_i) in enumerate(B.divisor):
        top = B.structure(i).top
        gens = [v for v in top.generators() if v is not None and not v.is_zero()]
        if len(gens) != 1 or top.length != n_i:
            raise ValueError("the residue pairing needs free top modules")
        mu = _multiplier(B.field, gens[0], mat.apply_local(gens[0], t), n_i)
        row = fd.parts[i]
        for j in range(min(len(mu), n_i)):
            total += Fraction(mu[j]) * row[j]
    return total


def is_lambda_flat(B: RefinedParabolicBundle, fd: FormalData) -> bool:
    """Whether a connection with the prescribed polar data exists.

    Requires valid data of matching degree and free top modules.  The
    bundle must be undecomposable, and the residue pairing must vanish
    against every square-zero endomorphism; decomposable bundles always
    fail (either exponent would have to satisfy the residue theorem on a
    factor, contradicting the non-integral sign sums).
    """
    if B.field.is_finite:
        raise ValueError("residue data is defined over the rationals")
    problems = validate_formal_data(fd, B.divisor)
    if problems:
        raise ValueError("invalid residue data: " + ", ".join(problems))
    if fd.degree != B.bundle.degree:
        raise ValueError(
            f"data degree {fd.degree} does not match the bundle degree "
            f"{B.bundle.degree}")
    flag, _ = is_decomposable(B)
    if flag:
        return False
    return all(residue_pairing(B, nil, fd) == 0
               for nil in nilpotent_parabolic_endos(B))


class FlatLocus:
    """The flat members of one family of non-simple parabolic bundles.

    ``form`` lists rational coefficients of the single linear condition
    ``Σ_k form[k]·c_k = 0`` on the family parameters ``variables``;
    ``kind`` is ``"point"`` for two-parameter families and ``"line"``
    for three-parameter ones; for a point, ``point`` holds the unique
    projective solution scaled so its first nonzero coordinate is 1.
    ``roles`` maps the family's point order (highest multiplicity first)
    to divisor indices.
    """

    __slots__ = ("mults", "roles", "variables", "form", "kind", "point")

    def __init__(self, mults: Tuple[int, ...], roles: Tuple[int, ...],
                 variables: Tuple[str, ...], form: Tuple[Fraction, ...]):
        self.mults = mults
        self.roles = roles
        self.variables = variables
        self.form = form
        self.kind = "point" if len(variables) == 2 else "line"
        if self.kind == "point":
            sol = (form[1], -form[0])
            unit = next(c for c in sol if c)
            self.point: Optional[Tuple[Fraction, ...]] = \
                tuple(c / unit for c in sol)
        else:
            self.point = None

    def contains(self, params: Sequence) -> bool:
        """Whether a parameter tuple satisfies the flatness condition."""
        if len(params) != len(self.variables):
            raise ValueError(f"expected {len(self.variables)} parameters")
        return sum((f * Fraction(c) for f, c in zip(self.form, params)),
                   Fraction(0)) == 0

    def __repr__(self):
        cond = " + ".join(f"({f})*{v}" for f, v in zip(self.form, self.variables))
        return f"FlatLocus({self.kind}: {cond} = 0)"


def nonsimple_flat_locus(D: MarkedDivisor, fd: FormalData) -> FlatLocus:
    """The flatness condition inside a family of non-simple bundles.

    Covers the divisor shapes whose undecomposable admissible non-simple
    bundles form positive-dimensional families: multiplicity patterns
    (2,2) and (4) for even bundle degree, and (2,2,1), (3,2), (4,1), (5)
    for odd degree.  In each family the parabolic direction at a point
    of multiplicity n_i reads ``(g_i(z); 1)`` with ``g_i`` the generic
    polynomial vanishing to half depth (or ``(1; 0)`` at simple points),
    the square-zero endomorphism is unique up to scale, and the residue
    pairing reduces to one linear form in the parameters — computed here
    in closed form from the dominant coefficients of the data.

    Unsupported divisor shapes raise; so does invalid or parity-mismatched
    data.
    """
    if D.field.is_finite:
        raise ValueError("residue data is defined over the rationals")
    problems = validate_formal_data(fd, D)
    if problems:
        raise ValueError("invalid residue data: " + ", ".join(problems))
    order = sorted(range(len(D)), key=lambda i: -D.point(i)[1])
    mults = tuple(D.point(i)[1] for i in order)
    ts = [Fraction(D.point(i)[0]) for i in order]
    a = lambda r, j: fd.parts[order[r]][j - 1]
    if mults in ((2, 2), (4,)):
        if fd.degree % 2:
            raise ValueError("this divisor shape needs an even degree")
    elif mults in ((2, 2, 1), (3, 2), (4, 1), (5,)):
        if fd.degree % 2 == 0:
            raise ValueError("this divisor shape needs an odd degree")
    else:
        raise ValueError(f"divisor shape {mults} has no non-simple "
                         "undecomposable admissible families")
    if mults == (2, 2):
        form = (a(0, 2), a(1, 2))
        variables = ("c1", "c2")
    elif mults == (4,):
        form = (a(0, 3), a(0, 4))
        variables = ("c1", "c2")
    elif mults == (2, 2, 1):
        form = ((ts[0] - ts[2]) * a(0, 2), (ts[1] - ts[2]) * a(1, 2))
        variables = ("c1", "c2")
    elif mults == (3, 2):
        form = (a(0, 3), Fraction(0), (ts[1] - ts[0]) * a(1, 2))
        variables = ("c1", "c2", "c3")
    elif mults == (4, 1):
        form = ((ts[0] - ts[1]) * a(0, 3) + a(0, 4),
                (ts[0] - ts[1]) * a(0, 4))
        variables = ("c1", "c2")
    else:  # (5,)
        form = (a(0, 4), a(0, 5), Fraction(0))
        variables = ("c1", "c2", "c3")
    return FlatLocus(mults, tuple(order), variables, form)
