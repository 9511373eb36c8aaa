"""Elementary transformations of refined parabolic bundles at a marked point.

The transformation at the point ``n[t]`` replaces the bundle E by the
kernel sheaf E' of ``E -> E|_{n[t]}/l_n`` and re-threads the chain through
the tower of kernels

    E^{(k)} := ker(E -> E|_{n[t]}/l_k),      k = 0..n,

which interpolates ``E ⊃ E^{(n)} ⊃ ... ⊃ E^{(0)} = E(-n[t])`` with
unit-length steps.  The transformed chain lives on the tower
``(E')^{(n-k)} = E^{(k)}(-k[t])``, and its levels are re-expressed in a
canonical frame of E' obtained by shifted column reduction (Popov form)
of the lattice basis, which also computes the new splitting type.

Everything is exact.  Lattices are k[x]-submodules of k[x]² in the affine
chart, stored as 2x2 polynomial basis matrices (columns); the degree data
``(d1, d2)`` at infinity fixes the weighting used for the reduction.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .bundle import LineSubbundle, RefinedParabolicBundle, SplitBundle
from .fields import FieldConfig, Scalar
from .filtration import RefinedStructure, StandardTableau
from .linalg import rref, solve
from .poly import (
    Poly,
    padd,
    pdeg,
    pdiv_exact,
    pdivmod,
    pgcd,
    pmul,
    pnormal,
    pscale,
    pshift,
    psub,
    ptrunc,
)
from .stability import Weights
from .truncated import (
    TruncElement,
    YoungType,
    element,
    series_inverse,
    submodule_from_generators,
)

__all__ = [
    "LatticeChain",
    "canonical_form",
    "elm_minus",
    "twist",
    "elm_named",
    "type_transform_formula",
    "induced_subbundle",
    "transform_weights",
]

Col = Tuple[Poly, Poly]


# ---------------------------------------------------------------------------
# polynomial 2x2 lattice utilities
# ---------------------------------------------------------------------------

def _det(cols: Sequence[Col]) -> Poly:
    (a, c), (b, d) = cols
    return psub(pmul(a, d), pmul(b, c))


def _monomial(field: FieldConfig, k: int) -> Poly:
    return (field.zero(),) * k + (field.one(),)


def _col_scale_shift(field: FieldConfig, lam: Scalar, k: int, col: Col) -> Col:
    """lam · x^k · col."""
    mono = pscale(lam, _monomial(field, k))
    return (pmul(mono, col[0]), pmul(mono, col[1]))


def _col_sub(a: Col, b: Col) -> Col:
    return (psub(a[0], b[0]), psub(a[1], b[1]))


def _module_basis(field: FieldConfig, cols: Sequence[Col]) -> Tuple[Col, Col]:
    """A 2-column k[x]-basis of the span of the given columns.

    Requires the span to have full rank (finite colength in k[x]²).
    """
    work: List[Col] = [c for c in cols if c[0] or c[1]]
    # make the first row principal: gcd by repeated column reduction
    while True:
        nz = [j for j, c in enumerate(work) if c[0]]
        if len(nz) <= 1:
            break
        lo = min(nz, key=lambda j: pdeg(work[j][0]))
        hi = next(j for j in nz if j != lo and
                  pdeg(work[j][0]) >= pdeg(work[lo][0]))
        q, r = pdivmod(work[hi][0], work[lo][0])
        work[hi] = (r, psub(work[hi][1], pmul(q, work[lo][1])))
        if not work[hi][0] and not work[hi][1]:
            del work[hi]
    nz = [j for j, c in enumerate(work) if c[0]]
    if not nz:
        raise ValueError("lattice is not of full rank")
    u = work[nz[0]]
    rest = [c[1] for j, c in enumerate(work) if j != nz[0] and c[1]]
    if not rest:
        raise ValueError("lattice is not of full rank")
    h = rest[0]
    for s in rest[1:]:
        h = pgcd(h, s)
    u = (u[0], pdivmod(u[1], h)[1])
    return (u, (pnormal(()), h))


def _shifted_degree(col: Col, shifts: Tuple[int, int]) -> int:
    cand = [pdeg(col[i]) + shifts[i] for i in (0, 1) if col[i]]
    if not cand:
        raise ValueError("zero column in a lattice basis")
    return max(cand)


def _leading(field: FieldConfig, col: Col, shifts: Tuple[int, int],
             delta: int) -> Tuple[Scalar, Scalar]:
    out = []
    for i in (0, 1):
        d = delta - shifts[i]
        p = col[i]
        out.append(p[d] if 0 <= d < len(p) and len(p) - 1 == d
                   else field.zero())
    return tuple(out)


def _pivot_row(lead: Tuple[Scalar, Scalar]) -> int:
    """Largest row index attaining the shifted column degree."""
    return 1 if lead[1] else 0


def _popov(field: FieldConfig, cols: Sequence[Col],
           shifts: Tuple[int, int]) -> Tuple[Tuple[Col, Col], Tuple[int, int]]:
    """Canonical shifted-Popov basis of the span, columns ordered by
    descending shifted degree (ties broken by ascending pivot row).

    Returns the two columns and their shifted degrees.
    """
    a, b = _module_basis(field, cols)
    for _ in range(1000):
        da, db = _shifted_degree(a, shifts), _shifted_degree(b, shifts)
        la, lb = _leading(field, a, shifts, da), _leading(field, b, shifts, db)
        det = la[0] * lb[1] - la[1] * lb[0]
        if not det:
            # reduce the column of larger shifted degree by the other
            if da >= db:
                i = 0 if lb[0] else 1
                lam = la[i] / lb[i]
                a = _col_sub(a, _col_scale_shift(field, lam, da - db, b))
            else:
                i = 0 if la[0] else 1
                lam = lb[i] / la[i]
                b = _col_sub(b, _col_scale_shift(field, lam, db - da, a))
            continue
        pa, pb = _pivot_row(la), _pivot_row(lb)
        if pa == pb:
            if da >= db:
                lam = la[pa] / lb[pb]
                a = _col_sub(a, _col_scale_shift(field, lam, da - db, b))
            else:
                lam = lb[pb] / la[pa]
                b = _col_sub(b, _col_scale_shift(field, lam, db - da, a))
            continue
        # monic pivots
        if la[pa] != field.one():
            inv = field.one() / la[pa]
            a = (pscale(inv, a[0]), pscale(inv, a[1]))
            continue
        if lb[pb] != field.one():
            inv = field.one() / lb[pb]
            b = (pscale(inv, b[0]), pscale(inv, b[1]))
            continue
        # degrees in each pivot row are maximal at the pivot
        if b[pa] and pdeg(b[pa]) >= pdeg(a[pa]):
            q, _ = pdivmod(b[pa], a[pa])
            b = _col_sub(b, (pmul(q, a[0]), pmul(q, a[1])))
            continue
        if a[pb] and pdeg(a[pb]) >= pdeg(b[pb]):
            q, _ = pdivmod(a[pb], b[pb])
            a = _col_sub(a, (pmul(q, b[0]), pmul(q, b[1])))
            continue
        break
    else:  # pragma: no cover
        raise RuntimeError("column reduction did not converge")
    da, db = _shifted_degree(a, shifts), _shifted_degree(b, shifts)
    pa = _pivot_row(_leading(field, a, shifts, da))
    pb = _pivot_row(_leading(field, b, shifts, db))
    if (-da, pa) > (-db, pb):
        a, b, da, db = b, a, db, da
    return (a, b), (da, db)


def _solve_in_frame(field: FieldConfig, frame: Tuple[Col, Col],
                    col: Col) -> Col:
    """Coordinates of ``col`` in the basis ``frame`` (exact division)."""
    (a, c), (b, d) = frame
    det = psub(pmul(a, d), pmul(b, c))
    c1 = psub(pmul(d, col[0]), pmul(b, col[1]))
    c2 = psub(pmul(a, col[1]), pmul(c, col[0]))
    return (_pdiv_or_raise(c1, det), _pdiv_or_raise(c2, det))


def _pdiv_or_raise(a: Poly, b: Poly) -> Poly:
    if not a:
        return a
    q, r = pdivmod(a, b)
    if r:
        raise ValueError("column does not lie in the lattice")
    return q


def _lift(field: FieldConfig, p: Poly, t: Scalar) -> Poly:
    """A polynomial in f = x − t, re-expanded in x."""
    return pshift(p, -field.of(t))


def _localize(field: FieldConfig, p: Poly, t: Scalar, n: int) -> Poly:
    """A polynomial in x, expanded in powers of f = x − t and truncated."""
    return ptrunc(pshift(p, field.of(t)), n)


# ---------------------------------------------------------------------------
# lattice chains
# ---------------------------------------------------------------------------

class LatticeChain:
    """The kernel tower of a refined structure as k[x]-lattices in k[x]².

    ``basis(k)`` is a 2-column basis of the affine lattice of ``E^{(k)}``;
    consecutive lattices differ by unit-length steps (determinant degrees
    drop by exactly one as k grows) and are nested.
    """

    __slots__ = ("field", "t", "n", "d1", "d2", "bases")

    def __init__(self, field: FieldConfig, t: Scalar, n: int, d1: int,
                 d2: int, bases: Sequence[Tuple[Col, Col]]):
        bases = tuple(bases)
        if len(bases) != n + 1:
            raise ValueError(f"expected {n + 1} lattices, got {len(bases)}")
        self.field = field
        self.t = field.of(t)
        self.n = n
        self.d1 = d1
        self.d2 = d2
        self.bases = bases
        for k in range(n):
            if self.colength(k) - self.colength(k + 1) != 1:
                raise ValueError(f"step {k} -> {k + 1} is not unit length")
            for col in bases[k]:
                _solve_in_frame(field, bases[k + 1], col)

    @classmethod
    def from_structure(cls, field: FieldConfig, t: Scalar, n: int,
                       d1: int, d2: int,
                       structure: RefinedStructure) -> "LatticeChain":
        t = field.of(t)
        fn = _lift(field, _monomial(field, n), t)
        zero = pnormal(())
        ambient = [(fn, zero), (zero, fn)]
        bases = [_module_basis(field, ambient)]
        for k in range(1, n + 1):
            cols = list(ambient)
            for v in structure.level(k).generators():
                if v is not None:
                    cols.append((_lift(field, v.a, t), _lift(field, v.b, t)))
            bases.append(_module_basis(field, cols))
        lat = cls(field, t, n, d1, d2, bases)
        if lat.colength(0) != 2 * n:
            raise ValueError("bottom lattice is not f^n times the ambient one")
        return lat

    def colength(self, k: int) -> int:
        return pdeg(_det(self.bases[k]))

    def basis(self, k: int) -> Tuple[Col, Col]:
        return self.bases[k]

    def transformed(self) -> "LatticeChain":
        """The tower of the transformed bundle: (E')^{(j)} = E^{(n-j)}(-(n-j)t),
        still expressed as lattices inside the ambient bundle."""
        F, n, t = self.field, self.n, self.t
        bases = []
        for j in range(n + 1):
            shift = _monomial(F, 0)
            if n - j:
                shift = tuple(pshift(_monomial(F, n - j), -t))
            cols = [(pmul(shift, c[0]), pmul(shift, c[1]))
                    for c in self.bases[n - j]]
            bases.append(_module_basis(F, cols))
        return LatticeChain(F, t, n, self.d1, self.d2, bases)


# ---------------------------------------------------------------------------
# the transformations
# ---------------------------------------------------------------------------

def _unit_inverse_matrix(field: FieldConfig, frame: Tuple[Col, Col],
                         t: Scalar, n: int) -> Tuple[Tuple[Poly, ...], ...]:
    """(frame mod f^n)⁻¹ over O_n at a point where the frame is invertible."""
    g = [[_localize(field, frame[j][i], t, n) for j in (0, 1)] for i in (0, 1)]
    det = ptrunc(psub(pmul(g[0][0], g[1][1]), pmul(g[0][1], g[1][0])), n)
    inv_det = series_inverse(det, n)
    mul = lambda p: ptrunc(pmul(inv_det, p), n)
    return ((mul(g[1][1]), mul([-c for c in g[0][1]])),
            (mul([-c for c in g[1][0]]), mul(g[0][0])))


def _apply_matrix(field: FieldConfig, n: int, u, v: TruncElement) -> TruncElement:
    a = padd(pmul(u[0][0], v.a), pmul(u[0][1], v.b))
    b = padd(pmul(u[1][0], v.a), pmul(u[1][1], v.b))
    return element(field, n, ptrunc(a, n), ptrunc(b, n))


def _map_structure(field: FieldConfig, s: RefinedStructure,
                   u) -> RefinedStructure:
    """Image of every level under an invertible local matrix u over O_n."""
    chain = []
    for l in s.chain:
        gens = [_apply_matrix(field, s.order, u, v)
                for v in l.generators() if v is not None]
        chain.append(submodule_from_generators(gens, s.order, field))
    return RefinedStructure(field, s.order, chain)


def _transport_structure(field: FieldConfig, s: RefinedStructure,
                         frame: Tuple[Col, Col], t: Scalar) -> RefinedStructure:
    return _map_structure(field, s,
                          _unit_inverse_matrix(field, frame, t, s.order))


def _elm_minus_data(B: RefinedParabolicBundle, i0: int):
    field = B.field
    t, n = B.divisor.point(i0)
    d1, d2 = B.bundle.d1, B.bundle.d2
    lat = LatticeChain.from_structure(field, t, n, d1, d2, B.structure(i0))
    frame, deltas = _popov(field, lat.basis(n), (-d1, -d2))
    d1p, d2p = -deltas[0], -deltas[1]
    if d1p + d2p != B.bundle.degree - n:
        raise AssertionError("re-splitting lost degree")  # pragma: no cover
    primed = lat.transformed()
    chain = []
    for j in range(n, 0, -1):
        gens = []
        for col in primed.basis(j):
            c1, c2 = _solve_in_frame(field, frame, col)
            gens.append(element(field, n, _localize(field, c1, t, n),
                                _localize(field, c2, t, n)))
        chain.append(submodule_from_generators(gens, n, field))
    structures = []
    for i in range(len(B.divisor)):
        if i == i0:
            structures.append(RefinedStructure(field, n, chain))
        else:
            ti, _ = B.divisor.point(i)
            structures.append(
                _transport_structure(field, B.structure(i), frame, ti))
    Bp = RefinedParabolicBundle(field, SplitBundle(d1p, d2p), B.divisor,
                                structures)
    return Bp, frame


def elm_minus(B: RefinedParabolicBundle, i0: int) -> RefinedParabolicBundle:
    """The elementary transformation at the full multiplicity of point i0.

    The result has degree ``deg E − n_{i0}``; structures at the other
    points are transported through the frame change, and the new chain at
    i0 is read off the transformed kernel tower.
    """
    return _elm_minus_data(B, i0)[0]


def induced_subbundle(B: RefinedParabolicBundle, i0: int,
                      L: LineSubbundle) -> LineSubbundle:
    """The saturated image of a line subbundle under ``E' ⊂ E``."""
    Bp, frame = _elm_minus_data(B, i0)
    c1, c2 = _solve_in_frame_rational(B.field, frame, (tuple(L.p), tuple(L.q)))
    g = pgcd(c1, c2) if c1 and c2 else (c1 or c2)
    c1 = pdiv_exact(c1, g) if c1 else c1
    c2 = pdiv_exact(c2, g) if c2 else c2
    d1p, d2p = Bp.bundle.d1, Bp.bundle.d2
    e = -max([pdeg(c1) - d1p] * bool(c1) + [pdeg(c2) - d2p] * bool(c2))
    return LineSubbundle(e, c1, c2)


def _solve_in_frame_rational(field: FieldConfig, frame: Tuple[Col, Col],
                             col: Col) -> Col:
    """Like _solve_in_frame but for a column only rationally in the span:
    returns the primitive part of adj(frame)·col."""
    (a, c), (b, d) = frame
    c1 = psub(pmul(d, col[0]), pmul(b, col[1]))
    c2 = psub(pmul(a, col[1]), pmul(c, col[0]))
    return (c1, c2)


def transform_weights(B: RefinedParabolicBundle, i0: int, w: Weights) -> Weights:
    """Weights for the transformed bundle: the row at i0 reverses and
    flips (w'_{i0,k} = 1 − w_{i0,n−k+1}); other rows are unchanged."""
    rows = []
    for i, row in enumerate(w.values):
        if i == i0:
            rows.append(tuple(1 - v for v in reversed(row)))
        else:
            rows.append(row)
    return Weights(w.orders, rows)


def twist(B: RefinedParabolicBundle, m: int, i: int = 0) -> RefinedParabolicBundle:
    """Tensor by the degree-m line bundle supported at point i.

    The local identifications multiply each canonical frame by a unit of
    the truncated ring, and submodules are stable under units, so the
    chains are unchanged; only the splitting degrees shift.  The result
    is therefore independent of i.
    """
    bundle = SplitBundle(B.bundle.d1 + m, B.bundle.d2 + m)
    return RefinedParabolicBundle(B.field, bundle, B.divisor, B.structures)


# ---------------------------------------------------------------------------
# canonical representatives of isomorphism classes
# ---------------------------------------------------------------------------

def _apply_global_matrix(B: RefinedParabolicBundle,
                         g) -> RefinedParabolicBundle:
    """Transport every chain through a global automorphism of the bundle.

    ``g`` is a row-major 2×2 matrix of polynomials in x with constant
    nonzero determinant, satisfying the degree bounds of an endomorphism
    of O(d₁)⊕O(d₂); it is localized at each marked point and applied to
    the generators of every level.
    """
    field = B.field
    structures = []
    for i in range(len(B.divisor)):
        t, n_i = B.divisor.point(i)
        u = tuple(tuple(_localize(field, p, t, n_i) for p in row)
                  for row in g)
        structures.append(_map_structure(field, B.structure(i), u))
    return RefinedParabolicBundle(field, B.bundle, B.divisor, structures)


def _h_layout(B: RefinedParabolicBundle):
    """Levels carrying an h-parameter, as (point, level, α₁, β₂) slots."""
    out = []
    for i in range(len(B.divisor)):
        s = B.structure(i)
        for k in range(1, s.order + 1):
            l = s.level(k)
            if l.alpha1 < l.n and l.beta2 > 0:
                out.append((i, k, l.alpha1, l.beta2))
    return out


def _h_vector(B: RefinedParabolicBundle, layout) -> list:
    """Concatenated coefficients of the h-parameters along the layout."""
    zero = B.field.zero()
    out = []
    for i, k, _, b2 in layout:
        h = B.structure(i).level(k).h
        out.extend(h[j] if j < len(h) else zero for j in range(b2))
    return out


def _shear_columns(B: RefinedParabolicBundle, layout, D: int):
    """Action of the monomial shears x^b, b = 0..D, on the h-vector.

    The shear (v₁, v₂) ↦ (v₁, q·v₁ + v₂) moves each echelon parameter by
    h ↦ h + q_t·f^{α₁} mod f^{β₂}, which is linear in q; the columns of
    this map generate the reachable displacements.
    """
    field = B.field
    zero = field.zero()
    cols = []
    for b in range(D + 1):
        mono = _monomial(field, b)
        col = []
        for i, k, a1, b2 in layout:
            t, n_i = B.divisor.point(i)
            w = ptrunc((zero,) * a1 + _localize(field, mono, t, n_i), b2)
            col.extend(w[j] if j < len(w) else zero for j in range(b2))
        cols.append(col)
    return cols


def canonical_form(B: RefinedParabolicBundle) -> RefinedParabolicBundle:
    """The canonical representative of the bundle's isomorphism class.

    Isomorphisms fixing the splitting and the marked points are the global
    automorphisms of O(d₁)⊕O(d₂): maps (v₁, v₂) ↦ (λv₁, q·v₁ + μv₂) with
    λ, μ nonzero constants and deg q ≤ d₂ − d₁, together with all constant
    invertible maps when d₁ = d₂.  The orbit of the chain data under this
    group is reduced deterministically:

      1. (d₁ = d₂ only) the socle direction of the first point's length-1
         level is rotated to (0, 1), leaving triangular automorphisms;
      2. the shear q is chosen so that the h-data vanishes on the echelon
         pivots of the reachable displacement space;
      3. the leftover scaling makes the first nonzero h-coefficient 1.

    The result depends only on the isomorphism class — for every
    automorphism g, canonical_form(g·B) == canonical_form(B) — and the map
    is idempotent.  Splitting, divisor, level shapes, intersection
    profiles of transported subbundles and all stability verdicts are
    those of B.
    """
    field = B.field
    one = field.one()
    out = B
    if B.bundle.d1 == B.bundle.d2 and len(B.divisor):
        l1 = out.structure(0).level(1)
        if l1.alpha1 < l1.n:
            c = l1.h[l1.n - 1] if l1.n - 1 < len(l1.h) else field.zero()
            rot = ((pnormal((c,)), (-one,)), ((one,), pnormal(())))
            out = _apply_global_matrix(out, rot)
    layout = _h_layout(out)
    if not layout:
        return out
    D = B.bundle.d2 - B.bundle.d1
    target = _h_vector(out, layout)
    cols = _shear_columns(out, layout, D)
    red, pivots = rref(field, cols)
    reduced = list(target)
    for row, p in zip(red, pivots):
        coef = reduced[p]
        if coef:
            reduced = [tv - coef * rv for tv, rv in zip(reduced, row)]
    delta = [tv - rv for tv, rv in zip(target, reduced)]
    if any(delta):
        rows = [[cols[b][r] for b in range(D + 1)] for r in range(len(delta))]
        x = solve(field, rows, delta)
        assert x is not None  # delta lies in the span of the columns
        q = pnormal(tuple(-xb for xb in x))
        if q:
            shear = (((one,), pnormal(())), (q, (one,)))
            out = _apply_global_matrix(out, shear)
    first = next((v for v in _h_vector(out, layout) if v), None)
    if first is not None and first != one:
        scale = (((one,), pnormal(())), (pnormal(()), (one / first,)))
        out = _apply_global_matrix(out, scale)
    return out


def elm_named(B: RefinedParabolicBundle, spec) -> RefinedParabolicBundle:
    """The degree-preserving transformation at one even point, or at a
    pair of points of even total multiplicity.

    The composite of kernel transformations and the balancing twist is
    followed by :func:`canonical_form`, so the pair version is exactly
    independent of the order of the two points.
    """
    if isinstance(spec, int):
        _, n0 = B.divisor.point(spec)
        if n0 % 2:
            raise ValueError("single-point transformation needs an even "
                             f"multiplicity, got {n0}")
        return canonical_form(twist(elm_minus(B, spec), n0 // 2, spec))
    i0, i1 = spec
    if i0 == i1:
        raise ValueError("the two points of a pair must be distinct")
    _, n0 = B.divisor.point(i0)
    _, n1 = B.divisor.point(i1)
    if (n0 + n1) % 2:
        raise ValueError("a pair needs even total multiplicity, got "
                         f"{n0} + {n1}")
    return canonical_form(
        twist(elm_minus(elm_minus(B, i1), i0), (n0 + n1) // 2, i0))


# ---------------------------------------------------------------------------
# the combinatorial type transform
# ---------------------------------------------------------------------------

def type_transform_formula(tab: StandardTableau) -> StandardTableau:
    """The tableau of the transformed chain, for generic structures.

    Runs the b_k recursion (b_n = a1^n, b_k = min(b_{k+1}, a1^k), extended
    by a1^0 = a2^0 = 0, b_0 = 0) and converts the corrected exponents
    (X1^b, X2^b) into the shape of each transformed level.  The caller is
    responsible for genericness of the underlying chain; on non-generic
    chains only the sheaf-level transformation is meaningful.
    """
    n = tab.order
    a1 = [0] * (n + 1)
    a2 = [0] * (n + 1)
    for k in range(1, n + 1):
        shape = tab.shape_at_level(k)
        a1[k], a2[k] = shape.a1, shape.a2
    b = [0] * (n + 1)
    b[n] = a1[n]
    for k in range(n - 1, -1, -1):
        b[k] = min(b[k + 1], a1[k])
    shapes = [None] * (n + 1)
    for k in range(n):
        x1 = (a1[n] + a2[n]) - (a1[k] + a2[k])
        x2 = a2[n] - a2[k]
        x1b = x1 + a1[k] - b[k]
        x2b = x2 - a1[k] + b[k]
        if x2b - x1b >= 0:
            shapes[n - k] = YoungType(x2b - x1b, x1b, n)
        else:
            shapes[n - k] = YoungType(x1b - x2b, x2b, n)
    return StandardTableau(tuple(shapes[j] for j in range(n, 0, -1)))
