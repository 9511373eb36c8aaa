"""Weighted stability of refined parabolic bundles.

This module houses the rational weight vectors, the stability index of a
line subbundle, the admissible/tame/stable/simple predicates, parabolic
degrees, and the search for stabilizing weights — both as an exact
linear program over the weight polytope and as the constructive recipes
that build explicit weights for tame undecomposable bundles.

All stability arithmetic happens in ``fractions.Fraction`` regardless of
the base field of the bundle: weights are rational numbers even when the
coefficients live in a finite field.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .bundle import (
    TOP_ONLY,
    IntersectionProfile,
    LineSubbundle,
    RefinedParabolicBundle,
    achievable_profiles,
    endomorphism_space,
    intersection_profile,
    is_decomposable,
)
from .linprog import maximize

__all__ = [
    "STABLE",
    "STRICTLY_SEMISTABLE",
    "UNSTABLE",
    "EXACT_LP",
    "CONSTRUCTIVE",
    "Weights",
    "StabilityReport",
    "WeightSearchResult",
    "n_value",
    "stab_index",
    "is_admissible",
    "is_tame",
    "is_w_stable",
    "find_stabilizing_weights",
    "is_simple_parabolic",
    "parabolic_degree",
    "parabolic_degree_of_bundle",
    "weights_from_alpha",
]

STABLE = "Stable"
STRICTLY_SEMISTABLE = "StrictlySemistable"
UNSTABLE = "Unstable"

EXACT_LP = "lp"
CONSTRUCTIVE = "constructive"

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Weights:
    """A rational weight tuple per marked point.

    ``values[i]`` lists the weights of the point ``t_i`` from the top
    chain level down to the deepest one, ``(w_{i,n_i}, …, w_{i,1})``,
    so the entries ascend: ``0 ≤ w_{i,n_i} ≤ … ≤ w_{i,1} ≤ 1``.
    """

    __slots__ = ("orders", "values")

    def __init__(self, orders: Sequence[int], values: Sequence[Sequence]):
        orders = tuple(int(n) for n in orders)
        vals = tuple(tuple(Fraction(v) for v in row) for row in values)
        if len(vals) != len(orders):
            raise ValueError("one weight tuple per marked point required")
        for n_i, row in zip(orders, vals):
            if len(row) != n_i:
                raise ValueError(
                    f"weight tuple {row} has length {len(row)}, expected {n_i}")
            for a, b in zip(row, row[1:]):
                if a > b:
                    raise ValueError(f"weights must ascend toward level 1: {row}")
            if row and (row[0] < 0 or row[-1] > 1):
                raise ValueError(f"weights must lie in [0, 1]: {row}")
        self.orders = orders
        self.values = vals

    @classmethod
    def democratic(cls, orders: Sequence[int], value) -> "Weights":
        """All entries equal to one rational value."""
        value = Fraction(value)
        return cls(orders, tuple((value,) * n for n in orders))

    def at(self, i: int, k: int) -> Fraction:
        """The weight of level k at point i (k = 1 is the deepest level)."""
        n_i = self.orders[i]
        if not 1 <= k <= n_i:
            raise ValueError(f"level {k} out of range 1..{n_i}")
        return self.values[i][n_i - k]

    @property
    def total(self) -> Fraction:
        return sum((v for row in self.values for v in row), _ZERO)

    @property
    def uses_boundary(self) -> bool:
        """Whether any entry sits at an endpoint of [0, 1]."""
        return any(v == 0 or v == 1 for row in self.values for v in row)

    def key(self):
        return (self.orders, self.values)

    def __eq__(self, other):
        return isinstance(other, Weights) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        rows = "; ".join("(" + ", ".join(str(v) for v in row) + ")"
                         for row in self.values)
        return f"Weights[{rows}]"


def _check_weights(B: RefinedParabolicBundle, w: Weights):
    orders = tuple(n_i for _, n_i in B.divisor)
    if w.orders != orders:
        raise ValueError(
            f"weights are shaped {w.orders}, bundle divisor has {orders}")


def n_value(eps: Sequence[int]) -> Tuple[int, int, bool]:
    """(N, k_max, in_I_plus) of one point's sign tuple.

    ``eps`` lists the signs from the top level down to the deepest one,
    the order used in the classification tables.  N is the maximum of
    the prefix sums taken from the deepest level k = 1 upward, k_max is
    the largest prefix length attaining it, and the point belongs to I⁺
    exactly when N > 0.
    """
    eps = tuple(int(e) for e in eps)
    if not eps:
        raise ValueError("empty sign tuple")
    if any(e not in (1, -1) for e in eps):
        raise ValueError(f"signs must be ±1: {eps}")
    best, k_max = _prefix_data(tuple(reversed(eps)))
    return best, k_max, best > 0


def _prefix_data(eps_ascending: Sequence[int]) -> Tuple[int, int]:
    """Max prefix sum and the largest prefix length attaining it."""
    acc = 0
    best: Optional[int] = None
    k_max = 0
    for k, e in enumerate(eps_ascending, start=1):
        acc += e
        if best is None or acc > best:
            best, k_max = acc, k
        elif acc == best:
            k_max = k
    return best, k_max


def _point_data(prof: IntersectionProfile) -> List[Tuple[int, int]]:
    """(N_i, k_{i,max}) for every point of a profile."""
    return [_prefix_data(prof.eps(i)) for i in range(len(prof.counts))]


def _weighted_sign_sum(prof: IntersectionProfile, w: Weights) -> Fraction:
    total = _ZERO
    for i in range(len(prof.counts)):
        for k, e in enumerate(prof.eps(i), start=1):
            total += e * w.at(i, k)
    return total


def stab_index(B: RefinedParabolicBundle, L: LineSubbundle,
               w: Weights) -> Fraction:
    """deg E − 2 deg L + Σ_{i,k} ε_{i,k}(L)·w_{i,k}."""
    _check_weights(B, w)
    prof = intersection_profile(B, L)
    return Fraction(B.bundle.degree - 2 * L.degree) + _weighted_sign_sum(prof, w)


# ---------------------------------------------------------------------------
# Degree ranges for the subbundle quantifiers
# ---------------------------------------------------------------------------

def _stability_degree_range(B: RefinedParabolicBundle) -> range:
    """Degrees where the stability index can be ≤ 0 for some weights.

    Since every weight lies in [0, 1] and there are n of them,
    Stab_w(L) = d − 2e + Σ ε·w ≥ d − 2e − n, which is positive for all
    e < (d − n)/2; only e ≥ ⌈(d − n)/2⌉ matters, and the range starts
    one degree lower still as a safety margin.  The top is d₂: a line
    subbundle of O(d₁) ⊕ O(d₂) has degree at most d₂.

    A second pointwise bound tightens the bottom further: for e ≤ d₂ − n
    and any weights, Stab at degree e is at least d − 2e − n ≥
    d − 2d₂ + n, which already bounds every index at degree d₂ from
    above — and degree d₂ always realizes a profile.  Such degrees can
    therefore never host the minimum and are skipped.
    """
    d = B.bundle.degree
    n = B.divisor.n
    lo = -((n - d) // 2) - 1  # ⌈(d − n)/2⌉ − 1
    lo = max(lo, B.bundle.d2 - n + 1)
    return range(lo, B.bundle.d2 + 1)


def _halfway_degree_range(B: RefinedParabolicBundle) -> range:
    """Degrees e with 2e ≥ deg E, where admissibility and tameness bite."""
    d = B.bundle.degree
    return range(-(-d // 2), B.bundle.d2 + 1)


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------

def is_admissible(B: RefinedParabolicBundle) -> bool:
    """Whether every subbundle of at least half the degree has small contact.

    For every degree ⌈d/2⌉ ≤ e ≤ d₂ and every line subbundle L of degree
    e the total top-level contact must satisfy Σ m_i ≤ n + d − 2e − 2.
    """
    d = B.bundle.degree
    n = B.divisor.n
    for e in _halfway_degree_range(B):
        for prof, _ in achievable_profiles(B, e):
            if prof.total_m > n + d - 2 * e - 2:
                return False
    return True


def is_tame(B: RefinedParabolicBundle) -> bool:
    """Whether every half-degree subbundle leaves enough positive slack.

    For every degree ⌈d/2⌉ ≤ e ≤ d₂ and every line subbundle L of degree
    e, the set I⁺ of points with N_i(L) > 0 must be nonempty and satisfy
    −d + 2e + 1 ≤ Σ_{i ∈ I⁺} N_i(L).
    """
    d = B.bundle.degree
    for e in _halfway_degree_range(B):
        for prof, _ in achievable_profiles(B, e):
            data = _point_data(prof)
            plus = [N for N, _ in data if N > 0]
            if not plus or -d + 2 * e + 1 > sum(plus):
                return False
    return True


class StabilityReport:
    """Outcome of minimizing the stability index over all subbundles."""

    __slots__ = ("verdict", "subbundle", "index", "n_values", "k_max",
                 "i_plus", "satisfied")

    def __init__(self, verdict: str, subbundle: LineSubbundle,
                 index: Fraction, n_values: Tuple[int, ...],
                 k_max: Tuple[int, ...], i_plus: Tuple[int, ...],
                 satisfied: bool):
        self.verdict = verdict
        self.subbundle = subbundle
        self.index = index
        self.n_values = n_values
        self.k_max = k_max
        self.i_plus = i_plus
        self.satisfied = satisfied

    def __repr__(self):
        return (f"StabilityReport({self.verdict}, index={self.index}, "
                f"L={self.subbundle!r})")


def _minimize_stab(B: RefinedParabolicBundle, w: Weights):
    """The minimizing (value, profile, witness) over the degree range."""
    d = B.bundle.degree
    best = None
    for e in _stability_degree_range(B):
        for prof, L in achievable_profiles(B, e):
            val = Fraction(d - 2 * e) + _weighted_sign_sum(prof, w)
            if best is None or val < best[0]:
                best = (val, prof, L)
    assert best is not None  # e = d₂ always realizes at least one profile
    return best


def is_w_stable(B: RefinedParabolicBundle, w: Weights,
                strict: bool = True) -> StabilityReport:
    """Minimize the stability index over all line subbundles.

    The verdict reports the sign of the minimum; ``satisfied`` states
    whether the bundle passes the requested test (strictly positive
    index for stability, nonnegative for semistability).
    """
    _check_weights(B, w)
    val, prof, L = _minimize_stab(B, w)
    data = _point_data(prof)
    if val > 0:
        verdict = STABLE
    elif val == 0:
        verdict = STRICTLY_SEMISTABLE
    else:
        verdict = UNSTABLE
    return StabilityReport(
        verdict=verdict,
        subbundle=L,
        index=val,
        n_values=tuple(N for N, _ in data),
        k_max=tuple(k for _, k in data),
        i_plus=tuple(i for i, (N, _) in enumerate(data) if N > 0),
        satisfied=val > 0 if strict else val >= 0,
    )


def is_simple_parabolic(B: RefinedParabolicBundle) -> bool:
    """Whether the only top-level endomorphisms are the scalars."""
    if not B.is_parabolic:
        raise ValueError("simplicity test requires free top levels")
    return len(endomorphism_space(B, TOP_ONLY)) == 1


# ---------------------------------------------------------------------------
# Parabolic degrees
# ---------------------------------------------------------------------------

def _check_alpha(B: RefinedParabolicBundle, alpha) -> Tuple[Tuple[Fraction, ...], ...]:
    """Validate per-point tuples (α_{i,n_i+1}, α_{i,n_i}, …, α_{i,1}).

    Each tuple lists the ambient weight first and then the level weights
    from the top level down to level 1, so the entries strictly ascend
    inside (0, 1): 0 < α_{i,n_i+1} < α_{i,n_i} < … < α_{i,1} < 1.
    """
    rows = tuple(tuple(Fraction(v) for v in row) for row in alpha)
    orders = tuple(n_i for _, n_i in B.divisor)
    if len(rows) != len(orders):
        raise ValueError("one weight tuple per marked point required")
    for n_i, row in zip(orders, rows):
        if len(row) != n_i + 1:
            raise ValueError(
                f"tuple {row} has length {len(row)}, expected {n_i + 1}")
        if row[0] <= 0 or row[-1] >= 1:
            raise ValueError(f"weights must lie strictly inside (0, 1): {row}")
        for a, b in zip(row, row[1:]):
            if a >= b:
                raise ValueError(f"weights must strictly ascend: {row}")
    return rows


def _alpha_at(rows, i: int, n_i: int, k: int) -> Fraction:
    """α_{i,k} for k = 1..n_i+1; index 0 holds the ambient weight."""
    return rows[i][n_i + 1 - k]


def parabolic_degree(B: RefinedParabolicBundle, L: LineSubbundle,
                     alpha) -> Fraction:
    """deg L plus the weighted jumps of the induced flag on L.

    The level-k jump is the length of (l_{i,k} ∩ L|) / (l_{i,k−1} ∩ L|);
    the ambient level k = n_i + 1 contributes the remaining length
    n_i − c_{i,n_i}.
    """
    rows = _check_alpha(B, alpha)
    prof = intersection_profile(B, L)
    total = Fraction(L.degree)
    for i, (_, n_i) in enumerate(B.divisor):
        prev = 0
        for k in range(1, n_i + 1):
            c = prof.counts[i][k - 1]
            total += _alpha_at(rows, i, n_i, k) * (c - prev)
            prev = c
        total += _alpha_at(rows, i, n_i, n_i + 1) * (n_i - prev)
    return total


def parabolic_degree_of_bundle(B: RefinedParabolicBundle, alpha) -> Fraction:
    """deg E plus the weighted jumps of the chains themselves.

    Each chain level has length one more than the next, so it jumps by
    exactly 1, and the ambient level jumps by 2n_i − n_i = n_i.
    """
    rows = _check_alpha(B, alpha)
    total = Fraction(B.bundle.degree)
    for i, (_, n_i) in enumerate(B.divisor):
        for k in range(1, n_i + 1):
            total += _alpha_at(rows, i, n_i, k)
        total += _alpha_at(rows, i, n_i, n_i + 1) * n_i
    return total


def weights_from_alpha(B: RefinedParabolicBundle, alpha) -> Weights:
    """The stability weights w_{i,k} = α_{i,k} − α_{i,n_i+1}."""
    rows = _check_alpha(B, alpha)
    return Weights(
        tuple(n_i for _, n_i in B.divisor),
        tuple(tuple(v - row[0] for v in row[1:]) for row in rows),
    )


# ---------------------------------------------------------------------------
# Weight search
# ---------------------------------------------------------------------------

class WeightSearchResult:
    """Outcome of find_stabilizing_weights.

    When no stabilizing weights exist the exact-LP strategy attaches a
    certificate (e, counts, witness): a subbundle whose stability index
    stays nonpositive even at the best weights the polytope offers.
    """

    __slots__ = ("found", "weights", "strategy", "uses_boundary", "certificate")

    def __init__(self, found: bool, weights: Optional[Weights], strategy: str,
                 uses_boundary: Optional[bool], certificate):
        self.found = found
        self.weights = weights
        self.strategy = strategy
        self.uses_boundary = uses_boundary
        self.certificate = certificate

    def __repr__(self):
        if self.found:
            return f"WeightSearchResult(found, {self.weights!r})"
        return "WeightSearchResult(not found)"


def _not_found(strategy: str, certificate=None) -> WeightSearchResult:
    return WeightSearchResult(False, None, strategy, None, certificate)


def _found(strategy: str, w: Weights) -> WeightSearchResult:
    return WeightSearchResult(True, w, strategy, w.uses_boundary, None)


def _constraint_entries(B: RefinedParabolicBundle):
    """(e, profile, witness) for every achievable profile in range."""
    out = []
    for e in _stability_degree_range(B):
        for prof, L in achievable_profiles(B, e):
            out.append((e, prof, L))
    return out


def _var_offsets(orders: Sequence[int]) -> List[int]:
    offsets = []
    total = 0
    for n_i in orders:
        offsets.append(total)
        total += n_i
    return offsets


def _weights_from_flat(orders: Sequence[int], flat: Sequence[Fraction]) -> Weights:
    offsets = _var_offsets(orders)
    rows = []
    for i, n_i in enumerate(orders):
        levels = [flat[offsets[i] + (k - 1)] for k in range(1, n_i + 1)]
        rows.append(tuple(reversed(levels)))  # display order: top level first
    return Weights(orders, rows)


def _search_exact_lp(B: RefinedParabolicBundle) -> WeightSearchResult:
    """Maximize the worst stability index over the weight polytope.

    Variables are the weights (flattened by point, deepest level first)
    plus the free margin t = t⁺ − t⁻; the optimum is positive exactly
    when some weights make every index strictly positive.
    """
    d = B.bundle.degree
    orders = tuple(n_i for _, n_i in B.divisor)
    offsets = _var_offsets(orders)
    m = sum(orders)
    nvars = m + 2  # weights, t⁺, t⁻
    entries = _constraint_entries(B)

    A: List[List[Fraction]] = []
    b: List[Fraction] = []

    def row():
        return [_ZERO] * nvars

    for e, prof, _ in entries:
        r = row()
        for i in range(len(orders)):
            for k, sign in enumerate(prof.eps(i), start=1):
                r[offsets[i] + (k - 1)] -= sign
        r[m] = _ONE
        r[m + 1] = -_ONE
        A.append(r)
        b.append(Fraction(d - 2 * e))
    for j in range(m):
        r = row()
        r[j] = _ONE
        A.append(r)
        b.append(_ONE)
    for i, n_i in enumerate(orders):
        for k in range(1, n_i):
            # level k+1 may not outweigh level k
            r = row()
            r[offsets[i] + k] = _ONE
            r[offsets[i] + (k - 1)] = -_ONE
            A.append(r)
            b.append(_ZERO)

    c = [_ZERO] * m + [_ONE, -_ONE]
    status, x, value = maximize(c, A, b)
    assert status == "optimal"  # the polytope is nonempty and t is bounded
    w = _weights_from_flat(orders, x[:m])
    if value > 0:
        report = is_w_stable(B, w)
        assert report.verdict == STABLE
        return _found(EXACT_LP, w)
    val, prof, L = _minimize_stab(B, w)
    assert val <= 0
    return _not_found(EXACT_LP, certificate=(L.degree, prof.counts, L))


# --- constructive recipes ---------------------------------------------------

def _recipe_split(B: RefinedParabolicBundle) -> Weights:
    """Weights for a tame undecomposable bundle with d₁ < d₂.

    The unique maximal subbundle O(d₂) fixes per-point data N_i and
    K_{i,max}; a large weight w goes on the maximizing prefixes of the
    points in I⁺ and a small weight w′ everywhere else, subject to

        (−ΣN^c·w′ + (d₂−d₁))/ΣN < w < (−(ΣN^c−2)·w′ + (d₂−d₁))/ΣN,
        0 < w′ < w < 1,  w + w′ < 1,

    which is feasible for small w′ because tameness makes
    (d₂−d₁)/ΣN land strictly inside (0, 1).
    """
    d1, d2 = B.bundle.d1, B.bundle.d2
    profs = achievable_profiles(B, d2)
    assert len(profs) == 1  # the maximal subbundle is unique when d₁ < d₂
    prof, _ = profs[0]
    orders = tuple(n_i for _, n_i in B.divisor)
    data = _point_data(prof)
    i_plus = [i for i, (N, _) in enumerate(data) if N > 0]
    assert i_plus  # tameness
    sum_n = sum(data[i][0] for i in i_plus)
    totals = [sum(prof.eps(i)) for i in range(len(orders))]
    sum_nc = sum(totals) - sum_n
    gap = d2 - d1
    r = Fraction(gap, sum_n)
    assert 0 < r < 1  # tameness gives ΣN ≥ d₂ − d₁ + 1
    chosen = None
    small = min(r, 1 - r)
    for j in range(2, 64):
        wp = small / 2 ** j
        w = Fraction(-sum_nc * wp + gap, sum_n) + Fraction(wp, sum_n)
        if 0 < wp < w < 1 and w + wp < 1:
            chosen = (w, wp)
            break
    assert chosen is not None
    w, wp = chosen
    rows = []
    for i, n_i in enumerate(orders):
        k_max = data[i][1]
        if i in i_plus:
            levels = [w if k <= k_max else wp for k in range(1, n_i + 1)]
        else:
            levels = [wp] * n_i
        rows.append(tuple(reversed(levels)))
    return Weights(orders, rows)


def _pattern_lp(B: RefinedParabolicBundle, groups: List[List[Tuple[int, int]]],
                chains: List[List[int]]) -> Weights:
    """Pick values for tied weight groups by an exact max-margin LP.

    ``groups[g]`` lists the (point, level) pairs sharing the value w_g;
    unlisted pairs get weight 0.  Every group must land strictly inside
    (0, 1) and each chain lists group ids in strictly decreasing order
    of value.  All stability inequalities are imposed with the same
    margin, so a positive optimum yields stabilizing weights.
    """
    keep = [gi for gi, g in enumerate(groups) if g]
    remap = {gi: j for j, gi in enumerate(keep)}
    groups = [groups[gi] for gi in keep]
    chains = [[remap[gi] for gi in chain if gi in remap] for chain in chains]
    index_of = {}
    for gi, g in enumerate(groups):
        for pair in g:
            assert pair not in index_of
            index_of[pair] = gi
    d = B.bundle.degree
    orders = tuple(n_i for _, n_i in B.divisor)
    ng = len(groups)
    nvars = ng + 2
    A: List[List[Fraction]] = []
    b: List[Fraction] = []

    def row():
        return [_ZERO] * nvars

    for e, prof, _ in _constraint_entries(B):
        r = row()
        for i in range(len(orders)):
            for k, sign in enumerate(prof.eps(i), start=1):
                gi = index_of.get((i, k))
                if gi is not None:
                    r[gi] -= sign
        r[ng] = _ONE
        r[ng + 1] = -_ONE
        A.append(r)
        b.append(Fraction(d - 2 * e))
    for gi in range(ng):
        r = row()  # w_g + t ≤ 1
        r[gi] = _ONE
        r[ng] = _ONE
        r[ng + 1] = -_ONE
        A.append(r)
        b.append(_ONE)
        r = row()  # t − w_g ≤ 0
        r[gi] = -_ONE
        r[ng] = _ONE
        r[ng + 1] = -_ONE
        A.append(r)
        b.append(_ZERO)
    for chain in chains:
        for hi, lo in zip(chain, chain[1:]):
            r = row()  # w_lo + t ≤ w_hi
            r[lo] = _ONE
            r[hi] = -_ONE
            r[ng] = _ONE
            r[ng + 1] = -_ONE
            A.append(r)
            b.append(_ZERO)

    c = [_ZERO] * ng + [_ONE, -_ONE]
    status, x, value = maximize(c, A, b)
    if status != "optimal" or value <= 0:
        raise RuntimeError("constructive recipe pattern admits no margin")
    flat_rows = []
    for i, n_i in enumerate(orders):
        levels = [x[index_of[(i, k)]] if (i, k) in index_of else _ZERO
                  for k in range(1, n_i + 1)]
        flat_rows.append(tuple(reversed(levels)))
    return Weights(orders, flat_rows)


def _recipe_balanced(B: RefinedParabolicBundle) -> Weights:
    """Weights for a tame undecomposable bundle with d₁ = d₂.

    Following the constructive case analysis: fix a subbundle L₁ of top
    degree with ε_{i₁,1}(L₁) = −1, a point i₂ with N_{i₂}(L₁) ≥ 1,
    decide whether any other top-degree subbundle takes the sign −1 on
    a level of K_{i₂,max}(L₁) where L₁ takes +1 (case B) or not
    (case A), and place tied weights on the prescribed levels; the
    listed order constraints pin the shape and the exact LP picks the
    values.
    """
    d2 = B.bundle.d2
    profs = achievable_profiles(B, d2)
    orders = tuple(n_i for _, n_i in B.divisor)

    i1 = 0
    first = next(((prof, L) for prof, L in profs if prof.eps(i1)[0] == -1), None)
    assert first is not None  # a constant section through l_{i₁,1} exists
    prof1, _L1 = first
    data1 = _point_data(prof1)
    i2 = next((i for i, (N, _) in enumerate(data1) if N >= 1), None)
    assert i2 is not None  # tameness applied to L₁
    k_max2 = data1[i2][1]
    K2 = range(1, k_max2 + 1)
    plus_ks = [k for k in K2 if prof1.eps(i2)[k - 1] == 1]

    def flip_count(prof):
        return sum(1 for k in plus_ks if prof.eps(i2)[k - 1] == -1)

    best = max((flip_count(prof) for prof, _ in profs), default=0)

    if best == 0:
        # case A: only L₁ can spoil the levels of K_{i₂,max}
        if i1 != i2:
            groups = [[(i1, 1)], [(i2, k) for k in K2]]
            chains: List[List[int]] = []
        else:
            groups = [[(i1, 1)], [(i1, k) for k in K2 if k != 1]]
            chains = [[0, 1]]
        return _pattern_lp(B, groups, chains)

    prof2 = next(prof for prof, _ in profs if flip_count(prof) == best)
    shared = [(i, k)
              for i in range(len(orders))
              for k in range(1, orders[i] + 1)
              if prof1.eps(i)[k - 1] == 1 and prof2.eps(i)[k - 1] == 1]
    assert shared  # undecomposability
    if any(i == i2 and k in K2 for i, k in shared):
        i3 = i2
    else:
        _, i3 = min((k, i) for i, k in shared)
    k3 = min(k for i, k in shared if i == i3)

    g1 = [(i1, 1)]
    if i1 == i2 == i3:
        g2 = [(i1, k) for k in K2 if k != 1]
        if k3 <= k_max2:
            return _pattern_lp(B, [g1, g2], [[0, 1]])
        g3 = [(i1, k) for k in range(k_max2 + 1, k3)]
        g4 = [(i1, k3)]
        return _pattern_lp(B, [g1, g2, g3, g4], [[0, 1, 2, 3]])
    if i1 == i2:  # i₃ is a different point
        g2 = [(i1, k) for k in K2 if k != 1]
        g3 = [(i3, k) for k in range(1, k3)]
        g4 = [(i3, k3)]
        return _pattern_lp(B, [g1, g2, g3, g4], [[0, 1], [2, 3]])
    if i2 == i3:  # i₁ is a different point
        g2 = [(i2, k) for k in K2]
        if k3 <= k_max2:
            return _pattern_lp(B, [g1, g2], [])
        g3 = [(i2, k) for k in range(k_max2 + 1, k3)]
        g4 = [(i2, k3)]
        return _pattern_lp(B, [g1, g2, g3, g4], [[1, 2, 3]])
    if i1 == i3:  # i₂ is a different point
        g2 = [(i2, k) for k in K2]
        g3 = [(i1, k) for k in range(2, k3)]
        g4 = [(i1, k3)]
        return _pattern_lp(B, [g1, g2, g3, g4], [[0, 2, 3]])
    # all three distinct
    g2 = [(i2, k) for k in K2]
    g3 = [(i3, k) for k in range(1, k3)]
    g4 = [(i3, k3)]
    return _pattern_lp(B, [g1, g2, g3, g4], [[2, 3]])


def _search_constructive(B: RefinedParabolicBundle) -> WeightSearchResult:
    dec, _ = is_decomposable(B)
    if dec or not is_tame(B):
        return _not_found(CONSTRUCTIVE)
    if B.bundle.d1 < B.bundle.d2:
        w = _recipe_split(B)
    else:
        w = _recipe_balanced(B)
    report = is_w_stable(B, w)
    if report.verdict != STABLE:
        raise RuntimeError(
            f"constructive weights {w!r} fail stability: {report!r}")
    return _found(CONSTRUCTIVE, w)


def find_stabilizing_weights(B: RefinedParabolicBundle,
                             strategy: str = EXACT_LP) -> WeightSearchResult:
    """Search for weights making the bundle stable.

    ``EXACT_LP`` maximizes the worst stability index over the closed
    weight polytope by exact rational pivoting and accepts only a
    strictly positive margin.  ``CONSTRUCTIVE`` follows the explicit
    recipes for tame undecomposable bundles (split and balanced degree
    cases); whatever it returns is re-verified through is_w_stable.
    """
    if strategy == EXACT_LP:
        return _search_exact_lp(B)
    if strategy == CONSTRUCTIVE:
        return _search_constructive(B)
    raise ValueError(f"unknown strategy: {strategy!r}")
