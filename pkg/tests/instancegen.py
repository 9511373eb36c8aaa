"""Seeded random generators for refined parabolic bundles.

Shared by the transformation and acceptance tests.  Everything is driven
by an explicit ``random.Random`` instance so failures replay exactly.
"""
from fractions import Fraction

from parabtk.bundle import (MarkedDivisor, RefinedParabolicBundle, SplitBundle,
                            free_structure)
from parabtk.filtration import RefinedStructure
from parabtk.flatness import FormalData, validate_formal_data
from parabtk.linalg import nullspace
from parabtk.poly import padd, pscale
from parabtk.truncated import TruncElement, submodule_from_generators

#: divisor shapes exercised by the random battery, as (point, multiplicity)
SHAPES = (
    ((0, 1), (1, 1), (2, 1), (3, 1), (4, 1)),
    ((0, 2), (1, 1)),
    ((0, 3), (1, 2)),
    ((0, 2), (1, 2)),
    ((3, 4),),
    ((0, 1), (2, 3)),
)

#: splitting types exercised by the random battery
DEGREES = ((0, 0), (0, 1), (-1, 1), (0, 2), (1, 3))


def random_chain(field, n, rng):
    """A random refined chain at a point of multiplicity n.

    Grows upward from a random socle direction; each level is extended by
    a random element of ``(l_k : f)``, retrying until the length rises by
    exactly one.
    """
    while True:
        u = (field.of(rng.randrange(-3, 4)), field.of(rng.randrange(-3, 4)))
        if u[0] or u[1]:
            break
    lv = submodule_from_generators(
        [TruncElement(field, n, (0,) * (n - 1) + (u[0],),
                      (0,) * (n - 1) + (u[1],))], n, field)
    chain = [lv]
    for k in range(1, n):
        lk = chain[-1]
        rows = []
        for r in lk.constraint_rows():
            rows.append(list(r[2:]) + [field.zero(), field.zero()])
        basis = nullspace(field, rows, 2 * n)
        for _ in range(200):
            coeffs = [field.of(rng.randrange(-3, 4)) for _ in basis]
            vec = [field.zero()] * (2 * n)
            for c, b in zip(coeffs, basis):
                for j in range(2 * n):
                    vec[j] = vec[j] + c * b[j]
            w = TruncElement(field, n, tuple(vec[0::2]), tuple(vec[1::2]))
            cand = submodule_from_generators(
                [w] + [v for v in lk.generators() if v is not None], n, field)
            if cand.length == k + 1:
                chain.append(cand)
                break
        else:
            raise RuntimeError("no chain extension found")
    return RefinedStructure(field, n, list(reversed(chain)))


def random_instance(field, rng):
    """A random bundle with random chains over one of the stock shapes."""
    while True:
        pts = SHAPES[rng.randrange(len(SHAPES))]
        seen = [field.of(t) for t, _ in pts]
        if len(set(seen)) == len(seen):
            break
    d1, d2 = DEGREES[rng.randrange(len(DEGREES))]
    div = MarkedDivisor(field, pts)
    structures = [random_chain(field, n_i, rng) for _, n_i in pts]
    return RefinedParabolicBundle(field, SplitBundle(d1, d2), div, structures)


def random_parabolic_instance(field, rng):
    """A random bundle whose chain at every point is free with unit generator.

    The generator is ((1,0,…), g) or (g, (1,0,…)) with random g, so every
    level of every chain is a free module and the instance is parabolic.
    """
    while True:
        pts = SHAPES[rng.randrange(len(SHAPES))]
        seen = [field.of(t) for t, _ in pts]
        if len(set(seen)) == len(seen):
            break
    d1, d2 = DEGREES[rng.randrange(len(DEGREES))]
    structures = []
    for _, n_i in pts:
        g = tuple(field.of(rng.randrange(-3, 4)) for _ in range(n_i))
        if rng.randrange(2):
            structures.append(free_structure(field, n_i, g, (field.one(),)))
        else:
            structures.append(free_structure(field, n_i, (field.one(),), g))
    return RefinedParabolicBundle(field, SplitBundle(d1, d2),
                                  MarkedDivisor(field, pts), structures)


def random_formal_data(divisor, degree, rng):
    """A random residue datum on a divisor satisfying every formal condition.

    Entries are denominator-7 rationals; the residue sum is balanced by a
    shift split evenly between the two residues at the last point (which
    keeps their difference, and hence the local parts, intact).  Retries
    until the datum passes validation.
    """
    while True:
        parts, rm = [], []
        for _, n_i in divisor:
            row = [Fraction(rng.randrange(-6, 7), 7) for _ in range(n_i)]
            while not row[-1]:
                row[-1] = Fraction(rng.randrange(-6, 7), 7)
            parts.append(row)
            rm.append(Fraction(rng.randrange(-6, 7), 7))
        rp = [m + row[0] for m, row in zip(rm, parts)]
        delta = (Fraction(degree) - sum(rp) - sum(rm)) / 2
        rm[-1] += delta
        rp[-1] += delta
        fd = FormalData([tuple(r) for r in parts], rp, rm, degree)
        if not validate_formal_data(fd, divisor):
            return fd


def random_auto(field, d1, d2, rng):
    """A random automorphism of O(d1)+O(d2), as a row-major poly matrix."""
    D = d2 - d1
    while True:
        lam = field.of(rng.randrange(-3, 4))
        mu = field.of(rng.randrange(-3, 4))
        if lam and mu:
            break
    q = tuple(field.of(rng.randrange(-3, 4)) for _ in range(D + 1))
    g = ((lam,), ()), (q, (mu,))
    if D == 0 and rng.randrange(2):
        while True:
            a, b, c, d = (field.of(rng.randrange(-3, 4)) for _ in range(4))
            if a * d - b * c:
                break
        g00, g01 = g[0]
        g10, g11 = g[1]
        row0 = (padd(pscale(a, g00), pscale(b, g10)),
                padd(pscale(a, g01), pscale(b, g11)))
        row1 = (padd(pscale(c, g00), pscale(d, g10)),
                padd(pscale(c, g01), pscale(d, g11)))
        g = (row0, row1)
    return g
