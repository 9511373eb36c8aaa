"""Tests for truncated-ring arithmetic and submodule normal forms."""

from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from parabtk.fields import GF, QQ
from parabtk.truncated import (
    TruncElement, YoungType, element, full_module, submodule_from_generators,
    submodule_length, submodule_type, trunc_arith, zero_module,
)

from oracles import oracle_length, oracle_member, oracle_type, oracle_lambda

F2 = GF(2)
F3 = GF(3)


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------

def test_mul_truncates():
    a = element(QQ, 3, [1, 1], [])          # (f+1, 0)
    b = element(QQ, 3, [0, 0, 1], [])       # (f², 0)
    assert trunc_arith("mul", a, b) == element(QQ, 3, [0, 0, 1], [])


def test_add_identity_case():
    a = element(QQ, 2, [1], [])
    b = element(QQ, 2, [], [1])
    assert trunc_arith("add", a, b) == element(QQ, 2, [1], [1])


def test_scale_by_f_truncates():
    a = element(QQ, 3, [0, 0, 1], [0, 0, 1])
    assert trunc_arith("scale", a, [0, 1]) == element(QQ, 3, [], [])


def test_mismatched_orders_error():
    a = element(QQ, 3, [1], [])
    b = element(QQ, 2, [1], [])
    with pytest.raises(ValueError):
        trunc_arith("add", a, b)


# ---------------------------------------------------------------------------
# normal form: frozen examples
# ---------------------------------------------------------------------------

def test_normal_form_three_generators():
    gens = [element(QQ, 3, [0, 1], []),       # (f, 0)
            element(QQ, 3, [0, 0, 1], []),    # (f², 0)
            element(QQ, 3, [], [1])]          # (0, 1)
    l = submodule_from_generators(gens, 3, QQ)
    v1, v2 = l.generators()
    assert v1 == element(QQ, 3, [], [1])
    assert v2 == element(QQ, 3, [0, 1], [])
    assert submodule_length(l) == 5
    # idempotence on normalized generators
    again = submodule_from_generators([v1, v2], 3, QQ)
    assert again == l


def test_normal_form_single_generator():
    l = submodule_from_generators([element(QQ, 3, [0, 1], [])], 3, QQ)
    v1, v2 = l.generators()
    assert v1 == element(QQ, 3, [0, 1], [])
    assert v2 is None
    assert submodule_length(l) == 2
    assert oracle_length(QQ, [element(QQ, 3, [0, 1], [])]) == 2


def test_empty_generators_zero_module():
    l = submodule_from_generators([], 3, QQ)
    assert l == zero_module(QQ, 3)
    assert submodule_length(l) == 0


# ---------------------------------------------------------------------------
# lengths and types: frozen examples
# ---------------------------------------------------------------------------

def test_type_single_f_generator():
    gens = [element(QQ, 3, [0, 1], [])]
    l = submodule_from_generators(gens, 3, QQ)
    t = submodule_type(l)
    assert (t.a1, t.a2) == (2, 0)
    assert oracle_lambda(QQ, 3, gens) == (1, 1, 0)
    assert oracle_type(QQ, 3, gens) == (2, 0)


def test_type_full_module():
    l = full_module(QQ, 3)
    assert submodule_length(l) == 6
    t = submodule_type(l)
    assert (t.a1, t.a2) == (0, 3)


def test_type_mixed_generators():
    gens = [element(QQ, 3, [], [1]), element(QQ, 3, [0, 1], [])]
    l = submodule_from_generators(gens, 3, QQ)
    t = submodule_type(l)
    assert (t.a1, t.a2) == (1, 2)
    assert oracle_type(QQ, 3, gens) == (1, 2)


def test_length_equals_type_size():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 5)
        gens = [element(QQ, n,
                        [rng.randint(-3, 3) for _ in range(n)],
                        [rng.randint(-3, 3) for _ in range(n)])
                for _ in range(rng.randint(0, 3))]
        l = submodule_from_generators(gens, n, QQ)
        t = submodule_type(l)
        assert submodule_length(l) == t.length == t.a1 + 2 * t.a2


# ---------------------------------------------------------------------------
# exhaustive oracle equivalence over F₂
# ---------------------------------------------------------------------------

def _all_elements(field, n):
    coeffs = list(field.elements())
    for a in itertools.product(coeffs, repeat=n):
        for b in itertools.product(coeffs, repeat=n):
            yield TruncElement(field, n, a, b)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_exhaustive_f2_oracle_equivalence(n):
    """Every submodule of O_n² over F₂ (n ≤ 4): length/type match the oracle."""
    elements = list(_all_elements(F2, n))
    seen = {}
    for v in elements:
        for w in elements:
            l = submodule_from_generators([v, w], n, F2)
            if l.key() in seen:
                continue
            seen[l.key()] = (v, w)
    for key, (v, w) in seen.items():
        l = submodule_from_generators([v, w], n, F2)
        t = submodule_type(l)
        assert submodule_length(l) == oracle_length(F2, [v, w])
        assert (t.a1, t.a2) == oracle_type(F2, n, [v, w])
        # the normalized generators span the same module
        v1, v2 = l.generators()
        gens = [g for g in (v1, v2) if g is not None and not g.is_zero()]
        assert oracle_length(F2, gens) == submodule_length(l) if gens else submodule_length(l) == 0
        for g in gens:
            assert oracle_member(F2, [v, w], g)


# ---------------------------------------------------------------------------
# canonical-form properties
# ---------------------------------------------------------------------------

coeff = st.integers(min_value=-4, max_value=4)


def _gen_elements(n, data, count):
    return [element(QQ, n,
                    [data.draw(coeff) for _ in range(n)],
                    [data.draw(coeff) for _ in range(n)])
            for _ in range(count)]


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_normal_form_canonical_under_regeneration(data):
    n = data.draw(st.integers(min_value=1, max_value=5))
    gens = _gen_elements(n, data, data.draw(st.integers(min_value=1, max_value=3)))
    l = submodule_from_generators(gens, n, QQ)
    # shuffle, duplicate, and recombine generators: same canonical object
    extra = gens[0] + gens[-1]
    l2 = submodule_from_generators(list(reversed(gens)) + [extra, gens[0].f_shift(1)], n, QQ)
    assert l == l2
    assert hash(l) == hash(l2)


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_membership_matches_oracle(data):
    n = data.draw(st.integers(min_value=1, max_value=4))
    gens = _gen_elements(n, data, 2)
    probe = _gen_elements(n, data, 1)[0]
    l = submodule_from_generators(gens, n, QQ)
    assert l.contains(probe) == oracle_member(QQ, gens, probe)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_type_monotone_under_inclusion(data):
    n = data.draw(st.integers(min_value=1, max_value=4))
    gens = _gen_elements(n, data, 2)
    l = submodule_from_generators(gens, n, QQ)
    sub = submodule_from_generators([g.f_shift(1) for g in gens] + [gens[0].scale([0, 2, 1])], n, QQ)
    assert l.contains_submodule(sub)
    t, ts = submodule_type(l), submodule_type(sub)
    assert ts.a1 + ts.a2 <= t.a1 + t.a2
    assert ts.a2 <= t.a2


def test_young_type_box_steps():
    t = YoungType(1, 1, 3)
    assert t.add_box_column1().key() == (2, 1, 3)
    assert t.add_box_column2().key() == (0, 2, 3)
    with pytest.raises(ValueError):
        YoungType(0, 1, 3).add_box_column2()
