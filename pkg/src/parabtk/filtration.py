"""Chains of truncated submodules at a single point of the divisor.

A refined structure of order ``n`` is a strictly decreasing chain

    ``E|_{n[t]}  ⊃  l_n  ⊃  l_{n-1}  ⊃ … ⊃  l_1  ⊃  0``

of submodules of the free rank-2 module over ``k[f]/(f^n)``, where
``l_k`` has length exactly ``k``.  Recording the shape (Young type) of
every level yields a two-column standard tableau; this module provides
the chain/tableau types, the named tableau dictionary for ``n ≤ 5``,
the projective-line family of colength-one submodules, genericness of
a chain, and exhaustive chain enumeration over finite fields.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

from .fields import FieldConfig
from .truncated import (
    TruncElement,
    TruncSubmodule,
    YoungType,
    submodule_from_generators,
    submodule_type,
)

__all__ = [
    "InvalidStructureError",
    "RefinedStructure",
    "StandardTableau",
    "TableauName",
    "tableau_of",
    "enumerate_tableaus",
    "colength_one_family",
    "UnsupportedEnumerationError",
    "enumerate_chains_fixed_top",
    "chain_components",
    "is_generic_structure",
]


class InvalidStructureError(ValueError):
    """Raised when a chain violates the length or containment rules."""


class RefinedStructure:
    """A chain ``[l_n, l_{n-1}, …, l_1]`` with ``length(l_k) = k``.

    The chain is stored top first.  Every consecutive pair must satisfy
    ``l_k ⊋ l_{k-1}``; the constructor verifies this together with the
    length condition, so an instance is always a valid chain.
    """

    __slots__ = ("field", "order", "chain")

    def __init__(self, field: FieldConfig, order: int,
                 chain: Sequence[TruncSubmodule]):
        if order < 1:
            raise InvalidStructureError("order must be at least 1")
        chain = tuple(chain)
        if len(chain) != order:
            raise InvalidStructureError(
                f"expected {order} levels, got {len(chain)}")
        for i, l in enumerate(chain):
            k = order - i
            if l.field != field or l.n != order:
                raise InvalidStructureError(
                    "all levels must live over the same truncated ring")
            if l.length != k:
                raise InvalidStructureError(
                    f"level {k} has length {l.length}, expected {k}")
        for i in range(len(chain) - 1):
            if not chain[i].contains_submodule(chain[i + 1]):
                raise InvalidStructureError(
                    f"level {order - i} does not contain level {order - i - 1}")
        self.field = field
        self.order = order
        self.chain = chain

    def level(self, k: int) -> TruncSubmodule:
        """Return ``l_k`` (1-indexed from the bottom)."""
        if not 1 <= k <= self.order:
            raise IndexError(f"level {k} out of range 1..{self.order}")
        return self.chain[self.order - k]

    @property
    def top(self) -> TruncSubmodule:
        return self.chain[0]

    def key(self):
        return (self.order, tuple(l.key() for l in self.chain))

    def __eq__(self, other):
        if not isinstance(other, RefinedStructure):
            return NotImplemented
        return self.field == other.field and self.key() == other.key()

    def __hash__(self):
        return hash((self.field, self.key()))

    def __repr__(self):
        inner = " > ".join(repr(l) for l in self.chain)
        return f"RefinedStructure({inner})"


class StandardTableau:
    """Shapes of a chain, top first: total lengths ``n, n-1, …, 1``.

    Consecutive shapes differ by exactly one box; equivalently the
    ascending sequence of box additions is a word in H (new column of
    height 1) and V (a column of height 1 grows to height 2).
    """

    __slots__ = ("order", "shapes")

    def __init__(self, shapes: Sequence[YoungType]):
        shapes = tuple(shapes)
        if not shapes:
            raise InvalidStructureError("a tableau needs at least one shape")
        order = shapes[0].n
        if len(shapes) != order:
            raise InvalidStructureError(
                f"expected {order} shapes, got {len(shapes)}")
        for i, s in enumerate(shapes):
            if s.n != order:
                raise InvalidStructureError(
                    "all shapes must share the chain order")
            if s.length != order - i:
                raise InvalidStructureError(
                    f"shape {i} has total {s.length}, expected {order - i}")
        for i in range(len(shapes) - 1):
            big, small = shapes[i], shapes[i + 1]
            grow_h = (big.a1 == small.a1 + 1 and big.a2 == small.a2)
            grow_v = (big.a1 == small.a1 - 1 and big.a2 == small.a2 + 1)
            if not (grow_h or grow_v):
                raise InvalidStructureError(
                    f"shapes {big!r} and {small!r} do not differ by one box")
        self.order = order
        self.shapes = shapes

    @property
    def top(self) -> YoungType:
        return self.shapes[0]

    def shape_at_level(self, k: int) -> YoungType:
        """Shape of ``l_k`` (1-indexed from the bottom)."""
        if not 1 <= k <= self.order:
            raise IndexError(f"level {k} out of range 1..{self.order}")
        return self.shapes[self.order - k]

    def steps(self) -> str:
        """Ascending box additions as a word in 'H'/'V' of length n."""
        letters = []
        prev_a2 = 0
        for k in range(1, self.order + 1):
            a2 = self.shape_at_level(k).a2
            letters.append("V" if a2 > prev_a2 else "H")
            prev_a2 = a2
        return "".join(letters)

    def name(self) -> "TableauName | None":
        """The named tableau for ``2 ≤ n ≤ 5``; ``None`` otherwise."""
        return TableauName.from_steps(self.order, self.steps())

    def key(self):
        return (self.order, tuple(s.key() for s in self.shapes))

    def __eq__(self, other):
        if not isinstance(other, StandardTableau):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        if not isinstance(other, StandardTableau):
            return NotImplemented
        return (self.order, self.steps()) < (other.order, other.steps())

    def __repr__(self):
        nm = self.name()
        if nm is not None:
            return f"StandardTableau({nm})"
        return "StandardTableau(" + " > ".join(repr(s) for s in self.shapes) + ")"


#: ascending step words for the named tableaus, per order.
_NAMED_STEPS = {
    2: {"I": "HH", "II": "HV"},
    3: {"I": "HHH", "II": "HVH", "III": "HHV"},
    4: {"I": "HHHH", "II": "HVHH", "III": "HHVH", "IV": "HHHV",
        "V": "HVHV", "VI": "HHVV"},
    5: {"I": "HHHHH", "II": "HVHHH", "III": "HHVHH", "IV": "HHHVH",
        "V": "HHHHV", "VI": "HVHVH", "VII": "HHVVH", "VIII": "HVHHV",
        "IX": "HHVHV", "X": "HHHVV"},
}

_STEPS_TO_LABEL = {
    order: {steps: label for label, steps in table.items()}
    for order, table in _NAMED_STEPS.items()
}

_ROMAN_ORDER = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X")


class TableauName:
    """Name of a standard tableau of order ``2 ≤ n ≤ 5``.

    Labels follow the fixed enumeration I, II, … for each order.  When
    the top shape is ``(1^{n-2}, 2^1)`` the tableau has exactly one V
    step and also carries the index-``k`` name ``T_k`` where the V step
    happens between levels ``n-k+1`` and ``n-k``; ``k_index`` exposes
    that value (0 for the all-H tableau, ``None`` otherwise).
    """

    __slots__ = ("order", "label")

    def __init__(self, order: int, label: str):
        if order not in _NAMED_STEPS:
            raise ValueError(f"named tableaus exist for orders 2..5, not {order}")
        if label not in _NAMED_STEPS[order]:
            raise ValueError(f"unknown tableau label {label!r} for order {order}")
        self.order = order
        self.label = label

    @classmethod
    def from_steps(cls, order: int, steps: str) -> "TableauName | None":
        table = _STEPS_TO_LABEL.get(order)
        if table is None or steps not in table:
            return None
        return cls(order, table[steps])

    @classmethod
    def from_k_index(cls, order: int, k: int) -> "TableauName":
        """The tableau ``T_k`` with top ``(1^{n-2}, 2^1)`` (or all-H for 0)."""
        if k == 0:
            return cls(order, "I")
        if not 1 <= k <= order - 1:
            raise ValueError(f"k must lie in 0..{order - 1}, got {k}")
        steps = ["H"] * order
        steps[order - k] = "V"  # ascending position n-k+1 (1-indexed)
        return cls.from_steps(order, "".join(steps))

    @property
    def steps(self) -> str:
        return _NAMED_STEPS[self.order][self.label]

    @property
    def k_index(self) -> Optional[int]:
        steps = self.steps
        if steps.count("V") == 0:
            return 0
        if steps.count("V") == 1:
            return self.order - steps.index("V")
        return None

    def tableau(self) -> StandardTableau:
        shapes = []
        a1 = a2 = 0
        for letter in self.steps:
            if letter == "H":
                a1 += 1
            else:
                a1 -= 1
                a2 += 1
            shapes.append(YoungType(a1, a2, self.order))
        return StandardTableau(tuple(reversed(shapes)))

    def key(self):
        return (self.order, _ROMAN_ORDER.index(self.label))

    def __eq__(self, other):
        if not isinstance(other, TableauName):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        if not isinstance(other, TableauName):
            return NotImplemented
        return self.key() < other.key()

    def __repr__(self):
        return f"T^({self.order})_{self.label}"


def tableau_of(s: RefinedStructure) -> StandardTableau:
    """The standard tableau recording the shape of every chain level."""
    return StandardTableau(tuple(submodule_type(l) for l in s.chain))


def enumerate_tableaus(top: YoungType) -> frozenset:
    """All standard tableaus with the given top shape.

    Walks every descending one-box removal down to a single box.
    """
    def descend(shape: YoungType) -> List[Tuple[YoungType, ...]]:
        if shape.length == 1:
            return [(shape,)]
        out = []
        if shape.a1 >= 1:
            child = YoungType(shape.a1 - 1, shape.a2, shape.n)
            out.extend((shape,) + tail for tail in descend(child))
        if shape.a2 >= 1:
            child = YoungType(shape.a1 + 1, shape.a2 - 1, shape.n)
            out.extend((shape,) + tail for tail in descend(child))
        return out

    return frozenset(StandardTableau(seq) for seq in descend(top))


def colength_one_family(l: TruncSubmodule, point=None) -> TruncSubmodule:
    """The colength-one submodule of ``l`` at a projective parameter.

    With normalized generators ``(v1, v2)`` of ``l``, the parameter
    ``[α1:α2]`` picks ``⟨α1·v1 + α2·v2, f·v1, f·v2⟩``; this is a
    bijection from the projective line onto the colength-one
    submodules whenever the shape of ``l`` has ``a2 ≠ 0``.  With
    ``a2 = 0`` the colength-one submodule is unique, namely ``f·l``,
    and the parameter is ignored.
    """
    t = l.type()
    if t.a2 == 0:
        return l.f_multiple(1)
    if point is None:
        raise ValueError("a projective parameter [a1:a2] is required when a2 != 0")
    field = l.field
    a1c, a2c = field.of(point[0]), field.of(point[1])
    if not a1c and not a2c:
        raise ValueError("[0:0] is not a projective point")
    v1, v2 = l.generators()
    w = v1.scale(a1c) + v2.scale(a2c)
    gens = [w, v1.f_shift(1), v2.f_shift(1)]
    return submodule_from_generators(gens, l.n, field)


class UnsupportedEnumerationError(ValueError):
    """Raised when exhaustive enumeration is requested over an infinite field."""


def _projective_line(field: FieldConfig):
    """Points of P^1 over a finite field: [1:a] for all a, then [0:1]."""
    one = field.of(1)
    zero = field.of(0)
    return [(one, a) for a in field.elements()] + [(zero, one)]


def enumerate_chains_fixed_top(l_n: TruncSubmodule,
                               field: Optional[FieldConfig] = None
                               ) -> List[RefinedStructure]:
    """All refined structures below a fixed top, over a finite field."""
    if field is None:
        field = l_n.field
    if not field.is_finite:
        raise UnsupportedEnumerationError(
            "exhaustive chain enumeration needs a finite base field")
    if field != l_n.field:
        raise ValueError("field mismatch between module and enumeration request")
    n = l_n.n
    if l_n.length != n:
        raise InvalidStructureError(
            f"top level must have length {n}, got {l_n.length}")
    line = _projective_line(field)

    def descend(l: TruncSubmodule) -> List[Tuple[TruncSubmodule, ...]]:
        if l.length == 1:
            return [(l,)]
        if l.type().a2 == 0:
            children = [l.f_multiple(1)]
        else:
            seen = {}
            for pt in line:
                child = colength_one_family(l, pt)
                seen[child.key()] = child
            children = list(seen.values())
        out = []
        for child in children:
            out.extend((l,) + tail for tail in descend(child))
        return out

    return [RefinedStructure(field, n, seq) for seq in descend(l_n)]


def chain_components(l_n: TruncSubmodule,
                     field: Optional[FieldConfig] = None
                     ) -> List[List[RefinedStructure]]:
    """The chain of projective lines below a top of shape ``(1^{n-2}, 2^1)``.

    Component ``k`` (for ``k = 1, …, n-1``) is the closed projective
    line through the chains whose tableau is ``T_k``: its points are
    the chains obtained by descending with H steps to level ``n-k+1``,
    branching there with a V-type parameter ``[1:α]``, and continuing
    with the forced cyclic tail — together with the limit chain at
    ``[0:1]``.  Consecutive components share exactly one chain (the
    limit of one lies on the next), so their union is the full
    enumeration, ``(n-1)·q + 1`` chains over a field with q elements.
    """
    if field is None:
        field = l_n.field
    if not field.is_finite:
        raise UnsupportedEnumerationError(
            "component enumeration needs a finite base field")
    n = l_n.n
    t = l_n.type()
    if not (t.a2 == 1 and t.a1 == n - 2):
        raise ValueError(
            f"component structure requires top shape (1^(n-2), 2^1), got {t!r}")
    line = _projective_line(field)
    components: List[List[RefinedStructure]] = []
    for k in range(1, n):
        j = n - k  # level of the branching child
        prefix = [l_n]
        for _ in range(n - 1 - j):
            prefix.append(colength_one_family(prefix[-1], (0, 1)))
        parent = prefix[-1]  # level j+1
        member_chains: List[RefinedStructure] = []
        if k == n - 1:
            # the branching level has shape (2^1): a full projective line
            # of V-type children, already closed.
            for pt in line:
                child = colength_one_family(parent, pt)
                member_chains.append(
                    RefinedStructure(field, n, tuple(prefix) + (child,)))
        else:
            one = field.of(1)
            for a in field.elements():
                child = colength_one_family(parent, (one, a))
                tail = [child]
                for s in range(1, j):
                    tail.append(child.f_multiple(s))
                member_chains.append(
                    RefinedStructure(field, n, tuple(prefix) + tuple(tail)))
            # limit at [0:1]: the branching generator degenerates onto v2,
            # while the deeper levels stay at the constant value they take
            # for every [1:α], namely ⟨f^s·v1⟩ + f^(s+1)·parent.
            v1, v2 = parent.generators()
            tail = [colength_one_family(parent, (0, 1))]
            for s in range(1, j):
                gens = [v1.f_shift(s), v1.f_shift(s + 1), v2.f_shift(s + 1)]
                tail.append(submodule_from_generators(gens, n, field))
            member_chains.append(
                RefinedStructure(field, n, tuple(prefix) + tuple(tail)))
        components.append(member_chains)
    return components


def is_generic_structure(s: RefinedStructure) -> bool:
    """Whether the chain avoids the degenerate locus at every V step.

    With normalized generators ``(v1, v2)`` of the top level and, for
    each level ``k``, the counts ``X1(k)``/``X2(k)`` of H/V steps above
    ``k``, the chain is generic when either the top shape has
    ``a2 = 0``, or at every level ``k`` where ``a2`` drops the chain
    member ``l_k`` differs from the split module
    ``⟨f^{X1(k)}·v1, f^{X2(k)}·v2⟩``.
    """
    top = s.top
    t = submodule_type(top)
    if t.a2 == 0:
        return True
    v1, v2 = top.generators()
    n = s.order
    shapes = [submodule_type(l) for l in s.chain]  # top first

    def shape(k: int) -> YoungType:
        return shapes[n - k]

    top_cols = t.a1 + t.a2
    for k in range(1, n):
        if shape(k + 1).a2 - shape(k).a2 <= 0:
            continue
        x1 = top_cols - (shape(k).a1 + shape(k).a2)
        x2 = t.a2 - shape(k).a2
        split = submodule_from_generators(
            [v1.f_shift(x1), v2.f_shift(x2)], n, s.field)
        if split == s.level(k):
            return False
    return True
