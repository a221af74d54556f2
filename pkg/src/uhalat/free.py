"""Free unital hyperarchimedean vector lattices.

``free_uha(n)`` is H of the free Boolean algebra on ``n`` generators.  The
countably generated free object is handled lazily: each element mentions
finitely many generators, and lives in H of the free algebra on those.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .boolean import BoolHom, free_boolean_algebra
from .errors import PreconditionError
from .functors import SpeckerLattice, SpeckerMorphism, apply
from .specker import (
    Scalar,
    SpeckerElement,
    booleanize,
    constant,
    from_values,
    indicator,
    is_boolean_element,
    scalar_mul,
    specker_op,
    to_atom_valuation,
)

# Supports of lazily represented elements may reach this many generators.
MAX_SUPPORT = 12


@dataclass(frozen=True)
class FreeLattice:
    n: int
    lattice: SpeckerLattice
    generators: tuple[SpeckerElement, ...]

    @property
    def dimension(self) -> int:
        return self.lattice.dimension

    @property
    def unit(self) -> SpeckerElement:
        return self.lattice.unit

    @property
    def zero(self) -> SpeckerElement:
        return self.lattice.zero

    def generator(self, i: int) -> SpeckerElement:
        return self.generators[i]


def free_uha(n: int, capacity: int | None = None) -> FreeLattice:
    if capacity is None:
        algebra, gens = free_boolean_algebra(n)
    else:
        algebra, gens = free_boolean_algebra(n, capacity)
    return FreeLattice(n, SpeckerLattice(algebra), tuple(indicator(g) for g in gens))


def _free_base(k: int):
    return free_boolean_algebra(k, capacity=1 << MAX_SUPPORT)[0]


def universal_extension(F: FreeLattice, W: SpeckerLattice, f: Sequence[SpeckerElement]) -> SpeckerMorphism:
    """The unique unital morphism ``F -> W`` sending generator ``i`` to ``f[i]``.

    Atom ``w`` of W's base goes to the assignment whose bit ``i`` is the
    value of ``f[i]`` at ``w``.
    """
    if len(f) != F.n:
        raise PreconditionError(f"{len(f)} images for {F.n} generators")
    for b in f:
        if b.algebra != W.base or not is_boolean_element(b):
            raise PreconditionError(f"{b!r} is not a Boolean element of the target")
    vals = [to_atom_valuation(b).value_at for b in f]
    pm = tuple(
        sum(int(vals[i][w]) << i for i in range(F.n)) for w in range(W.base.atom_count)
    )
    return SpeckerMorphism(F.lattice, W, BoolHom(F.lattice.base, W.base, pm))


def _restrict_bits(a: int, positions: Sequence[int]) -> int:
    return sum((a >> p & 1) << j for j, p in enumerate(positions))


def cylinder_hom(support: Sequence[int], larger: Sequence[int]) -> BoolHom:
    """Inclusion of the free algebra on ``support`` into the one on ``larger``."""
    positions = [list(larger).index(i) for i in support]
    small, big = _free_base(len(support)), _free_base(len(larger))
    pm = tuple(_restrict_bits(a, positions) for a in range(big.atom_count))
    return BoolHom(small, big, pm)


def _minimize(support: tuple[int, ...], body: SpeckerElement) -> tuple[tuple[int, ...], SpeckerElement]:
    vals = to_atom_valuation(body).value_at
    size = len(vals)
    keep = [
        j for j in range(len(support))
        if any(vals[a] != vals[a ^ (1 << j)] for a in range(size))
    ]
    if len(keep) == len(support):
        return support, body
    new_vals = [vals[sum((b >> j & 1) << p for j, p in enumerate(keep))] for b in range(1 << len(keep))]
    return tuple(support[p] for p in keep), from_values(_free_base(len(keep)), new_vals)


@dataclass(frozen=True)
class FreeElement:
    """An element of the free object on countably many generators.

    ``body`` lives in H of the free algebra on ``support``; bit ``j`` of a
    body atom is the value of generator ``support[j]``.  Redundant
    generators are dropped on construction, so equality is structural.
    """

    support: tuple[int, ...]
    body: SpeckerElement

    def __post_init__(self) -> None:
        support = tuple(self.support)
        if list(support) != sorted(set(support)) or any(i < 0 for i in support):
            raise ValueError(f"support {support} must be sorted distinct naturals")
        if self.body.algebra != _free_base(len(support)):
            raise ValueError("body does not live over the free algebra on the support")
        support, body = _minimize(support, self.body)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "body", body)

    def embed(self, larger: Sequence[int]) -> SpeckerElement:
        """The body pushed into H of the free algebra on ``larger``."""
        g = SpeckerMorphism(
            SpeckerLattice(self.body.algebra),
            SpeckerLattice(_free_base(len(larger))),
            cylinder_hom(self.support, larger),
        )
        return apply(g, self.body)

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def is_boolean(self) -> bool:
        return is_boolean_element(self.body)

    def __add__(self, other: FreeElement) -> FreeElement:
        return free_element_op("add", self, other)

    def __sub__(self, other: FreeElement) -> FreeElement:
        return free_element_op("add", self, free_element_op("scalar", other, -1))

    def __neg__(self) -> FreeElement:
        return free_element_op("scalar", self, -1)

    def __and__(self, other: FreeElement) -> FreeElement:
        return free_element_op("meet", self, other)

    def __or__(self, other: FreeElement) -> FreeElement:
        return free_element_op("join", self, other)

    def __abs__(self) -> FreeElement:
        return FreeElement(self.support, abs(self.body))

    def __rmul__(self, r: Scalar) -> FreeElement:
        if not isinstance(r, (int, Fraction)):
            return NotImplemented
        return free_element_op("scalar", self, r)

    __mul__ = __rmul__

    def __le__(self, other: FreeElement) -> bool:
        return (self & other) == self

    def __repr__(self) -> str:
        return f"FreeElement(support={list(self.support)}, body={self.body!r})"

    def to_json(self) -> dict:
        return {"support": list(self.support), "body": self.body.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> FreeElement:
        return cls(tuple(int(i) for i in data["support"]), SpeckerElement.from_json(data["body"]))


def free_constant(r: Scalar) -> FreeElement:
    return FreeElement((), constant(_free_base(0), r))


def free_unit() -> FreeElement:
    return free_constant(1)


def free_zero() -> FreeElement:
    return free_constant(0)


def free_generator(i: int) -> FreeElement:
    return FreeElement((i,), from_values(_free_base(1), [0, 1]))


def free_element_op(kind: str, x: FreeElement, y: FreeElement | Scalar) -> FreeElement:
    """Operate after cylinder-embedding both operands on the union support."""
    if kind == "scalar":
        if isinstance(y, FreeElement):
            raise TypeError("scalar multiplication takes a rational")
        return FreeElement(x.support, scalar_mul(y, x.body))
    if not isinstance(y, FreeElement):
        raise TypeError(f"{kind} takes two free elements")
    union = tuple(sorted(set(x.support) | set(y.support)))
    if len(union) > MAX_SUPPORT:
        raise PreconditionError(f"joint support of {len(union)} generators exceeds {MAX_SUPPORT}")
    return FreeElement(union, specker_op(kind, x.embed(union), y.embed(union)))


def fresh_index(x: FreeElement) -> int:
    used = set(x.support)
    i = 0
    while i in used:
        i += 1
    return i


def split_boolean(b: FreeElement) -> FreeElement:
    """A Boolean ``c`` with ``0 < c < b``: ``b`` cut along an unused generator."""
    if not b.is_boolean() or b.is_zero():
        raise PreconditionError("split needs a nonzero Boolean element")
    return b & free_generator(fresh_index(b))


def polar_generator(x: FreeElement) -> FreeElement:
    """Indicator of the zero set of ``x``: the Boolean element naming ``P(x)``."""
    vals = to_atom_valuation(x.body).value_at
    return FreeElement(x.support, from_values(x.body.algebra, [int(v == 0) for v in vals]))


def boolean_index(b: FreeElement) -> int:
    """Position of a Boolean element in a fixed enumeration of all of them.

    The support is coded as a bitmask and the body by the atoms where it is
    1; the two naturals are combined with the Cantor pairing function.
    """
    if not b.is_boolean():
        raise PreconditionError("only Boolean elements are enumerated")
    s = sum(1 << i for i in b.support)
    m = sum(mask for mask, x in b.body.items() if x == 1)
    return (s + m) * (s + m + 1) // 2 + m


@dataclass(frozen=True)
class CantorReport:
    unit_nonzero: bool
    boolean_part: FreeElement
    split: FreeElement | None
    polar_generator: FreeElement
    polar_index: int

    def to_json(self) -> dict:
        return {
            "unit_nonzero": self.unit_nonzero,
            "boolean_part": self.boolean_part.to_json(),
            "split": None if self.split is None else self.split.to_json(),
            "polar_generator": self.polar_generator.to_json(),
            "polar_index": self.polar_index,
        }


def cantor_checks(x: FreeElement) -> CantorReport:
    """Decidable instances of the three conditions characterizing the free object.

    ``boolean_part`` is ``n|x| meet u`` (the support indicator of ``x``) and
    ``split`` cuts it strictly; ``polar_index`` names ``P(x)`` in a countable
    enumeration.
    """
    b = FreeElement(x.support, booleanize(x.body))
    gen = polar_generator(x)
    return CantorReport(
        unit_nonzero=free_unit() != free_zero(),
        boolean_part=b,
        split=None if b.is_zero() else split_boolean(b),
        polar_generator=gen,
        polar_index=boolean_index(gen),
    )
