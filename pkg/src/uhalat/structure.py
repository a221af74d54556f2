"""Principal polars, finite products and direct-factor splittings."""

from __future__ import annotations

from dataclasses import dataclass

from .boolean import BoolHom, Element, _bits, make_algebra
from .errors import AlgebraMismatchError, PreconditionError
from .functors import SpeckerLattice, SpeckerMorphism
from .specker import (
    SpeckerElement,
    from_values,
    indicator,
    is_boolean_element,
    linear_combination,
    block_decomposition,
    to_atom_valuation,
)


@dataclass(frozen=True, slots=True)
class PolarDescriptor:
    """``P(v) = {w : |v| meet |w| = 0}``, stored by its Boolean generator.

    ``generator`` is the indicator of the zero set of ``v``; ``w`` lies in
    the polar iff it vanishes off that zero set.
    """

    lattice: SpeckerLattice
    generator: SpeckerElement

    def __contains__(self, w: SpeckerElement) -> bool:
        if w.algebra != self.lattice.base:
            raise AlgebraMismatchError("element outside the lattice")
        allowed = sum(m for m, x in self.generator.items() if x == 1)
        return all(m & ~allowed == 0 for m, x in w.items() if x != 0)

    def to_json(self) -> dict:
        gen = sum(m for m, x in self.generator.items() if x == 1)
        return {"generator": {"atoms": list(_bits(gen))}}


def principal_polar(v: SpeckerElement) -> PolarDescriptor:
    zero_set = sum(m for m, x in v.items() if x == 0)
    return PolarDescriptor(SpeckerLattice(v.algebra), indicator(Element(v.algebra, zero_set)))


def in_polar_by_definition(v: SpeckerElement, w: SpeckerElement) -> bool:
    return (abs(v) & abs(w)).is_zero()


@dataclass(frozen=True)
class Product:
    """``V1 x V2`` as H over the disjoint union of the two atom sets.

    Atoms of the first factor keep their indices; atoms of the second are
    shifted by the first factor's atom count.
    """

    first: SpeckerLattice
    second: SpeckerLattice
    lattice: SpeckerLattice

    @property
    def offset(self) -> int:
        return self.first.base.atom_count

    @property
    def projections(self) -> tuple[SpeckerMorphism, SpeckerMorphism]:
        k1, k2 = self.first.base.atom_count, self.second.base.atom_count
        p1 = BoolHom(self.lattice.base, self.first.base, tuple(range(k1)))
        p2 = BoolHom(self.lattice.base, self.second.base, tuple(range(k1, k1 + k2)))
        return (
            SpeckerMorphism(self.lattice, self.first, p1),
            SpeckerMorphism(self.lattice, self.second, p2),
        )

    def pair(self, v1: SpeckerElement, v2: SpeckerElement) -> SpeckerElement:
        if v1.algebra != self.first.base or v2.algebra != self.second.base:
            raise AlgebraMismatchError("components outside the factors")
        vals = to_atom_valuation(v1).value_at + to_atom_valuation(v2).value_at
        return from_values(self.lattice.base, vals)

    def split(self, v: SpeckerElement) -> tuple[SpeckerElement, SpeckerElement]:
        p1, p2 = self.projections
        return p1(v), p2(v)

    # The injections are linear lattice maps but not unital.
    def inject_first(self, v1: SpeckerElement) -> SpeckerElement:
        return self.pair(v1, self.second.zero)

    def inject_second(self, v2: SpeckerElement) -> SpeckerElement:
        return self.pair(self.first.zero, v2)


def product(V1: SpeckerLattice, V2: SpeckerLattice) -> Product:
    base = make_algebra(V1.base.atom_count + V2.base.atom_count)
    return Product(V1, V2, SpeckerLattice(base))


def _support(v: SpeckerElement) -> int:
    return sum(m for m, x in v.items() if x == 1)


@dataclass(frozen=True)
class DirectFactorIso:
    """``V -> P(u2) x P(u1)`` for complementary Boolean elements ``u1, u2``.

    The first factor is carried by the atoms under ``u1``, the second by the
    atoms under ``u2``, each renumbered in ascending order.
    """

    lattice: SpeckerLattice
    u1: SpeckerElement
    u2: SpeckerElement
    target: Product

    @property
    def atoms1(self) -> list[int]:
        return list(_bits(_support(self.u1)))

    @property
    def atoms2(self) -> list[int]:
        return list(_bits(_support(self.u2)))

    def split(self, v: SpeckerElement) -> tuple[SpeckerElement, SpeckerElement]:
        """``(v', v'')`` inside V, from the block decomposition of ``v``."""
        terms = block_decomposition(v)
        base = self.lattice.base
        v1 = linear_combination(base, [(r, chi & self.u1) for r, chi in terms])
        v2 = linear_combination(base, [(r, chi & self.u2) for r, chi in terms])
        return v1, v2

    def __call__(self, v: SpeckerElement) -> SpeckerElement:
        v1, v2 = self.split(v)
        vals1 = to_atom_valuation(v1).value_at
        vals2 = to_atom_valuation(v2).value_at
        left = from_values(self.target.first.base, [vals1[a] for a in self.atoms1])
        right = from_values(self.target.second.base, [vals2[a] for a in self.atoms2])
        return self.target.pair(left, right)

    def inverse(self, p: SpeckerElement) -> SpeckerElement:
        vals = to_atom_valuation(p).value_at
        out = [0] * self.lattice.base.atom_count
        for j, a in enumerate(self.atoms1 + self.atoms2):
            out[a] = vals[j]
        return from_values(self.lattice.base, out)

    def as_morphism(self) -> SpeckerMorphism:
        """The same map, as H of a relabeling of atoms."""
        pm = tuple(self.atoms1 + self.atoms2)
        return SpeckerMorphism(self.lattice, self.target.lattice, BoolHom(self.lattice.base, self.target.lattice.base, pm))


def direct_factor_decomposition(V: SpeckerLattice, u1: SpeckerElement, u2: SpeckerElement) -> DirectFactorIso:
    for x in (u1, u2):
        if x.algebra != V.base:
            raise AlgebraMismatchError("element outside the lattice")
        if not is_boolean_element(x):
            raise PreconditionError(f"{x!r} is not a Boolean element")
    if not (u1 & u2).is_zero() or (u1 | u2) != V.unit:
        raise PreconditionError("u1 and u2 are not complementary")
    k1 = bin(_support(u1)).count("1")
    k2 = bin(_support(u2)).count("1")
    target = product(SpeckerLattice(make_algebra(k1)), SpeckerLattice(make_algebra(k2)))
    return DirectFactorIso(V, u1, u2, target)
