"""The functors H: BA -> uHA and B: uHA -> BA and their natural isomorphisms."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Iterator, Sequence

from .boolean import (
    BooleanAlgebra,
    BoolHom,
    Element,
    Partition,
    _check_same,
    image_partition,
    make_algebra,
)
from .errors import AlgebraMismatchError, DomainError
from .specker import (
    AtomValuation,
    SpeckerElement,
    canonicalize,
    from_atom_valuation,
    indicator,
    is_boolean_element,
    linear_combination,
    to_atom_valuation,
    unit,
    zero,
)


@dataclass(frozen=True, slots=True)
class SpeckerLattice:
    """H(base): every SpeckerElement over ``base``."""

    base: BooleanAlgebra

    @property
    def unit(self) -> SpeckerElement:
        return unit(self.base)

    @property
    def zero(self) -> SpeckerElement:
        return zero(self.base)

    @property
    def dimension(self) -> int:
        """Dimension of the space of atom valuations."""
        return self.base.atom_count

    def contains(self, v: SpeckerElement) -> bool:
        return v.algebra == self.base

    def boolean_elements(self) -> list[SpeckerElement]:
        return [indicator(b) for b in self.base.elements()]

    def grid(self, values: Sequence) -> Iterator[SpeckerElement]:
        """Every element whose atom values come from ``values``."""
        for vals in product(values, repeat=self.base.atom_count):
            yield from_atom_valuation(AtomValuation(self.base, vals))

    def random_element(self, rng: random.Random, max_den: int = 12, max_num: int = 24) -> SpeckerElement:
        vals = [Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den)) for _ in range(self.base.atom_count)]
        return from_atom_valuation(AtomValuation(self.base, vals))


@dataclass(frozen=True, slots=True)
class SpeckerMorphism:
    """H(f) for a Boolean homomorphism ``f``; acts on elements by pullback of atoms."""

    source: SpeckerLattice
    target: SpeckerLattice
    underlying: BoolHom

    def __post_init__(self) -> None:
        _check_same(self.source.base, self.underlying.source)
        _check_same(self.target.base, self.underlying.target)

    def __call__(self, v: SpeckerElement) -> SpeckerElement:
        return apply(self, v)

    def then(self, other: SpeckerMorphism) -> SpeckerMorphism:
        """The composite ``other o self``."""
        return SpeckerMorphism(self.source, other.target, self.underlying.then(other.underlying))

    def to_json(self) -> dict:
        return {"kind": "specker_mor", **self.underlying.to_json()}


def morphism_to_json(m: BoolHom | SpeckerMorphism) -> dict:
    if isinstance(m, SpeckerMorphism):
        return m.to_json()
    return {"kind": "bool_hom", **m.to_json()}


def morphism_from_json(data: dict) -> BoolHom | SpeckerMorphism:
    f = BoolHom.from_json(data)
    kind = data.get("kind", "bool_hom")
    if kind == "bool_hom":
        return f
    if kind == "specker_mor":
        return functor_H_mor(f)
    raise ValueError(f"unknown morphism kind {kind!r}")


def functor_H_obj(base: BooleanAlgebra) -> SpeckerLattice:
    return SpeckerLattice(base)


def functor_H_mor(f: BoolHom) -> SpeckerMorphism:
    return SpeckerMorphism(SpeckerLattice(f.source), SpeckerLattice(f.target), f)


def apply(g: SpeckerMorphism, v: SpeckerElement) -> SpeckerElement:
    """``g(v)(f(b)) := v(b)`` over the image partition ``f(P)``."""
    f = g.underlying
    if v.algebra != f.source:
        raise AlgebraMismatchError("element does not live in the morphism's source")
    kept = [(f.map_mask(m), x) for m, x in v.items()]
    kept = [(m, x) for m, x in kept if m]
    part = image_partition(f, v.partition)
    by_mask = dict(kept)
    return canonicalize(part, [by_mask[m] for m in part.masks])


def apply_pointwise(g: SpeckerMorphism, v: SpeckerElement) -> SpeckerElement:
    """Same map as :func:`apply`, defined by ``g(v)(a) = v(point_map(a))``."""
    f = g.underlying
    if v.algebra != f.source:
        raise AlgebraMismatchError("element does not live in the morphism's source")
    vals = to_atom_valuation(v).value_at
    return from_atom_valuation(AtomValuation(f.target, tuple(vals[p] for p in f.point_map)))


@dataclass(frozen=True)
class BooleanElements:
    """B(V), presented as V.base together with the bijection onto Boolean elements."""

    lattice: SpeckerLattice

    @property
    def algebra(self) -> BooleanAlgebra:
        return self.lattice.base

    def to_lattice(self, b: Element) -> SpeckerElement:
        _check_same(self.algebra, b.algebra)
        return indicator(b)

    def from_lattice(self, v: SpeckerElement) -> Element:
        if v.algebra != self.algebra or not is_boolean_element(v):
            raise DomainError(f"{v!r} is not a Boolean element")
        mask = 0
        for m, x in v.items():
            if x == 1:
                mask |= m
        return Element(self.algebra, mask)

    def complement(self, v: SpeckerElement) -> SpeckerElement:
        return self.lattice.unit - v


def functor_B_obj(V: SpeckerLattice) -> BooleanElements:
    return BooleanElements(V)


def functor_B_mor(g: SpeckerMorphism) -> BoolHom:
    """Restriction of ``g`` to Boolean elements, read back as a BoolHom.

    The images of the source atom indicators partition the target atoms;
    target atom ``a`` is sent to the source atom whose image covers it.
    """
    src, tgt = functor_B_obj(g.source), functor_B_obj(g.target)
    pm = [-1] * tgt.algebra.atom_count
    for i, atom in enumerate(src.algebra.atoms()):
        image = tgt.from_lattice(g(src.to_lattice(atom)))
        for a in image.sorted_atoms():
            pm[a] = i
    if -1 in pm:
        raise DomainError("morphism does not preserve the unit")
    return BoolHom(src.algebra, tgt.algebra, tuple(pm))


@dataclass(frozen=True)
class Eta:
    """The isomorphism B(H(B)) -> B, ``v -> v^{-1}(1)``."""

    algebra: BooleanAlgebra

    def __call__(self, v: SpeckerElement) -> Element:
        if v.algebra != self.algebra or not is_boolean_element(v):
            raise DomainError(f"{v!r} is not a Boolean element of H(B)")
        if v.is_zero():
            return self.algebra.bottom
        mask = 0
        for m, x in v.items():
            if x == 1:
                mask |= m
        return Element(self.algebra, mask)

    def inverse(self, b: Element) -> SpeckerElement:
        return indicator(b)


def eta(B: BooleanAlgebra) -> Eta:
    return Eta(B)


@dataclass(frozen=True)
class Epsilon:
    """The isomorphism H(B(V)) -> V, ``v -> sum_P v(a) a`` computed in V.

    An element of H(B(V)) is a SpeckerElement over the algebra of
    Boolean elements of V; each of its blocks names a Boolean element of V.
    """

    lattice: SpeckerLattice

    def __call__(self, w: SpeckerElement) -> SpeckerElement:
        bv = functor_B_obj(self.lattice)
        if w.algebra != bv.algebra:
            raise AlgebraMismatchError("element is not over B(V)")
        terms = [(x, bv.to_lattice(b)) for b, x in zip(w.partition, w.values)]
        return linear_combination(self.lattice.base, terms)

    def inverse(self, v: SpeckerElement) -> SpeckerElement:
        bv = functor_B_obj(self.lattice)
        blocks = [bv.from_lattice(indicator(b)) for b in v.partition]
        return canonicalize(Partition(bv.algebra, tuple(blocks)), list(v.values))


def epsilon(V: SpeckerLattice) -> Epsilon:
    return Epsilon(V)


def _sample(universe: Iterable, limit: int | None, rng: random.Random) -> list:
    items = list(universe)
    if limit is not None and len(items) > limit:
        items = rng.sample(items, limit)
    return items


EXHAUSTIVE_ATOMS = 3
GRID = (Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(2))


def eta_square_commutes(f: BoolHom) -> bool:
    """``eta_A o B(H(f)) = f o eta_B`` on every Boolean element of H(B)."""
    g = functor_H_mor(f)
    bf = functor_B_mor(g)
    eta_b, eta_a = eta(f.source), eta(f.target)
    src = functor_B_obj(g.source)
    tgt = functor_B_obj(g.target)
    for v in g.source.boolean_elements():
        lhs = eta_a(tgt.to_lattice(bf(src.from_lattice(v))))
        rhs = f(eta_b(v))
        if lhs != rhs:
            return False
    return True


def epsilon_square_commutes(
    g: SpeckerMorphism,
    cases: int = 200,
    seed: int = 0,
    values: Sequence = GRID,
) -> bool:
    """``epsilon_W o H(B(g)) = g o epsilon_V`` on elements of H(B(V)).

    Exhaustive over a value grid up to three atoms, sampled beyond.
    """
    rng = random.Random(seed)
    hbg = functor_H_mor(functor_B_mor(g))
    eps_v, eps_w = epsilon(g.source), epsilon(g.target)
    bv = SpeckerLattice(functor_B_obj(g.source).algebra)
    if bv.base.atom_count <= EXHAUSTIVE_ATOMS:
        universe: Iterable[SpeckerElement] = bv.grid(values)
    else:
        universe = (bv.random_element(rng) for _ in range(cases))
    return all(eps_w(hbg(w)) == g(eps_v(w)) for w in universe)


def check_naturality(m: BoolHom | SpeckerMorphism, cases: int = 200, seed: int = 0) -> bool:
    if isinstance(m, SpeckerMorphism):
        return epsilon_square_commutes(m, cases=cases, seed=seed)
    return eta_square_commutes(m)


def random_hom(rng: random.Random, max_atoms: int, min_atoms: int = 1) -> BoolHom:
    k1 = rng.randint(min_atoms, max_atoms)
    k2 = rng.randint(min_atoms, max_atoms)
    pm = tuple(rng.randrange(k1) for _ in range(k2))
    return BoolHom(make_algebra(k1), make_algebra(k2), pm)


def preserves_structure(g: Callable[[SpeckerElement], SpeckerElement], V: SpeckerLattice, W: SpeckerLattice, elems: Sequence[SpeckerElement]) -> bool:
    """Whether ``g`` preserves +, scalars, meet, join and the unit on ``elems``."""
    if g(V.unit) != W.unit:
        return False
    for x in elems:
        if g(Fraction(-3, 2) * x) != Fraction(-3, 2) * g(x):
            return False
        for y in elems:
            gx, gy = g(x), g(y)
            if g(x + y) != gx + gy or g(x & y) != gx & gy or g(x | y) != gx | gy:
                return False
    return True
