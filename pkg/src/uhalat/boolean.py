"""Finite Boolean algebras presented by their atoms.

Every algebra handled here is the powerset of ``{0, ..., atom_count - 1}``.
Elements are stored as integer bitsets; bit ``i`` set means atom ``i`` lies
below the element.  Homomorphisms are stored by their dual point maps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import AlgebraMismatchError, CapacityError, PartitionError

DEFAULT_CAPACITY = 24


def _bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True, slots=True)
class BooleanAlgebra:
    atom_count: int

    @property
    def full_mask(self) -> int:
        return (1 << self.atom_count) - 1

    @property
    def top(self) -> Element:
        return Element(self, self.full_mask)

    @property
    def bottom(self) -> Element:
        return Element(self, 0)

    def __len__(self) -> int:
        return 1 << self.atom_count

    def atom(self, i: int) -> Element:
        if not 0 <= i < self.atom_count:
            raise IndexError(f"atom {i} out of range for {self.atom_count} atoms")
        return Element(self, 1 << i)

    def atoms(self) -> list[Element]:
        return [Element(self, 1 << i) for i in range(self.atom_count)]

    def element(self, atoms: Iterable[int]) -> Element:
        mask = 0
        for i in atoms:
            if not 0 <= i < self.atom_count:
                raise IndexError(f"atom {i} out of range for {self.atom_count} atoms")
            mask |= 1 << i
        return Element(self, mask)

    def elements(self) -> Iterator[Element]:
        """All ``2**atom_count`` elements, in bitset order."""
        for mask in range(1 << self.atom_count):
            yield Element(self, mask)

    def atoms_partition(self) -> Partition:
        return Partition(self, tuple(self.atoms()))

    def unit_partition(self) -> Partition:
        """The singleton partition ``{top}`` (empty for the trivial algebra)."""
        if self.atom_count == 0:
            return Partition(self, ())
        return Partition(self, (self.top,))

    def to_json(self) -> dict:
        return {"atoms": self.atom_count}

    @classmethod
    def from_json(cls, data: dict) -> BooleanAlgebra:
        return make_algebra(int(data["atoms"]))


def make_algebra(atom_count: int, capacity: int = DEFAULT_CAPACITY) -> BooleanAlgebra:
    if atom_count < 0:
        raise ValueError("atom_count must be non-negative")
    if atom_count > capacity:
        raise CapacityError(f"{atom_count} atoms exceeds capacity {capacity}")
    return BooleanAlgebra(atom_count)


@dataclass(frozen=True, slots=True)
class Element:
    algebra: BooleanAlgebra
    mask: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.algebra.atom_count:
            raise ValueError(f"mask {self.mask:#b} has atoms outside the algebra")

    @property
    def atoms(self) -> frozenset[int]:
        return frozenset(_bits(self.mask))

    def sorted_atoms(self) -> list[int]:
        return list(_bits(self.mask))

    def is_bottom(self) -> bool:
        return self.mask == 0

    def is_top(self) -> bool:
        return self.mask == self.algebra.full_mask

    def __le__(self, other: Element) -> bool:
        _check_same(self.algebra, other.algebra)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: Element) -> bool:
        return self <= other and self.mask != other.mask

    def __and__(self, other: Element) -> Element:
        return boolean_op("meet", self, other)

    def __or__(self, other: Element) -> Element:
        return boolean_op("join", self, other)

    def __invert__(self) -> Element:
        return boolean_op("complement", self)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, _bits(self.mask))) + "}"

    def to_json(self) -> dict:
        return {"atoms": self.sorted_atoms()}

    @classmethod
    def from_json(cls, algebra: BooleanAlgebra, data: dict) -> Element:
        return algebra.element(data["atoms"])


def _trusted_element(algebra: BooleanAlgebra, mask: int) -> Element:
    e = object.__new__(Element)
    object.__setattr__(e, "algebra", algebra)
    object.__setattr__(e, "mask", mask)
    return e


def _check_same(a: BooleanAlgebra, b: BooleanAlgebra) -> None:
    if a != b:
        raise AlgebraMismatchError(f"{a.atom_count}-atom vs {b.atom_count}-atom algebra")


def boolean_op(kind: str, x: Element, y: Element | None = None) -> Element:
    """Meet, join or complement of atom sets."""
    if kind == "complement":
        if y is not None:
            raise TypeError("complement takes a single operand")
        return Element(x.algebra, x.algebra.full_mask & ~x.mask)
    if y is None:
        raise TypeError(f"{kind} takes two operands")
    _check_same(x.algebra, y.algebra)
    if kind == "meet":
        return Element(x.algebra, x.mask & y.mask)
    if kind == "join":
        return Element(x.algebra, x.mask | y.mask)
    raise ValueError(f"unknown boolean operation {kind!r}")


def is_partition(algebra: BooleanAlgebra, elements: Iterable[Element]) -> bool:
    """Whether ``elements`` is a partition of ``algebra``.

    In a finite algebra a disjoint family without bottom is maximal exactly
    when it joins to top.
    """
    seen = 0
    for e in elements:
        _check_same(algebra, e.algebra)
        if e.mask == 0 or seen & e.mask:
            return False
        seen |= e.mask
    return seen == algebra.full_mask


@dataclass(frozen=True, slots=True)
class Partition:
    """A partition of a finite Boolean algebra, blocks sorted by least atom."""

    algebra: BooleanAlgebra
    blocks: tuple[Element, ...]
    masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not is_partition(self.algebra, self.blocks):
            raise PartitionError(f"{list(self.blocks)} is not a partition")
        ordered = tuple(sorted(self.blocks, key=lambda b: _lowest(b.mask)))
        object.__setattr__(self, "blocks", ordered)
        object.__setattr__(self, "masks", tuple(b.mask for b in ordered))

    @classmethod
    def from_masks(cls, algebra: BooleanAlgebra, masks: Iterable[int]) -> Partition:
        return cls(algebra, tuple(Element(algebra, m) for m in masks))

    @classmethod
    def _trusted(cls, algebra: BooleanAlgebra, masks: Sequence[int]) -> Partition:
        """Skip validation: ``masks`` already partition the atoms, ordered by least atom."""
        p = object.__new__(cls)
        object.__setattr__(p, "algebra", algebra)
        object.__setattr__(p, "blocks", tuple(_trusted_element(algebra, m) for m in masks))
        object.__setattr__(p, "masks", tuple(masks))
        return p

    @classmethod
    def from_lists(cls, algebra: BooleanAlgebra, blocks: Iterable[Iterable[int]]) -> Partition:
        return cls(algebra, tuple(algebra.element(b) for b in blocks))

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.blocks)

    def __and__(self, other: Partition) -> Partition:
        return common_refinement(self, other)

    def __le__(self, other: Partition) -> bool:
        return refines(self, other)

    def block_of(self, atom: int) -> int:
        """Index of the block containing ``atom``."""
        bit = 1 << atom
        for i, b in enumerate(self.blocks):
            if b.mask & bit:
                return i
        raise IndexError(f"atom {atom} not covered")

    def __repr__(self) -> str:
        return "{" + ",".join(map(repr, self.blocks)) + "}"

    def to_json(self) -> dict:
        return {"blocks": [b.sorted_atoms() for b in self.blocks]}

    @classmethod
    def from_json(cls, algebra: BooleanAlgebra, data: dict) -> Partition:
        return cls.from_lists(algebra, data["blocks"])


def common_refinement(p1: Partition, p2: Partition) -> Partition:
    _check_same(p1.algebra, p2.algebra)
    masks = [a & b for a in p1.masks for b in p2.masks if a & b]
    return Partition.from_masks(p1.algebra, masks)


def refines(p1: Partition, p2: Partition) -> bool:
    """Whether every block of ``p1`` lies below some block of ``p2``."""
    _check_same(p1.algebra, p2.algebra)
    return all(any(a & ~b == 0 for b in p2.masks) for a in p1.masks)


@dataclass(frozen=True, slots=True)
class BoolHom:
    """A homomorphism ``source -> target`` given by its dual point map.

    ``point_map[a]`` is the source atom lying under target atom ``a``; the
    element map sends ``b`` to ``{a : point_map[a] in b}``.
    """

    source: BooleanAlgebra
    target: BooleanAlgebra
    point_map: tuple[int, ...]

    def __post_init__(self) -> None:
        pm = tuple(self.point_map)
        object.__setattr__(self, "point_map", pm)
        if len(pm) != self.target.atom_count:
            raise ValueError(
                f"point map has length {len(pm)}, target has {self.target.atom_count} atoms"
            )
        if any(not 0 <= p < self.source.atom_count for p in pm):
            raise ValueError(f"point map {pm} leaves the source atoms")

    @classmethod
    def identity(cls, algebra: BooleanAlgebra) -> BoolHom:
        return cls(algebra, algebra, tuple(range(algebra.atom_count)))

    def __call__(self, b: Element) -> Element:
        return apply_hom(self, b)

    def map_mask(self, mask: int) -> int:
        out = 0
        for a, p in enumerate(self.point_map):
            if mask >> p & 1:
                out |= 1 << a
        return out

    def then(self, other: BoolHom) -> BoolHom:
        """The composite ``other o self``."""
        _check_same(self.target, other.source)
        pm = tuple(self.point_map[p] for p in other.point_map)
        return BoolHom(self.source, other.target, pm)

    def is_injective(self) -> bool:
        return set(self.point_map) == set(range(self.source.atom_count))

    def is_surjective(self) -> bool:
        return len(set(self.point_map)) == len(self.point_map)

    def to_json(self) -> dict:
        return {
            "source": self.source.atom_count,
            "target": self.target.atom_count,
            "point_map": list(self.point_map),
        }

    @classmethod
    def from_json(cls, data: dict) -> BoolHom:
        return cls(
            make_algebra(int(data["source"])),
            make_algebra(int(data["target"])),
            tuple(int(p) for p in data["point_map"]),
        )


def all_homs(source: BooleanAlgebra, target: BooleanAlgebra) -> Iterator[BoolHom]:
    """Every homomorphism between two finite algebras."""
    for pm in itertools.product(range(source.atom_count), repeat=target.atom_count):
        yield BoolHom(source, target, pm)


def apply_hom(f: BoolHom, b: Element) -> Element:
    _check_same(f.source, b.algebra)
    return Element(f.target, f.map_mask(b.mask))


def image_partition(f: BoolHom, p: Partition) -> Partition:
    """``f(P)`` with the blocks sent to bottom dropped."""
    _check_same(f.source, p.algebra)
    masks = [m for m in map(f.map_mask, p.masks) if m]
    return Partition.from_masks(f.target, masks)


def free_boolean_algebra(n: int, capacity: int = DEFAULT_CAPACITY) -> tuple[BooleanAlgebra, list[Element]]:
    """The free Boolean algebra on ``n`` generators.

    Atom ``a`` is the assignment whose bit ``i`` is ``(a >> i) & 1``, and
    generator ``i`` is the set of atoms with bit ``i`` on.
    """
    if n < 0:
        raise ValueError("generator count must be non-negative")
    if n >= 64 or (1 << n) > capacity:
        raise CapacityError(f"free algebra on {n} generators needs {2**n} atoms > {capacity}")
    algebra = make_algebra(1 << n, capacity)
    gens = [Element(algebra, sum(1 << a for a in range(1 << n) if a >> i & 1)) for i in range(n)]
    return algebra, gens


def generated_subalgebra(
    algebra: BooleanAlgebra, generators: Sequence[Element]
) -> tuple[Partition, list[Element]]:
    """The subalgebra generated by ``generators``.

    Returns the induced atom partition (atoms are identified when no
    generator separates them) together with the elements it spans: every
    join of blocks.
    """
    for g in generators:
        _check_same(algebra, g.algebra)
    classes: dict[tuple[int, ...], int] = {}
    for a in range(algebra.atom_count):
        key = tuple(g.mask >> a & 1 for g in generators)
        classes[key] = classes.get(key, 0) | (1 << a)
    part = Partition.from_masks(algebra, classes.values())
    masks = part.masks
    spanned = []
    for choice in range(1 << len(masks)):
        m = 0
        for j, bm in enumerate(masks):
            if choice >> j & 1:
                m |= bm
        spanned.append(Element(algebra, m))
    spanned.sort(key=lambda e: e.mask)
    return part, spanned
