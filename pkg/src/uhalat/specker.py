"""Elements of the Specker lattice H(B) of a finite Boolean algebra B.

An element is a rational-valued map on a partition of B, kept in canonical
form: blocks carrying equal values are merged, so values on distinct blocks
are pairwise distinct.  Two maps that agree on a common refinement then have
the same canonical form, which makes equality structural.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .boolean import BooleanAlgebra, Element, Partition, _check_same, make_algebra
from .errors import CapacityError, ShapeError

Scalar = Union[int, Fraction]

_RATIONAL = re.compile(r"-?\d+(?:/\d+)?")


def parse_rational(text: str) -> Fraction:
    """Parse ``-?digits(/digits)?`` into a reduced fraction."""
    if not _RATIONAL.fullmatch(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def format_rational(r: Fraction) -> str:
    return str(Fraction(r))


@dataclass(frozen=True, slots=True)
class SpeckerElement:
    algebra: BooleanAlgebra
    partition: Partition
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        _check_same(self.algebra, self.partition.algebra)
        if len(self.values) != len(self.partition):
            raise ShapeError(f"{len(self.values)} values for {len(self.partition)} blocks")
        if len(set(self.values)) != len(self.values):
            raise ShapeError("values must be pairwise distinct; use canonicalize()")

    def items(self) -> Iterable[tuple[int, Fraction]]:
        """Pairs ``(block mask, value)``."""
        return zip(self.partition.masks, self.values)

    def value_at(self, atom: int) -> Fraction:
        return self.values[self.partition.block_of(atom)]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.values)

    def __add__(self, other: SpeckerElement) -> SpeckerElement:
        return specker_op("add", self, other)

    def __sub__(self, other: SpeckerElement) -> SpeckerElement:
        return specker_op("add", self, scalar_mul(-1, other))

    def __neg__(self) -> SpeckerElement:
        return scalar_mul(-1, self)

    def __and__(self, other: SpeckerElement) -> SpeckerElement:
        return specker_op("meet", self, other)

    def __or__(self, other: SpeckerElement) -> SpeckerElement:
        return specker_op("join", self, other)

    def __abs__(self) -> SpeckerElement:
        return abs_val(self)

    def __rmul__(self, r: Scalar) -> SpeckerElement:
        if not isinstance(r, (int, Fraction)):
            return NotImplemented
        return scalar_mul(r, self)

    __mul__ = __rmul__

    def __le__(self, other: SpeckerElement) -> bool:
        return (self & other) == self

    def __ge__(self, other: SpeckerElement) -> bool:
        return other <= self

    def __repr__(self) -> str:
        body = ", ".join(f"{b!r}: {format_rational(x)}" for b, x in zip(self.partition, self.values))
        return f"[{body}]"

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.atom_count,
            "blocks": [b.sorted_atoms() for b in self.partition],
            "values": [format_rational(x) for x in self.values],
        }

    @classmethod
    def from_json(cls, data: dict) -> SpeckerElement:
        algebra = make_algebra(int(data["algebra"]))
        part = Partition.from_lists(algebra, data["blocks"])
        values = [parse_rational(str(x)) for x in data["values"]]
        return canonicalize(part, values)


@dataclass(frozen=True, slots=True)
class AtomValuation:
    """The value of an element at every atom; the brute-force view."""

    algebra: BooleanAlgebra
    value_at: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        vals = tuple(x if type(x) is Fraction else Fraction(x) for x in self.value_at)
        object.__setattr__(self, "value_at", vals)
        if len(vals) != self.algebra.atom_count:
            raise ShapeError(f"{len(vals)} values for {self.algebra.atom_count} atoms")


def _from_groups(algebra: BooleanAlgebra, groups) -> SpeckerElement:
    """Build from distinct values paired with disjoint masks covering every atom.

    ``groups`` is a dict from value to mask or a sequence of such pairs.
    """
    if isinstance(groups, dict):
        groups = groups.items()
    ordered = sorted(groups, key=lambda kv: kv[1] & -kv[1])
    v = object.__new__(SpeckerElement)
    object.__setattr__(v, "algebra", algebra)
    object.__setattr__(v, "partition", Partition._trusted(algebra, [m for _, m in ordered]))
    object.__setattr__(v, "values", tuple(x for x, _ in ordered))
    return v


def canonicalize(partition: Partition, values: Sequence[Scalar]) -> SpeckerElement:
    """Merge blocks carrying equal values."""
    if len(values) != len(partition):
        raise ShapeError(f"{len(values)} values for {len(partition)} blocks")
    groups: dict[Fraction, int] = {}
    for m, x in zip(partition.masks, values):
        x = Fraction(x)
        groups[x] = groups.get(x, 0) | m
    return _from_groups(partition.algebra, groups)


def constant(algebra: BooleanAlgebra, r: Scalar) -> SpeckerElement:
    part = algebra.unit_partition()
    return SpeckerElement(algebra, part, (Fraction(r),) * len(part))


def zero(algebra: BooleanAlgebra) -> SpeckerElement:
    return constant(algebra, 0)


def unit(algebra: BooleanAlgebra) -> SpeckerElement:
    return constant(algebra, 1)


def indicator(b: Element) -> SpeckerElement:
    """The Boolean element of H(B) taking value 1 on ``b`` and 0 elsewhere."""
    algebra = b.algebra
    rest = algebra.full_mask & ~b.mask
    groups = {}
    if b.mask:
        groups[Fraction(1)] = b.mask
    if rest:
        groups[Fraction(0)] = rest
    return _from_groups(algebra, groups)


_BINARY: dict[str, Callable[[Fraction, Fraction], Fraction]] = {
    "add": lambda x, y: x + y,
    "meet": min,
    "join": max,
}


def specker_op(kind: str, v1: SpeckerElement, v2: SpeckerElement) -> SpeckerElement:
    """``v1 (+|meet|join) v2`` computed blockwise on the common refinement."""
    try:
        op = _BINARY[kind]
    except KeyError:
        raise ValueError(f"unknown operation {kind!r}") from None
    _check_same(v1.algebra, v2.algebra)
    # keyed by (numerator, denominator): hashing int pairs is much cheaper than Fractions
    masks: dict[tuple[int, int], int] = {}
    found: dict[tuple[int, int], Fraction] = {}
    items2 = list(v2.items())
    for m1, x1 in v1.items():
        for m2, x2 in items2:
            m = m1 & m2
            if m:
                x = op(x1, x2)
                key = (x.numerator, x.denominator)
                if key in masks:
                    masks[key] |= m
                else:
                    masks[key] = m
                    found[key] = x
    return _from_groups(v1.algebra, [(found[key], m) for key, m in masks.items()])


def scalar_mul(r: Scalar, v: SpeckerElement) -> SpeckerElement:
    r = Fraction(r)
    return canonicalize(v.partition, [r * x for x in v.values])


def abs_val(v: SpeckerElement) -> SpeckerElement:
    return canonicalize(v.partition, [abs(x) for x in v.values])


def abs_by_lattice(v: SpeckerElement) -> SpeckerElement:
    """``|v| = (v join 0) join -(v meet 0)`` through the lattice operations."""
    z = zero(v.algebra)
    return (v | z) | -(v & z)


def to_atom_valuation(v: SpeckerElement) -> AtomValuation:
    vals = [Fraction(0)] * v.algebra.atom_count
    for m, x in v.items():
        a = 0
        while m:
            if m & 1:
                vals[a] = x
            m >>= 1
            a += 1
    return AtomValuation(v.algebra, tuple(vals))


def from_atom_valuation(a: AtomValuation) -> SpeckerElement:
    groups: dict[Fraction, int] = {}
    for i, x in enumerate(a.value_at):
        groups[x] = groups.get(x, 0) | (1 << i)
    return _from_groups(a.algebra, groups)


def from_values(algebra: BooleanAlgebra, values: Sequence[Scalar]) -> SpeckerElement:
    """Shorthand for ``from_atom_valuation(AtomValuation(algebra, values))``."""
    return from_atom_valuation(AtomValuation(algebra, tuple(values)))


def is_boolean_element(v: SpeckerElement) -> bool:
    return all(x == 0 or x == 1 for x in v.values)


def is_boolean_by_definition(v: SpeckerElement) -> bool:
    """``0 <= v <= u`` and ``v meet (u - v) = 0``, via lattice operations only."""
    u = unit(v.algebra)
    z = zero(v.algebra)
    return z <= v and v <= u and (v & (u - v)) == z


def hyperarchimedean_witness(v: SpeckerElement) -> int:
    """Least ``n >= 1`` making ``n|v| meet u`` a Boolean element."""
    nonzero = [abs(x) for x in v.values if x != 0]
    if not nonzero:
        return 1
    return max(1, math.ceil(1 / min(nonzero)))


def booleanize(v: SpeckerElement, n: int | None = None) -> SpeckerElement:
    """``n|v| meet u``; with ``n`` omitted, the least witness is used."""
    if n is None:
        n = hyperarchimedean_witness(v)
    return (n * abs(v)) & unit(v.algebra)


# Candidate lengths above this are not searched: at five terms the search
# takes minutes.
MAX_SEARCH_TERMS = 4


def block_decomposition(v: SpeckerElement) -> list[tuple[Fraction, SpeckerElement]]:
    """``v = sum r_i chi_i`` over the blocks carrying nonzero values, by ascending ``r_i``."""
    terms = [(x, indicator(b)) for b, x in zip(v.partition, v.values) if x != 0]
    terms.sort(key=lambda t: t[0])
    return terms


def _add_equation(rows: list, row: list[Fraction], rhs: Fraction) -> list | None:
    """Extend a reduced system by one equation; None when inconsistent.

    ``rows`` holds ``(pivot, coefficients, rhs)`` with every pivot column
    cleared from the other rows.  A redundant equation leaves it unchanged.
    """
    row = list(row)
    for piv, coeffs, b in rows:
        f = row[piv]
        if f:
            row = [x - f * y for x, y in zip(row, coeffs)]
            rhs -= f * b
    piv = next((j for j, x in enumerate(row) if x), None)
    if piv is None:
        return rows if rhs == 0 else None
    f = row[piv]
    row = [x / f for x in row]
    rhs /= f
    out = []
    for p, coeffs, b in rows:
        g = coeffs[piv]
        if g:
            coeffs = [x - g * y for x, y in zip(coeffs, row)]
            b -= g * rhs
        out.append((p, coeffs, b))
    out.append((piv, row, rhs))
    return out


def _cover_by_sums(targets: list[Fraction], m: int) -> tuple[list[Fraction], list[int]] | None:
    """Coefficients ``c`` (length ``m``) with every target a subset sum of ``c``.

    Backtracking over the subset chosen for each target, pruned by
    consistency of the linear system.  Coefficient indices are introduced in
    order, which removes the symmetry of permuting them.  Returns ``c`` and
    the subset mask per target.
    """
    masks = [0] * len(targets)

    def search(i: int, used: int, rows: list) -> list[Fraction] | None:
        if len(targets) - i < m - len(rows):
            return None
        if len(rows) == m:
            c = [Fraction(0)] * m
            for piv, _, b in rows:
                c[piv] = b
            sums = {}
            for mask in range(1, 1 << m):
                sums.setdefault(sum(c[j] for j in range(m) if mask >> j & 1), mask)
            for k in range(i, len(targets)):
                if targets[k] not in sums:
                    return None
                masks[k] = sums[targets[k]]
            return c
        for mask in range(1, 1 << m):
            fresh = mask >> used
            if fresh & (fresh + 1):
                continue  # new indices must extend the used prefix contiguously
            new_used = max(used, mask.bit_length())
            if new_used > m:
                continue
            row = [Fraction(mask >> j & 1) for j in range(m)]
            nxt = _add_equation(rows, row, targets[i])
            if nxt is None:
                continue
            masks[i] = mask
            found = search(i + 1, new_used, nxt)
            if found is not None:
                return found
        return None

    c = search(0, 0, [])
    return None if c is None else (c, masks)


def minimal_decomposition(v: SpeckerElement) -> list[tuple[Fraction, SpeckerElement]]:
    """``v = sum r_i chi_i`` with the fewest Boolean summands, by ascending ``r_i``.

    The indicators may overlap: ``[1, 2, 3]`` is ``chi{0,2} + 2 chi{1,2}``,
    two terms for three distinct values.  When the block decomposition is
    already as short as possible it is the one returned.  The search is
    exponential in the candidate length, so when no decomposition of at most
    ``MAX_SEARCH_TERMS`` terms exists and the block decomposition is longer
    than ``MAX_SEARCH_TERMS + 1``, :class:`CapacityError` is raised.
    """
    blocks = block_decomposition(v)
    targets = sorted((x for x, _ in blocks), key=lambda x: (abs(x), x))
    d = len(targets)
    for m in range(max(1, d.bit_length()), d):
        if m > MAX_SEARCH_TERMS:
            raise CapacityError(
                f"no decomposition with at most {MAX_SEARCH_TERMS} terms and {d} distinct values;"
                " longer candidates are not searched"
            )
        found = _cover_by_sums(targets, m)
        if found is None:
            continue
        c, masks = found
        by_value = dict(zip(targets, masks))
        terms = []
        for j in range(m):
            atoms = [a for b, x in zip(v.partition, v.values) if x != 0 and by_value[x] >> j & 1 for a in b.sorted_atoms()]
            terms.append((c[j], indicator(v.algebra.element(atoms))))
        terms.sort(key=lambda t: (t[0], t[1].partition.masks))
        return terms
    return blocks


def linear_combination(algebra: BooleanAlgebra, terms: Iterable[tuple[Scalar, SpeckerElement]]) -> SpeckerElement:
    total = zero(algebra)
    for r, chi in terms:
        total = total + scalar_mul(r, chi)
    return total


def strong_unit_witness(v: SpeckerElement) -> int:
    """An integer ``n`` with ``|v| <= n u``: the ceiling of the largest ``|value|``."""
    return max((math.ceil(abs(x)) for x in v.values), default=0)
