"""Maximal spectra of Specker lattices over finite algebras.

Over a finite base every prime ideal is maximal and the maximal ideals are
named by atoms: the ideal at atom ``a`` is the kernel of evaluation at
``a``.  The hull-kernel topology on such a spectrum is discrete, so it is
not materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .boolean import generated_subalgebra
from .errors import AlgebraMismatchError
from .functors import SpeckerLattice, SpeckerMorphism, functor_B_obj
from .specker import (
    SpeckerElement,
    booleanize,
    hyperarchimedean_witness,
    indicator,
    is_boolean_element,
    to_atom_valuation,
)


@dataclass(frozen=True, slots=True)
class MaxIdeal:
    lattice: SpeckerLattice
    atom: int

    def __contains__(self, v: SpeckerElement) -> bool:
        return yosida_eval(v, self) == 0

    def to_json(self) -> dict:
        return {"atom": self.atom}


def max_spectrum(V: SpeckerLattice) -> list[MaxIdeal]:
    return [MaxIdeal(V, a) for a in range(V.base.atom_count)]


def yosida_eval(v: SpeckerElement, m: MaxIdeal) -> Fraction:
    if v.algebra != m.lattice.base:
        raise AlgebraMismatchError("element and ideal live in different lattices")
    return v.value_at(m.atom)


def dual_map(g: SpeckerMorphism) -> Callable[[MaxIdeal], MaxIdeal]:
    """``m -> g^{-1}(m)``, as a map Max(target) -> Max(source)."""
    pm = g.underlying.point_map

    def pullback(m: MaxIdeal) -> MaxIdeal:
        if m.lattice != g.target:
            raise AlgebraMismatchError("ideal is not in the morphism's target")
        return MaxIdeal(g.source, pm[m.atom])

    return pullback


def preimage_ideal(g: SpeckerMorphism, m: MaxIdeal, universe: Iterable[SpeckerElement]) -> list[SpeckerElement]:
    """Members of ``universe`` that ``g`` sends into ``m``."""
    return [v for v in universe if g(v) in m]


def separates_points(V: SpeckerLattice, S: Iterable[SpeckerElement]) -> bool:
    """Whether every pair of distinct atoms is told apart by some ``s`` in ``S``."""
    vals = [to_atom_valuation(s).value_at for s in S]
    if any(len(v) != V.base.atom_count for v in vals):
        raise AlgebraMismatchError("element outside the lattice")
    k = V.base.atom_count
    return all(
        any(v[a] != v[b] for v in vals) for a in range(k) for b in range(a + 1, k)
    )


def booleanizations(s: SpeckerElement) -> list[SpeckerElement]:
    """Boolean elements ``n|s - r u| meet u`` for every value ``r`` of ``s``.

    Shifting by ``r`` makes ``s`` vanish on the level set where it equals
    ``r``, and ``n`` ranges up to the hyperarchimedean witness of the shifted
    element, the last of which is the indicator of the complement of that
    level set.
    """
    u = indicator(s.algebra.top)
    out = []
    for r in s.values:
        shifted = s - r * u
        for n in range(1, hyperarchimedean_witness(shifted) + 1):
            b = booleanize(shifted, n)
            if is_boolean_element(b) and b not in out:
                out.append(b)
    return out


def booleanized_subalgebra_is_full(V: SpeckerLattice, S: Iterable[SpeckerElement]) -> bool:
    """Whether the Boolean elements extracted from ``S`` generate all of B(V)."""
    bv = functor_B_obj(V)
    gens = [bv.from_lattice(b) for s in S for b in booleanizations(s)]
    part, _ = generated_subalgebra(V.base, gens)
    return len(part) == V.base.atom_count


def atom_indicator_from(V: SpeckerLattice, booleans: Sequence[SpeckerElement], atom: int) -> SpeckerElement:
    """The meet of each Boolean or its complement, whichever is 1 at ``atom``.

    This is a lattice-linear combination of ``booleans`` and ``u``; it is the
    indicator of ``atom`` exactly when the booleans separate ``atom`` from
    every other atom.
    """
    u = V.unit
    acc = u
    for b in booleans:
        acc = acc & (b if b.value_at(atom) == 1 else u - b)
    return acc


def indicators_reachable(V: SpeckerLattice, S: Iterable[SpeckerElement]) -> bool:
    booleans = [b for s in S for b in booleanizations(s)]
    return all(
        atom_indicator_from(V, booleans, a) == indicator(V.base.atom(a))
        for a in range(V.base.atom_count)
    )
