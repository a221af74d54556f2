"""Named property suites, run by ``uhalat check``.

Each suite returns a :class:`SuiteResult`.  Oracles here work on plain lists
of atom values and never call the blockwise operations they check.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .boolean import all_homs, make_algebra
from .free import (
    FreeElement,
    _free_base,
    cantor_checks,
    free_uha,
    universal_extension,
)
from .functors import (
    SpeckerLattice,
    eta,
    epsilon,
    eta_square_commutes,
    epsilon_square_commutes,
    functor_B_mor,
    functor_H_mor,
    random_hom,
)
from .spectra import booleanized_subalgebra_is_full, dual_map, max_spectrum, separates_points
from .specker import (
    abs_val,
    booleanize,
    from_values,
    hyperarchimedean_witness,
    is_boolean_by_definition,
    is_boolean_element,
    linear_combination,
    minimal_decomposition,
    scalar_mul,
    specker_op,
    to_atom_valuation,
)
from .structure import direct_factor_decomposition, in_polar_by_definition, principal_polar

GRID = tuple(Fraction(x) for x in ("-2", "-1", "0", "1/2", "1", "2"))


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _vals(v):
    return list(to_atom_valuation(v).value_at)


def oracle(seed: int, cases: int) -> tuple[bool, str]:
    count = 0
    for k in range(4):
        algebra = make_algebra(k)
        elems = [from_values(algebra, vs) for vs in itertools.product(GRID, repeat=k)]
        for x in elems:
            vx = _vals(x)
            if _vals(abs_val(x)) != [abs(a) for a in vx]:
                return False, f"abs disagrees at {x!r}"
            if _vals(scalar_mul(Fraction(-1, 2), x)) != [Fraction(-1, 2) * a for a in vx]:
                return False, f"scalar disagrees at {x!r}"
            for y in elems:
                vy = _vals(y)
                if (
                    _vals(specker_op("add", x, y)) != [a + b for a, b in zip(vx, vy)]
                    or _vals(specker_op("meet", x, y)) != [min(a, b) for a, b in zip(vx, vy)]
                    or _vals(specker_op("join", x, y)) != [max(a, b) for a, b in zip(vx, vy)]
                ):
                    return False, f"binary op disagrees at {x!r}, {y!r}"
                count += 1
    return True, f"{count} pairs agree with the pointwise oracle"


def equivalence(seed: int, cases: int) -> tuple[bool, str]:
    homs = [f for k1 in range(4) for k2 in range(4) for f in all_homs(make_algebra(k1), make_algebra(k2))]
    rng = random.Random(seed)
    homs += [random_hom(rng, 6) for _ in range(cases)]
    for f in homs:
        if functor_B_mor(functor_H_mor(f)) != f:
            return False, f"B(H(f)) != f for {f.point_map}"
        if not eta_square_commutes(f) or not epsilon_square_commutes(functor_H_mor(f), cases=20, seed=seed):
            return False, f"naturality fails for {f.point_map}"
    for k in range(4):
        B = make_algebra(k)
        e = eta(B)
        images = {e(v) for v in SpeckerLattice(B).boolean_elements()}
        if len(images) != len(B):
            return False, f"eta not bijective at {k} atoms"
        eps = epsilon(SpeckerLattice(B))
        for w in SpeckerLattice(B).grid(GRID[:4]):
            if eps.inverse(eps(w)) != w:
                return False, f"epsilon not invertible at {w!r}"
    return True, f"{len(homs)} homomorphisms: functor round trip, eta, epsilon, naturality"


def boolean(seed: int, cases: int) -> tuple[bool, str]:
    n = 0
    for k in range(4):
        for v in SpeckerLattice(make_algebra(k)).grid(GRID):
            if is_boolean_element(v) != is_boolean_by_definition(v):
                return False, f"Boolean tests disagree at {v!r}"
            n += 1
    return True, f"{n} elements"


def _least_length(values: list[Fraction]) -> int:
    """Fewest scaled indicators summing to ``values``, by exhaustive search."""
    k = len(values)
    subsets = [[Fraction(a >> i & 1) for i in range(k)] for a in range(1, 1 << k)]
    for length in range(k + 1):
        for cols in itertools.combinations(subsets, length):
            if _solvable(cols, values):
                return length
    raise AssertionError("the atom indicators always suffice")


def _solvable(cols, target) -> bool:
    rows = [[c[i] for c in cols] + [target[i]] for i in range(len(target))]
    r = 0
    for j in range(len(cols)):
        piv = next((i for i in range(r, len(rows)) if rows[i][j]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][j]:
                f = rows[i][j] / rows[r][j]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return all(row[-1] == 0 for row in rows[r:])


def decomposition(seed: int, cases: int) -> tuple[bool, str]:
    n = 0
    for k in range(4):
        algebra = make_algebra(k)
        for vs in itertools.product(GRID, repeat=k):
            v = from_values(algebra, vs)
            terms = minimal_decomposition(v)
            if linear_combination(algebra, terms) != v:
                return False, f"reconstruction fails at {v!r}"
            if len(terms) != _least_length(list(vs)):
                return False, f"term count not least at {v!r}"
            n += 1
    return True, f"{n} elements reconstruct with the least number of terms"


def witness(seed: int, cases: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    for _ in range(cases):
        k = rng.randint(0, 8)
        v = SpeckerLattice(make_algebra(k)).random_element(rng)
        n = hyperarchimedean_witness(v)
        least = next(m for m in itertools.count(1) if is_boolean_element(booleanize(v, m)))
        if n != least:
            return False, f"witness {n} != least {least} for {v!r}"
    return True, f"{cases} random elements"


def factors(seed: int, cases: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    for _ in range(cases):
        k = rng.randint(1, 6)
        V = SpeckerLattice(make_algebra(k))
        mask = rng.randrange(1 << k)
        u1 = from_values(V.base, [mask >> a & 1 for a in range(k)])
        iso = direct_factor_decomposition(V, u1, V.unit - u1)
        v = V.random_element(rng)
        v1, v2 = iso.split(v)
        if v1 + v2 != v or not (abs(v1) & abs(v2)).is_zero() or iso.inverse(iso(v)) != v:
            return False, f"split fails at {v!r}"
    for k in range(4):
        V = SpeckerLattice(make_algebra(k))
        polars = {principal_polar(b).generator for b in V.boolean_elements()}
        if len(polars) != len(V.base):
            return False, "polar correspondence not injective"
        for v in V.grid(GRID[1:5]):
            P = principal_polar(v)
            if any((w in P) != in_polar_by_definition(v, w) for w in V.grid(GRID[1:5])):
                return False, f"polar membership wrong for {v!r}"
    return True, f"{cases} random splits, polar correspondence at <= 3 atoms"


def spectral(seed: int, cases: int) -> tuple[bool, str]:
    n = 0
    for k1 in range(4):
        for k2 in range(4):
            for f in all_homs(make_algebra(k1), make_algebra(k2)):
                g = functor_H_mor(f)
                d = dual_map(g)
                image = {d(m).atom for m in max_spectrum(g.target)}
                dual_onto = len(image) == k1
                dual_one_one = len(image) == k2
                grid = list(g.source.grid((0, 1)))
                g_injective = len({g(v) for v in grid}) == len(grid)
                hit = {g(v) for v in grid}
                g_onto = all(b in hit for b in g.target.boolean_elements())
                if dual_onto != g_injective or (g_onto and not dual_one_one):
                    return False, f"spectral map law fails for {f.point_map}"
                n += 1
    return True, f"{n} point maps"


def separation(seed: int, cases: int) -> tuple[bool, str]:
    grid = (Fraction(0), Fraction(1), Fraction(2))
    n = 0
    for k in range(4):
        V = SpeckerLattice(make_algebra(k))
        elems = list(V.grid(grid))
        for size in range(4):
            for S in itertools.combinations(elems, size):
                if separates_points(V, S) != booleanized_subalgebra_is_full(V, S):
                    return False, f"separation criterion fails for {S!r}"
                n += 1
    return True, f"{n} families"


def universal(seed: int, cases: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    n_checked = 0
    for n in range(3):
        F = free_uha(n)
        for k in range(4):
            W = SpeckerLattice(make_algebra(k))
            bools = W.boolean_elements()
            for f in itertools.product(bools, repeat=n):
                ext = universal_extension(F, W, f)
                if [ext(g) for g in F.generators] != list(f):
                    return False, "triangle identity fails"
                sample = [F.lattice.random_element(rng) for _ in range(5)]
                for h in all_homs(F.lattice.base, W.base):
                    gh = functor_H_mor(h)
                    if [gh(g) for g in F.generators] == list(f):
                        if any(gh(x) != ext(x) for x in sample):
                            return False, "uniqueness fails"
                n_checked += 1
    return True, f"{n_checked} assignments"


def dimension(seed: int, cases: int) -> tuple[bool, str]:
    dims = {n: free_uha(n).dimension for n in range(5)}
    ok = all(d == 2**n for n, d in dims.items())
    return ok, "dimensions " + ", ".join(f"n={n}: {d}" for n, d in dims.items())


def atomless(seed: int, cases: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    done = 0
    while done < cases:
        size = rng.randint(0, 4)
        support = tuple(sorted(rng.sample(range(8), size)))
        base = _free_base(size)
        b = FreeElement(support, from_values(base, [rng.randint(0, 1) for _ in range(base.atom_count)]))
        if b.is_zero():
            continue
        c = cantor_checks(b).split
        if c is None or c.is_zero() or c == b or (c & b) != c or not c.is_boolean():
            return False, f"split fails for {b!r}"
        done += 1
    return True, f"{cases} Boolean elements split strictly"


SUITES: dict[str, Callable[[int, int], tuple[bool, str]]] = {
    "oracle": oracle,
    "equivalence": equivalence,
    "boolean": boolean,
    "decomposition": decomposition,
    "witness": witness,
    "factors": factors,
    "spectral": spectral,
    "separation": separation,
    "universal": universal,
    "dimension": dimension,
    "atomless": atomless,
}


def run_suite(name: str, seed: int = 0, cases: int = 200) -> SuiteResult:
    start = time.perf_counter()
    passed, detail = SUITES[name](seed, cases)
    return SuiteResult(name, passed, detail, time.perf_counter() - start)
