import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from uhalat.boolean import all_homs, make_algebra
from uhalat.errors import CapacityError, PreconditionError
from uhalat.free import (
    MAX_SUPPORT,
    FreeElement,
    _free_base,
    boolean_index,
    cantor_checks,
    cylinder_hom,
    free_element_op,
    free_generator,
    free_uha,
    free_unit,
    free_zero,
    polar_generator,
    split_boolean,
    universal_extension,
)
from uhalat.functors import SpeckerLattice, functor_H_mor
from uhalat.specker import from_values, to_atom_valuation

F = Fraction


def vals(v):
    return list(to_atom_valuation(v).value_at)


# free_uha


def test_free_uha_examples():
    F0 = free_uha(0)
    assert F0.lattice.base.atom_count == 1 and F0.generators == ()
    assert all(len(v.values) == 1 for v in F0.lattice.grid((F(0), F(2))))
    F1 = free_uha(1)
    assert F1.lattice.base.atom_count == 2
    assert vals(F1.generator(0)) == [0, 1]
    assert free_uha(2).dimension == 4


@pytest.mark.parametrize("n", range(5))
def test_free_dimension(n):
    assert free_uha(n).dimension == 2 ** n


def test_free_capacity():
    with pytest.raises(CapacityError):
        free_uha(5)
    assert free_uha(5, capacity=32).dimension == 32


# universal property


def test_universal_extension_examples():
    F1 = free_uha(1)
    ext = universal_extension(F1, F1.lattice, F1.generators)
    for v in F1.lattice.grid((F(-1), F(1, 2), F(3))):
        assert ext(v) == v

    W = SpeckerLattice(make_algebra(1))
    v = from_values(F1.lattice.base, [F(5), F(-2)])
    top = universal_extension(F1, W, [W.unit])
    assert vals(top(v)) == [-2]
    bottom = universal_extension(F1, W, [W.zero])
    assert vals(bottom(v)) == [5]


def test_universal_extension_preconditions():
    F1 = free_uha(1)
    W = SpeckerLattice(make_algebra(2))
    with pytest.raises(PreconditionError):
        universal_extension(F1, W, [])
    with pytest.raises(PreconditionError):
        universal_extension(F1, W, [F(1, 2) * W.unit])


@pytest.mark.parametrize("n, k", [(n, k) for n in range(3) for k in range(4)])
def test_universal_property(n, k):
    Fn = free_uha(n)
    W = SpeckerLattice(make_algebra(k))
    sample = list(Fn.lattice.grid((F(-1), F(2)))) if n < 2 else [Fn.lattice.random_element(random.Random(s)) for s in range(8)]
    for f in itertools.product(W.boolean_elements(), repeat=n):
        ext = universal_extension(Fn, W, f)
        assert [ext(g) for g in Fn.generators] == list(f)
        matching = [h for h in all_homs(Fn.lattice.base, W.base)
                    if [functor_H_mor(h)(g) for g in Fn.generators] == list(f)]
        assert [h for h in matching] == [ext.underlying]
        for x in sample:
            assert all(functor_H_mor(h)(x) == ext(x) for h in matching)


# lazily represented elements


def test_free_element_op_examples():
    x = free_generator(0)
    assert x + free_zero() == x
    meet = free_generator(0) & free_generator(1)
    assert meet.support == (0, 1)
    assert vals(meet.body) == [0, 0, 0, 1]
    complement = free_generator(0) | (free_unit() - free_generator(0))
    assert complement == free_unit() and complement.support == ()


def test_free_element_arithmetic():
    g0, g3 = free_generator(0), free_generator(3)
    x = F(1, 2) * g0 - 2 * g3
    assert x.support == (0, 3)
    assert vals(x.body) == [0, F(1, 2), -2, F(-3, 2)]
    assert vals(abs(x).body) == [0, F(1, 2), 2, F(3, 2)]
    assert (x - x).is_zero()
    assert free_element_op("scalar", g0, 3) == 3 * g0
    assert g0 <= free_unit() and not (free_unit() <= g0)


def test_free_element_op_errors():
    with pytest.raises(TypeError):
        free_element_op("scalar", free_unit(), free_unit())
    with pytest.raises(TypeError):
        free_element_op("add", free_unit(), 2)
    wide = FreeElement(tuple(range(MAX_SUPPORT)), from_values(_free_base(MAX_SUPPORT), range(1 << MAX_SUPPORT)))
    with pytest.raises(PreconditionError):
        wide + free_generator(MAX_SUPPORT)


def test_free_element_validation():
    with pytest.raises(ValueError):
        FreeElement((1, 0), from_values(_free_base(2), [0, 1, 2, 3]))
    with pytest.raises(ValueError):
        FreeElement((0,), from_values(_free_base(2), [0, 1, 2, 3]))


def _brute_minimal_support(support, values):
    keep = []
    for j in range(len(support)):
        if any(values[a] != values[a ^ (1 << j)] for a in range(len(values))):
            keep.append(support[j])
    return tuple(keep)


@given(st.integers(0, 4).flatmap(lambda s: st.tuples(
    st.lists(st.integers(0, 9), min_size=s, max_size=s, unique=True).map(sorted).map(tuple),
    st.lists(st.sampled_from([F(0), F(1), F(-1, 2)]), min_size=1 << s, max_size=1 << s),
)))
def test_support_is_minimized(case):
    support, values = case
    x = FreeElement(support, from_values(_free_base(len(support)), values))
    assert x.support == _brute_minimal_support(support, values)
    # the minimized body embeds back to the original one
    assert x.embed(support) == from_values(_free_base(len(support)), values)


def test_cylinder_embeddings_compose():
    for small, mid, big in [((0,), (0, 2), (0, 1, 2)), ((), (3,), (1, 3, 5)), ((1, 4), (1, 2, 4), (0, 1, 2, 3, 4))]:
        direct = cylinder_hom(small, big)
        via = cylinder_hom(small, mid).then(cylinder_hom(mid, big))
        assert direct == via


@given(st.lists(st.tuples(st.integers(0, 5), st.sampled_from([F(1), F(-2), F(1, 3)])), min_size=1, max_size=4))
def test_operations_agree_with_a_fixed_free_object(terms):
    # evaluate the same linear combination lazily and inside free_uha(6)
    F6 = free_uha(6, capacity=64)
    lazy, eager = free_zero(), F6.zero
    for i, r in terms:
        lazy = lazy + r * free_generator(i)
        eager = eager + r * F6.generator(i)
    lazy = lazy & free_unit() | -(lazy & free_zero())
    eager = eager & F6.unit | -(eager & F6.zero)
    assert lazy.embed(tuple(range(6))) == eager


# conditions characterizing the countable free object


def test_cantor_examples():
    report = cantor_checks(free_unit())
    assert report.unit_nonzero
    c = report.split
    assert c == free_generator(0)
    assert not c.is_zero() and c != free_unit() and c <= free_unit()

    report = cantor_checks(free_generator(0))
    assert report.split == free_generator(0) & free_generator(1)

    assert cantor_checks(free_zero()).polar_generator == free_unit()
    assert cantor_checks(free_zero()).split is None


def test_split_requires_nonzero_boolean():
    with pytest.raises(PreconditionError):
        split_boolean(free_zero())
    with pytest.raises(PreconditionError):
        split_boolean(2 * free_generator(0))


def test_splits_are_strict_randomized():
    rng = random.Random(11)
    done = 0
    while done < 100:
        size = rng.randint(0, 4)
        support = tuple(sorted(rng.sample(range(8), size)))
        body = from_values(_free_base(size), [rng.randint(0, 1) for _ in range(1 << size)])
        b = FreeElement(support, body)
        if b.is_zero():
            continue
        c = split_boolean(b)
        assert c.is_boolean() and not c.is_zero() and c != b and c <= b
        done += 1


def test_polar_generator_and_index():
    x = free_generator(0) - free_generator(2)
    g = polar_generator(x)
    assert vals(g.body) == [1, 0, 0, 1]
    seen = {}
    for size in range(3):
        for support in itertools.combinations(range(3), size):
            for ones in range(1 << (1 << size)):
                body = from_values(_free_base(size), [ones >> a & 1 for a in range(1 << size)])
                b = FreeElement(support, body)
                seen.setdefault(boolean_index(b), b)
                assert seen[boolean_index(b)] == b
    with pytest.raises(PreconditionError):
        boolean_index(2 * free_unit())


def test_cantor_report_json():
    data = cantor_checks(free_generator(1) - free_generator(0)).to_json()
    assert data["unit_nonzero"] is True
    assert FreeElement.from_json(data["boolean_part"]) == (free_generator(0) | free_generator(1)) - (free_generator(0) & free_generator(1))
