import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import algebras, elements, homs, partitions
from uhalat.boolean import (
    BoolHom,
    Element,
    Partition,
    all_homs,
    apply_hom,
    boolean_op,
    common_refinement,
    free_boolean_algebra,
    generated_subalgebra,
    image_partition,
    is_partition,
    make_algebra,
    refines,
)
from uhalat.errors import AlgebraMismatchError, CapacityError, PartitionError


B3 = make_algebra(3)


def el(*atoms, algebra=B3):
    return algebra.element(atoms)


def part(*blocks, algebra=B3):
    return Partition.from_lists(algebra, blocks)


# make_algebra


@pytest.mark.parametrize("k, size", [(0, 1), (1, 2), (3, 8)])
def test_algebra_sizes(k, size):
    B = make_algebra(k)
    assert len(B) == size
    assert len(list(B.elements())) == size


def test_three_atoms_are_singletons():
    assert [a.sorted_atoms() for a in B3.atoms()] == [[0], [1], [2]]


def test_one_atom_algebra_is_two_element():
    B = make_algebra(1)
    assert B.bottom != B.top
    assert set(B.elements()) == {B.bottom, B.top}


def test_capacity_is_enforced():
    with pytest.raises(CapacityError):
        make_algebra(25)
    assert make_algebra(30, capacity=30).atom_count == 30


def test_negative_atom_count_rejected():
    with pytest.raises(ValueError):
        make_algebra(-1)


# boolean_op


def test_boolean_op_examples():
    assert boolean_op("meet", el(0, 1), el(1, 2)) == el(1)
    assert boolean_op("complement", el(0, 1)) == el(2)
    for x in B3.elements():
        assert boolean_op("join", B3.bottom, x) == x


def test_boolean_op_rejects_mixed_algebras():
    with pytest.raises(AlgebraMismatchError):
        boolean_op("meet", el(0), make_algebra(2).top)


def test_boolean_op_arity():
    with pytest.raises(TypeError):
        boolean_op("meet", el(0))
    with pytest.raises(TypeError):
        boolean_op("complement", el(0), el(1))


@given(algebras(max_atoms=6).flatmap(lambda B: st.tuples(elements(B), elements(B), elements(B))))
def test_boolean_algebra_laws(xyz):
    x, y, z = xyz
    assert x & (y | z) == (x & y) | (x & z)
    assert ~(x & y) == ~x | ~y
    assert x | ~x == x.algebra.top
    assert x & ~x == x.algebra.bottom
    assert ~~x == x
    assert (x <= y) == ((x & y) == x)


# partitions


def test_is_partition_examples():
    assert is_partition(B3, [el(0), el(1, 2)])
    assert is_partition(B3, [B3.top])
    assert not is_partition(B3, [el(0), el(0, 1)])
    assert not is_partition(B3, [el(0), el(1)])
    assert not is_partition(B3, [B3.bottom, B3.top])


def test_partition_constructor_validates():
    with pytest.raises(PartitionError):
        part([0], [0, 1])
    with pytest.raises(PartitionError):
        part([0])


def test_common_refinement_examples():
    P = part([0], [1, 2])
    assert common_refinement(P, part([0, 1], [2])) == B3.atoms_partition()
    assert common_refinement(P, B3.unit_partition()) == P
    assert common_refinement(P, P) == P


def test_refines_examples():
    P = part([0], [1, 2])
    assert refines(B3.atoms_partition(), P)
    assert refines(P, B3.unit_partition())
    assert not refines(part([0, 1], [2]), P)


def _pairwise_meets(p1, p2):
    return {a & b for a in p1 for b in p2 if not (a & b).is_bottom()}


@given(algebras(max_atoms=6).flatmap(lambda B: st.tuples(partitions(B), partitions(B), partitions(B))))
def test_refinement_is_the_meet(ps):
    p1, p2, p3 = ps
    r = common_refinement(p1, p2)
    assert set(r) == _pairwise_meets(p1, p2)
    assert refines(r, p1) and refines(r, p2)
    # greatest lower bound: anything refining both refines the meet
    if refines(p3, p1) and refines(p3, p2):
        assert refines(p3, r)
    assert common_refinement(r, p3) == common_refinement(p1, common_refinement(p2, p3))
    assert common_refinement(p1, p2) == common_refinement(p2, p1)


@given(algebras(max_atoms=6).flatmap(partitions))
def test_partitions_are_partitions(p):
    assert is_partition(p.algebra, p)
    assert all(p.blocks[p.block_of(a)].mask >> a & 1 for a in range(p.algebra.atom_count))


# homomorphisms


def test_apply_hom_identity():
    f = BoolHom.identity(B3)
    P = part([0], [1, 2])
    assert image_partition(f, P) == P
    assert all(f(x) == x for x in B3.elements())


def test_constant_point_map_collapses_partition():
    f = BoolHom(B3, make_algebra(1), (2,))
    assert image_partition(f, part([0], [1, 2])) == make_algebra(1).unit_partition()


def test_image_partition_drops_bottom():
    f = BoolHom(B3, make_algebra(2), (0, 2))
    assert image_partition(f, B3.atoms_partition()) == make_algebra(2).atoms_partition()
    assert apply_hom(f, el(1)) == make_algebra(2).bottom


@pytest.mark.parametrize("k1, k2", [(a, b) for a in range(1, 5) for b in range(5)])
def test_every_point_map_is_a_homomorphism(k1, k2):
    A, B = make_algebra(k1), make_algebra(k2)
    elems = list(A.elements())
    for f in all_homs(A, B):
        assert f(A.top) == B.top and f(A.bottom) == B.bottom
        for x in elems:
            assert f(~x) == ~f(x)
            for y in elems:
                assert f(x & y) == f(x) & f(y)
                assert f(x | y) == f(x) | f(y)


def test_number_of_homs():
    assert len(list(all_homs(make_algebra(3), make_algebra(2)))) == 9
    assert len(list(all_homs(make_algebra(0), make_algebra(0)))) == 1
    assert list(all_homs(make_algebra(0), make_algebra(1))) == []


@given(homs(max_atoms=5).flatmap(lambda f: st.tuples(st.just(f), partitions(f.source))))
def test_image_partition_is_a_partition(fp):
    f, P = fp
    Q = image_partition(f, P)
    assert is_partition(f.target, Q)
    assert set(Q) == {f(b) for b in P} - {f.target.bottom}


@given(homs(max_atoms=4).flatmap(lambda f: st.tuples(st.just(f), homs(source=f.target, max_atoms=4))))
def test_composition(fg):
    f, g = fg
    h = f.then(g)
    for x in f.source.elements():
        assert h(x) == g(f(x))


def test_hom_validation():
    with pytest.raises(ValueError):
        BoolHom(B3, make_algebra(2), (0,))
    with pytest.raises(ValueError):
        BoolHom(B3, make_algebra(1), (3,))


def test_injective_and_surjective():
    onto_atoms = BoolHom(make_algebra(2), B3, (0, 1, 1))
    assert onto_atoms.is_injective() and not onto_atoms.is_surjective()
    one_one = BoolHom(B3, make_algebra(2), (0, 2))
    assert one_one.is_surjective() and not one_one.is_injective()


def test_injectivity_matches_element_map():
    for k1, k2 in itertools.product(range(1, 4), repeat=2):
        A, B = make_algebra(k1), make_algebra(k2)
        for f in all_homs(A, B):
            images = [f(x) for x in A.elements()]
            assert f.is_injective() == (len(set(images)) == len(A))
            assert f.is_surjective() == (set(images) == set(B.elements()))


# free algebras


def test_free_algebra_examples():
    B, gens = free_boolean_algebra(0)
    assert B.atom_count == 1 and gens == []
    B, gens = free_boolean_algebra(1)
    assert B.atom_count == 2 and gens == [B.element([1])]
    B, (g0, g1) = free_boolean_algebra(2)
    assert B.atom_count == 4
    assert g0 & g1 == B.atom(3)


def test_free_algebra_generators_are_independent():
    B, gens = free_boolean_algebra(3)
    for signs in itertools.product([False, True], repeat=3):
        meet = B.top
        for g, s in zip(gens, signs):
            meet = meet & (g if s else ~g)
        assert len(meet.atoms) == 1


def test_free_algebra_capacity():
    with pytest.raises(CapacityError):
        free_boolean_algebra(5)


# generated subalgebras


def test_generated_subalgebra_examples():
    _, elems = generated_subalgebra(B3, [])
    assert set(elems) == {B3.bottom, B3.top}
    _, elems = generated_subalgebra(B3, B3.atoms())
    assert set(elems) == set(B3.elements())
    _, elems = generated_subalgebra(B3, [el(0)])
    assert set(elems) == {B3.bottom, el(0), el(1, 2), B3.top}


def _closure(algebra, gens):
    out = {algebra.bottom, algebra.top, *gens}
    while True:
        new = {~x for x in out} | {x & y for x in out for y in out} | {x | y for x in out for y in out}
        if new <= out:
            return out
        out |= new


@given(algebras(max_atoms=4).flatmap(lambda B: st.lists(elements(B), max_size=3)))
def test_generated_subalgebra_matches_closure(gens):
    algebra = gens[0].algebra if gens else B3
    part_, elems = generated_subalgebra(algebra, gens)
    assert set(elems) == _closure(algebra, gens)
    assert len(elems) == 2 ** len(part_)


def test_element_validation():
    with pytest.raises(ValueError):
        Element(B3, 8)
