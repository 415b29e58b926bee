"""Concrete binary relations, algebra invariants, structure extraction."""

import random

import pytest

from relalg import (ConcreteAlgebra, ConcreteRelation, build_group,
                    extract_atom_structure, rel_algebra, relation_complement,
                    relation_compose, relation_converse, validate_structure)

from conftest import (load_concrete, relation_compose_oracle,
                      relation_converse_oracle)


def random_relation(rng, n):
    pairs = [(i, j) for i in range(n) for j in range(n) if rng.random() < 0.4]
    return ConcreteRelation.from_pairs(n, pairs)


def test_constructors_and_views():
    r = ConcreteRelation.from_pairs(3, [(0, 1), (2, 2), (0, 1)])
    assert r.pairs() == ((0, 1), (2, 2))
    assert r.n_pairs == 2
    assert r.contains(0, 1) and not r.contains(1, 0)
    assert ConcreteRelation.empty(2).is_empty
    assert ConcreteRelation.identity(3).pairs() == ((0, 0), (1, 1), (2, 2))
    assert ConcreteRelation.universal(2).n_pairs == 4


def test_out_of_range_pairs_rejected():
    with pytest.raises(ValueError):
        ConcreteRelation.from_pairs(2, [(0, 2)])
    with pytest.raises(ValueError):
        ConcreteRelation.from_pairs(2, [(-1, 0)])


def test_compose_and_converse_match_oracle():
    rng = random.Random(7)
    for n in (1, 2, 3, 5):
        for _ in range(40):
            r, t = random_relation(rng, n), random_relation(rng, n)
            assert relation_compose(r, t) == relation_compose_oracle(r, t)
            assert relation_converse(r) == relation_converse_oracle(r)


def test_complement_and_lattice_ops():
    r = ConcreteRelation.from_pairs(2, [(0, 0), (1, 0)])
    c = relation_complement(r)
    assert (r | c) == ConcreteRelation.universal(2)
    assert (r & c).is_empty
    assert r <= ConcreteRelation.universal(2)
    assert r.intersects(ConcreteRelation.from_pairs(2, [(1, 0)]))


def test_composition_associative_on_random_relations():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(1, 5)
        a, b, c = (random_relation(rng, n) for _ in range(3))
        assert relation_compose(relation_compose(a, b), c) == \
            relation_compose(a, relation_compose(b, c))


def test_converse_antidistributes_over_composition():
    rng = random.Random(13)
    for _ in range(30):
        n = rng.randint(1, 5)
        a, b = random_relation(rng, n), random_relation(rng, n)
        assert relation_converse(relation_compose(a, b)) == \
            relation_compose(relation_converse(b), relation_converse(a))


def test_permuted():
    r = ConcreteRelation.from_pairs(3, [(0, 1), (1, 2)])
    assert r.permuted((2, 0, 1)).pairs() == ((0, 1), (2, 0))


def test_size_mismatch_rejected():
    a = ConcreteRelation.universal(2)
    b = ConcreteRelation.universal(3)
    with pytest.raises(ValueError):
        relation_compose(a, b)


# --- algebra invariants ---------------------------------------------------


def test_type6_algebra_invariants(type6_algebra):
    assert type6_algebra.invariant_violations() == ()
    type6_algebra.require_invariants()


def test_overlapping_atoms_reported():
    c = ConcreteAlgebra(2, ("x", "y"), (
        ConcreteRelation.from_pairs(2, [(0, 0), (0, 1)]),
        ConcreteRelation.from_pairs(2, [(0, 1), (1, 0), (1, 1)])))
    msgs = c.invariant_violations()
    assert any("overlap at pair (0,1)" in m for m in msgs)


def test_uncovered_pair_reported():
    c = ConcreteAlgebra(2, ("x",), (
        ConcreteRelation.from_pairs(2, [(0, 0), (1, 1), (0, 1)]),))
    msgs = c.invariant_violations()
    assert any("pair (1,0) is in no atom" in m for m in msgs)


def test_converse_closure_violation_reported():
    # rows partition the square but the converse of a straddles both atoms
    c = ConcreteAlgebra(2, ("a", "b"), (
        ConcreteRelation.from_pairs(2, [(0, 0), (0, 1)]),
        ConcreteRelation.from_pairs(2, [(1, 0), (1, 1)])))
    msgs = c.invariant_violations()
    assert any("not closed under converse" in m for m in msgs)


def test_identity_straddling_atom_reported():
    c = ConcreteAlgebra(2, ("x", "y"), (
        ConcreteRelation.from_pairs(2, [(0, 0), (0, 1)]),
        ConcreteRelation.from_pairs(2, [(1, 0), (1, 1)])))
    msgs = c.invariant_violations()
    assert any("meets the identity without lying inside it" in m for m in msgs)


def test_composition_closure_violation_reported():
    # {(0,1)} ; {(1,2)} = {(0,2)} which straddles the big diversity atom
    c = ConcreteAlgebra(3, ("e", "a", "b", "rest"), (
        ConcreteRelation.identity(3),
        ConcreteRelation.from_pairs(3, [(0, 1)]),
        ConcreteRelation.from_pairs(3, [(1, 2)]),
        ConcreteRelation.from_pairs(3, [(1, 0), (2, 1), (0, 2), (2, 0)])))
    msgs = c.invariant_violations()
    assert any("not closed under composition" in m for m in msgs)


def test_algebra_constructor_rejects_malformed_input():
    with pytest.raises(ValueError):
        ConcreteAlgebra(2, ("x",), ())
    with pytest.raises(ValueError):
        ConcreteAlgebra(2, (), ())
    with pytest.raises(ValueError):
        ConcreteAlgebra(2, ("x", "x"), (ConcreteRelation.identity(2),
                                        ConcreteRelation.universal(2)))
    with pytest.raises(ValueError):
        ConcreteAlgebra(2, ("x",), (ConcreteRelation.identity(3),))
    with pytest.raises(ValueError):
        ConcreteAlgebra(2, ("x",), (ConcreteRelation.empty(2),))


# --- extraction -----------------------------------------------------------


def test_extract_swap_structure():
    s = extract_atom_structure(rel_algebra(build_group(2, [(1, 0)])))
    assert s.atom_names == ("e0", "a0")
    assert s.converse_map == (0, 1)
    assert s.identity_atoms == {0}
    assert s.cycles == {(0, 0, 0), (0, 1, 1), (1, 1, 0), (1, 0, 1)}
    assert validate_structure(s).ok


def test_extract_z3_structure():
    s = extract_atom_structure(rel_algebra(build_group(3, [(1, 2, 0)])))
    assert s.atom_names == ("e0", "a0", "a1")
    assert s.converse_map == (0, 2, 1)
    assert len(s.cycles) == 9
    assert (1, 1, 2) in s.cycles and (1, 1, 1) not in s.cycles


def test_extract_type6_structure(type6_algebra):
    s = extract_atom_structure(type6_algebra)
    assert s.atom_names == ("e0", "d0", "e1", "d1", "x0", "x1")
    assert s.identity_atoms == {0, 2}
    assert s.converse_map == (0, 1, 2, 3, 5, 4)
    # the cross atoms compose to a full block: x0;x1 covers e0 and d0
    assert (4, 5, 0) in s.cycles and (4, 5, 1) in s.cycles
    assert validate_structure(s).ok


def test_extraction_validates_for_every_small_involution():
    from conftest import involutions
    for n in range(1, 6):
        for g in involutions(n):
            s = extract_atom_structure(rel_algebra(build_group(n, [g])))
            assert validate_structure(s).ok, (n, g)


def test_full_algebra_of_singletons_extracts_valid_structure():
    # every pair its own atom: the largest proper algebra on the base
    for n in (2, 3):
        names = tuple(f"s{i}{j}" for i in range(n) for j in range(n))
        rels = tuple(ConcreteRelation.from_pairs(n, [(i, j)])
                     for i in range(n) for j in range(n))
        c = ConcreteAlgebra(n, names, rels)
        assert c.invariant_violations() == ()
        s = extract_atom_structure(c)
        assert validate_structure(s).ok
        assert len(s.identity_atoms) == n


def test_abstract_ops_agree_with_concrete_ops_on_all_elements():
    """Composition and converse computed from the extracted cycle list match
    the direct pair computations, across every pair of elements."""
    for gens in ((1, 2, 0), (0, 2, 1)):
        c = rel_algebra(build_group(3, [gens]))
        s = extract_atom_structure(c)

        def interp(mask):
            r = ConcreteRelation.empty(c.base_size)
            for a in range(c.n_atoms):
                if mask >> a & 1:
                    r = r | c.atom_relations[a]
            return r

        for xm in range(1 << c.n_atoms):
            assert interp(s.converse_mask(xm)) == \
                relation_converse(interp(xm))
            for ym in range(1 << c.n_atoms):
                assert interp(s.compose_mask(xm, ym)) == \
                    relation_compose(interp(xm), interp(ym))
