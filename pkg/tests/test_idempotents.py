import itertools

import pytest

from cornerrank.idempotents import (
    EquivalenceWitness,
    Idempotent,
    direct_sum,
    enumerate_idempotents,
    equivalent,
    is_full,
    leq,
    n_times,
    orthogonal,
    subequivalent,
)
from cornerrank.rings import EnumerationError, Integers, MatrixRing, ProductRing, RingError, ZMod

from oracles import elems, two_sided_ideal_has_one


def test_orthogonal_examples(units, m2f2):
    e11, _, _, e22 = units
    assert orthogonal(e11, e22)
    assert not orthogonal(e11, e11)
    assert not orthogonal(e11, e11 + e22)


def test_leq_examples(units, m2f2):
    e11, _, _, e22 = units
    assert leq(e11, m2f2.one)
    assert leq(m2f2.zero, e11)
    assert not leq(e11, e22)


def test_equivalent_examples(units, m2f2):
    e11, e12, e21, e22 = units
    assert equivalent(e11, e22) == EquivalenceWitness(e12, e21)
    assert equivalent(e11, e11) == EquivalenceWitness(e11, e11)
    assert equivalent(e11, m2f2.zero) is None


def test_subequivalent_examples(units, m2f2):
    e11, e12, e21, e22 = units
    assert subequivalent(e11, m2f2.one) == EquivalenceWitness(e11, e11)
    assert subequivalent(m2f2.one, e11) is None
    assert subequivalent(e11, e22) == EquivalenceWitness(e12, e21)


def test_subequivalent_none_confirmed_by_brute_force(m2f2):
    one, e11 = m2f2.one, m2f2.unit(0, 0)
    assert not any(
        a * b == one for a in elems(m2f2) for b in elems(m2f2) if a == one * a * e11 and b == e11 * b * one
    )


def test_owner_mismatch():
    with pytest.raises(RingError):
        orthogonal(ZMod(2).one, ZMod(3).one)


def test_search_needs_finite_ring():
    Z = Integers()
    with pytest.raises(EnumerationError):
        equivalent(Z.one, Z.zero)
    with pytest.raises(EnumerationError):
        is_full(Z.one)


def test_enumerate_idempotents_examples(m2f2):
    assert [e.v for e in enumerate_idempotents(ZMod(4))] == [0, 1]
    assert len(enumerate_idempotents(ProductRing([ZMod(2), ZMod(2)]))) == 4
    assert len(enumerate_idempotents(m2f2)) == 8


def test_enumerate_idempotents_brute_force(corpus_ring):
    expected = {a.v for a in elems(corpus_ring) if a * a == a}
    assert {e.v for e in enumerate_idempotents(corpus_ring)} == expected


def test_idempotent_type_rejects():
    with pytest.raises(RingError):
        Idempotent(ZMod(4), 2)


def test_is_full_examples(units, m2f2):
    e11 = units[0]
    cert = is_full(e11)
    assert cert.t == 2 and cert.check()
    assert is_full(m2f2.one).t == 1
    assert is_full(ProductRing([ZMod(2), ZMod(2)])([1, 0])) is None


def test_fullness_witness(units):
    cert = is_full(units[0])
    M, tp, w = cert.witness()
    assert tp == n_times(cert.t, units[0])
    # 1_A <~ t.p inside M_t(A)
    assert w.check(M.unit(0, 0), tp, full=False)


def test_is_full_matches_ideal_closure(corpus_ring):
    for p in enumerate_idempotents(corpus_ring):
        cert = is_full(p)
        assert (cert is not None) == two_sided_ideal_has_one(p)
        if cert is not None:
            assert cert.check()


def test_equivalence_is_an_equivalence_relation(corpus_ring):
    ids = enumerate_idempotents(corpus_ring)
    rel = {(p.v, q.v): equivalent(p, q) for p in ids for q in ids}
    for p, q in itertools.product(ids, repeat=2):
        w = rel[p.v, q.v]
        assert (w is None) == (rel[q.v, p.v] is None)
        if w is not None:
            assert w.check(p, q)
            assert w.inverse().check(q, p)
            # the same witness serves subequivalence
            assert subequivalent(p, q) is not None
    for p, q, r in itertools.product(ids, repeat=3):
        if rel[p.v, q.v] and rel[q.v, r.v]:
            assert rel[p.v, r.v] is not None
            assert rel[p.v, q.v].then(rel[q.v, r.v]).check(p, r)


def test_subequivalence_derived_idempotent(corpus_ring):
    ids = enumerate_idempotents(corpus_ring)
    for p, q in itertools.product(ids, repeat=2):
        w = subequivalent(p, q)
        if w is not None:
            p2 = w.derived()
            assert p2 * p2 == p2 and leq(p2, q)
            assert w.check(p, p2)


def test_orthogonal_and_leq_properties(corpus_ring):
    ids = enumerate_idempotents(corpus_ring)
    for p, q in itertools.product(ids, repeat=2):
        if orthogonal(p, q):
            s = p + q
            assert s * s == s
        if leq(p, q):
            d = q - p
            assert d * d == d and orthogonal(d, p)


def test_direct_sums(m2f2):
    F = ZMod(2)
    assert direct_sum(F.one, F.one) == MatrixRing(F, 2).one
    p = m2f2.unit(0, 0)
    # p + 0 is p placed in the upper-left block
    assert direct_sum(p, m2f2.zero) == MatrixRing(m2f2, 2).unit(0, 0, p)
    assert n_times(2, p).v == ((p.v, m2f2.zero_v), (m2f2.zero_v, p.v))
    with pytest.raises(RingError):
        n_times(0, p)
