import itertools

import numpy as np
import pytest

from cornerrank.idempotents import enumerate_idempotents, subequivalent
from cornerrank.rings import Elem, EnumerationError, Integers, MatrixRing, ProductRing, UpperTriangularRing, ZMod
from cornerrank.stablerank import (
    CornerEquation,
    CornerSolution,
    Reducer,
    Reduction,
    SkewCorner,
    Solver,
    WitnessError,
    brute_force_reducer,
    equation_unsolvable,
    find_reduction,
    is_reducible,
    is_right_unimodular,
    satisfies_stable_range,
    skew_sr1_check,
    stable_range_counterexample,
    stable_rank,
    verify_solution,
    _generic_counterexample,
)
from cornerrank.tables import ColumnEngine

import oracles
from oracles import elems

Z = Integers()


def test_unimodular_examples():
    assert is_right_unimodular([Z(3), Z(5)])
    assert not is_right_unimodular([Z(2), Z(4)])
    R = ZMod(4)
    assert is_right_unimodular([R(2), R(3)])


def test_is_reducible_examples():
    R = ZMod(4)
    assert is_reducible([R(2), R(3)]) == (R(1),)
    for b in elems(R):
        assert is_reducible([R(1), b]) == (R(0),)
    F = ZMod(2)
    assert is_reducible([F(0), F(1)]) == (F(1),)


def test_reduction_search_needs_finite_ring():
    with pytest.raises(EnumerationError):
        find_reduction([Z(5), Z(7)])
    with pytest.raises(EnumerationError):
        stable_rank(Z)


@pytest.mark.parametrize(
    "ring",
    [ZMod(4), ProductRing([ZMod(2), ZMod(3)]), MatrixRing(ZMod(2), 2)],
    ids=["zmod4", "z2xz3", "m2z2"],
)
def test_stable_rank_examples(ring):
    assert stable_rank(ring) == 1


def test_every_corpus_ring_has_stable_rank_one(corpus_ring):
    assert stable_rank(corpus_ring) == 1
    # independent oracle: units reached from every unimodular pair
    assert oracles.sr1_by_units(corpus_ring)


def test_sr_condition_two_matches_naive():
    for R in (ZMod(2), ZMod(3), ZMod(4), ProductRing([ZMod(2), ZMod(2)])):
        assert satisfies_stable_range(R, 2) == oracles.sr_at_most(R, 2)


@pytest.mark.parametrize(
    "ring",
    [ZMod(6), ZMod(8), UpperTriangularRing(ZMod(2), 2), MatrixRing(ZMod(2), 2), ProductRing([ZMod(3), ZMod(2)])],
    ids=str,
)
def test_column_engine_units(ring):
    eng = ColumnEngine(ring)
    expected = {u.v for u in elems(ring) if oracles.is_unit(u)}
    got = {eng.payload(i) for i in np.flatnonzero(eng.units)}
    assert got == expected


def test_column_engine_unit_count_m2z4():
    assert ColumnEngine(MatrixRing(ZMod(4), 2)).units.sum() == 96  # |GL_2(Z/4)|


def test_engine_reports_counterexample_under_fake_units(m2f2):
    """With only the identity counted as a unit, irreducible pairs must appear
    and each reported pair must be irreducible for that predicate."""
    eng = ColumnEngine(m2f2)
    one_code = next(i for i in range(eng.n_elems) if eng.payload(i) == m2f2.one_v)
    eng.units = np.zeros_like(eng.units)
    eng.units[one_code] = True
    pair = eng.counterexample()
    assert pair is not None
    a, b = (Elem(m2f2, v) for v in pair)
    assert oracles.unimodular([a, b])
    assert all(a + b * c != m2f2.one for c in elems(m2f2))


def test_generic_row_sweep_agrees_with_column_engine(corpus_ring):
    # finite rings have stable rank one, so both sweeps must come back empty
    assert _generic_counterexample(corpus_ring, 1) is None
    assert stable_range_counterexample(corpus_ring, 1) is None


def test_brute_force_reducer():
    R = ZMod(4)
    red = brute_force_reducer(R, 1)
    for a, b in itertools.product(elems(R), repeat=2):
        if oracles.unimodular([a, b]):
            r = red.reduce([a, b])
            assert r.check([a, b])


def test_reducer_rejects_wrong_length_and_bad_outputs():
    R = ZMod(4)
    red = brute_force_reducer(R, 1)
    with pytest.raises(ValueError):
        red.reduce([R(1)])
    liar = Reducer(R, 1, lambda row, trace: Reduction((R(0),), (R(0),)))
    with pytest.raises(WitnessError):
        liar.reduce([R(2), R(1)])


def test_skew_check_full_ring_of_m2z2():
    M = MatrixRing(ZMod(2), 2)
    c = SkewCorner(M.unit(0, 0), M.one)
    assert isinstance(skew_sr1_check(c), Solver)


def test_skew_check_into_zero_corner(units, m2f2):
    e11 = units[0]
    res = skew_sr1_check(SkewCorner(e11, m2f2.zero))
    assert res == CornerEquation(m2f2.zero, m2f2.zero, e11)


def test_skew_check_two_element_corner(units):
    e11 = units[0]
    assert isinstance(skew_sr1_check(SkewCorner(e11, e11)), Solver)


def test_skew_check_matches_definition(corpus_ring):
    for p, q in itertools.product(enumerate_idempotents(corpus_ring), repeat=2):
        c = SkewCorner(p, q)
        res = skew_sr1_check(c)
        assert isinstance(res, Solver) == oracles.skew_sr1(p, q)
        if isinstance(res, Solver):
            for eq in res.equations():
                assert verify_solution(c, eq, res.solve(eq))
        else:
            assert res.check(c) and equation_unsolvable(c, res)
        # no subequivalence means no solver (the converse need not hold)
        if subequivalent(p, q) is None:
            assert not isinstance(res, Solver)


def test_verify_solution_examples(units):
    p = units[0]
    c = SkewCorner(p, p)
    eq = CornerEquation(p, p, p.ring.zero)
    assert verify_solution(c, eq, CornerSolution(p.ring.zero, p))
    # z outside qAp
    assert not verify_solution(c, eq, CornerSolution(p.ring.zero, p.ring.one))


def test_solver_rejects_off_corner_equation(units):
    e11, e12, _, _ = units
    slv = skew_sr1_check(SkewCorner(e11, e11))
    with pytest.raises(ValueError):
        slv.solve(CornerEquation(e12, e11, e11))
