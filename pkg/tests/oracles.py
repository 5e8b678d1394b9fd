"""Naive reference computations used as test oracles.

Everything here is written directly from the definitions, with plain loops
over element lists and no shared code paths with the library's search
routines (tables, column engine, worklist closures).
"""

from __future__ import annotations

import itertools

import numpy as np

from cornerrank.rings import Elem, Ring


def elems(R: Ring) -> list[Elem]:
    return [Elem(R, v) for v in R.elements()]


def right_ideal(gens: list[Elem]) -> set:
    """Payloads of all sums g_1 x_1 + ... + g_k x_k (brute force)."""
    R = gens[0].ring
    els = elems(R)
    images = [{(g * x).v for x in els} for g in gens]
    acc = {R.zero_v}
    for img in images:
        acc = {R.add(s, t) for s in acc for t in img}
    return acc


def unimodular(row: list[Elem]) -> bool:
    return row[0].ring.one_v in right_ideal(row)


def is_unit(u: Elem) -> bool:
    R = u.ring
    return any(u * x == R.one and x * u == R.one for x in elems(R))


def reducible(row: list[Elem]) -> bool:
    *a, b = row
    R = b.ring
    for c in itertools.product(elems(R), repeat=len(a)):
        if unimodular([ai + b * ci for ai, ci in zip(a, c)]):
            return True
    return False


def sr_at_most(R: Ring, n: int) -> bool:
    els = elems(R)
    for row in itertools.product(els, repeat=n + 1):
        if unimodular(list(row)) and not reducible(list(row)):
            return False
    return True


def sr1_by_units(R: Ring) -> bool:
    """Every unimodular pair (a, b) has a + bc a unit for some c."""
    els = elems(R)
    units = [u for u in els if is_unit(u)]
    unit_set = {u.v for u in units}
    for a in els:
        for b in els:
            if any((a * x + b * y) == R.one for x in els for y in els):
                if not any((a + b * c).v in unit_set for c in els):
                    return False
    return True


def corner(p: Elem, q: Elem) -> list[Elem]:
    return list({(p * a * q).v: p * a * q for a in elems(p.ring)}.values())


def skew_sr1(p: Elem, q: Elem) -> bool:
    """The skew-corner condition straight from its definition."""
    pAq, qAp = corner(p, q), corner(q, p)
    for a in pAq:
        for x in qAp:
            b = p - a * x
            if not any((a + b * y) * z == p for y in pAq for z in qAp):
                return False
    return True


def two_sided_ideal_has_one(p: Elem) -> bool:
    """1 in ApA, by additive closure of all x p y."""
    R = p.ring
    gens = {(x * p * y).v for x in elems(R) for y in elems(R)}
    acc = {R.zero_v}
    frontier = set(acc)
    while frontier:
        new = {R.add(s, g) for s in frontier for g in gens} - acc
        acc |= new
        frontier = new
    return R.one_v in acc


def np_matrix(e: Elem) -> np.ndarray:
    return np.array(e.v, dtype=object)
