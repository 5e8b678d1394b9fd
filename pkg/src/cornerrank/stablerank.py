"""Stable rank of rings and stable rank one of skew corners.

Solvers and Reducers are witness oracles: every answer they give is checked
exactly before it is returned, so a wrong transform surfaces as a
:class:`WitnessError` instead of a silently bad certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .ideals import solve_right_inverse
from .rings import Elem, EnumerationError, Ring, RingError, skew_set
from .tables import sr1_counterexample, supports_sweep, tables_for

Row = Sequence[Elem]

ROW_CAP = 2_000_000


class WitnessError(RuntimeError):
    """An oracle produced something that does not verify."""


# ---------------------------------------------------------------------------
# rows
# ---------------------------------------------------------------------------


def _row_ring(row: Row) -> Ring:
    if not row:
        raise RingError("rows must be non-empty")
    R = row[0].ring
    if any(e.ring != R for e in row):
        raise RingError("row entries must share one owner")
    return R


def is_right_unimodular(row: Row) -> bool:
    """True iff a_1 A + ... + a_n A = A."""
    _row_ring(row)
    return solve_right_inverse(list(row)) is not None


@dataclass(frozen=True)
class Reduction:
    """c reduces the row (a_1..a_n, b); z certifies sum (a_i + b c_i) z_i = 1."""

    c: tuple[Elem, ...]
    z: tuple[Elem, ...]

    def check(self, row: Row) -> bool:
        *a, b = row
        if len(self.c) != len(a) or len(self.z) != len(a):
            return False
        R = b.ring
        total = R.zero
        for ai, ci, zi in zip(a, self.c, self.z):
            total = total + (ai + b * ci) * zi
        return total == R.one


def reduced_row(row: Row, c: Sequence[Elem]) -> list[Elem]:
    *a, b = row
    return [ai + b * ci for ai, ci in zip(a, c)]


def find_reduction(row: Row) -> Reduction | None:
    """First c (in enumeration order) making the reduced row right unimodular."""
    R = _row_ring(row)
    if not R.finite:
        raise EnumerationError(f"{R!r} is infinite; use a Reducer")
    *a, b = row
    elems = R.all_elems()
    for c in itertools.product(elems, repeat=len(a)):
        z = solve_right_inverse(reduced_row(row, c))
        if z is not None:
            return Reduction(tuple(c), tuple(z))
    return None


def is_reducible(row: Row) -> tuple[Elem, ...] | None:
    red = find_reduction(row)
    return None if red is None else red.c


class Reducer:
    """Witness oracle for the n-th stable range condition of ``ring``."""

    def __init__(
        self,
        ring: Ring,
        rank: int,
        oracle: Callable[[tuple[Elem, ...], list | None], Reduction],
        name: str = "reducer",
        verify: bool = True,
    ) -> None:
        self.ring = ring
        self.rank = rank
        self._oracle = oracle
        self.name = name
        self.verify = verify

    def reduce(self, row: Row, trace: list | None = None) -> Reduction:
        """Reduce ``row``; transform steps are appended to ``trace`` if given."""
        row = tuple(row)
        if len(row) != self.rank + 1:
            raise RingError(f"{self.name} expects rows of length {self.rank + 1}")
        red = self._oracle(row, trace)
        if self.verify and not red.check(row):
            raise WitnessError(f"{self.name} returned a reduction that does not verify")
        return red

    __call__ = reduce


def brute_force_reducer(ring: Ring, rank: int) -> Reducer:
    """Reducer backed by exhaustive search (finite rings)."""

    def oracle(row, trace):
        red = find_reduction(row)
        if red is None:
            if not is_right_unimodular(row):
                raise RingError("row is not right unimodular")
            raise WitnessError(f"irreducible row found: stable rank exceeds {rank}")
        return red

    return Reducer(ring, rank, oracle, name="brute-force")


# ---------------------------------------------------------------------------
# stable rank
# ---------------------------------------------------------------------------


def _generic_counterexample(R: Ring, n: int):
    """First irreducible right-unimodular (n+1)-row, by table lookups."""
    T = tables_for(R)
    N = T.size
    if N ** (n + 1) > ROW_CAP:
        raise EnumerationError(f"{N}^{n + 1} rows exceed the row cap {ROW_CAP}")
    ideals = T.principal_ideals
    add = T.add
    sums: dict = {}

    def ideal_sum(idx: tuple[int, ...]) -> frozenset:
        key = frozenset(ideals[i] for i in idx)
        got = sums.get(key)
        if got is None:
            acc = {T.zero}
            for I in key:
                Il = list(I)
                acc = set(add[list(acc)][:, Il].ravel().tolist())
            got = sums[key] = frozenset(acc)
        return got

    def unimodular(idx) -> bool:
        return T.one in ideal_sum(tuple(idx))

    rng = range(N)
    mul = T.mul
    for row in itertools.product(rng, repeat=n + 1):
        if not unimodular(row):
            continue
        *a, b = row
        ok = False
        for c in itertools.product(rng, repeat=n):
            if unimodular([add[ai, mul[b, ci]] for ai, ci in zip(a, c)]):
                ok = True
                break
        if not ok:
            elems = R.elements()
            return tuple(elems[i] for i in row)
    return None


def stable_range_counterexample(A: Ring, n: int) -> tuple[Elem, ...] | None:
    """An irreducible right-unimodular (n+1)-row of A, or None if A satisfies
    the n-th stable range condition.  Exhaustive."""
    if not A.finite:
        raise EnumerationError(f"{A!r} is infinite; enumeration unsupported")
    if n == 1 and supports_sweep(A):
        pair = sr1_counterexample(A)
        return None if pair is None else tuple(Elem(A, v) for v in pair)
    row = _generic_counterexample(A, n)
    return None if row is None else tuple(Elem(A, v) for v in row)


def satisfies_stable_range(A: Ring, n: int) -> bool:
    return stable_range_counterexample(A, n) is None


def stable_rank(A: Ring, max_n: int = 3) -> int | None:
    """Least n <= max_n with every right-unimodular (n+1)-row reducible.

    ``None`` means the stable rank exceeds ``max_n``.
    """
    for n in range(1, max_n + 1):
        if satisfies_stable_range(A, n):
            return n
    return None


# ---------------------------------------------------------------------------
# skew corners
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SkewCorner:
    """The set pAq for idempotents p, q of a common ring."""

    p: Elem
    q: Elem

    def __post_init__(self) -> None:
        if self.p.ring != self.q.ring:
            raise RingError("p and q must share one owner")
        for e in (self.p, self.q):
            if e * e != e:
                raise RingError(f"{e.literal!r} is not idempotent")

    @property
    def ring(self) -> Ring:
        return self.p.ring

    def contains(self, a: Elem) -> bool:
        return self.p * a * self.q == a

    def members(self) -> list[Elem]:
        R = self.ring
        return [Elem(R, v) for v in skew_set(R, self.p.v, self.q.v)]


@dataclass(frozen=True)
class CornerEquation:
    """a in pAq, x in qAp, b in pAp with ax + b = p."""

    a: Elem
    x: Elem
    b: Elem

    def check(self, c: SkewCorner) -> bool:
        p, q = c.p, c.q
        return (
            self.a == p * self.a * q
            and self.x == q * self.x * p
            and self.b == p * self.b * p
            and self.a * self.x + self.b == p
        )


@dataclass(frozen=True)
class CornerSolution:
    """y in pAq, z in qAp with (a + by)z = p."""

    y: Elem
    z: Elem


def verify_solution(c: SkewCorner, eq: CornerEquation, sol: CornerSolution) -> bool:
    p, q = c.p, c.q
    y, z = sol.y, sol.z
    if y.ring != c.ring or z.ring != c.ring:
        return False
    return y == p * y * q and z == q * z * p and (eq.a + eq.b * y) * z == p


class Solver:
    """Total witness map for the equations of one skew corner."""

    def __init__(
        self,
        corner: SkewCorner,
        oracle: Callable[[CornerEquation, list | None], CornerSolution],
        name: str = "solver",
        verify: bool = True,
    ) -> None:
        self.corner = corner
        self._oracle = oracle
        self.name = name
        self.verify = verify

    @property
    def p(self) -> Elem:
        return self.corner.p

    @property
    def q(self) -> Elem:
        return self.corner.q

    @property
    def ring(self) -> Ring:
        return self.corner.ring

    def solve(self, eq: CornerEquation, trace: list | None = None) -> CornerSolution:
        if self.verify and not eq.check(self.corner):
            raise RingError(f"{self.name}: equation does not lie on the corner")
        sol = self._oracle(eq, trace)
        if self.verify and not verify_solution(self.corner, eq, sol):
            raise WitnessError(f"{self.name}: returned solution does not verify")
        return sol

    __call__ = solve

    def equations(self) -> list[CornerEquation]:
        return corner_equations(self.corner)


def corner_equations(c: SkewCorner) -> list[CornerEquation]:
    """All equations on c, as (a, x) pairs with b := p - ax."""
    p = c.p
    left = c.members()
    right = SkewCorner(c.q, c.p).members()
    return [CornerEquation(a, x, p - a * x) for a in left for x in right]


def skew_sr1_check(c: SkewCorner) -> Solver | CornerEquation:
    """A table-backed Solver if sr(pAq) = 1, else the first unsolvable equation."""
    R = c.ring
    if not R.finite:
        raise EnumerationError(f"{R!r} is infinite; skew corner check needs enumeration")
    mul, add = R.mul, R.add
    pv, qv = c.p.v, c.q.v
    left = skew_set(R, pv, qv)
    right = skew_set(R, qv, pv)
    # right-invertible elements of pAq, with the first inverse found
    inverse: dict = {}
    for w in left:
        for z in right:
            if mul(w, z) == pv:
                inverse[w] = z
                break
    table: dict = {}
    for a in left:
        for x in right:
            b = R.sub(pv, mul(a, x))
            if (a, b) in table:
                continue
            for y in left:
                w = add(a, mul(b, y))
                z = inverse.get(w)
                if z is not None:
                    table[a, b] = (y, z)
                    break
            else:
                return CornerEquation(Elem(R, a), Elem(R, x), Elem(R, b))

    def oracle(eq: CornerEquation, trace) -> CornerSolution:
        y, z = table[eq.a.v, eq.b.v]
        return CornerSolution(Elem(R, y), Elem(R, z))

    return Solver(c, oracle, name="table")


def equation_unsolvable(c: SkewCorner, eq: CornerEquation) -> bool:
    """Exhaustive confirmation that no (y, z) solves eq."""
    R = c.ring
    mul = R.mul
    left = skew_set(R, c.p.v, c.q.v)
    right = skew_set(R, c.q.v, c.p.v)
    a, b, p = eq.a.v, eq.b.v, c.p.v
    for y in left:
        w = R.add(a, mul(b, y))
        if any(mul(w, z) == p for z in right):
            return False
    return True

