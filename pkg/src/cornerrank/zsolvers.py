"""Reducers over the integers and over M_2(Z).

The integers have stable rank 2: ``z_reducer`` reduces every unimodular
triple, and ``z_sr_lower_witness`` exhibits the pair (5, 7) that no c
reduces.  Right unimodularity over M_n(Z) is decided by the Smith normal form
of the stacked row.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .idempotents import FullnessCertificate
from .ideals import solve_right_inverse, xgcd
from .rings import CornerRing, Elem, Integers, MatrixRing, RingError
from .snf import invariants, smith_normal_form
from .stablerank import Reducer, Reduction

Z = Integers()
M2Z = MatrixRing(Z, 2)

TRIAL_DIVISION_CAP = 10**12


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of |n| by trial division."""
    n = abs(n)
    if n > TRIAL_DIVISION_CAP:
        raise ValueError(f"{n} exceeds the trial-division cap {TRIAL_DIVISION_CAP}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def crt(residues: list[tuple[int, int]]) -> int:
    """Least non-negative x with x = r (mod m) for pairwise coprime moduli."""
    x, mod = 0, 1
    for r, m in residues:
        t = ((r - x) * pow(mod, -1, m)) % m
        x += mod * t
        mod *= m
    return x % mod


def z_reducer(a1: int, a2: int, b: int) -> tuple[int, int]:
    """(c1, c2) with gcd(a1 + b c1, a2 + b c2) = 1, for gcd(a1, a2, b) = 1.

    c1 is the smallest |c1| (positive on ties) with a1 + b c1 != 0; c2 is
    then fixed prime by prime on the factors of a1 + b c1 and glued by CRT.
    """
    if math.gcd(a1, a2, b) != 1:
        raise RingError(f"({a1}, {a2}, {b}) is not unimodular")
    if math.gcd(a1, a2) == 1:
        return 0, 0
    c1 = 0 if a1 != 0 else 1  # a1 = 0 forces b != 0 here
    a = a1 + b * c1
    congruences = []
    for pi in prime_factors(a):
        if b % pi:
            congruences.append(((1 - a2) * pow(b, -1, pi) % pi, pi))
        # pi | b forces pi not dividing a2, so a2 + b c2 is never divisible by pi
    c2 = crt(congruences)
    if math.gcd(a, a2 + b * c2) != 1:
        raise AssertionError("z_reducer produced a non-coprime pair")
    return c1, c2


def z_integer_reducer() -> Reducer:
    """Rank-2 Reducer over the integers built on ``z_reducer``."""

    def oracle(row, trace) -> Reduction:
        a1, a2, b = (e.v for e in row)
        c1, c2 = z_reducer(a1, a2, b)
        g, s, t = xgcd(a1 + b * c1, a2 + b * c2)
        return Reduction((Elem(Z, c1), Elem(Z, c2)), (Elem(Z, s), Elem(Z, t)))

    return Reducer(Z, 2, oracle, name="z-reducer")


@dataclass(frozen=True)
class LowerWitness:
    """A unimodular pair (a, b) of integers that no c reduces.

    a + bc is congruent to ``residue`` modulo b, while the units +-1 leave
    only the residues ``unit_residues``.
    """

    pair: tuple[int, int]
    bezout: tuple[int, int]
    residue: int
    unit_residues: tuple[int, ...]

    def check(self) -> bool:
        a, b = self.pair
        s, t = self.bezout
        return (
            s * a + t * b == 1
            and self.residue == a % b
            and set(self.unit_residues) == {1 % b, -1 % b}
            and self.residue not in self.unit_residues
        )

    def spot_check(self, bound: int) -> bool:
        """No c in [-bound, bound] makes a + bc a unit."""
        a, b = self.pair
        # a + bc = +-1 means c = (+-1 - a)/b; check those are outside the range or not integral
        for u in (1, -1):
            if (u - a) % b == 0 and abs((u - a) // b) <= bound:
                return False
        return True


def z_sr_lower_witness() -> LowerWitness:
    """(5, 7): 3*5 - 2*7 = 1, yet 5 + 7c = 5 mod 7 is never +-1."""
    a, b = 5, 7
    g, s, t = xgcd(a, b)
    return LowerWitness((a, b), (s, t), a % b, tuple(sorted({1 % b, -1 % b})))


# ---------------------------------------------------------------------------
# M_2(Z)
# ---------------------------------------------------------------------------


def stacked(row) -> list[list[int]]:
    """The n x (kn) integer matrix [g_1 | g_2 | ...] of a row over M_n(Z)."""
    n = row[0].ring.n
    return [sum((list(g.v[i]) for g in row), []) for i in range(n)]


def m2z_unimodular(row) -> tuple[bool, list[Elem] | None]:
    """Right unimodularity over M_n(Z) with a right-inverse certificate.

    Decided by the invariant factors of the stacked row: all must be 1.
    """
    R = row[0].ring
    if not (isinstance(R, MatrixRing) and isinstance(R.base, Integers)):
        raise RingError("m2z_unimodular needs a row over M_n(integers)")
    _, D, _ = smith_normal_form(stacked(row))
    unimodular = invariants(D) == [1] * R.n
    cert = solve_right_inverse(list(row))
    if unimodular != (cert is not None):
        raise AssertionError("invariant factors and right inverse disagree")
    return unimodular, cert


def corner_z_reducer(A: MatrixRing = M2Z) -> Reducer:
    """Rank-2 Reducer for e11 M_n(Z) e11, which is the integers in slot (0, 0)."""
    B = CornerRing(A, A.unit(0, 0))
    z = z_integer_reducer()

    def lift(k: int) -> Elem:
        return Elem(B, A.unit_v(0, 0, k))

    def oracle(row, trace) -> Reduction:
        red = z.reduce([Elem(Z, e.v[0][0]) for e in row], trace)
        return Reduction(tuple(lift(c.v) for c in red.c), tuple(lift(w.v) for w in red.z))

    return Reducer(B, 2, oracle, name="corner-z-reducer")


def e11_certificate(A: MatrixRing = M2Z) -> FullnessCertificate:
    """e11 e11 e11 + e21 e11 e12 = 1 in M_2."""
    return FullnessCertificate(
        A.unit(0, 0), ((A.unit(0, 0), A.unit(0, 0)), (A.unit(1, 0), A.unit(0, 1)))
    )


def _elementary(rng: random.Random, steps: int) -> list[list[int]]:
    U = [[1, 0], [0, 1]]
    for _ in range(steps):
        i = rng.randrange(2)
        k = rng.choice((-1, 1))
        # add k times row 1-i to row i
        U[i] = [U[i][j] + k * U[1 - i][j] for j in range(2)]
    return U


def random_m2z_triples(seed: int, count: int, magnitude: int) -> list[tuple[Elem, Elem, Elem]]:
    """Seeded right-unimodular triples (a1, a2, b) over M_2(Z), entries bounded
    by ``magnitude``.

    Odd-numbered instances are built as D (a1', a2') with det D = 2 or 3, so
    (a1, a2) alone is not unimodular and the reduction does real work.
    """
    rng = random.Random(seed)
    out = []
    m = max(1, magnitude)

    def rand(bound):
        return [[rng.randint(-bound, bound) for _ in range(2)] for _ in range(2)]

    def mm(X, Y):
        return [[sum(X[i][k] * Y[k][j] for k in range(2)) for j in range(2)] for i in range(2)]

    def fits(X):
        return all(abs(v) <= m for r in X for v in r)

    while len(out) < count:
        if len(out) % 2:
            U = _elementary(rng, 3)
            D = mm(U, [[rng.choice((2, 3)), 0], [0, 1]])
            a1, a2 = mm(D, rand(max(1, m // 4))), mm(D, rand(max(1, m // 4)))
        else:
            a1, a2 = rand(m), rand(m)
        b = rand(m)
        if not all(fits(X) for X in (a1, a2, b)):
            continue
        row = tuple(Elem(M2Z, tuple(map(tuple, X))) for X in (a1, a2, b))
        if m2z_unimodular(list(row))[0]:
            out.append(row)
    return out


__all__ = [
    "prime_factors",
    "crt",
    "z_reducer",
    "z_integer_reducer",
    "LowerWitness",
    "z_sr_lower_witness",
    "stacked",
    "m2z_unimodular",
    "corner_z_reducer",
    "e11_certificate",
    "random_m2z_triples",
]
