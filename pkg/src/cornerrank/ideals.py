"""Right-ideal membership and right inverses of rows.

Finite rings are handled by a worklist closure over the sumset
``g_1 A + g_2 A + ...`` that records a coefficient tuple for every element it
reaches.  The integers use the extended gcd, integer matrix rings use the
Smith normal form.
"""

from __future__ import annotations

from typing import Sequence

from .rings import Elem, Integers, MatrixRing, Ring, RingError
from .snf import solve_left_system


class UnsupportedRing(TypeError):
    """No decision procedure for right ideals of this ring."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def gcd_coefficients(values: Sequence[int]) -> tuple[int, list[int]]:
    """gcd of ``values`` with Bezout coefficients."""
    g, coeffs = 0, []
    for v in values:
        g2, s, t = xgcd(g, v)
        coeffs = [c * s for c in coeffs] + [t]
        g = g2
    return g, coeffs


def _is_integer_matrix_ring(R: Ring) -> bool:
    return type(R) is MatrixRing and isinstance(R.base, Integers)


def _owner(generators: Sequence[Elem], target: Elem | None) -> Ring:
    rings = {g.ring for g in generators}
    if target is not None:
        rings.add(target.ring)
    if len(rings) != 1:
        raise RingError("generators and target must share one owner")
    return rings.pop()


def solve_right_ideal(generators: Sequence[Elem], target: Elem) -> list[Elem] | None:
    """Coefficients ``x`` with ``sum(g_i * x_i) == target``, or ``None``."""
    R = _owner(generators, target)
    if not generators:
        return [] if target.is_zero() else None
    if isinstance(R, Integers):
        g, coeffs = gcd_coefficients([e.v for e in generators])
        if g == 0:
            return [R.zero] * len(generators) if target.v == 0 else None
        if target.v % g:
            return None
        k = target.v // g
        return [Elem(R, c * k) for c in coeffs]
    if _is_integer_matrix_ring(R):
        n = R.n
        stacked = [sum((list(g.v[i]) for g in generators), []) for i in range(n)]
        X = solve_left_system(stacked, [list(r) for r in target.v])
        if X is None:
            return None
        return [
            Elem(R, tuple(tuple(X[k * n + i]) for i in range(n))) for k in range(len(generators))
        ]
    if R.finite:
        return _finite_solve(R, [g.v for g in generators], target.v)
    raise UnsupportedRing(f"no right-ideal decision procedure for {R!r}")


def _finite_solve(R: Ring, gens: list, target) -> list[Elem] | None:
    elems = R.elements()
    z = R.zero_v
    k = len(gens)
    # reached element -> coefficient tuple, grown one generator at a time
    reached: dict = {z: (z,) * k}
    for i, g in enumerate(gens):
        image: dict = {}
        for r in elems:
            image.setdefault(R.mul(g, r), r)
        nxt: dict = {}
        for e, coeffs in reached.items():
            for img, r in image.items():
                s = R.add(e, img)
                if s not in nxt:
                    nxt[s] = coeffs[:i] + (r,) + coeffs[i + 1 :]
        reached = nxt
    coeffs = reached.get(target)
    if coeffs is None:
        return None
    return [Elem(R, c) for c in coeffs]


def right_ideal_contains(generators: Sequence[Elem], target: Elem) -> bool:
    return solve_right_ideal(generators, target) is not None


def solve_right_inverse(generators: Sequence[Elem]) -> list[Elem] | None:
    """``x`` with ``sum(g_i * x_i) == 1``, or ``None`` if 1 is not in the right ideal."""
    R = _owner(generators, None)
    return solve_right_ideal(generators, R.one)


def supports_ideals(R: Ring) -> bool:
    return isinstance(R, Integers) or _is_integer_matrix_ring(R) or R.finite


__all__ = [
    "UnsupportedRing",
    "xgcd",
    "gcd_coefficients",
    "solve_right_ideal",
    "right_ideal_contains",
    "solve_right_inverse",
    "supports_ideals",
]
