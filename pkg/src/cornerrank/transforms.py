"""Witness transforms between skew-corner solvers and row reducers.

Every transform takes oracles and returns a new oracle.  The returned
Solver/Reducer checks each answer exactly, and the intermediate identities
the constructions rely on (unit inverses, orthogonality, the interior
equations of the restriction step) are asserted on every call.

Equations and solutions are the objects of :mod:`cornerrank.stablerank`:
an equation (a, x, b) on the corner pAq has ax + b = p, a solution (y, z)
has (a + by)z = p.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .idempotents import EquivalenceWitness, FullnessCertificate, leq, orthogonal
from .ideals import solve_right_inverse
from .rings import CornerRing, Elem, MatrixRing, Ring, RingError, embed_v, restrict_v
from .stablerank import (
    CornerEquation,
    CornerSolution,
    Reducer,
    Reduction,
    SkewCorner,
    Solver,
    WitnessError,
)


class InvariantViolation(AssertionError):
    """An identity that holds by construction failed: an implementation bug."""


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise InvariantViolation(what)


def _note(trace: list | None, step: str, **data: Elem | int | str) -> None:
    if trace is not None:
        trace.append(
            {"step": step, **{k: (v.literal if isinstance(v, Elem) else v) for k, v in data.items()}}
        )


@dataclass
class PipelineTrace:
    """Construction record of a composed oracle: which transforms, in which
    order, with the idempotents, units and ambient sizes they used."""

    steps: list[dict] = field(default_factory=list)

    def add(self, step: str, **data: Any) -> None:
        _note(self.steps, step, **data)

    def to_json(self) -> str:
        return json.dumps({"steps": self.steps}, sort_keys=True)


# ---------------------------------------------------------------------------
# equation rewriting steps with back-maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Obs5Step:
    """One rewriting of an equation on ``corner``.

    kind is ``shift`` (a -> a + bc), ``right_unit`` (a -> au), ``left_unit``
    (a -> va) or ``enlarge`` (move into M_size of the base ring).
    """

    kind: str
    corner: SkewCorner
    c: Elem | None = None
    unit: Elem | None = None
    unit_inverse: Elem | None = None
    size: int | None = None

    def check(self) -> None:
        P, Q = self.corner.p, self.corner.q
        if self.kind == "shift":
            if not self.corner.contains(self.c):
                raise RingError("shift element must lie in pAq")
        elif self.kind in ("right_unit", "left_unit"):
            E = Q if self.kind == "right_unit" else P
            u, w = self.unit, self.unit_inverse
            if not (E * u * E == u and E * w * E == w and u * w == E and w * u == E):
                raise RingError(f"{self.kind}: not a unit of the corner ring with that inverse")
        elif self.kind == "enlarge":
            R = self.corner.ring
            if not isinstance(R, MatrixRing) or self.size is None or self.size < R.n:
                raise RingError("enlarge needs a matrix ring and a size at least its own")
        else:
            raise RingError(f"unknown step kind {self.kind!r}")


BackMap = Callable[[CornerSolution], CornerSolution]


def obs5_apply(step: Obs5Step, eq: CornerEquation) -> tuple[SkewCorner, CornerEquation, BackMap]:
    """Rewrite ``eq``; return the new corner, the new equation and a map that
    turns any solution of the new equation into a solution of ``eq``."""
    step.check()
    P = step.corner.p
    a, x, b = eq.a, eq.x, eq.b
    if step.kind == "shift":
        c = step.c
        new = CornerEquation(a + b * c, x, b * (P - c * x))
        return step.corner, new, lambda s: CornerSolution(c + s.y - c * x * s.y, s.z)
    if step.kind == "right_unit":
        u, ui = step.unit, step.unit_inverse
        new = CornerEquation(a * u, ui * x, b)
        return step.corner, new, lambda s: CornerSolution(s.y * ui, u * s.z)
    if step.kind == "left_unit":
        v, vi = step.unit, step.unit_inverse
        new = CornerEquation(v * a, x * vi, v * b * vi)
        return step.corner, new, lambda s: CornerSolution(vi * s.y, s.z * v)
    # enlarge: same entries, larger matrix ring
    R = step.corner.ring
    big = MatrixRing(R.base, step.size)
    up = lambda e: Elem(big, embed_v(e.v, step.size, R.base.zero_v))  # noqa: E731
    corner = SkewCorner(up(step.corner.p), up(step.corner.q))
    new = CornerEquation(up(a), up(x), up(b))
    n = R.n
    return corner, new, lambda s: CornerSolution(Elem(R, restrict_v(s.y.v, n)), Elem(R, restrict_v(s.z.v, n)))


def resize_solver(slv: Solver, size: int) -> Solver:
    """The same corner read inside M_size(base), for size larger or smaller.

    Valid when the corner's idempotents live in the common upper-left block.
    """
    R = slv.ring
    if not isinstance(R, MatrixRing):
        raise RingError("resizing needs a solver over a matrix ring")
    z0 = R.base.zero_v
    target = MatrixRing(R.base, size)
    if size >= R.n:
        to_target = lambda e: Elem(target, embed_v(e.v, size, z0))  # noqa: E731
        from_target = lambda e: Elem(R, restrict_v(e.v, R.n))  # noqa: E731
    else:
        to_target = lambda e: Elem(target, restrict_v(e.v, size))  # noqa: E731
        from_target = lambda e: Elem(R, embed_v(e.v, R.n, z0))  # noqa: E731
    corner = SkewCorner(to_target(slv.p), to_target(slv.q))
    if from_target(corner.p) != slv.p or from_target(corner.q) != slv.q:
        raise RingError(f"corner does not fit in M_{size}")

    def oracle(eq: CornerEquation, trace) -> CornerSolution:
        _note(trace, "obs5.enlarge", size=max(size, R.n))
        sol = slv.solve(CornerEquation(from_target(eq.a), from_target(eq.x), from_target(eq.b)), trace)
        return CornerSolution(to_target(sol.y), to_target(sol.z))

    return Solver(corner, oracle, name=f"{slv.name}@M{size}")


def retarget_solver(slv: Solver, ring: Ring) -> Solver:
    """Re-read a solver over another ring with identical payloads (e.g. M_n(pAp)
    inside M_n(A))."""
    src = slv.ring
    corner = SkewCorner(Elem(ring, slv.p.v), Elem(ring, slv.q.v))

    def oracle(eq: CornerEquation, trace) -> CornerSolution:
        sol = slv.solve(CornerEquation(Elem(src, eq.a.v), Elem(src, eq.x.v), Elem(src, eq.b.v)), trace)
        return CornerSolution(Elem(ring, sol.y.v), Elem(ring, sol.z.v))

    return Solver(corner, oracle, name=slv.name)


# ---------------------------------------------------------------------------
# rows <-> the skew corner 1_A M_n(A)
# ---------------------------------------------------------------------------


def lemma1_corner(A: Ring, n: int) -> SkewCorner:
    M = MatrixRing(A, n)
    return SkewCorner(M.unit(0, 0), M.one)


def lemma1_forward(red: Reducer) -> Solver:
    """Solver for the skew corner (1_A, n.1_A) of M_n(A) from a rank-n Reducer."""
    A, n = red.ring, red.rank
    corner = lemma1_corner(A, n)
    M = corner.ring

    def oracle(eq: CornerEquation, trace) -> CornerSolution:
        a = [Elem(A, eq.a.v[0][i]) for i in range(n)]
        b = Elem(A, eq.b.v[0][0])
        _note(trace, "lemma1.forward", n=n)
        r = red.reduce(a + [b], trace)
        zeta = M.from_entries({(0, i): c.v for i, c in enumerate(r.c)})
        xi = M.from_entries({(i, 0): z.v for i, z in enumerate(r.z)})
        return CornerSolution(Elem(M, zeta), Elem(M, xi))

    return Solver(corner, oracle, name="lemma1.forward")


def lemma1_backward(slv: Solver) -> Reducer:
    """Rank-n Reducer for A from a Solver on (1_A, n.1_A) in M_n(A)."""
    M = slv.ring
    if not isinstance(M, MatrixRing):
        raise RingError("lemma1_backward needs a solver over M_n(A)")
    A, n = M.base, M.n
    if slv.corner != lemma1_corner(A, n):
        raise RingError("solver is not for the corner (1_A, n.1_A)")

    def oracle(row: tuple[Elem, ...], trace) -> Reduction:
        *a, b = row
        xs = solve_right_inverse(list(row))
        if xs is None:
            raise RingError("row is not right unimodular")
        x = xs[-1]
        bx = b * x
        alpha = Elem(M, M.from_entries({(0, i): ai.v for i, ai in enumerate(a)}))
        chi = Elem(M, M.from_entries({(i, 0): xs[i].v for i in range(n)}))
        beta = Elem(M, M.from_entries({(0, 0): bx.v}))
        _note(trace, "lemma1.backward", n=n, x=x)
        sol = slv.solve(CornerEquation(alpha, chi, beta), trace)
        c = tuple(x * Elem(A, sol.y.v[0][i]) for i in range(n))
        z = tuple(Elem(A, sol.z.v[i][0]) for i in range(n))
        return Reduction(c, z)

    return Reducer(A, n, oracle, name="lemma1.backward")


# ---------------------------------------------------------------------------
# moving stable rank one between skew corners
# ---------------------------------------------------------------------------


def lemma2a_witness(slv: Solver) -> EquivalenceWitness:
    """(a, b) with a in pAq, b in qAp and ab = p, from the probe 0*0 + p = p."""
    p = slv.p
    R = slv.ring
    sol = slv.solve(CornerEquation(R.zero, R.zero, p))
    a, b = p * sol.y, sol.z * p
    _require(a * b == p, "lemma2a_witness: ab == p")
    return EquivalenceWitness(a, b)


def lemma2b_transport(slv: Solver, pw: EquivalenceWitness, qw: EquivalenceWitness) -> Solver:
    """Solver for (p', q') from one for (p, q), given p ~ p' via (u, u') and
    q ~ q' via (v, v')."""
    p, q = slv.p, slv.q
    u, u2 = pw.a, pw.b
    v, v2 = qw.a, qw.b
    p2, q2 = u2 * u, v2 * v
    if not (pw.check(p, p2) and qw.check(q, q2)):
        raise RingError("lemma2b_transport: witnesses are not equivalences")
    corner = SkewCorner(p2, q2)

    def oracle(eq: CornerEquation, trace) -> CornerSolution:
        _note(trace, "lemma2b.transport")
        moved = CornerEquation(u * eq.a * v2, v * eq.x * u2, u * eq.b * u2)
        sol = slv.solve(moved, trace)
        return CornerSolution(u2 * sol.y * v, v2 * sol.z * u)

    return Solver(corner, oracle, name="lemma2b")


def lemma3_extend(slv: Solver, s: Elem) -> Solver:
    """Solver for (p, q + s) from one for (p, q), where s is orthogonal to q."""
    p, q = slv.p, slv.q
    if s * s != s or not orthogonal(s, q):
        raise RingError("lemma3_extend needs an idempotent s orthogonal to q")
    qs = q + s
    corner = SkewCorner(p, qs)

    def oracle(eq: CornerEquation, trace) -> CornerSolution:
        a, x, b = eq.a, eq.x, eq.b
        sol = slv.solve(CornerEquation(a * q, q * x, b + a * s * x), trace)
        y, z = sol.y, sol.z
        sxy = s * x * y
        u, ui = qs + sxy, qs - sxy
        _require(u * ui == qs and ui * u == qs, "lemma3_extend: (q+s+sxy)(q+s-sxy) == q+s")
        _note(trace, "lemma3.extend", unit=u)
        return CornerSolution(y * ui, u * z)

    return Solver(corner, oracle, name="lemma3")


def lemma4_restrict(slv: Solver, r: Elem) -> Solver:
    """Solver for (p, q) from one for (p + r, q + r), with r orthogonal to p, q."""
    p, q = slv.p - r, slv.q - r
    if r * r != r or p * p != p or q * q != q or not (orthogonal(p, r) and orthogonal(q, r)):
        raise RingError("lemma4_restrict needs r orthogonal to p and q")
    corner = SkewCorner(p, q)

    def oracle(eq: CornerEquation, trace) -> CornerSolution:
        a, x, b = eq.a, eq.x, eq.b
        _note(trace, "lemma4.restrict")
        sol = slv.solve(CornerEquation(a + r, x + r, b), trace)
        y, z = sol.y, sol.z
        _require(r * z == r, "lemma4_restrict: rz == r")
        _require((a + b * y) * z == p, "lemma4_restrict: (a+by)z == p")
        return CornerSolution(p * y * q, z * p)

    return Solver(corner, oracle, name="lemma4")


# ---------------------------------------------------------------------------
# adding an equivalent idempotent to both sides
# ---------------------------------------------------------------------------


def prop6_combine(slv: Solver, equiv_pr: EquivalenceWitness, r: Elem) -> Solver:
    """Solver for (p + r, q + r) from one for (p, q), with p ~ r and r
    orthogonal to p and q.  ``equiv_pr`` = (u, u') with u in pAr, u' in rAp."""
    p, q = slv.p, slv.q
    if not (orthogonal(p, r) and orthogonal(q, r)):
        raise RingError("prop6 needs r orthogonal to p and q")
    if not equiv_pr.check(p, r):
        raise RingError("prop6 needs a witness for p ~ r")
    if leq(p, q):
        return _prop6_base(slv, equiv_pr, r)

    # replace p by p' = (zp)(py) <= q, then move back along p' + r ~ p + r
    w = lemma2a_witness(slv)
    p2 = w.derived()
    to_p2 = lemma2b_transport(slv, w, EquivalenceWitness(q, q))
    inner = _prop6_base(to_p2, w.inverse().then(equiv_pr), r)
    back = EquivalenceWitness(w.b + r, w.a + r)
    _require(back.check(p2 + r, p + r), "prop6: p'+r ~ p+r")
    return lemma2b_transport(inner, back, EquivalenceWitness(q + r, q + r))


def _prop6_base(slv: Solver, equiv_pr: EquivalenceWitness, r: Elem) -> Solver:
    p, q = slv.p, slv.q
    P, Q = p + r, q + r
    corner = SkewCorner(P, Q)
    slv_rq = lemma2b_transport(slv, equiv_pr, EquivalenceWitness(q, q))

    def oracle(eq: CornerEquation, trace) -> CornerSolution:
        backs: list[BackMap] = []

        def apply(step: Obs5Step, cur: CornerEquation) -> CornerEquation:
            _, new, back = obs5_apply(step, cur)
            backs.append(back)
            _note(trace, f"prop6.{step.kind}", **({"c": step.c} if step.c is not None else {"unit": step.unit}))
            return new

        cur = eq
        a, x, b = cur.a, cur.x, cur.b
        # (i) solve the r-row and make r a z1 = r
        r_eq = CornerEquation(r * a * q, q * x * r, r * a * r * x * r + r * b * r)
        s1 = slv_rq.solve(r_eq, trace)
        y1, z1 = s1.y, s1.z
        n1 = r * x * y1
        _require(n1 * n1 == r.ring.zero, "prop6: (r x y1)^2 == 0")
        cur = apply(Obs5Step("right_unit", corner, unit=Q + n1, unit_inverse=Q - n1), cur)
        cur = apply(Obs5Step("shift", corner, c=y1), cur)
        _require(r * cur.a * z1 == r, "prop6: r a z1 == r")

        # (ii) right unit [[q, z1(r - rar)], [0, r]] forces rar = r
        a = cur.a
        m = z1 * (r - r * a * r)
        cur = apply(Obs5Step("right_unit", corner, unit=Q + m, unit_inverse=Q - m), cur)
        _require(r * cur.a * r == r, "prop6: rar == r")

        # (iii) left unit [[p, -par], [0, r]] forces par = 0
        m2 = p * cur.a * r
        cur = apply(Obs5Step("left_unit", corner, unit=P - m2, unit_inverse=P + m2), cur)
        _require((p * cur.a * r).is_zero(), "prop6: par == 0")

        # (iv) solve the p-row, then write down z directly
        a, x, b = cur.a, cur.x, cur.b
        s2 = slv.solve(CornerEquation(p * a * q, q * x * p, p * b * p), trace)
        y2, z2 = s2.y, s2.z
        cur = apply(Obs5Step("shift", corner, c=y2), cur)
        a = cur.a
        z = z2 - r * a * z2 + r
        _require(a * z == P, "prop6: az == p + r")
        _note(trace, "prop6.z", z=z)

        sol = CornerSolution(r.ring.zero, z)
        for back in reversed(backs):
            sol = back(sol)
        return sol

    return Solver(corner, oracle, name="prop6")


def _block_iso(M: MatrixRing, block: int, shift: int, count: int) -> Elem:
    """Partial isometry with identity blocks at (i, i + shift), i < count."""
    one = M.base.one_v
    return Elem(
        M,
        M.from_entries({(i * block + t, (i + shift) * block + t): one for i in range(count) for t in range(block)}),
    )


def _transpose(e: Elem) -> Elem:
    return Elem(e.ring, tuple(zip(*e.v)))


def prop6_double(
    slv: Solver,
    r: Elem,
    k: int,
    subeq: EquivalenceWitness,
    trace: PipelineTrace | None = None,
) -> Solver:
    """Solver for (p + r, q + r) from one for (p, q) over R = M_N(base), p <= q,
    r orthogonal to p and q, and r <~ k.p.

    ``subeq`` = (a, b) lives in M_{kN}(base): a in r M (k.p), b in (k.p) M r,
    ab = r, where k.p = diag(p, ..., p) in N x N blocks.  The construction
    doubles p m times with 2^m - 1 >= k, trades the copies for r plus padding
    s in fresh blocks, and cuts s away again.
    """
    R = slv.ring
    if not isinstance(R, MatrixRing):
        raise RingError("prop6_double works over a matrix ring M_N(base)")
    N, base = R.n, R.base
    p, q = slv.p, slv.q
    if not leq(p, q):
        raise RingError("prop6_double expects p <= q (use prop6_combine first)")
    if r.is_zero():
        if trace is not None:
            trace.add("prop6.identity")
        return slv
    if not (orthogonal(p, r) and orthogonal(q, r)):
        raise RingError("prop6 needs r orthogonal to p and q")
    if k < 1:
        raise RingError("k must be positive")
    if k == 1 and subeq.a.ring == R and subeq.check(r, p, full=True):
        if trace is not None:
            trace.add("prop6.combine", r=r)
        return prop6_combine(slv, EquivalenceWitness(subeq.b, subeq.a), r)

    m = max(1, math.ceil(math.log2(k + 1)))
    while 2**m - 1 < k:
        m += 1
    big_n = 2 ** (m + 1) * N
    big = MatrixRing(base, big_n)
    if not isinstance(subeq.a.ring, MatrixRing) or subeq.a.ring.n != k * N:
        raise RingError(f"subequivalence witness must live in M_{k * N}")
    up = lambda e: Elem(big, embed_v(e.v, big_n, base.zero_v))  # noqa: E731
    pb, qb, rb = up(p), up(q), up(r)
    wa, wb = up(subeq.a), up(subeq.b)
    if not (wa * wb == rb and rb * wa == wa and wb * rb == wb):
        raise RingError("subequivalence witness does not give ab = r")
    if trace is not None:
        trace.add("prop6.double", m=m, ambient_size=big_n, block=N, k=k)

    cur = resize_solver(slv, big_n)
    left, right = pb, qb
    for j in range(m):
        d = 2**j
        S = _block_iso(big, N, d, d)
        u, u2 = left * S, _transpose(S) * left
        rj = u2 * u
        cur = prop6_combine(cur, EquivalenceWitness(u, u2), rj)
        left, right = left + rj, right + rj
    copies = left - pb  # (2^m - 1) copies of p in blocks 1 .. 2^m - 1

    S1 = _block_iso(big, N, 1, k)
    a1, b1 = wa * S1, _transpose(S1) * wb
    _require(a1 * b1 == rb, "prop6: shifted witness still gives r")
    r1 = b1 * a1
    r2 = copies - r1
    Sm = _block_iso(big, N, 2**m, 2**m)
    s = _transpose(Sm) * r2 * Sm
    U, U2 = b1 + r2 * Sm, a1 + _transpose(Sm) * r2
    _require(U * U2 == copies and U2 * U == rb + s, "prop6: copies ~ r + s")
    if trace is not None:
        trace.add("prop6.split", r_prime=r1, r_second=r2, s=s)
    moved = lemma2b_transport(
        cur, EquivalenceWitness(pb + U, pb + U2), EquivalenceWitness(qb + U, qb + U2)
    )
    cut = lemma4_restrict(moved, s)
    return resize_solver(cut, N)


# ---------------------------------------------------------------------------
# full corners
# ---------------------------------------------------------------------------


def theorem7_pipeline(
    source: Reducer | Solver,
    cert: FullnessCertificate,
    trace: PipelineTrace | None = None,
) -> Reducer:
    """Rank-n Reducer for A from a rank-n Reducer for pAp (or a Solver for
    (p, n.p) in M_n(A)) and a fullness certificate for p.

    The ambient ring is M_L(A) with L = n + t - 1 (prop6_double enlarges it
    further when t > 2).  Slots 0..n-1 hold n.p, slots n..L-1 hold the copies
    r ~ (t-1).p.
    """
    if not cert.check():
        raise RingError("fullness certificate does not satisfy sum x_i p y_i = 1")
    p = cert.p
    A, t = p.ring, cert.t
    if trace is None:
        trace = PipelineTrace()
    if isinstance(source, Reducer):
        n = source.rank
        B = source.ring
        if not (isinstance(B, CornerRing) and B.ambient == A and B.p == p.v):
            raise RingError("the Reducer must be over the corner ring pAp")
        slv0 = retarget_solver(lemma1_forward(source), MatrixRing(A, n))
        trace.add("lemma1.forward", n=n)
    else:
        slv0 = source
        M = slv0.ring
        if not (isinstance(M, MatrixRing) and M.base == A):
            raise RingError("the Solver must be over M_n(A)")
        n = M.n
    Mn = MatrixRing(A, n)
    pv = p.v
    if slv0.corner != SkewCorner(Mn.unit(0, 0, p), Mn.diag([p] * n)):
        raise RingError("source solver must be for the corner (p, n.p)")

    L = n + t - 1
    R = MatrixRing(A, L)
    trace.add("ambient", size=L, n=n, t=t)

    def slot(e, *idx):
        return Elem(R, R.from_entries({(i, i): e for i in idx}))

    slv1 = resize_solver(slv0, L)
    r = slot(pv, *range(n, L))
    k = t - 1
    if k:
        W = MatrixRing(A, k * L)
        wa = Elem(W, W.from_entries({(n + i, i * L): pv for i in range(k)}))
        wb = Elem(W, W.from_entries({(i * L, n + i): pv for i in range(k)}))
        slv2 = prop6_double(slv1, r, k, EquivalenceWitness(wa, wb), trace)
    else:
        slv2 = slv1
    trace.add("prop6", left=slv2.p, right=slv2.q)

    sigma = [0] + list(range(n, L))
    alpha = Elem(R, R.from_entries({(0, s): (x * p).v for s, (x, _) in zip(sigma, cert.pairs)}))
    beta = Elem(R, R.from_entries({(s, 0): (p * y).v for s, (_, y) in zip(sigma, cert.pairs)}))
    E0 = R.unit(0, 0)
    _require(alpha * beta == E0, "theorem7: alpha beta == 1_A")
    e = beta * alpha
    f = slv2.p - e
    g = slot(pv, *range(1, n))
    _require(e * e == e and orthogonal(e, f) and e + f + g == slv2.q, "theorem7: t.p = e + f, e + f + g")
    trace.add("split", e=e, f=f, g=g)

    slv3 = lemma4_restrict(slv2, f)
    h = slot(A.sub(A.one_v, pv), *range(1, n))
    slv4 = lemma3_extend(slv3, h)
    trace.add("lemma3.extend", h=h)
    G = slot(A.one_v, *range(1, n))
    slv5 = lemma2b_transport(slv4, EquivalenceWitness(beta, alpha), EquivalenceWitness(beta + G, alpha + G))
    trace.add("lemma2b.transport", alpha=alpha, beta=beta)
    slv6 = resize_solver(slv5, n)
    trace.add("lemma1.backward", n=n)
    red = lemma1_backward(slv6)
    red.name = "theorem7"
    red.trace = trace
    return red


def theorem8_construct(p: Elem, pairs: Sequence[tuple[Elem, Elem]]) -> dict:
    """Build alpha, beta and q = beta alpha from sum a_i p b_i = 1.

    Returns a dict with the elements and the checks: q idempotent, the
    fullness identity (n.p) alpha q beta (n.p) = p, and the equivalence
    witness q ~ 1_A.
    """
    A = p.ring
    total = A.zero
    for a, b in pairs:
        total = total + a * p * b
    if total != A.one:
        raise RingError("theorem8_construct needs sum a_i p b_i = 1")
    n = len(pairs)
    M = MatrixRing(A, n)
    alpha = Elem(M, M.from_entries({(0, i): (a * p).v for i, (a, _) in enumerate(pairs)}))
    beta = Elem(M, M.from_entries({(i, 0): (p * b).v for i, (_, b) in enumerate(pairs)}))
    npv = M.diag([p] * n)
    q = beta * alpha
    E0 = M.unit(0, 0)
    P0 = M.unit(0, 0, p)
    equiv = EquivalenceWitness(beta, alpha)
    checks = {
        "alpha_beta_is_1": alpha * beta == E0,
        "alpha_in_corner": E0 * alpha * npv == alpha,
        "beta_in_corner": npv * beta * E0 == beta,
        "idempotent": q * q == q,
        "in_Mn_pAp": npv * q * npv == q,
        "full": npv * alpha * q * beta * npv == P0,
        "equivalent_to_1": equiv.check(q, E0),
    }
    return {"alpha": alpha, "beta": beta, "q": q, "n": n, "witness": equiv, "checks": checks}


def theorem8_bound(sr_A: int, n: int) -> int:
    return n * sr_A - n + 1


def vaserstein_bound(sr_A: int, n: int) -> int:
    """ceil((sr(A) - 1)/n) + 1, the stable rank of M_n(A)."""
    if sr_A < 1 or n < 1:
        raise ValueError("inputs must be positive")
    return -(-(sr_A - 1) // n) + 1


def morita_bounds(n: int, t: int, sr_A: int, sr_B: int) -> tuple[int, int]:
    """(n sr(B) - n + 1, t sr(A) - t + 1): bounds on sr(A) and on sr(B)."""
    if min(n, t, sr_A, sr_B) < 1:
        raise ValueError("inputs must be positive")
    return n * sr_B - n + 1, t * sr_A - t + 1


__all__ = [
    "InvariantViolation",
    "PipelineTrace",
    "Obs5Step",
    "obs5_apply",
    "resize_solver",
    "retarget_solver",
    "lemma1_corner",
    "lemma1_forward",
    "lemma1_backward",
    "lemma2a_witness",
    "lemma2b_transport",
    "lemma3_extend",
    "lemma4_restrict",
    "prop6_combine",
    "prop6_double",
    "theorem7_pipeline",
    "theorem8_construct",
    "theorem8_bound",
    "vaserstein_bound",
    "morita_bounds",
    "WitnessError",
]
