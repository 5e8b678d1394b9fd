"""Idempotent relations: orthogonality, order, (sub)equivalence, fullness."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .rings import Elem, EnumerationError, MatrixRing, Ring, RingError, skew_set


class Idempotent(Elem):
    """An element e with e*e == e."""

    __slots__ = ()

    def __init__(self, ring: Ring, v) -> None:
        if ring.mul(v, v) != v:
            raise RingError(f"{ring.to_literal(v)!r} is not idempotent")
        super().__init__(ring, v)

    @classmethod
    def of(cls, e: Elem) -> "Idempotent":
        return e if isinstance(e, Idempotent) else cls(e.ring, e.v)


def _same_owner(p: Elem, q: Elem) -> Ring:
    if p.ring != q.ring:
        raise RingError(f"owner mismatch: {p.ring!r} vs {q.ring!r}")
    return p.ring


@dataclass(frozen=True)
class EquivalenceWitness:
    """a in pAq and b in qAp with ab = p (and ba = q for a full equivalence)."""

    a: Elem
    b: Elem

    def check(self, p: Elem, q: Elem, full: bool = True) -> bool:
        a, b = self.a, self.b
        ok = a == p * a * q and b == q * b * p and a * b == p
        return ok and (not full or b * a == q)

    def derived(self) -> Elem:
        """The idempotent ba, which is <= q and equivalent to p."""
        return self.b * self.a

    def inverse(self) -> "EquivalenceWitness":
        return EquivalenceWitness(self.b, self.a)

    def then(self, other: "EquivalenceWitness") -> "EquivalenceWitness":
        """Compose p~q (self) with q~r (other) into p~r."""
        return EquivalenceWitness(self.a * other.a, other.b * self.b)


def orthogonal(p: Elem, q: Elem) -> bool:
    _same_owner(p, q)
    return (p * q).is_zero() and (q * p).is_zero()


def leq(p: Elem, q: Elem) -> bool:
    _same_owner(p, q)
    return p == p * q and p == q * p


def _search(p: Elem, q: Elem, full: bool) -> EquivalenceWitness | None:
    R = _same_owner(p, q)
    if not R.finite:
        raise EnumerationError(f"witness search needs a finite ring, got {R!r}")
    mul = R.mul
    pv, qv = p.v, q.v
    left = skew_set(R, pv, qv)
    right = skew_set(R, qv, pv)
    for a in left:
        for b in right:
            if mul(a, b) == pv and (not full or mul(b, a) == qv):
                return EquivalenceWitness(Elem(R, a), Elem(R, b))
    return None


def equivalent(p: Elem, q: Elem) -> EquivalenceWitness | None:
    """Witness for p ~ q, by exhaustive search in enumeration order."""
    if p == q:
        return EquivalenceWitness(p, p)
    return _search(p, q, full=True)


def subequivalent(p: Elem, q: Elem) -> EquivalenceWitness | None:
    """Witness (a, b) with a in pAq, b in qAp and ab = p."""
    if leq(p, q):
        return EquivalenceWitness(p, p)
    return _search(p, q, full=False)


@dataclass(frozen=True)
class FullnessCertificate:
    """Pairs (x_i, y_i) with sum x_i p y_i = 1; t is the number of pairs."""

    p: Elem
    pairs: tuple[tuple[Elem, Elem], ...]

    @property
    def t(self) -> int:
        return len(self.pairs)

    def check(self) -> bool:
        p = self.p
        total = p.ring.zero
        for x, y in self.pairs:
            total = total + x * p * y
        return total == p.ring.one

    def witness(self) -> tuple[MatrixRing, Elem, EquivalenceWitness]:
        """Witness for 1 <~ t.p inside M_t(A): a row alpha and a column beta.

        Returns ``(M_t(A), t.p, witness)`` where ``witness.a`` lies in
        1 M_t(A) (t.p) and ``witness.b`` in (t.p) M_t(A) 1.
        """
        p = self.p
        A = p.ring
        M = MatrixRing(A, self.t)
        alpha = M.from_entries({(0, i): (x * p).v for i, (x, _) in enumerate(self.pairs)})
        beta = M.from_entries({(i, 0): (p * y).v for i, (_, y) in enumerate(self.pairs)})
        return M, n_times(self.t, p), EquivalenceWitness(Elem(M, alpha), Elem(M, beta))


def is_full(p: Elem) -> FullnessCertificate | None:
    """Certificate that ApA = A, with the fewest terms, or None.

    Breadth-first search over sums of products x p y; the first layer reaching
    1 gives the smallest t with 1 <~ t.p witnessed by those terms.
    """
    R = p.ring
    if not R.finite:
        raise EnumerationError("fullness search needs a finite ring; supply a certificate")
    if p == R.one:
        return FullnessCertificate(p, ((R.one, R.one),))
    elems = R.elements()
    mul, add = R.mul, R.add
    gens: dict = {}
    for x in elems:
        xp = mul(x, p.v)
        for y in elems:
            gens.setdefault(mul(xp, y), (x, y))
    gens.pop(R.zero_v, None)
    terms: dict = {R.zero_v: ()}
    queue = deque([R.zero_v])
    while queue:
        e = queue.popleft()
        for g, xy in gens.items():
            s = add(e, g)
            if s not in terms:
                terms[s] = terms[e] + (xy,)
                if s == R.one_v:
                    pairs = tuple((Elem(R, x), Elem(R, y)) for x, y in terms[s])
                    return FullnessCertificate(p, pairs)
                queue.append(s)
    return None


def direct_sum(p: Elem, q: Elem) -> Idempotent:
    """diag(p, q) in M_2(A)."""
    R = _same_owner(p, q)
    M = MatrixRing(R, 2)
    return Idempotent(M, M.diag_v([p.v, q.v]))


def n_times(n: int, p: Elem) -> Idempotent:
    """diag(p, ..., p) in M_n(A)."""
    if n < 1:
        raise RingError(f"n must be positive, got {n}")
    M = MatrixRing(p.ring, n)
    return Idempotent(M, M.diag_v([p.v] * n))


def enumerate_idempotents(A: Ring) -> list[Idempotent]:
    mul = A.mul
    return [Idempotent(A, e) for e in A.elements() if mul(e, e) == e]

