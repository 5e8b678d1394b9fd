"""Exact ring descriptors and elements.

A ring descriptor owns the arithmetic; elements carry a canonical, hashable
payload (an ``int`` for ``Z/m`` and ``Z``, nested tuples for matrices,
tuples for products, ambient payloads for corners).  Hot loops work on raw
payloads through ``ring.add`` / ``ring.mul``; :class:`Elem` wraps a payload
with operator overloading for readable algebra.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Any, Callable, Iterable, Sequence

ENUMERATION_CAP = 1 << 17
MEMO_CAP = 4096


class RingError(ValueError):
    """Invalid ring construction or element literal."""


class EnumerationError(RuntimeError):
    """Raised when a ring cannot be enumerated (infinite or over the cap)."""


class Ring:
    """Base class.  Subclasses implement ``_add``, ``_mul``, ``neg`` and the
    enumeration hooks; finite rings of modest size memoize products."""

    cardinality: int | None = None
    zero_v: Any
    one_v: Any

    def __init__(self) -> None:
        self._elements: list | None = None
        self._index: dict | None = None
        self._memo: dict | None = None

    # -- arithmetic on payloads -------------------------------------------
    def add(self, x, y):
        return self._add(x, y)

    def sub(self, x, y):
        return self._add(x, self.neg(y))

    def mul(self, x, y):
        memo = self._memo
        if memo is None:
            return self._mul(x, y)
        key = (x, y)
        r = memo.get(key)
        if r is None:
            r = memo[key] = self._mul(x, y)
        return r

    def _enable_memo(self) -> None:
        if self.cardinality is not None and self.cardinality <= MEMO_CAP:
            self._memo = {}

    def is_zero(self, x) -> bool:
        return x == self.zero_v

    # -- identity ------------------------------------------------------------
    @property
    def key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ring) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"{type(self).__name__}{self.key[1:]}"

    @property
    def finite(self) -> bool:
        return self.cardinality is not None

    # -- enumeration -----------------------------------------------------------
    def elements(self, cap: int = ENUMERATION_CAP) -> list:
        """All payloads in the ring's fixed enumeration order."""
        if self._elements is None:
            if self.cardinality is None:
                raise EnumerationError(f"{self!r} is infinite; enumeration unsupported")
            if self.cardinality > cap:
                raise EnumerationError(
                    f"{self!r} has {self.cardinality} elements, above the cap {cap}"
                )
            self._elements = list(self._enumerate())
        return self._elements

    def _enumerate(self) -> Iterable:
        raise EnumerationError(f"{self!r} cannot be enumerated")

    def index(self, x) -> int:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements())}
        return self._index[x]

    def additive_generators(self) -> list:
        """A finite set generating the additive group (finite rings only)."""
        return self.elements()

    # -- literals ----------------------------------------------------------------
    def from_literal(self, lit):
        raise NotImplementedError

    def to_literal(self, x):
        raise NotImplementedError

    def spec(self) -> dict:
        raise NotImplementedError

    def contains(self, x) -> bool:
        try:
            return self.from_literal(self.to_literal(x)) == x
        except (RingError, TypeError, ValueError, IndexError):
            return False

    # -- element wrappers --------------------------------------------------------
    def __call__(self, lit) -> "Elem":
        return Elem(self, self.from_literal(lit))

    def elem(self, payload) -> "Elem":
        return Elem(self, payload)

    @property
    def zero(self) -> "Elem":
        return Elem(self, self.zero_v)

    @property
    def one(self) -> "Elem":
        return Elem(self, self.one_v)

    def all_elems(self) -> list["Elem"]:
        return [Elem(self, e) for e in self.elements()]


class Elem:
    """A ring element: owner descriptor plus canonical payload."""

    __slots__ = ("ring", "v")

    def __init__(self, ring: Ring, v) -> None:
        self.ring = ring
        self.v = v

    def _other(self, other) -> Any:
        if isinstance(other, Elem):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingError(f"owner mismatch: {self.ring!r} vs {other.ring!r}")
            return other.v
        if isinstance(other, int) and other in (0, 1):
            return self.ring.zero_v if other == 0 else self.ring.one_v
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Elem(self.ring, self.ring.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Elem(self.ring, self.ring.sub(self.v, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Elem(self.ring, self.ring.sub(o, self.v))

    def __neg__(self):
        return Elem(self.ring, self.ring.neg(self.v))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Elem(self.ring, self.ring.mul(self.v, o))

    def __rmul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Elem(self.ring, self.ring.mul(o, self.v))

    def __eq__(self, other) -> bool:
        if isinstance(other, Elem):
            return self.v == other.v and self.ring == other.ring
        if isinstance(other, int) and other in (0, 1):
            return self.v == (self.ring.zero_v if other == 0 else self.ring.one_v)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.v)

    def is_zero(self) -> bool:
        return self.v == self.ring.zero_v

    @property
    def literal(self):
        return self.ring.to_literal(self.v)

    def __repr__(self) -> str:
        return f"Elem({self.literal!r})"


# ---------------------------------------------------------------------------
# Concrete rings
# ---------------------------------------------------------------------------


class ZMod(Ring):
    def __init__(self, m: int) -> None:
        super().__init__()
        if not isinstance(m, int) or m < 2:
            raise RingError(f"invalid modulus {m!r}; need an integer m >= 2")
        self.m = m
        self.cardinality = m
        self.zero_v, self.one_v = 0, 1

    @property
    def key(self) -> tuple:
        return ("zmod", self.m)

    def _add(self, x, y):
        return (x + y) % self.m

    def neg(self, x):
        return (-x) % self.m

    def mul(self, x, y):
        return (x * y) % self.m

    _mul = mul

    def _enumerate(self):
        return range(self.m)

    def index(self, x) -> int:
        return x

    def additive_generators(self) -> list:
        return [1]

    def from_literal(self, lit):
        if isinstance(lit, bool) or not isinstance(lit, int):
            raise RingError(f"zmod literal must be an integer, got {lit!r}")
        return lit % self.m

    def to_literal(self, x):
        return x

    def spec(self) -> dict:
        return {"type": "zmod", "m": self.m}


class Integers(Ring):
    def __init__(self) -> None:
        super().__init__()
        self.zero_v, self.one_v = 0, 1

    @property
    def key(self) -> tuple:
        return ("integers",)

    def _add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    _mul = mul

    def from_literal(self, lit):
        if isinstance(lit, bool) or not isinstance(lit, int):
            raise RingError(f"integer literal expected, got {lit!r}")
        return lit

    def to_literal(self, x):
        return x

    def spec(self) -> dict:
        return {"type": "integers"}


class MatrixRing(Ring):
    """n x n matrices over ``base``; payload is a tuple of row tuples."""

    def __init__(self, base: Ring, n: int) -> None:
        super().__init__()
        if not isinstance(n, int) or n < 1:
            raise RingError(f"matrix size must be a positive integer, got {n!r}")
        self.base = base
        self.n = n
        if base.cardinality is not None:
            self.cardinality = base.cardinality ** self._free_entries()
        z, o = base.zero_v, base.one_v
        self.zero_v = tuple(tuple(z for _ in range(n)) for _ in range(n))
        self.one_v = tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))
        self._enable_memo()

    def _free_entries(self) -> int:
        return self.n * self.n

    def _positions(self) -> list[tuple[int, int]]:
        n = self.n
        return [(i, j) for i in range(n) for j in range(n)]

    @property
    def key(self) -> tuple:
        return ("matrix", self.base.key, self.n)

    def _add(self, x, y):
        add = self.base.add
        return tuple(tuple(add(a, b) for a, b in zip(r, s)) for r, s in zip(x, y))

    def neg(self, x):
        neg = self.base.neg
        return tuple(tuple(neg(a) for a in r) for r in x)

    def _mul(self, x, y):
        B = self.base
        z = B.zero_v
        n = self.n
        out = []
        for xi in x:
            row = [z] * n
            for k, xik in enumerate(xi):
                if xik == z:
                    continue
                yk = y[k]
                for j in range(n):
                    ykj = yk[j]
                    if ykj == z:
                        continue
                    row[j] = B.add(row[j], B.mul(xik, ykj))
            out.append(tuple(row))
        return tuple(out)

    def _enumerate(self):
        pos = self._positions()
        n, z = self.n, self.base.zero_v
        for combo in itertools.product(self.base.elements(), repeat=len(pos)):
            rows = [[z] * n for _ in range(n)]
            for (i, j), v in zip(pos, combo):
                rows[i][j] = v
            yield tuple(tuple(r) for r in rows)

    def index(self, x) -> int:
        idx = 0
        q = self.base.cardinality
        bi = self.base.index
        for i, j in self._positions():
            idx = idx * q + bi(x[i][j])
        return idx

    def additive_generators(self) -> list:
        return [self.unit_v(i, j, g) for i, j in self._positions() for g in self.base.additive_generators()]

    def from_literal(self, lit):
        n = self.n
        if not isinstance(lit, (list, tuple)) or len(lit) != n or any(
            not isinstance(r, (list, tuple)) or len(r) != n for r in lit
        ):
            raise RingError(f"expected a {n}x{n} nested list, got {lit!r}")
        return tuple(tuple(self.base.from_literal(v) for v in r) for r in lit)

    def to_literal(self, x):
        return [[self.base.to_literal(v) for v in r] for r in x]

    def spec(self) -> dict:
        return {"type": "matrix", "n": self.n, "base": self.base.spec()}

    # -- construction helpers ----------------------------------------------------
    def from_entries(self, entries: dict[tuple[int, int], Any]):
        """Payload with the given base payloads at (row, col); zero elsewhere."""
        z = self.base.zero_v
        rows = [[z] * self.n for _ in range(self.n)]
        for (i, j), v in entries.items():
            rows[i][j] = v
        return tuple(tuple(r) for r in rows)

    def unit_v(self, i: int, j: int, value=None):
        return self.from_entries({(i, j): self.base.one_v if value is None else value})

    def diag_v(self, values: Sequence):
        return self.from_entries({(i, i): v for i, v in enumerate(values)})

    def unit(self, i: int, j: int, value: Elem | None = None) -> Elem:
        return Elem(self, self.unit_v(i, j, None if value is None else value.v))

    def diag(self, values: Sequence[Elem]) -> Elem:
        return Elem(self, self.diag_v([v.v for v in values]))

    def entry(self, x: Elem, i: int, j: int) -> Elem:
        return Elem(self.base, x.v[i][j])


class UpperTriangularRing(MatrixRing):
    """Upper-triangular n x n matrices over ``base`` (a subring of M_n)."""

    def _free_entries(self) -> int:
        return self.n * (self.n + 1) // 2

    def _positions(self) -> list[tuple[int, int]]:
        n = self.n
        return [(i, j) for i in range(n) for j in range(i, n)]

    @property
    def key(self) -> tuple:
        return ("upper_triangular", self.base.key, self.n)

    def from_literal(self, lit):
        x = super().from_literal(lit)
        z = self.base.zero_v
        if any(x[i][j] != z for i in range(self.n) for j in range(i)):
            raise RingError(f"{lit!r} is not upper triangular")
        return x

    def spec(self) -> dict:
        return {"type": "upper_triangular", "n": self.n, "base": self.base.spec()}


class ProductRing(Ring):
    def __init__(self, factors: Sequence[Ring]) -> None:
        super().__init__()
        if not factors:
            raise RingError("a product ring needs at least one factor")
        self.factors = tuple(factors)
        if all(f.cardinality is not None for f in self.factors):
            card = 1
            for f in self.factors:
                card *= f.cardinality
            self.cardinality = card
        self.zero_v = tuple(f.zero_v for f in self.factors)
        self.one_v = tuple(f.one_v for f in self.factors)
        self._enable_memo()

    @property
    def key(self) -> tuple:
        return ("product",) + tuple(f.key for f in self.factors)

    def _add(self, x, y):
        return tuple(f.add(a, b) for f, a, b in zip(self.factors, x, y))

    def neg(self, x):
        return tuple(f.neg(a) for f, a in zip(self.factors, x))

    def _mul(self, x, y):
        return tuple(f.mul(a, b) for f, a, b in zip(self.factors, x, y))

    def _enumerate(self):
        return itertools.product(*(f.elements() for f in self.factors))

    def index(self, x) -> int:
        idx = 0
        for f, a in zip(self.factors, x):
            idx = idx * f.cardinality + f.index(a)
        return idx

    def additive_generators(self) -> list:
        gens = []
        for k, f in enumerate(self.factors):
            for g in f.additive_generators():
                v = list(self.zero_v)
                v[k] = g
                gens.append(tuple(v))
        return gens

    def from_literal(self, lit):
        if not isinstance(lit, (list, tuple)) or len(lit) != len(self.factors):
            raise RingError(f"expected a list of {len(self.factors)} components, got {lit!r}")
        return tuple(f.from_literal(v) for f, v in zip(self.factors, lit))

    def to_literal(self, x):
        return [f.to_literal(a) for f, a in zip(self.factors, x)]

    def spec(self) -> dict:
        return {"type": "product", "factors": [f.spec() for f in self.factors]}


class CornerRing(Ring):
    """The corner pAp with identity p; payloads are ambient payloads e = pep."""

    def __init__(self, ambient: Ring, p) -> None:
        super().__init__()
        p = p.v if isinstance(p, Elem) else p
        if ambient.mul(p, p) != p:
            raise RingError(f"corner seed {ambient.to_literal(p)!r} is not idempotent")
        self.ambient = ambient
        self.p = p
        self.zero_v, self.one_v = ambient.zero_v, p
        if ambient.cardinality is not None:
            members = additive_span(ambient, [self.project(g) for g in ambient.additive_generators()])
            self._elements = sorted(members, key=ambient.index)
            self.cardinality = len(self._elements)
        self._enable_memo()

    @property
    def key(self) -> tuple:
        return ("corner", self.ambient.key, self.p)

    def project(self, e):
        a = self.ambient
        return a.mul(a.mul(self.p, e), self.p)

    def _add(self, x, y):
        return self.ambient.add(x, y)

    def neg(self, x):
        return self.ambient.neg(x)

    def _mul(self, x, y):
        return self.ambient.mul(x, y)

    def additive_generators(self) -> list:
        return self.elements()

    def from_literal(self, lit):
        e = self.ambient.from_literal(lit)
        if self.project(e) != e:
            raise RingError(f"{lit!r} does not lie in the corner pAp")
        return e

    def to_literal(self, x):
        return self.ambient.to_literal(x)

    def spec(self) -> dict:
        return {"type": "corner", "ambient": self.ambient.spec(), "p": self.ambient.to_literal(self.p)}


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def additive_span(ring: Ring, gens: Iterable) -> set:
    """Additive subgroup generated by ``gens`` in a finite ring (worklist closure)."""
    gens = [g for g in dict.fromkeys(gens) if g != ring.zero_v]
    seen = {ring.zero_v}
    queue = deque([ring.zero_v])
    while queue:
        e = queue.popleft()
        for g in gens:
            s = ring.add(e, g)
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return seen


def skew_set(ring: Ring, p, q) -> list:
    """The skew corner pAq of a finite ring, in enumeration order."""
    mul = ring.mul
    members = additive_span(ring, (mul(mul(p, g), q) for g in ring.additive_generators()))
    return sorted(members, key=ring.index)


def in_skew(ring: Ring, p, q, a) -> bool:
    return ring.mul(ring.mul(p, a), q) == a


def embed(a: Elem, N: int) -> Elem:
    """Place an element of M_n(base) in the upper-left block of M_N(base)."""
    R = a.ring
    if not isinstance(R, MatrixRing) or isinstance(R, UpperTriangularRing):
        raise RingError("embed needs an element of a full matrix ring")
    if N < R.n:
        raise RingError(f"cannot embed M_{R.n} into M_{N}")
    target = MatrixRing(R.base, N)
    return Elem(target, embed_v(a.v, N, R.base.zero_v))


def embed_v(x, N: int, zero, offset: int = 0):
    n = len(x)
    rows = [[zero] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            rows[offset + i][offset + j] = x[i][j]
    return tuple(tuple(r) for r in rows)


def restrict_v(x, n: int):
    """Upper-left n x n block of a matrix payload."""
    return tuple(tuple(r[:n]) for r in x[:n])


def ring_from_spec(spec: dict) -> Ring:
    """Build a ring from its JSON description."""
    if not isinstance(spec, dict) or "type" not in spec:
        raise RingError(f"ring spec must be an object with a 'type', got {spec!r}")
    kind = spec["type"]
    try:
        if kind == "zmod":
            return ZMod(spec["m"])
        if kind == "integers":
            return Integers()
        if kind == "matrix":
            return MatrixRing(ring_from_spec(spec["base"]), spec["n"])
        if kind == "upper_triangular":
            return UpperTriangularRing(ring_from_spec(spec["base"]), spec["n"])
        if kind == "product":
            return ProductRing([ring_from_spec(f) for f in spec["factors"]])
        if kind == "corner":
            amb = ring_from_spec(spec["ambient"])
            return CornerRing(amb, amb.from_literal(spec["p"]))
    except KeyError as exc:
        raise RingError(f"ring spec {spec!r} is missing field {exc}") from None
    raise RingError(f"unknown ring type {kind!r}")


def make_ring(spec: dict | Ring) -> Ring:
    return spec if isinstance(spec, Ring) else ring_from_spec(spec)


def mat(ring: MatrixRing, fill: Callable[[int, int], Any]) -> Elem:
    """Matrix element whose (i, j) payload is ``fill(i, j)``."""
    n = ring.n
    return Elem(ring, tuple(tuple(fill(i, j) for j in range(n)) for i in range(n)))
