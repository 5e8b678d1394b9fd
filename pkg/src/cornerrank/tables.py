"""Index tables for small finite rings and a vectorized stable-range-1 sweep.

The sweep treats a ring R = M_k(S) (k = 1 for rings without matrix structure)
through its action on column vectors S^k.  For a pair (a, b):

* the columns of a + bc are a_j + b c_j with the c_j independent, so
  a + bR meets the units iff some unit has its j-th column in a_j + Col(b)
  for every j;
* aR + bR = R iff every standard basis vector e_j lies in Col(a) + Col(b);
* u is a unit iff every e_j lies in Col(u) (one-sided inverses are two-sided
  in finite rings).

Both conditions only depend on b through the submodule Col(b), so the sweep
runs once per distinct submodule instead of once per b.  Every (a, b) pair is
still decided.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .rings import EnumerationError, MatrixRing, Ring

TABLE_CAP = 1024


@dataclass
class FiniteTables:
    """Addition and multiplication tables over enumeration indices."""

    ring: Ring
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int

    @classmethod
    def build(cls, ring: Ring, cap: int = TABLE_CAP) -> "FiniteTables":
        if ring.cardinality is None or ring.cardinality > cap:
            raise EnumerationError(f"tables for {ring!r} exceed the cap {cap}")
        elems = ring.elements()
        index = {e: i for i, e in enumerate(elems)}
        n = len(elems)
        add = np.empty((n, n), dtype=np.int32)
        mul = np.empty((n, n), dtype=np.int32)
        for i, x in enumerate(elems):
            for j, y in enumerate(elems):
                add[i, j] = index[ring.add(x, y)]
                mul[i, j] = index[ring.mul(x, y)]
        return cls(ring, add, mul, index[ring.zero_v], index[ring.one_v])

    @property
    def size(self) -> int:
        return len(self.add)

    @cached_property
    def principal_ideals(self) -> list[frozenset]:
        return [frozenset(row.tolist()) for row in self.mul]


_tables_cache: dict = {}


def tables_for(ring: Ring) -> FiniteTables:
    key = ring.key
    if key not in _tables_cache:
        _tables_cache[key] = FiniteTables.build(ring)
    return _tables_cache[key]


class ColumnEngine:
    """R = M_k(S) viewed through S^k; see the module docstring."""

    def __init__(self, ring: Ring) -> None:
        if type(ring) is MatrixRing and ring.base.finite and ring.base.cardinality <= TABLE_CAP:
            self.k, scal = ring.n, ring.base
        elif ring.finite and ring.cardinality <= TABLE_CAP:
            self.k, scal = 1, ring
        else:
            raise EnumerationError(f"no column engine for {ring!r}")
        self.ring = ring
        self.scal = scal
        T = tables_for(scal)
        s, k = T.size, self.k
        self.s = s
        V = s**k
        self.V = V
        digits = np.array(np.unravel_index(np.arange(V), (s,) * k)).T.reshape(V, k)
        self.digits = digits
        weights = s ** np.arange(k - 1, -1, -1)
        self._weights = weights
        self.vadd = (T.add[digits[:, None, :], digits[None, :, :]] * weights).sum(-1)
        # vector times scalar (on the right)
        self.vscal = (T.mul[digits[:, None, :], np.arange(s)[None, :, None]] * weights).sum(-1)
        basis = []
        for j in range(k):
            d = np.full(k, T.zero)
            d[j] = T.one
            basis.append(int((d * weights).sum()))
        self.basis = basis
        self.zero_vec = int((np.full(k, T.zero) * weights).sum())
        self.n_elems = V**k
        if self.n_elems > (1 << 17):
            raise EnumerationError(f"{ring!r} is too large for an exhaustive sweep")
        # cols[e, j] = code of column j of element e (element code = mixed radix over columns)
        self.cols = np.array(np.unravel_index(np.arange(self.n_elems), (V,) * k)).T.reshape(-1, k)
        dtype = np.int16 if V < 2**15 else np.int32
        Av = np.full((self.n_elems, V), self.zero_vec, dtype=dtype)
        for j in range(k):
            # contribution col_j * v_j for every element and every vector v
            term = self.vscal[self.cols[:, j][:, None], digits[None, :, j]]
            Av = self.vadd[Av, term].astype(dtype)
        self.Av = Av
        has = np.ones(self.n_elems, dtype=bool)
        for e in basis:
            has &= (Av == e).any(axis=1)
        self.units = has

    def payload(self, code: int):
        """Ring payload of an element code."""
        elems = self.scal.elements()
        cols = self.cols[code]
        if self.k == 1 and not (type(self.ring) is MatrixRing):
            return elems[int(self.digits[cols[0], 0])]
        k = self.k
        return tuple(
            tuple(elems[int(self.digits[cols[j], i])] for j in range(k)) for i in range(k)
        )

    def counterexample(self):
        """First irreducible right-unimodular pair (a, b) as payloads, or None."""
        k = self.k
        Av = self.Av
        mask = np.zeros((self.n_elems, self.V), dtype=bool)
        np.put_along_axis(mask, Av.astype(np.int64), True, axis=1)
        packed = np.packbits(mask, axis=1)
        _, first, inverse = np.unique(packed, axis=0, return_index=True, return_inverse=True)
        inverse = inverse.reshape(-1)
        failures = []
        for cls_id, b in enumerate(first):
            members = np.flatnonzero(mask[b])
            lab = self.vadd[:, members].min(axis=1)
            n_lab = int(lab.max()) + 1
            marked = np.zeros((n_lab,) * k, dtype=bool)
            unit_cols = lab[self.cols[self.units]]
            marked[tuple(unit_cols.T)] = True
            reducible = marked[tuple(lab[self.cols].T)]
            cand = np.flatnonzero(~reducible)
            if cand.size == 0:
                continue
            labAv = lab[Av[cand]]
            unimodular = np.ones(cand.size, dtype=bool)
            for e in self.basis:
                unimodular &= (labAv == lab[e]).any(axis=1)
            bad = cand[unimodular]
            if bad.size:
                b_first = int(np.flatnonzero(inverse == cls_id)[0])
                failures.append((int(bad[0]), b_first))
        if not failures:
            return None
        a, b = min(failures)
        return self.payload(a), self.payload(b)


def sr1_counterexample(ring: Ring):
    """Exhaustively decide the first stable range condition.

    Returns ``None`` when every right-unimodular pair is reducible, else an
    irreducible pair of payloads.
    """
    return ColumnEngine(ring).counterexample()


def supports_sweep(ring: Ring) -> bool:
    if type(ring) is MatrixRing and ring.base.finite and ring.base.cardinality <= TABLE_CAP:
        return ring.base.cardinality ** (ring.n * ring.n) <= (1 << 17)
    return ring.finite and ring.cardinality <= TABLE_CAP


__all__ = ["FiniteTables", "tables_for", "ColumnEngine", "sr1_counterexample", "supports_sweep"]
