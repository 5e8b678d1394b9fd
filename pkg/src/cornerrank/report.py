"""Versioned JSON reports whose witnesses re-verify without the original search.

A witness is a dict with a ``kind`` and element literals in the ring-spec
encoding.  :func:`verify_witness` rebuilds the ring from its spec and checks
the witness from scratch: identities are recomputed, and claims of
non-existence (unsolvable equations, irreducible rows) are re-decided by
exhaustive enumeration of the finite ring.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from importlib import metadata
from pathlib import Path
from typing import Any, Sequence

from .idempotents import EquivalenceWitness, FullnessCertificate, subequivalent
from .rings import Elem, Ring, ring_from_spec
from .stablerank import (
    CornerEquation,
    CornerSolution,
    Reduction,
    SkewCorner,
    equation_unsolvable,
    find_reduction,
    stable_rank,
    verify_solution,
)

SCHEMA = "cornerrank-report/1"


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0.0.0"


def lits(elems: Sequence[Elem]) -> list:
    return [e.literal for e in elems]


# ---------------------------------------------------------------------------
# witness constructors
# ---------------------------------------------------------------------------


def w_reductions(ring: Ring, items: Sequence[tuple[Sequence[Elem], Reduction]]) -> dict:
    return {
        "kind": "reductions",
        "ring": ring.spec(),
        "items": [[lits(row), lits(r.c), lits(r.z)] for row, r in items],
    }


def w_right_inverse(row: Sequence[Elem], x: Sequence[Elem]) -> dict:
    return {"kind": "right_inverse", "ring": row[0].ring.spec(), "row": lits(row), "x": lits(x)}


def w_corner_solutions(c: SkewCorner, items: Sequence[tuple[CornerEquation, CornerSolution]]) -> dict:
    return {
        "kind": "corner_solutions",
        "ring": c.ring.spec(),
        "p": c.p.literal,
        "q": c.q.literal,
        "items": [lits((e.a, e.x, e.b, s.y, s.z)) for e, s in items],
    }


def w_unsolvable(c: SkewCorner, eq: CornerEquation) -> dict:
    return {
        "kind": "unsolvable_equation",
        "ring": c.ring.spec(),
        "p": c.p.literal,
        "q": c.q.literal,
        "equation": lits((eq.a, eq.x, eq.b)),
    }


def w_irreducible_row(row: Sequence[Elem], x: Sequence[Elem]) -> dict:
    return {"kind": "irreducible_row", "ring": row[0].ring.spec(), "row": lits(row), "x": lits(x)}


def w_equivalence(p: Elem, q: Elem, w: EquivalenceWitness, full: bool) -> dict:
    return {
        "kind": "equivalence",
        "ring": p.ring.spec(),
        "p": p.literal,
        "q": q.literal,
        "a": w.a.literal,
        "b": w.b.literal,
        "full": full,
    }


def w_no_subequivalence(p: Elem, q: Elem) -> dict:
    return {"kind": "no_subequivalence", "ring": p.ring.spec(), "p": p.literal, "q": q.literal}


def w_fullness(cert: FullnessCertificate) -> dict:
    return {
        "kind": "fullness",
        "ring": cert.p.ring.spec(),
        "p": cert.p.literal,
        "pairs": [lits(xy) for xy in cert.pairs],
    }


def w_stable_rank(ring: Ring, value: int | None, max_n: int) -> dict:
    return {"kind": "stable_rank", "ring": ring.spec(), "value": value, "max_n": max_n}


def w_theorem8(p: Elem, pairs: Sequence[tuple[Elem, Elem]], built: dict) -> dict:
    return {
        "kind": "theorem8",
        "ring": p.ring.spec(),
        "p": p.literal,
        "pairs": [lits(xy) for xy in pairs],
        "alpha": built["alpha"].literal,
        "beta": built["beta"].literal,
        "q": built["q"].literal,
    }


def w_integer_lower(w) -> dict:
    return {
        "kind": "integer_lower",
        "pair": list(w.pair),
        "bezout": list(w.bezout),
        "residue": w.residue,
        "unit_residues": list(w.unit_residues),
    }


def w_formula(name: str, inputs: dict, value: Any) -> dict:
    return {"kind": "formula", "name": name, "inputs": inputs, "value": value}


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def _ring(w: dict) -> Ring:
    return ring_from_spec(w["ring"])


def _els(R: Ring, literals) -> list[Elem]:
    return [R(v) for v in literals]


def _v_reductions(w):
    R = _ring(w)
    for row, c, z in w["items"]:
        if not Reduction(tuple(_els(R, c)), tuple(_els(R, z))).check(_els(R, row)):
            return False
    return True


def _v_right_inverse(w):
    R = _ring(w)
    total = R.zero
    for a, x in zip(_els(R, w["row"]), _els(R, w["x"]), strict=True):
        total = total + a * x
    return total == R.one


def _corner(w) -> SkewCorner:
    R = _ring(w)
    return SkewCorner(R(w["p"]), R(w["q"]))


def _v_corner_solutions(w):
    c = _corner(w)
    for item in w["items"]:
        a, x, b, y, z = _els(c.ring, item)
        eq = CornerEquation(a, x, b)
        if not (eq.check(c) and verify_solution(c, eq, CornerSolution(y, z))):
            return False
    return True


def _v_unsolvable(w):
    c = _corner(w)
    eq = CornerEquation(*_els(c.ring, w["equation"]))
    return eq.check(c) and equation_unsolvable(c, eq)


def _v_irreducible_row(w):
    R = _ring(w)
    return _v_right_inverse(w) and find_reduction(_els(R, w["row"])) is None


def _v_equivalence(w):
    R = _ring(w)
    ew = EquivalenceWitness(R(w["a"]), R(w["b"]))
    return ew.check(R(w["p"]), R(w["q"]), full=w["full"])


def _v_no_subequivalence(w):
    R = _ring(w)
    return subequivalent(R(w["p"]), R(w["q"])) is None


def _v_fullness(w):
    R = _ring(w)
    p = R(w["p"])
    pairs = tuple((R(x), R(y)) for x, y in w["pairs"])
    return p * p == p and FullnessCertificate(p, pairs).check()


def _v_stable_rank(w):
    return stable_rank(_ring(w), w["max_n"]) == w["value"]


def _v_theorem8(w):
    from .transforms import theorem8_construct

    R = _ring(w)
    p = R(w["p"])
    built = theorem8_construct(p, [(R(x), R(y)) for x, y in w["pairs"]])
    M = built["q"].ring
    same = all(built[k] == M(w[k]) for k in ("alpha", "beta", "q"))
    return same and all(built["checks"].values())


def _v_integer_lower(w):
    from .zsolvers import LowerWitness

    lw = LowerWitness(tuple(w["pair"]), tuple(w["bezout"]), w["residue"], tuple(w["unit_residues"]))
    return lw.check()


def _v_formula(w):
    from .transforms import morita_bounds, theorem8_bound, vaserstein_bound

    fns = {"vaserstein": vaserstein_bound, "theorem8_bound": theorem8_bound, "morita": morita_bounds}
    got = fns[w["name"]](**w["inputs"])
    return list(got) == w["value"] if isinstance(got, tuple) else got == w["value"]


VERIFIERS = {
    "reductions": _v_reductions,
    "right_inverse": _v_right_inverse,
    "corner_solutions": _v_corner_solutions,
    "unsolvable_equation": _v_unsolvable,
    "irreducible_row": _v_irreducible_row,
    "equivalence": _v_equivalence,
    "no_subequivalence": _v_no_subequivalence,
    "fullness": _v_fullness,
    "stable_rank": _v_stable_rank,
    "theorem8": _v_theorem8,
    "integer_lower": _v_integer_lower,
    "formula": _v_formula,
}


def verify_witness(w: dict) -> bool:
    fn = VERIFIERS.get(w.get("kind"))
    if fn is None:
        return False
    try:
        return bool(fn(w))
    except (ValueError, TypeError, KeyError, ArithmeticError):
        return False


def witness_count(w: dict) -> int:
    return len(w["items"]) if "items" in w else 1


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class Record:
    """One check: a pass record carries witnesses that re-verify on replay."""

    check: str
    ring: str
    params: dict = field(default_factory=dict)
    result: str = "pass"
    witnesses: list[dict] = field(default_factory=list)
    counterexample: dict | None = None
    message: str = ""
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.result == "pass"

    def fail(self, message: str, counterexample: dict | None = None) -> None:
        self.result = "fail"
        self.message = message
        if counterexample is not None:
            self.counterexample = counterexample

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "ring": self.ring,
            "params": self.params,
            "result": self.result,
            "witnesses": self.witnesses,
            "counterexample": self.counterexample,
            "message": self.message,
            "elapsed": round(self.elapsed, 6),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Record":
        return cls(**obj)


@dataclass
class Report:
    command: str
    seed: int | None = None
    records: list[Record] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "tool": "cornerrank",
            "version": tool_version(),
            "command": self.command,
            "seed": self.seed,
            "passed": self.passed,
            "records": [r.to_json() for r in self.records],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["check", "ring", "params", "result", "witnesses", "message", "elapsed"])
        for r in self.records:
            n = sum(witness_count(w) for w in r.witnesses)
            out.writerow(
                [r.check, r.ring, json.dumps(r.params, sort_keys=True), r.result, n, r.message, f"{r.elapsed:.6f}"]
            )
        return buf.getvalue()

    def write(self, path: str | Path, fmt: str = "json") -> None:
        Path(path).write_text(self.to_csv() if fmt == "csv" else self.dumps() + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "Report":
        obj = json.loads(Path(path).read_text())
        if obj.get("schema") != SCHEMA:
            raise ValueError(f"unknown report schema {obj.get('schema')!r}")
        return cls(obj["command"], obj.get("seed"), [Record.from_json(r) for r in obj["records"]])


@dataclass
class ReplayResult:
    checked: int = 0
    failures: list[tuple[str, str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_report(report: Report) -> ReplayResult:
    """Re-check every embedded witness of ``report``.  Failed records count
    as replay failures too: a report only replays clean if everything passed."""
    res = ReplayResult()
    for rec in report.records:
        for w in rec.witnesses:
            res.checked += witness_count(w)
            if not verify_witness(w):
                res.failures.append((rec.check, rec.ring, w.get("kind", "?")))
        if not rec.passed:
            res.failures.append((rec.check, rec.ring, f"record failed: {rec.message}"))
        elif not rec.witnesses:
            res.failures.append((rec.check, rec.ring, "pass record without witnesses"))
    return res
