"""Named ring specs used by the batteries, and corpus file I/O."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .rings import ENUMERATION_CAP, Ring, RingError, ring_from_spec

ZMOD2 = {"type": "zmod", "m": 2}


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    spec: dict
    enumeration_cap: int = ENUMERATION_CAP

    def ring(self) -> Ring:
        return ring_from_spec(self.spec)

    def to_json(self) -> dict:
        return {"name": self.name, "spec": self.spec, "enumeration_cap": self.enumeration_cap}

    @classmethod
    def from_json(cls, obj: dict) -> "CorpusEntry":
        try:
            entry = cls(obj["name"], obj["spec"], obj.get("enumeration_cap", ENUMERATION_CAP))
        except (KeyError, TypeError) as exc:
            raise RingError(f"bad corpus entry {obj!r}: {exc}") from None
        entry.ring()  # validate
        return entry


BUILTIN = (
    CorpusEntry("zmod2", ZMOD2),
    CorpusEntry("zmod3", {"type": "zmod", "m": 3}),
    CorpusEntry("zmod4", {"type": "zmod", "m": 4}),
    CorpusEntry("z2xz2", {"type": "product", "factors": [ZMOD2, ZMOD2]}),
    CorpusEntry("z2xz3", {"type": "product", "factors": [ZMOD2, {"type": "zmod", "m": 3}]}),
    CorpusEntry("t2z2", {"type": "upper_triangular", "n": 2, "base": ZMOD2}),
    CorpusEntry("m2z2", {"type": "matrix", "n": 2, "base": ZMOD2}),
)

NAMED = {e.name: e.spec for e in BUILTIN} | {
    "integers": {"type": "integers"},
    "m2z": {"type": "matrix", "n": 2, "base": {"type": "integers"}},
}


def builtin_corpus() -> list[CorpusEntry]:
    return list(BUILTIN)


def load_corpus(path: str | Path | None) -> list[CorpusEntry]:
    """Entries from a JSON file (a list, or {"entries": [...]}); built-in if None."""
    if path is None:
        return builtin_corpus()
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        data = data.get("entries")
    if not isinstance(data, list):
        raise RingError("a corpus file holds a list of entries")
    return [CorpusEntry.from_json(obj) for obj in data]


def load_ring_spec(arg: str) -> dict:
    """A ring spec from a JSON file, inline JSON, or a built-in name."""
    if arg in NAMED:
        return NAMED[arg]
    path = Path(arg)
    text = path.read_text() if path.exists() else arg
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RingError(f"{arg!r} is neither a ring name, a file, nor JSON: {exc}") from None
    ring_from_spec(spec)
    return spec


def dump_corpus(entries: list[CorpusEntry]) -> str:
    return json.dumps({"entries": [e.to_json() for e in entries]}, indent=2)
