"""Access to the shipped genome-annotation corpus.

Each entry is a ``.workflow`` source, the ``.kripke`` document it expands
to, a ``.ctl`` property, and the expected verdict at the start state.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

CORPUS_DIR = Path(__file__).with_name("corpus")
MANIFEST = CORPUS_DIR / "manifest.json"


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    title: str
    expected: bool
    reference_size: int
    directory: Path

    @property
    def workflow(self) -> Path:
        return self.directory / f"{self.label}.workflow"

    @property
    def kripke(self) -> Path:
        return self.directory / f"{self.label}.kripke"

    @property
    def ctl(self) -> Path:
        return self.directory / f"{self.label}.ctl"


def load_manifest(path: str | Path | None = None) -> list[CorpusEntry]:
    path = Path(path) if path else MANIFEST
    data = json.loads(path.read_text())
    return [CorpusEntry(e["label"], e["title"], bool(e["expected"]), int(e["reference_size"]), path.parent)
            for e in data["entries"]]


def entry(label: str) -> CorpusEntry:
    for e in load_manifest():
        if e.label == label:
            return e
    raise KeyError(label)
