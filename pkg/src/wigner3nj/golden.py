"""Reference rows shipped with the package (sets I-VII, 51 rows)."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import List, Tuple


@dataclass(frozen=True)
class GoldenRow:
    kind: str
    args: Tuple[str, ...]
    exact: str
    decimal: str
    group: str
    row: int

    @property
    def request(self) -> str:
        return " ".join((self.kind,) + self.args)


def corpus_text() -> str:
    return resources.files(__package__).joinpath("data/golden.txt").read_text("utf-8")


def load_golden() -> List[GoldenRow]:
    rows = []
    for line in corpus_text().splitlines():
        req, _, note = line.partition("#")
        if not req.strip():
            continue
        kind, *args = req.split()
        # note: " expect <exact> <decimal> | set <G> row <n> ..."
        head, _, where = note.partition("|")
        _, exact, decimal = head.split()
        w = where.split()
        rows.append(GoldenRow(kind, tuple(args), exact, decimal, w[1], int(w[3])))
    return rows
