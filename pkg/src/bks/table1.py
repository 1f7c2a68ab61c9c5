"""Recomputation of the size table for lifted and composed proofs in dimensions 5-8."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import catalog
from .colouring import Mode
from .construct import compose_zp, lift
from .critical import DEFAULT_NODE_BUDGET, minimum_proof_size

DIMENSIONS = (5, 6, 7, 8)

# published (size, smallest critical subset) per dimension; None = no entry
EXPECTED = {
    "P24": {5: (39, 29), 6: (44, 31), 7: (47, 34), 8: (48, 36)},
    "S4": {5: (31, 29), 6: (35, 32), 7: (37, 34), 8: (38, 36)},
    "ZP": {5: None, 6: (62, None), 7: (49, None), 8: (36, None)},
}
LABELS = {
    "P24": "n≤2d from P-24",
    "S4": "n≤2d from S4",
    "ZP": "Zimba-Penrose",
}
NOT_IN_CATALOG = "n/a (set not in catalog)"


@dataclass
class Cell:
    expected: tuple[int, int | None] | None
    size: int | None = None
    minimum: int | None = None
    note: str = ""

    @property
    def matches(self) -> bool:
        if self.expected is None or self.size is None:
            return True
        want_size, want_min = self.expected
        if self.size != want_size:
            return False
        return self.minimum is None or want_min is None or self.minimum == want_min

    def text(self) -> str:
        if self.note:
            return self.note
        if self.size is None:
            return "…"
        out = str(self.size)
        if self.minimum is not None:
            out += f" ({self.minimum})"
        return out


@dataclass
class Table1:
    rows: dict[str, dict[int, Cell]] = field(default_factory=dict)

    @property
    def all_match(self) -> bool:
        return all(c.matches for row in self.rows.values() for c in row.values())

    def render(self) -> str:
        lines = ["dimension: " + " ".join(str(n) for n in DIMENSIONS)]
        for key, row in self.rows.items():
            cells = " | ".join(row[n].text() for n in DIMENSIONS)
            lines.append(f"{LABELS[key]}: {cells}")
            bad = [n for n in DIMENSIONS if not row[n].matches]
            if bad:
                lines.append(f"  MISMATCH in dimension(s) {bad}: expected "
                             + ", ".join(str(row[n].expected) for n in bad))
        lines.append("all entries match" if self.all_match else "MISMATCHES FOUND")
        return "\n".join(lines) + "\n"

    def row_sizes(self, key: str) -> list[int | None]:
        return [self.rows[key][n].size for n in DIMENSIONS]

    def to_json(self) -> dict:
        return {
            LABELS[key]: {
                str(n): {
                    "size": c.size,
                    "minimum": c.minimum,
                    "expected": list(c.expected) if c.expected else None,
                    "note": c.note or None,
                    "matches": c.matches,
                }
                for n, c in row.items()
            }
            for key, row in self.rows.items()
        } | {"all_match": self.all_match}


def compute_table1(
    with_minimum: bool = False,
    mode: Mode = Mode.BASIS,
    node_budget: int = DEFAULT_NODE_BUDGET,
    time_budget: float | None = None,
) -> Table1:
    """Sizes of every derivable cell; smallest critical subsets too if asked (slow)."""
    table = Table1()
    for key in ("P24", "S4"):
        seed = catalog.rays(key)
        row = {}
        for n in DIMENSIONS:
            D = lift(seed, n).D
            cell = Cell(EXPECTED[key][n], size=len(D))
            if with_minimum:
                cell.minimum = minimum_proof_size(
                    D, mode, node_budget=node_budget, time_budget=time_budget
                )
            row[n] = cell
        table.rows[key] = row

    s4 = catalog.rays("S4")
    zp = {
        5: Cell(None, note="…"),
        6: Cell(EXPECTED["ZP"][6], note=NOT_IN_CATALOG),
        7: Cell(EXPECTED["ZP"][7], note=NOT_IN_CATALOG),
        8: Cell(EXPECTED["ZP"][8], size=len(compose_zp(s4, s4))),
    }
    table.rows["ZP"] = zp
    return table
