"""Bounds on the degree of regularity dor(a,b).

Upper bounds come from the block-coloring theorems (checked exactly with
integers), the ``ceil(2 log2 ceil(b/a))`` bound, the ``b = 2a`` rule, quoted
axioms, and the embedding (a+i, b+2i) -> (a, b), which pushes every upper
bound at (a, b) forward to (a+i, b+2i).  Lower bounds come from axioms and
from actually computing n(a,b;r).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

from .core import FamilyParams
from .solver import SearchConfig, find_n

__all__ = [
    "C_MAX",
    "Provenance",
    "BoundRecord",
    "Axiom",
    "AxiomSet",
    "ReferenceEntry",
    "InconsistentBoundsError",
    "theorem2_upper",
    "theorem3_upper",
    "lemma2_upper",
    "rule1_exact",
    "lemma1_closure",
    "best_bounds",
    "generate_table",
    "load_reference",
    "table_to_csv",
    "table_to_json",
    "TABLE_SEARCH",
]

# largest color count tried for the block-coloring bounds; every bound in
# range is far below 63
C_MAX = 64

# defaults for the search pass behind lower bounds
TABLE_SEARCH = SearchConfig(max_n=1000, node_budget=20_000_000, incremental=True)

_KIND_ORDER = {
    k: i
    for i, k in enumerate(
        ["theorem2", "theorem3", "lemma2", "rule1", "lemma1", "axiom", "search", "vdW-regular"]
    )
}


class InconsistentBoundsError(RuntimeError):
    """lower > upper: a false axiom or a solver bug."""


@dataclass(frozen=True)
class Provenance:
    kind: str
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.kind}({self.detail})" if self.detail else self.kind


@dataclass
class BoundRecord:
    """Bounds on dor(a,b).  ``upper is None`` means no finite bound is known;
    ``regular`` marks dor = infinity (then ``lower`` is None too)."""

    a: int
    b: int
    lower: int | None = 1
    upper: int | None = None
    regular: bool = False
    lower_provenance: list[Provenance] = field(default_factory=list)
    upper_provenance: list[Provenance] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    @property
    def key(self) -> tuple[int, int]:
        return (self.a, self.b)

    def lower_text(self) -> str:
        return "inf" if self.regular else str(self.lower)

    def upper_text(self) -> str:
        if self.regular:
            return "inf"
        return "-" if self.upper is None else str(self.upper)

    def offer_upper(self, value: int, tag: Provenance) -> None:
        if self.upper is None or value < self.upper:
            self.upper = value
            self.upper_provenance = [tag]
        elif value == self.upper and tag not in self.upper_provenance:
            self.upper_provenance.append(tag)

    def offer_lower(self, value: int, tag: Provenance) -> None:
        if self.lower is None:
            return
        if value > self.lower:
            self.lower = value
            self.lower_provenance = [tag]
        elif value == self.lower and tag not in self.lower_provenance:
            self.lower_provenance.append(tag)

    def sorted_provenance(self) -> tuple[list[Provenance], list[Provenance]]:
        key = lambda p: _KIND_ORDER.get(p.kind, len(_KIND_ORDER))  # noqa: E731
        return sorted(self.lower_provenance, key=key), sorted(self.upper_provenance, key=key)

    def as_row(self) -> dict:
        lo, up = self.sorted_provenance()
        return {
            "a": self.a,
            "b": self.b,
            "lower": self.lower_text(),
            "upper": self.upper_text(),
            "lower_provenance": [str(p) for p in lo],
            "upper_provenance": [str(p) for p in up],
            "flags": list(self.flags),
        }

    def copy(self) -> BoundRecord:
        return BoundRecord(
            self.a,
            self.b,
            self.lower,
            self.upper,
            self.regular,
            list(self.lower_provenance),
            list(self.upper_provenance),
            list(self.flags),
        )


@dataclass(frozen=True)
class Axiom:
    a: int
    b: int
    kind: str  # upper | exact | regular
    value: int | None
    citation: str = ""


@dataclass(frozen=True)
class AxiomSet:
    """Quoted facts about dor(a,b) that the engine takes as given."""

    axioms: tuple[Axiom, ...] = ()

    @classmethod
    def parse(cls, text: str) -> AxiomSet:
        out = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            body, _, citation = raw.partition("#")
            fields = body.split()
            if not fields:
                continue
            if len(fields) != 4:
                raise ValueError(f"axiom line {lineno}: expected 'a b kind value', got {raw!r}")
            a, b, kind, value = fields
            if kind not in ("upper", "exact", "regular"):
                raise ValueError(f"axiom line {lineno}: unknown kind {kind!r}")
            val = None if kind == "regular" else int(value)
            if val is not None and val < 1:
                raise ValueError(f"axiom line {lineno}: value must be positive")
            FamilyParams(int(a), int(b))
            out.append(Axiom(int(a), int(b), kind, val, citation.strip()))
        return cls(tuple(out))

    @classmethod
    def load(cls, path: str | Path) -> AxiomSet:
        return cls.parse(Path(path).read_text(encoding="ascii"))

    @classmethod
    def shipped(cls) -> AxiomSet:
        text = resources.files("vdwtriples").joinpath("data/axioms.txt").read_text("ascii")
        return cls.parse(text)

    def for_pair(self, a: int, b: int) -> list[Axiom]:
        return [ax for ax in self.axioms if (ax.a, ax.b) == (a, b)]


@dataclass(frozen=True)
class ReferenceEntry:
    a: int
    b: int
    lower: str
    upper: str
    known_mismatch: str = ""  # "", "lower", "upper" or "both"
    note: str = ""

    def expects_mismatch(self, side: str) -> bool:
        return self.known_mismatch in (side, "both")


def load_reference(path: str | Path | None = None) -> dict[tuple[int, int], ReferenceEntry]:
    """Reference table: CSV ``a,b,lower,upper,known_mismatch,note``."""
    if path is None:
        text = resources.files("vdwtriples").joinpath("data/reference_table.csv").read_text("ascii")
    else:
        text = Path(path).read_text(encoding="ascii")
    rows = csv.DictReader(line for line in io.StringIO(text) if not line.startswith("#"))
    out = {}
    for row in rows:
        e = ReferenceEntry(
            int(row["a"]),
            int(row["b"]),
            row["lower"].strip(),
            row["upper"].strip(),
            (row.get("known_mismatch") or "").strip(),
            (row.get("note") or "").strip(),
        )
        out[e.a, e.b] = e
    return out


def theorem2_upper(a: int, b: int, c: int) -> int | None:
    """c - 1 when the block coloring with c colors avoids every (a, a+i)-triple.

    Needs a >= 2, c >= 5, i = b - a >= 0, ``a <= p^c / (c-1)`` and
    ``i <= p^c (p^(c-1) - 2)`` with p = (2c-2)/c, all cleared of
    denominators.
    """
    i = b - a
    if a < 2 or c < 5 or i < 0:
        return None
    num = 2 * c - 2
    if a * (c - 1) * c**c > num**c:
        return None
    if i * c ** (2 * c - 1) > num**c * (num ** (c - 1) - 2 * c ** (c - 1)):
        return None
    return c - 1


def theorem3_upper(b: int, c: int) -> int | None:
    """c - 1 when the block coloring with c colors avoids every (1, b)-triple.

    That holds for ``2 <= b <= p^(c-1)``: if x sits in block k and bx + 2d
    lands c or more blocks higher, then x + d = (z - (b-2)x) / 2 clears
    block k.  The weaker-looking ``b * p < 2 + p^c`` admits one or two more
    values of b per c, and those fail (c=5, b=7: 25, 26, 177 share a color).
    """
    if b < 2 or c < 5:
        return None
    num = 2 * c - 2
    if b * c ** (c - 1) <= num ** (c - 1):
        return c - 1
    return None


def lemma2_upper(a: int, b: int) -> int | None:
    """``ceil(2 log2 ceil(b/a))`` when ``b >= (2^(3/2) - 1) a - 2^(3/2) + 2``.

    The side condition is squared into ``(a+b-2)^2 >= 8 (a-1)^2``.  With
    ceil(b/a) = 1 the formula would give 0, so that case is left out (it only
    arises for (1,1), which is regular).
    """
    if (a + b - 2) ** 2 < 8 * (a - 1) ** 2:
        return None
    q = -(-b // a)
    if q < 2:
        return None
    k = 0
    while 2**k < q * q:
        k += 1
    return k


def rule1_exact(a: int, b: int) -> int | None:
    return 1 if b == 2 * a else None


def _direct_record(a: int, b: int, axioms: AxiomSet) -> BoundRecord:
    """Everything known about (a, b) without looking at other pairs."""
    rec = BoundRecord(a, b)
    for c in range(5, C_MAX + 1):
        if (u := theorem2_upper(a, b, c)) is not None:
            rec.offer_upper(u, Provenance("theorem2", f"c={c}"))
            break
    if a == 1:
        for c in range(5, C_MAX + 1):
            if (u := theorem3_upper(b, c)) is not None:
                rec.offer_upper(u, Provenance("theorem3", f"c={c}"))
                break
    if (u := lemma2_upper(a, b)) is not None:
        rec.offer_upper(u, Provenance("lemma2"))
    if rule1_exact(a, b) is not None:
        rec.offer_upper(1, Provenance("rule1"))
        rec.lower_provenance.append(Provenance("rule1"))
    for ax in axioms.for_pair(a, b):
        tag = Provenance("vdW-regular" if ax.kind == "regular" else "axiom", ax.citation)
        if ax.kind == "regular":
            rec.regular = True
            rec.lower = None
            rec.upper = None
            rec.lower_provenance = [tag]
            rec.upper_provenance = [tag]
        elif not rec.regular:
            assert ax.value is not None
            rec.offer_upper(ax.value, tag)
            if ax.kind == "exact":
                rec.offer_lower(ax.value, tag)
    return rec


def lemma1_closure(records: Iterable[BoundRecord]) -> dict[tuple[int, int], BoundRecord]:
    """Push finite upper bounds from (a, b) to every (a+i, b+2i) present.

    dor(a+i, b+2i) <= dor(a, b) because each (a+i, b+2i)-triple is also an
    (a, b)-triple.  Iterates to a fixpoint; input records are not modified.
    """
    table = {rec.key: rec.copy() for rec in records}
    a_top = max((a for a, _ in table), default=0)
    changed = True
    while changed:
        changed = False
        for (a, b), src in sorted(table.items()):
            if src.upper is None or src.regular:
                continue
            for i in range(1, a_top - a + 1):
                tgt = table.get((a + i, b + 2 * i))
                if tgt is None or tgt.regular:
                    continue
                before = (tgt.upper, len(tgt.upper_provenance))
                tgt.offer_upper(src.upper, Provenance("lemma1", f"from ({a},{b})"))
                if (tgt.upper, len(tgt.upper_provenance)) != before:
                    changed = True
    return table


def _ancestors(a: int, b: int) -> list[tuple[int, int]]:
    out = []
    i = 1
    while a - i >= 1:
        if a - i <= b - 2 * i:
            out.append((a - i, b - 2 * i))
        i += 1
    return out


def _check(rec: BoundRecord) -> BoundRecord:
    if not rec.regular and rec.upper is not None and rec.lower is not None and rec.lower > rec.upper:
        raise InconsistentBoundsError(
            f"dor{(rec.a, rec.b)}: lower {rec.lower} > upper {rec.upper} "
            f"({[str(p) for p in rec.lower_provenance]} vs {[str(p) for p in rec.upper_provenance]})"
        )
    return rec


def _search_lower(rec: BoundRecord, search: SearchConfig | None, max_r: int) -> None:
    params = FamilyParams(rec.a, rec.b)
    # r = 1 is a single search at n = b + 2
    base = find_n(params, 1, SearchConfig(max_n=rec.b + 2))
    rec.offer_lower(1, Provenance("search", f"r=1,n={base.value}"))
    if search is None:
        return
    r = 2
    while r <= max_r and (rec.upper is None or r <= rec.upper):
        res = find_n(params, r, search)
        if res.exact:
            rec.offer_lower(r, Provenance("search", f"r={r},n={res.value}"))
            r += 1
            continue
        why = "node budget exhausted" if res.cutoff else "max_n reached"
        rec.flags.append(
            f"note: n({rec.a},{rec.b};{r}) > {res.lower} ({why}); no lower bound {r} claimed"
        )
        break


def best_bounds(
    a: int,
    b: int,
    axioms: AxiomSet,
    search: SearchConfig | None = None,
    max_search_r: int = 3,
) -> BoundRecord:
    """Tightest bounds on dor(a,b) the engine can justify.

    Without ``search`` the lower bound only reflects the b = 2a rule, exact
    axioms, and the trivial 1.  With it, n(a,b;r) is computed for
    r = 1, 2, ... up to ``max_search_r`` (and never beyond the upper bound);
    a finite value proves dor(a,b) >= r.
    """
    FamilyParams(a, b)
    pairs = [(a, b), *_ancestors(a, b)]
    closed = lemma1_closure(_direct_record(pa, pb, axioms) for pa, pb in pairs)
    rec = closed[a, b]
    if not rec.regular:
        _search_lower(rec, search, max_search_r)
    return _check(rec)


def _row_order(key: tuple[int, int]) -> tuple[int, int]:
    a, b = key
    return (b - a, a)


def generate_table(
    a_max: int,
    b_max: int,
    axioms: AxiomSet,
    search: SearchConfig | None = None,
    reference: dict[tuple[int, int], ReferenceEntry] | None = None,
    gap_max: int | None = None,
    max_search_r: int = 3,
) -> list[BoundRecord]:
    """Bounds for every 1 <= a <= a_max, a <= b <= b_max (and b - a <= gap_max).

    Rows come out ordered by (b - a, a), the layout of the classic table.
    Entries disagreeing with ``reference`` get a ``mismatch`` flag, suffixed
    ``known`` when the reference marks the disagreement as expected.
    """
    keys = [
        (a, b)
        for a in range(1, a_max + 1)
        for b in range(a, b_max + 1)
        if gap_max is None or b - a <= gap_max
    ]
    out = []
    for key in sorted(keys, key=_row_order):
        rec = best_bounds(*key, axioms, search, max_search_r)
        ref = (reference or {}).get(key)
        if ref is not None:
            for side, mine, theirs in (
                ("lower", rec.lower_text(), ref.lower),
                ("upper", rec.upper_text(), ref.upper),
            ):
                if mine != theirs:
                    tail = f"; known: {ref.note}" if ref.expects_mismatch(side) else ""
                    rec.flags.append(f"mismatch {side}: engine {mine}, reference {theirs}{tail}")
        out.append(rec)
    return out


def unexpected_mismatches(records: Iterable[BoundRecord]) -> list[BoundRecord]:
    return [
        rec
        for rec in records
        if any(f.startswith("mismatch") and "; known:" not in f for f in rec.flags)
    ]


CSV_COLUMNS = ["a", "b", "lower", "upper", "lower_provenance", "upper_provenance", "flags"]


def table_to_csv(records: Iterable[BoundRecord]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for rec in records:
        row = rec.as_row()
        for col in ("lower_provenance", "upper_provenance", "flags"):
            row[col] = " | ".join(row[col])
        w.writerow(row)
    return buf.getvalue()


def table_to_json(records: Iterable[BoundRecord]) -> str:
    return json.dumps([rec.as_row() for rec in records], indent=2)
