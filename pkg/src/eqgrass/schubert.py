"""Schubert cell tables for Grassmannians of representations.

A sign string such as "+-+-+" fixes an ordered decomposition of R^{n,q} into
trivial (+) and sign (-) summands.  Each Schubert cell then becomes a
representation cell whose weight depends on the signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .mtwo import Bidegree, RankChart
from .young import Partition, check_box, enumerate_partitions, size, to_jumps

REAL = "R"
COMPLEX = "C"
CONJ = "Cconj"
FIELDS = (REAL, COMPLEX, CONJ)


def parse_signs(text: str) -> str:
    if not text or any(c not in "+-" for c in text):
        raise ValueError(f"bad sign string {text!r}: use only '+' and '-'")
    return text


def minus_count(signs: str) -> int:
    return signs.count("-")


def cell_weight(lam: Sequence[int], signs: str) -> int:
    """Weight of the cell labelled lam.

    Sum over pivot columns κ of the free columns i < κ whose sign differs from
    the sign at κ.
    """
    n = len(signs)
    lam = check_box(lam, len(lam), n)
    jumps = to_jumps(lam, n)
    jumpset = set(jumps)
    return sum(
        1
        for kappa in jumps
        for i in range(1, kappa)
        if i not in jumpset and signs[i - 1] != signs[kappa - 1]
    )


def cell_weight_matrix(lam: Sequence[int], signs: str) -> int:
    """Same weight, by acting on the canonical matrix form of a point.

    Row r has a pivot 1 at its jump column and free entries to its left in
    non-pivot columns.  Negate the columns carrying a minus sign, rescale each
    row so its pivot is +1 again, then count free entries that changed sign.
    """
    n = len(signs)
    lam = check_box(lam, len(lam), n)
    jumps = to_jumps(lam, n)
    col_sign = [(-1 if c == "-" else 1) for c in signs]
    flipped = 0
    for j in jumps:
        row = [0] * n
        row[j - 1] = 1
        free = [c for c in range(1, j) if c not in jumps]
        for c in free:
            row[c - 1] = 1
        acted = [v * col_sign[c] for c, v in enumerate(row)]
        scale = acted[j - 1]
        acted = [v * scale for v in acted]
        flipped += sum(1 for c in free if acted[c - 1] == -1)
    return flipped


@dataclass(frozen=True)
class CellEntry:
    label: Partition
    bidegree: Bidegree

    @property
    def p(self) -> int:
        return self.bidegree.p

    @property
    def q(self) -> int:
        return self.bidegree.q


@dataclass(frozen=True)
class CellTable:
    k: int
    n: int
    signs: str
    field: str
    entries: tuple[CellEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> CellEntry:
        return self.entries[i]

    def labels(self) -> list[Partition]:
        return [e.label for e in self.entries]

    def bidegrees(self) -> list[Bidegree]:
        return [e.bidegree for e in self.entries]

    def chart(self) -> RankChart:
        """The chart obtained when every differential vanishes."""
        return RankChart(self.bidegrees())

    def lookup(self, label: Sequence[int]) -> CellEntry:
        label = tuple(label)
        for e in self.entries:
            if e.label == label:
                return e
        raise KeyError(label)


def ingredient_table(k: int, signs: str, field: str = REAL) -> CellTable:
    """One entry per cell of Gr_k, sorted by (p, q, label)."""
    if field not in FIELDS:
        raise ValueError(f"unknown field {field!r}")
    signs = parse_signs(signs)
    n = len(signs)
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    entries = []
    for lam in enumerate_partitions(k, n - k):
        d = size(lam)
        if field == CONJ:
            bd = Bidegree(2 * d, d)
        elif field == COMPLEX:
            w = cell_weight(lam, signs)
            bd = Bidegree(2 * d, 2 * w)
        else:
            bd = Bidegree(d, cell_weight(lam, signs))
        entries.append(CellEntry(lam, bd))
    entries.sort(key=lambda e: (e.bidegree.p, e.bidegree.q, e.label))
    return CellTable(k, n, signs, field, tuple(entries))


def canonical_kn1_signs(k: int, n: int) -> str:
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    return "+" * (k - 1) + "-" + "+" * (n - k)


def enumerate_decompositions(n: int, q: int) -> list[str]:
    """All sign strings of length n with exactly q minus signs."""
    if not 0 <= q <= n:
        raise ValueError("need 0 <= q <= n")
    out = []
    for minus in combinations(range(n), q):
        ms = set(minus)
        out.append("".join("-" if i in ms else "+" for i in range(n)))
    return out


def table_signature(table: CellTable) -> tuple:
    """Label-to-bidegree data; equal signatures give identical solver behaviour."""
    return tuple(sorted((e.label, e.bidegree) for e in table.entries))


def distinct_tables(k: int, n: int, q: int, field: str = REAL) -> list[CellTable]:
    """Tables for every decomposition, dropping exact duplicates."""
    if field == CONJ:
        return [ingredient_table(k, "+" * n, CONJ)]
    seen = set()
    out = []
    for signs in enumerate_decompositions(n, q):
        t = ingredient_table(k, signs, field)
        sig = table_signature(t)
        if sig not in seen:
            seen.add(sig)
            out.append(t)
    return out
