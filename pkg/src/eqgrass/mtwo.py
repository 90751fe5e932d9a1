"""Free M2-modules recorded by their generator bidegrees."""

from __future__ import annotations

from collections import Counter
from typing import Iterable, NamedTuple


class Bidegree(NamedTuple):
    p: int
    q: int

    @property
    def fixdim(self) -> int:
        return self.p - self.q


def m2_dim(a: int, b: int) -> int:
    """Dimension of M2 in bidegree (a, b): 0 or 1.

    Top cone rho^i tau^j sits at (i, i+j); lower cone theta/(rho^i tau^j) at
    (-i, -2-i-j).
    """
    if 0 <= a <= b:
        return 1
    if a <= 0 and b <= a - 2:
        return 1
    return 0


class RankChart:
    """A multiset of generator bidegrees.  Equality ignores metadata."""

    __slots__ = ("generators", "meta")

    def __init__(self, generators: Iterable = (), meta: dict | None = None):
        gens = tuple(sorted(Bidegree(int(p), int(q)) for p, q in generators))
        self.generators = gens
        self.meta = dict(meta or {})

    def __eq__(self, other) -> bool:
        if not isinstance(other, RankChart):
            return NotImplemented
        return self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self) -> str:
        return f"RankChart({format_generators(self)})"

    def counts(self) -> Counter:
        return Counter(self.generators)

    def nonzero(self) -> dict[Bidegree, int]:
        return dict(sorted(self.counts().items()))

    def dimension_totals(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for g in self.generators:
            out[g.p] = out.get(g.p, 0) + 1
        return dict(sorted(out.items()))


def chart_from_counts(counts: dict, meta: dict | None = None) -> RankChart:
    gens = []
    for (p, q), c in counts.items():
        gens.extend([(p, q)] * c)
    return RankChart(gens, meta)


def format_generators(chart: RankChart) -> str:
    parts = []
    for (p, q), c in chart.nonzero().items():
        parts.append(f"({p},{q})" + (f"^{c}" if c > 1 else ""))
    return "{" + ", ".join(parts) + "}"


def free_rank_at(chart: RankChart, p: int, q: int) -> int:
    return sum(1 for g in chart.generators if g.p == p and g.q == q)


def group_rank_at(chart: RankChart, p: int, q: int) -> int:
    """Dimension over Z/2 of the module in bidegree (p, q)."""
    return sum(m2_dim(p - g.p, q - g.q) for g in chart.generators)


def kronholm_shift(src: Bidegree, tgt: Bidegree) -> tuple[Bidegree, Bidegree]:
    """Resolve a nonzero differential from src into the lower cone of tgt.

    The source moves up and the target down by the difference in fixed-set
    dimension, so the two fixed-set dimensions trade places.
    """
    src, tgt = Bidegree(*src), Bidegree(*tgt)
    if src.fixdim <= tgt.fixdim:
        raise ValueError(f"no differential from {tuple(src)} into {tuple(tgt)}: fixed-set dimension must drop")
    if tgt.p < src.p + 1:
        raise ValueError(f"no differential from {tuple(src)} into {tuple(tgt)}: target must be higher dimensional")
    s = src.fixdim - tgt.fixdim
    return Bidegree(src.p, src.q + s), Bidegree(tgt.p, tgt.q - s)

