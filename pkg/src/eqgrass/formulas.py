"""Closed-form rank charts for projective spaces and Grassmannians."""

from __future__ import annotations

from .mtwo import RankChart, chart_from_counts
from .young import betti, enumerate_partitions, part, size, trace


def _ceil_half(x: int) -> int:
    return -(-x // 2)


def proj_space(p: int, q: int) -> RankChart:
    """Projective space of lines in R^{p,q}."""
    if p < 1 or q < 0 or p < 2 * q:
        raise ValueError(f"need p >= 1 and p >= 2q >= 0, got p={p}, q={q}")
    gens = [(0, 0)]
    for i in range(1, q):
        gens += [(2 * i - 1, i), (2 * i, i)]
    gens += [(j, q) for j in range(max(1, 2 * q - 1), p)]
    return RankChart(gens, {"family": "proj", "p": p, "q": q})


def gr_kn1(k: int, n: int) -> RankChart:
    """Gr_k(R^{n,1}): one generator at (|λ|, trace λ) per cell."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    gens = [(size(lam), trace(lam)) for lam in enumerate_partitions(k, n - k)]
    return RankChart(gens, {"family": "kn1", "k": k, "n": n})


_GR2_SMALL = {
    3: {(0, 0): 1, (1, 1): 1, (2, 1): 1},
    4: {(0, 0): 1, (1, 1): 1, (2, 1): 1, (2, 2): 1, (3, 2): 1, (4, 2): 1},
    5: {(0, 0): 1, (1, 1): 1, (2, 1): 1, (2, 2): 1, (3, 2): 2, (4, 2): 2,
        (5, 3): 1, (6, 3): 1},
}


def gr_2n2_counts(n: int) -> dict[tuple[int, int], int]:
    if n < 3:
        raise ValueError("need n >= 3")
    if n in _GR2_SMALL:
        return dict(_GR2_SMALL[n])
    c = {(0, 0): 1, (1, 1): 1, (2, 1): 1}
    # weight 2
    c[(2, 2)] = 1
    c[(3, 2)] = 2
    c[(4, 2)] = 3
    for p in range(5, n - 1):
        c[(p, 2)] = 2
    c[(n - 1, 2)] = c.get((n - 1, 2), 0) + 1
    # weight 3
    c[(5, 3)] = 1
    for p in range(6, n + 1):
        c[(p, 3)] = 2
    c[(n + 1, 3)] = 1
    # weight 4
    for p in range(8, n + 2):
        c[(p, 4)] = _ceil_half(p - 7)
    for p in range(n + 2, 2 * n - 3):
        c[(p, 4)] = n - 1 - _ceil_half(p)
    return {key: v for key, v in c.items() if v}


def gr_2n2(n: int) -> RankChart:
    """Gr_2(R^{n,2})."""
    return chart_from_counts(gr_2n2_counts(n), {"family": "2n2", "n": n})


def inf_gr2_rank(p: int, q: int) -> int:
    """Free rank of Gr_2(R^{inf,2}) at (p, q)."""
    if p < 0:
        return 0
    if p >= 8:
        if q == 4:
            return _ceil_half(p - 7)
        return 2 if q in (2, 3) else 0
    return gr_2n2_counts(max(6, p + 2)).get((p, q), 0)


def inf_kn1_rank(p: int, q: int, k: int) -> int:
    """Free rank of Gr_k(R^{inf,1}) at (p, q)."""
    return part(p, k, None, q)


def complexify(chart: RankChart) -> RankChart:
    """Double every generator bidegree."""
    return RankChart(((2 * p, 2 * q) for p, q in chart.generators), chart.meta)


def gr_conj(k: int, n: int) -> RankChart:
    """Complex Grassmannian with the conjugation action."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    gens = []
    for i in range(k * (n - k) + 1):
        gens += [(2 * i, i)] * betti(k, n, i)
    return RankChart(gens, {"family": "conj", "k": k, "n": n})
