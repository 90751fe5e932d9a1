"""Partitions in a k x m box, stored as weakly increasing k-tuples.

A partition (λ_1 <= ... <= λ_k) labels a Schubert cell of Gr_k(F^n) with
m = n - k.  Leading zeros are kept so every label has exactly k entries.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Sequence

Partition = tuple[int, ...]


def is_partition(lam: Sequence[int], m: int | None = None) -> bool:
    if any(x < 0 for x in lam):
        return False
    if any(a > b for a, b in zip(lam, lam[1:])):
        return False
    return m is None or not lam or lam[-1] <= m


def check_box(lam: Sequence[int], k: int, n: int) -> Partition:
    """Validate that lam fits the k x (n-k) box and return it as a tuple."""
    lam = tuple(lam)
    if len(lam) != k:
        raise ValueError(f"partition {lam} does not have {k} parts")
    if not is_partition(lam, n - k):
        raise ValueError(f"partition {lam} does not fit a {k}x{n - k} box")
    return lam


def size(lam: Sequence[int]) -> int:
    return sum(lam)


def enumerate_partitions(k: int, m: int) -> list[Partition]:
    """All partitions in the k x m box, ordered by (box count, tuple)."""
    if k < 0 or m < 0:
        raise ValueError("k and m must be nonnegative")
    out: list[Partition] = []

    def rec(prefix: list[int], lo: int) -> None:
        if len(prefix) == k:
            out.append(tuple(prefix))
            return
        for v in range(lo, m + 1):
            prefix.append(v)
            rec(prefix, v)
            prefix.pop()

    rec([], 0)
    out.sort(key=lambda lam: (sum(lam), lam))
    return out


def to_jumps(lam: Sequence[int], n: int) -> tuple[int, ...]:
    if lam and lam[-1] + len(lam) > n:
        raise ValueError(f"partition {tuple(lam)} does not fit in dimension {n}")
    return tuple(x + i for i, x in enumerate(lam, start=1))


def from_jumps(jumps: Sequence[int]) -> Partition:
    if any(a >= b for a, b in zip(jumps, jumps[1:])) or (jumps and jumps[0] < 1):
        raise ValueError(f"not a jump sequence: {tuple(jumps)}")
    return tuple(j - i for i, j in enumerate(jumps, start=1))


def trace(lam: Sequence[int]) -> int:
    """Number of boxes on the anti-diagonal: #{i : λ_i >= k - i + 1}."""
    k = len(lam)
    return sum(1 for i, x in enumerate(lam, start=1) if x >= k - i + 1)


def trace_from_jumps(jumps: Sequence[int]) -> int:
    k = len(jumps)
    return sum(1 for j in jumps if j >= k + 1)


def contains(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """True when the diagram of mu sits inside the diagram of lam.

    Shorter tuples are padded with leading zeros.
    """
    k = max(len(mu), len(lam))
    mu = (0,) * (k - len(mu)) + tuple(mu)
    lam = (0,) * (k - len(lam)) + tuple(lam)
    return all(a <= b for a, b in zip(mu, lam))


def dominates(lower: Sequence[int], upper: Sequence[int]) -> bool:
    """Coordinatewise comparison of jump sequences of equal length."""
    return len(lower) == len(upper) and all(a <= b for a, b in zip(lower, upper))


def transpose(lam: Sequence[int], k: int, n: int) -> Partition:
    """The conjugate diagram, as an (n-k)-part partition in the (n-k) x k box."""
    lam = check_box(lam, k, n)
    m = n - k
    return tuple(sum(1 for x in lam if x > m - i) for i in range(1, m + 1))


def jump_complement(lam: Sequence[int], n: int) -> tuple[int, ...]:
    jumps = set(to_jumps(lam, n))
    return tuple(h for h in range(1, n + 1) if h not in jumps)


def complement_identity_counts(lam: Sequence[int], n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Both sides of the jump-complement counting identity, one entry per h_i.

    Left: #{j : λ_j + j > h_i}.  Right: #{j : λ_j > i - 1}.
    """
    jumps = to_jumps(lam, n)
    comp = jump_complement(lam, n)
    left = tuple(sum(1 for j in jumps if j > h) for h in comp)
    right = tuple(sum(1 for x in lam if x > i - 1) for i in range(1, len(comp) + 1))
    return left, right


@lru_cache(maxsize=None)
def _trace_counts(p: int, k: int, m: int) -> tuple[int, ...]:
    # counts[t] = number of partitions of p into k parts <= m with trace t
    counts = [0] * (k + 1)

    def rec(prefix: list[int], lo: int, remaining: int) -> None:
        slots = k - len(prefix)
        if slots == 0:
            if remaining == 0:
                counts[trace(prefix)] += 1
            return
        for v in range(lo, min(m, remaining) + 1):
            if v * slots > remaining:
                break
            if v + (slots - 1) * m < remaining:
                continue
            prefix.append(v)
            rec(prefix, v, remaining - v)
            prefix.pop()

    rec([], 0, p)
    return tuple(counts)


def part(p: int, k: int, m: int | None, t: int) -> int:
    """Partitions of p into k parts, each at most m, with trace exactly t.

    m=None means no bound on part size.
    """
    if p < 0 or k < 0 or t < 0:
        return 0
    if m is None:
        m = p
    if t > min(k, m):
        return 0
    return _trace_counts(p, k, m)[t]


def bounded_partition_count(p: int, k: int, m: int) -> int:
    return sum(part(p, k, m, t) for t in range(k + 1))


def betti(k: int, n: int, d: int) -> int:
    """Mod 2 Betti number of Gr_k(R^n) in degree d."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return bounded_partition_count(d, k, n - k)


def betti_numbers(k: int, n: int) -> list[int]:
    return [betti(k, n, d) for d in range(k * (n - k) + 1)]


def cell_count(k: int, n: int) -> int:
    return comb(n, k)


def duality_partner(lam: Sequence[int], k: int, n: int) -> Partition:
    """Trace-preserving involution sending box count |λ| to n*t - |λ|.

    With t = trace(λ), the first k-t rows lie in a (k-t) x t block and the last
    t rows, less t each, lie in a t x (n-k-t) block.  Each block is replaced by
    its complement rotated by a half turn.
    """
    lam = check_box(lam, k, n)
    t = trace(lam)
    north = lam[: k - t]
    east = [x - t for x in lam[k - t:]]
    width = n - k - t
    north_new = tuple(t - x for x in reversed(north))
    east_new = tuple(t + width - x for x in reversed(east))
    return north_new + east_new

