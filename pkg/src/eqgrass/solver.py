"""Constraint propagation over Schubert cell constructions.

Cells are attached one at a time in table order.  When a cell β is attached,
earlier generators whose cell lies strictly inside β and whose current
fixed-set dimension exceeds that of β may support a differential into the
lower cone of β.  Each such differential triggers a Kronholm shift.  At most
one source per fixed-set dimension is allowed, and several sources are
resolved as a staircase in ascending fixed-set dimension.

Every construction of the same Grassmannian must produce the same answer, so
the answer lies in the intersection of the candidate sets of all
constructions.

A generator is frozen once no later cell contains its label.  Its bidegree is
then final, so search states keep frozen generators as an anonymous multiset.
"""

from __future__ import annotations

import sys
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

from .mtwo import Bidegree, RankChart, kronholm_shift
from .schubert import CONJ, REAL, CellTable, distinct_tables, ingredient_table
from .young import contains

DEFAULT_CAP = 100_000
DEFAULT_STATE_BUDGET = 2_000_000

CERTIFIED = "certified"
AMBIGUOUS = "ambiguous"
INCONCLUSIVE = "inconclusive"
INCONSISTENT = "inconsistent"

SEQUENTIAL = "sequential"
PAIRWISE = "pairwise"


class Overflow(Exception):
    def __init__(self, what: str, limit: int):
        super().__init__(f"{what} exceeded limit {limit}")
        self.limit = limit


def _strictly_inside(a, b) -> bool:
    return a != b and contains(a, b)


def admissible_pairs(table: CellTable) -> list[tuple[int, int]]:
    """Pairs (source, target) of table indices that may carry a differential.

    The source label must sit strictly inside the target label and the
    source's fixed-set dimension must exceed the target's.
    """
    out = []
    entries = table.entries
    for j, tgt in enumerate(entries):
        for i, src in enumerate(entries):
            if _strictly_inside(src.label, tgt.label) and src.bidegree.fixdim > tgt.bidegree.fixdim:
                out.append((i, j))
    return out


# ---------------------------------------------------------------- search core


class _Plan:
    """Precomputed attachment data for one table."""

    def __init__(self, table: CellTable, sub_cells: set[int] | None = None, merge: bool = True):
        self.table = table
        self.merge = merge and sub_cells is None
        self.n_cells = len(table)
        self.p = [e.bidegree.p for e in table.entries]
        self.q = [e.bidegree.q for e in table.entries]
        labels = table.labels()
        self.inside = [
            [i for i in range(j) if _strictly_inside(labels[i], labels[j])] for j in range(self.n_cells)
        ]
        last = [-1] * self.n_cells
        for j, srcs in enumerate(self.inside):
            for i in srcs:
                last[i] = j
        self.last = last
        # ceiling[i][j]: largest weight generator i can still reach once
        # cells up to j are attached
        containers = [[] for _ in range(self.n_cells)]
        for j, srcs in enumerate(self.inside):
            for i in srcs:
                containers[i].append(j)
        self.containers = containers
        self.min_fd_after = [self._suffix_min_fd(c) for c in containers]
        self._classes = []
        for j in range(self.n_cells):
            ids: dict[tuple, int] = {}
            cls = [ids.setdefault((self.p[i], tuple(t for t in containers[i] if t > j)), len(ids))
                   for i in range(self.n_cells)]
            self._classes.append(cls)
        self.sub = sub_cells
        if sub_cells is not None:
            sub_last = [-1] * self.n_cells
            for j in sub_cells:
                for i in self.inside[j]:
                    sub_last[i] = max(sub_last[i], j)
            self.sub_last = sub_last

    def _suffix_min_fd(self, targets: list[int]) -> dict[int, int]:
        out = {}
        best = None
        for j in reversed(targets):
            fd = self.p[j] - self.q[j]
            best = fd if best is None else min(best, fd)
            out[j] = best
        return out

    def ceiling(self, i: int, j: int, w: int) -> int:
        """Largest final weight of generator i, now at weight w, after cell j."""
        for t in self.containers[i]:
            if t > j:
                fd = self.min_fd_after[i][t]
                return max(w, self.p[i] - fd)
        return w

    def intervals(self, j: int, active) -> list[tuple[int, int, int]]:
        return [(self.p[i], w, self.ceiling(i, j, w)) for i, w in active]

    def initial(self):
        if self.sub is None:
            return ((), (), None)
        return ((), (), ((), ()))

    def _freeze(self, j, frozen, act, last):
        fr = list(frozen)
        for i in [i for i in act if last[i] <= j]:
            fr.append((self.p[i], act.pop(i)))
        return tuple(sorted(fr)), tuple(sorted(act.items()))

    def successors(self, j: int, state) -> Iterator[tuple]:
        """All states after attaching cell j."""
        frozen, active, sub = state
        pj, qj = self.p[j], self.q[j]
        fd_target = pj - qj
        act = dict(active)
        by_fd: dict[int, list[int]] = {}
        for i in self.inside[j]:
            w = act.get(i)
            if w is None:
                continue
            fd = self.p[i] - w
            if fd > fd_target:
                by_fd.setdefault(fd, []).append(i)
        options = [[None] + by_fd[fd] for fd in sorted(by_fd)]
        for choice in product(*options):
            sources = [i for i in choice if i is not None]
            a = dict(act)
            tgt = Bidegree(pj, qj)
            for i in sources:
                src, tgt = kronholm_shift(Bidegree(self.p[i], a[i]), tgt)
                a[i] = src.q
            a[j] = tgt.q
            new_sub = sub
            if sub is not None:
                new_sub = self._sub_step(j, sub, sources)
                if new_sub is False:
                    continue
            fr, ac = self._freeze(j, frozen, a, self.last)
            if self.merge:
                ac = self._symmetrize(j, ac)
            yield fr, ac, new_sub

    def _symmetrize(self, j, active):
        """Sort weights among generators that are interchangeable from now on.

        Two active generators of equal dimension lying inside exactly the same
        later cells behave identically, so only their weight multiset matters.
        """
        classes = self._classes[j]
        groups: dict[int, list[tuple[int, int]]] = {}
        for i, w in active:
            groups.setdefault(classes[i], []).append((i, w))
        if len(groups) == len(active):
            return active
        out = []
        for members in groups.values():
            if len(members) == 1:
                out.extend(members)
            else:
                out.extend(zip(sorted(i for i, _ in members), sorted(w for _, w in members)))
        return tuple(sorted(out))

    def _sub_step(self, j, sub, sources):
        """Replay the event on the prefix cells; False if it cannot happen there."""
        if j not in self.sub:
            return sub
        frozen, active = sub
        a = dict(active)
        pj = self.p[j]
        tgt = Bidegree(pj, self.q[j])
        fds = []
        for i in sources:
            fds.append((self.p[i] - a[i], i))
        fds.sort()
        if len({fd for fd, _ in fds}) != len(fds):
            return False
        for fd, i in fds:
            if fd <= tgt.fixdim:
                return False
            src, tgt = kronholm_shift(Bidegree(self.p[i], a[i]), tgt)
            a[i] = src.q
        a[j] = tgt.q
        return self._freeze(j, frozen, a, self.sub_last)


def _fits(frozen, active_ranges, target: Counter) -> bool:
    """Can a partial state still end at the target multiset?

    Frozen generators must appear exactly.  Each active generator (p, lo, hi)
    needs its own remaining slot of dimension p with weight in [lo, hi].
    """
    rem = Counter(target)
    for g in frozen:
        if rem[g] <= 0:
            return False
        rem[g] -= 1
    need: dict[int, list[tuple[int, int]]] = {}
    for p, lo, hi in active_ranges:
        need.setdefault(p, []).append((hi, lo))
    for p, ranges in need.items():
        slots = sorted(q for (pp, q), c in rem.items() if pp == p for _ in range(c))
        if len(ranges) > len(slots):
            return False
        # earliest deadline first, taking the lowest admissible slot
        for hi, lo in sorted(ranges):
            pick = next((x for x, q in enumerate(slots) if q >= lo), None)
            if pick is None or slots[pick] > hi:
                return False
            slots.pop(pick)
    return True


def _sub_ok(plan: _Plan, state, sub_answer: Counter | None) -> bool:
    if sub_answer is None or state[2] is None:
        return True
    frozen, active = state[2]
    return _fits(frozen, [(plan.p[i], w, plan.p[i]) for i, w in active], sub_answer)


def _sequential_outcomes(plan: _Plan, cap: int, budget: int, sub_answer: Counter | None) -> set[RankChart]:
    states = {plan.initial()}
    for j in range(plan.n_cells):
        nxt = set()
        for st in states:
            for s in plan.successors(j, st):
                if _sub_ok(plan, s, sub_answer):
                    nxt.add(s)
            if len(nxt) > budget:
                raise Overflow("search states", budget)
        states = nxt
    outcomes = set()
    for frozen, active, sub in states:
        if sub_answer is not None and sub is not None and Counter(sub[0]) != sub_answer:
            continue
        outcomes.add(frozen)
        if len(outcomes) > cap:
            raise Overflow("candidate outcomes", cap)
    return {RankChart(o) for o in outcomes}


def _pairwise_outcomes(table: CellTable, cap: int) -> set[RankChart]:
    """Single-round matchings of admissible pairs with one shift per pair."""
    pairs = admissible_pairs(table)
    base = table.bidegrees()
    out: set[RankChart] = set()

    def rec(idx: int, used: frozenset, gens: list) -> None:
        if idx == len(pairs):
            out.add(RankChart(gens))
            if len(out) > cap:
                raise Overflow("candidate outcomes", cap)
            return
        rec(idx + 1, used, gens)
        i, j = pairs[idx]
        if i in used or j in used:
            return
        g = list(gens)
        g[i], g[j] = kronholm_shift(g[i], g[j])
        rec(idx + 1, used | {i, j}, g)

    rec(0, frozenset(), base)
    return out


def candidate_outcomes(
    table: CellTable,
    cap: int = DEFAULT_CAP,
    model: str = SEQUENTIAL,
    budget: int = DEFAULT_STATE_BUDGET,
) -> set[RankChart]:
    """Every chart this construction can produce under the differential model."""
    if model == PAIRWISE:
        return _pairwise_outcomes(table, cap)
    return _sequential_outcomes(_Plan(table), cap, budget, None)


def _reachable(plan: _Plan, target: RankChart, budget: int, sub_answer: Counter | None) -> bool:
    goal = Counter(target.generators)
    if sorted(plan.p) != sorted(g.p for g in target.generators):
        return False
    dead: set = set()
    visited = 0
    limit = sys.getrecursionlimit()
    if plan.n_cells + 50 > limit:
        sys.setrecursionlimit(plan.n_cells + 200)

    def go(j: int, state) -> bool:
        nonlocal visited
        key = (j, state)
        if key in dead:
            return False
        visited += 1
        if visited > budget:
            raise Overflow("search states", budget)
        if j == plan.n_cells:
            if sub_answer is not None and state[2] is not None and Counter(state[2][0]) != sub_answer:
                return False
            return Counter(state[0]) == goal
        for s in plan.successors(j, state):
            if not _fits(s[0], plan.intervals(j, s[1]), goal):
                continue
            if not _sub_ok(plan, s, sub_answer):
                continue
            if go(j + 1, s):
                return True
        dead.add(key)
        return False

    return go(0, plan.initial())


def reachable(table: CellTable, chart: RankChart, budget: int = DEFAULT_STATE_BUDGET) -> bool:
    """Whether the construction can produce exactly this chart."""
    return _reachable(_Plan(table, merge=False), chart, budget, None)


# ---------------------------------------------------------------- solve


@dataclass
class Witness:
    signs: str
    pairs: int
    candidates: int | None = None
    consistent: int | None = None
    overflow: bool = False

    def as_dict(self) -> dict:
        return {
            "signs": self.signs,
            "admissible_pairs": self.pairs,
            "candidates": self.candidates,
            "consistent": self.consistent,
            "overflow": self.overflow,
        }


@dataclass
class SolveReport:
    status: str
    k: int
    n: int
    q: int
    field: str
    result: RankChart | None = None
    candidates: list[RankChart] = field(default_factory=list)
    witnesses: list[Witness] = field(default_factory=list)
    certifier: str | None = None
    note: str = ""

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED


@dataclass(frozen=True)
class SolveOptions:
    max_candidates: int = DEFAULT_CAP
    state_budget: int = DEFAULT_STATE_BUDGET
    prefix_pruning: bool = False
    dedup: bool = True
    model: str = SEQUENTIAL


def _tables(k, n, q, fld, dedup):
    if fld == CONJ:
        return [ingredient_table(k, "+" * n, CONJ)]
    if dedup:
        return distinct_tables(k, n, q, fld)
    from .schubert import enumerate_decompositions

    return [ingredient_table(k, s, fld) for s in enumerate_decompositions(n, q)]


def _sub_cells(table: CellTable) -> set[int]:
    k, n = table.k, table.n
    return {i for i, e in enumerate(table.entries) if not e.label or e.label[-1] + k <= n - 1}


def solve(k: int, n: int, q: int, field: str = REAL, options: SolveOptions | None = None, **kw) -> SolveReport:
    """Intersect candidate sets over all constructions of Gr_k(R^{n,q}).

    field selects real, complex or complex-with-conjugation cells.
    """
    opts = options or SolveOptions(**kw)
    if not 0 <= k <= n or not 0 <= q <= n:
        raise ValueError("need 0 <= k <= n and 0 <= q <= n")
    cache: dict = {}
    return _solve(k, n, q, field, opts, cache)


def _solve(k, n, q, fld, opts: SolveOptions, cache: dict) -> SolveReport:
    report = SolveReport(status=INCONCLUSIVE, k=k, n=n, q=q, field=fld)
    tables = _tables(k, n, q, fld, opts.dedup)
    npairs = {t.signs: len(admissible_pairs(t)) for t in tables}
    tables.sort(key=lambda t: (npairs[t.signs], t.signs))
    witnesses = {t.signs: Witness(t.signs, npairs[t.signs]) for t in tables}
    report.witnesses = [witnesses[t.signs] for t in tables]

    if opts.model == PAIRWISE:
        return _solve_pairwise(report, tables, witnesses, opts)

    def plan_for(t: CellTable, merge: bool):
        if not opts.prefix_pruning or fld == CONJ or n - 1 < k or n < 2:
            return _Plan(t, merge=merge), None
        prefix = t.signs[:-1]
        key = (k, prefix, fld)
        if key not in cache:
            sub = _solve(k, n - 1, prefix.count("-"), fld, opts, cache)
            cache[key] = Counter(sub.result.generators) if sub.certified else None
        sub_answer = cache[key]
        if sub_answer is None:
            return _Plan(t, merge=merge), None
        return _Plan(t, _sub_cells(t)), sub_answer

    # seed: full candidate set of the cheapest construction that fits the caps
    alive: list[RankChart] | None = None
    seed = None
    for t in tables:
        plan, sub_answer = plan_for(t, True)
        try:
            outs = _sequential_outcomes(plan, opts.max_candidates, opts.state_budget, sub_answer)
        except Overflow:
            witnesses[t.signs].overflow = True
            continue
        witnesses[t.signs].candidates = len(outs)
        witnesses[t.signs].consistent = len(outs)
        alive = sorted(outs, key=lambda c: c.generators)
        seed = t
        break
    if alive is None:
        report.note = "every construction overflowed"
        return report

    overflowed = False
    for t in tables:
        if t is seed:
            continue
        plan, sub_answer = plan_for(t, False)
        keep = []
        for chart in alive:
            try:
                if _reachable(plan, chart, opts.state_budget, sub_answer):
                    keep.append(chart)
            except Overflow:
                witnesses[t.signs].overflow = True
                overflowed = True
                keep.append(chart)
        witnesses[t.signs].consistent = len(keep)
        alive = keep
        if not alive:
            break

    report.candidates = alive
    report.certifier = seed.signs
    if not alive:
        report.status = INCONSISTENT
        report.note = "no chart is produced by every construction"
    elif overflowed:
        report.status = INCONCLUSIVE
        report.note = "membership search overflowed for some construction"
    elif len(alive) == 1:
        report.status = CERTIFIED
        report.result = RankChart(alive[0].generators, {"k": k, "n": n, "q": q, "field": fld})
    else:
        report.status = AMBIGUOUS
    return report


def _solve_pairwise(report: SolveReport, tables, witnesses, opts: SolveOptions) -> SolveReport:
    inter: set[RankChart] | None = None
    for t in tables:
        try:
            outs = _pairwise_outcomes(t, opts.max_candidates)
        except Overflow:
            witnesses[t.signs].overflow = True
            report.status = INCONCLUSIVE
            report.note = f"construction {t.signs} overflowed"
            return report
        witnesses[t.signs].candidates = len(outs)
        inter = outs if inter is None else inter & outs
    alive = sorted(inter or (), key=lambda c: c.generators)
    report.candidates = alive
    if not alive:
        report.status = INCONSISTENT
    elif len(alive) == 1:
        report.status = CERTIFIED
        report.result = alive[0]
        report.certifier = tables[0].signs
    else:
        report.status = AMBIGUOUS
    return report
