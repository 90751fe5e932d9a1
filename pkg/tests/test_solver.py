from collections import Counter

import pytest

from eqgrass.formulas import complexify, gr_2n2, gr_conj, gr_kn1
from eqgrass.mtwo import RankChart, kronholm_shift
from eqgrass.schubert import (
    CellTable,
    canonical_kn1_signs,
    distinct_tables,
    enumerate_decompositions,
    ingredient_table,
)
from eqgrass.solver import (
    AMBIGUOUS,
    CERTIFIED,
    INCONCLUSIVE,
    INCONSISTENT,
    PAIRWISE,
    Overflow,
    SolveOptions,
    admissible_pairs,
    candidate_outcomes,
    reachable,
    solve,
)
from eqgrass.young import betti, contains, from_jumps


def naive_outcomes(table):
    """Plain replay of the attachment model, keeping every generator by index."""
    entries = table.entries
    states = {()}
    for j, e in enumerate(entries):
        nxt = set()
        for st in states:
            by_fd = {}
            for i in range(j):
                if entries[i].label != e.label and contains(entries[i].label, e.label):
                    fd = st[i][0] - st[i][1]
                    if fd > e.p - e.q:
                        by_fd.setdefault(fd, []).append(i)
            fds = sorted(by_fd)

            def rec(level, chosen):
                if level == len(fds):
                    g = list(st) + [(e.p, e.q)]
                    for i in chosen:
                        g[i], g[j] = kronholm_shift(g[i], g[j])
                    nxt.add(tuple(tuple(x) for x in g))
                    return
                rec(level + 1, chosen)
                for i in by_fd[fds[level]]:
                    rec(level + 1, chosen + [i])

            rec(0, [])
        states = nxt
    return {RankChart(st) for st in states}


def label_pairs(table):
    return {(table[i].label, table[j].label) for i, j in admissible_pairs(table)}


def chart(counts):
    return RankChart([key for key, c in counts.items() for _ in range(c)])


# ---------------------------------------------------------------- pairs


def test_pairs_alternating_five():
    assert label_pairs(ingredient_table(2, "+-+-+")) == {((0, 2), (1, 2)), ((1, 1), (1, 2))}


def test_pairs_skip_cell_not_containing_source():
    t = ingredient_table(2, "+-+-++++")
    target = from_jumps((5, 6))
    assert not any(lab == target for _, lab in label_pairs(t))
    src = t.lookup(from_jumps((2, 8)))
    tgt = t.lookup(target)
    # admissible by bidegree alone, excluded by containment
    assert src.bidegree.fixdim > tgt.bidegree.fixdim and src.p < tgt.p


@pytest.mark.parametrize("k,n", [(k, n) for n in range(2, 9) for k in range(1, n)])
def test_no_pairs_for_canonical_construction(k, n):
    assert admissible_pairs(ingredient_table(k, canonical_kn1_signs(k, n))) == []


def test_pairs_ignore_tie_break_order():
    t = ingredient_table(2, "-+-++-")
    shuffled = CellTable(t.k, t.n, t.signs, t.field,
                         tuple(sorted(t.entries, key=lambda e: (e.p, e.q, tuple(-x for x in e.label)))))
    assert shuffled.entries != t.entries
    assert label_pairs(shuffled) == label_pairs(t)


# ---------------------------------------------------------------- outcomes


def test_outcomes_alternating_four():
    got = candidate_outcomes(ingredient_table(2, "-+-+"))
    assert got == {
        chart({(0, 0): 1, (1, 1): 1, (2, 1): 2, (3, 3): 1, (4, 2): 1}),
        chart({(0, 0): 1, (1, 1): 1, (2, 1): 1, (2, 2): 1, (3, 2): 1, (4, 2): 1}),
    }


def test_outcomes_canonical_is_single():
    for k, n in [(2, 4), (3, 6), (2, 7)]:
        t = ingredient_table(k, canonical_kn1_signs(k, n))
        assert candidate_outcomes(t) == {t.chart()}


def test_outcomes_point():
    assert candidate_outcomes(ingredient_table(0, "+-+")) == {RankChart([(0, 0)])}


@pytest.mark.parametrize("k,n,q", [(2, 4, 2), (2, 5, 2), (2, 5, 3), (2, 6, 2), (2, 6, 3), (1, 6, 3), (2, 6, 1)])
def test_outcomes_match_naive_replay(k, n, q):
    for t in distinct_tables(k, n, q):
        assert candidate_outcomes(t) == naive_outcomes(t), t.signs


@pytest.mark.parametrize("k,n,q", [(2, 5, 2), (2, 6, 2), (2, 6, 3)])
def test_reachable_matches_membership(k, n, q):
    tables = distinct_tables(k, n, q)
    sets = {t.signs: candidate_outcomes(t) for t in tables}
    # a fixed slice of the pool keeps the dfs checks fast
    pool = sorted(set().union(*sets.values()), key=repr)[:150]
    for t in tables:
        for c in pool:
            assert reachable(t, c) == (c in sets[t.signs])


@pytest.mark.parametrize("k,n,q", [(2, 5, 2), (2, 6, 2), (2, 6, 3), (2, 6, 1), (1, 6, 2)])
def test_outcomes_conserve_dimensions(k, n, q):
    want = {d: betti(k, n, d) for d in range(k * (n - k) + 1) if betti(k, n, d)}
    for t in distinct_tables(k, n, q):
        for c in candidate_outcomes(t):
            assert c.dimension_totals() == want


def test_outcome_cap_overflow():
    t = ingredient_table(2, "-+-+")
    with pytest.raises(Overflow):
        candidate_outcomes(t, cap=1)
    with pytest.raises(Overflow):
        candidate_outcomes(ingredient_table(2, "+-+-+-"), budget=3)


def test_pairwise_model_outcomes():
    got = candidate_outcomes(ingredient_table(2, "-+-+"), model=PAIRWISE)
    assert got == candidate_outcomes(ingredient_table(2, "-+-+"))


# ---------------------------------------------------------------- solve


def test_solve_examples():
    r = solve(2, 4, 2)
    assert r.status == CERTIFIED
    assert r.result == RankChart([(0, 0), (1, 1), (2, 1), (2, 2), (3, 2), (4, 2)])
    assert solve(1, 3, 1).result == RankChart([(0, 0), (1, 1), (2, 1)])
    assert solve(2, 5, 2).result == chart(
        {(0, 0): 1, (1, 1): 1, (2, 1): 1, (2, 2): 1, (3, 2): 2, (4, 2): 2, (5, 3): 1, (6, 3): 1}
    )
    assert solve(2, 4, 1).result == chart({(0, 0): 1, (1, 1): 1, (2, 1): 2, (3, 1): 1, (4, 2): 1})


def test_solve_point_and_trivial_action():
    assert solve(0, 3, 1).result == RankChart([(0, 0)])
    r = solve(2, 5, 0)
    assert r.certified and r.result == ingredient_table(2, "+++++").chart()


def test_solve_forces_shift_in_four_dimensions():
    unshifted = chart({(0, 0): 1, (1, 1): 1, (2, 1): 2, (3, 3): 1, (4, 2): 1})
    r = solve(2, 4, 2)
    assert unshifted in candidate_outcomes(ingredient_table(2, "-+-+"))
    assert unshifted not in r.candidates
    assert not reachable(ingredient_table(2, "+--+"), unshifted)


def test_answer_realised_by_every_construction():
    r = solve(2, 6, 2, dedup=False)
    assert r.certified
    assert len(r.witnesses) == 15
    # the surviving set only shrinks and ends at the answer
    sizes = [w.consistent for w in r.witnesses]
    assert sizes == sorted(sizes, reverse=True) and sizes[-1] == 1
    for s in enumerate_decompositions(6, 2):
        assert reachable(ingredient_table(2, s), r.result)


@pytest.mark.parametrize("k,n", [(k, n) for n in range(2, 7) for k in range(1, n)])
def test_solve_kn1_family(k, n):
    r = solve(k, n, 1)
    assert r.certified and r.result == gr_kn1(k, n)


@pytest.mark.parametrize("n", range(3, 7))
def test_solve_gr2_family(n):
    r = solve(2, n, 2)
    assert r.certified and r.result == gr_2n2(n)


@pytest.mark.parametrize("k,n,q", [(2, 5, 2), (2, 6, 2), (3, 6, 1), (2, 6, 3)])
def test_prefix_pruning_agrees(k, n, q):
    a = solve(k, n, q)
    b = solve(k, n, q, prefix_pruning=True)
    assert a.status == b.status == CERTIFIED
    assert a.result == b.result


def test_complex_solve_doubles():
    for k, n, q in [(2, 4, 2), (2, 5, 2), (2, 5, 1)]:
        real = solve(k, n, q)
        cx = solve(k, n, q, "C")
        assert cx.certified and cx.result == complexify(real.result)


def test_conjugation_solve():
    for k, n in [(2, 4), (2, 5), (1, 3)]:
        r = solve(k, n, 1, "Cconj")
        assert r.certified and r.result == gr_conj(k, n)


def test_solve_reports_overflow():
    r = solve(2, 5, 2, options=SolveOptions(state_budget=2))
    assert r.status == INCONCLUSIVE
    assert any(w.overflow for w in r.witnesses)


def test_pairwise_model_cannot_agree_across_constructions():
    r = solve(2, 4, 2, model=PAIRWISE)
    assert r.status == INCONSISTENT
    assert r.result is None


def test_ambiguous_when_only_one_construction():
    # a lone construction with several outcomes cannot be certified
    from eqgrass import solver

    tables = [ingredient_table(2, "-+-+")]
    original = solver._tables
    solver._tables = lambda *a: list(tables)
    try:
        r = solve(2, 4, 2)
    finally:
        solver._tables = original
    assert r.status == AMBIGUOUS
    assert len(r.candidates) == 2


def test_solve_rejects_bad_parameters():
    with pytest.raises(ValueError):
        solve(5, 3, 1)
    with pytest.raises(ValueError):
        solve(1, 3, 4)


def test_conservation_under_full_solve():
    r = solve(2, 6, 2)
    assert Counter(g.p for g in r.result) == Counter(
        {d: betti(2, 6, d) for d in range(9)}
    )
