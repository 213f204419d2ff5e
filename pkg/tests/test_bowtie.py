import pytest
from hypothesis import given, settings

from polsyz.bowtie import (
    GENERAL,
    MONEDGE,
    PATH_DEGENERATE,
    bowtie_walk,
    classify_bowtie,
    enumerate_bowties,
    enumerate_odd_cycles,
    is_chordless,
    is_induced_bowtie,
    is_normal,
    is_polarizable,
    odd_cycle_condition,
)
from polsyz.graph_core import IncohesiveError, LoopGraph, MonomialSet, is_bipartite
from polsyz.walks import is_split

from conftest import load
from strategies import cohesive_sets


def test_villa_bowties(villa):
    ties = enumerate_bowties(LoopGraph(villa), induced_only=True)
    kinds = sorted(classify_bowtie(b) for b in ties)
    assert kinds == [(GENERAL, 2), (MONEDGE, 2), (MONEDGE, 2)]
    rep = is_polarizable(villa)
    assert not rep.polarizable
    assert [(b.cycle1, b.cycle2, b.path) for b in rep.witnesses] == [((1,), (3,), (1, 2, 3))]
    assert not rep.normal and not rep.odd_cycle_condition


def test_hexagon_witness(hexagon):
    rep = is_polarizable(hexagon)
    assert not rep.polarizable
    (b,) = rep.witnesses
    assert classify_bowtie(b) == (PATH_DEGENERATE, 0)
    assert {frozenset(b.cycle1), frozenset(b.cycle2)} == {frozenset({2, 3, 4}),
                                                          frozenset({4, 5, 6})}
    assert rep.normal and rep.odd_cycle_condition


def test_decagon_polarizable(decagon):
    rep = is_polarizable(decagon)
    assert rep.polarizable and not rep.witnesses and not rep.induced_bowties


def test_octagon_pinch(octagon):
    from polsyz.graph_core import pinch
    assert is_polarizable(octagon).polarizable
    rep = is_polarizable(pinch(octagon, 3, 6).f)
    assert not rep.polarizable
    assert classify_bowtie(rep.witnesses[0])[0] == PATH_DEGENERATE


def test_chordless():
    g = LoopGraph(MonomialSet.from_pairs([(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3)]))
    assert not is_chordless(g, (1, 2, 3, 4, 5))
    assert is_chordless(g, (1, 3, 4, 5))
    odd = enumerate_odd_cycles(g, chordless_only=True)
    assert odd == [(1, 2, 3)]


def test_loops_are_odd_cycles(villa):
    assert enumerate_odd_cycles(LoopGraph(villa)) == [(1,), (2,), (3,)]


def test_non_induced_ties_listed():
    # triangles 123 and 456 joined by 3-4 and 2-5
    f = MonomialSet.from_pairs([(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4),
                                (3, 4), (2, 5)])
    g = LoopGraph(f)
    every = enumerate_bowties(g)
    induced = enumerate_bowties(g, induced_only=True)
    assert len(every) > len(induced)
    assert all(is_induced_bowtie(b, g) for b in induced)
    assert not odd_cycle_condition(g).pair


def test_odd_cycle_condition_pair():
    f = MonomialSet.from_pairs([(1, 1), (1, 2), (2, 3), (3, 3)])
    occ = odd_cycle_condition(f)
    assert not occ and occ.pair == ((1,), (3,))
    with pytest.raises(IncohesiveError):
        odd_cycle_condition(load("disconnected"))


def test_bowtie_walks_are_non_split(villa, hexagon):
    for f in (villa, hexagon):
        g = LoopGraph(f)
        for b in enumerate_bowties(g):
            w = bowtie_walk(b, g)
            assert len(w) % 2 == 0
            assert not is_split(w)


@settings(max_examples=60, deadline=None)
@given(cohesive_sets(max_n=6))
def test_decision_implications(f):
    rep = is_polarizable(f)
    assert rep.normal == is_normal(f)
    if is_bipartite(f):
        assert rep.polarizable
    if rep.polarizable:
        assert rep.normal
    g = LoopGraph(f)
    for b in rep.induced_bowties:
        assert is_induced_bowtie(b, g)
    assert set(rep.witnesses) <= set(rep.induced_bowties)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_complete_with_loops_polarizable(n):
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    assert is_polarizable(MonomialSet.from_pairs(pairs)).polarizable


def test_bowtie_normality_misses_chorded_paths():
    # loop at 1 and triangle 345 are disjoint and unjoined; every bow tie
    # between them has a chord, so none is induced
    f = MonomialSet.from_pairs([(1, 1), (1, 2), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)])
    assert not odd_cycle_condition(f)
    assert is_normal(f)
    # x1*x3*x4*x5 is integral (its square is x1^2 * x3x4 * x3x5 * x4x5) but
    # no two generators multiply to it, so the algebra is not normal
    target = (1, 0, 1, 1, 1)
    exps = [m.exponents(5) for m in f.gens]
    assert not any(tuple(a + b for a, b in zip(p, q)) == target
                   for p in exps for q in exps)
    square = [exps[0], exps[4], exps[5], exps[6]]
    assert tuple(map(sum, zip(*square))) == tuple(2 * x for x in target)
