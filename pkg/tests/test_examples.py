"""Worked examples for each operation on small named graphs."""

import pytest

from polsyz.bowtie import (
    GENERAL,
    MONEDGE,
    PATH_DEGENERATE,
    bowtie_walk,
    classify_bowtie,
    enumerate_bowties,
    enumerate_odd_cycles,
    is_induced_bowtie,
    is_normal,
    is_polarizable,
    odd_cycle_condition,
)
from polsyz.graph_core import LoopGraph, MonomialSet
from polsyz.oracle import (
    generation_check,
    linear_presentation_oracle,
    mu_Z,
    polarizable_oracle,
    span_slice_dim,
    z_slice_dim,
)
from polsyz.syzygy import (
    Binomial,
    SignedMonomial,
    SyzygyVector,
    generators_P,
    generators_Z,
    generic_rank,
    m_factor,
    p_binomial,
    t_vector,
    verify_binomial_relation,
    verify_differential_syzygy,
    z_vector,
)
from polsyz.walks import (
    WalkError,
    build_skeleton,
    classify_non_split,
    decompose,
    enumerate_even_cycles,
    enumerate_non_split_walks,
    is_decomposable,
    is_split,
    make_walk,
    Skeleton,
    SkeletonNode,
    recurrence_report,
    skeleton_non_split,
    split_decomposition,
)

K4 = MonomialSet.from_pairs([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
SQUARE = MonomialSet.from_pairs([(1, 2), (2, 3), (3, 4), (4, 1)])
TRIANGLE = MonomialSet.from_pairs([(1, 2), (2, 3), (1, 3)])
BUTTERFLY = MonomialSet.from_pairs([(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3)])
PATH5 = MonomialSet.from_pairs([(1, 2), (2, 3), (3, 4), (4, 5)])


def walk_of(f, verts):
    """Closed walk through the vertex sequence (a repeated vertex is a loop)."""
    g = LoopGraph(f)
    edges = [g.edge(verts[k], verts[(k + 1) % len(verts)]) for k in range(len(verts))]
    return make_walk(f, edges)


def bowtie_by_path(f, path):
    g = LoopGraph(f)
    return next(b for b in enumerate_bowties(g) if b.path in (path, path[::-1]))


# --- walks ------------------------------------------------------------------

def test_walk_construction(villa):
    with pytest.raises(WalkError):
        make_walk(villa, [2, 4, 2, 4])
    assert len(set(make_walk(SQUARE, [1, 2, 3, 4]).vertices)) == 4
    assert make_walk(villa, [1, 2, 4, 5, 4, 2]).vertices == (1, 1, 2, 3, 3, 2)


def test_canonical_keys(villa):
    assert make_walk(SQUARE, [1, 2, 3, 4]).key == make_walk(SQUARE, [3, 4, 1, 2]).key
    assert make_walk(villa, [1, 2, 4, 5, 4, 2]).key == make_walk(villa, [5, 4, 2, 1, 2, 4]).key
    cycles = enumerate_even_cycles(LoopGraph(K4))
    assert len({w.key for w in cycles}) == 3
    assert make_walk(SQUARE, [4, 3, 2, 1]).key == make_walk(SQUARE, [1, 2, 3, 4]).key


def test_path_degenerate_bowtie_does_not_split():
    w = walk_of(BUTTERFLY, [3, 1, 2, 3, 4, 5])
    assert len(w) == 6 and not is_split(w)
    assert split_decomposition(make_walk(SQUARE, [1, 2, 3, 4])) is None


def test_loop_triangle_square_chain_splits():
    # the loop and the triangle form an even piece cut off at vertex 3
    f = MonomialSet.from_pairs([(1, 1), (1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 6),
                                (6, 3)])
    w = walk_of(f, [1, 1, 2, 3, 4, 5, 6, 3])
    assert is_split(w)
    s = build_skeleton(decompose(w))
    assert [nd.color for nd in s.nodes].count("black") == 2
    assert not skeleton_non_split(s)


def test_recurrence_reports(villa):
    rep = recurrence_report(make_walk(villa, [1, 2, 4, 5, 4, 2]))
    assert rep.all_ok
    assert {r.item for r in rep.edges} == {2, 4}
    assert all(r.sense_reversing and r.parity_ok for r in rep.edges)
    x2 = next(r for r in rep.vertices if r.item == 2)
    assert x2.positions == (2, 5)
    assert recurrence_report(make_walk(SQUARE, [1, 2, 3, 4])).vertices == ()
    three = MonomialSet.from_pairs([(1, 2), (2, 3), (3, 1), (1, 4), (4, 5), (5, 1),
                                    (1, 6), (6, 7), (7, 8), (8, 1)])
    w = walk_of(three, [1, 2, 3, 1, 4, 5, 1, 6, 7, 8])
    rep = recurrence_report(w)
    assert any(not r.exactly_twice for r in rep.vertices)


def test_cycle_arrangement_chain():
    # loop at 1, square 1-2-3-4, hexagon 3-5-6-7-8-9, loop at 7
    f = MonomialSet.from_pairs([(1, 1), (1, 2), (2, 3), (3, 4), (4, 1),
                                (3, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 3), (7, 7)])
    w = walk_of(f, [1, 1, 2, 3, 5, 6, 7, 7, 8, 9, 3, 4])
    assert not is_split(w)
    c = classify_non_split(w)
    assert c.kind == "arrangement" and c.valid
    assert len(c.constituent_cycles) == 4
    s = build_skeleton(c)
    assert sorted(nd.color for nd in s.nodes) == ["black", "black", "white", "white"]
    assert len(s.links) == 3 and skeleton_non_split(s)


def test_villa_molecule(villa):
    c = classify_non_split(make_walk(villa, [1, 2, 4, 5, 4, 2]))
    assert c.kind == "molecule"
    assert sorted(map(len, c.constituent_cycles)) == [1, 1]
    assert c.path_vertices == (frozenset({1, 2, 3}),)


def test_monedge_skeleton():
    f = MonomialSet.from_pairs([(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 6), (6, 4)])
    w = make_walk(f, [1, 2, 4, 5, 6, 7, 4, 3])
    s = build_skeleton(classify_non_split(w))
    colors = {i: nd.color for i, nd in enumerate(s.nodes)}
    white = [i for i, c in colors.items() if c == "white"]
    assert len(white) == 1 and len(s.links) == 2
    assert all(white[0] in link[:2] for link in s.links)
    one = build_skeleton(classify_non_split(make_walk(SQUARE, [1, 2, 3, 4])))
    assert [nd.color for nd in one.nodes] == ["white"] and not one.links


def test_split_skeletons():
    # triangle, triangle, square in a chain: black-black-white
    f = MonomialSet.from_pairs([(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3),
                                (5, 6), (6, 7), (7, 8), (8, 5)])
    w = walk_of(f, [1, 2, 3, 4, 5, 6, 7, 8, 5, 3])
    c = decompose(w)
    assert sorted(nd.color for nd in build_skeleton(c).nodes) == ["black", "black", "white"]
    assert not skeleton_non_split(build_skeleton(c)) and is_split(w)
    # four black nodes linked in a ring
    nodes = tuple(SkeletonNode("black", "cycle", (k,), frozenset({k, k % 4 + 1}))
                  for k in range(1, 5))
    links = tuple((k, (k + 1) % 4, k + 2) for k in range(4))
    s = Skeleton(nodes, links)
    assert not skeleton_non_split(s)


def test_even_cycle_counts():
    assert len(enumerate_even_cycles(LoopGraph(K4))) == 3
    assert len(enumerate_even_cycles(LoopGraph(SQUARE))) == 1
    assert enumerate_even_cycles(LoopGraph(TRIANGLE)) == []


def test_non_split_enumeration(villa, decagon):
    vw = enumerate_non_split_walks(LoopGraph(villa), 6)
    ties = {bowtie_walk(b, LoopGraph(villa)).key for b in enumerate_bowties(LoopGraph(villa))}
    assert len(ties) == 3 and ties <= {w.key for w in vw}
    assert [w.edges for w in enumerate_non_split_walks(LoopGraph(SQUARE), 8)] == [(1, 2, 3, 4)]
    dw = enumerate_non_split_walks(LoopGraph(decagon), 12)
    lengths = sorted(len(w) for w in dw if len(set(w.vertices)) == len(w))
    assert 4 in lengths and 10 in lengths and 8 not in lengths
    monedge = bowtie_by_path(decagon, (2, 3))
    assert bowtie_walk(monedge, LoopGraph(decagon)).key in {w.key for w in dw}


def test_decomposability(villa, decagon, octagon):
    g = LoopGraph(decagon)
    tie = bowtie_by_path(decagon, (2, 3))
    assert not is_induced_bowtie(tie, g)
    d = is_decomposable(bowtie_walk(tie, g), g)
    assert d is not None and d.h == (g.edge(7, 8),)
    vw = make_walk(villa, [1, 2, 4, 5, 4, 2])
    assert is_decomposable(vw, LoopGraph(villa)) is None
    og = LoopGraph(octagon)
    eight = next(w for w in enumerate_even_cycles(og) if len(w) == 8)
    assert is_decomposable(eight, og).h == (og.edge(3, 6),)


# --- bow ties ---------------------------------------------------------------

def test_odd_cycles(villa):
    assert enumerate_odd_cycles(LoopGraph(villa)) == [(1,), (2,), (3,)]
    assert len(enumerate_odd_cycles(LoopGraph(K4), chordless_only=True)) == 4
    assert enumerate_odd_cycles(LoopGraph(SQUARE)) == []


def test_bowtie_lists(villa):
    ties = enumerate_bowties(LoopGraph(villa))
    assert sorted((b.cycle1, b.cycle2, b.path) for b in ties) == [
        ((1,), (2,), (1, 2)), ((1,), (3,), (1, 2, 3)), ((2,), (3,), (2, 3))]
    assert enumerate_bowties(LoopGraph(SQUARE)) == []
    (b,) = enumerate_bowties(LoopGraph(BUTTERFLY))
    assert classify_bowtie(b) == (PATH_DEGENERATE, 0)
    assert is_induced_bowtie(b, LoopGraph(BUTTERFLY))


def test_bowtie_kinds(villa):
    loops = MonomialSet.from_pairs([(1, 1), (1, 2), (2, 2)])
    assert classify_bowtie(enumerate_bowties(LoopGraph(loops))[0]) == (MONEDGE, 2)
    tl = MonomialSet.from_pairs([(1, 1), (1, 2), (2, 3), (1, 3)])
    assert classify_bowtie(enumerate_bowties(LoopGraph(tl))[0]) == (PATH_DEGENERATE, 1)
    b = bowtie_by_path(villa, (1, 2, 3))
    assert classify_bowtie(b) == (GENERAL, 2)
    assert is_induced_bowtie(b, LoopGraph(villa))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_complete_graphs_polarizable(n):
    sq = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    assert is_polarizable(MonomialSet.from_pairs(sq)).polarizable
    loops = sq + [(i, i) for i in range(1, n + 1)]
    assert is_polarizable(MonomialSet.from_pairs(loops)).polarizable


def test_odd_cycle_condition_examples(villa):
    assert not odd_cycle_condition(villa)
    assert odd_cycle_condition(K4)
    joined = MonomialSet.from_pairs([(1, 2), (2, 3), (3, 1), (3, 4), (4, 5),
                                     (5, 6), (6, 7), (7, 5)])
    assert not odd_cycle_condition(joined)


def test_normality_examples(villa, decagon, hexagon):
    assert not is_normal(villa)
    assert is_normal(decagon)
    assert is_normal(hexagon) and not is_polarizable(hexagon).polarizable


# --- syzygies ---------------------------------------------------------------

def test_decagon_square_z(decagon):
    g = LoopGraph(decagon)
    w = walk_of(decagon, [2, 3, 7, 8])
    z = z_vector(w)
    assert verify_differential_syzygy(z, decagon)
    j = g.edge(2, 3)
    assert abs(z.entries[j - 1].coeff) == 1
    assert z.entries[j - 1].exponents == tuple(1 if i in (7, 8) else 0 for i in range(1, 11))


def test_verify_perturbed(villa):
    z = z_vector(make_walk(villa, [1, 2, 4, 5, 4, 2]))
    e = list(z.entries)
    e[0] = SignedMonomial(-e[0].coeff, e[0].exponents)
    assert not verify_differential_syzygy(SyzygyVector(tuple(e), z.multidegree), villa)
    zero = SyzygyVector(tuple(SignedMonomial(0, (0, 0, 0)) for _ in range(5)), (2, 2, 2))
    assert verify_differential_syzygy(zero, villa)


def test_villa_t_exact(villa):
    w = make_walk(villa, [1, 2, 4, 5, 4, 2])
    t = t_vector(w)
    want = [(1, (0, 2, 2)), (-2, (1, 1, 2)), (0, (0, 0, 0)), (2, (2, 1, 1)), (-1, (2, 2, 0))]
    got = [(e.coeff, e.exponents) for e in t.entries]
    assert got in (want, [(-c, x) for c, x in want])


def test_t_versus_z():
    w = make_walk(SQUARE, [1, 2, 3, 4])
    assert t_vector(w) == z_vector(w) and m_factor(w) == (0, 0, 0, 0)
    bw = walk_of(BUTTERFLY, [3, 1, 2, 3, 4, 5])
    assert m_factor(bw) == (0, 0, 1, 0, 0)
    # triangles 1-2-3 and 5-6-7 joined by the path 3-4-5
    f = MonomialSet.from_pairs([(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 6), (6, 7), (7, 5)])
    gw = walk_of(f, [3, 1, 2, 3, 4, 5, 6, 7, 5, 4])
    assert m_factor(gw) == (0, 0, 1, 1, 1, 0, 0)


def test_binomial_relations(villa):
    assert verify_binomial_relation(p_binomial(make_walk(villa, [1, 2, 4, 5, 4, 2])), villa)
    assert verify_binomial_relation(Binomial((1, 0, 1, 0), (0, 1, 0, 1)), SQUARE)
    assert not verify_binomial_relation(Binomial((2, 0, 0, 0), (0, 1, 0, 1)), SQUARE)


def test_generator_sets(villa, decagon):
    assert len(generators_Z(SQUARE)) == 1
    dz = generators_Z(decagon)
    assert sorted(len(v.source) for v in dz) == [4, 10]
    assert len(generators_Z(villa)) == 3
    sp = generators_P(SQUARE, 8)
    assert list(sp) == [z_vector(make_walk(SQUARE, [1, 2, 3, 4]))]
    vp = generators_P(villa, 6)
    assert len(vp) == 3
    vw = make_walk(villa, [1, 2, 4, 5, 4, 2])
    assert t_vector(vw) in list(vp) and t_vector(vw) == z_vector(vw).scaled((0, 1, 0))
    for w in enumerate_non_split_walks(LoopGraph(K4), 8):
        assert t_vector(w) == z_vector(w).scaled(m_factor(w))


def test_generic_ranks(villa):
    assert generic_rank(generators_Z(villa)) == 2
    assert generic_rank(generators_P(villa, 6)) == 2
    assert generic_rank(generators_Z(SQUARE)) == 1


# --- oracle -----------------------------------------------------------------

def test_slice_examples(villa, decagon):
    assert z_slice_dim(villa, (2, 1, 2)) == 1
    assert z_slice_dim(SQUARE, (1, 1, 1, 1)) == 1
    assert z_slice_dim(villa, (2, 0, 0)) == 0
    sq = generators_Z(SQUARE)
    assert span_slice_dim(sq, (1, 1, 1, 1)) == 1
    assert span_slice_dim([], (1, 1, 1, 1)) == 0
    ones = (1,) * 10
    assert span_slice_dim(generators_Z(decagon), ones) == z_slice_dim(decagon, ones)


def test_mu_examples():
    assert mu_Z(SQUARE, 8).mu == 1


def test_oracle_examples(decagon):
    assert polarizable_oracle(K4, 8)
    gz = generators_Z(decagon)
    assert generation_check(gz, decagon, 12)
    no_ten = [v for v in gz if len(v.source) != 10]
    verdict = generation_check(no_ten, decagon, 12)
    assert not verdict and verdict.first_failure == (1,) * 10


def test_linear_presentation_examples():
    v = linear_presentation_oracle(PATH5, 6)
    assert not v and v.first_failure == (1, 1, 0, 1, 1)
    assert linear_presentation_oracle(TRIANGLE, 6)
