"""Bow ties and the polarizability, normality and odd cycle decisions."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .graph_core import as_graph, require_cohesive, IncohesiveError, is_cohesive
from .walks import Walk, _check_vertices, simple_cycles

__all__ = [
    "BowTie",
    "PolarReport",
    "enumerate_odd_cycles",
    "is_chordless",
    "enumerate_bowties",
    "is_induced_bowtie",
    "classify_bowtie",
    "bowtie_walk",
    "is_polarizable",
    "odd_cycle_condition",
    "is_normal",
]

PATH_DEGENERATE = "path_degenerate"
MONEDGE = "monedge"
GENERAL = "general"


def _cycle_edges(g, cyc):
    k = len(cyc)
    return tuple(g.edge(cyc[i], cyc[(i + 1) % k]) for i in range(k))


def _path_edges(g, path):
    return tuple(g.edge(a, b) for a, b in zip(path, path[1:]))


@dataclass(frozen=True)
class BowTie:
    """Two edge-disjoint odd cycles joined by a path.

    Cycles are vertex tuples (a 1-tuple is a loop); ``path`` runs from a
    vertex of ``cycle1`` to a vertex of ``cycle2`` and is the single shared
    vertex when the cycles touch.  The ``*_edges`` fields hold generator
    indices.
    """

    cycle1: tuple
    cycle2: tuple
    path: tuple
    cycle1_edges: tuple = field(compare=False)
    cycle2_edges: tuple = field(compare=False)
    path_edges: tuple = field(compare=False)

    @property
    def vertices(self):
        return frozenset(self.cycle1) | frozenset(self.cycle2) | frozenset(self.path)

    @property
    def edges(self):
        return frozenset(self.cycle1_edges + self.cycle2_edges + self.path_edges)

    def to_dict(self):
        kind, loops = classify_bowtie(self)
        return {
            "cycle1": list(self.cycle1_edges),
            "cycle2": list(self.cycle2_edges),
            "path": list(self.path_edges),
            "vertices": sorted(self.vertices),
            "kind": kind,
            "loops": loops,
        }


def _make_bowtie(g, c1, c2, path):
    if (c2, tuple(reversed(path))) < (c1, path):
        c1, c2, path = c2, c1, tuple(reversed(path))
    return BowTie(c1, c2, path, _cycle_edges(g, c1), _cycle_edges(g, c2),
                  _path_edges(g, path))


def is_chordless(g, cyc):
    """No proper edge joins two non-consecutive vertices of the cycle."""
    k = len(cyc)
    if k <= 3:
        return True
    pos = {v: i for i, v in enumerate(cyc)}
    for v in cyc:
        for w in g.proper_neighbors(v):
            if w in pos and (pos[v] - pos[w]) % k not in (1, k - 1):
                return False
    return True


def enumerate_odd_cycles(g, chordless_only=False, max_len=None):
    """Loops as 1-tuples and odd simple cycles as vertex tuples."""
    g = as_graph(g)
    out = [(g.f[j].lo,) for j in g.loops]
    for cyc in simple_cycles(g, max_len):
        if len(cyc) % 2 and (not chordless_only or is_chordless(g, cyc)):
            out.append(cyc)
    return sorted(out, key=lambda c: (len(c), c))


def _rotate_to(cyc, v):
    i = cyc.index(v)
    return cyc[i:] + cyc[:i]


def _connecting_paths(g, c1, c2, induced):
    """Simple paths from ``c1`` to ``c2`` with inner vertices off both."""
    s1, s2 = set(c1), set(c2)
    out = []
    for u in sorted(s1):
        path = [u]
        on = {u}

        def dfs(x):
            for y in g.proper_neighbors(x):
                if y in on or y in s1:
                    continue
                if induced:
                    # y may touch only the current end among earlier vertices
                    if any(z in on or z in s1 for z in g.proper_neighbors(y)
                           if z != x):
                        continue
                if y in s2:
                    out.append(tuple(path) + (y,))
                    continue
                path.append(y)
                on.add(y)
                dfs(y)
                path.pop()
                on.discard(y)

        dfs(u)
    return out


def enumerate_bowties(g, induced_only=False, max_cycle_len=None):
    """All bow ties, or only the induced ones (much faster on dense graphs)."""
    g = as_graph(g)
    cycles = enumerate_odd_cycles(g, chordless_only=induced_only, max_len=max_cycle_len)
    cedges = {c: set(_cycle_edges(g, c)) for c in cycles}
    found = {}
    for c1, c2 in combinations(cycles, 2):
        if cedges[c1] & cedges[c2]:
            continue
        common = set(c1) & set(c2)
        if len(common) > 1:
            continue
        if induced_only:
            cross = sum(
                1 for v in c1 for w in g.proper_neighbors(v)
                if w in c2 and v not in common and w not in common
            )
            # touching cycles allow no cross edge, disjoint ones at most the
            # single edge of a monedge path
            if cross > (0 if common else 1):
                continue
        if common:
            v = common.pop()
            cands = [(_rotate_to(c1, v), _rotate_to(c2, v), (v,))]
        else:
            cands = []
            for p in _connecting_paths(g, c1, c2, induced_only):
                cands.append((_rotate_to(c1, p[0]), _rotate_to(c2, p[-1]), p))
        for a, b, p in cands:
            bt = _make_bowtie(g, a, b, p)
            if induced_only and not is_induced_bowtie(bt, g):
                continue
            key = (frozenset([frozenset(bt.cycle1_edges), frozenset(bt.cycle2_edges)]),
                   min(bt.path, tuple(reversed(bt.path))))
            found.setdefault(key, bt)
    return sorted(found.values(), key=lambda b: bowtie_walk(b, g).key)


def is_induced_bowtie(b, g):
    """No proper edge of ``g`` among the bow tie's vertices except its own."""
    g = as_graph(g)
    verts = b.vertices
    own = b.edges
    for v in verts:
        for w in g.proper_neighbors(v):
            if w in verts and g.edge(v, w) not in own:
                return False
    return True


def classify_bowtie(b):
    k = len(b.path_edges)
    kind = PATH_DEGENERATE if k == 0 else MONEDGE if k == 1 else GENERAL
    loops = (len(b.cycle1) == 1) + (len(b.cycle2) == 1)
    return kind, loops


def bowtie_walk(b, g):
    """The even closed walk around the first cycle, along the path, around
    the second cycle and back."""
    g = as_graph(g)
    p = b.path
    verts = b.cycle1 + p[:-1] + b.cycle2 + tuple(reversed(p[1:]))
    edges = (b.cycle1_edges + b.path_edges + b.cycle2_edges
             + tuple(reversed(b.path_edges)))
    if not _check_vertices(g.f, edges, verts):
        raise ValueError("bow tie does not trace a closed walk")
    return Walk(g.f, edges, verts)


def _polar_ok(kind, loops):
    return (kind == MONEDGE and loops == 2) or (kind == PATH_DEGENERATE and loops == 1)


@dataclass(frozen=True)
class PolarReport:
    polarizable: bool
    witnesses: tuple
    normal: bool
    odd_cycle_condition: bool
    induced_bowties: tuple = ()

    def to_dict(self):
        return {
            "polarizable": self.polarizable,
            "normal": self.normal,
            "odd_cycle_condition": self.odd_cycle_condition,
            "witnesses": [b.to_dict() for b in self.witnesses],
            "induced_bowties": len(self.induced_bowties),
        }


def is_polarizable(f):
    """Decide polarizability from the induced bow ties of the graph.

    Allowed induced bow ties are monedge with both cycles loops, and
    path-degenerate with exactly one loop; every other one is a witness.
    """
    g = as_graph(f)
    require_cohesive(g)
    ties = enumerate_bowties(g, induced_only=True)
    witnesses = tuple(b for b in ties if not _polar_ok(*classify_bowtie(b)))
    normal = all(classify_bowtie(b)[0] != GENERAL for b in ties)
    occ = odd_cycle_condition(g)
    return PolarReport(not witnesses, witnesses, normal, occ.holds, tuple(ties))


@dataclass(frozen=True)
class OddCycleResult:
    holds: bool
    pair: tuple = None

    def __bool__(self):
        return self.holds


def odd_cycle_condition(g):
    """Every two vertex-disjoint chordless odd cycles are joined by an edge."""
    g = as_graph(g)
    c = is_cohesive(g)
    if not c.cohesive:
        raise IncohesiveError(c.components)
    cycles = enumerate_odd_cycles(g, chordless_only=True)
    for c1, c2 in combinations(cycles, 2):
        s1, s2 = set(c1), set(c2)
        if s1 & s2:
            continue
        if not any(w in s2 for v in s1 for w in g.proper_neighbors(v)):
            return OddCycleResult(False, (c1, c2))
    return OddCycleResult(True)


def is_normal(f):
    """Every induced bow tie is path-degenerate or monedge."""
    g = as_graph(f)
    require_cohesive(g)
    return all(classify_bowtie(b)[0] != GENERAL
               for b in enumerate_bowties(g, induced_only=True))
