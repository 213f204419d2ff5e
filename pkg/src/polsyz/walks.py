"""Even closed walks: splitting, classification, skeletons and enumeration.

A walk is a cyclic sequence of generator indices ``g_0..g_{L-1}`` together
with its vertex sequence ``v_0..v_{L-1}``, where ``g_k = x_{v_k} x_{v_{k+1}}``
(indices mod L).  Two walks are the same when their edge sequences agree up
to rotation and reversal.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations, product

from .graph_core import InvariantError, as_graph, as_monomials

__all__ = [
    "Walk",
    "WalkError",
    "make_walk",
    "canonical_form",
    "Split",
    "split_decomposition",
    "is_split",
    "recurrence_report",
    "WalkClass",
    "decompose",
    "classify_non_split",
    "Skeleton",
    "build_skeleton",
    "skeleton_non_split",
    "simple_cycles",
    "enumerate_even_cycles",
    "enumerate_non_split_walks",
    "enumerate_closed_walks",
    "walk_from_cycle",
    "Decomposition",
    "is_decomposable",
]


class WalkError(ValueError):
    """The edge sequence is not a valid even closed walk."""


def _reversed_vertices(vs):
    return (vs[0],) + tuple(reversed(vs[1:]))


@dataclass(frozen=True)
class Walk:
    """An even closed walk over a fixed generator set.

    Use :func:`make_walk` for validated construction.  The raw constructor
    also admits the degenerate pieces produced by splitting (such as the
    two-edge walk ``{f, f}``).
    """

    f: object = field(repr=False, compare=False)
    edges: tuple
    vertices: tuple

    def __len__(self):
        return len(self.edges)

    @property
    def r(self):
        return len(self.edges) // 2

    @property
    def key(self):
        return canonical_form(self)

    def rotate(self, s):
        s %= len(self.edges)
        return Walk(self.f, self.edges[s:] + self.edges[:s],
                    self.vertices[s:] + self.vertices[:s])

    def reverse(self):
        return Walk(self.f, tuple(reversed(self.edges)),
                    _reversed_vertices(self.vertices))

    def canonical_walk(self):
        """The rotation/reversal whose edge sequence is the canonical key."""
        best = None
        for w in (self, self.reverse()):
            for s in range(len(self.edges)):
                c = w.rotate(s)
                tag = (c.edges, c.vertices)
                if best is None or tag < best[0]:
                    best = (tag, c)
        return best[1]

    @property
    def support(self):
        return tuple(sorted(set(self.edges)))

    def edge_multiset(self):
        return Counter(self.edges)

    def vertex_multiset(self):
        """Exponent vector counting each vertex occurrence (length n)."""
        b = [0] * self.f.n
        for v in self.vertices:
            b[v - 1] += 1
        return tuple(b)

    def lcm(self):
        """Exponent vector of the lcm of the walk's distinct edges."""
        b = [0] * self.f.n
        for j in set(self.edges):
            for i, e in enumerate(self.f[j].exponents(self.f.n)):
                if e > b[i]:
                    b[i] = e
        return tuple(b)

    def to_dict(self):
        return {"edges": list(self.edges), "vertices": list(self.vertices)}

    def __str__(self):
        return "[" + ",".join(f"f{j}" for j in self.edges) + "]"


def _check_vertices(f, edges, vertices):
    L = len(edges)
    for k in range(L):
        a, b = vertices[k], vertices[(k + 1) % L]
        mon = f[edges[k]]
        if (min(a, b), max(a, b)) != (mon.lo, mon.hi):
            return False
    return True


def make_walk(f, edges):
    """Validated walk from generator indices; derives the vertex sequence."""
    f = as_monomials(f)
    edges = tuple(int(e) for e in edges)
    L = len(edges)
    if L % 2:
        raise WalkError("walk length must be even")
    if L < 4:
        raise WalkError("walks have length at least 4")
    for e in edges:
        if not 1 <= e <= f.m:
            raise WalkError(f"generator index {e} out of range 1..{f.m}")
    vertices = []
    for k in range(L):
        prev, cur = f[edges[k - 1]], f[edges[k]]
        if edges[k - 1] == edges[k]:
            raise WalkError(f"immediate repetition of f{edges[k]} at position {k}")
        v = prev.shared(cur)
        if v is None:
            raise WalkError(f"f{edges[k - 1]} and f{edges[k]} share no variable")
        vertices.append(v)
    vertices = tuple(vertices)
    if not _check_vertices(f, edges, vertices):
        raise WalkError("edge sequence does not close up into a walk")
    return Walk(f, edges, vertices)


def canonical_form(w):
    """Least edge sequence over all rotations and both directions."""
    seqs = (w.edges, tuple(reversed(w.edges)))
    L = len(w.edges)
    return min(s[k:] + s[:k] for s in seqs for k in range(L))


# --- splitting --------------------------------------------------------------


@dataclass(frozen=True)
class Split:
    """``parent`` is the edge ordering that is cut: ``parent = w1 + w2``.

    ``parent`` is either a rotation of the walk or, for a same-sense edge
    repetition, the reordering that brings both copies of the edge together.
    """

    w1: Walk
    w2: Walk
    vertex: int
    parent: Walk
    reordered: bool = False


def _vertex_split(c):
    V, L = c.vertices, len(c.vertices)
    for i in range(L):
        for j in range(i + 2, L, 2):
            if V[i] == V[j]:
                p = c.rotate(i)
                k = j - i
                return Split(Walk(c.f, p.edges[:k], p.vertices[:k]),
                             Walk(c.f, p.edges[k:], p.vertices[k:]), V[i], p)
    return None


def _same_sense_split(c):
    E, V, L = c.edges, c.vertices, len(c.edges)
    for i in range(L):
        for j in range(i + 1, L):
            if E[i] != E[j] or V[i] != V[j]:
                continue
            p = c.rotate(i)
            q, l = p.vertices, j - i
            pe = p.edges
            edges = pe[1:l] + tuple(reversed(pe[l + 1:])) + (pe[l], pe[0])
            verts = (q[1:l] + (q[0],) + tuple(reversed(q[l + 2:]))
                     + (q[1], q[0]))
            if l + 1 == L:
                verts = q[1:l] + (q[1], q[0])
            s = Walk(c.f, edges, verts)
            if not _check_vertices(c.f, edges, verts):
                raise InvariantError("reordered walk does not close up")
            k = L - 2
            return Split(Walk(c.f, edges[:k], verts[:k]),
                         Walk(c.f, edges[k:], verts[k:]), q[1], s, True)
    return None


def split_decomposition(w):
    """A splitting of ``w`` into two smaller even closed walks, or None.

    Every rotation of the canonical representative is tried at every pair
    of equal vertices an even distance apart.  An edge traversed twice in
    the same direction also splits, after the reordering that makes the two
    copies adjacent.
    """
    c = w.canonical_walk()
    return _vertex_split(c) or _same_sense_split(c)


def is_split(w):
    return split_decomposition(w) is not None


@dataclass(frozen=True)
class Recurrence:
    item: int
    positions: tuple
    exactly_twice: bool
    parity_ok: bool
    sense_reversing: bool = True

    @property
    def ok(self):
        return self.exactly_twice and self.parity_ok and self.sense_reversing


@dataclass(frozen=True)
class RecurrenceReport:
    vertices: tuple
    edges: tuple

    @property
    def all_ok(self):
        return all(r.ok for r in self.vertices + self.edges)

    def to_dict(self):
        return {
            "vertices": [r.__dict__ for r in self.vertices],
            "edges": [r.__dict__ for r in self.edges],
        }


def recurrence_report(w):
    """Vertex and edge repetitions, flagged for the non-split conditions.

    A repeated vertex is fine when it occurs exactly twice at positions of
    opposite parity; a repeated edge when it occurs exactly twice, an even
    distance apart, traversed in opposite directions.
    """
    L = len(w.edges)
    vpos, epos = defaultdict(list), defaultdict(list)
    for k in range(L):
        vpos[w.vertices[k]].append(k)
        epos[w.edges[k]].append(k)
    vreps = []
    for v, ps in sorted(vpos.items()):
        if len(ps) > 1:
            parity = all((b - a) % 2 for a, b in combinations(ps, 2))
            vreps.append(Recurrence(v, tuple(ps), len(ps) == 2, parity))
    ereps = []
    for e, ps in sorted(epos.items()):
        if len(ps) > 1:
            gaps = all((b - a) % 2 == 0 for a, b in combinations(ps, 2))
            rev = all(
                w.vertices[a] == w.vertices[(b + 1) % L]
                and w.vertices[b] == w.vertices[(a + 1) % L]
                and w.vertices[a] != w.vertices[b]
                for a, b in combinations(ps, 2)
            )
            ereps.append(Recurrence(e, tuple(ps), len(ps) == 2, gaps, rev))
    return RecurrenceReport(tuple(vreps), tuple(ereps))


# --- cycle arrangements and molecules --------------------------------------

EVEN_CYCLE = "cycle"
ARRANGEMENT = "arrangement"
MOLECULE = "molecule"


@dataclass(frozen=True)
class WalkClass:
    """Structural decomposition of a walk.

    ``constituent_cycles`` are edge tuples of the cycles (loops included),
    ``structural_paths`` the edge tuples of the paths traversed twice, and
    ``arrangements`` groups cycle positions into structural cycle
    arrangements.  ``violations`` lists every failed C/M condition; a valid
    configuration has none.
    """

    kind: str
    constituent_cycles: tuple
    cycle_vertices: tuple
    structural_paths: tuple
    path_vertices: tuple
    arrangements: tuple
    violations: tuple = ()
    edge_ends: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def valid(self):
        return not self.violations

    def to_dict(self):
        return {
            "class": self.kind,
            "cycles": [list(c) for c in self.constituent_cycles],
            "paths": [list(p) for p in self.structural_paths],
        }


def _peel(w):
    """Cut a closed walk into closed pieces without repeated vertices."""
    stack = [(w.vertices[0], None)]
    where = {w.vertices[0]: 0}
    pieces = []
    L = len(w.edges)
    for k in range(L):
        v = w.vertices[(k + 1) % L]
        stack.append((v, w.edges[k]))
        if v in where:
            d = where[v]
            window = stack[d + 1:]
            del stack[d + 1:]
            for u, _ in window[:-1]:
                del where[u]
            verts = (v,) + tuple(u for u, _ in window[:-1])
            pieces.append((tuple(e for _, e in window), verts))
        else:
            where[v] = len(stack) - 1
    return pieces


def _components(items, touch):
    """Group ``items`` (indexable) into connected components under ``touch``."""
    parent = list(range(len(items)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in combinations(range(len(items)), 2):
        if touch(items[a], items[b]):
            parent[find(a)] = find(b)
    groups = defaultdict(list)
    for a in range(len(items)):
        groups[find(a)].append(a)
    return [tuple(g) for g in sorted(groups.values())]


def decompose(w):
    """Split the support of any closed walk into cycles and doubled edges.

    Works for split walks too, so that the skeleton test can be compared
    against :func:`split_decomposition`; the result records which
    arrangement/molecule conditions fail.
    """
    f = w.f
    cycles, cverts, path_edges = [], [], []
    for edges, verts in _peel(w):
        if len(edges) == 2:
            if edges[0] != edges[1]:
                raise InvariantError("two-edge piece with distinct edges")
            path_edges.append(edges[0])
        else:
            cycles.append(edges)
            cverts.append(frozenset(verts))
    bad = []
    if not cycles:
        bad.append("no cycles")
    all_cycle_edges = Counter(e for c in cycles for e in c)
    if any(k > 1 for k in all_cycle_edges.values()):
        bad.append("C1: constituent cycles share an edge")
    for a, b in combinations(cverts, 2):
        if len(a & b) > 1:
            bad.append("C2: two constituent cycles share more than one vertex")
            break
    vcount = Counter(v for vs in cverts for v in vs)
    if any(k > 2 for k in vcount.values()):
        bad.append("C3: a vertex lies on three or more constituent cycles")
    if Counter(path_edges) and any(k > 1 for k in Counter(path_edges).values()):
        bad.append("M: a path edge is traversed more than twice")
    if set(path_edges) & set(all_cycle_edges):
        bad.append("M3: a path edge lies on a constituent cycle")

    arrangements = _components(cverts, lambda a, b: bool(a & b)) if cycles else []
    arr_verts = [frozenset().union(*(cverts[i] for i in g)) for g in arrangements]

    pverts_of = {e: frozenset(f[e].variables) for e in set(path_edges)}
    plist = sorted(set(path_edges))
    pgroups = _components(plist, lambda a, b: bool(pverts_of[a] & pverts_of[b]))
    paths, pverts = [], []
    for g in pgroups:
        es = [plist[i] for i in g]
        deg = Counter(v for e in es for v in f[e].variables)
        verts = frozenset(deg)
        if any(d > 2 for d in deg.values()) or len(verts) != len(es) + 1:
            bad.append("M2: structural paths are not vertex-disjoint simple paths")
        paths.append(_order_path(f, es))
        pverts.append(verts)

    if paths:
        kind = MOLECULE
        if len(arrangements) < 2:
            bad.append("M: a molecule needs at least two cycle arrangements")
        if len(paths) != len(arrangements) - 1:
            bad.append("M: structural paths must number arrangements - 1")
        for pi, pv in enumerate(pverts):
            ends = {v for v, d in Counter(
                v for e in paths[pi] for v in f[e].variables).items() if d == 1}
            met = 0
            for ai, av in enumerate(arr_verts):
                common = pv & av
                if len(common) > 1:
                    bad.append("M3: arrangement and path share two vertices")
                if common:
                    met += 1
                    if not common <= ends:
                        bad.append("M6: path meets an arrangement at an inner vertex")
                    for v in common:
                        if vcount[v] != 1:
                            bad.append("M6: junction is not a simple arrangement vertex")
            if met != 2:
                bad.append("M4: a structural path must meet exactly two arrangements")
        for av in arr_verts:
            if not any(av & pv for pv in pverts):
                bad.append("M4: an arrangement meets no structural path")
    elif len(cycles) == 1 and len(cycles[0]) % 2 == 0:
        kind = EVEN_CYCLE
    else:
        kind = ARRANGEMENT
        if len(arrangements) > 1:
            bad.append("C: cycle arrangement is not connected")
    return WalkClass(
        kind,
        tuple(cycles),
        tuple(cverts),
        tuple(paths),
        tuple(pverts),
        tuple(arrangements),
        tuple(dict.fromkeys(bad)),
        {e: frozenset(f[e].variables) for e in set(path_edges)},
    )


def _order_path(f, es):
    """Order path edges from one extremal vertex to the other."""
    if len(es) == 1:
        return tuple(es)
    deg = Counter(v for e in es for v in f[e].variables)
    start = min(v for v, d in deg.items() if d == 1) if any(
        d == 1 for d in deg.values()) else min(deg)
    out, rest, cur = [], set(es), start
    while rest:
        nxt = next((e for e in sorted(rest) if cur in f[e].variables), None)
        if nxt is None:
            return tuple(sorted(es))
        out.append(nxt)
        rest.discard(nxt)
        cur = f[nxt].other_end(cur)
    return tuple(out)


def classify_non_split(w):
    """Classify a non-split walk as an even cycle, arrangement or molecule.

    Some non-split walks have supports where two peeled cycles meet twice
    (a triangle and a pentagon through the same two vertices, say).  Those
    come back with ``valid`` false and the failed conditions listed.
    """
    if is_split(w):
        raise WalkError(f"walk {w} splits")
    return decompose(w)


# --- skeletons --------------------------------------------------------------


@dataclass(frozen=True)
class SkeletonNode:
    color: str
    kind: str
    edges: tuple
    vertices: frozenset = field(repr=False)


@dataclass(frozen=True)
class Skeleton:
    """Nodes are constituent cycles and structural-path edges.

    ``links`` holds ``(a, b, vertex)`` for every pair of nodes meeting at a
    vertex, so a vertex shared by k nodes yields all k choose 2 links.
    """

    nodes: tuple
    links: tuple

    @property
    def black(self):
        return sum(1 for nd in self.nodes if nd.color == "black")

    def to_dict(self):
        return {
            "nodes": [{"color": nd.color, "kind": nd.kind, "edges": list(nd.edges)}
                      for nd in self.nodes],
            "links": [list(l) for l in self.links],
        }


def build_skeleton(c):
    nodes = []
    for edges, verts in zip(c.constituent_cycles, c.cycle_vertices):
        color = "black" if len(edges) % 2 else "white"
        nodes.append(SkeletonNode(color, "cycle", tuple(edges), verts))
    for path in c.structural_paths:
        for e in path:
            nodes.append(SkeletonNode("white", "path_edge", (e,), c.edge_ends[e]))
    links = []
    at = defaultdict(list)
    for i, nd in enumerate(nodes):
        for v in nd.vertices:
            at[v].append(i)
    for v in sorted(at):
        for a, b in combinations(at[v], 2):
            links.append((a, b, v))
    return Skeleton(tuple(nodes), tuple(links))


def skeleton_non_split(s):
    """Tree whose every edge cut leaves an odd number of black nodes per side."""
    k = len(s.nodes)
    if k == 0 or len(s.links) != k - 1:
        return False
    adj = defaultdict(list)
    for idx, (a, b, _) in enumerate(s.links):
        adj[a].append((b, idx))
        adj[b].append((a, idx))

    def reach(skip):
        seen = {0}
        todo = [0]
        while todo:
            u = todo.pop()
            for w, idx in adj[u]:
                if idx != skip and w not in seen:
                    seen.add(w)
                    todo.append(w)
        return seen

    if len(reach(None)) != k:
        return False
    black = {i for i, nd in enumerate(s.nodes) if nd.color == "black"}
    for idx in range(len(s.links)):
        side = reach(idx)
        inside = len(black & side)
        if inside % 2 == 0 or (len(black) - inside) % 2 == 0:
            return False
    return True


# --- enumeration ------------------------------------------------------------


def simple_cycles(g, max_len=None, min_len=3):
    """Simple cycles of length >= 3 as vertex tuples.

    Each cycle is reported once, starting at its least vertex and with its
    second vertex less than its last.
    """
    g = as_graph(g)
    max_len = g.n if max_len is None else max_len
    out = []
    for s in g.covered:
        path = [s]
        on = {s}

        def dfs(u):
            for w in g.adjacency[u]:
                if w == s and len(path) >= min_len and path[1] < path[-1]:
                    out.append(tuple(path))
                elif w > s and w not in on and len(path) < max_len:
                    path.append(w)
                    on.add(w)
                    dfs(w)
                    path.pop()
                    on.discard(w)

        dfs(s)
    return out


def walk_from_cycle(g, cycle):
    """The walk traversing a vertex cycle (a 1-tuple is a loop)."""
    g = as_graph(g)
    k = len(cycle)
    edges = tuple(g.edge(cycle[i], cycle[(i + 1) % k]) for i in range(k))
    return Walk(g.f, edges, tuple(cycle))


def enumerate_even_cycles(g, max_len=None):
    """Even simple cycles of length 4..max_len, sorted by canonical key."""
    g = as_graph(g)
    found = {}
    for cyc in simple_cycles(g, max_len):
        if len(cyc) % 2 == 0:
            w = walk_from_cycle(g, cyc)
            found.setdefault(w.key, w)
    return [found[k] for k in sorted(found)]


def _enumerate(g, max_len, allowed, non_split):
    """Depth-first enumeration of closed walks with the first edge minimal.

    Every vertex occurs at most twice and every edge at most twice, with no
    immediate repetition.  With ``non_split`` the repeated vertices must sit
    at positions of opposite parity and repeated edges must reverse sense,
    which is exactly the non-split condition; otherwise only the budgets
    apply.
    """
    f = g.f
    allowed = sorted(set(allowed))
    allowed_set = set(allowed)
    found = {}
    for first in allowed:
        mon = f[first]
        for v0 in ([mon.lo] if mon.loop else [mon.lo, mon.hi]):
            # verts holds v_0..v_L with v_L the current end of the walk
            edges, verts = [first], [v0, mon.other_end(v0)]
            vpos = defaultdict(list)
            vpos[v0].append(0)
            vpos[verts[1]].append(1)
            epos = defaultdict(list)
            epos[first].append(0)

            def edge_ok(e, u, w):
                prior = epos[e]
                if len(prior) >= 2:
                    return False
                if not prior or not non_split:
                    return True
                a = prior[0]
                return verts[a] == w and verts[a + 1] == u and u != w

            def dfs():
                L = len(edges)
                u = verts[L]
                for e in g.incident[u]:
                    if e < first or e not in allowed_set or e == edges[-1]:
                        continue
                    w = f[e].other_end(u)
                    if not edge_ok(e, u, w):
                        continue
                    if w == v0 and L + 1 >= 4 and (L + 1) % 2 == 0 and e != first:
                        walk = Walk(f, tuple(edges) + (e,), tuple(verts))
                        found.setdefault(walk.key, walk)
                    if L + 1 >= max_len:
                        continue
                    occ = vpos[w]
                    if len(occ) >= 2:
                        continue
                    if non_split and occ and (L + 1 - occ[0]) % 2 == 0:
                        continue
                    edges.append(e)
                    verts.append(w)
                    vpos[w].append(L + 1)
                    epos[e].append(L)
                    dfs()
                    edges.pop()
                    verts.pop()
                    vpos[w].pop()
                    epos[e].pop()

            dfs()
    return [found[k] for k in sorted(found)]


def enumerate_non_split_walks(g, max_len, support_filter=None, edge_budget=2):
    """All non-split even closed walks of length <= max_len.

    ``support_filter`` restricts the edges to a set of generator indices
    (for instance those dividing a target monomial).  Results are sorted by
    canonical key.
    """
    if edge_budget != 2:
        raise ValueError("non-split walks use every edge at most twice")
    g = as_graph(g)
    allowed = range(1, g.m + 1) if support_filter is None else support_filter
    return _enumerate(g, max_len, allowed, True)


def enumerate_closed_walks(g, max_len, support_filter=None):
    """Even closed walks with each vertex and edge used at most twice.

    Includes split walks; used to exercise the skeleton criterion on both
    sides.
    """
    g = as_graph(g)
    allowed = range(1, g.m + 1) if support_filter is None else support_filter
    return _enumerate(g, max_len, allowed, False)


# --- decomposability --------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    h: tuple
    part1: tuple
    part2: tuple

    def to_dict(self):
        return {"h": list(self.h), "part1": list(self.part1), "part2": list(self.part2)}


def _eulerian(f, multiset):
    """Connected, every vertex of even degree (loops count two), even size."""
    total = sum(multiset.values())
    if total < 2 or total % 2:
        return False
    deg = Counter()
    for e, k in multiset.items():
        mon = f[e]
        if not mon.loop:
            deg[mon.lo] += k
            deg[mon.hi] += k
    if any(d % 2 for d in deg.values()):
        return False
    verts = {v for e in multiset for v in f[e].variables}
    es = list(multiset)
    start = next(iter(verts))
    seen, todo = {start}, [start]
    while todo:
        u = todo.pop()
        for e in es:
            vs = f[e].variables
            if u in vs:
                for x in vs:
                    if x not in seen:
                        seen.add(x)
                        todo.append(x)
    return seen == verts


def _vertices_of(f, multiset):
    return {v for e, k in multiset.items() if k for v in f[e].variables}


def is_decomposable(w, g, max_set=3):
    """A decomposing set for a non-split walk, or None.

    The walk's edge multiset is augmented by two copies of each chosen
    squarefree generator on the walk's vertices; the result must split
    into two even closed walks that share a vertex, each containing every
    chosen generator and neither containing the walk's whole edge multiset.
    """
    g = as_graph(g)
    f = g.f
    if is_split(w):
        raise WalkError(f"walk {w} splits")
    wv = set(w.vertices)
    cands = [j for j, mon in enumerate(f.gens, 1)
             if mon.squarefree and mon.lo in wv and mon.hi in wv]
    base = w.edge_multiset()
    items = sorted(base)
    for t in range(1, max_set + 1):
        for hs in combinations(cands, t):
            H = Counter(hs)
            for choice in product(*(range(base[e] + 1) for e in items)):
                A = Counter({e: k for e, k in zip(items, choice) if k})
                B = base - A
                if not A or not B:
                    continue
                E1, E2 = A + H, B + H
                if all(E1[e] >= base[e] for e in base) or all(
                        E2[e] >= base[e] for e in base):
                    continue
                if not (_eulerian(f, E1) and _eulerian(f, E2)):
                    continue
                if not _vertices_of(f, E1) & _vertices_of(f, E2):
                    continue
                return Decomposition(hs, tuple(sorted(E1.elements())),
                                     tuple(sorted(E2.elements())))
    return None
