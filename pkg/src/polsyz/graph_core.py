"""Degree-2 monomial sets, their graphs with loops, and elementary invariants.

Variables are ``x1..xn`` and generators ``f1..fm``; both are indexed from 1
everywhere in this package, including JSON output.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .exact import rank

__all__ = [
    "Monomial2",
    "MonomialSet",
    "LoopGraph",
    "SimpleGraph",
    "ParseError",
    "IncohesiveError",
    "InvariantError",
    "parse_monomial_set",
    "as_graph",
    "is_cohesive",
    "require_cohesive",
    "edge_graph",
    "graph_diameter",
    "is_linearly_presented",
    "is_bipartite",
    "complement_has_induced_c4",
    "algebra_dimension",
    "pinch",
    "to_dot",
    "edge_graph_dot",
]


class ParseError(ValueError):
    """Malformed ``.mon`` input."""


class IncohesiveError(ValueError):
    """Raised by operations that need a connected graph.

    ``partition`` holds the vertex sets of the connected components.
    """

    def __init__(self, partition):
        self.partition = [sorted(c) for c in partition]
        blocks = " | ".join(
            "{" + ",".join(f"x{v}" for v in block) + "}" for block in self.partition
        )
        super().__init__(f"generator set is not cohesive: {blocks}")


class InvariantError(RuntimeError):
    """An internal consistency check failed; always a bug."""


@dataclass(frozen=True, order=True)
class Monomial2:
    """The monomial ``x_lo * x_hi`` (a loop when ``lo == hi``)."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo < 1 or self.hi < 1:
            raise ValueError("variable indices start at 1")
        if self.lo > self.hi:
            lo, hi = self.hi, self.lo
            object.__setattr__(self, "lo", lo)
            object.__setattr__(self, "hi", hi)

    @property
    def loop(self):
        return self.lo == self.hi

    @property
    def squarefree(self):
        return self.lo < self.hi

    @property
    def variables(self):
        return (self.lo,) if self.loop else (self.lo, self.hi)

    def exponent(self, i):
        return (self.lo == i) + (self.hi == i)

    def exponents(self, n):
        e = [0] * n
        e[self.lo - 1] += 1
        e[self.hi - 1] += 1
        return tuple(e)

    def shared(self, other):
        """The common variable with ``other``, or None (distinct monomials only)."""
        common = set(self.variables) & set(other.variables)
        if len(common) != 1:
            return None
        return common.pop()

    def other_end(self, v):
        if v == self.lo:
            return self.hi
        if v == self.hi:
            return self.lo
        raise ValueError(f"x{v} does not divide {self}")

    def __str__(self):
        if self.loop:
            return f"x{self.lo}^2"
        return f"x{self.lo}*x{self.hi}"


@dataclass(frozen=True)
class MonomialSet:
    """An ordered list of distinct degree-2 monomials in ``n`` variables."""

    n: int
    gens: tuple

    def __post_init__(self):
        gens = tuple(self.gens)
        object.__setattr__(self, "gens", gens)
        if len(set(gens)) != len(gens):
            raise ValueError("generators must be pairwise distinct")
        for g in gens:
            if g.hi > self.n:
                raise ValueError(f"{g} uses a variable beyond n={self.n}")

    @classmethod
    def from_pairs(cls, pairs, n=None):
        gens = tuple(Monomial2(i, j) for i, j in pairs)
        if n is None:
            n = max((g.hi for g in gens), default=0)
        return cls(n, gens)

    @property
    def m(self):
        return len(self.gens)

    def __len__(self):
        return len(self.gens)

    def __getitem__(self, j):
        """Generator ``f_j`` (1-based)."""
        if j < 1:
            raise IndexError(j)
        return self.gens[j - 1]

    def index(self, mon):
        return self.gens.index(mon) + 1

    def log_matrix(self):
        """m x n matrix whose row j is the exponent vector of f_j."""
        return [list(g.exponents(self.n)) for g in self.gens]

    @property
    def unused_variables(self):
        used = {v for g in self.gens for v in g.variables}
        return tuple(i for i in range(1, self.n + 1) if i not in used)

    @property
    def squarefree(self):
        return all(g.squarefree for g in self.gens)

    def to_mon(self):
        lines = [f"vars {self.n}"]
        lines.extend(str(g) for g in self.gens)
        return "\n".join(lines) + "\n"


_HEADER = re.compile(r"^vars\s+(\d+)$")
_TERM = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def _parse_line(line, lineno):
    parts = line.split()
    if len(parts) == 2 and all(p.lstrip("-").isdigit() for p in parts):
        idx = [int(p) for p in parts]
    else:
        idx = []
        for term in line.replace(" ", "").split("*"):
            mt = _TERM.match(term)
            if not mt:
                raise ParseError(f"line {lineno}: malformed token {term!r}")
            power = int(mt.group(2)) if mt.group(2) else 1
            idx.extend([int(mt.group(1))] * power)
    if len(idx) != 2:
        raise ParseError(f"line {lineno}: degree {len(idx)} monomial, expected 2")
    if min(idx) < 1:
        raise ParseError(f"line {lineno}: variable index must be >= 1")
    return Monomial2(*idx)


def parse_monomial_set(text):
    """Parse a ``.mon`` document into a :class:`MonomialSet`."""
    declared = None
    gens = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        mh = _HEADER.match(line)
        if mh:
            if declared is not None or gens:
                raise ParseError(f"line {lineno}: 'vars' header must come first")
            declared = int(mh.group(1))
            continue
        mon = _parse_line(line, lineno)
        if mon in seen:
            raise ParseError(
                f"line {lineno}: duplicate monomial {mon} (first on line {seen[mon]})"
            )
        seen[mon] = lineno
        gens.append(mon)
    inferred = max((g.hi for g in gens), default=0)
    if declared is not None and inferred > declared:
        raise ParseError(f"variable x{inferred} exceeds declared vars {declared}")
    return MonomialSet(declared if declared is not None else inferred, tuple(gens))


class LoopGraph:
    """The graph with loops whose edges are the generators.

    ``adjacency[v]`` lists neighbours of vertex ``v`` (a loop lists ``v``
    once); ``edge_index[(lo, hi)]`` is the generator index of that edge and
    ``incident[v]`` lists the generator indices touching ``v``.
    """

    def __init__(self, f):
        self.f = f
        self.n = f.n
        adj = {v: set() for v in range(1, f.n + 1)}
        inc = {v: [] for v in range(1, f.n + 1)}
        self.edge_index = {}
        for j, g in enumerate(f.gens, 1):
            self.edge_index[(g.lo, g.hi)] = j
            adj[g.lo].add(g.hi)
            adj[g.hi].add(g.lo)
            for v in g.variables:
                inc[v].append(j)
        self.adjacency = {v: tuple(sorted(s)) for v, s in adj.items()}
        self.incident = {v: tuple(js) for v, js in inc.items()}

    @property
    def m(self):
        return self.f.m

    def edge(self, u, v):
        """Generator index of the edge ``uv`` (None when absent)."""
        return self.edge_index.get((min(u, v), max(u, v)))

    def has_loop(self, v):
        return (v, v) in self.edge_index

    def proper_neighbors(self, v):
        return tuple(w for w in self.adjacency[v] if w != v)

    @property
    def loops(self):
        return tuple(j for j, g in enumerate(self.f.gens, 1) if g.loop)

    @property
    def covered(self):
        return tuple(v for v in range(1, self.n + 1) if self.incident[v])

    def __repr__(self):
        return f"LoopGraph({', '.join(map(str, self.f.gens))})"


def as_graph(obj):
    if isinstance(obj, LoopGraph):
        return obj
    if isinstance(obj, MonomialSet):
        return LoopGraph(obj)
    raise TypeError(f"expected MonomialSet or LoopGraph, got {type(obj).__name__}")


def as_monomials(obj):
    return obj.f if isinstance(obj, LoopGraph) else obj


@dataclass(frozen=True)
class Cohesion:
    cohesive: bool
    components: tuple
    isolated: tuple

    def __bool__(self):
        return self.cohesive


def is_cohesive(g):
    """Connectivity of the graph on the variables actually used.

    Declared but unused variables are reported in ``isolated`` and never
    count against cohesion.
    """
    g = as_graph(g)
    seen = set()
    comps = []
    for s in g.covered:
        if s in seen:
            continue
        comp = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return Cohesion(len(comps) <= 1 and g.m >= 1, tuple(comps), g.f.unused_variables)


def require_cohesive(g):
    c = is_cohesive(g)
    if not c.cohesive:
        raise IncohesiveError(c.components)
    return c


@dataclass(frozen=True)
class SimpleGraph:
    """Loop-free undirected graph on ``vertices``; ``edges`` are sorted pairs."""

    vertices: tuple
    edges: frozenset
    _adj: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        adj = {v: set() for v in self.vertices}
        for a, b in self.edges:
            if a == b:
                raise ValueError("simple graphs have no loops")
            adj[a].add(b)
            adj[b].add(a)
        object.__setattr__(self, "_adj", {v: frozenset(s) for v, s in adj.items()})

    def neighbors(self, v):
        return self._adj[v]

    def adjacent(self, a, b):
        return b in self._adj[a]


def edge_graph(g):
    """Graph on the generators, two joined when they share a variable."""
    f = as_monomials(g)
    edges = set()
    for (i, a), (j, b) in combinations(enumerate(f.gens, 1), 2):
        if set(a.variables) & set(b.variables):
            edges.add((i, j))
    return SimpleGraph(tuple(range(1, f.m + 1)), frozenset(edges))


def _bfs_dist(sg, s):
    dist = {s: 0}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in sg.neighbors(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def graph_diameter(sg):
    """Longest shortest-path distance; ``math.inf`` when disconnected."""
    best = 0
    for s in sg.vertices:
        dist = _bfs_dist(sg, s)
        if len(dist) < len(sg.vertices):
            return math.inf
        best = max(best, max(dist.values()))
    return best


def is_linearly_presented(f):
    """Linear presentation of the ideal (f): edge-graph diameter at most 2."""
    require_cohesive(f)
    return graph_diameter(edge_graph(f)) <= 2


@dataclass(frozen=True)
class Bipartition:
    bipartite: bool
    coloring: dict = None
    odd_cycle: tuple = None

    def __bool__(self):
        return self.bipartite


def is_bipartite(g):
    """2-colouring of the graph, or an odd cycle (a loop is an odd cycle)."""
    g = as_graph(g)
    for j in g.loops:
        return Bipartition(False, odd_cycle=(g.f[j].lo,))
    color = {}
    parent = {}
    for s in g.covered:
        if s in color:
            continue
        color[s] = 0
        parent[s] = None
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return Bipartition(False, odd_cycle=_tree_cycle(parent, u, w))
    return Bipartition(True, coloring=color)


def _tree_cycle(parent, u, w):
    def chain(v):
        out = []
        while v is not None:
            out.append(v)
            v = parent[v]
        return out

    cu, cw = chain(u), chain(w)
    common = set(cu) & set(cw)
    pu = [v for v in cu]
    while pu and pu[-1] in common and len(pu) > 1 and pu[-2] in common:
        pu.pop()
    top = pu[-1]
    pw = cw[: cw.index(top)]
    return tuple(pu + pw[::-1])


def complement_has_induced_c4(g):
    """Whether the complement of a simple graph contains an induced 4-cycle."""
    g = as_graph(g)
    if g.loops:
        raise ValueError("complement_has_induced_c4 needs a graph without loops")
    verts = range(1, g.n + 1)
    comp = {
        v: {w for w in verts if w != v and w not in g.adjacency[v]} for v in verts
    }
    for quad in combinations(verts, 4):
        degs = [sum(1 for w in quad if w in comp[v]) for v in quad]
        # a 2-regular graph on four vertices is a 4-cycle
        if all(d == 2 for d in degs):
            return True
    return False


def algebra_dimension(f):
    """Krull dimension of k[f]: the rational rank of the log-matrix."""
    f = as_monomials(f)
    return rank(f.log_matrix())


@dataclass(frozen=True)
class PinchResult:
    f: MonomialSet
    relabel: dict
    collapsed: tuple

    @property
    def injective_on_generators(self):
        return not self.collapsed


def pinch(f, i, j):
    """Identify ``x_j`` with ``x_i`` along the proper edge ``x_i x_j``.

    Remaining variables are renumbered densely to ``1..n-1``; generators with
    equal images are merged (first occurrence kept) and listed in
    ``collapsed`` as tuples of original generator indices.
    """
    f = as_monomials(f)
    if i == j:
        raise ValueError("pinching needs two distinct variables")
    if Monomial2(i, j) not in f.gens:
        raise ValueError(f"x{min(i, j)}*x{max(i, j)} is not an edge")
    relabel = {}
    for k in range(1, f.n + 1):
        if k == j:
            continue
        relabel[k] = k if k < j else k - 1
    relabel[j] = relabel[i]
    images = {}
    order = []
    for idx, g in enumerate(f.gens, 1):
        img = Monomial2(relabel[g.lo], relabel[g.hi])
        if img not in images:
            images[img] = [idx]
            order.append(img)
        else:
            images[img].append(idx)
    collapsed = tuple(tuple(v) for v in images.values() if len(v) > 1)
    return PinchResult(MonomialSet(f.n - 1, tuple(order)), relabel, collapsed)


def to_dot(g, name="G", highlight=None):
    """DOT rendering of the graph; loops are self-edges.

    ``highlight`` maps generator indices to a DOT colour.
    """
    g = as_graph(g)
    highlight = highlight or {}
    lines = [f"graph {name} {{"]
    for v in range(1, g.n + 1):
        lines.append(f'  x{v} [label="x{v}"];')
    for j, mon in enumerate(g.f.gens, 1):
        attrs = f'label="f{j}"'
        if j in highlight:
            attrs += f', color="{highlight[j]}", penwidth=2'
        lines.append(f"  x{mon.lo} -- x{mon.hi} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def edge_graph_dot(g, name="L"):
    f = as_monomials(g)
    sg = edge_graph(f)
    lines = [f"graph {name} {{"]
    for j in sg.vertices:
        lines.append(f'  f{j} [label="{f[j]}"];')
    for a, b in sorted(sg.edges):
        lines.append(f"  f{a} -- f{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
