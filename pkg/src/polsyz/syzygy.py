"""Differential and polar syzygies of even closed walks.

A syzygy vector has one entry per generator.  Every vector built here is
homogeneous for the fine grading: entry ``j`` is ``c_j * x^(b - log f_j)``
for a common multidegree ``b``.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .bowtie import bowtie_walk, enumerate_bowties
from .exact import rank
from .graph_core import InvariantError, as_graph, as_monomials, require_cohesive
from .walks import enumerate_even_cycles, enumerate_non_split_walks, is_split

__all__ = [
    "SignedMonomial",
    "SyzygyVector",
    "Binomial",
    "z_vector",
    "t_vector",
    "p_binomial",
    "m_factor",
    "verify_differential_syzygy",
    "verify_binomial_relation",
    "split_relation_holds",
    "generators_Z",
    "generators_P",
    "GeneratorSet",
    "generic_rank",
]


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mono_str(exps):
    parts = []
    for i, e in enumerate(exps, 1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class SignedMonomial:
    coeff: int
    exponents: tuple

    def __str__(self):
        if self.coeff == 0:
            return "0"
        m = _mono_str(self.exponents)
        if m == "1":
            return str(self.coeff)
        if self.coeff == 1:
            return m
        if self.coeff == -1:
            return "-" + m
        return f"{self.coeff}*{m}"


@dataclass(frozen=True)
class SyzygyVector:
    """Entries indexed by generator (``entries[j-1]`` belongs to ``f_j``)."""

    entries: tuple
    multidegree: tuple
    source: tuple = field(default=(), compare=False)
    kind: str = field(default="", compare=False)

    @property
    def m(self):
        return len(self.entries)

    @property
    def coeffs(self):
        return tuple(e.coeff for e in self.entries)

    def is_zero(self):
        return not any(self.coeffs)

    def homogeneous(self, f):
        f = as_monomials(f)
        n = len(self.multidegree)
        for j, e in enumerate(self.entries, 1):
            if e.coeff and _add(e.exponents, f[j].exponents(n)) != self.multidegree:
                return False
        return True

    def scaled(self, mono):
        """Multiply every entry by the monomial ``x^mono``."""
        return SyzygyVector(
            tuple(SignedMonomial(e.coeff, _add(e.exponents, mono)) if e.coeff else e
                  for e in self.entries),
            _add(self.multidegree, mono), self.source, self.kind)

    def to_dict(self):
        return {
            "walk": list(self.source),
            "kind": self.kind,
            "multidegree": list(self.multidegree),
            "entries": [
                {"gen_index": j, "coeff": e.coeff, "monomial": list(e.exponents)}
                for j, e in enumerate(self.entries, 1) if e.coeff
            ],
        }

    def __str__(self):
        return "(" + ", ".join(str(e) for e in self.entries) + ")"


def _collect(f, terms, multidegree, source=(), kind=""):
    """Aggregate ``(j, coeff, exps)`` terms into a homogeneous vector."""
    n = f.n
    acc = {}
    for j, c, exps in terms:
        if j in acc and acc[j][1] != exps:
            raise InvariantError(f"entry f{j} mixes two monomials")
        prev = acc.get(j, (0, exps))[0]
        acc[j] = (prev + c, exps)
    zero = (0,) * n
    entries = []
    for j in range(1, f.m + 1):
        c, exps = acc.get(j, (0, zero))
        entries.append(SignedMonomial(c, exps if c else zero))
    v = SyzygyVector(tuple(entries), tuple(multidegree), tuple(source), kind)
    if not v.homogeneous(f):
        raise InvariantError("constructed syzygy vector is not homogeneous")
    return v


def z_vector(w, f=None, oriented=False):
    """Differential syzygy of a walk.

    With ``g`` the lcm of the walk's edges, the entry of ``f_i`` sums
    ``+-g/f_i`` over the positions of ``f_i``, signs alternating from ``+``
    at the first position.  The canonical representative fixes the sign
    unless ``oriented`` is set.
    """
    f = as_monomials(f if f is not None else w.f)
    c = w if oriented else w.canonical_walk()
    g = c.lcm()
    n = f.n
    terms = []
    for k, j in enumerate(c.edges):
        terms.append((j, 1 if k % 2 == 0 else -1, _sub(g, f[j].exponents(n))))
    return _collect(f, terms, g, c.edges, "z")


@dataclass(frozen=True)
class Binomial:
    """``T^plus - T^minus`` in the generator variables ``T_1..T_m``."""

    plus: tuple
    minus: tuple

    @property
    def degree(self):
        return sum(self.plus)

    def __str__(self):
        def side(e):
            out = []
            for j, k in enumerate(e, 1):
                if k == 1:
                    out.append(f"T{j}")
                elif k > 1:
                    out.append(f"T{j}^{k}")
            return "".join(out) or "1"

        return f"{side(self.plus)} - {side(self.minus)}"

    def to_dict(self):
        return {
            "plus": {str(j): k for j, k in enumerate(self.plus, 1) if k},
            "minus": {str(j): k for j, k in enumerate(self.minus, 1) if k},
        }


def p_binomial(w, oriented=False):
    """Product of odd-position edges minus product of even-position edges."""
    c = w if oriented else w.canonical_walk()
    m = w.f.m
    plus, minus = [0] * m, [0] * m
    for k, j in enumerate(c.edges):
        (plus if k % 2 == 0 else minus)[j - 1] += 1
    return Binomial(tuple(plus), tuple(minus))


def _substitute(f, texps):
    out = (0,) * f.n
    for j, k in enumerate(texps, 1):
        if k:
            e = f[j].exponents(f.n)
            out = _add(out, tuple(k * x for x in e))
    return out


def verify_binomial_relation(p, f):
    """Whether ``T_j -> f_j`` sends both terms to the same monomial."""
    f = as_monomials(f)
    return _substitute(f, p.plus) == _substitute(f, p.minus)


def t_vector(w, f=None, oriented=False):
    """Polar syzygy: the T-gradient of the walk's binomial evaluated at f."""
    f = as_monomials(f if f is not None else w.f)
    c = w if oriented else w.canonical_walk()
    p = p_binomial(c, oriented=True)
    top_plus = _substitute(f, p.plus)
    top_minus = _substitute(f, p.minus)
    if top_plus != top_minus:
        raise InvariantError(f"walk {c} gives a binomial that is not a relation")
    n = f.n
    terms = []
    for j in range(1, f.m + 1):
        for sign, side, top in ((1, p.plus, top_plus), (-1, p.minus, top_minus)):
            k = side[j - 1]
            if k:
                terms.append((j, sign * k, _sub(top, f[j].exponents(n))))
    return _collect(f, terms, top_plus, c.edges, "t")


def m_factor(w):
    """Exponent vector of the product of repeated vertices once loop steps
    are removed; checked against ``t / z``."""
    if is_split(w):
        raise ValueError(f"walk {w} splits")
    f = w.f
    L = len(w.edges)
    kept = [w.vertices[k] for k in range(L)
            if not f[w.edges[k - 1]].loop]
    occ = Counter(kept)
    mono = [0] * f.n
    for v, k in occ.items():
        mono[v - 1] = k - 1
    mono = tuple(mono)
    z, t = z_vector(w), t_vector(w)
    if z.scaled(mono) != t:
        raise InvariantError(f"t is not the m-factor multiple of z for walk {w}")
    return mono


def verify_differential_syzygy(v, f):
    """Expand ``sum_j v_j df_j`` and check that every term cancels."""
    f = as_monomials(f)
    if not v.homogeneous(f):
        raise ValueError("syzygy vector is not homogeneous")
    n = f.n
    total = defaultdict(int)
    for j, e in enumerate(v.entries, 1):
        if not e.coeff:
            continue
        fe = f[j].exponents(n)
        for i in range(n):
            c = fe[i]
            if c:
                d = list(_add(e.exponents, fe))
                d[i] -= 1
                total[(i, tuple(d))] += e.coeff * c
    return not any(total.values())


def split_relation_holds(split):
    """``z_parent == (g/l1) z_w1 + (g/l2) z_w2`` using the parent's order."""
    parent, w1, w2 = split.parent, split.w1, split.w2
    g = parent.lcm()
    zp = z_vector(parent, oriented=True)
    total = defaultdict(int)
    for piece in (w1, w2):
        ell = piece.lcm()
        if not _divides(ell, g):
            return False
        zs = z_vector(piece, oriented=True).scaled(_sub(g, ell))
        for j, e in enumerate(zs.entries, 1):
            if e.coeff:
                total[(j, e.exponents)] += e.coeff
    lhs = {(j, e.exponents): e.coeff for j, e in enumerate(zp.entries, 1) if e.coeff}
    rhs = {k: c for k, c in total.items() if c}
    return lhs == rhs


@dataclass
class GeneratorSet:
    vectors: list
    max_len: int = None
    truncated: bool = False

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __getitem__(self, k):
        return self.vectors[k]


def generators_Z(f):
    """z-vectors of every even cycle and every induced bow tie."""
    g = as_graph(f)
    require_cohesive(g)
    seen = {}
    for w in enumerate_even_cycles(g):
        seen.setdefault(w.key, (w, "even_cycle"))
    for b in enumerate_bowties(g, induced_only=True):
        w = bowtie_walk(b, g)
        seen.setdefault(w.key, (w, "bowtie"))
    out = []
    for key in sorted(seen):
        w, kind = seen[key]
        v = z_vector(w)
        out.append(SyzygyVector(v.entries, v.multidegree, v.source, kind))
    return GeneratorSet(out)


def generators_P(f, max_len):
    """t-vectors of all non-split even closed walks of length <= max_len.

    A non-split walk visits each vertex at most twice, so lengths beyond
    twice the number of used variables never occur; ``truncated`` records
    whether ``max_len`` cut below that.
    """
    g = as_graph(f)
    require_cohesive(g)
    walks = enumerate_non_split_walks(g, max_len)
    out = [t_vector(w) for w in walks]
    return GeneratorSet(out, max_len, max_len < 2 * len(g.covered))


def _primes(k, start=2):
    out, c = [], max(2, start)
    while len(out) < k:
        if all(c % p for p in range(2, int(c ** 0.5) + 1)):
            out.append(c)
        c += 1
    return out


def _evaluate(vs, point):
    rows = []
    for v in vs:
        row = []
        for e in v.entries:
            val = Fraction(e.coeff)
            if e.coeff:
                for x, k in zip(point, e.exponents):
                    if k:
                        val *= x ** k
            row.append(val)
        rows.append(row)
    return rows


def generic_rank(vs, seed=0, tries=3):
    """Rank over the fraction field, via evaluation at generic points.

    The first point sends ``x_i`` to the i-th prime; when the rank falls
    short of the trivial bound, further points drawn from larger primes are
    tried and the maximum is kept.
    """
    vs = list(vs)
    if not vs:
        return 0
    n = len(vs[0].multidegree)
    m = vs[0].m
    bound = min(len(vs), m)
    best = rank(_evaluate(vs, _primes(n)))
    rng = random.Random(seed)
    pool = _primes(max(200, n), 100)
    for _ in range(tries - 1):
        if best >= bound:
            break
        point = rng.sample(pool, n)
        best = max(best, rank(_evaluate(vs, point)))
    return best
