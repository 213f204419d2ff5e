"""Brute-force checks by exact linear algebra on fine-graded slices.

A homogeneous syzygy of multidegree ``b`` has entry ``alpha_j x^(b - log f_j)``
on each generator dividing ``x^b``, so the slice ``Z_b`` is the kernel of the
log-matrix restricted to those generators, and every slice element is
recorded by its coefficient vector ``alpha`` (length m).  Multiplying by a
monomial keeps ``alpha`` and raises ``b``, so spans of shifted vectors are
plain spans of coefficient vectors.

Which generators divide ``x^b`` depends only on ``min(b, 2)``, and so do
``Z_b`` and the polar slices.  New minimal generators can therefore only sit
at multidegrees with entries in {0, 1, 2}; every routine below walks that
capped lattice, which makes the checks exact up to the degree bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .exact import RowSpace, nullspace
from .graph_core import InvariantError, as_graph, as_monomials, require_cohesive
from .walks import enumerate_non_split_walks
from .syzygy import t_vector

__all__ = [
    "GradedSliceReport",
    "OracleVerdict",
    "MuReport",
    "divisors",
    "z_slice_dim",
    "span_slice_dim",
    "mu_Z",
    "polarizable_oracle",
    "generation_check",
    "linear_presentation_oracle",
    "slice_reports",
]

DEFAULT_BOUND = 8


@dataclass(frozen=True)
class GradedSliceReport:
    b: tuple
    dim_Z: int
    dim_span_Z_gens: int
    dim_P: int
    new_min_gens: int

    def to_dict(self):
        return {
            "b": list(self.b),
            "dim_Z": self.dim_Z,
            "dim_span_Z_gens": self.dim_span_Z_gens,
            "dim_P": self.dim_P,
            "new_min_gens": self.new_min_gens,
        }


@dataclass(frozen=True)
class OracleVerdict:
    """``value`` holds up to degree ``bound``; ``first_failure`` is the least
    multidegree where it fails."""

    value: bool
    bound: int
    first_failure: tuple = None

    def __bool__(self):
        return self.value


@dataclass(frozen=True)
class MuReport:
    mu: int
    bound: int
    degrees: tuple = field(default=())

    def __int__(self):
        return self.mu


def divisors(f, b):
    """Generator indices ``j`` with ``f_j | x^b``."""
    f = as_monomials(f)
    n = f.n
    return tuple(j for j, g in enumerate(f.gens, 1)
                 if all(e <= b[i] for i, e in enumerate(g.exponents(n))))


class _Kernels:
    """Cached kernels of restricted log-matrices, keyed by divisor set."""

    def __init__(self, f):
        self.f = f
        self.n = f.n
        self.m = f.m
        self.exps = [g.exponents(f.n) for g in f.gens]
        self._cache = {}

    def basis(self, divs):
        key = tuple(divs)
        if key not in self._cache:
            if len(divs) < 2:
                self._cache[key] = []
            else:
                rows = [[self.exps[j - 1][i] for j in divs] for i in range(self.n)]
                out = []
                for vec in nullspace(rows, len(divs)):
                    full = [Fraction(0)] * self.m
                    for j, x in zip(divs, vec):
                        full[j - 1] = x
                    out.append(full)
                self._cache[key] = out
        return self._cache[key]

    def in_slice(self, coeffs, divs):
        """Whether a coefficient vector is a syzygy supported on ``divs``."""
        dset = set(divs)
        if any(c and (j + 1) not in dset for j, c in enumerate(coeffs)):
            return False
        for i in range(self.n):
            if sum(c * self.exps[j][i] for j, c in enumerate(coeffs) if c):
                return False
        return True


def _lattice(n, cap, bound):
    pts = [b for b in product(range(cap + 1), repeat=n) if sum(b) <= bound]
    pts.sort(key=lambda b: (sum(b), b))
    return pts


def _children(b):
    for i, x in enumerate(b):
        if x:
            yield b[:i] + (x - 1,) + b[i + 1:]


def z_slice_dim(f, b, with_basis=False):
    """Dimension of ``Z_b`` (and a basis of coefficient vectors)."""
    f = as_monomials(f)
    basis = _Kernels(f).basis(divisors(f, tuple(b)))
    return (len(basis), basis) if with_basis else len(basis)


def span_slice_dim(gens, b):
    """Dimension of the span of the generators shifted into degree ``b``."""
    rs = RowSpace()
    for v in gens:
        if all(x <= y for x, y in zip(v.multidegree, b)):
            rs.add(list(v.coeffs))
    return rs.rank


def mu_Z(f, degree_bound=DEFAULT_BOUND):
    """Number of minimal generators of Z up to the bound, by degree."""
    f = as_monomials(f)
    require_cohesive(f)
    K = _Kernels(f)
    degrees = []
    total = 0
    for b in _lattice(f.n, 2, degree_bound):
        divs = divisors(f, b)
        if len(divs) < 2:
            continue
        dim = len(K.basis(divs))
        if not dim:
            continue
        lower = {divisors(f, c) for c in _children(b)}
        if divs in lower:
            continue
        rs = RowSpace()
        for d in lower:
            rs.extend(K.basis(d))
        new = dim - rs.rank
        if new < 0:
            raise InvariantError("lower slices span more than the slice")
        if new:
            degrees.append((b, new))
            total += new
    return MuReport(total, degree_bound, tuple(degrees))


def _polar_vectors(f, bound):
    """Coefficient vectors of t_w for non-split walks, bucketed by degree."""
    g = as_graph(f)
    buckets = {}
    for w in enumerate_non_split_walks(g, bound):
        t = t_vector(w)
        buckets.setdefault(t.multidegree, []).append(list(t.coeffs))
    return buckets


def _slice_dp(f, bound, seed_vectors, cap=2):
    """Yield ``(b, divs, RowSpace)`` with the span of vectors of degree <= b.

    ``seed_vectors`` maps a multidegree to the coefficient vectors that
    appear there first.
    """
    spaces = {}
    for b in _lattice(f.n, cap, bound):
        kids = [spaces[c] for c in _children(b) if c in spaces]
        if kids:
            rs = max(kids, key=len).copy()
            for k in kids:
                if len(k) and k is not rs:
                    rs.extend(k.basis())
        else:
            rs = RowSpace()
        rs.extend(seed_vectors.get(b, ()))
        spaces[b] = rs
        yield b, divisors(f, b), rs


def polarizable_oracle(f, degree_bound=DEFAULT_BOUND):
    """Slicewise ``P_b == Z_b`` for every ``|b| <= degree_bound``."""
    f = as_monomials(f)
    require_cohesive(f)
    K = _Kernels(f)
    buckets = _polar_vectors(f, degree_bound)
    for b, vecs in buckets.items():
        for vec in vecs:
            if not K.in_slice(vec, divisors(f, b)):
                raise InvariantError(f"polar vector outside Z at degree {b}")
    for b, divs, rs in _slice_dp(f, degree_bound, buckets):
        dim_z = len(K.basis(divs)) if len(divs) >= 2 else 0
        if rs.rank > dim_z:
            raise InvariantError(f"P slice larger than Z slice at {b}")
        if rs.rank < dim_z:
            return OracleVerdict(False, degree_bound, b)
    return OracleVerdict(True, degree_bound)


def generation_check(gens, f, degree_bound=DEFAULT_BOUND):
    """Whether the given syzygies span every slice of Z up to the bound."""
    f = as_monomials(f)
    K = _Kernels(f)
    cap = max([2] + [max(v.multidegree) for v in gens])
    seeds = {}
    for v in gens:
        if not K.in_slice(list(v.coeffs), divisors(f, v.multidegree)):
            raise ValueError(f"vector of degree {v.multidegree} is not a syzygy")
        if sum(v.multidegree) <= degree_bound:
            seeds.setdefault(tuple(v.multidegree), []).append(list(v.coeffs))
    for b, divs, rs in _slice_dp(f, degree_bound, seeds, cap):
        dim_z = len(K.basis(divs)) if len(divs) >= 2 else 0
        if rs.rank != dim_z:
            return OracleVerdict(False, degree_bound, b)
    return OracleVerdict(True, degree_bound)


def linear_presentation_oracle(f, degree_bound=DEFAULT_BOUND):
    """Whether the syzygies of the ideal ``(f)`` are generated in degree 3.

    The slice of ideal syzygies at ``b`` is ``{alpha : sum alpha = 0}`` over
    the divisors of ``x^b``; its linear part is spanned by ``e_i - e_j`` for
    divisors sharing a variable.
    """
    f = as_monomials(f)
    require_cohesive(f)
    gens = f.gens
    for b in _lattice(f.n, 2, degree_bound):
        divs = divisors(f, b)
        if len(divs) < 2:
            continue
        rs = RowSpace()
        for a_i, a in enumerate(divs):
            for c in divs[a_i + 1:]:
                if set(gens[a - 1].variables) & set(gens[c - 1].variables):
                    vec = {a - 1: 1, c - 1: -1}
                    rs.add(vec)
        if rs.rank != len(divs) - 1:
            return OracleVerdict(False, degree_bound, b)
    return OracleVerdict(True, degree_bound)


def slice_reports(f, degree_bound=DEFAULT_BOUND, z_gens=()):
    """Per-slice dimensions for every multidegree with a nonzero Z slice."""
    f = as_monomials(f)
    require_cohesive(f)
    K = _Kernels(f)
    buckets = _polar_vectors(f, degree_bound)
    mu = dict(mu_Z(f, degree_bound).degrees)
    out = []
    for b, divs, rs in _slice_dp(f, degree_bound, buckets):
        dim_z = len(K.basis(divs)) if len(divs) >= 2 else 0
        if not dim_z:
            continue
        out.append(GradedSliceReport(b, dim_z, span_slice_dim(z_gens, b),
                                     rs.rank, mu.get(b, 0)))
    return out
