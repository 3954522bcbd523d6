"""Gap intervals and gap-length sets of attractor components.

The gap-length set G_u collects the lengths of all maximal open intervals
complementary to F_u inside [0,1].  Level-k gaps are extracted exactly from
the level-k approximation; the overall maximum gap length is the least
fixed point of a monotone recursion driven by the level-1 gaps; and for the
two-vertex double-loop family the full length set has a closed form as a
finite union of multiplicative-semigroup cosets.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .attractor import level_k_set
from .errors import ResourceCapError
from .families import DoubleLoopParams
from .model import (
    DEFAULT_PATH_CAP,
    GraphIFS,
    ONE,
    ZERO,
    as_rational,
)

GapList = list[tuple[tuple[Fraction, Fraction], Fraction]]


def level_k_gaps(ifs: GraphIFS, u: str, k: int,
                 cap: int = DEFAULT_PATH_CAP) -> GapList:
    """Complementary open intervals of the level-k approximation at u,
    sorted by position, each with its exact length."""
    if k < 1:
        raise ValueError("level k must be >= 1")
    return [((lo, hi), hi - lo)
            for lo, hi in level_k_set(ifs, u, k, cap).gaps()]


def _level1_gap_lengths(ifs: GraphIFS) -> dict[str, list[Fraction]]:
    return {u: [length for _gap, length in level_k_gaps(ifs, u, 1)]
            for u in ifs.vertices}


def max_gap(ifs: GraphIFS, u: str) -> Fraction:
    """The exact maximum of the full gap-length set G_u.

    Computed as the least fixed point of
        M_u = max(max G_u^1, max over out-edges e of r_e * M_{t(e)}),
    iterated from M_u = max G_u^1.  Improvements routed through L or more
    edges are impossible once r_max^L drops below the smallest level-1 gap,
    which bounds the number of iterations.
    """
    level1 = _level1_gap_lengths(ifs)
    m = {v: max(level1[v]) for v in ifs.vertices}
    r_max = max(e.map.ratio for e in ifs.edges)
    g_min = min(min(level1[v]) for v in ifs.vertices)
    bound = 1
    scale = r_max
    while scale >= g_min:
        scale *= r_max
        bound += 1
    for _ in range(bound + 1):
        nxt = {
            v: max(max(level1[v]),
                   max(e.map.ratio * m[e.dst] for e in ifs.out_edges(v)))
            for v in ifs.vertices
        }
        if nxt == m:
            break
        m = nxt
    return m[u]


_MEMBERSHIP_CAP = 10_000_000


def _prime_exponents(q: Fraction) -> dict[int, int]:
    """Prime factorization exponents of a positive rational."""
    exps: dict[int, int] = {}
    for n, sign in ((q.numerator, 1), (q.denominator, -1)):
        d = 2
        while d * d <= n:
            while n % d == 0:
                exps[d] = exps.get(d, 0) + sign
                n //= d
            d += 1 if d == 2 else 2
        if n > 1:
            exps[n] = exps.get(n, 0) + sign
    return {p: e for p, e in exps.items() if e}


def _exponents_over(q: Fraction, primes) -> Optional[dict[int, int]]:
    """Exponent vector of q over the given primes, or None if q has any
    prime factor outside them."""
    num, den = q.numerator, q.denominator
    vec: dict[int, int] = {}
    for p in primes:
        e = 0
        while num % p == 0:
            num //= p
            e += 1
        while den % p == 0:
            den //= p
            e -= 1
        if e:
            vec[p] = e
    return vec if num == 1 and den == 1 else None


def _is_generator_product(target: Fraction, gens: tuple[Fraction, ...]) -> bool:
    """Whether target equals a finite product of the generators (all in
    (0,1)).  Per prime, the exponents must solve an integer linear system;
    Gaussian elimination leaves at most a couple of free exponents, each
    bounded because every generator is < 1."""
    if target == ONE:
        return True
    if target > ONE or not gens:
        return False
    gvecs = [_prime_exponents(g) for g in gens]
    primes = sorted(set().union(*gvecs))
    tvec = _exponents_over(target, primes)
    if tvec is None:
        return False
    n = len(gens)
    rows = [[Fraction(gv.get(p, 0)) for gv in gvecs]
            + [Fraction(tvec.get(p, 0))] for p in primes]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rows[r] = [v / piv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    if any(rows[i][n] for i in range(r, len(rows))):
        return False
    free = [c for c in range(n) if c not in pivots]
    # any valid exponent e_c satisfies gens[c]**e_c >= target
    bounds = [int(math.log(target) / math.log(gens[c])) + 1 for c in free]
    total = 1
    for b in bounds:
        total *= b + 1
    if total > _MEMBERSHIP_CAP:
        raise ResourceCapError(
            "coset membership enumeration too large", total)
    for assignment in itertools.product(*(range(b + 1) for b in bounds)):
        exps: list[Fraction] = [Fraction(0)] * n
        for c, val in zip(free, assignment):
            exps[c] = Fraction(val)
        feasible = True
        for ri, c in enumerate(pivots):
            val = rows[ri][n] - sum(rows[ri][fc] * exps[fc] for fc in free)
            if val < 0 or val.denominator != 1:
                feasible = False
                break
            exps[c] = val
        if not feasible:
            continue
        prod = ONE
        for g, e in zip(gens, exps):
            prod *= g ** int(e)
        if prod == target:
            return True
    return False


@dataclass(frozen=True)
class GapCosets:
    """A finite union of cosets coeff * <generators> of multiplicative
    semigroups (the empty product 1 is always included, not stored)."""

    cosets: tuple[tuple[Fraction, tuple[Fraction, ...]], ...]

    def __post_init__(self):
        normalized = []
        for coeff, gens in self.cosets:
            coeff = as_rational(coeff)
            if coeff <= ZERO:
                raise ValueError("coset coefficient must be positive")
            uniq: list[Fraction] = []
            for g in gens:
                g = as_rational(g)
                if not (ZERO < g < ONE):
                    raise ValueError("generators must lie in (0,1)")
                if g not in uniq:
                    uniq.append(g)
            normalized.append((coeff, tuple(uniq)))
        object.__setattr__(self, "cosets", tuple(normalized))

    def enumerate(self, threshold) -> list[Fraction]:
        """All members >= threshold, sorted ascending (finite since every
        generator is < 1)."""
        threshold = as_rational(threshold)
        if threshold <= ZERO:
            raise ValueError("threshold must be positive")
        found: set[Fraction] = set()
        for coeff, gens in self.cosets:
            stack = [coeff]
            seen = {coeff}
            while stack:
                x = stack.pop()
                if x < threshold:
                    continue
                found.add(x)
                for g in gens:
                    y = x * g
                    if y >= threshold and y not in seen:
                        seen.add(y)
                        stack.append(y)
        return sorted(found)

    def contains(self, x) -> bool:
        """Exact membership test, decidable because generators are < 1.

        x belongs to coeff*<g1,...,gn> iff x/coeff = prod g_i^{e_i} with
        nonnegative integer exponents.  Over the prime support of the
        generators this is a small integer linear system, solved exactly.
        """
        x = as_rational(x)
        if x <= ZERO:
            return False
        return any(x <= coeff and _is_generator_product(x / coeff, gens)
                   for coeff, gens in self.cosets)


def gap_length_cosets(params: DoubleLoopParams) -> tuple[GapCosets, GapCosets]:
    """Closed-form gap-length sets of the double-loop family:

        G_u = g_u<a>  ∪  b*d*g_u<a, b*d, c>  ∪  b*g_v<a, b*d, c>
        G_v = g_v<c>  ∪  b*d*g_v<a, b*d, c>  ∪  d*g_u<a, b*d, c>
    """
    p = params
    mixed = (p.a, p.b * p.d, p.c)
    g_u = GapCosets((
        (p.g_u, (p.a,)),
        (p.b * p.d * p.g_u, mixed),
        (p.b * p.g_v, mixed),
    ))
    g_v = GapCosets((
        (p.g_v, (p.c,)),
        (p.b * p.d * p.g_v, mixed),
        (p.d * p.g_u, mixed),
    ))
    return g_u, g_v


def enumerate_coset_lengths(cosets: GapCosets, threshold) -> list[Fraction]:
    """Sorted finite slice of a coset union: all members >= threshold."""
    return cosets.enumerate(threshold)


def max_gap_closed_form(params: DoubleLoopParams) -> tuple[Fraction, Fraction]:
    """(max G_u, max G_v) for the double-loop family:
    max{g_u, b*g_v} and max{g_v, d*g_u}."""
    p = params
    return max(p.g_u, p.b * p.g_v), max(p.g_v, p.d * p.g_u)


@dataclass(frozen=True)
class Condition2Report:
    """Comparison of max G_u against the smallest level-1 gap of each
    vertex in a target set."""

    u: str
    max_gap_u: Fraction
    comparisons: tuple[tuple[str, Fraction, bool], ...]  # (v, min G_v^1, ok)
    level1_gaps_uniform: Optional[bool]  # set when the check passes

    @property
    def ok(self) -> bool:
        return all(ok for _v, _m, ok in self.comparisons)


def condition2_check(ifs: GraphIFS, u: str, vset) -> Condition2Report:
    """Check max G_u <= min G_v^1 for every v in vset (which must contain
    u).  A pass forces all level-1 gaps at u to share one length; that
    consequence is verified and reported."""
    vset = list(vset)
    if u not in vset:
        raise ValueError("vset must contain the queried vertex")
    level1 = _level1_gap_lengths(ifs)
    m_u = max_gap(ifs, u)
    comparisons = tuple(
        (v, min(level1[v]), m_u <= min(level1[v])) for v in vset)
    uniform = None
    if all(ok for _v, _m, ok in comparisons):
        uniform = len(set(level1[u])) == 1
    return Condition2Report(u, m_u, comparisons, uniform)
