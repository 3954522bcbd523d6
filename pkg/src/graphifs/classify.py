"""Certificate-producing deciders: is an attractor component the attractor
of a standard (single-vertex) IFS?

Three one-sided criteria are implemented, each emitting a replayable
certificate:

* distinct-components ("p2m"): for the two-vertex double-loop family, if
  the two components differ (exactly when not both a=c and b=d), neither
  component is a standard IFS attractor.
* gap condition ("p2q"): a component F_u is not a standard IFS attractor
  when (1) some simple cycle avoids u, (2) max G_u is at most the smallest
  level-1 gap of every vertex involved, and (3) F_u is provably not
  contained in any other involved component (exact gap-witness proofs).
* measure condition ("p2t"): like the gap condition, but with (2) replaced
  by unit Hausdorff measure at the involved vertices (double-loop family
  only) and a caller-asserted minimal-edge-count hypothesis.

When every simple cycle reachable in the expansion returns to u, the
component *is* standard: `rewrite_to_standard` produces the explicit map
list ("p2nv1" certificates).

Unknown is always a possible outcome and never a proof of anything.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Optional

from .attractor import (
    SubsetRefutation,
    components_equal,
    endpoint_witnesses,
    level_k_set,
    refute_subset,
    replay_refutation,
)
from .errors import RewriteError
from .families import DoubleLoopParams, double_loop_ifs, params_from_ifs
from .gaps import Condition2Report, condition2_check
from .measure import MeasureResult, component_measures
from .model import (
    Edge,
    GraphIFS,
    Path,
    Similarity,
    graph_digest,
    path_vertices,
    simple_cycles,
    simple_path,
)

MEASURE_UNIT_TOL = 1e-9


class Verdict(enum.Enum):
    NOT_STANDARD = "NotStandardAttractor"
    STANDARD = "StandardAttractor"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class DetachedCycleWitness:
    """A simple cycle avoiding the queried vertex u, with a simple path
    from u to the cycle; vprime is the union of both vertex lists."""

    w: str
    cycle: Path
    path: Path
    vprime: tuple[str, ...]


@dataclass(frozen=True)
class Certificate:
    """A self-contained verdict about one attractor component.

    Every evidence item can be re-verified against the subject system
    alone (see replay_certificate); Unknown records the first unmet
    condition and proves nothing.
    """

    subject_digest: str
    vertex: str
    verdict: Verdict
    theorem: str  # "p2m" | "p2q" | "p2t" | "p2nv1"
    cycle_witness: Optional[DetachedCycleWitness] = None
    condition2: Optional[Condition2Report] = None
    refutations: tuple[tuple[str, SubsetRefutation], ...] = ()
    measure: Optional[MeasureResult] = None
    maps: Optional[tuple[Similarity, ...]] = None
    reflected: bool = False
    minimal_edges_asserted: Optional[bool] = None
    unknown_reason: Optional[str] = None
    notes: tuple[str, ...] = ()


def find_detached_cycle(ifs: GraphIFS, u: str) -> Optional[DetachedCycleWitness]:
    """First simple cycle (canonical order) not attached to u, with a
    BFS simple path from u to the cycle's base vertex; None exactly when
    every simple cycle is attached to u."""
    rank = {v: i for i, v in enumerate(ifs.vertices)}
    for cycle in simple_cycles(ifs):
        verts = path_vertices(ifs, cycle)
        if u in verts:
            continue
        w = min(verts[:-1], key=rank.get)
        path = simple_path(ifs, u, w)
        if path is None:
            continue
        vprime = sorted(set(verts) | set(path_vertices(ifs, path)),
                        key=rank.get)
        return DetachedCycleWitness(w, cycle, path, tuple(vprime))
    return None


# ---------------------------------------------------------------------------
# distinct-components criterion (double-loop family)

def classify_distinct_components(params: DoubleLoopParams
                                 ) -> tuple[Certificate, Certificate]:
    """Certificates for both components of a double-loop system: when the
    components differ, neither is a standard IFS attractor."""
    ifs = double_loop_ifs(params)
    digest = graph_digest(ifs)
    u, v = ifs.vertices
    if components_equal(params):
        note = ("components coincide (a=c and b=d): the system reduces to "
                "a standard IFS and this criterion does not apply",)
        return tuple(
            Certificate(digest, x, Verdict.UNKNOWN, "p2m",
                        unknown_reason="components coincide", notes=note)
            for x in (u, v))
    note = ("components differ (a=c and b=d fails), so neither component "
            "is the attractor of any standard IFS",)
    return tuple(
        Certificate(digest, x, Verdict.NOT_STANDARD, "p2m", notes=note)
        for x in (u, v))


# ---------------------------------------------------------------------------
# standard-IFS rewrite

def _find_injection(ifs: GraphIFS, u: str, w: str) -> Optional[dict[str, str]]:
    """An injection phi from out-edges of u into out-edges of w preserving
    both the similarity and the target vertex, as edge-id pairs."""
    u_edges = ifs.out_edges(u)
    w_edges = ifs.out_edges(w)
    if len(u_edges) > len(w_edges):
        return None

    def match(i: int, used: set[str], acc: dict[str, str]
              ) -> Optional[dict[str, str]]:
        if i == len(u_edges):
            return dict(acc)
        e = u_edges[i]
        for f in w_edges:
            if f.id in used or f.dst != e.dst or f.map != e.map:
                continue
            used.add(f.id)
            acc[e.id] = f.id
            found = match(i + 1, used, acc)
            if found is not None:
                return found
            used.remove(f.id)
            del acc[e.id]
        return None

    return match(0, set(), {})


def rewrite_to_standard(ifs: GraphIFS, u: str) -> tuple[Similarity, ...]:
    """Express F_u as the attractor of a standard IFS: a finite list of
    similarities T with F_u = union of T_i(F_u).

    Terms (S, w) maintain the invariant F_u = union of S(F_w).  A term
    already at u is final.  A term at w != u is substituted when the
    level-1 decomposition of F_u embeds into that of F_w (then F_w equals
    F_u plus the leftover edge images), and expanded one level otherwise.
    The process either empties out in at most |V|+1 rounds or is reported
    as non-terminating.  Redundant maps (exact compositions of two other
    returned maps) are absorbed."""
    terms: list[tuple[Similarity, str]] = [
        (e.map, e.dst) for e in ifs.out_edges(u)]
    rounds = 0
    cap = len(ifs.vertices) + 1
    while any(w != u for _sim, w in terms):
        if rounds >= cap:
            raise RewriteError(
                f"component {u!r} did not reduce to a standard IFS within "
                f"{cap} substitution rounds")
        rounds += 1
        nxt: list[tuple[Similarity, str]] = []
        for sim, w in terms:
            if w == u:
                nxt.append((sim, w))
                continue
            phi = _find_injection(ifs, u, w)
            if phi is not None:
                matched = set(phi.values())
                nxt.append((sim, u))
                for f in ifs.out_edges(w):
                    if f.id not in matched:
                        nxt.append((sim.compose(f.map), f.dst))
            else:
                for f in ifs.out_edges(w):
                    nxt.append((sim.compose(f.map), f.dst))
        terms = nxt
    maps: list[Similarity] = []
    for sim, _w in terms:
        if sim not in maps:
            maps.append(sim)
    changed = True
    while changed:
        changed = False
        for m in maps:
            if any(p.compose(q) == m
                   for p, q in itertools.product(maps, maps)
                   if p != m and q != m):
                maps.remove(m)
                changed = True
                break
    return tuple(sorted(maps, key=lambda s: (s.hull()[0], s.ratio, s.offset)))


def standard_ifs_from_maps(maps, vertex: str = "w") -> GraphIFS:
    """Wrap a list of similarities as a single-vertex system."""
    return GraphIFS(
        (vertex,),
        tuple(Edge(f"m{i+1}", vertex, vertex, sim)
              for i, sim in enumerate(maps)))


def cross_refutation_empty(ifs: GraphIFS, u: str, maps,
                           depth: int = 6) -> bool:
    """Necessary condition for F_u to equal the attractor of the standard
    IFS `maps`: no exact endpoint-image point of either system lies in a
    complementary gap of the other's level-k approximation, k <= depth."""
    std = standard_ifs_from_maps(maps)
    (w,) = std.vertices
    for src_ifs, src_v, dst_ifs, dst_v in ((ifs, u, std, w), (std, w, ifs, u)):
        points = [p for p, _path, _end in
                  endpoint_witnesses(src_ifs, src_v, depth)]
        for m in range(1, depth + 1):
            target = level_k_set(dst_ifs, dst_v, m)
            if not all(target.contains(p) for p in points):
                return False
    return True


# ---------------------------------------------------------------------------
# gap-condition and measure-condition deciders

def _condition3(ifs: GraphIFS, u: str, vprime, depth: int, reflected: bool):
    """Collect containment refutations for every other involved vertex;
    returns (refutations, missing-description or None)."""
    refs: list[tuple[str, SubsetRefutation]] = []
    for v in vprime:
        if v == u:
            continue
        variants = (False, True) if reflected else (False,)
        for refl in variants:
            r = refute_subset(ifs, u, v, depth, reflected=refl)
            if r is None:
                kind = "reflection of component" if refl else "component"
                return refs, (f"containment of component {u!r} in {kind} "
                              f"{v!r} not refuted at depth {depth}")
            refs.append((v, r))
    return refs, None


def classify_gap_condition(ifs: GraphIFS, u: str, depth: int = 8,
                           reflected: bool = False) -> Certificate:
    """Decide standardness of F_u via the gap criterion.

    (1) a simple cycle avoiding u must exist — if none does, the component
    is standard and the explicit rewrite is returned instead;
    (2) max G_u must not exceed any involved vertex's smallest level-1 gap;
    (3) containment of F_u in every other involved component (and in its
    reflection, when requested) must be exactly refuted."""
    digest = graph_digest(ifs)
    witness = find_detached_cycle(ifs, u)
    if witness is None:
        try:
            maps = rewrite_to_standard(ifs, u)
        except RewriteError as exc:
            return Certificate(
                digest, u, Verdict.UNKNOWN, "p2q", reflected=reflected,
                unknown_reason=f"condition (1) unmet and rewrite failed: {exc}")
        return Certificate(digest, u, Verdict.STANDARD, "p2nv1", maps=maps,
                           notes=("every simple cycle returns to the queried "
                                  "vertex; explicit standard IFS attached",))
    cond2 = condition2_check(ifs, u, witness.vprime)
    if not cond2.ok:
        return Certificate(
            digest, u, Verdict.UNKNOWN, "p2q", cycle_witness=witness,
            condition2=cond2, reflected=reflected,
            unknown_reason=("condition (2): max gap at "
                            f"{u!r} exceeds a level-1 gap in the involved set"))
    refs, missing = _condition3(ifs, u, witness.vprime, depth, reflected)
    if missing is not None:
        return Certificate(
            digest, u, Verdict.UNKNOWN, "p2q", cycle_witness=witness,
            condition2=cond2, refutations=tuple(refs), reflected=reflected,
            unknown_reason=f"condition (3): {missing}")
    return Certificate(digest, u, Verdict.NOT_STANDARD, "p2q",
                       cycle_witness=witness, condition2=cond2,
                       refutations=tuple(refs), reflected=reflected)


def classify_measure_condition(ifs: GraphIFS, u: str, depth: int = 8,
                               minimal_edges_asserted: bool = False,
                               reflected: bool = False) -> Certificate:
    """Decide standardness of F_u via the unit-measure criterion (double-
    loop family only; minimal edge count is an asserted hypothesis)."""
    digest = graph_digest(ifs)
    if not minimal_edges_asserted:
        return Certificate(
            digest, u, Verdict.UNKNOWN, "p2t", reflected=reflected,
            minimal_edges_asserted=False,
            unknown_reason="minimal edge count not asserted by the caller")
    witness = find_detached_cycle(ifs, u)
    if witness is None:
        try:
            maps = rewrite_to_standard(ifs, u)
        except RewriteError as exc:
            return Certificate(
                digest, u, Verdict.UNKNOWN, "p2t", reflected=reflected,
                minimal_edges_asserted=True,
                unknown_reason=f"condition (1) unmet and rewrite failed: {exc}")
        return Certificate(digest, u, Verdict.STANDARD, "p2nv1", maps=maps,
                           minimal_edges_asserted=True,
                           notes=("every simple cycle returns to the queried "
                                  "vertex; explicit standard IFS attached",))
    params = params_from_ifs(ifs)
    if params is None:
        return Certificate(
            digest, u, Verdict.UNKNOWN, "p2t", cycle_witness=witness,
            reflected=reflected, minimal_edges_asserted=True,
            unknown_reason=("Hausdorff measure only computable for the "
                            "two-vertex double-loop family"))
    result = component_measures(params)
    if result.h_u is None:
        return Certificate(
            digest, u, Verdict.UNKNOWN, "p2t", cycle_witness=witness,
            measure=result, reflected=reflected, minimal_edges_asserted=True,
            unknown_reason="measure-formula conditions fail")
    h_by_vertex = dict(zip(ifs.vertices, (result.h_u, result.h_v)))
    off_unit = [v for v in witness.vprime
                if abs(h_by_vertex[v] - 1) > MEASURE_UNIT_TOL]
    if off_unit:
        return Certificate(
            digest, u, Verdict.UNKNOWN, "p2t", cycle_witness=witness,
            measure=result, reflected=reflected, minimal_edges_asserted=True,
            unknown_reason=("unit measure required at every involved vertex; "
                            f"violated at {off_unit}"))
    refs, missing = _condition3(ifs, u, witness.vprime, depth, reflected)
    if missing is not None:
        return Certificate(
            digest, u, Verdict.UNKNOWN, "p2t", cycle_witness=witness,
            measure=result, refutations=tuple(refs), reflected=reflected,
            minimal_edges_asserted=True,
            unknown_reason=f"condition (3): {missing}")
    return Certificate(digest, u, Verdict.NOT_STANDARD, "p2t",
                       cycle_witness=witness, measure=result,
                       refutations=tuple(refs), reflected=reflected,
                       minimal_edges_asserted=True)


# ---------------------------------------------------------------------------
# replay

def _replay_witness(ifs: GraphIFS, u: str, w: DetachedCycleWitness) -> bool:
    verts_c = path_vertices(ifs, w.cycle)
    if verts_c[0] != verts_c[-1] or len(set(verts_c)) != len(w.cycle.edges):
        return False
    if u in verts_c:
        return False
    verts_p = path_vertices(ifs, w.path)
    if verts_p[0] != u or verts_p[-1] != w.w or w.w not in verts_c:
        return False
    if len(set(verts_p)) != len(w.path.edges) + 1:
        return False
    return set(w.vprime) == set(verts_c) | set(verts_p)


def replay_certificate(ifs: GraphIFS, cert: Certificate) -> bool:
    """Re-verify a certificate from its recorded evidence against the
    system alone.  Unknown certificates carry no claim and replay
    vacuously."""
    if graph_digest(ifs) != cert.subject_digest:
        return False
    if cert.vertex not in ifs.vertices:
        return False
    if cert.verdict is Verdict.UNKNOWN:
        return True
    if cert.verdict is Verdict.STANDARD:
        try:
            return cert.maps == rewrite_to_standard(ifs, cert.vertex)
        except RewriteError:
            return False
    # NotStandardAttractor
    if cert.theorem == "p2m":
        params = params_from_ifs(ifs)
        return params is not None and not components_equal(params)
    w = cert.cycle_witness
    if w is None or not _replay_witness(ifs, cert.vertex, w):
        return False
    if cert.theorem == "p2q":
        if cert.condition2 is None:
            return False
        fresh = condition2_check(ifs, cert.vertex, w.vprime)
        if (fresh.max_gap_u != cert.condition2.max_gap_u
                or fresh.comparisons != cert.condition2.comparisons
                or not fresh.ok):
            return False
    elif cert.theorem == "p2t":
        params = params_from_ifs(ifs)
        if params is None or cert.measure is None:
            return False
        fresh = component_measures(params)
        if fresh.h_u is None:
            return False
        h_by_vertex = dict(zip(ifs.vertices, (fresh.h_u, fresh.h_v)))
        if any(abs(h_by_vertex[v] - 1) > MEASURE_UNIT_TOL for v in w.vprime):
            return False
    else:
        return False
    needed = {(v, refl)
              for v in w.vprime if v != cert.vertex
              for refl in ((False, True) if cert.reflected else (False,))}
    covered = set()
    for v, ref in cert.refutations:
        if not replay_refutation(ifs, cert.vertex, v, ref):
            return False
        covered.add((v, ref.reflected))
    return needed <= covered
