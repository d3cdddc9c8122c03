"""Implicit Cayley (di)graphs: neighbors, identity-rooted BFS, exports.

A generator set is treated as an implicit graph on the whole group: the
out-neighbors of g are g*s for each generator s.  Because Cayley graphs
are vertex-transitive (left translation carries any vertex to the
identity), the eccentricity of the identity equals the diameter, so one
BFS suffices for exact diameter verification.

The BFS works on dense element indices with flat numpy arrays and is
sequential and deterministic: per-level counts are set-based, so the
histogram does not depend on any traversal order.  Memory is roughly
4 bytes per group element plus transient frontier arrays; above the state
cap the search refuses instead of degrading.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO

import numpy as np

from .bounds import moore_bound
from .generators import (
    ConstructionSpec,
    GeneratorSet,
    ValidationReport,
    build,
    parse_spec,
    validate,
)
from .group import (
    DEFAULT_STATE_CAP,
    CapExceededError,
    GroupElement,
    ParameterError,
    shift_alpha,
)

EXPORT_FORMATS = ("edge-list", "dot", "adjacency")


class DisconnectedGraphError(RuntimeError):
    """BFS exhausted the reachable set without covering the group.

    All four constructions generate the whole group, so reaching this for
    one of them signals a generator-set bug; the unreachable count and the
    partial histogram are attached.
    """

    def __init__(self, unreachable: int, histogram: list[int]):
        self.unreachable = unreachable
        self.histogram = histogram
        super().__init__(
            f"graph is not connected from the source: {unreachable} vertices unreachable"
        )


@dataclass
class BfsResult:
    diameter: int
    histogram: list[int]
    distances: np.ndarray | None = None

    @property
    def reached(self) -> int:
        return sum(self.histogram)


def neighbors(g: GroupElement, gens: GeneratorSet) -> list[GroupElement]:
    """Out-neighbors [g*s for s in S], in generator order."""
    params = gens.params
    return [params.mul(g, s) for s in gens.elements]


def _generator_tables(gens: GeneratorSet):
    """Per-(source shift, generator) addends and target shifts.

    Right-multiplying (u; su) by (v; sv) adds alpha^su(v) to the vector and
    sv to the shift, so for each source shift su the vector addend is a
    constant; its dense value and base-t digits are precomputed here.
    """
    params = gens.params
    t, r = params.t, params.r
    d = len(gens.elements)
    digit_dtype = np.uint16 if t <= 0x7FFF else np.int64
    add_value = np.empty((r, d), dtype=np.int64)
    add_digits = np.empty((r, d, r), dtype=digit_dtype)
    target_shift = np.empty((r, d), dtype=np.int64)
    for su in range(r):
        for j, (vec, sv) in enumerate(gens.elements):
            rotated = shift_alpha(vec, su)
            value = 0
            for coord in reversed(rotated):
                value = value * t + coord
            add_value[su, j] = value
            add_digits[su, j] = rotated
            target_shift[su, j] = (su + sv) % r
    return add_value, add_digits, target_shift


def _bfs_distances(gens: GeneratorSet, source_index: int, cap: int) -> np.ndarray:
    params = gens.params
    t, r = params.t, params.r
    n = params.order()
    if n > cap:
        raise CapExceededError(n, cap)
    base = t**r
    d = len(gens.elements)
    add_value, add_digits, target_shift = _generator_tables(gens)

    digits = None
    if t != 2:
        digits = np.empty((base, r), dtype=add_digits.dtype)
        tmp = np.arange(base, dtype=np.int64)
        for i in range(r):
            digits[:, i] = tmp % t
            tmp //= t

    # distances are bounded by n - 1, so promote the dtype when a pathological
    # (non-construction) set could push the eccentricity past int16
    dist_dtype = np.int16 if n <= 0x7FFF else np.int32
    dist = np.full(n, -1, dtype=dist_dtype)
    dist[source_index] = 0
    block_edges = np.arange(r + 1, dtype=np.int64) * base
    level = 0
    while True:
        frontier = np.flatnonzero(dist == level)
        if frontier.size == 0:
            break
        # indices are shift-major, so a sorted frontier splits into one
        # contiguous segment per source shift
        cuts = np.searchsorted(frontier, block_edges)
        for su in range(r):
            seg = frontier[cuts[su]:cuts[su + 1]]
            if seg.size == 0:
                continue
            vec_part = seg - su * base
            if t == 2:
                for j in range(d):
                    nb = (vec_part ^ add_value[su, j]) + target_shift[su, j] * base
                    fresh = nb[dist[nb] == -1]
                    dist[fresh] = level + 1
            else:
                seg_digits = digits[vec_part]
                for j in range(d):
                    w = seg_digits + add_digits[su, j]
                    w[w >= t] -= t
                    value = w[:, r - 1].astype(np.int64)
                    for i in range(r - 2, -1, -1):
                        value *= t
                        value += w[:, i]
                    nb = value + target_shift[su, j] * base
                    fresh = nb[dist[nb] == -1]
                    dist[fresh] = level + 1
        level += 1
    return dist


def bfs_from(
    gens: GeneratorSet,
    source: GroupElement,
    cap: int = DEFAULT_STATE_CAP,
    want_distances: bool = False,
) -> BfsResult:
    """Exact eccentricity and per-level counts from an arbitrary source."""
    source_index = gens.params.encode(source, cap=cap)
    dist = _bfs_distances(gens, source_index, cap)
    reached = dist >= 0
    histogram = np.bincount(dist[reached].astype(np.int64)).tolist()
    unreachable = int(dist.size - reached.sum())
    if unreachable:
        raise DisconnectedGraphError(unreachable, histogram)
    return BfsResult(
        diameter=len(histogram) - 1,
        histogram=histogram,
        distances=dist if want_distances else None,
    )


def bfs_from_identity(
    gens: GeneratorSet,
    cap: int = DEFAULT_STATE_CAP,
    want_distances: bool = False,
) -> BfsResult:
    """Exact diameter and distance histogram of the (di)graph.

    For directed sets this is the out-eccentricity of the identity, which
    vertex-transitivity makes equal to the digraph diameter.
    """
    return bfs_from(gens, gens.params.identity(), cap=cap, want_distances=want_distances)


@dataclass
class GraphReport:
    """Verification outcome for one construction instance."""

    spec: ConstructionSpec
    order: int
    degree: int
    directed: bool
    claimed_diameter: int
    diameter: int | None
    histogram: list[int] | None
    moore_ratio: Fraction
    validation: ValidationReport
    unreachable: int = 0
    discrepancies: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.validation.ok and not self.discrepancies


def verify_construction(
    spec: ConstructionSpec | str,
    cap: int = DEFAULT_STATE_CAP,
    run_bfs: bool = True,
) -> GraphReport:
    """Build, validate and (within cap) BFS-verify a construction.

    A computed diameter different from the claimed one is recorded as a
    discrepancy, never hidden; so is any unreachable vertex.  With
    ``run_bfs=False`` only the formula-level report is produced.  The Moore
    ratio is order over the Moore bound at the actual degree and the BFS
    diameter (claimed diameter when BFS was skipped).
    """
    if isinstance(spec, str):
        spec = parse_spec(spec)
    gens = build(spec)
    report = validate(gens)
    order = gens.params.order()
    degree = len(gens.elements)

    diameter: int | None = None
    histogram: list[int] | None = None
    unreachable = 0
    discrepancies: list[str] = []
    if run_bfs:
        try:
            result = bfs_from_identity(gens, cap=cap)
            diameter = result.diameter
            histogram = result.histogram
        except DisconnectedGraphError as exc:
            histogram = exc.histogram
            unreachable = exc.unreachable
            discrepancies.append(f"{exc.unreachable} vertices unreachable from identity")
        if diameter is not None and diameter != spec.claimed_diameter:
            discrepancies.append(
                f"BFS diameter {diameter} != claimed diameter {spec.claimed_diameter}"
            )

    ratio_diameter = diameter if diameter is not None else spec.claimed_diameter
    ratio = Fraction(order, moore_bound(degree, ratio_diameter, spec.directed))
    return GraphReport(
        spec=spec,
        order=order,
        degree=degree,
        directed=spec.directed,
        claimed_diameter=spec.claimed_diameter,
        diameter=diameter,
        histogram=histogram,
        moore_ratio=ratio,
        validation=report,
        unreachable=unreachable,
        discrepancies=discrepancies,
    )


# --- explicit exports -------------------------------------------------------

def _arcs(gens: GeneratorSet, cap: int):
    """Yield (u, v) index pairs sorted by (u, generator position)."""
    params = gens.params
    n = params.order()
    if n > cap:
        raise CapExceededError(n, cap)
    for u in range(n):
        g = params.decode(u, cap=cap)
        for s in gens.elements:
            yield u, params.encode(params.mul(g, s), cap=cap)


def write_graph(
    gens: GeneratorSet,
    fmt: str,
    out: IO[str],
    cap: int = DEFAULT_STATE_CAP,
) -> None:
    """Write an explicit encoding of the graph to a text stream.

    Vertices are labelled by their dense index.  ``edge-list`` emits one
    "u v" line per arc (per edge with u <= v when undirected); ``dot``
    emits a digraph/graph block; ``adjacency`` emits one "u: n1 n2 ..."
    line per vertex with neighbors in generator order.  Output bytes are
    deterministic given the set and format.
    """
    if fmt not in EXPORT_FORMATS:
        raise ParameterError(
            f"unknown export format {fmt!r}; choose one of {', '.join(EXPORT_FORMATS)}"
        )
    n = gens.params.order()
    if n > cap:
        raise CapExceededError(n, cap)
    if fmt == "edge-list":
        for u, v in _arcs(gens, cap):
            if gens.directed or u <= v:
                out.write(f"{u} {v}\n")
    elif fmt == "dot":
        arrow = "->" if gens.directed else "--"
        out.write("digraph {\n" if gens.directed else "graph {\n")
        for u in range(n):
            out.write(f"  {u};\n")
        for u, v in _arcs(gens, cap):
            if gens.directed or u <= v:
                out.write(f"  {u} {arrow} {v};\n")
        out.write("}\n")
    else:
        params = gens.params
        for u in range(n):
            g = params.decode(u, cap=cap)
            row = " ".join(
                str(params.encode(params.mul(g, s), cap=cap)) for s in gens.elements
            )
            out.write(f"{u}: {row}\n")


def export_graph(gens: GeneratorSet, fmt: str, cap: int = DEFAULT_STATE_CAP) -> bytes:
    """Explicit graph encoding as ASCII bytes (LF line endings)."""
    buf = io.StringIO()
    write_graph(gens, fmt, buf, cap=cap)
    return buf.getvalue().encode("ascii")
