"""The mutation operator on rank-two log data.

A mutation is addressed by (j, k): the 1-based counterclockwise position j of
an edge and the 1-based index k of a part of its partition (partitions are
stored weakly decreasing).  Writing u_j for the primitive direction of edge j,
l = nu_j[k] for the chosen part, and h = u_height(S, u_j), the mutation is
legal when h >= l and then:

(1)  every edge not on the line R*u_j is sheared: e -> e + {u_j, e}_+ * u_j;
(2a) if nu_j has other parts, edge j shrinks to (l_j - l) * u_j and loses one
     part equal to l;
(2b) otherwise edge j is removed;
(3a) if an edge with direction -u_j exists, it grows by (h - l) * (-u_j) and
     its partition gains a part h - l (nothing is inserted when h == l);
(3b) otherwise, if d = h - l > 0, a new edge (-d * u_j, (d)) appears.

The result is re-validated and re-sorted counterclockwise.
"""
from __future__ import annotations

from typing import NamedTuple, Optional

from .errors import IllegalMutation, NotRankTwo
from .lattice import sform, vadd, vscale
from .logdatum import LogDatum, u_height, validate


class MutationIndex(NamedTuple):
    j: int  # 1-based edge position in counterclockwise order
    k: int  # 1-based part index into the (weakly decreasing) partition


def _check_rank_two(S: LogDatum) -> None:
    if len(S) <= 2:
        raise NotRankTwo(f"mutation is defined for rank-two data; got {len(S)} edges")


def legal_mutations(S: LogDatum) -> list[MutationIndex]:
    """All legal (j, k), one k per distinct part value of each edge.

    Mutating equal parts gives equal results, so only the first index of each
    value is listed.
    """
    _check_rank_two(S)
    moves = []
    dirs = S.directions
    for j, edge in enumerate(S.edges, start=1):
        h = u_height(S, dirs[j - 1])
        seen = set()
        for k, part in enumerate(edge.nu, start=1):
            if part in seen:
                continue
            seen.add(part)
            if h >= part:
                moves.append(MutationIndex(j, k))
    return moves


def _mutate_core(
    S: LogDatum, j: int, k: int, trace: Optional[list[str]]
) -> LogDatum:
    _check_rank_two(S)
    if not 1 <= j <= len(S):
        raise IllegalMutation(f"edge index {j} out of range 1..{len(S)}")
    edge_j = S.edges[j - 1]
    if not 1 <= k <= len(edge_j.nu):
        raise IllegalMutation(
            f"part index {k} out of range 1..{len(edge_j.nu)} for edge {j}"
        )
    dirs = S.directions
    u = dirs[j - 1]
    part = edge_j.nu[k - 1]
    h = u_height(S, u)
    if h < part:
        raise IllegalMutation(
            f"mutation at edge {j}, part {part} is illegal: height h = {h} < {part}"
        )

    minus_u = (-u[0], -u[1])
    new_edges = []
    opposite_index = None
    for i, edge in enumerate(S.edges):
        if i == j - 1:
            continue
        if dirs[i] == minus_u:
            opposite_index = i
            continue  # handled in branch (3a); the shear fixes R*u_j anyway
        pairing = sform(u, edge.e)
        if pairing > 0:
            sheared = vadd(edge.e, vscale(pairing, u))
            if trace is not None:
                trace.append(f"(1) edge {i + 1} sheared: {edge.e} -> {sheared}")
            new_edges.append((sheared, edge.nu))
        else:
            new_edges.append((edge.e, edge.nu))

    if len(edge_j.nu) > 1:
        remaining = list(edge_j.nu)
        remaining.pop(k - 1)
        shrunk = vscale(edge_j.length - part, u)
        if trace is not None:
            trace.append(
                f"(2a) edge {j} shrinks to {shrunk}, partition loses one part {part}"
            )
        new_edges.append((shrunk, tuple(remaining)))
    elif trace is not None:
        trace.append(f"(2b) edge {j} removed")

    d = h - part
    if opposite_index is not None:
        opp = S.edges[opposite_index]
        grown = vadd(opp.e, vscale(d, dirs[opposite_index]))
        new_nu = opp.nu + (d,) if d > 0 else opp.nu
        if trace is not None:
            trace.append(
                f"(3a) opposite edge {opposite_index + 1} grows: {opp.e} -> {grown},"
                f" partition gains {d if d > 0 else 'nothing'}"
            )
        new_edges.append((grown, new_nu))
    elif d > 0:
        fresh = vscale(-d, u)
        if trace is not None:
            trace.append(f"(3b) new edge {fresh} with partition ({d},)")
        new_edges.append((fresh, (d,)))

    return validate(new_edges)


def mutate_with_trace(S: LogDatum, j: int, k: int) -> tuple[LogDatum, list[str]]:
    """Apply the mutation at edge j, part index k; also report branches taken."""
    trace: list[str] = []
    return _mutate_core(S, j, k, trace), trace


def mutate(S: LogDatum, j: int, k: int) -> LogDatum:
    """The mutation at edge j (1-based CCW position), part index k (1-based)."""
    return _mutate_core(S, j, k, None)


def mutate_by_value(S: LogDatum, j: int, value: int) -> LogDatum:
    """Mutate at the first part of edge j equal to the given value.

    Certificates address parts by value, which survives partition re-sorting.
    """
    _check_rank_two(S)
    if not 1 <= j <= len(S):
        raise IllegalMutation(f"edge index {j} out of range 1..{len(S)}")
    nu = S.edges[j - 1].nu
    try:
        k = nu.index(value) + 1
    except ValueError:
        raise IllegalMutation(
            f"edge {j} has no part of value {value}; partition is {nu}"
        ) from None
    return mutate(S, j, k)
