"""Canonical forms, the zero-mutability search, and certificates.

Two data are considered the same state when an orientation-preserving lattice
isomorphism (plus the induced cyclic relabeling) carries one to the other.
The canonical key realizes this: for each edge i there is a unique SL(2,Z)
map sending u_i to (1,0) whose shear part normalizes the next
counterclockwise direction, and the key is the lexicographic minimum of the
transformed serializations over all choices of i.

The search is a layer-synchronized breadth-first search over canonical
classes.  Yes verdicts carry a certificate whose steps address (1-based
counterclockwise edge position, part value) in each successive intermediate
datum; replaying never re-canonicalizes, so the terminal is the literal fold
of mutations.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd
from typing import NamedTuple, Optional, Sequence

from .errors import IllegalMutation, InvalidDatum, NotRankTwo
from .lattice import (
    Vec,
    UnimodularMap,
    _bezout,
    ccw_key,
    primitive_split,
    shear_map,
    to_east,
)
from .logdatum import (
    LogDatum,
    Partition,
    apply_to_datum,
    datum_from_obj,
    datum_to_obj,
    partitions_of,
    validate,
)
from .mutation import legal_mutations, mutate, mutate_by_value


def _normalizing_map(S: LogDatum, i: int) -> UnimodularMap:
    """The canonical SL(2,Z) map for edge i: u_i -> (1,0), next direction
    normalized by a shear to (p, q) with 0 <= p < q.

    For rank-one data the next direction maps to (-1, 0), which every shear
    fixes, so no shear is applied (the edge list is shear-independent there).
    """
    dirs = S.directions
    base = to_east(dirs[i])
    nxt = base.apply(dirs[(i + 1) % len(dirs)])
    p, q = nxt
    if q <= 0:
        # Only possible for the antipode (-1, 0) of a rank-one datum.
        return base
    return shear_map(-(p // q)).compose(base)


def _candidates(S: LogDatum):
    """Reference construction of the transformed serializations, one per
    choice of base edge.

    An orientation-preserving map preserves the counterclockwise cyclic
    order and sends edge i's direction to (1, 0) — the angle the sort
    starts from — so the sorted order of the image is just the rotation of
    the transformed edges starting at i; no re-sort is needed.  The search
    uses _canonical_state, which computes the same minimum with inlined
    integer arithmetic; tests pin the two against each other.
    """
    edges = S.edges
    m = len(edges)
    for i in range(m):
        A = _normalizing_map(S, i)
        images = [(A.apply(edge.e), edge.nu) for edge in edges]
        yield tuple(images[(i + t) % m] for t in range(m))


# A state is a serialized datum: ((e, nu), ...) in counterclockwise order.
# The search works on states directly; LogDatum objects are rebuilt only for
# the final certificate (by replaying through the real mutation).


def _canonical_state(state: tuple) -> tuple:
    """min over base edges of the transformed rotation, as in _candidates.

    Candidate i starts with ((l_i, 0), nu_i), so only edges minimizing
    (l_i, nu_i) can realize the minimum.  Ties share that first entry, so a
    tied candidate is built in full only when its second entry does not
    already exceed the best one (gcd and arithmetic stay inlined: this is
    the search's hottest function).
    """
    m = len(state)
    if m == 0:
        return ()
    dirs = []
    keys = []
    for (x, y), nu in state:
        l = gcd(x, y)
        dirs.append((x // l, y // l))
        keys.append((l, nu))
    cutoff = keys[0]
    for k in keys:
        if k < cutoff:
            cutoff = k
    doubled = state + state
    best = None
    for i in range(m):
        if keys[i] != cutoff:
            continue
        p, q = dirs[i]
        a, b = _bezout(p, q)  # rows of to_east: [[a, b], [-q, p]]
        r0, r1, r2, r3 = a, b, -q, p
        nx, ny = dirs[i + 1 - m if i + 1 == m else i + 1]
        p2, q2 = r0 * nx + r1 * ny, r2 * nx + r3 * ny
        if q2 > 0:  # compose the shear normalizing (p2, q2) to 0 <= p2 < q2
            shift = -(p2 // q2)
            r0, r1 = r0 + shift * r2, r1 + shift * r3
        if best is not None and m > 1:
            (sx, sy), snu = doubled[i + 1]
            probe = ((r0 * sx + r1 * sy, r2 * sx + r3 * sy), snu)
            if probe > best[1]:
                continue
        cand = tuple(
            [
                ((r0 * ex + r1 * ey, r2 * ex + r3 * ey), nu)
                for (ex, ey), nu in doubled[i : i + m]
            ]
        )
        if best is None or cand < best:
            best = cand
    return best


def canonical_tuple(S: LogDatum) -> tuple:
    """Hashable canonical key: nested tuples ((e, nu), ...)."""
    return _canonical_state(S.serialize())


def canonicalize(S: LogDatum) -> str:
    """Canonical key as a string; equal strings == isomorphic data."""
    return repr(canonical_tuple(S))


def canonical_rep(S: LogDatum) -> LogDatum:
    """The distinguished concrete datum of S's isomorphism class."""
    if len(S) == 0:
        return S
    best = canonical_tuple(S)
    return LogDatum(tuple(_edge_from_pair(pair) for pair in best))


def _edge_from_pair(pair):
    from .logdatum import Edge

    return Edge(pair[0], pair[1])


class CertStep(NamedTuple):
    edge: int  # 1-based counterclockwise position in the intermediate datum
    part: int  # part *value* (stable under partition re-sorting)


@dataclass(frozen=True)
class Certificate:
    steps: tuple[CertStep, ...]
    terminal: LogDatum

    def to_obj(self) -> dict:
        return {
            "steps": [{"edge": s.edge, "part": s.part} for s in self.steps],
            "terminal": datum_to_obj(self.terminal),
        }

    @staticmethod
    def from_obj(obj: dict) -> "Certificate":
        steps = tuple(
            CertStep(int(s["edge"]), int(s["part"])) for s in obj["steps"]
        )
        return Certificate(steps, datum_from_obj(obj["terminal"]))


@dataclass(frozen=True)
class Verdict:
    """Yes (with certificate) / No / Unknown, plus search statistics."""

    kind: str  # "yes" | "no" | "unknown"
    certificate: Optional[Certificate]
    explored: int  # distinct canonical classes visited
    depth: int  # layers expanded (yes: certificate length)

    @property
    def is_yes(self) -> bool:
        return self.kind == "yes"

    @property
    def is_no(self) -> bool:
        return self.kind == "no"

    @property
    def is_unknown(self) -> bool:
        return self.kind == "unknown"

    def __str__(self) -> str:
        return {"yes": "Yes", "no": "No", "unknown": "Unknown"}[self.kind]

    @staticmethod
    def yes(cert: Certificate, explored: int) -> "Verdict":
        return Verdict("yes", cert, explored, len(cert.steps))

    @staticmethod
    def no(explored: int, depth: int) -> "Verdict":
        return Verdict("no", None, explored, depth)

    @staticmethod
    def unknown(explored: int, depth: int) -> "Verdict":
        return Verdict("unknown", None, explored, depth)


def _is_terminal_success(S: LogDatum) -> bool:
    return len(S) == 2 and S.edges[0].nu == S.edges[1].nu


def _is_success_state(state: tuple) -> bool:
    return len(state) == 2 and state[0][1] == state[1][1]


@dataclass
class _Node:
    state: tuple
    parent: Optional[int]
    step: Optional[CertStep]


def _expand_state(state: tuple) -> list[tuple[CertStep, tuple]]:
    """Children of one state in deterministic move order (edge asc, part
    index asc, one move per distinct part value).

    This mirrors mutate()/legal_mutations() on serialized tuples; the final
    certificate is replayed through the real mutation, which pins the two
    implementations against each other on every Yes (tests do so at random).
    """
    m = len(state)
    if m <= 2:
        return []  # rank-one states are mutation-terminal
    dirs = []
    for (x, y), _ in state:
        l = gcd(x, y)
        dirs.append((x // l, y // l))
    out = []
    for j in range(m):
        e_j, nu_j = state[j]
        ux, uy = dirs[j]
        h = 0
        for e, _ in state:
            c = ux * e[1] - uy * e[0]  # sform(u_j, e)
            if c > 0:
                h += c
        seen = set()
        for part in nu_j:
            if part in seen or part > h:
                continue  # duplicate value, or illegal
            seen.add(part)
            out.append(
                (CertStep(j + 1, part), _mutate_state(state, j, part, dirs, h))
            )
    return out


def _mutate_state(
    state: tuple, j: int, part: int, dirs: list[Vec], h: int
) -> tuple:
    """The mutation at 0-based edge j removing one part of the given value,
    on serialized tuples (see _expand_state).

    No comparison sort is needed: walking the cycle from edge j, the positive
    side of u_j comes first (the shear fixes u_j and keeps that open
    half-plane, so it preserves the arc's internal order), then the -u_j
    slot, then the untouched negative side.  That is the counterclockwise
    cycle, and a final rotation to the angular wrap point restores the
    east-first cut that certificate steps address.
    """
    ux, uy = dirs[j]
    minus_u = (-ux, -uy)
    m = len(state)

    out = []
    e_j, nu_j = state[j]
    if len(nu_j) > 1:
        remaining = list(nu_j)
        remaining.remove(part)  # first occurrence; stays sorted descending
        length = sum(remaining)
        out.append(((length * ux, length * uy), tuple(remaining)))

    negative = []
    opposite = None
    for t in range(1, m):
        i = j + t
        if i >= m:
            i -= m
        e, nu = state[i]
        if dirs[i] == minus_u:
            opposite = (e, nu, dirs[i])
            continue
        c = ux * e[1] - uy * e[0]  # sform(u_j, e)
        if c > 0:
            out.append(((e[0] + c * ux, e[1] + c * uy), nu))
        else:
            negative.append((e, nu))

    d = h - part
    if opposite is not None:
        (ox, oy), nu_o, (vx, vy) = opposite
        grown = (ox + d * vx, oy + d * vy)
        new_nu = tuple(sorted(nu_o + (d,), reverse=True)) if d > 0 else nu_o
        out.append((grown, new_nu))
    elif d > 0:
        out.append(((-d * ux, -d * uy), (d,)))

    out.extend(negative)

    # Rotate to start at the unique angular wrap: the one adjacent pair
    # whose second member precedes its first (quadrant, then cross sign).
    ax, ay = out[-1][0]
    qa = 0 if ax > 0 and ay >= 0 else 1 if ax <= 0 and ay > 0 else 2 if ax < 0 else 3
    cut = 0
    for idx, ((bx, by), _) in enumerate(out):
        qb = 0 if bx > 0 and by >= 0 else 1 if bx <= 0 and by > 0 else 2 if bx < 0 else 3
        if qb < qa or (qb == qa and bx * ay - by * ax > 0):
            cut = idx
            break
        qa, ax, ay = qb, bx, by
    if cut:
        return tuple(out[cut:] + out[:cut])
    return tuple(out)


def is_zero_mutable(
    S: LogDatum,
    *,
    max_depth: int = 32,
    max_states: int = 10**6,
    threads: int = 1,
) -> Verdict:
    """Breadth-first search for a mutation path to a rank-one datum with
    equal partitions.

    Yes carries a shortest certificate.  No is returned only when the
    reachable class set was exhausted within the limits.  Unknown reports a
    hit limit.  Verdicts and certificate lengths do not depend on `threads`
    (layers are expanded in parallel but merged in discovery order; among
    same-layer successes the tie-break prefers a terminal equal to the
    canonical representative of its class, then discovery order).
    """
    if not isinstance(S, LogDatum):
        raise InvalidDatum("is_zero_mutable expects a validated LogDatum")
    if _is_terminal_success(S):
        return Verdict.yes(Certificate((), S), explored=1)

    nodes = [_Node(S.serialize(), None, None)]
    visited = {_canonical_state(nodes[0].state)}
    frontier = [0]
    depth = 0
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while frontier:
            if depth >= max_depth:
                return Verdict.unknown(len(visited), depth)
            depth += 1
            parents = [nodes[i].state for i in frontier]
            if pool is not None:
                expansions = list(pool.map(_expand_state, parents))
            else:
                expansions = [_expand_state(p) for p in parents]

            # Selection among same-layer successes: the first one whose
            # terminal is its own canonical representative, else the first
            # one at all, scanning parents in discovery order and moves in
            # expansion order.  Once any success is in hand the remaining
            # children no longer need dedup (the search returns either way),
            # and a canonical hit ends the layer outright.
            first_success = None
            canonical_success = None
            next_frontier: list[int] = []
            for parent_idx, results in zip(frontier, expansions):
                for step, child in results:
                    if _is_success_state(child):
                        if first_success is None:
                            first_success = (parent_idx, step, child)
                        if child == _canonical_state(child):
                            canonical_success = (parent_idx, step, child)
                            break
                    elif first_success is None:
                        key = _canonical_state(child)
                        if key in visited:
                            continue
                        if len(visited) >= max_states:
                            return Verdict.unknown(len(visited), depth)
                        visited.add(key)
                        nodes.append(_Node(child, parent_idx, step))
                        if len(child) > 2:
                            next_frontier.append(len(nodes) - 1)
                if canonical_success is not None:
                    break

            if first_success is not None:
                parent_idx, last_step, final_state = (
                    canonical_success or first_success
                )
                steps = [last_step]
                walk: Optional[int] = parent_idx
                while walk is not None and nodes[walk].step is not None:
                    steps.append(nodes[walk].step)
                    walk = nodes[walk].parent
                steps.reverse()
                # Rebuild the terminal through the real mutation; this also
                # re-validates every intermediate of the found path.
                terminal = S
                for cert_step in steps:
                    terminal = mutate_by_value(
                        terminal, cert_step.edge, cert_step.part
                    )
                assert (
                    terminal.serialize() == final_state
                ), "state-level search diverged from the mutation calculus"
                cert = Certificate(tuple(steps), terminal)
                return Verdict.yes(cert, explored=len(visited))
            frontier = next_frontier
        return Verdict.no(len(visited), depth)
    finally:
        if pool is not None:
            pool.shutdown(wait=False)


def replay(S: LogDatum, cert: Certificate) -> LogDatum:
    """Fold the certificate's mutations over S; equals cert.terminal when valid.

    Raises IllegalMutation naming the failing step index.
    """
    current = S
    for idx, step in enumerate(cert.steps, start=1):
        try:
            current = mutate_by_value(current, step.edge, step.part)
        except (IllegalMutation, NotRankTwo) as exc:
            raise IllegalMutation(f"certificate step {idx}: {exc}") from exc
    return current


def verify_certificate(S: LogDatum, cert: Certificate) -> bool:
    """True iff the certificate replays from S to its own terminal, which is
    rank one with equal partitions."""
    try:
        result = replay(S, cert)
    except IllegalMutation:
        return False
    return result == cert.terminal and _is_terminal_success(result)


def enumerate_zero_mutable(
    edge_vectors: Sequence[Vec],
    *,
    max_depth: int = 32,
    max_states: int = 10**6,
    threads: int = 1,
) -> list[tuple[tuple[Partition, ...], Verdict]]:
    """Decide every partition assignment over a fixed closed edge list.

    Edge vectors must be closed with pairwise distinct directions (checked by
    validation with the trivial one-part partitions).  Assignments iterate in
    descending lexicographic partition order per edge, edges taken in
    counterclockwise order; returns (assignment, verdict) pairs.
    """
    import itertools

    trial = validate([(e, (primitive_split(e)[0],)) for e in edge_vectors])
    vectors = [edge.e for edge in trial.edges]
    lengths = [edge.length for edge in trial.edges]
    results = []
    for assignment in itertools.product(*(partitions_of(l) for l in lengths)):
        S = validate(list(zip(vectors, assignment)))
        verdict = is_zero_mutable(
            S, max_depth=max_depth, max_states=max_states, threads=threads
        )
        results.append((assignment, verdict))
    return results
