"""Log data: edge lists with partitions, validation, and derived geometry.

A log datum is a finite list of edges (e_i, nu_i) where e_i is a nonzero
lattice vector, nu_i is a weakly decreasing partition of the integral length
of e_i, the primitive directions are pairwise distinct, and the edges sum to
zero.  Edges are stored in counterclockwise angular order starting from the
direction of smallest angle to (1, 0), which makes serialization
deterministic.  The empty datum is valid (vacuous closure) but has no rank.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from math import gcd
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    ClosureViolation,
    DuplicateDirection,
    InvalidDatum,
    NotRankTwo,
    PartitionSumMismatch,
    TooFewEdges,
)
from .lattice import (
    Vec,
    UnimodularMap,
    pos_part,
    primitive_split,
    sform,
    sort_ccw,
    vadd,
)

Partition = tuple[int, ...]


class Edge(NamedTuple):
    e: Vec
    nu: Partition

    @property
    def length(self) -> int:
        return primitive_split(self.e)[0]

    @property
    def direction(self) -> Vec:
        return primitive_split(self.e)[1]


@dataclass(frozen=True)
class LogDatum:
    """A validated log datum; construct via validate()."""

    edges: tuple[Edge, ...]

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    # cached_property stores into the instance __dict__, which a frozen
    # dataclass permits; equality and hashing still use only `edges`.
    @cached_property
    def directions(self) -> tuple[Vec, ...]:
        return tuple(edge.direction for edge in self.edges)

    @cached_property
    def lengths(self) -> tuple[int, ...]:
        return tuple(edge.length for edge in self.edges)

    @cached_property
    def total_length(self) -> int:
        return sum(self.lengths)

    def serialize(self) -> tuple:
        """Nested-tuple encoding; deterministic by the stored CCW order."""
        return tuple((edge.e, edge.nu) for edge in self.edges)


class Rank(Enum):
    RANK_ONE = "rank one"
    RANK_TWO = "rank two"


def normalize_partition(parts: Iterable[int]) -> Partition:
    """Sort weakly decreasing and drop zero parts; reject negatives."""
    cleaned = []
    for p in parts:
        if not isinstance(p, int) or isinstance(p, bool):
            raise InvalidDatum(f"partition part {p!r} is not an integer")
        if p < 0:
            raise InvalidDatum(f"partition part {p} is negative")
        if p > 0:
            cleaned.append(p)
    return tuple(sorted(cleaned, reverse=True))


def validate(raw_edges: Sequence[tuple[Vec, Iterable[int]]]) -> LogDatum:
    """Check the log-datum invariants and return the CCW-sorted datum.

    Raises ZeroVector, PartitionSumMismatch, DuplicateDirection, or
    ClosureViolation (all subclasses of InvalidDatum) on the first violated
    invariant, in that order.
    """
    edges = []
    for e_raw, nu_raw in raw_edges:
        e = (int(e_raw[0]), int(e_raw[1]))
        nu = normalize_partition(nu_raw)
        length, _ = primitive_split(e)  # raises ZeroVector on (0,0)
        if sum(nu) != length:
            raise PartitionSumMismatch(
                f"partition {nu} sums to {sum(nu)}, edge {e} has length {length}"
            )
        edges.append(Edge(e, nu))

    seen: dict[Vec, Vec] = {}
    for edge in edges:
        u = edge.direction
        if u in seen:
            raise DuplicateDirection(f"direction {u} appears more than once")
        seen[u] = edge.e

    total = (sum(edge.e[0] for edge in edges), sum(edge.e[1] for edge in edges))
    if total != (0, 0):
        raise ClosureViolation(f"edges sum to {total}, not (0, 0)")

    # The comparator only needs quadrants and cross-product signs, which are
    # the same for e and its primitive direction, so sort on raw vectors.
    ordered = sort_ccw(edges, lambda edge: edge.e)
    return LogDatum(tuple(ordered))


def rank(S: LogDatum) -> Rank:
    if len(S) < 2:
        raise TooFewEdges(f"rank needs at least two edges, got {len(S)}")
    return Rank.RANK_ONE if len(S) == 2 else Rank.RANK_TWO


def is_zero_mutable_rank_one(S: LogDatum) -> bool:
    """For a rank-one datum: do the two partitions agree (as multisets)?"""
    from .errors import NotRankOne

    if len(S) != 2:
        raise NotRankOne(f"expected exactly two edges, got {len(S)}")
    return S.edges[0].nu == S.edges[1].nu


def is_irreducible(S: LogDatum) -> bool:
    """gcd of the lengths is 1 and no proper nonempty edge subset sums to zero.

    Subsets are enumerated exhaustively; |I| is small for every datum the
    calculus produces.
    """
    lengths = S.lengths
    if not lengths:
        return False
    g = 0
    for length in lengths:
        g = gcd(g, length)
    if g != 1:
        return False
    n = len(S)
    vectors = [edge.e for edge in S.edges]
    for mask in range(1, (1 << n) - 1):
        sx = sy = 0
        for i in range(n):
            if mask >> i & 1:
                sx += vectors[i][0]
                sy += vectors[i][1]
        if sx == 0 and sy == 0:
            return False
    return True


def u_height(S: LogDatum, u: Vec) -> int:
    """h_u(S) = sum of {u, e_i}_+ over all edges."""
    return sum(pos_part(sform(u, edge.e)) for edge in S.edges)


def polygon(S: LogDatum) -> list[Vec]:
    """Vertices of the polygon with edge vectors e_i, based at (0,0).

    Counterclockwise; rank-one data give a degenerate 2-gon (a segment); the
    closing vertex is not repeated.
    """
    vertices = [(0, 0)]
    for edge in S.edges[:-1]:
        vertices.append(vadd(vertices[-1], edge.e))
    return vertices


def dual_polygon(S: LogDatum) -> list[Vec]:
    """The polygon whose edges are the 90-degree clockwise rotations of the e_i.

    Each rotated edge (e.y, -e.x) then has inner normal u_i and integral
    length l_i; closure carries over from S.
    """
    vertices = [(0, 0)]
    for edge in S.edges[:-1]:
        ex, ey = edge.e
        vertices.append(vadd(vertices[-1], (ey, -ex)))
    return vertices


_AN_RE = re.compile(r"^An\((\d+)\)$")


def an_datum(n: int) -> LogDatum:
    """The A_n datum: {((1,0),(1)), ((0,n+1),(1,...,1)), ((-1,-n-1),(1))}."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return validate(
        [
            ((1, 0), (1,)),
            ((0, n + 1), (1,) * (n + 1)),
            ((-1, -n - 1), (1,)),
        ]
    )


def tom_datum() -> LogDatum:
    return validate([((3, 0), (2, 1)), ((0, 2), (1, 1)), ((-3, -2), (1,))])


def jerry_datum() -> LogDatum:
    return validate([((3, 0), (1, 1, 1)), ((0, 2), (2,)), ((-3, -2), (1,))])


def named(name: str) -> LogDatum:
    """Resolve a built-in datum name: 'Tom', 'Jerry', or 'An(n)'."""
    if name == "Tom":
        return tom_datum()
    if name == "Jerry":
        return jerry_datum()
    m = _AN_RE.match(name)
    if m:
        return an_datum(int(m.group(1)))
    raise KeyError(f"unknown datum name {name!r}; expected Tom, Jerry, or An(n)")


Vec3 = tuple[int, int, int]


@dataclass(frozen=True)
class FanPresentation:
    """Generators of the fan in M = L + Z: one maximal cone per consecutive
    direction pair, the walls they share, and the unique joint ray."""

    maximal_cones: tuple[tuple[Vec3, Vec3, Vec3], ...]
    walls: tuple[tuple[Vec3, Vec3], ...]
    joint: Vec3


class ComponentType(NamedTuple):
    index: int  # sform(u_i, u_{i+1}) >= 1
    label: str  # "smooth" or "1/r(1,q,0)"


@dataclass(frozen=True)
class ComponentReport:
    components: tuple[ComponentType, ...]

    @property
    def indices(self) -> list[int]:
        return [c.index for c in self.components]

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.components]


def _require_rank_two(S: LogDatum) -> None:
    if len(S) <= 2:
        raise NotRankTwo(f"need more than two edges, got {len(S)}")


def fan_presentation(S: LogDatum) -> FanPresentation:
    """Maximal cones <u_i, u_{i+1}, u>, walls <u_i, u>, joint <u> with u = (0,0,1)."""
    _require_rank_two(S)
    dirs = S.directions
    joint: Vec3 = (0, 0, 1)
    lifted = [(u[0], u[1], 0) for u in dirs]
    cones = tuple(
        (lifted[i], lifted[(i + 1) % len(dirs)], joint) for i in range(len(dirs))
    )
    walls = tuple((w, joint) for w in lifted)
    return FanPresentation(cones, walls, joint)


def cone_normal_form(v: Vec, w: Vec) -> tuple[int, int]:
    """Bring the cone <v, w> (primitive rays, sform(v,w) = r >= 1) to
    <(1,0), (p, r)> with 0 <= p < r via SL(2,Z); returns (r, p).

    r = 1 means the cone is unimodular (smooth chart).
    """
    r = sform(v, w)
    if r < 1:
        raise ValueError(f"cone rays must be positively oriented, got sform {r}")
    from .lattice import to_east

    p, r_image = to_east(v).apply(w)
    assert r_image == r, "sform is SL(2,Z)-invariant"
    return r, p % r


def _quotient_label(r: int, p: int) -> str:
    """Label the 2-d cone <(1,0),(p,r)> as a cyclic quotient 1/r(1,q,0).

    q = min(p, p^{-1} mod r) normalizes the coordinate swap identifying
    1/r(1,q) with 1/r(1,q^{-1}); the trailing 0 is the smooth transverse
    factor of the 3-d cone.
    """
    if r == 1:
        return "smooth"
    q = min(p % r, pow(p % r, -1, r))
    return f"1/{r}(1,{q},0)"


def component_types(S: LogDatum) -> ComponentReport:
    """Index and singularity label of each maximal cone of the fan.

    The index of cone i is sform(u_i, u_{i+1}) (positive: counterclockwise
    consecutive directions of a rank-two datum are less than a half turn
    apart); the label comes from the 2-d cone normal form, with index 1
    exactly for 'smooth'.
    """
    _require_rank_two(S)
    dirs = S.directions
    out = []
    for i in range(len(dirs)):
        r, p = cone_normal_form(dirs[i], dirs[(i + 1) % len(dirs)])
        out.append(ComponentType(r, _quotient_label(r, p)))
    return ComponentReport(tuple(out))


def apply_to_datum(A: UnimodularMap, S: LogDatum) -> LogDatum:
    """Transform every edge by A and re-sort; partitions ride along."""
    return validate([(A.apply(edge.e), edge.nu) for edge in S.edges])


# --- JSON serialization -----------------------------------------------------

def datum_to_obj(S: LogDatum) -> dict:
    return {"edges": [{"e": list(edge.e), "nu": list(edge.nu)} for edge in S.edges]}


def datum_from_obj(obj: dict) -> LogDatum:
    """Parse {"edges":[{"e":[x,y],"nu":[...]}], "name"?: str} into a datum.

    A "name" key alone resolves a built-in datum; explicit edges win.
    """
    if not isinstance(obj, dict):
        raise InvalidDatum("datum document must be a JSON object")
    if "edges" not in obj:
        if "name" in obj:
            return named(obj["name"])
        raise InvalidDatum('datum document needs an "edges" array')
    raw = []
    for item in obj["edges"]:
        if not isinstance(item, dict) or "e" not in item or "nu" not in item:
            raise InvalidDatum('each edge needs "e": [x, y] and "nu": [parts...]')
        e = item["e"]
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise InvalidDatum(f'edge vector {e!r} is not a pair')
        raw.append(((int(e[0]), int(e[1])), tuple(int(p) for p in item["nu"])))
    return validate(raw)


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n, weakly decreasing, in descending lexicographic order.

    partitions_of(3) == [(3,), (2, 1), (1, 1, 1)]; partitions_of(0) == [()].
    """
    result: list[Partition] = []

    def rec(remaining: int, cap: int, prefix: list[int]) -> None:
        if remaining == 0:
            result.append(tuple(prefix))
            return
        for part in range(min(cap, remaining), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    return result
