"""Exact arithmetic on the oriented rank-2 lattice.

Vectors are plain integer pairs ``(x, y)``.  Python integers are
arbitrary-precision, so all arithmetic here is exact by construction; there is
no overflow path.  The orientation is fixed by ``sform((1,0),(0,1)) == 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable

from .errors import ZeroVector

Vec = tuple[int, int]


def sform(a: Vec, b: Vec) -> int:
    """Symplectic (determinant) pairing {a, b} = a.x*b.y - a.y*b.x."""
    return a[0] * b[1] - a[1] * b[0]


def pos_part(n: int) -> int:
    """a_+ : n for n >= 0, else 0."""
    return n if n >= 0 else 0


def vadd(a: Vec, b: Vec) -> Vec:
    return (a[0] + b[0], a[1] + b[1])


def vscale(c: int, a: Vec) -> Vec:
    return (c * a[0], c * a[1])


def primitive_split(e: Vec) -> tuple[int, Vec]:
    """Write e = length * direction with direction primitive and length = gcd.

    Raises ZeroVector on (0,0): the zero vector has no direction.
    """
    if e == (0, 0):
        raise ZeroVector("the zero vector has no primitive direction")
    g = gcd(abs(e[0]), abs(e[1]))
    return g, (e[0] // g, e[1] // g)


def shear_positive(u: Vec, x: Vec) -> Vec:
    """x + {u, x}_+ * u : the positive-part shear across the line R*u.

    The identity on the half-plane {u, x} <= 0, a unimodular shear on the
    other; total in x, as the mutation definition requires.
    """
    return vadd(x, vscale(pos_part(sform(u, x)), u))


@dataclass(frozen=True)
class UnimodularMap:
    """An element [[a, b], [c, d]] of SL(2, Z), acting on vectors by rows:

    (x, y) -> (a*x + b*y, c*x + d*y).

    Orientation-preserving by the determinant invariant, so it commutes with
    sform: sform(Av, Aw) == sform(v, w).
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        det = self.a * self.d - self.b * self.c
        if det != 1:
            raise ValueError(f"determinant must be +1, got {det}")

    def apply(self, v: Vec) -> Vec:
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    def compose(self, other: "UnimodularMap") -> "UnimodularMap":
        """self after other: (self.compose(other)).apply(v) == self.apply(other.apply(v))."""
        return UnimodularMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "UnimodularMap":
        return UnimodularMap(self.d, -self.b, -self.c, self.a)


IDENTITY = UnimodularMap(1, 0, 0, 1)


def shear_map(m: int) -> UnimodularMap:
    """[[1, m], [0, 1]]: fixes the x-axis pointwise."""
    return UnimodularMap(1, m, 0, 1)


def to_east(u: Vec) -> UnimodularMap:
    """Some SL(2,Z) map sending the primitive vector u to (1, 0).

    Any two such maps differ by a left shear; callers needing a canonical
    choice compose with the shear normalizing a second direction.
    """
    p, q = u
    if gcd(abs(p), abs(q)) != 1:
        raise ValueError(f"{u} is not primitive")
    # Extended gcd: a*p + b*q == 1, so [[a, b], [-q, p]] has determinant 1
    # and sends (p, q) to (1, 0).
    a, b = _bezout(p, q)
    return UnimodularMap(a, b, -q, p)


def _bezout(p: int, q: int) -> tuple[int, int]:
    """Integers (a, b) with a*p + b*q == gcd-normalized 1 for coprime p, q."""
    old_r, r = p, q
    old_a, a = 1, 0
    old_b, b = 0, 1
    while r != 0:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_a, a = a, old_a - quo * a
        old_b, b = b, old_b - quo * b
    if old_r == -1:  # gcd computed with sign; flip to +1
        old_a, old_b = -old_a, -old_b
    return old_a, old_b


def _quadrant(u: Vec) -> int:
    """Quarter-turn class of the angle of u, measured counterclockwise from (1,0).

    0: [0, pi/2)   x > 0, y >= 0
    1: [pi/2, pi)  x <= 0, y > 0
    2: [pi, 3pi/2) x < 0, y <= 0
    3: [3pi/2, 2pi) x >= 0, y < 0
    """
    x, y = u
    if x > 0 and y >= 0:
        return 0
    if x <= 0 and y > 0:
        return 1
    if x < 0 and y <= 0:
        return 2
    if x >= 0 and y < 0:
        return 3
    raise ZeroVector("the zero vector has no angle")


def ccw_precedes(u: Vec, v: Vec) -> bool:
    """True if the angle of u in [0, 2pi) is strictly smaller than that of v.

    Exact: quadrant comparison, then the cross product inside one quadrant
    (which spans less than a half turn, so the sign is decisive).
    """
    qu, qv = _quadrant(u), _quadrant(v)
    if qu != qv:
        return qu < qv
    return sform(u, v) > 0


_VERTICAL = float("-inf")  # quadrants 1 and 3 start at a vertical direction


def ccw_key(v: Vec) -> tuple:
    """Sort key realizing the same order as ccw_precedes, exactly.

    Within one quadrant the angle increases strictly with the slope y/x
    (compared as an exact Fraction); the vertical directions opening
    quadrants 1 and 3 come first there.  Positive multiples of a vector get
    equal keys.
    """
    x, y = v
    q = _quadrant(v)
    if x == 0:
        return (q, _VERTICAL)
    return (q, Fraction(y, x))


def sort_ccw(items: Iterable, direction_of) -> list:
    """Sort items by the counterclockwise angle of direction_of(item) from (1,0).

    Directions must be pairwise non-parallel or equal; equal directions sort
    stably together (the caller detects duplicates separately).
    """
    return sorted(items, key=lambda item: ccw_key(direction_of(item)))
