"""Wall functions: factored bivariate polynomials over Q, one list per wall.

Each wall surface carries coordinates (x, u) — the wall direction u_i is
primitive, so together with the joint direction u it spans the wall monoid
freely.  A wall function for edge i is a product of factors f_{i,k}, one per
part of nu_i; the checks here are exact:

* joint_compatible: the product of each wall's factors restricts to u^{l_i}
  at x = 0 (the sufficient form of the compatibility condition along the
  joint; see README for the scope of this reading).
* is_subordinate: each factor restricts to u^{l_{i,k}} and cuts out a smooth
  curve (no common zero of f, df/dx, df/du over the algebraic closure,
  decided by Groebner-basis triviality over Q).
* is_generic: within each wall, factors are pairwise non-proportional and
  each pairwise resultant in u is a nonzero constant times a power of x, so
  the curves meet only on the joint — combined with the restriction
  condition, only at the origin.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy

from .errors import ShapeMismatch, SubordinationRequired, WallSynthesisError
from .logdatum import LogDatum

_X, _U = sympy.symbols("x u")


@dataclass(frozen=True)
class BiPoly:
    """Sparse exact polynomial in Q[x, u]: {(x_degree, u_degree): coefficient}."""

    terms: tuple[tuple[tuple[int, int], Fraction], ...]

    @staticmethod
    def from_terms(terms: Mapping[tuple[int, int], Fraction | int]) -> "BiPoly":
        cleaned = {}
        for (dx, du), c in terms.items():
            c = Fraction(c)
            if c != 0:
                if dx < 0 or du < 0:
                    raise ValueError(f"negative exponent in term {(dx, du)}")
                cleaned[(dx, du)] = cleaned.get((dx, du), Fraction(0)) + c
        cleaned = {k: v for k, v in cleaned.items() if v != 0}
        return BiPoly(tuple(sorted(cleaned.items())))

    @staticmethod
    def zero() -> "BiPoly":
        return BiPoly(())

    @staticmethod
    def monomial(c: Fraction | int, dx: int = 0, du: int = 0) -> "BiPoly":
        return BiPoly.from_terms({(dx, du): Fraction(c)})

    @staticmethod
    def one() -> "BiPoly":
        return BiPoly.monomial(1)

    @staticmethod
    def u_power(n: int) -> "BiPoly":
        return BiPoly.monomial(1, 0, n)

    def as_dict(self) -> dict[tuple[int, int], Fraction]:
        return dict(self.terms)

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = self.as_dict()
        for key, c in other.terms:
            out[key] = out.get(key, Fraction(0)) + c
        return BiPoly.from_terms(out)

    def __neg__(self) -> "BiPoly":
        return BiPoly(tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        out: dict[tuple[int, int], Fraction] = {}
        for (ax, au), ac in self.terms:
            for (bx, bu), bc in other.terms:
                key = (ax + bx, au + bu)
                out[key] = out.get(key, Fraction(0)) + ac * bc
        return BiPoly.from_terms(out)

    def scale(self, c: Fraction | int) -> "BiPoly":
        c = Fraction(c)
        return BiPoly.from_terms({k: v * c for k, v in self.terms})

    def is_zero(self) -> bool:
        return not self.terms

    def deg_u(self) -> int:
        return max((du for (_, du), _ in self.terms), default=-1)

    def deg_x(self) -> int:
        return max((dx for (dx, _), _ in self.terms), default=-1)

    def diff_x(self) -> "BiPoly":
        return BiPoly.from_terms(
            {(dx - 1, du): c * dx for (dx, du), c in self.terms if dx > 0}
        )

    def diff_u(self) -> "BiPoly":
        return BiPoly.from_terms(
            {(dx, du - 1): c * du for (dx, du), c in self.terms if du > 0}
        )

    def evaluate(self, x_val: Fraction | int, u_val: Fraction | int) -> Fraction:
        x_val, u_val = Fraction(x_val), Fraction(u_val)
        total = Fraction(0)
        for (dx, du), c in self.terms:
            total += c * x_val**dx * u_val**du
        return total

    def restrict_to_u(self) -> "BiPoly":
        """Substitute x = 0: keep only the x-degree-0 terms."""
        return BiPoly(tuple((k, c) for k, c in self.terms if k[0] == 0))

    def is_u_power(self, n: int) -> bool:
        return self.terms == (((0, n), Fraction(1)),)

    def to_sympy(self):
        if not self.terms:
            return sympy.Integer(0)
        return sympy.Add(
            *[
                sympy.Rational(c.numerator, c.denominator) * _X**dx * _U**du
                for (dx, du), c in self.terms
            ]
        )

    def __str__(self) -> str:
        return format_bipoly(self)


def restrict_to_u(f: BiPoly) -> BiPoly:
    return f.restrict_to_u()


def product(factors: Iterable[BiPoly]) -> BiPoly:
    out = BiPoly.one()
    for f in factors:
        out = out * f
    return out


# --- text and JSON formats ---------------------------------------------------

_FACTOR_RE = re.compile(r"^(?:(-?\d+(?:/\d+)?)|([xzu])(?:\^(\d+))?)$")


def parse_bipoly(text: str) -> BiPoly:
    """Parse 'c*x^a*u^b + ...' with rational c; 'z' is accepted for 'x'."""
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("empty polynomial text")
    terms: dict[tuple[int, int], Fraction] = {}
    for token in re.findall(r"[+-]?[^+-]+", compact):
        sign = Fraction(1)
        body = token
        if body[0] in "+-":
            if body[0] == "-":
                sign = Fraction(-1)
            body = body[1:]
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        coef, dx, du = sign, 0, 0
        for factor in body.split("*"):
            m = _FACTOR_RE.match(factor)
            if not m:
                raise ValueError(f"cannot parse term factor {factor!r} in {text!r}")
            num, var, exp = m.groups()
            if num is not None:
                coef *= Fraction(num)
            else:
                e = int(exp) if exp else 1
                if var == "u":
                    du += e
                else:  # x or its synonym z
                    dx += e
        key = (dx, du)
        terms[key] = terms.get(key, Fraction(0)) + coef
    return BiPoly.from_terms(terms)


def format_bipoly(f: BiPoly) -> str:
    if f.is_zero():
        return "0"
    pieces = []
    for (dx, du), c in sorted(f.terms, key=lambda t: (-t[0][1], -t[0][0])):
        factors = []
        if abs(c) != 1 or (dx == 0 and du == 0):
            factors.append(str(abs(c)))
        if du:
            factors.append("u" if du == 1 else f"u^{du}")
        if dx:
            factors.append("x" if dx == 1 else f"x^{dx}")
        body = "*".join(factors)
        pieces.append((" - " if c < 0 else " + ") + body)
    first = pieces[0]
    head = first[3:] if first.startswith(" + ") else "-" + first[3:]
    return head + "".join(pieces[1:])


def bipoly_to_obj(f: BiPoly) -> list:
    """JSON mirror: list of [x_degree, u_degree, "p/q"] triples."""
    return [[dx, du, str(c)] for (dx, du), c in f.terms]


def bipoly_from_obj(obj) -> BiPoly:
    if isinstance(obj, str):
        return parse_bipoly(obj)
    return BiPoly.from_terms({(int(a), int(b)): Fraction(c) for a, b, c in obj})


@dataclass(frozen=True)
class WallAssignment:
    """One list of factors per edge, in the datum's counterclockwise order."""

    factors: tuple[tuple[BiPoly, ...], ...]

    def to_obj(self) -> dict:
        return {"walls": [[bipoly_to_obj(f) for f in wall] for wall in self.factors]}

    @staticmethod
    def from_obj(obj: dict) -> "WallAssignment":
        walls = obj["walls"] if isinstance(obj, dict) else obj
        return WallAssignment(
            tuple(tuple(bipoly_from_obj(f) for f in wall) for wall in walls)
        )


def _check_shape(S: LogDatum, W: WallAssignment) -> None:
    if len(W.factors) != len(S):
        raise ShapeMismatch(
            f"assignment has {len(W.factors)} walls, datum has {len(S)} edges"
        )


def joint_compatible(S: LogDatum, W: WallAssignment) -> bool:
    """Each wall's full function restricts to u^{l_i} on the joint (x = 0)."""
    _check_shape(S, W)
    for edge, wall in zip(S.edges, W.factors):
        if not product(wall).restrict_to_u().is_u_power(edge.length):
            return False
    return True


@dataclass(frozen=True)
class CheckReport:
    """Boolean verdict plus human-readable per-check diagnostics."""

    ok: bool
    problems: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def is_smooth_curve(f: BiPoly) -> bool:
    """No common zero of f, df/dx, df/du over the algebraic closure.

    Equivalent (Nullstellensatz) to the ideal they generate being all of
    Q[x, u], i.e. the reduced Groebner basis being [1]; Groebner bases over Q
    do not change under field extension, so this is exact.
    """
    expr = f.to_sympy()
    gb = sympy.groebner(
        [expr, expr.diff(_X), expr.diff(_U)], _X, _U, order="grevlex"
    )
    return list(gb.exprs) == [sympy.Integer(1)]


def is_subordinate(S: LogDatum, W: WallAssignment) -> CheckReport:
    """One factor per part, each restricting to u^{l_{i,k}} with a smooth
    zero curve.  Factor-count mismatches are reported as failures (not
    exceptions); ShapeMismatch is raised only for a wall-count mismatch."""
    _check_shape(S, W)
    problems = []
    for i, (edge, wall) in enumerate(zip(S.edges, W.factors), start=1):
        if len(wall) != len(edge.nu):
            problems.append(
                f"wall {i}: {len(wall)} factors for partition {edge.nu} "
                f"({len(edge.nu)} parts expected)"
            )
            continue
        for k, (factor, part) in enumerate(zip(wall, edge.nu), start=1):
            if not factor.restrict_to_u().is_u_power(part):
                problems.append(
                    f"wall {i} factor {k}: restriction {factor.restrict_to_u()} "
                    f"!= u^{part}"
                )
            elif not is_smooth_curve(factor):
                problems.append(f"wall {i} factor {k}: zero curve is singular")
    return CheckReport(not problems, tuple(problems))


def _proportional(f: BiPoly, g: BiPoly) -> bool:
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    fd, gd = f.as_dict(), g.as_dict()
    if set(fd) != set(gd):
        return False
    ratios = {gd[k] / fd[k] for k in fd}
    return len(ratios) == 1


def is_generic(S: LogDatum, W: WallAssignment) -> CheckReport:
    """Within each wall: factors pairwise non-proportional, and every pairwise
    resultant Res_u is a nonzero constant times a power of x.

    Requires a subordinate assignment (raises SubordinationRequired
    otherwise); curves on different walls live on different surfaces and are
    not compared.
    """
    sub = is_subordinate(S, W)
    if not sub:
        raise SubordinationRequired(
            "genericity needs a subordinate assignment; problems: "
            + "; ".join(sub.problems)
        )
    problems = []
    for i, wall in enumerate(W.factors, start=1):
        for a in range(len(wall)):
            for b in range(a + 1, len(wall)):
                f, g = wall[a], wall[b]
                if _proportional(f, g):
                    problems.append(
                        f"wall {i}: factors {a + 1} and {b + 1} are proportional"
                    )
                    continue
                res = sympy.resultant(f.to_sympy(), g.to_sympy(), _U)
                poly = sympy.Poly(res, _X)
                if poly.is_zero or len(poly.terms()) != 1:
                    problems.append(
                        f"wall {i}: Res_u(factor {a + 1}, factor {b + 1}) = {res} "
                        "is not a nonzero constant times a power of x"
                    )
    return CheckReport(not problems, tuple(problems))


def kinks(S: LogDatum) -> tuple[int, ...]:
    """The kink along each wall is the integral length l_i of its edge."""
    return S.lengths


def _draw_gamma(rng: random.Random) -> Fraction:
    c = Fraction(rng.randint(1, 9), rng.randint(1, 3)) * rng.choice((1, -1))
    return c


def generic_wall_assignment(S: LogDatum, seed: int) -> WallAssignment:
    """Synthesize an assignment passing is_subordinate and is_generic,
    deterministically per seed.

    Parts of equal value v share the core u^v (factors u^v + gamma*x with
    distinct gamma); across distinct values v_1 < v_2 < ... the factors form
    a dominant tower: each value-v_q factor is
    u^{v_q - D_q} * (product of all lower-value factors) + gamma*x with
    D_q = sum of all lower-value parts, which makes every within-wall
    resultant a nonzero constant times a power of x.  Walls whose partition
    violates v_q >= D_q for some q (smallest example: (2,1,1,1)) admit no
    such tower and raise WallSynthesisError; see README.
    """
    for edge in S.edges:
        values = sorted(set(edge.nu))
        below = 0
        for v in values:
            if v < below:
                raise WallSynthesisError(
                    f"partition {edge.nu} of edge {edge.e}: value {v} is smaller "
                    f"than the sum {below} of all smaller parts; no dominant-tower "
                    "assignment exists"
                )
            below += v * edge.nu.count(v)

    rng = random.Random(seed)
    for _ in range(50):
        walls = []
        ok = True
        for edge in S.edges:
            wall = _synthesize_wall(edge.nu, rng)
            if wall is None:
                ok = False
                break
            walls.append(wall)
        if not ok:
            continue
        W = WallAssignment(tuple(walls))
        if is_subordinate(S, W) and is_generic(S, W):
            return W
    raise WallSynthesisError(
        "could not draw a generic assignment in 50 attempts"
    )  # pragma: no cover - the tower construction passes on the first draw


def _synthesize_wall(nu, rng: random.Random):
    """Factors for one wall, returned in the partition's (descending) order."""
    x = BiPoly.monomial(1, 1, 0)
    by_value: dict[int, list[BiPoly]] = {}
    core = BiPoly.one()  # product of all factors of strictly smaller values
    below = 0
    for v in sorted(set(nu)):
        count = nu.count(v)
        gammas: list[Fraction] = []
        while len(gammas) < count:
            g = _draw_gamma(rng)
            if g not in gammas:
                gammas.append(g)
        base = BiPoly.u_power(v - below) * core
        group = [base + x.scale(g) for g in gammas]
        if not all(is_smooth_curve(f) for f in group):
            return None  # redraw with fresh randomness
        by_value[v] = group
        for f in group:
            core = core * f
        below += v * count
    return tuple(by_value[part].pop(0) for part in nu)
