import json
from fractions import Fraction

import pytest

from logmut import (
    BiPoly,
    CheckReport,
    WallAssignment,
    an_datum,
    bipoly_from_obj,
    bipoly_to_obj,
    format_bipoly,
    generic_wall_assignment,
    is_generic,
    is_smooth_curve,
    is_subordinate,
    jerry_datum,
    joint_compatible,
    kinks,
    parse_bipoly,
    tom_datum,
    validate,
)
from logmut.errors import ShapeMismatch, SubordinationRequired, WallSynthesisError

from oracles import singular_point_search

U = parse_bipoly("u")
X = parse_bipoly("x")


def P(text: str) -> BiPoly:
    return parse_bipoly(text)


# --- BiPoly arithmetic --------------------------------------------------------


def test_arithmetic_identities():
    f = P("u^2 + 3*x")
    g = P("u + 5*x")
    assert f + g == P("u^2 + u + 8*x")
    assert f - f == BiPoly.zero()
    assert f * g == P("u^3 + 5*u^2*x + 3*u*x + 15*x^2")
    assert f.scale(Fraction(1, 3)) == P("1/3*u^2 + x")
    assert (-g) == P("-u - 5*x")
    assert BiPoly.one() * f == f


def test_construction_and_degrees():
    f = BiPoly.from_terms({(1, 0): 3, (0, 2): 1, (2, 2): 0})
    assert f == P("u^2 + 3*x")
    assert (f.deg_x(), f.deg_u()) == (1, 2)
    assert BiPoly.zero().deg_x() == -1
    assert BiPoly.u_power(4) == P("u^4")
    with pytest.raises(ValueError):
        BiPoly.from_terms({(-1, 0): 1})


def test_derivatives_and_evaluation():
    f = P("u^3 + 2*u*x + 7")
    assert f.diff_u() == P("3*u^2 + 2*x")
    assert f.diff_x() == P("2*u")
    assert f.evaluate(2, 3) == 27 + 12 + 7
    assert f.evaluate(Fraction(1, 2), 0) == 7
    assert f.evaluate(Fraction(1, 2), Fraction(1, 2)) == Fraction(61, 8)


def test_restriction_and_u_power_shape():
    f = P("u^2 + 3*x + x*u^5")
    assert f.restrict_to_u() == P("u^2")
    assert f.restrict_to_u().is_u_power(2)
    assert not P("2*u^2").is_u_power(2)  # coefficient must be exactly 1
    assert not P("u^2 + 1").is_u_power(2)
    assert BiPoly.one().is_u_power(0)


# --- text and JSON formats ----------------------------------------------------


def test_parse_accepts_z_and_spaces():
    assert P("u^2+3*z") == P("u^2 + 3*x")
    assert P("-u") == BiPoly.monomial(-1, 0, 1)
    assert P("1/2*x^2*u - u + 2") == BiPoly.from_terms(
        {(2, 1): Fraction(1, 2), (0, 1): -1, (0, 0): 2}
    )
    assert P("u - u") == BiPoly.zero()


def test_parse_rejects_garbage():
    for bad in ("", "u^", "u**2", "y + 1", "3x"):
        with pytest.raises(ValueError):
            parse_bipoly(bad)


def test_format_round_trips():
    for text in ("u^2 - 6*u*x + x", "-u + 5", "0", "1/3*u^4*x^2 + x", "7"):
        f = parse_bipoly(text) if text != "0" else BiPoly.zero()
        assert format_bipoly(f) == text
        if text != "0":
            assert parse_bipoly(format_bipoly(f)) == f


def test_json_round_trips():
    f = P("u^2 - 1/2*x")
    obj = json.loads(json.dumps(bipoly_to_obj(f)))
    assert bipoly_from_obj(obj) == f
    assert bipoly_from_obj("u^2 - 1/2*x") == f  # strings accepted too
    W = WallAssignment(((U, U + X), (P("u^2 + x"),)))
    assert WallAssignment.from_obj(json.loads(json.dumps(W.to_obj()))) == W


# --- smoothness ---------------------------------------------------------------


def test_smoothness_known_answers():
    assert is_smooth_curve(P("u^2 + x"))
    assert is_smooth_curve(P("u + 5*x"))
    assert is_smooth_curve(U)
    assert not is_smooth_curve(P("u^2"))  # double line
    assert not is_smooth_curve(P("u^2 - x^2"))  # node at the origin
    assert not is_smooth_curve(P("u^2 - x^3"))  # cusp at the origin
    # smooth even though the singular system has solutions over C off the curve
    assert is_smooth_curve(P("u^2 + x^2 - 1"))


def test_smoothness_agrees_with_rational_point_search():
    for f in (P("u^2 - x^2"), P("u^2 - x^3"), P("u^2")):
        point = singular_point_search(f)
        assert point is not None
        x0, u0 = point
        assert f.evaluate(x0, u0) == 0
        assert f.diff_x().evaluate(x0, u0) == 0
        assert f.diff_u().evaluate(x0, u0) == 0
    assert singular_point_search(P("u^2 + x")) is None


# --- compatibility checks -----------------------------------------------------


def an_assignment(n: int) -> WallAssignment:
    middle = tuple(P(f"u + {k}*z") for k in range(1, n + 2))
    return WallAssignment(((U,), middle, (U,)))


def jerry_assignment() -> WallAssignment:
    return WallAssignment(
        ((P("u + x"), P("u - x"), P("u + 2*x")), (P("u^2 + 5*x"),), (U,))
    )


def test_joint_compatibility():
    S = an_datum(2)
    assert joint_compatible(S, an_assignment(2))
    # product restricting correctly does not require factor-by-factor shape
    lumped = WallAssignment(((U,), (P("u^3 + 2*x"),), (U,)))
    assert joint_compatible(S, lumped)
    bad = WallAssignment(((U,), (P("u^3 + 2*x + 1"),), (U,)))
    assert not joint_compatible(S, bad)


def test_shape_mismatch_raises():
    with pytest.raises(ShapeMismatch):
        joint_compatible(an_datum(2), WallAssignment(((U,), (U,))))
    with pytest.raises(ShapeMismatch):
        is_subordinate(an_datum(2), WallAssignment(((U,),)))


def test_subordinate_accepts_factored_assignments():
    assert is_subordinate(an_datum(2), an_assignment(2))
    assert is_subordinate(jerry_datum(), jerry_assignment())
    report = is_subordinate(jerry_datum(), jerry_assignment())
    assert isinstance(report, CheckReport)
    assert report.ok and report.problems == ()


def test_subordinate_rejects_lumped_factor():
    report = is_subordinate(an_datum(2), WallAssignment(((U,), (P("u^3 + 2*x"),), (U,))))
    assert not report
    assert report.problems == (
        "wall 2: 1 factors for partition (1, 1, 1) (3 parts expected)",
    )


def test_subordinate_rejects_wrong_restriction_and_singular_factor():
    S = validate([((2, 0), (2,)), ((0, 1), (1,)), ((-2, -1), (1,))])
    wrong = WallAssignment(((P("u^2 + u"),), (U,), (U,)))
    report = is_subordinate(S, wrong)
    assert not report and "!= u^2" in report.problems[0]
    singular = WallAssignment(((P("u^2 - x^2"),), (U,), (U,)))
    report = is_subordinate(S, singular)
    assert not report and report.problems == ("wall 1 factor 1: zero curve is singular",)


def test_generic_accepts_known_assignments():
    assert is_generic(an_datum(2), an_assignment(2))
    assert is_generic(jerry_datum(), jerry_assignment())


def test_generic_rejects_repeated_factor():
    S = validate([((2, 0), (1, 1)), ((0, 1), (1,)), ((-2, -1), (1,))])
    W = WallAssignment(((P("u + x"), P("u + x")), (U,), (U,)))
    assert is_subordinate(S, W)
    report = is_generic(S, W)
    assert not report
    assert "proportional" in report.problems[0]


def test_generic_rejects_non_monomial_resultant():
    # Res_u(u^2 + 3x, u + 5x) = 25x^2 + 3x: both factors restrict correctly
    # and are smooth, yet their curves meet off the joint.
    S = validate([((3, 0), (2, 1)), ((0, 1), (1,)), ((-3, -1), (1,))])
    W = WallAssignment(((P("u^2 + 3*x"), P("u + 5*x")), (U,), (U,)))
    assert is_subordinate(S, W)
    report = is_generic(S, W)
    assert not report
    assert "25*x**2 + 3*x" in report.problems[0].replace("3*x + 25*x**2", "25*x**2 + 3*x")


def test_generic_requires_subordination():
    with pytest.raises(SubordinationRequired):
        is_generic(an_datum(2), WallAssignment(((U,), (P("u^3 + 2*x"),), (U,))))


def test_kinks_are_the_edge_lengths():
    assert kinks(tom_datum()) == (3, 2, 1)
    assert kinks(an_datum(4)) == (1, 5, 1)


# --- synthesis ----------------------------------------------------------------


def test_synthesis_is_deterministic_and_passes_checks():
    S = tom_datum()
    W1 = generic_wall_assignment(S, seed=7)
    W2 = generic_wall_assignment(S, seed=7)
    assert W1 == W2
    assert joint_compatible(S, W1)
    assert is_subordinate(S, W1)
    assert is_generic(S, W1)
    rendered = [[format_bipoly(f) for f in wall] for wall in W1.factors]
    assert rendered == [
        ["u^2 - 6*u*x + x", "u - 6*x"],
        ["u + 2*x", "u + 9*x"],
        ["u - x"],
    ]
    assert generic_wall_assignment(S, seed=8) != W1


def test_synthesis_handles_repeated_values_and_towers():
    flat = validate([((3, 0), (1, 1, 1)), ((0, 1), (1,)), ((-3, -1), (1,))])
    W = generic_wall_assignment(flat, seed=1)
    assert is_generic(flat, W)
    assert all(f.restrict_to_u().is_u_power(1) for f in W.factors[0])

    tower = validate([((8, 0), (4, 3, 1)), ((0, 1), (1,)), ((-8, -1), (1,))])
    W = generic_wall_assignment(tower, seed=1)
    assert is_generic(tower, W)
    f4, f3, f1 = W.factors[0]
    assert f3.deg_u() == 3 and f4.deg_u() == 4
    assert f4.restrict_to_u().is_u_power(4)


def test_synthesis_refuses_partition_without_dominant_tower():
    S = validate([((5, 0), (2, 1, 1, 1)), ((0, 1), (1,)), ((-5, -1), (1,))])
    with pytest.raises(WallSynthesisError) as err:
        generic_wall_assignment(S, seed=1)
    assert "(2, 1, 1, 1)" in str(err.value)
    assert "no dominant-tower assignment exists" in str(err.value)
