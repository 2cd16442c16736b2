"""Complex defining equations: conversion, reality, Levi form, transforms."""

import random

import pytest

from crsphere.defining import (
    Biholo,
    ComplexDefining,
    RealGraph,
    THETA_VARS,
    detect_rigid,
    levi_delta,
    rigid_part,
    theta_bar,
    to_complex_defining,
    transform_defining,
    verify_reality,
)
from crsphere.errors import NotSolvableError
from crsphere.fixtures import random_hermitian_xi, random_real_graph
from crsphere.parsing import parse_series, render_series
from crsphere.rational import GaussRat
from crsphere.series import TruncSeries

from conftest import common_eq


def defining(text, order=10):
    return ComplexDefining.from_theta(parse_series(text, THETA_VARS, order))


def biholo(f_txt, g_txt, order=10):
    return Biholo(parse_series(f_txt, ("z", "w"), order), parse_series(g_txt, ("z", "w"), order))


# -- conversion -------------------------------------------------------------


def test_convert_sphere_graph():
    phi = parse_series("x^2 + y^2", ("x", "y", "v"), 8)
    d = to_complex_defining(RealGraph(phi), 8)
    assert d.theta == parse_series("-wb + 2*z*zb", THETA_VARS, 8)
    delta, nondegenerate = levi_delta(d)
    assert nondegenerate and delta.constant_term() == GaussRat.of(2)


def test_convert_flat_hyperplane():
    phi = TruncSeries.zero(("x", "y", "v"), 8)
    d = to_complex_defining(RealGraph(phi), 8)
    assert d.theta == parse_series("-wb", THETA_VARS, 8)
    _, nondegenerate = levi_delta(d)
    assert not nondegenerate


def test_convert_v_dependent_graph():
    phi = parse_series("x^2 + y^2 + v*x^2 + v*y^2", ("x", "y", "v"), 8)
    d = to_complex_defining(RealGraph(phi), 8)
    assert not d.rigid
    assert d.reality_checked == 8
    # defining identity round trip is re-checked through the reality pass
    assert verify_reality(d) is None


def test_real_graph_invariants_enforced():
    with pytest.raises(ValueError):
        RealGraph(parse_series("x", ("x", "y", "v"), 8))
    with pytest.raises(ValueError):
        RealGraph(parse_series("i*x^2", ("x", "y", "v"), 8))


# -- reality -----------------------------------------------------------------


def test_heisenberg_reality():
    assert verify_reality(defining("-wb + z*zb")) is None


def test_rigid_hermitian_reality():
    assert verify_reality(defining("-wb + z*zb + z^2*zb^2")) is None


def test_reality_violation_witness():
    witness = verify_reality(defining("-wb + i*z*zb"))
    assert witness is not None
    mono, coeff = witness
    assert mono == (1, 1, 0)
    assert coeff == GaussRat.of(0, 2)


def test_reality_conjugation_symmetry():
    """The residual of the conjugate-relabelled defining function is the
    conjugate of the residual (so the second functional equation is
    covered by the first)."""
    rng = random.Random(7)
    for _ in range(5):
        xi = random_hermitian_xi(rng, 8, max_degree=4)
        theta = parse_series("-wb", THETA_VARS, 8) + xi.extend(THETA_VARS)
        # perturb away from reality to get a nonzero residual
        theta = theta + parse_series("i*z^2*zb", THETA_VARS, 8)
        d = ComplexDefining.from_theta(theta)
        tb = theta.substitute({"wb": theta_bar(theta)}) - TruncSeries.variable(
            "w", ("z", "zb", "w"), 8
        )
        conj_theta = theta.conjugate({"z": "zb", "zb": "z", "wb": "wb"}).reorder(THETA_VARS)
        dc = ComplexDefining.from_theta(conj_theta)
        tb_c = conj_theta.substitute({"wb": theta_bar(conj_theta)}) - TruncSeries.variable(
            "w", ("z", "zb", "w"), 8
        )
        expected = tb.conjugate({"z": "zb", "zb": "z", "w": "w"}).reorder(("z", "zb", "w"))
        assert common_eq(tb_c, expected)


# -- Levi form and rigidity ----------------------------------------------------


def test_levi_delta_heisenberg_is_one():
    delta, nondegenerate = levi_delta(defining("-wb + z*zb"))
    assert nondegenerate
    assert delta == TruncSeries.one(THETA_VARS, delta.order)


def test_levi_delta_flat_is_zero():
    delta, nondegenerate = levi_delta(defining("-wb"))
    assert not nondegenerate and delta.is_zero()


def test_levi_delta_rigid_is_xi_mixed_derivative():
    d = defining("-wb + z*zb + z^2*zb^2")
    delta, _ = levi_delta(d)
    xi = rigid_part(d.theta)
    assert common_eq(delta, xi.derive("z").derive("zb").extend(THETA_VARS))


def test_detect_rigid():
    assert detect_rigid(parse_series("-wb + z*zb", THETA_VARS, 10))
    assert not detect_rigid(parse_series("-wb + z*zb + z*zb*wb", THETA_VARS, 10))


# -- biholomorphic transforms -----------------------------------------------------


def test_identity_transform_fixes_heisenberg():
    d = defining("-wb + z*zb")
    ident = biholo("z", "w")
    image = transform_defining(d, ident, 10)
    assert image.theta == d.theta


def test_w_shift_transform_is_nonrigid_and_real():
    d = defining("-wb + z*zb")
    image = transform_defining(d, biholo("z", "w + w^2"), 10)
    assert not image.rigid
    assert image.reality_checked == 10
    _, nondegenerate = levi_delta(image)
    assert nondegenerate


def test_z_shift_transform_keeps_levi_unit():
    d = defining("-wb + z*zb")
    image = transform_defining(d, biholo("z + z^2", "w"), 10)
    delta, nondegenerate = levi_delta(image)
    assert nondegenerate
    assert not delta.constant_term().is_zero()


def test_transform_composition():
    d = defining("-wb + z*zb")
    h1 = biholo("z", "w + w^2")
    h2 = biholo("z + z^2", "w")
    image_two_steps = transform_defining(transform_defining(d, h1, 10), h2, 10)
    image_composed = transform_defining(d, h1.then(h2), 10)
    assert common_eq(image_two_steps.theta, image_composed.theta)


def test_swap_map_image_not_graphed():
    d = defining("-wb + z*zb")
    with pytest.raises(NotSolvableError):
        transform_defining(d, biholo("w", "z"), 10)


def test_biholo_requires_invertible_linear_part():
    with pytest.raises(ValueError):
        biholo("z + w", "z + w")
