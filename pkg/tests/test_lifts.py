import random

import pytest

from liftlab import (CovariantField, ExpPoly, FirstOrderBiDiffOp, MultiVector,
                     TensorField, algebroid_complete_lift, antisymmetrize,
                     chart, complete_lift_tangent,
                     function_bracket, gauge_transport,
                     interior_form, iota_pair, is_poisson, jacobi_lift,
                     jacobi_lift_algebroid, jacobi_lift_pair, lift_charts,
                     poisson_lift, poisson_lift_algebroid, poissonization,
                     poissonization_skew, prolong, schouten_jacobi_first_order,
                     schouten_nijenhuis, so3_algebroid, so3_jacobi, t1_algebroid,
                     t1_embed, tangent_algebroid, tilde, transport,
                     vertical_lift, heisenberg_algebroid)
from liftlab.chart import ChartError
from liftlab.rand import random_multisection, random_multivector, random_poly
from util import (contact_operator, contact_pair, lift_function_closed, lift_section_closed,
                  lift_bisection_closed, tangent_lift2_closed)


def test_complete_lift_function():
    m = chart("x")
    assert complete_lift_tangent(ExpPoly.var(m, "x")) == \
        ExpPoly.var(prolong(m, "tangent"), "xdot")


def test_complete_lift_constant_bivector():
    m = chart("x y")
    lam = MultiVector.direction(m, "x", "y")
    tan = prolong(m, "tangent")
    expect = MultiVector.direction(tan, "x", "ydot") + MultiVector.direction(tan, "xdot", "y")
    assert complete_lift_tangent(lam) == expect


def test_complete_lift_linear_vector():
    m = chart("x")
    x = ExpPoly.var(m, "x")
    tan = prolong(m, "tangent")
    got = complete_lift_tangent(MultiVector(m, 1, {(0,): x}))
    assert got == MultiVector(tan, 1, {(0,): ExpPoly.var(tan, "x"),
                                       (1,): ExpPoly.var(tan, "xdot")})


def test_complete_lift_rejects_fibered_chart():
    tan = prolong(chart("x"), "tangent")
    with pytest.raises(ChartError):
        complete_lift_tangent(MultiVector.direction(tan, "x"))


def test_complete_lift_matches_closed_display():
    """Derivation-rule lift vs the closed coordinate display, degree 2."""
    rng = random.Random(0)
    m = chart("x y z")
    tan = prolong(m, "tangent")
    for _ in range(10):
        t = TensorField(m, 2, {(i, j): random_poly(m, rng, 1)
                               for i in range(3) for j in range(3)
                               if rng.random() < 0.5})
        assert complete_lift_tangent(t) == tangent_lift2_closed(t, tan)


def test_lift_bracket_homomorphisms():
    rng = random.Random(1)
    m = chart("x y")
    tan = prolong(m, "tangent")
    for _ in range(15):
        a = random_multivector(m, rng.choice([1, 2]), rng)
        b = random_multivector(m, rng.choice([1, 2]), rng)
        br = schouten_nijenhuis(a, b)
        assert complete_lift_tangent(br) == \
            schouten_nijenhuis(complete_lift_tangent(a), complete_lift_tangent(b))
        assert vertical_lift(br, tan) == \
            schouten_nijenhuis(complete_lift_tangent(a), vertical_lift(b, tan))


def test_algebroid_lift_examples():
    so3 = so3_algebroid()
    # d = 0 kills the lift of base functions
    assert algebroid_complete_lift(so3, ExpPoly.var(so3.base, "x")).is_zero()
    e1c = algebroid_complete_lift(so3, so3.frame_section(0))
    t = so3.total
    assert e1c == MultiVector(t, 1, {(2,): ExpPoly.var(t, "y3"),
                                     (3,): -ExpPoly.var(t, "y2")})
    # TM-spec reduces to the tangent lift
    m = chart("x y")
    tm = tangent_algebroid(m)
    x = ExpPoly.var(m, "x")
    got = algebroid_complete_lift(tm, tm.section({0: x}))
    assert got == complete_lift_tangent(MultiVector(m, 1, {(0,): x}))


def test_algebroid_lift_bracket_homomorphisms():
    """[[X,Y]]^c = [[X^c,Y^c]] and [[X,Y]]^v = [[X^c,Y^v]] with the algebroid
    bracket on the left and the chart-level Schouten bracket on the right."""
    rng = random.Random(10)
    for spec in (so3_algebroid(), heisenberg_algebroid(), tangent_algebroid(chart("x y"))):
        for _ in range(8):
            x = random_multisection(spec, rng.choice([1, 2]), rng, 1)
            y = random_multisection(spec, rng.choice([1, 2]), rng, 1)
            br = spec.schouten(x, y)
            assert algebroid_complete_lift(spec, br) == schouten_nijenhuis(
                algebroid_complete_lift(spec, x), algebroid_complete_lift(spec, y))
            # in the vertical representation Y^v and [[X,Y]]^v are Y and [[X,Y]]
            assert br == schouten_nijenhuis(algebroid_complete_lift(spec, x), y)


def test_algebroid_lift_matches_fp_displays():
    rng = random.Random(2)
    specs = [so3_algebroid(), heisenberg_algebroid(), tangent_algebroid(chart("x y")),
             t1_algebroid(chart("x")).algebroid]
    for spec in specs:
        for _ in range(6):
            f = random_poly(spec.base, rng)
            assert algebroid_complete_lift(spec, f) == lift_function_closed(spec, f)
            comps = {i: random_poly(spec.base, rng, 1) for i in range(spec.rank)
                     if rng.random() < 0.7}
            got = algebroid_complete_lift(spec, spec.section(comps))
            assert got == lift_section_closed(spec, comps)
            p = random_multisection(spec, 2, rng)
            assert algebroid_complete_lift(spec, p) == lift_bisection_closed(spec, p)


def test_jacobi_lift_examples():
    mu = chart("u")
    j = FirstOrderBiDiffOp.from_pair(MultiVector.zero(mu, 2),
                                     MultiVector.direction(mu, "u"))
    b, v = jacobi_lift_pair(j)
    e = lift_charts(mu)[1]
    t = ExpPoly.var(e, "t")
    expect_b = -MultiVector.direction(e, "u", "t") \
        + MultiVector.direction(e, "udot", "t").scale(t)
    assert b == expect_b
    assert v == MultiVector.direction(e, "udot")

    m = chart("x y")
    j2 = FirstOrderBiDiffOp.from_pair(MultiVector.direction(m, "x", "y"),
                                      MultiVector.zero(m, 1))
    b2, v2 = jacobi_lift_pair(j2)
    e2 = lift_charts(m)[1]
    t2 = ExpPoly.var(e2, "t")
    expect = MultiVector.direction(e2, "x", "ydot") + MultiVector.direction(e2, "xdot", "y") \
        - MultiVector.direction(e2, "xdot", "ydot").scale(t2)
    assert b2 == expect and v2.is_zero()

    z = FirstOrderBiDiffOp.zero(m)
    bz, vz = jacobi_lift_pair(z)
    assert bz.is_zero() and vz.is_zero()


def test_poisson_lift_examples():
    m = chart("x y")
    j2 = FirstOrderBiDiffOp.from_pair(MultiVector.direction(m, "x", "y"),
                                      MultiVector.zero(m, 1))
    e = lift_charts(m)[1]
    t = ExpPoly.var(e, "t")
    got = antisymmetrize(poisson_lift(j2))
    expect = MultiVector.direction(e, "x", "ydot") + MultiVector.direction(e, "xdot", "y") \
        - MultiVector.direction(e, "xdot", "ydot").scale(t)
    assert got == expect

    mu = chart("u")
    j = FirstOrderBiDiffOp.from_pair(MultiVector.zero(mu, 2),
                                     MultiVector.direction(mu, "u"))
    eu = lift_charts(mu)[1]
    # Delta_TM ^ Gamma^v collapses in one dimension; d/dt ^ d/du survives
    assert antisymmetrize(poisson_lift(j)) == -MultiVector.direction(eu, "u", "t")

    alpha_only = FirstOrderBiDiffOp(TensorField.zero(m, 2), TensorField.zero(m, 1),
                                    TensorField.zero(m, 1), ExpPoly.const(m, 1))
    got = poisson_lift(alpha_only)
    it = e.index("t")
    assert got == TensorField(e, 2, {(it, it): t})


def test_poissonization_examples():
    lam, gam = contact_pair()
    j = FirstOrderBiDiffOp.from_pair(lam, gam)
    pj = poissonization_skew(j)
    ms = pj.chart
    es = ExpPoly.exp_gen(ms, "s", -1)
    expect = transport(lam, ms).scale(es) + \
        MultiVector.direction(ms, "s", "u").scale(es)
    assert pj == expect

    m = chart("x")
    alpha_only = FirstOrderBiDiffOp(TensorField.zero(m, 2), TensorField.zero(m, 1),
                                    TensorField.zero(m, 1), ExpPoly.const(m, 1))
    pj2 = poissonization(alpha_only)
    ms2 = pj2.chart
    i_s = ms2.index("s")
    assert pj2 == TensorField(ms2, 2, {(i_s, i_s): ExpPoly.exp_gen(ms2, "s", -1)})

    z = FirstOrderBiDiffOp.zero(m)
    assert poissonization(z).is_zero()


def test_poissonization_collision():
    m = prolong(chart("x"), "times_R", name="s")
    j = FirstOrderBiDiffOp.zero(m)
    with pytest.raises(ChartError):
        poissonization(j)


def test_jacobi_poisson_lift_algebroid_consistency():
    """Over (T1M, (0,1)) the algebroid lifts match the TM x R displays."""
    m = chart("x y")
    t1 = t1_algebroid(m)
    rng = random.Random(3)
    for _ in range(8):
        lam = random_multivector(m, 2, rng)
        gam = random_multivector(m, 1, rng)
        j = FirstOrderBiDiffOp.from_pair(lam, gam)
        emb = t1_embed(t1, lam, gam)
        hat_b, hat_v = jacobi_lift_algebroid(t1, emb)
        b, v = jacobi_lift_pair(j)
        assert hat_b == transport(b, t1.total) and hat_v == transport(v, t1.total)
        got_c = poisson_lift_algebroid(t1, emb)
        assert got_c == antisymmetrize(transport(poisson_lift(j), t1.total))


def test_lift_algebroid_edge_cases():
    s3j = so3_jacobi()
    spec = s3j.algebroid
    # Phi = 0: both lifts reduce to the complete lift
    zero_phi_spec = t1_algebroid(chart("x"))
    from liftlab import JacobiAlgebroidSpec
    zero_phi = JacobiAlgebroidSpec(spec, {i: 0 for i in range(spec.rank)})
    rng = random.Random(4)
    x = random_multisection(spec, 2, rng)
    b, v = jacobi_lift_algebroid(zero_phi, x)
    assert b == algebroid_complete_lift(spec, x) and v.is_zero()
    assert poisson_lift_algebroid(zero_phi, x) == algebroid_complete_lift(spec, x)
    # X = 0
    z = spec.multisection(2, {})
    b, v = jacobi_lift_algebroid(s3j, z)
    assert b.is_zero() and v.is_zero()


def test_theorem5_b():
    rng = random.Random(5)
    for jspec in (t1_algebroid(chart("x y")), so3_jacobi()):
        for _ in range(5):
            x = random_multisection(jspec, 1, rng)
            first, second = jacobi_lift_algebroid(jspec, x)
            assert first == algebroid_complete_lift(jspec.algebroid, x)
            assert second == interior_form(jspec.phi, x)


def test_theorem5_d_e():
    rng = random.Random(6)
    for jspec in (t1_algebroid(chart("x y")), so3_jacobi()):
        for _ in range(6):
            x = random_multisection(jspec, rng.choice([1, 2]), rng, 1)
            y = random_multisection(jspec, rng.choice([1, 2]), rng, 1)
            z = jspec.deformed_schouten(x, y)
            lhs = schouten_jacobi_first_order(jacobi_lift_algebroid(jspec, x),
                                              jacobi_lift_algebroid(jspec, y))
            rhs = jacobi_lift_algebroid(jspec, z)
            assert lhs[0] == rhs[0] and lhs[1] == rhs[1]
            yv_pair = (y, MultiVector.zero(jspec.total, max(y.degree - 1, 0)))
            lhs_e = schouten_jacobi_first_order(jacobi_lift_algebroid(jspec, x), yv_pair)
            assert lhs_e[0] == z and lhs_e[1].is_zero()


def test_poisson_lift_theorem_d():
    rng = random.Random(7)
    for jspec in (t1_algebroid(chart("x y")), so3_jacobi()):
        for _ in range(5):
            x = random_multisection(jspec, 2, rng, 1)
            y = random_multisection(jspec, rng.choice([1, 2]), rng, 1)
            lhs = schouten_nijenhuis(poisson_lift_algebroid(jspec, x),
                                     poisson_lift_algebroid(jspec, y))
            rhs = poisson_lift_algebroid(jspec, jspec.deformed_schouten(x, y))
            assert lhs == rhs


def test_corollary1_canonical_lifts_are_poisson():
    rng = random.Random(8)
    heis = heisenberg_algebroid()
    tm = tangent_algebroid(chart("x y z"))
    seeded = [
        (heis, heis.multisection(2, {(0, 2): 1})),
        (heis, heis.multisection(2, {(1, 2): "x"})),
        (tm, tm.multisection(2, {(0, 1): 1, (1, 2): 1})),
    ]
    checked = 0
    for spec, p in seeded:
        assert spec.schouten(p, p).is_zero()
        assert is_poisson(algebroid_complete_lift(spec, p))
        checked += 1
    for spec in (heis, tm, so3_algebroid()):
        for _ in range(10):
            p = random_multisection(spec, 2, rng, 1)
            if spec.schouten(p, p).is_zero():
                checked += 1
                assert is_poisson(algebroid_complete_lift(spec, p))
    assert checked >= 3


def test_lifts_agree_on_linear_functions():
    j = contact_operator()
    m = j.chart
    e = lift_charts(m)[1]
    jhat = jacobi_lift(j)
    jchat = poisson_lift(j)
    rng = random.Random(9)
    for _ in range(10):
        mu = CovariantField(m, 1, {(i,): random_poly(m, rng, 1) for i in range(3)})
        nu = CovariantField(m, 1, {(i,): random_poly(m, rng, 1) for i in range(3)})
        f, g = random_poly(m, rng, 1), random_poly(m, rng, 1)
        pa, pb = iota_pair(mu, f, e), iota_pair(nu, g, e)
        assert jhat.bracket(pa, pb) == function_bracket(jchat, pa, pb)


def test_gauge_transport_dispatch():
    m = chart("x")
    e = lift_charts(m)[1]
    ext = prolong(e, "times_R", name="s")
    xdot = ExpPoly.var(e, "xdot")
    assert gauge_transport("breve", xdot, ext) == \
        ExpPoly.exp_gen(ext, "s", 1) * ExpPoly.var(ext, "xdot")
    dual = prolong(prolong(m, "cotangent"), "times_R", name="lambda")
    dual_ext = prolong(dual, "times_R", name="s")
    p2 = ExpPoly.var(dual, "p_x") ** 2
    assert gauge_transport("tilde", p2, dual_ext) == \
        ExpPoly.exp_gen(dual_ext, "s", -1) * ExpPoly.var(dual_ext, "p_x") ** 2
    t1 = t1_algebroid(m)
    x = t1.section({0: 1})
    assert gauge_transport("P_phi", t1, x) == transport(x, t1.extend_hat().total)
    with pytest.raises(ChartError):
        gauge_transport("nope", xdot, ext)


def test_tilde_scales_by_fiber_degree():
    m = chart("x")
    dual = prolong(prolong(m, "cotangent"), "times_R", name="lambda")
    ext = prolong(dual, "times_R", name="s")
    es = lambda k: ExpPoly.exp_gen(ext, "s", k)
    one = ExpPoly.const(dual, 1)
    assert tilde(one, ext) == es(1)
    p = ExpPoly.var(dual, "p_x")
    assert tilde(p, ext) == ExpPoly.var(ext, "p_x")  # degree 1: e^{(1-1)s}
    lam2 = ExpPoly.var(dual, "lambda") * p
    assert tilde(lam2, ext) == es(-1) * ExpPoly.var(ext, "lambda") * ExpPoly.var(ext, "p_x")
