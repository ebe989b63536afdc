import itertools
import random

import pytest

from liftlab import (AlgebroidSpec, CovariantField, ExpPoly, JacobiAlgebroidSpec,
                     MultiVector, canonical_poisson, chart, dual_bracket_induced,
                     euler, function_bracket, gauge_pphi, heisenberg_algebroid,
                     heisenberg_jacobi, interior_form, lie_bracket,
                     schouten_nijenhuis, so3_algebroid, so3_jacobi, t1_algebroid,
                     t1_embed, t1_split, tangent_algebroid, transport,
                     bracket_one_forms, de_rham)
from liftlab.rand import random_multisection, random_multivector, random_poly
from util import schouten_closed


@pytest.fixture(scope="module")
def so3():
    return so3_algebroid()


@pytest.fixture(scope="module")
def tm():
    return tangent_algebroid(chart("x y"))


def test_validate_standard_specs(so3, tm):
    assert so3.validate().passed
    assert tm.validate().passed
    assert heisenberg_algebroid().validate().passed
    assert t1_algebroid(chart("x y")).validate().passed
    assert so3_jacobi().validate().passed
    assert heisenberg_jacobi().validate().passed


def test_validate_broken_skewness():
    broken = AlgebroidSpec(chart("x"), 3, c={(0, 1, 2): 1, (1, 0, 2): 1})
    rep = broken.validate()
    assert not rep.passed
    assert any("skew" in c.label and not c.passed for c in rep.conditions)


def test_validate_broken_jacobi():
    # [e1,e2]=e3, [e1,e3]=e1, [e2,e3]=e2: the Jacobiator is 2 e3
    bad = AlgebroidSpec(chart("x"), 3,
                        c={(0, 1, 2): 1, (0, 2, 0): 1, (1, 2, 1): 1})
    rep = bad.validate()
    assert not rep.passed
    assert any(c.label.startswith("jacobi") and not c.passed for c in rep.conditions)


def test_validate_broken_anchor():
    # anchor not a morphism: [e1,e2] = 0 but [rho e1, rho e2] != 0
    m = chart("x")
    bad = AlgebroidSpec(m, 2, d={(0, "x"): 1, (1, "x"): ExpPoly.var(m, "x")})
    rep = bad.validate()
    assert not rep.passed
    assert any(c.label.startswith("anchor") and not c.passed for c in rep.conditions)


def test_section_bracket_so3(so3):
    e1, e2 = so3.frame_section(0), so3.frame_section(1)
    assert so3.frame_components(so3.section_bracket(e1, e2)) == \
        {(2,): ExpPoly.const(so3.base, 1)}
    xe2 = so3.section({1: "x"})
    assert so3.frame_components(so3.section_bracket(e1, xe2)) == \
        {(2,): ExpPoly.var(so3.base, "x")}


def test_section_bracket_tm_is_lie_bracket(tm):
    m = tm.base
    rng = random.Random(0)
    for _ in range(10):
        xa = {i: random_poly(m, rng, 1) for i in range(2)}
        ya = {i: random_poly(m, rng, 1) for i in range(2)}
        lhs = tm.frame_components(tm.section_bracket(tm.section(xa), tm.section(ya)))
        lie = lie_bracket(MultiVector(m, 1, {(i,): v for i, v in xa.items()}),
                          MultiVector(m, 1, {(i,): v for i, v in ya.items()}))
        rhs = {(i,): v for (i,), v in lie.comps.items()}
        assert lhs == rhs


def test_algebroid_schouten_matches_closed_formula(so3):
    rng = random.Random(1)
    for _ in range(15):
        a = random_multisection(so3, rng.randint(1, 3), rng)
        b = random_multisection(so3, rng.randint(1, 3), rng)
        assert so3.schouten(a, b) == schouten_closed(a, b, so3.section_bracket)


def test_linear_poisson_examples(so3, tm):
    lp = so3.linear_poisson()
    d = so3.dual
    xi = [ExpPoly.var(d, n) for n in so3.dual_names]
    expect = MultiVector(d, 2, {(1, 2): xi[2], (2, 3): xi[0], (1, 3): -xi[1]})
    assert lp == expect
    assert tm.linear_poisson() == canonical_poisson(tm.dual)
    zero = AlgebroidSpec(chart("x"), 2)
    assert zero.linear_poisson().is_zero()


def test_linear_poisson_is_poisson_iff_valid(so3):
    assert schouten_nijenhuis(so3.linear_poisson(), so3.linear_poisson()).is_zero()
    bad = AlgebroidSpec(chart("x"), 3,
                        c={(0, 1, 2): 1, (0, 2, 0): 1, (1, 2, 1): 1})
    assert not bad.validate().passed
    lp = bad.linear_poisson()
    assert not schouten_nijenhuis(lp, lp).is_zero()


def test_lpo_frame_identity(so3, tm):
    for spec in (so3, tm):
        lam = spec.linear_poisson()
        for i, j in itertools.product(range(spec.rank), repeat=2):
            x, y = spec.frame_section(i), spec.frame_section(j)
            lhs = spec.iota_dual(spec.section_bracket(x, y))
            rhs = function_bracket(lam, spec.iota_dual(x), spec.iota_dual(y))
            assert lhs == rhs


def test_exterior_derivative_examples(so3, tm):
    mu = tm.frame_form(1, {(1,): "x"})
    assert tm.frame_components(tm.exterior_derivative(mu)) == \
        {(0, 1): ExpPoly.const(tm.base, 1)}
    d3 = so3.exterior_derivative(so3.frame_form(1, {(2,): 1}))
    assert so3.frame_components(d3) == {(0, 1): ExpPoly.const(so3.base, -1)}
    assert so3.exterior_derivative(ExpPoly.var(so3.base, "x")).is_zero()


def test_exterior_derivative_matches_de_rham(tm):
    """On the tangent algebroid the frame differential is the de Rham one."""
    m = tm.base
    rng = random.Random(2)
    for deg in (0, 1):
        for _ in range(6):
            if deg == 0:
                f = random_poly(m, rng)
                got = tm.frame_components(tm.exterior_derivative(f))
                exp = de_rham(f)
                assert got == {k: v for k, v in exp.comps.items()}
            else:
                comps = {(i,): random_poly(m, rng) for i in range(2)}
                mu = tm.frame_form(1, comps)
                om = CovariantField(m, 1, comps)
                got = tm.frame_components(tm.exterior_derivative(mu))
                assert got == {k: v for k, v in de_rham(om).comps.items()}


def test_d_squared_zero():
    rng = random.Random(3)
    for spec in (so3_algebroid(), heisenberg_algebroid(), tangent_algebroid(chart("x y"))):
        for deg in (0, 1, 2):
            for _ in range(4):
                if deg == 0:
                    mu = random_poly(spec.base, rng)
                else:
                    mu = spec.frame_form(deg, {
                        key: random_poly(spec.base, rng, 1)
                        for key in itertools.combinations(range(spec.rank), deg)})
                assert spec.exterior_derivative(spec.exterior_derivative(mu)).is_zero()


def test_d_phi_squared_zero():
    rng = random.Random(4)
    for jspec in (so3_jacobi(), heisenberg_jacobi(), t1_algebroid(chart("x y"))):
        spec = jspec.algebroid
        for deg in (0, 1, 2):
            for _ in range(4):
                if deg == 0:
                    mu = random_poly(spec.base, rng)
                else:
                    mu = spec.frame_form(deg, {
                        key: random_poly(spec.base, rng, 1)
                        for key in itertools.combinations(range(spec.rank), deg)})
                assert jspec.d_phi(jspec.d_phi(mu)).is_zero()


def test_d_phi_examples():
    t1 = t1_algebroid(chart("x"))
    f = ExpPoly.var(t1.base, "x")
    # d^Phi f = df + f Phi
    got = t1.d_phi(f)
    expect = t1.algebroid.exterior_derivative(f) + t1.phi.scale(t1.embed(f))
    assert got == expect
    # Phi = 0 reduces to d
    zero_phi = JacobiAlgebroidSpec(t1.algebroid, {i: 0 for i in range(t1.rank)})
    mu = t1.frame_form(1, {(0,): "x"})
    assert zero_phi.d_phi(mu) == t1.algebroid.exterior_derivative(mu)


def test_lie_derivative_cartan(so3, tm):
    # TM-spec: L_{d/dx}(x dy-frame) = dy-frame
    mu = tm.frame_form(1, {(1,): "x"})
    got = tm.lie_derivative(tm.frame_section(0), mu)
    assert tm.frame_components(got) == {(1,): ExpPoly.const(tm.base, 1)}
    # L_X f = rho(X) f
    f = ExpPoly.var(tm.base, "x") ** 2
    got = tm.lie_derivative(tm.frame_section(0), f)
    assert got.comps[()] == tm.embed(f.differentiate("x"))
    # so(3): L_{e1} e*2 = e*3 (minus e*k composed with ad_{e1})
    got = so3.lie_derivative(so3.frame_section(0), so3.frame_form(1, {(1,): 1}))
    assert so3.frame_components(got) == {(2,): ExpPoly.const(so3.base, 1)}


def test_deformed_schouten(so3):
    s3j = so3_jacobi()
    spec = s3j.algebroid
    rng = random.Random(5)
    # Phi = 0 reduces to the plain bracket
    zero_phi = JacobiAlgebroidSpec(spec, {i: 0 for i in range(spec.rank)})
    for _ in range(6):
        x = random_multisection(spec, rng.randint(1, 2), rng)
        y = random_multisection(spec, rng.randint(1, 2), rng)
        assert zero_phi.deformed_schouten(x, y) == spec.schouten(x, y)
    # [[X,X]]_Phi = [[X,X]] + 2 X ^ i_Phi X on bisections
    for _ in range(6):
        x = random_multisection(spec, 2, rng)
        lhs = s3j.deformed_schouten(x, x)
        rhs = spec.schouten(x, x) + x.wedge(interior_form(s3j.phi, x)).scale(2)
        assert lhs == rhs
    # [[X, 1]]_Phi = i_Phi X for sections
    one = MultiVector.from_function(ExpPoly.const(spec.total, 1))
    for _ in range(4):
        x = random_multisection(spec, 1, rng)
        assert s3j.deformed_schouten(x, one) == interior_form(s3j.phi, x)


def test_canonical_jacobi_dual_t1_matches_jm():
    t1 = t1_algebroid(chart("x y"))
    b, v = t1.canonical_jacobi_dual()
    d = t1.dual
    lam_m = canonical_poisson(d)
    delta = euler(d, roles={"cotangent-fiber"})
    dl = MultiVector.direction(d, "lambda")
    assert b == lam_m + delta.wedge(dl)
    assert v == -dl


def test_canonical_jacobi_dual_edge_cases():
    spec = AlgebroidSpec(chart("x"), 2)
    zero_phi = JacobiAlgebroidSpec(spec, {0: 0, 1: 0})
    b, v = zero_phi.canonical_jacobi_dual()
    assert b == spec.linear_poisson() and v.is_zero()
    jz = JacobiAlgebroidSpec(spec, {0: 1, 1: 0})
    b, v = jz.canonical_jacobi_dual()
    d = spec.dual
    xi = [ExpPoly.var(d, n) for n in spec.dual_names]
    delta = MultiVector(d, 1, {(1,): xi[0], (2,): xi[1]})
    assert b == delta.wedge(MultiVector.direction(d, spec.dual_names[0]))
    assert v == -MultiVector.direction(d, spec.dual_names[0])


def test_extend_hat(so3):
    s3j = so3_jacobi()
    hat = s3j.extend_hat()
    assert hat.validate().passed
    # d s = Phi on the frame
    ds = hat.exterior_derivative(ExpPoly.var(hat.base, "s"))
    assert hat.frame_components(ds) == {(3,): ExpPoly.const(hat.base, 1)}
    # Lambda^{hat E*} = Lambda^{E*} + Phi^v ^ d/ds
    lp = transport(s3j.algebroid.linear_poisson(), hat.dual)
    phiv = transport(s3j.phi_vertical_dual(), hat.dual)
    assert hat.linear_poisson() == lp + phiv.wedge(MultiVector.direction(hat.dual, "s"))
    # t1: U((X,f)) = X + f d/ds
    t1 = t1_algebroid(chart("x"))
    hat1 = t1.extend_hat()
    e_x, e_t = hat1.frame_section(0), hat1.frame_section(1)
    got = hat1.rho(e_t, ExpPoly.var(hat1.total, "s"))
    assert got == ExpPoly.const(hat1.total, 1)
    assert hat1.rho(e_x, ExpPoly.var(hat1.total, "x")) == ExpPoly.const(hat1.total, 1)
    # Phi = 0 leaves d/ds inert
    zero_phi = JacobiAlgebroidSpec(so3, {i: 0 for i in range(3)})
    hat0 = zero_phi.extend_hat()
    for i in range(3):
        assert hat0.rho(hat0.frame_section(i), ExpPoly.var(hat0.total, "s")).is_zero()


def test_dual_bracket_induced(so3, tm):
    # P = 0
    z = so3.multisection(2, {})
    a1 = so3.frame_form(1, {(0,): 1})
    a2 = so3.frame_form(1, {(1,): 1})
    assert dual_bracket_induced(so3, z, a1, a2).is_zero()
    # so(3), P = e1^e2: the bracket of e*1, e*2 collapses to zero
    p = so3.multisection(2, {(0, 1): 1})
    assert dual_bracket_induced(so3, p, a1, a2).is_zero()
    # TM-spec reduces to the chart-level bracket of 1-forms
    m = tm.base
    rng = random.Random(6)
    for _ in range(8):
        lam = random_multivector(m, 2, rng)
        p_frame = tm.multisection(2, {(0, 1): lam.component((0, 1)).substitute({}, m)})
        mu = {(i,): random_poly(m, rng, 1) for i in range(2)}
        nu = {(i,): random_poly(m, rng, 1) for i in range(2)}
        got = tm.frame_components(dual_bracket_induced(
            tm, p_frame, tm.frame_form(1, mu), tm.frame_form(1, nu)))
        expect = bracket_one_forms(lam, CovariantField(m, 1, mu), CovariantField(m, 1, nu))
        assert got == dict(expect.comps)


def test_theorem9_gauge_homomorphism():
    rng = random.Random(7)
    t1 = t1_algebroid(chart("x y"))
    s3j = so3_jacobi()
    for jspec in (t1, s3j):
        hat = jspec.extend_hat()
        for _ in range(8):
            x = random_multisection(jspec, rng.randint(1, min(3, jspec.rank)), rng)
            y = random_multisection(jspec, rng.randint(1, min(3, jspec.rank)), rng)
            lhs = hat.schouten(gauge_pphi(jspec, x, hat), gauge_pphi(jspec, y, hat))
            rhs = gauge_pphi(jspec, jspec.deformed_schouten(x, y), hat)
            assert lhs == rhs
        # degree-0 arguments
        f = MultiVector.from_function(jspec.embed(random_poly(jspec.base, rng, 1)))
        y = random_multisection(jspec, 2, rng)
        assert hat.schouten(gauge_pphi(jspec, f, hat), gauge_pphi(jspec, y, hat)) == \
            gauge_pphi(jspec, jspec.deformed_schouten(f, y), hat)


def test_gauge_lift_display():
    """(P_Phi(X))^c-hat = exp(-ks)(X^c - k iota_Phi X^v + d/ds ^ (i_Phi X)^v)."""
    from liftlab import algebroid_complete_lift
    rng = random.Random(8)
    for jspec in (t1_algebroid(chart("x")), so3_jacobi()):
        hat = jspec.extend_hat()
        for deg in (1, 2):
            x = random_multisection(jspec, deg, rng)
            k = deg - 1
            lhs = algebroid_complete_lift(hat, gauge_pphi(jspec, x, hat))
            xc = transport(algebroid_complete_lift(jspec.algebroid, x), hat.total)
            xv = transport(x, hat.total)
            iphi = transport(jspec.iota_phi(), hat.total)
            ds = MultiVector.direction(hat.total, "s")
            ix = transport(interior_form(jspec.phi, x), hat.total)
            rhs = xc - xv.scale(iphi * k) + ds.wedge(ix)
            if k:
                rhs = rhs.scale(ExpPoly.exp_gen(hat.total, "s", -k))
            assert lhs == rhs


def test_t1_embed_split_roundtrip():
    rng = random.Random(9)
    m = chart("x y")
    t1 = t1_algebroid(m)
    for _ in range(10):
        a1 = random_multivector(m, 2, rng)
        a2 = random_multivector(m, 1, rng)
        x = t1_embed(t1, a1, a2)
        b1, b2 = t1_split(t1, x)
        assert b1 == a1 and b2 == a2
