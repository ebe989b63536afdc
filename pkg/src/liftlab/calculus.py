"""The bracket zoo.

The Schouten-Nijenhuis bracket is *defined* by its generators together with
graded antisymmetry and the graded Leibniz rule, in the convention that makes
multivector fields a graded Lie algebra of degree -1:

    [[X, f]] = X(f),      [[X, Y]] = Lie bracket        (X, Y vector fields),
    [[A, B]] = -(-1)^{ab} [[B, A]],                      a = |A|-1, b = |B|-1,
    [[A, Y ^ Z]] = [[A, Y]] ^ Z + (-1)^{a|Y|} Y ^ [[A, Z]].

The same recursion drives the Lie-algebroid bracket (the algebroid module
passes its own section bracket and anchor action).  The closed coordinate
formula over decomposables is kept out of the implementation on purpose; the
test-suite uses it as an independent oracle.
"""

from __future__ import annotations

from .chart import Chart, ChartError
from .coeff import ExpPoly
from .geometry import (CovariantField, FirstOrderBiDiffOp, MultiVector,
                       de_rham, directional, interior_vector, iota_pair,
                       lie_derivative_chart, pair, sharp_apply)


def sgn(k: int) -> int:
    """(-1)**k for possibly negative k."""
    return -1 if k % 2 else 1


def lie_bracket(x: MultiVector, y: MultiVector) -> MultiVector:
    """[X,Y]^k = X^a d_a Y^k - Y^a d_a X^k."""
    if x.degree != 1 or y.degree != 1:
        raise ChartError("lie_bracket needs two vector fields")
    if x.chart != y.chart:
        raise ChartError("chart mismatch")
    ch = x.chart
    out: dict = {}
    for (k,), yv in y.comps.items():
        d = directional(x, yv)
        if not d.is_zero():
            out[(k,)] = out.get((k,), ExpPoly.zero(ch)) + d
    for (k,), xv in x.comps.items():
        d = directional(y, xv)
        if not d.is_zero():
            out[(k,)] = out.get((k,), ExpPoly.zero(ch)) - d
    return MultiVector(ch, 1, out)


def sn_generic(a: MultiVector, b: MultiVector, sec_bracket, act) -> MultiVector:
    """Recursive graded bracket; ``sec_bracket`` brackets two degree-1 inputs
    and ``act`` applies a degree-1 input to a coefficient function."""
    if a.chart != b.chart:
        raise ChartError("chart mismatch in bracket")
    ch = a.chart
    da, db = a.degree, b.degree
    out_deg = max(da + db - 1, 0)
    if a.is_zero() or b.is_zero():
        return MultiVector.zero(ch, out_deg)
    if da == 0 and db == 0:
        return MultiVector.zero(ch, 0)
    if da == 1 and db == 0:
        return MultiVector.from_function(act(a, b.comps.get((), ExpPoly.zero(ch))))
    if da == 0 and db == 1:
        return -sn_generic(b, a, sec_bracket, act)
    if da == 1 and db == 1:
        return sec_bracket(a, b)
    if db >= 2:
        shift = da - 1
        acc = MultiVector.zero(ch, out_deg)
        for key, coeff in b.comps.items():
            y = MultiVector(ch, 1, {(key[0],): coeff})
            z = MultiVector.direction(ch, *(ch.vars[i].name for i in key[1:]))
            left = sn_generic(a, y, sec_bracket, act).wedge(z)
            right = y.wedge(sn_generic(a, z, sec_bracket, act))
            acc = acc + left + (right if shift % 2 == 0 else -right)
        return acc
    # da >= 2, db <= 1: graded antisymmetry, then the db >= 2 branch applies
    sign = -sgn((da - 1) * (db - 1))
    res = sn_generic(b, a, sec_bracket, act)
    return res if sign == 1 else -res


def schouten_nijenhuis(a: MultiVector, b: MultiVector) -> MultiVector:
    """Schouten-Nijenhuis bracket of multivector fields on a chart."""
    return sn_generic(a, b, lie_bracket, directional)


def schouten_jacobi_first_order(a_pair, b_pair):
    """Closed formula for the bracket of first-order polydifferential
    operators A1 + I ^ A2, B1 + I ^ B2 (pairs of multivectors, |A2|=|A1|-1):

      C1 = [[A1,B1]] + a A1^B2 - (-1)^a b A2^B1
      C2 = (-1)^a [[A1,B2]] + [[A2,B1]] + (a-b) A2^B2,   a = |A1|-1, b = |B1|-1.
    """
    a1, a2 = a_pair
    b1, b2 = b_pair
    # a degree-0 first component carries an empty I-part, encoded as a zero
    # multivector of degree 0
    if a2.degree != a1.degree - 1 and not (a1.degree == 0 and a2.is_zero()):
        raise ChartError("pair encoding requires |A2| = |A1| - 1")
    if b2.degree != b1.degree - 1 and not (b1.degree == 0 and b2.is_zero()):
        raise ChartError("pair encoding requires |B2| = |B1| - 1")
    a = a1.degree - 1
    b = b1.degree - 1
    sa = sgn(a)
    c1 = schouten_nijenhuis(a1, b1)
    if a:
        c1 = c1 + a1.wedge(b2).scale(a)
    if b:
        c1 = c1 - a2.wedge(b1).scale(sa * b)
    c2 = schouten_nijenhuis(a2, b1) + schouten_nijenhuis(a1, b2).scale(sa)
    if a != b:
        c2 = c2 + a2.wedge(b2).scale(a - b)
    return c1, c2


def pair_wedge(a_pair, b_pair):
    """(A1 + I^A2) ^ (B1 + I^B2); the I^A2^I^B2 cross term vanishes."""
    a1, a2 = a_pair
    b1, b2 = b_pair
    sign = (-1) ** a1.degree
    second = a2.wedge(b1) + (a1.wedge(b2) if sign == 1 else -(a1.wedge(b2)))
    return a1.wedge(b1), second


def function_bracket(s, f: ExpPoly, g: ExpPoly) -> ExpPoly:
    """Bracket of functions induced by a 2-tensor, a bivector or a
    first-order bidifferential operator."""
    if isinstance(s, FirstOrderBiDiffOp):
        return s.bracket(f, g)
    if isinstance(s, MultiVector):
        s = s.expand()
    if s.degree != 2:
        raise ChartError("function bracket needs a degree-2 structure")
    return pair(s, de_rham(f), de_rham(g))


def bracket_one_forms(lam, mu: CovariantField, nu: CovariantField) -> CovariantField:
    """[mu,nu]_Lambda = i_{sharp(mu)} d nu - i_{sharp(nu)} d mu + d<Lambda, mu (x) nu>."""
    if isinstance(lam, MultiVector):
        lam = lam.expand()
    if mu.degree != 1 or nu.degree != 1:
        raise ChartError("bracket_one_forms expects 1-forms")
    out = interior_vector(sharp_apply(lam, mu), de_rham(nu))
    out = out - interior_vector(sharp_apply(lam, nu), de_rham(mu))
    out = out + de_rham(pair(lam, mu, nu))
    return out


def t1_bracket(x_pair, y_pair):
    """Bracket of first-order differential operators (sections of TM + R):
    [(X,f),(Y,g)] = ([X,Y], X(g) - Y(f))."""
    x, f = x_pair
    y, g = y_pair
    return lie_bracket(x, y), directional(x, g) - directional(y, f)


def kirillov_bracket(j: FirstOrderBiDiffOp, mu_f, nu_g, total: Chart | None = None):
    """Bracket on sections of T*M + R, computed through its defining property:
    bracketing the fiber-linear functions iota_(mu,f) with the Jacobi lift of
    J reads off the resulting section.  Raises if the result fails to be
    fiber-linear (it always is for skew J)."""
    from .lifts import jacobi_lift, lift_charts

    mu, f = mu_f
    nu, g = nu_g
    base = j.chart
    tan, e_chart = lift_charts(base)
    if total is not None and total != e_chart:
        raise ChartError("unexpected total chart for the Jacobi lift")
    jhat = jacobi_lift(j)
    phi = iota_pair(mu, f, e_chart)
    psi = iota_pair(nu, g, e_chart)
    h = jhat.bracket(phi, psi)
    return _read_section_t1(h, base, e_chart)


def _read_section_t1(h: ExpPoly, base: Chart, e_chart: Chart):
    """Split a fiber-linear function on TM x R into a (1-form, function) pair."""
    fibers = [e_chart.fiber_over(v.name).name for v in base.vars] + ["t"]
    parts = h.split_by_degree(fibers)
    if set(parts) - {1}:
        bad = {d: str(p) for d, p in parts.items() if d != 1}
        raise ChartError(f"bracket of linear functions is not fiber-linear: {bad}")
    lin = parts.get(1, ExpPoly.zero(e_chart))
    comps = {}
    for i, v in enumerate(base.vars):
        c = lin.coefficient_of_var(e_chart.fiber_over(v.name).name)
        if not c.is_zero():
            comps[(i,)] = c.substitute({}, base)
    gout = lin.coefficient_of_var("t").substitute({}, base)
    return CovariantField(base, 1, comps), gout


def kirillov_bracket_explicit(j: FirstOrderBiDiffOp, mu_f, nu_g):
    """The closed formula for skew J = (Lambda, Gamma):

      ( L_{sharp(a)}b - L_{sharp(b)}a - d<L,a(x)b> + f L_G b - g L_G a - i_G(a^b),
        <L, b(x)a> + sharp(a)(g) - sharp(b)(f) + f G(g) - g G(f) ).
    """
    lam, gam = j.skew_pair()
    alpha, f = mu_f
    beta, g = nu_g
    sa = sharp_apply(lam, alpha)
    sb = sharp_apply(lam, beta)
    form = lie_derivative_chart(sa, beta) - lie_derivative_chart(sb, alpha)
    form = form - de_rham(pair(lam, alpha, beta))
    form = form + lie_derivative_chart(gam, beta).scale(f) - lie_derivative_chart(gam, alpha).scale(g)
    form = form - interior_vector(gam, alpha.wedge(beta))
    func = pair(lam, beta, alpha)
    func = func + directional(sa, g) - directional(sb, f)
    func = func + f * directional(gam, g) - g * directional(gam, f)
    return form, func
