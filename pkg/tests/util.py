"""Shared constructions and independent closed-formula oracles.

The oracles re-implement, straight from the coordinate displays, the
operations that the library computes by recursion (generator-based brackets,
derivation-rule lifts).  They intentionally share no code with the library
paths they check.
"""

import itertools

from liftlab import (Chart, ExpPoly, FirstOrderBiDiffOp, MultiVector, Q,
                     TensorField, chart, lie_bracket)


# -- standard example structures ------------------------------------------------

def contact_chart() -> Chart:
    return chart("q p u")


def contact_pair(m=None):
    """Lambda = dq^dp + p du^dp, Gamma = du."""
    m = m or contact_chart()
    p = ExpPoly.var(m, "p")
    lam = MultiVector(m, 2, {(0, 1): Q(1), (1, 2): -p})
    gam = MultiVector.direction(m, "u")
    return lam, gam


def contact_operator(m=None) -> FirstOrderBiDiffOp:
    return FirstOrderBiDiffOp.from_pair(*contact_pair(m))


def broken_contact_operator(m=None) -> FirstOrderBiDiffOp:
    m = m or contact_chart()
    lam = MultiVector(m, 2, {(0, 1): Q(1)})
    return FirstOrderBiDiffOp.from_pair(lam, MultiVector.direction(m, "u"))


def so3_linear_tensor(m=None) -> MultiVector:
    """x dy^dz + y dz^dx + z dx^dy on R^3."""
    m = m or chart("x y z")
    x, y, z = (ExpPoly.var(m, n) for n in ("x", "y", "z"))
    return MultiVector(m, 2, {(1, 2): x, (0, 2): -y, (0, 1): z})


def non_poisson_tensor(m=None) -> MultiVector:
    """{x,y} = z, {y,z} = x, {z,x} = x: the coordinate Jacobiator is -z."""
    m = m or chart("x y z")
    x, z = ExpPoly.var(m, "x"), ExpPoly.var(m, "z")
    return MultiVector(m, 2, {(0, 1): z, (1, 2): x, (0, 2): -x})


# -- closed-formula oracles -------------------------------------------------------

def schouten_closed(a: MultiVector, b: MultiVector,
                    sec_bracket=None) -> MultiVector:
    """The sum-over-decomposables coordinate formula

        [[X_1^..^X_m, Y_1^..^Y_n]] =
            sum_{k,l} (-1)^{k+l} [[X_k,Y_l]] ^ X_1^..^X_k-hat^..^Y_l-hat^..^Y_n

    with the term coefficient attached to the first factor of each wedge.
    Only defined for degrees >= 1; sec_bracket defaults to the Lie bracket.
    """
    sec_bracket = sec_bracket or lie_bracket
    ch = a.chart
    out = MultiVector.zero(ch, a.degree + b.degree - 1)
    for key_a, ca in a.comps.items():
        secs_a = _factors(ch, key_a, ca)
        for key_b, cb in b.comps.items():
            secs_b = _factors(ch, key_b, cb)
            for k in range(len(secs_a)):
                for l in range(len(secs_b)):
                    term = sec_bracket(secs_a[k], secs_b[l])
                    for rest in secs_a[:k] + secs_a[k + 1:] + secs_b[:l] + secs_b[l + 1:]:
                        term = term.wedge(rest)
                    if (k + l) % 2 == 1:  # 1-based (-1)^{k+l} equals 0-based parity
                        term = -term
                    out = out + term
    return out


def _factors(ch, key, coeff):
    secs = [MultiVector(ch, 1, {(key[0],): coeff})]
    for i in key[1:]:
        secs.append(MultiVector(ch, 1, {(i,): ExpPoly.const(ch, 1)}))
    return secs


def tangent_lift2_closed(t: TensorField, total: Chart) -> TensorField:
    """Closed coordinate display for a 2-contravariant tensor:
    dT^{ij}/dx^k xdot^k d_{xdot^i} (x) d_{xdot^j}
    + T^{ij} (d_{x^i} (x) d_{xdot^j} + d_{xdot^i} (x) d_{x^j})."""
    m = t.chart
    fib = {i: total.index(total.fiber_over(v.name).name) for i, v in enumerate(m.vars)}
    bas = {i: total.index(v.name) for i, v in enumerate(m.vars)}
    comps = {}

    def add(key, v):
        if not v.is_zero():
            comps[key] = comps.get(key, ExpPoly.zero(total)) + v

    for (i, j), v in t.comps.items():
        for k, w in enumerate(m.vars):
            dv = v.differentiate(w.name)
            if not dv.is_zero():
                add((fib[i], fib[j]),
                    dv.substitute({}, total) * ExpPoly.var(total, total.fiber_over(w.name).name))
        vt = v.substitute({}, total)
        add((bas[i], fib[j]), vt)
        add((fib[i], bas[j]), vt)
    return TensorField(total, 2, comps)


def lift_function_closed(spec, f: ExpPoly) -> ExpPoly:
    """f^c = df/dx^a d^a_j y^j."""
    total = spec.total
    out = ExpPoly.zero(total)
    for a in spec.base.names:
        df = f.differentiate(a)
        if df.is_zero():
            continue
        for j in range(spec.rank):
            dv = spec.d_at(j, a)
            if not dv.is_zero():
                out = out + spec.embed(df) * spec.embed(dv) * ExpPoly.var(total, spec.fiber_names[j])
    return out


def lift_section_closed(spec, comps: dict) -> MultiVector:
    """(X^i e_i)^c = X^i d^a_i d_{x^a} + (X^i c^k_ji + dX^k/dx^a d^a_j) y^j d_{y^k}."""
    total = spec.total
    out: dict = {}

    def add(idx, v):
        if not v.is_zero():
            out[idx] = out.get(idx, ExpPoly.zero(total)) + v

    for i, xi in comps.items():
        for a in spec.base.names:
            dv = spec.d_at(i, a)
            if not dv.is_zero():
                add((total.index(a),), spec.embed(xi) * spec.embed(dv))
    for k in range(spec.rank):
        val = ExpPoly.zero(total)
        for j in range(spec.rank):
            yj = ExpPoly.var(total, spec.fiber_names[j])
            for i, xi in comps.items():
                cv = spec.c_at(j, i, k)
                if not cv.is_zero():
                    val = val + spec.embed(xi) * spec.embed(cv) * yj
            for a in spec.base.names:
                dxk = comps.get(k, ExpPoly.zero(spec.base)).differentiate(a)
                dv = spec.d_at(j, a)
                if not (dxk.is_zero() or dv.is_zero()):
                    val = val + spec.embed(dxk) * spec.embed(dv) * yj
        add((spec.fiber_idx[k],), val)
    return MultiVector(total, 1, out)


def lift_bisection_closed(spec, p: MultiVector) -> MultiVector:
    """P^c = P^{ij} d^a_j d_{y^i} ^ d_{x^a}
           + (P^{kj} c^i_lk + 1/2 dP^{ij}/dx^a d^a_l) y^l d_{y^i} ^ d_{y^j}."""
    total = spec.total
    full = {}
    for (i, j) in itertools.product(range(spec.rank), repeat=2):
        v = p.component((spec.fiber_idx[i], spec.fiber_idx[j]))
        if not v.is_zero():
            full[(i, j)] = v.substitute({}, spec.base)
    out = MultiVector.zero(total, 2)
    for (i, j), pij in full.items():
        for a in spec.base.names:
            dv = spec.d_at(j, a)
            if not dv.is_zero():
                term = MultiVector.direction(total, spec.fiber_names[i], a)
                out = out + term.scale(spec.embed(pij) * spec.embed(dv))
    for i, j in itertools.product(range(spec.rank), repeat=2):
        val = ExpPoly.zero(total)
        for l in range(spec.rank):
            yl = ExpPoly.var(total, spec.fiber_names[l])
            for k in range(spec.rank):
                pkj = full.get((k, j))
                cv = spec.c_at(l, k, i)
                if pkj is not None and not cv.is_zero():
                    val = val + spec.embed(pkj) * spec.embed(cv) * yl
            pij = full.get((i, j))
            if pij is not None:
                for a in spec.base.names:
                    dv = spec.d_at(l, a)
                    dp = pij.differentiate(a)
                    if not (dv.is_zero() or dp.is_zero()):
                        val = val + spec.embed(dp) * spec.embed(dv) * yl * Q(1, 2)
        if not val.is_zero():
            out = out + MultiVector.direction(
                total, spec.fiber_names[i], spec.fiber_names[j]).scale(val)
    return out
