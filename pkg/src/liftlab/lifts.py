"""Lift functors.

The complete tangent lift is computed degree-by-degree through the
derivation rule (X (x) Y)^c = X^c (x) Y^v + X^v (x) Y^c over decomposables,
with f^c = iota_df on functions; the closed coordinate displays serve as
independent oracles in the test-suite.  The same recursion drives the
Lie-algebroid complete lift with

    f^c   = df/dx^a d^a_j y^j,
    e_i^c = d^a_i d/dx^a + c^k_ji y^j d/dy^k.

Jacobi and Poisson lifts of first-order bidifferential operators live on
TM x R with the extra coordinate t, poissonization on M x R(s) with the
exact exp(-s) coefficient, and the gauge map P_Phi embeds multisections
into the extended algebroid over M x R(s) as exp(-(k-1)s) X.
"""

from __future__ import annotations

from .chart import (AUX_LAMBDA, AUX_T, AUX_S, Chart, ChartError, FIBER_ROLES,
                    TANGENT_FIBER, prolong)
from .coeff import ExpPoly
from .algebroid import AlgebroidSpec, JacobiAlgebroidSpec
from .geometry import (FirstOrderBiDiffOp, MultiVector, TensorField,
                       antisymmetrize, euler, interior_form, transport,
                       vertical_lift)


def lift_charts(base: Chart) -> tuple[Chart, Chart]:
    """The charts TM and E = TM x R(t) over a base chart."""
    tan = prolong(base, "tangent")
    return tan, prolong(tan, "times_R", name="t")


def complete_lift_tangent(x, total: Chart | None = None):
    """Complete tangent lift to TM; returns the same kind of object it gets
    (function, tensor, or multivector)."""
    base = x.chart
    if base.fiber_vars():
        raise ChartError("complete lift expects an object on a base chart")
    total = total or prolong(base, "tangent")
    if isinstance(x, ExpPoly):
        out = ExpPoly.zero(total)
        for v in base.vars:
            df = x.differentiate(v.name)
            if not df.is_zero():
                out = out + df.substitute({}, total) * ExpPoly.var(total, total.fiber_over(v.name).name)
        return out
    as_mv = isinstance(x, MultiVector)
    t = x.expand() if as_mv else x
    fiber_idx = {i: total.index(total.fiber_over(v.name).name) for i, v in enumerate(base.vars)}
    base_idx = {i: total.index(v.name) for i, v in enumerate(base.vars)}
    comps: dict = {}

    def add(key, val):
        if not val.is_zero():
            comps[key] = comps.get(key, ExpPoly.zero(total)) + val

    for key, coeff in t.comps.items():
        vert = tuple(fiber_idx[i] for i in key)
        add(vert, complete_lift_tangent(coeff, total))
        cv = coeff.substitute({}, total)
        for slot in range(len(key)):
            add(vert[:slot] + (base_idx[key[slot]],) + vert[slot + 1:], cv)
    lifted = TensorField(total, t.degree, comps)
    return antisymmetrize(lifted) if as_mv else lifted


def algebroid_complete_lift(spec: AlgebroidSpec, x):
    """Complete Lie-algebroid lift of a multisection (or base function) to a
    contravariant tensor on the total space of E."""
    total = spec.total
    if isinstance(x, ExpPoly):
        f = x if x.chart == spec.base else x.substitute({}, spec.base)
        out = ExpPoly.zero(total)
        for a in spec.base.names:
            df = f.differentiate(a)
            if df.is_zero():
                continue
            row = ExpPoly.zero(total)
            for j in range(spec.rank):
                dv = spec.d_at(j, a)
                if not dv.is_zero():
                    row = row + spec.embed(dv) * ExpPoly.var(total, spec.fiber_names[j])
            out = out + spec.embed(df) * row
        return out
    as_mv = isinstance(x, MultiVector)
    t = x.expand() if as_mv else x
    pos = {fi: i for i, fi in enumerate(spec.fiber_idx)}
    frame_lift = [_frame_complete(spec, i) for i in range(spec.rank)]
    comps: dict = {}

    def add(key, val):
        if not val.is_zero():
            comps[key] = comps.get(key, ExpPoly.zero(total)) + val

    for key, coeff in t.comps.items():
        frame = [pos[i] for i in key]
        add(key, algebroid_complete_lift(spec, coeff))
        for slot in range(len(key)):
            for (idx,), v in frame_lift[frame[slot]].items():
                add(key[:slot] + (idx,) + key[slot + 1:], coeff * v)
    lifted = TensorField(total, t.degree, comps)
    return antisymmetrize(lifted) if as_mv else lifted


def _frame_complete(spec: AlgebroidSpec, i: int) -> dict:
    """Components of e_i^c on the total chart."""
    total = spec.total
    out: dict = {}
    for (ii, a_name), dv in spec.d.items():
        if ii == i and not dv.is_zero():
            key = (total.index(a_name),)
            out[key] = out.get(key, ExpPoly.zero(total)) + spec.embed(dv)
    for k in range(spec.rank):
        val = ExpPoly.zero(total)
        for j in range(spec.rank):
            cv = spec.c_at(j, i, k)
            if not cv.is_zero():
                val = val + spec.embed(cv) * ExpPoly.var(total, spec.fiber_names[j])
        if not val.is_zero():
            key = (spec.fiber_idx[k],)
            out[key] = out.get(key, ExpPoly.zero(total)) + val
    return out


# -- lifts of first-order bidifferential operators ---------------------------

def jacobi_lift(j: FirstOrderBiDiffOp) -> FirstOrderBiDiffOp:
    """The first-order operator on TM x R with
    Lambda-part Lambda^c - t Lambda^v + dt (x) (G1^c - t G1^v)
                + (G2^c - t G2^v) (x) dt + (a^c - t a^v) dt (x) dt
    and I-parts G1^v + a^v dt, G2^v + a^v dt."""
    base = j.chart
    tan, e = lift_charts(base)
    t = ExpPoly.var(e, "t")
    dt = TensorField(e, 1, {(e.index("t"),): 1})

    lam_c = transport(complete_lift_tangent(j.lam, tan), e)
    lam_v = transport(vertical_lift(j.lam, tan), e)
    g1c = transport(complete_lift_tangent(j.gamma1, tan), e)
    g1v = transport(vertical_lift(j.gamma1, tan), e)
    g2c = transport(complete_lift_tangent(j.gamma2, tan), e)
    g2v = transport(vertical_lift(j.gamma2, tan), e)
    ac = complete_lift_tangent(j.alpha, tan).substitute({}, e)
    av = j.alpha.substitute({}, e)

    lam_hat = lam_c - lam_v.scale(t)
    lam_hat = lam_hat + dt.tensor(g1c - g1v.scale(t)) + (g2c - g2v.scale(t)).tensor(dt)
    lam_hat = lam_hat + dt.tensor(dt).scale(ac - t * av)
    return FirstOrderBiDiffOp(lam_hat, g1v + dt.scale(av), g2v + dt.scale(av), ExpPoly.zero(e))


def jacobi_lift_pair(j: FirstOrderBiDiffOp) -> tuple[MultiVector, MultiVector]:
    """(bivector, vector) pair of the Jacobi lift of a skew operator:
    (Lambda^c - t Lambda^v + dt ^ (Gamma^c - t Gamma^v), Gamma^v)."""
    if not j.is_skew():
        raise ChartError("jacobi_lift_pair needs a skew operator")
    lifted = jacobi_lift(j)
    return antisymmetrize(lifted.lam), antisymmetrize(lifted.gamma1)


def poisson_lift(j: FirstOrderBiDiffOp) -> TensorField:
    """Lambda^c - t Lambda^v + dt (x) G1^c + G2^c (x) dt
    + (a^c + t a^v) dt (x) dt + Delta_TM (x) G1^v + G2^v (x) Delta_TM."""
    base = j.chart
    tan, e = lift_charts(base)
    t = ExpPoly.var(e, "t")
    dt = TensorField(e, 1, {(e.index("t"),): 1})
    delta = euler(e, roles={TANGENT_FIBER}).expand()

    lam_c = transport(complete_lift_tangent(j.lam, tan), e)
    lam_v = transport(vertical_lift(j.lam, tan), e)
    g1c = transport(complete_lift_tangent(j.gamma1, tan), e)
    g1v = transport(vertical_lift(j.gamma1, tan), e)
    g2c = transport(complete_lift_tangent(j.gamma2, tan), e)
    g2v = transport(vertical_lift(j.gamma2, tan), e)
    ac = complete_lift_tangent(j.alpha, tan).substitute({}, e)
    av = j.alpha.substitute({}, e)

    out = lam_c - lam_v.scale(t) + dt.tensor(g1c) + g2c.tensor(dt)
    out = out + dt.tensor(dt).scale(ac + t * av)
    out = out + delta.tensor(g1v) + g2v.tensor(delta)
    return out


def poissonization(j: FirstOrderBiDiffOp, s_name: str = "s") -> TensorField:
    """P_J = exp(-s) (Lambda + ds (x) G1 + G2 (x) ds + alpha ds (x) ds) on M x R(s)."""
    base = j.chart
    if base.has(s_name):
        raise ChartError(f"chart already carries {s_name!r}")
    ms = prolong(base, "times_R", name=s_name, role=AUX_S)
    ds = TensorField(ms, 1, {(ms.index(s_name),): 1})
    lam = transport(j.lam, ms)
    g1 = transport(j.gamma1, ms)
    g2 = transport(j.gamma2, ms)
    al = j.alpha.substitute({}, ms)
    out = lam + ds.tensor(g1) + g2.tensor(ds) + ds.tensor(ds).scale(al)
    return out.scale(ExpPoly.exp_gen(ms, s_name, -1))


def poissonization_skew(j: FirstOrderBiDiffOp, s_name: str = "s") -> MultiVector:
    """exp(-s)(Lambda + ds ^ Gamma) for skew J, as a bivector field."""
    if not j.is_skew():
        raise ChartError("poissonization_skew needs a skew operator")
    return antisymmetrize(poissonization(j, s_name))


# -- algebroid Jacobi / Poisson lifts ----------------------------------------

def spec_euler(spec: AlgebroidSpec) -> MultiVector:
    """Liouville field of the bundle E: sum y^i d/dy^i over the frame fibers."""
    total = spec.total
    return MultiVector(total, 1, {(fi,): ExpPoly.var(total, total.vars[fi].name)
                                  for fi in spec.fiber_idx})


def jacobi_lift_algebroid(jspec: JacobiAlgebroidSpec, x: MultiVector):
    """X^c - (k-1) iota_Phi X^v + I ^ (i_Phi X)^v as a (tensor, I-part) pair.
    In the vertical representation X^v is X itself."""
    spec = jspec.algebroid
    k = x.degree
    first = algebroid_complete_lift(spec, x)
    if k != 1:
        first = first - x.scale(jspec.iota_phi() * (k - 1))
    second = interior_form(jspec.phi, x)
    return first, second


def poisson_lift_algebroid(jspec: JacobiAlgebroidSpec, x: MultiVector) -> MultiVector:
    """X^c - (k-1) iota_Phi X^v + Delta_E ^ (i_Phi X)^v."""
    first, second = jacobi_lift_algebroid(jspec, x)
    return first + spec_euler(jspec.algebroid).wedge(second)


# -- gauge maps and transports ------------------------------------------------

def gauge_pphi(jspec: JacobiAlgebroidSpec, x: MultiVector,
               hat: AlgebroidSpec | None = None) -> MultiVector:
    """P_Phi(X) = exp(-(k-1)s) U(X) inside the extended algebroid over M x R(s)."""
    hat = hat or jspec.extend_hat()
    u = transport(x, hat.total)
    k = x.degree
    if k == 1:
        return u
    return u.scale(ExpPoly.exp_gen(hat.total, "s", -(k - 1)))


def breve(f: ExpPoly, ext: Chart, s_name: str = "s") -> ExpPoly:
    """Function on E -> function on E x R: exp(s) f."""
    return ExpPoly.exp_gen(ext, s_name, 1) * f.substitute({}, ext)


def tilde(f: ExpPoly, ext: Chart, s_name: str = "s") -> ExpPoly:
    """Function on E* -> function on E* x R: exp(s) f(exp(-s) u); every
    fiber coordinate is rescaled by exp(-s)."""
    es = ExpPoly.exp_gen(ext, s_name, -1)
    scaled_roles = FIBER_ROLES | {AUX_T, AUX_LAMBDA}
    mapping = {v.name: es * ExpPoly.var(ext, v.name)
               for v in f.chart.vars if v.role in scaled_roles}
    return ExpPoly.exp_gen(ext, s_name, 1) * f.substitute(mapping, ext)


def gauge_transport(kind: str, *args, **kwargs):
    """Dispatcher for the transports: 'P_phi', 'breve', 'tilde'."""
    table = {"P_phi": gauge_pphi, "breve": breve, "tilde": tilde}
    try:
        return table[kind](*args, **kwargs)
    except KeyError:
        raise ChartError(f"unknown transport {kind!r}") from None
