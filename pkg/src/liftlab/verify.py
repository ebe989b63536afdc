"""Relatedness checkers and the executable theorem suites.

F-relatedness of bracket structures, {f o F, g o F}_A = {f, g}_B o F for all
functions f, g, is decided on a finite generating set: biderivations are
determined by their values on pairs of coordinate functions, and first-order
bidifferential operators additionally need the constant 1 (the values on
{1, coordinates} recover the full decomposition Lambda / Gamma_1 / Gamma_2 /
alpha of the operator).  Bracket-homomorphism conditions are checked on the
module-generating set {coordinate forms, coordinate * coordinate forms},
which separates first-order-differential expressions in the form arguments.
Every check is an exact polynomial identity; reports carry the nonzero
residual of each failing condition.
"""

from __future__ import annotations

import itertools

from .chart import Chart, prolong
from .coeff import ExpPoly
from .calculus import (bracket_one_forms, function_bracket, kirillov_bracket,
                       lie_bracket, schouten_nijenhuis, t1_bracket)
from .geometry import (BundleMorphism, CovariantField, FirstOrderBiDiffOp,
                       MultiVector, antisymmetrize, canonical_poisson, euler,
                       sharp, sharp_apply, transport)
from .algebroid import (AlgebroidSpec, JacobiAlgebroidSpec,
                        dual_bracket_induced)
from .lifts import (algebroid_complete_lift, breve, complete_lift_tangent,
                    gauge_pphi, jacobi_lift, jacobi_lift_algebroid,
                    lift_charts, poisson_lift, poisson_lift_algebroid,
                    poissonization, tilde)
from .report import Report

__all__ = [
    "Report", "is_poisson", "is_jacobi", "check_related_tensor",
    "check_related_bidiff", "canonical_jacobi_structure",
    "theorem6_suite", "theorem7_suite", "theorem8_suite", "theorem10_suite",
    "lemma1_suite", "lemma2_suite", "sn_axiom_battery",
]


def is_poisson(lam: MultiVector) -> bool:
    """[[Lambda, Lambda]] = 0."""
    return schouten_nijenhuis(lam, lam).is_zero()


def is_jacobi(j) -> bool:
    """Skew operator with [[Gamma,Lambda]] = 0 and [[Lambda,Lambda]] = -2 Gamma ^ Lambda."""
    if isinstance(j, tuple):
        lam, gam = j
    else:
        if not j.is_skew():
            return False
        lam, gam = j.skew_pair()
    if not schouten_nijenhuis(gam, lam).is_zero():
        return False
    return (schouten_nijenhuis(lam, lam) + gam.wedge(lam).scale(2)).is_zero()


def _related(f: BundleMorphism, a, b, include_one: bool, suite: str, target: str = "") -> Report:
    rep = Report(suite, target)
    probes = []
    if include_one:
        probes.append(("1", ExpPoly.const(f.target, 1)))
    probes.extend((n, ExpPoly.var(f.target, n)) for n in f.target.names)
    for nu, u in probes:
        for nv, v in probes:
            lhs = function_bracket(a, f.pullback(u), f.pullback(v))
            rhs = f.pullback(function_bracket(b, u, v))
            rep.add_residual(f"({nu},{nv})", lhs - rhs)
    return rep


def check_related_tensor(f: BundleMorphism, a, b, suite: str = "related") -> Report:
    """A (source) and B (target) are f-related as biderivations: checked on
    every ordered pair of target coordinates."""
    return _related(f, a, b, include_one=False, suite=suite)


def check_related_bidiff(f: BundleMorphism, a, b, suite: str = "related") -> Report:
    """As above for first-order operators; the probe set includes the
    constant 1 since the brackets are not biderivations."""
    return _related(f, a, b, include_one=True, suite=suite)


def canonical_jacobi_structure(m: Chart) -> FirstOrderBiDiffOp:
    """J_M = Lambda_M + Delta_{T*M} ^ d/dlambda + d/dlambda ^ I on T*M x R."""
    dual = prolong(prolong(m, "cotangent"), "times_R", name="lambda")
    lam_m = canonical_poisson(dual)
    delta = euler(dual, roles={"cotangent-fiber"})
    dl = MultiVector.direction(dual, "lambda")
    return FirstOrderBiDiffOp.from_pair(lam_m + delta.wedge(dl), -dl)


def _one_form_probes(m: Chart):
    """Generating set {dx^a} + {x^b dx^a} of 1-forms with coefficients."""
    probes = []
    for a in range(m.nvars):
        probes.append((f"d{m.vars[a].name}",
                       CovariantField(m, 1, {(a,): ExpPoly.const(m, 1)})))
    for b in range(m.nvars):
        xb = ExpPoly.var(m, m.vars[b].name)
        for a in range(m.nvars):
            probes.append((f"{m.vars[b].name}*d{m.vars[a].name}",
                           CovariantField(m, 1, {(a,): xb})))
    return probes


def _mv_residual_witness(label, res, rep):
    if res.is_zero():
        rep.add(label, True)
    else:
        rep.add(label, False, f"residual = {res}")


# -- Theorem on Poisson tensors (two-contravariant Lambda on M) ---------------

def theorem6_suite(lam, f: BundleMorphism | None = None, lam1=None,
                   target: str = "") -> Report:
    """Conditions (i)-(vii) for a two-contravariant tensor on M, with the
    canonical witnesses F = sharp(Lambda) and Lambda_1 = -Lambda by default.
    Records the equivalence pattern of (i), (ii), (iii)."""
    rep = Report("thm6", target)
    if isinstance(lam, MultiVector):
        lam_t = lam.expand()
    else:
        lam_t = lam
    m = lam_t.chart
    skew = antisymmetrize(lam_t)
    is_skew = skew.expand() == lam_t

    # (i) Lambda is a Poisson tensor
    if not is_skew:
        sym = lam_t - skew.expand()
        rep.add("i", False, f"not skew-symmetric: {sym}")
        cond_i = False
    else:
        res = schouten_nijenhuis(skew, skew)
        cond_i = res.is_zero()
        _mv_residual_witness("i", res, rep)

    # (ii) sharp is a homomorphism of [.,.]_Lambda into vector fields
    probes = _one_form_probes(m)
    cond_ii = True
    worst = None
    for (nu, mu), (nv, nu_f) in itertools.product(probes, probes):
        lhs = sharp_apply(lam_t, bracket_one_forms(lam_t, mu, nu_f))
        rhs = lie_bracket(sharp_apply(lam_t, mu), sharp_apply(lam_t, nu_f))
        res = lhs - rhs
        if not res.is_zero():
            cond_ii = False
            worst = worst or f"[{nu},{nv}]: residual = {res}"
    rep.add("ii", cond_ii, worst or "")

    # (iii) Lambda_M and -Lambda^c are sharp-related
    cot = prolong(m, "cotangent")
    lam_m = canonical_poisson(cot)
    lift = complete_lift_tangent(lam_t)
    sharp_lam = sharp(lam_t)
    sub = check_related_tensor(sharp_lam, lam_m, -lift)
    cond_iii = sub.passed
    rep.add("iii", cond_iii, _first_witness(sub))

    # (iv)/(vi): supplied morphism, default sharp(Lambda)
    f = f or sharp_lam
    sub = check_related_tensor(f, lam_m, -lift)
    rep.add("iv", sub.passed, _first_witness(sub))
    cond_vi = True
    worst = None
    for (nu, mu), (nv, nu_f) in itertools.product(probes, probes):
        lhs = _apply_morphism_form(f, m, bracket_one_forms(lam_t, mu, nu_f))
        rhs = lie_bracket(_apply_morphism_form(f, m, mu), _apply_morphism_form(f, m, nu_f))
        res = lhs - rhs
        if not res.is_zero():
            cond_vi = False
            worst = worst or f"[{nu},{nv}]: residual = {res}"
    rep.add("vi", cond_vi, worst or "")

    # (v)/(vii): supplied second tensor, default -Lambda
    if lam1 is None:
        lam1_t = -lam_t
    else:
        lam1_t = lam1.expand() if isinstance(lam1, MultiVector) else lam1
    sub = check_related_tensor(sharp_lam, lam_m, complete_lift_tangent(lam1_t))
    rep.add("v", sub.passed, _first_witness(sub))
    # exchanged orientation, the roles of the two tensors swapped
    sub = check_related_tensor(sharp(-lam1_t), lam_m, -complete_lift_tangent(-lam1_t))
    rep.add("v-exchanged", sub.passed, _first_witness(sub))
    cond_vii = True
    worst = None
    for (nu, mu), (nv, nu_f) in itertools.product(probes, probes):
        lhs = sharp_apply(lam_t, bracket_one_forms(-lam1_t, mu, nu_f))
        rhs = lie_bracket(sharp_apply(lam_t, mu), sharp_apply(lam_t, nu_f))
        res = lhs - rhs
        if not res.is_zero():
            cond_vii = False
            worst = worst or f"[{nu},{nv}]: residual = {res}"
    rep.add("vii", cond_vii, worst or "")

    rep.add("equivalence(i,ii,iii)", cond_i == cond_ii == cond_iii,
            f"i={cond_i} ii={cond_ii} iii={cond_iii}")
    return rep


def _apply_morphism_form(f: BundleMorphism, m: Chart, mu: CovariantField) -> MultiVector:
    """Apply a fiber-linear morphism T*M -> TM to a 1-form with coefficients."""
    out: dict = {}
    for (i,), v in mu.comps.items():
        p_name = f.source.fiber_over(m.vars[i].name).name
        for w in m.vars:
            fiber = f.target.fiber_over(w.name).name
            coeff = f.fiber_map.get(fiber, ExpPoly.zero(f.source)).coefficient_of_var(p_name)
            if coeff.is_zero():
                continue
            cm = coeff.substitute({}, m) * v
            key = (m.index(w.name),)
            out[key] = out.get(key, ExpPoly.zero(m)) + cm
    return MultiVector(m, 1, out)


def _first_witness(rep: Report) -> str:
    for c in rep.conditions:
        if not c.passed:
            return f"{c.label}: {c.witness}"
    return ""


# -- Lie algebroid version ----------------------------------------------------

def theorem7_suite(spec: AlgebroidSpec, p: MultiVector, target: str = "") -> Report:
    """(i) [[P,P]] = 0; (ii) sharp_P homomorphism of the induced bracket on
    1-forms into the algebroid bracket; (iii) Lambda^{E*} and -P^c are
    sharp_P-related."""
    rep = Report("thm7", target)
    res = spec.schouten(p, p)
    cond_i = res.is_zero()
    _mv_residual_witness("i", res, rep)

    probes = _frame_form_probes(spec)
    cond_ii = True
    worst = None
    for (nu, mu), (nv, nu_f) in itertools.product(probes, probes):
        br = dual_bracket_induced(spec, p, mu, nu_f)
        lhs = spec.sharp_section(p, br)
        rhs = spec.section_bracket(spec.sharp_section(p, mu), spec.sharp_section(p, nu_f))
        r = lhs - rhs
        if not r.is_zero():
            cond_ii = False
            worst = worst or f"[{nu},{nv}]: residual = {r}"
    rep.add("ii", cond_ii, worst or "")

    sub = check_related_tensor(spec.sharp_morphism(p), spec.linear_poisson(),
                               -algebroid_complete_lift(spec, p))
    cond_iii = sub.passed
    rep.add("iii", cond_iii, _first_witness(sub))
    rep.add("equivalence(i,ii,iii)", cond_i == cond_ii == cond_iii,
            f"i={cond_i} ii={cond_ii} iii={cond_iii}")
    return rep


def _frame_form_probes(spec: AlgebroidSpec):
    probes = []
    for i in range(spec.rank):
        probes.append((f"e*{i + 1}", spec.frame_form(1, {(i,): 1})))
    for b in spec.base.names:
        for i in range(spec.rank):
            probes.append((f"{b}*e*{i + 1}",
                           spec.frame_form(1, {(i,): ExpPoly.var(spec.base, b)})))
    return probes


# -- Jacobi structures on M ----------------------------------------------------

def theorem8_suite(j: FirstOrderBiDiffOp, j1: FirstOrderBiDiffOp | None = None,
                   target: str = "") -> Report:
    """Conditions (J1)-(J10) for a first-order bidifferential operator, the
    existential ones evaluated at the supplied witness J1 (default J)."""
    rep = Report("thm8", target)
    m = j.chart
    j1 = j1 if j1 is not None else j

    cond_j1 = is_jacobi(j)
    rep.add("J1", cond_j1, "" if cond_j1 else "bracket identities fail or operator not skew")

    jm = canonical_jacobi_structure(m)
    jhat = jacobi_lift(j)
    jhat1 = jacobi_lift(j1)
    jchat = poisson_lift(j)
    jchat1 = poisson_lift(j1)
    sharp_j = sharp(j)
    sharp_j1 = sharp(j1)
    lam_m = canonical_poisson(sharp_j.source)

    sub = check_related_bidiff(sharp_j, jm, -jhat)
    cond_j2 = sub.passed
    rep.add("J2", cond_j2, _first_witness(sub))
    sub = check_related_bidiff(sharp_j1, jm, -jhat)
    rep.add("J3", sub.passed, _first_witness(sub))
    sub = check_related_bidiff(sharp_j, jm, -jhat1)
    rep.add("J4", sub.passed, _first_witness(sub))

    sub = check_related_tensor(sharp_j, lam_m, -jchat)
    cond_j5 = sub.passed
    rep.add("J5", cond_j5, _first_witness(sub))
    sub = check_related_tensor(sharp_j1, lam_m, -jchat)
    rep.add("J6", sub.passed, _first_witness(sub))
    sub = check_related_tensor(sharp_j, lam_m, -jchat1)
    rep.add("J7", sub.passed, _first_witness(sub))

    cond_j8, w8 = _bracket_homomorphism_t1(j, j, j)
    rep.add("J8", cond_j8, w8)
    ok, w = _bracket_homomorphism_t1(j, j1, j1)
    rep.add("J9", ok, w)
    ok, w = _bracket_homomorphism_t1(j1, j, j)
    rep.add("J10", ok, w)

    rep.add("equivalence(J1,J2,J5,J8)", cond_j1 == cond_j2 == cond_j5 == cond_j8,
            f"J1={cond_j1} J2={cond_j2} J5={cond_j5} J8={cond_j8}")
    return rep


def _section_probes_t1(m: Chart):
    """Generating set {(dx^a,0), (x^b dx^a,0), (0,1), (0,x^b)}."""
    probes = []
    zero_form = CovariantField.zero(m, 1)
    for nu, mu in _one_form_probes(m):
        probes.append(((nu, "0"), (mu, ExpPoly.zero(m))))
    probes.append((("0", "1"), (zero_form, ExpPoly.const(m, 1))))
    for b in m.names:
        probes.append((("0", b), (zero_form, ExpPoly.var(m, b))))
    return probes


def _sharp_section_t1(j: FirstOrderBiDiffOp, mu: CovariantField, f: ExpPoly):
    """sharp_J(mu, f) = (sharp_Lambda(mu) + f Gamma1, <mu, Gamma2> + alpha f)."""
    m = j.chart
    vec = sharp_apply(j.lam, mu) + antisymmetrize(j.gamma1).scale(f)
    func = j.alpha * f
    for (i,), v in j.gamma2.comps.items():
        func = func + v * mu.component((i,))
    return vec, func


def _bracket_homomorphism_t1(j_bracket, j_sharp, j_sharp2):
    """sharp_{J'}([(mu,f),(nu,g)]_J) = [sharp_{J'}(mu,f), sharp_{J'}(nu,g)]_1."""
    m = j_bracket.chart
    probes = _section_probes_t1(m)
    for (lbl_a, (mu, f)), (lbl_b, (nu, g)) in itertools.product(probes, probes):
        br_form, br_func = kirillov_bracket(j_bracket, (mu, f), (nu, g))
        lhs = _sharp_section_t1(j_sharp, br_form, br_func)
        rhs = t1_bracket(_sharp_section_t1(j_sharp2, mu, f),
                         _sharp_section_t1(j_sharp2, nu, g))
        res_v = lhs[0] - rhs[0]
        res_f = lhs[1] - rhs[1]
        if not (res_v.is_zero() and res_f.is_zero()):
            witness = res_v if not res_v.is_zero() else res_f
            la = f"({lbl_a[0]},{lbl_a[1]})"
            lb = f"({lbl_b[0]},{lbl_b[1]})"
            return False, f"[{la},{lb}]: residual = {witness}"
    return True, ""


# -- Jacobi algebroid version ---------------------------------------------------

def theorem10_suite(jspec: JacobiAlgebroidSpec, j: MultiVector, target: str = "") -> Report:
    """(1) [[J,J]]_Phi = 0; (2) J_Phi^{E*} and -J^_Phi are sharp_J-related;
    (3) Lambda^{E*} and -J^c_Phi are sharp_J-related; (4) sharp_J is a
    homomorphism of the d^Phi-induced bracket on 1-forms."""
    rep = Report("thm10", target)
    spec = jspec.algebroid

    res = jspec.deformed_schouten(j, j)
    cond1 = res.is_zero()
    _mv_residual_witness("1", res, rep)

    sharp_j = spec.sharp_morphism(j)
    b_dual, v_dual = jspec.canonical_jacobi_dual()
    a_op = FirstOrderBiDiffOp.from_pair(b_dual, v_dual)
    b_pair = jacobi_lift_algebroid(jspec, j)
    b_op = FirstOrderBiDiffOp.from_pair(b_pair[0], b_pair[1])
    sub = check_related_bidiff(sharp_j, a_op, -b_op)
    cond2 = sub.passed
    rep.add("2", cond2, _first_witness(sub))

    sub = check_related_tensor(sharp_j, spec.linear_poisson(),
                               -poisson_lift_algebroid(jspec, j))
    cond3 = sub.passed
    rep.add("3", cond3, _first_witness(sub))

    probes = _frame_form_probes(spec)
    cond4 = True
    worst = None
    for (nu, mu), (nv, nu_f) in itertools.product(probes, probes):
        br = dual_bracket_induced(jspec, j, mu, nu_f)
        lhs = spec.sharp_section(j, br)
        rhs = spec.section_bracket(spec.sharp_section(j, mu), spec.sharp_section(j, nu_f))
        r = lhs - rhs
        if not r.is_zero():
            cond4 = False
            worst = worst or f"[{nu},{nv}]: residual = {r}"
    rep.add("4", cond4, worst or "")

    rep.add("equivalence(1,2,3,4)", cond1 == cond2 == cond3 == cond4,
            f"1={cond1} 2={cond2} 3={cond3} 4={cond4}")
    return rep


# -- transport lemmas -----------------------------------------------------------

def _fiber_monomials(ch: Chart, fiber_names, base_factor: str | None, max_deg: int = 2):
    """All fiber monomials of degree <= max_deg, optionally times a base variable."""
    out = [ExpPoly.const(ch, 1)]
    for d in range(1, max_deg + 1):
        for combo in itertools.combinations_with_replacement(fiber_names, d):
            mono = ExpPoly.const(ch, 1)
            for n in combo:
                mono = mono * ExpPoly.var(ch, n)
            out.append(mono)
    if base_factor is not None:
        xb = ExpPoly.var(ch, base_factor)
        out = out + [xb * m for m in out if not (xb * m).is_zero()]
    return out


def lemma1_suite(j: FirstOrderBiDiffOp, target: str = "") -> Report:
    """Items (a)-(f) of the transport lemma linking the lifts of J with the
    tangent lift of its poissonization."""
    rep = Report("lemma1", target)
    m = j.chart
    tan, e_chart = lift_charts(m)
    dual = prolong(prolong(m, "cotangent"), "times_R", name="lambda")
    ms = prolong(m, "times_R", name="s")
    tms = prolong(ms, "tangent")
    cot_ms = prolong(ms, "cotangent")
    e_ext = prolong(e_chart, "times_R", name="s")
    dual_ext = prolong(dual, "times_R", name="s")

    pj = poissonization(j)
    sharp_pj = sharp(pj)  # T*(MxR) -> T(MxR)
    sharp_j = sharp(j)    # T*M + R -> TM + R
    # identify E x R with T(M x R) and E* x R with T*(M x R)
    rename_e = {"t": tms.fiber_over("s").name}
    rename_dual = {"lambda": cot_ms.fiber_over("s").name}

    e_fibers = [e_chart.fiber_over(v.name).name for v in m.vars] + ["t"]
    dual_fibers = [dual.fiber_over(v.name).name for v in m.vars] + ["lambda"]
    battery_e = _fiber_monomials(e_chart, e_fibers, m.vars[0].name)
    battery_dual = _fiber_monomials(dual, dual_fibers, m.vars[0].name)

    # (a) injectivity: evaluation at s = 0 undoes the transports
    ok = True
    for phi in battery_e:
        br = breve(phi, e_ext)
        back = br.substitute({"s": ExpPoly.zero(e_chart)}, e_chart)
        ok = ok and back == phi
    for phi in battery_dual:
        tl = tilde(phi, dual_ext)
        ok = ok and tl.substitute({"s": ExpPoly.zero(dual)}, dual) == phi
    rep.add("a", ok)

    # (b) breve(phi) o sharp_{P_J} = tilde(phi o sharp_J)
    okb = True
    worst = None
    for phi in battery_e:
        lhs = sharp_pj.pullback(transport(breve(phi, e_ext), tms, rename_e))
        rhs = transport(tilde(sharp_j.pullback(phi), dual_ext), cot_ms, rename_dual)
        res = lhs - rhs
        if not res.is_zero():
            okb = False
            worst = worst or f"phi={phi}: residual = {res}"
    rep.add("b", okb, worst or "")

    # (c) {breve phi, breve psi}_{P_J^c} = breve({phi,psi}_{Jhat})
    pjc = complete_lift_tangent(pj)
    jhat = jacobi_lift(j)
    okc = True
    worst = None
    pair_battery = _fiber_monomials(e_chart, e_fibers, None)
    for phi, psi in itertools.product(pair_battery, pair_battery):
        lhs = function_bracket(pjc, transport(breve(phi, e_ext), tms, rename_e),
                               transport(breve(psi, e_ext), tms, rename_e))
        rhs = transport(breve(jhat.bracket(phi, psi), e_ext), tms, rename_e)
        res = lhs - rhs
        if not res.is_zero():
            okc = False
            worst = worst or f"(phi,psi)=({phi},{psi}): residual = {res}"
    rep.add("c", okc, worst or "")

    # (d) {tilde phi, tilde psi}_{Lambda_{MxR}} = tilde({phi,psi}_{J_M})
    lam_mr = canonical_poisson(cot_ms)
    jm = canonical_jacobi_structure(m)
    okd = True
    worst = None
    pair_battery_d = _fiber_monomials(dual, dual_fibers, None)
    for phi, psi in itertools.product(pair_battery_d, pair_battery_d):
        lhs = function_bracket(lam_mr, transport(tilde(phi, dual_ext), cot_ms, rename_dual),
                               transport(tilde(psi, dual_ext), cot_ms, rename_dual))
        rhs = transport(tilde(jm.bracket(phi, psi), dual_ext), cot_ms, rename_dual)
        res = lhs - rhs
        if not res.is_zero():
            okd = False
            worst = worst or f"(phi,psi)=({phi},{psi}): residual = {res}"
    rep.add("d", okd, worst or "")

    # (e) linear functions: bracket by J^c instead of Jhat
    jchat = poisson_lift(j)
    oke = True
    worst = None
    linear_e = [ExpPoly.var(e_chart, n) for n in e_fibers]
    linear_e += [ExpPoly.var(e_chart, m.vars[0].name) * ExpPoly.var(e_chart, n) for n in e_fibers]
    for phi, psi in itertools.product(linear_e, linear_e):
        lhs = function_bracket(pjc, transport(breve(phi, e_ext), tms, rename_e),
                               transport(breve(psi, e_ext), tms, rename_e))
        rhs = transport(breve(function_bracket(jchat, phi, psi), e_ext), tms, rename_e)
        res = lhs - rhs
        if not res.is_zero():
            oke = False
            worst = worst or f"(phi,psi)=({phi},{psi}): residual = {res}"
    rep.add("e", oke, worst or "")

    # (f) linear functions on E*: product Poisson structure Lambda_M
    lam_m_prod = canonical_poisson(dual)
    okf = True
    worst = None
    linear_d = [ExpPoly.var(dual, n) for n in dual_fibers]
    linear_d += [ExpPoly.var(dual, m.vars[0].name) * ExpPoly.var(dual, n) for n in dual_fibers]
    for phi, psi in itertools.product(linear_d, linear_d):
        lhs = function_bracket(lam_mr, transport(tilde(phi, dual_ext), cot_ms, rename_dual),
                               transport(tilde(psi, dual_ext), cot_ms, rename_dual))
        rhs = transport(tilde(function_bracket(lam_m_prod, phi, psi), dual_ext),
                        cot_ms, rename_dual)
        res = lhs - rhs
        if not res.is_zero():
            okf = False
            worst = worst or f"(phi,psi)=({phi},{psi}): residual = {res}"
    rep.add("f", okf, worst or "")
    return rep


def lemma2_suite(jspec: JacobiAlgebroidSpec, j: MultiVector, target: str = "") -> Report:
    """Jacobi-algebroid analogue of the transport lemma, over the extended
    algebroid on M x R(s)."""
    rep = Report("lemma2", target)
    spec = jspec.algebroid
    hat = jspec.extend_hat()
    pj = gauge_pphi(jspec, j, hat)
    sharp_p = hat.sharp_morphism(pj)
    sharp_j = spec.sharp_morphism(j)

    battery_e = _fiber_monomials(spec.total, spec.fiber_names, spec.base.names[0])
    battery_d = _fiber_monomials(spec.dual, spec.dual_names, spec.base.names[0])

    ok = True
    for phi in battery_e:
        br = breve(phi, hat.total)
        ok = ok and br.substitute({"s": ExpPoly.zero(spec.total)}, spec.total) == phi
    for phi in battery_d:
        tl = tilde(phi, hat.dual)
        ok = ok and tl.substitute({"s": ExpPoly.zero(spec.dual)}, spec.dual) == phi
    rep.add("a", ok)

    okb = True
    worst = None
    for phi in battery_e:
        lhs = sharp_p.pullback(breve(phi, hat.total))
        rhs = tilde(sharp_j.pullback(phi), hat.dual)
        res = lhs - rhs
        if not res.is_zero():
            okb = False
            worst = worst or f"phi={phi}: residual = {res}"
    rep.add("b", okb, worst or "")

    pjc = algebroid_complete_lift(hat, pj)
    jhat_pair = jacobi_lift_algebroid(jspec, j)
    jhat_op = FirstOrderBiDiffOp.from_pair(jhat_pair[0], jhat_pair[1])
    okc = True
    worst = None
    pair_battery = _fiber_monomials(spec.total, spec.fiber_names, None)
    for phi, psi in itertools.product(pair_battery, pair_battery):
        lhs = function_bracket(pjc, breve(phi, hat.total), breve(psi, hat.total))
        rhs = breve(jhat_op.bracket(phi, psi), hat.total)
        res = lhs - rhs
        if not res.is_zero():
            okc = False
            worst = worst or f"(phi,psi)=({phi},{psi}): residual = {res}"
    rep.add("c", okc, worst or "")

    lam_hat = hat.linear_poisson()
    jdual_op = FirstOrderBiDiffOp.from_pair(*jspec.canonical_jacobi_dual())
    okd = True
    worst = None
    pair_battery_d = _fiber_monomials(spec.dual, spec.dual_names, None)
    for phi, psi in itertools.product(pair_battery_d, pair_battery_d):
        lhs = function_bracket(lam_hat, tilde(phi, hat.dual), tilde(psi, hat.dual))
        rhs = tilde(jdual_op.bracket(phi, psi), hat.dual)
        res = lhs - rhs
        if not res.is_zero():
            okd = False
            worst = worst or f"(phi,psi)=({phi},{psi}): residual = {res}"
    rep.add("d", okd, worst or "")

    jc_lift = poisson_lift_algebroid(jspec, j)
    oke = True
    worst = None
    linear_e = [ExpPoly.var(spec.total, n) for n in spec.fiber_names]
    linear_e += [ExpPoly.var(spec.total, spec.base.names[0]) * v for v in linear_e]
    for phi, psi in itertools.product(linear_e, linear_e):
        lhs = function_bracket(pjc, breve(phi, hat.total), breve(psi, hat.total))
        rhs = breve(function_bracket(jc_lift, phi, psi), hat.total)
        res = lhs - rhs
        if not res.is_zero():
            oke = False
            worst = worst or f"(phi,psi)=({phi},{psi}): residual = {res}"
    rep.add("e", oke, worst or "")

    lam_e = spec.linear_poisson()
    okf = True
    worst = None
    linear_d = [ExpPoly.var(spec.dual, n) for n in spec.dual_names]
    linear_d += [ExpPoly.var(spec.dual, spec.base.names[0]) * v for v in linear_d]
    for phi, psi in itertools.product(linear_d, linear_d):
        lhs = function_bracket(lam_hat, tilde(phi, hat.dual), tilde(psi, hat.dual))
        rhs = tilde(function_bracket(lam_e, phi, psi), hat.dual)
        res = lhs - rhs
        if not res.is_zero():
            okf = False
            worst = worst or f"(phi,psi)=({phi},{psi}): residual = {res}"
    rep.add("f", okf, worst or "")
    return rep


# -- randomized identity battery (shared by CLI and tests) ----------------------

def sn_axiom_battery(ch: Chart, rng, count: int = 100, max_degree: int = 3,
                     coeff_degree: int = 2) -> Report:
    """Graded antisymmetry, graded Jacobi identity and the graded Leibniz rule
    of the Schouten-Nijenhuis bracket on random multivectors."""
    from .rand import random_multivector

    rep = Report("sn-axioms")
    ok_anti = ok_jac = ok_leib = True
    for _ in range(count):
        da = rng.randint(0, max_degree)
        db = rng.randint(0, max_degree)
        dc = rng.randint(0, min(max_degree, 2))
        a = random_multivector(ch, da, rng, coeff_degree)
        b = random_multivector(ch, db, rng, coeff_degree)
        c = random_multivector(ch, dc, rng, coeff_degree)
        sa, sb = da - 1, db - 1
        anti = schouten_nijenhuis(a, b) + schouten_nijenhuis(b, a).scale(
            1 if (sa * sb) % 2 == 0 else -1)
        ok_anti = ok_anti and anti.is_zero()
        jac = schouten_nijenhuis(schouten_nijenhuis(a, b), c) \
            - schouten_nijenhuis(a, schouten_nijenhuis(b, c)) \
            + schouten_nijenhuis(b, schouten_nijenhuis(a, c)).scale(
                1 if (sa * sb) % 2 == 0 else -1)
        ok_jac = ok_jac and jac.is_zero()
        if b.degree + c.degree >= 1:
            leib = schouten_nijenhuis(a, b.wedge(c)) \
                - schouten_nijenhuis(a, b).wedge(c) \
                - b.wedge(schouten_nijenhuis(a, c)).scale(
                    1 if (sa * b.degree) % 2 == 0 else -1)
            ok_leib = ok_leib and leib.is_zero()
    rep.add("graded-antisymmetry", ok_anti)
    rep.add("graded-jacobi", ok_jac)
    rep.add("graded-leibniz", ok_leib)
    return rep
