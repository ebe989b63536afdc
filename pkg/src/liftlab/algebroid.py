"""Lie and Jacobi algebroids over a single chart.

An algebroid of rank n over a base chart is given by structure functions
c^k_ij(x) (skew in i, j) and an anchor matrix d^a_i(x).  Multisections are
represented through their vertical embedding: a multisection of degree k is
a MultiVector on the total chart (x, y) whose indices are fiber variables
and whose coefficients depend on the base only.  With that representation
the vertical lift of a multisection is the identity and all the generic
wedge/contraction machinery applies unchanged.

A Jacobi algebroid adds a 1-cocycle Phi (a frame 1-form with d Phi = 0).
"""

from __future__ import annotations

import itertools

from .chart import BUNDLE_FIBER, DUAL_FIBER, Chart, ChartError, Var, prolong
from .coeff import ExpPoly, poly
from .calculus import lie_bracket, sgn, sn_generic
from .geometry import (CovariantField, MultiVector, euler, interior_form,
                       interior_vector, sort_with_sign)
from .report import Report


class AlgebroidSpec:
    """Structure functions c^k_ij, anchor d^a_i, and the total/dual charts."""

    def __init__(self, base: Chart, rank: int, c=None, d=None,
                 total: Chart | None = None, dual: Chart | None = None,
                 fiber_names=None, dual_names=None):
        self.base = base
        self.rank = rank
        if total is None:
            fiber_names = fiber_names or [f"y{i + 1}" for i in range(rank)]
            total = Chart(base.vars + tuple(Var(n, BUNDLE_FIBER) for n in fiber_names))
        if fiber_names is None:
            raise ChartError("fiber_names must accompany an explicit total chart")
        if dual is None:
            dual_names = dual_names or [f"xi{i + 1}" for i in range(rank)]
            dual = Chart(base.vars + tuple(Var(n, DUAL_FIBER) for n in dual_names))
        if dual_names is None:
            raise ChartError("dual_names must accompany an explicit dual chart")
        if len(fiber_names) != rank or len(dual_names) != rank:
            raise ChartError("rank does not match the number of fiber coordinates")
        self.total = total
        self.dual = dual
        self.fiber_names = tuple(fiber_names)
        self.dual_names = tuple(dual_names)
        self.fiber_idx = tuple(total.index(n) for n in fiber_names)
        self.dual_idx = tuple(dual.index(n) for n in dual_names)
        if list(self.fiber_idx) != sorted(self.fiber_idx) or list(self.dual_idx) != sorted(self.dual_idx):
            raise ChartError("fiber coordinates must appear in frame order")
        # skew-complete the structure functions unless both orders are given
        self.c: dict[tuple[int, int, int], ExpPoly] = {}
        given = {k: poly(base, v) for k, v in (c or {}).items()}
        for (i, j, k), v in given.items():
            self.c[(i, j, k)] = v
        for (i, j, k), v in given.items():
            if (j, i, k) not in given:
                self.c[(j, i, k)] = -v
        self.d: dict[tuple[int, str], ExpPoly] = {}
        for (i, a), v in (d or {}).items():
            a_name = a if isinstance(a, str) else base.vars[a].name
            base.index(a_name)
            self.d[(i, a_name)] = poly(base, v)
        self._sealed = True

    def __setattr__(self, key, value):
        if getattr(self, "_sealed", False):
            raise AttributeError("AlgebroidSpec is immutable")
        object.__setattr__(self, key, value)

    # -- frame bookkeeping -------------------------------------------------

    def c_at(self, i: int, j: int, k: int) -> ExpPoly:
        return self.c.get((i, j, k), ExpPoly.zero(self.base))

    def d_at(self, i: int, a_name: str) -> ExpPoly:
        return self.d.get((i, a_name), ExpPoly.zero(self.base))

    def embed(self, f: ExpPoly) -> ExpPoly:
        """Pull a base function onto the total chart."""
        return f.substitute({}, self.total) if f.chart != self.total else f

    def embed_dual(self, f: ExpPoly) -> ExpPoly:
        return f.substitute({}, self.dual) if f.chart != self.dual else f

    def section(self, comps) -> MultiVector:
        """Section X^i e_i from per-frame components (list or {frame: value})."""
        if not isinstance(comps, dict):
            comps = {i: v for i, v in enumerate(comps)}
        return self.multisection(1, {(i,): v for i, v in comps.items()})

    def multisection(self, degree: int, comps: dict) -> MultiVector:
        out = {}
        for key, v in comps.items():
            v = poly(self.base, v) if not isinstance(v, ExpPoly) or v.chart == self.base else v
            out[tuple(self.fiber_idx[i] for i in key)] = self.embed(v)
        return MultiVector(self.total, degree, out)

    def frame_form(self, degree: int, comps: dict) -> CovariantField:
        out = {}
        for key, v in comps.items():
            if not isinstance(key, tuple):
                key = (key,)
            v = poly(self.base, v) if not isinstance(v, ExpPoly) or v.chart == self.base else v
            out[tuple(self.fiber_idx[i] for i in key)] = self.embed(v)
        return CovariantField(self.total, degree, out)

    def frame_components(self, obj) -> dict:
        """Components over frame tuples, as base-chart polynomials."""
        pos = {fi: i for i, fi in enumerate(self.fiber_idx)}
        out = {}
        for key, v in obj.comps.items():
            try:
                fkey = tuple(pos[i] for i in key)
            except KeyError:
                raise ChartError("object has non-frame indices") from None
            if not v.depends_only_on(self.base.names):
                raise ChartError("multisection coefficients must be base functions")
            out[fkey] = v.substitute({}, self.base)
        return out

    def frame_section(self, i: int) -> MultiVector:
        return self.multisection(1, {(i,): 1})

    # -- anchor and bracket --------------------------------------------------

    def anchor_vector(self, i: int) -> MultiVector:
        """rho(e_i) = d^a_i d/dx^a as a vector field on the base chart."""
        comps = {}
        for (ii, a_name), v in self.d.items():
            if ii == i and not v.is_zero():
                comps[(self.base.index(a_name),)] = v
        return MultiVector(self.base, 1, comps)

    def rho(self, x: MultiVector, f: ExpPoly) -> ExpPoly:
        """Anchor action rho(X)(f) for a section X and a function on the total chart."""
        out = ExpPoly.zero(self.total)
        pos = {fi: i for i, fi in enumerate(self.fiber_idx)}
        for (idx,), coeff in x.comps.items():
            i = pos[idx]
            for (ii, a_name), dv in self.d.items():
                if ii == i and not dv.is_zero():
                    out = out + coeff * self.embed(dv) * f.differentiate(a_name)
        return out

    def section_bracket(self, x: MultiVector, y: MultiVector) -> MultiVector:
        """[X, Y]^k = X^i Y^j c^k_ij + rho(X)(Y^k) - rho(Y)(X^k)."""
        if x.degree != 1 or y.degree != 1:
            raise ChartError("section bracket needs two sections")
        pos = {fi: i for i, fi in enumerate(self.fiber_idx)}
        out: dict = {}

        def add(k, v):
            if not v.is_zero():
                key = (self.fiber_idx[k],)
                out[key] = out.get(key, ExpPoly.zero(self.total)) + v

        for (ix,), xv in x.comps.items():
            for (iy,), yv in y.comps.items():
                i, j = pos[ix], pos[iy]
                for k in range(self.rank):
                    cv = self.c_at(i, j, k)
                    if not cv.is_zero():
                        add(k, xv * yv * self.embed(cv))
        for (iy,), yv in y.comps.items():
            add(pos[iy], self.rho(x, yv))
        for (ix,), xv in x.comps.items():
            v = self.rho(y, xv)
            if not v.is_zero():
                key = (ix,)
                out[key] = out.get(key, ExpPoly.zero(self.total)) - v
        return MultiVector(self.total, 1, out)

    def schouten(self, a: MultiVector, b: MultiVector) -> MultiVector:
        """Schouten-Nijenhuis bracket of multisections."""
        return sn_generic(a, b, self.section_bracket, self.rho)

    # -- forms ----------------------------------------------------------------

    def form_value(self, mu: CovariantField, frame_key) -> ExpPoly:
        return mu.component(tuple(self.fiber_idx[i] for i in frame_key))

    def exterior_derivative(self, mu) -> CovariantField:
        """d mu evaluated on frame tuples:
        d mu(e_1..e_{k+1}) = sum_i (-1)^{i+1} rho(e_i) mu(..) + sum_{i<j} (-1)^{i+j} mu([e_i,e_j], ..)."""
        if isinstance(mu, ExpPoly):
            mu_t = self.embed(mu)
            comps = {}
            for i in range(self.rank):
                v = self.rho(self.frame_section(i), mu_t)
                if not v.is_zero():
                    comps[(self.fiber_idx[i],)] = v
            return CovariantField(self.total, 1, comps)
        k = mu.degree
        out = {}
        for frame in itertools.combinations(range(self.rank), k + 1):
            val = ExpPoly.zero(self.total)
            for r, i in enumerate(frame):
                rest = frame[:r] + frame[r + 1:]
                inner = self.form_value(mu, rest)
                term = self.rho(self.frame_section(i), inner)
                val = val + (term if r % 2 == 0 else -term)
            for r, s in itertools.combinations(range(len(frame)), 2):
                i, j = frame[r], frame[s]
                rest = tuple(frame[t] for t in range(len(frame)) if t not in (r, s))
                term = ExpPoly.zero(self.total)
                for kk in range(self.rank):
                    cv = self.c_at(i, j, kk)
                    if not cv.is_zero():
                        term = term + self.embed(cv) * self.form_value(mu, (kk,) + rest)
                # (-1)^{i+j} for 1-based positions is (-1)^{r+s} 0-based
                val = val + (term if (r + s) % 2 == 0 else -term)
            if not val.is_zero():
                out[tuple(self.fiber_idx[i] for i in frame)] = val
        return CovariantField(self.total, k + 1, out)

    def lie_derivative(self, x: MultiVector, mu) -> CovariantField:
        """Cartan formula L_X = i_X d + d i_X on frame forms."""
        if isinstance(mu, ExpPoly):
            return CovariantField.from_function(self.rho(x, self.embed(mu)))
        return interior_vector(x, self.exterior_derivative(mu)) + \
            self.exterior_derivative(interior_vector(x, mu))

    # -- the linear Poisson tensor on the dual ---------------------------------

    def linear_poisson(self) -> MultiVector:
        """Lambda^{E*} = 1/2 c^k_ij xi_k d/dxi_i ^ d/dxi_j + d^a_i d/dxi_i ^ d/dx^a."""
        comps: dict = {}

        def add(key, v):
            skey, sign = sort_with_sign(key)
            if sign == 0 or v.is_zero():
                return
            v = v if sign == 1 else -v
            comps[skey] = comps.get(skey, ExpPoly.zero(self.dual)) + v

        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                val = ExpPoly.zero(self.dual)
                for k in range(self.rank):
                    cv = self.c_at(i, j, k)
                    if not cv.is_zero():
                        val = val + self.embed_dual(cv) * ExpPoly.var(self.dual, self.dual_names[k])
                add((self.dual_idx[i], self.dual_idx[j]), val)
        for (i, a_name), dv in self.d.items():
            if dv.is_zero():
                continue
            add((self.dual_idx[i], self.dual.index(a_name)), self.embed_dual(dv))
        return MultiVector(self.dual, 2, comps)

    def iota_dual(self, x: MultiVector) -> ExpPoly:
        """iota_X = X^i xi_i, the fiber-linear function of a section on E*."""
        out = ExpPoly.zero(self.dual)
        for fkey, v in self.frame_components(x).items():
            out = out + self.embed_dual(v) * ExpPoly.var(self.dual, self.dual_names[fkey[0]])
        return out

    def sharp_section(self, p: MultiVector, alpha: CovariantField) -> MultiVector:
        """sharp_P(alpha)^j = P^{ij} alpha_i, a section of E."""
        t = p.expand()
        out: dict = {}
        for (i, j), v in t.comps.items():
            w = v * alpha.component((i,))
            if not w.is_zero():
                out[(j,)] = out.get((j,), ExpPoly.zero(self.total)) + w
        return MultiVector(self.total, 1, out)

    def sharp_morphism(self, p: MultiVector):
        """sharp_P : E* -> E as a bundle morphism over the identity."""
        from .geometry import BundleMorphism
        t = p.expand()
        fmap = {n: ExpPoly.zero(self.dual) for n in self.fiber_names}
        pos = {fi: i for i, fi in enumerate(self.fiber_idx)}
        for (i, j), v in t.comps.items():
            if not v.depends_only_on(self.base.names):
                raise ChartError("bisection coefficients must be base functions")
            vb = v.substitute({}, self.base)
            fmap[self.fiber_names[pos[j]]] = fmap[self.fiber_names[pos[j]]] + \
                self.embed_dual(vb) * ExpPoly.var(self.dual, self.dual_names[pos[i]])
        return BundleMorphism(self.dual, self.total, fmap)

    def validate(self) -> Report:
        """Axiom checks: skewness of c, Jacobi identity on frame triples, the
        anchor morphism property on frame pairs."""
        rep = Report("validate")
        bad = False
        for i in range(self.rank):
            for j in range(i, self.rank):
                for k in range(self.rank):
                    res = self.c_at(i, j, k) + self.c_at(j, i, k)
                    if not res.is_zero():
                        rep.add(f"skew c[{i + 1},{j + 1}]^{k + 1}", False, f"residual = {res}")
                        bad = True
        if not bad:
            rep.add("skew", True)
        bad = False
        for i, j, k in itertools.combinations(range(self.rank), 3):
            ei, ej, ek = (self.frame_section(t) for t in (i, j, k))
            res = self.section_bracket(ei, self.section_bracket(ej, ek)) \
                + self.section_bracket(ej, self.section_bracket(ek, ei)) \
                + self.section_bracket(ek, self.section_bracket(ei, ej))
            if not res.is_zero():
                rep.add(f"jacobi ({i + 1},{j + 1},{k + 1})", False, f"residual = {res}")
                bad = True
        if not bad:
            rep.add("jacobi", True)
        bad = False
        for i, j in itertools.combinations(range(self.rank), 2):
            lhs = MultiVector(self.base, 1, {})
            for k in range(self.rank):
                cv = self.c_at(i, j, k)
                if not cv.is_zero():
                    lhs = lhs + self.anchor_vector(k).scale(cv)
            rhs = lie_bracket(self.anchor_vector(i), self.anchor_vector(j))
            res = lhs - rhs
            if not res.is_zero():
                rep.add(f"anchor ({i + 1},{j + 1})", False, f"residual = {res}")
                bad = True
        if not bad:
            rep.add("anchor", True)
        return rep


class JacobiAlgebroidSpec:
    """A Lie algebroid together with a 1-cocycle Phi (d Phi = 0)."""

    def __init__(self, algebroid: AlgebroidSpec, phi):
        self.algebroid = algebroid
        if isinstance(phi, CovariantField):
            self.phi = phi
        else:
            if not isinstance(phi, dict):
                phi = {i: v for i, v in enumerate(phi)}
            self.phi = algebroid.frame_form(1, {(i,): v for i, v in phi.items()})
        self._sealed = True

    def __setattr__(self, key, value):
        if getattr(self, "_sealed", False):
            raise AttributeError("JacobiAlgebroidSpec is immutable")
        object.__setattr__(self, key, value)

    def __getattr__(self, name):
        if name.startswith("_"):
            raise AttributeError(name)
        return getattr(self.algebroid, name)

    def phi_frame(self) -> dict[int, ExpPoly]:
        comps = self.algebroid.frame_components(self.phi)
        return {k[0]: v for k, v in comps.items()}

    def iota_phi(self) -> ExpPoly:
        """The fiber-linear function of the cocycle on the total chart."""
        spec = self.algebroid
        out = ExpPoly.zero(spec.total)
        for i, v in self.phi_frame().items():
            out = out + spec.embed(v) * ExpPoly.var(spec.total, spec.fiber_names[i])
        return out

    def phi_vertical_dual(self) -> MultiVector:
        """Phi^v = Phi_i d/dxi_i, vertical lift of the cocycle to E*."""
        spec = self.algebroid
        comps = {}
        for i, v in self.phi_frame().items():
            comps[(spec.dual_idx[i],)] = spec.embed_dual(v)
        return MultiVector(spec.dual, 1, comps)

    def validate(self) -> Report:
        rep = self.algebroid.validate()
        rep.add_residual("cocycle dPhi", self.algebroid.exterior_derivative(self.phi))
        return rep

    # -- deformed calculus ---------------------------------------------------

    def d_phi(self, mu) -> CovariantField:
        """Deformed differential d^Phi mu = d mu + Phi ^ mu."""
        spec = self.algebroid
        if isinstance(mu, ExpPoly):
            return spec.exterior_derivative(mu) + self.phi.scale(spec.embed(mu))
        return spec.exterior_derivative(mu) + self.phi.wedge(mu)

    def lie_derivative_phi(self, x: MultiVector, mu) -> CovariantField:
        if isinstance(mu, ExpPoly):
            mu = CovariantField.from_function(self.algebroid.embed(mu))
        return interior_vector(x, self.d_phi(mu)) + self.d_phi(interior_vector(x, mu))

    def deformed_schouten(self, x: MultiVector, y: MultiVector) -> MultiVector:
        """[[X,Y]]_Phi = [[X,Y]] + x X ^ i_Phi Y - (-1)^x y i_Phi X ^ Y."""
        spec = self.algebroid
        xs, ys = x.degree - 1, y.degree - 1
        out = spec.schouten(x, y)
        if xs and y.degree:
            out = out + x.wedge(interior_form(self.phi, y)).scale(xs)
        if ys and x.degree:
            out = out - interior_form(self.phi, x).wedge(y).scale(sgn(xs) * ys)
        return out

    def canonical_jacobi_dual(self) -> tuple[MultiVector, MultiVector]:
        """J_Phi^{E*} = Lambda^{E*} + Delta_{E*} ^ Phi^v - I ^ Phi^v as a
        (bivector, vector) pair on the dual chart."""
        spec = self.algebroid
        phiv = self.phi_vertical_dual()
        delta = euler(spec.dual)
        return spec.linear_poisson() + delta.wedge(phiv), -phiv

    def extend_hat(self) -> AlgebroidSpec:
        """The extended algebroid over M x R(s) with anchor
        rho_hat(e_i) = rho(e_i) + <Phi, e_i> d/ds; its differential obeys ds = Phi."""
        spec = self.algebroid
        base_hat = prolong(spec.base, "times_R", name="s")
        total_hat = Chart(base_hat.vars + tuple(spec.total.vars[i] for i in spec.fiber_idx))
        dual_hat = Chart(base_hat.vars + tuple(spec.dual.vars[i] for i in spec.dual_idx))
        c_hat = {k: v.substitute({}, base_hat) for k, v in spec.c.items()}
        d_hat = {(i, a): v.substitute({}, base_hat) for (i, a), v in spec.d.items()}
        for i, v in self.phi_frame().items():
            d_hat[(i, "s")] = v.substitute({}, base_hat)
        return AlgebroidSpec(base_hat, spec.rank, c=c_hat, d=d_hat,
                             total=total_hat, dual=dual_hat,
                             fiber_names=spec.fiber_names, dual_names=spec.dual_names)


def dual_bracket_induced(spec, p: MultiVector, alpha: CovariantField,
                         beta: CovariantField) -> CovariantField:
    """[alpha,beta]_P = i_{sharp_P(alpha)} d beta - i_{sharp_P(beta)} d alpha + d(P(alpha,beta)),
    with d the algebroid differential, or d^Phi for a Jacobi algebroid."""
    if isinstance(spec, JacobiAlgebroidSpec):
        d = spec.d_phi
        core = spec.algebroid
    else:
        d = spec.exterior_derivative
        core = spec
    out = interior_vector(core.sharp_section(p, alpha), d(beta))
    out = out - interior_vector(core.sharp_section(p, beta), d(alpha))
    scalar = p.expand().evaluate(alpha, beta)
    return out + d(scalar)


# -- canonical examples -------------------------------------------------------

def tangent_algebroid(m: Chart) -> AlgebroidSpec:
    """TM with the bracket of vector fields: c = 0, anchor = identity."""
    total = prolong(m, "tangent")
    dual = prolong(m, "cotangent")
    names = [v.name for v in m.point_vars()]
    return AlgebroidSpec(m, len(names),
                         d={(i, n): 1 for i, n in enumerate(names)},
                         total=total, dual=dual,
                         fiber_names=[total.fiber_over(n).name for n in names],
                         dual_names=[dual.fiber_over(n).name for n in names])


def t1_algebroid(m: Chart) -> JacobiAlgebroidSpec:
    """T_1 M = TM + R, first-order differential operators, with Phi = (0, 1)."""
    total = prolong(prolong(m, "tangent"), "times_R", name="t")
    dual = prolong(prolong(m, "cotangent"), "times_R", name="lambda")
    names = [v.name for v in m.point_vars()]
    n = len(names)
    spec = AlgebroidSpec(m, n + 1,
                         d={(i, nm): 1 for i, nm in enumerate(names)},
                         total=total, dual=dual,
                         fiber_names=[total.fiber_over(nm).name for nm in names] + ["t"],
                         dual_names=[dual.fiber_over(nm).name for nm in names] + ["lambda"])
    return JacobiAlgebroidSpec(spec, {n: 1})


def so3_algebroid(base: Chart | None = None) -> AlgebroidSpec:
    """Rank-3 algebroid with c^k_ij = epsilon_ijk and zero anchor, carried
    over a one-dimensional base (Lie algebras are encoded with d = 0)."""
    from .chart import chart as mkchart
    base = base or mkchart("x")
    return AlgebroidSpec(base, 3, c={(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1})


def heisenberg_algebroid(base: Chart | None = None) -> AlgebroidSpec:
    """Rank-3 nilpotent algebroid: [e1, e2] = e3 is the only bracket."""
    from .chart import chart as mkchart
    base = base or mkchart("x")
    return AlgebroidSpec(base, 3, c={(0, 1, 2): 1})


def so3_jacobi(base: Chart | None = None) -> JacobiAlgebroidSpec:
    """so(3)-type Jacobi algebroid: the epsilon bracket extended by a central
    direction e4, with the nonzero closed cocycle Phi = e*4.  (On the plain
    epsilon bracket every closed 1-cocycle vanishes, so the central extension
    is the minimal carrier of a nonzero Phi.)"""
    from .chart import chart as mkchart
    base = base or mkchart("x")
    spec = AlgebroidSpec(base, 4, c={(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1})
    return JacobiAlgebroidSpec(spec, {3: 1})


def heisenberg_jacobi(base: Chart | None = None) -> JacobiAlgebroidSpec:
    """Heisenberg-type Jacobi algebroid with the closed cocycle Phi = e*1."""
    spec = heisenberg_algebroid(base)
    return JacobiAlgebroidSpec(spec, {0: 1})


# -- T1M identification -------------------------------------------------------

def t1_embed(jspec: JacobiAlgebroidSpec, a1: MultiVector, a2: MultiVector) -> MultiVector:
    """Embed a first-order operator pair A1 + I ^ A2 (multivectors on M) as a
    multisection of T_1 M."""
    spec = jspec.algebroid
    x1 = _to_frame(spec, a1)
    x2 = _to_frame(spec, a2)
    e_t = MultiVector.direction(spec.total, spec.fiber_names[-1])
    return x1 + e_t.wedge(x2)


def t1_split(jspec: JacobiAlgebroidSpec, x: MultiVector) -> tuple[MultiVector, MultiVector]:
    """Inverse of :func:`t1_embed`."""
    spec = jspec.algebroid
    t_idx = spec.fiber_idx[-1]
    part1, part2 = {}, {}
    for key, v in x.comps.items():
        if t_idx in key:
            rest = tuple(i for i in key if i != t_idx)
            sign = (-1) ** len(rest)  # e_J ^ e_t = (-1)^{|J|} e_t ^ e_J
            part2[rest] = v if sign == 1 else -v
        else:
            part1[key] = v
    m = spec.base
    a1 = _from_frame(spec, MultiVector(spec.total, x.degree, part1), m)
    a2 = _from_frame(spec, MultiVector(spec.total, max(x.degree - 1, 0), part2), m)
    return a1, a2


def _to_frame(spec: AlgebroidSpec, a: MultiVector) -> MultiVector:
    fiber_of = {i: spec.fiber_idx[i] for i in range(len(spec.base.names))}
    out = {}
    for key, v in a.comps.items():
        out[tuple(fiber_of[i] for i in key)] = v.substitute({}, spec.total)
    return MultiVector(spec.total, a.degree, out)


def _from_frame(spec: AlgebroidSpec, x: MultiVector, m: Chart) -> MultiVector:
    base_of = {spec.fiber_idx[i]: i for i in range(len(m.names))}
    out = {}
    for key, v in x.comps.items():
        out[tuple(base_of[i] for i in key)] = v.substitute({}, m)
    return MultiVector(m, x.degree, out)
