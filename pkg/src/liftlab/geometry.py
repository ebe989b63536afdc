"""Tensor fields on a chart and the elementary tensor algebra.

Contravariant tensors are stored sparsely by index tuple; skew objects
(multivector fields and exterior forms) keep components only on strictly
increasing tuples and expand with unit weight,

    dx ^ dy  ->  dx (x) dy - dy (x) dx,

which is the convention every bracket and lift in the library is pinned to.
Sharp maps contract the first slot: sharp(T)(omega) = T(omega, .).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .chart import (AUX_LAMBDA, AUX_T, Chart, ChartError, FIBER_ROLES, Var,
                    chart, prolong)
from .coeff import ExpPoly, Q, poly

__all__ = [
    "Chart", "Var", "chart", "prolong", "ChartError",
    "TensorField", "MultiVector", "CovariantField", "FirstOrderBiDiffOp",
    "BundleMorphism", "wedge", "pair", "sharp", "sharp_apply", "iota",
    "vertical_lift", "antisymmetrize", "de_rham", "interior_vector",
    "interior_form", "directional", "euler", "canonical_poisson",
    "lie_derivative_chart", "transport",
]


def sort_with_sign(idxs):
    """Sort an index tuple, returning (sorted tuple, sign); sign 0 on repeats."""
    idxs = list(idxs)
    sign = 1
    for i in range(1, len(idxs)):
        j = i
        while j > 0 and idxs[j - 1] > idxs[j]:
            idxs[j - 1], idxs[j] = idxs[j], idxs[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idxs, idxs[1:]):
        if a == b:
            return tuple(idxs), 0
    return tuple(idxs), sign


def _permutations_with_sign(items):
    items = list(items)
    n = len(items)
    if n == 0:
        yield (), 1
        return
    for i in range(n):
        rest = items[:i] + items[i + 1:]
        for tail, s in _permutations_with_sign(rest):
            yield (items[i],) + tail, s * (-1) ** i


def _clean_comps(chart, degree, comps, increasing):
    out = {}
    for key, value in (comps or {}).items():
        key = tuple(chart.index(k) if isinstance(k, str) else k for k in key)
        if len(key) != degree:
            raise ChartError(f"component key {key} does not have degree {degree}")
        for i in key:
            if not 0 <= i < chart.nvars:
                raise ChartError(f"index {i} out of range")
        if increasing and any(a >= b for a, b in zip(key, key[1:])):
            raise ChartError(f"skew components must use strictly increasing tuples, got {key}")
        value = poly(chart, value)
        if value.is_zero():
            continue
        out[key] = out.get(key, ExpPoly.zero(chart)) + value
    return {k: v for k, v in out.items() if not v.is_zero()}


class TensorField:
    """Degree-k contravariant tensor with ExpPoly components; degree 0 is a
    plain coefficient function."""

    __slots__ = ("chart", "degree", "comps")

    def __init__(self, chart, degree, comps=None):
        if degree < 0:
            raise ChartError("tensor degree must be >= 0")
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "comps", _clean_comps(chart, degree, comps, increasing=False))

    def __setattr__(self, *a):
        raise AttributeError("TensorField is immutable")

    @classmethod
    def zero(cls, chart, degree):
        return cls(chart, degree, {})

    @classmethod
    def from_function(cls, f: ExpPoly):
        return cls(f.chart, 0, {(): f})

    def component(self, key) -> ExpPoly:
        key = tuple(self.chart.index(k) if isinstance(k, str) else k for k in key)
        return self.comps.get(key, ExpPoly.zero(self.chart))

    def _check(self, other, degree_equal=True):
        if self.chart != other.chart:
            raise ChartError("chart mismatch")
        if degree_equal and self.degree != other.degree:
            raise ChartError("degree mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.comps)
        for k, v in other.comps.items():
            out[k] = out.get(k, ExpPoly.zero(self.chart)) + v
        return TensorField(self.chart, self.degree, out)

    def __neg__(self):
        return TensorField(self.chart, self.degree, {k: -v for k, v in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f):
        f = poly(self.chart, f)
        return TensorField(self.chart, self.degree, {k: f * v for k, v in self.comps.items()})

    def tensor(self, other: "TensorField") -> "TensorField":
        self._check(other, degree_equal=False)
        out = {}
        for k1, v1 in self.comps.items():
            for k2, v2 in other.comps.items():
                key = k1 + k2
                out[key] = out.get(key, ExpPoly.zero(self.chart)) + v1 * v2
        return TensorField(self.chart, self.degree + other.degree, out)

    def evaluate(self, *forms) -> ExpPoly:
        """Full contraction with degree-1 covariant fields."""
        if len(forms) != self.degree:
            raise ChartError("evaluation needs exactly one 1-form per slot")
        out = ExpPoly.zero(self.chart)
        for key, v in self.comps.items():
            term = v
            for slot, i in enumerate(key):
                term = term * forms[slot].component((i,))
            out = out + term
        return out

    def is_zero(self):
        return not self.comps

    def __eq__(self, other):
        if not isinstance(other, TensorField):
            return NotImplemented
        return (self.chart, self.degree, self.comps) == (other.chart, other.degree, other.comps)

    def __str__(self):
        return render_tensor(self, sep=" @ ")

    __repr__ = __str__


class _SkewField:
    """Shared mechanics of multivector fields and exterior forms."""

    __slots__ = ("chart", "degree", "comps")

    def __init__(self, chart, degree, comps=None):
        if degree < 0:
            raise ChartError("degree must be >= 0")
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "comps", _clean_comps(chart, degree, comps, increasing=True))

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @classmethod
    def zero(cls, chart, degree):
        return cls(chart, degree, {})

    @classmethod
    def from_function(cls, f: ExpPoly):
        return cls(f.chart, 0, {(): f})

    @classmethod
    def direction(cls, chart, *names):
        """Wedge of coordinate directions, e.g. direction(C, "x", "y")."""
        key, sign = sort_with_sign(tuple(chart.index(n) for n in names))
        if sign == 0:
            return cls.zero(chart, len(names))
        return cls(chart, len(names), {key: Q(sign)})

    def component(self, key) -> ExpPoly:
        """Sign-extended component at an arbitrary index tuple."""
        key = tuple(self.chart.index(k) if isinstance(k, str) else k for k in key)
        skey, sign = sort_with_sign(key)
        if sign == 0:
            return ExpPoly.zero(self.chart)
        base = self.comps.get(skey)
        if base is None:
            return ExpPoly.zero(self.chart)
        return base if sign == 1 else -base

    def _check(self, other):
        if self.chart != other.chart:
            raise ChartError("chart mismatch")

    def __add__(self, other):
        self._check(other)
        if self.degree != other.degree:
            # the zero multivector is degree-ambiguous
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise ChartError("degree mismatch in sum")
        out = dict(self.comps)
        for k, v in other.comps.items():
            out[k] = out.get(k, ExpPoly.zero(self.chart)) + v
        return type(self)(self.chart, self.degree, out)

    def __neg__(self):
        return type(self)(self.chart, self.degree, {k: -v for k, v in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f):
        f = poly(self.chart, f)
        return type(self)(self.chart, self.degree, {k: f * v for k, v in self.comps.items()})

    def wedge(self, other):
        self._check(other)
        if type(self) is not type(other):
            raise ChartError("cannot wedge objects of different variance")
        out = {}
        for k1, v1 in self.comps.items():
            for k2, v2 in other.comps.items():
                key, sign = sort_with_sign(k1 + k2)
                if sign == 0:
                    continue
                term = v1 * v2 if sign == 1 else -(v1 * v2)
                out[key] = out.get(key, ExpPoly.zero(self.chart)) + term
        return type(self)(self.chart, self.degree + other.degree, out)

    def expand_comps(self) -> dict:
        out = {}
        for key, v in self.comps.items():
            for perm, sign in _permutations_with_sign(key):
                out[perm] = v if sign == 1 else -v
        return out

    def is_zero(self):
        return not self.comps

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        return (self.chart, self.degree, self.comps) == (other.chart, other.degree, other.comps)


class MultiVector(_SkewField):
    """Skew contravariant tensor stored on strictly increasing index tuples."""

    def expand(self) -> TensorField:
        return TensorField(self.chart, self.degree, self.expand_comps())

    def evaluate(self, *forms) -> ExpPoly:
        return self.expand().evaluate(*forms)

    def __str__(self):
        return render_tensor(self, sep=" ^ ")

    __repr__ = __str__


class CovariantField(_SkewField):
    """Skew covariant tensor (k-form) against the dual coordinate frame."""

    def __str__(self):
        return render_tensor(self, sep=" ^ ", direction=lambda n: "d" + n)

    __repr__ = __str__


def render_tensor(t, sep=" ^ ", direction=lambda n: "d/d" + n) -> str:
    if not t.comps:
        return "0"
    names = t.chart.names
    pieces = []
    for key in sorted(t.comps):
        c = t.comps[key]
        dirs = sep.join(direction(names[i]) for i in key)
        if t.degree == 0:
            body, neg = _poly_body(c)
            pieces.append((neg, body))
            continue
        body, neg = _poly_body(c)
        if body == "1":
            pieces.append((neg, dirs))
        else:
            pieces.append((neg, f"{body} * {dirs}"))
    first_neg, first = pieces[0]
    text = ("-" if first_neg else "") + first
    for neg, body in pieces[1:]:
        text += (" - " if neg else " + ") + body
    return text


def _poly_body(c: ExpPoly):
    """Render a coefficient for use inside a tensor term: returns (text, negated)."""
    if len(c.terms) == 1:
        ((mono, expw),) = c.terms.keys()
        coeff = c.terms[(mono, expw)]
        neg = coeff < 0
        if neg:
            c = -c
        return c.render(), neg
    return "(" + c.render() + ")", False


# -- elementary operations -------------------------------------------------

def wedge(a, b):
    return a.wedge(b)


def antisymmetrize(t: TensorField) -> MultiVector:
    """Inverse of MultiVector.expand under the unit-weight convention."""
    k = t.degree
    acc: dict = {}
    for key, v in t.comps.items():
        skey, sign = sort_with_sign(key)
        if sign == 0:
            continue
        acc[skey] = acc.get(skey, ExpPoly.zero(t.chart)) + (v if sign == 1 else -v)
    scale = Fraction(1, factorial(k)) if k else Fraction(1)
    return MultiVector(t.chart, k, {k2: v * scale for k2, v in acc.items()})


def pair(t, mu: CovariantField, nu: CovariantField) -> ExpPoly:
    """<T, mu (x) nu> = sum T^{ij} mu_i nu_j for a degree-2 tensor."""
    if isinstance(t, MultiVector):
        t = t.expand()
    if t.degree != 2 or mu.degree != 1 or nu.degree != 1:
        raise ChartError("pair expects a 2-tensor and two 1-forms")
    if t.chart != mu.chart or t.chart != nu.chart:
        raise ChartError("chart mismatch")
    return t.evaluate(mu, nu)


def directional(x, f: ExpPoly) -> ExpPoly:
    """Derivation X(f) = sum X^i d_i f of a vector field on a function."""
    if isinstance(x, MultiVector):
        x = x.expand()
    if x.degree != 1:
        raise ChartError("directional derivative needs a vector field")
    out = ExpPoly.zero(x.chart)
    for (i,), v in x.comps.items():
        out = out + v * f.differentiate(x.chart.vars[i].name)
    return out


def de_rham(omega) -> CovariantField:
    """Exterior derivative on the chart (all chart variables)."""
    if isinstance(omega, ExpPoly):
        ch = omega.chart
        return CovariantField(ch, 1, {(i,): omega.differentiate(ch.vars[i].name)
                                      for i in range(ch.nvars)})
    ch = omega.chart
    out: dict = {}
    for key, v in omega.comps.items():
        for a in range(ch.nvars):
            dv = v.differentiate(ch.vars[a].name)
            if dv.is_zero():
                continue
            skey, sign = sort_with_sign((a,) + key)
            if sign == 0:
                continue
            out[skey] = out.get(skey, ExpPoly.zero(ch)) + (dv if sign == 1 else -dv)
    return CovariantField(ch, omega.degree + 1, out)


def _contract_first(weights: dict[int, ExpPoly], field):
    """Contract the first slot of a skew field against index weights."""
    ch = field.chart
    out: dict = {}
    for key, v in field.comps.items():
        for r, i in enumerate(key):
            w = weights.get(i)
            if w is None:
                continue
            rest = key[:r] + key[r + 1:]
            term = w * v if r % 2 == 0 else -(w * v)
            out[rest] = out.get(rest, ExpPoly.zero(ch)) + term
    return type(field)(ch, field.degree - 1, out)


def interior_vector(x: MultiVector, omega: CovariantField) -> CovariantField:
    """i_X omega, contraction of a vector field into a form (first slot)."""
    if x.degree != 1:
        raise ChartError("interior product needs a vector field")
    if omega.degree == 0:
        return CovariantField.zero(omega.chart, 0)
    return _contract_first({k[0]: v for k, v in x.comps.items()}, omega)


def interior_form(phi: CovariantField, a: MultiVector) -> MultiVector:
    """i_phi A, contraction of a 1-form into a multivector (first slot)."""
    if phi.degree != 1:
        raise ChartError("interior product needs a 1-form")
    if a.degree == 0:
        return MultiVector.zero(a.chart, 0)
    return _contract_first({k[0]: v for k, v in phi.comps.items()}, a)


def lie_derivative_chart(x: MultiVector, omega) -> CovariantField:
    """Cartan formula on the chart: L_X = i_X d + d i_X."""
    if isinstance(omega, ExpPoly):
        return CovariantField.from_function(directional(x, omega))
    return interior_vector(x, de_rham(omega)) + de_rham(interior_vector(x, omega))


def iota(mu: CovariantField, total: Chart) -> ExpPoly:
    """Fiber-linear function of a section of the dual bundle:
    iota_mu = sum mu_a(x) * fiber_a on the total-space chart."""
    if mu.degree != 1:
        raise ChartError("iota expects a degree-1 section")
    out = ExpPoly.zero(total)
    for (i,), v in mu.comps.items():
        name = mu.chart.vars[i].name
        fiber = total.fiber_over(name)
        out = out + v.substitute({}, total) * ExpPoly.var(total, fiber.name)
    return out


def iota_pair(mu: CovariantField, f: ExpPoly, total: Chart, t_name: str = "t") -> ExpPoly:
    """iota for a section (mu, f) of T*M + R: iota_mu + t f."""
    return iota(mu, total) + ExpPoly.var(total, t_name) * f.substitute({}, total)


def vertical_lift(x, total: Chart):
    """Replace every frame direction by the corresponding fiber direction;
    degree-0 objects pull back unchanged."""
    if isinstance(x, ExpPoly):
        return x.substitute({}, total)
    idx_map = {}
    for i, v in enumerate(x.chart.vars):
        if total.has(v.name) and any(w.over == v.name for w in total.vars):
            idx_map[i] = total.index(total.fiber_over(v.name).name)
    kind = type(x)
    out = {}
    for key, v in x.comps.items():
        try:
            new_key = tuple(idx_map[i] for i in key)
        except KeyError:
            raise ChartError("vertical lift: no fiber over one of the tensor directions") from None
        out[new_key] = v.substitute({}, total)
    if isinstance(x, (MultiVector, CovariantField)):
        # fiber order matches base order in prolonged charts, so keys stay increasing
        return kind(total, x.degree, out)
    return TensorField(total, x.degree, out)


def euler(ch: Chart, roles=FIBER_ROLES) -> MultiVector:
    """Liouville vector field sum v d/dv over the fiber variables of a chart."""
    comps = {}
    for i, v in enumerate(ch.vars):
        if v.role in roles:
            comps[(i,)] = ExpPoly.var(ch, v.name)
    return MultiVector(ch, 1, comps)


def canonical_poisson(cot: Chart) -> MultiVector:
    """Canonical Poisson tensor d/dp ^ d/dx summed over cotangent pairs."""
    comps = {}
    for v in cot.vars:
        if v.role == "cotangent-fiber":
            ix, ip = cot.index(v.over), cot.index(v.name)
            comps[(ix, ip)] = Q(-1)  # d/dp ^ d/dx = -(d/dx ^ d/dp)
    return MultiVector(cot, 2, comps)


# -- bundle morphisms and first-order operators ------------------------------

class BundleMorphism:
    """Fiber-linear morphism over the identity between two total-space charts,
    given by the pullbacks of the target fiber coordinates."""

    __slots__ = ("source", "target", "fiber_map")

    def __init__(self, source: Chart, target: Chart, fiber_map: dict[str, ExpPoly]):
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        for name, val in fiber_map.items():
            target.index(name)
            if val.chart != source:
                raise ChartError(f"fiber map for {name!r} must live on the source chart")
        object.__setattr__(self, "fiber_map", dict(fiber_map))

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def pullback_coordinate(self, name: str) -> ExpPoly:
        if name in self.fiber_map:
            return self.fiber_map[name]
        if not self.source.has(name):
            raise ChartError(f"coordinate {name!r} has no pullback along the morphism")
        return ExpPoly.var(self.source, name)

    def pullback(self, f: ExpPoly) -> ExpPoly:
        if f.chart != self.target:
            raise ChartError("pullback expects a function on the target chart")
        mapping = {v.name: self.pullback_coordinate(v.name) for v in self.target.vars}
        return f.substitute(mapping, self.source)

    def __str__(self):
        rows = ", ".join(f"{n} -> {p}" for n, p in sorted(self.fiber_map.items()))
        return f"morphism {self.source} -> {self.target} [{rows}]"


class FirstOrderBiDiffOp:
    """J = Lambda + I (x) Gamma1 + Gamma2 (x) I + alpha I (x) I."""

    __slots__ = ("lam", "gamma1", "gamma2", "alpha")

    def __init__(self, lam: TensorField, gamma1, gamma2, alpha: ExpPoly):
        ch = lam.chart
        if isinstance(gamma1, MultiVector):
            gamma1 = gamma1.expand()
        if isinstance(gamma2, MultiVector):
            gamma2 = gamma2.expand()
        if lam.degree != 2 or gamma1.degree != 1 or gamma2.degree != 1:
            raise ChartError("first-order operator needs (2-tensor, vector, vector, function)")
        if gamma1.chart != ch or gamma2.chart != ch or alpha.chart != ch:
            raise ChartError("all parts of a first-order operator must share one chart")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "gamma1", gamma1)
        object.__setattr__(self, "gamma2", gamma2)
        object.__setattr__(self, "alpha", alpha)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @property
    def chart(self):
        return self.lam.chart

    @classmethod
    def from_pair(cls, lam: MultiVector, gamma: MultiVector) -> "FirstOrderBiDiffOp":
        """Skew operator Lambda + I ^ Gamma from a (bivector, vector) pair."""
        ch = lam.chart
        return cls(lam.expand(), gamma.expand(), (-gamma).expand(), ExpPoly.zero(ch))

    @classmethod
    def zero(cls, ch: Chart) -> "FirstOrderBiDiffOp":
        return cls(TensorField.zero(ch, 2), TensorField.zero(ch, 1),
                   TensorField.zero(ch, 1), ExpPoly.zero(ch))

    def bracket(self, f: ExpPoly, g: ExpPoly) -> ExpPoly:
        """{f,g}_J = <Lambda, df (x) dg> + f Gamma1(g) + g Gamma2(f) + alpha f g."""
        out = pair(self.lam, de_rham(f), de_rham(g))
        out = out + f * directional(self.gamma1, g)
        out = out + g * directional(self.gamma2, f)
        out = out + self.alpha * f * g
        return out

    def is_skew(self) -> bool:
        lam_sym = self.lam + _transpose2(self.lam)
        return lam_sym.is_zero() and (self.gamma1 + self.gamma2).is_zero() and self.alpha.is_zero()

    def skew_pair(self) -> tuple[MultiVector, MultiVector]:
        if not self.is_skew():
            raise ChartError("operator is not skew-symmetric")
        return antisymmetrize(self.lam), antisymmetrize(self.gamma1)

    def __neg__(self):
        return FirstOrderBiDiffOp(-self.lam, -self.gamma1, -self.gamma2, -self.alpha)

    def __eq__(self, other):
        if not isinstance(other, FirstOrderBiDiffOp):
            return NotImplemented
        return (self.lam == other.lam and self.gamma1 == other.gamma1
                and self.gamma2 == other.gamma2 and self.alpha == other.alpha)

    def __str__(self):
        return (f"[Lambda = {self.lam}; Gamma1 = {render_tensor(self.gamma1, sep=' @ ')}; "
                f"Gamma2 = {render_tensor(self.gamma2, sep=' @ ')}; alpha = {self.alpha}]")


def _transpose2(t: TensorField) -> TensorField:
    return TensorField(t.chart, 2, {(j, i): v for (i, j), v in t.comps.items()})


def sharp_apply(t, mu: CovariantField) -> MultiVector:
    """sharp(T)(mu) = T(mu, .), a vector field on the same chart."""
    if isinstance(t, MultiVector):
        t = t.expand()
    ch = t.chart
    out: dict = {}
    for (i, j), v in t.comps.items():
        w = v * mu.component((i,))
        if w.is_zero():
            continue
        out[(j,)] = out.get((j,), ExpPoly.zero(ch)) + w
    return MultiVector(ch, 1, out)


def sharp(t, source: Chart | None = None, target: Chart | None = None) -> BundleMorphism:
    """Fiber-linear morphism induced by first-slot contraction.

    For a 2-tensor on M this is T*M -> TM; for a first-order operator it is
    the extension T*M + R -> TM + R sending (omega, lam) to
    (sharp_Lambda(omega) + lam Gamma1, Gamma2(omega) + alpha lam).
    """
    if isinstance(t, FirstOrderBiDiffOp):
        base = t.chart
        source = source or prolong(prolong(base, "cotangent"), "times_R", name="lambda")
        target = target or prolong(prolong(base, "tangent"), "times_R", name="t")
        lam_var = next(v.name for v in source.vars if v.role == AUX_LAMBDA)
        t_var = next(v.name for v in target.vars if v.role == AUX_T)
        fmap = _sharp_fiber_map(t.lam, base, source, target)
        lam_poly = ExpPoly.var(source, lam_var)
        for v in base.point_vars():
            fiber = target.fiber_over(v.name).name
            g1 = t.gamma1.component((base.index(v.name),)).substitute({}, source)
            fmap[fiber] = fmap.get(fiber, ExpPoly.zero(source)) + lam_poly * g1
        tv = ExpPoly.zero(source)
        for i, v in enumerate(base.point_vars()):
            p_name = source.fiber_over(v.name).name
            tv = tv + t.gamma2.component((base.index(v.name),)).substitute({}, source) \
                * ExpPoly.var(source, p_name)
        tv = tv + t.alpha.substitute({}, source) * lam_poly
        fmap[t_var] = tv
        return BundleMorphism(source, target, fmap)
    if isinstance(t, MultiVector):
        t = t.expand()
    if t.degree != 2:
        raise ChartError("sharp needs a degree-2 tensor")
    base = t.chart
    source = source or prolong(base, "cotangent")
    target = target or prolong(base, "tangent")
    return BundleMorphism(source, target, _sharp_fiber_map(t, base, source, target))


def _sharp_fiber_map(t: TensorField, base: Chart, source: Chart, target: Chart):
    fmap: dict[str, ExpPoly] = {}
    for v in base.point_vars():
        fmap[target.fiber_over(v.name).name] = ExpPoly.zero(source)
    for (i, j), val in t.comps.items():
        tf = target.fiber_over(base.vars[j].name).name
        sf = source.fiber_over(base.vars[i].name).name
        fmap[tf] = fmap[tf] + val.substitute({}, source) * ExpPoly.var(source, sf)
    return fmap


def transport(obj, target: Chart, rename: dict[str, str] | None = None):
    """Re-home an object onto another chart, optionally renaming variables."""
    rename = rename or {}

    def new_name(old):
        return rename.get(old, old)

    if isinstance(obj, ExpPoly):
        mapping = {v.name: ExpPoly.var(target, new_name(v.name)) for v in obj.chart.vars}
        return obj.substitute(mapping, target)
    if isinstance(obj, FirstOrderBiDiffOp):
        return FirstOrderBiDiffOp(transport(obj.lam, target, rename),
                                  transport(obj.gamma1, target, rename),
                                  transport(obj.gamma2, target, rename),
                                  transport(obj.alpha, target, rename))
    src = obj.chart
    out = {}
    for key, v in obj.comps.items():
        new_key = tuple(target.index(new_name(src.vars[i].name)) for i in key)
        coeff = transport(v, target, rename)
        if isinstance(obj, TensorField):
            out[new_key] = out.get(new_key, ExpPoly.zero(target)) + coeff
        else:
            skey, sign = sort_with_sign(new_key)
            if sign == 0:
                continue
            add = coeff if sign == 1 else -coeff
            out[skey] = out.get(skey, ExpPoly.zero(target)) + add
    return type(obj)(target, obj.degree, out)
