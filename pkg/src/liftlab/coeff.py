"""Exact coefficient arithmetic.

An :class:`ExpPoly` is a polynomial over the rationals in the variables of a
chart, extended by integer powers of exp(v) for every exp-designated
variable v of that chart (in practice the single aux-s coordinate).  Terms
are stored sparsely as

    (monomial exponent vector, exponential weight vector)  ->  Fraction

with no zero coefficients kept.  Values are immutable; all arithmetic is
exact, so "equals zero" is a structural test and every identity check in the
library is decidable.
"""

from __future__ import annotations

from fractions import Fraction

from .chart import Chart, ChartError

Q = Fraction


class UnknownVariable(ChartError):
    pass


class UnsupportedSubstitution(ValueError):
    pass


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an integer or Fraction, got {type(x).__name__}")


class ExpPoly:
    __slots__ = ("chart", "terms")

    def __init__(self, chart: Chart, terms=None):
        nv = chart.nvars
        ne = len(chart.exp_names)
        clean = {}
        for key, c in (terms or {}).items():
            mono, expw = key
            c = _as_fraction(c)
            if c == 0:
                continue
            mono = tuple(mono)
            expw = tuple(expw)
            if len(mono) != nv or len(expw) != ne:
                raise ChartError("term key size does not match chart")
            clean[(mono, expw)] = clean.get((mono, expw), Q(0)) + c
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v != 0})

    def __setattr__(self, *a):
        raise AttributeError("ExpPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, chart: Chart) -> "ExpPoly":
        return cls(chart, {})

    @classmethod
    def const(cls, chart: Chart, value) -> "ExpPoly":
        mono = (0,) * chart.nvars
        expw = (0,) * len(chart.exp_names)
        return cls(chart, {(mono, expw): _as_fraction(value)})

    @classmethod
    def var(cls, chart: Chart, name: str) -> "ExpPoly":
        i = chart.index(name)
        mono = tuple(1 if j == i else 0 for j in range(chart.nvars))
        expw = (0,) * len(chart.exp_names)
        return cls(chart, {(mono, expw): Q(1)})

    @classmethod
    def exp_gen(cls, chart: Chart, name: str, weight: int = 1) -> "ExpPoly":
        """exp(weight * name) for an exp-designated variable."""
        if name not in chart.exp_names:
            raise UnknownVariable(f"{name!r} carries no exponential generator")
        j = chart.exp_names.index(name)
        mono = (0,) * chart.nvars
        expw = tuple(weight if i == j else 0 for i in range(len(chart.exp_names)))
        return cls(chart, {(mono, expw): Q(1)})

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ExpPoly):
            if other.chart != self.chart:
                raise ChartError("chart mismatch in coefficient arithmetic")
            return other
        return ExpPoly.const(self.chart, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Q(0)) + c
        return ExpPoly(self.chart, out)

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly(self.chart, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for (m1, e1), c1 in self.terms.items():
            for (m2, e2), c2 in other.terms.items():
                key = (tuple(a + b for a, b in zip(m1, m2)),
                       tuple(a + b for a, b in zip(e1, e2)))
                out[key] = out.get(key, Q(0)) + c1 * c2
        return ExpPoly(self.chart, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        out = ExpPoly.const(self.chart, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExpPoly.const(self.chart, other)
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self.chart == other.chart and self.terms == other.terms

    def __hash__(self):
        return hash((self.chart, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- calculus ----------------------------------------------------------

    def differentiate(self, name: str) -> "ExpPoly":
        """Partial derivative; on an exp-designated variable s the rule is
        d/ds (exp(m*s) q) = exp(m*s) (m q + dq/ds)."""
        i = self.chart.index(name)
        je = self.chart.exp_names.index(name) if name in self.chart.exp_names else None
        out = {}
        for (mono, expw), c in self.terms.items():
            if mono[i] > 0:
                m2 = list(mono)
                m2[i] -= 1
                key = (tuple(m2), expw)
                out[key] = out.get(key, Q(0)) + c * mono[i]
            if je is not None and expw[je] != 0:
                key = (mono, expw)
                out[key] = out.get(key, Q(0)) + c * expw[je]
        return ExpPoly(self.chart, out)

    def substitute(self, mapping: dict, target: Chart | None = None) -> "ExpPoly":
        """Exact composition: every variable of the chart is replaced by its
        value under ``mapping`` (values live on ``target``); unmapped
        variables must exist on the target chart and map to themselves.

        A value substituted for an exp-designated variable must be an
        integer-linear combination of exp-designated target variables (the
        only closure for which exp(m * value) stays in the ring)."""
        target = target or self.chart
        values: dict[str, ExpPoly] = {}
        for name, val in mapping.items():
            self.chart.index(name)  # raises UnknownVariable-style error
            if not isinstance(val, ExpPoly):
                val = ExpPoly.const(target, val)
            elif val.chart != target:
                raise ChartError(f"substituted value for {name!r} lives on the wrong chart")
            values[name] = val

        # only variables that actually occur need a value on the target chart
        occurring = set()
        for (mono, expw) in self.terms:
            for i, k in enumerate(mono):
                if k:
                    occurring.add(self.chart.vars[i].name)
            for j, w in enumerate(expw):
                if w:
                    occurring.add(self.chart.exp_names[j])
        for name in occurring:
            if name not in values:
                if not target.has(name):
                    raise ChartError(f"variable {name!r} unassigned and absent from target chart")
                values[name] = ExpPoly.var(target, name)

        # exponential weights may only transfer linearly
        exp_transfer: dict[str, dict[int, int]] = {}
        for name in self.chart.exp_names:
            if name in values:
                exp_transfer[name] = _linear_exp_combination(values[name], name)

        power_cache: dict[tuple[str, int], ExpPoly] = {}

        def powered(name, k):
            key = (name, k)
            if key not in power_cache:
                power_cache[key] = values[name] ** k
            return power_cache[key]

        out = ExpPoly.zero(target)
        ne_t = len(target.exp_names)
        for (mono, expw), c in self.terms.items():
            expw_t = [0] * ne_t
            for j, name in enumerate(self.chart.exp_names):
                if expw[j] == 0:
                    continue
                for ti, coeff in exp_transfer[name].items():
                    expw_t[ti] += expw[j] * coeff
            term = ExpPoly(target, {(((0,) * target.nvars), tuple(expw_t)): c})
            for i, k in enumerate(mono):
                if k:
                    term = term * powered(self.chart.vars[i].name, k)
            out = out + term
        return out

    def split_by_degree(self, names) -> dict[int, "ExpPoly"]:
        """Split into homogeneous parts by total degree in the given variables."""
        idx = [self.chart.index(n) for n in names]
        parts: dict[int, dict] = {}
        for key, c in self.terms.items():
            d = sum(key[0][i] for i in idx)
            parts.setdefault(d, {})[key] = c
        return {d: ExpPoly(self.chart, t) for d, t in parts.items()}

    def coefficient_of_var(self, name: str) -> "ExpPoly":
        """For a polynomial linear in ``name``: the coefficient standing by it."""
        i = self.chart.index(name)
        out = {}
        for (mono, expw), c in self.terms.items():
            if mono[i] == 1:
                m2 = list(mono)
                m2[i] = 0
                out[(tuple(m2), expw)] = c
        return ExpPoly(self.chart, out)

    def depends_only_on(self, names) -> bool:
        allowed = {self.chart.index(n) for n in names}
        for (mono, expw), _ in self.terms.items():
            for i, k in enumerate(mono):
                if k and i not in allowed:
                    return False
        return True

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (mono, expw) in sorted(self.terms):
            c = self.terms[(mono, expw)]
            body = _render_term(self.chart, mono, expw, abs(c))
            pieces.append((c < 0, body))
        first_neg, first = pieces[0]
        text = ("-" if first_neg else "") + first
        for neg, body in pieces[1:]:
            text += (" - " if neg else " + ") + body
        return text

    __str__ = render

    def __repr__(self):
        return f"ExpPoly({self.render()} on {self.chart})"


def _linear_exp_combination(value: ExpPoly, source_name: str) -> dict[int, int]:
    """Express ``value`` as an integer combination of exp-designated target
    variables, the only substitutions supported inside exp()."""
    target = value.chart
    comb: dict[int, int] = {}
    for (mono, expw), c in value.terms.items():
        if any(expw):
            raise UnsupportedSubstitution(
                f"cannot substitute an exponential-weighted value into exp({source_name})")
        support = [i for i, k in enumerate(mono) if k]
        if len(support) != 1 or mono[support[0]] != 1:
            raise UnsupportedSubstitution(
                f"value substituted into exp({source_name}) must be linear in exp-designated variables")
        i = support[0]
        name = target.vars[i].name
        if name not in target.exp_names:
            raise UnsupportedSubstitution(
                f"exp({source_name}) cannot absorb non-exponential variable {name!r}")
        if c.denominator != 1:
            raise UnsupportedSubstitution(
                f"exp({source_name}) only supports integer rescalings")
        comb[target.exp_names.index(name)] = comb.get(target.exp_names.index(name), 0) + int(c)
    return comb


def _render_term(chart: Chart, mono, expw, coeff: Fraction) -> str:
    factors = []
    for i, k in enumerate(mono):
        if k == 1:
            factors.append(chart.vars[i].name)
        elif k > 1:
            factors.append(f"{chart.vars[i].name}^{k}")
    for j, w in enumerate(expw):
        if w == 0:
            continue
        name = chart.exp_names[j]
        if w == 1:
            factors.append(f"exp({name})")
        elif w == -1:
            factors.append(f"exp(-{name})")
        else:
            factors.append(f"exp({w}*{name})")
    if not factors:
        return str(coeff)
    if coeff != 1:
        factors.insert(0, str(coeff))
    return "*".join(factors)


def poly(chart: Chart, spec) -> ExpPoly:
    """Convenience builder: ints/Fractions, variable names, or ExpPoly pass-through."""
    if isinstance(spec, ExpPoly):
        if spec.chart != chart:
            raise ChartError("poly() got an ExpPoly on a different chart")
        return spec
    if isinstance(spec, str):
        return ExpPoly.var(chart, spec)
    return ExpPoly.const(chart, spec)
