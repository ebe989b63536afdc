"""Coordinate charts with variable roles.

Everything in the library lives on a single global chart: an ordered list of
named variables.  A variable carries a role (base coordinate, fiber
coordinate of some bundle, or one of the auxiliary R-factor coordinates
t / lambda / s) and fiber variables remember which base variable they sit
over.  An ``aux-s`` variable may carry an exponential generator, meaning the
coefficient ring is extended by integer powers of exp(s).

Charts are immutable and hashable; two charts are equal iff they list the
same variables in the same order.
"""

from __future__ import annotations

from dataclasses import dataclass

BASE = "base"
TANGENT_FIBER = "tangent-fiber"
COTANGENT_FIBER = "cotangent-fiber"
BUNDLE_FIBER = "bundle-fiber"
DUAL_FIBER = "dual-fiber"
AUX_T = "aux-t"
AUX_LAMBDA = "aux-lambda"
AUX_S = "aux-s"

ROLES = (BASE, TANGENT_FIBER, COTANGENT_FIBER, BUNDLE_FIBER, DUAL_FIBER,
         AUX_T, AUX_LAMBDA, AUX_S)

# roles that behave like coordinates of the underlying manifold
POINT_ROLES = frozenset((BASE, AUX_T, AUX_LAMBDA, AUX_S))
FIBER_ROLES = frozenset((TANGENT_FIBER, COTANGENT_FIBER, BUNDLE_FIBER, DUAL_FIBER))


class ChartError(ValueError):
    pass


@dataclass(frozen=True)
class Var:
    name: str
    role: str = BASE
    over: str | None = None
    exp: bool = False

    def __post_init__(self):
        if self.role not in ROLES:
            raise ChartError(f"unknown role {self.role!r} for variable {self.name!r}")
        if self.exp and self.role != AUX_S:
            raise ChartError(f"exponential generator only allowed on aux-s variables, not {self.name!r}")


@dataclass(frozen=True)
class Chart:
    vars: tuple[Var, ...]

    def __post_init__(self):
        names = [v.name for v in self.vars]
        if len(set(names)) != len(names):
            raise ChartError(f"duplicate variable names in chart: {names}")
        for v in self.vars:
            if v.over is not None and v.over not in names:
                raise ChartError(f"fiber variable {v.name!r} sits over unknown {v.over!r}")
        object.__setattr__(self, "_index", {v.name: i for i, v in enumerate(self.vars)})
        object.__setattr__(self, "_exp_names", tuple(v.name for v in self.vars if v.exp))

    # -- lookups ---------------------------------------------------------

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.vars)

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def exp_names(self) -> tuple[str, ...]:
        return self._exp_names

    def has(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ChartError(f"unknown variable {name!r} on chart {self.names}") from None

    def var(self, name: str) -> Var:
        return self.vars[self.index(name)]

    def point_vars(self) -> tuple[Var, ...]:
        return tuple(v for v in self.vars if v.role in POINT_ROLES)

    def fiber_vars(self, role: str | None = None) -> tuple[Var, ...]:
        if role is None:
            return tuple(v for v in self.vars if v.role in FIBER_ROLES)
        return tuple(v for v in self.vars if v.role == role)

    def fiber_over(self, base_name: str) -> Var:
        """The unique fiber variable sitting over ``base_name``."""
        hits = [v for v in self.vars if v.over == base_name]
        if len(hits) != 1:
            raise ChartError(f"no unique fiber over {base_name!r} on chart {self.names}")
        return hits[0]

    def __str__(self):
        return "(" + ", ".join(self.names) + ")"


def chart(names: str | list[str] | tuple[str, ...]) -> Chart:
    """Base chart from space- or comma-separated names: ``chart("q p u")``."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    return Chart(tuple(Var(n) for n in names))


_AUX_ROLE_BY_NAME = {"t": AUX_T, "lambda": AUX_LAMBDA, "lam": AUX_LAMBDA, "s": AUX_S}


def prolong(base: Chart, mode: str, name: str | None = None, role: str | None = None) -> Chart:
    """Extend a chart: ``tangent`` / ``cotangent`` prolongation or ``times_R``.

    Tangent adds a fiber ``<v>dot`` over every point variable, cotangent adds
    ``p_<v>``.  ``times_R`` appends one auxiliary variable whose role is
    inferred from its name (t, lambda, s) unless given explicitly; an aux-s
    variable always carries the exponential generator.
    """
    if mode in ("tangent", "cotangent"):
        if base.fiber_vars():
            raise ChartError(f"cannot {mode}-prolong a chart that already has fiber variables")
        new = list(base.vars)
        for v in base.point_vars():
            if mode == "tangent":
                fv = Var(v.name + "dot", TANGENT_FIBER, over=v.name)
            else:
                fv = Var("p_" + v.name, COTANGENT_FIBER, over=v.name)
            if base.has(fv.name):
                raise ChartError(f"name collision prolonging chart: {fv.name!r}")
            new.append(fv)
        return Chart(tuple(new))
    if mode == "times_R":
        if name is None:
            raise ChartError("times_R needs a variable name")
        if base.has(name):
            raise ChartError(f"name collision appending {name!r}")
        if role is None:
            role = _AUX_ROLE_BY_NAME.get(name)
        if role is None:
            raise ChartError(f"cannot infer role for auxiliary variable {name!r}; pass role=")
        return Chart(base.vars + (Var(name, role, exp=(role == AUX_S)),))
    raise ChartError(f"unknown prolongation mode {mode!r}")
