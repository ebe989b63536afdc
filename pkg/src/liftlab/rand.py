"""Seeded random generators for the identity batteries.

Used by the property tests and by the CLI axiom battery; everything is
driven by an explicit random.Random instance so batteries are reproducible.
"""

from __future__ import annotations

import itertools

from .chart import Chart
from .coeff import ExpPoly
from .geometry import FirstOrderBiDiffOp, MultiVector


def random_poly(ch: Chart, rng, degree: int = 2, sparsity: float = 0.5) -> ExpPoly:
    """Random polynomial of total degree <= degree with small integer coefficients."""
    out = ExpPoly.zero(ch)
    monos = [()]
    names = ch.names
    for d in range(1, degree + 1):
        monos.extend(itertools.combinations_with_replacement(range(len(names)), d))
    for mono in monos:
        if rng.random() > sparsity:
            continue
        c = rng.randint(-3, 3)
        if not c:
            continue
        term = ExpPoly.const(ch, c)
        for i in mono:
            term = term * ExpPoly.var(ch, names[i])
        out = out + term
    return out


def random_multivector(ch: Chart, degree: int, rng, coeff_degree: int = 2,
                       sparsity: float = 0.6) -> MultiVector:
    comps = {}
    for key in itertools.combinations(range(ch.nvars), degree):
        if rng.random() < sparsity:
            v = random_poly(ch, rng, coeff_degree)
            if not v.is_zero():
                comps[key] = v
    return MultiVector(ch, degree, comps)


def random_skew_operator(ch: Chart, rng, coeff_degree: int = 1) -> FirstOrderBiDiffOp:
    lam = random_multivector(ch, 2, rng, coeff_degree)
    gam = random_multivector(ch, 1, rng, coeff_degree)
    return FirstOrderBiDiffOp.from_pair(lam, gam)


def random_multisection(spec, degree: int, rng, coeff_degree: int = 1,
                        sparsity: float = 0.6) -> MultiVector:
    comps = {}
    for key in itertools.combinations(range(spec.rank), degree):
        if rng.random() < sparsity:
            v = random_poly(spec.base, rng, coeff_degree)
            if not v.is_zero():
                comps[key] = v
    return spec.multisection(degree, comps)
