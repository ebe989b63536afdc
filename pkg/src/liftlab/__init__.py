"""liftlab: exact symbolic calculus for Poisson and Jacobi structures.

Single-chart tensor calculus over exact rational coefficients (optionally
extended by integer powers of exp(s)), the Schouten-Nijenhuis and
Schouten-Jacobi brackets, Lie/Jacobi algebroid calculus, the complete /
vertical / Jacobi / Poisson lifts with poissonization and gauge transports,
and executable suites that verify the characterization theorems for Poisson
and Jacobi structures as exact polynomial identities.
"""

from .chart import Chart, ChartError, Var, chart, prolong
from .coeff import ExpPoly, Q, UnsupportedSubstitution, poly
from .geometry import (BundleMorphism, CovariantField, FirstOrderBiDiffOp,
                       MultiVector, TensorField, antisymmetrize,
                       canonical_poisson, de_rham, directional, euler,
                       interior_form, interior_vector, iota, iota_pair,
                       lie_derivative_chart, pair, sharp, sharp_apply,
                       transport, vertical_lift, wedge)
from .calculus import (bracket_one_forms, function_bracket, kirillov_bracket,
                       kirillov_bracket_explicit, lie_bracket, pair_wedge,
                       schouten_jacobi_first_order, schouten_nijenhuis,
                       sn_generic, t1_bracket)
from .algebroid import (AlgebroidSpec, JacobiAlgebroidSpec,
                        dual_bracket_induced, heisenberg_algebroid,
                        heisenberg_jacobi, so3_algebroid, so3_jacobi,
                        t1_algebroid, t1_embed, t1_split, tangent_algebroid)
from .lifts import (algebroid_complete_lift, breve, complete_lift_tangent,
                    gauge_pphi, gauge_transport, jacobi_lift,
                    jacobi_lift_algebroid, jacobi_lift_pair, lift_charts,
                    poisson_lift, poisson_lift_algebroid, poissonization,
                    poissonization_skew, spec_euler, tilde)
from .verify import (Report, canonical_jacobi_structure, check_related_bidiff,
                     check_related_tensor, is_jacobi, is_poisson,
                     lemma1_suite, lemma2_suite, sn_axiom_battery,
                     theorem6_suite, theorem7_suite, theorem8_suite,
                     theorem10_suite)

__version__ = "0.1.0"
