"""Sum-product experiments over prime fields.

Exact set algebra and energies in F_p, the A + BC point-plane arrangement in
PG(3, p), Plücker/Klein line geometry, exponential sums over primitive-root
powers, and a seeded harness that reports both sides of each inequality.
"""

from .prime_field import (FieldModulus, ModulusMismatchError, Residue, find_primitive_root,
                          inverse_array, is_prime, is_primitive_root, multiplicative_order,
                          subgroup, subgroup_elements)
from .sets import (EnergyValue, RepFunction, ResidueSet, SetFileError, additive_energy,
                   bilinear_solution_count, compose_a_plus_bc, difference_set, dilate,
                   energy_moment, katz_koester_mult, load_set, multiplicative_energy,
                   nfold_sum, parse_set, product_set, ratio_set, rep_function,
                   shifted_intersection, sumset, translate, write_set)
from .geometry import (Arrangement, ArrangementBudgetError, ProjPlane3, ProjPoint3,
                       build_theorem2_arrangement, count_incidences, incident,
                       max_collinear_planes, max_collinear_points)
from .klein import (KleinPlane, PluckerLine, alpha_plane, beta_plane, classify_intersection,
                    line_of_intersection, line_through, verify_intersection_laws)
from .expsums import (ExpSumSpec, double_sum, double_sum_naive, fourth_moment, hole_size,
                      parseval_check, single_sum)
from .harness import CheckerResult, Claim, ExactClaimViolation, NotInvariantError
from .ensemble import CHECKERS, GENERATORS, EnsembleSpec, generate_set, run_ensemble

__version__ = "0.1.0"
