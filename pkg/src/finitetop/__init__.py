"""Finite-scale point-set topology workbench.

Spaces, filters, locales and pseudometric structures on carriers of at
most 16 points, with exhaustive validation everywhere exhaustion is
affordable, plus fixed-point solvers, a ranking iteration, a kernel
polynomial approximator and a propositional model builder.
"""

from .spaces import (
    FiniteSpace,
    SetFamily,
    ClosureTable,
    Preorder,
    NeighborhoodSystem,
    SeparationProfile,
    validate_base,
    generate_topology,
    closure_interior,
    topology_from_closure,
    induced_closure_table,
    topology_from_poset,
    topology_from_neighborhoods,
    separation_profile,
    specialization_order,
    is_dense,
    discrete_space,
    indiscrete_space,
    all_topologies,
)
from .filters import (
    PrincipalFilter,
    filter_from_base,
    is_ultrafilter,
    ultrafilter_at,
    image_filter,
    neighborhood_filter,
    limits,
    accumulation_points,
    trace_filter,
    all_filters,
)
from .construct import (
    PointMap,
    EquivalenceRelation,
    is_continuous,
    is_homeomorphism,
    initial_topology,
    final_topology,
    product,
    subspace,
    topological_sum,
    quotient,
    one_point_extension,
)
from .locales import (
    TwoPointMorphism,
    OpenFilter,
    heyting_implication,
    heyting_negation,
    points_of_locale,
    phi_map,
    irreducible_closed_sets,
    scott_topology,
    is_scott_continuous,
    hofmann_mislove_report,
)
from .pmetric import (
    PMetricSpace,
    RelationChain,
    RankedSets,
    StochasticMatrix,
    pmetric_from_matrix,
    bounded_transforms,
    topology_from_pmetric,
    metric_quotient,
    dist_to_set,
    hausdorff_distance,
    epsilon_net,
    pseudometric_from_chain,
    uniformity_from_partitions,
    ultrametric_from_rank,
    banach_fixed_point,
    pagerank,
)
from .approx import (
    GridFunction,
    sqrt_iteration,
    weierstrass_polynomial,
    kernel_ratio,
    simpson,
)
from .logic import (
    PropFormula,
    Theory,
    parse_formula,
    is_consistent,
    equivalence_mod_theory,
    lindenbaum_algebra,
    model_from_ultrafilter,
    stone_representation,
)
from .errors import FormatError, ValidationError
