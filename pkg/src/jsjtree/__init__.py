"""Cut-point and JSJ trees of finite graphs, symmetry quotients, and a
product-of-trees boundary model for pi-convergence."""
from .cutpoint import (
    adjacency_findings,
    build_cutpoint_tree,
    classify_relation,
    cut_point_pretree,
    inseparable_classes,
)
from .errors import GraphError, ModelFidelityError, PreconditionError
from .graph import (
    Graph,
    SeparationReport,
    components_after_removal,
    cut_pairs,
    cut_points,
    is_biconnected,
    is_cut_pair,
    is_cut_point,
    separates,
)
from .groups import (
    GraphOfGroups,
    SymmetryGroup,
    build_group,
    check_nonnesting,
    collapse_to_reduced,
    induced_action,
    orbits_and_stabilizers,
    quotient_graph_of_groups,
    refine,
)
from .harness import ValidationSummary, exhaustive_validate
from .jsj import (
    CyclicDecomposition,
    Gap,
    cyclic_decomposition,
    cyclic_order,
    gaps,
    is_inseparable_set,
    jsj_elements,
    jsj_report,
    jsj_tree,
)
from .pretree import (
    DecompositionTree,
    Pretree,
    PretreeElement,
    adjacent,
    between,
    interval,
    realize_tree,
    validate_pretree,
)
from .tits import (
    JoinPoint,
    PiConvergenceCertificate,
    TreeEnd,
    axis_ends,
    canonicalize,
    end_action,
    iterate_limit,
    limit_points,
    single_tree_dynamics,
    tits_diameter_sample,
    tits_distance,
    verify_pi_convergence,
)

__version__ = "0.1.0"
