"""lvmb-kit: exact analysis of LVMB configuration data."""

__version__ = "0.1.0"

from .arrangement import (  # noqa: E402
    FundamentalField,
    k_count,
    point_in_V,
    subspace_contained_in_E,
    vanishing_nonempty,
)
from .config_model import (  # noqa: E402
    LVMBConfig,
    SubspaceFamily,
    ValidationReport,
    find_admissible_permutation,
    full_rank_check,
    parse_config,
    rank_condition_holds,
    serialize_config,
    validate,
)
from .lattice import (  # noqa: E402
    LatticePresentation,
    compute_a,
    compute_b,
    lattice_presentation,
    lattice_rank_check,
)
from .linalg_exact import ExactMatrix, GaussianRational, inverse, kernel_basis, rank  # noqa: E402
from .nvp import (  # noqa: E402
    BasisCertificate,
    DeficiencyWitness,
    NvpDecision,
    construct_certificate,
    decide_nvp,
    rank_mod_relations,
    verify_certificate,
)
