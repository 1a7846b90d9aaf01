"""Supporting-functional faces, approximate smoothness and approximate
Birkhoff-James orthogonality in finite-dimensional normed spaces."""
from .catalog import (
    closed_form_E,
    direct_sum_space,
    example31_space,
    load_space,
    prism_space,
    real_line,
    regular_polygon_space,
    space_from_dict,
)
from .config import DEFAULT_TOL, Tolerances
from .derivatives import DerivativePair, rho, rho_numeric, smoothness_gap
from .errors import CapabilityError, InputError
from .orthogonality import (
    additivity_report,
    check_def_inequality,
    eps_min,
    is_bj_orthogonal,
    lemma44_check,
    orthogonality_report,
)
from .spaces import INF, DirectSum, Lp, Polyhedral, dual_norm, dual_space, face_of_ball, norm, polar
from .support import (
    SpaceConstants,
    SupportFace,
    diam_support,
    direct_sum_support,
    smoothness_report,
    space_constants,
    support_set,
)

__version__ = "0.1.0"
