"""Infinite words coding beta-integers: factor and palindromic complexity."""

from .beta_numeration import (
    DEFAULT_PRECISION,
    BetaValue,
    GapDistances,
    QuadraticParams,
    RenyiExpansion,
    beta_expand,
    beta_integers,
    beta_of,
    beta_of_renyi,
    beta_reconstruct,
    gap_distances,
    parry_check,
    renyi_of_quadratic,
    unity_defect,
)
from .complexity import (
    ComplexityTable,
    UVTower,
    closed_form_delta_c,
    factor_complexity,
    t_map,
    tower_intervals,
    uv_tower,
)
from .errors import (
    BetawordsError,
    InvalidInputError,
    InvalidParamsError,
    PrecisionError,
    UnsupportedVariantError,
    VerificationError,
)
from .language import FactorLanguage
from .palindromes import (
    EPSILON,
    BranchSpec,
    PalindromeRecord,
    PalindromeTable,
    center_evolution,
    center_of,
    classify_tower_centers,
    closed_form_p,
    infinite_branches,
    is_palindrome,
    palindromes_of_length,
    palindromic_complexity,
    palindromic_extensions,
    reversal_closure_probe,
    t_map_palindrome_check,
    verify_identities,
)
from .substitution import (
    FixedPointStream,
    Substitution,
    fixed_point_prefix,
    is_primitive,
    parry_substitution,
    quadratic_substitution,
)

__version__ = "0.1.0"
