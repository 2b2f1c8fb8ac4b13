"""Exact growth series and certified growth rates for three group families.

The package cross-checks three independent computations against each other:
breadth-first sphere counts in the Cayley graph, closed-form rational
generating functions, and certified real-root isolation for the rate
polynomials, plus tree-based certificates that pin growth from below.
"""

from .groups import (
    BsElement,
    GeneratorSet,
    Group,
    GroupError,
    LampElement,
    element_from_word,
    parse_group,
    parse_word,
    word_length,
)
from .series import (
    Polynomial,
    RationalFn,
    SeriesError,
    bs_growth_series,
    compare_series_to_counts,
    lamplighter_growth_series,
    parry_wreath,
    smallest_positive_pole,
    wreath_zz_series,
)
from .roots import (
    RootError,
    RootInterval,
    bs2_rate_polynomial,
    free_monoid_bound_polynomial,
    golden_ratio_polynomial,
    growth_rate_polynomial,
    identity_suite,
    silver_ratio_polynomial,
    unique_positive_root,
    verify_inequality_chain,
)
from .enumeration import (
    DEFAULT_MAX_STORED,
    ResourceCapExceeded,
    SphereCounts,
    ball_elements,
    enumerate_spheres,
    estimate_rate,
    free_monoid_distinctness,
)
from .trees import (
    BsVertex,
    LampVertex,
    TreeError,
    TreeSearchExhausted,
    act_on_vertex,
    base_vertex,
    children,
    classify_element,
    elliptic_orbit_check,
    parent,
    tree_distance,
    tree_meet,
)
from .certificates import (
    Certificate,
    CertificateError,
    PRESET_NAMES,
    certificate_from_words,
    check_ping_pong,
    preset_certificate,
)
from .verify import CRITERIA, SuiteOptions, SuiteReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "BsElement",
    "BsVertex",
    "Certificate",
    "CertificateError",
    "CRITERIA",
    "DEFAULT_MAX_STORED",
    "GeneratorSet",
    "Group",
    "GroupError",
    "LampElement",
    "LampVertex",
    "Polynomial",
    "PRESET_NAMES",
    "RationalFn",
    "ResourceCapExceeded",
    "RootError",
    "RootInterval",
    "SeriesError",
    "SphereCounts",
    "SuiteOptions",
    "SuiteReport",
    "TreeError",
    "TreeSearchExhausted",
    "act_on_vertex",
    "ball_elements",
    "base_vertex",
    "bs2_rate_polynomial",
    "bs_growth_series",
    "certificate_from_words",
    "check_ping_pong",
    "children",
    "classify_element",
    "compare_series_to_counts",
    "element_from_word",
    "elliptic_orbit_check",
    "enumerate_spheres",
    "estimate_rate",
    "free_monoid_bound_polynomial",
    "free_monoid_distinctness",
    "golden_ratio_polynomial",
    "growth_rate_polynomial",
    "identity_suite",
    "lamplighter_growth_series",
    "parent",
    "parry_wreath",
    "parse_group",
    "parse_word",
    "preset_certificate",
    "run_suite",
    "silver_ratio_polynomial",
    "smallest_positive_pole",
    "tree_distance",
    "tree_meet",
    "unique_positive_root",
    "verify_inequality_chain",
    "word_length",
    "wreath_zz_series",
]
