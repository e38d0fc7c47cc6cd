"""Exact metrics on the ideal space of AF algebras over the quantized interval."""

from .bratteli import (
    BratteliDiagram,
    EventualDescriptor,
    FiniteDescriptor,
    WidthMismatchError,
    ideal_closure,
    is_ideal,
    level_set,
    parse_descriptor,
    parse_diagram,
    qi_diagram,
    serialize_descriptor,
    serialize_diagram,
    symdiff_level,
    to_finite,
    validate_diagram,
)
from .exact import (
    BinaryWord,
    EmptyRangeError,
    ExactRational,
    format_rational,
    format_word,
    geom_block,
    parse_rational,
    parse_word,
    pow2,
    word_weight,
    word_xor,
)
from .metrics import (
    CertifiedValue,
    ComparisonReport,
    DepthMismatchError,
    EmptySpectrumError,
    MalformedComparisonError,
    NonConstantDifferenceError,
    closed_form_dbeta,
    closed_form_dhausdorff,
    closed_form_dphi,
    compare,
    d_beta,
    d_beta_truncated,
    d_hausdorff_ideal,
    d_phi,
    d_phi_truncated,
    first_disagreement,
)
from .qi import (
    ZERO,
    ClosedSubsetQI,
    DescriptorConventionError,
    EmptySetError,
    QIPoint,
    closed_set_of_ideal,
    contains,
    format_closed_set,
    hausdorff,
    ideal_of_closed_set,
    paper_table_descriptor,
    parse_closed_set,
    point_distance,
)

__version__ = "0.1.0"
