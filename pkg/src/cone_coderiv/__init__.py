"""Regular and limiting coderivatives of the projection onto the nonnegative orthant."""

from .coderivative_sets import (
    Box,
    BoxProduct,
    Equal,
    SpecialCase,
    Zero,
    contains,
    extreme_points,
    is_empty,
    limiting_coderivative_pieces,
    mordukhovich_coderivative,
    projection_self_member,
    regular_coderivative,
    scaled_excluded,
    special_cases,
)
from .cone_core import (
    IndexPartition,
    Regime,
    directional_derivative,
    partition,
    project,
    regime,
    stabilization_radius,
    truncate,
)
from .errors import (
    CapExceeded,
    ConeCoderivError,
    DegenerateInput,
    DimensionMismatch,
    EmptySet,
    InputError,
    PreconditionViolated,
    TooManyBoxes,
    TooManyBullets,
)
from .l2_model import (
    IndexSet,
    SeqBoxProduct,
    SparseSeq,
    finite_embed,
    positive_support_check,
    seq_mordukhovich_coderivative,
    seq_project,
    seq_regular_coderivative,
)
from .oracle import (
    QuotientReport,
    exact_sup_quotient,
    limiting_probe,
    quotient,
    witness_direction,
)

__version__ = "0.1.0"
