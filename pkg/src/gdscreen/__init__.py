"""Factor screening for two-level experiments via the Gauss-Dantzig selector.

The package provides the Dantzig selector solved as a linear program, the
clustering-thresholded Gauss-Dantzig selector (GDS), the GDS-ARM ensemble
that aggregates GDS over random interaction subsets, and a Monte-Carlo
harness scoring screening power and type-I error.
"""

from .errors import NumericalError, RankDeficiencyError, ScreeningError, ValidationError
from .model import (
    Design,
    Effect,
    ModelMatrix,
    all_interactions,
    build_model_matrix,
    effect_label,
    full_effects,
    interaction_column,
    main_effects,
    parse_effect_label,
)

__version__ = "0.1.0"

__all__ = [
    "Design",
    "Effect",
    "ModelMatrix",
    "NumericalError",
    "RankDeficiencyError",
    "ScreeningError",
    "ValidationError",
    "all_interactions",
    "build_model_matrix",
    "effect_label",
    "full_effects",
    "interaction_column",
    "main_effects",
    "parse_effect_label",
    "__version__",
]
