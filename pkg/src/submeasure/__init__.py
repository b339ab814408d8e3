"""Calculus for strong submeasures on finite spaces."""

from .correspondence import (
    Correspondence,
    EndoCorrespondence,
    compose,
    identity_correspondence,
)
from .dynamics import (
    MarkovMeasure,
    OrbitSFT,
    build_orbit_sft,
    cesaro_average,
    kahler_entropy,
    largest_invariant_below,
    lift_invariant_measure,
    markov_entropy,
    parry_measure,
    projection_inequality_report,
    smallest_invariant_above,
    submeasure_entropy,
    topological_entropy,
)
from .errors import (
    ModelError,
    ModelIncompleteError,
    NonConvergenceError,
    PreconditionError,
    SchemaError,
    SpaceMismatchError,
    SubmeasureError,
)
from .intersection import (
    SignedFamily,
    build_exceptional_family,
    build_line_family,
    family_sum,
    least_negative,
    minimal_negative_mass,
    precedes,
)
from .measures import (
    PositiveMeasure,
    SignedMeasure,
    StrongSubmeasure,
    combine,
    dirac,
    is_dominated,
    jordan_decompose,
    uniform,
    weak_limit,
)
from .models import (
    build_blowup_model,
    build_cremona_model,
    build_transcendental_model,
    cycle_model,
    full_relation_model,
    golden_mean_model,
    point_mass_sup,
)
from .space import FiniteSpace, FunctionVector, indicator_basis

__version__ = "0.1.0"
