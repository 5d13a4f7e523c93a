"""Enumerate symbol sets in order of total weight and validate them against data."""

from ._backend import DEFAULT as BACKEND
from .alphabet import (
    AlphabetError,
    ComplexityBudget,
    Theory,
    WeightedAlphabet,
    builtin_alphabet,
    canonical,
    complexity,
    effective_max_q,
    parse_alphabet,
    render_theory,
    serialize_alphabet,
    theory,
)
from .enumerator import (
    EnumerationStats,
    TheoryLevels,
    brute_force_oracle,
    march,
    seed_singletons,
    squeeze_level,
)
from .validation import (
    ValidationFailure,
    ValidationOutcome,
    ValidationRecord,
    prune_supersets,
    trivial_validator,
)

__version__ = "0.1.0"
