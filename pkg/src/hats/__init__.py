"""Hat guessing games, binary 1-coverings and q-ary strong coverings."""

from .core import (
    Alphabet,
    BudgetError,
    Code,
    ConstructionError,
    DimensionError,
    DomainError,
    ExplicitCode,
    HatsError,
    ImplicitCode,
    ParameterError,
    ParityCheck,
    filtered_parity_check,
    hamming_parity_check,
    read_code,
    syndrome_map,
    write_code,
)
from .game import (
    PASS,
    EvaluationReport,
    GameOutcome,
    evaluate,
    is_covering,
    is_perfect_strong_covering,
    is_strong_covering,
    play,
    strategy_from_code,
    winning_set,
)
from .constructions import (
    direct_sum_covering,
    gamma_q,
    generalized_construction,
    hamming_coset_covering,
    repetition_code,
    syndrome_construction,
    translate,
    verify_syndrome_level,
)

__version__ = "0.1.0"
