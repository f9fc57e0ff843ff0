"""Orthogonality calculus on finite triads, with ludics and game instances."""
from ._bits import DEFAULT_BUDGET, EXHAUSTIVE, SAMPLED, Budget
from .entailment import EntailmentInstance, verify_entailment_laws
from .errors import (
    CapacityError,
    ConsistencyError,
    DesignError,
    FuelExceeded,
    ParseError,
    PolarityClash,
    TriadError,
)
from .formats import dump_functional, dump_triad, load_functional, load_triad, parse_triad
from .functionals import (
    ClassificationReport,
    Functional,
    FunctionalCollection,
    Verdict,
    classify,
    image,
    is_continuous,
    is_good,
    is_regular,
    is_semiregular,
    preimage,
    preserves_sem_consequence,
    preserves_specialization,
)
from .games import BooleanGame, LinearMap, game_to_triad, lift_linear_map, validate_linear_map
from .lattice import ClosedSetFamily, enumerate_closed_sets, lattice_join, lattice_meet
from .triad import (
    N,
    P,
    Polarity,
    TermRef,
    TermSet,
    Triad,
    closure,
    consequences,
    is_closed,
    orthogonal_set,
    orthogonal_terms,
    sem_consequence,
    specializes,
)

__version__ = "0.1.0"
