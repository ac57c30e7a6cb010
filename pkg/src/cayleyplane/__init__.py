"""Cayley graphs of group presentations, 2-bases of their cycle spaces and planarity checks."""

from .cayley import BallUnsupported, CayleyGraph, Edge, build_ball, build_graph, translate
from .complexes import ComplexModel, FlatnessVerdict, build_simplified_complex, flatness_verdict
from .cyclespace import (
    CircuitBasis,
    ClosedWalk,
    LeavesBall,
    TwoBasisVerdict,
    circuit_of_walk,
    generates_cycle_space,
    is_two_basis,
    relator_circuits,
    walk_of_relator,
)
from .embedding import (
    BallVapVerdict,
    CannotRealize,
    ConnectivityReport,
    NonPlanarWitness,
    RotationEmbedding,
    ball_vap_diagnostic,
    check_translate_faces,
    connectivity,
    embedding_from_two_basis,
    enumerate_faces,
    test_planarity,
)
from .presentation import (
    EmptyRelator,
    Generator,
    Presentation,
    PresentationError,
    PresentationSyntaxError,
    UnknownGenerator,
    cyclic_reduce,
    free_reduce,
    parse_presentation,
)
from .vapcheck import VapVerdict, check_edge_incidence, check_subword_condition, check_vap_presentation
from .wordproblem import (
    GroupModel,
    Incomplete,
    Limits,
    ModelIncomplete,
    coset_enumerate,
    kb_complete,
    solve_word_problem,
)

__version__ = "0.1.0"
