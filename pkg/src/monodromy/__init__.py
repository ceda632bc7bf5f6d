"""Combinatorial monodromy of Lefschetz fibrations and braided plane curves."""

from .braid import BraidWord, artin_action, braid_equal, full_twist, generator
from .cover import (
    CoveringData,
    check_compatibility,
    fiber_genus,
    fiber_homology,
    is_liftable,
    lift_homology,
)
from .errors import (
    BoundExceeded,
    DisconnectedCover,
    Incompatible,
    InternalConsistencyError,
    InvalidFactor,
    MalformedInput,
    MonodromyError,
    NotCancellingPair,
    NotClosedAtInfinity,
    NotLiftable,
    RankMismatch,
)
from .factor import (
    Factor,
    Factorization,
    global_conjugate,
    hurwitz_equivalent,
    hurwitz_move,
    insert_node_pair,
    delete_node_pair,
    product,
    validate,
)
from .lefschetz import LFibration, euler_characteristic, fiber_sum, from_branch_data, sp_validity, total_space_h1
from .mcg import SpMatrix, standard_chain, sp_word, transvection, verify_relation
from .perm import Permutation
from .vankampen import Presentation, abelianization, count_homs, presentation, stabilized, structure_check
from .word import FreeAutomorphism, FreeWord
from .zlinalg import AbelianGroup, IntMatrix, cokernel, smith_normal_form

__version__ = "0.1.0"
