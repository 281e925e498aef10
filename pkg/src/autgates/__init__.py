"""autgates: code automorphisms as fault-tolerant logical operations.

Computes permutation automorphism groups of classical and stabilizer
codes, the logical operations those automorphisms induce on CSS and
stabilizer codes, the group reachable when combined with transversal
CNOTs, and compiles reachable logical matrices into schedules of qubit
permutations and transversal CNOTs.
"""

from .codes import (
    CssCode,
    CyclicCodeSpec,
    LinearCode,
    bch_31_21,
    classify,
    construct_family,
    coset_state,
    css_from_pair,
    css_parameters,
    cyclic_code,
    cyclic_dual_spec,
    dual,
    generator_polynomial,
    hamming,
    minimum_distance,
    paper_22_7,
    reed_muller,
    simplex,
    weight_enumerator,
)
from .autsearch import (
    automorphism_group,
    brute_force_aut,
    intersect_aut,
    is_automorphism,
)
from .errors import CapacityError, InfeasibleError, UnsupportedStructureError
from .gf2 import BitMatrix, BitVector, Gf2Poly, factor_cyclic, kernel_basis, rref, solve
from .gf4stab import (
    Gf4Vector,
    StabilizerCode,
    load_stabilizer,
    stab_aut_group,
    stab_is_automorphism,
    stab_symplectic_rep,
    symplectic_inner,
)
from .logical import (
    InducedAction,
    LogicalMatrix,
    fourier_report,
    induced_action,
    phase_action,
    transversal_cnot,
    verify_coset_action,
)
from .matgroups import (
    AlgebraSpan,
    InvariantChain,
    MatrixGroup,
    algebra_span,
    build_g12,
    cyclic_block_structure,
    invariant_subspaces,
    matrix_group_order,
    restricted_block_group,
    rm_block_check,
    sl_order,
)
from .perms import PermGroup, Permutation, apply_perm, compose
from .structure import analyze_gate_group
from .synth import (
    AutData,
    Instruction,
    InstructionWord,
    Transvection,
    check_identities,
    lift_diagonal_transvection,
    realize_offdiag,
    synthesize,
    transvection_factorization,
    verify_word,
)

__version__ = "0.1.0"
