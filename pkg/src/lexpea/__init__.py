"""Lexicographic products of po-groups and pseudo effect algebras.

Finite and interval pseudo effect algebras, exhaustive Riesz-property
checkers, constructive refinement lifts through Z x_lex G, and n-perfect
slicings.
"""
from .descriptors import parse_group
from .enumeration import enumerate_peas
from .groups import (
    Capabilities,
    ConeGroup,
    FiniteGroup,
    Heisenberg,
    Integers,
    Lex,
    PoGroup,
    Status,
    Verdict,
    cyclic,
    ex29_group,
    ex210_group,
    heisenberg,
    is_directed_bounded,
    is_strong_unit_bounded,
    leq,
    lex,
    spot_check,
    srip_bounded,
    symmetric3,
)
from .nperfect import (
    CyclicWitness,
    MatrixMorphism,
    NDecomposition,
    NotFound,
    build_strong_nperfect,
    check_functor_laws,
    find_cyclic,
    find_n_decomposition,
    functor_on_morphism,
    is_central,
)
from .pea import (
    FinitePEA,
    IntervalPEA,
    check_axioms,
    chain,
    comp_left,
    comp_right,
    dumps_pea,
    gamma,
    ideals,
    is_commutative,
    is_homomorphism,
    left_minus,
    loads_pea,
    materialize,
    maximal_ideals,
    nfold,
    pea_add,
    right_minus,
)
from .refine import (
    RefineOracle,
    RefinementMatrix,
    RefinementTable,
    builtin_oracle,
    extend_to_group,
    finite_oracle,
    lift_group_refine,
    lift_pea_refine,
    mn_refine,
    validate_matrix,
    validate_table,
)
from .riesz import (
    PropertyReport,
    check_mn_rdp,
    check_rdp,
    check_rdp0,
    check_rdp1,
    check_rdp2,
    check_rip,
    com,
    implication_audit,
)

__version__ = "0.1.0"
