"""Exact computations with cellular algebras and their idempotent localizations."""

__version__ = "0.1.0"

from .algebra import Algebra, AlgebraElement, HomSpace, ModuleRep, hom_space, tensor_algebras
from .cellular_core import (
    CellDatum,
    CellPoset,
    GramData,
    action_matrix,
    blocks,
    cell_module,
    composition_factors,
    decomposition_matrix,
    gram_matrix,
    is_semisimple,
    jacobson_radical,
    lambda_zero,
    loewy_series,
    multiply,
    simple_dim,
    simple_module,
    tensor_cell_data,
    validate_cell_datum,
)
from .diagram_algebras import (
    ColouredDiagram,
    SetPartition,
    build_bubble,
    build_matrix_algebra,
    build_multicolour_partition,
    build_quiver_example,
    build_tl,
    check_localization_iso,
    compose_coloured,
    compose_set_partitions,
    oracle_semisimple_partition,
)
from .errors import (
    AssumptionViolation,
    CellAlgError,
    DomainError,
    InputError,
    ResourceLimitError,
    UnsupportedOperation,
)
from .exact_linalg import GF, QQ, ExactMatrix, Subspace, nullspace, rank, rref, solve
from .idempotent_split import (
    IdempotentDecomposition,
    blocks_via_localization,
    check_assumptions,
    check_gram_direct_sum,
    check_radical_decomposition,
    check_semisimple_equivalence,
    check_simple_dim_sum,
    colour_of,
    extend_hom,
    gram_block,
    localize,
    restrict_hom,
    v_module,
)
from .report import Report

__all__ = [name for name in dir() if not name.startswith("_")]
