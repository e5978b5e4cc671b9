"""Exact hyperstructures, hypervector spaces, inner products and set-valued
Gram-Schmidt, with finite-model search and a command-line verifier."""

from .fileformat import ParseError, StructureDocument, parse_structure, serialize
from .hyperspace import (
    HyperVectorSpace,
    StarOp,
    check_hvs_axioms,
    cone_space,
    echo_space,
    is_basis,
    is_linearly_dependent,
    is_weak_linearly_independent,
    linear_combination,
    rational_space,
    trivial_space,
)
from .hyperstructures import (
    Hyperfield,
    Hypergroup,
    Violation,
    check_hyperfield,
    check_hypergroup,
    check_hypergroup_consequences,
    krasner_hyperfield,
    prime_field,
    rational_hyperfield,
    replay,
    sign_hyperfield,
)
from .inner import (
    InnerProduct,
    LinearDependenceError,
    Norm,
    dot_product,
    gram_schmidt,
    is_orthogonal_set,
)
from .search import SearchSpec, enumerate_hyperfields, enumerate_hypergroups
from .setalg import FiniteSet, HyperOp, ScalarOp, StructureError

__version__ = "0.1.0"
