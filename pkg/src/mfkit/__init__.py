"""mfkit: exact matrix factorizations of multivariate polynomials.

Construction and validation of matrix factorizations over Q[x]: tensor
products in four block layouts, Koszul unit factorizations built on
difference quotients,
unitor morphisms with one-sided inverses, and homotopy-witness search.
"""

__version__ = "0.1.0"

from .poly import (  # noqa: F401
    Variable,
    Polynomial,
    PolyParseError,
    UndeclaredVariable,
    parse_poly,
    poly_to_str,
    substitute,
    divide_exact,
    diff_quotient,
    derivative,
    t_shift,
    InexactDivision,
)
from .matfac import (  # noqa: F401
    MatrixFactorization,
    Morphism,
    MorphismReport,
    NotAFactorization,
    NotAMorphism,
    PotentialMismatch,
    ShapeMismatch,
    make_factorization,
    direct_sum,
    make_morphism,
    validate_morphism,
    compose_morphisms,
    identity_morphism,
    zero_morphism,
    scalar_morphism,
    morphism_equivalence_check,
    serialize_factorization,
    parse_factorization,
)
from .tensor import (  # noqa: F401
    Variant,
    VariableOverlap,
    yoshino,
    graded_tensor_differential,
    tensor_morphisms,
    rename_vars,
    identify_vars,
)
from .unit import (  # noqa: F401
    UnitFactorization,
    UnitorBundle,
    koszul_unit,
    unitor_right,
    unitor_left,
    pi_row,
    naturality_check,
)
from .homotopy import (  # noqa: F401
    HomotopyWitness,
    WitnessReport,
    NotFoundWithinDegree,
    check_witness,
    find_witness,
    is_null_homotopic,
)
