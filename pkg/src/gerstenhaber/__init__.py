"""Exact differential Gerstenhaber algebras of nilpotent Lie algebras with abelian complex structures."""

from .cohomology import HodgeSplit, hodge_split
from .errors import (
    BidegreeError,
    GerstenhaberError,
    InconsistentResidualError,
    JacobiError,
    ModelMismatchError,
    NonKodairaModelError,
    NotInImageError,
    ObstructedSeriesError,
    ParseError,
    PreconditionError,
    SingularParameterError,
    ValidationError,
)
from .exterior import Frame, GeneratorId, Monomial, Multivector, wedge
from .kodaira import build_phi, compute_table1, emit_table1, verify_golden, verify_isomorphism
from .kuranishi import (
    KodairaSeedParams,
    MCSeries,
    closed_form_kodaira,
    compare_series_to_closed_form,
    kuranishi_solve,
)
from .lie import (
    AlgebraModel,
    ComplexStructureSpec,
    LieAlgebraSpec,
    build_kodaira,
    compile_model,
    load_algebra_spec,
)
from .ops import dbar, dbar_gamma, maurer_cartan_residual, schouten
from .probe import conjecture_probe
from .scalars import GaussianRational

__version__ = "0.1.0"
