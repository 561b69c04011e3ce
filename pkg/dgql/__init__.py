from .barkoszul import (
    AugmentedFiniteAlgebra,
    BasisElement,
    bar_complex,
    bar_report,
    dual_bar,
    dual_bar_quiver,
    graded_trivial_extension_algebra,
)
from .dgalg import (
    DGQuiverAlgebra,
    check_d_squared,
    cohomology_dims,
    extend_leibniz,
    hereditary_shadow,
    solve_weights,
)
from .error import (
    DGQLError,
    IncompatibleError,
    InternalError,
    ParseError,
    PreconditionError,
    SemanticError,
    VerificationError,
)
from .field import BaseField, PrimeField, RationalField, field_from_spec
from .frobenius import (
    FDModule,
    FiniteAlgebra,
    ModuleMap,
    SelfInjectiveAlgebra,
    certify,
    check_self_injective,
    coresolution_complex,
    cosyzygy,
    injective_envelope,
    shifted_hom,
    stable_hom,
    syzygy,
)
from .ginzburg import Potential, cyclic_derivative, ginzburg_dg, jacobian
from .quiver import Arrow, GradedQuiver, Path, is_tree, unique_walk
from .series import PathSeries, TwoSidedIdeal, groebner_truncated, quotient_dims
from .trivext import (
    RadSquareZeroAlgebra,
    cy_symmetry_check,
    trivial_extension,
    twisted_dual,
    verify_iso,
    walk_rescale_iso,
)
from . import config as _config

__all__ = [
    "Arrow",
    "AugmentedFiniteAlgebra",
    "BaseField",
    "BasisElement",
    "DGQLError",
    "DGQuiverAlgebra",
    "FDModule",
    "FiniteAlgebra",
    "GradedQuiver",
    "IncompatibleError",
    "InternalError",
    "ModuleMap",
    "ParseError",
    "Path",
    "PathSeries",
    "Potential",
    "PreconditionError",
    "PrimeField",
    "RadSquareZeroAlgebra",
    "RationalField",
    "SelfInjectiveAlgebra",
    "SemanticError",
    "TwoSidedIdeal",
    "VerificationError",
    "bar_complex",
    "bar_report",
    "certify",
    "check_d_squared",
    "check_self_injective",
    "cohomology_dims",
    "coresolution_complex",
    "cosyzygy",
    "cy_symmetry_check",
    "cyclic_derivative",
    "dual_bar",
    "dual_bar_quiver",
    "extend_leibniz",
    "field_from_spec",
    "ginzburg_dg",
    "graded_trivial_extension_algebra",
    "groebner_truncated",
    "hereditary_shadow",
    "injective_envelope",
    "is_tree",
    "jacobian",
    "quotient_dims",
    "setup_dgql",
    "shifted_hom",
    "solve_weights",
    "stable_hom",
    "syzygy",
    "trivial_extension",
    "twisted_dual",
    "unique_walk",
    "verify_iso",
    "walk_rescale_iso",
]


def setup_dgql(
    default_truncation: int = _config.DEFAULT_TRUNCATION,
    default_degrees: tuple[int, int] = _config.DEFAULT_DEGREES,
    default_cy_parameter: int = _config.DEFAULT_CY_PARAMETER,
    finiteness_bound: int = _config.FINITENESS_BOUND,
):
    if default_truncation < 1:
        raise ValueError("Default truncation must be at least 1")

    if default_degrees[0] > default_degrees[1]:
        raise ValueError("Default degree window must be nonempty")

    if finiteness_bound < 1:
        raise ValueError("Finiteness bound must be at least 1")

    _config.DEFAULT_TRUNCATION = int(default_truncation)
    _config.DEFAULT_DEGREES = (int(default_degrees[0]), int(default_degrees[1]))
    _config.DEFAULT_CY_PARAMETER = int(default_cy_parameter)
    _config.FINITENESS_BOUND = int(finiteness_bound)
