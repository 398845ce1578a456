"""Exact computations in truncated free graded differential Lie algebras."""

from .algebra import (
    AlgebraContext,
    AlgebraError,
    ContextMismatch,
    Element,
    Generator,
    Morphism,
    apply_morphism,
    bracket,
    component,
    concat_product,
    make_context,
    validate_chain_morphism,
)
from .series import (
    CoefficientTable,
    ad_apply,
    ad_series,
    bernoulli,
    dynkin_project,
    epsilon_coefficients,
    exp,
    exp_ad,
    f_coefficients,
    is_lie,
    log,
    xi_coefficients,
)
from .differential import (
    DGLPresentation,
    Derivation,
    apply_derivation,
    check_mc,
    contractible_algebra,
    exactness_report,
    make_derivation,
    perturbed_differential,
    theta_tilde,
)
from .bch import bch, bch_many, bullet, bullet_many, bullet_universal, conjugate_by_exp
from .correctors import (
    bullet_cycle_left,
    bullet_cycle_right,
    sigma,
    solve_translation,
    tau,
)

from .simplices import (
    ModelReport,
    SimplexModel,
    build_model,
    coface_morphism,
    top_boundary_phi,
    verify_model,
)
from .frontend import (
    ParseError,
    deserialize,
    deserialize_algebra,
    format_element,
    parse_expression,
    serialize,
    serialize_algebra,
)

__version__ = "0.1.0"
