"""Python access to the bergman radial-measure library."""

from ._core import (
    ConvergenceError,
    DomainError,
    ParseError,
    Primitive,
    RadialMeasure,
    VerificationFailure,
    beta_direct,
    beta_series,
    beta_via_averages,
    carleson_verdict,
    circle_kernel_integral,
    d_log,
    gamma,
    gamma_range,
    gamma_via_averages,
    gamma_via_distribution,
    gram_matrix,
    kappa,
    kappa_sup,
    lip_kernel_integral,
    m_of_s,
    moment,
    normal_form,
    parse_measure,
    tail_mass,
    total_mass,
)

__all__ = [name for name in dir() if not name.startswith("_")]
