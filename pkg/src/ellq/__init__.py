"""Certified computations with infinite systems of linear and multiplicative
polynomial equations over lq sequence spaces: pairings and norms with
rigorous truncation bounds, minimum-norm solutions of finite subsystems,
dual lower bounds, norm traces, and boundedness certificates."""

from .bounded import BoundedValue
from .errors import (
    CertifiedInfeasible,
    ConvergenceTooSlow,
    EllqError,
    Infeasible,
    InvalidArity,
    InvalidBase,
    InvalidExponent,
    InvalidInput,
    NotConverged,
    NotInSpace,
    OutsideHalfPlane,
    ToleranceNotMet,
    TooLarge,
    UndefinedRatio,
    UnsupportedNorm,
    UnsupportedRepresentation,
)
from .examples import (
    DirichletSpec,
    HellySpec,
    dirichlet_spec_from_json,
    dirichlet_system,
    geometric_base,
    helly_explicit_solution,
    helly_lower_bound,
    helly_spec_from_json,
    helly_system,
)
from .polynomials import (
    MembershipReport,
    MultiplicativePolynomial,
    enumerate_degree_tuples,
    eval_bruteforce,
    eval_product_form,
    membership_check,
    polynomial_from_json,
)
from .sequences import (
    Combination,
    ConjugatePair,
    FiniteSupport,
    PowerLaw,
    SeqRep,
    TailRestriction,
    holder_pairing,
    inner_l2,
    lp_norm,
    make_conjugate,
    power_coordinates,
    seqrep_from_json,
    tail_norm_bound,
)
from .solver import (
    Certificate,
    GramMatrix,
    LinearSystem,
    MinNormResult,
    NormTrace,
    PolynomialSystem,
    TraceEntry,
    certify,
    feasibility_search_boxed,
    gram_matrix,
    min_norm_l2,
    min_norm_truncated_q,
    norm_trace,
    riesz_ratio,
    riesz_sup_search,
    system_from_json,
)
from .zeta import zeta, zeta_tail

__version__ = "0.1.0"
