"""thetacert: certified theta-function numerics and proof verification.

The package evaluates the Jacobi theta functions theta2, theta4 and their
first three derivatives with rigorous truncation bounds, and mechanically
certifies the inequality chains proving that y^2 theta4'(y)/theta4(y) is
strictly convex and strictly decreasing on (0, oo), including reproduction
of every numeric constant those chains rest on.
"""

from .certify import CertificationReport, Check, Status, Witness, certify_sign
from .enclosure import (
    DEFAULT_CONFIG,
    ConvergenceError,
    DomainError,
    Enclosure,
    EnclosureError,
    EvalConfig,
    as_enclosure,
    current_precision,
    precision,
)
from .envelopes import (
    EnvelopeConstants,
    PAPER_CONSTANTS,
    admissibility_factor,
    check_c_admissible,
    log_grid,
    lower_envelope,
    tail_integral,
    upper_envelope,
    verify_sandwich,
)
from .exppoly import DegreeError, ExpPoly
from .modular import (
    MODULAR_COEFFICIENTS,
    f_modular,
    f_prime_modular,
    f_second_modular,
    theta2_via_modular,
    theta4_eval,
    theta4_via_modular,
    verify_modular_identity,
)
from .scanner import ExponentQuery, f_a_second, find_nonconvex_witness, scan_rows
from .theta import (
    f_lambert,
    f_prime_lambert,
    f_second_lambert,
    theta2_series,
    theta4_product,
    theta4_series,
)
from .verifier import (
    GreekConstants,
    QUANTITIES,
    TranscriptionError,
    collect_constants,
    compute_greek_constants,
    envelope_lower_bound,
    f_eval,
    f_prime,
    f_second,
    g_eval,
    g_prime,
    g_second,
    h_direct,
    h_reciprocal,
    small_y_bracket,
    verify_convexity,
    verify_decreasing_argument,
    verify_even_terms_large_y,
    verify_g_chain,
    verify_odd_terms_large_y,
    verify_small_y_chain,
)

__version__ = "0.1.0"
