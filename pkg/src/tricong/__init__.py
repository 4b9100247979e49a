"""Exact verification of congruences for generalized central trinomial sums."""

__version__ = "0.1.0"

from .modmath import (
    ExactDivisionError,
    NotAUnitError,
    QuadExtElem,
    Residue,
    ResidueRing,
    RingMismatchError,
    ValuedResidue,
    binom_mod,
    exact_div_p,
    inv,
    is_prime,
    legendre_symbol,
    make_ring,
    p_adic_valuation,
    pow_mod,
    primes_between,
    qx_pow,
)
from .sequences import (
    GENERIC,
    P_DIVIDES_B,
    P_DIVIDES_C,
    SequenceWindow,
    TrinomialParams,
    harmonic_mod,
    legendre_poly_series,
    legendre_poly_value,
    trinomial_direct,
    trinomial_exact,
    trinomial_exact_run,
    trinomial_run,
)
from .special_sums import (
    PadicQuantity,
    fermat_quotient,
    finite_polylog,
    half_polylog2,
    qp_delta,
    s2_sum,
)
from .verifier import (
    TARGETS,
    CongruenceTarget,
    VerificationRecord,
    check_congruence,
    iter_congruence_records,
    lhs_power_sum,
    rhs_theorem1,
    rhs_theorem2,
    rhs_theorem3,
    sweep,
)
from .identity_suite import (
    IDENTITIES,
    LEMMAS,
    IdentityResult,
    LemmaResult,
    check_lemma_congruence,
    check_recurrence,
    eval_identity,
    run_identity_suite,
    run_lemma_suite,
)
from .report import Report, SweepConfig, emit_report, render

__all__ = [name for name in dir() if not name.startswith("_")]
