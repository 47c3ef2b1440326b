"""Classical loss/gradient concentration diagnostics for parameterized quantum circuits."""

from ._plateau import (  # noqa: F401
    BinaryPolynomial,
    CapExceeded,
    ClassValidationError,
    DiscriminatorParams,
    DiscriminatorSpec,
    Observable,
    ParameterizedCircuit,
    PauliString,
    ProductState,
    __version__,
    build_cartan,
    build_efficient_su2,
    classify_observable,
    discriminator_forward,
    estimate_blackbox_coefficients,
    estimate_gradient_variance,
    estimate_observable,
    estimate_term,
    estimator_variance_check,
    extract_coefficients,
    fixture,
    fixture_names,
    full_cone,
    init_discriminator,
    locality_profile,
    moment_suite,
    observable_to_poly,
    oracle_gradient,
    oracle_loss,
    orthogonality,
    poly_to_observable,
    propagate,
    run_counterexamples,
    validate_circuit_class,
    verify_weight_bound,
    walsh_coefficients,
)
