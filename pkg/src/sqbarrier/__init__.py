"""Resonances of the 3-D square barrier potential.

The same resonance spectrum is computed three independent ways: zeros of the
incoming outer amplitude F_l2 (poles of the S matrix), complex eigenvalues
under the purely outgoing boundary condition (the 4x4 interface
determinant), and poles of the outgoing Green function.  On top of the pole
set the package evaluates Gamow eigenfunctions, S-matrix and Green-function
residues, and the exponential decay law of shell-detection probabilities.
"""

from .errors import (
    CertificationError,
    ConfigError,
    DegenerateWavenumberError,
    DomainError,
    IncompleteSearchError,
    MethodDisagreementError,
    PoleEvaluationError,
    RootDivergenceError,
    SquareBarrierError,
    SuspiciousPoleError,
    SymmetryViolationError,
    UnreliableContourError,
    UnsupportedOrderError,
)
from .gamow import (
    ComponentWave,
    DecayObservation,
    GamowState,
    component_wave,
    component_wave_factors,
    decay_probability,
    decaying_state,
    emission_speed,
    gamow_wavefunction,
    gamow_wavefunction_deriv,
    growing_state,
    probability_density,
    verify_outgoing_condition,
)
from .green import (
    derivative_jump,
    green_function,
    green_residue,
    incoming_outgoing_character,
    wronskian,
)
from .model import (
    BarrierSpec,
    ComplexEnergy,
    energy_from_k,
    inner_Q,
    k_from_energy,
    reference_barrier,
)
from .numerics import (
    ComplexRect,
    L_MAX,
    RootResult,
    complex_derivative,
    contour_residue,
    count_zeros,
    find_root,
    riccati_bessel_j,
    riccati_bessel_j_deriv,
    riccati_hankel,
    riccati_hankel_deriv,
)
from .resonances import (
    AgreementReport,
    GrowingPole,
    ResonancePole,
    determinant_condition,
    determinant_condition_l0,
    find_poles,
    green_denominator,
    pole_pair,
    resonance_condition_l0,
    three_method_agreement,
)
from .smatrix import phase_shift, phase_shift_scan, s_matrix, s_residue
from .solutions import (
    CoefficientSet,
    RadialFunction,
    chi,
    chi_deriv,
    coefficients,
    coefficients_closed_form,
    coefficients_l0_closed_form,
    coefficients_linear_solve,
    lippmann_schwinger_ket,
    psi_outgoing,
    psi_outgoing_deriv,
)
from .verify import CheckResult, run_invariant_suite

__version__ = "0.1.0"
