"""Exact order-n parafermion algebra on an even lattice with numerical
reflection-positivity verification of Gibbs trace functionals."""

from .exponents import (
    ExponentVector,
    add,
    circ,
    complement,
    degree,
    reflect_vector,
    unit_vector,
    wedge,
    zero_vector,
)
from .algebra import (
    PhaseExponent,
    Polynomial,
    Side,
    SideClass,
    adjoint,
    build_X,
    canonical_product,
    classify,
    gauge_apply,
    hermitian_pair,
    hermiticity_condition,
    reflect,
    zeta_power,
    omega_power,
)
from .representation import (
    Representation,
    build_generators,
    clock_shift,
    decompose,
    to_matrix,
    trace_monomial,
    verify_yamazaki,
)
from .hamiltonian import (
    CouplingRule,
    CouplingTable,
    HamiltonianSpec,
    assemble,
    baxter,
    build_h0,
    check_symmetries,
    load_spec,
    validate_couplings,
)
from .rp import (
    RPReport,
    check_rp,
    conservation_law_check,
    counterexample_f,
    family_check,
    gram_psd,
    loop_expectation,
    matrix_exp,
    rp_bounds_check,
    rp_functional,
    trotter_approximant,
)

__version__ = "0.1.0"
