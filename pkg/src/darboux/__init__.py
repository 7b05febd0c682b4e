"""Exact-arithmetic builders and verifiers for shifted contact/symplectic Darboux models."""

from .errors import *  # noqa: F401,F403
from .forms import (
    Differential,
    Form,
    VectorField,
    apply_internal_differential,
    check_d_squared,
    contract,
    d_dR,
    de_rham_differential,
    wedge,
)
from .graded import (
    AlgebraSignature,
    GeneratorSpec,
    Point,
    ScalarElement,
    evaluate_at_point,
    make_algebra,
)
from .models import (
    ContactInstance,
    DarbouxSpec,
    ShiftClass,
    SymplecticInstance,
    build_alternative_contact_form,
    build_contact,
    build_symplectic,
    canonical_hamiltonian,
    check_master_equation,
    extend_with_artin_generators,
)
from .report import Check, CheckReport, CheckVerdict, emit_report
from .stacks import build_jet_instance, build_prequantum_instance
from .symplectify import (
    SymplectificationInstance,
    check_symplectification_nondegenerate,
    symplectify,
    verify_symplectification,
)
from .verify import (
    PairingMatrix,
    check_contact_axioms,
    check_form_identities,
    check_nondegenerate,
    pairing_matrices_at_point,
    sample_points,
    verify_instance,
    virtual_dimension,
)


def multiply(a: ScalarElement, b: ScalarElement) -> ScalarElement:
    return a * b


def partial_derivative(a: ScalarElement, g: str) -> ScalarElement:
    return a.partial(g)


__version__ = "0.1.0"
