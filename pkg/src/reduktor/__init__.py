"""Reduction numbers, reduction spectra and cores of standard graded algebras."""
from .errors import (
    GuardError,
    HomogeneityError,
    InconsistencyError,
    ReduktorError,
    ResourceError,
    SamplingError,
)
from .field import DEFAULT_PRIME, PrimeField
from .graded import Presentation, hilbert_function, validate_presentation
from .groebner import (
    Budget,
    Ideal,
    colon,
    eliminate,
    groebner_basis,
    intersect,
    krull_dimension,
    normal_form,
    radical_member,
    saturate,
)
from .poly import GREVLEX, LEX, MonomialOrder, PolyRing, Polynomial
from .reduction import (
    ReductionParams,
    big_reduction_number,
    build_reduction_matrix,
    generic_reduction_number,
    noether_test,
    random_linear_forms,
    reduction_number_by_substitution,
    reduction_number_of,
    reduction_spectrum,
    variety_chain_ideal,
)

__version__ = "0.1.0"
