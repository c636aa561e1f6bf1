"""Entangled coherent states from Kerr evolution and a beam splitter.

Typical use::

    >>> from kerrcat import entanglement_of_cat
    >>> round(entanglement_of_cat(1.0, 2).entropy_bits, 3)
    0.809
"""

from .coherent import (
    CoherentSuperposition,
    CoherentTerm,
    append_vacuum,
    certified_cutoffs,
    gram_matrix,
    inner,
    merge_terms,
    norm_squared,
    overlap,
    tail_bound,
    to_fock,
)
from .entanglement import (
    EntanglementResult,
    SchmidtSpectrum,
    entanglement_after_kerr,
    entanglement_of_cat,
    entropy,
    gram_spectrum,
    schmidt_decomposition,
    schmidt_fock,
)
from .exceptions import (
    BracketError,
    ConditioningError,
    ConsistencyError,
    CutoffError,
    DimensionError,
    TruncationWarning,
    ZeroNormError,
)
from .fock import (
    FockVector,
    TwoModeFock,
    apply_annihilation,
    apply_creation,
    apply_number,
    default_cutoff,
    fidelity,
    inner_product,
    make_coherent_state,
    make_number_state,
    tensor,
    truncation_tail,
)
from .kerr import (
    FourierCoefficients,
    evolve_fock,
    fourier_coefficients,
    fourier_coefficients_dft,
    gauss_phase,
    kerr_cat,
    kerr_phase,
    resubstitution_residual,
)
from .optics import (
    ModeUnitary,
    balanced_splitter,
    make_entangled_cat,
    phase_shifts,
    transform_coherent,
    transform_fock,
)

__version__ = "0.1.0"
