"""Multipartite entanglement S2 = Tr(rho rho~), mixedness and spin-flip symmetry.

For any n-qubit density matrix the package evaluates purity, mixedness,
``S2``, the Hilbert-Schmidt distance to the spin-flipped state and the
resulting indistinguishability, together with the exact identities tying
them together. Named state families, two-qubit concurrence measures, a
Stokes-tensor cross-check and a randomized invariance harness complete it.
"""

from ._backend import NAME as BACKEND
from .catalog import (
    FamilySpec,
    basis_product,
    bell_diagonal,
    bell_state,
    cat_state,
    fully_mixed,
    mems,
    mixed_cat,
    w_state,
    werner,
)
from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    SpecParseError,
    SpinflipError,
    ValidationError,
)
from .harness import (
    apply_local,
    random_density,
    random_local_slocc,
    random_local_unitary,
    random_pure_state,
    verify_identities,
)
from .linalg import adjoint, hermitian_eigen, kron, matmul, psd_sqrt, trace
from .measures import (
    binary_entropy,
    concurrence_mixed,
    concurrence_pure,
    eof,
    eof_literal,
    pairwise_concurrence_sq,
    tangle_2,
)
from .states import (
    AnalysisReport,
    DensityMatrix,
    StateVector,
    analyze,
    hs_distance_sq,
    indistinguishability,
    mix,
    mixedness,
    n_tangle_pure,
    partial_trace,
    pure_density,
    purity,
    s_n_squared,
    spin_flip,
    spin_flip_vector,
)
from .stokes import (
    StokesTensor,
    density_from_stokes,
    euclidean_norm_sq,
    minkowski_norm_sq,
    stokes_from_density,
)

__version__ = "0.1.0"
