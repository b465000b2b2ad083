"""Uncertainty measures and uncertainty relations for a particle on a circle.

States are truncated coefficient vectors over the angular-momentum basis
(:mod:`circle_unc.states`); :mod:`circle_unc.observables` evaluates
expectation values and angle moments on a branch centred at the packet
maximum; :mod:`circle_unc.uncertainty` builds the K-R quantities and the
Gram-Robertson matrix; :mod:`circle_unc.oracle` re-derives everything by
grid quadrature.
"""
from .exceptions import CircleDomainError, DegenerateSuperpositionError, TruncationError
from .kernels import BACKEND
from .observables import (
    PhiMoments,
    WindowSpec,
    density,
    expect_expJ,
    expect_J_moments,
    expect_U_power,
    packet_center,
    wavefunction,
    windowed_phi_moments,
)
from .states import (
    CircleState,
    cat_state,
    coherent_state,
    fock_state,
    squeezed_coherent_state,
    superpose,
)
from .theta import cs_overlap, theta3
from .uncertainty import (
    GramMatrix,
    UncertaintyReport,
    gram_matrix,
    kr_uncertainties,
    uncertainty_report,
)

__version__ = "0.1.0"
