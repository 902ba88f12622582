"""Spin-1/2 quasiprobability distributions on {-1,+1}^3.

Bloch-vector density matrices, Wigner-Weyl and Margenau-Hill characteristic
functions, their inversion to a trivariate mass function, and the
octahedral domain on which that mass function is a genuine distribution.
"""

from spinpmf.bloch import (
    BlochOutOfBall,
    BlochVector,
    DensityMatrix2,
    DomainClass,
    Ensemble,
    PureState,
    bloch_from_density,
    classify_domain,
    density_from_bloch,
    density_from_ensemble,
    octahedron_condition,
    purity,
    spin_expectation,
)
from spinpmf.charfn import (
    CharFnKind,
    CharFnValue,
    ProbePoint,
    bochner_gram,
    mh_cf_closed,
    mh_cf_oracle,
    pmf_fourier,
    wigner_weyl_cf,
)
from spinpmf.pauli import Matrix2, mat_exp_i, mat_mul, pauli, pauli_dot, pauli_exp, trace
from spinpmf.pmf import (
    DomainViolation,
    QuasiMassFunction,
    SpinPMF,
    independence_report,
    invert_cf_to_pmf,
    marginal,
    moments,
    pmf_from_bloch,
    quasi_from_bloch,
)
from spinpmf.sampling import BlochEstimate, SampleBatch, estimate_and_classify, estimate_bloch, sample

__version__ = "0.1.0"
