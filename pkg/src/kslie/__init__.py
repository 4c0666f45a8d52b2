"""Exact verification, construction and search of k-symplectic structures on quadratic Lie algebras."""

from .construct import (
    DoubleExtensionDatum,
    abelian_ksymplectic,
    double_extension,
    oscillator,
    quadratic_product,
    six_dim_example,
    sl_n,
    sln_certificate,
    t_star_extension,
)
from .derivh2 import (
    admissible_derivations,
    common_kernel,
    derivation_space,
    h2_dimension,
    inner_derivations,
    skew_derivation_space,
)
from .ksymp import (
    KSymplecticCertificate,
    check_h_admissibility,
    obstruction_scan,
    search_ksymplectic,
    theta_decomposition,
    verify_certificate,
)
from .liealg import LieAlgebra, Subspace, center, check_jacobi, killing_form
from .quadform import BilinearForm, QuadraticLieAlgebra, check_cocycle, check_invariance, wedge
from .ratlin import KERNEL, Mat

__version__ = "0.1.0"
