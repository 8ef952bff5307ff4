"""Exact cohomology of bounded double complexes.

Gaussian-rational linear algebra, the four cohomologies, the column-filtration
spectral sequence, square/zigzag decompositions, symbolic verification of the
projective-bundle and blowup inverse formulas, and a zoo of finite models.
"""

from .gaussrat import GaussRat, gauss, parse_gaussrat
from .linalg import ExactMatrix, Subspace, kernel, image, rank
from .complexes import (
    ComplexMorphism,
    DoubleComplex,
    direct_sum,
    dot_complex,
    quotient_by_injection,
    shift_diag,
    square_complex,
    tensor,
    zigzag_complex,
)
from .cohomology import (
    aeppli,
    bott_chern,
    conjugate_dolbeault,
    de_rham,
    dolbeault,
    froelicher,
    hodge_filtration,
    hodge_structure_check,
    is_e1_quasi_iso,
    natural_maps,
)
from .zigzags import ZigzagShape, decompose, e1_equivalent, is_ddbar
from .formulas import (
    expansion_trace,
    verify_blowup_inverse,
    verify_projbundle_inverse,
)
from .models import (
    LieModel,
    blowup_model,
    builtin,
    from_lie_model,
    product_model,
    projbundle_model,
)
from .polynomials import IntPolynomial, PolyFamily, build_family, inversion_sum

__version__ = "0.1.0"
