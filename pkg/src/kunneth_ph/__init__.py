"""Persistent homology of product filtrations through the Künneth splitting."""

from .bottleneck import Diagram, bottleneck_by_degree, bottleneck_distance
from .barcode import Barcode, multiset_close, pointwise_rank
from .complex import (
    GF2,
    Cell,
    FieldSpec,
    FilteredComplex,
    InvalidFiltrationError,
    chain_complex_from_filtration,
    validate_filtration,
)
from .intervals import (
    DEFAULT_TOL,
    INF,
    HyperRectangle,
    Interval,
    UnsupportedCaseError,
    ext1_lp,
    hom_lp,
    hom_rect,
    lp_combine,
    tensor_lp,
    tensor_rect,
    tor1_lp,
)
from .kunneth import (
    PhiMap,
    ProductTerm,
    borel_moore_barcode,
    cochain_barcode,
    kunneth_product_barcode,
    kunneth_terms,
    product_filtered_complex,
    uct_cohomology_barcode,
)
from .metric import FiniteMetricSpace, product_metric, vietoris_rips, vr_barcode
from .reduction import ReducedBoundary, persistent_homology, reduce_boundary

__version__ = "0.1.0"
