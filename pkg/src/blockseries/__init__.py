"""Fast power-series square roots and reciprocals over the complex numbers.

Blockwise algorithms compute both operations with a small, machine-checkable
number of FFTs: 4r - 3 length-2m transforms for the square root over r blocks
of size m, and 13s - 3 for the reciprocal over 3s blocks.  Every transform
goes through an explicit ledger so those counts are exact integers, not
estimates.  Classical doubling algorithms are included as base-case providers
and benchmark comparators, and O(n^2) coefficient recurrences serve as
independent oracles.
"""

from .baselines import recip_schonhage, sqrt_newton_coupled
from .blockwise import (
    BlockSeries,
    MissingSpectrumError,
    TransformCache,
    combined_block,
    decompose,
    product_block,
    shifted,
)
from .recip import RecipPlan, recip, recip_block_iter, third_order_step_identity_check
from .sqrt import SqrtPlan, choose_params, sqrt, sqrt_block_iter, sqrt_rem
from .transform import (
    Poly,
    Spectrum,
    TransformLedger,
    UnsupportedLengthError,
    cyclic_convolution,
    forward,
    inverse,
    is_supported,
    middle_product,
    next_supported,
    pointwise_mul,
)

__version__ = "0.1.0"

__all__ = [
    "BlockSeries",
    "MissingSpectrumError",
    "Poly",
    "RecipPlan",
    "Spectrum",
    "SqrtPlan",
    "TransformCache",
    "TransformLedger",
    "UnsupportedLengthError",
    "choose_params",
    "combined_block",
    "cyclic_convolution",
    "decompose",
    "forward",
    "inverse",
    "is_supported",
    "middle_product",
    "next_supported",
    "pointwise_mul",
    "product_block",
    "recip",
    "recip_block_iter",
    "recip_schonhage",
    "shifted",
    "sqrt",
    "sqrt_block_iter",
    "sqrt_newton_coupled",
    "sqrt_rem",
    "third_order_step_identity_check",
]
