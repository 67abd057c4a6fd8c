"""Reference transceivers: the SVD oracle and zero-forcing MIMO."""

from .svd import SvdTriple, svd_decompose, svd_ideal_transceivers
from .zero_forcing import zf_gain, zf_precoder

__all__ = [
    "SvdTriple",
    "svd_decompose",
    "svd_ideal_transceivers",
    "zf_gain",
    "zf_precoder",
]
