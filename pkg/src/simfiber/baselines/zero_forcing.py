"""Zero-forcing precoding for the conventional S x S MIMO link."""

import math

import numpy as np

from ..core.exceptions import SingularChannelError
from ..core.types import ComplexMatrix

# reciprocal condition number below which G is treated as singular
_RCOND = 1e-12


def _inverse(G: ComplexMatrix) -> ComplexMatrix:
    rows, cols = G.shape
    if rows != cols:
        raise SingularChannelError("zero forcing needs a square channel", shape=G.shape)
    if not np.all(np.isfinite(G)) or np.linalg.cond(G) * _RCOND > 1.0:
        raise SingularChannelError("channel matrix is not invertible")
    try:
        return np.linalg.inv(G)
    except np.linalg.LinAlgError as e:
        raise SingularChannelError("channel matrix is not invertible") from e


def zf_gain(G: ComplexMatrix, pt: float) -> float:
    """c = sqrt(Pt / tr[(G G^H)^-1]), the diagonal of G P_zf."""
    inverse = _inverse(G)
    trace = float(np.vdot(inverse, inverse).real)
    return math.sqrt(pt / trace)


def zf_precoder(G: ComplexMatrix, pt: float) -> ComplexMatrix:
    """P_zf = c G^H (G G^H)^-1 with total power ||P_zf||_F^2 = Pt.

    Raises:
        SingularChannelError: If G is not square and invertible.
    """
    if pt <= 0:
        raise ValueError("pt must be positive")
    inverse = _inverse(G)
    trace = float(np.vdot(inverse, inverse).real)
    # G^H (G G^H)^-1 reduces to G^-1 for square invertible G
    return math.sqrt(pt / trace) * inverse
