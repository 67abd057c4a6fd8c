"""Exact SVD-based diagonalizing transceivers."""

from typing import NamedTuple

import numpy as np

from ..core.exceptions import RankDeficiencyError
from ..core.types import ComplexMatrix, RealVector

# singular values below this fraction of the largest count as zero
RANK_TOLERANCE = 1e-12


class SvdTriple(NamedTuple):
    """G = D diag(sigma) V^H with sigma non-increasing.

    ``rank`` counts the sigma above RANK_TOLERANCE * sigma_1.
    """

    D: ComplexMatrix
    sigma: RealVector
    V: ComplexMatrix
    rank: int


def svd_decompose(G: ComplexMatrix) -> SvdTriple:
    D, sigma, Vh = np.linalg.svd(np.asarray(G, dtype=np.complex128), full_matrices=True)
    largest = sigma[0] if sigma.size else 0.0
    rank = int(np.count_nonzero(sigma > RANK_TOLERANCE * largest)) if largest > 0 else 0
    return SvdTriple(D=D, sigma=sigma, V=Vh.conj().T, rank=rank)


def svd_ideal_transceivers(
    G: ComplexMatrix, streams: int
) -> tuple[ComplexMatrix, ComplexMatrix]:
    """P = V_S sigma_S^(-1/2) and Q = sigma_S^(-1/2) D_S^H, so that Q G P = I_S.

    Raises:
        RankDeficiencyError: If G has fewer than ``streams`` significant
            singular values.
    """
    triple = svd_decompose(G)
    if streams < 1 or triple.rank < streams:
        raise RankDeficiencyError(
            f"channel supports {triple.rank} streams, {streams} requested",
            rank=triple.rank,
            streams=streams,
        )
    scale = triple.sigma[:streams] ** -0.5
    precoder = triple.V[:, :streams] * scale[np.newaxis, :]
    combiner = scale[:, np.newaxis] * triple.D[:, :streams].conj().T
    return precoder, combiner
