"""Monte Carlo QPSK bit error rate over the fitted channel."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field
from scipy.special import erfc

from ..core.types import ComplexMatrix
from ..infrastructure.seeding import derive_seed
from .capacity import CapacityInputs

logger = logging.getLogger(__name__)


class BerConfig(BaseModel):
    """Symbol count per stream, master seed and the block partitioning.

    Blocks of ``block_size`` symbols draw from seeds derived from (seed, block
    index), so the estimate does not depend on ``workers``.
    """

    model_config = ConfigDict(frozen=True)

    n_symbols: int = Field(default=100_000, ge=1)
    seed: int = Field(default=0, ge=0)
    block_size: int = Field(default=8192, ge=1)
    workers: int = Field(default=1, ge=1)


def qpsk_ber_theory(
    snr: float | npt.NDArray[np.float64],
) -> float | npt.NDArray[np.float64]:
    """Gray-coded QPSK bit error rate Q(sqrt(snr)), snr = |h|^2 Pt / N0."""
    values = 0.5 * erfc(np.sqrt(snr) / math.sqrt(2.0))
    if np.ndim(values) == 0:
        return float(values)
    return np.asarray(values, dtype=np.float64)


def _block_errors(
    H: ComplexMatrix, inputs: CapacityInputs, count: int, seed: int
) -> int:
    rng = np.random.default_rng(seed)
    streams = H.shape[1]
    bits = rng.integers(0, 2, size=(2, streams, count))
    # Gray map: bit 0 -> sign of I, bit 1 -> sign of Q
    symbols = ((1 - 2 * bits[0]) + 1j * (1 - 2 * bits[1])) / math.sqrt(2.0)
    sigma = math.sqrt(inputs.n0 / 2.0)
    noise = sigma * (
        rng.standard_normal((H.shape[0], count))
        + 1j * rng.standard_normal((H.shape[0], count))
    )
    received = math.sqrt(inputs.pt) * (H @ symbols) + noise
    if inputs.alpha != 0.0:
        received = received / inputs.alpha
    errors = np.count_nonzero((received.real < 0) != (bits[0] == 1))
    errors += np.count_nonzero((received.imag < 0) != (bits[1] == 1))
    return int(errors)


def ber_qpsk(H: ComplexMatrix, inputs: CapacityInputs, config: BerConfig) -> float:
    """Fraction of wrongly detected bits over y = sqrt(Pt) H s + n.

    s holds unit-energy QPSK symbols, n ~ CN(0, N0) per receive port. Each
    port is divided by the fitted alpha (when nonzero) and decided on the
    signs of its real and imaginary parts.
    """
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError("H must be square")
    n_blocks = math.ceil(config.n_symbols / config.block_size)
    counts = [
        min(config.block_size, config.n_symbols - b * config.block_size)
        for b in range(n_blocks)
    ]
    seeds = [derive_seed(config.seed, b) for b in range(n_blocks)]

    def run(block: int) -> int:
        return _block_errors(H, inputs, counts[block], seeds[block])

    if config.workers > 1 and n_blocks > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            errors = sum(pool.map(run, range(n_blocks)))
    else:
        errors = sum(run(b) for b in range(n_blocks))

    total_bits = 2 * H.shape[1] * config.n_symbols
    logger.debug("BER: %d errors in %d bits (%d blocks)", errors, total_bits, n_blocks)
    return errors / total_bits
