"""
Evaluators of e^{−β(H_Λ + W_Λ)}: matrix oracle, truncated path series and
Monte Carlo over Poisson jump patterns.

All three return values as LocalOperators on the bundle's enlarged region,
where the coefficient at (σ, X) sums the paths that start in ι_X σ at t = 0
and end in σ at t = 1.
"""

import itertools
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg

from ...core.config import get_settings
from ...core.errors import TruncationError
from ...core.events import EvaluationCompletedEvent, EventBus, SampleBlockCompletedEvent
from ..groupoid import FlipSet, LocalOperator, Region, pauli_column
from ..interaction import HamiltonianBundle, Interaction, split
from ..point_process import RngStream, poisson_sample_batch
from .cache import get_density_cache
from .density import density_product
from .jump_path import JumpPath
from .simplex import ordered_weight, series_tail_bound, simplex_series

logger = logging.getLogger(__name__)

EVALUATORS = ("oracle", "series", "mc")
SERIES_METHODS = ("resummed", "paths")


@dataclass(frozen=True)
class SeriesResult:
    """
    An evaluated exponential with its error certificate.

    Attributes:
        value: The operator
        order: Truncation order (largest jump count seen, for Monte Carlo)
        tail_bound: Certified bound on the truncation error in operator norm
        evaluator: "oracle", "series" or "mc"
        standard_error: Per-coefficient standard error (Monte Carlo only)
        samples: Number of Monte Carlo samples
        seed: Monte Carlo seed
        terms: Per-order contributions of the series
    """

    value: LocalOperator
    order: int
    tail_bound: float
    evaluator: str
    standard_error: np.ndarray | None = None
    samples: int = 0
    seed: int | None = None
    terms: tuple[LocalOperator, ...] = ()

    def __post_init__(self) -> None:
        if self.tail_bound < 0:
            raise ValueError("Tail bound must be non-negative")
        if self.evaluator not in EVALUATORS:
            raise ValueError(f"Unknown evaluator {self.evaluator!r}")


def exponentiate(operator: LocalOperator, scale: complex) -> LocalOperator:
    """
    e^{−scale·H} for self-adjoint H through its eigendecomposition.

    Results are cached by the digest of H and the scale.
    """
    cache = get_density_cache()
    matrix = operator.to_matrix()
    key = cache.make_key("exp", matrix, complex(scale))

    def compute() -> np.ndarray:
        hermitian = (matrix + matrix.conj().T) / 2
        eigenvalues, vectors = scipy.linalg.eigh(hermitian)
        return (vectors * np.exp(-complex(scale) * eigenvalues)) @ vectors.conj().T

    return LocalOperator.from_matrix(operator.region, cache.get_or_compute(key, compute))


def _emit(event_bus: EventBus | None, event: EvaluationCompletedEvent) -> None:
    if event_bus is not None:
        event_bus.emit(event)


def exp_oracle(
    bundle: HamiltonianBundle, beta: complex, event_bus: EventBus | None = None
) -> LocalOperator:
    """
    e^{−β(H + W)} by exact diagonalization.

    Raises:
        RegionTooLargeError: If the enlarged region exceeds the cap
    """
    started = time.perf_counter()
    value = exponentiate(bundle.total, beta)
    _emit(
        event_bus,
        EvaluationCompletedEvent(
            evaluator="oracle",
            region_size=len(bundle.enlarged),
            elapsed_ms=(time.perf_counter() - started) * 1000,
        ),
    )
    return value


def _oracle_segment(bundle: HamiltonianBundle, beta: complex) -> tuple[LocalOperator, float]:
    return exponentiate(bundle.total, beta), 0.0


def _tail_bound(bundle: HamiltonianBundle, beta: complex, order: int) -> float:
    return series_tail_bound(
        abs(beta) * bundle.total_rate, abs(beta) * bundle.classical_norm(), order
    )


def _resummed_terms(bundle: HamiltonianBundle, beta: complex, order: int) -> list[np.ndarray]:
    generator = np.diag(-beta * bundle.energies().astype(complex))
    coupling = -beta * bundle.coupling().to_matrix()
    return simplex_series(generator, coupling, order)


class JumpTable(NamedTuple):
    """Flip index, rate, −e^{iπθ} and σ^(3) sign column of every jump term."""

    flips: np.ndarray
    rates: np.ndarray
    phases: np.ndarray
    signs: np.ndarray


def _path_table(bundle: HamiltonianBundle) -> JumpTable:
    region = bundle.enlarged
    flips = np.array(
        [FlipSet.from_sites(region, j.flip_sites).index() for j in bundle.jumps], dtype=np.int64
    )
    rates = np.array([j.rate for j in bundle.jumps], dtype=float)
    phases = np.array([-j.phase for j in bundle.jumps], dtype=complex)
    signs = np.array(
        [pauli_column(region, j.sign_sites, ())[1] for j in bundle.jumps]
    ).reshape(len(bundle.jumps), 2 ** len(region))
    return JumpTable(flips, rates, phases, signs)


def _enumerate_from(
    end: int,
    bundle: HamiltonianBundle,
    beta: complex,
    order: int,
    table: JumpTable,
) -> np.ndarray:
    """
    Per-order sums over jump-label sequences of the paths ending in ``end``.

    Returns an (order + 1, dimension) array indexed by jump count and net flip.
    """
    flips, rates, phases, signs = table
    energies = bundle.energies()
    dimension = energies.shape[0]
    contributions: list[dict[int, list[complex]]] = [dict() for _ in range(order + 1)]
    for n in range(order + 1):
        for labels in itertools.product(range(len(flips)), repeat=n):
            configs = [end]
            for label in reversed(labels):
                configs.append(configs[-1] ^ int(flips[label]))
            configs.reverse()
            weight = complex(ordered_weight(energies[configs], beta))
            for k, label in enumerate(labels):
                weight *= beta * rates[label] * phases[label] * signs[label, configs[k]]
            contributions[n].setdefault(configs[0] ^ end, []).append(weight)

    result = np.zeros((order + 1, dimension), dtype=complex)
    for n, by_flip in enumerate(contributions):
        for flip, values in by_flip.items():
            result[n, flip] = complex(
                math.fsum(v.real for v in values), math.fsum(v.imag for v in values)
            )
    return result


def _path_terms(
    bundle: HamiltonianBundle, beta: complex, order: int, workers: int
) -> list[np.ndarray]:
    table = _path_table(bundle)
    dimension = 2 ** len(bundle.enlarged)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(
            pool.map(
                lambda end: _enumerate_from(end, bundle, beta, order, table), range(dimension)
            )
        )
    stacked = np.stack(rows, axis=1)  # (order + 1, config, flip)
    return [LocalOperator(bundle.enlarged, stacked[n]).to_matrix() for n in range(order + 1)]


def exp_series(
    bundle: HamiltonianBundle,
    beta: complex,
    order: int | None = None,
    boundary: JumpPath | None = None,
    method: str = "resummed",
    workers: int | None = None,
    event_bus: EventBus | None = None,
) -> SeriesResult:
    """
    Truncated path series of e^{−β(H + W)}, or of the density D^α for a boundary path.

    Args:
        bundle: Split Hamiltonian
        beta: Inverse temperature (complex allowed)
        order: Truncation order N, the configured default when omitted
        boundary: Boundary path on the outside sites; the result is then the
            inside density D^α with each segment evaluated by the series
        method: "resummed" sums each order exactly through one block matrix
            exponential; "paths" enumerates jump-label sequences and is meant
            for small N
        workers: Thread count for the "paths" method
        event_bus: Receives an EvaluationCompletedEvent

    Raises:
        TruncationError: If order < 0
        UnsupportedSpinError: If q ≠ 2
        ValueError: For an unknown method
    """
    settings = get_settings()
    order = settings.series_order if order is None else order
    if order < 0:
        raise TruncationError(f"Truncation order must be non-negative, got {order}")
    if method not in SERIES_METHODS:
        raise ValueError(f"Unknown series method {method!r}, expected one of {SERIES_METHODS}")
    started = time.perf_counter()

    if boundary is not None:

        def segment(conditioned: HamiltonianBundle, scaled: complex) -> tuple[LocalOperator, float]:
            inner = exp_series(conditioned, scaled, order, method=method, workers=workers)
            return inner.value, inner.tail_bound

        value, tail = density_product(bundle, boundary, beta, segment)
        result = SeriesResult(value, order, tail, "series")
    else:
        if method == "resummed" or not bundle.jumps:
            blocks = _resummed_terms(bundle, beta, order)
        else:
            blocks = _path_terms(bundle, beta, order, workers or settings.workers)
        terms = tuple(LocalOperator.from_matrix(bundle.enlarged, b) for b in blocks)
        value = LocalOperator.from_matrix(bundle.enlarged, sum(blocks[1:], blocks[0]))
        result = SeriesResult(value, order, _tail_bound(bundle, beta, order), "series", terms=terms)

    elapsed = (time.perf_counter() - started) * 1000
    logger.debug(
        f"Series on {len(bundle.enlarged)} sites, order {order}, method {method}: "
        f"tail bound {result.tail_bound:.3g} in {elapsed:.1f} ms"
    )
    _emit(
        event_bus,
        EvaluationCompletedEvent(
            evaluator="series",
            region_size=len(bundle.enlarged),
            order=order,
            tail_bound=result.tail_bound,
            elapsed_ms=elapsed,
        ),
    )
    return result


def boundary_density(
    phi: Interaction,
    inside: Region,
    path: JumpPath,
    beta: complex,
    method: str = "oracle",
    order: int | None = None,
) -> SeriesResult:
    """
    D^α on Λ for a boundary path α on O, with H^ω from the universe Λ ∪ O.

    ``method="oracle"`` diagonalizes each segment exactly, ``"series"`` uses
    the truncated path series and reports the propagated tail bound.

    Raises:
        RegionError: If the path overlaps Λ
        IncoherentPathError: If a jump signs sites outside Λ ∪ O
    """
    bundle = split(phi, inside, inside | path.region)
    if method == "series":
        return exp_series(bundle, beta, order, boundary=path)
    if method != "oracle":
        raise ValueError(f"Unknown density method {method!r}")
    value, _ = density_product(bundle, path, beta, _oracle_segment)
    return SeriesResult(value, 0, 0.0, "oracle")


def _mc_block(
    bundle: HamiltonianBundle,
    beta: float,
    stream: RngStream,
    size: int,
    table: JumpTable,
) -> tuple[np.ndarray, np.ndarray, int]:
    """Sums of values and squared moduli per (end config, net flip) for one block."""
    flips, rates, phases, signs = table
    energies = bundle.energies()
    dimension = energies.shape[0]
    batch = poisson_sample_batch(beta * rates, stream, size)
    normalization = math.exp(float(beta * rates.sum()))

    # label −1 pads: no flip, unit factor and sign
    flip_ext = np.append(flips, 0)
    factor_ext = np.append(phases, 1.0)
    sign_ext = np.vstack([signs, np.ones((1, dimension))])
    labels = np.where(batch.labels < 0, len(flips), batch.labels)

    sums = np.zeros((dimension, dimension), dtype=complex)
    squares = np.zeros((dimension, dimension))
    chunk = max(1, (1 << 20) // max(size, 1))
    for first in range(0, dimension, chunk):
        ends = np.arange(first, min(first + chunk, dimension))
        current = np.broadcast_to(ends, (size, ends.shape[0])).copy()
        phase = np.ones(current.shape, dtype=complex)
        energy = np.zeros(current.shape)
        next_time = np.ones(size)
        for k in reversed(range(labels.shape[1])):
            t = batch.times[:, k]
            lab = labels[:, k]
            energy += (next_time - t)[:, None] * energies[current]
            before = current ^ flip_ext[lab][:, None]
            phase *= factor_ext[lab][:, None] * sign_ext[lab[:, None], before]
            current = before
            next_time = t
        energy += next_time[:, None] * energies[current]
        values = normalization * phase * np.exp(-beta * energy)
        net = current ^ ends[None, :]
        rows = np.broadcast_to(ends, current.shape)
        np.add.at(sums, (rows, net), values)
        np.add.at(squares, (rows, net), np.abs(values) ** 2)
    return sums, squares, int(batch.counts.max(initial=0))


def exp_mc(
    bundle: HamiltonianBundle,
    beta: float,
    samples: int,
    seed: int,
    block_size: int | None = None,
    workers: int | None = None,
    event_bus: EventBus | None = None,
) -> SeriesResult:
    """
    Monte Carlo estimate of e^{−β(H + W)} over Poisson jump patterns.

    Each sample draws jumps with rates β·r_X on [0, 1]; for every end
    configuration the pattern forces a path whose value e^{βΣr}·phase·e^{−β∫H^(0)}
    lands on the arrow fixed by its net flip. Samples are split into blocks of
    ``block_size`` with independent streams (seed, block index), so the result
    does not depend on the number of workers.

    Raises:
        ValueError: If samples < 1 or β is not a non-negative real
    """
    if samples < 1:
        raise ValueError(f"Monte Carlo needs at least one sample, got {samples}")
    if isinstance(beta, complex) or beta < 0:
        raise ValueError(f"Monte Carlo needs a non-negative real β, got {beta}")
    settings = get_settings()
    block_size = block_size or settings.mc_block_size
    blocks = [
        (index, min(block_size, samples - start))
        for index, start in enumerate(range(0, samples, block_size))
    ]
    table = _path_table(bundle)
    started = time.perf_counter()

    dimension = 2 ** len(bundle.enlarged)
    sums = np.zeros((dimension, dimension), dtype=complex)
    squares = np.zeros((dimension, dimension))
    longest = 0
    with ThreadPoolExecutor(max_workers=workers or settings.workers) as pool:
        results = pool.map(
            lambda block: _mc_block(bundle, beta, RngStream(seed, block[0]), block[1], table),
            blocks,
        )
        for (index, size), (block_sums, block_squares, block_longest) in zip(
            blocks, results, strict=True
        ):
            sums += block_sums
            squares += block_squares
            longest = max(longest, block_longest)
            if event_bus is not None:
                event_bus.emit(
                    SampleBlockCompletedEvent(
                        block_index=index, samples=size, total_blocks=len(blocks)
                    )
                )

    mean = sums / samples
    if samples > 1:
        variance = np.maximum(squares / samples - np.abs(mean) ** 2, 0.0) * samples / (samples - 1)
    else:
        variance = np.zeros_like(squares)
    standard_error = np.sqrt(variance / samples)

    elapsed = (time.perf_counter() - started) * 1000
    logger.debug(f"Monte Carlo with {samples} samples in {len(blocks)} blocks: {elapsed:.1f} ms")
    _emit(
        event_bus,
        EvaluationCompletedEvent(
            evaluator="mc", region_size=len(bundle.enlarged), order=longest, elapsed_ms=elapsed
        ),
    )
    return SeriesResult(
        LocalOperator(bundle.enlarged, mean),
        longest,
        0.0,
        "mc",
        standard_error=standard_error,
        samples=samples,
        seed=seed,
    )
