"""
Local operators: complex functions on the finite transformation groupoid.

A LocalOperator stores its values densely as ``coefficients[σ, X]`` (config
index by flip index). Under the canonical isomorphism the delta function at
the arrow (σ, X) becomes the matrix unit |ι_X σ⟩⟨σ|, and convolution

    (f * g)(σ, X) = Σ_Y f(ι_Y σ, X − Y) · g(σ, Y)

becomes the matrix product. Operators are immutable and safe to share across
threads.
"""

import logging
from typing import Any

import numpy as np

from ...core.config import get_settings
from ...core.errors import (
    DimensionError,
    RegionError,
    RegionMismatchError,
    RegionTooLargeError,
)
from .lattice import FlipSet, GroupoidArrow, Region, SpinConfiguration, flip_apply
from .tables import (
    action_table,
    difference_table,
    digit_table,
    negation_table,
    project_indices,
)

logger = logging.getLogger(__name__)


def check_region_size(region: Region) -> None:
    cap = get_settings().max_sites
    if len(region) > cap:
        raise RegionTooLargeError(len(region), cap)


class LocalOperator:
    """
    Element of C(G_Λ), equivalently a q^|Λ| × q^|Λ| complex matrix.
    """

    __slots__ = ("_region", "_q", "_coefficients")

    def __init__(self, region: Region, coefficients: Any, q: int = 2):
        check_region_size(region)
        dimension = q ** len(region)
        array = np.array(coefficients, dtype=complex)
        if array.shape != (dimension, dimension):
            raise DimensionError(
                f"Coefficient table of shape {array.shape} does not fit "
                f"{len(region)} sites with q = {q}"
            )
        array.setflags(write=False)
        self._region = region
        self._q = q
        self._coefficients = array

    @property
    def region(self) -> Region:
        return self._region

    @property
    def q(self) -> int:
        return self._q

    @property
    def coefficients(self) -> np.ndarray:
        return self._coefficients

    @property
    def dimension(self) -> int:
        return self._coefficients.shape[0]

    @property
    def _n(self) -> int:
        return len(self._region)

    @classmethod
    def zero(cls, region: Region, q: int = 2) -> "LocalOperator":
        dimension = q ** len(region)
        return cls(region, np.zeros((dimension, dimension), dtype=complex), q)

    @classmethod
    def identity(cls, region: Region, q: int = 2) -> "LocalOperator":
        dimension = q ** len(region)
        coefficients = np.zeros((dimension, dimension), dtype=complex)
        coefficients[:, 0] = 1.0
        return cls(region, coefficients, q)

    @classmethod
    def delta(cls, arrow: GroupoidArrow) -> "LocalOperator":
        region, q = arrow.region, arrow.config.q
        dimension = q ** len(region)
        coefficients = np.zeros((dimension, dimension), dtype=complex)
        coefficients[arrow.config.index(), arrow.flip.index()] = 1.0
        return cls(region, coefficients, q)

    @classmethod
    def from_matrix(cls, region: Region, matrix: Any, q: int = 2) -> "LocalOperator":
        """
        Inverse of :meth:`to_matrix`.

        Raises:
            DimensionError: If the matrix is not q^|Λ| × q^|Λ|
        """
        check_region_size(region)
        m = np.asarray(matrix, dtype=complex)
        dimension = q ** len(region)
        if m.shape != (dimension, dimension):
            raise DimensionError(
                f"Matrix of shape {m.shape} does not match dimension {dimension}"
            )
        act = action_table(len(region), q)
        sources = np.arange(dimension)[:, None]
        return cls(region, m[act, sources], q)

    def to_matrix(self) -> np.ndarray:
        act = action_table(self._n, self._q)
        sources = np.arange(self.dimension)[:, None]
        matrix = np.zeros((self.dimension, self.dimension), dtype=complex)
        matrix[act, sources] = self._coefficients
        return matrix

    def value(self, arrow: GroupoidArrow) -> complex:
        self._require_region(arrow.region)
        return complex(self._coefficients[arrow.config.index(), arrow.flip.index()])

    __getitem__ = value

    def _require_region(self, region: Region) -> None:
        if region != self._region:
            raise RegionMismatchError(f"Expected region {self._region}, got {region}")

    def _require_compatible(self, other: "LocalOperator") -> None:
        if other.region != self._region or other.q != self._q:
            raise RegionMismatchError(
                f"Operators on {self._region} (q={self._q}) and "
                f"{other.region} (q={other.q})"
            )

    def __add__(self, other: "LocalOperator") -> "LocalOperator":
        self._require_compatible(other)
        return LocalOperator(self._region, self._coefficients + other.coefficients, self._q)

    def __sub__(self, other: "LocalOperator") -> "LocalOperator":
        self._require_compatible(other)
        return LocalOperator(self._region, self._coefficients - other.coefficients, self._q)

    def __neg__(self) -> "LocalOperator":
        return LocalOperator(self._region, -self._coefficients, self._q)

    def __mul__(self, scalar: complex) -> "LocalOperator":
        if isinstance(scalar, LocalOperator):
            return NotImplemented
        return LocalOperator(self._region, self._coefficients * scalar, self._q)

    __rmul__ = __mul__

    def __truediv__(self, scalar: complex) -> "LocalOperator":
        return LocalOperator(self._region, self._coefficients / scalar, self._q)

    def __matmul__(self, other: "LocalOperator") -> "LocalOperator":
        return convolve(self, other)

    def adjoint(self) -> "LocalOperator":
        """f*(σ, X) = conj f(ι_X σ, −X)."""
        act = action_table(self._n, self._q)
        neg = negation_table(self._n, self._q)
        return LocalOperator(
            self._region, np.conj(self._coefficients[act, neg[None, :]]), self._q
        )

    def trace(self) -> complex:
        return complex(self._coefficients[:, 0].sum())

    def embed(self, larger: Region) -> "LocalOperator":
        """
        f ⊗ 𝟙 on a region containing this one.

        Raises:
            RegionError: If ``larger`` does not contain the operator's region
        """
        if not self._region.issubset(larger):
            raise RegionError(f"{larger} is not a superset of {self._region}")
        if larger == self._region:
            return self
        inner = larger.positions(self._region)
        outer = larger.positions(larger - self._region)
        digits = digit_table(len(larger), self._q)
        projected = project_indices(digits, inner, self._q)
        outside_identity = ~digits[:, list(outer)].any(axis=1)
        coefficients = (
            self._coefficients[projected[:, None], projected[None, :]]
            * outside_identity[None, :]
        )
        return LocalOperator(larger, coefficients, self._q)

    def split_tensor(self, inner: Region) -> np.ndarray:
        """
        Matrix as a 4-index array ``T[i, o, j, p]`` = ⟨i o| M |j p⟩.

        ``i, j`` index configurations of ``inner`` and ``o, p`` those of the
        rest of the region, each in its own sorted order.
        """
        n, q = self._n, self._q
        pos_in = list(self._region.positions(inner))
        pos_out = list(self._region.positions(self._region - inner))
        d_in, d_out = q ** len(pos_in), q ** len(pos_out)
        tensor = self.to_matrix().reshape((q,) * (2 * n))
        axes = pos_in + pos_out + [n + p for p in pos_in] + [n + p for p in pos_out]
        return tensor.transpose(axes).reshape(d_in, d_out, d_in, d_out)

    def slice(
        self,
        inner: Region,
        config: SpinConfiguration,
        flip: FlipSet | None = None,
    ) -> "LocalOperator":
        """
        (Id ⊗ ev_{(ω, X)})(f): the block ⟨ι_X ω| f |ω⟩ over the outside sites.

        Args:
            inner: Sites kept as an operator
            config: Outside configuration ω on region − inner
            flip: Outside flip X (identity when omitted)
        """
        outside = self._region - inner
        if config.region != outside:
            raise RegionMismatchError(
                f"Outside configuration on {config.region}, expected {outside}"
            )
        if flip is None:
            flip = FlipSet.identity(outside, self._q)
        target = flip_apply(config, flip)
        block = self.split_tensor(inner)[:, target.index(), :, config.index()]
        return LocalOperator.from_matrix(inner, block, self._q)

    def partial_trace(self, keep: Region) -> "LocalOperator":
        tensor = self.split_tensor(keep)
        return LocalOperator.from_matrix(keep, np.einsum("iaja->ij", tensor), self._q)

    def norm(self) -> float:
        """Operator (spectral) norm of the matrix image."""
        if self.dimension == 0:
            return 0.0
        return float(np.linalg.norm(self.to_matrix(), 2))

    def max_abs(self) -> float:
        return float(np.abs(self._coefficients).max(initial=0.0))

    def is_diagonal(self, atol: float = 1e-12) -> bool:
        return bool(np.all(np.abs(self._coefficients[:, 1:]) <= atol))

    def is_self_adjoint(self, atol: float = 1e-12) -> bool:
        return self.allclose(self.adjoint(), atol=atol)

    def allclose(self, other: "LocalOperator", atol: float = 1e-12) -> bool:
        self._require_compatible(other)
        return bool(np.max(np.abs(self._coefficients - other.coefficients), initial=0.0) <= atol)

    def __repr__(self) -> str:
        nonzero = int(np.count_nonzero(self._coefficients))
        return f"LocalOperator(region={self._region}, q={self._q}, nonzero={nonzero})"


def convolve(f: LocalOperator, g: LocalOperator) -> LocalOperator:
    """
    Groupoid convolution, the matrix product under :meth:`LocalOperator.to_matrix`.

    Only flip columns where ``g`` is nonzero contribute, so sparse operators
    such as Hamiltonians convolve quickly.

    Raises:
        RegionMismatchError: If the operators live on different regions
    """
    if f.region != g.region or f.q != g.q:
        raise RegionMismatchError(f"Cannot convolve operators on {f.region} and {g.region}")
    n, q = len(f.region), f.q
    act = action_table(n, q)
    diff = difference_table(n, q)
    fc, gc = f.coefficients, g.coefficients
    result = np.zeros_like(fc)
    for y in np.flatnonzero(np.any(gc != 0, axis=0)):
        intermediate = act[:, y]
        result += fc[intermediate[:, None], diff[None, :, y]] * gc[:, y][:, None]
    return LocalOperator(f.region, result, q)


def adjoint(f: LocalOperator) -> LocalOperator:
    return f.adjoint()


def to_matrix(f: LocalOperator) -> np.ndarray:
    return f.to_matrix()


def from_matrix(region: Region, matrix: Any, q: int = 2) -> LocalOperator:
    return LocalOperator.from_matrix(region, matrix, q)


def embed(f: LocalOperator, larger: Region) -> LocalOperator:
    return f.embed(larger)


def trace(f: LocalOperator) -> complex:
    return f.trace()


def tensor(f: LocalOperator, g: LocalOperator) -> LocalOperator:
    """f ⊗ g for operators on disjoint regions."""
    if not f.region.isdisjoint(g.region):
        raise RegionError(f"Regions {f.region} and {g.region} overlap")
    union = f.region | g.region
    return convolve(f.embed(union), g.embed(union))


def random_operator(
    region: Region, rng: np.random.Generator, hermitian: bool = False, q: int = 2
) -> LocalOperator:
    """Operator with independent standard complex Gaussian matrix entries."""
    dimension = q ** len(region)
    matrix = rng.standard_normal((dimension, dimension)) + 1j * rng.standard_normal(
        (dimension, dimension)
    )
    if hermitian:
        matrix = (matrix + matrix.conj().T) / 2
    return LocalOperator.from_matrix(region, matrix, q)
