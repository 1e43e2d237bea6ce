"""Finite spectral model of periodic distributions on the n-torus.

A distribution is represented by its complex coefficients with respect to the
orthonormal exponential basis, truncated to the symmetric box of multi-indices
``{k in Z^n : max_m |k_m| <= R}``.  The basis function with index k takes the
value ``(2*pi)^(-n/2) * exp(i<k, x>)`` on ``[-pi, pi)^n``, so every
``(2*pi)^(n/2)`` factor lives inside the synthesis/analysis transforms and
nowhere else.

Values are immutable after construction and every operation is a pure
function.  All scalar reductions go through :func:`tree_sum`, a fixed-order
pairwise reduction, so results do not depend on thread count or chunking.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

TWO_PI = 2.0 * np.pi

# Largest lattice cardinality we accept: (2R+1)^n must stay well inside the
# int64 range used for flat position arithmetic.
_MAX_CARDINALITY = np.iinfo(np.int64).max


def tree_sum(values: np.ndarray):
    """Sum an array with a fixed adjacent-pair reduction tree.

    Pairs element 2i with 2i+1 at every level; an odd trailing element is
    carried to the next level unchanged.  The reduction order is a pure
    function of the input length, hence bitwise reproducible regardless of
    parallelism in the surrounding code.
    """
    a = np.asarray(values).ravel()
    if a.size == 0:
        return a.dtype.type(0)
    while a.size > 1:
        even = a[: a.size - (a.size % 2)]
        paired = even[0::2] + even[1::2]
        if a.size % 2:
            paired = np.concatenate([paired, a[-1:]])
        a = paired
    return a[0]


def _freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Lattice:
    """Symmetric box of frequencies ``max_m |k_m| <= radius`` in Z^n.

    ``indices`` enumerates the box lexicographically (first coordinate most
    significant), which makes the enumeration identical across runs and is
    exactly the C-order raveling of the ``(2R+1,)*n`` coefficient cube.
    """

    n: int
    radius: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        if self.radius < 0:
            raise ValueError(f"radius must be >= 0, got {self.radius}")
        side = 2 * self.radius + 1
        if side ** self.n > _MAX_CARDINALITY:
            raise ValueError(
                f"lattice cardinality {side}^{self.n} overflows the platform integer"
            )

    @property
    def side(self) -> int:
        return 2 * self.radius + 1

    @property
    def size(self) -> int:
        return self.side ** self.n

    @property
    def shape(self) -> tuple:
        return (self.side,) * self.n

    @cached_property
    def indices(self) -> np.ndarray:
        """All multi-indices as an int64 array of shape (size, n)."""
        axes = np.meshgrid(
            *(np.arange(-self.radius, self.radius + 1, dtype=np.int64),) * self.n,
            indexing="ij",
        )
        return _freeze(np.stack([ax.ravel() for ax in axes], axis=1))

    def position(self, k) -> int:
        """Ordinal of multi-index k in the lexicographic enumeration."""
        k = np.asarray(k, dtype=np.int64)
        if k.shape != (self.n,):
            raise ValueError(f"expected a multi-index of length {self.n}, got {k}")
        if np.any(np.abs(k) > self.radius):
            raise ValueError(f"index {tuple(k)} outside lattice of radius {self.radius}")
        pos = 0
        for component in k:
            pos = pos * self.side + int(component) + self.radius
        return pos

    def contains(self, k) -> bool:
        k = np.asarray(k, dtype=np.int64)
        return k.shape == (self.n,) and bool(np.all(np.abs(k) <= self.radius))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Lattice)
            and self.n == other.n
            and self.radius == other.radius
        )

    def __hash__(self):
        return hash((self.n, self.radius))


def make_lattice(n: int, radius: int) -> Lattice:
    """Build the symmetric box lattice of the given dimension and radius."""
    return Lattice(n=n, radius=radius)


@dataclass(frozen=True)
class SpectralField:
    """A truncated periodic distribution: one complex coefficient per index.

    ``coeffs[i]`` is the distributional coefficient at ``lattice.indices[i]``.
    The field represents a real-valued distribution iff the coefficient at -k
    is the conjugate of the one at k (see :func:`is_real_valued`); this is a
    checkable predicate, not an enforced invariant.
    """

    lattice: Lattice
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.ascontiguousarray(self.coeffs, dtype=np.complex128)
        if coeffs.shape != (self.lattice.size,):
            raise ValueError(
                f"expected {self.lattice.size} coefficients, got shape {coeffs.shape}"
            )
        if not np.all(np.isfinite(coeffs.view(np.float64))):
            raise ValueError("coefficients must be finite (no NaN/Inf)")
        object.__setattr__(self, "coeffs", _freeze(coeffs))

    def cube(self) -> np.ndarray:
        """Coefficients reshaped to the (2R+1,)*n cube (lexicographic order)."""
        return self.coeffs.reshape(self.lattice.shape)

    def coefficient(self, k) -> complex:
        return complex(self.coeffs[self.lattice.position(k)])


@dataclass(frozen=True)
class GridFunction:
    """Complex samples of a band-limited function on the uniform tensor grid.

    Node j (per axis) sits at ``x_j = -pi + 2*pi*j/N``, j = 0..N-1.
    """

    samples: np.ndarray

    def __post_init__(self):
        samples = np.ascontiguousarray(self.samples, dtype=np.complex128)
        if samples.ndim < 1:
            raise ValueError("samples must have at least one axis")
        if any(length != samples.shape[0] for length in samples.shape):
            raise ValueError(f"grid must be square per axis, got shape {samples.shape}")
        if samples.shape[0] < 1:
            raise ValueError("grid must be nonempty")
        if not np.all(np.isfinite(samples.view(np.float64))):
            raise ValueError("samples must be finite (no NaN/Inf)")
        object.__setattr__(self, "samples", _freeze(samples))

    @property
    def n(self) -> int:
        return self.samples.ndim

    @property
    def points_per_axis(self) -> int:
        return self.samples.shape[0]


def grid_nodes(points_per_axis: int) -> np.ndarray:
    """1-D sample abscissae x_j = -pi + 2*pi*j/N."""
    return -np.pi + TWO_PI * np.arange(points_per_axis) / points_per_axis


def delta_field(lattice: Lattice, k) -> SpectralField:
    """Field with coefficient 1 at k and 0 elsewhere (one basis distribution)."""
    coeffs = np.zeros(lattice.size, dtype=np.complex128)
    coeffs[lattice.position(k)] = 1.0
    return SpectralField(lattice, coeffs)


def constant_field(lattice: Lattice) -> SpectralField:
    """The regular distribution of the all-ones function.

    Its only nonzero coefficient is ``(2*pi)^(n/2)`` at k = 0, since the
    all-ones function is ``(2*pi)^(n/2)`` times the index-0 basis function.
    """
    coeffs = np.zeros(lattice.size, dtype=np.complex128)
    coeffs[lattice.position((0,) * lattice.n)] = TWO_PI ** (lattice.n / 2.0)
    return SpectralField(lattice, coeffs)


def conj_field(u: SpectralField) -> SpectralField:
    """Field of the complex-conjugate distribution: coeff at k = conj(coeff at -k).

    Negating a multi-index reverses the lexicographic enumeration, so this is
    a conjugated reversal of the coefficient vector.
    """
    return SpectralField(u.lattice, np.conj(u.coeffs[::-1]))


def linear_combine(a, u: SpectralField, b, v: SpectralField) -> SpectralField:
    """Coefficientwise a*u + b*v on a shared lattice."""
    _require_same_lattice(u, v)
    return SpectralField(u.lattice, a * u.coeffs + b * v.coeffs)


def real_part_field(u: SpectralField) -> SpectralField:
    """Projection onto real-valued distributions: (u + conj(u)) / 2."""
    return linear_combine(0.5, u, 0.5, conj_field(u))


def is_real_valued(u: SpectralField, tol: float = 1e-12) -> bool:
    """Whether the field satisfies the reality criterion coeff(-k) = conj(coeff(k))."""
    residual = u.coeffs - np.conj(u.coeffs[::-1])
    scale = max(float(np.max(np.abs(u.coeffs))), 1.0)
    return float(np.max(np.abs(residual))) <= tol * scale


def restrict_field(u: SpectralField, radius: int) -> SpectralField:
    """Restriction of the coefficient field to a smaller (or equal) radius."""
    if radius > u.lattice.radius:
        raise ValueError(
            f"cannot restrict radius {u.lattice.radius} field to larger radius {radius}"
        )
    target = make_lattice(u.lattice.n, radius)
    offset = u.lattice.radius - radius
    window = tuple(slice(offset, offset + target.side) for _ in range(u.lattice.n))
    return SpectralField(target, u.cube()[window].ravel())


def _require_same_lattice(u: SpectralField, v: SpectralField):
    if u.lattice != v.lattice:
        raise ValueError(
            f"lattice mismatch: (n={u.lattice.n}, R={u.lattice.radius}) vs "
            f"(n={v.lattice.n}, R={v.lattice.radius})"
        )


def _alternating_signs(lattice: Lattice) -> np.ndarray:
    # exp(i<k, x_j>) at x_j = -pi + 2*pi*j/N splits into (-1)^(sum k) times the
    # plain DFT phase exp(2*pi*i <k, j>/N); these are the (-1)^(sum k) factors.
    parity = np.sum(lattice.indices, axis=1) % 2
    return 1.0 - 2.0 * parity


def synthesize(u: SpectralField, points_per_axis: int) -> GridFunction:
    """Evaluate the field on the uniform grid via inverse FFT.

    samples(x_j) = sum_k coeff_k * (2*pi)^(-n/2) * exp(i<k, x_j>); requires
    points_per_axis >= 2R+1 so every lattice frequency has its own DFT bin.
    """
    lattice = u.lattice
    N = points_per_axis
    if N < lattice.side:
        raise ValueError(
            f"grid too small: need at least {lattice.side} points per axis, got {N}"
        )
    spectrum = np.zeros((N,) * lattice.n, dtype=np.complex128)
    flat = np.ravel_multi_index(
        tuple((lattice.indices[:, axis] % N) for axis in range(lattice.n)),
        (N,) * lattice.n,
    )
    spectrum.ravel()[flat] = u.coeffs * _alternating_signs(lattice)
    samples = (N ** lattice.n) * np.fft.ifftn(spectrum) * TWO_PI ** (-lattice.n / 2.0)
    return GridFunction(samples)


def analyze(g: GridFunction, lattice: Lattice) -> SpectralField:
    """Recover lattice coefficients from grid samples (trapezoidal rule).

    coeff_k = (2*pi)^(n/2) / N^n * sum_j samples(x_j) * exp(-i<k, x_j>); exact
    for inputs band-limited to the lattice when N >= 2R+1.
    """
    if g.n != lattice.n:
        raise ValueError(f"grid dimension {g.n} != lattice dimension {lattice.n}")
    N = g.points_per_axis
    if N < lattice.side:
        raise ValueError(
            f"grid too small: need at least {lattice.side} points per axis, got {N}"
        )
    spectrum = np.fft.fftn(g.samples)
    flat = np.ravel_multi_index(
        tuple((lattice.indices[:, axis] % N) for axis in range(lattice.n)),
        (N,) * lattice.n,
    )
    coeffs = (
        TWO_PI ** (lattice.n / 2.0)
        / (N ** lattice.n)
        * _alternating_signs(lattice)
        * spectrum.ravel()[flat]
    )
    return SpectralField(lattice, coeffs)


def lp_norm(g: GridFunction, p: float) -> float:
    """Uniform-grid rectangle-rule L_p norm over [-pi, pi)^n.

    Exact in the limit of grid refinement for smooth integrands; for p = 2 and
    band-limited input it reproduces the l2 coefficient norm (Parseval).
    """
    if not p >= 1.0:
        raise ValueError(f"integrability index must satisfy p >= 1, got {p}")
    weight = (TWO_PI / g.points_per_axis) ** g.n
    total = float(np.real(tree_sum(np.abs(g.samples) ** p)))
    return (weight * total) ** (1.0 / p)
