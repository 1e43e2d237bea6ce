"""Multiplier norms between H^s_p and H^(-t)_q on the truncated model.

For p = q = 2 the multiplication operator is a finite weighted convolution
matrix and its l2 operator norm is computed exactly (SVD for small lattices,
deterministic power iteration otherwise).  For general (p, q) only certified
lower bounds are reported: the supremum of the norm ratio over a finite test
family, which always contains the all-ones function so the classical
``|u|_{H^(-t)_q} / |E|_{H^s_p}`` certificate is included.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .calculus import SpaceIndex, bessel_weights, hs_norm, pointwise_product
from .conditions import conjugate_exponent, strichartz_case
from .generators import gen_distribution
from .lattice import (
    SpectralField,
    TWO_PI,
    constant_field,
    delta_field,
    make_lattice,
    restrict_field,
    tree_sum,
)

SVD_SIZE_LIMIT = 512
POWER_TOLERANCE = 1e-10
POWER_MAX_ITERATIONS = 10000

CSV_COLUMNS = (
    "n",
    "R",
    "s",
    "t",
    "p",
    "q",
    "mult_norm",
    "exact_flag",
    "inter_norm",
    "ratio",
    "cert",
)


class PowerIterationError(RuntimeError):
    """Power iteration failed to stagnate within the iteration budget."""

    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"power iteration did not converge in {iterations} iterations "
            f"(achieved relative residual {residual:.3e})"
        )


class HypothesisError(ValueError):
    """The Strichartz-type index hypotheses are not satisfied."""


@dataclass(frozen=True)
class MultiplierProblem:
    """One multiplier-norm instance: u acting from H^s_p into H^(-t)_q.

    The target smoothness is -t with t >= 0 stored explicitly; u's lattice is
    fixed for the whole problem.
    """

    u: SpectralField
    s: float
    t: float
    p: float
    q: float

    def __post_init__(self):
        if not (self.s >= 0 and self.t >= 0):
            raise ValueError(f"smoothness indices must satisfy s, t >= 0, got {self.s}, {self.t}")
        for name, value in (("p", self.p), ("q", self.q)):
            if not value > 1:
                raise ValueError(f"{name} must lie in (1, inf), got {value}")

    @property
    def n(self) -> int:
        return self.u.lattice.n


@dataclass(frozen=True)
class MultiplierReport:
    """Computed multiplier norm vs intersection norm for one instance."""

    n: int
    radius: int
    s: float
    t: float
    p: float
    q: float
    multiplier_norm: float
    exact: bool
    intersection_norm: float
    ratio: float
    lower_bound_certificate: float
    refinement: tuple

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "radius": self.radius,
            "s": float(self.s),
            "t": float(self.t),
            "p": float(self.p),
            "q": float(self.q),
            "multiplier_norm": self.multiplier_norm,
            "exact": self.exact,
            "intersection_norm": self.intersection_norm,
            "ratio": self.ratio,
            "lower_bound_certificate": self.lower_bound_certificate,
            "refinement": [[radius, norm] for radius, norm in self.refinement],
        }

    def csv_row(self) -> list:
        return [
            str(self.n),
            str(self.radius),
            repr(float(self.s)),
            repr(float(self.t)),
            repr(float(self.p)),
            repr(float(self.q)),
            repr(self.multiplier_norm),
            "1" if self.exact else "0",
            repr(self.intersection_norm),
            repr(self.ratio),
            repr(self.lower_bound_certificate),
        ]


def multiplier_matrix(prob: MultiplierProblem) -> np.ndarray:
    """Dense matrix of the multiplication operator in lifted l2 coordinates.

    Entry (l, k) is ``(2*pi)^(-n/2) * (1+|l|^2)^(-t/2) * coeff_{l-k}(u)
    * (1+|k|^2)^(-s/2)``; differences l-k outside u's lattice contribute zero
    (truncation closure).  Its l2 operator norm is the multiplier norm of the
    truncated model for p = q = 2.
    """
    if not (prob.p == 2 and prob.q == 2):
        raise ValueError("the exact multiplier matrix requires p = q = 2")
    lattice = prob.u.lattice
    idx = lattice.indices
    diff = idx[:, None, :] - idx[None, :, :]
    within = np.all(np.abs(diff) <= lattice.radius, axis=2)
    flat = np.zeros(diff.shape[:2], dtype=np.int64)
    for axis in range(lattice.n):
        flat = flat * lattice.side + (diff[:, :, axis] + lattice.radius)
    flat = np.where(within, flat, 0)
    conv = np.where(within, prob.u.coeffs[flat], 0.0)
    row_weights = bessel_weights(-float(prob.t), lattice)
    col_weights = bessel_weights(-float(prob.s), lattice)
    return TWO_PI ** (-lattice.n / 2.0) * row_weights[:, None] * conv * col_weights[None, :]


def _deterministic_norm(vector: np.ndarray) -> float:
    return float(np.sqrt(np.real(tree_sum(np.abs(vector) ** 2))))


def power_iteration_norm(
    matrix: np.ndarray,
    tol: float = POWER_TOLERANCE,
    max_iterations: int = POWER_MAX_ITERATIONS,
) -> float:
    """Largest singular value by power iteration on the Gram operator.

    Starts from the normalized all-ones vector and stops when the Rayleigh
    quotient stagnates to relative tolerance ``tol``.  Matrix-vector products
    use a fixed-order contraction, so the result is reproducible.
    """
    cols = matrix.shape[1]
    conj_matrix = np.conj(matrix)
    v = np.full(cols, 1.0 / np.sqrt(cols), dtype=np.complex128)
    rayleigh_prev = None
    rayleigh = 0.0
    for _ in range(max_iterations):
        w = np.einsum("ij,j->i", matrix, v)
        rayleigh = float(np.real(tree_sum(np.abs(w) ** 2)))
        z = np.einsum("ij,i->j", conj_matrix, w)
        z_norm = _deterministic_norm(z)
        if z_norm == 0.0:
            return 0.0
        v = z / z_norm
        if rayleigh_prev is not None and abs(rayleigh - rayleigh_prev) <= tol * max(
            rayleigh, np.finfo(float).tiny
        ):
            return float(np.sqrt(rayleigh))
        rayleigh_prev = rayleigh
    residual = abs(rayleigh - (rayleigh_prev or 0.0)) / max(rayleigh, np.finfo(float).tiny)
    raise PowerIterationError(max_iterations, residual)


def multiplier_norm_l2(prob: MultiplierProblem, method: str = "auto") -> float:
    """Exact multiplier norm for p = q = 2 (operator norm of the matrix).

    ``method`` is "auto" (SVD up to lattice size 512, power iteration above),
    "svd", or "power".
    """
    matrix = multiplier_matrix(prob)
    if method == "auto":
        method = "svd" if prob.u.lattice.size <= SVD_SIZE_LIMIT else "power"
    if method == "svd":
        return float(np.linalg.svd(matrix, compute_uv=False)[0])
    if method == "power":
        return power_iteration_norm(matrix)
    raise ValueError(f"unknown method {method!r}")


def _contains_constant(family: Sequence[SpectralField], lattice) -> bool:
    reference = constant_field(lattice)
    return any(
        member.lattice == lattice and np.array_equal(member.coeffs, reference.coeffs)
        for member in family
    )


def multiplier_norm_sampled(
    prob: MultiplierProblem,
    family: Sequence[SpectralField],
    grid_points: int | None = None,
) -> float:
    """Certified lower bound of the multiplier norm: best ratio over a family.

    Maximizes ``|f*u|_{H^(-t)_q} / |f|_{H^s_p}`` over the supplied test
    fields.  The family must contain the all-ones field, so the bound is never
    below the classical certificate.  Products are truncated back to the
    problem lattice, keeping the bound consistent with the exact matrix norm.
    """
    if len(family) == 0:
        raise ValueError("test family must be nonempty")
    lattice = prob.u.lattice
    if not _contains_constant(family, lattice):
        raise ValueError("test family must include the all-ones (constant) field")
    source = SpaceIndex(float(prob.s), float(prob.p))
    target = SpaceIndex(-float(prob.t), float(prob.q))
    best = 0.0
    for member in family:
        denominator = hs_norm(member, source, grid_points)
        if denominator == 0.0:
            raise ValueError("test family member has zero source-space norm")
        numerator = hs_norm(pointwise_product(member, prob.u), target, grid_points)
        best = max(best, numerator / denominator)
    return best


def intersection_norm(
    u: SpectralField,
    s: float,
    p: float,
    t: float,
    q: float,
    grid_points: int | None = None,
) -> float:
    """max(|u|_{H^(-t)_q}, |u|_{H^(-s)_p'}) with p' the conjugate of p."""
    p_conj = float(conjugate_exponent(p))
    return max(
        hs_norm(u, SpaceIndex(-float(t), float(q)), grid_points),
        hs_norm(u, SpaceIndex(-float(s), p_conj), grid_points),
    )


def default_test_family(lattice, seed: int = 0) -> list:
    """Constant field, low deltas (|k|_inf <= 2), and seeded decaying fields."""
    family = [constant_field(lattice)]
    probe = make_lattice(lattice.n, min(2, lattice.radius))
    family.extend(delta_field(lattice, k) for k in probe.indices)
    for offset, alpha in enumerate((1.0, 2.0, 4.0)):
        family.append(
            gen_distribution("power-decay", lattice, alpha=alpha, seed=seed + 101 * offset)
        )
    return family


class SymmetryResult(NamedTuple):
    forward: float
    swapped: float
    gap: float


def symmetry_check(prob: MultiplierProblem, method: str = "auto") -> SymmetryResult:
    """Compare the norm of u: H^s_2 -> H^(-t)_2 with the swapped problem
    u: H^t_2 -> H^(-s)_2 (the conjugate-index mirror; both exact at p = q = 2).
    """
    forward = multiplier_norm_l2(prob, method=method)
    swapped_problem = MultiplierProblem(prob.u, s=prob.t, t=prob.s, p=prob.p, q=prob.q)
    swapped = multiplier_norm_l2(swapped_problem, method=method)
    return SymmetryResult(forward, swapped, abs(forward - swapped))


def equivalence_report(
    prob: MultiplierProblem,
    radii: Sequence[int] | None = None,
    force: bool = False,
    grid_points: int | None = None,
    family_seed: int = 0,
    method: str = "auto",
) -> MultiplierReport:
    """Multiplier norm vs intersection norm, with a radius-refinement trace.

    Refuses instances whose index hypotheses fail unless ``force`` is given.
    ``radii`` lists truncation radii (each at most u's radius) at which the
    multiplier norm is recomputed on the restricted field; headline figures
    come from the largest radius.  The classical lower-bound certificate
    ``|u|_{H^(-t)_q} / |E|_{H^s_p}`` is checked against the reported norm.
    """
    verdict = strichartz_case(prob.s, prob.t, prob.p, prob.q, prob.n)
    if not verdict.holds and not force:
        raise HypothesisError(f"index hypotheses fail: {verdict.detail}")
    if not np.any(prob.u.coeffs):
        raise ValueError("multiplier field is identically zero")

    full_radius = prob.u.lattice.radius
    if radii is None:
        radii = (full_radius,)
    radii = sorted(set(int(r) for r in radii))
    if not radii:
        raise ValueError("at least one radius is required")
    for radius in radii:
        if radius < 0 or radius > full_radius:
            raise ValueError(f"refinement radius {radius} outside [0, {full_radius}]")

    exact = float(prob.p) == 2.0 and float(prob.q) == 2.0
    refinement = []
    headline_norm = 0.0
    headline_field = prob.u
    for radius in radii:
        restricted = restrict_field(prob.u, radius)
        sub_problem = MultiplierProblem(restricted, prob.s, prob.t, prob.p, prob.q)
        if exact:
            norm = multiplier_norm_l2(sub_problem, method=method)
        else:
            family = default_test_family(restricted.lattice, seed=family_seed)
            norm = multiplier_norm_sampled(sub_problem, family, grid_points)
        refinement.append((radius, norm))
        headline_norm = norm
        headline_field = restricted

    top_radius = radii[-1]
    inter = intersection_norm(headline_field, prob.s, prob.p, prob.t, prob.q, grid_points)
    if inter == 0.0:
        raise ValueError(f"restriction to radius {top_radius} is zero; ratio undefined")
    source = SpaceIndex(float(prob.s), float(prob.p))
    target = SpaceIndex(-float(prob.t), float(prob.q))
    ones_norm = hs_norm(constant_field(headline_field.lattice), source, grid_points)
    certificate = hs_norm(headline_field, target, grid_points) / ones_norm
    if certificate > headline_norm * (1.0 + 1e-12):
        raise RuntimeError(
            f"lower-bound certificate {certificate} exceeds multiplier norm {headline_norm}"
        )

    return MultiplierReport(
        n=prob.n,
        radius=top_radius,
        s=float(prob.s),
        t=float(prob.t),
        p=float(prob.p),
        q=float(prob.q),
        multiplier_norm=headline_norm,
        exact=exact,
        intersection_norm=inter,
        ratio=headline_norm / inter,
        lower_bound_certificate=certificate,
        refinement=tuple(refinement),
    )
