"""Self-verification suites: one check per library invariant.

Each registered check names the mathematical law it exercises, measures a
worst-case error over seeded samples, and compares it against a fixed
tolerance.  Suites group the checks by theme (fourier, bessel, duality,
embedding, multiplier); ``run_suite("all", ...)`` runs the whole registry.
All randomness is a pure function of the seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .calculus import (
    SpaceIndex,
    duality_pair,
    hs_norm,
    lift,
    pointwise_product,
)
from .conditions import conjugate_exponent, embedding_holds, strichartz_case
from .generators import gen_distribution
from .lattice import (
    GridFunction,
    SpectralField,
    TWO_PI,
    analyze,
    constant_field,
    delta_field,
    grid_nodes,
    lp_norm,
    make_lattice,
    real_part_field,
    synthesize,
    tree_sum,
)
from .multipliers import (
    MultiplierProblem,
    default_test_family,
    equivalence_report,
    multiplier_matrix,
    multiplier_norm_l2,
    multiplier_norm_sampled,
)

SUITES = ("fourier", "bessel", "duality", "embedding", "multiplier")


@dataclass(frozen=True)
class VerifyContext:
    radius: int = 8
    n: int = 1
    seed: int = 0
    s: float = 1.0
    t: float = 1.0
    p: float = 2.0
    q: float = 2.0


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    suite: str
    law: str
    error: float
    tolerance: float
    passed: bool
    note: str = ""


@dataclass(frozen=True)
class CheckSpec:
    check_id: str
    suite: str
    law: str
    tolerance: float
    runner: Callable


def _rel(value, reference) -> float:
    value = np.asarray(value)
    reference = np.asarray(reference)
    scale = max(float(np.max(np.abs(reference))), np.finfo(float).tiny)
    return float(np.max(np.abs(value - reference))) / scale


def _sample_fields(ctx: VerifyContext, count: int, kind: str = "power-decay", alpha=1.0):
    lattice = make_lattice(ctx.n, ctx.radius)
    return [
        gen_distribution(kind, lattice, alpha=alpha, seed=ctx.seed + 7919 * j)
        for j in range(count)
    ]


# --------------------------------------------------------------------------
# fourier suite: transforms and quadrature
# --------------------------------------------------------------------------


def _check_round_trip(ctx):
    worst = 0.0
    for j, u in enumerate(_sample_fields(ctx, 8, alpha=0.5)):
        grid = u.lattice.side + (0 if j % 2 == 0 else 5)
        worst = max(worst, _rel(analyze(synthesize(u, grid), u.lattice).coeffs, u.coeffs))
    return worst


def _check_parseval(ctx):
    worst = 0.0
    for u in _sample_fields(ctx, 8, alpha=0.5):
        energy = float(np.real(tree_sum(np.abs(u.coeffs) ** 2)))
        quad = lp_norm(synthesize(u, 2 * u.lattice.side), 2.0) ** 2
        worst = max(worst, abs(quad - energy) / max(energy, np.finfo(float).tiny))
    return worst


def _check_reality(ctx):
    worst = 0.0
    for u in _sample_fields(ctx, 6, alpha=0.5):
        samples = synthesize(real_part_field(u), 2 * u.lattice.side).samples
        scale = max(float(np.max(np.abs(samples))), np.finfo(float).tiny)
        worst = max(worst, float(np.max(np.abs(samples.imag))) / scale)
    return worst


def _check_quadrature_decay(ctx):
    del ctx
    nodes = 1024
    reference = lp_norm(GridFunction(np.exp(np.sin(grid_nodes(nodes)))), 3.0)
    errors = [
        abs(lp_norm(GridFunction(np.exp(np.sin(grid_nodes(n)))), 3.0) - reference)
        for n in (4, 8, 16, 32)
    ]
    ratios = [
        errors[i + 1] / errors[i]
        for i in range(len(errors) - 1)
        if errors[i] > 1e-13 * reference
    ]
    return max(ratios) if ratios else 0.0


def _check_determinism(ctx):
    def run():
        u = gen_distribution("power-decay", make_lattice(ctx.n, ctx.radius), 1.0, ctx.seed)
        g = synthesize(u, 2 * u.lattice.side)
        v = analyze(g, u.lattice)
        return u.coeffs.tobytes(), g.samples.tobytes(), v.coeffs.tobytes(), lp_norm(g, 2.5)

    return 0.0 if run() == run() else 1.0


# --------------------------------------------------------------------------
# bessel suite: the lifting operator and the space norms
# --------------------------------------------------------------------------


def _check_semigroup(ctx):
    rng = np.random.default_rng(ctx.seed)
    worst = 0.0
    for u in _sample_fields(ctx, 10, alpha=0.5):
        s, t = rng.uniform(-4.0, 4.0, size=2)
        worst = max(worst, _rel(lift(s, lift(t, u)).coeffs, lift(s + t, u).coeffs))
    return worst


def _check_lift_isometry(ctx):
    worst = 0.0
    for j, u in enumerate(_sample_fields(ctx, 6, alpha=1.0)):
        for p in (1.5, 2.0, 3.0):
            alpha = (-2.0, 0.75, 1.5)[j % 3]
            shifted = hs_norm(lift(alpha, u), SpaceIndex(ctx.s - alpha, p))
            original = hs_norm(u, SpaceIndex(ctx.s, p))
            worst = max(worst, abs(shifted - original) / max(original, 1e-300))
    return worst


def _check_h2_two_paths(ctx):
    worst = 0.0
    for u in _sample_fields(ctx, 8, alpha=0.75):
        closed = hs_norm(u, SpaceIndex(ctx.s, 2.0), method="coefficient")
        quad = hs_norm(u, SpaceIndex(ctx.s, 2.0), method="quadrature")
        worst = max(worst, abs(closed - quad) / max(closed, 1e-300))
    return worst


def _check_eigenrelation(ctx):
    lattice = make_lattice(ctx.n, ctx.radius)
    probe = make_lattice(ctx.n, min(4, ctx.radius))
    worst = 0.0
    for k in probe.indices:
        basis = delta_field(lattice, k)
        weight = float((1.0 + float(np.dot(k, k))) ** 0.5)
        for s in (-2.0, 0.5, 3.0):
            expected = weight ** s * basis.coeffs
            worst = max(worst, _rel(lift(s, basis).coeffs, expected))
    return worst


# --------------------------------------------------------------------------
# duality suite: pairings and product estimates
# --------------------------------------------------------------------------


def _check_pairing_s_independent(ctx):
    fields = _sample_fields(ctx, 6, alpha=0.75)
    worst = 0.0
    for u, v in zip(fields[:3], fields[3:]):
        cancelled = duality_pair(u, v)
        for s in (-2.0, 0.0, 3.0):
            lifted = complex(
                tree_sum(lift(-s, u).coeffs * np.conj(lift(s, v).coeffs))
            )
            worst = max(worst, abs(lifted - cancelled) / max(abs(cancelled), 1e-300))
    return worst


def _check_hoelder_bound(ctx):
    fields = _sample_fields(ctx, 24, alpha=1.0)
    worst = 0.0
    for j, (u, v) in enumerate(zip(fields[:12], fields[12:])):
        for p in (1.5, 2.0, 3.0):
            for s in (0.0, 1.0, 2.5):
                pairing = abs(duality_pair(u, v, s))
                bound = hs_norm(u, SpaceIndex(-s, float(conjugate_exponent(p)))) * hs_norm(
                    v, SpaceIndex(s, p)
                )
                worst = max(worst, (pairing - bound) / max(bound, 1e-300))
    return max(worst, 0.0)


def _check_product_norm_bounded(ctx):
    # p = q with s > n/p: the product norm ratio must stay bounded and its
    # running maximum must stabilize when the radius doubles.
    s, t, p = max(ctx.s, ctx.n / ctx.p + 0.5), min(ctx.t, ctx.s) * 0.5, ctx.p
    pairs = 250
    maxima = {}
    for radius in (ctx.radius, 2 * ctx.radius):
        lattice = make_lattice(ctx.n, radius)
        running = 0.0
        for j in range(pairs):
            f = gen_distribution("random-smooth", lattice, seed=ctx.seed + 2 * j)
            g = gen_distribution("random-smooth", lattice, seed=ctx.seed + 2 * j + 1)
            product = pointwise_product(f, g, exact=True)
            ratio = hs_norm(product, SpaceIndex(t, p)) / (
                hs_norm(f, SpaceIndex(s, p)) * hs_norm(g, SpaceIndex(t, p))
            )
            running = max(running, ratio)
        maxima[radius] = running
    return maxima[2 * ctx.radius]


# --------------------------------------------------------------------------
# embedding suite: index predicates and monotone norms
# --------------------------------------------------------------------------


def _check_embedding_monotone_p2(ctx):
    worst = 0.0
    for u in _sample_fields(ctx, 6, alpha=0.75):
        for low, high in ((-1.5, 0.0), (0.0, 1.0), (0.5, 2.5)):
            smaller = hs_norm(u, SpaceIndex(low, 2.0))
            larger = hs_norm(u, SpaceIndex(high, 2.0))
            worst = max(worst, (smaller - larger) / max(larger, 1e-300))
    return max(worst, 0.0)


def _check_conjugate_involution(ctx):
    rng = np.random.default_rng(ctx.seed)
    worst = 0.0
    for p in rng.uniform(1.0 + 1e-6, 100.0, size=64):
        worst = max(worst, abs(float(conjugate_exponent(conjugate_exponent(p))) - p) / p)
    exact = conjugate_exponent(conjugate_exponent(Fraction(4, 3)))
    if exact != Fraction(4, 3):
        worst = max(worst, 1.0)
    return worst


def _check_strichartz_symmetry(ctx):
    rng = np.random.default_rng(ctx.seed)
    mismatches = 0
    for _ in range(200):
        s = Fraction(int(rng.integers(0, 9)), 2)
        t = Fraction(int(rng.integers(0, 9)), 2)
        p = Fraction(int(rng.integers(5, 17)), 4)
        q = Fraction(int(rng.integers(5, 17)), 4)
        n = int(rng.integers(1, 4))
        direct = strichartz_case(s, t, p, q, n).holds
        swapped = strichartz_case(
            t, s, conjugate_exponent(q), conjugate_exponent(p), n
        ).holds
        mismatches += direct != swapped
    return float(mismatches)


def _check_embedding_monotone_predicate(ctx):
    rng = np.random.default_rng(ctx.seed)
    violations = 0
    for _ in range(200):
        s = Fraction(int(rng.integers(-6, 7)), 2)
        t = Fraction(int(rng.integers(-6, 7)), 2)
        p = Fraction(int(rng.integers(5, 17)), 4)
        q = Fraction(int(rng.integers(5, 17)), 4)
        n = int(rng.integers(1, 4))
        before = embedding_holds(s, t, p, q, n).holds
        larger_s = embedding_holds(s + 1, t, p, q, n).holds
        smaller_t = embedding_holds(s, t - 1, p, q, n).holds
        violations += int(before and not larger_s) + int(before and not smaller_t)
    return float(violations)


# --------------------------------------------------------------------------
# multiplier suite: operator norms and the description theorem
# --------------------------------------------------------------------------


def _multiplier_radius(ctx) -> int:
    return min(ctx.radius, 8 if ctx.n == 1 else 4)


def _check_swap_adjoint(ctx):
    radius = _multiplier_radius(ctx)
    lattice = make_lattice(ctx.n, radius)
    worst = 0.0
    for j in range(6):
        u = real_part_field(
            gen_distribution("power-decay", lattice, alpha=1.0, seed=ctx.seed + 37 * j)
        )
        forward = multiplier_matrix(MultiplierProblem(u, ctx.s, ctx.t, 2.0, 2.0))
        swapped = multiplier_matrix(MultiplierProblem(u, ctx.t, ctx.s, 2.0, 2.0))
        worst = max(worst, float(np.max(np.abs(swapped - forward.conj().T))))
    return worst


def _check_certificate(ctx):
    radius = _multiplier_radius(ctx)
    lattice = make_lattice(ctx.n, radius)
    ones_norm = hs_norm(constant_field(lattice), SpaceIndex(ctx.s, 2.0))
    worst = 0.0
    for j in range(12):
        u = gen_distribution("power-decay", lattice, alpha=1.0, seed=ctx.seed + 13 * j)
        norm = multiplier_norm_l2(MultiplierProblem(u, ctx.s, ctx.t, 2.0, 2.0))
        certificate = hs_norm(u, SpaceIndex(-ctx.t, 2.0))
        bound = ones_norm * norm
        worst = max(worst, (certificate - bound) / max(bound, 1e-300))
    return max(worst, 0.0)


def _check_sampled_below_exact(ctx):
    radius = _multiplier_radius(ctx)
    lattice = make_lattice(ctx.n, radius)
    worst = 0.0
    for j in range(4):
        u = gen_distribution("power-decay", lattice, alpha=2.0, seed=ctx.seed + 11 * j)
        prob = MultiplierProblem(u, ctx.s, ctx.t, 2.0, 2.0)
        sampled = multiplier_norm_sampled(prob, default_test_family(lattice, ctx.seed))
        exact = multiplier_norm_l2(prob)
        worst = max(worst, sampled - exact)
    return max(worst, 0.0)


def _check_refinement_stability(ctx):
    coarse = max(ctx.radius, 8)
    lattice = make_lattice(ctx.n, 2 * coarse)
    u = gen_distribution("power-decay", lattice, alpha=ctx.t + 2.0, seed=ctx.seed)
    prob = MultiplierProblem(u, ctx.s, ctx.t, 2.0, 2.0)
    ratios = {}
    for radius in (coarse, 2 * coarse):
        report = equivalence_report(prob, radii=[radius], force=True)
        ratios[radius] = report.ratio
    return abs(ratios[2 * coarse] / ratios[coarse] - 1.0)


def _check_homogeneity(ctx):
    radius = _multiplier_radius(ctx)
    lattice = make_lattice(ctx.n, radius)
    worst = 0.0
    for j, scale in enumerate((0.1, 3.0, -2.5j)):
        u = gen_distribution("power-decay", lattice, alpha=1.0, seed=ctx.seed + 23 * j)
        base = multiplier_norm_l2(MultiplierProblem(u, ctx.s, ctx.t, 2.0, 2.0))
        scaled_field = SpectralField(lattice, scale * u.coeffs)
        scaled = multiplier_norm_l2(MultiplierProblem(scaled_field, ctx.s, ctx.t, 2.0, 2.0))
        worst = max(worst, abs(scaled - abs(scale) * base) / max(abs(scale) * base, 1e-300))
    return worst


def _check_delta_closed_form(ctx):
    lattice = make_lattice(1, _multiplier_radius(ctx))
    norm = multiplier_norm_l2(MultiplierProblem(delta_field(lattice, (0,)), 1.0, 1.0, 2.0, 2.0))
    return abs(norm - TWO_PI ** -0.5)


def _check_constant_closed_form(ctx):
    lattice = make_lattice(1, _multiplier_radius(ctx))
    norm = multiplier_norm_l2(MultiplierProblem(constant_field(lattice), 1.0, 1.0, 2.0, 2.0))
    return abs(norm - 1.0)


REGISTRY = (
    CheckSpec(
        "round-trip",
        "fourier",
        "analyze(synthesize(u, N)) = u for every N >= 2R+1",
        1e-12,
        _check_round_trip,
    ),
    CheckSpec(
        "parseval",
        "fourier",
        "lp_norm(synthesize(u, N), 2)^2 = sum_k |coeff_k|^2",
        1e-12,
        _check_parseval,
    ),
    CheckSpec(
        "conjugation-reality",
        "fourier",
        "samples are real iff coeff(-k) = conj(coeff(k))",
        1e-12,
        _check_reality,
    ),
    CheckSpec(
        "quadrature-spectral-decay",
        "fourier",
        "rectangle-rule error decays faster than any fixed power of 1/N",
        2.0 ** -6,
        _check_quadrature_decay,
    ),
    CheckSpec(
        "determinism",
        "fourier",
        "repeated evaluation is bitwise identical",
        0.0,
        _check_determinism,
    ),
    CheckSpec(
        "lift-semigroup",
        "bessel",
        "lift(s, lift(t, u)) = lift(s+t, u)",
        1e-13,
        _check_semigroup,
    ),
    CheckSpec(
        "lift-isometry",
        "bessel",
        "|lift(a, u)|_{H^(s-a)_p} = |u|_{H^s_p}",
        1e-10,
        _check_lift_isometry,
    ),
    CheckSpec(
        "h2-two-paths",
        "bessel",
        "closed-form and quadrature H^s_2 norms agree",
        1e-12,
        _check_h2_two_paths,
    ),
    CheckSpec(
        "lift-eigenrelation",
        "bessel",
        "lift(s, basis_k) = (1+|k|^2)^(s/2) * basis_k",
        1e-14,
        _check_eigenrelation,
    ),
    CheckSpec(
        "pairing-s-independent",
        "duality",
        "<lift(-s, u), lift(s, v)>_{L2} is independent of s",
        1e-13,
        _check_pairing_s_independent,
    ),
    CheckSpec(
        "hoelder-duality-bound",
        "duality",
        "|<u; v>_s| <= |u|_{H^(-s)_p'} * |v|_{H^s_p}",
        1e-12,
        _check_hoelder_bound,
    ),
    CheckSpec(
        "product-norm-bounded",
        "duality",
        "|f*g|_{H^t_q} / (|f|_{H^s_p} |g|_{H^t_q}) stays bounded under refinement",
        20.0,
        _check_product_norm_bounded,
    ),
    CheckSpec(
        "embedding-monotone-p2",
        "embedding",
        "t <= s implies |u|_{H^t_2} <= |u|_{H^s_2}",
        1e-14,
        _check_embedding_monotone_p2,
    ),
    CheckSpec(
        "conjugate-involution",
        "embedding",
        "conjugate_exponent is an involution on (1, inf)",
        1e-14,
        _check_conjugate_involution,
    ),
    CheckSpec(
        "strichartz-swap-symmetry",
        "embedding",
        "hypotheses hold for (s,t,p,q) iff they hold for (t,s,q',p')",
        0.0,
        _check_strichartz_symmetry,
    ),
    CheckSpec(
        "embedding-monotone-predicate",
        "embedding",
        "raising s or lowering t never breaks an embedding",
        0.0,
        _check_embedding_monotone_predicate,
    ),
    CheckSpec(
        "swap-adjoint-identity",
        "multiplier",
        "swapped-problem matrix is the conjugate transpose (real-valued u)",
        1e-14,
        _check_swap_adjoint,
    ),
    CheckSpec(
        "certificate-lower-bound",
        "multiplier",
        "|u|_{H^(-t)_2} <= |E|_{H^s_2} * multiplier norm",
        1e-12,
        _check_certificate,
    ),
    CheckSpec(
        "sampled-below-exact",
        "multiplier",
        "sampled lower bound never exceeds the exact matrix norm",
        1e-10,
        _check_sampled_below_exact,
    ),
    CheckSpec(
        "refinement-stability",
        "multiplier",
        "multiplier/intersection ratio moves <= 5% from R to 2R",
        0.05,
        _check_refinement_stability,
    ),
    CheckSpec(
        "scaling-homogeneity",
        "multiplier",
        "multiplier norm of c*u equals |c| times that of u",
        1e-10,
        _check_homogeneity,
    ),
    CheckSpec(
        "delta-closed-form",
        "multiplier",
        "basis field at 0 has multiplier norm (2*pi)^(-1/2) at s=t=1",
        1e-8,
        _check_delta_closed_form,
    ),
    CheckSpec(
        "constant-closed-form",
        "multiplier",
        "all-ones field has multiplier norm exactly 1",
        1e-10,
        _check_constant_closed_form,
    ),
)


def run_suite(suite: str, ctx: VerifyContext | None = None) -> list:
    """Run one named suite (or 'all'); returns a CheckResult per check."""
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES + ('all',)}")
    ctx = ctx or VerifyContext()
    results = []
    for spec in REGISTRY:
        if suite != "all" and spec.suite != suite:
            continue
        error = float(spec.runner(ctx))
        results.append(
            CheckResult(
                check_id=spec.check_id,
                suite=spec.suite,
                law=spec.law,
                error=error,
                tolerance=spec.tolerance,
                passed=error <= spec.tolerance,
            )
        )
    return results


def format_report(results) -> str:
    lines = []
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        lines.append(
            f"{status} [{result.suite}] {result.check_id}: {result.law} "
            f"(error {result.error:.3e}, tolerance {result.tolerance:.3e})"
        )
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return "\n".join(lines)
