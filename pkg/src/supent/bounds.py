"""Exact value and bounds for the entanglement of a two-state superposition.

Conventions.  A problem holds normalized states psi, phi and coefficients
alpha, beta on the complex unit sphere (|alpha|^2 + |beta|^2 = 1); the
superposition gamma = alpha psi + beta phi may itself be unnormalized, and
every bound below refers to the entanglement of gamma / ||gamma||.

The upper-bound family is, with a = |alpha|^2 and N^2 = ||gamma||^2,

    lps_upper      = 2 [a E(psi) + (1-a) E(phi) + h2(a)] / N^2
    theorem2_upper = lps_upper - 2 |S_A - S_B| / N^2
    f(t)           = (t(1-a) + (1-t)a) / (t(1-t))
                     * [t E(psi) + (1-t) E(phi) + h2(t)] / N^2

where S_A, S_B are the entropies of the reduced operators of the mixture
a |psi><psi| + (1-a) |phi><phi|, f(a) reproduces lps_upper exactly, and the
refined variant of f subtracts |S_A(t) - S_B(t)| inside the bracket.

The lower-bound family uses the rescaled coefficients a' = a / N^2,
b' = (1-a) / N^2 (so that the superposition is normalized):

    L1(t) = (1-t) b' / (1 - t(1-a')) E(phi) - (1-t)/t E(psi) - h2(t)/t

and L2 with the roles of the two states exchanged.  Entanglement never
drops below max over t of these, and also never below zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import optimize, qmath, states
from .errors import DegenerateSubspace, DomainError, NotOneSided, NotOrthogonal, ZeroState
from .qmath import binary_entropy
from .states import BipartiteState

__all__ = [
    "SuperpositionProblem",
    "BoundReport",
    "exact_one_sided",
    "lps_upper",
    "theorem2_upper",
    "f_of_t",
    "theorem3_optimal",
    "lower_l",
    "theorem4_optimal",
    "simple_lower",
    "subspace_lower",
    "certify",
    "lps_upper_value",
    "theorem2_upper_value",
    "f_upper_value",
    "lower_value",
    "minimize_f_scalar",
    "minimize_f_with_refinement",
    "maximize_lower_scalar",
    "theorem3_stationarity_residual",
    "theorem4_stationarity_residual",
]

T_EPS = 1e-9
DESTRUCTIVE_NORM_SQ = 1e-12
SANITY_SLACK = 1e-8


@dataclass(frozen=True)
class SuperpositionProblem:
    """Normalized (psi, phi, alpha, beta) with the derived superposition."""

    psi: BipartiteState
    phi: BipartiteState
    alpha: complex
    beta: complex
    gamma: BipartiteState
    gamma_norm_sq: float
    overlap: complex
    e_psi: float
    e_phi: float

    @property
    def alpha_sq(self) -> float:
        return abs(self.alpha) ** 2

    @property
    def beta_sq(self) -> float:
        return abs(self.beta) ** 2

    @classmethod
    def from_states(
        cls, psi: BipartiteState, phi: BipartiteState, alpha: complex, beta: complex
    ) -> "SuperpositionProblem":
        """Build a problem, normalizing the states and (alpha, beta).

        The coefficient pair must lie on the unit sphere within 1e-8; it is
        rescaled onto it exactly so downstream identities hold to machine
        precision.  Raises ZeroState when the superposition is fully
        destructive (squared norm below 1e-12).
        """
        psi_n = psi.normalized()
        phi_n = phi.normalized()
        sphere = abs(alpha) ** 2 + abs(beta) ** 2
        if abs(sphere - 1.0) > 1e-8:
            raise DomainError(
                f"|alpha|^2 + |beta|^2 = {sphere!r}, expected 1 within 1e-8"
            )
        scale = 1.0 / math.sqrt(sphere)
        alpha = complex(alpha) * scale
        beta = complex(beta) * scale
        gamma = states.superpose(alpha, psi_n, beta, phi_n)
        n2 = states.norm_squared(gamma)
        if n2 <= DESTRUCTIVE_NORM_SQ:
            raise ZeroState("superposition is fully destructive")
        return cls(
            psi=psi_n,
            phi=phi_n,
            alpha=alpha,
            beta=beta,
            gamma=gamma,
            gamma_norm_sq=n2,
            overlap=states.inner_product(psi_n, phi_n),
            e_psi=states.entanglement_entropy(psi_n),
            e_phi=states.entanglement_entropy(phi_n),
        )


@dataclass(frozen=True)
class BoundReport:
    """Every bound for one problem, plus consistency flags.

    ``lower_l`` is clamped at zero; ``lower_raw`` keeps the unclamped
    optimum for stationarity diagnostics.  ``simple_lower`` is present only
    for orthogonal pairs; ``exact_one_sided`` only when the pair is
    one-sided orthogonal.  ``sane`` records
    lower_l - 1e-8 <= exact_e <= min(upper bounds) + 1e-8.
    """

    exact_e: float
    lps_upper: float
    theorem2_upper: float
    theorem3_upper: float
    t_star_upper: float
    theorem3_refined_upper: float
    lower_l: float
    t_star_lower: float
    branch: str
    lower_raw: float
    simple_lower: Optional[float]
    exact_one_sided: Optional[float]
    sane: bool


# ---------------------------------------------------------------------------
# Scalar layer: every bound as a function of plain numbers.  The harness
# sweeps reuse these directly for structured state families whose
# entanglements are known spectrally, where dense coefficient matrices would
# be prohibitively large.
# ---------------------------------------------------------------------------


def lps_upper_value(e_psi: float, e_phi: float, alpha_sq: float, gamma_norm_sq: float) -> float:
    """2 [a E(psi) + (1-a) E(phi) + h2(a)] / N^2."""
    bracket = alpha_sq * e_psi + (1.0 - alpha_sq) * e_phi + binary_entropy(alpha_sq)
    return 2.0 * bracket / gamma_norm_sq


def theorem2_upper_value(
    e_psi: float, e_phi: float, alpha_sq: float, gamma_norm_sq: float, delta_s: float
) -> float:
    """LPS bound tightened by the reduced-entropy asymmetry |S_A - S_B|."""
    return (
        lps_upper_value(e_psi, e_phi, alpha_sq, gamma_norm_sq)
        - 2.0 * abs(delta_s) / gamma_norm_sq
    )


def f_upper_value(
    t: float,
    e_psi: float,
    e_phi: float,
    alpha_sq: float,
    gamma_norm_sq: float,
    delta_s: float = 0.0,
) -> float:
    """One-parameter upper bound f(t) / N^2; f(a) equals the LPS bound.

    ``delta_s`` is the refined-variant correction |S_A(t) - S_B(t)|
    subtracted inside the bracket (zero for the plain bound).
    """
    _check_t(t)
    bsq = 1.0 - alpha_sq
    prefactor = (t * bsq + (1.0 - t) * alpha_sq) / (t * (1.0 - t))
    bracket = t * e_psi + (1.0 - t) * e_phi + binary_entropy(t) - abs(delta_s)
    return prefactor * bracket / gamma_norm_sq


def lower_value(
    t: float, e_psi: float, e_phi: float, alpha_sq: float, beta_sq: float, branch: str
) -> float:
    """Lower bound L1(t) or L2(t); assumes the superposition is normalized."""
    _check_t(t)
    h = binary_entropy(t)
    if branch == "L1":
        return (
            (1.0 - t) * beta_sq / (1.0 - t * (1.0 - alpha_sq)) * e_phi
            - (1.0 - t) / t * e_psi
            - h / t
        )
    if branch == "L2":
        return (
            (1.0 - t) * alpha_sq / (1.0 - t * (1.0 - beta_sq)) * e_psi
            - (1.0 - t) / t * e_phi
            - h / t
        )
    raise ValueError(f"branch must be 'L1' or 'L2', got {branch!r}")


def minimize_f_scalar(
    e_psi: float,
    e_phi: float,
    alpha_sq: float,
    gamma_norm_sq: float,
    delta_s_fn: Optional[Callable[[float], float]] = None,
    grid_n: int = optimize.DEFAULT_GRID_N,
    tol: float = optimize.DEFAULT_TOL,
) -> tuple[float, float]:
    """Minimize f over t in [eps, 1-eps]; returns (value, t_star).

    Besides the grid + golden-section search the candidate set always
    contains t = |alpha|^2, which pins the result at or below the LPS bound.
    """

    def objective(t: float) -> float:
        ds = delta_s_fn(t) if delta_s_fn is not None else 0.0
        return f_upper_value(t, e_psi, e_phi, alpha_sq, gamma_norm_sq, delta_s=ds)

    res = optimize.minimize_scalar(objective, T_EPS, 1.0 - T_EPS, grid_n=grid_n, tol=tol)
    value, t_star = res.value, res.x_star
    if T_EPS < alpha_sq < 1.0 - T_EPS:
        at_a = objective(alpha_sq)
        if at_a < value:
            value, t_star = at_a, alpha_sq
    return value, t_star


def minimize_f_with_refinement(
    e_psi: float,
    e_phi: float,
    alpha_sq: float,
    gamma_norm_sq: float,
    delta_s_fn: Callable[[float], float],
    delta_s_batch: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    grid_n: int = optimize.DEFAULT_GRID_N,
    tol: float = optimize.DEFAULT_TOL,
) -> tuple[tuple[float, float], tuple[float, float]]:
    """Minimize the plain and refined f together.

    Returns ((plain_value, plain_t), (refined_value, refined_t)).  The
    refined candidate set includes the plain minimizer, which pins the
    refined optimum at or below the plain one.  When ``delta_s_batch`` is
    given it precomputes |S_A(t) - S_B(t)| for the whole coarse grid in one
    vectorized call; only the golden-section refinement points fall back to
    the scalar ``delta_s_fn``.
    """
    plain_value, plain_t = minimize_f_scalar(
        e_psi, e_phi, alpha_sq, gamma_norm_sq, grid_n=grid_n, tol=tol
    )
    fn = delta_s_fn
    if delta_s_batch is not None:
        ts = optimize.grid_points(T_EPS, 1.0 - T_EPS, grid_n)
        cache = dict(zip(ts, delta_s_batch(np.asarray(ts)).tolist()))

        def fn(t: float) -> float:
            hit = cache.get(t)
            return hit if hit is not None else delta_s_fn(t)

    value, t_star = minimize_f_scalar(
        e_psi, e_phi, alpha_sq, gamma_norm_sq, delta_s_fn=fn, grid_n=grid_n, tol=tol
    )
    at_plain = f_upper_value(
        plain_t, e_psi, e_phi, alpha_sq, gamma_norm_sq, delta_s=fn(plain_t)
    )
    if at_plain < value:
        value, t_star = at_plain, plain_t
    return (plain_value, plain_t), (value, t_star)


def maximize_lower_scalar(
    e_psi: float,
    e_phi: float,
    alpha_sq: float,
    beta_sq: float,
    grid_n: int = optimize.DEFAULT_GRID_N,
    tol: float = optimize.DEFAULT_TOL,
) -> tuple[float, float, str]:
    """Maximize max(L1, L2) over t; returns the unclamped (value, t_star, branch)."""
    best: Optional[tuple[float, float, str]] = None
    for branch in ("L1", "L2"):
        res = optimize.maximize_scalar(
            lambda t, b=branch: lower_value(t, e_psi, e_phi, alpha_sq, beta_sq, b),
            T_EPS,
            1.0 - T_EPS,
            grid_n=grid_n,
            tol=tol,
        )
        if best is None or res.value > best[0]:
            best = (res.value, res.x_star, branch)
    return best


def theorem3_stationarity_residual(
    t: float, e_psi: float, e_phi: float, alpha_sq: float
) -> float:
    """|lhs - rhs| of the interior-minimum condition for f:

    a (1-t)^2 / ((1-a) t^2) = (E(psi) - log2 t) / (E(phi) - log2(1-t)).
    """
    bsq = 1.0 - alpha_sq
    lhs = alpha_sq * (1.0 - t) ** 2 / (bsq * t**2)
    rhs = (e_psi - math.log2(t)) / (e_phi - math.log2(1.0 - t))
    return abs(lhs - rhs)


def theorem4_stationarity_residual(
    t: float, e_psi: float, e_phi: float, alpha_sq: float, beta_sq: float, branch: str = "L1"
) -> float:
    """|lhs - rhs| of the interior-maximum condition for L1 (or mirrored L2):

    a b t^2 / (1 - (1-a) t)^2 * E(phi) = E(psi) - log2(1-t).
    """
    if branch == "L1":
        lhs = alpha_sq * beta_sq * t**2 / (1.0 - (1.0 - alpha_sq) * t) ** 2 * e_phi
        rhs = e_psi - math.log2(1.0 - t)
    else:
        lhs = alpha_sq * beta_sq * t**2 / (1.0 - (1.0 - beta_sq) * t) ** 2 * e_psi
        rhs = e_phi - math.log2(1.0 - t)
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# Problem-level operations.
# ---------------------------------------------------------------------------


def exact_one_sided(p: SuperpositionProblem) -> float:
    """Exact entanglement of the superposition of a one-sided orthogonal pair:

    E = a E(psi) + (1-a) E(phi) + S(rho_AB) - |S(rho_A) - S(rho_B)|

    with a = |alpha|^2 and rho_AB = a |psi><psi| + (1-a) |phi><phi|.
    Raises NotOneSided when neither reduced side has orthogonal supports.
    """
    cls = states.classify_orthogonality(p.psi, p.phi)
    if not cls.one_sided:
        raise NotOneSided("pair is not one-sided orthogonal on either side")
    t = p.alpha_sq
    s_ab = states.mixture_entropy(p.psi, p.phi, t)
    s_a, s_b = states.reduced_mixture_entropies(p.psi, p.phi, t)
    return t * p.e_psi + (1.0 - t) * p.e_phi + s_ab - abs(s_a - s_b)


def lps_upper(p: SuperpositionProblem) -> float:
    _require_constructive(p)
    return lps_upper_value(p.e_psi, p.e_phi, p.alpha_sq, p.gamma_norm_sq)


def theorem2_upper(p: SuperpositionProblem) -> float:
    _require_constructive(p)
    s_a, s_b = states.reduced_mixture_entropies(p.psi, p.phi, p.alpha_sq)
    return theorem2_upper_value(
        p.e_psi, p.e_phi, p.alpha_sq, p.gamma_norm_sq, delta_s=s_a - s_b
    )


def f_of_t(p: SuperpositionProblem, t: float, refined: bool = False) -> float:
    """Evaluate the f(t) upper bound (refined variant on request)."""
    delta = _delta_s_fn(p)(t) if refined else 0.0
    return f_upper_value(
        t, p.e_psi, p.e_phi, p.alpha_sq, p.gamma_norm_sq, delta_s=delta
    )


def theorem3_optimal(p: SuperpositionProblem, refined: bool = False) -> tuple[float, float]:
    """Minimize f(t); returns (value, t_star).

    The refined search additionally evaluates at the plain minimizer so the
    refined optimum can never exceed the plain one.
    """
    _require_constructive(p)
    if not refined:
        return minimize_f_scalar(p.e_psi, p.e_phi, p.alpha_sq, p.gamma_norm_sq)
    _, refined_result = minimize_f_with_refinement(
        p.e_psi,
        p.e_phi,
        p.alpha_sq,
        p.gamma_norm_sq,
        delta_s_fn=_delta_s_fn(p),
        delta_s_batch=_delta_s_batch(p),
    )
    return refined_result


def lower_l(p: SuperpositionProblem, t: float, branch: str) -> float:
    """L1/L2 lower bound at mixing weight t, in the unit-norm convention.

    The problem's (alpha, beta) live on the unit sphere while the bound
    family assumes a normalized superposition, so the squared coefficients
    are rescaled by 1 / ||gamma||^2 before evaluation.  May be negative.
    """
    asq, bsq = _rescaled_squares(p)
    return lower_value(t, p.e_psi, p.e_phi, asq, bsq, branch)


def theorem4_optimal(p: SuperpositionProblem) -> tuple[float, float, str]:
    """Best lower bound over t and branch, clamped at zero.

    Returns (value, t_star, branch); the unclamped value at (t_star, branch)
    is recoverable via ``lower_l``.
    """
    _require_constructive(p)
    asq, bsq = _rescaled_squares(p)
    raw, t_star, branch = maximize_lower_scalar(p.e_psi, p.e_phi, asq, bsq)
    return max(0.0, raw), t_star, branch


def simple_lower(p: SuperpositionProblem) -> float:
    """Closed-form lower bound for orthogonal pairs:

    (|beta|^2 - |alpha|^2)[E(phi) - E(psi)] - h2(|alpha|^2) / max(|alpha|^2, |beta|^2).

    Weaker than the optimized bound in typical regimes (it fixes the mixing
    weight instead of optimizing it) and often vacuous, e.g. -2 for
    |alpha| = |beta| with equal entanglements.
    """
    if abs(p.overlap) > states.ORTHOGONALITY_TOL:
        raise NotOrthogonal(
            f"simple lower bound needs orthogonal states, overlap {abs(p.overlap):.3e}"
        )
    asq, bsq = p.alpha_sq, p.beta_sq
    gsq = max(asq, bsq)
    if gsq < 0.5:
        raise DomainError("max(|alpha|^2, |beta|^2) < 1/2 cannot happen on the sphere")
    return (bsq - asq) * (p.e_phi - p.e_psi) - binary_entropy(asq) / gsq


def subspace_lower(psi: BipartiteState, phi: BipartiteState, grid_n: int) -> float:
    """Lower bound on the least entanglement in span{psi, phi}.

    Scans a grid_n x grid_n grid over (p, relative phase) with
    alpha = sqrt(p), beta = e^{i phase} sqrt(1-p), renormalizes each
    superposition, and minimizes the optimized lower bound over the grid.
    The result lower-bounds the minimum exact entanglement over the same
    grid, up to grid resolution.
    """
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    psi_n = psi.normalized()
    phi_n = phi.normalized()
    c = states.inner_product(psi_n, phi_n)
    if abs(c) > 1.0 - 1e-9:
        raise DegenerateSubspace(
            f"states are parallel within tolerance (|<psi|phi>| = {abs(c):.12f})"
        )
    e_psi = states.entanglement_entropy(psi_n)
    e_phi = states.entanglement_entropy(phi_n)
    best = math.inf
    for prob in np.linspace(0.0, 1.0, grid_n):
        alpha = math.sqrt(prob)
        amp = math.sqrt(1.0 - prob)
        for phase in np.linspace(0.0, 2.0 * math.pi, grid_n, endpoint=False):
            beta = amp * complex(math.cos(phase), math.sin(phase))
            n2 = 1.0 + 2.0 * (alpha * beta * c).real
            if n2 <= DESTRUCTIVE_NORM_SQ:
                continue
            raw, _, _ = maximize_lower_scalar(e_psi, e_phi, prob / n2, (1.0 - prob) / n2)
            best = min(best, max(0.0, raw))
            if best == 0.0:
                return 0.0
    return best


def certify(
    psi: BipartiteState, phi: BipartiteState, alpha: complex, beta: complex
) -> BoundReport:
    """Evaluate every bound against the exact entanglement for one problem."""
    return certify_problem(SuperpositionProblem.from_states(psi, phi, alpha, beta))


def certify_problem(p: SuperpositionProblem) -> BoundReport:
    _require_constructive(p)
    exact = states.entanglement_entropy(p.gamma)
    lps = lps_upper(p)
    t2 = theorem2_upper(p)
    (t3, t3_star), (t3r, _) = minimize_f_with_refinement(
        p.e_psi,
        p.e_phi,
        p.alpha_sq,
        p.gamma_norm_sq,
        delta_s_fn=_delta_s_fn(p),
        delta_s_batch=_delta_s_batch(p),
    )
    low, low_t, branch = theorem4_optimal(p)
    raw = lower_l(p, low_t, branch)
    cls = states.classify_orthogonality(p.psi, p.phi)
    simple = simple_lower(p) if abs(p.overlap) <= states.ORTHOGONALITY_TOL else None
    ex1 = exact_one_sided(p) if cls.one_sided else None
    upper_min = min(lps, t2, t3, t3r)
    sane = (low - SANITY_SLACK <= exact) and (exact <= upper_min + SANITY_SLACK)
    return BoundReport(
        exact_e=exact,
        lps_upper=lps,
        theorem2_upper=t2,
        theorem3_upper=t3,
        t_star_upper=t3_star,
        theorem3_refined_upper=t3r,
        lower_l=low,
        t_star_lower=low_t,
        branch=branch,
        lower_raw=raw,
        simple_lower=simple,
        exact_one_sided=ex1,
        sane=sane,
    )


def _check_t(t: float) -> None:
    if not T_EPS <= t <= 1.0 - T_EPS:
        raise DomainError(f"t={t!r} outside [{T_EPS:g}, 1 - {T_EPS:g}]")


def _require_constructive(p: SuperpositionProblem) -> None:
    if p.gamma_norm_sq <= DESTRUCTIVE_NORM_SQ:
        raise ZeroState("superposition is fully destructive")


def _rescaled_squares(p: SuperpositionProblem) -> tuple[float, float]:
    return p.alpha_sq / p.gamma_norm_sq, p.beta_sq / p.gamma_norm_sq


def _delta_s_fn(p: SuperpositionProblem) -> Callable[[float], float]:
    """|S_A(t) - S_B(t)| for the reduced mixtures, as a fast closure."""
    ra1 = states.reduced_density(p.psi, "A")
    ra2 = states.reduced_density(p.phi, "A")
    rb1 = states.reduced_density(p.psi, "B")
    rb2 = states.reduced_density(p.phi, "B")

    def delta(t: float) -> float:
        s_a = _psd_entropy(t * ra1 + (1.0 - t) * ra2)
        s_b = _psd_entropy(t * rb1 + (1.0 - t) * rb2)
        return abs(s_a - s_b)

    return delta


def _delta_s_batch(p: SuperpositionProblem) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorized |S_A(t) - S_B(t)| over an array of mixing weights."""
    ra1 = states.reduced_density(p.psi, "A")
    ra2 = states.reduced_density(p.phi, "A")
    rb1 = states.reduced_density(p.psi, "B")
    rb2 = states.reduced_density(p.phi, "B")

    def delta(ts: np.ndarray) -> np.ndarray:
        t = ts[:, None, None]
        s_a = _psd_entropy_batch(t * ra1 + (1.0 - t) * ra2)
        s_b = _psd_entropy_batch(t * rb1 + (1.0 - t) * rb2)
        return np.abs(s_a - s_b)

    return delta


def _psd_entropy(rho: np.ndarray) -> float:
    w = np.linalg.eigvalsh(rho)
    w = w[w > 0.0]
    if w.size == 0:
        return 0.0
    return max(0.0, float(-(w * np.log2(w)).sum()))


def _psd_entropy_batch(rhos: np.ndarray) -> np.ndarray:
    w = np.linalg.eigvalsh(rhos)
    terms = np.where(w > 0.0, -w * np.log2(np.where(w > 0.0, w, 1.0)), 0.0)
    return np.maximum(0.0, terms.sum(axis=-1))
