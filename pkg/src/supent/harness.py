"""State file I/O, random ensembles, reference examples, sweeps, and audits.

State files are JSON documents listing only the nonzero amplitudes, so the
sparse reference states stay human-readable and diffable:

    {"dim_a": 2, "dim_b": 4, "label": "bell",
     "entries": [[0, 0, 0.7071067811865476, 0.0],
                 [1, 1, 0.7071067811865476, 0.0]]}

The dimension sweeps use a diagonal state family whose Schmidt spectra are
known in closed form; at the largest swept dimensions the dense coefficient
matrices would not fit in memory, so all bound evaluations go through the
spectral probability vectors and the scalar bound layer.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import bounds, qmath, states
from .bounds import SuperpositionProblem
from .errors import DimError, ParseError
from .qmath import binary_entropy
from .rng import Xoshiro256StarStar
from .states import BipartiteState

__all__ = [
    "DEFAULT_SEED",
    "SweepRecord",
    "ExampleRow",
    "AuditSummary",
    "parse_state_file",
    "serialize_state",
    "state_document",
    "haar_random_state",
    "generate_one_sided_pair",
    "bell_block_pair",
    "overlapping_triple_pair",
    "diagonal_family_states",
    "run_examples",
    "dimension_sweep",
    "sweep_csv",
    "random_audit",
]

DEFAULT_SEED = 0x5EED

SWEEP_COLUMNS = (
    "d",
    "exact_e",
    "lps",
    "t2",
    "t3",
    "t3_refined",
    "lower",
    "gap_lps",
    "gap_t3",
    "gap_lower",
)


# ---------------------------------------------------------------------------
# State files.
# ---------------------------------------------------------------------------


def parse_state_file(text: str) -> BipartiteState:
    """Parse a JSON state document; unnormalized amplitudes are accepted.

    Raises ParseError with line/field context for malformed documents and
    IndexError for amplitude indices outside the declared dimensions.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object")
    dim_a = _required_dim(doc, "dim_a")
    dim_b = _required_dim(doc, "dim_b")
    entries = doc.get("entries")
    if not isinstance(entries, list):
        raise ParseError("field 'entries' must be a list")
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise ParseError("field 'label' must be a string")
    coeffs = np.zeros((dim_a, dim_b), dtype=complex)
    seen: set[tuple[int, int]] = set()
    for k, entry in enumerate(entries):
        if not isinstance(entry, (list, tuple)) or len(entry) != 4:
            raise ParseError(f"entry {k}: expected [i, j, re, im]")
        i, j, re, im = entry
        if not isinstance(i, int) or not isinstance(j, int) or isinstance(i, bool) or isinstance(j, bool):
            raise ParseError(f"entry {k}: indices must be integers")
        if not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
            raise ParseError(f"entry {k}: amplitudes must be real numbers")
        if not (0 <= i < dim_a and 0 <= j < dim_b):
            raise IndexError(
                f"entry {k}: index ({i}, {j}) outside the {dim_a}x{dim_b} grid"
            )
        if (i, j) in seen:
            raise ParseError(f"entry {k}: duplicate index ({i}, {j})")
        seen.add((i, j))
        coeffs[i, j] = complex(re, im)
    return BipartiteState(coeffs)


def state_document(state: BipartiteState, label: Optional[str] = None) -> dict:
    """JSON-ready document for a state, listing nonzero amplitudes row-major."""
    entries = [
        [int(i), int(j), float(c.real), float(c.imag)]
        for (i, j), c in np.ndenumerate(state.coeffs)
        if c != 0
    ]
    doc = {"dim_a": state.dim_a, "dim_b": state.dim_b, "entries": entries}
    if label is not None:
        doc["label"] = label
    return doc


def serialize_state(state: BipartiteState, label: Optional[str] = None) -> str:
    return json.dumps(state_document(state, label), indent=2) + "\n"


def _required_dim(doc: dict, name: str) -> int:
    value = doc.get(name)
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ParseError(f"field {name!r} must be a positive integer")
    return value


# ---------------------------------------------------------------------------
# Random ensembles.
# ---------------------------------------------------------------------------


def haar_random_state(dim_a: int, dim_b: int, seed: int) -> BipartiteState:
    """Normalized state with i.i.d. complex Gaussian amplitudes."""
    if dim_a < 1 or dim_b < 1:
        raise DimError(f"dimensions must be positive, got {dim_a}x{dim_b}")
    return _haar_state(Xoshiro256StarStar(seed), dim_a, dim_b)


def _haar_state(rng: Xoshiro256StarStar, dim_a: int, dim_b: int) -> BipartiteState:
    g = rng.complex_gaussian_matrix(dim_a, dim_b)
    return BipartiteState(g / np.linalg.norm(g))


def generate_one_sided_pair(
    d1: int, d2: int, dim_a: int, seed: int
) -> tuple[BipartiteState, BipartiteState]:
    """Random one-sided orthogonal pair on a dim_a x (d1 + d2) system.

    Draws positive spectra summing to one and random orthonormal A-side
    frames, then places the two states' B-side Schmidt vectors on disjoint
    computational-basis blocks of sizes d1 and d2.  The output always
    satisfies the B-side orthogonality condition; the two A-side frames are
    independent, so the pair is generally not biorthogonal.
    """
    if d1 < 1 or d2 < 1:
        raise DimError("block sizes d1, d2 must be positive")
    if dim_a < max(d1, d2):
        raise DimError(f"dim_a={dim_a} cannot carry {max(d1, d2)} Schmidt vectors")
    rng = Xoshiro256StarStar(seed)
    p = _random_simplex(rng, d1)
    q = _random_simplex(rng, d2)
    u = _random_frame(rng, dim_a, d1)
    v = _random_frame(rng, dim_a, d2)
    dim_b = d1 + d2
    c_psi = np.zeros((dim_a, dim_b), dtype=complex)
    c_phi = np.zeros((dim_a, dim_b), dtype=complex)
    c_psi[:, :d1] = u * np.sqrt(p)
    c_phi[:, d1:] = v * np.sqrt(q)
    return BipartiteState(c_psi), BipartiteState(c_phi)


def _random_simplex(rng: Xoshiro256StarStar, n: int) -> np.ndarray:
    w = np.array([-math.log(max(1e-300, 1.0 - rng.random())) for _ in range(n)])
    w = np.maximum(w, 1e-12)
    return w / w.sum()


def _random_frame(rng: Xoshiro256StarStar, dim: int, k: int) -> np.ndarray:
    g = rng.complex_gaussian_matrix(dim, k)
    q, _ = np.linalg.qr(g)
    return q[:, :k]


# ---------------------------------------------------------------------------
# Reference states.
# ---------------------------------------------------------------------------


def bell_block_pair() -> tuple[BipartiteState, BipartiteState]:
    """Two Bell-type states whose B-side supports sit on disjoint blocks."""
    s = 1.0 / math.sqrt(2.0)
    psi = np.zeros((2, 4), dtype=complex)
    phi = np.zeros((2, 4), dtype=complex)
    psi[0, 0] = psi[1, 1] = s
    phi[0, 2] = phi[1, 3] = s
    return BipartiteState(psi), BipartiteState(phi)


def overlapping_triple_pair() -> tuple[BipartiteState, BipartiteState]:
    """3x4 pair sharing two Schmidt terms, overlap 1/2."""
    psi = np.zeros((3, 4), dtype=complex)
    phi = np.zeros((3, 4), dtype=complex)
    psi[0, 0] = math.sqrt(0.5)
    psi[1, 1] = 0.5
    psi[2, 2] = 0.5
    phi[0, 3] = math.sqrt(0.5)
    phi[1, 1] = 0.5
    phi[2, 2] = 0.5
    return BipartiteState(psi), BipartiteState(phi)


def family_coefficients(family: str) -> tuple[float, float]:
    if family == "example3":
        return 0.6, -0.8
    if family == "example4":
        return 0.6, 0.8
    raise ValueError(f"unknown family {family!r} (expected 'example3' or 'example4')")


def family_state_probs(d: int) -> np.ndarray:
    """Squared Schmidt coefficients of the diagonal family state at size d."""
    if d < 2:
        raise ValueError("family dimension must be at least 2")
    probs = np.full(d, 1.0 / (2.0 * (d - 1)))
    probs[0] = 0.5
    return probs


def family_gamma_probs(d: int, alpha: float, beta: float) -> tuple[np.ndarray, float]:
    """Unnormalized squared amplitudes of the superposed family state."""
    head = (alpha + beta) ** 2 / 2.0
    tail = (alpha - beta) ** 2 / (2.0 * (d - 1))
    gp = np.full(d, tail)
    gp[0] = head
    return gp, float(gp.sum())


def diagonal_family_states(d: int, family: str) -> tuple[BipartiteState, BipartiteState]:
    """Dense d x d realization of the sweep family (small d only)."""
    amps = np.sqrt(family_state_probs(d)).astype(complex)
    phi_amps = amps.copy()
    phi_amps[1:] *= -1.0
    return BipartiteState(np.diag(amps)), BipartiteState(np.diag(phi_amps))


# ---------------------------------------------------------------------------
# Reference-example report.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExampleRow:
    """One checked quantity of a reference example.

    ``passed`` is None for purely informational rows.
    """

    case: str
    quantity: str
    computed: float
    expected: Optional[float] = None
    tol: Optional[float] = None
    passed: Optional[bool] = None
    note: str = ""


def _check_row(
    case: str,
    quantity: str,
    computed: float,
    expected: float,
    tol: float,
    note: str = "",
) -> ExampleRow:
    return ExampleRow(
        case=case,
        quantity=quantity,
        computed=float(computed),
        expected=float(expected),
        tol=tol,
        passed=abs(computed - expected) <= tol,
        note=note,
    )


def run_examples() -> list[ExampleRow]:
    """Recompute every headline quantity of the four reference examples."""
    rows: list[ExampleRow] = []
    rows.extend(_example1_rows())
    rows.extend(_example2_rows())
    rows.extend(_example3_rows())
    rows.extend(_example4_rows())
    return rows


def _example1_rows() -> list[ExampleRow]:
    rows = []
    psi, phi = bell_block_pair()
    for alpha in (0.3, 0.6, 1.0 / math.sqrt(2.0)):
        beta = math.sqrt(1.0 - alpha * alpha)
        case = f"E1[alpha={alpha:.4g}]"
        prob = SuperpositionProblem.from_states(psi, phi, alpha, beta)
        exact = states.entanglement_entropy(prob.gamma)
        s_a, s_b = states.reduced_mixture_entropies(prob.psi, prob.phi, prob.alpha_sq)
        rows.append(_check_row(case, "E(psi)", prob.e_psi, 1.0, 1e-9))
        rows.append(_check_row(case, "E(phi)", prob.e_phi, 1.0, 1e-9))
        rows.append(_check_row(case, "exact_e", exact, 1.0, 1e-9))
        rows.append(_check_row(case, "one_sided_formula", bounds.exact_one_sided(prob), 1.0, 1e-9))
        rows.append(_check_row(case, "S_A(t=|alpha|^2)", s_a, 1.0, 1e-9))
        rows.append(
            _check_row(
                case, "S_B(t=|alpha|^2)", s_b, 1.0 + binary_entropy(alpha * alpha), 1e-9
            )
        )
    return rows


def _example2_rows() -> list[ExampleRow]:
    case = "E2"
    s = 1.0 / math.sqrt(2.0)
    psi, phi = overlapping_triple_pair()
    prob = SuperpositionProblem.from_states(psi, phi, s, s)
    exact = states.entanglement_entropy(prob.gamma)
    s_a, s_b = states.reduced_mixture_entropies(prob.psi, prob.phi, prob.alpha_sq)
    lps = bounds.lps_upper(prob)
    t2 = bounds.theorem2_upper(prob)
    rows = [
        _check_row(case, "E(psi)", prob.e_psi, 1.5, 1e-9),
        _check_row(case, "E(phi)", prob.e_phi, 1.5, 1e-9),
        _check_row(case, "norm_sq(gamma)", prob.gamma_norm_sq, 1.5, 1e-9),
        _check_row(case, "exact_e", exact, math.log2(3.0), 1e-9),
        _check_row(case, "S_A(t=1/2)", s_a, 1.5, 1e-9),
        _check_row(case, "S_B(t=1/2)", s_b, 2.0, 1e-9),
        _check_row(case, "lps_upper", lps, 10.0 / 3.0, 1e-9),
        _check_row(case, "theorem2_upper", t2, 8.0 / 3.0, 1e-9),
        ExampleRow(case, "lps_upper - exact_e", lps - exact, passed=lps - exact >= -1e-12),
        ExampleRow(case, "theorem2_upper - exact_e", t2 - exact, passed=t2 - exact >= -1e-12),
        _check_row(
            case,
            "lps_upper (norm-divided variant)",
            lps * math.sqrt(prob.gamma_norm_sq),
            5.0 * math.sqrt(2.0 / 3.0),
            1e-9,
            note=(
                "documented discrepancy: the reference value 5*sqrt(2/3) matches the "
                "bound divided by ||gamma|| instead of ||gamma||^2; the implemented "
                "bound is 10/3"
            ),
        ),
        _check_row(
            case,
            "theorem2_upper (norm-divided variant)",
            t2 * math.sqrt(prob.gamma_norm_sq),
            4.0 * math.sqrt(2.0 / 3.0),
            1e-9,
            note=(
                "documented discrepancy: the reference value 4*sqrt(2/3) matches the "
                "bound divided by ||gamma|| instead of ||gamma||^2; the implemented "
                "bound is 8/3"
            ),
        ),
    ]
    return rows


def _example3_rows(d: int = 2**16 + 1) -> list[ExampleRow]:
    case = "E3[d=2^16+1]"
    alpha, beta = family_coefficients("example3")
    asq = alpha * alpha
    log_d1 = math.log2(d - 1)
    e_state = qmath.shannon_entropy(family_state_probs(d))
    gp, n2 = family_gamma_probs(d, alpha, beta)
    exact = qmath.shannon_entropy(gp / n2)
    t3, t3_star = bounds.minimize_f_scalar(e_state, e_state, asq, n2)
    f37 = bounds.f_upper_value(3.0 / 7.0, e_state, e_state, asq, n2)
    f37_direct = (49.0 / 25.0) * (e_state + binary_entropy(3.0 / 7.0)) / n2
    reference_gap = (49.0 / 25.0) * binary_entropy(3.0 / 7.0) - binary_entropy(1.0 / 50.0)
    lps = bounds.lps_upper_value(e_state, e_state, asq, n2)
    residual = bounds.theorem3_stationarity_residual(t3_star, e_state, e_state, asq)
    rows = [
        _check_row(case, "E(psi)", e_state, 0.5 * log_d1 + 1.0, 1e-9),
        _check_row(
            case,
            "exact_e",
            exact,
            (49.0 / 50.0) * log_d1 + binary_entropy(1.0 / 50.0),
            1e-9,
        ),
        _check_row(case, "t_star(f)", t3_star, 3.0 / 7.0, 1e-2),
        _check_row(case, "stationarity residual at t_star", residual, 0.0, 1e-6),
        _check_row(case, "f(3/7)", f37, f37_direct, 1e-9),
        _check_row(
            case,
            "f(3/7) - exact_e",
            f37 - exact,
            reference_gap,
            1e-6,
            note=(
                "documented discrepancy: the reference gap (49/25)h2(3/7) - h2(1/50) "
                "omits the constant 49/25 that the mean-entanglement term of f "
                "contributes; the directly evaluated gap exceeds it by exactly 1.96"
            ),
        ),
        _check_row(
            case,
            "lps_upper",
            lps,
            log_d1 + 2.0 + 2.0 * binary_entropy(asq),
            1e-9,
            note="grows like log2(d-1); diverges from exact_e as d grows",
        ),
        ExampleRow(case, "f(t_star) - exact_e", t3 - exact, passed=t3 - exact >= -1e-12),
    ]
    sweep = dimension_sweep([2**8 + 1, 2**12 + 1, 2**16 + 1], "example3")
    diffs = [b.gap_lps - a.gap_lps for a, b in zip(sweep, sweep[1:])]
    spread = max(r.gap_t3 for r in sweep) - min(r.gap_t3 for r in sweep)
    rows.append(
        ExampleRow(
            case,
            "gap_lps strictly increasing over d in {2^8+1, 2^12+1, 2^16+1}",
            min(diffs),
            passed=all(x > 0 for x in diffs),
            note="each step adds (1/50) * delta log2(d-1)",
        )
    )
    rows.append(
        ExampleRow(
            case,
            "gap_t3 spread over the same dimensions",
            spread,
            passed=spread < 0.05,
            note="the optimized bound tracks exact_e while the LPS bound diverges",
        )
    )
    return rows


def _example4_rows(d: int = 2**16 + 1) -> list[ExampleRow]:
    case = "E4[d=2^16+1]"
    alpha, beta = family_coefficients("example4")
    asq, bsq = alpha * alpha, beta * beta
    log_d1 = math.log2(d - 1)
    e_state = qmath.shannon_entropy(family_state_probs(d))
    gp, n2 = family_gamma_probs(d, alpha, beta)
    exact = qmath.shannon_entropy(gp / n2)
    t_ref = 25.0 / 28.0
    l1_ref = bounds.lower_value(t_ref, e_state, e_state, asq / n2, bsq / n2, "L1")
    l1_closed = (
        (1.0 / 50.0) * log_d1 + 1.0 / 25.0 - (28.0 / 25.0) * binary_entropy(t_ref)
    )
    gap_closed = (
        binary_entropy(1.0 / 50.0) - 1.0 / 25.0 + (28.0 / 25.0) * binary_entropy(t_ref)
    )
    raw, t_star, branch = bounds.maximize_lower_scalar(
        e_state, e_state, asq / n2, bsq / n2
    )
    rows = [
        _check_row(
            case,
            "exact_e",
            exact,
            (1.0 / 50.0) * log_d1 + binary_entropy(1.0 / 50.0),
            1e-9,
        ),
        _check_row(case, "L1(25/28)", l1_ref, l1_closed, 1e-9),
        _check_row(
            case,
            "exact_e - L1(25/28)",
            exact - l1_ref,
            gap_closed,
            1e-6,
            note="approximately 0.65, independent of d",
        ),
        ExampleRow(
            case,
            f"optimized lower bound (branch {branch}) - L1(25/28)",
            max(0.0, raw) - l1_ref,
            passed=max(0.0, raw) >= l1_ref - 1e-9,
        ),
        _check_row(
            case,
            "t_star(lower)",
            t_star,
            t_ref,
            1e-2,
            note=(
                "documented discrepancy: at this dimension the lower-bound curves "
                "increase monotonically toward 0 at t -> 1, so the maximizer sits at "
                "the right endpoint; an interior maximizer near 25/28 emerges only "
                "when log2(d) grows beyond ~10^2"
            ),
        ),
    ]
    return rows


# ---------------------------------------------------------------------------
# Dimension sweeps.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepRecord:
    d: int
    exact_e: float
    lps: float
    t2: float
    t3: float
    t3_refined: float
    lower: float
    gap_lps: float
    gap_t3: float
    gap_lower: float


def dimension_sweep(d_list, family: str) -> list[SweepRecord]:
    """Evaluate every bound for the diagonal family at each dimension."""
    alpha, beta = family_coefficients(family)
    return [_sweep_record(int(d), alpha, beta) for d in d_list]


def _sweep_record(d: int, alpha: float, beta: float) -> SweepRecord:
    probs = family_state_probs(d)
    e_state = qmath.shannon_entropy(probs)
    gp, n2 = family_gamma_probs(d, alpha, beta)
    exact = qmath.shannon_entropy(gp / n2)
    asq = alpha * alpha
    bsq = beta * beta

    # Both states have the same diagonal reduced spectra on either side, so
    # the mixture spectra are t-independent; computed generically anyway.
    def delta_s(t: float) -> float:
        s_a = qmath.shannon_entropy(t * probs + (1.0 - t) * probs)
        s_b = qmath.shannon_entropy(t * probs + (1.0 - t) * probs)
        return abs(s_a - s_b)

    lps = bounds.lps_upper_value(e_state, e_state, asq, n2)
    t2 = bounds.theorem2_upper_value(e_state, e_state, asq, n2, delta_s=delta_s(asq))
    (t3, t3_star), (t3r, _) = bounds.minimize_f_with_refinement(
        e_state, e_state, asq, n2, delta_s_fn=delta_s
    )
    raw, _, _ = bounds.maximize_lower_scalar(e_state, e_state, asq / n2, bsq / n2)
    lower = max(0.0, raw)
    return SweepRecord(
        d=d,
        exact_e=exact,
        lps=lps,
        t2=t2,
        t3=t3,
        t3_refined=t3r,
        lower=lower,
        gap_lps=lps - exact,
        gap_t3=t3 - exact,
        gap_lower=exact - lower,
    )


def sweep_csv(records) -> str:
    """Render sweep records as CSV, floats with 12 significant digits."""
    lines = [",".join(SWEEP_COLUMNS)]
    for r in records:
        values = [f"{r.d}"] + [
            f"{getattr(r, c):.12g}" for c in SWEEP_COLUMNS[1:]
        ]
        lines.append(",".join(values))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Random audit.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AuditSummary:
    n_trials: int
    max_dim: int
    seed: int
    violations: int
    order_violations_t2: int
    order_violations_t3: int
    skipped_destructive: int
    min_upper_margin: float
    mean_upper_margin: float
    min_lower_margin: float
    mean_lower_margin: float
    worst_case: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n_trials": self.n_trials,
            "max_dim": self.max_dim,
            "seed": self.seed,
            "violations": self.violations,
            "order_violations_t2": self.order_violations_t2,
            "order_violations_t3": self.order_violations_t3,
            "skipped_destructive": self.skipped_destructive,
            "min_upper_margin": self.min_upper_margin,
            "mean_upper_margin": self.mean_upper_margin,
            "min_lower_margin": self.min_lower_margin,
            "mean_lower_margin": self.mean_lower_margin,
            "worst_case": self.worst_case,
        }


def random_audit(n_trials: int, max_dim: int, seed: int = DEFAULT_SEED) -> AuditSummary:
    """Check the bound ordering on seeded random problems.

    Each trial draws Haar-random states with dimensions in [2, max_dim] and
    (alpha, beta) uniform on the complex unit sphere from a per-trial stream,
    then certifies the problem.  Fully destructive draws are skipped and
    counted.  The trial with the smallest margin is serialized so it can be
    reproduced from the summary alone.
    """
    if n_trials < 1:
        raise ValueError("n_trials must be at least 1")
    if max_dim < 2:
        raise ValueError("max_dim must be at least 2")
    base = Xoshiro256StarStar(seed)
    violations = 0
    t2_violations = 0
    t3_violations = 0
    skipped = 0
    upper_margins: list[float] = []
    lower_margins: list[float] = []
    worst: dict = {}
    worst_margin = math.inf
    for trial in range(n_trials):
        rng = base.spawn(trial)
        dim_a = rng.randint(2, max_dim)
        dim_b = rng.randint(2, max_dim)
        psi = _haar_state(rng, dim_a, dim_b)
        phi = _haar_state(rng, dim_a, dim_b)
        z1 = complex(rng.gaussian(), rng.gaussian())
        z2 = complex(rng.gaussian(), rng.gaussian())
        norm = math.sqrt(abs(z1) ** 2 + abs(z2) ** 2)
        if norm == 0.0:
            skipped += 1
            continue
        alpha, beta = z1 / norm, z2 / norm
        overlap = states.inner_product(psi, phi)
        n2 = 1.0 + 2.0 * (alpha.conjugate() * beta * overlap).real
        if n2 <= bounds.DESTRUCTIVE_NORM_SQ:
            skipped += 1
            continue
        report = bounds.certify(psi, phi, alpha, beta)
        if not report.sane:
            violations += 1
        if report.theorem2_upper > report.lps_upper + 1e-9:
            t2_violations += 1
        if report.theorem3_upper > report.lps_upper + 1e-9:
            t3_violations += 1
        upper_min = min(
            report.lps_upper,
            report.theorem2_upper,
            report.theorem3_upper,
            report.theorem3_refined_upper,
        )
        upper_margin = upper_min - report.exact_e
        lower_margin = report.exact_e - report.lower_l
        upper_margins.append(upper_margin)
        lower_margins.append(lower_margin)
        margin = min(upper_margin, lower_margin)
        if margin < worst_margin:
            worst_margin = margin
            worst = {
                "trial": trial,
                "dim_a": dim_a,
                "dim_b": dim_b,
                "alpha": [alpha.real, alpha.imag],
                "beta": [beta.real, beta.imag],
                "psi": state_document(psi, label=f"audit trial {trial} psi"),
                "phi": state_document(phi, label=f"audit trial {trial} phi"),
                "exact_e": report.exact_e,
                "upper_margin": upper_margin,
                "lower_margin": lower_margin,
                "sane": report.sane,
            }
    done = len(upper_margins)
    return AuditSummary(
        n_trials=n_trials,
        max_dim=max_dim,
        seed=seed,
        violations=violations,
        order_violations_t2=t2_violations,
        order_violations_t3=t3_violations,
        skipped_destructive=skipped,
        min_upper_margin=min(upper_margins) if done else math.nan,
        mean_upper_margin=sum(upper_margins) / done if done else math.nan,
        min_lower_margin=min(lower_margins) if done else math.nan,
        mean_lower_margin=sum(lower_margins) / done if done else math.nan,
        worst_case=worst,
    )
