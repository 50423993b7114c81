"""Floating-point verification layer: slope tests along eps-families,
Fiedler inequality checks, bound searches, Jacobi-identity checks, and the
exact factorization identities for R1, R2, R3.

Everything is deterministic given a SamplerConfig seed.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .constants import (R1_FACTORS, R2_FACTORS, R3_FACTORS, named_log)
from .exact import dot
from .nullity import RationalMatrix, nullity_type
from .polyarith import PolyMatrix, asn, asn_inner_product
from .ratios import (FormalLog, NotPositiveDefiniteError, evaluate_log_ratio,
                     is_homogeneous, is_koteljanskii_ray, log_of)
from .subsets import members_of, subset_order

DEFAULT_GRID = tuple(10.0 ** -k for k in range(1, 8))
# Minors of a Gram family can scale like eps^2 per singular value; below
# 1e-6 their double-precision singular values degrade, so the polynomial
# probe uses a shorter grid by default.
DEFAULT_POLY_GRID = tuple(float(x) for x in np.geomspace(1e-2, 1e-6, 9))


@dataclass(frozen=True)
class ProbeReport:
    epsilons: Tuple[float, ...]
    log_ratio_values: Tuple[float, ...]
    fitted_slope: float
    predicted_slope: Fraction
    residual: float
    verdict: bool

    def max_ratio(self) -> float:
        return float(np.exp(np.max(self.log_ratio_values)))

    def to_dict(self) -> Dict:
        return {
            "epsilons": list(self.epsilons),
            "log_ratio_values": list(self.log_ratio_values),
            "fitted_slope": self.fitted_slope,
            "predicted_slope": str(self.predicted_slope),
            "residual": self.residual,
            "verdict": "matches" if self.verdict else "diverges-from-prediction",
        }


@dataclass(frozen=True)
class SamplerConfig:
    seed: int
    count: int
    dimension: int
    distribution: str = "gram-of-gaussian"
    ridge: float = 1e-6

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.distribution not in ("gram-of-gaussian", "gram-plus-ridge"):
            raise ValueError(f"unknown distribution {self.distribution!r}")


def _validate_grid(grid: Sequence[float]) -> Tuple[float, ...]:
    grid = tuple(float(x) for x in grid)
    if any(not 0.0 < x < 1.0 for x in grid):
        raise ValueError("grid values must lie in (0, 1)")
    if any(a <= b for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly decreasing")
    if np.log10(grid[0] / grid[-1]) < 4:
        raise ValueError("grid must span at least 4 decades")
    return grid


def _fit_report(v: FormalLog, grid: Tuple[float, ...], values: List[float],
                predicted: Fraction) -> ProbeReport:
    logs = np.log(np.asarray(grid))
    vals = np.asarray(values)
    slope, intercept = np.polyfit(logs, vals, 1)
    residual = float(np.max(np.abs(slope * logs + intercept - vals)))
    tol = 0.05 * max(1.0, abs(float(predicted)))
    verdict = abs(slope - float(predicted)) <= tol
    return ProbeReport(grid, tuple(values), float(slope), predicted,
                       residual, verdict)


def eval_family_slope(v: FormalLog, m: RationalMatrix,
                      grid: Sequence[float] = DEFAULT_GRID) -> ProbeReport:
    """Evaluate the log-ratio along A_eps = M^T M + eps*I and fit its slope
    against log(eps); the predicted slope is the exact inner product of the
    formal log with the nullity type of M."""
    if not is_homogeneous(v):
        raise ValueError("slope probe requires a homogeneous formal log")
    grid = _validate_grid(grid)
    n = v.ground_size
    mat = np.array([[float(x) for x in row] for row in m])
    if mat.shape[1] != n:
        raise ValueError("matrix column count must equal the ground size")
    base = mat.T @ mat
    values = []
    for eps in grid:
        try:
            values.append(evaluate_log_ratio(v, base + eps * np.eye(n)))
        except NotPositiveDefiniteError as err:
            raise NotPositiveDefiniteError(err.subset) from None
    predicted = Fraction(dot(v.exponents, nullity_type(m).entries))
    return _fit_report(v, grid, values, predicted)


def _gram_logminor(p: PolyMatrix, eps: float, mask: int) -> float:
    """log det (P^T P)[S] at a numeric eps, via singular values of the
    column submatrix (robust for minors scaling like eps^(2 d_S))."""
    from .polyarith import eval_poly_matrix
    mat = eval_poly_matrix(p, eps)
    cols = [i - 1 for i in members_of(mask)]
    sing = np.linalg.svd(mat[:, cols], compute_uv=False)
    if np.any(sing <= 0):
        raise NotPositiveDefiniteError(members_of(mask))
    return 2.0 * float(np.sum(np.log(sing)))


def eval_poly_family_slope(v: FormalLog, p: PolyMatrix,
                           grid: Sequence[float] = DEFAULT_POLY_GRID
                           ) -> ProbeReport:
    """Slope probe along A_eps = P(eps)^T P(eps); the predicted slope is
    2 * (formal log . asn(P)) because the dominating minor terms are even
    powers eps^(2 d_S)."""
    if not is_homogeneous(v):
        raise ValueError("slope probe requires a homogeneous formal log")
    grid = _validate_grid(grid)
    values = []
    for eps in grid:
        total = 0.0
        for mask in subset_order(v.ground_size):
            x = v.exponents[mask]
            if mask and x != 0:
                total += float(x) * _gram_logminor(p, eps, mask)
        values.append(total)
    predicted = 2 * asn_inner_product(v, asn(p))
    return _fit_report(v, grid, values, predicted)


def sample_pd(cfg: SamplerConfig) -> np.ndarray:
    """Batch of PD matrices, shape (count, n, n), deterministic in the seed."""
    rng = np.random.default_rng(cfg.seed)
    n = cfg.dimension
    g = rng.standard_normal((cfg.count, n, n))
    a = np.einsum("bij,bik->bjk", g, g)
    if cfg.distribution == "gram-plus-ridge":
        a = a / n  # Wishart-like scaling
    a += cfg.ridge * np.eye(n)
    sign, _ = np.linalg.slogdet(a)
    if not np.all(sign > 0):
        raise AssertionError("sampler produced a non-PD matrix")
    return a


def batch_log_minors(batch: np.ndarray, n: int) -> Dict[int, np.ndarray]:
    """log det A[S] for every nonempty subset, over a batch of PD matrices."""
    out: Dict[int, np.ndarray] = {}
    for mask in range(1, 1 << n):
        idx = [i - 1 for i in members_of(mask)]
        sign, logdet = np.linalg.slogdet(batch[:, idx][:, :, idx])
        if not np.all(sign > 0):
            raise NotPositiveDefiniteError(members_of(mask))
        out[mask] = logdet
    return out


def batch_log_ratio(v: FormalLog, batch: np.ndarray,
                    minors: Optional[Dict[int, np.ndarray]] = None
                    ) -> np.ndarray:
    if minors is None:
        minors = batch_log_minors(batch, v.ground_size)
    total = np.zeros(batch.shape[0])
    for mask, logdet in minors.items():
        x = v.exponents[mask]
        if x != 0:
            total += float(x) * logdet
    return total


def fiedler_check(a: np.ndarray, tolerance: float = 1e-9) -> np.ndarray:
    """Residuals RHS - LHS of 2 sqrt(a_ii b_ii) + (n-2) <= sum_j sqrt(a_jj b_jj)
    with B = A^{-1}; all must be >= -tolerance."""
    a = np.asarray(a, dtype=float)
    b = np.linalg.inv(a)
    n = a.shape[0]
    roots = np.sqrt(np.diag(a) * np.diag(b))
    residuals = roots.sum() - (2.0 * roots + (n - 2))
    if np.any(residuals < -tolerance):
        raise AssertionError("Fiedler inequality violated beyond tolerance")
    return residuals


def complement_ratio_check(a: np.ndarray, i: int) -> float:
    """min over j != i of ({i}{i}^c / {j}{j}^c)(A); at most (n-1)^2."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if n < 3:
        raise ValueError("complement ratio check requires n >= 3")
    full = (1 << n) - 1
    minors = batch_log_minors(a[None, :, :], n)
    def log_val(k: int) -> float:
        mask = 1 << (k - 1)
        return float(minors[mask][0] + minors[full ^ mask][0])
    vals = [np.exp(log_val(i) - log_val(j)) for j in range(1, n + 1) if j != i]
    return float(min(vals))


@dataclass(frozen=True)
class BoundSearchResult:
    max_ratio: float
    argmax: np.ndarray
    diverging: bool


def bound_search(v: FormalLog, cfg: SamplerConfig,
                 ascent_steps: int = 200,
                 ascent_scale: float = 0.05) -> BoundSearchResult:
    """Empirical supremum of exp(log-ratio) over sampled PD matrices plus
    local congruence ascent E A E^T from the best sample.

    Diagonal congruence leaves homogeneous ratios invariant, so the ascent
    perturbs with general near-identity congruence factors.
    """
    n = v.ground_size
    batch = sample_pd(cfg)
    values = batch_log_ratio(v, batch)
    best_idx = int(np.argmax(values))
    best_val = float(values[best_idx])
    best_mat = batch[best_idx]

    rng = np.random.default_rng((cfg.seed, 1))
    current = best_mat
    current_val = best_val
    for _ in range(ascent_steps):
        e = np.eye(n) + ascent_scale * rng.standard_normal((n, n))
        cand = e @ current @ e.T
        try:
            val = evaluate_log_ratio(v, cand)
        except NotPositiveDefiniteError:
            continue
        if val > current_val:
            current, current_val = cand, val
    diverging = current_val > best_val + 5.0
    return BoundSearchResult(float(np.exp(current_val)), current, diverging)


def decomposition_check() -> bool:
    """Verify, exactly in formal-log arithmetic, the factorizations of R1,
    R2, R3 into Koteljanskii factors times {1}{23}/{2}{13}."""
    for name, factors in (("R1", R1_FACTORS), ("R2", R2_FACTORS),
                          ("R3", R3_FACTORS)):
        target = named_log(name)
        total = [Fraction(0)] * (1 << 4)
        for text in factors:
            fl = log_of(text, 4)
            total = [t + x for t, x in zip(total, fl.exponents)]
        if tuple(total) != target.exponents:
            raise AssertionError(f"factorization identity for {name} failed")
        for text in factors[:-1]:
            if not is_koteljanskii_ray(log_of(text, 4)):
                raise AssertionError(
                    f"factor {text} of {name} is not a Koteljanskii ratio")
    return True


def jacobi_check(a: np.ndarray, s: int, tolerance: float = 1e-9) -> bool:
    """det A[S] == det A * det A^{-1}[S^c], within a relative tolerance."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    full = (1 << n) - 1
    inv = np.linalg.inv(a)
    def minor(mat, mask):
        if mask == 0:
            return 1.0
        idx = [i - 1 for i in members_of(mask)]
        return float(np.linalg.det(mat[np.ix_(idx, idx)]))
    lhs = minor(a, s)
    rhs = float(np.linalg.det(a)) * minor(inv, full ^ s)
    return abs(lhs - rhs) <= tolerance * abs(lhs)


def random_homogeneous_log(n: int, rng: np.random.Generator,
                           max_coeff: int = 1) -> FormalLog:
    """Random nonzero integer vector in log(H_n), as a small integer
    combination of a primitive basis of the homogeneity subspace."""
    from .cones import homogeneity_basis
    basis = homogeneity_basis(n)
    while True:
        coeffs = rng.integers(-max_coeff, max_coeff + 1, size=len(basis))
        if not np.any(coeffs):
            continue
        vec = [Fraction(0)] * (1 << n)
        for c, b in zip(coeffs, basis):
            if c:
                vec = [x + int(c) * y for x, y in zip(vec, b)]
        if any(vec):
            return FormalLog(n, tuple(Fraction(x) for x in vec))


def random_rank_deficient_matrix(n: int, rng: np.random.Generator
                                 ) -> RationalMatrix:
    """Random small-integer matrix with fewer than n rows (so rank < n)."""
    from .nullity import matrix
    rows = int(rng.integers(1, n))
    while True:
        m = rng.integers(-2, 3, size=(rows, n))
        if np.any(m):
            return matrix(m.tolist())


@dataclass(frozen=True)
class SlopeCase:
    report: ProbeReport
    classified_divergent: bool
    predicted_divergent: bool


def slope_law_suite(count: int = 100, seed: int = 20240, n: int = 4,
                        grid: Sequence[float] = None) -> List[SlopeCase]:
    """Random (homogeneous v, rank-deficient M) pairs checked against the
    boundedness criterion: fitted slope must match v . nul(M) and its sign
    must classify bounded-versus-divergent behavior on the grid."""
    if grid is None:
        grid = tuple(float(x) for x in np.geomspace(1e-3, 1e-7, 9))
    rng = np.random.default_rng(seed)
    cases = []
    while len(cases) < count:
        v = random_homogeneous_log(n, rng)
        m = random_rank_deficient_matrix(n, rng)
        report = eval_family_slope(v, m, grid)
        # Divergence on the grid: the log-ratio climbs toward small eps.
        observed = (report.log_ratio_values[-1] - report.log_ratio_values[0]
                    > 1.0)
        cases.append(SlopeCase(report, observed, report.predicted_slope < 0))
    return cases
